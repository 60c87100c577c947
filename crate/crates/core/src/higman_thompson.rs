//! Higman–Thompson groups `G_{q,r}` on a planar forest of `r` rooted
//! `q`-ary trees.
//!
//! Elements reuse the tree-pair machinery on a forest [`Shape`]. Leaves of an
//! antichain are ordered lexicographically (tree index first), and every
//! element induces a permutation of leaf ranks. Expanding a leaf on both
//! sides turns one position into a block of `q` consecutive positions, which
//! multiplies each inversion through that position by `q`; for odd `q` the
//! parity of the inversion count is therefore an invariant of the element.

use std::fmt;

use crate::elements::{swap_balls, TreePair};
use crate::error::{Error, Result};
use crate::generation::{halftree_step, Direction};
use crate::tree::{write_word, Address, Antichain, Degree, Shape};

/// A vertex `t<k>:<letters>` of the forest; `tree` counts from 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ForestAddress {
    pub tree: u8,
    pub letters: Vec<u8>,
}

impl ForestAddress {
    pub fn new(shape: &Shape, tree: u8, letters: Vec<u8>) -> Result<ForestAddress> {
        let f = ForestAddress { tree, letters };
        shape.check(&f.to_address())?;
        if shape.is_tree() || tree == 0 {
            return Err(Error::InvalidAddress(f.to_string()));
        }
        Ok(f)
    }

    pub fn to_address(&self) -> Address {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(self.tree.wrapping_sub(1));
        letters.extend_from_slice(&self.letters);
        Address::from_letters(letters)
    }

    /// Inverse of [`ForestAddress::to_address`]; `None` for the virtual top.
    pub fn from_address(v: &Address) -> Option<ForestAddress> {
        let (&first, rest) = v.letters().split_first()?;
        Some(ForestAddress { tree: first + 1, letters: rest.to_vec() })
    }
}

impl fmt::Display for ForestAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}:", self.tree)?;
        write_word(f, &self.letters)
    }
}

impl fmt::Debug for ForestAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `G_{q,r}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HtElement(TreePair);

impl HtElement {
    pub fn new(shape: Shape, domain: Vec<ForestAddress>, images: Vec<ForestAddress>) -> Result<HtElement> {
        if shape.is_tree() {
            return Err(Error::ShapeMismatch);
        }
        let domain = domain.iter().map(ForestAddress::to_address).collect();
        let images = images.iter().map(ForestAddress::to_address).collect();
        Ok(HtElement(TreePair::new(shape, domain, images)?))
    }

    pub fn from_pair(pair: TreePair) -> Result<HtElement> {
        if pair.shape().is_tree() {
            return Err(Error::ShapeMismatch);
        }
        Ok(HtElement(pair))
    }

    pub fn identity(shape: Shape) -> HtElement {
        HtElement(TreePair::identity(shape))
    }

    pub fn pair(&self) -> &TreePair {
        &self.0
    }

    pub fn into_pair(self) -> TreePair {
        self.0
    }

    pub fn shape(&self) -> &Shape {
        self.0.shape()
    }

    pub fn reduce(&self) -> HtElement {
        HtElement(self.0.reduce())
    }

    pub fn compose(&self, other: &HtElement) -> Result<HtElement> {
        Ok(HtElement(self.0.compose(&other.0)?))
    }

    pub fn inverse(&self) -> HtElement {
        HtElement(self.0.inverse())
    }

    pub fn equals(&self, other: &HtElement) -> Result<bool> {
        self.0.equals(&other.0)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn expand_leaf(&self, idx: usize) -> Result<HtElement> {
        Ok(HtElement(self.0.expand_leaf(idx)?))
    }

    pub fn commutator(&self, other: &HtElement) -> Result<HtElement> {
        Ok(HtElement(self.0.commutator(&other.0)?))
    }
}

impl fmt::Display for HtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = self.shape();
        write!(f, "ht[{},{}]{{", shape.q(), shape.roots())?;
        let side = |f: &mut fmt::Formatter<'_>, leaves: &[Address]| -> fmt::Result {
            for (i, v) in leaves.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", ForestAddress::from_address(v).expect("forest leaf"))?;
            }
            Ok(())
        };
        side(f, self.0.domain())?;
        f.write_str(" -> ")?;
        side(f, self.0.images())?;
        f.write_str("}")
    }
}

impl fmt::Debug for HtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The permutation `σ` of leaf ranks, 0-based: the `k`-th domain leaf goes to
/// the `σ(k)`-th range leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeafPermutation(Vec<usize>);

impl LeafPermutation {
    pub fn new(images: Vec<usize>) -> Result<LeafPermutation> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotBijective);
            }
        }
        Ok(LeafPermutation(images))
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> LeafPermutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        LeafPermutation(inv)
    }
}

/// One-line notation with 1-based images, e.g. `[2,1,3]`.
impl fmt::Display for LeafPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        f.write_str("]")
    }
}

/// Leaf-rank permutation of a tree pair (on the given representative).
pub fn leaf_permutation(t: &TreePair) -> LeafPermutation {
    let range = t.range();
    LeafPermutation(t.images().iter().map(|w| range.binary_search(w).expect("range leaf")).collect())
}

pub fn induced_permutation(e: &HtElement) -> LeafPermutation {
    leaf_permutation(e.pair())
}

/// Number of pairs `j < k` with `σ(j) > σ(k)`, by merge sort.
pub fn inversion_count(sigma: &LeafPermutation) -> u64 {
    fn sort_count(v: &mut [usize], buf: &mut Vec<usize>) -> u64 {
        let n = v.len();
        if n < 2 {
            return 0;
        }
        let mid = n / 2;
        let mut count = sort_count(&mut v[..mid], buf) + sort_count(&mut v[mid..], buf);
        buf.clear();
        let (mut i, mut j) = (0, mid);
        while i < mid && j < n {
            if v[i] <= v[j] {
                buf.push(v[i]);
                i += 1;
            } else {
                count += (mid - i) as u64;
                buf.push(v[j]);
                j += 1;
            }
        }
        buf.extend_from_slice(&v[i..mid]);
        buf.extend_from_slice(&v[j..n]);
        v.copy_from_slice(buf);
        count
    }
    let mut v = sigma.0.clone();
    let mut buf = Vec::with_capacity(v.len());
    sort_count(&mut v, &mut buf)
}

/// Inversion counts around one elementary expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpansionDelta {
    pub before: u64,
    pub after: u64,
    /// Inversions of `σ` involving the expanded position.
    pub through: u64,
}

/// Expands domain leaf `i` (and its image) and reports `I(σ)`, `I(σ')` and
/// `C`, where `I(σ') = I(σ) + (q-1)·C`.
pub fn expansion_inversion_delta(e: &HtElement, i: usize) -> Result<ExpansionDelta> {
    let sigma = induced_permutation(e);
    if i >= sigma.len() {
        return Err(Error::InvalidIndex(i));
    }
    let s = sigma.images();
    let through = (0..s.len()).filter(|&k| (k < i && s[k] > s[i]) || (k > i && s[k] < s[i])).count() as u64;
    let expanded = e.expand_leaf(i)?;
    Ok(ExpansionDelta {
        before: inversion_count(&sigma),
        after: inversion_count(&induced_permutation(&expanded)),
        through,
    })
}

/// Parity of the leaf permutation of the reduced form, for any tree pair.
pub fn leaf_parity(t: &TreePair) -> u8 {
    (inversion_count(&leaf_permutation(&t.reduce())) % 2) as u8
}

/// The sign homomorphism `G_{q,r} → Z/2`: zero for even `q`.
pub fn theta(e: &HtElement) -> u8 {
    if e.shape().q().is_multiple_of(2) {
        0
    } else {
        leaf_parity(e.pair())
    }
}

/// The element swapping `∂F_v` and `∂F_w`; the two balls may not cover the forest.
pub fn transposition(shape: Shape, v: &ForestAddress, w: &ForestAddress) -> Result<HtElement> {
    if shape.is_tree() {
        return Err(Error::ShapeMismatch);
    }
    let (a, b) = (v.to_address(), w.to_address());
    shape.check(&a)?;
    shape.check(&b)?;
    if a.comparable(&b) {
        return Err(Error::Comparable(v.to_string(), w.to_string()));
    }
    if Antichain::spanning(shape, &[a.clone(), b.clone()])?.len() == 2 {
        return Err(Error::FullSupport(v.to_string(), w.to_string()));
    }
    Ok(HtElement(swap_balls(shape, &a, &b)?))
}

// Swap of two range leaves; a full-support swap is split over the children.
fn push_swap(shape: Shape, a: &Address, b: &Address, out: &mut Vec<HtElement>) {
    if Antichain::spanning(shape, &[a.clone(), b.clone()]).expect("incomparable").len() == 2 {
        for c in 0..shape.q() {
            out.push(HtElement(swap_balls(shape, &a.child(c), &b.child(c)).expect("incomparable")));
        }
    } else {
        out.push(HtElement(swap_balls(shape, a, b).expect("incomparable")));
    }
}

fn first_family(leaves: &[Address], q: usize) -> Option<usize> {
    (0..leaves.len().saturating_sub(q - 1)).find(|&i| {
        let v = &leaves[i];
        v.depth() >= 2
            && v.last_letter() == Some(0)
            && (1..q).all(|c| leaves[i + c].parent() == v.parent() && leaves[i + c].last_letter() == Some(c as u8))
    })
}

/// Transpositions `t_1, …, t_m` with `e = t_1 ∘ … ∘ t_m`.
///
/// While domain and range differ, a sibling family of the domain is steered
/// onto a sibling family of the range by swapping range leaves, which lets
/// the family collapse. What remains permutes the leaves of one antichain and
/// is sorted by swaps.
pub fn decompose_into_transpositions(e: &HtElement) -> Vec<HtElement> {
    let shape = *e.shape();
    let q = shape.q() as usize;
    let mut out = Vec::new();
    let mut f = e.pair().reduce();
    loop {
        let range = f.range();
        if f.domain() == range.as_slice() {
            break;
        }
        let y = first_family(f.domain(), q).expect("non-top antichain has a family");
        let x = first_family(&range, q).expect("non-top antichain has a family");
        let ys = f.domain()[y..y + q].to_vec();
        for (leaf, target) in ys.iter().zip(&range[x..x + q]) {
            // The family may already have collapsed after the last swap.
            let Some(a) = f.image_of_leaf(leaf).cloned() else { break };
            if a != *target {
                let start = out.len();
                push_swap(shape, &a, target, &mut out);
                for t in &out[start..] {
                    f = t.pair().compose(&f).expect("same shape");
                }
            }
        }
    }
    // f now permutes the leaves of one antichain; sort it by swaps on the left.
    let leaves = f.domain().to_vec();
    let mut image: Vec<usize> =
        f.images().iter().map(|w| leaves.binary_search(w).expect("same antichain")).collect();
    let mut position = vec![0; leaves.len()];
    for (i, &x) in image.iter().enumerate() {
        position[x] = i;
    }
    for d in 0..leaves.len() {
        let a = image[d];
        if a != d {
            push_swap(shape, &leaves[a], &leaves[d], &mut out);
            // Relabel range leaves a and d.
            let j = position[d];
            image[d] = d;
            image[j] = a;
            position[a] = j;
            position[d] = d;
        }
    }
    out
}

/// The leaves `v`, `w` exchanged by a transposition.
pub fn transposition_balls(t: &TreePair) -> Result<(Address, Address)> {
    let r = t.reduce();
    let moved: Vec<(&Address, &Address)> = r.pairs().filter(|(v, w)| v != w).collect();
    match moved.as_slice() {
        [(v, w), (w2, v2)] if v == v2 && w == w2 => Ok(((*v).clone(), (*w).clone())),
        _ => Err(Error::NotATransposition),
    }
}

/// For even `q`: `t(v, w) = ∏_i t(v·i, w·i)`.
pub fn even_transposition_split(t: &HtElement) -> Result<Vec<HtElement>> {
    let shape = *t.shape();
    if shape.q() % 2 == 1 {
        return Err(Error::OddDegree);
    }
    let (v, w) = transposition_balls(t.pair())?;
    (0..shape.q())
        .map(|c| Ok(HtElement(swap_balls(shape, &v.child(c), &w.child(c))?)))
        .collect()
}

/// The four balls `(a, b, c, d)` of `t(a,b) ∘ t(c,d)` with proper support.
fn pair_product_balls(p: &TreePair) -> Result<[Address; 4]> {
    let shape = *p.shape();
    let r = p.reduce();
    let moved: Vec<(Address, Address)> =
        r.pairs().filter(|(v, w)| v != w).map(|(v, w)| (v.clone(), w.clone())).collect();
    let involutive = moved.iter().all(|(v, w)| r.image_of_leaf(w) == Some(v));
    if !involutive {
        return Err(Error::NotPairProduct);
    }
    let balls = match moved.len() {
        4 => {
            let (a, b) = moved[0].clone();
            let (c, d) = moved.iter().find(|(v, _)| *v != a && *v != b).cloned().ok_or(Error::NotPairProduct)?;
            [a, b, c, d]
        }
        // With q = 2 the product t(v0,w0) t(v1,w1) reduces to t(v,w).
        2 if shape.q() == 2 => {
            let (v, w) = moved[0].clone();
            [v.child(0), w.child(0), v.child(1), w.child(1)]
        }
        _ => return Err(Error::NotPairProduct),
    };
    if Antichain::spanning(shape, &balls)?.len() == 4 {
        return Err(Error::NotPairProduct);
    }
    Ok(balls)
}

/// Expands the shallowest (then lexicographically first) leaf of `rest`.
pub(crate) fn expand_shallowest(shape: &Shape, rest: &mut Vec<Address>) {
    let i = (0..rest.len()).min_by_key(|&i| (rest[i].depth(), rest[i].clone())).expect("nonempty rest");
    let v = rest.remove(i);
    rest.extend(shape.children(&v));
    rest.sort();
}

/// The element mapping each ball of `from` canonically onto the matching ball
/// of `to`; both lists must be incomparable families with nonempty complements.
pub(crate) fn ball_matching(shape: Shape, from: &[Address], to: &[Address]) -> Result<TreePair> {
    let rest_of = |balls: &[Address]| -> Result<Vec<Address>> {
        Ok(Antichain::spanning(shape, balls)?.into_leaves().into_iter().filter(|x| !balls.contains(x)).collect())
    };
    let (mut r1, mut r2) = (rest_of(from)?, rest_of(to)?);
    if r1.is_empty() != r2.is_empty() {
        return Err(Error::FullSupport(from[0].to_string(), to[0].to_string()));
    }
    while r1.len() < r2.len() {
        expand_shallowest(&shape, &mut r1);
    }
    while r2.len() < r1.len() {
        expand_shallowest(&shape, &mut r2);
    }
    let mut pairs: Vec<(Address, Address)> = from.iter().cloned().zip(to.iter().cloned()).collect();
    pairs.extend(r1.into_iter().zip(r2));
    Ok(TreePair::from_pairs(shape, pairs).reduce())
}

/// `g` with `g ∘ p1 ∘ g⁻¹ = p2` for two products of two disjoint transpositions.
pub fn conjugator_for_pair_products(p1: &HtElement, p2: &HtElement) -> Result<HtElement> {
    if p1.shape() != p2.shape() {
        return Err(Error::ShapeMismatch);
    }
    let b1 = pair_product_balls(p1.pair())?;
    let b2 = pair_product_balls(p2.pair())?;
    let g = ball_matching(*p1.shape(), &b1, &b2)?;
    if !g.compose(p1.pair())?.compose(&g.inverse())?.equals(p2.pair())? {
        return Err(Error::VerificationFailed("conjugator".into()));
    }
    Ok(HtElement(g))
}

/// An edge `(upper, lower)` of the tree with `lower` a child of `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    upper: Address,
    lower: Address,
}

impl Edge {
    /// Accepts the endpoints in either order.
    pub fn new(shape: &Shape, u: Address, w: Address) -> Result<Edge> {
        shape.check(&u)?;
        shape.check(&w)?;
        if w.parent().as_ref() == Some(&u) {
            Ok(Edge { upper: u, lower: w })
        } else if u.parent().as_ref() == Some(&w) {
            Ok(Edge { upper: w, lower: u })
        } else {
            Err(Error::NotAdjacent(u.to_string(), w.to_string()))
        }
    }

    pub fn upper(&self) -> &Address {
        &self.upper
    }

    pub fn lower(&self) -> &Address {
        &self.lower
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edge({},{})", self.upper, self.lower)
    }
}

/// Position of a forest vertex inside the tree, and whether the last step
/// of its path from the edge went downward (so its subtree is a ball).
fn place(edge: &Edge, v: &Address) -> (Address, bool) {
    let (&tree, word) = v.letters().split_first().expect("forest vertex");
    // First letter 1 is the second tree.
    if tree == 1 {
        return (edge.lower.concat(word), true);
    }
    halftree_step(&edge.lower, Direction::Parent, word)
}

/// The element of `N_q` acting as `e` through the identification of the
/// forest with the tree cut at `edge`: tree 1 is the half-tree containing
/// the basepoint side, tree 2 the one below `edge.lower`.
pub fn embed_via_edge(e: &HtElement, edge: &Edge) -> Result<TreePair> {
    let fshape = *e.shape();
    if fshape.roots() != 2 {
        return Err(Error::WrongForest(fshape.roots()));
    }
    let tshape = Shape::tree(fshape.degree());
    tshape.check(&edge.lower)?;
    let mut pending: Vec<(Address, Address)> =
        e.pair().pairs().map(|(v, w)| (v.clone(), w.clone())).collect();
    let mut pieces = Vec::with_capacity(pending.len());
    while let Some((v, w)) = pending.pop() {
        let (tv, dv) = place(edge, &v);
        let (tw, dw) = place(edge, &w);
        if dv && dw {
            pieces.push((tv, tw));
        } else {
            for c in 0..fshape.q() {
                pending.push((v.child(c), w.child(c)));
            }
        }
    }
    Ok(TreePair::from_pairs(tshape, pieces).reduce())
}

/// Convenience for `G_{q,r}` shapes.
pub fn forest_shape(q: u32, r: u32) -> Result<Shape> {
    Shape::forest(Degree::new(q)?, r)
}

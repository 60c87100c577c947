//! Half-tree addressing, local permutations at a vertex, and factorizations
//! into edge stabilizers and into a tree pair times an automorphism.
//!
//! From a vertex `x` entered from a neighbour `p`, the `q` onward neighbours
//! are ordered by depth and then lexicographically. Following a word through
//! these choices names every vertex of the half-tree beyond the edge `(p, x)`
//! and gives the planar identification of any two half-trees.

use std::fmt;

use crate::elements::{GroupWord, Generator, Portrait, TreePair};
use crate::error::{Error, Result};
use crate::higman_thompson::Edge;
use crate::tree::{Address, Shape};

/// A neighbour of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Parent,
    Child(u8),
}

impl Direction {
    pub fn neighbor(self, u: &Address) -> Option<Address> {
        match self {
            Direction::Parent => u.parent(),
            Direction::Child(c) => Some(u.child(c)),
        }
    }

    /// The direction at `u` pointing to the adjacent vertex `n`.
    pub fn towards(u: &Address, n: &Address) -> Option<Direction> {
        if u.parent().as_ref() == Some(n) {
            Some(Direction::Parent)
        } else if n.parent().as_ref() == Some(u) {
            n.last_letter().map(Direction::Child)
        } else {
            None
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Parent => f.write_str("parent"),
            Direction::Child(c) => write!(f, "{}", crate::tree::letter_char(*c)),
        }
    }
}

/// The `q + 1` directions at `u` in (depth, lex) order of the neighbours.
pub fn directions(shape: &Shape, u: &Address) -> Vec<Direction> {
    let mut out = Vec::with_capacity(shape.q() as usize + 1);
    if !u.is_root() {
        out.push(Direction::Parent);
    }
    out.extend((0..shape.child_count(u)).map(Direction::Child));
    out
}

// The c-th onward neighbour of x when x was entered from prev.
fn onward(x: &Address, prev: &Address, c: u8) -> Address {
    if prev.depth() < x.depth() {
        return x.child(c);
    }
    let j = prev.last_letter().expect("prev is a child of x");
    if x.is_root() {
        return x.child(if c < j { c } else { c + 1 });
    }
    if c == 0 {
        return x.parent().expect("non-root");
    }
    let k = c - 1;
    x.child(if k < j { k } else { k + 1 })
}

/// The vertex reached from `u` by stepping in direction `d` and then
/// following `word`, together with whether the last step went downward
/// (in which case the rest of the half-tree is the ball below the vertex).
pub(crate) fn halftree_step(u: &Address, d: Direction, word: &[u8]) -> (Address, bool) {
    let mut prev = u.clone();
    let mut x = d.neighbor(u).expect("valid direction");
    for &c in word {
        let next = onward(&x, &prev, c);
        prev = std::mem::replace(&mut x, next);
    }
    let down = x.depth() > prev.depth();
    (x, down)
}

pub(crate) fn halftree_vertex(u: &Address, d: Direction, word: &[u8]) -> Address {
    halftree_step(u, d, word).0
}

/// The vertex with half-tree coordinates `(u, d, word)`.
pub fn halftree_address(shape: &Shape, u: &Address, d: Direction, word: &[u8]) -> Result<Address> {
    shape.check(u)?;
    if !directions(shape, u).contains(&d) {
        return Err(Error::InvalidDirection(u.to_string()));
    }
    if word.iter().any(|&c| c >= shape.q()) {
        return Err(Error::InvalidAddress(crate::tree::Address::from_letters(word.to_vec()).to_string()));
    }
    Ok(halftree_vertex(u, d, word))
}

/// The element that sends the half-tree `(u, d)` onto `(u, map(d))` word by
/// word, for the given mapping `map` of directions. Directions not listed map
/// to themselves.
fn halftree_permutation(shape: Shape, u: &Address, map: &[(Direction, Direction)]) -> TreePair {
    let mut pending: Vec<(Direction, Direction, Vec<u8>)> = directions(&shape, u)
        .into_iter()
        .map(|d| {
            let target = map.iter().find(|(a, _)| *a == d).map_or(d, |(_, b)| *b);
            (d, target, Vec::new())
        })
        .collect();
    let mut pairs = Vec::new();
    while let Some((d, t, word)) = pending.pop() {
        let (src, src_down) = halftree_step(u, d, &word);
        let (dst, dst_down) = halftree_step(u, t, &word);
        if src_down && dst_down {
            pairs.push((src, dst));
        } else {
            for c in 0..shape.q() {
                let mut w = word.clone();
                w.push(c);
                pending.push((d, t, w));
            }
        }
    }
    TreePair::from_pairs(shape, pairs).reduce()
}

/// The automorphism fixing `u` and carrying the `i`-th direction at `u` to the
/// `perm[i]`-th, with half-trees identified by their coordinates.
pub fn local_permutation(shape: Shape, u: &Address, perm: &[u8]) -> Result<TreePair> {
    if !shape.is_tree() {
        return Err(Error::ShapeMismatch);
    }
    shape.check(u)?;
    let dirs = directions(&shape, u);
    let mut seen = vec![false; dirs.len()];
    let valid = perm.len() == dirs.len()
        && perm.iter().all(|&x| (x as usize) < dirs.len() && !std::mem::replace(&mut seen[x as usize], true));
    if !valid {
        return Err(Error::InvalidPermutation(u.to_string()));
    }
    let map: Vec<(Direction, Direction)> =
        dirs.iter().zip(perm).map(|(&d, &j)| (d, dirs[j as usize])).collect();
    Ok(halftree_permutation(shape, u, &map))
}

fn swap_directions(shape: Shape, u: &Address, a: Direction, b: Direction) -> TreePair {
    halftree_permutation(shape, u, &[(a, b), (b, a)])
}

/// Graph distance between two vertices.
pub fn vertex_distance(a: &Address, b: &Address) -> usize {
    let common = crate::tree::lcp(a, b).depth();
    a.depth() + b.depth() - 2 * common
}

// The neighbour of z on the geodesic towards t (z ≠ t).
fn step_towards(z: &Address, t: &Address) -> Address {
    if z.is_proper_prefix_of(t) {
        z.child(t.letters()[z.depth()])
    } else {
        z.parent().expect("non-root")
    }
}

/// A factor of an edge-stabilizer factorization and the edge it fixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerFactor {
    pub element: TreePair,
    pub fixed_edge: Edge,
}

/// Writes a type-preserving automorphism as a product of elements each fixing
/// an edge pointwise.
///
/// The image of `edge` is pivoted back onto `edge` one step at a time; each
/// pivot swaps two directions at a vertex and so fixes the edge towards any
/// third direction. What remains fixes `edge`.
pub fn edge_stabilizer_factorization(a: &TreePair, edge: &Edge) -> Result<Vec<StabilizerFactor>> {
    if !a.is_type_preserving()? {
        return Err(Error::NotTypePreserving);
    }
    let shape = *a.shape();
    let (x, y) = (edge.upper().clone(), edge.lower().clone());
    let mut b = a.reduce();
    let mut factors = Vec::new();
    loop {
        let (bx, by) = (b.vertex_image(&x)?, b.vertex_image(&y)?);
        if bx == x && by == y {
            break;
        }
        // Endpoint z of the image edge nearest to the edge, and its partner w.
        let dist = |v: &Address| vertex_distance(v, &x).min(vertex_distance(v, &y));
        let (z, w) = if dist(&bx) <= dist(&by) { (bx, by) } else { (by, bx) };
        let next = if z == x {
            y.clone()
        } else if z == y {
            x.clone()
        } else {
            let t = if vertex_distance(&z, &x) <= vertex_distance(&z, &y) { &x } else { &y };
            step_towards(&z, t)
        };
        let dw = Direction::towards(&z, &w).expect("adjacent");
        let dn = Direction::towards(&z, &next).expect("adjacent");
        let s = swap_directions(shape, &z, dw, dn);
        let third = directions(&shape, &z).into_iter().find(|d| *d != dw && *d != dn).expect("q + 1 ≥ 3");
        let fixed_edge = Edge::new(&shape, z.clone(), third.neighbor(&z).expect("neighbour"))?;
        b = s.compose(&b)?;
        factors.push(StabilizerFactor { element: s, fixed_edge });
    }
    if factors.is_empty() || !b.is_identity() {
        factors.push(StabilizerFactor { element: b, fixed_edge: edge.clone() });
    }
    let mut product = TreePair::identity(shape);
    for f in &factors {
        if f.element.vertex_image(f.fixed_edge.upper())? != *f.fixed_edge.upper()
            || f.element.vertex_image(f.fixed_edge.lower())? != *f.fixed_edge.lower()
        {
            return Err(Error::VerificationFailed("factor does not fix its edge".into()));
        }
        product = product.compose(&f.element)?;
    }
    if !product.equals(a)? {
        return Err(Error::VerificationFailed("edge stabilizer product".into()));
    }
    Ok(factors)
}

/// `ψ ∘ a`, with `a` a basepoint-fixing automorphism that fixes the domain
/// subtree of `ψ` pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredWord {
    pub ht_part: TreePair,
    pub aut_part: Portrait,
}

impl FactoredWord {
    pub fn recompose(&self) -> TreePair {
        self.ht_part.compose(&self.aut_part.to_tree_pair()).expect("same shape")
    }

    /// Whether the portrait has an entry at an internal vertex of the domain
    /// subtree of the tree-pair part.
    pub fn aut_meets_domain_core(&self) -> bool {
        let domain = self.ht_part.domain();
        self.aut_part
            .entries()
            .any(|(u, _)| domain.iter().any(|v| u.is_proper_prefix_of(v)))
    }
}

/// Moves every portrait factor of `w` to the right.
///
/// With `X = ψ ∘ A` accumulated so far, a tree-pair factor `t` is absorbed as
/// `ψ ← ψ ∘ (A t A⁻¹)` and a portrait factor as `A ← A ∘ p`. Finally `A` is
/// split as `P ∘ R`, where `P` carries each leaf `A⁻¹(d)` of the preimage of
/// `ψ`'s domain onto `d` without twisting and `R` keeps the twisting below
/// those leaves.
pub fn factor_generating_set(w: &GroupWord) -> Result<FactoredWord> {
    let shape = *w.shape();
    if !shape.is_tree() {
        return Err(Error::MalformedWord("words must act on the tree".into()));
    }
    let mut psi = TreePair::identity(shape);
    let mut aut = Portrait::identity(shape);
    for f in w.factors() {
        match &f.generator {
            Generator::Portrait(p) => {
                let p = if f.inverse { p.inverse() } else { p.clone() };
                aut = aut.compose(&p)?;
            }
            Generator::Pair(t) => {
                let t = if f.inverse { t.inverse() } else { t.reduce() };
                let a = aut.to_tree_pair();
                psi = psi.compose(&a.compose(&t)?.compose(&a.inverse())?)?;
            }
        }
    }
    let domain = psi.domain().to_vec();
    let mut p_pairs = Vec::with_capacity(domain.len());
    let mut r_entries = Vec::new();
    for d in &domain {
        let pre = aut.apply_inverse(d);
        for (key, perm) in aut.entries() {
            if let Some(tail) = d.suffix_in(key) {
                r_entries.push((pre.concat(tail), perm.to_vec()));
            }
        }
        p_pairs.push((pre, d.clone()));
    }
    let p = TreePair::new(shape, p_pairs.iter().map(|x| x.0.clone()).collect(), p_pairs.iter().map(|x| x.1.clone()).collect())?;
    let factored = FactoredWord { ht_part: psi.compose(&p)?, aut_part: Portrait::new(shape, r_entries)? };
    if factored.recompose() != w.normal_form() {
        return Err(Error::VerificationFailed("factorization does not recompose".into()));
    }
    if factored.aut_meets_domain_core() {
        return Err(Error::VerificationFailed("automorphism part moves the domain subtree".into()));
    }
    Ok(factored)
}

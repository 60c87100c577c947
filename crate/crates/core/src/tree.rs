//! Vertex addressing for the basepointed regular tree and planar forests.
//!
//! A vertex is named by the word of child letters read off the path from the
//! basepoint. The basepoint has `q + 1` children (letters `0..=q`), every other
//! vertex has `q` (letters `0..q`). A planar forest of `r` trees is handled the
//! same way with a virtual top vertex of `r` children that is never itself a
//! vertex; the first letter then selects the tree.
//!
//! Addresses double as names of boundary balls: `v` names the set of ends whose
//! ray from the basepoint passes through `v`, so prefix order on words is the
//! reverse inclusion order on balls.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree. Letters render in base 36 and `e` is reserved
/// for the basepoint, so depth-one letters must stay below `e` (= 14).
pub const MAX_DEGREE: u8 = 13;

const ALPHABET: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Branching number `q >= 2` of the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(u8);

impl Degree {
    pub fn new(q: u32) -> Result<Self> {
        if (2..=MAX_DEGREE as u32).contains(&q) {
            Ok(Degree(q as u8))
        } else {
            Err(Error::InvalidDegree(q))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Branching pattern of the ambient tree or forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    q: Degree,
    roots: u8,
    top_is_vertex: bool,
}

impl Shape {
    /// The `(q+1)`-regular tree with basepoint.
    pub fn tree(q: Degree) -> Self {
        Shape { q, roots: q.get() + 1, top_is_vertex: true }
    }

    /// A planar forest of `r` rooted `q`-ary trees.
    pub fn forest(q: Degree, r: u32) -> Result<Self> {
        if !(1..=64).contains(&r) {
            return Err(Error::InvalidTreeCount(r));
        }
        Ok(Shape { q, roots: r as u8, top_is_vertex: false })
    }

    pub fn degree(&self) -> Degree {
        self.q
    }

    pub fn q(&self) -> u8 {
        self.q.get()
    }

    /// Number of children of the top vertex (`q + 1` for trees, `r` for forests).
    pub fn roots(&self) -> u8 {
        self.roots
    }

    pub fn is_tree(&self) -> bool {
        self.top_is_vertex
    }

    pub fn child_count(&self, v: &Address) -> u8 {
        if v.is_root() {
            self.roots
        } else {
            self.q.get()
        }
    }

    pub fn children(&self, v: &Address) -> Vec<Address> {
        (0..self.child_count(v)).map(|c| v.child(c)).collect()
    }

    /// Whether `v` names a vertex of this tree or forest.
    pub fn is_valid(&self, v: &Address) -> bool {
        match v.0.split_first() {
            None => self.top_is_vertex,
            Some((&first, rest)) => first < self.roots && rest.iter().all(|&c| c < self.q.get()),
        }
    }

    pub fn check(&self, v: &Address) -> Result<()> {
        if self.is_valid(v) {
            Ok(())
        } else {
            Err(Error::InvalidAddress(v.to_string()))
        }
    }

    /// The coarsest complete antichain: `{e}` for trees, the roots for forests.
    pub fn top_antichain(&self) -> Vec<Address> {
        if self.top_is_vertex {
            vec![Address::root()]
        } else {
            self.children(&Address::root())
        }
    }
}

/// A vertex, written as its word of child letters from the basepoint.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address(Vec<u8>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    /// Wraps a letter sequence without checking it against a shape.
    pub fn from_letters(letters: Vec<u8>) -> Self {
        Address(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, c: u8) -> Address {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.extend_from_slice(&self.0);
        letters.push(c);
        Address(letters)
    }

    pub fn parent(&self) -> Option<Address> {
        self.0.split_last().map(|(_, rest)| Address(rest.to_vec()))
    }

    pub fn last_letter(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn concat(&self, tail: &[u8]) -> Address {
        let mut letters = Vec::with_capacity(self.0.len() + tail.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(tail);
        Address(letters)
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, other: &Address) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }

    pub fn is_prefix_of_word(&self, word: &[u8]) -> bool {
        word.starts_with(&self.0)
    }

    /// Letters of `other` after this prefix, if this is a prefix of it.
    pub fn suffix_in<'a>(&self, other: &'a Address) -> Option<&'a [u8]> {
        other.0.strip_prefix(self.0.as_slice())
    }

    pub fn comparable(&self, other: &Address) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// Parses `e` or a base-36 letter string and checks it against `shape`.
    pub fn parse(text: &str, shape: &Shape) -> Result<Address> {
        let addr = Address::parse_unchecked(text)
            .ok_or_else(|| Error::InvalidAddress(text.to_string()))?;
        shape.check(&addr)?;
        Ok(addr)
    }

    pub(crate) fn parse_unchecked(text: &str) -> Option<Address> {
        if text == "e" {
            return Some(Address::root());
        }
        if text.is_empty() {
            return None;
        }
        text.chars()
            .map(|ch| ch.to_digit(36).map(|d| d as u8))
            .collect::<Option<Vec<u8>>>()
            .filter(|_| text.chars().all(|c| !c.is_ascii_uppercase()))
            .map(Address)
    }
}

pub(crate) fn letter_char(c: u8) -> char {
    ALPHABET[c as usize] as char
}

pub(crate) fn write_word(f: &mut impl fmt::Write, word: &[u8]) -> fmt::Result {
    for &c in word {
        f.write_char(letter_char(c))?;
    }
    Ok(())
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("e")
        } else {
            write_word(f, &self.0)
        }
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Children of `v` in letter order.
pub fn children(shape: &Shape, v: &Address) -> Vec<Address> {
    shape.children(v)
}

/// Longest common prefix.
pub fn lcp(v: &Address, w: &Address) -> Address {
    let n = v.0.iter().zip(&w.0).take_while(|(a, b)| a == b).count();
    Address(v.0[..n].to_vec())
}

/// `∂T_w ⊆ ∂T_v`, i.e. `v` is a prefix of `w`.
pub fn ball_contains(v: &Address, w: &Address) -> bool {
    v.is_prefix_of(w)
}

/// The ball `∂T_v` has diameter `e^{-depth(v)}`; this returns the exponent.
pub fn ball_diameter_exponent(v: &Address) -> usize {
    v.depth()
}

/// Checks prefix-freeness and completeness of a set of addresses.
pub fn is_complete_antichain(shape: &Shape, leaves: &[Address]) -> bool {
    if leaves.iter().any(|v| !shape.is_valid(v)) {
        return false;
    }
    let mut sorted = leaves.to_vec();
    sorted.sort();
    complete_sorted(shape, &sorted)
}

// Walks the sorted leaves against a depth-first traversal of the tree.
fn complete_sorted(shape: &Shape, sorted: &[Address]) -> bool {
    let mut pending: Vec<Address> = shape.top_antichain();
    pending.reverse();
    for leaf in sorted {
        loop {
            let Some(top) = pending.pop() else { return false };
            if &top == leaf {
                break;
            }
            if !top.is_proper_prefix_of(leaf) {
                return false;
            }
            for c in (0..shape.child_count(&top)).rev() {
                pending.push(top.child(c));
            }
        }
    }
    pending.is_empty()
}

/// A finite complete prefix-free set of vertices, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Antichain {
    shape: Shape,
    leaves: Vec<Address>,
}

impl Antichain {
    pub fn new(shape: Shape, mut leaves: Vec<Address>) -> Result<Self> {
        for v in &leaves {
            shape.check(v)?;
        }
        leaves.sort();
        if !complete_sorted(&shape, &leaves) {
            let text = leaves.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
            return Err(Error::NotAntichain(format!("{{{text}}}")));
        }
        Ok(Antichain { shape, leaves })
    }

    /// `{e}` for a tree, the set of roots for a forest.
    pub fn top(shape: Shape) -> Self {
        Antichain { shape, leaves: shape.top_antichain() }
    }

    /// The coarsest complete antichain having every target as a leaf.
    pub fn spanning(shape: Shape, targets: &[Address]) -> Result<Self> {
        for (i, v) in targets.iter().enumerate() {
            shape.check(v)?;
            for w in &targets[i + 1..] {
                if v != w && v.comparable(w) {
                    return Err(Error::Comparable(v.to_string(), w.to_string()));
                }
            }
        }
        let mut leaves = Vec::new();
        let mut stack = vec![Address::root()];
        while let Some(x) = stack.pop() {
            let split = (x.is_root() && !shape.is_tree())
                || targets.iter().any(|t| x.is_proper_prefix_of(t));
            if split {
                for c in (0..shape.child_count(&x)).rev() {
                    stack.push(x.child(c));
                }
            } else {
                leaves.push(x);
            }
        }
        Ok(Antichain { shape, leaves })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn leaves(&self) -> &[Address] {
        &self.leaves
    }

    pub fn into_leaves(self) -> Vec<Address> {
        self.leaves
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn contains(&self, v: &Address) -> bool {
        self.leaves.binary_search(v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Address> {
        self.leaves.iter()
    }

    /// Replaces the leaf `v` by its children.
    pub fn expand_at(&self, v: &Address) -> Result<Antichain> {
        let idx = self
            .leaves
            .binary_search(v)
            .map_err(|_| Error::NotALeaf(v.to_string()))?;
        let mut leaves = Vec::with_capacity(self.leaves.len() + self.shape.child_count(v) as usize);
        leaves.extend_from_slice(&self.leaves[..idx]);
        leaves.extend(self.shape.children(v));
        leaves.extend_from_slice(&self.leaves[idx + 1..]);
        Ok(Antichain { shape: self.shape, leaves })
    }

    /// The coarsest complete antichain refining both.
    pub fn common_refinement(&self, other: &Antichain) -> Result<Antichain> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch);
        }
        let leaves = refine_sorted(&self.leaves, &other.leaves)
            .into_iter()
            .map(|(v, _, _)| v.clone())
            .collect();
        Ok(Antichain { shape: self.shape, leaves })
    }

    /// The unique leaf that is a prefix of `word`, if any.
    pub fn leaf_prefix_of(&self, word: &[u8]) -> Option<&Address> {
        leaf_prefix_of(&self.leaves, word).map(|i| &self.leaves[i])
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_address_set(f, &self.leaves)
    }
}

impl fmt::Debug for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn write_address_set(f: &mut impl fmt::Write, set: &[Address]) -> fmt::Result {
    f.write_char('{')?;
    for (i, v) in set.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{v}")?;
    }
    f.write_char('}')
}

/// Free-function form of [`Antichain::expand_at`].
pub fn expand_at(l: &Antichain, v: &Address) -> Result<Antichain> {
    l.expand_at(v)
}

/// Free-function form of [`Antichain::common_refinement`].
pub fn common_refinement(l: &Antichain, m: &Antichain) -> Result<Antichain> {
    l.common_refinement(m)
}

/// Merges two sorted complete antichains. Each output leaf comes with the
/// indices of its prefixes in `left` and `right`.
pub(crate) fn refine_sorted<'a>(
    left: &'a [Address],
    right: &'a [Address],
) -> Vec<(&'a Address, usize, usize)> {
    let mut out = Vec::with_capacity(left.len().max(right.len()));
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        let (a, b) = (&left[i], &right[j]);
        if a == b {
            out.push((a, i, j));
            i += 1;
            j += 1;
        } else if a.is_proper_prefix_of(b) {
            while j < right.len() && a.is_prefix_of(&right[j]) {
                out.push((&right[j], i, j));
                j += 1;
            }
            i += 1;
        } else if b.is_proper_prefix_of(a) {
            while i < left.len() && b.is_prefix_of(&left[i]) {
                out.push((&left[i], i, j));
                i += 1;
            }
            j += 1;
        } else {
            panic!("refine_sorted: inputs are not complete antichains ({a:?} vs {b:?})");
        }
    }
    out
}

/// Index of the leaf of a sorted antichain that is a prefix of `word`.
pub(crate) fn leaf_prefix_of(sorted: &[Address], word: &[u8]) -> Option<usize> {
    // The wanted leaf is the largest leaf that is <= word in lex order.
    let idx = match sorted.binary_search_by(|v| v.letters().cmp(word)) {
        Ok(i) => return Some(i),
        Err(0) => return None,
        Err(i) => i - 1,
    };
    sorted[idx].is_prefix_of_word(word).then_some(idx)
}

/// Whether the union of the balls in `union` contains the ball `ball`.
pub fn balls_cover(shape: &Shape, union: &[Address], ball: &Address) -> bool {
    if union.iter().any(|u| u.is_prefix_of(ball)) {
        return true;
    }
    if !union.iter().any(|u| ball.is_proper_prefix_of(u)) {
        return false;
    }
    (0..shape.child_count(ball)).all(|c| balls_cover(shape, union, &ball.child(c)))
}

/// Whether the ball `ball` meets the union of the balls in `union`.
pub fn balls_meet(union: &[Address], ball: &Address) -> bool {
    union.iter().any(|u| u.comparable(ball))
}

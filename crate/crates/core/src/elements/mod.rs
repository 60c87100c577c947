//! Tree-pair elements of the finitary spheromorphism group.
//!
//! A [`TreePair`] is a bijection between the leaves of two complete
//! antichains. It acts on the boundary by prefix substitution: the end
//! `v·x` goes to `w·x` whenever the domain leaf `v` is sent to `w`. Every
//! element has a unique reduced representative, obtained by collapsing
//! sibling families that are carried in letter order onto sibling families,
//! so equality of elements is equality of reduced forms.
//!
//! The same machinery serves the Higman–Thompson groups: the underlying
//! [`Shape`] may be a forest, in which case the top vertex is virtual and
//! never collapses.

mod automorphism;
mod metric;
mod portrait;
mod random;
mod word;

use std::fmt;

pub use automorphism::HalfTree;
pub use metric::{nonlocal_compactness_sequence, NonLocalCompactness};
pub use portrait::Portrait;
pub use random::{random_element, random_element_with, random_portrait, random_ray};
pub use word::{Factor, Generator, GroupWord};

use crate::boundary::{leaf_index_containing, Ray};
use crate::error::{Error, Result};
use crate::tree::{refine_sorted, write_address_set, Address, Antichain, Shape};

/// Similarity exponent of one piece: ratio `e^{value}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScaleExponent(pub i64);

/// Fixed-point structure of an element on one domain leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedSet {
    WholeBall,
    Single(Ray),
    Empty,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreePair {
    shape: Shape,
    domain: Vec<Address>,
    images: Vec<Address>,
}

impl TreePair {
    /// Builds an element from a domain antichain and the positional images of
    /// its leaves. The input need not be reduced.
    pub fn new(shape: Shape, domain: Vec<Address>, images: Vec<Address>) -> Result<TreePair> {
        if domain.len() != images.len() {
            return Err(Error::SizeMismatch(domain.len(), images.len()));
        }
        let mut pairs: Vec<(Address, Address)> = domain.into_iter().zip(images).collect();
        pairs.sort();
        let (domain, images): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        if domain.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotBijective);
        }
        Antichain::new(shape, domain.clone())?;
        let mut range = images.clone();
        range.sort();
        if range.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotBijective);
        }
        Antichain::new(shape, range)?;
        Ok(TreePair { shape, domain, images })
    }

    /// Pairs must be sorted by domain and describe a valid element.
    pub(crate) fn from_sorted_pairs(shape: Shape, pairs: Vec<(Address, Address)>) -> TreePair {
        let (domain, images) = pairs.into_iter().unzip();
        TreePair { shape, domain, images }
    }

    pub(crate) fn from_pairs(shape: Shape, mut pairs: Vec<(Address, Address)>) -> TreePair {
        pairs.sort_unstable();
        TreePair::from_sorted_pairs(shape, pairs)
    }

    pub fn identity(shape: Shape) -> TreePair {
        let top = shape.top_antichain();
        TreePair { shape, domain: top.clone(), images: top }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Domain leaves in lexicographic order.
    pub fn domain(&self) -> &[Address] {
        &self.domain
    }

    /// Images of the domain leaves, position by position.
    pub fn images(&self) -> &[Address] {
        &self.images
    }

    /// Range leaves in lexicographic order.
    pub fn range(&self) -> Vec<Address> {
        let mut r = self.images.clone();
        r.sort();
        r
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Address, &Address)> {
        self.domain.iter().zip(&self.images)
    }

    pub fn image_of_leaf(&self, v: &Address) -> Option<&Address> {
        self.domain.binary_search(v).ok().map(|i| &self.images[i])
    }

    /// Image of a vertex lying at or below some domain leaf.
    pub fn image_below_leaf(&self, v: &Address) -> Option<Address> {
        let i = crate::tree::leaf_prefix_of(&self.domain, v.letters())?;
        let tail = &v.letters()[self.domain[i].depth()..];
        Some(self.images[i].concat(tail))
    }

    pub fn is_identity(&self) -> bool {
        self.reduce().domain == self.shape.top_antichain()
    }

    /// The elementary modification at domain leaf `idx`: the leaf and its image
    /// are both replaced by their children.
    pub fn expand_leaf(&self, idx: usize) -> Result<TreePair> {
        let v = self.domain.get(idx).ok_or(Error::InvalidIndex(idx))?;
        let w = &self.images[idx];
        if v.is_root() {
            // Only the identity has the root as a leaf.
            let children = self.shape.children(v);
            return Ok(TreePair { shape: self.shape, domain: children.clone(), images: children });
        }
        let q = self.shape.q();
        let mut domain = Vec::with_capacity(self.len() + q as usize - 1);
        let mut images = Vec::with_capacity(self.len() + q as usize - 1);
        domain.extend_from_slice(&self.domain[..idx]);
        images.extend_from_slice(&self.images[..idx]);
        for c in 0..q {
            domain.push(v.child(c));
            images.push(w.child(c));
        }
        domain.extend_from_slice(&self.domain[idx + 1..]);
        images.extend_from_slice(&self.images[idx + 1..]);
        Ok(TreePair { shape: self.shape, domain, images })
    }

    /// Unique reduced representative.
    pub fn reduce(&self) -> TreePair {
        let q = self.shape.q() as usize;
        let mut stack: Vec<(Address, Address)> = Vec::with_capacity(self.len());
        for (v, w) in self.pairs() {
            stack.push((v.clone(), w.clone()));
            while let Some(collapsed) = collapsible_top(&stack, q) {
                stack.truncate(stack.len() - q);
                stack.push(collapsed);
            }
        }
        if self.shape.is_tree()
            && stack.len() == self.shape.roots() as usize
            && stack.iter().enumerate().all(|(i, (v, w))| {
                v.depth() == 1 && v.letters()[0] as usize == i && v == w
            })
        {
            return TreePair::identity(self.shape);
        }
        TreePair::from_sorted_pairs(self.shape, stack)
    }

    pub fn is_reduced(&self) -> bool {
        self.reduce() == *self
    }

    /// The element `self ∘ other` (apply `other` first), reduced.
    pub fn compose(&self, other: &TreePair) -> Result<TreePair> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch);
        }
        Ok(self.compose_raw(other).reduce())
    }

    /// Composition without the final reduction.
    pub(crate) fn compose_raw(&self, other: &TreePair) -> TreePair {
        let mut by_image: Vec<(&Address, &Address)> =
            other.images.iter().zip(&other.domain).collect();
        by_image.sort_unstable();
        let range: Vec<Address> = by_image.iter().map(|(w, _)| (*w).clone()).collect();
        let merged = refine_sorted(&range, &self.domain);
        let mut pairs = Vec::with_capacity(merged.len());
        for (r, bi, ai) in merged {
            let (w, v) = by_image[bi];
            let pre = v.concat(&r.letters()[w.depth()..]);
            let img = self.images[ai].concat(&r.letters()[self.domain[ai].depth()..]);
            pairs.push((pre, img));
        }
        TreePair::from_pairs(self.shape, pairs)
    }

    pub fn inverse(&self) -> TreePair {
        let pairs = self.images.iter().cloned().zip(self.domain.iter().cloned()).collect();
        TreePair::from_pairs(self.shape, pairs).reduce()
    }

    /// Equality as boundary maps.
    pub fn equals(&self, other: &TreePair) -> Result<bool> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch);
        }
        Ok(self.reduce() == other.reduce())
    }

    /// `self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &TreePair) -> Result<TreePair> {
        let ab = self.compose(other)?;
        let ab_ai = ab.compose(&self.inverse())?;
        ab_ai.compose(&other.inverse())
    }

    /// `c · self · c⁻¹`.
    pub fn conjugate_by(&self, c: &TreePair) -> Result<TreePair> {
        c.compose(self)?.compose(&c.inverse())
    }

    /// Image of an end.
    pub fn act(&self, xi: &Ray) -> Ray {
        let v = leaf_index_containing(&self.domain, xi);
        let i = self.domain.binary_search(v).expect("leaf of domain");
        xi.drop_prefix(v.depth()).prepend(self.images[i].letters())
    }

    /// Closed support, as the domain leaves of the reduced form that are not
    /// fixed. A leaf carried into or onto a ball nested with it counts whole.
    pub fn support(&self) -> Vec<Address> {
        let r = self.reduce();
        r.pairs().filter(|(v, w)| v != w).map(|(v, _)| v.clone()).collect()
    }

    /// Fixed points of the reduced form, leaf by leaf.
    pub fn fixed_rays(&self) -> Vec<(Address, FixedSet)> {
        let r = self.reduce();
        r.pairs()
            .map(|(v, w)| {
                let fixed = if v == w {
                    FixedSet::WholeBall
                } else if let Some(s) = v.suffix_in(w).or_else(|| w.suffix_in(v)) {
                    // v·x = w·x forces x = s^ω, and the fixed end is v·s^ω.
                    FixedSet::Single(Ray::normalized(v.letters().to_vec(), s.to_vec()))
                } else {
                    FixedSet::Empty
                };
                (v.clone(), fixed)
            })
            .collect()
    }

    /// For each domain leaf `v`, the exponent `depth(v) - depth(image(v))`.
    pub fn piecewise_scales(&self) -> Vec<(Address, ScaleExponent)> {
        self.pairs()
            .map(|(v, w)| (v.clone(), ScaleExponent(v.depth() as i64 - w.depth() as i64)))
            .collect()
    }

    /// Image of the ball `∂T_v` as a union of range balls (sorted).
    pub fn ball_image(&self, v: &Address) -> Vec<Address> {
        if let Some(img) = self.image_below_leaf(v) {
            return vec![img];
        }
        let start = self.domain.partition_point(|d| d < v);
        let mut out: Vec<Address> = self.domain[start..]
            .iter()
            .zip(&self.images[start..])
            .take_while(|(d, _)| v.is_prefix_of(d))
            .map(|(_, w)| w.clone())
            .collect();
        out.sort();
        out
    }
}

// If the top q stack entries form a full sibling family carried in letter
// order onto a full sibling family, returns the collapsed pair.
fn collapsible_top(stack: &[(Address, Address)], q: usize) -> Option<(Address, Address)> {
    if stack.len() < q {
        return None;
    }
    let family = &stack[stack.len() - q..];
    let (v0, w0) = &family[0];
    if v0.depth() < 2 || w0.depth() < 2 {
        return None;
    }
    let (vp, wp) = (&v0.letters()[..v0.depth() - 1], &w0.letters()[..w0.depth() - 1]);
    for (c, (v, w)) in family.iter().enumerate() {
        let ok = v.depth() == v0.depth()
            && w.depth() == w0.depth()
            && v.letters().starts_with(vp)
            && w.letters().starts_with(wp)
            && v.last_letter() == Some(c as u8)
            && w.last_letter() == Some(c as u8);
        if !ok {
            return None;
        }
    }
    Some((Address::from_letters(vp.to_vec()), Address::from_letters(wp.to_vec())))
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("tp{")?;
        for (i, v) in self.domain.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(" -> ")?;
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Writes a support set as `{v1,v2,...}`.
pub fn format_support(support: &[Address]) -> String {
    let mut s = String::new();
    write_address_set(&mut s, support).expect("string write");
    s
}

/// `({e}, {e}, id)` on the tree of the given shape.
pub fn identity(shape: Shape) -> TreePair {
    TreePair::identity(shape)
}

/// `a ∘ b`, applying `b` first.
pub fn compose(a: &TreePair, b: &TreePair) -> Result<TreePair> {
    a.compose(b)
}

pub fn inverse(a: &TreePair) -> TreePair {
    a.inverse()
}

pub fn reduce(t: &TreePair) -> TreePair {
    t.reduce()
}

pub fn equal(a: &TreePair, b: &TreePair) -> Result<bool> {
    a.equals(b)
}

pub fn act(a: &TreePair, xi: &Ray) -> Ray {
    a.act(xi)
}

/// The element exchanging the balls `∂T_v` and `∂T_w` by prefix substitution
/// and fixing everything else.
pub fn swap_balls(shape: Shape, v: &Address, w: &Address) -> Result<TreePair> {
    if v.comparable(w) {
        return Err(Error::Comparable(v.to_string(), w.to_string()));
    }
    let span = Antichain::spanning(shape, &[v.clone(), w.clone()])?;
    let pairs = span
        .into_leaves()
        .into_iter()
        .map(|x| {
            let y = if &x == v {
                w.clone()
            } else if &x == w {
                v.clone()
            } else {
                x.clone()
            };
            (x, y)
        })
        .collect();
    Ok(TreePair::from_sorted_pairs(shape, pairs).reduce())
}

/// The element acting by `pieces` inside `∂T_b` and as the identity elsewhere.
/// The sources and the targets must each form a complete antichain below `b`.
pub(crate) fn supported_in_ball(shape: Shape, b: &Address, pieces: Vec<(Address, Address)>) -> TreePair {
    let span = Antichain::spanning(shape, std::slice::from_ref(b)).expect("single target");
    let mut pairs: Vec<(Address, Address)> =
        span.into_leaves().into_iter().filter(|x| x != b).map(|x| (x.clone(), x)).collect();
    pairs.extend(pieces);
    TreePair::from_pairs(shape, pairs).reduce()
}

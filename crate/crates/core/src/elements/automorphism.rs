//! Recognizing elements induced by tree automorphisms.
//!
//! An automorphism carries half-trees to half-trees, and the boundary of a
//! half-tree is either a ball `∂T_x` or the complement of one. Conversely an
//! element whose ball images are all of this form is induced by a unique
//! automorphism, whose value at `u` is the vertex where the images of the
//! `q + 1` half-trees at `u` meet.

use std::collections::BTreeSet;

use super::TreePair;
use crate::error::{Error, Result};
use crate::tree::{lcp, Address};

/// Boundary of a half-tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HalfTree {
    /// `∂T_x`: the half-tree below the edge `(parent(x), x)`.
    Ball(Address),
    /// `∂T ∖ ∂T_x`: the half-tree above the edge `(parent(x), x)`.
    CoBall(Address),
}

impl HalfTree {
    /// The endpoint of the cut edge lying inside the half-tree's complement,
    /// i.e. the vertex from which the half-tree hangs.
    fn base(&self) -> Option<Address> {
        match self {
            HalfTree::Ball(x) => x.parent(),
            HalfTree::CoBall(x) => Some(x.clone()),
        }
    }

    fn complement(self) -> HalfTree {
        match self {
            HalfTree::Ball(x) => HalfTree::CoBall(x),
            HalfTree::CoBall(x) => HalfTree::Ball(x),
        }
    }
}

// Leaves of `sorted` lying below `x`.
fn count_below(sorted: &[Address], x: &Address) -> usize {
    let lo = sorted.partition_point(|r| r < x);
    sorted[lo..].iter().take_while(|r| x.is_prefix_of(r)).count()
}

fn as_ball(range: &[Address], set: &[Address]) -> Option<Address> {
    let first = set.first()?;
    let x = set[1..].iter().fold(first.clone(), |acc, w| lcp(&acc, w));
    (!x.is_root() && count_below(range, &x) == set.len()).then_some(x)
}

// `set` is a sorted subset of the sorted complete antichain `range`.
fn classify(range: &[Address], set: &[Address]) -> Option<HalfTree> {
    if let Some(x) = as_ball(range, set) {
        return Some(HalfTree::Ball(x));
    }
    let rest: Vec<Address> = range.iter().filter(|r| set.binary_search(r).is_err()).cloned().collect();
    as_ball(range, &rest).map(HalfTree::CoBall)
}

fn core_vertices(domain: &[Address]) -> BTreeSet<Address> {
    let mut core = BTreeSet::new();
    for v in domain {
        for d in 1..v.depth() {
            core.insert(Address::from_letters(v.letters()[..d].to_vec()));
        }
    }
    core
}

impl TreePair {
    /// Image of the ball `∂T_u` (`u ≠ e`) as a half-tree boundary, if it is one.
    pub fn ball_image_half_tree(&self, u: &Address) -> Option<HalfTree> {
        if u.is_root() {
            return None;
        }
        let image = self.ball_image(u);
        if image.len() == 1 {
            return Some(HalfTree::Ball(image[0].clone()));
        }
        classify(&self.range(), &image)
    }

    fn half_trees_map_to_half_trees(&self) -> bool {
        let range = self.range();
        core_vertices(&self.domain).iter().all(|u| {
            let image = self.ball_image(u);
            image.len() == 1 || classify(&range, &image).is_some()
        })
    }

    /// Whether the element is induced by an automorphism of the tree.
    pub fn is_automorphism(&self) -> bool {
        if !self.shape.is_tree() {
            return false;
        }
        let r = self.reduce();
        if !r.half_trees_map_to_half_trees() || !r.inverse().half_trees_map_to_half_trees() {
            return false;
        }
        core_vertices(&r.domain).iter().chain([Address::root()].iter()).all(|u| r.vertex_image_unchecked(u).is_some())
    }

    fn vertex_image_unchecked(&self, u: &Address) -> Option<Address> {
        let mut bases = Vec::with_capacity(self.shape.q() as usize + 1);
        if !u.is_root() {
            bases.push(self.ball_image_half_tree(u)?.complement().base()?);
        }
        for c in self.shape.children(u) {
            bases.push(self.ball_image_half_tree(&c)?.base()?);
        }
        let first = bases[0].clone();
        bases.iter().all(|b| *b == first).then_some(first)
    }

    /// Image of the vertex `u` under the inducing automorphism.
    pub fn vertex_image(&self, u: &Address) -> Result<Address> {
        if !self.is_automorphism() {
            return Err(Error::NotAutomorphism);
        }
        self.shape.check(u)?;
        self.reduce().vertex_image_unchecked(u).ok_or(Error::NotAutomorphism)
    }

    /// Whether the inducing automorphism preserves the parity of depth.
    pub fn is_type_preserving(&self) -> Result<bool> {
        if !self.is_automorphism() {
            return Err(Error::NotAutomorphism);
        }
        Ok(self.reduce().pairs().all(|(v, w)| (v.depth() + w.depth()) % 2 == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{addrs, s2, tp};
    use super::*;

    fn tau() -> TreePair {
        tp(s2(), &["00", "01", "1", "2"], &["0", "2", "11", "10"])
    }

    fn a(s: &str) -> Address {
        addrs(&[s])[0].clone()
    }

    #[test]
    fn automorphism_examples() {
        assert!(tp(s2(), &["0", "1", "2"], &["1", "0", "2"]).is_automorphism());
        assert!(tau().is_automorphism());
        assert_eq!(tau().ball_image_half_tree(&a("0")), Some(HalfTree::CoBall(a("1"))));
        let not = tp(s2(), &["00", "01", "10", "11", "2"], &["00", "10", "01", "11", "2"]);
        assert!(!not.is_automorphism());
        assert!(TreePair::identity(s2()).is_automorphism());
    }

    #[test]
    fn vertex_image_examples() {
        let swap = tp(s2(), &["0", "1", "2"], &["1", "0", "2"]);
        assert_eq!(swap.vertex_image(&Address::root()).unwrap(), Address::root());
        assert_eq!(swap.vertex_image(&a("01")).unwrap(), a("11"));
        assert_eq!(tau().vertex_image(&Address::root()).unwrap(), a("1"));
        assert_eq!(tau().vertex_image(&a("0")).unwrap(), Address::root());
        let not = tp(s2(), &["00", "01", "10", "11", "2"], &["00", "10", "01", "11", "2"]);
        assert_eq!(not.vertex_image(&Address::root()), Err(Error::NotAutomorphism));
    }

    #[test]
    fn type_examples() {
        let swap = tp(s2(), &["0", "1", "2"], &["1", "0", "2"]);
        assert_eq!(swap.is_type_preserving(), Ok(true));
        assert_eq!(tau().is_type_preserving(), Ok(false));
        let tau2 = tau().compose(&tau()).unwrap();
        assert_eq!(tau2.is_type_preserving(), Ok(true));
        let not = tp(s2(), &["00", "01", "10", "11", "2"], &["00", "10", "01", "11", "2"]);
        assert_eq!(not.is_type_preserving(), Err(Error::NotAutomorphism));
    }

    #[test]
    fn scaling_is_not_an_automorphism() {
        // 0 ↦ 00 shrinks a ball; not induced by any automorphism.
        let t = tp(s2(), &["0", "10", "11", "2"], &["00", "01", "1", "2"]);
        assert!(!t.is_automorphism());
    }
}

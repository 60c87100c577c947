//! Finitary basepoint-fixing automorphisms given by local permutations.
//!
//! Entries are indexed by image vertices: if `φ(u) = y` then
//! `φ(u·i) = y·π_y(i)`, where `π_y` is the permutation stored at `y`
//! (the identity when absent).

use std::collections::BTreeMap;
use std::fmt;

use super::TreePair;
use crate::error::{Error, Result};
use crate::tree::{Address, Shape};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Portrait {
    shape: Shape,
    entries: BTreeMap<Address, Vec<u8>>,
}

fn is_identity_perm(p: &[u8]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x as usize)
}

fn invert_perm(p: &[u8]) -> Vec<u8> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

impl Portrait {
    /// Validates each local permutation against the number of children of
    /// its vertex. Identity entries are dropped.
    pub fn new(shape: Shape, entries: impl IntoIterator<Item = (Address, Vec<u8>)>) -> Result<Portrait> {
        let mut map = BTreeMap::new();
        for (u, perm) in entries {
            shape.check(&u)?;
            let n = shape.child_count(&u) as usize;
            let mut seen = vec![false; n];
            let valid = perm.len() == n
                && perm.iter().all(|&x| (x as usize) < n && !std::mem::replace(&mut seen[x as usize], true));
            if !valid || map.contains_key(&u) {
                return Err(Error::InvalidPermutation(u.to_string()));
            }
            if !is_identity_perm(&perm) {
                map.insert(u, perm);
            }
        }
        Ok(Portrait { shape, entries: map })
    }

    pub fn identity(shape: Shape) -> Portrait {
        Portrait { shape, entries: BTreeMap::new() }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Address, &[u8])> {
        self.entries.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_empty()
    }

    fn local(&self, y: &Address) -> Option<&[u8]> {
        self.entries.get(y).map(Vec::as_slice)
    }

    /// Image of a vertex, twisting letter by letter along the path.
    pub fn apply(&self, v: &Address) -> Address {
        let mut image = Vec::with_capacity(v.depth());
        for &c in v.letters() {
            let y = Address::from_letters(image.clone());
            image.push(self.local(&y).map_or(c, |p| p[c as usize]));
        }
        Address::from_letters(image)
    }

    /// Preimage of a vertex.
    pub fn apply_inverse(&self, w: &Address) -> Address {
        let mut pre = Vec::with_capacity(w.depth());
        for (i, &d) in w.letters().iter().enumerate() {
            let y = Address::from_letters(w.letters()[..i].to_vec());
            let c = match self.local(&y) {
                Some(p) => p.iter().position(|&x| x == d).expect("permutation") as u8,
                None => d,
            };
            pre.push(c);
        }
        Address::from_letters(pre)
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &Portrait) -> Result<Portrait> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch);
        }
        let mut keys: Vec<Address> = self.entries.keys().cloned().collect();
        keys.extend(other.entries.keys().map(|y| self.apply(y)));
        keys.sort();
        keys.dedup();
        let mut entries = BTreeMap::new();
        for z in keys {
            let n = self.shape.child_count(&z) as usize;
            let outer = self.local(&z);
            let inner = other.local(&self.apply_inverse(&z));
            let perm: Vec<u8> = (0..n as u8)
                .map(|i| {
                    let j = inner.map_or(i, |p| p[i as usize]);
                    outer.map_or(j, |p| p[j as usize])
                })
                .collect();
            if !is_identity_perm(&perm) {
                entries.insert(z, perm);
            }
        }
        Ok(Portrait { shape: self.shape, entries })
    }

    pub fn inverse(&self) -> Portrait {
        let entries = self
            .entries
            .iter()
            .map(|(y, p)| (self.apply_inverse(y), invert_perm(p)))
            .collect();
        Portrait { shape: self.shape, entries }
    }

    /// The same automorphism as a reduced tree pair.
    pub fn to_tree_pair(&self) -> TreePair {
        // Image-side antichain below every vertex that carries a permutation.
        let mut range = Vec::new();
        let mut stack: Vec<Address> = self.shape.top_antichain();
        stack.reverse();
        while let Some(x) = stack.pop() {
            let has_key_below = self.entries.range(&x..).next().is_some_and(|(k, _)| x.is_prefix_of(k));
            if has_key_below {
                for c in (0..self.shape.child_count(&x)).rev() {
                    stack.push(x.child(c));
                }
            } else {
                range.push(x);
            }
        }
        let pairs = range.into_iter().map(|y| (self.apply_inverse(&y), y)).collect();
        TreePair::from_pairs(self.shape, pairs).reduce()
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("pt{")?;
        for (i, (u, p)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{u}:(")?;
            for (j, x) in p.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

//! Seeded pseudo-random elements, portraits, and rays.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Portrait, TreePair};
use crate::boundary::Ray;
use crate::tree::{Address, Shape};

fn random_antichain<R: Rng>(rng: &mut R, shape: Shape, expansions: usize) -> Vec<Address> {
    let mut leaves = shape.top_antichain();
    for _ in 0..expansions {
        let v = leaves.swap_remove(rng.gen_range(0..leaves.len()));
        leaves.extend(shape.children(&v));
    }
    leaves
}

/// A reduced element built from `k` random expansions on each side, with `k`
/// uniform in `0..=max_expansions`, and a uniformly random leaf bijection.
pub fn random_element_with<R: Rng>(rng: &mut R, shape: Shape, max_expansions: usize) -> TreePair {
    let k = rng.gen_range(0..=max_expansions);
    random_element_exact(rng, shape, k)
}

/// As [`random_element_with`] with exactly `k` expansions per side.
pub(crate) fn random_element_exact<R: Rng>(rng: &mut R, shape: Shape, k: usize) -> TreePair {
    let domain = random_antichain(rng, shape, k);
    let mut range = random_antichain(rng, shape, k);
    range.shuffle(rng);
    TreePair::from_pairs(shape, domain.into_iter().zip(range).collect()).reduce()
}

/// Deterministic in `seed`.
pub fn random_element(shape: Shape, seed: u64, max_expansions: usize) -> TreePair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_element_with(&mut rng, shape, max_expansions)
}

/// Up to `max_entries` random local permutations at vertices of depth at most `max_depth`.
pub fn random_portrait<R: Rng>(rng: &mut R, shape: Shape, max_entries: usize, max_depth: usize) -> Portrait {
    let n = rng.gen_range(0..=max_entries);
    let mut entries = std::collections::BTreeMap::new();
    for _ in 0..n {
        let depth = rng.gen_range(0..=max_depth);
        let mut u = Address::root();
        if !shape.is_tree() {
            u = u.child(rng.gen_range(0..shape.roots()));
        }
        while u.depth() < depth {
            let c = rng.gen_range(0..shape.child_count(&u));
            u = u.child(c);
        }
        let mut perm: Vec<u8> = (0..shape.child_count(&u)).collect();
        perm.shuffle(rng);
        entries.insert(u, perm);
    }
    Portrait::new(shape, entries).expect("valid random portrait")
}

/// An eventually periodic end with preperiod length `< max_pre` and period
/// length in `1..=max_per`.
pub fn random_ray<R: Rng>(rng: &mut R, shape: Shape, max_pre: usize, max_per: usize) -> Ray {
    let pre_len = rng.gen_range(0..max_pre.max(1));
    let per_len = rng.gen_range(1..=max_per.max(1));
    // A first letter that recurs in the period must be admissible deeper down.
    let first_bound = if pre_len > 0 { shape.roots() } else { shape.roots().min(shape.q()) };
    let letters: Vec<u8> = (0..pre_len + per_len)
        .map(|i| rng.gen_range(0..if i == 0 { first_bound } else { shape.q() }))
        .collect();
    let (pre, per) = letters.split_at(pre_len);
    Ray::normalized(pre.to_vec(), per.to_vec())
}

#![allow(dead_code)]

use neretin_core::boundary::normalize_ray;
use neretin_core::{Address, Antichain, Degree, Ray, Shape, TreePair};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tree(q: u32) -> Shape {
    Shape::tree(Degree::new(q).unwrap())
}

pub fn forest(q: u32, r: u32) -> Shape {
    Shape::forest(Degree::new(q).unwrap(), r).unwrap()
}

pub fn addr(s: &str) -> Address {
    Address::parse(s, &tree(13)).unwrap()
}

/// A uniformly grown vertex of depth `1..=max_depth`.
pub fn random_vertex<R: Rng>(rng: &mut R, shape: &Shape, max_depth: usize) -> Address {
    let depth = rng.gen_range(1..=max_depth.max(1));
    let mut v = Address::root();
    while v.depth() < depth {
        let c = rng.gen_range(0..shape.child_count(&v));
        v = v.child(c);
    }
    v
}

/// Letters below a non-root vertex.
pub fn random_tail<R: Rng>(rng: &mut R, q: u8, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..q)).collect()
}

/// An end through `v` with a random preperiod and period.
pub fn random_ray_below<R: Rng>(rng: &mut R, shape: &Shape, v: &Address) -> Ray {
    let q = shape.q();
    let mut pre = v.letters().to_vec();
    let extra = rng.gen_range(0..4);
    pre.extend(random_tail(rng, q, extra));
    let per_len = rng.gen_range(1..=3);
    let per = random_tail(rng, q, per_len);
    Ray::new(shape, pre, per).unwrap()
}

/// Antichain below `v` reached by `k` random expansions.
pub fn random_antichain_below<R: Rng>(rng: &mut R, shape: &Shape, v: &Address, k: usize) -> Vec<Address> {
    let mut leaves = vec![v.clone()];
    for _ in 0..k {
        let i = rng.gen_range(0..leaves.len());
        let x = leaves.swap_remove(i);
        leaves.extend(shape.children(&x));
    }
    leaves
}

/// A random element supported in `∂T_v`.
pub fn random_in_ball<R: Rng>(rng: &mut R, shape: &Shape, v: &Address, k: usize) -> TreePair {
    let rest: Vec<Address> =
        Antichain::spanning(*shape, std::slice::from_ref(v)).unwrap().into_leaves().into_iter().filter(|x| x != v).collect();
    let dom = random_antichain_below(rng, shape, v, k);
    let mut img = random_antichain_below(rng, shape, v, k);
    img.shuffle(rng);
    let mut domain = rest.clone();
    let mut images = rest;
    domain.extend(dom);
    images.extend(img);
    TreePair::new(*shape, domain, images).unwrap().reduce()
}

/// An element whose domain and range both have exactly `n` leaves (rounded
/// to the next achievable size).
pub fn random_with_leaves<R: Rng>(rng: &mut R, shape: &Shape, n: usize) -> TreePair {
    let grow = |rng: &mut R| {
        let mut leaves = shape.top_antichain();
        while leaves.len() < n {
            let i = rng.gen_range(0..leaves.len());
            let x = leaves.swap_remove(i);
            leaves.extend(shape.children(&x));
        }
        leaves
    };
    let dom = grow(rng);
    let mut img = grow(rng);
    img.shuffle(rng);
    TreePair::new(*shape, dom, img).unwrap()
}

/// Action by direct prefix lookup, independent of the library's search.
pub fn naive_act(t: &TreePair, xi: &Ray) -> Ray {
    for (d, w) in t.pairs() {
        if xi.prefix(d.depth()) == d.letters() {
            let mut pre = w.letters().to_vec();
            let rest = xi.drop_prefix(d.depth());
            pre.extend_from_slice(rest.preperiod());
            return normalize_ray(t.shape(), pre, rest.period().to_vec()).unwrap();
        }
    }
    panic!("no domain leaf contains {xi}");
}

/// Gromov product by walking both ends letter by letter.
pub fn naive_gromov(a: &Ray, b: &Ray) -> Option<usize> {
    let bound = a.preperiod().len() + b.preperiod().len() + a.period().len() * b.period().len() + 2;
    (0..bound).find(|&i| a.letter(i) != b.letter(i))
}

/// Quadratic inversion count.
pub fn naive_inversions(p: &[usize]) -> u64 {
    let mut n = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                n += 1;
            }
        }
    }
    n
}

/// Parity of the leaf permutation of `t` as given, unreduced: leaf `i` of
/// the domain goes to the rank of its image among the range leaves.
pub fn unreduced_parity(t: &TreePair) -> u8 {
    let mut sorted: Vec<&Address> = t.images().iter().collect();
    sorted.sort();
    let perm: Vec<usize> = t.images().iter().map(|w| sorted.binary_search(&w).unwrap()).collect();
    (naive_inversions(&perm) % 2) as u8
}

pub fn product(shape: &Shape, items: &[TreePair]) -> TreePair {
    items.iter().fold(TreePair::identity(*shape), |acc, x| acc.compose(x).unwrap())
}

/// Ends used to compare elements pointwise.
pub fn probe_rays<R: Rng>(rng: &mut R, shape: &Shape, n: usize) -> Vec<Ray> {
    (0..n)
        .map(|_| {
            let v = random_vertex(rng, shape, 4);
            random_ray_below(rng, shape, &v)
        })
        .collect()
}

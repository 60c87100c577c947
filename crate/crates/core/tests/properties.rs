mod common;

use common::*;
use neretin_core::elements::{random_element_with, random_portrait};
use neretin_core::generation::local_permutation;
use neretin_core::higman_thompson::{inversion_count, leaf_permutation, HtElement};
use neretin_core::{gromov_product, visual_distance, Address, TreePair};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn degree() -> impl Strategy<Value = u32> {
    2u32..=6
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduce_is_idempotent_and_canonical(q in degree(), seed: u64) {
        let shape = tree(q);
        let mut rng = rng(seed);
        let a = random_element_with(&mut rng, shape, 8);
        prop_assert_eq!(a.reduce(), a.clone());
        prop_assert!(a.is_reduced());
        let idx = rng.gen_range(0..a.len());
        let e = a.expand_leaf(idx).unwrap();
        prop_assert!(!e.is_reduced());
        prop_assert!(e.equals(&a).unwrap());
    }

    #[test]
    fn inverse_is_an_involution(q in degree(), seed: u64) {
        let shape = tree(q);
        let mut rng = rng(seed);
        let a = random_element_with(&mut rng, shape, 8);
        let b = random_element_with(&mut rng, shape, 8);
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        let ab_inv = a.compose(&b).unwrap().inverse();
        prop_assert_eq!(ab_inv, b.inverse().compose(&a.inverse()).unwrap());
    }

    #[test]
    fn act_matches_the_oracle(q in degree(), seed: u64) {
        let shape = tree(q);
        let mut rng = rng(seed);
        let a = random_element_with(&mut rng, shape, 8);
        for xi in probe_rays(&mut rng, &shape, 10) {
            prop_assert_eq!(a.act(&xi), naive_act(&a, &xi));
            prop_assert_eq!(a.inverse().act(&a.act(&xi)), xi);
        }
    }

    #[test]
    fn support_is_exactly_the_moved_part(q in degree(), seed: u64) {
        let shape = tree(q);
        let mut rng = rng(seed);
        let a = random_element_with(&mut rng, shape, 8);
        let support = a.support();
        for xi in probe_rays(&mut rng, &shape, 20) {
            if !support.iter().any(|v| xi.passes_through(v)) {
                prop_assert_eq!(a.act(&xi), xi);
            }
        }
    }

    #[test]
    fn ball_image_agrees_with_the_action(q in degree(), seed: u64) {
        let shape = tree(q);
        let mut rng = rng(seed);
        let a = random_element_with(&mut rng, shape, 8);
        let v = random_vertex(&mut rng, &shape, 4);
        let image = a.ball_image(&v);
        for _ in 0..10 {
            let xi = random_ray_below(&mut rng, &shape, &v);
            let y = a.act(&xi);
            prop_assert!(image.iter().any(|w| y.passes_through(w)));
        }
    }

    #[test]
    fn gromov_product_matches_the_oracle(q in degree(), seed: u64) {
        let shape = tree(q);
        let mut rng = rng(seed);
        let rays = probe_rays(&mut rng, &shape, 6);
        for x in &rays {
            for y in &rays {
                prop_assert_eq!(gromov_product(x, y), naive_gromov(x, y));
                prop_assert_eq!(visual_distance(x, y), visual_distance(y, x));
            }
        }
    }

    #[test]
    fn portraits_compose_like_tree_pairs(q in 2u32..=4, seed: u64) {
        let shape = tree(q);
        let mut rng = rng(seed);
        let p = random_portrait(&mut rng, shape, 4, 3);
        let r = random_portrait(&mut rng, shape, 4, 3);
        let pr = p.compose(&r).unwrap();
        prop_assert_eq!(pr.to_tree_pair(), p.to_tree_pair().compose(&r.to_tree_pair()).unwrap());
        prop_assert_eq!(p.inverse().to_tree_pair(), p.to_tree_pair().inverse());
        prop_assert!(p.to_tree_pair().is_automorphism());
        let v = random_vertex(&mut rng, &shape, 4);
        prop_assert_eq!(p.to_tree_pair().vertex_image(&v).unwrap(), p.apply(&v));
        prop_assert_eq!(p.apply_inverse(&p.apply(&v)), v);
    }

    #[test]
    fn local_permutations_are_automorphisms(q in 2u32..=4, seed: u64) {
        let shape = tree(q);
        let mut rng = rng(seed);
        let depth = rng.gen_range(0..=3);
        let u = if depth == 0 { Address::root() } else { random_vertex(&mut rng, &shape, depth) };
        let mut perm: Vec<u8> = (0..=q as u8).collect();
        perm.shuffle(&mut rng);
        let a = local_permutation(shape, &u, &perm).unwrap();
        prop_assert!(a.is_automorphism());
        prop_assert_eq!(a.vertex_image(&u).unwrap(), u.clone());
        prop_assert_eq!(a.is_type_preserving(), Ok(true));
        for c in 0..q as u8 {
            let child = u.child(c);
            let moved = a.vertex_image(&child).unwrap();
            prop_assert!(moved.parent() == Some(u.clone()) || u.parent() == Some(moved.clone()));
        }
    }

    #[test]
    fn automorphism_detection_is_consistent(q in 2u32..=4, seed: u64) {
        let shape = tree(q);
        let mut rng = rng(seed);
        let a = random_element_with(&mut rng, shape, 6);
        if a.is_automorphism() {
            prop_assert!(a.inverse().is_automorphism());
            let v = random_vertex(&mut rng, &shape, 3);
            prop_assert!(a.ball_image_half_tree(&v).is_some());
            let w = a.vertex_image(&v).unwrap();
            prop_assert_eq!(a.inverse().vertex_image(&w).unwrap(), v);
        } else {
            prop_assert_eq!(a.is_type_preserving(), Err(neretin_core::Error::NotAutomorphism));
        }
    }

    #[test]
    fn inversion_count_matches_the_oracle(q in 2u32..=5, seed: u64) {
        let mut rng = rng(seed);
        let e = HtElement::from_pair(random_element_with(&mut rng, forest(q, 2), 10)).unwrap();
        let sigma = leaf_permutation(e.pair());
        prop_assert_eq!(inversion_count(&sigma), naive_inversions(sigma.images()));
    }
}

#[test]
fn compose_matches_pointwise_composition_on_large_elements() {
    let shape = tree(3);
    let mut rng = rng(99);
    let a = random_with_leaves(&mut rng, &shape, 500);
    let b = random_with_leaves(&mut rng, &shape, 500);
    let ab: TreePair = a.compose(&b).unwrap();
    for xi in probe_rays(&mut rng, &shape, 200) {
        assert_eq!(ab.act(&xi), naive_act(&a, &naive_act(&b, &xi)));
    }
}

mod common;

use common::*;
use neretin_core::elements::{random_element_with, random_portrait, random_ray};
use neretin_core::higman_thompson::{Edge, ForestAddress, HtElement};
use neretin_core::text::{eval_str, parse, render, Context, ParseError, Value};
use neretin_core::{Degree, Error};
use rand::Rng;

fn ctx(q: u32) -> Context {
    Context::new(Degree::new(q).unwrap(), 2)
}

#[test]
fn golden_corpus() {
    let corpus = include_str!("data/golden.tsv");
    let mut n = 0;
    for line in corpus.lines().filter(|l| !l.is_empty()) {
        let cols: Vec<&str> = line.split('\t').collect();
        let (q, input, expected) = (cols[0].parse().unwrap(), cols[1], cols[2]);
        let v = eval_str(input, ctx(q)).unwrap_or_else(|e| panic!("{input}: {e}"));
        assert_eq!(render(&v), expected, "canonical text of {input}");
        assert_eq!(eval_str(expected, ctx(q)).unwrap(), v, "{expected} does not parse back");
        n += 1;
    }
    assert!(n >= 30);
}

fn round_trip(v: Value, c: Context) {
    let text = render(&v);
    let back = eval_str(&text, c).unwrap_or_else(|e| panic!("{text}: {e}"));
    assert_eq!(back, v, "{text}");
    assert_eq!(render(&back), text);
}

#[test]
fn randomized_round_trips() {
    let mut rng = rng(2024);
    let mut n = 0;
    for i in 0..300 {
        let q = [2, 3, 4, 5, 7, 13][i % 6];
        let c = ctx(q);
        let t = tree(q);
        let f = forest(q, 2);
        round_trip(Value::Pair(random_element_with(&mut rng, t, 8)), c);
        round_trip(Value::Portrait(random_portrait(&mut rng, t, 4, 3)), c);
        round_trip(Value::Ray(random_ray(&mut rng, t, 5, 4)), c);
        round_trip(Value::Ht(HtElement::from_pair(random_element_with(&mut rng, f, 8)).unwrap()), c);
        let v = random_vertex(&mut rng, &t, 5);
        round_trip(Value::Address(v.clone()), c);
        round_trip(Value::Edge(Edge::new(&t, v.parent().unwrap(), v).unwrap()), c);
        let w = random_vertex(&mut rng, &f, 5);
        round_trip(Value::Forest(ForestAddress::from_address(&w).unwrap()), c);
        n += 7;
    }
    assert!(n >= 1000);
}

#[test]
fn products_render_to_their_value() {
    let mut rng = rng(7);
    for i in 0..200 {
        let q = [2, 3][i % 2];
        let t = tree(q);
        let a = random_element_with(&mut rng, t, 5);
        let p = random_portrait(&mut rng, t, 3, 2);
        let expr = format!("a = {a}; p = {p}; inv(a) * p * comm(a, p)");
        let v = eval_str(&expr, ctx(q)).unwrap();
        let expected = a.inverse().compose(&p.to_tree_pair()).unwrap().compose(&a.commutator(&p.to_tree_pair()).unwrap()).unwrap();
        assert_eq!(v, Value::Pair(expected));
        if rng.gen_bool(0.5) {
            round_trip(v, ctx(q));
        }
    }
}

#[test]
fn errors_carry_positions() {
    let c = ctx(2);
    match parse("tp{0,1,2 -> 1,0,2", c) {
        Err(ParseError::Syntax { pos, expected, .. }) => {
            assert_eq!(pos, 17);
            assert!(expected.iter().any(|e| e.contains('}')), "{expected:?}");
        }
        other => panic!("{other:?}"),
    }
    match eval_str("x = tp{0,1,2->1,0,2}; x * tp{0,1 -> 1,0}", c) {
        Err(ParseError::Semantic { pos, literal, error: Error::NotAntichain(_) }) => {
            assert_eq!(pos, 26);
            assert_eq!(literal, "tp{0,1 -> 1,0}");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(eval_str("tp{0,1,2->0,1,1}", c), Err(ParseError::Semantic { error: Error::NotBijective, .. })));
    assert!(matches!(eval_str("tp{0,1,2->0,1}", c), Err(ParseError::Semantic { error: Error::SizeMismatch(3, 2), .. })));
    assert!(matches!(eval_str("pt{e:(0,0,1)}", c), Err(ParseError::Semantic { error: Error::InvalidPermutation(_), .. })));
    assert!(matches!(eval_str("t3:0", c), Err(ParseError::Semantic { .. })));
    assert!(matches!(parse("tp{0,1,2 -> 1,0,2} $", c), Err(ParseError::Syntax { pos: 19, .. })));
}

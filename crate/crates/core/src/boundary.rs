//! Eventually periodic ends and the visual metric with `ε = 1`.
//!
//! An end is stored as the letter stream of its ray from the basepoint,
//! `pre · per · per · …`, in normal form: the period is primitive and the
//! preperiod is as short as possible. Two rays are equal iff their normal
//! forms coincide.
//!
//! Distances are kept exactly as exponents: `d(ξ, η) = e^{-(ξ,η)}` where
//! `(ξ,η)` is the length of the common initial segment of the two streams.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::tree::{write_word, Address, Antichain, Shape};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    pre: Vec<u8>,
    per: Vec<u8>,
}

impl Ray {
    /// Builds the normal form of `pre · per^ω`, checking the letters against `shape`.
    pub fn new(shape: &Shape, pre: Vec<u8>, per: Vec<u8>) -> Result<Ray> {
        normalize_ray(shape, pre, per)
    }

    pub(crate) fn normalized(mut pre: Vec<u8>, mut per: Vec<u8>) -> Ray {
        let n = per.len();
        if let Some(d) = (1..=n).find(|&d| n.is_multiple_of(d) && (d..n).all(|i| per[i] == per[i - d])) {
            per.truncate(d);
        }
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Ray { pre, per }
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.per
    }

    /// Letter at position `i` of the stream.
    pub fn letter(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    /// First `n` letters of the stream.
    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.letter(i)).collect()
    }

    /// The stream with its first `n` letters removed.
    pub fn drop_prefix(&self, n: usize) -> Ray {
        if n <= self.pre.len() {
            return Ray { pre: self.pre[n..].to_vec(), per: self.per.clone() };
        }
        let mut per = self.per.clone();
        per.rotate_left((n - self.pre.len()) % self.per.len());
        Ray::normalized(Vec::new(), per)
    }

    /// The stream `word · self`.
    pub fn prepend(&self, word: &[u8]) -> Ray {
        let mut pre = word.to_vec();
        pre.extend_from_slice(&self.pre);
        Ray::normalized(pre, self.per.clone())
    }

    /// Whether the ray passes through `v`.
    pub fn passes_through(&self, v: &Address) -> bool {
        v.letters().iter().enumerate().all(|(i, &c)| self.letter(i) == c)
    }

    /// Number of letters after which both the preperiods are done and the
    /// periods have realigned.
    fn horizon(&self, other: &Ray) -> usize {
        self.pre.len().max(other.pre.len()) + lcm(self.per.len(), other.per.len())
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ray{")?;
        write_word(f, &self.pre)?;
        f.write_str(".(")?;
        write_word(f, &self.per)?;
        f.write_str(")}")
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Normal form of the end with stream `pre · per^ω`.
pub fn normalize_ray(shape: &Shape, pre: Vec<u8>, per: Vec<u8>) -> Result<Ray> {
    if per.is_empty() {
        return Err(Error::InvalidRay("empty period".into()));
    }
    let stream_len = pre.len() + 2 * per.len();
    let raw = Ray { pre, per };
    for i in 0..stream_len {
        let c = raw.letter(i);
        let bound = if i == 0 { shape.roots() } else { shape.q() };
        if c >= bound {
            return Err(Error::InvalidRay(format!("letter {c} not allowed at position {i}")));
        }
    }
    Ok(Ray::normalized(raw.pre, raw.per))
}

/// Equality of the two ends.
pub fn rays_equal(xi: &Ray, eta: &Ray) -> bool {
    let h = xi.horizon(eta);
    (0..h).all(|i| xi.letter(i) == eta.letter(i))
}

/// Gromov product based at the basepoint; `None` stands for `+∞` (equal rays).
pub fn gromov_product(xi: &Ray, eta: &Ray) -> Option<usize> {
    let h = xi.horizon(eta);
    (0..h).find(|&i| xi.letter(i) != eta.letter(i))
}

/// A visual distance `e^{-n}` stored as its exponent, or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogDistance {
    Exp(usize),
    Zero,
}

impl LogDistance {
    pub fn exponent(self) -> Option<usize> {
        match self {
            LogDistance::Exp(n) => Some(n),
            LogDistance::Zero => None,
        }
    }

    /// Decimal value, for display only.
    pub fn value(self) -> f64 {
        match self {
            LogDistance::Exp(n) => (-(n as f64)).exp(),
            LogDistance::Zero => 0.0,
        }
    }
}

impl Ord for LogDistance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogDistance::Zero, LogDistance::Zero) => Ordering::Equal,
            (LogDistance::Zero, _) => Ordering::Less,
            (_, LogDistance::Zero) => Ordering::Greater,
            (LogDistance::Exp(a), LogDistance::Exp(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for LogDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LogDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogDistance::Exp(n) => write!(f, "e^-{n}"),
            LogDistance::Zero => f.write_str("0"),
        }
    }
}

/// `d(ξ, η) = e^{-(ξ,η)}`.
pub fn visual_distance(xi: &Ray, eta: &Ray) -> LogDistance {
    match gromov_product(xi, eta) {
        Some(n) => LogDistance::Exp(n),
        None => LogDistance::Zero,
    }
}

/// The leaf of a complete antichain whose ball contains the end.
pub fn leaf_containing<'a>(l: &'a Antichain, xi: &Ray) -> &'a Address {
    leaf_index_containing(l.leaves(), xi)
}

pub(crate) fn leaf_index_containing<'a>(sorted: &'a [Address], xi: &Ray) -> &'a Address {
    let depth = sorted.iter().map(Address::depth).max().unwrap_or(0);
    let word = xi.prefix(depth);
    let idx = crate::tree::leaf_prefix_of(sorted, &word)
        .expect("complete antichain covers every end");
    &sorted[idx]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Degree;

    fn shape() -> Shape {
        Shape::tree(Degree::new(2).unwrap())
    }

    fn ray(pre: &[u8], per: &[u8]) -> Ray {
        Ray::new(&shape(), pre.to_vec(), per.to_vec()).unwrap()
    }

    /// Independent stream comparison over a generous window.
    fn stream_oracle_equal(a: &Ray, b: &Ray) -> bool {
        (0..200).all(|i| a.letter(i) == b.letter(i))
    }

    #[test]
    fn normalize_examples() {
        let r = ray(&[0], &[0, 0]);
        assert_eq!((r.preperiod(), r.period()), (&[][..], &[0][..]));
        let r = ray(&[], &[0, 1, 0, 1]);
        assert_eq!((r.preperiod(), r.period()), (&[][..], &[0, 1][..]));
        let r = ray(&[0, 1, 0], &[1, 0, 1, 0]);
        assert_eq!((r.preperiod(), r.period()), (&[][..], &[0, 1][..]));
        let raw = Ray { pre: vec![0, 1, 0], per: vec![1, 0, 1, 0] };
        assert!(stream_oracle_equal(&raw, &r));
    }

    #[test]
    fn normalize_errors() {
        assert!(matches!(normalize_ray(&shape(), vec![0], vec![]), Err(Error::InvalidRay(_))));
        assert!(normalize_ray(&shape(), vec![], vec![2]).is_err());
        assert!(normalize_ray(&shape(), vec![2], vec![2]).is_err());
        assert!(normalize_ray(&shape(), vec![2], vec![1]).is_ok());
    }

    #[test]
    fn equality_examples() {
        let a = ray(&[], &[0, 1]);
        let b = ray(&[0, 1, 0], &[1, 0, 1, 0]);
        assert!(rays_equal(&a, &b));
        assert!(!rays_equal(&ray(&[], &[0]), &ray(&[], &[1])));
        assert!(rays_equal(&a, &a));
    }

    #[test]
    fn gromov_examples() {
        assert_eq!(gromov_product(&ray(&[], &[0]), &ray(&[], &[1])), Some(0));
        // 0111... vs 01010...
        assert_eq!(gromov_product(&ray(&[0], &[1]), &ray(&[0], &[1, 0])), Some(2));
        let xi = ray(&[2, 1], &[0, 1]);
        assert_eq!(gromov_product(&xi, &xi), None);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(visual_distance(&ray(&[], &[0]), &ray(&[], &[1])), LogDistance::Exp(0));
        assert_eq!(visual_distance(&ray(&[0], &[1]), &ray(&[0], &[1, 0])), LogDistance::Exp(2));
        assert_eq!(visual_distance(&ray(&[1], &[0]), &ray(&[1], &[0])), LogDistance::Zero);
        assert_eq!(LogDistance::Exp(2).to_string(), "e^-2");
        assert_eq!(LogDistance::Zero.to_string(), "0");
        assert!(LogDistance::Exp(0) > LogDistance::Exp(3));
        assert!(LogDistance::Zero < LogDistance::Exp(30));
    }

    #[test]
    fn leaf_containing_examples() {
        let s = shape();
        let l = Antichain::new(s, ["00", "01", "1", "2"].iter().map(|t| Address::parse(t, &s).unwrap()).collect()).unwrap();
        assert_eq!(leaf_containing(&l, &ray(&[], &[0])).to_string(), "00");
        assert_eq!(leaf_containing(&Antichain::top(s), &ray(&[1], &[0])).to_string(), "e");
        let l = Antichain::top(s).expand_at(&Address::root()).unwrap();
        assert_eq!(leaf_containing(&l, &ray(&[2], &[0, 1])).to_string(), "2");
    }

    #[test]
    fn shifting() {
        let r = ray(&[2, 1], &[0, 1]);
        assert_eq!(r.drop_prefix(1), ray(&[1], &[0, 1]));
        assert_eq!(r.drop_prefix(3), ray(&[], &[1, 0]));
        assert_eq!(r.drop_prefix(2).prepend(&[2, 1]), r);
        assert_eq!(r.to_string(), "ray{2.(10)}");
    }
}

//! The uniform metric `d(Φ, Ψ) = sup_ξ d(Φξ, Ψξ)` and a Cauchy sequence of
//! elements with unbounded scales.

use super::{supported_in_ball, TreePair};
use crate::boundary::LogDistance;
use crate::error::{Error, Result};
use crate::tree::{lcp, refine_sorted, Address, Shape};

impl TreePair {
    /// Uniform distance to `other`.
    ///
    /// On a common domain leaf the two maps are `x ↦ wa·x` and `x ↦ wb·x`.
    /// The supremum of `d(wa·x, wb·x)` over `x` is `e^{-|lcp(wa, wb)|}`, also
    /// when one image is a prefix of the other (take `x` leaving the period).
    pub fn uniform_distance(&self, other: &TreePair) -> Result<LogDistance> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch);
        }
        let mut best: Option<usize> = None;
        for (r, i, j) in refine_sorted(&self.domain, &other.domain) {
            let wa = self.images[i].concat(&r.letters()[self.domain[i].depth()..]);
            let wb = other.images[j].concat(&r.letters()[other.domain[j].depth()..]);
            if wa != wb {
                let n = lcp(&wa, &wb).depth();
                best = Some(best.map_or(n, |b| b.min(n)));
            }
        }
        Ok(best.map_or(LogDistance::Zero, LogDistance::Exp))
    }
}

/// `Φ_1, …, Φ_k` with `Φ_i` supported in the ball `B_i = 0^i·1` and having a
/// piece of scale exponent `i`, together with the partial products
/// `Ψ_j = Φ_1 ∘ … ∘ Φ_j`.
#[derive(Clone, Debug)]
pub struct NonLocalCompactness {
    pub balls: Vec<Address>,
    pub elements: Vec<TreePair>,
    pub partials: Vec<TreePair>,
}

impl NonLocalCompactness {
    /// Largest scale exponent among the pieces of `Φ_i` (1-based).
    pub fn max_scale(&self, i: usize) -> i64 {
        self.elements[i - 1].piecewise_scales().iter().map(|(_, s)| s.0).max().unwrap_or(0)
    }

    /// Checks scales, disjointness, and `d(Ψ_j, Ψ_l) ≤ diam B_{l+1}` for `l < j`.
    pub fn verify(&self) -> Result<()> {
        let k = self.elements.len();
        for i in 1..=k {
            if self.max_scale(i) < i as i64 {
                return Err(Error::VerificationFailed(format!("scale of element {i}")));
            }
            let b = &self.balls[i - 1];
            if !self.elements[i - 1].support().iter().all(|v| b.is_prefix_of(v)) {
                return Err(Error::VerificationFailed(format!("support of element {i}")));
            }
            if self.balls[..i - 1].iter().any(|c| c.comparable(b)) {
                return Err(Error::VerificationFailed(format!("ball {i} meets an earlier ball")));
            }
        }
        for j in 1..=k {
            for l in 1..j {
                let d = self.partials[j - 1].uniform_distance(&self.partials[l - 1])?;
                if d > LogDistance::Exp(self.balls[l].depth()) {
                    return Err(Error::VerificationFailed(format!("distance between partials {j} and {l}")));
                }
            }
        }
        Ok(())
    }
}

/// An element supported in `∂T_b` mapping `b·0^{i+1}` onto `b·0`.
fn deep_contraction(shape: Shape, b: &Address, i: usize) -> TreePair {
    let q = shape.q();
    // Comb along the 0-spine of b, depth i + 1.
    let mut source = Vec::new();
    let mut spine = b.clone();
    for _ in 0..=i {
        for c in 1..q {
            source.push(spine.child(c));
        }
        spine = spine.child(0);
    }
    source.push(spine);
    // b·0 and b·2.. as leaves; comb of depth i along the 0-spine of b·1.
    let mut target = vec![b.child(0)];
    target.extend((2..q).map(|c| b.child(c)));
    let mut spine = b.child(1);
    for _ in 0..i {
        for c in 1..q {
            target.push(spine.child(c));
        }
        spine = spine.child(0);
    }
    target.push(spine);
    source.sort();
    target.sort();
    // Pair the deepest source leaf with b·0 and the rest in order.
    let deepest = source.iter().position(|v| v.depth() == b.depth() + i + 1 && v.letters().iter().skip(b.depth()).all(|&c| c == 0)).expect("spine leaf");
    let src_tip = source.remove(deepest);
    let dst_tip = target.remove(0);
    let mut pieces = vec![(src_tip, dst_tip)];
    pieces.extend(source.into_iter().zip(target));
    supported_in_ball(shape, b, pieces)
}

/// Builds and verifies the sequence for `k ≥ 1`.
pub fn nonlocal_compactness_sequence(shape: Shape, k: usize) -> Result<NonLocalCompactness> {
    let mut balls = Vec::with_capacity(k);
    let mut elements = Vec::with_capacity(k);
    let mut partials: Vec<TreePair> = Vec::with_capacity(k);
    for i in 1..=k {
        let mut letters = vec![0; i];
        letters.push(1);
        let b = Address::from_letters(letters);
        let phi = deep_contraction(shape, &b, i);
        let psi = match partials.last() {
            Some(prev) => prev.compose(&phi)?,
            None => phi.clone(),
        };
        balls.push(b);
        elements.push(phi);
        partials.push(psi);
    }
    let seq = NonLocalCompactness { balls, elements, partials };
    seq.verify()?;
    Ok(seq)
}

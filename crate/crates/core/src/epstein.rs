//! Commutator witnesses in the normal closure of a single element.
//!
//! If `α(V₀) ∩ V₀ = ∅` and `k` is supported in `V₀`, then `[k, α]` agrees with
//! `k` on `V₀` and is otherwise supported in `α(V₀)`. Transporting `V` onto
//! `V₀` turns this into an element of the normal closure of `α` that agrees
//! with any `g` supported in `V` on `V`. Two such elements whose correction
//! terms live in disjoint balls have the same commutator as the originals,
//! which yields explicit words in conjugates of `α^{±1}` for commutators.

use std::fmt::Write as _;

use crate::elements::{swap_balls, TreePair};
use crate::error::{Error, Result};
use crate::higman_thompson::ball_matching;
use crate::tree::{refine_sorted, Address, Shape};

fn check_support(g: &TreePair, v: &Address) -> Result<()> {
    if g.support().iter().all(|u| v.is_prefix_of(u)) {
        Ok(())
    } else {
        Err(Error::SupportViolation(v.to_string()))
    }
}

fn disjoint(a: &[Address], b: &[Address]) -> bool {
    a.iter().all(|x| b.iter().all(|y| !x.comparable(y)))
}

/// A ball `∂T_v` with `α(∂T_v) ∩ ∂T_v = ∅`.
///
/// A moved leaf of the reduced form whose image is incomparable with it is
/// preferred; otherwise a leaf nested with its image `v ↔ v·s` is split and
/// the child `v·i` with `i ≠ s[0]` is used.
pub fn find_displacing_ball(alpha: &TreePair) -> Result<Address> {
    let r = alpha.reduce();
    let moved: Vec<(&Address, &Address)> = r.pairs().filter(|(v, w)| v != w).collect();
    if let Some((v, _)) = moved.iter().find(|(v, w)| !v.comparable(w)) {
        return Ok((*v).clone());
    }
    let (v, w) = moved.first().ok_or(Error::TrivialElement)?;
    let s = v.suffix_in(w).or_else(|| w.suffix_in(v)).expect("nested");
    Ok(v.child(if s[0] == 0 { 1 } else { 0 }))
}

/// An element carrying `∂T_v` onto `∂T_w` by prefix substitution.
pub fn ball_transporter(shape: Shape, v: &Address, w: &Address) -> Result<TreePair> {
    if v.is_root() || w.is_root() {
        return Err(Error::RootBall);
    }
    shape.check(v)?;
    shape.check(w)?;
    if v == w {
        return Ok(TreePair::identity(shape));
    }
    ball_matching(shape, std::slice::from_ref(v), std::slice::from_ref(w))
}

/// A product `∏ c_i α^{±1} c_i⁻¹` claimed to equal `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationCertificate {
    pub alpha: TreePair,
    /// Conjugator and whether `α⁻¹` is used, in product order.
    pub terms: Vec<(TreePair, bool)>,
    pub target: TreePair,
}

impl ConjugationCertificate {
    pub fn evaluate(&self) -> Result<TreePair> {
        let mut acc = TreePair::identity(*self.alpha.shape());
        let alpha_inv = self.alpha.inverse();
        for (c, inv) in &self.terms {
            let a = if *inv { &alpha_inv } else { &self.alpha };
            acc = acc.compose(&a.conjugate_by(c)?)?;
        }
        Ok(acc)
    }

    pub fn verify(&self) -> Result<()> {
        if self.evaluate()?.equals(&self.target)? {
            Ok(())
        } else {
            Err(Error::VerificationFailed("certificate does not evaluate to its target".into()))
        }
    }

    /// `c · self · c⁻¹`.
    pub fn conjugate(&self, c: &TreePair) -> Result<ConjugationCertificate> {
        let terms = self.terms.iter().map(|(d, inv)| Ok((c.compose(d)?, *inv))).collect::<Result<_>>()?;
        Ok(ConjugationCertificate { alpha: self.alpha.clone(), terms, target: self.target.conjugate_by(c)? })
    }

    pub fn inverse(&self) -> ConjugationCertificate {
        let terms = self.terms.iter().rev().map(|(c, inv)| (c.clone(), !inv)).collect();
        ConjugationCertificate { alpha: self.alpha.clone(), terms, target: self.target.inverse() }
    }

    /// The product `self · other`.
    pub fn concat(&self, other: &ConjugationCertificate) -> Result<ConjugationCertificate> {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(ConjugationCertificate { alpha: self.alpha.clone(), terms, target: self.target.compose(&other.target)? })
    }

    /// A one-line program of bindings whose body is the certificate word.
    pub fn to_expression(&self) -> String {
        let mut out = String::new();
        write!(out, "alpha = {}; ", self.alpha).expect("string");
        let mut names: Vec<(TreePair, String)> = Vec::new();
        for (c, _) in &self.terms {
            if !names.iter().any(|(d, _)| d == c) {
                let name = format!("c{}", names.len() + 1);
                write!(out, "{name} = {c}; ").expect("string");
                names.push((c.clone(), name));
            }
        }
        let body: Vec<String> = self
            .terms
            .iter()
            .map(|(c, inv)| {
                let name = &names.iter().find(|(d, _)| d == c).expect("bound").1;
                let a = if *inv { "inv(alpha)" } else { "alpha" };
                format!("{name} * {a} * inv({name})")
            })
            .collect();
        out.push_str(&body.join(" * "));
        out
    }
}

/// `ρ` agreeing with `g` on `∂T_V`, with its certificate over `α`.
#[derive(Clone, Debug)]
pub struct RestrictionWitness {
    pub rho: TreePair,
    pub displaced: Address,
    pub transporter: TreePair,
    pub certificate: ConjugationCertificate,
}

/// `ρ = h⁻¹ [h g h⁻¹, α] h = (g h⁻¹) α (g h⁻¹)⁻¹ · h⁻¹ α⁻¹ h`, with `h` moving
/// `V` onto a ball displaced by `α`.
pub fn restriction_witness(g: &TreePair, v: &Address, alpha: &TreePair) -> Result<RestrictionWitness> {
    let shape = *alpha.shape();
    if g.shape() != &shape {
        return Err(Error::ShapeMismatch);
    }
    if v.is_root() {
        return Err(Error::RootBall);
    }
    check_support(g, v)?;
    let v0 = find_displacing_ball(alpha)?;
    let h = ball_transporter(shape, v, &v0)?;
    let h_inv = h.inverse();
    let k = g.conjugate_by(&h)?;
    let rho = k.commutator(alpha)?.conjugate_by(&h_inv)?;
    let certificate = ConjugationCertificate {
        alpha: alpha.reduce(),
        terms: vec![(g.compose(&h_inv)?, false), (h_inv.clone(), true)],
        target: rho.clone(),
    };
    certificate.verify()?;
    let correction = rho.compose(&g.inverse())?;
    if correction.support().iter().any(|u| u.comparable(v)) {
        return Err(Error::VerificationFailed("restriction differs from g on V".into()));
    }
    Ok(RestrictionWitness { rho, displaced: v0, transporter: h, certificate })
}

/// A ball `V₀ ≠ e` with `V₀`, `α1(V₀)`, `α2(V₀)` pairwise disjoint.
pub fn triple_displacing_ball(a1: &TreePair, a2: &TreePair) -> Result<Address> {
    if a1.shape() != a2.shape() {
        return Err(Error::ShapeMismatch);
    }
    let q = a1.shape().q();
    for (r, i, j) in refine_sorted(a1.domain(), a2.domain()) {
        let w1 = a1.images()[i].concat(&r.letters()[a1.domain()[i].depth()..]);
        let w2 = a2.images()[j].concat(&r.letters()[a2.domain()[j].depth()..]);
        if *r == w1 || *r == w2 || w1 == w2 {
            continue;
        }
        // Any nested pair X, X·s is separated by a suffix u that is not a
        // prefix of s^ω; two letters always leave such a u.
        let mut frontier = vec![Vec::new()];
        for _ in 0..=2 {
            for u in &frontier {
                let (x, y, z) = (r.concat(u), w1.concat(u), w2.concat(u));
                if !x.is_root() && !x.comparable(&y) && !x.comparable(&z) && !y.comparable(&z) {
                    return Ok(x);
                }
            }
            frontier = frontier
                .iter()
                .flat_map(|u| {
                    (0..q).map(move |c| {
                        let mut u2 = u.clone();
                        u2.push(c);
                        u2
                    })
                })
                .collect();
        }
    }
    Err(Error::NoDisplacingBall)
}

/// `ρ_i = [g_i, α_i']` with `α_i' = h⁻¹ α_i h` and `h` carrying `V` onto a
/// triply displaced ball, so that `[ρ1, ρ2] = [g1, g2]`.
#[derive(Clone, Debug)]
pub struct DoubleCommutatorWitness {
    pub displaced: Address,
    pub transporter: TreePair,
    pub alpha1: TreePair,
    pub alpha2: TreePair,
    pub rho1: TreePair,
    pub rho2: TreePair,
}

pub fn double_commutator_witness(
    g1: &TreePair,
    g2: &TreePair,
    v: &Address,
    a1: &TreePair,
    a2: &TreePair,
) -> Result<DoubleCommutatorWitness> {
    let shape = *a1.shape();
    if [g1, g2, a2].iter().any(|x| x.shape() != &shape) {
        return Err(Error::ShapeMismatch);
    }
    if v.is_root() {
        return Err(Error::RootBall);
    }
    check_support(g1, v)?;
    check_support(g2, v)?;
    let v0 = triple_displacing_ball(a1, a2)?;
    let h = ball_transporter(shape, v, &v0)?;
    let h_inv = h.inverse();
    let alpha1 = a1.conjugate_by(&h_inv)?;
    let alpha2 = a2.conjugate_by(&h_inv)?;
    let rho1 = g1.commutator(&alpha1)?;
    let rho2 = g2.commutator(&alpha2)?;
    if !rho1.commutator(&rho2)?.equals(&g1.commutator(g2)?)? {
        return Err(Error::VerificationFailed("commutators differ".into()));
    }
    let vball = std::slice::from_ref(v);
    for (rho, alpha) in [(&rho1, &alpha1), (&rho2, &alpha2)] {
        let mut allowed = vec![v.clone()];
        allowed.extend(alpha.ball_image(v));
        let outside = rho.support().into_iter().any(|u| !allowed.iter().any(|b| b.is_prefix_of(&u)));
        if outside || !disjoint(vball, &alpha.ball_image(v)) {
            return Err(Error::VerificationFailed("correction escapes its balls".into()));
        }
    }
    Ok(DoubleCommutatorWitness { displaced: v0, transporter: h, alpha1, alpha2, rho1, rho2 })
}

/// A word in conjugates of `α^{±1}` equal to `[g1, g2]`.
///
/// Two movers supported in the ball `0` are first replaced by elements of the
/// normal closure of `α` agreeing with them on that ball; these displace the
/// ball `00` in two different ways and feed the double commutator.
pub fn simplicity_certificate(alpha: &TreePair, g1: &TreePair, g2: &TreePair, v: &Address) -> Result<ConjugationCertificate> {
    let shape = *alpha.shape();
    if alpha.is_identity() {
        return Err(Error::TrivialElement);
    }
    check_support(g1, v)?;
    check_support(g2, v)?;
    let target = g1.commutator(g2)?;
    if target.is_identity() {
        return Err(Error::Commuting);
    }
    let b = Address::from_letters(vec![0]);
    let beta1 = swap_balls(shape, &b.child(0), &b.child(1).child(0))?;
    let beta2 = swap_balls(shape, &b.child(0), &b.child(1).child(1))?;
    let w1 = restriction_witness(&beta1, &b, alpha)?;
    let w2 = restriction_witness(&beta2, &b, alpha)?;
    let dc = double_commutator_witness(g1, g2, v, &w1.rho, &w2.rho)?;
    let h_inv = dc.transporter.inverse();
    // α_i' = h⁻¹ α_i h and ρ_i = g_i α_i' g_i⁻¹ · α_i'⁻¹.
    let a1 = w1.certificate.conjugate(&h_inv)?;
    let a2 = w2.certificate.conjugate(&h_inv)?;
    let rho1 = a1.conjugate(g1)?.concat(&a1.inverse())?;
    let rho2 = a2.conjugate(g2)?.concat(&a2.inverse())?;
    let cert = rho1.concat(&rho2)?.concat(&rho1.inverse())?.concat(&rho2.inverse())?;
    let cert = ConjugationCertificate { target, ..cert };
    cert.verify()?;
    Ok(cert)
}

//! Necessary conditions for membership in the integral shuffle algebra.
//!
//! * wheel conditions, both as vanishing under the two ratio patterns and as
//!   reduction modulo the ideals `(q1 z1 − z2, q2 z2 − z3)` and
//!   `(q2 z1 − z2, q1 z2 − z3)`;
//! * membership in the ideal `(g1, g2)` of `R[z1^±1, ..., zk^±1]` with
//!   `g1 = 1_1 * 1_1` and `g2 = (1 − q1)(1 − q2)(1 − q)(z1 + z2)`, with explicit
//!   cofactors;
//! * divisibility of `P(z1, −z1, z3, ...)` by `(1 + q1)(1 + q2)(1 + q)`.

use alloc::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{coeff, ratio, LaurentPoly, Monomial, Substitution, Variable};
use crate::shuffle::{omega_numerator, GeneratorWord, ShuffleElement};

fn z(i: u32) -> LaurentPoly {
    LaurentPoly::z(i)
}

fn one_minus(p: &LaurentPoly) -> LaurentPoly {
    &LaurentPoly::one() - p
}

fn one_plus(p: &LaurentPoly) -> LaurentPoly {
    &LaurentPoly::one() + p
}

/// `1 + q1 + q2 − 2q + q1 q + q2 q + q²`, the middle coefficient of `g1`.
fn middle_coefficient() -> LaurentPoly {
    let q = LaurentPoly::q();
    let q1 = LaurentPoly::q1();
    let q2 = LaurentPoly::q2();
    LaurentPoly::one() + q1.clone() + q2.clone() - q.scale(&coeff(2)) + &q1 * &q + &q2 * &q
        + q.pow(2)
}

/// `(1 − q1)(1 − q2)(1 − q)`.
pub fn g2_constant() -> LaurentPoly {
    &(&one_minus(&LaurentPoly::q1()) * &one_minus(&LaurentPoly::q2())) * &one_minus(&LaurentPoly::q())
}

/// `(1 + q1)(1 + q2)(1 + q)`.
pub fn corollary_constant() -> LaurentPoly {
    &(&one_plus(&LaurentPoly::q1()) * &one_plus(&LaurentPoly::q2())) * &one_plus(&LaurentPoly::q())
}

/// The two ideal generators, in an arbitrary pair of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGenerators {
    pub g1: LaurentPoly,
    pub g2: LaurentPoly,
}

impl IdealGenerators {
    /// `g1(z1, z2)` and `g2(z1, z2)`.
    pub fn new() -> IdealGenerators {
        IdealGenerators::at(1, 2)
    }

    /// `g1(z_m, z_n)` and `g2(z_m, z_n)`.
    pub fn at(m: u32, n: u32) -> IdealGenerators {
        let two_q = LaurentPoly::q().scale(&coeff(2));
        let g1 = &(&two_q * &(&z(m).pow(2) + &z(n).pow(2))) - &(&middle_coefficient() * &(&z(m) * &z(n)));
        let g2 = &g2_constant() * &(&z(m) + &z(n));
        IdealGenerators { g1, g2 }
    }
}

impl Default for IdealGenerators {
    fn default() -> Self {
        IdealGenerators::new()
    }
}

fn pin(map: &[(Variable, LaurentPoly)]) -> Substitution {
    map.iter().cloned().collect::<BTreeMap<_, _>>()
}

/// Vanishing at `(z1, z2, z3) = (q t, q2 t, t)` and `(q t, q1 t, t)`, with
/// `t = z3` and every other variable kept formal. Vacuously true below
/// arity 3.
pub fn wheel_check(p: &ShuffleElement) -> bool {
    if p.arity() < 3 {
        return true;
    }
    let t = z(3);
    let qt = &LaurentPoly::q() * &t;
    [LaurentPoly::q2(), LaurentPoly::q1()].iter().all(|middle| {
        let s = pin(&[(Variable::Z(1), qt.clone()), (Variable::Z(2), middle * &t)]);
        p.poly()
            .substitute(&s)
            .expect("monomial images are invertible")
            .is_zero()
    })
}

/// Reduction modulo `(q1 z1 − z2, q2 z2 − z3)` and `(q2 z1 − z2, q1 z2 − z3)`,
/// i.e. `z2 := q1 z1, z3 := q z1` and `z2 := q2 z1, z3 := q z1`.
/// Vacuously true below arity 3.
pub fn ideal_wheel_check(p: &ShuffleElement) -> Result<bool> {
    if p.arity() < 3 {
        return Ok(true);
    }
    let base = z(1);
    let q_base = &LaurentPoly::q() * &base;
    for first in [LaurentPoly::q1(), LaurentPoly::q2()] {
        let s = pin(&[(Variable::Z(2), &first * &base), (Variable::Z(3), q_base.clone())]);
        if !p.poly().substitute(&s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three polynomials of the cleared identity
/// `2 ω_num(z1, z2) = (z1 − z2) g1 + z1 z2 g2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaDecomposition {
    pub omega_numerator: LaurentPoly,
    pub g1: LaurentPoly,
    pub g2: LaurentPoly,
}

/// Checks `2 ω_num(z1, z2) = (z1 − z2) g1 + z1 z2 g2` and the mirrored
/// `2 ω_num(z2, z1) = (z2 − z1) g1 + z1 z2 g2`.
pub fn omega_decomposition() -> Result<OmegaDecomposition> {
    let IdealGenerators { g1, g2 } = IdealGenerators::new();
    let num = omega_numerator(1, 2);
    let z12 = &z(1) * &z(2);
    let forward = &(&(&z(1) - &z(2)) * &g1) + &(&z12 * &g2);
    if num.scale(&coeff(2)) != forward {
        return Err(Error::IdentityViolated("2 ω(z1,z2) numerator decomposition"));
    }
    let mirrored = &(&(&z(2) - &z(1)) * &g1) + &(&z12 * &g2);
    if omega_numerator(2, 1).scale(&coeff(2)) != mirrored {
        return Err(Error::IdentityViolated("2 ω(z2,z1) numerator decomposition"));
    }
    Ok(OmegaDecomposition { omega_numerator: num, g1, g2 })
}

/// What an ideal certificate speaks about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealTarget {
    Word(GeneratorWord),
    Element(ShuffleElement),
}

impl IdealTarget {
    pub fn expand(&self) -> Result<LaurentPoly> {
        match self {
            IdealTarget::Word(w) => Ok(crate::shuffle::shuffle_word(w)?.into_poly()),
            IdealTarget::Element(e) => Ok(e.poly().clone()),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            IdealTarget::Word(w) => w.arity(),
            IdealTarget::Element(e) => e.arity(),
        }
    }
}

/// `target = a · g1(z1, z2) + b · g2(z1, z2)` in the full Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealCertificate {
    pub target: IdealTarget,
    pub a: LaurentPoly,
    pub b: LaurentPoly,
}

/// Reduces `p` modulo `g1` so that only `z2^0` and `z2^1` remain. `g1` is
/// `2q z2² − (...) z1 z2 + 2q z1²`, whose extreme z2-coefficients are units,
/// so high powers are cleared from the top and negative powers from the
/// bottom. Returns `(quotient, remainder)`.
fn reduce_mod_g1(p: &LaurentPoly, g1: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let half_inv_q = LaurentPoly::monomial(
        ratio(1, 2),
        Monomial::from_exponents([(Variable::Q1, -1), (Variable::Q2, -1)]),
    );
    let mut rem = p.clone();
    let mut quot = LaurentPoly::zero();
    loop {
        let parts = rem.split_by(Variable::Z(2));
        let (Some((&hi, top)), Some((&lo, bottom))) = (parts.last_key_value(), parts.first_key_value())
        else {
            break;
        };
        let step = if hi >= 2 {
            top.mul_monomial(&Monomial::var(Variable::Z(2), hi - 2))
        } else if lo < 0 {
            bottom.mul_monomial(&Monomial::from_exponents([(Variable::Z(2), lo), (Variable::Z(1), -2)]))
        } else {
            break;
        };
        let step = &step * &half_inv_q;
        rem -= &(&step * g1);
        quot += step;
    }
    (quot, rem)
}

/// Decides whether `p` lies in `(g1, g2)` and, if so, returns cofactors
/// `(a, b)` with `p = a g1 + b g2`.
///
/// Modulo `g1` every polynomial is `r0 + r1 z2` with `r0, r1` free of `z2`,
/// and the multiples of `g2` are spanned by the images of `g2` and `z2 g2`:
/// `c (z1, 1)` and `c (−z1², z1 (2q + a)/(2q))` in the `(1, z2)` coordinates,
/// where `c = (1 − q1)(1 − q2)(1 − q)` and `a` is the middle coefficient of
/// `g1`. Solving that 2×2 system gives
/// `β = 2q (z1 r1 − r0) / (c b z1²)` and `α = r1 / c − β z1 (2q + a)/(2q)`
/// with `b = 4q + a = (1 + q1)(1 + q2)(1 + q)`; membership holds iff both
/// divisions are exact. The returned `b` cofactor is itself reduced modulo
/// `g1`, which makes the pair unique.
pub fn ideal_membership(p: &LaurentPoly) -> Result<Option<(LaurentPoly, LaurentPoly)>> {
    let IdealGenerators { g1, g2 } = IdealGenerators::new();
    let (quot, rem) = reduce_mod_g1(p, &g1);
    let mut parts = rem.split_by(Variable::Z(2));
    let r0 = parts.remove(&0).unwrap_or_default();
    let r1 = parts.remove(&1).unwrap_or_default();
    debug_assert!(parts.is_empty());

    let c = g2_constant();
    let b = corollary_constant();
    let q = LaurentPoly::q();
    let two_q = q.scale(&coeff(2));
    let inv_two_q = LaurentPoly::monomial(
        ratio(1, 2),
        Monomial::from_exponents([(Variable::Q1, -1), (Variable::Q2, -1)]),
    );

    let lhs = &(&z(1) * &r1) - &r0;
    let beta = match lhs.exact_div(&(&c * &b)) {
        Ok(t) => &(&t * &two_q) * &LaurentPoly::term(1, &[(Variable::Z(1), -2)]),
        Err(Error::NotDivisible) => return Ok(None),
        Err(e) => return Err(e),
    };
    let r1_over_c = match r1.exact_div(&c) {
        Ok(t) => t,
        Err(Error::NotDivisible) => return Ok(None),
        Err(e) => return Err(e),
    };
    let ratio_term = &(&two_q + &middle_coefficient()) * &inv_two_q;
    let alpha = &r1_over_c - &(&(&beta * &z(1)) * &ratio_term);

    // p = quot g1 + α g2 + β (z2 g2 − c/(2q) g1)
    let a_cof = &quot - &(&(&beta * &c) * &inv_two_q);
    let b_cof = &alpha + &(&beta * &z(2));
    let (shift, b_reduced) = reduce_mod_g1(&b_cof, &g1);
    let a_cof = &a_cof + &(&shift * &g2);
    Ok(Some((a_cof, b_reduced)))
}

/// Cofactors for the expansion of a word of arity at least 2.
pub fn ideal_certificate(w: &GeneratorWord) -> Result<IdealCertificate> {
    if w.arity() < 2 {
        return Err(Error::ArityTooSmall { required: 2, found: w.arity() });
    }
    certify(IdealTarget::Word(w.clone()))
}

/// Cofactors for an arbitrary element of arity at least 2, if it is a member.
pub fn ideal_certificate_for(p: &ShuffleElement) -> Result<IdealCertificate> {
    if p.arity() < 2 {
        return Err(Error::ArityTooSmall { required: 2, found: p.arity() });
    }
    certify(IdealTarget::Element(p.clone()))
}

fn certify(target: IdealTarget) -> Result<IdealCertificate> {
    let poly = target.expand()?;
    let (a, b) = ideal_membership(&poly)?.ok_or(Error::NotInIdeal)?;
    Ok(IdealCertificate { target, a, b })
}

/// Expands `a g1 + b g2` and compares it with the target.
pub fn verify_ideal_certificate(c: &IdealCertificate) -> Result<bool> {
    let IdealGenerators { g1, g2 } = IdealGenerators::new();
    let combo = &(&c.a * &g1) + &(&c.b * &g2);
    Ok(combo == c.target.expand()?)
}

/// Substitutes `z2 := −z1` and divides by `(1 + q1)(1 + q2)(1 + q)`.
/// Returns the quotient when the division is exact.
pub fn corollary_check(p: &ShuffleElement) -> Result<Option<LaurentPoly>> {
    if p.arity() < 2 {
        return Err(Error::ArityTooSmall { required: 2, found: p.arity() });
    }
    let s = pin(&[(Variable::Z(2), -z(1))]);
    let image = p.poly().substitute(&s)?;
    match image.exact_div(&corollary_constant()) {
        Ok(c) => Ok(Some(c)),
        Err(Error::NotDivisible) => Ok(None),
        Err(e) => Err(e),
    }
}

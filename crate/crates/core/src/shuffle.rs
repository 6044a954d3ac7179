//! The shuffle product on symmetric Laurent polynomials.
//!
//! For `P ∈ V_k`, `Q ∈ V_l` the product is
//! `(1/(k! l!)) Sym[ P(z_1..z_k) Q(z_{k+1}..z_{k+l}) ∏_{i ≤ k < j} ω(z_i, z_j) ]`
//! with `ω(x, y) = (x − q y)(y − q1 x)(y − q2 x) / (x − y)`.
//!
//! The bracket is invariant under permutations inside each block, so the
//! full orbit sum equals `k! l!` times the sum over the `C(k+l, k)` ways of
//! choosing which variables feed `P`. Every such term is put over the
//! Vandermonde denominator `∏_{a<b} (z_a − z_b)`; the numerators are summed
//! and the Vandermonde factors divided out one at a time.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::combinat::subsets;
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, RationalFunction, Variable};

/// An exponent list `[d1, ..., dk]` standing for `z^{d1} * ... * z^{dk}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GeneratorWord(pub Vec<i32>);

impl GeneratorWord {
    pub fn new(exponents: Vec<i32>) -> GeneratorWord {
        GeneratorWord(exponents)
    }

    /// `1_k`, the all-zero word.
    pub fn unit(k: usize) -> GeneratorWord {
        GeneratorWord(alloc::vec![0; k])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    /// Adds `n` to every letter.
    pub fn shifted(&self, n: i32) -> GeneratorWord {
        GeneratorWord(self.0.iter().map(|d| d + n).collect())
    }

    /// Shifts so that the smallest letter is 0; returns the removed shift.
    pub fn normalized(&self) -> (i32, GeneratorWord) {
        let lo = self.0.iter().copied().min().unwrap_or(0);
        (lo, self.shifted(-lo))
    }
}

impl From<Vec<i32>> for GeneratorWord {
    fn from(v: Vec<i32>) -> Self {
        GeneratorWord(v)
    }
}

impl<const N: usize> From<[i32; N]> for GeneratorWord {
    fn from(v: [i32; N]) -> Self {
        GeneratorWord(v.to_vec())
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", d)?;
        }
        f.write_str("]")
    }
}

/// An element of `V_k`: a Laurent polynomial symmetric in `z1..zk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShuffleElement {
    arity: usize,
    poly: LaurentPoly,
}

impl ShuffleElement {
    /// Checks that `poly` only uses `z1..zk` and is symmetric in them.
    pub fn new(arity: usize, poly: LaurentPoly) -> Result<ShuffleElement> {
        let top = poly.max_z_index();
        if top as usize > arity {
            return Err(Error::VariableOutOfRange { index: top, arity });
        }
        if !poly.is_symmetric(arity) {
            return Err(Error::NotSymmetric(arity));
        }
        Ok(ShuffleElement { arity, poly })
    }

    pub(crate) fn new_unchecked(arity: usize, poly: LaurentPoly) -> ShuffleElement {
        debug_assert!(poly.max_z_index() as usize <= arity);
        ShuffleElement { arity, poly }
    }

    /// A z-free element of `V_0 = R`.
    pub fn scalar(c: LaurentPoly) -> Result<ShuffleElement> {
        ShuffleElement::new(0, c)
    }

    /// `1_k`.
    pub fn unit(k: usize) -> ShuffleElement {
        ShuffleElement { arity: k, poly: LaurentPoly::one() }
    }

    /// `z1^d` in `V_1`.
    pub fn z_power(d: i32) -> ShuffleElement {
        ShuffleElement {
            arity: 1,
            poly: LaurentPoly::term(1, &[(Variable::Z(1), d)]),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.poly
    }

    /// Multiplication by an element of `V_k` (or a scalar); the factor must be
    /// symmetric in `z1..zk`.
    pub fn mul_symmetric(&self, c: &LaurentPoly) -> Result<ShuffleElement> {
        let factor = ShuffleElement::new(self.arity, c.clone())?;
        Ok(ShuffleElement::new_unchecked(self.arity, &self.poly * &factor.poly))
    }

    pub fn add(&self, other: &ShuffleElement) -> Result<ShuffleElement> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(ShuffleElement::new_unchecked(self.arity, &self.poly + &other.poly))
    }

    pub fn sub(&self, other: &ShuffleElement) -> Result<ShuffleElement> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(ShuffleElement::new_unchecked(self.arity, &self.poly - &other.poly))
    }
}

impl fmt::Display for ShuffleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.poly, f)
    }
}

/// `(z_i − q z_j)(z_j − q1 z_i)(z_j − q2 z_i)`.
pub fn omega_numerator(i: u32, j: u32) -> LaurentPoly {
    let zi = LaurentPoly::z(i);
    let zj = LaurentPoly::z(j);
    let a = &zi - &(&LaurentPoly::q() * &zj);
    let b = &zj - &(&LaurentPoly::q1() * &zi);
    let c = &zj - &(&LaurentPoly::q2() * &zi);
    &(&a * &b) * &c
}

/// The kernel `ω(z_i, z_j)`; requires `i ≠ j`.
pub fn omega(i: u32, j: u32) -> RationalFunction {
    assert_ne!(i, j, "omega needs two distinct variables");
    RationalFunction {
        numerator: omega_numerator(i, j),
        denominator: &LaurentPoly::z(i) - &LaurentPoly::z(j),
    }
}

/// Full orbit sum `Σ_{σ ∈ S_k} p(z_σ(1), ..., z_σ(k))`.
pub fn sym(p: &LaurentPoly, k: usize) -> Result<LaurentPoly> {
    let top = p.max_z_index();
    if top as usize > k {
        return Err(Error::VariableOutOfRange { index: top, arity: k });
    }
    Ok(crate::combinat::permutations(k)
        .iter()
        .map(|perm| p.rename_z(perm))
        .sum())
}

/// `∏_{a<b} (z_a − z_b)` over the given indices (taken in the given order).
fn vandermonde(indices: &[u32]) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for (x, &a) in indices.iter().enumerate() {
        for &b in &indices[x + 1..] {
            acc = &acc * &(&LaurentPoly::z(a) - &LaurentPoly::z(b));
        }
    }
    acc
}

/// The shuffle product `P * Q`.
pub fn shuffle(p: &ShuffleElement, q: &ShuffleElement) -> Result<ShuffleElement> {
    let (k, l) = (p.arity, q.arity);
    if k == 0 {
        return Ok(ShuffleElement::new_unchecked(l, &p.poly * &q.poly));
    }
    if l == 0 {
        return Ok(ShuffleElement::new_unchecked(k, &p.poly * &q.poly));
    }
    let n = k + l;
    // Term of the identity coset; every other coset term is its image under
    // the shuffle permutation sending 1..k onto `left`, with that sign.
    let first: Vec<u32> = (1..=k as u32).collect();
    let rest: Vec<u32> = (k as u32 + 1..=n as u32).collect();
    let mut base = &p.poly * &q.poly.rename_z(&rest);
    for &a in &first {
        for &b in &rest {
            base = &base * &omega_numerator(a, b);
        }
    }
    base = &base * &(&vandermonde(&first) * &vandermonde(&rest));
    let mut numerator = LaurentPoly::zero();
    for left in subsets(n, k) {
        let right: Vec<u32> = (1..=n as u32).filter(|i| !left.contains(i)).collect();
        let flips = left
            .iter()
            .map(|&a| right.iter().filter(|&&b| a > b).count())
            .sum::<usize>();
        let targets: Vec<u32> = left.iter().chain(right.iter()).copied().collect();
        let term = base.rename_z(&targets);
        if flips % 2 == 1 {
            numerator -= term;
        } else {
            numerator += term;
        }
    }
    let pairs: Vec<(Variable, Variable)> = (1..=n as u32)
        .flat_map(|a| (a + 1..=n as u32).map(move |b| (Variable::Z(a), Variable::Z(b))))
        .collect();
    let numerator = numerator.div_differences(&pairs)?;
    let out = ShuffleElement::new_unchecked(n, numerator);
    debug_assert!(out.poly.is_symmetric(n));
    Ok(out)
}

/// Expands `z^{d1} * z^{d2} * ... * z^{dk}` by a left fold; the empty word is `1`.
pub fn shuffle_word(w: &GeneratorWord) -> Result<ShuffleElement> {
    let mut acc = ShuffleElement::unit(0);
    for &d in w.exponents() {
        acc = shuffle(&acc, &ShuffleElement::z_power(d))?;
    }
    Ok(acc)
}

/// Memo table of word expansions.
///
/// Expansion commutes with the product-power shift, so only min-shifted
/// words are expanded; other words are obtained by multiplying by
/// `(z1 ... zk)^n`.
#[derive(Default, Debug, Clone)]
pub struct WordCache {
    expanded: BTreeMap<GeneratorWord, LaurentPoly>,
}

impl WordCache {
    pub fn new() -> WordCache {
        WordCache::default()
    }

    pub fn len(&self) -> usize {
        self.expanded.len()
    }

    pub fn is_empty(&self) -> bool {
        self.expanded.is_empty()
    }

    /// Expansion of `w`, computed once per min-shifted word. Longer words
    /// reuse the cached expansion of their prefix.
    pub fn expand(&mut self, w: &GeneratorWord) -> Result<ShuffleElement> {
        let (shift, base) = w.normalized();
        let poly = self.expand_normalized(&base)?;
        let k = w.arity();
        let e = crate::generators::elementary_top(k).powi(shift)?;
        Ok(ShuffleElement::new_unchecked(k, &poly * &e))
    }

    fn expand_normalized(&mut self, base: &GeneratorWord) -> Result<LaurentPoly> {
        if let Some(p) = self.expanded.get(base) {
            return Ok(p.clone());
        }
        let k = base.arity();
        let poly = if k <= 1 {
            shuffle_word(base)?.into_poly()
        } else {
            let prefix = GeneratorWord(base.0[..k - 1].to_vec());
            let head = self.expand(&prefix)?;
            shuffle(&head, &ShuffleElement::z_power(base.0[k - 1]))?.into_poly()
        };
        self.expanded.insert(base.clone(), poly.clone());
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{coeff, Substitution};

    fn z(i: u32) -> LaurentPoly {
        LaurentPoly::z(i)
    }

    /// `2q z1² − (1+q1+q2−2q+q1q+q2q+q²) z1z2 + 2q z2²`, typed in from the
    /// worked example.
    pub(crate) fn example_unit_square() -> LaurentPoly {
        let q = LaurentPoly::q();
        let q1 = LaurentPoly::q1();
        let q2 = LaurentPoly::q2();
        let middle = LaurentPoly::one() + q1.clone() + q2.clone() - q.scale(&coeff(2))
            + &q1 * &q
            + &q2 * &q
            + q.pow(2);
        &(&q.scale(&coeff(2)) * &(&z(1).pow(2) + &z(2).pow(2))) - &(&middle * &(&z(1) * &z(2)))
    }

    #[test]
    fn omega_shape() {
        let w = omega(1, 2);
        assert_eq!(w.denominator, &z(1) - &z(2));
        let mut at_one = Substitution::new();
        at_one.insert(Variable::Q1, LaurentPoly::one());
        at_one.insert(Variable::Q2, LaurentPoly::one());
        let num = w.numerator.substitute(&at_one).unwrap();
        let diff = &z(1) - &z(2);
        assert_eq!(num, &diff * &(&z(2) - &z(1)).pow(2));
        // ω(z1,z2) at q1 = q2 = 1 is +(z1 − z2)²
        let reduced = RationalFunction::new(num, w.denominator).unwrap().to_poly().unwrap();
        assert_eq!(reduced, diff.pow(2));
        assert_eq!(omega(2, 1).numerator, w.numerator.rename_z(&[2, 1]));
    }

    #[test]
    fn sym_examples() {
        assert_eq!(sym(&z(1), 2).unwrap(), &z(1) + &z(2));
        let s = &z(1) + &z(2);
        assert_eq!(sym(&s, 2).unwrap(), s.scale(&coeff(2)));
        let expected: LaurentPoly = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)]
            .iter()
            .map(|&(a, b)| &z(a).pow(2) * &z(b))
            .sum();
        assert_eq!(sym(&(&z(1).pow(2) * &z(2)), 3).unwrap(), expected);
        let all: LaurentPoly = crate::combinat::permutations(3)
            .iter()
            .map(|p| z(1).permute_z(p).unwrap())
            .sum();
        assert_eq!(all, (&(&z(1) + &z(2)) + &z(3)).scale(&coeff(2)));
    }

    #[test]
    fn unit_square_matches_worked_example() {
        let p = shuffle(&ShuffleElement::unit(1), &ShuffleElement::unit(1)).unwrap();
        assert_eq!(p.arity(), 2);
        assert_eq!(p.poly(), &example_unit_square());
        assert!(p.poly().is_symmetric(2));
        assert_eq!(shuffle_word(&GeneratorWord::from([0, 0])).unwrap(), p);
    }

    #[test]
    fn z_times_unit() {
        // q z1³ + (−q1 − q2 + 2q − q²)(z1 + z2) z1 z2 + q z2³
        let q = LaurentPoly::q();
        let mid = &(&(&q.scale(&coeff(2)) - &LaurentPoly::q1()) - &LaurentPoly::q2()) - &q.pow(2);
        let expected = &(&q * &(&z(1).pow(3) + &z(2).pow(3)))
            + &(&mid * &(&(&z(1) + &z(2)) * &(&z(1) * &z(2))));
        let got = shuffle_word(&GeneratorWord::from([1, 0])).unwrap();
        assert_eq!(got.poly(), &expected);
    }

    #[test]
    fn scalar_operands() {
        let p = shuffle(&ShuffleElement::z_power(5), &ShuffleElement::unit(0)).unwrap();
        assert_eq!(p, ShuffleElement::z_power(5));
        assert_eq!(shuffle_word(&GeneratorWord::from([-3])).unwrap(), ShuffleElement::z_power(-3));
        assert_eq!(shuffle_word(&GeneratorWord::default()).unwrap(), ShuffleElement::unit(0));
    }

    #[test]
    fn product_power_on_pair() {
        let base = shuffle_word(&GeneratorWord::from([0, 0])).unwrap();
        let shifted = shuffle_word(&GeneratorWord::from([1, 1])).unwrap();
        assert_eq!(&base.poly().clone() * &(&z(1) * &z(2)), shifted.poly().clone());
    }

    #[test]
    fn cache_agrees_with_direct_expansion() {
        let mut cache = WordCache::new();
        for w in [[2, -1, 0], [0, 0, 1], [3, 1, 1]] {
            let w = GeneratorWord::from(w);
            assert_eq!(cache.expand(&w).unwrap(), shuffle_word(&w).unwrap());
        }
    }

    #[test]
    fn element_checks() {
        assert_eq!(ShuffleElement::new(2, z(1)), Err(Error::NotSymmetric(2)));
        assert!(matches!(
            ShuffleElement::new(1, z(3)),
            Err(Error::VariableOutOfRange { index: 3, arity: 1 })
        ));
    }
}

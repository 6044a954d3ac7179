//! Sparse Laurent polynomials over the rationals in `q1, q2, z1, z2, ...`.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded lexicographic order with `q1 < q2 < z1 < ... < zk`. The largest
//! key is therefore the leading term used by [`LaurentPoly::exact_div`], and
//! iterating the map backwards gives the canonical rendering order.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use hashbrown::HashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use crate::coeff::Coeff;

/// Shorthand for an integer coefficient.
pub fn coeff(n: i64) -> Coeff {
    Coeff::from_int(n)
}

/// Shorthand for the coefficient `n / d`.
pub fn ratio(n: i64, d: i64) -> Coeff {
    Coeff::ratio(n, d)
}

/// A ring variable. `q` is never a variable of its own; it is always the
/// monomial `q1 q2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Q1,
    Q2,
    /// `z_i` with a 1-based index.
    Z(u32),
}

impl Variable {
    /// `z_index`; panics on index 0.
    pub fn z(index: u32) -> Variable {
        assert!(index >= 1, "z-variables are 1-based");
        Variable::Z(index)
    }

    fn slot(self) -> usize {
        match self {
            Variable::Q1 => 0,
            Variable::Q2 => 1,
            Variable::Z(i) => i as usize + 1,
        }
    }

    fn from_slot(slot: usize) -> Variable {
        match slot {
            0 => Variable::Q1,
            1 => Variable::Q2,
            s => Variable::Z((s - 1) as u32),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Q1 => f.write_str("q1"),
            Variable::Q2 => f.write_str("q2"),
            Variable::Z(i) => write!(f, "z{}", i),
        }
    }
}

const FIRST_Z_SLOT: usize = 2;

/// A Laurent monomial: an exponent vector with no stored zeros.
///
/// Stored densely by variable slot (`q1, q2, z1, z2, ...`) with trailing
/// zeros trimmed, so two monomials are equal iff their exponent maps are.
/// The total degree is cached for ordering.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[i32; 8]>,
    deg: i64,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Variable, exponent: i32) -> Monomial {
        let mut m = Monomial::one();
        m.set(v, exponent);
        m
    }

    pub fn from_exponents<I: IntoIterator<Item = (Variable, i32)>>(pairs: I) -> Monomial {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            let cur = m.exponent(v);
            m.set(v, cur + e);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: Variable) -> i32 {
        self.exps.get(v.slot()).copied().unwrap_or(0)
    }

    fn from_slots(exps: SmallVec<[i32; 8]>) -> Monomial {
        let deg = exps.iter().map(|&e| e as i64).sum();
        let mut m = Monomial { exps, deg };
        m.trim();
        m
    }

    fn set(&mut self, v: Variable, e: i32) {
        let s = v.slot();
        if s >= self.exps.len() {
            if e == 0 {
                return;
            }
            self.exps.resize(s + 1, 0);
        }
        self.deg += e as i64 - self.exps[s] as i64;
        self.exps[s] = e;
        self.trim();
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    /// Nonzero `(variable, exponent)` pairs in variable order.
    pub fn iter(&self) -> impl Iterator<Item = (Variable, i32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(s, &e)| (Variable::from_slot(s), e))
    }

    pub fn total_degree(&self) -> i64 {
        self.deg
    }

    /// Total degree in the z-variables only.
    pub fn z_degree(&self) -> i64 {
        self.exps.iter().skip(FIRST_Z_SLOT).map(|&e| e as i64).sum()
    }

    /// Largest z-index with a nonzero exponent, or 0.
    pub fn max_z_index(&self) -> u32 {
        if self.exps.len() > FIRST_Z_SLOT {
            (self.exps.len() - FIRST_Z_SLOT) as u32
        } else {
            0
        }
    }

    pub fn has_z(&self) -> bool {
        self.exps.len() > FIRST_Z_SLOT
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (a, b) in exps.iter_mut().zip(short.exps.iter()) {
            *a += *b;
        }
        let mut m = Monomial {
            exps,
            deg: self.deg + other.deg,
        };
        m.trim();
        m
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| -e).collect(),
            deg: -self.deg,
        }
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, n: i32) -> Monomial {
        Monomial::from_slots(self.exps.iter().map(|e| e * n).collect())
    }

    /// Relabels `z_i` as `z_{targets[i-1]}`; untouched q-part.
    fn rename_z(&self, targets: &[u32]) -> Monomial {
        let q_len = self.exps.len().min(FIRST_Z_SLOT);
        let mut exps: SmallVec<[i32; 8]> = SmallVec::from_slice(&self.exps[..q_len]);
        for (idx, &e) in self.exps.iter().enumerate().skip(FIRST_Z_SLOT) {
            if e != 0 {
                let to = Variable::Z(targets[idx - FIRST_Z_SLOT]).slot();
                if to >= exps.len() {
                    exps.resize(to + 1, 0);
                }
                exps[to] += e;
            }
        }
        let mut m = Monomial { exps, deg: self.deg };
        m.trim();
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            let (a, b) = (&self.exps[..], &other.exps[..]);
            // trimmed, so the longer one has a nonzero top slot
            match a.len().cmp(&b.len()) {
                Ordering::Greater => a[a.len() - 1].cmp(&0),
                Ordering::Less => 0.cmp(&b[b.len() - 1]),
                Ordering::Equal => a.iter().rev().cmp(b.iter().rev()),
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A variable substitution `v ↦ image`.
pub type Substitution = BTreeMap<Variable, LaurentPoly>;

/// Sparse Laurent polynomial with exact rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> LaurentPoly {
        LaurentPoly::monomial(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> LaurentPoly {
        LaurentPoly::constant(coeff(n))
    }

    pub fn monomial(c: Coeff, m: Monomial) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `n · ∏ v^e`.
    pub fn term(n: i64, pairs: &[(Variable, i32)]) -> LaurentPoly {
        LaurentPoly::monomial(coeff(n), Monomial::from_exponents(pairs.iter().copied()))
    }

    pub fn var(v: Variable) -> LaurentPoly {
        LaurentPoly::monomial(Coeff::one(), Monomial::var(v, 1))
    }

    pub fn z(index: u32) -> LaurentPoly {
        LaurentPoly::var(Variable::z(index))
    }

    pub fn q1() -> LaurentPoly {
        LaurentPoly::var(Variable::Q1)
    }

    pub fn q2() -> LaurentPoly {
        LaurentPoly::var(Variable::Q2)
    }

    /// `q = q1 q2`.
    pub fn q() -> LaurentPoly {
        LaurentPoly::term(1, &[(Variable::Q1, 1), (Variable::Q2, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Largest term in the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// The single term of a monomial polynomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Largest z-index occurring in any term (0 for z-free polynomials).
    pub fn max_z_index(&self) -> u32 {
        self.terms.keys().map(Monomial::max_z_index).max().unwrap_or(0)
    }

    pub fn is_z_free(&self) -> bool {
        self.terms.keys().all(|m| !m.has_z())
    }

    /// The common z-degree of all terms, if the polynomial is z-homogeneous.
    /// The zero polynomial has no degree.
    pub fn z_homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(Monomial::z_degree);
        let d = degs.next()?;
        if degs.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Adds `c · m · other` into `self`.
    fn add_scaled_shifted(&mut self, c: &Coeff, m: &Monomial, other: &LaurentPoly) {
        for (k, a) in &other.terms {
            self.add_term(k.mul(m), a * c);
        }
    }

    /// Exact quotient `self / (a - b)` by synthetic division.
    ///
    /// Terms are grouped by their cofactor in the other variables and their
    /// combined degree in `a, b`; each group is a binary form divided by
    /// `a - b` from the top `a`-degree down.
    pub fn div_difference(&self, a: Variable, b: Variable) -> Result<LaurentPoly> {
        self.div_differences(&[(a, b)])
    }

    /// Exact quotient by `∏ (a - b)` over `pairs`, one factor at a time.
    pub fn div_differences(&self, pairs: &[(Variable, Variable)]) -> Result<LaurentPoly> {
        let mut terms: Vec<(Monomial, Coeff)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        for &(a, b) in pairs {
            if a == b {
                return Err(Error::DivisionByZero);
            }
            terms = divide_terms(terms, a, b)?;
        }
        Ok(LaurentPoly {
            terms: terms.into_iter().collect(),
        })
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents are allowed only for monomials.
    pub fn powi(&self, n: i32) -> Result<LaurentPoly> {
        if n >= 0 {
            return Ok(self.pow(n as u32));
        }
        let (m, c) = self.as_monomial().ok_or(Error::NotDivisible)?;
        let inv = LaurentPoly::monomial(c.recip(), m.inv());
        Ok(inv.pow(n.unsigned_abs()))
    }

    /// Per-slot minimum exponent over all terms (a missing slot is exponent 0).
    fn min_exponents(&self) -> SmallVec<[i32; 8]> {
        let len = self.terms.keys().map(|m| m.exps.len()).max().unwrap_or(0);
        let mut lo: SmallVec<[i32; 8]> = SmallVec::from_elem(i32::MAX, len);
        for m in self.terms.keys() {
            for (s, slot) in lo.iter_mut().enumerate() {
                let e = m.exps.get(s).copied().unwrap_or(0);
                *slot = (*slot).min(e);
            }
        }
        lo
    }

    /// Exact quotient `self / d`.
    ///
    /// Both operands are (conceptually) shifted into ordinary polynomials by
    /// their per-variable minimum exponents; the quotient then has to be an
    /// ordinary polynomial in the shifted coordinates, and leading-term
    /// division under the graded order either reaches a zero remainder or
    /// produces a quotient monomial below that floor.
    pub fn exact_div(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if let Some((m, c)) = d.as_monomial() {
            return Ok(self.mul_monomial(&m.inv()).scale(&c.recip()));
        }
        let lo_p = self.min_exponents();
        let lo_d = d.min_exponents();
        let width = lo_p.len().max(lo_d.len());
        let floor: SmallVec<[i32; 8]> = (0..width)
            .map(|s| lo_p.get(s).copied().unwrap_or(0) - lo_d.get(s).copied().unwrap_or(0))
            .collect();

        let (lead_m, lead_c) = d.leading_term().expect("nonzero divisor");
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lead_m);
            let below_floor = (0..width.max(qm.exps.len())).any(|s| {
                qm.exps.get(s).copied().unwrap_or(0) < floor.get(s).copied().unwrap_or(0)
            });
            if below_floor {
                return Err(Error::NotDivisible);
            }
            let qc = -(c / &lead_c);
            rem.add_scaled_shifted(&qc, &qm, d);
            quot.add_term(qm, -qc);
        }
        Ok(quot)
    }

    /// Ring-homomorphic substitution of variables by polynomials.
    ///
    /// A variable that occurs with a negative exponent must map to a
    /// single-term image, since only monomials are invertible.
    pub fn substitute(&self, map: &Substitution) -> Result<LaurentPoly> {
        let mut powers: BTreeMap<(Variable, i32), LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = Monomial::one();
            let mut acc = LaurentPoly::monomial(c.clone(), Monomial::one());
            for (v, e) in m.iter() {
                let Some(image) = map.get(&v) else {
                    rest.set(v, e);
                    continue;
                };
                let pw = match powers.entry((v, e)) {
                    alloc::collections::btree_map::Entry::Occupied(o) => o.into_mut(),
                    alloc::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert(image.powi(e).map_err(|_| Error::NonInvertibleImage(v))?)
                    }
                };
                acc = &acc * &*pw;
            }
            for (k, a) in acc.terms {
                out.add_term(k.mul(&rest), a);
            }
        }
        Ok(out)
    }

    /// Relabels `z_i ↦ z_{targets[i-1]}`. Panics if a z-index exceeds
    /// `targets.len()`; the map should be injective.
    pub fn rename_z(&self, targets: &[u32]) -> LaurentPoly {
        let mut out: Vec<(Monomial, Coeff)> =
            self.terms.iter().map(|(m, c)| (m.rename_z(targets), c.clone())).collect();
        out.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        let distinct = out.windows(2).all(|w| w[0].0 != w[1].0);
        if distinct {
            return LaurentPoly {
                terms: out.into_iter().collect(),
            };
        }
        let mut merged = LaurentPoly::zero();
        for (m, c) in out {
            merged.add_term(m, c);
        }
        merged
    }

    /// Applies the permutation `z_i ↦ z_{perm[i-1]}` of `{1..k}`, `k = perm.len()`.
    pub fn permute_z(&self, perm: &[u32]) -> Result<LaurentPoly> {
        let k = perm.len();
        let mut seen = alloc::vec![false; k];
        for &p in perm {
            let idx = p as usize;
            if idx == 0 || idx > k || seen[idx - 1] {
                return Err(Error::InvalidPermutation(k));
            }
            seen[idx - 1] = true;
        }
        let top = self.max_z_index();
        if top as usize > k {
            return Err(Error::VariableOutOfRange { index: top, arity: k });
        }
        Ok(self.rename_z(perm))
    }

    /// Whether the polynomial is invariant under every permutation of
    /// `z1..zk`, checked on adjacent transpositions.
    pub fn is_symmetric(&self, k: usize) -> bool {
        if self.max_z_index() as usize > k {
            return false;
        }
        let mut perm: Vec<u32> = (1..=k as u32).collect();
        for i in 0..k.saturating_sub(1) {
            perm.swap(i, i + 1);
            let moved = self.rename_z(&perm);
            perm.swap(i, i + 1);
            if &moved != self {
                return false;
            }
        }
        true
    }

    /// Collects terms by the exponent of `v`: `self = Σ_e v^e · coeffs[e]`
    /// with each part free of `v`.
    pub fn split_by(&self, v: Variable) -> BTreeMap<i32, LaurentPoly> {
        let mut parts: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let mut rest = m.clone();
            rest.set(v, 0);
            parts.entry(e).or_default().add_term(rest, c.clone());
        }
        parts
    }
}

fn divide_terms(terms: Vec<(Monomial, Coeff)>, a: Variable, b: Variable) -> Result<Vec<(Monomial, Coeff)>> {
    let mut rows: Vec<(Monomial, i32, i32, Coeff)> = terms
        .into_iter()
        .map(|(mut m, c)| {
            let (ea, eb) = (m.exponent(a), m.exponent(b));
            m.set(a, 0);
            m.set(b, 0);
            (m, ea + eb, ea, c)
        })
        .collect();
    // any order that groups equal (rest, d) with descending a-degree
    rows.sort_unstable_by(|x, y| (&x.0.exps[..], x.1, y.2).cmp(&(&y.0.exps[..], y.1, x.2)));
    let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(rows.len());
    let mut start = 0;
    while start < rows.len() {
        let (rest, d) = (&rows[start].0, rows[start].1);
        let mut end = start;
        while end < rows.len() && rows[end].0 == *rest && rows[end].1 == d {
            end += 1;
        }
        let lo = rows[end - 1].2;
        let mut next = start;
        let mut carry = Coeff::zero();
        let mut i = rows[start].2;
        loop {
            if next < end && rows[next].2 == i {
                carry += &rows[next].3;
                next += 1;
            }
            if i == lo {
                break;
            }
            if !carry.is_zero() {
                let mut m = rest.clone();
                m.set(a, i - 1);
                m.set(b, d - i);
                out.push((m, carry.clone()));
            }
            i -= 1;
        }
        if !carry.is_zero() {
            return Err(Error::NotDivisible);
        }
        start = end;
    }
    Ok(out)
}

impl fmt::Display for LaurentPoly {
    /// Canonical rendering: descending monomial order, reduced fractions,
    /// unit coefficients and exponents omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{} {}", a, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.terms.len() * 16 < self.terms.len() {
            for (m, c) in &rhs.terms {
                self.add_term(m.clone(), c.clone());
            }
            return;
        }
        // linear merge of the two sorted term lists
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut left = core::mem::take(&mut self.terms).into_iter().peekable();
        let mut right = rhs.terms.iter().peekable();
        loop {
            let ord = match (left.peek(), right.peek()) {
                (Some((a, _)), Some((b, _))) => a.cmp(b),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.extend(left.next()),
                Ordering::Greater => {
                    let (m, c) = right.next().expect("peeked");
                    out.push((m.clone(), c.clone()));
                }
                Ordering::Equal => {
                    let (m, mut c) = left.next().expect("peeked");
                    c += right.next().expect("peeked").1;
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            }
        }
        self.terms = out.into_iter().collect();
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (outer, inner) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if outer.terms.len() <= 1 {
            let mut out = LaurentPoly::zero();
            for (m, c) in &outer.terms {
                out.add_scaled_shifted(c, m, inner);
            }
            return out;
        }
        let mut acc: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(outer.terms.len() * inner.terms.len());
        for (m, c) in &outer.terms {
            for (k, a) in &inner.terms {
                let p = a * c;
                match acc.entry(k.mul(m)) {
                    hashbrown::hash_map::Entry::Occupied(mut o) => *o.get_mut() += &p,
                    hashbrown::hash_map::Entry::Vacant(v) => {
                        v.insert(p);
                    }
                }
            }
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl core::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> LaurentPoly {
        LaurentPoly::from_int(n)
    }
}

/// A quotient of Laurent polynomials; only used transiently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

impl RationalFunction {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<RationalFunction> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { numerator, denominator })
    }

    /// The polynomial value, if the denominator divides the numerator.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        self.numerator.exact_div(&self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn z(i: u32) -> LaurentPoly {
        LaurentPoly::z(i)
    }

    #[test]
    fn additive_inverse_and_identity() {
        assert!((&z(1) + &(-z(1))).is_zero());
        let p = &z(1) * &LaurentPoly::q1() + LaurentPoly::from_int(3);
        assert_eq!(&p + &LaurentPoly::zero(), p);
    }

    #[test]
    fn like_terms_merge() {
        let lhs = &(&LaurentPoly::q1() * &z(1)) + &(&LaurentPoly::q2() * &z(1));
        let rhs = &(&LaurentPoly::q1() + &LaurentPoly::q2()) * &z(1);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.num_terms(), 2);
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&z(1) - &z(2)) * &(&z(1) + &z(2));
        assert_eq!(p, &z(1).pow(2) - &z(2).pow(2));
        assert_eq!(&p * &LaurentPoly::one(), p);
    }

    #[test]
    fn exact_division() {
        let num = &z(1).pow(2) - &z(2).pow(2);
        let d = &z(1) - &z(2);
        assert_eq!(num.exact_div(&d).unwrap(), &z(1) + &z(2));
        assert_eq!((&z(1) + &z(2)).exact_div(&d), Err(Error::NotDivisible));
        assert_eq!(num.exact_div(&LaurentPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn div_difference_matches_long_division() {
        let d = &z(1) - &z(3);
        let p = &(&z(1).pow(3) + &LaurentPoly::term(-2, &[(Variable::Q1, 1), (Variable::Z(2), -1)]))
            + &z(3).powi(-2).unwrap();
        let prod = &p * &d;
        assert_eq!(prod.div_difference(Variable::Z(1), Variable::Z(3)).unwrap(), p);
        assert_eq!(prod.exact_div(&d).unwrap(), p);
        assert_eq!(
            (&prod + &z(2)).div_difference(Variable::Z(1), Variable::Z(3)),
            Err(Error::NotDivisible)
        );
    }

    #[test]
    fn exact_division_with_negative_exponents() {
        let zinv = LaurentPoly::term(1, &[(Variable::Z(1), -1)]);
        let d = &zinv + &z(2);
        let t = &(&z(1) * &LaurentPoly::q1()) - &LaurentPoly::term(3, &[(Variable::Z(2), -2)]);
        assert_eq!((&t * &d).exact_div(&d).unwrap(), t);
    }

    #[test]
    fn substitution() {
        let mut s = Substitution::new();
        s.insert(Variable::Z(1), &LaurentPoly::q1() * &z(2));
        let p = &z(1) * &z(2);
        assert_eq!(p.substitute(&s).unwrap(), &LaurentPoly::q1() * &z(2).pow(2));

        let mut bad = Substitution::new();
        bad.insert(Variable::Z(1), &z(1) + &z(2));
        let inv = LaurentPoly::term(1, &[(Variable::Z(1), -1)]);
        assert_eq!(inv.substitute(&bad), Err(Error::NonInvertibleImage(Variable::Z(1))));
    }

    #[test]
    fn permutations_and_symmetry() {
        let p = &z(1).pow(2) * &z(2);
        assert_eq!(p.permute_z(&[2, 1]).unwrap(), &z(2).pow(2) * &z(1));
        assert_eq!(p.permute_z(&[1, 2]).unwrap(), p);
        assert!(p.permute_z(&[1, 1]).is_err());
        assert!((&z(1) + &z(2)).is_symmetric(2));
        assert!(!z(1).is_symmetric(2));
    }

    #[test]
    fn canonical_rendering() {
        let p = &(&LaurentPoly::q() * &z(1).pow(2)).scale(&coeff(2)) - &(&z(1) * &z(2));
        assert_eq!(p.to_string(), "2 q1 q2 z1^2 - z1 z2");
        let h = LaurentPoly::term(1, &[(Variable::Z(1), -1)]).scale(&ratio(-1, 2));
        assert_eq!(h.to_string(), "-1/2 z1^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::from_int(-3).to_string(), "-3");
    }
}

//! Exact rational coefficients with an inline fast path.
//!
//! Almost every coefficient met in practice is a small integer, so values
//! that fit are kept as a reduced `i64` fraction and only promoted to
//! `BigRational` on overflow. The representation is canonical: a value is
//! `Small` iff its reduced form fits, which keeps derived equality and
//! hashing sound.

use alloc::boxed::Box;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// numerator, denominator > 0, coprime
    Small(i64, i64),
    Big(Box<BigRational>),
}

/// An arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coeff(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff(Repr::Small(0, 1))
    }

    pub fn one() -> Coeff {
        Coeff(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Coeff {
        Coeff(Repr::Small(n, 1))
    }

    /// `n / d`; panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Coeff {
        assert!(d != 0, "zero denominator");
        Coeff::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Coeff {
        debug_assert!(d != 0);
        let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Coeff(Repr::Small(n, d)),
            _ => Coeff(Repr::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d))))),
        }
    }

    pub fn from_big(r: BigRational) -> Coeff {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Coeff(Repr::Small(n, d)),
            _ => Coeff(Repr::Big(Box::new(r))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Coeff {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Reciprocal; panics on zero.
    pub fn recip(&self) -> Coeff {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "reciprocal of zero");
                Coeff::from_i128(*d as i128, *n as i128)
            }
            Repr::Big(r) => Coeff::from_big(r.recip()),
        }
    }

    fn big_op(a: &Coeff, b: &Coeff, op: impl Fn(BigRational, BigRational) -> BigRational) -> Coeff {
        Coeff::from_big(op(a.to_big(), b.to_big()))
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Coeff {
        Coeff::from_int(n)
    }
}

impl From<BigRational> for Coeff {
    fn from(r: BigRational) -> Coeff {
        Coeff::from_big(r)
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) => Coeff::from_int(s),
                None => Coeff::from_i128(*a as i128 + *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match a.checked_mul(d).zip(c.checked_mul(b)).and_then(|(x, y)| x.checked_add(y)) {
                    Some(n) => Coeff::from_i128(n, b * d),
                    None => Coeff::big_op(self, rhs, |x, y| x + y),
                }
            }
            _ => Coeff::big_op(self, rhs, |x, y| x + y),
        }
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        &self + &rhs
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        if let (Repr::Small(a, 1), Repr::Small(c, 1)) = (&mut self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*c) {
                *a = s;
                return;
            }
        }
        *self = &*self + rhs;
    }
}

impl AddAssign for Coeff {
    fn add_assign(&mut self, rhs: Coeff) {
        *self += &rhs;
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Coeff(Repr::Small(m, *d)),
                None => Coeff::from_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(r) => Coeff::from_big(-(**r).clone()),
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) => Coeff::from_int(p),
                None => Coeff::from_i128(*a as i128 * *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let n = *a as i128 * *c as i128;
                let m = *b as i128 * *d as i128;
                Coeff::from_i128(n, m)
            }
            _ => Coeff::big_op(self, rhs, |x, y| x * y),
        }
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

impl Div for &Coeff {
    type Output = Coeff;
    /// Panics on division by zero.
    fn div(self, rhs: &Coeff) -> Coeff {
        self * &rhs.recip()
    }
}

impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{}", n),
            Repr::Small(n, d) => write!(f, "{}/{}", n, d),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let big = Coeff::from_int(i64::MAX);
        let sum = &big + &Coeff::one();
        assert!(matches!(sum.0, Repr::Big(_)));
        assert_eq!(sum.to_string(), "9223372036854775808");
        let back = &sum - &Coeff::one();
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
        let sq = &big * &big;
        assert_eq!(&sq / &big, big);
    }

    #[test]
    fn fractions_reduce() {
        assert_eq!(Coeff::ratio(2, -4), Coeff::ratio(-1, 2));
        assert_eq!(Coeff::ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(&Coeff::ratio(1, 2) + &Coeff::ratio(1, 2), Coeff::one());
        assert_eq!(Coeff::ratio(3, 7).recip(), Coeff::ratio(7, 3));
    }

    fn arb() -> impl Strategy<Value = Coeff> {
        prop_oneof![
            (-50i64..50, 1i64..20).prop_map(|(n, d)| Coeff::ratio(n, d)),
            (any::<i64>(), 1i64..1000).prop_map(|(n, d)| Coeff::ratio(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in arb(), b in arb()) {
            prop_assert_eq!((&a + &b).to_big(), a.to_big() + b.to_big());
            prop_assert_eq!((&a * &b).to_big(), a.to_big() * b.to_big());
            prop_assert_eq!((&a - &b).to_big(), a.to_big() - b.to_big());
            prop_assert_eq!(a.cmp(&b), a.to_big().cmp(&b.to_big()));
            let mut c = a.clone();
            c += &b;
            prop_assert_eq!(c, &a + &b);
        }
    }
}

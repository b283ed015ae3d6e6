//! Exact rational numbers.
//!
//! Values whose lowest-terms numerator and denominator fit in an `i64` are
//! held inline; anything larger is promoted to a [`BigRational`]. The
//! representation is canonical (a value is inline exactly when it fits), so
//! derived equality and hashing are mathematical equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Lowest terms, `den > 0`.
    Small { num: i64, den: i64 },
    /// Lowest terms and never representable as `Small`.
    Big(BigRational),
}

/// An arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}` (expected p/q or an integer)")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Rat {
    pub fn zero() -> Self {
        Rat(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rat(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_integer(n: i64) -> Self {
        Rat(Repr::Small { num: n, den: 1 })
    }

    /// Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(i128::from(num), i128::from(den))
    }

    /// Builds `num / den` from unsigned parts.
    pub fn from_u64_ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(i128::from(num), i128::from(den))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    /// Reduces and picks the representation. `den != 0`.
    fn from_i128(num: i128, den: i128) -> Self {
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Rat(Repr::Small { num, den }),
            _ => Rat(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    /// Takes a reduced big rational and demotes it when it fits.
    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Rat(Repr::Small { num, den }),
            _ => Rat(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(r) => r.clone(),
        }
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Self {
        if k < 63 {
            Rat(Repr::Small { num: 1, den: 1 << k })
        } else {
            Self::from_big(BigRational::new_raw(BigInt::one(), BigInt::one() << k))
        }
    }

    /// `self^k` for a nonnegative exponent.
    pub fn pow(&self, k: u32) -> Self {
        Self::from_big(num_traits::pow(self.to_big(), k as usize))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num > 0,
            Repr::Big(r) => r.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small { num, den } => Self::from_i128(i128::from(*den), i128::from(*num)),
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Smallest integer `n` with `n >= self`.
    pub fn ceil(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => BigInt::from(num.div_ceil(den)),
            Repr::Big(r) => r.ceil().to_integer(),
        }
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// Lossy conversion, for human-readable summaries only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    a.cmp(c)
                } else {
                    (i128::from(*a) * i128::from(*d)).cmp(&(i128::from(*c) * i128::from(*b)))
                }
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = RatParseError;

    /// Accepts `p/q` or a bare integer, optionally signed. Decimals are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(RatParseError::Empty);
        }
        let malformed = || RatParseError::Malformed(s.to_string());
        let (num, den) = s.split_once('/').unwrap_or((s, "1"));
        let digits = |t: &str, signed: bool| {
            let body = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
            !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
        };
        if !digits(num, true) || !digits(den, false) {
            return Err(malformed());
        }
        let n: BigInt = num.parse().map_err(|_| malformed())?;
        let d: BigInt = den.parse().map_err(|_| malformed())?;
        if d.is_zero() {
            return Err(RatParseError::ZeroDenominator(s.to_string()));
        }
        Ok(Rat::from_big(BigRational::new(n, d)))
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_integer(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_big(BigRational::from_integer(n))
    }
}

fn add_ref(x: &Rat, y: &Rat) -> Rat {
    if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&x.0, &y.0) {
        let (a, b, c, d) = (i128::from(*a), i128::from(*b), i128::from(*c), i128::from(*d));
        if b == d {
            return Rat::from_i128(a + c, b);
        }
        // |a·d|, |c·b| < 2^126, so the sum cannot overflow.
        return Rat::from_i128(a * d + c * b, b * d);
    }
    Rat::from_big(x.to_big() + y.to_big())
}

fn mul_ref(x: &Rat, y: &Rat) -> Rat {
    if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&x.0, &y.0) {
        return Rat::from_i128(i128::from(*a) * i128::from(*c), i128::from(*b) * i128::from(*d));
    }
    Rat::from_big(x.to_big() * y.to_big())
}

impl Add<&Rat> for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        add_ref(self, rhs)
    }
}

impl Sub<&Rat> for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        add_ref(self, &-rhs)
    }
}

impl Mul<&Rat> for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        mul_ref(self, rhs)
    }
}

impl Div<&Rat> for &Rat {
    type Output = Rat;
    /// Panics on division by zero.
    fn div(self, rhs: &Rat) -> Rat {
        mul_ref(self, &rhs.recip())
    }
}

macro_rules! forward_owned {
    ($Op:ident, $op:ident) => {
        impl $Op<Rat> for Rat {
            type Output = Rat;
            fn $op(self, rhs: Rat) -> Rat {
                $Op::$op(&self, &rhs)
            }
        }
        impl $Op<&Rat> for Rat {
            type Output = Rat;
            fn $op(self, rhs: &Rat) -> Rat {
                $Op::$op(&self, rhs)
            }
        }
        impl $Op<Rat> for &Rat {
            type Output = Rat;
            fn $op(self, rhs: Rat) -> Rat {
                $Op::$op(self, &rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Rat(Repr::Small { num: n, den: *den }),
                None => Rat::from_big(-self.to_big()),
            },
            Repr::Big(r) => Rat::from_big(-r.clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl PartialEq<i64> for Rat {
    fn eq(&self, other: &i64) -> bool {
        *self == Rat::from_integer(*other)
    }
}

impl PartialOrd<i64> for Rat {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rat::from_integer(*other)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms_and_sign() {
        assert_eq!(Rat::new(2, -4).to_string(), "-1/2");
        assert_eq!(Rat::new(0, 7).to_string(), "0/1");
        assert_eq!(Rat::from_u64_ratio(6, 9), Rat::new(2, 3));
        assert_eq!("4/8".parse::<Rat>().unwrap(), Rat::new(1, 2));
        assert_eq!("3".parse::<Rat>().unwrap(), Rat::from_integer(3));
    }

    #[test]
    fn parse_rejects_decimals_and_zero_denominator() {
        assert!(matches!("0.5".parse::<Rat>(), Err(RatParseError::Malformed(_))));
        assert!(matches!("1/0".parse::<Rat>(), Err(RatParseError::ZeroDenominator(_))));
        assert!(matches!("".parse::<Rat>(), Err(RatParseError::Empty)));
        assert!("1/-2".parse::<Rat>().is_err());
    }

    #[test]
    fn ceil_and_powers() {
        assert_eq!(Rat::new(7, 2).ceil(), BigInt::from(4));
        assert_eq!(Rat::new(-7, 2).ceil(), BigInt::from(-3));
        assert_eq!(Rat::pow2_neg(3), Rat::new(1, 8));
        assert_eq!(Rat::new(2, 3).pow(2), Rat::new(4, 9));
        assert_eq!(Rat::pow2_neg(70).denom(), BigInt::one() << 70);
    }

    #[test]
    fn promotion_and_demotion_are_canonical() {
        let big = Rat::from_integer(i64::MAX) + Rat::one();
        assert_eq!(big.to_string(), "9223372036854775808/1");
        let back = &big - &Rat::one();
        assert_eq!(back, Rat::from_integer(i64::MAX));
        let tiny = Rat::pow2_neg(62) * Rat::pow2_neg(62);
        assert_eq!(tiny, Rat::pow2_neg(124));
        assert_eq!(
            &tiny * &Rat::from_bigints(BigInt::one() << 124, BigInt::one()),
            Rat::one()
        );
        assert_eq!(-Rat::from_integer(i64::MIN), big);
        assert!(Rat::from_integer(i64::MIN) < Rat::new(-1, 3));
    }

    fn big(r: &Rat) -> BigRational {
        BigRational::new(r.numer(), r.denom())
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        prop_oneof![
            (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Rat::new(n, d)),
            (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rat::new(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn arithmetic_agrees_with_bigrational(x in arb_rat(), y in arb_rat()) {
            prop_assert_eq!(big(&(&x + &y)), big(&x) + big(&y));
            prop_assert_eq!(big(&(&x - &y)), big(&x) - big(&y));
            prop_assert_eq!(big(&(&x * &y)), big(&x) * big(&y));
            if !y.is_zero() {
                prop_assert_eq!(big(&(&x / &y)), big(&x) / big(&y));
            }
            prop_assert_eq!(x.cmp(&y), big(&x).cmp(&big(&y)));
            prop_assert_eq!(x == y, big(&x) == big(&y));
        }
    }
}

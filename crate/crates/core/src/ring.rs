//! The ring interface every coefficient domain implements, plus the
//! arbitrary-precision rational base field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number: arbitrary-precision numerator over a positive
/// denominator, always in lowest terms. This is the field K over which the
/// whole tower is built.
pub type Rational = BigRational;

/// Construct the rational `n`.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Construct the rational `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    BigRational::from_integer(acc)
}

/// Binomial coefficient `C(n, k)` as a u128; fine at the desk scales used here.
pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc
}

/// Falling factorial `n (n-1) ... (n-k+1)` as a u128.
pub fn falling(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc *= (n - i) as u128;
    }
    acc
}

/// The contract every coefficient domain implements: zero, one, addition,
/// negation, multiplication and equality. Multiplication need not commute.
///
/// Values are immutable; all operations are pure and return fresh values, so
/// elements are freely shareable across threads.
pub trait Ring: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// The canonical image of the integer `n`.
    fn from_int(n: i64) -> Self {
        let mut acc = Self::zero();
        let one = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&one);
        }
        if n < 0 {
            acc.neg()
        } else {
            acc
        }
    }

    /// Multiply by an integer.
    fn scale_int(&self, n: i64) -> Self {
        self.mul(&Self::from_int(n))
    }

    /// Exact division by a nonzero integer, when the ring supports it
    /// (i.e. when it contains the rationals). `None` otherwise.
    fn try_div_int(&self, n: i64) -> Option<Self>;

    /// `self * rhs - rhs * self`.
    fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Ordered product of a slice, left to right; empty product is one.
    fn ordered_product(factors: &[Self]) -> Self {
        factors
            .iter()
            .fold(Self::one(), |acc, f| acc.mul(f))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn from_int(n: i64) -> Self {
        rat(n)
    }

    fn try_div_int(&self, n: i64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        Some(self / rat(n))
    }
}

/// Render a rational the way the rest of the crate prints coefficients.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign-aware prefix for building "a + b - c" style term lists.
pub fn signed_coeff_prefix(r: &Rational, first: bool) -> (String, Rational) {
    if r.is_negative() {
        (if first { "-".into() } else { " - ".into() }, -r.clone())
    } else {
        (if first { String::new() } else { " + ".into() }, r.clone())
    }
}

/// View of a normal-formed element as a list of terms: used for reporting
/// term counts and the first discrepant term of a failed identity.
pub trait TermView: Ring {
    fn term_count(&self) -> usize;
    /// Rendering of the first term in canonical order, if any.
    fn first_term(&self) -> Option<String>;
}

impl TermView for Rational {
    fn term_count(&self) -> usize {
        if Ring::is_zero(self) {
            0
        } else {
            1
        }
    }

    fn first_term(&self) -> Option<String> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(rational_string(self))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(-3, -6), ratio(1, 2));
        // denominator normalized positive
        assert_eq!(ratio(1, -2), ratio(-1, 2));
        assert_eq!(rat(0), ratio(0, 7));
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(0), rat(1));
        assert_eq!(factorial(5), rat(120));
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(falling(5, 3), 60);
        assert_eq!(falling(2, 3), 0);
    }

    #[test]
    fn ring_from_int_matches_rat() {
        assert_eq!(<Rational as Ring>::from_int(-7), rat(-7));
        assert_eq!(rat(3).try_div_int(2), Some(ratio(3, 2)));
        assert_eq!(rat(3).try_div_int(0), None);
    }

    #[test]
    fn commutator_vanishes_in_commutative_ring() {
        assert!(Ring::is_zero(&rat(3).commutator(&ratio(5, 7))));
    }
}

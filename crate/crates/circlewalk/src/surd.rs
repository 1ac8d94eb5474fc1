//! Exact arithmetic for quadratic surds `a + b*sqrt(d)`.
//!
//! `a` and `b` are exact rationals and `d` is a square-free positive integer.
//! Values are canonicalized on construction (square factors of `d` are pulled
//! into `b`, and `d = 1` collapses into the rational part), so a surd is
//! irrational exactly when `b != 0`. Comparisons are decided exactly, also
//! across different radicands, by sign analysis and squaring — never through
//! floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exact rational from a numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Split `d` into `(s, d')` with `d = s^2 * d'` and `d'` square-free.
fn extract_square(mut d: u64) -> (u64, u64) {
    let mut square_root = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        let mut e = 0;
        while d % p == 0 {
            d /= p;
            e += 1;
        }
        square_root *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    free *= d; // leftover prime
    (square_root, free)
}

/// A quadratic surd `a + b*sqrt(d)` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl Surd {
    /// Build `a + b*sqrt(d)`; `d` must be positive.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self, String> {
        if d == 0 {
            return Err("radicand must be positive".into());
        }
        let (s, free) = extract_square(d);
        let b = b * BigRational::from(BigInt::from(s));
        if free == 1 || b.is_zero() {
            Ok(Self {
                a: a + if free == 1 { b } else { BigRational::zero() },
                b: BigRational::zero(),
                d: 1,
            })
        } else {
            Ok(Self { a, b, d: free })
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(ratio(num, den))
    }

    /// `(b/den) * sqrt(d)` shorthand.
    pub fn root_term(num: i64, den: i64, d: u64) -> Result<Self, String> {
        Self::new(BigRational::zero(), ratio(num, den), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn root_coefficient(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_irrational(&self) -> bool {
        !self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Sign of the value, decided exactly.
    pub fn sign(&self) -> Ordering {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (_, Ordering::Equal) => sa,
            (Ordering::Equal, _) => sb,
            (x, y) if x == y => x,
            _ => {
                // Opposite signs: |a| vs |b| sqrt(d) via squaring.
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * BigRational::from(BigInt::from(self.d));
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    // Impossible for square-free d > 1; kept for totality.
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Exact difference when the radicands are compatible.
    pub fn try_sub(&self, other: &Self) -> Result<Self, String> {
        if self.d == other.d {
            Self::new(&self.a - &other.a, &self.b - &other.b, self.d)
        } else if other.b.is_zero() {
            Self::new(&self.a - &other.a, self.b.clone(), self.d)
        } else if self.b.is_zero() {
            Self::new(&self.a - &other.a, -other.b.clone(), other.d)
        } else {
            Err(format!(
                "cannot subtract sqrt({}) terms from sqrt({}) terms exactly",
                other.d, self.d
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, String> {
        self.try_sub(&-other.clone())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::from_rational(BigRational::zero());
        }
        Self {
            a: &self.a * k,
            b: &self.b * k,
            d: if (&self.b * k).is_zero() { 1 } else { self.d },
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from(BigInt::from(k)))
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }
}

fn rational_sign(x: &BigRational) -> Ordering {
    if x.is_zero() {
        Ordering::Equal
    } else if x.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn ordering_value(o: Ordering) -> i32 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

impl std::ops::Neg for Surd {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        // Same field (or a rational side): compare the exact difference.
        if let Ok(diff) = self.try_sub(other) {
            return diff.sign();
        }
        // Different radicands, both irrational:
        // sign of (a1 - a2) + b1 sqrt(d1) - b2 sqrt(d2).
        let left = Surd {
            a: &self.a - &other.a,
            b: self.b.clone(),
            d: self.d,
        };
        let right = Surd {
            a: BigRational::zero(),
            b: other.b.clone(),
            d: other.d,
        };
        let sl = left.sign();
        let sr = right.sign();
        if sl != sr {
            return ordering_value(sl).cmp(&ordering_value(sr));
        }
        if sl == Ordering::Equal {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare squares; reverse when both negative.
        let d1 = BigRational::from(BigInt::from(self.d));
        let left_sq = Surd {
            a: &left.a * &left.a + &left.b * &left.b * d1,
            b: BigRational::from(BigInt::from(2)) * &left.a * &left.b,
            d: self.d,
        };
        let right_sq = &right.b * &right.b * BigRational::from(BigInt::from(other.d));
        let cmp_sq = left_sq
            .try_sub(&Surd::from_rational(right_sq))
            .expect("same field")
            .sign();
        if sl == Ordering::Greater {
            cmp_sq
        } else {
            cmp_sq.reverse()
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surd(a: (i64, i64), b: (i64, i64), d: u64) -> Surd {
        Surd::new(ratio(a.0, a.1), ratio(b.0, b.1), d).unwrap()
    }

    #[test]
    fn canonicalization_extracts_squares() {
        // sqrt(8)/4 == sqrt(2)/2
        let x = surd((0, 1), (1, 4), 8);
        let y = surd((0, 1), (1, 2), 2);
        assert_eq!(x, y);
        // sqrt(9) collapses to the rational 3.
        let z = surd((1, 1), (1, 1), 9);
        assert!(!z.is_irrational());
        assert_eq!(z.rational_part(), &ratio(4, 1));
    }

    #[test]
    fn sign_analysis_is_exact() {
        // 1 - sqrt(2)/2 > 0, 1 - sqrt(2) < 0
        assert_eq!(surd((1, 1), (-1, 2), 2).sign(), Ordering::Greater);
        assert_eq!(surd((1, 1), (-1, 1), 2).sign(), Ordering::Less);
        assert_eq!(surd((0, 1), (0, 1), 5).sign(), Ordering::Equal);
    }

    #[test]
    fn same_field_comparison() {
        let half = Surd::from_ratio(1, 2);
        let root2_over_4 = surd((0, 1), (1, 4), 2);
        assert!(root2_over_4 < half);
        assert!(surd((0, 1), (3, 4), 2) > half);
    }

    #[test]
    fn cross_field_comparison() {
        // sqrt(3)/4 ~ 0.433 < sqrt(2)/2 ~ 0.707
        let x = surd((0, 1), (1, 4), 3);
        let y = surd((0, 1), (1, 2), 2);
        assert!(x < y);
        // 1 + sqrt(3) > 1/2 + sqrt(2)  (2.732 vs 1.914)
        let p = surd((1, 1), (1, 1), 3);
        let q = surd((1, 2), (1, 1), 2);
        assert!(p > q);
        // Negative branch: -sqrt(3) < -sqrt(2)
        let np = surd((0, 1), (-1, 1), 3);
        let nq = surd((0, 1), (-1, 1), 2);
        assert!(np < nq);
    }

    #[test]
    fn arithmetic_stays_exact() {
        let vmin = surd((0, 1), (1, 8), 2);
        let alpha = Surd::from_ratio(1, 1).try_sub(&vmin.scale_int(3)).unwrap();
        assert!(alpha.is_irrational());
        assert_eq!(alpha.sign(), Ordering::Greater);
        let back = alpha.try_add(&vmin.scale_int(3)).unwrap();
        assert_eq!(back, Surd::from_ratio(1, 1));
    }

    #[test]
    fn to_f64_approximates() {
        let x = surd((1, 2), (1, 8), 2);
        assert!((x.to_f64() - (0.5 + 2f64.sqrt() / 8.0)).abs() < 1e-15);
    }

    mod ordering {
        use super::*;
        use proptest::prelude::*;

        prop_compose! {
            fn arb_surd()(an in -40i64..40, ad in 1i64..20,
                          bn in -40i64..40, bd in 1i64..20,
                          d in 1u64..40) -> Surd {
                Surd::new(ratio(an, ad), ratio(bn, bd), d).unwrap()
            }
        }

        proptest! {
            // The exact order must agree with floating point whenever the
            // values are far enough apart for floating point to be trusted.
            #[test]
            fn order_matches_floats_when_separated(x in arb_surd(), y in arb_surd()) {
                let fx = x.to_f64();
                let fy = y.to_f64();
                if (fx - fy).abs() > 1e-9 {
                    prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
                }
            }

            #[test]
            fn order_is_antisymmetric_and_sign_consistent(x in arb_surd(), y in arb_surd()) {
                prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
                prop_assert_eq!(x.cmp(&x), Ordering::Equal);
                if let Ok(diff) = x.try_sub(&y) {
                    prop_assert_eq!(diff.sign(), x.cmp(&y));
                }
            }
        }
    }
}

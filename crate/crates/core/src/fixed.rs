//! Binary fixed-point reals backed by big integers, with enough fractional
//! bits to resolve t(n)/n! against very small error bounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fractional bits carried by [`Fixed`].
pub const FRAC_BITS: u32 = 256;

/// Value `raw / 2^FRAC_BITS`. Multiplication and division truncate toward −∞.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed {
    raw: BigInt,
}

impl Fixed {
    pub fn zero() -> Self {
        Fixed { raw: BigInt::zero() }
    }

    pub fn one() -> Self {
        Fixed::from_int(BigInt::one())
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Fixed {
            raw: v.into() << FRAC_BITS,
        }
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        Fixed::from_int(BigInt::from(v.clone()))
    }

    /// Floor of `num / den` at full precision.
    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let num: BigInt = num.into() << FRAC_BITS;
        Fixed {
            raw: num.div_floor(&den.into()),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Fixed::ratio(r.numer().clone(), r.denom().clone())
    }

    pub fn raw(&self) -> &BigInt {
        &self.raw
    }

    pub fn abs(&self) -> Self {
        Fixed {
            raw: self.raw.abs(),
        }
    }

    pub fn div(&self, other: &Fixed) -> Fixed {
        Fixed {
            raw: (&self.raw << FRAC_BITS).div_floor(&other.raw),
        }
    }

    pub fn div_int(&self, d: impl Into<BigInt>) -> Fixed {
        Fixed {
            raw: self.raw.div_floor(&d.into()),
        }
    }

    pub fn pow(&self, e: u32) -> Fixed {
        let mut acc = Fixed::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.raw.bits();
        if bits <= 1000 {
            let v = self.raw.to_f64().unwrap_or(f64::NAN);
            v * 2f64.powi(-(FRAC_BITS as i32))
        } else {
            let shift = bits - 900;
            let v = (&self.raw >> shift).to_f64().unwrap_or(f64::NAN);
            v * 2f64.powi(shift as i32 - FRAC_BITS as i32)
        }
    }

    /// ln 2 = Σ_{k≥1} 1/(k·2^k).
    pub fn ln2() -> Fixed {
        let mut sum = BigInt::zero();
        let one = BigInt::one() << FRAC_BITS;
        for k in 1..=(FRAC_BITS as usize + 8) {
            sum += (&one >> k) / BigInt::from(k);
        }
        Fixed { raw: sum }
    }

    /// π = 16·atan(1/5) − 4·atan(1/239).
    pub fn pi() -> Fixed {
        let a = atan_inv(5);
        let b = atan_inv(239);
        Fixed {
            raw: a.raw * 16 - b.raw * 4,
        }
    }

    /// Riemann ζ(s) for s ≥ 2 by Euler–Maclaurin summation with 64 explicit terms.
    pub fn zeta(s: u32) -> Fixed {
        assert!(s >= 2);
        const N: u64 = 64;
        const M: usize = 60;
        let mut sum = Fixed::zero();
        for k in 1..N {
            sum = &sum + &Fixed::ratio(1, BigInt::from(k).pow(s));
        }
        let n_pow = BigInt::from(N).pow(s);
        // N^{1-s}/(s-1) + N^{-s}/2
        sum = &sum + &Fixed::ratio(BigInt::from(N), &n_pow * BigInt::from(s - 1));
        sum = &sum + &Fixed::ratio(1, &n_pow * 2);
        static BERN: OnceLock<Vec<BigRational>> = OnceLock::new();
        let bern = BERN.get_or_init(|| bernoulli_even(M));
        // term_j = B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
        let mut rising = BigInt::from(s);
        let mut fact = BigInt::from(2);
        let mut n_power = &n_pow * BigInt::from(N);
        for (j, b) in bern.iter().enumerate().map(|(i, b)| (i + 1, b)) {
            if j > 1 {
                let base = s as u64 + 2 * j as u64 - 3;
                rising *= BigInt::from(base) * BigInt::from(base + 1);
                fact *= BigInt::from(2 * j as u64 - 1) * BigInt::from(2 * j as u64);
                n_power *= BigInt::from(N * N);
            }
            let num = b.numer() * &rising;
            let den = b.denom() * &fact * &n_power;
            sum = &sum + &Fixed::ratio(num, den);
        }
        sum
    }
}

/// atan(1/x) = Σ (−1)^k / ((2k+1) x^{2k+1}).
fn atan_inv(x: u64) -> Fixed {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::one() << FRAC_BITS) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    Fixed { raw: sum }
}

/// B₂, B₄, …, B_{2m} as exact rationals via Σ_{k<m+1} C(m+1,k) B_k = 0.
pub fn bernoulli_even(m: usize) -> Vec<BigRational> {
    let top = 2 * m;
    let mut b: Vec<BigRational> = Vec::with_capacity(top + 1);
    b.push(BigRational::one());
    for n in 1..=top {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    (1..=m).map(|j| b[2 * j].clone()).collect()
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, o: &Fixed) -> Fixed {
        Fixed {
            raw: &self.raw + &o.raw,
        }
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, o: &Fixed) -> Fixed {
        Fixed {
            raw: &self.raw - &o.raw,
        }
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, o: &Fixed) -> Fixed {
        Fixed {
            raw: (&self.raw * &o.raw) >> FRAC_BITS,
        }
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed { raw: -self.raw }
    }
}

impl fmt::Display for Fixed {
    /// Decimal expansion with 30 digits after the point.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = 30usize;
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled: BigInt = (&self.raw * &scale) >> FRAC_BITS;
        let neg = scaled.sign() == num_bigint::Sign::Minus;
        let mag = scaled.abs();
        let (int, frac) = mag.div_rem(&scale);
        let sign = if neg { "-" } else { "" };
        write!(f, "{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

impl PartialOrd<f64> for Fixed {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.to_f64().partial_cmp(other)
    }
}

impl PartialEq<f64> for Fixed {
    fn eq(&self, other: &f64) -> bool {
        self.to_f64() == *other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert!((Fixed::ln2().to_f64() - std::f64::consts::LN_2).abs() < 1e-16);
        assert!((Fixed::pi().to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(Fixed::pi()
            .to_string()
            .starts_with("3.141592653589793238462643383279"));
        assert!(Fixed::ln2()
            .to_string()
            .starts_with("0.693147180559945309417232121458"));
    }

    #[test]
    fn zeta_values() {
        let pi = Fixed::pi();
        let z2 = Fixed::zeta(2);
        let expect2 = pi.pow(2).div_int(6);
        assert!((&z2 - &expect2).abs().to_f64() < 1e-70);
        let z4 = Fixed::zeta(4);
        let expect4 = pi.pow(4).div_int(90);
        assert!((&z4 - &expect4).abs().to_f64() < 1e-70);
        assert!((Fixed::zeta(3).to_f64() - 1.2020569031595942).abs() < 1e-15);
    }

    #[test]
    fn bernoulli() {
        let b = bernoulli_even(3);
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(b, vec![r(1, 6), r(-1, 30), r(1, 42)]);
    }

    #[test]
    fn arithmetic() {
        let a = Fixed::ratio(1, 3);
        let b = &a * &Fixed::from_int(3);
        assert!((&Fixed::one() - &b).abs().to_f64() < 1e-70);
        assert_eq!(Fixed::from_int(6).div(&Fixed::from_int(4)).to_f64(), 1.5);
        assert_eq!(Fixed::ratio(-1, 4).to_string(), format!("-0.25{}", "0".repeat(28)));
    }
}

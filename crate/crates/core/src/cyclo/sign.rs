//! Certified sign determination for real cyclotomic numbers.
//!
//! A real element `a = sum c_k z^k` of `Q(zeta_N)` equals `sum c_k cos(2 pi k / N)`.
//! The cosines are enclosed in dyadic intervals (pi from Machin's formula,
//! Taylor series with explicit remainder) and the enclosure is refined by
//! doubling the working precision until it excludes zero. Zero itself is
//! detected symbolically beforehand, so the loop always terminates.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::number::CycNumber;
use crate::error::{Error, Result};

const START_PRECISION: u32 = 64;

/// The closed interval `[lo, hi] / 2^prec`.
#[derive(Clone, Debug)]
pub(crate) struct Dyadic {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Dyadic {
    fn exact_int(n: i64, prec: u32) -> Self {
        let v = BigInt::from(n) << prec;
        Dyadic { lo: v.clone(), hi: v, prec }
    }

    fn from_rational(q: &BigRational, prec: u32) -> Self {
        let scaled = q.numer() << prec;
        Dyadic {
            lo: floor_div(&scaled, q.denom()),
            hi: ceil_div(&scaled, q.denom()),
            prec,
        }
    }

    fn add(&self, o: &Self) -> Self {
        Dyadic { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    fn sub(&self, o: &Self) -> Self {
        Dyadic { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, prec: self.prec }
    }

    fn neg(&self) -> Self {
        Dyadic { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    fn mul(&self, o: &Self) -> Self {
        let cands = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let min = cands.iter().min().unwrap();
        let max = cands.iter().max().unwrap();
        let one = BigInt::one() << self.prec;
        Dyadic { lo: floor_div(min, &one), hi: ceil_div(max, &one), prec: self.prec }
    }

    fn mul_rational(&self, q: &BigRational) -> Self {
        let (a, b) = (&self.lo * q.numer(), &self.hi * q.numer());
        let (lo, hi) = if q.is_negative() { (b, a) } else { (a, b) };
        Dyadic {
            lo: floor_div(&lo, q.denom()),
            hi: ceil_div(&hi, q.denom()),
            prec: self.prec,
        }
    }

    fn widen(&self, ulps: &BigInt) -> Self {
        Dyadic { lo: &self.lo - ulps, hi: &self.hi + ulps, prec: self.prec }
    }

    fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }
}

/// `atan(1/m)` by its alternating series.
fn atan_inv(m: i64, prec: u32) -> Dyadic {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut acc = Dyadic::exact_int(0, prec);
    let mut power = m.clone();
    let eps = BigRational::new(BigInt::one(), BigInt::one() << (prec + 2));
    let mut j: i64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * j + 1));
        if term < eps {
            // Alternating decreasing series: the tail is bounded by this term.
            let ulps = ceil_div(&(term.numer() << prec), term.denom());
            return acc.widen(&ulps);
        }
        let t = Dyadic::from_rational(&term, prec);
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        power *= &m2;
        j += 1;
    }
}

fn pi(prec: u32) -> Dyadic {
    let a = atan_inv(5, prec);
    let b = atan_inv(239, prec);
    a.mul_rational(&BigRational::from_integer(16.into()))
        .sub(&b.mul_rational(&BigRational::from_integer(4.into())))
}

/// Taylor series for `sin` (odd = true) or `cos` on an interval inside `[0, 1]`.
fn taylor(theta: &Dyadic, odd: bool) -> Dyadic {
    let prec = theta.prec;
    let one = Dyadic::exact_int(1, prec);
    let sq = theta.mul(theta);
    let mut power = if odd { theta.clone() } else { one };
    let mut fact = BigInt::one();
    let mut deg: i64 = if odd { 1 } else { 0 };
    let mut acc = Dyadic::exact_int(0, prec);
    let mut sign_pos = true;
    let limit = BigInt::one() << (prec + 2);
    loop {
        let term = power.mul_rational(&BigRational::new(BigInt::one(), fact.clone()));
        acc = if sign_pos { acc.add(&term) } else { acc.sub(&term) };
        sign_pos = !sign_pos;
        power = power.mul(&sq);
        fact *= BigInt::from((deg + 1) * (deg + 2));
        deg += 2;
        if fact > limit {
            // |theta| <= 1, so the remainder is below 1/deg!.
            let rem = ceil_div(&(BigInt::one() << prec), &fact);
            return acc.widen(&rem);
        }
    }
}

/// Enclosure of `cos(2 pi k / n)`.
fn cos_two_pi_frac(k: i64, n: i64, pi_iv: &Dyadic) -> Dyadic {
    let mut f = BigRational::new(k.rem_euclid(n).into(), n.into());
    let half = BigRational::new(1.into(), 2.into());
    let quarter = BigRational::new(1.into(), 4.into());
    let eighth = BigRational::new(1.into(), 8.into());
    if f > half {
        f = BigRational::one() - f;
    }
    let mut negate = false;
    if f > quarter {
        f = &half - f;
        negate = true;
    }
    let two = BigRational::from_integer(2.into());
    let v = if f > eighth {
        let theta = pi_iv.mul_rational(&(&two * (&quarter - &f)));
        taylor(&theta, true)
    } else {
        let theta = pi_iv.mul_rational(&(&two * &f));
        taylor(&theta, false)
    };
    if negate {
        v.neg()
    } else {
        v
    }
}

/// Interval enclosure of a real cyclotomic number at the given working precision.
pub(crate) fn enclose(a: &CycNumber, prec: u32) -> Dyadic {
    let n = a.conductor() as i64;
    let pi_iv = pi(prec);
    let mut acc = Dyadic::exact_int(0, prec);
    for (k, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = if k == 0 {
            Dyadic::from_rational(c, prec)
        } else {
            cos_two_pi_frac(k as i64, n, &pi_iv).mul_rational(c)
        };
        acc = acc.add(&term);
    }
    acc
}

fn check_real(a: &CycNumber) -> Result<()> {
    if a.is_real() {
        Ok(())
    } else {
        Err(Error::NotReal)
    }
}

/// Sign of a real cyclotomic number: `-1`, `0` or `1`.
pub fn sign_real(a: &CycNumber) -> Result<i8> {
    check_real(a)?;
    if a.is_zero() {
        return Ok(0);
    }
    if let Some(q) = a.to_rational() {
        return Ok(if q.is_positive() { 1 } else { -1 });
    }
    let mut prec = START_PRECISION;
    loop {
        let iv = enclose(a, prec);
        if iv.lo.is_positive() {
            return Ok(1);
        }
        if iv.hi.is_negative() {
            return Ok(-1);
        }
        prec *= 2;
    }
}

/// Exact comparison of two real cyclotomic numbers.
pub fn cmp_real(a: &CycNumber, b: &CycNumber) -> Result<Ordering> {
    Ok(match sign_real(&(a - b))? {
        -1 => Ordering::Less,
        0 => Ordering::Equal,
        _ => Ordering::Greater,
    })
}

/// Rational numbers `lo <= a <= hi` enclosing a real cyclotomic number.
pub fn real_bounds(a: &CycNumber, prec: u32) -> Result<(BigRational, BigRational)> {
    check_real(a)?;
    if let Some(q) = a.to_rational() {
        return Ok((q.clone(), q));
    }
    let iv = enclose(a, prec.max(8));
    Ok((iv.lower(), iv.upper()))
}

/// A rational `q` with `0 < q <= a`, for a real `a > 0`.
pub fn positive_lower_bound(a: &CycNumber) -> Result<BigRational> {
    if sign_real(a)? != 1 {
        return Err(Error::InvalidArgument("expected a positive real number".into()));
    }
    if let Some(q) = a.to_rational() {
        return Ok(q);
    }
    let mut prec = START_PRECISION;
    loop {
        let iv = enclose(a, prec);
        if iv.lo.is_positive() {
            return Ok(iv.lower());
        }
        prec *= 2;
    }
}

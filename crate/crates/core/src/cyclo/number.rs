use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

thread_local! {
    static CYCLOTOMIC: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Rc<Vec<i64>> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = CYCLOTOMIC.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_poly(d);
        num = exact_div_monic(&num, &den);
    }
    let rc = Rc::new(num);
    CYCLOTOMIC.with(|c| c.borrow_mut().insert(n, rc.clone()));
    rc
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An exact element of the cyclotomic field `Q(zeta_N)`.
///
/// Stored in the power basis `1, z, ..., z^(phi(N)-1)` with `z = exp(2 pi i / N)`,
/// reduced modulo the `N`-th cyclotomic polynomial. Values with different
/// conductors interoperate by coercion to the lcm of the conductors.
#[derive(Clone)]
pub struct CycNumber {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    pub fn zero(conductor: u32) -> Self {
        CycNumber {
            conductor,
            coeffs: vec![BigRational::zero(); euler_phi(conductor)],
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational_in(BigRational::one(), conductor)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_rational_in(q, 1)
    }

    pub fn from_rational_in(q: BigRational, conductor: u32) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = q;
        z
    }

    /// `zeta_N^k` for any integer `k`.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        let n = conductor as i64;
        let e = k.rem_euclid(n) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_poly(conductor, poly)
    }

    pub fn zeta(conductor: u32) -> Self {
        Self::zeta_pow(conductor, 1)
    }

    /// Build from an arbitrary polynomial in `z`; exponents are reduced.
    pub fn from_poly(conductor: u32, poly: Vec<BigRational>) -> Self {
        CycNumber {
            conductor,
            coeffs: reduce(poly, conductor),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates, constant term first.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-express in `Q(zeta_M)`; `M` must be a multiple of the conductor.
    pub fn coerce(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.conductor), "cannot coerce conductor {} into {}", self.conductor, m);
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(m, poly)
    }

    /// Coerce two values into their common field.
    pub fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.conductor.lcm(&b.conductor);
        (a.coerce(m), b.coerce(m))
    }

    /// Complex conjugation `z -> z^-1`.
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        let mut poly = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(n - i) % n] += c;
        }
        Self::from_poly(self.conductor, poly)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// `(a + conj(a)) / 2`.
    pub fn re(&self) -> Self {
        (self + &self.conj()).scale(&BigRational::new(1.into(), 2.into()))
    }

    /// `(a - conj(a)) / 2i`; lives in `Q(zeta_lcm(N,4))`.
    pub fn im(&self) -> Self {
        let i = Self::zeta(4);
        let diff = self - &self.conj();
        (&diff * &i).scale(&BigRational::new((-1).into(), 2.into()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational_in(q.recip(), self.conductor));
        }
        // Solve (multiplication-by-self) * b = 1 over Q.
        let k = self.coeffs.len();
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(k);
        let mut cur = self.clone();
        let z = Self::zeta(self.conductor);
        for _ in 0..k {
            cols.push(cur.coeffs.clone());
            cur = &cur * &z;
        }
        let mut aug: Vec<Vec<BigRational>> = (0..k)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..k {
            let piv = (col..k)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or_else(|| Error::Internal("singular multiplication matrix".into()))?;
            aug.swap(col, piv);
            let p = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v *= &p;
            }
            for r in 0..k {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=k {
                        let t = &f * &aug[col][c];
                        aug[r][c] -= t;
                    }
                }
            }
        }
        Ok(CycNumber {
            conductor: self.conductor,
            coeffs: aug.into_iter().map(|mut row| row.pop().unwrap()).collect(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.conductor);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Render as a scalar literal in this number's own conductor, highest power first.
    pub fn to_literal(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Render after coercing into `Q(zeta_M)`.
    pub fn to_literal_in(&self, m: u32) -> String {
        self.coerce(m).to_literal()
    }

    /// True when the literal needs parentheses as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Reduce a polynomial in `z` modulo `z^n - 1` and then modulo `Phi_n`.
fn reduce(poly: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let n_us = n as usize;
    let phi = euler_phi(n);
    let mut folded = vec![BigRational::zero(); n_us.max(phi)];
    for (i, c) in poly.into_iter().enumerate() {
        if !c.is_zero() {
            folded[i % n_us] += c;
        }
    }
    let cp = cyclotomic_poly(n);
    for i in (phi..folded.len()).rev() {
        if folded[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut folded[i], BigRational::zero());
        for (j, &pj) in cp.iter().enumerate().take(phi) {
            if pj != 0 {
                folded[i - phi + j] -= &c * BigRational::from_integer(BigInt::from(pj));
            }
        }
    }
    folded.truncate(phi);
    folded
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::unify(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycNumber {}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}]({})", self.conductor, self.to_literal())
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &'a CycNumber) -> CycNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = CycNumber::unify(self, rhs);
            return &a + &b;
        }
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &'a CycNumber) -> CycNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = CycNumber::unify(self, rhs);
            return &a - &b;
        }
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &'a CycNumber) -> CycNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = CycNumber::unify(self, rhs);
            return &a * &b;
        }
        if let Some(q) = self.to_rational() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.to_rational() {
            return self.scale(&q);
        }
        let k = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * k - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycNumber::from_poly(self.conductor, prod)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: &'a CycNumber) -> CycNumber {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycNumber> for CycNumber {
    fn sub_assign(&mut self, rhs: &CycNumber) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl From<i64> for CycNumber {
    fn from(n: i64) -> Self {
        CycNumber::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycNumber {
        CycNumber::zeta_pow(n, k)
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(9).len(), 7);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn minimal_polynomial_of_zeta3() {
        let s = &(&z(3, 2) + &z(3, 1)) + &CycNumber::one(3);
        assert!(s.is_zero());
    }

    #[test]
    fn inverse_of_one_plus_zeta3() {
        let a = &CycNumber::one(3) + &z(3, 1);
        let inv = a.inv().unwrap();
        assert_eq!(inv, -z(3, 1));
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(5, 1).conj(), z(5, 4));
        assert!((&z(5, 1) + &z(5, 4)).is_real());
        assert!(!z(5, 1).is_real());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(CycNumber::zero(7).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn coercion_between_conductors() {
        assert_eq!(z(3, 1), z(9, 3));
        assert_eq!(z(4, 1).coerce(12), z(12, 3));
        assert_eq!(z(2, 1), CycNumber::from_int(-1));
        assert_eq!(&z(3, 1) * &z(4, 1), z(12, 7));
    }

    #[test]
    fn real_and_imaginary_parts() {
        let w = z(3, 1);
        assert_eq!(w.re(), CycNumber::from_ratio(-1, 2));
        let im = w.im();
        assert!(im.is_real());
        // Im(zeta_3)^2 = 3/4
        assert_eq!(&im * &im, CycNumber::from_ratio(3, 4));
        let back = &w.re() + &(&im * &z(4, 1));
        assert_eq!(back, w);
    }

    #[test]
    fn literals() {
        let a = &z(3, 2).scale(&BigRational::new(1.into(), 2.into())) - &CycNumber::from_int(3);
        // z^2 reduces to -1 - z in Q(zeta_3)
        assert_eq!(a.to_literal(), "-1/2*z - 7/2");
        assert_eq!(CycNumber::zero(5).to_literal(), "0");
        assert_eq!((-z(5, 1)).to_literal(), "-z");
    }

    #[test]
    fn powers() {
        assert!(z(9, 1).pow(9).unwrap().is_one());
        assert_eq!(z(9, 1).pow(-1).unwrap(), z(9, 8));
    }
}

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::arrangement::Arrangement;
use crate::cyclo::{cmp_real, CycNumber};
use crate::error::{Error, Result};

/// An affine line `y = slope * x + intercept`, remembering its original index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLine {
    pub line: usize,
    pub slope: CycNumber,
    pub intercept: CycNumber,
}

/// An affine intersection point and the original lines through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePoint {
    pub x: CycNumber,
    pub y: CycNumber,
    pub lines: Vec<usize>,
}

/// The complement of one line, in coordinates where no line is vertical, the
/// real parts of the critical values are pairwise distinct, and concurrent
/// lines have slopes in general position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineArrangement {
    pub conductor: u32,
    pub degree: usize,
    pub infinity: usize,
    pub shear: CycNumber,
    pub lines: Vec<AffineLine>,
    /// Sorted by the real part of `x`.
    pub points: Vec<AffinePoint>,
    /// Lines meeting on the line at infinity.
    pub parallel_classes: Vec<Vec<usize>>,
    /// Euler characteristic of the projective complement.
    pub euler: i64,
}

/// Rationals `p/q` with `|p|, q <= 7`, ordered by height.
fn small_rationals() -> Vec<BigRational> {
    let mut v: Vec<(i64, i64)> = vec![(0, 1)];
    for h in 1..=7i64 {
        for q in 1..=h {
            for p in 0..=h {
                if (p.max(q) == h) && p.gcd(&q) == 1 && p != 0 {
                    v.push((p, q));
                    v.push((-p, q));
                }
            }
        }
    }
    v.into_iter().map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q))).collect()
}

/// The deterministic sequence of shears: small rationals, then Gaussian rationals.
pub(crate) fn shear_sequence(conductor: u32) -> Vec<CycNumber> {
    let rats = small_rationals();
    let i = CycNumber::zeta_pow(4, 1).coerce(conductor);
    let mut out: Vec<CycNumber> = rats.iter().map(|q| CycNumber::from_rational_in(q.clone(), conductor)).collect();
    for b in rats.iter().skip(1).take(16) {
        for a in rats.iter().take(16) {
            let re = CycNumber::from_rational_in(a.clone(), conductor);
            out.push(&re + &i.scale(b));
        }
    }
    out
}

/// Through each affine point, no three slopes may lie on a real line of the
/// complex plane; otherwise three projected strands meet along a whole real
/// line of the base, whatever the projection direction.
fn slopes_in_general_position(lines: &[AffineLine], points: &[AffinePoint]) -> bool {
    let slope = |i: &usize| &lines.iter().find(|l| l.line == *i).expect("affine line").slope;
    points.iter().all(|p| {
        let s: Vec<&CycNumber> = p.lines.iter().map(slope).collect();
        (0..s.len()).all(|i| {
            (i + 1..s.len()).all(|j| {
                (j + 1..s.len()).all(|k| {
                    let u = s[i] - s[j];
                    let v = s[i] - s[k];
                    !(&u * &v.conj()).im().is_zero()
                })
            })
        })
    })
}

/// Send line `infinity` to infinity.
pub fn decone(a: &Arrangement, infinity: usize) -> Result<AffineArrangement> {
    decone_with(a, infinity, 0)
}

/// As [`decone`], skipping the first `shear_offset` candidate shears.
pub fn decone_with(a: &Arrangement, infinity: usize, shear_offset: usize) -> Result<AffineArrangement> {
    let d = a.degree();
    if infinity >= d {
        return Err(Error::InvalidArgument(format!("no line {}", infinity + 1)));
    }
    let k = a.conductor().lcm(&4);
    let ell: Vec<CycNumber> = a.lines()[infinity].coeffs().iter().map(|c| c.coerce(k)).collect();
    // Coordinates (u0, v0, ell) with u0, v0 the two coordinate forms other than
    // the first one on which ell is nonzero; ell is normalised so that entry is 1.
    let r = ell.iter().position(|c| !c.is_zero()).expect("nonzero form");
    let (p, q) = match r {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let decomposed: Vec<(usize, CycNumber, CycNumber, CycNumber)> = (0..d)
        .filter(|&i| i != infinity)
        .map(|i| {
            let c: Vec<CycNumber> = a.lines()[i].coeffs().iter().map(|c| c.coerce(k)).collect();
            let gamma = c[r].clone();
            let alpha = &c[p] - &(&gamma * &ell[p]);
            let beta = &c[q] - &(&gamma * &ell[q]);
            (i, alpha, beta, gamma)
        })
        .collect();
    let lattice = a.lattice();
    let ell_at = |pt: &[CycNumber; 3]| -> CycNumber {
        ell.iter().zip(pt).fold(CycNumber::zero(k), |acc, (l, x)| &acc + &(l * x))
    };
    let mut parallel_classes = Vec::new();
    let mut affine = Vec::new();
    for lp in &lattice.points {
        let w = ell_at(&lp.point);
        if w.is_zero() {
            parallel_classes.push(lp.incident.iter().copied().filter(|&i| i != infinity).collect());
        } else {
            let winv = w.inv()?;
            affine.push((lp, winv));
        }
    }
    let euler = crate::arrangement::euler_complement(a, &lattice);

    'shear: for t in shear_sequence(k).into_iter().skip(shear_offset) {
        let mut lines = Vec::with_capacity(d - 1);
        for (i, alpha, beta, gamma) in &decomposed {
            let b = beta - &(&t * alpha);
            if b.is_zero() {
                continue 'shear;
            }
            let binv = b.inv()?;
            lines.push(AffineLine { line: *i, slope: -(alpha * &binv), intercept: -(gamma * &binv) });
        }
        let mut points: Vec<AffinePoint> = affine
            .iter()
            .map(|(lp, winv)| {
                let pt = lp.point.each_ref().map(|c| c.coerce(k));
                let x = &(&pt[p] + &(&t * &pt[q])) * winv;
                let y = &pt[q] * winv;
                AffinePoint { x, y, lines: lp.incident.clone() }
            })
            .collect();
        let mut tie = false;
        let mut err = None;
        points.sort_by(|u, v| match cmp_real(&u.x.re(), &v.x.re()) {
            Ok(Ordering::Equal) => {
                tie = true;
                Ordering::Equal
            }
            Ok(o) => o,
            Err(e) => {
                err = Some(e);
                Ordering::Equal
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if tie || !slopes_in_general_position(&lines, &points) {
            continue;
        }
        return Ok(AffineArrangement {
            conductor: k,
            degree: d,
            infinity,
            shear: t,
            lines,
            points,
            parallel_classes,
            euler,
        });
    }
    Err(Error::GenericityFailure("no generic shear among the candidates".into()))
}

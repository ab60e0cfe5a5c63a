//! Presentations of the fundamental group of the complement, twisted first
//! cohomology for rank-one local systems, and the monodromy spectrum of the
//! Milnor fiber.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::braid::{braid_monodromy_with, decone_with, BraidOptions, FreeWord, MonodromyData};
use crate::cyclo::{CycMatrix, CycNumber};
use crate::error::{Error, Result};

/// A finite presentation `<x_1, ..., x_n | relators>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub n: usize,
    pub relators: Vec<FreeWord>,
}

impl GroupPresentation {
    /// Euler characteristic `1 - n + s` of the presentation 2-complex.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.n as i64 + self.relators.len() as i64
    }

    /// Whether every relator has zero exponent sum in every generator, so the
    /// abelianization is free of rank `n`.
    pub fn has_free_abelianization(&self) -> bool {
        self.relators.iter().all(|r| r.exponent_sums(self.n).iter().all(|&e| e == 0))
    }
}

/// The Zariski–van Kampen presentation: generators are the strands at the
/// basepoint in position order; each critical value of multiplicity `m`
/// contributes `m - 1` relators.
pub fn zvk_presentation(md: &MonodromyData) -> Result<GroupPresentation> {
    let n = md.strands();
    let mut relators = Vec::new();
    for e in &md.events {
        let out = e.conjugator.action();
        let local = e.local.action();
        let a = e.block_start;
        let b = a + e.multiplicity - 1;
        for u in a..b {
            let r = local[u].mul(&FreeWord::gen(u).inverse());
            relators.push(r.substitute(&out));
        }
    }
    let p = GroupPresentation { n, relators };
    if !p.has_free_abelianization() {
        return Err(Error::Internal("a relator has nonzero exponent sum".into()));
    }
    if p.euler_characteristic() != md.euler {
        return Err(Error::Internal(format!(
            "Euler audit failed: 1 - {} + {} != {}",
            p.n,
            p.relators.len(),
            md.euler
        )));
    }
    Ok(p)
}

/// The diagonal character sending every meridian to `lambda = zeta_d^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Character {
    pub d: u32,
    pub exponent: u32,
}

impl Character {
    pub fn root(d: u32, exponent: u32) -> Self {
        Character { d, exponent: exponent % d }
    }

    /// The character for a given `lambda`, which must satisfy `lambda^d = 1`.
    pub fn new(d: u32, lambda: &CycNumber) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("d must be positive".into()));
        }
        (0..d)
            .find(|&e| CycNumber::zeta_pow(d, e as i64) == *lambda)
            .map(|e| Character { d, exponent: e })
            .ok_or_else(|| Error::InvalidArgument("lambda is not a d-th root of unity".into()))
    }

    pub fn lambda(&self) -> CycNumber {
        CycNumber::zeta_pow(self.d, self.exponent as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }
}

/// Fox derivatives evaluated at the diagonal character, as integer
/// polynomials in `lambda` reduced modulo `lambda^d - 1`:
/// `out[r][j][e]` is the coefficient of `lambda^e` in `d r_r / d x_j`.
fn fox_polynomials(p: &GroupPresentation, d: u32) -> Vec<Vec<Vec<i64>>> {
    let d = d as i64;
    p.relators
        .iter()
        .map(|r| {
            let mut row = vec![vec![0i64; d as usize]; p.n];
            let mut e: i64 = 0;
            for &l in r.letters() {
                let j = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    row[j][e.rem_euclid(d) as usize] += 1;
                    e += 1;
                } else {
                    e -= 1;
                    row[j][e.rem_euclid(d) as usize] -= 1;
                }
            }
            row
        })
        .collect()
}

fn evaluate(polys: &[Vec<Vec<i64>>], n: usize, chi: &Character) -> CycMatrix {
    let d = chi.d;
    let powers: Vec<CycNumber> = (0..d).map(|e| CycNumber::zeta_pow(d, (e * chi.exponent) as i64)).collect();
    let rows = polys
        .iter()
        .map(|row| {
            row.iter()
                .map(|poly| {
                    poly.iter().enumerate().fold(CycNumber::zero(d), |acc, (e, &c)| {
                        if c == 0 {
                            acc
                        } else {
                            &acc + &powers[e].scale(&num_rational::BigRational::from_integer(c.into()))
                        }
                    })
                })
                .collect()
        })
        .collect();
    CycMatrix::from_rows(rows, n)
}

/// The `s x n` matrix of Fox derivatives evaluated at the character.
pub fn fox_jacobian(p: &GroupPresentation, chi: &Character) -> CycMatrix {
    evaluate(&fox_polynomials(p, chi.d), p.n, chi)
}

/// `dim H^1` of the presentation complex with coefficients in the rank-one
/// local system of the character.
pub fn local_system_h1(p: &GroupPresentation, chi: &Character) -> usize {
    let rank = fox_jacobian(p, chi).rank();
    p.n - rank - usize::from(!chi.is_trivial())
}

/// Eigenspace dimensions of the monodromy on `H^1(F)`, keyed by the exponent
/// `e` of the eigenvalue `zeta_d^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub d: u32,
    pub dims: BTreeMap<u32, usize>,
    pub b1f: usize,
    pub monodromy_order: u32,
}

impl Spectrum {
    pub fn dim(&self, exponent: u32) -> usize {
        self.dims.get(&(exponent % self.d)).copied().unwrap_or(0)
    }

    /// Dimension of the eigenspace of `lambda`, which must be a `d`-th root of unity.
    pub fn dim_of(&self, lambda: &CycNumber) -> Result<usize> {
        Ok(self.dim(Character::new(self.d, lambda)?.exponent))
    }
}

/// The spectrum of a presentation, one rank computation per `d`-th root of unity.
pub fn spectrum_of_presentation(p: &GroupPresentation, d: u32) -> Result<Spectrum> {
    let polys = fox_polynomials(p, d);
    let dims: BTreeMap<u32, usize> = (0..d)
        .into_par_iter()
        .map(|e| {
            let chi = Character::root(d, e);
            let rank = evaluate(&polys, p.n, &chi).rank();
            (e, p.n - rank - usize::from(e != 0))
        })
        .collect();
    let b1f = dims.values().sum();
    let s = Spectrum { d, dims, b1f, monodromy_order: d };
    if s.dim(0) + 1 != d as usize {
        return Err(Error::InconsistentSpectrum(format!("eigenvalue 1 has dimension {}, expected {}", s.dim(0), d - 1)));
    }
    for e in 1..d {
        if s.dim(e) != s.dim(d - e) {
            return Err(Error::InconsistentSpectrum(format!("exponents {e} and {} differ", d - e)));
        }
    }
    Ok(s)
}

/// Choices feeding the pipeline; different choices must give the same spectrum.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Line sent to infinity; the last line by default.
    pub infinity: Option<usize>,
    pub shear_offset: usize,
    pub braid: BraidOptions,
}

/// Decone, compute braid monodromy, and read off the presentation.
pub fn presentation(a: &Arrangement, opts: &PipelineOptions) -> Result<(MonodromyData, GroupPresentation)> {
    let inf = opts.infinity.unwrap_or(a.degree() - 1);
    let aa = decone_with(a, inf, opts.shear_offset)?;
    let md = braid_monodromy_with(&aa, &opts.braid)?;
    let p = zvk_presentation(&md)?;
    Ok((md, p))
}

pub fn milnor_spectrum(a: &Arrangement) -> Result<Spectrum> {
    milnor_spectrum_with(a, &PipelineOptions::default())
}

pub fn milnor_spectrum_with(a: &Arrangement, opts: &PipelineOptions) -> Result<Spectrum> {
    let (_, p) = presentation(a, opts)?;
    spectrum_of_presentation(&p, a.degree() as u32)
}

/// First Betti number of the `d`-fold cyclic cover of the presentation
/// complex in which every generator lifts to an edge from sheet `c` to `c + 1`.
pub fn cyclic_cover_b1(p: &GroupPresentation, d: u32) -> usize {
    let d = d as usize;
    let n = p.n;
    let mut rows = Vec::with_capacity(p.relators.len() * d);
    for r in &p.relators {
        for start in 0..d {
            let mut row = vec![0i64; n * d];
            let mut c = start;
            for &l in r.letters() {
                let i = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    row[i * d + c] += 1;
                    c = (c + 1) % d;
                } else {
                    c = (c + d - 1) % d;
                    row[i * d + c] -= 1;
                }
            }
            rows.push(row.into_iter().map(CycNumber::from_int).collect());
        }
    }
    let rank2 = CycMatrix::from_rows(rows, n * d).rank();
    let rank1 = if n == 0 { 0 } else { d - 1 };
    n * d - rank1 - rank2
}

/// Compare the total of the spectrum with the Betti number of the cyclic cover.
pub fn spectrum_crosscheck(a: &Arrangement) -> Result<bool> {
    let d = a.degree();
    if d > 6 {
        return Err(Error::InvalidArgument(format!("crosscheck is limited to d <= 6, got {d}")));
    }
    let (_, p) = presentation(a, &PipelineOptions::default())?;
    let s = spectrum_of_presentation(&p, d as u32)?;
    Ok(cyclic_cover_b1(&p, d as u32) == s.b1f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::catalog::*;
    use crate::arrangement::LinearForm;

    fn w(l: &[i32]) -> FreeWord {
        FreeWord::from_letters(l)
    }

    #[test]
    fn commutator_jacobian() {
        let p = GroupPresentation { n: 2, relators: vec![w(&[1, 2, -1, -2])] };
        for e in 0..5 {
            let chi = Character::root(5, e);
            let l = chi.lambda();
            let one = CycNumber::one(5);
            let j = fox_jacobian(&p, &chi);
            assert_eq!(*j.get(0, 0), &one - &l);
            assert_eq!(*j.get(0, 1), &l - &one);
        }
        assert_eq!(local_system_h1(&p, &Character::root(5, 0)), 2);
        assert_eq!(local_system_h1(&p, &Character::root(5, 1)), 0);
    }

    #[test]
    fn non_commutator_at_trivial_character() {
        let p = GroupPresentation { n: 2, relators: vec![w(&[1, 1, 2])] };
        let j = fox_jacobian(&p, &Character::root(3, 0));
        assert!(!j.get(0, 0).is_zero());
    }

    #[test]
    fn ceva_spectrum() {
        let a = ceva3();
        let (md, p) = presentation(&a, &PipelineOptions::default()).unwrap();
        assert_eq!(md.events.len(), 8);
        assert_eq!((p.n, p.relators.len()), (8, 16));
        assert_eq!(p.euler_characteristic(), 9);
        let s = spectrum_of_presentation(&p, 9).unwrap();
        assert_eq!(s.dim(0), 8);
        assert_eq!(s.dim(3), 2);
        assert_eq!(s.dim(6), 2);
        for e in [1, 2, 4, 5, 7, 8] {
            assert_eq!(s.dim(e), 0);
        }
        assert_eq!(s.b1f, 12);
        assert_eq!(fox_jacobian(&p, &Character::root(9, 3)).rank(), 5);
        assert_eq!(s.dim_of(&CycNumber::zeta(3)).unwrap(), 2);
    }

    #[test]
    fn small_spectra() {
        let s = milnor_spectrum(&triangle()).unwrap();
        assert_eq!(s.dims, BTreeMap::from([(0, 2), (1, 0), (2, 0)]));
        let s = milnor_spectrum(&generic(1).unwrap()).unwrap();
        assert_eq!(s.dims, BTreeMap::from([(0, 0)]));
        let two = Arrangement::new(vec![LinearForm::int(1, 0, 0).unwrap(), LinearForm::int(0, 1, 0).unwrap()]).unwrap();
        let s = milnor_spectrum(&two).unwrap();
        assert_eq!(s.dims, BTreeMap::from([(0, 1), (1, 0)]));
        let s = milnor_spectrum(&a3()).unwrap();
        assert_eq!(s.b1f, 7);
        assert_eq!((s.dim(0), s.dim(2), s.dim(4)), (5, 1, 1));
    }

    #[test]
    fn pencil_of_lines() {
        for k in 2..=5 {
            let s = milnor_spectrum(&central(k).unwrap()).unwrap();
            assert_eq!(s.dim(0), k - 1);
            for e in 1..k as u32 {
                assert_eq!(s.dim(e), k - 2, "central({k}), exponent {e}");
            }
        }
    }

    #[test]
    fn crosscheck_small_arrangements() {
        let two = Arrangement::new(vec![LinearForm::int(1, 0, 0).unwrap(), LinearForm::int(0, 1, 0).unwrap()]).unwrap();
        for a in [triangle(), two, central(3).unwrap(), a3(), generic(4).unwrap()] {
            assert!(spectrum_crosscheck(&a).unwrap(), "{:?}", a.label());
        }
    }

    #[test]
    fn character_from_lambda() {
        let chi = Character::new(9, &CycNumber::zeta(3)).unwrap();
        assert_eq!(chi.exponent, 3);
        assert!(Character::new(4, &CycNumber::zeta(3)).is_err());
    }
}

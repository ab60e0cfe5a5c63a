//! Pencils of curves attached to block partitions, their lifts, and the
//! Hodge-number bookkeeping of the lifted curve.

use std::collections::BTreeSet;

use crate::arrangement::{Arrangement, Point, XYZ};
use crate::cyclo::{monomials_of_degree, CycMatrix, CycNumber, MultiPoly};
use crate::error::{Error, Result};
use crate::resonance::NetPartition;

pub const UV: [&str; 2] = ["u", "v"];

/// A block of lines with exponents, `(line index, exponent)`.
pub type Block = Vec<(usize, u32)>;

/// The pencil `[Q_1 : Q_2]` spanned by block products.
///
/// For `j >= 3`, `Q_j = alpha_j Q_1 + beta_j Q_2`; the fiber `Q_j = 0` lies over
/// `a_j = [-beta_j : alpha_j]`, so that `a_1 = [0:1]` and `a_2 = [1:0]`.
#[derive(Clone, Debug)]
pub struct Pencil {
    pub blocks: Vec<Block>,
    pub q: Vec<MultiPoly>,
    pub coords: Vec<(CycNumber, CycNumber)>,
    pub punctures: Vec<[CycNumber; 2]>,
    conductor: u32,
    degree: usize,
}

impl Pencil {
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_reduced(&self) -> bool {
        self.blocks.iter().flatten().all(|&(_, e)| e == 1)
    }

    /// Whether every line of the arrangement belongs to some block.
    pub fn covers_arrangement(&self) -> bool {
        let lines: BTreeSet<usize> = self.blocks.iter().flatten().map(|&(i, _)| i).collect();
        lines.len() == self.degree
    }
}

/// Build the pencil for blocks of lines with exponents.
pub fn pencil_from_blocks(a: &Arrangement, blocks: &[Block]) -> Result<Pencil> {
    let d = a.degree();
    if blocks.len() < 2 {
        return Err(Error::InvalidArgument("a pencil needs at least two blocks".into()));
    }
    let mut seen = vec![false; d];
    for b in blocks {
        if b.is_empty() {
            return Err(Error::InvalidArgument("empty block".into()));
        }
        for &(i, e) in b {
            if i >= d {
                return Err(Error::InvalidArgument(format!("no line {}", i + 1)));
            }
            if e == 0 {
                return Err(Error::InvalidArgument(format!("line {} has exponent 0", i + 1)));
            }
            if seen[i] {
                return Err(Error::InvalidArgument(format!("line {} appears in two blocks", i + 1)));
            }
            seen[i] = true;
        }
    }
    let q: Vec<MultiPoly> = blocks
        .iter()
        .map(|b| {
            let factors: Vec<MultiPoly> = b.iter().map(|&(i, e)| a.lines()[i].to_poly().pow(e)).collect();
            MultiPoly::product(&XYZ, &factors)
        })
        .collect();
    let monos: Vec<Vec<u32>> = q
        .iter()
        .flat_map(|p| p.terms().map(|(e, _)| e.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let columns: Vec<Vec<CycNumber>> = q.iter().map(|p| p.coeff_vector(&monos)).collect();
    let as_matrix = |cols: &[&Vec<CycNumber>]| {
        let rows = (0..monos.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        CycMatrix::from_rows(rows, cols.len())
    };
    let span = as_matrix(&columns.iter().collect::<Vec<_>>()).rank();
    if span != 2 {
        return Err(Error::NotAPencil(span));
    }
    if as_matrix(&[&columns[0], &columns[1]]).rank() != 2 {
        return Err(Error::NotAPencil(1));
    }
    let mut coords = Vec::new();
    let mut punctures = vec![
        [CycNumber::zero(1), CycNumber::one(1)],
        [CycNumber::one(1), CycNumber::zero(1)],
    ];
    for col in &columns[2..] {
        let (_, ker) = as_matrix(&[&columns[0], &columns[1], col]).rank_kernel();
        let v = &ker[0];
        let inv = v[2].inv().map_err(|_| Error::NotAPencil(3))?;
        let alpha = -(&v[0] * &inv);
        let beta = -(&v[1] * &inv);
        punctures.push([-beta.clone(), alpha.clone()]);
        coords.push((alpha, beta));
    }
    Ok(Pencil {
        blocks: blocks.to_vec(),
        q,
        coords,
        punctures,
        conductor: a.conductor(),
        degree: d,
    })
}

/// The pencil of a net, every exponent 1, blocks in the given order.
pub fn pencil_from_net(a: &Arrangement, net: &NetPartition) -> Result<Pencil> {
    let blocks: Vec<Block> = net.blocks.iter().map(|b| b.iter().map(|&i| (i, 1)).collect()).collect();
    pencil_from_blocks(a, &blocks)
}

/// A base point with the multiplicity of each fiber `C_j` there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoint {
    pub point: Point,
    pub multiplicities: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseLocusReport {
    pub points: Vec<BasePoint>,
    pub simple_point_exists: bool,
}

/// Common zeros of `Q_1` and `Q_2`: the meets of block-1 lines with block-2 lines.
pub fn base_locus(a: &Arrangement, p: &Pencil) -> Result<BaseLocusReport> {
    let lattice = a.lattice();
    let mut exp = vec![vec![0u32; p.k()]; a.degree()];
    for (j, b) in p.blocks.iter().enumerate() {
        for &(i, e) in b {
            exp[i][j] = e;
        }
    }
    let mut points = Vec::new();
    let mut bezout = 0u64;
    for lp in &lattice.points {
        let mult: Vec<u32> = (0..p.k()).map(|j| lp.incident.iter().map(|&i| exp[i][j]).sum()).collect();
        if mult[0] > 0 && mult[1] > 0 {
            if mult.contains(&0) {
                return Err(Error::Internal(format!(
                    "base point {:?} misses a fiber of the pencil",
                    lp.incident
                )));
            }
            bezout += u64::from(mult[0]) * u64::from(mult[1]);
            points.push(BasePoint { point: lp.point.clone(), multiplicities: mult });
        }
    }
    let deg = |j: usize| -> u64 { p.blocks[j].iter().map(|&(_, e)| u64::from(e)).sum() };
    if bezout != deg(0) * deg(1) {
        return Err(Error::Internal(format!(
            "Bezout audit failed: {bezout} != {}",
            deg(0) * deg(1)
        )));
    }
    let simple_point_exists = points.iter().any(|b| b.multiplicities.iter().all(|&m| m == 1));
    Ok(BaseLocusReport { points, simple_point_exists })
}

/// The binary form `g(u, v) = u v prod_{j>=3} (alpha_j u + beta_j v)`; the lifted
/// curve is `g = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCurve {
    pub g: MultiPoly,
    /// Set only when `g(Q_1, Q_2) = f` has been checked for an actual pencil.
    pub certified: bool,
}

impl LiftedCurve {
    /// An uncertified curve `g = 1` for an arbitrary binary form.
    pub fn from_binary_form(g: MultiPoly) -> Self {
        LiftedCurve { g, certified: false }
    }

    pub fn k(&self) -> usize {
        self.g.degree().unwrap_or(0) as usize
    }

    pub fn equation(&self) -> String {
        format!("{} = 1", self.g.to_literal())
    }
}

pub fn binary_form(coords: &[(CycNumber, CycNumber)]) -> MultiPoly {
    let mut factors = vec![MultiPoly::var(&UV, 0), MultiPoly::var(&UV, 1)];
    for (al, be) in coords {
        factors.push(MultiPoly::linear(&UV, &[al.clone(), be.clone()]));
    }
    MultiPoly::product(&UV, &factors)
}

/// Lift the pencil, certifying `g(Q_1, Q_2) = f_1 ... f_d`.
pub fn lift_pencil(a: &Arrangement, p: &Pencil) -> Result<LiftedCurve> {
    if !p.is_reduced() {
        return Err(Error::PropositionHypothesesNotMet("some block has a repeated line".into()));
    }
    if !p.covers_arrangement() {
        return Err(Error::PropositionHypothesesNotMet("the blocks do not cover every line".into()));
    }
    if !base_locus(a, p)?.simple_point_exists {
        return Err(Error::PropositionHypothesesNotMet(
            "no base point is simple on every fiber".into(),
        ));
    }
    let g = binary_form(&p.coords);
    if g.compose(&[p.q[0].clone(), p.q[1].clone()]) != a.defining_polynomial() {
        return Err(Error::Internal("g(Q1, Q2) differs from the product of the lines".into()));
    }
    Ok(LiftedCurve { g, certified: true })
}

/// Graded pieces of `C[u, v] / (g_u, g_v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorAlgebra {
    pub generators: Vec<MultiPoly>,
    /// Dimensions in degrees `0 ..= 2k - 3`; the last entry is 0.
    pub graded_dims: Vec<usize>,
}

impl MilnorAlgebra {
    pub fn total_dim(&self) -> usize {
        self.graded_dims.iter().sum()
    }
}

pub fn milnor_algebra(g: &MultiPoly) -> Result<MilnorAlgebra> {
    if g.vars().len() != 2 || !g.is_homogeneous() {
        return Err(Error::InvalidArgument("expected a homogeneous binary form".into()));
    }
    let k = match g.degree() {
        Some(k) if k >= 2 => k,
        _ => return Err(Error::InvalidArgument("binary form must have degree at least 2".into())),
    };
    let vars: Vec<&str> = g.vars().iter().map(String::as_str).collect();
    let generators = vec![g.partial(0), g.partial(1)];
    let mut graded_dims = Vec::new();
    for t in 0..=(2 * k - 3) {
        let target = monomials_of_degree(2, t);
        let rank = if t + 1 < k {
            0
        } else {
            let cols: Vec<Vec<CycNumber>> = monomials_of_degree(2, t + 1 - k)
                .into_iter()
                .flat_map(|m| {
                    let mut mono = MultiPoly::zero(&vars);
                    mono.add_term(m, CycNumber::one(1));
                    generators.iter().map(move |h| mono.mul(h)).collect::<Vec<_>>()
                })
                .map(|p| p.coeff_vector(&target))
                .collect();
            let rows = (0..target.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
            CycMatrix::from_rows(rows, cols.len()).rank()
        };
        graded_dims.push(target.len() - rank);
    }
    let k = k as usize;
    if *graded_dims.last().unwrap() != 0 || graded_dims.iter().sum::<usize>() != (k - 1) * (k - 1) {
        return Err(Error::NonIsolatedSingularity);
    }
    Ok(MilnorAlgebra { generators, graded_dims })
}

/// Euler characteristic, genus and Hodge numbers of `H^1` of the curve `g = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveMHS {
    pub k: usize,
    pub chi: i64,
    pub genus: i64,
    pub h11: i64,
    pub h10: i64,
    pub h01: i64,
    pub certified: bool,
}

impl CurveMHS {
    pub fn is_general_type(&self) -> bool {
        self.chi < 0
    }
}

pub fn curve_mhs(curve: &LiftedCurve) -> Result<CurveMHS> {
    let m = milnor_algebra(&curve.g)?;
    let k = curve.k() as i64;
    let mu = (k - 1) * (k - 1);
    let genus = (k - 1) * (k - 2) / 2;
    // The piece of degree k - 2 carries the weight-2 part.
    let h11 = m.graded_dims[(k - 2) as usize] as i64;
    if h11 + 2 * genus != mu {
        return Err(Error::Internal(format!("h11 + 2 genus = {} != {mu}", h11 + 2 * genus)));
    }
    Ok(CurveMHS { k: k as usize, chi: 1 - mu, genus, h11, h10: genus, h01: genus, certified: curve.certified })
}

/// Dimensions of the image `E` of `H^1` of the lifted curve inside `H^1(F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EDims {
    pub e11: i64,
    pub e10: i64,
    pub e01: i64,
}

pub fn pullback_e(c: &CurveMHS) -> Result<EDims> {
    if !c.certified {
        return Err(Error::PropositionHypothesesNotMet("the lift is not certified".into()));
    }
    Ok(EDims { e11: c.h11, e10: c.h10, e01: c.h01 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::catalog::*;
    use crate::arrangement::LinearForm;

    fn blocks(spec: &[&[usize]]) -> Vec<Block> {
        spec.iter().map(|b| b.iter().map(|&i| (i, 1)).collect()).collect()
    }

    fn u() -> MultiPoly {
        MultiPoly::var(&UV, 0)
    }

    fn v() -> MultiPoly {
        MultiPoly::var(&UV, 1)
    }

    #[test]
    fn ceva_pencil() {
        let a = ceva3();
        let p = pencil_from_blocks(&a, &blocks(&[&[0, 1, 2], &[6, 7, 8], &[3, 4, 5]])).unwrap();
        assert_eq!(p.coords, vec![(1.into(), 1.into())]);
        let bl = base_locus(&a, &p).unwrap();
        assert_eq!(bl.points.len(), 9);
        assert!(bl.simple_point_exists);
        let lift = lift_pencil(&a, &p).unwrap();
        assert_eq!(lift.g, u().mul(&v()).mul(&u().add(&v())));
        assert_eq!(lift.equation(), "u^2*v + u*v^2 = 1");
        let mhs = curve_mhs(&lift).unwrap();
        assert_eq!((mhs.chi, mhs.genus, mhs.h11, mhs.h10, mhs.h01), (-3, 1, 2, 1, 1));
        assert_eq!(pullback_e(&mhs).unwrap(), EDims { e11: 2, e10: 1, e01: 1 });
    }

    #[test]
    fn triangle_is_not_a_pencil() {
        let a = triangle();
        assert_eq!(
            pencil_from_blocks(&a, &blocks(&[&[0], &[1], &[2]])).unwrap_err(),
            Error::NotAPencil(3)
        );
    }

    #[test]
    fn concurrent_lines() {
        let a = central(4).unwrap();
        let p = pencil_from_blocks(&a, &blocks(&[&[0], &[1], &[2], &[3]])).unwrap();
        assert_eq!(p.k(), 4);
        let bl = base_locus(&a, &p).unwrap();
        assert_eq!(bl.points.len(), 1);
        assert_eq!(bl.points[0].multiplicities, vec![1; 4]);
        let lift = lift_pencil(&a, &p).unwrap();
        assert_eq!(lift.k(), 4);
        let mhs = curve_mhs(&lift).unwrap();
        assert_eq!((mhs.chi, mhs.genus, mhs.h11, mhs.h10, mhs.h01), (-8, 3, 3, 3, 3));
    }

    #[test]
    fn base_points_of_multiplicity_two() {
        let forms = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0), (1, 2, 0), (2, -1, 0)]
            .iter()
            .map(|&(a, b, c)| LinearForm::int(a, b, c).unwrap())
            .collect();
        let a = Arrangement::new(forms).unwrap();
        let p = pencil_from_blocks(&a, &blocks(&[&[0, 1], &[2, 3], &[4, 5]])).unwrap();
        let bl = base_locus(&a, &p).unwrap();
        assert!(!bl.simple_point_exists);
        assert!(matches!(lift_pencil(&a, &p), Err(Error::PropositionHypothesesNotMet(_))));
    }

    #[test]
    fn repeated_exponents_are_refused() {
        let a = b3();
        let bs: Vec<Block> = vec![
            vec![(0, 2), (7, 1), (8, 1)],
            vec![(1, 2), (5, 1), (6, 1)],
            vec![(2, 2), (3, 1), (4, 1)],
        ];
        let p = pencil_from_blocks(&a, &bs).unwrap();
        assert_eq!(p.coords, vec![(CycNumber::from_int(-1), CycNumber::from_int(1))]);
        assert!(matches!(lift_pencil(&a, &p), Err(Error::PropositionHypothesesNotMet(_))));
    }

    #[test]
    fn milnor_algebras() {
        let g = u().mul(&v()).mul(&u().add(&v()));
        let m = milnor_algebra(&g).unwrap();
        assert_eq!(m.graded_dims, vec![1, 2, 1, 0]);
        let two = CycNumber::from_int(2);
        assert_eq!(m.generators[0], u().mul(&v()).scale(&two).add(&v().pow(2)));
        assert_eq!(milnor_algebra(&u().mul(&v())).unwrap().graded_dims, vec![1, 0]);
        let m = milnor_algebra(&u().pow(3).add(&v().pow(3))).unwrap();
        assert_eq!(m.graded_dims, vec![1, 2, 1, 0]);
        assert_eq!(milnor_algebra(&u().pow(2).mul(&v())), Err(Error::NonIsolatedSingularity));
    }

    #[test]
    fn degree_two_curve_is_not_general_type() {
        let mhs = curve_mhs(&LiftedCurve::from_binary_form(u().mul(&v()))).unwrap();
        assert_eq!((mhs.chi, mhs.genus, mhs.h11, mhs.h10, mhs.h01), (0, 0, 1, 0, 0));
        assert!(!mhs.is_general_type());
        assert!(pullback_e(&mhs).is_err());
    }
}

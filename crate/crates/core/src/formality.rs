//! The one-sided obstruction to 1-formality of the Milnor fiber: a pencil
//! component `E` of the tangent cone is compared with the weight-one part
//! `W_1(F)` of `H^1(F)`.

use std::fmt;

use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::milnorfiber::{milnor_spectrum, Spectrum};
use crate::pencil::{curve_mhs, lift_pencil, pencil_from_blocks, pullback_e, Block, CurveMHS, EDims, Pencil};
use crate::resonance::{net_search, NetPartition};

/// Hodge bookkeeping of `H^1(F)`: the eigenvalue-1 part is pure of type
/// `(1,1)` and the rest is `W_1(F)`, pure of weight one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberMHS {
    pub d: u32,
    pub h11f: usize,
    pub w1f: usize,
    pub w1_h10: usize,
    /// Exponents `e != 0` with a nonzero `zeta_d^e`-eigenspace.
    pub nontrivial_exponents: Vec<u32>,
}

impl FiberMHS {
    pub fn b1f(&self) -> usize {
        self.h11f + self.w1f
    }

    /// The cup-vanishing rule needs `W_1(F)` to be spanned by exactly two
    /// conjugate eigenspaces.
    pub fn cup_rule_applies(&self) -> bool {
        match self.nontrivial_exponents[..] {
            [e, f] => e + f == self.d && e != f,
            _ => false,
        }
    }
}

pub fn fiber_mhs(s: &Spectrum) -> Result<FiberMHS> {
    for e in 1..s.d {
        if s.dim(e) != s.dim(s.d - e) {
            return Err(Error::InconsistentSpectrum(format!("exponents {e} and {} differ", s.d - e)));
        }
    }
    let h11f = s.dim(0);
    let nontrivial_exponents: Vec<u32> = (1..s.d).filter(|&e| s.dim(e) > 0).collect();
    let w1f: usize = nontrivial_exponents.iter().map(|&e| s.dim(e)).sum();
    if !w1f.is_multiple_of(2) {
        return Err(Error::InconsistentSpectrum(format!("W_1(F) has odd dimension {w1f}")));
    }
    Ok(FiberMHS { d: s.d, h11f, w1f, w1_h10: w1f / 2, nontrivial_exponents })
}

/// The component `E` pulled back from the lifted curve of a certified pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentConeComponent {
    pub dims: EDims,
    pub chi: i64,
    /// Blocks of the source pencil, 0-based line indices.
    pub blocks: Vec<Vec<usize>>,
    pub q1: String,
    pub q2: String,
    pub equation: String,
}

impl TangentConeComponent {
    pub fn from_pencil(a: &Arrangement, p: &Pencil) -> Result<Self> {
        let curve = lift_pencil(a, p)?;
        let mhs = curve_mhs(&curve)?;
        Self::from_parts(p, &mhs, curve.equation())
    }

    fn from_parts(p: &Pencil, mhs: &CurveMHS, equation: String) -> Result<Self> {
        if !mhs.is_general_type() {
            return Err(Error::NotGeneralType(mhs.chi));
        }
        let dims = pullback_e(mhs)?;
        let k = p.k() as i64;
        if dims.e10 != dims.e01 || dims.e11 + dims.e10 + dims.e01 != (k - 1) * (k - 1) {
            return Err(Error::Internal("E dimensions violate symmetry or total".into()));
        }
        Ok(TangentConeComponent {
            dims,
            chi: mhs.chi,
            blocks: p.blocks.iter().map(|b| b.iter().map(|&(i, _)| i).collect()).collect(),
            q1: p.q[0].to_literal(),
            q2: p.q[1].to_literal(),
            equation,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Not1Formal,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Not1Formal => "NOT_1_FORMAL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// `dim (W_1(F) cap H^{1,0}(F))` against `dim E^{1,0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub w1_h10: usize,
    pub e10: i64,
}

impl Witness {
    pub fn holds(&self) -> bool {
        self.w1_h10 as i64 > self.e10
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.holds() { ">" } else { "<=" };
        write!(f, "{} {op} {}", self.w1_h10, self.e10)
    }
}

/// An inference rule the verdict relies on, with its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assumption {
    pub rule: String,
    pub citation: String,
}

fn assumption(rule: &str, citation: &str) -> Assumption {
    Assumption { rule: rule.into(), citation: citation.into() }
}

fn tangent_cone_rule() -> Assumption {
    assumption(
        "if X is 1-formal, the tangent cone TC_1 V_1(X) equals R_1(X) and each of its irreducible components is a linear subspace",
        "Dimca, Papadima, Suciu, Topology and geometry of cohomology jump loci, Duke Math. J. 148 (2009), tangent cone theorem",
    )
}

fn pencil_component_rule() -> Assumption {
    assumption(
        "a pencil lifting to a curve S with chi(S) < 0 pulls H^1(S) back to an irreducible component E of TC_1 V_1(F)",
        "Arapura, Geometry of cohomology support loci for local systems I, J. Algebraic Geom. 6 (1997), positive-dimensional components from admissible maps",
    )
}

fn cup_rule() -> Assumption {
    assumption(
        "when W_1(F) is the sum of two conjugate eigenspaces of the monodromy, a cup b = 0 for a, b in W_1(F) for weight reasons, so W_1(F) lies in R_1(F) and, if R_1(F) = TC_1 V_1(F), in a single linear component E'",
        "Deligne, Theorie de Hodge II, Publ. Math. IHES 40 (1971), compatibility of cup product with weights and the eigenspace decomposition",
    )
}

/// The outcome of the obstruction test, with everything needed to re-derive it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub witness: Witness,
    pub component: Option<TangentConeComponent>,
    pub fiber: FiberMHS,
    /// Conditions: `W_1(F) != 0` with the cup rule applicable, `E cap E' != 0`, `E != E'`.
    pub conditions: [bool; 3],
    pub assumptions: Vec<Assumption>,
    pub rationale: String,
}

impl ObstructionReport {
    /// Check that the verdict follows from the recorded dimensions and that
    /// every assumption carries a citation.
    pub fn audit(&self) -> Result<()> {
        if self.assumptions.is_empty() || self.assumptions.iter().any(|a| a.citation.trim().is_empty()) {
            return Err(Error::Internal("report has an uncited assumption".into()));
        }
        let conditions = match &self.component {
            Some(c) => conditions(&c.dims, &self.fiber),
            None => [false; 3],
        };
        if conditions != self.conditions {
            return Err(Error::Internal("recorded conditions do not match the dimensions".into()));
        }
        let expect = if conditions.iter().all(|&b| b) { Verdict::Not1Formal } else { Verdict::Inconclusive };
        if expect != self.verdict || (self.verdict == Verdict::Not1Formal && !self.witness.holds()) {
            return Err(Error::Internal("verdict does not follow from the witness".into()));
        }
        Ok(())
    }
}

fn conditions(e: &EDims, fm: &FiberMHS) -> [bool; 3] {
    [
        fm.w1f > 0 && fm.cup_rule_applies(),
        e.e10 + e.e01 > 0,
        Witness { w1_h10: fm.w1_h10, e10: e.e10 }.holds(),
    ]
}

pub fn obstruction_test(e: &TangentConeComponent, fm: &FiberMHS) -> Result<ObstructionReport> {
    if e.chi >= 0 {
        return Err(Error::NotGeneralType(e.chi));
    }
    let c = conditions(&e.dims, fm);
    let witness = Witness { w1_h10: fm.w1_h10, e10: e.dims.e10 };
    let verdict = if c.iter().all(|&b| b) { Verdict::Not1Formal } else { Verdict::Inconclusive };
    let rationale = if verdict == Verdict::Not1Formal {
        format!(
            "W_1(F) has dimension {} and would lie in one component E'; E meets it in its weight-one part, \
             but dim(E' cap H^1,0) >= {} > {} = dim E^1,0, so E' != E, contradicting maximality of E",
            fm.w1f, fm.w1_h10, e.dims.e10
        )
    } else if !c[0] {
        if fm.w1f == 0 {
            "W_1(F) = 0; nothing to compare".to_string()
        } else {
            "the nontrivial eigenvalues are not a single conjugate pair; the cup rule does not apply".to_string()
        }
    } else if !c[1] {
        "E has no weight-one part, so E cap E' may be zero".to_string()
    } else {
        format!("{witness}: E' could coincide with E")
    };
    let report = ObstructionReport {
        verdict,
        witness,
        component: Some(e.clone()),
        fiber: fm.clone(),
        conditions: c,
        assumptions: vec![tangent_cone_rule(), pencil_component_rule(), cup_rule()],
        rationale,
    };
    report.audit()?;
    Ok(report)
}

/// All candidate components: every net, every block ordering, keeping per net
/// the ordering whose lifted equation is shortest.
pub fn candidate_components(a: &Arrangement) -> Result<Vec<TangentConeComponent>> {
    let max_k = (a.degree() / 2).max(3);
    let nets = net_search(a, max_k)?;
    let per_net: Vec<Result<Option<TangentConeComponent>>> = nets.par_iter().map(|n| best_ordering(a, n)).collect();
    let mut out = Vec::new();
    for c in per_net {
        out.extend(c?);
    }
    Ok(out)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn best_ordering(a: &Arrangement, net: &NetPartition) -> Result<Option<TangentConeComponent>> {
    let mut best: Option<TangentConeComponent> = None;
    for perm in permutations(net.k()) {
        let blocks: Vec<Block> = perm.iter().map(|&b| net.blocks[b].iter().map(|&i| (i, 1)).collect()).collect();
        let p = match pencil_from_blocks(a, &blocks) {
            Ok(p) => p,
            Err(Error::NotAPencil(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let c = match TangentConeComponent::from_pencil(a, &p) {
            Ok(c) => c,
            Err(Error::PropositionHypothesesNotMet(_) | Error::NotGeneralType(_) | Error::NonIsolatedSingularity) => {
                return Ok(None)
            }
            Err(e) => return Err(e),
        };
        if best.as_ref().is_none_or(|b| c.equation.len() < b.equation.len()) {
            best = Some(c);
        }
    }
    Ok(best)
}

/// Nets, pencils, lifts, spectrum and the obstruction test, end to end.
pub fn formality_report(a: &Arrangement) -> Result<ObstructionReport> {
    let spectrum = milnor_spectrum(a)?;
    formality_report_with(a, &spectrum)
}

/// As [`formality_report`], with a precomputed spectrum.
pub fn formality_report_with(a: &Arrangement, spectrum: &Spectrum) -> Result<ObstructionReport> {
    let fm = fiber_mhs(spectrum)?;
    let candidates = candidate_components(a)?;
    let reports: Vec<ObstructionReport> =
        candidates.iter().map(|e| obstruction_test(e, &fm)).collect::<Result<_>>()?;
    if let Some(r) = reports.iter().find(|r| r.verdict == Verdict::Not1Formal) {
        return Ok(r.clone());
    }
    if let Some(r) = reports.into_iter().next() {
        return Ok(r);
    }
    let report = ObstructionReport {
        verdict: Verdict::Inconclusive,
        witness: Witness { w1_h10: fm.w1_h10, e10: 0 },
        component: None,
        fiber: fm,
        conditions: [false; 3],
        assumptions: vec![tangent_cone_rule(), pencil_component_rule()],
        rationale: "no net yields a certified pencil of general type".into(),
    };
    report.audit()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::catalog::*;
    use std::collections::BTreeMap;

    fn fm(h11f: usize, w1f: usize, d: u32, exps: &[u32]) -> FiberMHS {
        FiberMHS { d, h11f, w1f, w1_h10: w1f / 2, nontrivial_exponents: exps.to_vec() }
    }

    fn component(e11: i64, e10: i64, k: i64) -> TangentConeComponent {
        TangentConeComponent {
            dims: EDims { e11, e10, e01: e10 },
            chi: 1 - (k - 1) * (k - 1),
            blocks: Vec::new(),
            q1: String::new(),
            q2: String::new(),
            equation: String::new(),
        }
    }

    #[test]
    fn fiber_bookkeeping() {
        let s = Spectrum { d: 9, dims: BTreeMap::from([(0, 8), (3, 2), (6, 2)]), b1f: 12, monodromy_order: 9 };
        let f = fiber_mhs(&s).unwrap();
        assert_eq!((f.h11f, f.w1f, f.w1_h10), (8, 4, 2));
        assert!(f.cup_rule_applies());
        let s = Spectrum { d: 3, dims: BTreeMap::from([(0, 2)]), b1f: 2, monodromy_order: 3 };
        assert_eq!(fiber_mhs(&s).unwrap().w1f, 0);
        let s = Spectrum { d: 2, dims: BTreeMap::from([(0, 1), (1, 1)]), b1f: 2, monodromy_order: 2 };
        assert!(matches!(fiber_mhs(&s), Err(Error::InconsistentSpectrum(_))));
    }

    #[test]
    fn obstruction_cases() {
        let r = obstruction_test(&component(2, 1, 3), &fm(8, 4, 9, &[3, 6])).unwrap();
        assert_eq!(r.verdict, Verdict::Not1Formal);
        assert_eq!(r.witness.to_string(), "2 > 1");
        let r = obstruction_test(&component(2, 1, 3), &fm(2, 0, 3, &[])).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let r = obstruction_test(&component(3, 3, 4), &fm(8, 6, 9, &[3, 6])).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(!r.conditions[2]);
        let r = obstruction_test(&component(2, 1, 3), &fm(8, 8, 9, &[1, 3, 6, 8])).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(obstruction_test(&component(1, 0, 2), &fm(8, 4, 9, &[3, 6])), Err(Error::NotGeneralType(0)));
    }

    #[test]
    fn audit_rejects_tampering() {
        let mut r = obstruction_test(&component(2, 1, 3), &fm(8, 4, 9, &[3, 6])).unwrap();
        r.assumptions.clear();
        assert!(r.audit().is_err());
        let mut r = obstruction_test(&component(3, 3, 4), &fm(8, 6, 9, &[3, 6])).unwrap();
        r.verdict = Verdict::Not1Formal;
        assert!(r.audit().is_err());
    }

    #[test]
    fn permutations_are_sorted() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn ceva_report() {
        let r = formality_report(&ceva3()).unwrap();
        assert_eq!(r.verdict, Verdict::Not1Formal);
        assert_eq!(r.witness.to_string(), "2 > 1");
        assert_eq!(r.fiber.w1f, 4);
        let c = r.component.unwrap();
        assert_eq!(c.equation, "u^2*v + u*v^2 = 1");
        assert_eq!((c.dims.e11, c.dims.e10, c.dims.e01), (2, 1, 1));
        assert_eq!(c.chi, -3);
    }

    #[test]
    fn inconclusive_reports() {
        for a in [triangle(), generic(5).unwrap(), a3()] {
            let r = formality_report(&a).unwrap();
            assert_eq!(r.verdict, Verdict::Inconclusive, "{:?}", a.label());
            r.audit().unwrap();
        }
    }
}

//! Degree-two Orlik–Solomon algebra of the cone and the first resonance variety.

use rayon::prelude::*;

use crate::arrangement::{Arrangement, IntersectionLattice};
use crate::cyclo::{CycMatrix, CycNumber};
use crate::error::{Error, Result};

/// A weight vector `a` with `sum a_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(Vec<CycNumber>);

impl WeightVector {
    pub fn new(a: Vec<CycNumber>) -> Result<Self> {
        let s = a.iter().fold(CycNumber::zero(1), |acc, x| &acc + x);
        if !s.is_zero() {
            return Err(Error::NotInTorusLie);
        }
        Ok(WeightVector(a))
    }

    pub fn from_ints(a: &[i64]) -> Result<Self> {
        Self::new(a.iter().map(|&v| CycNumber::from_int(v)).collect())
    }

    pub fn as_slice(&self) -> &[CycNumber] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Degrees one and two of the Orlik–Solomon algebra of the cone arrangement.
///
/// `A^2` has the broken-circuit-free basis `e_m e_j`, one for each point `p`
/// and each line `j` through `p` other than the smallest one `m`.
#[derive(Clone, Debug)]
pub struct OSAlgebra {
    d: usize,
    /// `(point, j)` for each basis element `e_min(p) e_j`.
    basis2: Vec<(usize, usize)>,
    /// `(point, smallest line)` for each unordered pair of lines.
    pair_point: Vec<Vec<usize>>,
    point_min: Vec<usize>,
    /// Row of `e_m e_j` indexed by `(point, j)`.
    row_of: Vec<Vec<Option<usize>>>,
    euler: i64,
}

impl OSAlgebra {
    pub fn new(a: &Arrangement, lattice: &IntersectionLattice) -> Self {
        let d = a.degree();
        let mut basis2 = Vec::new();
        let mut row_of = vec![vec![None; d]; lattice.points.len()];
        let mut point_min = Vec::with_capacity(lattice.points.len());
        for (k, p) in lattice.points.iter().enumerate() {
            point_min.push(p.incident[0]);
            for &j in &p.incident[1..] {
                row_of[k][j] = Some(basis2.len());
                basis2.push((k, j));
            }
        }
        OSAlgebra {
            d,
            basis2,
            pair_point: lattice.pair_table(),
            point_min,
            row_of,
            euler: crate::arrangement::euler_complement(a, lattice),
        }
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// `(point index, line index)` labels of the `A^2` basis.
    pub fn basis2(&self) -> &[(usize, usize)] {
        &self.basis2
    }

    /// Dimension of `A^2` of the cone.
    pub fn dim_a2(&self) -> usize {
        self.basis2.len()
    }

    /// First Betti number of the projective complement.
    pub fn b1(&self) -> usize {
        self.d - 1
    }

    /// Second Betti number of the projective complement.
    pub fn b2(&self) -> usize {
        self.basis2.len() + 1 - self.d
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler
    }

    /// `e_i e_j` in the `A^2` basis, as `(row, sign)` pairs.
    pub fn wedge(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        if i == j {
            return Vec::new();
        }
        let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let p = self.pair_point[lo][hi];
        let m = self.point_min[p];
        let r = |k: usize| self.row_of[p][k].expect("line through point");
        if lo == m {
            vec![(r(hi), sign)]
        } else {
            // e_lo e_hi = e_m e_hi - e_m e_lo
            vec![(r(hi), sign), (r(lo), -sign)]
        }
    }

    /// Matrix of `x -> a ^ x` on `A^1`, with an extra all-ones row
    /// restricting `x` to the projective part `sum x_i = 0`.
    fn wedge_matrix(&self, a: &[CycNumber]) -> CycMatrix {
        let rows = self.basis2.len() + 1;
        let conductor = a.iter().fold(1u32, |acc, x| num_integer::Integer::lcm(&acc, &x.conductor()));
        let mut m: Vec<Vec<CycNumber>> = vec![vec![CycNumber::zero(conductor); self.d]; rows];
        for i in 0..self.d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.d {
                for (r, s) in self.wedge(i, j) {
                    let v = if s > 0 { &m[r][j] + &a[i] } else { &m[r][j] - &a[i] };
                    m[r][j] = v;
                }
            }
        }
        m[rows - 1] = vec![CycNumber::one(conductor); self.d];
        CycMatrix::from_rows(m, self.d)
    }

    /// Dimension of `H^1(A, a^)` for the projective complement.
    pub fn resonance_dim(&self, a: &WeightVector) -> Result<usize> {
        if a.len() != self.d {
            return Err(Error::InvalidArgument(format!(
                "weight vector has {} entries, expected {}",
                a.len(),
                self.d
            )));
        }
        let nonzero = a.as_slice().iter().any(|x| !x.is_zero());
        let rank = self.wedge_matrix(a.as_slice()).rank();
        Ok(self.d - rank - usize::from(nonzero))
    }
}

pub fn build_os(a: &Arrangement) -> OSAlgebra {
    OSAlgebra::new(a, &a.lattice())
}

pub fn resonance_dim(os: &OSAlgebra, a: &WeightVector) -> Result<usize> {
    os.resonance_dim(a)
}

/// A partition of a sub-arrangement into `k >= 3` blocks of equal size `n >= 2`
/// such that any point where two blocks meet carries exactly one line of each.
/// Blocks are sorted and ordered by their smallest line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NetPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl NetPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort();
        NetPartition { blocks }
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        s.sort_unstable();
        s
    }

    pub fn covers(&self, d: usize) -> bool {
        self.support().len() == d
    }

    /// Check the net axiom against a lattice.
    pub fn is_net(&self, lattice: &IntersectionLattice) -> bool {
        let mut label = vec![usize::MAX; lattice.degree];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                if i >= lattice.degree || label[i] != usize::MAX {
                    return false;
                }
                label[i] = b;
            }
        }
        let k = self.k();
        if k < 3 || self.blocks.iter().any(|b| b.len() < 2) {
            return false;
        }
        lattice.points.iter().all(|p| point_ok(&p.incident, &label, k, true))
    }

    /// Weight vectors spanning the associated global component: constant on
    /// blocks, with block values summing to zero.
    pub fn weight_basis(&self, d: usize) -> Vec<WeightVector> {
        (1..self.k())
            .map(|b| {
                let mut a = vec![CycNumber::zero(1); d];
                for &i in &self.blocks[0] {
                    a[i] = CycNumber::one(1);
                }
                for &i in &self.blocks[b] {
                    a[i] = CycNumber::from_int(-1);
                }
                WeightVector(a)
            })
            .collect()
    }
}

/// Net condition at one point, given block labels (`usize::MAX` = unassigned
/// or excluded). With `complete`, all labels are final.
fn point_ok(incident: &[usize], label: &[usize], k: usize, complete: bool) -> bool {
    let mut seen = [false; 64];
    let mut blocks = 0;
    let mut repeated = false;
    for &i in incident {
        let b = label[i];
        if b == usize::MAX {
            continue;
        }
        if seen[b] {
            repeated = true;
        } else {
            seen[b] = true;
            blocks += 1;
        }
    }
    if blocks >= 2 && repeated {
        return false;
    }
    if complete && blocks >= 2 && blocks != k {
        return false;
    }
    true
}

struct Search<'a> {
    lattice: &'a IntersectionLattice,
    /// Points through each line.
    points_on: Vec<Vec<usize>>,
    /// Largest line index through each point.
    last_line: Vec<usize>,
    k: usize,
    label: Vec<usize>,
    sizes: Vec<usize>,
    out: Vec<NetPartition>,
}

impl Search<'_> {
    fn run(&mut self, i: usize, used: usize) {
        let d = self.label.len();
        if i == d {
            if used == self.k && self.sizes.iter().all(|&s| s == self.sizes[0]) && self.sizes[0] >= 2 {
                let mut blocks = vec![Vec::new(); self.k];
                for (l, &b) in self.label.iter().enumerate() {
                    if b != usize::MAX {
                        blocks[b].push(l);
                    }
                }
                self.out.push(NetPartition::new(blocks));
            }
            return;
        }
        // Remaining lines must be able to open the missing blocks.
        if self.k - used > d - i {
            return;
        }
        let choices: Vec<usize> = std::iter::once(usize::MAX).chain(0..(used + 1).min(self.k)).collect();
        for b in choices {
            self.label[i] = b;
            if b != usize::MAX {
                self.sizes[b] += 1;
            }
            if self.consistent(i) {
                let next_used = if b == used { used + 1 } else { used };
                self.run(i + 1, next_used);
            }
            if b != usize::MAX {
                self.sizes[b] -= 1;
            }
            self.label[i] = usize::MAX;
        }
    }

    fn consistent(&self, i: usize) -> bool {
        self.points_on[i].iter().all(|&p| {
            let complete = self.last_line[p] == i;
            point_ok(&self.lattice.points[p].incident, &self.label, self.k, complete)
        })
    }
}

/// All nets on sub-arrangements with `3 <= k <= max_k` blocks, ordered by
/// block content.
pub fn net_search(a: &Arrangement, max_k: usize) -> Result<Vec<NetPartition>> {
    if max_k < 3 {
        return Err(Error::InvalidArgument("net search needs max_k >= 3".into()));
    }
    let lattice = a.lattice();
    let d = a.degree();
    let top = lattice.max_multiplicity().min(max_k).min(63);
    let points_on: Vec<Vec<usize>> = (0..d).map(|i| lattice.points_on(i).collect()).collect();
    let last_line: Vec<usize> = lattice.points.iter().map(|p| *p.incident.last().unwrap()).collect();
    let mut nets: Vec<NetPartition> = (3..=top)
        .into_par_iter()
        .flat_map_iter(|k| {
            let mut s = Search {
                lattice: &lattice,
                points_on: points_on.clone(),
                last_line: last_line.clone(),
                k,
                label: vec![usize::MAX; d],
                sizes: vec![0; k],
                out: Vec::new(),
            };
            s.run(0, 0);
            s.out
        })
        .collect();
    nets.sort();
    nets.dedup();
    Ok(nets)
}

/// Kind of a resonance component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Local { point: usize },
    Global(NetPartition),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceComponent {
    pub kind: ComponentKind,
    pub support: Vec<usize>,
    pub dimension: usize,
    pub basis: Vec<WeightVector>,
}

/// One component per point of multiplicity at least three.
pub fn local_components(a: &Arrangement) -> Vec<ResonanceComponent> {
    let d = a.degree();
    a.lattice()
        .points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.multiplicity() >= 3)
        .map(|(k, p)| {
            let first = p.incident[0];
            let basis = p.incident[1..]
                .iter()
                .map(|&j| {
                    let mut v = vec![CycNumber::zero(1); d];
                    v[first] = CycNumber::one(1);
                    v[j] = CycNumber::from_int(-1);
                    WeightVector(v)
                })
                .collect();
            ResonanceComponent {
                kind: ComponentKind::Local { point: k },
                support: p.incident.clone(),
                dimension: p.multiplicity() - 1,
                basis,
            }
        })
        .collect()
}

pub fn global_component(net: &NetPartition, d: usize) -> ResonanceComponent {
    ResonanceComponent {
        kind: ComponentKind::Global(net.clone()),
        support: net.support(),
        dimension: net.k() - 1,
        basis: net.weight_basis(d),
    }
}

/// Local components by point index, then net components by block content.
pub fn resonance_components(a: &Arrangement) -> Result<Vec<ResonanceComponent>> {
    let mut out = local_components(a);
    let max_k = a.lattice().max_multiplicity().max(3);
    out.extend(net_search(a, max_k)?.iter().map(|n| global_component(n, a.degree())));
    Ok(out)
}

/// Whether every basis vector of every component lies in the resonance variety.
pub fn verify_components(os: &OSAlgebra, comps: &[ResonanceComponent]) -> Result<bool> {
    let checks: Vec<Result<bool>> = comps
        .par_iter()
        .flat_map_iter(|c| c.basis.iter())
        .map(|v| Ok(os.resonance_dim(v)? >= 1))
        .collect();
    checks.into_iter().try_fold(true, |acc, r| Ok(acc && r?))
}

//! The cyclic `Z/d` covering `F -> M` and the fiber-connectivity counts built on it.

use num_integer::Integer;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::pencil::{base_locus, lift_pencil, Pencil};

/// An integer combination of the meridians `gamma_1, ..., gamma_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopClass {
    pub coefficients: Vec<i64>,
}

impl LoopClass {
    /// The meridian around line `i`.
    pub fn meridian(d: usize, i: usize) -> Self {
        let mut coefficients = vec![0; d];
        coefficients[i] = 1;
        LoopClass { coefficients }
    }

    pub fn add(&self, other: &Self) -> Self {
        LoopClass {
            coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect(),
        }
    }
}

/// The monodromy character of the covering: every meridian maps to `1 mod d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeckCharacter {
    pub d: u64,
}

impl DeckCharacter {
    pub fn of(a: &Arrangement) -> Self {
        DeckCharacter { d: a.degree() as u64 }
    }

    pub fn value(&self, l: &LoopClass) -> u64 {
        l.coefficients.iter().sum::<i64>().rem_euclid(self.d as i64) as u64
    }
}

/// The loop around a small sphere at lattice point `point`.
pub fn boundary_loop(a: &Arrangement, point: usize) -> Result<LoopClass> {
    let lattice = a.lattice();
    let p = lattice
        .points
        .get(point)
        .ok_or_else(|| Error::InvalidArgument(format!("no point {}", point + 1)))?;
    let mut coefficients = vec![0; a.degree()];
    for &i in &p.incident {
        coefficients[i] = 1;
    }
    Ok(LoopClass { coefficients })
}

/// Orbits of the subgroup of `Z/d` generated by `r_values`, acting by translation.
pub fn orbit_count(d: u64, r_values: &[u64]) -> u64 {
    r_values.iter().fold(d, |g, &r| g.gcd(&(r % d)))
}

/// The number of connected components of a generic fiber, with the bounds
/// and character values that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityVerdict {
    pub components: u64,
    pub r_values: Vec<u64>,
    pub upper_bound: Option<u64>,
    pub lower_bound: Option<u64>,
    pub rationale: String,
}

/// Connectivity of the generic fiber of the lifted pencil map.
pub fn global_fiber_connectivity(a: &Arrangement, p: &Pencil) -> Result<ConnectivityVerdict> {
    lift_pencil(a, p)?;
    let report = base_locus(a, p)?;
    let k = p.k() as u64;
    let lattice = a.lattice();
    let base = report
        .points
        .iter()
        .find(|b| b.multiplicities.iter().all(|&m| m == 1))
        .expect("certified lift has a simple base point");
    let idx = lattice
        .points
        .iter()
        .position(|q| q.point == base.point)
        .expect("base point is a lattice point");
    let chi = DeckCharacter::of(a);
    let r = chi.value(&boundary_loop(a, idx)?);
    let upper = orbit_count(chi.d, &[r]);
    let lower = k;
    if upper != lower {
        return Err(Error::Internal(format!("fiber bounds disagree: at most {upper}, at least {lower}")));
    }
    Ok(ConnectivityVerdict {
        components: 1,
        r_values: vec![r],
        upper_bound: Some(upper),
        lower_bound: Some(lower),
        rationale: format!(
            "R(beta_p) = {r} at base point {} gives at most {upper} components over a fiber; \
             the {k} sheets of the lifted curve give at least {lower}",
            idx + 1
        ),
    })
}

/// Connectivity of the generic fiber of the local map at a point of multiplicity at least 3.
pub fn local_fiber_connectivity(a: &Arrangement, point: usize) -> Result<ConnectivityVerdict> {
    let lattice = a.lattice();
    let p = lattice
        .points
        .get(point)
        .ok_or_else(|| Error::InvalidArgument(format!("no point {}", point + 1)))?;
    if p.multiplicity() < 3 {
        return Err(Error::NotAdmissible(p.multiplicity()));
    }
    let d = a.degree() as u64;
    let chi = DeckCharacter { d };
    match (0..a.degree()).find(|i| p.incident.binary_search(i).is_err()) {
        Some(j) => {
            let r = chi.value(&LoopClass::meridian(a.degree(), j));
            let orbits = orbit_count(d, &[r]);
            Ok(ConnectivityVerdict {
                components: orbits,
                r_values: vec![r],
                upper_bound: Some(orbits),
                lower_bound: Some(1),
                rationale: format!("line {} avoids the point and its meridian has R = {r}", j + 1),
            })
        }
        None => Ok(ConnectivityVerdict {
            components: d,
            r_values: Vec::new(),
            upper_bound: None,
            lower_bound: None,
            rationale: format!("all {d} lines pass through the point; the fiber is {d} parallel lines"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::catalog::*;
    use crate::pencil::{pencil_from_blocks, Block};

    fn blocks(spec: &[&[usize]]) -> Vec<Block> {
        spec.iter().map(|b| b.iter().map(|&i| (i, 1)).collect()).collect()
    }

    #[test]
    fn loop_values() {
        let a = ceva3();
        let chi = DeckCharacter::of(&a);
        for i in 0..9 {
            assert_eq!(chi.value(&LoopClass::meridian(9, i)), 1);
        }
        for (k, p) in a.lattice().points.iter().enumerate() {
            assert_eq!(chi.value(&boundary_loop(&a, k).unwrap()), p.multiplicity() as u64 % 9);
        }
        let t = triangle();
        assert_eq!(DeckCharacter::of(&t).value(&boundary_loop(&t, 0).unwrap()), 2);
    }

    #[test]
    fn orbits() {
        assert_eq!(orbit_count(9, &[3]), 3);
        assert_eq!(orbit_count(9, &[1]), 1);
        assert_eq!(orbit_count(9, &[]), 9);
        for d in 1..=100u64 {
            for r in 0..d {
                let order = (0..d).map(|t| t * r % d).collect::<std::collections::BTreeSet<_>>().len() as u64;
                assert_eq!(orbit_count(d, &[r]) * order, d);
            }
        }
    }

    #[test]
    fn global_connectivity() {
        let a = ceva3();
        let p = pencil_from_blocks(&a, &blocks(&[&[0, 1, 2], &[6, 7, 8], &[3, 4, 5]])).unwrap();
        let v = global_fiber_connectivity(&a, &p).unwrap();
        assert_eq!(v.components, 1);
        assert_eq!((v.upper_bound, v.lower_bound), (Some(3), Some(3)));
        assert_eq!(v.r_values, vec![3]);

        let c = central(4).unwrap();
        let p = pencil_from_blocks(&c, &blocks(&[&[0], &[1], &[2], &[3]])).unwrap();
        assert_eq!(global_fiber_connectivity(&c, &p).unwrap().components, 1);

        let b = b3();
        let bs: Vec<Block> = vec![
            vec![(0, 2), (7, 1), (8, 1)],
            vec![(1, 2), (5, 1), (6, 1)],
            vec![(2, 2), (3, 1), (4, 1)],
        ];
        let p = pencil_from_blocks(&b, &bs).unwrap();
        assert!(matches!(global_fiber_connectivity(&b, &p), Err(Error::PropositionHypothesesNotMet(_))));
    }

    #[test]
    fn local_connectivity() {
        let a = ceva3();
        for k in 0..12 {
            assert_eq!(local_fiber_connectivity(&a, k).unwrap().components, 1);
        }
        assert_eq!(local_fiber_connectivity(&central(4).unwrap(), 0).unwrap().components, 4);
        assert_eq!(local_fiber_connectivity(&triangle(), 0), Err(Error::NotAdmissible(2)));
    }
}

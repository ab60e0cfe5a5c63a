use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::decone::{AffineArrangement, AffineLine};
use super::word::{BraidWord, FreeWord};
use crate::cyclo::{cmp_real, positive_lower_bound, real_bounds, sign_real, CycNumber};
use crate::error::{Error, Result};

/// Knobs for the deterministic choices made while tracking strands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidOptions {
    /// Skip this many projection directions.
    pub direction_offset: usize,
    /// Move the basepoint this much further left and down.
    pub basepoint_shift: i64,
    /// How often the square around a critical value may be halved.
    pub max_halvings: u32,
    /// How many projection directions to try.
    pub max_directions: usize,
}

impl Default for BraidOptions {
    fn default() -> Self {
        BraidOptions { direction_offset: 0, basepoint_shift: 0, max_halvings: 24, max_directions: 24 }
    }
}

/// The braid of one critical value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyEvent {
    pub x: CycNumber,
    pub multiplicity: usize,
    /// Original indices of the lines through the point.
    pub lines: Vec<usize>,
    /// First position (0-based) of the lines through the point at the end of the path.
    pub block_start: usize,
    /// Path from the basepoint to the corner of the square.
    pub conjugator: BraidWord,
    /// Once around the square, counter-clockwise.
    pub local: BraidWord,
    /// `conjugator * local * conjugator^-1`.
    pub braid: BraidWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyData {
    pub conductor: u32,
    pub degree: usize,
    pub infinity: usize,
    /// Euler characteristic of the projective complement.
    pub euler: i64,
    pub basepoint: CycNumber,
    pub direction: CycNumber,
    /// Original line indices in position order at the basepoint.
    pub strand_order: Vec<usize>,
    pub events: Vec<MonodromyEvent>,
}

impl MonodromyData {
    pub fn strands(&self) -> usize {
        self.strand_order.len()
    }

    pub fn total_exponent_sum(&self) -> i64 {
        self.events.iter().map(|e| e.braid.exponent_sum()).sum()
    }
}

/// Projection directions `1, 1 + i/7, 1 + i/11, 1 + i/13, ...`.
pub(crate) fn directions(conductor: u32, count: usize) -> Vec<CycNumber> {
    let i = CycNumber::zeta_pow(4, 1).coerce(conductor);
    let mut out = vec![CycNumber::one(conductor)];
    let mut p = 7u64;
    while out.len() < count {
        if (2..p).take_while(|f| f * f <= p).all(|f| !p.is_multiple_of(f)) {
            let w = &CycNumber::one(conductor) + &i.scale(&BigRational::new(BigInt::one(), BigInt::from(p)));
            out.push(w);
        }
        p += 1;
    }
    out
}

fn gaussian(re: &CycNumber, im: &BigRational, conductor: u32) -> CycNumber {
    let i = CycNumber::zeta_pow(4, 1).coerce(conductor);
    re + &i.scale(im)
}

fn rat(q: &BigRational, conductor: u32) -> CycNumber {
    CycNumber::from_rational_in(q.clone(), conductor)
}

/// Outcome of tracking along a segment when the projection is degenerate.
struct Degenerate;

struct Tracker<'a> {
    lines: &'a [AffineLine],
    wbar: CycNumber,
}

impl Tracker<'_> {
    /// Projected coordinates `(r, s)` of strand `i` at `x`.
    fn project(&self, i: usize, x: &CycNumber) -> (CycNumber, CycNumber) {
        let y = &(&self.lines[i].slope * x) + &self.lines[i].intercept;
        let w = &self.wbar * &y;
        (w.re(), w.im())
    }

    /// Strands sorted by `r` at `x`.
    fn order_at(&self, x: &CycNumber) -> Result<std::result::Result<Vec<usize>, Degenerate>> {
        let r: Vec<CycNumber> = (0..self.lines.len()).map(|i| self.project(i, x).0).collect();
        let mut order: Vec<usize> = (0..self.lines.len()).collect();
        let mut tie = false;
        let mut err = None;
        order.sort_by(|&a, &b| match cmp_real(&r[a], &r[b]) {
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
        Ok(if tie { Err(Degenerate) } else { Ok(order) })
    }

    /// Move along the segment `p -> q`, updating the strand order and appending
    /// one Artin letter per crossing of the projections.
    fn segment(
        &self,
        order: &mut [usize],
        p: &CycNumber,
        q: &CycNumber,
        letters: &mut Vec<i32>,
    ) -> Result<std::result::Result<(), Degenerate>> {
        let n = self.lines.len();
        let dx = q - p;
        let parts: Vec<[CycNumber; 4]> = (0..n)
            .map(|i| {
                let (ra, sa) = self.project(i, p);
                let db = &self.wbar * &(&self.lines[i].slope * &dx);
                [ra, sa, db.re(), db.im()]
            })
            .collect();
        let mut crossings: Vec<(CycNumber, usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let den = &parts[i][2] - &parts[j][2];
                let num = &parts[j][0] - &parts[i][0];
                if den.is_zero() {
                    if num.is_zero() {
                        return Ok(Err(Degenerate));
                    }
                    continue;
                }
                let t = num.div(&den)?;
                let lo = sign_real(&t)?;
                let hi = sign_real(&(&CycNumber::one(t.conductor()) - &t))?;
                if lo == 0 || hi == 0 {
                    return Ok(Err(Degenerate));
                }
                if lo > 0 && hi > 0 {
                    crossings.push((t, i, j));
                }
            }
        }
        let mut err = None;
        crossings.sort_by(|a, b| match cmp_real(&a.0, &b.0) {
            Ok(o) => o,
            Err(e) => {
                err = Some(e);
                Ordering::Equal
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        // Crossings at the same instant must involve disjoint strands; they
        // then sit at disjoint adjacent positions and commute.
        let mut start = 0;
        while start < crossings.len() {
            let mut end = start + 1;
            while end < crossings.len() && cmp_real(&crossings[start].0, &crossings[end].0)? == Ordering::Equal {
                end += 1;
            }
            let group = &crossings[start..end];
            let mut touched: Vec<usize> = group.iter().flat_map(|c| [c.1, c.2]).collect();
            touched.sort_unstable();
            if touched.windows(2).any(|w| w[0] == w[1]) {
                return Ok(Err(Degenerate));
            }
            for (t, i, j) in group {
                let pi = order.iter().position(|s| s == i).expect("strand present");
                let pj = order.iter().position(|s| s == j).expect("strand present");
                if pi.abs_diff(pj) != 1 {
                    return Ok(Err(Degenerate));
                }
                let k = pi.min(pj);
                let (left, right) = (order[k], order[k + 1]);
                let s_left = &parts[left][1] + &(t * &parts[left][3]);
                let s_right = &parts[right][1] + &(t * &parts[right][3]);
                let letter = (k + 1) as i32;
                match cmp_real(&s_left, &s_right)? {
                    Ordering::Less => letters.push(letter),
                    Ordering::Greater => letters.push(-letter),
                    Ordering::Equal => return Ok(Err(Degenerate)),
                }
                order.swap(k, k + 1);
            }
            start = end;
        }
        Ok(Ok(()))
    }
}

/// The descending product `y_b ... y_a` of a block of generators.
fn block_product(a: usize, b: usize) -> FreeWord {
    (a..=b).rev().fold(FreeWord::identity(), |acc, k| acc.mul(&FreeWord::gen(k)))
}

/// Whether the braid acts as conjugation by the descending product on the
/// block `a..=b` and trivially on the other generators.
pub(crate) fn is_block_twist(local: &BraidWord, a: usize, b: usize) -> bool {
    let img = local.action();
    let beta = block_product(a, b);
    img.iter().enumerate().all(|(k, w)| {
        let g = FreeWord::gen(k);
        if (a..=b).contains(&k) {
            *w == beta.conjugate(&g)
        } else {
            *w == g
        }
    })
}

struct Frame<'a> {
    tracker: Tracker<'a>,
    x0: CycNumber,
    base_order: Vec<usize>,
    y0: BigRational,
    delta0: BigRational,
    conductor: u32,
    max_halvings: u32,
}

struct Corner {
    p1: CycNumber,
    order: Vec<usize>,
    letters: Vec<i32>,
}

impl Frame<'_> {
    fn event(
        &self,
        x: &CycNumber,
        re_x: &CycNumber,
        lines: &[usize],
    ) -> Result<Option<MonodromyEvent>> {
        let k = self.conductor;
        let mut corner = Corner {
            p1: gaussian(re_x, &self.y0, k),
            order: self.base_order.clone(),
            letters: Vec::new(),
        };
        if self.tracker.segment(&mut corner.order, &self.x0, &corner.p1, &mut corner.letters)?.is_err() {
            return Ok(None);
        }
        let strands: Vec<usize> = lines
            .iter()
            .map(|l| self.tracker.lines.iter().position(|a| a.line == *l).expect("affine line"))
            .collect();
        let mut delta = self.delta0.clone();
        for _ in 0..=self.max_halvings {
            if let Some(e) = self.try_square(x, &corner, &strands, &delta)? {
                return Ok(Some(MonodromyEvent { lines: lines.to_vec(), ..e }));
            }
            delta /= BigRational::from_integer(2.into());
        }
        Ok(None)
    }

    fn try_square(
        &self,
        x: &CycNumber,
        corner: &Corner,
        strands: &[usize],
        delta: &BigRational,
    ) -> Result<Option<MonodromyEvent>> {
        let k = self.conductor;
        let n = self.tracker.lines.len();
        let i = CycNumber::zeta_pow(4, 1).coerce(k);
        let d = rat(delta, k);
        let id = i.scale(delta);
        let p2 = x - &id;
        let mut order = corner.order.clone();
        let mut out = corner.letters.clone();
        if self.tracker.segment(&mut order, &corner.p1, &p2, &mut out)?.is_err() {
            return Ok(None);
        }
        let mut pos: Vec<usize> = strands
            .iter()
            .map(|s| order.iter().position(|o| o == s).expect("strand present"))
            .collect();
        pos.sort_unstable();
        let a = pos[0];
        let b = *pos.last().unwrap();
        if b - a + 1 != pos.len() {
            return Ok(None);
        }
        let corners = [
            &(x + &d) - &id,
            &(x + &d) + &id,
            &(x - &d) + &id,
            &(x - &d) - &id,
            p2.clone(),
        ];
        let mut sq_order = order.clone();
        let mut sq = Vec::new();
        let mut prev = p2.clone();
        for c in &corners {
            if self.tracker.segment(&mut sq_order, &prev, c, &mut sq)?.is_err() {
                return Ok(None);
            }
            prev = c.clone();
        }
        let local = BraidWord::new(n, sq);
        if sq_order != order || !is_block_twist(&local, a, b) {
            return Ok(None);
        }
        let conjugator = BraidWord::new(n, out);
        let braid = conjugator.concat(&local).concat(&conjugator.inverse());
        Ok(Some(MonodromyEvent {
            x: x.clone(),
            multiplicity: strands.len(),
            lines: Vec::new(),
            block_start: a,
            conjugator,
            local,
            braid,
        }))
    }
}

fn floor(q: &BigRational) -> BigRational {
    BigRational::from_integer(q.floor().to_integer())
}

/// Braid monodromy with default options.
pub fn braid_monodromy(aa: &AffineArrangement) -> Result<MonodromyData> {
    braid_monodromy_with(aa, &BraidOptions::default())
}

pub fn braid_monodromy_with(aa: &AffineArrangement, opts: &BraidOptions) -> Result<MonodromyData> {
    let k = aa.conductor;
    let shift = BigRational::from_integer(BigInt::from(opts.basepoint_shift));
    let re_x: Vec<CycNumber> = aa.points.iter().map(|p| p.x.re()).collect();
    let im_x: Vec<CycNumber> = aa.points.iter().map(|p| p.x.im()).collect();
    let lower = |v: &CycNumber| -> Result<BigRational> { Ok(real_bounds(v, 32)?.0) };
    let mut min_re = BigRational::zero();
    let mut min_im = BigRational::zero();
    for (r, m) in re_x.iter().zip(&im_x) {
        min_re = min_re.min(lower(r)?);
        min_im = min_im.min(lower(m)?);
    }
    let x0_re = floor(&min_re) - BigRational::one() - &shift;
    let y0 = floor(&min_im) - BigRational::one() - &shift;
    let mut delta0 = BigRational::new(BigInt::one(), BigInt::from(2));
    for w in re_x.windows(2) {
        let gap = positive_lower_bound(&(&w[1] - &w[0]))?;
        delta0 = delta0.min(gap / BigRational::from_integer(4.into()));
    }
    let x0 = gaussian(&rat(&x0_re, k), &y0, k);
    let dirs = directions(k, opts.direction_offset + opts.max_directions);
    for omega in dirs.into_iter().skip(opts.direction_offset) {
        let tracker = Tracker { lines: &aa.lines, wbar: omega.conj() };
        let base_order = match tracker.order_at(&x0)? {
            Ok(o) => o,
            Err(Degenerate) => continue,
        };
        let frame = Frame {
            tracker,
            x0: x0.clone(),
            base_order,
            y0: y0.clone(),
            delta0: delta0.clone(),
            conductor: k,
            max_halvings: opts.max_halvings,
        };
        let events: Vec<Result<Option<MonodromyEvent>>> = aa
            .points
            .par_iter()
            .zip(re_x.par_iter())
            .map(|(p, r)| frame.event(&p.x, r, &p.lines))
            .collect();
        let mut out = Vec::with_capacity(events.len());
        let mut ok = true;
        for e in events {
            match e? {
                Some(ev) => out.push(ev),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let strand_order = frame.base_order.iter().map(|&s| aa.lines[s].line).collect();
        return Ok(MonodromyData {
            conductor: k,
            degree: aa.degree,
            infinity: aa.infinity,
            euler: aa.euler,
            basepoint: x0,
            direction: omega,
            strand_order,
            events: out,
        });
    }
    Err(Error::GenericityFailure("no generic projection direction among the candidates".into()))
}

#[cfg(test)]
mod tests {
    use super::super::decone::decone;
    use super::*;
    use crate::arrangement::catalog::*;
    use crate::arrangement::{Arrangement, LinearForm};

    #[test]
    fn node() {
        let md = braid_monodromy(&decone(&triangle(), 2).unwrap()).unwrap();
        assert_eq!(md.events.len(), 1);
        assert_eq!(md.events[0].braid.letters, vec![1, 1]);
    }

    #[test]
    fn three_concurrent_lines() {
        let forms = [(1, 0, 0), (0, 1, 0), (1, -1, 0), (0, 0, 1)]
            .iter()
            .map(|&(a, b, c)| LinearForm::int(a, b, c).unwrap())
            .collect();
        let a = Arrangement::new(forms).unwrap();
        let md = braid_monodromy(&decone(&a, 3).unwrap()).unwrap();
        assert_eq!(md.events.len(), 1);
        let b = &md.events[0].braid;
        assert_eq!(b.exponent_sum(), 6);
        assert!(b.is_pure());
        assert!(is_block_twist(&md.events[0].local, 0, 2));
    }

    #[test]
    fn ceva_events() {
        let md = braid_monodromy(&decone(&ceva3(), 0).unwrap()).unwrap();
        assert_eq!(md.strands(), 8);
        assert_eq!(md.events.len(), 8);
        for e in &md.events {
            assert_eq!(e.multiplicity, 3);
            assert!(e.braid.is_pure());
            assert_eq!(e.braid.exponent_sum(), 6);
        }
        assert_eq!(md.total_exponent_sum(), 48);
    }

    #[test]
    fn deterministic() {
        let aa = decone(&ceva3(), 4).unwrap();
        assert_eq!(braid_monodromy(&aa).unwrap(), braid_monodromy(&aa).unwrap());
    }
}

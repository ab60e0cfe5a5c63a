//! Line arrangements in the complex projective plane and their intersection lattices.
//!
//! Lines are stored in a fixed order. The Rust API indexes them from 0; all
//! external formats (files, JSON, CLI flags) index them from 1.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;

use crate::cyclo::{parse_scalar_at, CycNumber, MultiPoly};
use crate::error::{Error, Result};

pub const XYZ: [&str; 3] = ["x", "y", "z"];

/// A projective point with exact coordinates.
pub type Point = [CycNumber; 3];

/// The linear form `a x + b y + c z`, normalised so its first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: [CycNumber; 3],
}

impl LinearForm {
    pub fn new(coeffs: [CycNumber; 3]) -> Result<Self> {
        let lead = coeffs
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidForm("all coefficients are zero".into()))?;
        let inv = lead.inv()?;
        let [a, b, c] = coeffs.each_ref().map(|x| x * &inv);
        Ok(LinearForm { coeffs: [a, b, c] })
    }

    /// Convenience constructor from integer coefficients.
    pub fn int(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new([a.into(), b.into(), c.into()])
    }

    pub fn coeffs(&self) -> &[CycNumber; 3] {
        &self.coeffs
    }

    pub fn eval(&self, p: &Point) -> CycNumber {
        self.coeffs
            .iter()
            .zip(p)
            .fold(CycNumber::zero(1), |acc, (a, x)| &acc + &(a * x))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }

    /// The intersection point with another (distinct) line, canonicalised.
    pub fn meet(&self, other: &Self) -> Point {
        let [a1, b1, c1] = &self.coeffs;
        let [a2, b2, c2] = &other.coeffs;
        canonical_point([
            &(b1 * c2) - &(c1 * b2),
            &(c1 * a2) - &(a1 * c2),
            &(a1 * b2) - &(b1 * a2),
        ])
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::linear(&XYZ, &self.coeffs)
    }

    fn coerce(&self, m: u32) -> Self {
        LinearForm { coeffs: self.coeffs.each_ref().map(|c| c.coerce(m)) }
    }
}

/// Scale a nonzero projective point so its last nonzero coordinate is 1.
pub fn canonical_point(p: Point) -> Point {
    let last = p
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .expect("projective point must be nonzero")
        .inv()
        .expect("nonzero");
    p.each_ref().map(|x| x * &last)
}

fn point_key(p: &Point, m: u32) -> Vec<Vec<BigRational>> {
    p.iter().map(|c| c.coerce(m).coeffs().to_vec()).collect()
}

/// An ordered list of pairwise distinct lines over `Q(zeta_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    conductor: u32,
    lines: Vec<LinearForm>,
    label: Option<String>,
}

impl Arrangement {
    pub fn new(forms: Vec<LinearForm>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::InvalidArgument("an arrangement needs at least one line".into()));
        }
        let conductor = forms
            .iter()
            .flat_map(|f| f.coeffs.iter())
            .fold(1u32, |acc, c| acc.lcm(&c.conductor()));
        let lines: Vec<LinearForm> = forms.iter().map(|f| f.coerce(conductor)).collect();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if lines[i] == lines[j] {
                    return Err(Error::DuplicateLine(i + 1, j + 1));
                }
            }
        }
        Ok(Arrangement { conductor, lines, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn lines(&self) -> &[LinearForm] {
        &self.lines
    }

    /// Number of lines, the degree of the defining polynomial.
    pub fn degree(&self) -> usize {
        self.lines.len()
    }

    /// The product of all the linear forms.
    pub fn defining_polynomial(&self) -> MultiPoly {
        let polys: Vec<MultiPoly> = self.lines.iter().map(LinearForm::to_poly).collect();
        MultiPoly::product(&XYZ, &polys)
    }

    /// Reorder lines: the new line `i` is the old line `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut forms = Vec::with_capacity(perm.len());
        for &p in perm {
            forms.push(
                self.lines
                    .get(p)
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument(format!("no line {}", p + 1)))?,
            );
        }
        let mut a = Arrangement::new(forms)?;
        a.label = self.label.clone();
        Ok(a)
    }

    pub fn lattice(&self) -> IntersectionLattice {
        intersection_lattice(self)
    }

    pub fn is_central(&self) -> bool {
        is_central(self)
    }

    /// Parse the text format: `conductor N`, then one `a, b, c` line per form.
    pub fn parse(src: &str) -> Result<Self> {
        let mut conductor: Option<u32> = None;
        let mut forms = Vec::new();
        for (lineno, raw) in src.lines().enumerate() {
            let lineno = lineno + 1;
            let text = raw.split('#').next().unwrap_or("");
            if text.trim().is_empty() {
                continue;
            }
            let Some(n) = conductor else {
                let mut words = text.split_whitespace();
                let col = text.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
                if words.next() != Some("conductor") {
                    return Err(Error::parse(lineno, col, "expected `conductor N`"));
                }
                let n: u32 = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::parse(lineno, col, "conductor must be a positive integer"))?;
                if words.next().is_some() {
                    return Err(Error::parse(lineno, col, "trailing input after conductor"));
                }
                conductor = Some(n);
                continue;
            };
            let mut coeffs = Vec::with_capacity(3);
            let mut offset = 0;
            for part in text.split(',') {
                coeffs.push(parse_scalar_at(part, n, lineno, offset + 1)?);
                offset += part.len() + 1;
            }
            if coeffs.len() != 3 {
                return Err(Error::parse(lineno, 1, format!("expected 3 coefficients, found {}", coeffs.len())));
            }
            let [a, b, c]: [CycNumber; 3] = coeffs.try_into().expect("length checked");
            let form = LinearForm::new([a, b, c]).map_err(|e| match e {
                Error::InvalidForm(msg) => Error::InvalidForm(format!("line {lineno}: {msg}")),
                other => other,
            })?;
            forms.push(form);
        }
        if conductor.is_none() {
            return Err(Error::parse(1, 1, "missing `conductor N` header"));
        }
        if forms.is_empty() {
            return Err(Error::InvalidArgument("file declares no lines".into()));
        }
        let n = conductor.unwrap();
        let mut a = Arrangement::new(forms)?;
        if a.conductor != n && n.is_multiple_of(a.conductor) {
            a.lines = a.lines.iter().map(|f| f.coerce(n)).collect();
            a.conductor = n;
        }
        Ok(a)
    }

    /// Serialise in the text format accepted by [`Arrangement::parse`].
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        if let Some(l) = &self.label {
            s.push_str(&format!("# {l}\n"));
        }
        s.push_str(&format!("conductor {}\n", self.conductor));
        for f in &self.lines {
            let lits: Vec<String> = f.coeffs.iter().map(|c| c.to_literal_in(self.conductor)).collect();
            s.push_str(&lits.join(", "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_string())
    }
}

/// A multiple point: its coordinates and the (sorted, 0-based) lines through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub point: Point,
    pub incident: Vec<usize>,
}

impl LatticePoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

/// All intersection points of an arrangement with their incidences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    pub degree: usize,
    pub points: Vec<LatticePoint>,
}

impl IntersectionLattice {
    pub fn count_with_multiplicity(&self, m: usize) -> usize {
        self.points.iter().filter(|p| p.multiplicity() == m).count()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.points.iter().map(LatticePoint::multiplicity).max().unwrap_or(0)
    }

    /// Index of the point where lines `i` and `j` meet.
    pub fn point_of(&self, i: usize, j: usize) -> Option<usize> {
        self.points
            .iter()
            .position(|p| p.incident.binary_search(&i).is_ok() && p.incident.binary_search(&j).is_ok())
    }

    /// Map from unordered line pairs to point indices.
    pub fn pair_table(&self) -> Vec<Vec<usize>> {
        let mut t = vec![vec![usize::MAX; self.degree]; self.degree];
        for (k, p) in self.points.iter().enumerate() {
            for &i in &p.incident {
                for &j in &p.incident {
                    if i != j {
                        t[i][j] = k;
                    }
                }
            }
        }
        t
    }

    /// Points lying on line `i`.
    pub fn points_on(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.points
            .iter()
            .enumerate()
            .filter(move |(_, p)| p.incident.binary_search(&i).is_ok())
            .map(|(k, _)| k)
    }
}

/// Compute every intersection point; points appear in order of their first
/// (lexicographically smallest) pair of lines.
pub fn intersection_lattice(a: &Arrangement) -> IntersectionLattice {
    let d = a.degree();
    let m = a.conductor;
    let mut index: HashMap<Vec<Vec<BigRational>>, usize> = HashMap::new();
    let mut points: Vec<LatticePoint> = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let p = a.lines[i].meet(&a.lines[j]);
            let key = point_key(&p, m);
            let k = *index.entry(key).or_insert_with(|| {
                points.push(LatticePoint { point: p.each_ref().map(|c| c.coerce(m)), incident: Vec::new() });
                points.len() - 1
            });
            let inc = &mut points[k].incident;
            for l in [i, j] {
                if let Err(pos) = inc.binary_search(&l) {
                    inc.insert(pos, l);
                }
            }
        }
    }
    IntersectionLattice { degree: d, points }
}

pub fn is_central(a: &Arrangement) -> bool {
    let d = a.degree();
    d <= 2 || a.lattice().points.iter().any(|p| p.multiplicity() == d)
}

/// Euler characteristic of the projective complement: `3 - 2d + sum_p (m_p - 1)`.
pub fn euler_complement(a: &Arrangement, lattice: &IntersectionLattice) -> i64 {
    let d = a.degree() as i64;
    let s: i64 = lattice.points.iter().map(|p| p.multiplicity() as i64 - 1).sum();
    3 - 2 * d + s
}

/// Built-in arrangements.
pub mod catalog {
    use super::*;

    /// Names accepted by [`builtin`].
    pub const NAMES: &[&str] = &["ceva3", "triangle", "central(k)", "generic(k)", "a3", "b3"];

    fn z3(k: i64) -> CycNumber {
        CycNumber::zeta_pow(3, k)
    }

    /// The nine factors of `(x^3-y^3)(x^3-z^3)(y^3-z^3)`: first the factors
    /// `x - w y`, then `x - w z`, then `y - w z`, for `w = 1, z, z^2`.
    pub fn ceva3() -> Arrangement {
        let one = CycNumber::one(3);
        let zero = CycNumber::zero(3);
        let mut forms = Vec::new();
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            for k in 0..3 {
                let mut c = [zero.clone(), zero.clone(), zero.clone()];
                c[p] = one.clone();
                c[q] = -z3(k);
                forms.push(LinearForm::new(c).expect("nonzero"));
            }
        }
        Arrangement::new(forms).expect("distinct").with_label("ceva3")
    }

    pub fn triangle() -> Arrangement {
        Arrangement::new(vec![
            LinearForm::int(1, 0, 0).unwrap(),
            LinearForm::int(0, 1, 0).unwrap(),
            LinearForm::int(0, 0, 1).unwrap(),
        ])
        .expect("distinct")
        .with_label("triangle")
    }

    /// `k` concurrent lines through `[0:0:1]`: `x, y, x+y, x-y, x+2y, x-2y, ...`.
    pub fn central(k: usize) -> Result<Arrangement> {
        if k == 0 {
            return Err(Error::InvalidArgument("central(k) needs k >= 1".into()));
        }
        let mut forms = vec![LinearForm::int(1, 0, 0)?];
        if k >= 2 {
            forms.push(LinearForm::int(0, 1, 0)?);
        }
        let mut t = 1i64;
        while forms.len() < k {
            forms.push(LinearForm::int(1, t, 0)?);
            if forms.len() < k {
                forms.push(LinearForm::int(1, -t, 0)?);
            }
            t += 1;
        }
        Ok(Arrangement::new(forms)?.with_label(format!("central({k})")))
    }

    /// `k` lines `x + t y + t^2 z` for `t = 0..k`; no three are concurrent.
    pub fn generic(k: usize) -> Result<Arrangement> {
        if k == 0 {
            return Err(Error::InvalidArgument("generic(k) needs k >= 1".into()));
        }
        let forms = (0..k as i64)
            .map(|t| LinearForm::int(1, t, t * t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arrangement::new(forms)?.with_label(format!("generic({k})")))
    }

    /// The braid arrangement `xyz(x-y)(x-z)(y-z)`.
    pub fn a3() -> Arrangement {
        let forms = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)]
            .iter()
            .map(|&(a, b, c)| LinearForm::int(a, b, c).unwrap())
            .collect();
        Arrangement::new(forms).expect("distinct").with_label("a3")
    }

    /// The reflection arrangement `xyz(x^2-y^2)(x^2-z^2)(y^2-z^2)`.
    pub fn b3() -> Arrangement {
        let forms = [
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (1, -1, 0),
            (1, 1, 0),
            (1, 0, -1),
            (1, 0, 1),
            (0, 1, -1),
            (0, 1, 1),
        ]
        .iter()
        .map(|&(a, b, c)| LinearForm::int(a, b, c).unwrap())
        .collect();
        Arrangement::new(forms).expect("distinct").with_label("b3")
    }

    fn parse_arg(name: &str, prefix: &str) -> Option<Result<usize>> {
        let rest = name.strip_prefix(prefix)?;
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
        Some(
            inner
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::UnknownBuiltin(name.to_string())),
        )
    }

    /// Look up a built-in arrangement by name.
    pub fn builtin(name: &str) -> Result<Arrangement> {
        match name {
            "ceva3" => return Ok(ceva3()),
            "triangle" => return Ok(triangle()),
            "a3" => return Ok(a3()),
            "b3" => return Ok(b3()),
            _ => {}
        }
        if let Some(k) = parse_arg(name, "central") {
            return central(k?);
        }
        if let Some(k) = parse_arg(name, "generic") {
            return generic(k?);
        }
        Err(Error::UnknownBuiltin(name.to_string()))
    }

    /// The arrangements exercised by the property suites.
    pub fn test_catalog() -> Vec<Arrangement> {
        let mut v = vec![ceva3(), triangle(), a3(), b3()];
        for k in 1..=5 {
            v.push(central(k).unwrap());
        }
        for k in 1..=6 {
            v.push(generic(k).unwrap());
        }
        v
    }
}

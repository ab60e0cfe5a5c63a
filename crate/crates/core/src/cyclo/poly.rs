use std::collections::BTreeMap;
use std::fmt;

use super::number::CycNumber;

/// Sparse multivariate polynomial with cyclotomic coefficients.
///
/// Terms are keyed by exponent tuples; zero coefficients are never stored,
/// so structural equality is polynomial equality (up to conductor coercion,
/// which [`CycNumber`]'s equality handles).
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, CycNumber>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: CycNumber) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// The variable with index `i`.
    pub fn var(vars: &[&str], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, CycNumber::one(1));
        p
    }

    /// Linear form `sum coeffs[i] * var_i`.
    pub fn linear(vars: &[&str], coeffs: &[CycNumber]) -> Self {
        assert_eq!(vars.len(), coeffs.len());
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycNumber)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&CycNumber> {
        self.terms.get(exps)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: CycNumber) {
        assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&CycNumber::from_int(-1)))
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let one = Self::constant(&self.var_refs(), CycNumber::one(1));
        (0..k).fold(one, |acc, _| acc.mul(self))
    }

    pub fn product<'a>(vars: &[&str], factors: impl IntoIterator<Item = &'a MultiPoly>) -> Self {
        factors
            .into_iter()
            .fold(Self::constant(vars, CycNumber::one(1)), |acc, f| acc.mul(f))
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c * &CycNumber::from_int(e[i] as i64));
        }
        out
    }

    /// Substitute polynomial `subs[i]` for variable `i`. All substitutes
    /// share one variable list, which becomes the result's.
    pub fn compose(&self, subs: &[MultiPoly]) -> Self {
        assert_eq!(subs.len(), self.vars.len());
        let target: Vec<&str> = subs[0].vars.iter().map(String::as_str).collect();
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&subs[i].pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Evaluate at a point.
    pub fn eval(&self, point: &[CycNumber]) -> CycNumber {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = CycNumber::zero(1);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = &t * x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Coefficient vector over the given list of monomials.
    pub fn coeff_vector(&self, monomials: &[Vec<u32>]) -> Vec<CycNumber> {
        monomials
            .iter()
            .map(|m| self.terms.get(m).cloned().unwrap_or_else(|| CycNumber::zero(1)))
            .collect()
    }

    /// Least common multiple of the coefficient conductors.
    pub fn conductor(&self) -> u32 {
        use num_integer::Integer;
        self.terms.values().fold(1, |acc, c| acc.lcm(&c.conductor()))
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    /// Render with scalar literals in `Q(zeta_m)`, highest monomial first.
    pub fn to_literal_in(&self, m: u32) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let c = c.coerce(m);
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            let mono = mono.join("*");
            let (neg, body) = if c.is_compound() {
                (false, format!("({})", c.to_literal()))
            } else {
                let lit = c.to_literal();
                match lit.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, lit),
                }
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }

    pub fn to_literal(&self) -> String {
        self.to_literal_in(self.conductor())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

/// All exponent vectors of total degree `deg` in `nvars` variables,
/// in descending lexicographic order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=deg).rev() {
            prefix.push(k);
            rec(nvars, deg - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(nvars, deg, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const XYZ: [&str; 3] = ["x", "y", "z"];
    const UV: [&str; 2] = ["u", "v"];

    fn lin(a: CycNumber, b: CycNumber, c: CycNumber) -> MultiPoly {
        MultiPoly::linear(&XYZ, &[a, b, c])
    }

    #[test]
    fn factorisation_of_x3_minus_y3() {
        let one = CycNumber::one(3);
        let zero = CycNumber::zero(3);
        let prod = MultiPoly::product(
            &XYZ,
            &(0..3)
                .map(|k| lin(one.clone(), -CycNumber::zeta_pow(3, k), zero.clone()))
                .collect::<Vec<_>>(),
        );
        let target = MultiPoly::var(&XYZ, 0).pow(3).sub(&MultiPoly::var(&XYZ, 1).pow(3));
        assert_eq!(prod, target);
    }

    #[test]
    fn derivative_of_uv_u_plus_v() {
        let u = MultiPoly::var(&UV, 0);
        let v = MultiPoly::var(&UV, 1);
        let g = u.mul(&v).mul(&u.add(&v));
        let du = g.partial(0);
        let expected = u.mul(&v).scale(&CycNumber::from_int(2)).add(&v.pow(2));
        assert_eq!(du, expected);
        assert_eq!(g.to_literal(), "u^2*v + u*v^2");
    }

    #[test]
    fn composition() {
        let u = MultiPoly::var(&UV, 0);
        let v = MultiPoly::var(&UV, 1);
        let g = u.mul(&v);
        let x = MultiPoly::var(&XYZ, 0);
        let y = MultiPoly::var(&XYZ, 1);
        let c = g.compose(&[x.add(&y), x.sub(&y)]);
        assert_eq!(c, x.pow(2).sub(&y.pow(2)));
    }

    #[test]
    fn homogeneity_and_degree() {
        let x = MultiPoly::var(&XYZ, 0);
        let p = x.pow(3).add(&MultiPoly::var(&XYZ, 2));
        assert_eq!(p.degree(), Some(3));
        assert!(!p.is_homogeneous());
        assert!(x.pow(2).is_homogeneous());
        assert_eq!(monomials_of_degree(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }

    #[test]
    fn rendering_of_cyclotomic_coefficients() {
        let p = lin(CycNumber::one(3), -CycNumber::zeta(3), CycNumber::zero(3));
        assert_eq!(p.to_literal(), "x - z*y");
        let q = lin(CycNumber::one(3), &CycNumber::one(3) + &CycNumber::zeta(3), CycNumber::zero(3));
        assert_eq!(q.to_literal(), "x + (z + 1)*y");
    }
}

use std::fmt;

/// A freely reduced word in the free group on generators `x_1, ..., x_n`.
/// Letter `g > 0` is `x_g`, letter `-g` is its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    /// The generator `x_{i+1}` for a 0-based index `i`.
    pub fn gen(i: usize) -> Self {
        FreeWord(vec![i as i32 + 1])
    }

    pub fn from_letters(letters: &[i32]) -> Self {
        let mut w = FreeWord::identity();
        for &l in letters {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, l: i32) {
        assert_ne!(l, 0, "letter 0 is not a generator");
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    /// `self * w * self^-1`.
    pub fn conjugate(&self, w: &Self) -> Self {
        self.mul(w).mul(&self.inverse())
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// Replace each generator `x_i` by `images[i-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        let mut w = FreeWord::identity();
        for &l in &self.0 {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &m in &img.0 {
                    w.push(m);
                }
            } else {
                for &m in img.0.iter().rev() {
                    w.push(-m);
                }
            }
        }
        w
    }

    /// Exponent sum of each of the first `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut e = vec![0; n];
        for &l in &self.0 {
            e[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        e
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&l| if l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A word in the Artin generators `sigma_1, ..., sigma_{n-1}`; letter `k > 0`
/// is `sigma_k`, `-k` its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub n: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) < n.max(1)));
        BraidWord { n, letters }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Induced permutation: position `i` at the start ends at `perm[i]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.n).collect();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            at.swap(k, k + 1);
        }
        let mut perm = vec![0; self.n];
        for (pos, &s) in at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        BraidWord { n: self.n, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { n: self.n, letters }
    }

    /// Images of the free generators under the action of this braid.
    ///
    /// Each letter rewrites the current frame: `sigma_k` sends
    /// `x_k -> x_{k+1}` and `x_{k+1} -> x_{k+1} x_k x_{k+1}^-1`, and
    /// `sigma_k^-1` sends `x_k -> x_k^-1 x_{k+1} x_k` and `x_{k+1} -> x_k`.
    pub fn action(&self) -> Vec<FreeWord> {
        let mut img: Vec<FreeWord> = (0..self.n).map(FreeWord::gen).collect();
        for &l in &self.letters {
            apply_letter(&mut img, l);
        }
        img
    }
}

pub(crate) fn apply_letter(img: &mut [FreeWord], l: i32) {
    let k = l.unsigned_abs() as usize - 1;
    let (a, b) = (img[k].clone(), img[k + 1].clone());
    if l > 0 {
        img[k + 1] = b.conjugate(&a);
        img[k] = b;
    } else {
        img[k] = a.inverse().mul(&b).mul(&a);
        img[k + 1] = a;
    }
}

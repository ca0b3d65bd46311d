//! The geometric representation of a Coxeter group over exact scalars.

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use serde::Serialize;

use super::scalar::ExactScalar;
use crate::diagram::{CoxeterDiagram, VSet};
use crate::error::{Error, Result};

static NEXT_ENGINE: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Row-major square matrix; column j is the image of the simple root α_j.
pub type Matrix = Vec<ExactScalar>;

#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    id: u64,
    diagram: CoxeterDiagram,
    n: usize,
    coef: Vec<ExactScalar>,
}

/// An element of W, stored with its matrix and a reduced word.
#[derive(Clone, Debug)]
pub struct GroupElement {
    engine: u64,
    mat: Matrix,
    word: Vec<usize>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &GroupElement) -> bool {
        self.engine == other.engine && self.mat == other.mat
    }
}
impl Eq for GroupElement {}

impl GroupElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
    pub fn reduced_word(&self) -> &[usize] {
        &self.word
    }
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }
    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// A left coset g·W_X with g its minimal-length representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicCoset {
    pub rep: GroupElement,
    pub gens: VSet,
}

impl CoxeterGroup {
    pub fn new(diagram: &CoxeterDiagram) -> Result<CoxeterGroup> {
        let n = diagram.len();
        let mut coef = vec![ExactScalar::zero(); n * n];
        for s in 0..n {
            for t in 0..n {
                if s != t {
                    coef[s * n + t] = ExactScalar::two_cos(diagram.label(s, t))?;
                }
            }
        }
        Ok(CoxeterGroup {
            id: NEXT_ENGINE.fetch_add(1, AtomicOrdering::Relaxed),
            diagram: diagram.clone(),
            n,
            coef,
        })
    }

    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }
    pub fn rank(&self) -> usize {
        self.n
    }
    pub fn all(&self) -> VSet {
        VSet::full(self.n)
    }
    /// 2cos(π/m_st).
    pub fn coef(&self, s: usize, t: usize) -> &ExactScalar {
        &self.coef[s * self.n + t]
    }

    fn identity_matrix(&self) -> Matrix {
        let n = self.n;
        (0..n * n)
            .map(|k| if k / n == k % n { ExactScalar::one() } else { ExactScalar::zero() })
            .collect()
    }

    /// m ← m·σ_s
    pub fn right_mul_gen(&self, m: &mut Matrix, s: usize) {
        let n = self.n;
        for r in 0..n {
            let ms = m[r * n + s].clone();
            if ms.is_zero() {
                continue;
            }
            for j in 0..n {
                if j != s {
                    let c = self.coef(s, j);
                    if !c.is_zero() {
                        m[r * n + j] = &m[r * n + j] + &(c * &ms);
                    }
                }
            }
            m[r * n + s] = -&ms;
        }
    }

    /// m ← σ_s·m
    pub fn left_mul_gen(&self, m: &mut Matrix, s: usize) {
        let n = self.n;
        for j in 0..n {
            let mut acc = -&m[s * n + j];
            for r in 0..n {
                if r != s {
                    let c = self.coef(s, r);
                    if !c.is_zero() && !m[r * n + j].is_zero() {
                        acc = &acc + &(c * &m[r * n + j]);
                    }
                }
            }
            m[s * n + j] = acc;
        }
    }

    /// Whether w(α_s) is a negative root, i.e. s is a right descent.
    pub fn column_negative(&self, m: &Matrix, s: usize) -> bool {
        (0..self.n)
            .map(|r| &m[r * self.n + s])
            .find(|x| !x.is_zero())
            .is_some_and(|x| !x.is_positive())
    }

    fn right_descents_of(&self, m: &Matrix) -> VSet {
        VSet::from_iter_idx((0..self.n).filter(|&s| self.column_negative(m, s)))
    }

    fn from_matrix(&self, mat: Matrix) -> GroupElement {
        let mut m = mat.clone();
        let mut rev = Vec::new();
        loop {
            let d = self.right_descents_of(&m);
            let Some(s) = d.min() else { break };
            rev.push(s);
            self.right_mul_gen(&mut m, s);
        }
        rev.reverse();
        GroupElement {
            engine: self.id,
            mat,
            word: rev,
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            engine: self.id,
            mat: self.identity_matrix(),
            word: Vec::new(),
        }
    }

    pub fn gen(&self, s: usize) -> Result<GroupElement> {
        self.from_word(&[s])
    }

    pub fn from_word(&self, word: &[usize]) -> Result<GroupElement> {
        let mut m = self.identity_matrix();
        for &s in word {
            if s >= self.n {
                return Err(Error::UnknownVertex(format!("generator #{s}")));
            }
            self.right_mul_gen(&mut m, s);
        }
        Ok(self.from_matrix(m))
    }

    /// Parse a word written with vertex names, separated by spaces or commas;
    /// `e` or the empty string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<GroupElement> {
        let mut w = Vec::new();
        for tok in text.split([',', ' ']).map(str::trim).filter(|t| !t.is_empty()) {
            if tok == "e" {
                continue;
            }
            w.push(self.diagram.index(tok)?);
        }
        self.from_word(&w)
    }

    pub fn word_names(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&s| self.diagram.name(s).to_string()).collect()
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.engine == self.id {
            Ok(())
        } else {
            Err(Error::CrossEngine)
        }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        let mut m = g.mat.clone();
        for &s in &h.word {
            self.right_mul_gen(&mut m, s);
        }
        Ok(self.from_matrix(m))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        let w: Vec<usize> = g.word.iter().rev().copied().collect();
        self.from_word(&w)
    }

    pub fn eq(&self, g: &GroupElement, h: &GroupElement) -> Result<bool> {
        self.check(g)?;
        self.check(h)?;
        Ok(g.mat == h.mat)
    }

    pub fn descents(&self, g: &GroupElement, side: Side) -> Result<VSet> {
        self.check(g)?;
        Ok(match side {
            Side::Right => self.right_descents_of(&g.mat),
            Side::Left => self.right_descents_of(&self.inverse(g)?.mat),
        })
    }

    /// Minimal representative of g·W_X.
    pub fn coset_min_rep(&self, g: &GroupElement, x: VSet) -> Result<ParabolicCoset> {
        self.check(g)?;
        let mut m = g.mat.clone();
        while let Some(s) = self.right_descents_of(&m).inter(x).min() {
            self.right_mul_gen(&mut m, s);
        }
        Ok(ParabolicCoset {
            rep: self.from_matrix(m),
            gens: x,
        })
    }

    /// Minimal representative of W_X·g·W_Y, with the left factor stripped.
    fn double_strip(&self, g: &GroupElement, x: VSet, y: VSet) -> Result<(Vec<usize>, GroupElement)> {
        self.check(g)?;
        let mut cur = g.clone();
        let mut left = Vec::new();
        loop {
            if let Some(s) = self.descents(&cur, Side::Left)?.inter(x).min() {
                let mut m = cur.mat.clone();
                self.left_mul_gen(&mut m, s);
                cur = self.from_matrix(m);
                left.push(s);
            } else if let Some(s) = self.descents(&cur, Side::Right)?.inter(y).min() {
                let mut m = cur.mat.clone();
                self.right_mul_gen(&mut m, s);
                cur = self.from_matrix(m);
            } else {
                return Ok((left, cur));
            }
        }
    }

    pub fn double_coset_min_rep(&self, g: &GroupElement, x: VSet, y: VSet) -> Result<GroupElement> {
        Ok(self.double_strip(g, x, y)?.1)
    }

    pub fn cosets_intersect(&self, g: &GroupElement, x: VSet, h: &GroupElement, y: VSet) -> Result<bool> {
        let k = self.mul(&self.inverse(g)?, h)?;
        Ok(self.double_coset_min_rep(&k, x, y)?.is_identity())
    }

    /// The intersection g·W_X ∩ h·W_Y, a coset of W_{X∩Y} when non-empty.
    pub fn coset_intersection(&self, g: &GroupElement, x: VSet, h: &GroupElement, y: VSet) -> Result<Option<ParabolicCoset>> {
        let k = self.mul(&self.inverse(g)?, h)?;
        let (left, rest) = self.double_strip(&k, x, y)?;
        if !rest.is_identity() {
            return Ok(None);
        }
        // k = x'·y' with x' the product of the stripped letters in order
        let xw = self.from_word(&left)?;
        let p = self.mul(g, &xw)?;
        Ok(Some(self.coset_min_rep(&p, x.inter(y))?))
    }

    /// The vertex of the coset F nearest to x.
    pub fn gate(&self, x: &GroupElement, f: &ParabolicCoset) -> Result<GroupElement> {
        let k = self.mul(&self.inverse(x)?, &f.rep)?;
        let u = self.coset_min_rep(&k, f.gens)?.rep;
        self.mul(x, &u)
    }

    /// Whether W_X is finite: the cosine Gram matrix restricted to X is
    /// positive definite.
    pub fn is_spherical(&self, x: VSet) -> bool {
        let idx: Vec<usize> = x.iter().collect();
        let k = idx.len();
        let gram = |i: usize, j: usize| -> ExactScalar {
            if i == j {
                ExactScalar::from_int(2)
            } else {
                -self.coef(idx[i], idx[j])
            }
        };
        (1..=k).all(|size| leading_minor(size, &gram).is_positive())
    }

    /// Labels (generators) of the given edges of the Cayley graph.
    pub fn supp(&self, edges: &[(GroupElement, GroupElement)]) -> Result<VSet> {
        let mut out = VSet::EMPTY;
        for (u, v) in edges {
            let k = self.mul(&self.inverse(u)?, v)?;
            match k.word.as_slice() {
                [s] => out = out.with(*s),
                _ => return Err(Error::Precondition("not an edge of the Cayley graph".into())),
            }
        }
        Ok(out)
    }
}

/// Determinant of the leading size×size block by expansion with a
/// memo on the used-column mask.
fn leading_minor(size: usize, entry: &dyn Fn(usize, usize) -> ExactScalar) -> ExactScalar {
    let mut memo: std::collections::HashMap<u32, ExactScalar> = std::collections::HashMap::new();
    fn go(
        row: usize,
        used: u32,
        size: usize,
        entry: &dyn Fn(usize, usize) -> ExactScalar,
        memo: &mut std::collections::HashMap<u32, ExactScalar>,
    ) -> ExactScalar {
        if row == size {
            return ExactScalar::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = ExactScalar::zero();
        let mut sign_neg = false;
        for c in 0..size {
            if used >> c & 1 == 1 {
                continue;
            }
            let e = entry(row, c);
            if !e.is_zero() {
                let sub = go(row + 1, used | 1 << c, size, entry, memo);
                let t = &e * &sub;
                acc = if sign_neg { &acc - &t } else { &acc + &t };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(0, 0, size, entry, &mut memo)
}

//! Balls of the Cayley graph with multiplication tables, for fast
//! index-based coset arithmetic.

use std::collections::{HashMap, VecDeque};

use super::group::{CoxeterGroup, Matrix};
use crate::diagram::VSet;
use crate::error::{Error, Result};

/// Default cap on the number of elements in a ball.
pub const DEFAULT_BALL_CAP: usize = 400_000;

const NONE: u32 = u32::MAX;

/// All elements of length ≤ radius, indexed in BFS order (so index 0 is
/// the identity and lengths are non-decreasing).
#[derive(Clone, Debug)]
pub struct BallTable {
    rank: usize,
    radius: usize,
    words: Vec<Vec<u8>>,
    right: Vec<u32>,
    left: Vec<u32>,
    inv: Vec<u32>,
    rdesc: Vec<VSet>,
    ldesc: Vec<VSet>,
}

/// A left coset rep·W_gens, rep being the minimal representative (a ball index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    pub rep: u32,
    pub gens: VSet,
}

impl BallTable {
    pub fn build(group: &CoxeterGroup, radius: usize) -> Result<BallTable> {
        BallTable::build_capped(group, radius, DEFAULT_BALL_CAP)
    }

    pub fn build_capped(group: &CoxeterGroup, radius: usize, cap: usize) -> Result<BallTable> {
        let n = group.rank();
        let mut index: HashMap<Matrix, u32> = HashMap::new();
        let mut mats: Vec<Matrix> = vec![group.identity().matrix().clone()];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut right = vec![NONE; n];
        let mut rdesc = vec![VSet::EMPTY];
        index.insert(mats[0].clone(), 0);
        let mut i = 0;
        while i < mats.len() {
            let len = words[i].len();
            for s in 0..n {
                if right[i * n + s] != NONE || len == radius {
                    continue;
                }
                let mut m = mats[i].clone();
                group.right_mul_gen(&mut m, s);
                let j = match index.get(&m) {
                    Some(&j) => j,
                    None => {
                        if mats.len() >= cap {
                            return Err(Error::TooLarge {
                                what: "Coxeter ball",
                                size: mats.len() + 1,
                                limit: cap,
                            });
                        }
                        let j = mats.len() as u32;
                        let mut w = words[i].clone();
                        w.push(s as u8);
                        words.push(w);
                        index.insert(m.clone(), j);
                        rdesc.push(VSet::EMPTY);
                        mats.push(m);
                        right.extend(std::iter::repeat_n(NONE, n));
                        j
                    }
                };
                right[i * n + s] = j;
                right[j as usize * n + s] = i as u32;
            }
            i += 1;
        }
        let size = mats.len();
        for (k, m) in mats.iter().enumerate() {
            rdesc[k] = VSet::from_iter_idx((0..n).filter(|&s| group.column_negative(m, s)));
        }
        let mut left = vec![NONE; size * n];
        for (k, m) in mats.iter().enumerate() {
            for s in 0..n {
                let mut sm = m.clone();
                group.left_mul_gen(&mut sm, s);
                if let Some(&j) = index.get(&sm) {
                    left[k * n + s] = j;
                }
            }
        }
        let mut table = BallTable {
            rank: n,
            radius,
            words,
            right,
            left,
            inv: vec![NONE; size],
            rdesc,
            ldesc: vec![VSet::EMPTY; size],
        };
        for k in 0..size {
            let w: Vec<usize> = table.words[k].iter().rev().map(|&s| s as usize).collect();
            table.inv[k] = table.from_word(&w)? as u32;
            let lk = table.len(k);
            table.ldesc[k] = VSet::from_iter_idx((0..n).filter(|&s| table.left(k, s).is_some_and(|j| table.len(j) < lk)));
        }
        Ok(table)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn radius(&self) -> usize {
        self.radius
    }
    pub fn size(&self) -> usize {
        self.words.len()
    }
    pub fn len(&self, i: usize) -> usize {
        self.words[i].len()
    }
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
    pub fn word(&self, i: usize) -> Vec<usize> {
        self.words[i].iter().map(|&s| s as usize).collect()
    }
    pub fn right(&self, i: usize, s: usize) -> Option<usize> {
        let j = self.right[i * self.rank + s];
        (j != NONE).then_some(j as usize)
    }
    pub fn left(&self, i: usize, s: usize) -> Option<usize> {
        let j = self.left[i * self.rank + s];
        (j != NONE).then_some(j as usize)
    }
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }
    pub fn rdesc(&self, i: usize) -> VSet {
        self.rdesc[i]
    }
    pub fn ldesc(&self, i: usize) -> VSet {
        self.ldesc[i]
    }

    fn truncated(&self, what: &str) -> Error {
        Error::Truncated(format!("{what} leaves the ball of radius {}", self.radius))
    }

    pub fn from_word(&self, word: &[usize]) -> Result<usize> {
        self.apply(0, word)
    }

    /// i·w for a word w.
    pub fn apply(&self, i: usize, word: &[usize]) -> Result<usize> {
        let mut cur = i;
        for &s in word {
            cur = self.right(cur, s).ok_or_else(|| self.truncated("product"))?;
        }
        Ok(cur)
    }

    pub fn mul(&self, i: usize, j: usize) -> Result<usize> {
        let mut cur = i;
        for &s in &self.words[j] {
            cur = self.right(cur, s as usize).ok_or_else(|| self.truncated("product"))?;
        }
        Ok(cur)
    }

    /// i⁻¹·j
    pub fn quotient(&self, i: usize, j: usize) -> Result<usize> {
        self.mul(self.inv(i), j)
    }

    pub fn min_rep(&self, i: usize, x: VSet) -> usize {
        let mut cur = i;
        while let Some(s) = self.rdesc(cur).inter(x).min() {
            cur = self.right(cur, s).expect("descents stay inside the ball");
        }
        cur
    }

    pub fn coset(&self, i: usize, x: VSet) -> Coset {
        Coset {
            rep: self.min_rep(i, x) as u32,
            gens: x,
        }
    }

    fn double_strip(&self, i: usize, x: VSet, y: VSet) -> (Vec<usize>, usize) {
        let mut cur = i;
        let mut left = Vec::new();
        loop {
            if let Some(s) = self.ldesc(cur).inter(x).min() {
                cur = self.left(cur, s).expect("descents stay inside the ball");
                left.push(s);
            } else if let Some(s) = self.rdesc(cur).inter(y).min() {
                cur = self.right(cur, s).expect("descents stay inside the ball");
            } else {
                return (left, cur);
            }
        }
    }

    pub fn double_min_rep(&self, i: usize, x: VSet, y: VSet) -> usize {
        self.double_strip(i, x, y).1
    }

    pub fn intersect(&self, a: Coset, b: Coset) -> Result<Option<Coset>> {
        let k = self.quotient(a.rep as usize, b.rep as usize)?;
        let (left, rest) = self.double_strip(k, a.gens, b.gens);
        if rest != 0 {
            return Ok(None);
        }
        let p = self.apply(a.rep as usize, &left)?;
        Ok(Some(self.coset(p, a.gens.inter(b.gens))))
    }

    pub fn intersects(&self, a: Coset, b: Coset) -> Result<bool> {
        let k = self.quotient(a.rep as usize, b.rep as usize)?;
        Ok(self.double_min_rep(k, a.gens, b.gens) == 0)
    }

    pub fn contains(&self, c: Coset, i: usize) -> bool {
        self.min_rep(i, c.gens) == c.rep as usize
    }

    pub fn gate(&self, x: usize, c: Coset) -> Result<usize> {
        let k = self.quotient(x, c.rep as usize)?;
        self.mul(x, self.min_rep(k, c.gens))
    }

    /// Elements of a coset; fails with "truncated" when it leaves the ball.
    pub fn elements(&self, c: Coset) -> Result<Vec<usize>> {
        let mut seen = vec![c.rep as usize];
        let mut q = VecDeque::from([c.rep as usize]);
        let mut mark = std::collections::HashSet::from([c.rep as usize]);
        while let Some(v) = q.pop_front() {
            for s in c.gens.iter() {
                let w = self.right(v, s).ok_or_else(|| self.truncated("coset"))?;
                if mark.insert(w) {
                    seen.push(w);
                    q.push_back(w);
                }
            }
        }
        seen.sort_unstable();
        Ok(seen)
    }

    /// The coset spanned by a vertex set that forms a face.
    pub fn face_of(&self, elems: &[usize]) -> Result<Coset> {
        let base = *elems.iter().min_by_key(|&&e| (self.len(e), e)).ok_or(Error::EmptySet)?;
        let set: std::collections::HashSet<usize> = elems.iter().copied().collect();
        let gens = VSet::from_iter_idx((0..self.rank).filter(|&s| self.right(base, s).is_some_and(|w| set.contains(&w))));
        let c = self.coset(base, gens);
        let mut have = self.elements(c)?;
        let mut want: Vec<usize> = set.into_iter().collect();
        have.sort_unstable();
        want.sort_unstable();
        if have != want {
            return Err(Error::Internal("vertex set is not a face".into()));
        }
        Ok(c)
    }

    /// Cayley-graph distances from i inside the ball (breadth-first search).
    pub fn distances_from(&self, i: usize) -> Vec<Option<u32>> {
        let mut d = vec![None; self.size()];
        d[i] = Some(0);
        let mut q = VecDeque::from([i]);
        while let Some(v) = q.pop_front() {
            let dv = d[v].unwrap();
            for s in 0..self.rank {
                if let Some(w) = self.right(v, s) {
                    if d[w].is_none() {
                        d[w] = Some(dv + 1);
                        q.push_back(w);
                    }
                }
            }
        }
        d
    }

    const MAGIC: &'static [u8; 8] = b"GWBBALL1";

    /// Versioned binary encoding of the table.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(Self::MAGIC);
        for v in [self.rank as u64, self.radius as u64, self.size() as u64] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        for w in &self.words {
            out.push(w.len() as u8);
            out.extend_from_slice(w);
        }
        for arr in [&self.right, &self.left, &self.inv] {
            for &x in arr.iter() {
                out.extend_from_slice(&x.to_le_bytes());
            }
        }
        for arr in [&self.rdesc, &self.ldesc] {
            for x in arr.iter() {
                out.extend_from_slice(&x.0.to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<BallTable> {
        let bad = || Error::Parse {
            location: "ball cache".into(),
            message: "corrupt or incompatible cache file".into(),
        };
        let mut pos = 0usize;
        let mut take = |k: usize| -> Result<&[u8]> {
            let s = bytes.get(pos..pos + k).ok_or_else(bad)?;
            pos += k;
            Ok(s)
        };
        if take(8)? != Self::MAGIC {
            return Err(bad());
        }
        let mut u64s = [0u64; 3];
        for v in &mut u64s {
            *v = u64::from_le_bytes(take(8)?.try_into().unwrap());
        }
        let (rank, radius, size) = (u64s[0] as usize, u64s[1] as usize, u64s[2] as usize);
        if rank > 64 || size > 1 << 32 {
            return Err(bad());
        }
        let mut words = Vec::with_capacity(size);
        for _ in 0..size {
            let l = take(1)?[0] as usize;
            words.push(take(l)?.to_vec());
        }
        let mut u32s = |k: usize| -> Result<Vec<u32>> {
            (0..k).map(|_| Ok(u32::from_le_bytes(take(4)?.try_into().unwrap()))).collect()
        };
        let right = u32s(size * rank)?;
        let left = u32s(size * rank)?;
        let inv = u32s(size)?;
        let mut sets = |k: usize| -> Result<Vec<VSet>> {
            (0..k).map(|_| Ok(VSet(u64::from_le_bytes(take(8)?.try_into().unwrap())))).collect()
        };
        let rdesc = sets(size)?;
        let ldesc = sets(size)?;
        if pos != bytes.len() {
            return Err(bad());
        }
        Ok(BallTable {
            rank,
            radius,
            words,
            right,
            left,
            inv,
            rdesc,
            ldesc,
        })
    }
}

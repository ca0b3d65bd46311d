//! Braid groups B_n with the classical Garside structure: simples are
//! permutations, Δ is the half twist. Elements are kept in left normal
//! form Δ^inf · s₁ ⋯ s_r.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::garside::HatStructure;

/// A permutation of {0,…,n−1}; (a·b)[i] = a[b[i]].
pub type Perm = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Braid {
    pub inf: i64,
    pub factors: Vec<Perm>,
}

#[derive(Clone, Debug)]
pub struct BraidProvider {
    n: usize,
    delta: Perm,
    simples: Vec<Perm>,
}

pub fn compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn invert(a: &[u8]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &v) in a.iter().enumerate() {
        out[v as usize] = i as u8;
    }
    out
}

pub fn inversions(a: &[u8]) -> usize {
    let mut k = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] > a[j] {
                k += 1;
            }
        }
    }
    k
}

/// {i : a·σ_i is shorter than a}.
pub fn right_descents(a: &[u8]) -> u32 {
    (0..a.len() - 1).filter(|&i| a[i] > a[i + 1]).fold(0, |m, i| m | 1 << i)
}

pub fn left_descents(a: &[u8]) -> u32 {
    right_descents(&invert(a))
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Perm = (0..n as u8).collect();
    fn go(k: usize, cur: &mut Perm, out: &mut Vec<Perm>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            go(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    go(0, &mut cur, &mut out);
    out.sort_by_key(|p| (inversions(p), p.clone()));
    out
}

impl BraidProvider {
    pub fn new(n: usize) -> Result<BraidProvider> {
        if !(2..=7).contains(&n) {
            return Err(Error::Precondition(format!("B_n needs 2 ≤ n ≤ 7, got {n}")));
        }
        Ok(BraidProvider {
            n,
            delta: (0..n as u8).rev().collect(),
            simples: all_perms(n),
        })
    }

    pub fn strands(&self) -> usize {
        self.n
    }
    pub fn delta(&self) -> &Perm {
        &self.delta
    }
    /// All simple elements, identity first, Δ last.
    pub fn simples(&self) -> &[Perm] {
        &self.simples
    }
    pub fn identity(&self) -> Braid {
        Braid { inf: 0, factors: Vec::new() }
    }
    fn is_identity_perm(p: &[u8]) -> bool {
        p.iter().enumerate().all(|(i, &v)| i == v as usize)
    }
    /// τ(s) = Δ⁻¹ s Δ.
    pub fn tau(&self, s: &[u8]) -> Perm {
        compose(&compose(&self.delta, s), &self.delta)
    }

    /// Right multiplication of a normal form by a simple element.
    pub fn mul_simple(&self, x: &Braid, s: &[u8]) -> Braid {
        if Self::is_identity_perm(s) {
            return x.clone();
        }
        let mut f = x.factors.clone();
        f.push(s.to_vec());
        for i in (0..f.len() - 1).rev() {
            let (l, r) = f.split_at_mut(i + 1);
            if !normalize_pair(&mut l[i], &mut r[0]) {
                break;
            }
        }
        let mut inf = x.inf;
        let lead = f.iter().take_while(|p| **p == self.delta).count();
        f.drain(..lead);
        inf += lead as i64;
        while f.last().is_some_and(|p| Self::is_identity_perm(p)) {
            f.pop();
        }
        Braid { inf, factors: f }
    }

    /// x·Δ^k.
    pub fn mul_delta(&self, x: &Braid, k: i64) -> Braid {
        let factors = if k % 2 == 0 {
            x.factors.clone()
        } else {
            x.factors.iter().map(|s| self.tau(s)).collect()
        };
        Braid { inf: x.inf + k, factors }
    }

    /// x·s⁻¹ = x·Δ⁻¹·(w₀s⁻¹).
    pub fn mul_simple_inv(&self, x: &Braid, s: &[u8]) -> Braid {
        let comp = compose(&self.delta, &invert(s));
        self.mul_simple(&self.mul_delta(x, -1), &comp)
    }

    pub fn mul(&self, x: &Braid, y: &Braid) -> Braid {
        let mut z = self.mul_delta(x, y.inf);
        for s in &y.factors {
            z = self.mul_simple(&z, s);
        }
        z
    }

    pub fn inverse(&self, x: &Braid) -> Braid {
        let mut z = self.identity();
        for s in x.factors.iter().rev() {
            z = self.mul_simple_inv(&z, s);
        }
        self.mul_delta(&z, -x.inf)
    }

    /// σ_i^{±1} for signed 1-based generator indices.
    pub fn atom(&self, g: i64) -> Result<Braid> {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= self.n {
            return Err(Error::Precondition(format!("generator {g} out of range for B_{}", self.n)));
        }
        let mut p: Perm = (0..self.n as u8).collect();
        p.swap(i - 1, i);
        Ok(if g > 0 {
            self.mul_simple(&self.identity(), &p)
        } else {
            self.mul_simple_inv(&self.identity(), &p)
        })
    }

    pub fn from_word(&self, word: &[i64]) -> Result<Braid> {
        let mut x = self.identity();
        for &g in word {
            x = self.mul(&x, &self.atom(g)?);
        }
        Ok(x)
    }

    /// Parses "1 2 -1" (σ₁σ₂σ₁⁻¹).
    pub fn parse_word(&self, text: &str) -> Result<Braid> {
        let word: Vec<i64> = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse().map_err(|_| Error::Parse {
                    location: text.to_string(),
                    message: format!("bad generator {t:?}"),
                })
            })
            .collect::<Result<_>>()?;
        self.from_word(&word)
    }

    /// base⁻¹·a when it is a simple element (including e and Δ).
    fn as_simple(&self, base: &Braid, a: &Braid) -> Option<Perm> {
        let d = self.mul(&self.inverse(base), a);
        match (d.inf, d.factors.len()) {
            (0, 0) => Some((0..self.n as u8).collect()),
            (0, 1) => Some(d.factors[0].clone()),
            (1, 0) => Some(self.delta.clone()),
            _ => None,
        }
    }

    /// A positive word for a simple element (its reduced bubble-sort word).
    pub fn simple_word(&self, s: &[u8]) -> Vec<i64> {
        let mut p = s.to_vec();
        let mut w = Vec::new();
        while let Some(i) = (0..p.len() - 1).find(|&i| p[i] > p[i + 1]) {
            p.swap(i, i + 1);
            w.push(i as i64 + 1);
        }
        w.reverse();
        w
    }
}

/// Left inversion set {(a,b) : a < b, b precedes a}, as a bit matrix.
fn left_inversions(w: &[u8]) -> u64 {
    let pos = invert(w);
    let n = w.len();
    let mut m = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            if pos[a] > pos[b] {
                m |= 1 << (a * n + b);
            }
        }
    }
    m
}

/// s is a prefix of t among simples.
pub fn is_prefix(s: &[u8], t: &[u8]) -> bool {
    let (a, b) = (left_inversions(s), left_inversions(t));
    a & !b == 0
}

/// Largest common prefix of two simples.
pub fn prefix_meet(s: &[u8], t: &[u8]) -> Perm {
    let mut m: Perm = (0..s.len() as u8).collect();
    'grow: loop {
        for i in 0..s.len() - 1 {
            if m[i] < m[i + 1] {
                let mut c = m.clone();
                c.swap(i, i + 1);
                if is_prefix(&c, s) && is_prefix(&c, t) {
                    m = c;
                    continue 'grow;
                }
            }
        }
        return m;
    }
}

/// Smallest common multiple of two simples, via the anti-automorphism
/// w ↦ w₀w of the prefix order.
pub fn prefix_join(s: &[u8], t: &[u8]) -> Perm {
    let w0: Perm = (0..s.len() as u8).rev().collect();
    compose(&w0, &prefix_meet(&compose(&w0, s), &compose(&w0, t)))
}

/// Makes (a, b) left-weighted; returns whether anything changed.
fn normalize_pair(a: &mut Perm, b: &mut Perm) -> bool {
    let mut changed = false;
    loop {
        let need = left_descents(b) & !right_descents(a);
        if need == 0 {
            return changed;
        }
        let j = need.trailing_zeros() as usize;
        a.swap(j, j + 1);
        // σ_j·b: swap the values j and j+1
        for v in b.iter_mut() {
            if *v as usize == j {
                *v += 1;
            } else if *v as usize == j + 1 {
                *v -= 1;
            }
        }
        changed = true;
    }
}

impl HatStructure for BraidProvider {
    type V = Braid;

    fn period(&self) -> i64 {
        (self.n * (self.n - 1) / 2) as i64
    }
    fn rank(&self, x: &Braid) -> i64 {
        x.inf * self.period() + x.factors.iter().map(|s| inversions(s) as i64).sum::<i64>()
    }
    fn phi(&self, x: &Braid, k: i64) -> Braid {
        self.mul_delta(x, k)
    }
    fn up(&self, x: &Braid) -> Vec<Braid> {
        self.simples[1..].iter().map(|s| self.mul_simple(x, s)).collect()
    }
    fn le_t(&self, x: &Braid, y: &Braid) -> Result<bool> {
        Ok(self.mul(&self.inverse(x), y).inf >= 0)
    }
    fn project(&self, x: &Braid) -> Braid {
        self.mul_delta(x, -x.inf)
    }
    fn show(&self, x: &Braid) -> String {
        let mut parts = Vec::new();
        if x.inf != 0 {
            parts.push(format!("Δ^{}", x.inf));
        }
        for s in &x.factors {
            let w: Vec<String> = self.simple_word(s).iter().map(|g| g.to_string()).collect();
            parts.push(format!("[{}]", w.join(" ")));
        }
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join("·")
        }
    }
    fn lt_edge(&self, x: &Braid, y: &Braid) -> bool {
        let d = self.mul(&self.inverse(x), y);
        (d.inf == 0 && d.factors.len() == 1) || (d.inf == 1 && d.factors.is_empty())
    }
    fn beta(&self, x: &Braid, y: &Braid) -> Result<Braid> {
        let d = self.mul(&self.inverse(x), y);
        if d.inf < 0 {
            return Err(Error::Precondition(format!("{} ≤_t {} fails", self.show(x), self.show(y))));
        }
        // the largest simple suffix of d is the reverse of the largest
        // simple prefix of its reverse
        let mut rev = self.identity();
        for s in d.factors.iter().rev() {
            rev = self.mul_simple(&rev, &invert(s));
        }
        let rev = self.mul_delta(&rev, d.inf);
        Ok(if rev.inf >= 1 {
            self.phi(y, -1)
        } else if let Some(p) = rev.factors.first() {
            self.mul_simple_inv(y, &invert(p))
        } else {
            y.clone()
        })
    }
    fn interval_meet(&self, base: &Braid, a: &Braid, b: &Braid) -> Result<Option<Braid>> {
        match (self.as_simple(base, a), self.as_simple(base, b)) {
            (Some(s), Some(t)) => Ok(Some(self.mul_simple(base, &prefix_meet(&s, &t)))),
            _ => crate::garside::search_meet(self, base, a, b),
        }
    }
    fn interval_join(&self, base: &Braid, a: &Braid, b: &Braid) -> Result<Option<Braid>> {
        match (self.as_simple(base, a), self.as_simple(base, b)) {
            (Some(s), Some(t)) => Ok(Some(self.mul_simple(base, &prefix_join(&s, &t)))),
            _ => crate::garside::search_join(self, base, a, b),
        }
    }
    fn alpha(&self, x: &Braid, y: &Braid) -> Result<Braid> {
        let d = self.mul(&self.inverse(x), y);
        if d.inf < 0 {
            return Err(Error::Precondition(format!("{} ≤_t {} fails", self.show(x), self.show(y))));
        }
        Ok(if d.inf >= 1 {
            self.phi(x, 1)
        } else if let Some(s) = d.factors.first() {
            self.mul_simple(x, s)
        } else {
            x.clone()
        })
    }
}

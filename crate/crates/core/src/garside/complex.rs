//! Finite complexes with cyclic orders on simplices, the Ã_n-like checker,
//! and the hat construction over a finite complex.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::HatStructure;
use crate::error::{Error, Result};
use crate::order::{cyclic_z, FinitePoset, PosetViolation};

/// A flag complex given by its 1-skeleton, with cyclic orders on triangles
/// (stored as all three rotations of each oriented triple).
#[derive(Clone, Debug, Default)]
pub struct FiniteComplex {
    pub names: Vec<String>,
    pub types: Vec<usize>,
    /// Sorted neighbour lists.
    pub adj: Vec<Vec<usize>>,
    pub triples: BTreeSet<[usize; 3]>,
    pub f: Vec<i64>,
    pub period: i64,
    /// Vertices whose link may be incomplete.
    pub boundary: Vec<bool>,
    /// Whether this is a window of a larger (possibly infinite) complex.
    pub is_window: bool,
    /// Cliques declared not to be simplices.
    pub non_simplices: Vec<Vec<usize>>,
}

impl FiniteComplex {
    pub fn len(&self) -> usize {
        self.adj.len()
    }
    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
    pub fn holds(&self, a: usize, b: usize, c: usize) -> bool {
        self.triples.contains(&[a, b, c])
    }

    /// Orient the triangle {a,b,c} as [a,b,c].
    pub fn set_orientation(&mut self, a: usize, b: usize, c: usize) {
        for t in [[c, b, a], [b, a, c], [a, c, b]] {
            self.triples.remove(&t);
        }
        for t in [[a, b, c], [b, c, a], [c, a, b]] {
            self.triples.insert(t);
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (u, v) in self.edges() {
            for &w in &self.adj[v] {
                if w > v && self.adjacent(u, w) {
                    out.push([u, v, w]);
                }
            }
        }
        out
    }

    /// All cliques of the given size, each sorted.
    pub fn cliques(&self, size: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn go(c: &FiniteComplex, cur: &mut Vec<usize>, cand: &[usize], size: usize, out: &mut Vec<Vec<usize>>) {
            if cur.len() == size {
                out.push(cur.clone());
                return;
            }
            for (k, &w) in cand.iter().enumerate() {
                let next: Vec<usize> = cand[k + 1..].iter().copied().filter(|&u| c.adjacent(w, u)).collect();
                cur.push(w);
                go(c, cur, &next, size, out);
                cur.pop();
            }
        }
        for v in 0..self.len() {
            let cand: Vec<usize> = self.adj[v].iter().copied().filter(|&w| w > v).collect();
            go(self, &mut vec![v], &cand, size, &mut out);
        }
        out
    }

    /// Sub-complex induced on `keep` (indices into self); returns the map.
    pub fn induced(&self, keep: &[usize]) -> FiniteComplex {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = keep
            .iter()
            .map(|&v| {
                let mut a: Vec<usize> = self.adj[v].iter().filter_map(|w| pos.get(w).copied()).collect();
                a.sort_unstable();
                a
            })
            .collect();
        let triples = self
            .triples
            .iter()
            .filter_map(|t| Some([*pos.get(&t[0])?, *pos.get(&t[1])?, *pos.get(&t[2])?]))
            .collect();
        FiniteComplex {
            names: keep.iter().map(|&v| self.names[v].clone()).collect(),
            types: keep.iter().map(|&v| self.types[v]).collect(),
            adj,
            triples,
            f: keep.iter().map(|&v| self.f[v]).collect(),
            period: self.period,
            boundary: keep.iter().map(|&v| self.boundary[v]).collect(),
            is_window: self.is_window,
            non_simplices: Vec::new(),
        }
    }

    /// The relation y <_x z ⇔ [y, z, x] on the link of x.
    pub fn link_order(&self, x: usize) -> (Vec<usize>, FinitePoset) {
        let link = self.adj[x].clone();
        let p = FinitePoset::from_fn(link.len(), |i, j| self.holds(link[i], link[j], x));
        (link, p)
    }

    /// The full subcomplex on the 1-skeleton ball of radius r around
    /// `center`, with the outer sphere marked as boundary. Vertex order is BFS.
    pub fn ball(&self, center: usize, r: usize) -> FiniteComplex {
        let d = self.distances(center);
        let mut keep: Vec<usize> = (0..self.len()).filter(|&v| d[v].is_some_and(|x| x <= r)).collect();
        keep.sort_by_key(|&v| (d[v], v));
        let mut out = self.induced(&keep);
        for (i, &v) in keep.iter().enumerate() {
            out.boundary[i] = self.boundary[v] || d[v] == Some(r);
        }
        out.is_window = true;
        out
    }

    /// Graph distances from `src`.
    pub fn distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut d = vec![None; self.len()];
        d[src] = Some(0);
        let mut q = VecDeque::from([src]);
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v] {
                if d[w].is_none() {
                    d[w] = Some(d[v].unwrap() + 1);
                    q.push_back(w);
                }
            }
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum H1Status {
    /// H1 vanishes; nothing is claimed about π1.
    H1Trivial,
    H1Nontrivial,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pi1Status {
    Trivial,
    Nontrivial,
    Undetermined,
    /// Not attempted (windows of larger complexes).
    Unchecked,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnLikeReport {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub flag: Vec<Witness>,
    pub consistency: Vec<Witness>,
    pub link: Vec<Witness>,
    pub f_morphism: Vec<Witness>,
    pub links_checked: usize,
    pub links_skipped_boundary: usize,
    pub h1: H1Status,
    pub pi1: Pi1Status,
}

impl AnLikeReport {
    /// All local conditions hold.
    pub fn local_pass(&self) -> bool {
        self.flag.is_empty() && self.consistency.is_empty() && self.link.is_empty() && self.f_morphism.is_empty()
    }
}

fn witness(c: &FiniteComplex, kind: impl Into<String>, vs: &[usize]) -> Witness {
    Witness {
        kind: kind.into(),
        vertices: vs.iter().map(|&v| c.names[v].clone()).collect(),
    }
}

/// Checks the Ã_n-like conditions; violations are report content.
pub fn check_an_like(c: &FiniteComplex) -> AnLikeReport {
    let mut flag = Vec::new();
    for s in &c.non_simplices {
        flag.push(witness(c, "clique is not a simplex", s));
    }
    let tris = c.triangles();
    let mut consistency = Vec::new();
    for &[a, b, cc] in &tris {
        let fwd = [[a, b, cc], [b, cc, a], [cc, a, b]].iter().all(|t| c.triples.contains(t));
        let bwd = [[cc, b, a], [b, a, cc], [a, cc, b]].iter().all(|t| c.triples.contains(t));
        let any = [[a, b, cc], [b, cc, a], [cc, a, b], [cc, b, a], [b, a, cc], [a, cc, b]]
            .iter()
            .any(|t| c.triples.contains(t));
        if fwd == bwd || (!fwd && !bwd && any) {
            consistency.push(witness(c, "triangle lacks a unique cyclic order", &[a, b, cc]));
        }
    }
    for t in &c.triples {
        if !(c.adjacent(t[0], t[1]) && c.adjacent(t[1], t[2]) && c.adjacent(t[0], t[2])) {
            consistency.push(witness(c, "cyclic triple on a non-simplex", t));
        }
    }
    for q in c.cliques(4) {
        for &a in &q {
            for &b in &q {
                for &x in &q {
                    for &d in &q {
                        let distinct: BTreeSet<usize> = [a, b, x, d].into_iter().collect();
                        if distinct.len() == 4 && c.holds(a, b, x) && c.holds(a, x, d) && !c.holds(a, b, d) {
                            consistency.push(witness(c, "cyclic order on a simplex is not transitive", &[a, b, x, d]));
                        }
                    }
                }
            }
        }
    }
    let mut link = Vec::new();
    let mut links_checked = 0;
    let mut links_skipped_boundary = 0;
    for x in 0..c.len() {
        if c.boundary.get(x).copied().unwrap_or(false) {
            links_skipped_boundary += 1;
            continue;
        }
        links_checked += 1;
        let (lk, p) = c.link_order(x);
        for v in p.violations() {
            let (kind, vs) = match v {
                PosetViolation::Reflexive { x: i } => ("link order not irreflexive", vec![lk[i]]),
                PosetViolation::Antisymmetry { x: i, y: j } => ("link order not antisymmetric", vec![lk[i], lk[j]]),
                PosetViolation::Transitivity { x: i, y: j, z: k } => ("link order not transitive", vec![lk[i], lk[j], lk[k]]),
            };
            let mut all = vec![x];
            all.extend(vs);
            link.push(witness(c, kind, &all));
        }
        if p.is_poset() {
            for (i, j, what) in p.missing_bounds() {
                link.push(witness(c, format!("bounded pair without {what}"), &[x, lk[i], lk[j]]));
            }
        }
    }
    let mut f_morphism = Vec::new();
    for t in &c.triples {
        let (fa, fb, fc) = (c.f[t[0]], c.f[t[1]], c.f[t[2]]);
        if !cyclic_z(fa, fb, fc) {
            f_morphism.push(witness(c, "f is not a cyclic morphism", t));
        }
    }
    let h1 = h1_status(c, &tris);
    let pi1 = if c.is_window { Pi1Status::Unchecked } else { pi1_status(c, &tris) };
    AnLikeReport {
        vertices: c.len(),
        edges: c.edge_count(),
        triangles: tris.len(),
        flag,
        consistency,
        link,
        f_morphism,
        links_checked,
        links_skipped_boundary,
        h1,
        pi1,
    }
}

fn components(c: &FiniteComplex) -> usize {
    let mut seen = vec![false; c.len()];
    let mut k = 0;
    for s in 0..c.len() {
        if seen[s] {
            continue;
        }
        k += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &c.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    k
}

type SparseVec = BTreeMap<usize, i128>;

/// H1 over Z: trivial iff the image of ∂₂ is all of ker ∂₁ and saturated;
/// decided exactly when the echelon form has unit pivots.
fn h1_status(c: &FiniteComplex, tris: &[[usize; 3]]) -> H1Status {
    let edges = c.edges();
    let eidx: BTreeMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let kernel_rank = edges.len() as i64 - (c.len() as i64 - components(c) as i64);
    let mut pivots: BTreeMap<usize, SparseVec> = BTreeMap::new();
    let mut unit = true;
    for &[a, b, d] in tris {
        let mut v = SparseVec::new();
        v.insert(eidx[&(a, b)], 1);
        v.insert(eidx[&(b, d)], 1);
        v.insert(eidx[&(a, d)], -1);
        loop {
            let Some((&lead, &val)) = v.iter().next() else { break };
            match pivots.get(&lead) {
                None => {
                    if val.abs() != 1 {
                        unit = false;
                    }
                    pivots.insert(lead, v);
                    break;
                }
                Some(p) => {
                    let pv = p[&lead];
                    if val % pv != 0 {
                        unit = false;
                        break;
                    }
                    let q = val / pv;
                    for (&k, &x) in p {
                        let e = v.entry(k).or_insert(0);
                        match x.checked_mul(q).and_then(|t| e.checked_sub(t)) {
                            Some(r) => *e = r,
                            None => return H1Status::Undetermined,
                        }
                        if *e == 0 {
                            v.remove(&k);
                        }
                    }
                }
            }
        }
        if !unit {
            break;
        }
    }
    if !unit {
        return H1Status::Undetermined;
    }
    if pivots.len() as i64 == kernel_rank {
        H1Status::H1Trivial
    } else {
        H1Status::H1Nontrivial
    }
}

/// Tietze simplification of the edge-path group presentation.
fn pi1_status(c: &FiniteComplex, tris: &[[usize; 3]]) -> Pi1Status {
    if components(c) > 1 {
        return Pi1Status::Undetermined;
    }
    let mut tree: HashSet<(usize, usize)> = HashSet::new();
    let mut seen = vec![false; c.len()];
    for s in 0..c.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &c.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree.insert((v.min(w), v.max(w)));
                    q.push_back(w);
                }
            }
        }
    }
    let gens: BTreeMap<(usize, usize), i64> = c
        .edges()
        .into_iter()
        .filter(|e| !tree.contains(e))
        .enumerate()
        .map(|(i, e)| (e, i as i64 + 1))
        .collect();
    let letter = |u: usize, v: usize| -> Option<i64> {
        let g = *gens.get(&(u.min(v), u.max(v)))?;
        Some(if u < v { g } else { -g })
    };
    let mut rels: Vec<Vec<i64>> = tris
        .iter()
        .map(|&[a, b, d]| [letter(a, b), letter(b, d), letter(d, a)].into_iter().flatten().collect())
        .collect();
    let mut alive: BTreeSet<i64> = gens.values().copied().collect();
    const LIMIT: usize = 200_000;
    loop {
        for r in rels.iter_mut() {
            reduce_cyclic(r);
        }
        rels.retain(|r| !r.is_empty());
        if alive.is_empty() {
            return Pi1Status::Trivial;
        }
        if rels.is_empty() {
            return Pi1Status::Nontrivial;
        }
        let mut pick = None;
        'search: for (ri, r) in rels.iter().enumerate() {
            for &g in &alive {
                if r.iter().filter(|&&x| x.abs() == g).count() == 1 {
                    pick = Some((ri, g));
                    break 'search;
                }
            }
        }
        let Some((ri, g)) = pick else {
            return Pi1Status::Undetermined;
        };
        let r = rels.swap_remove(ri);
        let pos = r.iter().position(|&x| x.abs() == g).unwrap();
        // r = u·g^ε·v = 1  ⇒  g^ε = u⁻¹ v⁻¹ = (v u)⁻¹
        let mut vu: Vec<i64> = r[pos + 1..].iter().chain(r[..pos].iter()).copied().collect();
        let mut repl: Vec<i64> = vu.drain(..).rev().map(|x| -x).collect();
        if r[pos] < 0 {
            repl = repl.into_iter().rev().map(|x| -x).collect();
        }
        let mut total = 0;
        for rel in rels.iter_mut() {
            let mut out = Vec::with_capacity(rel.len());
            for &x in rel.iter() {
                if x == g {
                    out.extend_from_slice(&repl);
                } else if x == -g {
                    out.extend(repl.iter().rev().map(|y| -y));
                } else {
                    out.push(x);
                }
            }
            *rel = out;
            total += rel.len();
        }
        alive.remove(&g);
        if total > LIMIT {
            return Pi1Status::Undetermined;
        }
    }
}

fn reduce_cyclic(r: &mut Vec<i64>) {
    let mut out: Vec<i64> = Vec::with_capacity(r.len());
    for &x in r.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.pop();
        out.remove(0);
    }
    *r = out;
}

/// X̂ built from a finite complex: vertices (x, i) with i ≡ f(x) mod n.
#[derive(Clone, Debug)]
pub struct HatFromComplex<'a> {
    c: &'a FiniteComplex,
}

impl<'a> HatFromComplex<'a> {
    pub fn new(c: &'a FiniteComplex) -> Result<HatFromComplex<'a>> {
        if c.period <= 0 {
            return Err(Error::Precondition("period must be positive".into()));
        }
        Ok(HatFromComplex { c })
    }

    /// The canonical lift (x, f(x)).
    pub fn lift(&self, x: usize) -> (usize, i64) {
        (x, self.c.f[x].rem_euclid(self.c.period))
    }
}

impl HatStructure for HatFromComplex<'_> {
    type V = (usize, i64);

    fn period(&self) -> i64 {
        self.c.period
    }
    fn rank(&self, x: &(usize, i64)) -> i64 {
        x.1
    }
    fn phi(&self, x: &(usize, i64), k: i64) -> (usize, i64) {
        (x.0, x.1 + k * self.c.period)
    }
    fn up(&self, x: &(usize, i64)) -> Vec<(usize, i64)> {
        let n = self.c.period;
        let mut out: Vec<(usize, i64)> = self.c.adj[x.0]
            .iter()
            .map(|&y| {
                let d = (self.c.f[y] - x.1).rem_euclid(n);
                (y, x.1 + d)
            })
            .filter(|&(_, j)| j > x.1)
            .collect();
        out.push((x.0, x.1 + n));
        out.sort_by_key(|&(y, j)| (j, y));
        out
    }
    fn le_t(&self, x: &(usize, i64), y: &(usize, i64)) -> Result<bool> {
        if x == y {
            return Ok(true);
        }
        let mut seen = BTreeSet::from([*x]);
        let mut q = VecDeque::from([*x]);
        while let Some(v) = q.pop_front() {
            for w in self.up(&v) {
                if w == *y {
                    return Ok(true);
                }
                if w.1 < y.1 && seen.insert(w) {
                    q.push_back(w);
                }
            }
        }
        Ok(false)
    }
    fn project(&self, x: &(usize, i64)) -> (usize, i64) {
        self.lift(x.0)
    }
    fn show(&self, x: &(usize, i64)) -> String {
        format!("({}, {})", self.c.names[x.0], x.1)
    }
}

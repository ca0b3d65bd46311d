//! Garside flag complexes: greedy steps, Deligne normal forms, strips,
//! B-geodesics and Bestvina's asymmetric distance.

pub mod complex;
pub mod suite;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

pub use crate::coxeter::Side;
use crate::error::{Error, Result};
pub use complex::{check_an_like, AnLikeReport, FiniteComplex, HatFromComplex};

/// Upper bound on the number of steps any single path computation takes.
pub const MAX_STEPS: usize = 1_000_000;

/// The hat complex X̂ of a Garside flag complex: vertices with a rank, the
/// shift φ, the Δ-intervals and the order ≤_t, plus the quotient map to the
/// Bestvina complex X = X̂/⟨φ⟩.
pub trait HatStructure {
    type V: Clone + Eq + Ord + Hash + Debug;

    /// The translation r∘φ = r + period.
    fn period(&self) -> i64;
    fn rank(&self, x: &Self::V) -> i64;
    fn phi(&self, x: &Self::V, k: i64) -> Self::V;
    /// All of (x, φ(x)].
    fn up(&self, x: &Self::V) -> Vec<Self::V>;
    fn le_t(&self, x: &Self::V, y: &Self::V) -> Result<bool>;
    /// Canonical representative of the ⟨φ⟩-orbit of x.
    fn project(&self, x: &Self::V) -> Self::V;
    fn show(&self, x: &Self::V) -> String {
        format!("{x:?}")
    }

    /// x < y as an edge of X̂.
    fn lt_edge(&self, x: &Self::V, y: &Self::V) -> bool {
        self.up(x).contains(y)
    }

    /// The ≤_t-maximal element of [x, φ(x)] below y.
    fn alpha(&self, x: &Self::V, y: &Self::V) -> Result<Self::V> {
        if !self.le_t(x, y)? {
            return Err(Error::Precondition(format!("{} ≤_t {} fails", self.show(x), self.show(y))));
        }
        let mut cands = vec![x.clone()];
        for c in self.up(x) {
            if self.le_t(&c, y)? {
                cands.push(c);
            }
        }
        extremum(self, &cands, true)?.ok_or_else(|| Error::NotALattice(format!("no α for {}", self.show(x))))
    }

    /// The ≤_t-minimal element of [φ⁻¹(y), y] above x.
    fn beta(&self, x: &Self::V, y: &Self::V) -> Result<Self::V> {
        if !self.le_t(x, y)? {
            return Err(Error::Precondition(format!("{} ≤_t {} fails", self.show(x), self.show(y))));
        }
        let mut cands = Vec::new();
        for c in interval(self, &self.phi(y, -1)) {
            if self.le_t(x, &c)? {
                cands.push(c);
            }
        }
        extremum(self, &cands, false)?.ok_or_else(|| Error::NotALattice(format!("no β for {}", self.show(y))))
    }

    /// Meet of a and b inside [base, φ(base)].
    fn interval_meet(&self, base: &Self::V, a: &Self::V, b: &Self::V) -> Result<Option<Self::V>> {
        search_meet(self, base, a, b)
    }

    /// Join of a and b inside [base, φ(base)].
    fn interval_join(&self, base: &Self::V, a: &Self::V, b: &Self::V) -> Result<Option<Self::V>> {
        search_join(self, base, a, b)
    }
}

/// Meet in [base, φ(base)] by exhaustive search of the interval.
pub fn search_meet<H: HatStructure + ?Sized>(h: &H, base: &H::V, a: &H::V, b: &H::V) -> Result<Option<H::V>> {
    let mut cands = Vec::new();
    for c in interval(h, base) {
        if h.le_t(&c, a)? && h.le_t(&c, b)? {
            cands.push(c);
        }
    }
    extremum(h, &cands, true)
}

/// Join in [base, φ(base)] by exhaustive search of the interval.
pub fn search_join<H: HatStructure + ?Sized>(h: &H, base: &H::V, a: &H::V, b: &H::V) -> Result<Option<H::V>> {
    let mut cands = Vec::new();
    for c in interval(h, base) {
        if h.le_t(a, &c)? && h.le_t(b, &c)? {
            cands.push(c);
        }
    }
    extremum(h, &cands, false)
}

/// [x, φ(x)] with x first.
pub fn interval<H: HatStructure + ?Sized>(h: &H, x: &H::V) -> Vec<H::V> {
    let mut v = vec![x.clone()];
    v.extend(h.up(x));
    v
}

/// [φ⁻¹(x), x): the Δ-interval below x, without x.
pub fn down<H: HatStructure + ?Sized>(h: &H, x: &H::V) -> Vec<H::V> {
    interval(h, &h.phi(x, -1)).into_iter().filter(|c| c != x).collect()
}

/// Greatest (max=true) or least element of a candidate list.
fn extremum<H: HatStructure + ?Sized>(h: &H, cands: &[H::V], max: bool) -> Result<Option<H::V>> {
    // rank-sorted: the extremum, if any, has extreme rank
    let mut order: Vec<&H::V> = cands.iter().collect();
    order.sort_by_key(|c| h.rank(c));
    if max {
        order.reverse();
    }
    let Some(&top) = order.first() else {
        return Ok(None);
    };
    for c in &order[1..] {
        let ok = if max { h.le_t(c, top)? } else { h.le_t(top, c)? };
        if !ok {
            return Ok(None);
        }
    }
    Ok(Some(top.clone()))
}

/// Whether [x, φ(x)] is a lattice; returns the first failing pair.
pub fn interval_lattice_failure<H: HatStructure + ?Sized>(h: &H, x: &H::V) -> Result<Option<(H::V, H::V)>> {
    let iv = interval(h, x);
    for i in 0..iv.len() {
        for j in i + 1..iv.len() {
            if h.interval_meet(x, &iv[i], &iv[j])?.is_none() || h.interval_join(x, &iv[i], &iv[j])?.is_none() {
                return Ok(Some((iv[i].clone(), iv[j].clone())));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm<V> {
    pub side: Side,
    /// x₁ … x_l … x_n.
    pub path: Vec<V>,
    /// Number of simple steps, l − 1.
    pub simple_len: usize,
    /// Δ-power; the last |k| steps are φ^{±1}.
    pub k: i64,
}

impl<V: Clone> NormalForm<V> {
    pub fn simple_part(&self) -> &[V] {
        &self.path[..=self.simple_len]
    }
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }
    pub fn is_empty(&self) -> bool {
        self.path.len() <= 1
    }
}

fn step_guard(steps: usize) -> Result<()> {
    if steps > MAX_STEPS {
        Err(Error::Truncated(format!("path exceeds {MAX_STEPS} steps")))
    } else {
        Ok(())
    }
}

/// Iterated α from x to y (requires x ≤_t y).
pub fn left_quasi_path<H: HatStructure + ?Sized>(h: &H, x: &H::V, y: &H::V) -> Result<Vec<H::V>> {
    let mut path = vec![x.clone()];
    while path.last() != Some(y) {
        step_guard(path.len())?;
        let last = path.last().unwrap();
        let a = h.alpha(last, y)?;
        if &a == last {
            return Err(Error::Internal(format!("α stalls at {}", h.show(last))));
        }
        path.push(a);
    }
    Ok(path)
}

/// Iterated β from y down to x, returned in order from x to y.
pub fn right_path<H: HatStructure + ?Sized>(h: &H, x: &H::V, y: &H::V) -> Result<Vec<H::V>> {
    let mut path = vec![y.clone()];
    while path.last() != Some(x) {
        step_guard(path.len())?;
        let last = path.last().unwrap();
        let b = h.beta(x, last)?;
        if &b == last {
            return Err(Error::Internal(format!("β stalls at {}", h.show(last))));
        }
        path.push(b);
    }
    path.reverse();
    Ok(path)
}

/// Smallest m ≥ 1 with x ≤_t φ^m(y).
fn lift_exponent<H: HatStructure + ?Sized>(h: &H, x: &H::V, y: &H::V) -> Result<i64> {
    let n = h.period();
    let gap = h.rank(x) - h.rank(y);
    let mut m = (-(-gap).div_euclid(n)).max(1);
    loop {
        if h.le_t(x, &h.phi(y, m))? {
            return Ok(m);
        }
        m += 1;
        step_guard(m as usize)?;
    }
}

fn positive_left<H: HatStructure + ?Sized>(h: &H, x: &H::V, y: &H::V) -> Result<NormalForm<H::V>> {
    let q = left_quasi_path(h, x, y)?;
    let d = q.windows(2).take_while(|w| w[1] == h.phi(&w[0], 1)).count();
    let mut path: Vec<H::V> = q[d..].iter().map(|v| h.phi(v, -(d as i64))).collect();
    let last = q.last().unwrap();
    for j in (0..d as i64).rev() {
        path.push(h.phi(last, -j));
    }
    Ok(NormalForm {
        side: Side::Left,
        simple_len: q.len() - 1 - d,
        path,
        k: d as i64,
    })
}

fn positive_right<H: HatStructure + ?Sized>(h: &H, x: &H::V, y: &H::V) -> Result<NormalForm<H::V>> {
    let path = right_path(h, x, y)?;
    let d = path.windows(2).rev().take_while(|w| w[1] == h.phi(&w[0], 1)).count();
    Ok(NormalForm {
        side: Side::Right,
        simple_len: path.len() - 1 - d,
        path,
        k: d as i64,
    })
}

fn normal_form<H: HatStructure + ?Sized>(h: &H, x: &H::V, y: &H::V, side: Side) -> Result<NormalForm<H::V>> {
    let positive = |a: &H::V, b: &H::V| match side {
        Side::Left => positive_left(h, a, b),
        Side::Right => positive_right(h, a, b),
    };
    if h.le_t(x, y)? {
        return positive(x, y);
    }
    let m = lift_exponent(h, x, y)?;
    let mut nf = positive(x, &h.phi(y, m))?;
    if nf.k != 0 {
        return Err(Error::Internal("minimal lift has a Δ tail".into()));
    }
    for j in (0..m).rev() {
        nf.path.push(h.phi(y, j));
    }
    nf.k = -m;
    Ok(nf)
}

pub fn left_nf<H: HatStructure + ?Sized>(h: &H, x: &H::V, y: &H::V) -> Result<NormalForm<H::V>> {
    normal_form(h, x, y, Side::Left)
}

pub fn right_nf<H: HatStructure + ?Sized>(h: &H, x: &H::V, y: &H::V) -> Result<NormalForm<H::V>> {
    normal_form(h, x, y, Side::Right)
}

/// Re-verifies the three defining conditions of a normal form; returns the
/// failures found.
pub fn certify<H: HatStructure + ?Sized>(h: &H, nf: &NormalForm<H::V>) -> Result<Vec<String>> {
    let p = &nf.path;
    let l = nf.simple_len;
    let mut out = Vec::new();
    for i in 0..l {
        if !h.lt_edge(&p[i], &p[i + 1]) || p[i + 1] == h.phi(&p[i], 1) {
            out.push(format!("step {i} is not a proper simple step"));
        }
    }
    for i in 1..l {
        let ok = match nf.side {
            Side::Left => h.interval_meet(&p[i], &p[i + 1], &h.phi(&p[i - 1], 1))?.as_ref() == Some(&p[i]),
            Side::Right => {
                h.interval_join(&h.phi(&p[i], -1), &p[i - 1], &h.phi(&p[i + 1], -1))?.as_ref() == Some(&p[i])
            }
        };
        if !ok {
            out.push(format!("greedy condition fails at vertex {i}"));
        }
    }
    let sign = nf.k.signum();
    if p.len() != l + 1 + nf.k.unsigned_abs() as usize {
        out.push("path length disagrees with l and k".into());
    }
    for (j, v) in p.iter().enumerate().skip(l) {
        if *v != h.phi(&p[l], sign * (j - l) as i64) {
            out.push(format!("vertex {j} is not φ^±{} of x_l", j - l));
        }
    }
    Ok(out)
}

/// A strip: the top row x₁…x_n y and the bottom row x₁ x′₂ … x′_n y.
#[derive(Clone, Debug, Serialize)]
pub struct Strip<V> {
    pub top: Vec<V>,
    pub bottom: Vec<V>,
    /// The bottom row with repeated vertices collapsed.
    pub result: Vec<V>,
    /// Left quasi-normal path from x₁ to y computed directly.
    pub direct: Vec<V>,
}

impl<V: PartialEq> Strip<V> {
    pub fn agrees(&self) -> bool {
        self.result == self.direct
    }
}

/// Extends the left quasi-normal path x₁…x_n by an edge x_n < y, replacing
/// triples from the far end back to x₁.
pub fn strip_replace<H: HatStructure + ?Sized>(h: &H, path: &[H::V], y: &H::V) -> Result<Strip<H::V>> {
    let (first, last) = match (path.first(), path.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::EmptySet),
    };
    if left_quasi_path(h, first, last)? != path {
        return Err(Error::Precondition("input is not a left quasi-normal path".into()));
    }
    if !h.lt_edge(last, y) {
        return Err(Error::Precondition(format!("{} < {} is not an edge", h.show(last), h.show(y))));
    }
    let n = path.len();
    let mut bottom = vec![y.clone(); n + 1];
    bottom[0] = first.clone();
    for i in (1..n).rev() {
        bottom[i] = h.alpha(&path[i - 1], &bottom[i + 1])?;
    }
    let mut result = bottom.clone();
    result.dedup();
    let mut top = path.to_vec();
    top.push(y.clone());
    Ok(Strip {
        top,
        bottom,
        result,
        direct: left_quasi_path(h, first, y)?,
    })
}

/// Neighbours of an X-vertex (given by any lift).
pub fn x_neighbors<H: HatStructure + ?Sized>(h: &H, a: &H::V) -> Vec<H::V> {
    let base = h.project(a);
    let top = h.phi(a, 1);
    let set: BTreeSet<H::V> = h
        .up(a)
        .into_iter()
        .filter(|c| *c != top)
        .map(|c| h.project(&c))
        .filter(|c| *c != base)
        .collect();
    set.into_iter().collect()
}

/// The lift of the X-vertex v lying in (u, φ(u)).
pub fn lift_above<H: HatStructure + ?Sized>(h: &H, u: &H::V, v: &H::V) -> Result<H::V> {
    let target = h.project(v);
    let top = h.phi(u, 1);
    let hits: Vec<H::V> = h
        .up(u)
        .into_iter()
        .filter(|c| *c != top && h.project(c) == target)
        .collect();
    match hits.len() {
        1 => Ok(hits.into_iter().next().unwrap()),
        0 => Err(Error::Precondition(format!("{} is not adjacent to {}", h.show(v), h.show(u)))),
        _ => Err(Error::Internal("several lifts in one Δ-interval".into())),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BGeodesic<V> {
    pub side: Side,
    /// Vertices of X (canonical representatives).
    pub path: Vec<V>,
    /// Admissible lift starting at the canonical lift of the first vertex.
    pub lift: Vec<V>,
}

impl<V> BGeodesic<V> {
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }
    pub fn is_empty(&self) -> bool {
        self.path.len() <= 1
    }
}

fn lift_from<H: HatStructure + ?Sized>(h: &H, a_hat: &H::V, b: &H::V, side: Side) -> Result<BGeodesic<H::V>> {
    let b0 = h.project(b);
    let n = h.period();
    let mut j = (h.rank(a_hat) - h.rank(&b0)).div_euclid(n);
    let mut tries = 0;
    while !h.le_t(a_hat, &h.phi(&b0, j))? {
        j += 1;
        tries += 1;
        step_guard(tries)?;
    }
    let nf = normal_form(h, a_hat, &h.phi(&b0, j), side)?;
    if nf.k != 0 {
        return Err(Error::Internal("minimal lift has a Δ tail".into()));
    }
    Ok(BGeodesic {
        side,
        path: nf.path.iter().map(|v| h.project(v)).collect(),
        lift: nf.path,
    })
}

/// The left (or right) B-geodesic from a to b in X.
pub fn b_geodesic<H: HatStructure + ?Sized>(h: &H, a: &H::V, b: &H::V, side: Side) -> Result<BGeodesic<H::V>> {
    lift_from(h, &h.project(a), b, side)
}

/// Rank gap along the lifted left B-geodesic; computed for two lifts of a
/// and required to agree.
pub fn bestvina_dist<H: HatStructure + ?Sized>(h: &H, a: &H::V, b: &H::V) -> Result<i64> {
    let a0 = h.project(a);
    let g0 = lift_from(h, &a0, b, Side::Left)?;
    let a1 = h.phi(&a0, 1);
    let g1 = lift_from(h, &a1, b, Side::Left)?;
    let d0 = h.rank(g0.lift.last().unwrap()) - h.rank(&a0);
    let d1 = h.rank(g1.lift.last().unwrap()) - h.rank(&a1);
    if d0 != d1 || g0.path != g1.path {
        return Err(Error::Internal("Bestvina distance depends on the lift".into()));
    }
    Ok(d0)
}

/// The exponents (m, n) of the four-lift configuration for basepoint a
/// and an edge xy of X.
pub fn mn_exponents<H: HatStructure + ?Sized>(h: &H, a: &H::V, x: &H::V, y: &H::V) -> Result<(i64, i64)> {
    let a0 = h.project(a);
    let px = lift_from(h, &a0, x, Side::Left)?;
    let py = lift_from(h, &a0, y, Side::Left)?;
    let xh = px.lift.last().unwrap();
    let yh = py.lift.last().unwrap();
    let y2 = lift_above(h, xh, y)?;
    let x2 = lift_above(h, yh, x)?;
    let n = h.period();
    let m = (h.rank(&x2) - h.rank(xh)) / n;
    let k = (h.rank(&y2) - h.rank(yh)) / n;
    if x2 != h.phi(xh, m) || y2 != h.phi(yh, k) {
        return Err(Error::Internal("lifts are not φ-translates".into()));
    }
    Ok((m, k))
}

/// Strictly decreasing, then strictly increasing.
pub fn is_unimodal(seq: &[i64]) -> bool {
    let mut rising = false;
    for w in seq.windows(2) {
        match w[1].cmp(&w[0]) {
            std::cmp::Ordering::Equal => return false,
            std::cmp::Ordering::Greater => rising = true,
            std::cmp::Ordering::Less if rising => return false,
            std::cmp::Ordering::Less => {}
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct BnpcOutcome<V> {
    pub geodesic: Vec<V>,
    pub distances: Vec<i64>,
    pub unimodal: bool,
}

/// d(a, x_i) along the left B-geodesic from b to c.
pub fn bnpc_profile<H: HatStructure + ?Sized>(h: &H, a: &H::V, b: &H::V, c: &H::V) -> Result<BnpcOutcome<H::V>> {
    let g = b_geodesic(h, b, c, Side::Left)?;
    let distances = g.path.iter().map(|x| bestvina_dist(h, a, x)).collect::<Result<Vec<_>>>()?;
    Ok(BnpcOutcome {
        unimodal: is_unimodal(&distances),
        geodesic: g.path,
        distances,
    })
}

/// Vertices of X within combinatorial distance r of `base`.
pub fn x_ball<H: HatStructure + ?Sized>(h: &H, base: &H::V, r: usize) -> Vec<(H::V, usize)> {
    let b = h.project(base);
    let mut dist = BTreeMap::from([(b.clone(), 0usize)]);
    let mut q = VecDeque::from([b.clone()]);
    let mut order = vec![(b, 0)];
    while let Some(v) = q.pop_front() {
        let d = dist[&v];
        if d == r {
            continue;
        }
        for w in x_neighbors(h, &v) {
            if !dist.contains_key(&w) {
                dist.insert(w.clone(), d + 1);
                order.push((w.clone(), d + 1));
                q.push_back(w);
            }
        }
    }
    order
}

/// The radius-r window of X around `base` as a finite complex: adjacency,
/// triangle cyclic orders read off lifts, f = rank mod period, and the
/// outermost sphere marked as boundary.
pub fn bestvina_window<H: HatStructure + ?Sized>(h: &H, base: &H::V, r: usize) -> Result<(Vec<H::V>, FiniteComplex)> {
    let ball = x_ball(h, base, r);
    let verts: Vec<H::V> = ball.iter().map(|(v, _)| v.clone()).collect();
    let index: BTreeMap<H::V, usize> = verts.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let n = h.period();
    let mut adj = vec![Vec::new(); verts.len()];
    for (i, v) in verts.iter().enumerate() {
        for w in x_neighbors(h, v) {
            if let Some(&j) = index.get(&w) {
                adj[i].push(j);
            }
        }
        adj[i].sort_unstable();
    }
    let mut triples = BTreeSet::new();
    for (i, v) in verts.iter().enumerate() {
        let lifts: Vec<(usize, i64)> = adj[i]
            .iter()
            .map(|&j| Ok((j, h.rank(&lift_above(h, v, &verts[j])?))))
            .collect::<Result<_>>()?;
        for &(j, rj) in &lifts {
            for &(k, rk) in &lifts {
                if rj < rk && adj[j].binary_search(&k).is_ok() {
                    triples.insert([i, j, k]);
                }
            }
        }
    }
    let c = FiniteComplex {
        names: verts.iter().map(|v| h.show(v)).collect(),
        types: verts.iter().map(|v| h.rank(v).rem_euclid(n) as usize).collect(),
        adj,
        triples,
        f: verts.iter().map(|v| h.rank(v).rem_euclid(n)).collect(),
        period: n,
        boundary: ball.iter().map(|(_, d)| *d == r).collect(),
        is_window: true,
        non_simplices: Vec::new(),
    };
    Ok((verts, c))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConvexReport {
    pub side: Option<Side>,
    pub local_pairs: usize,
    pub local_failures: Vec<String>,
    pub sampled_geodesics: usize,
    pub global_failures: Vec<String>,
}

impl ConvexReport {
    pub fn passed(&self) -> bool {
        self.local_failures.is_empty() && self.global_failures.is_empty()
    }
}

/// Local B-convexity of the full subcomplex on `members` (X-vertices), with
/// a sampled global geodesic check when the local test passes.
pub fn check_local_convex<H: HatStructure + ?Sized>(
    h: &H,
    members: &BTreeSet<H::V>,
    side: Side,
    samples: &[(H::V, H::V)],
) -> Result<ConvexReport> {
    let mut rep = ConvexReport {
        side: Some(side),
        ..Default::default()
    };
    for y in members {
        let top = h.phi(y, 1);
        let nb: Vec<H::V> = x_neighbors(h, y).into_iter().filter(|z| members.contains(z)).collect();
        let lifts: Vec<H::V> = nb.iter().map(|z| lift_above(h, y, z)).collect::<Result<_>>()?;
        for i in 0..lifts.len() {
            for j in i + 1..lifts.len() {
                rep.local_pairs += 1;
                let (bound, trivial) = match side {
                    Side::Left => (h.interval_meet(y, &lifts[i], &lifts[j])?, y.clone()),
                    Side::Right => (h.interval_join(y, &lifts[i], &lifts[j])?, top.clone()),
                };
                if let Some(m) = bound {
                    if m != trivial && !members.contains(&h.project(&m)) {
                        rep.local_failures.push(format!(
                            "at {}: {} of {} and {} is {}, outside Y",
                            h.show(y),
                            if side == Side::Left { "meet" } else { "join" },
                            h.show(&nb[i]),
                            h.show(&nb[j]),
                            h.show(&h.project(&m))
                        ));
                    }
                }
            }
        }
    }
    if rep.local_failures.is_empty() {
        for (a, b) in samples {
            rep.sampled_geodesics += 1;
            let g = b_geodesic(h, a, b, side)?;
            if let Some(out) = g.path.iter().find(|v| !members.contains(*v)) {
                rep.global_failures.push(format!(
                    "geodesic {} → {} leaves Y at {}",
                    h.show(a),
                    h.show(b),
                    h.show(out)
                ));
            }
        }
    }
    Ok(rep)
}

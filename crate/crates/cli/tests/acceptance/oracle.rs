//! Brute-force oracles written from the definitions, sharing no code with
//! the library beyond plain data types.

use std::collections::HashMap;

/// A graph on at most 16 vertices with the components of V∖C precomputed
/// for every C.
pub struct Gr {
    pub n: usize,
    comps: Vec<Vec<u32>>,
    memo: HashMap<(u32, u32), Vec<u32>>,
}

pub fn bits(m: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| m >> i & 1 == 1)
}

impl Gr {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Gr {
        let mut adj = vec![0u32; n];
        for &(u, v) in edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let full = (1u32 << n) - 1;
        let mut comps = Vec::with_capacity(1 << n);
        for c in 0..=full {
            let mut left = full & !c;
            let mut list = Vec::new();
            while left != 0 {
                let k = flood(&adj, left & left.wrapping_neg(), full & !c);
                list.push(k);
                left &= !k;
            }
            comps.push(list);
        }
        Gr {
            n,
            comps,
            memo: HashMap::new(),
        }
    }

    /// The subgraph induced on `keep`, relabelled to 0..|keep|, with the
    /// relabelling as a list of original indices.
    pub fn induced(edges: &[(usize, usize)], keep: u32) -> (Gr, Vec<usize>) {
        let idx: Vec<usize> = bits(keep).collect();
        let pos = |v: usize| idx.iter().position(|&w| w == v);
        let es: Vec<(usize, usize)> = edges
            .iter()
            .filter_map(|&(u, v)| Some((pos(u)?, pos(v)?)))
            .collect();
        (Gr::new(idx.len(), &es), idx)
    }

    /// C separates A from B: no path from A∖C to B∖C avoids C. Vacuous
    /// when A ⊆ C or B ⊆ C.
    pub fn separates(&self, c: u32, a: u32, b: u32) -> bool {
        let (a, b) = (a & !c, b & !c);
        a == 0 || b == 0 || self.comps[c as usize].iter().all(|k| k & a == 0 || k & b == 0)
    }

    /// Φ^A: union of the components of Λ∖C meeting A∖C.
    pub fn side(&self, c: u32, a: u32) -> u32 {
        self.comps[c as usize]
            .iter()
            .filter(|&&k| k & a & !c != 0)
            .fold(0, |x, k| x | k)
    }

    /// All minimal cuts between A and B. Separation is monotone under
    /// enlarging C, so a separating C is minimal iff no C∖{x} separates.
    pub fn mincuts(&mut self, a: u32, b: u32) -> Vec<u32> {
        if let Some(v) = self.memo.get(&(a, b)) {
            return v.clone();
        }
        let full = (1u32 << self.n) - 1;
        let sep: Vec<bool> = (0..=full).map(|c| self.separates(c, a, b)).collect();
        let out: Vec<u32> = (0..=full)
            .filter(|&c| sep[c as usize] && bits(c).all(|x| !sep[(c & !(1 << x)) as usize]))
            .collect();
        self.memo.insert((a, b), out.clone());
        out
    }
}

fn flood(adj: &[u32], start: u32, allowed: u32) -> u32 {
    let mut r = start & allowed;
    loop {
        let next = bits(r).fold(r, |m, v| m | adj[v]) & allowed;
        if next == r {
            return r;
        }
        r = next;
    }
}

/// A finite relation given by its strict part, with bound queries.
pub struct Rel {
    pub lt: Vec<Vec<bool>>,
}

impl Rel {
    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt[i][j]
    }

    pub fn poset_problems(&self) -> Vec<String> {
        let n = self.lt.len();
        let mut out = Vec::new();
        for i in 0..n {
            if self.lt[i][i] {
                out.push(format!("{i} < {i}"));
            }
            for j in 0..n {
                if i != j && self.lt[i][j] && self.lt[j][i] {
                    out.push(format!("{i} < {j} < {i}"));
                }
                for k in 0..n {
                    if self.lt[i][j] && self.lt[j][k] && !self.lt[i][k] {
                        out.push(format!("{i} < {j} < {k} but not {i} < {k}"));
                    }
                }
            }
        }
        out
    }

    fn least(&self, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&g| set.iter().all(|&l| self.le(g, l)))
    }

    fn greatest(&self, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&g| set.iter().all(|&l| self.le(l, g)))
    }

    pub fn upper(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.lt.len()).filter(|&k| self.le(i, k) && self.le(j, k)).collect()
    }

    pub fn lower(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.lt.len()).filter(|&k| self.le(k, i) && self.le(k, j)).collect()
    }

    pub fn sup(&self, i: usize, j: usize) -> Option<usize> {
        self.least(&self.upper(i, j))
    }

    pub fn inf(&self, i: usize, j: usize) -> Option<usize> {
        self.greatest(&self.lower(i, j))
    }
}

/// Mincut(A, B) with Φ₁ < Φ₂ iff Φ₁ ≠ Φ₂ and Φ₁^A ⊆ Φ₂^A.
pub fn mincut_family(g: &mut Gr, a: u32, b: u32) -> (Vec<u32>, Rel) {
    let sets = g.mincuts(a, b);
    let sides: Vec<u32> = sets.iter().map(|&c| g.side(c, a)).collect();
    let n = sets.len();
    let lt = (0..n)
        .map(|i| (0..n).map(|j| i != j && sides[i] & !sides[j] == 0).collect())
        .collect();
    (sets, Rel { lt })
}

/// The four admissibility conditions, condition 2 read with ≤ (A and B
/// lie in Mincut(A, B) themselves).
pub fn admissibility(g: &mut Gr, q: &[u32], r: &Rel) -> Vec<String> {
    let n = q.len();
    let mut out: Vec<String> = r.poset_problems().into_iter().map(|p| format!("1: {p}")).collect();
    for i in 0..n {
        for j in 0..n {
            if !r.lt[i][j] {
                continue;
            }
            for c in g.mincuts(q[i], q[j]) {
                match q.iter().position(|&x| x == c) {
                    Some(k) if r.le(i, k) && r.le(k, j) => {}
                    Some(_) => out.push(format!("2: {c:#b} not between {:#b} and {:#b}", q[i], q[j])),
                    None => out.push(format!("2: {c:#b} missing from the family")),
                }
            }
            for k in 0..n {
                if r.lt[j][k] && !g.separates(q[j], q[i], q[k]) {
                    out.push(format!("3: {:#b} does not separate {:#b} from {:#b}", q[j], q[i], q[k]));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !r.upper(i, j).is_empty() {
                match r.sup(i, j) {
                    Some(s) if q[s] & !(q[i] | q[j]) == 0 => {}
                    Some(_) => out.push(format!("4: join of {i},{j} leaves the union")),
                    None => out.push(format!("4: {i},{j} have no join")),
                }
            }
            if !r.lower(i, j).is_empty() {
                match r.inf(i, j) {
                    Some(s) if q[s] & !(q[i] | q[j]) == 0 => {}
                    Some(_) => out.push(format!("4: meet of {i},{j} leaves the union")),
                    None => out.push(format!("4: {i},{j} have no meet")),
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Braids: Δ^k · s₁ ⋯ s_r with permutation factors, normalised by pushing
// generators left until every adjacent pair is left-weighted.

pub type P = Vec<u8>;

/// (a∘b)[i] = a[b[i]], so the permutation of a word is the product of its
/// letters in order.
pub fn comp(a: &[u8], b: &[u8]) -> P {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn inv(a: &[u8]) -> P {
    let mut o = vec![0; a.len()];
    for (i, &v) in a.iter().enumerate() {
        o[v as usize] = i as u8;
    }
    o
}

pub fn len(a: &[u8]) -> usize {
    let mut k = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            k += usize::from(a[i] > a[j]);
        }
    }
    k
}

fn ident(n: usize) -> P {
    (0..n as u8).collect()
}

fn transp(n: usize, j: usize) -> P {
    let mut p = ident(n);
    p.swap(j, j + 1);
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Nf {
    pub k: i64,
    pub f: Vec<P>,
}

#[derive(Clone, Debug)]
pub enum Tok {
    Pos(P),
    DeltaInv,
}

pub struct BraidOracle {
    pub n: usize,
    pub w0: P,
}

impl BraidOracle {
    pub fn new(n: usize) -> BraidOracle {
        BraidOracle {
            n,
            w0: (0..n as u8).rev().collect(),
        }
    }

    /// Conjugation by Δ, an involution on permutations.
    pub fn tau(&self, p: &[u8]) -> P {
        comp(&comp(&self.w0, p), &self.w0)
    }

    /// σ_i^{±1}, i ≥ 1; σ_i⁻¹ = (σ_i⁻¹Δ)·Δ⁻¹ with σ_i⁻¹Δ positive.
    pub fn letter(&self, g: i64) -> Vec<Tok> {
        let t = transp(self.n, g.unsigned_abs() as usize - 1);
        if g > 0 {
            vec![Tok::Pos(t)]
        } else {
            vec![Tok::Pos(comp(&t, &self.w0)), Tok::DeltaInv]
        }
    }

    pub fn word(&self, w: &[i64]) -> Vec<Tok> {
        w.iter().flat_map(|&g| self.letter(g)).collect()
    }

    pub fn tokens(&self, x: &Nf) -> Vec<Tok> {
        let mut t = Vec::new();
        if x.k >= 0 {
            t.extend((0..x.k).map(|_| Tok::Pos(self.w0.clone())));
        } else {
            t.extend((0..-x.k).map(|_| Tok::DeltaInv));
        }
        t.extend(x.f.iter().cloned().map(Tok::Pos));
        t
    }

    /// x⁻¹ = s_r⁻¹ ⋯ s₁⁻¹ Δ^{−k}, with s⁻¹ = (s⁻¹Δ)·Δ⁻¹.
    pub fn inverse_tokens(&self, x: &Nf) -> Vec<Tok> {
        let mut t = Vec::new();
        for s in x.f.iter().rev() {
            t.push(Tok::Pos(comp(&inv(s), &self.w0)));
            t.push(Tok::DeltaInv);
        }
        if x.k >= 0 {
            t.extend((0..x.k).map(|_| Tok::DeltaInv));
        } else {
            t.extend((0..-x.k).map(|_| Tok::Pos(self.w0.clone())));
        }
        t
    }

    pub fn normalize(&self, toks: &[Tok]) -> Nf {
        let mut k = 0i64;
        let mut f: Vec<P> = Vec::new();
        for t in toks {
            match t {
                Tok::Pos(p) => f.push(p.clone()),
                Tok::DeltaInv => {
                    k -= 1;
                    f = f.iter().map(|p| self.tau(p)).collect();
                }
            }
        }
        let id = ident(self.n);
        let full = len(&self.w0);
        loop {
            let mut changed = false;
            f.retain(|p| *p != id);
            if let Some(i) = f.iter().position(|p| len(p) == full) {
                f.remove(i);
                for p in &mut f[..i] {
                    *p = self.tau(p);
                }
                k += 1;
                continue;
            }
            for i in 0..f.len().saturating_sub(1) {
                for j in 0..self.n - 1 {
                    let t = transp(self.n, j);
                    let b2 = comp(&t, &f[i + 1]);
                    let a2 = comp(&f[i], &t);
                    if len(&b2) < len(&f[i + 1]) && len(&a2) > len(&f[i]) {
                        f[i] = a2;
                        f[i + 1] = b2;
                        changed = true;
                        break;
                    }
                }
            }
            if !changed {
                return Nf { k, f };
            }
        }
    }

    pub fn from_word(&self, w: &[i64]) -> Nf {
        self.normalize(&self.word(w))
    }

    pub fn mul(&self, x: &Nf, y: &Nf) -> Nf {
        let mut t = self.tokens(x);
        t.extend(self.tokens(y));
        self.normalize(&t)
    }

    /// x⁻¹y.
    pub fn quot(&self, x: &Nf, y: &Nf) -> Nf {
        let mut t = self.inverse_tokens(x);
        t.extend(self.tokens(y));
        self.normalize(&t)
    }

    pub fn simple(&self, p: &[u8]) -> Nf {
        self.normalize(&[Tok::Pos(p.to_vec())])
    }

    pub fn delta_pow(&self, k: i64) -> Nf {
        Nf { k, f: Vec::new() }
    }

    /// Non-trivial simple elements (Δ included).
    pub fn simples(&self) -> Vec<P> {
        let mut out = Vec::new();
        let mut cur = ident(self.n);
        perms(0, &mut cur, &mut out);
        out.retain(|p| *p != ident(self.n));
        out
    }
}

fn perms(k: usize, cur: &mut P, out: &mut Vec<P>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        perms(k + 1, cur, out);
        cur.swap(k, i);
    }
}

/// Hat-graph distances from e in B_n up to radius r: neighbours of g are
/// g·s and g·s⁻¹ for every non-trivial simple s.
pub fn braid_ball(o: &BraidOracle, r: usize) -> HashMap<Nf, usize> {
    let mut steps: Vec<Vec<Tok>> = Vec::new();
    for s in o.simples() {
        let x = o.simple(&s);
        steps.push(o.tokens(&x));
        steps.push(o.inverse_tokens(&x));
    }
    let e = o.delta_pow(0);
    let mut dist = HashMap::from([(e.clone(), 0)]);
    let mut frontier = vec![e];
    for d in 1..=r {
        let mut next = Vec::new();
        for g in &frontier {
            let base = o.tokens(g);
            for s in &steps {
                let mut t = base.clone();
                t.extend(s.iter().cloned());
                let h = o.normalize(&t);
                if !dist.contains_key(&h) {
                    dist.insert(h.clone(), d);
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    dist
}

// ---------------------------------------------------------------------------
// Z^n with simples {0,1}^n and Δ = (1,…,1).

/// Hat-graph distance: steps ±s with s ∈ {0,1}^n∖0, so the positive and
/// negative parts of y − x are covered independently.
pub fn zn_hat_distance(x: &[i64], y: &[i64]) -> usize {
    let v: Vec<i64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let hi = v.iter().copied().max().unwrap_or(0).max(0);
    let lo = (-v.iter().copied().min().unwrap_or(0)).max(0);
    (hi + lo) as usize
}

/// Left normal form path from x to y: the steps of d − min d in
/// decreasing support order, then |min d| steps of φ^{±1}.
pub fn zn_left_nf(x: &[i64], y: &[i64]) -> (Vec<Vec<i64>>, i64) {
    let d: Vec<i64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let m = *d.iter().min().unwrap();
    let top = d.iter().map(|v| v - m).max().unwrap();
    let mut path = vec![x.to_vec()];
    let mut cur = x.to_vec();
    for i in 1..=top {
        for (c, v) in cur.iter_mut().zip(&d) {
            *c += i64::from(v - m >= i);
        }
        path.push(cur.clone());
    }
    for _ in 0..m.abs() {
        cur.iter_mut().for_each(|c| *c += m.signum());
        path.push(cur.clone());
    }
    (path, m)
}

/// Right normal form: the same steps in increasing support order.
pub fn zn_right_nf(x: &[i64], y: &[i64]) -> Vec<Vec<i64>> {
    let d: Vec<i64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let m = *d.iter().min().unwrap();
    let top = d.iter().map(|v| v - m).max().unwrap();
    let mut path = vec![x.to_vec()];
    let mut cur = x.to_vec();
    for i in (1..=top).rev() {
        for (c, v) in cur.iter_mut().zip(&d) {
            *c += i64::from(v - m >= i);
        }
        path.push(cur.clone());
    }
    for _ in 0..m.abs() {
        cur.iter_mut().for_each(|c| *c += m.signum());
        path.push(cur.clone());
    }
    path
}

/// Iterated α for x ≤ y: x_i = min(x + i, y).
pub fn zn_quasi(x: &[i64], y: &[i64]) -> Vec<Vec<i64>> {
    let top = y.iter().zip(x).map(|(a, b)| a - b).max().unwrap_or(0);
    (0..=top)
        .map(|i| x.iter().zip(y).map(|(a, b)| (a + i).min(*b)).collect())
        .collect()
}

/// Bestvina distance: lift b so that b̂ − a ≥ 0 has a zero coordinate,
/// then take the rank gap.
pub fn zn_bestvina(a: &[i64], b: &[i64]) -> i64 {
    let d: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let m = *d.iter().min().unwrap();
    d.iter().map(|v| v - m).sum()
}

/// The exponents (m, n) for basepoint a and edge xy, from lifts computed
/// coordinatewise.
pub fn zn_mn(a: &[i64], x: &[i64], y: &[i64]) -> (i64, i64) {
    let lift = |from: &[i64], v: &[i64]| -> Vec<i64> {
        let m = v.iter().zip(from).map(|(p, q)| p - q).min().unwrap();
        v.iter().map(|c| c - m).collect()
    };
    // the lift of v strictly inside (u, u + 1): u ≤ v̂ ≤ u + 1, v̂ ∉ {u, u+1}
    let above = |u: &[i64], v: &[i64]| -> Vec<i64> {
        let c = u.iter().zip(v).map(|(p, q)| p - q).max().unwrap();
        v.iter().map(|q| q + c).collect()
    };
    let xh = lift(a, x);
    let yh = lift(a, y);
    let y2 = above(&xh, y);
    let x2 = above(&yh, x);
    (x2[0] - xh[0], y2[0] - yh[0])
}

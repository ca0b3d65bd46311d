use std::collections::{HashMap, VecDeque};

use garside_wb::garside::{bnpc_profile, certify, left_nf, left_quasi_path, mn_exponents, right_nf, strip_replace, x_neighbors, HatStructure};
use garside_wb::instances::sampling::braid_word;
use garside_wb::instances::{Braid, BraidProvider, ZnProvider};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{
    braid_ball, len, zn_bestvina, zn_hat_distance, zn_left_nf, zn_mn, zn_quasi, zn_right_nf, BraidOracle, Nf, Tok,
};
use crate::{Outcome, Tally};

const PER_N: usize = 500;
const BOUND: i64 = 6;
const WORD: usize = 10;
const EDGES: usize = 1000;
const GEODESICS: usize = 500;

fn rng(tag: u64, n: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(tag << 8 | n as u64)
}

fn point(r: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..n).map(|_| r.gen_range(lo..=hi)).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Strictly decreasing, then strictly increasing.
fn unimodal(s: &[i64]) -> bool {
    let turn = s.windows(2).position(|w| w[1] > w[0]).unwrap_or(s.len().saturating_sub(1));
    s[..=turn].windows(2).all(|w| w[1] < w[0]) && s[turn..].windows(2).all(|w| w[1] > w[0])
}

/// BFS in the hat graph of Z^n on a box, checking the closed-form distance.
fn zn_closed_form_matches_bfs(n: usize, r: usize) -> bool {
    let origin = vec![0i64; n];
    let mut dist = HashMap::from([(origin.clone(), 0usize)]);
    let mut q = VecDeque::from([origin.clone()]);
    while let Some(v) = q.pop_front() {
        let d = dist[&v];
        if d == r {
            continue;
        }
        for m in 1u32..1 << n {
            for sign in [1, -1] {
                let w: Vec<i64> = v.iter().enumerate().map(|(i, c)| c + sign * i64::from(m >> i & 1)).collect();
                if !dist.contains_key(&w) {
                    dist.insert(w.clone(), d + 1);
                    q.push_back(w);
                }
            }
        }
    }
    dist.iter().all(|(v, &d)| zn_hat_distance(&origin, v) == d)
}

fn zn_nf(n: usize, t: &mut Tally) {
    let z = ZnProvider::new(n).unwrap();
    let mut r = rng(1, n);
    for _ in 0..PER_N {
        let x = point(&mut r, n, -BOUND, BOUND);
        let y = point(&mut r, n, -BOUND, BOUND);
        let tag = format!("Z^{n} {x:?} → {y:?}");
        let l = left_nf(&z, &x, &y).unwrap();
        let rt = right_nf(&z, &x, &y).unwrap();
        let cert = [certify(&z, &l).unwrap(), certify(&z, &rt).unwrap()].concat();
        t.check(cert.is_empty(), || format!("{tag}: {cert:?}"));
        let (path, k) = zn_left_nf(&x, &y);
        t.check(l.path == path && l.k == k, || format!("{tag}: left normal form {:?}", l.path));
        t.check(rt.path == zn_right_nf(&x, &y), || format!("{tag}: right normal form {:?}", rt.path));
        let m = x.iter().zip(&y).map(|(a, b)| a - b).max().unwrap().max(0);
        let target = z.phi(&y, m);
        let len = left_nf(&z, &x, &target).unwrap().len();
        t.check(len == zn_hat_distance(&x, &target), || format!("{tag}: length {len}"));

        let x = point(&mut r, n, -BOUND, BOUND);
        let y = add(&x, &point(&mut r, n, 0, BOUND));
        let mask = r.gen_range(1u32..1 << n);
        let w: Vec<i64> = y.iter().enumerate().map(|(i, c)| c + i64::from(mask >> i & 1)).collect();
        let quasi = left_quasi_path(&z, &x, &y).unwrap();
        t.check(quasi == zn_quasi(&x, &y), || format!("Z^{n} quasi path {x:?} → {y:?}"));
        let s = strip_replace(&z, &quasi, &w).unwrap();
        t.check(s.result == zn_quasi(&x, &w), || format!("Z^{n} strip {x:?} → {y:?} → {w:?}"));

        let x = point(&mut r, n, -BOUND, BOUND);
        let y = add(&x, &point(&mut r, n, 0, BOUND));
        let w = add(&y, &point(&mut r, n, 0, BOUND));
        let a = z.alpha(&x, &w).unwrap();
        let a2 = z.alpha(&x, &z.alpha(&y, &w).unwrap()).unwrap();
        let expect: Vec<i64> = x.iter().zip(&w).map(|(p, q)| (p + 1).min(*q)).collect();
        t.check(a == expect && a2 == expect, || format!("Z^{n} α on {x:?} ≤ {y:?} ≤ {w:?}"));
    }
}

fn to_nf(b: &Braid) -> Nf {
    Nf {
        k: b.inf,
        f: b.factors.clone(),
    }
}

fn positive(r: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    braid_word(r, n, WORD).into_iter().map(i64::abs).collect()
}

/// X·Δ^k then the factors one at a time, τ^k-twisted so Δ^k moves to the end.
fn nf_vertices(o: &BraidOracle, x: &Nf, g: &Nf) -> Vec<Nf> {
    let mut out = vec![x.clone()];
    let mut cur = x.clone();
    for s in &g.f {
        let t = if g.k % 2 == 0 { s.clone() } else { o.tau(s) };
        cur = o.mul(&cur, &o.simple(&t));
        out.push(cur.clone());
    }
    for _ in 0..g.k.abs() {
        cur = o.mul(&cur, &o.delta_pow(g.k.signum()));
        out.push(cur.clone());
    }
    out
}

/// Iterated α for x ≤ y: Δ while possible, then the factors.
fn quasi_vertices(o: &BraidOracle, x: &Nf, g: &Nf) -> Vec<Nf> {
    let mut out = vec![x.clone()];
    let mut cur = x.clone();
    for _ in 0..g.k {
        cur = o.mul(&cur, &o.delta_pow(1));
        out.push(cur.clone());
    }
    for s in &g.f {
        cur = o.mul(&cur, &o.simple(s));
        out.push(cur.clone());
    }
    out
}

fn ball_radius(n: usize) -> usize {
    match n {
        2 => 8,
        3 => 4,
        4 => 3,
        _ => 2,
    }
}

/// Returns (pairs whose distance was fixed exactly by the ball, radius).
fn braid_nf(n: usize, t: &mut Tally) -> (usize, usize) {
    let b = BraidProvider::new(n).unwrap();
    let o = BraidOracle::new(n);
    let radius = ball_radius(n);
    let ball = braid_ball(&o, radius);
    let mut exact = 0;
    let mut r = rng(2, n);
    let nfs = |v: &[Braid]| v.iter().map(to_nf).collect::<Vec<_>>();
    for _ in 0..PER_N {
        let (u, v) = (braid_word(&mut r, n, WORD), braid_word(&mut r, n, WORD));
        let tag = format!("B_{n} {u:?} → {v:?}");
        let (x, y) = (b.from_word(&u).unwrap(), b.from_word(&v).unwrap());
        let (xo, yo) = (o.from_word(&u), o.from_word(&v));
        t.check(to_nf(&x) == xo && to_nf(&y) == yo, || format!("{tag}: stored normal form"));
        let l = left_nf(&b, &x, &y).unwrap();
        let rt = right_nf(&b, &x, &y).unwrap();
        let cert = [certify(&b, &l).unwrap(), certify(&b, &rt).unwrap()].concat();
        t.check(cert.is_empty(), || format!("{tag}: {cert:?}"));
        t.check(l.len() == rt.len(), || format!("{tag}: left and right lengths differ"));
        let g = o.quot(&xo, &yo);
        t.check(l.k == g.k && nfs(&l.path) == nf_vertices(&o, &xo, &g), || format!("{tag}: left normal form"));
        let m = (-g.k).max(0);
        let lifted = o.mul(&g, &o.delta_pow(m));
        let len = left_nf(&b, &x, &b.phi(&y, m)).unwrap().len();
        t.check(len == lifted.f.len() + lifted.k as usize, || format!("{tag}: length {len}"));
        match ball.get(&lifted) {
            Some(&d) => {
                exact += 1;
                t.check(d == len, || format!("{tag}: length {len} ≠ distance {d}"));
            }
            None => t.check(len > radius, || format!("{tag}: length {len} but outside the radius-{radius} ball")),
        }

        let u = braid_word(&mut r, n, WORD);
        let p = positive(&mut r, n);
        let simples = o.simples();
        let s = &simples[r.gen_range(0..simples.len())];
        let x = b.from_word(&u).unwrap();
        let y = b.mul(&x, &b.from_word(&p).unwrap());
        let w = b.mul_simple(&y, s);
        let xo = o.from_word(&u);
        let mut toks = o.word(&u);
        toks.extend(o.word(&p));
        toks.push(Tok::Pos(s.clone()));
        let wo = o.normalize(&toks);
        t.check(to_nf(&w) == wo, || format!("B_{n} strip endpoint"));
        let quasi = left_quasi_path(&b, &x, &y).unwrap();
        let st = strip_replace(&b, &quasi, &w).unwrap();
        t.check(nfs(&st.result) == quasi_vertices(&o, &xo, &o.quot(&xo, &wo)), || {
            format!("B_{n} strip {u:?} · {p:?} · {s:?}")
        });

        let u = braid_word(&mut r, n, WORD);
        let (p1, p2) = (positive(&mut r, n), positive(&mut r, n));
        let x = b.from_word(&u).unwrap();
        let y = b.mul(&x, &b.from_word(&p1).unwrap());
        let z = b.mul(&y, &b.from_word(&p2).unwrap());
        let a = b.alpha(&x, &z).unwrap();
        let a2 = b.alpha(&x, &b.alpha(&y, &z).unwrap()).unwrap();
        let xo = o.from_word(&u);
        let g = o.quot(&xo, &to_nf(&z));
        let expect = if g.k > 0 {
            o.mul(&xo, &o.delta_pow(1))
        } else if let Some(s) = g.f.first() {
            o.mul(&xo, &o.simple(s))
        } else {
            xo.clone()
        };
        t.check(to_nf(&a) == expect && to_nf(&a2) == expect, || format!("B_{n} α on {u:?}, {p1:?}, {p2:?}"));
    }
    (exact, radius)
}

pub fn normal_forms() -> Outcome {
    let mut t = Tally::new();
    for n in 2..=3 {
        t.check(zn_closed_form_matches_bfs(n, 4), || format!("Z^{n} closed-form distance disagrees with BFS"));
    }
    let mut notes = Vec::new();
    for n in 2..=5 {
        zn_nf(n, &mut t);
        let (exact, radius) = braid_nf(n, &mut t);
        notes.push(format!("B_{n} {exact}/{PER_N} within BFS radius {radius}"));
    }
    let mut out = t.outcome("normal-form");
    out.detail = format!(
        "{} pairs + strips + triples per family; {}; {}",
        PER_N * 4,
        notes.join(", "),
        out.detail
    );
    out
}

/// (m, n) in B_n from lifts: x̂ = x·Δ^{−inf(a⁻¹x)}, and the lift of y above
/// x̂ is y·Δ^{−inf(x̂⁻¹y)}.
fn braid_mn(o: &BraidOracle, a: &Nf, x: &Nf, y: &Nf) -> Option<(i64, i64)> {
    let hat = |base: &Nf, v: &Nf| o.mul(v, &o.delta_pow(-o.quot(base, v).k));
    let (xh, yh) = (hat(a, x), hat(a, y));
    let (y2, x2) = (hat(&xh, y), hat(&yh, x));
    let step = o.quot(&xh, &y2);
    if step.k != 0 || step.f.len() != 1 {
        return None;
    }
    let m = o.quot(&xh, &x2);
    let n = o.quot(&yh, &y2);
    (m.f.is_empty() && n.f.is_empty()).then_some((m.k, n.k))
}

/// Sum of factor lengths of a⁻¹b: the rank gap of the Δ-free lift.
fn braid_bestvina(o: &BraidOracle, a: &Nf, b: &Nf) -> i64 {
    o.quot(a, b).f.iter().map(|s| len(s) as i64).sum()
}

fn same_vertex(o: &BraidOracle, a: &Nf, b: &Nf) -> bool {
    o.quot(a, b).f.is_empty()
}

fn zn_curvature(n: usize, t: &mut Tally) {
    let z = ZnProvider::new(n).unwrap();
    let mut r = rng(3, n);
    for _ in 0..EDGES {
        let a = z.project(&point(&mut r, n, -BOUND, BOUND));
        let x = z.project(&point(&mut r, n, -BOUND, BOUND));
        let nb = x_neighbors(&z, &x);
        let y = nb[r.gen_range(0..nb.len())].clone();
        let lib = mn_exponents(&z, &a, &x, &y).unwrap();
        let mn = zn_mn(&a, &x, &y);
        t.check(lib == mn && matches!(mn, (0, 1) | (1, 0)), || format!("Z^{n} a={a:?} x={x:?} y={y:?}: {lib:?} vs {mn:?}"));
    }
    for _ in 0..GEODESICS {
        let a = z.project(&point(&mut r, n, -BOUND, BOUND));
        let b = z.project(&point(&mut r, n, -BOUND, BOUND));
        let c = z.project(&point(&mut r, n, -BOUND, BOUND));
        let p = bnpc_profile(&z, &a, &b, &c).unwrap();
        let c_hat = z.phi(&c, -c.iter().zip(&b).map(|(p, q)| p - q).min().unwrap());
        let (expect, _) = zn_left_nf(&b, &c_hat);
        let same = p.geodesic.len() == expect.len()
            && p.geodesic.iter().zip(&expect).all(|(u, v)| z.project(u) == z.project(v));
        let d: Vec<i64> = expect.iter().map(|v| zn_bestvina(&a, v)).collect();
        t.check(same && p.distances == d && unimodal(&d), || format!("Z^{n} a={a:?} b={b:?} c={c:?}: {d:?}"));
    }
}

fn braid_curvature(n: usize, t: &mut Tally) {
    let b = BraidProvider::new(n).unwrap();
    let o = BraidOracle::new(n);
    let mut r = rng(4, n);
    let vertex = |r: &mut ChaCha8Rng| {
        let w = braid_word(r, n, WORD);
        (b.project(&b.from_word(&w).unwrap()), w)
    };
    for _ in 0..EDGES {
        let (a, _) = vertex(&mut r);
        let (x, _) = vertex(&mut r);
        let nb = x_neighbors(&b, &x);
        if nb.is_empty() {
            continue;
        }
        let y = nb[r.gen_range(0..nb.len())].clone();
        let lib = mn_exponents(&b, &a, &x, &y).unwrap();
        let mn = braid_mn(&o, &to_nf(&a), &to_nf(&x), &to_nf(&y));
        t.check(mn == Some(lib) && matches!(lib, (0, 1) | (1, 0)), || {
            format!("B_{n} a={} x={} y={}: {lib:?} vs {mn:?}", b.show(&a), b.show(&x), b.show(&y))
        });
    }
    for _ in 0..GEODESICS {
        let (a, _) = vertex(&mut r);
        let (bb, _) = vertex(&mut r);
        let (c, _) = vertex(&mut r);
        let p = bnpc_profile(&b, &a, &bb, &c).unwrap();
        let (ao, bo, co) = (to_nf(&a), to_nf(&bb), to_nf(&c));
        let g = o.quot(&bo, &co);
        // the Δ-free lift starts at b·Δ^k
        let g0 = Nf { k: 0, f: g.f.clone() };
        let expect = nf_vertices(&o, &o.mul(&bo, &o.delta_pow(g.k)), &g0);
        let path: Vec<Nf> = p.geodesic.iter().map(to_nf).collect();
        let same = path.len() == expect.len() && path.iter().zip(&expect).all(|(u, v)| same_vertex(&o, u, v));
        let d: Vec<i64> = expect.iter().map(|v| braid_bestvina(&o, &ao, v)).collect();
        t.check(same && p.distances == d && unimodal(&d), || {
            format!("B_{n} a={} b={} c={}: {d:?}", b.show(&a), b.show(&bb), b.show(&c))
        });
    }
}

pub fn curvature() -> Outcome {
    let mut t = Tally::new();
    for n in 2..=5 {
        zn_curvature(n, &mut t);
        braid_curvature(n, &mut t);
    }
    let mut out = t.outcome("curvature");
    out.detail = format!("Z^2..Z^5 and B_2..B_5, {EDGES} edges and {GEODESICS} geodesics each, {}", out.detail);
    out
}

//! Sampled property runs over a hat structure: normal-form certificates,
//! shortest-path lengths, strips, the initial-segment property, and the
//! curvature statements on the Bestvina complex.

use std::collections::HashMap;

use serde::Serialize;

use super::{
    bnpc_profile, certify, down, left_nf, left_quasi_path, mn_exponents, right_nf, strip_replace, x_neighbors,
    HatStructure, Side,
};
use crate::error::Result;

/// Distance in X̂¹ by bidirectional search; None once either side has
/// visited more than `cap` vertices.
pub fn hat_distance<H: HatStructure + ?Sized>(h: &H, x: &H::V, y: &H::V, cap: usize) -> Option<usize> {
    if x == y {
        return Some(0);
    }
    let nb = |v: &H::V| {
        let mut out = h.up(v);
        out.extend(down(h, v));
        out
    };
    let mut fa: HashMap<H::V, usize> = HashMap::from([(x.clone(), 0)]);
    let mut fb: HashMap<H::V, usize> = HashMap::from([(y.clone(), 0)]);
    let mut la = vec![x.clone()];
    let mut lb = vec![y.clone()];
    let (mut da, mut db) = (0, 0);
    loop {
        let expand_a = la.len() <= lb.len();
        let (front, seen, other, depth) = if expand_a {
            (&mut la, &mut fa, &fb, &mut da)
        } else {
            (&mut lb, &mut fb, &fa, &mut db)
        };
        *depth += 1;
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        for v in front.iter() {
            for w in nb(v) {
                if let Some(&d) = other.get(&w) {
                    let tot = *depth + d;
                    best = Some(best.map_or(tot, |b: usize| b.min(tot)));
                }
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), *depth);
                    next.push(w);
                }
            }
        }
        if best.is_some() {
            return best;
        }
        if next.is_empty() || seen.len() > cap {
            return None;
        }
        *front = next;
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct NfSuite {
    pub pairs: usize,
    pub certificate_failures: Vec<String>,
    pub length_checked: usize,
    pub length_skipped: usize,
    pub length_mismatches: Vec<String>,
    pub strips: usize,
    pub strip_mismatches: Vec<String>,
    pub triples: usize,
    pub initial_segment_failures: Vec<String>,
    pub monotone_failures: Vec<String>,
}

impl NfSuite {
    pub fn passed(&self) -> bool {
        self.certificate_failures.is_empty()
            && self.length_mismatches.is_empty()
            && self.strip_mismatches.is_empty()
            && self.initial_segment_failures.is_empty()
            && self.monotone_failures.is_empty()
    }
}

/// Runs the normal-form checks. `pairs` are (x, y); `steps` give for each
/// pair a simple step appended after y for the strip check; `triples` are
/// x ≤_t y ≤_t z.
pub fn nf_suite<H: HatStructure + ?Sized>(
    h: &H,
    pairs: &[(H::V, H::V)],
    steps: &[H::V],
    triples: &[(H::V, H::V, H::V)],
    bfs_cap: usize,
) -> Result<NfSuite> {
    let mut s = NfSuite::default();
    for (i, (x, y)) in pairs.iter().enumerate() {
        s.pairs += 1;
        let left = left_nf(h, x, y)?;
        let right = right_nf(h, x, y)?;
        for nf in [&left, &right] {
            for f in certify(h, nf)? {
                s.certificate_failures.push(format!("{} → {}: {f}", h.show(x), h.show(y)));
            }
        }
        if left.len() != right.len() {
            s.length_mismatches.push(format!(
                "{} → {}: left length {} ≠ right length {}",
                h.show(x),
                h.show(y),
                left.len(),
                right.len()
            ));
        }
        // shortest-path claim is for x ≤_t target; lift y minimally above x
        let mut target = y.clone();
        let mut m = 0;
        while !h.le_t(x, &target)? {
            m += 1;
            target = h.phi(y, m);
        }
        let nf = left_nf(h, x, &target)?;
        match hat_distance(h, x, &target, bfs_cap) {
            Some(d) => {
                s.length_checked += 1;
                if d != nf.len() {
                    s.length_mismatches.push(format!(
                        "{} → {}: normal form length {} ≠ distance {d}",
                        h.show(x),
                        h.show(&target),
                        nf.len()
                    ));
                }
            }
            None => s.length_skipped += 1,
        }
        if let Some(w) = steps.get(i) {
            if h.le_t(x, y)? {
                s.strips += 1;
                let path = left_quasi_path(h, x, y)?;
                let strip = strip_replace(h, &path, w)?;
                if !strip.agrees() {
                    s.strip_mismatches.push(format!("{} → {} then {}", h.show(x), h.show(y), h.show(w)));
                }
            }
        }
    }
    for (x, y, z) in triples {
        s.triples += 1;
        let z1 = h.alpha(y, z)?;
        if h.alpha(x, z)? != h.alpha(x, &z1)? {
            s.initial_segment_failures
                .push(format!("x={} y={} z={}", h.show(x), h.show(y), h.show(z)));
        }
        if x != y && y != z {
            let a = left_quasi_path(h, x, y)?.len();
            let b = left_quasi_path(h, x, z)?.len();
            if a > b {
                s.monotone_failures.push(format!("x={} y={} z={}", h.show(x), h.show(y), h.show(z)));
            }
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CurvatureSuite {
    pub edges: usize,
    pub mn_failures: Vec<String>,
    pub geodesics: usize,
    pub longest_geodesic: usize,
    pub unimodal_failures: Vec<String>,
}

impl CurvatureSuite {
    pub fn passed(&self) -> bool {
        self.mn_failures.is_empty() && self.unimodal_failures.is_empty()
    }
}

/// Lemma-mn outcomes on (a, x) with y a neighbour chosen by `pick`, and
/// unimodality of d(a, ·) along geodesics for (a, b, c).
pub fn curvature_suite<H: HatStructure + ?Sized>(
    h: &H,
    edges: &[(H::V, H::V, usize)],
    geodesics: &[(H::V, H::V, H::V)],
) -> Result<CurvatureSuite> {
    let mut s = CurvatureSuite::default();
    for (a, x, pick) in edges {
        let nb = x_neighbors(h, x);
        if nb.is_empty() {
            continue;
        }
        let y = &nb[pick % nb.len()];
        s.edges += 1;
        let (m, n) = mn_exponents(h, a, x, y)?;
        if !matches!((m, n), (0, 1) | (1, 0)) {
            s.mn_failures
                .push(format!("a={} x={} y={}: (m,n)=({m},{n})", h.show(a), h.show(x), h.show(y)));
        }
    }
    for (a, b, c) in geodesics {
        s.geodesics += 1;
        let o = bnpc_profile(h, a, b, c)?;
        s.longest_geodesic = s.longest_geodesic.max(o.geodesic.len().saturating_sub(1));
        if !o.unimodal {
            s.unimodal_failures
                .push(format!("a={} b={} c={}: {:?}", h.show(a), h.show(b), h.show(c), o.distances));
        }
    }
    Ok(s)
}

/// Checks that left B-geodesics are geodesics in X¹ (BFS in X) and that
/// the left geodesic from a to b is the reverse of the one from b to a.
pub fn bgeo_checks<H: HatStructure + ?Sized>(h: &H, pairs: &[(H::V, H::V)], cap: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (a, b) in pairs {
        let g = super::b_geodesic(h, a, b, Side::Left)?;
        let back = super::b_geodesic(h, b, a, Side::Left)?;
        let mut rev = back.path.clone();
        rev.reverse();
        if rev != g.path {
            out.push(format!("{} ↔ {}: left geodesics differ by direction", h.show(a), h.show(b)));
        }
        if let Some(d) = x_distance(h, a, b, cap) {
            if d != g.len() {
                out.push(format!("{} → {}: geodesic length {} ≠ distance {d}", h.show(a), h.show(b), g.len()));
            }
        }
    }
    Ok(out)
}

/// Distance in the Bestvina complex X¹ by BFS from a; None past `cap`.
pub fn x_distance<H: HatStructure + ?Sized>(h: &H, a: &H::V, b: &H::V, cap: usize) -> Option<usize> {
    let (a, b) = (h.project(a), h.project(b));
    let mut dist = HashMap::from([(a.clone(), 0usize)]);
    let mut frontier = vec![a];
    let mut d = 0;
    while !frontier.is_empty() {
        if dist.contains_key(&b) {
            return dist.get(&b).copied();
        }
        d += 1;
        let mut next = Vec::new();
        for v in &frontier {
            for w in x_neighbors(h, v) {
                if !dist.contains_key(&w) {
                    dist.insert(w.clone(), d);
                    next.push(w);
                }
            }
        }
        if dist.len() > cap {
            return dist.get(&b).copied();
        }
        frontier = next;
    }
    dist.get(&b).copied()
}

//! Seeded sample generators for the Z^n and braid providers.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Braid, BraidProvider, ZnProvider};
use crate::garside::HatStructure;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pairs, strip steps, ≤_t-chains and curvature inputs drawn from one seed.
#[derive(Clone, Debug)]
pub struct Samples<V> {
    pub pairs: Vec<(V, V)>,
    pub steps: Vec<V>,
    pub triples: Vec<(V, V, V)>,
    pub edges: Vec<(V, V, usize)>,
    pub geodesics: Vec<(V, V, V)>,
}

pub fn zn_point(r: &mut impl Rng, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| r.gen_range(-bound..=bound)).collect()
}

fn nonneg(r: &mut impl Rng, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| r.gen_range(0..=bound)).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn zn_samples(z: &ZnProvider, count: usize, curvature: usize, bound: i64, seed: u64) -> Samples<Vec<i64>> {
    let n = z.dim();
    let mut r = rng(seed);
    let mut s = Samples {
        pairs: Vec::new(),
        steps: Vec::new(),
        triples: Vec::new(),
        edges: Vec::new(),
        geodesics: Vec::new(),
    };
    for _ in 0..count {
        let x = zn_point(&mut r, n, bound);
        let y = zn_point(&mut r, n, bound);
        let up = z.up(&y);
        s.steps.push(up[r.gen_range(0..up.len())].clone());
        s.pairs.push((x, y));
        let x = zn_point(&mut r, n, bound);
        let y = add(&x, &nonneg(&mut r, n, bound));
        let w = add(&y, &nonneg(&mut r, n, bound));
        s.triples.push((x, y, w));
    }
    for _ in 0..curvature {
        let a = z.project(&zn_point(&mut r, n, bound));
        let x = z.project(&zn_point(&mut r, n, bound));
        s.edges.push((a, x, r.gen_range(0..1 << n)));
        let a = z.project(&zn_point(&mut r, n, bound));
        let b = z.project(&zn_point(&mut r, n, bound));
        let c = z.project(&zn_point(&mut r, n, bound));
        s.geodesics.push((a, b, c));
    }
    s
}

/// A word in σ_i^{±1} of length ≤ max_len.
pub fn braid_word(r: &mut impl Rng, n: usize, max_len: usize) -> Vec<i64> {
    let len = r.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let g = r.gen_range(1..n as i64);
            if r.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect()
}

fn positive_word(r: &mut impl Rng, n: usize, max_len: usize) -> Vec<i64> {
    braid_word(r, n, max_len).into_iter().map(i64::abs).collect()
}

pub fn braid_samples(b: &BraidProvider, count: usize, curvature: usize, max_len: usize, seed: u64) -> Samples<Braid> {
    let n = b.strands();
    let mut r = rng(seed);
    let word = |r: &mut ChaCha8Rng| b.from_word(&braid_word(r, n, max_len)).expect("generators in range");
    let pos = |r: &mut ChaCha8Rng| b.from_word(&positive_word(r, n, max_len)).expect("generators in range");
    let mut s = Samples {
        pairs: Vec::new(),
        steps: Vec::new(),
        triples: Vec::new(),
        edges: Vec::new(),
        geodesics: Vec::new(),
    };
    for _ in 0..count {
        let x = word(&mut r);
        let y = word(&mut r);
        let simple = &b.simples()[r.gen_range(1..b.simples().len())];
        s.steps.push(b.mul_simple(&y, simple));
        s.pairs.push((x, y));
        let x = word(&mut r);
        let y = b.mul(&x, &pos(&mut r));
        let w = b.mul(&y, &pos(&mut r));
        s.triples.push((x, y, w));
    }
    for _ in 0..curvature {
        let a = b.project(&word(&mut r));
        let x = b.project(&word(&mut r));
        s.edges.push((a, x, r.gen_range(0..usize::MAX)));
        let a = b.project(&word(&mut r));
        let c1 = b.project(&word(&mut r));
        let c2 = b.project(&word(&mut r));
        s.geodesics.push((a, c1, c2));
    }
    s
}

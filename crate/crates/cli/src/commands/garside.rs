use std::collections::BTreeSet;

use garside_wb::garside::suite::{bgeo_checks, curvature_suite, nf_suite, x_distance};
use garside_wb::garside::{b_geodesic, bestvina_dist, certify, check_local_convex, left_nf, right_nf, HatStructure, Side};
use garside_wb::instances::sampling::{braid_samples, rng, zn_samples, Samples};
use garside_wb::instances::{Braid, BraidProvider, ZnProvider};
use garside_wb::Result;
use rand::Rng;
use serde_json::json;

use super::{ok, Ctx};
use crate::{Failure, GarsideCmd, Output, SideArg};

/// Distance cap for the X-graph BFS used by `dist` and the geodesic check.
const X_BFS_CAP: usize = 200_000;
/// Pairs used for the B-geodesic/BFS comparison in `check`.
const BGEO_PAIRS: usize = 50;

/// A group-based hat structure addressable from the command line.
pub trait Instance: HatStructure {
    fn point(&self, text: &str) -> Result<Self::V>;
    fn origin(&self) -> Self::V;
    /// The simple element x⁻¹y of a step, for display.
    fn step(&self, x: &Self::V, y: &Self::V) -> String;
    fn samples(&self, count: usize, seed: u64) -> Samples<Self::V>;
}

impl Instance for ZnProvider {
    fn point(&self, text: &str) -> Result<Vec<i64>> {
        self.parse(text)
    }
    fn origin(&self) -> Vec<i64> {
        vec![0; self.dim()]
    }
    fn step(&self, x: &Vec<i64>, y: &Vec<i64>) -> String {
        self.show(&y.iter().zip(x).map(|(b, a)| b - a).collect())
    }
    fn samples(&self, count: usize, seed: u64) -> Samples<Vec<i64>> {
        zn_samples(self, count, count, 6, seed)
    }
}

impl Instance for BraidProvider {
    fn point(&self, text: &str) -> Result<Braid> {
        self.parse_word(text)
    }
    fn origin(&self) -> Braid {
        self.identity()
    }
    fn step(&self, x: &Braid, y: &Braid) -> String {
        self.show(&self.mul(&self.inverse(x), y))
    }
    fn samples(&self, count: usize, seed: u64) -> Samples<Braid> {
        braid_samples(self, count, count, 10, seed)
    }
}

pub enum Inst {
    Zn(ZnProvider),
    Braid(BraidProvider),
}

pub fn parse_instance(spec: &str) -> std::result::Result<Inst, Failure> {
    let (kind, n) = spec
        .split_once(':')
        .ok_or_else(|| Failure::usage(format!("instance {spec:?}: expected zn:N or braid:N")))?;
    let n: usize = n
        .parse()
        .map_err(|_| Failure::usage(format!("instance {spec:?}: bad rank")))?;
    match kind {
        "zn" => Ok(Inst::Zn(ZnProvider::new(n)?)),
        "braid" => Ok(Inst::Braid(BraidProvider::new(n)?)),
        _ => Err(Failure::usage(format!("instance {spec:?}: expected zn:N or braid:N"))),
    }
}

fn side(s: SideArg) -> Side {
    match s {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    }
}

fn shows<H: HatStructure>(h: &H, vs: &[H::V]) -> Vec<String> {
    vs.iter().map(|v| h.show(v)).collect()
}

fn pair<H: Instance>(h: &H, from: Option<&str>, to: Option<&str>, word: Option<&str>) -> std::result::Result<(H::V, H::V), Failure> {
    match (from, to, word) {
        (_, _, Some(w)) => Ok((h.origin(), h.point(w)?)),
        (Some(f), Some(t), None) => Ok((h.point(f)?, h.point(t)?)),
        _ => Err(Failure::usage("give --from and --to, or --word")),
    }
}

fn nf<H: Instance>(ctx: &Ctx, spec: &str, h: &H, x: H::V, y: H::V, s: SideArg) -> std::result::Result<Output, Failure> {
    let form = match s {
        SideArg::Left => left_nf(h, &x, &y)?,
        SideArg::Right => right_nf(h, &x, &y)?,
    };
    let mut r = ctx.report("garside nf", &[spec.into(), h.show(&x), h.show(&y), format!("{s:?}")], None);
    let failures = certify(h, &form)?;
    r.verdict("greedy certificates", failures.is_empty(), failures.join("; "));
    let simple = form.simple_part();
    let simples: Vec<String> = simple.windows(2).map(|w| h.step(&w[0], &w[1])).collect();
    r.data = json!({
        "side": form.side,
        "from": h.show(&x),
        "to": h.show(&y),
        "path": shows(h, &form.path),
        "simples": simples,
        "k": form.k,
        "length": form.len(),
        "delta_convention": "Δ-factors are collected into the power k",
    });
    ok(r)
}

fn bgeo<H: Instance>(ctx: &Ctx, spec: &str, h: &H, a: &str, b: &str, s: SideArg) -> std::result::Result<Output, Failure> {
    let (a, b) = (h.point(a)?, h.point(b)?);
    let g = b_geodesic(h, &a, &b, side(s))?;
    let mut r = ctx.report("garside bgeo", &[spec.into(), h.show(&a), h.show(&b), format!("{s:?}")], None);
    r.data = json!({
        "side": g.side,
        "path": shows(h, &g.path),
        "lift": shows(h, &g.lift),
        "length": g.len(),
    });
    ok(r)
}

fn dist<H: Instance>(ctx: &Ctx, spec: &str, h: &H, a: &str, b: &str) -> std::result::Result<Output, Failure> {
    let (a, b) = (h.point(a)?, h.point(b)?);
    let d = bestvina_dist(h, &a, &b)?;
    let back = bestvina_dist(h, &b, &a)?;
    let g = b_geodesic(h, &a, &b, Side::Left)?;
    let xd = x_distance(h, &a, &b, X_BFS_CAP);
    let mut r = ctx.report("garside dist", &[spec.into(), h.show(&a), h.show(&b)], None);
    if let Some(xd) = xd {
        r.verdict("B-geodesic is an X-geodesic", xd == g.len(), format!("geodesic {} vs BFS {xd}", g.len()));
    }
    r.data = json!({
        "bestvina": d,
        "bestvina_reverse": back,
        "geodesic_length": g.len(),
        "x_distance": xd,
    });
    ok(r)
}

fn check<H: Instance>(ctx: &Ctx, spec: &str, h: &H, samples: usize, seed: u64, cap: usize) -> std::result::Result<Output, Failure> {
    let s = h.samples(samples, seed);
    let nfs = nf_suite(h, &s.pairs, &s.steps, &s.triples, cap)?;
    let cur = curvature_suite(h, &s.edges, &s.geodesics)?;
    let bg = bgeo_checks(h, &s.pairs[..s.pairs.len().min(BGEO_PAIRS)], cap)?;
    let mut r = ctx.report("garside check", &[spec.into(), samples.to_string(), cap.to_string()], Some(seed));
    let fails = |v: &Vec<String>| format!("{} failures", v.len());
    r.verdict("greedy certificates", nfs.certificate_failures.is_empty(), fails(&nfs.certificate_failures));
    r.verdict(
        "normal form length equals distance",
        nfs.length_mismatches.is_empty(),
        format!("{} checked, {} beyond BFS cap", nfs.length_checked, nfs.length_skipped),
    );
    r.verdict("strip replacement", nfs.strip_mismatches.is_empty(), fails(&nfs.strip_mismatches));
    r.verdict("initial segment", nfs.initial_segment_failures.is_empty(), fails(&nfs.initial_segment_failures));
    r.verdict("monotone quasi-paths", nfs.monotone_failures.is_empty(), fails(&nfs.monotone_failures));
    r.verdict("(m,n) ∈ {(0,1),(1,0)}", cur.mn_failures.is_empty(), fails(&cur.mn_failures));
    r.verdict("unimodal distance along geodesics", cur.unimodal_failures.is_empty(), fails(&cur.unimodal_failures));
    r.verdict("B-geodesics", bg.is_empty(), fails(&bg));
    for v in nfs
        .certificate_failures
        .iter()
        .chain(&nfs.length_mismatches)
        .chain(&nfs.strip_mismatches)
        .chain(&nfs.initial_segment_failures)
        .chain(&nfs.monotone_failures)
        .chain(&cur.mn_failures)
        .chain(&cur.unimodal_failures)
        .chain(&bg)
    {
        r.counterexamples.push(json!(v));
    }
    r.data = json!({
        "pairs": nfs.pairs,
        "strips": nfs.strips,
        "triples": nfs.triples,
        "length_checked": nfs.length_checked,
        "length_skipped": nfs.length_skipped,
        "edges": cur.edges,
        "geodesics": cur.geodesics,
        "longest_geodesic": cur.longest_geodesic,
    });
    ok(r)
}

fn convex<H: Instance>(
    ctx: &Ctx,
    spec: &str,
    h: &H,
    members: &str,
    s: SideArg,
    samples: usize,
    seed: Option<u64>,
) -> std::result::Result<Output, Failure> {
    let set: BTreeSet<H::V> = members
        .split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| h.point(t).map(|v| h.project(&v)))
        .collect::<Result<_>>()?;
    let list: Vec<H::V> = set.iter().cloned().collect();
    let mut pairs = Vec::new();
    if samples > 0 {
        let seed = seed.ok_or_else(|| Failure::usage("--seed is required when --samples > 0"))?;
        let mut g = rng(seed);
        for _ in 0..samples {
            let a = list[g.gen_range(0..list.len())].clone();
            let b = list[g.gen_range(0..list.len())].clone();
            pairs.push((a, b));
        }
    }
    let rep = check_local_convex(h, &set, side(s), &pairs)?;
    let mut r = ctx.report(
        "garside convex",
        &[spec.into(), shows(h, &list).join(";"), format!("{s:?}"), samples.to_string()],
        seed,
    );
    r.verdict("locally B-convex", rep.local_failures.is_empty(), format!("{} pairs", rep.local_pairs));
    r.verdict("sampled geodesics stay inside", rep.global_failures.is_empty(), format!("{} geodesics", rep.sampled_geodesics));
    r.counterexamples = rep.local_failures.iter().chain(&rep.global_failures).map(|v| json!(v)).collect();
    r.data = json!({ "members": list.len() });
    ok(r)
}

macro_rules! with_inst {
    ($spec:expr, $h:ident => $body:expr) => {
        match parse_instance($spec)? {
            Inst::Zn(z) => {
                let $h = &z;
                $body
            }
            Inst::Braid(b) => {
                let $h = &b;
                $body
            }
        }
    };
}

pub fn run(ctx: &Ctx, cmd: &GarsideCmd) -> std::result::Result<Output, Failure> {
    match cmd {
        GarsideCmd::Nf { inst, from, to, word, side } => {
            let spec = inst.instance.as_str();
            if word.is_some() && spec.starts_with("zn") {
                return Err(Failure::usage("--word applies to braid instances"));
            }
            with_inst!(spec, h => {
                let (x, y) = pair(h, from.as_deref(), to.as_deref(), word.as_deref())?;
                nf(ctx, spec, h, x, y, *side)
            })
        }
        GarsideCmd::Bgeo { inst, from, to, side } => {
            with_inst!(&inst.instance, h => bgeo(ctx, &inst.instance, h, from, to, *side))
        }
        GarsideCmd::Dist { inst, from, to } => with_inst!(&inst.instance, h => dist(ctx, &inst.instance, h, from, to)),
        GarsideCmd::Check { inst, samples, seed, bfs_cap } => {
            with_inst!(&inst.instance, h => check(ctx, &inst.instance, h, *samples, *seed, *bfs_cap))
        }
        GarsideCmd::Convex { inst, members, side, samples, seed } => {
            with_inst!(&inst.instance, h => convex(ctx, &inst.instance, h, members, *side, *samples, *seed))
        }
    }
}

use garside_wb::mincut::check_lattice;
use garside_wb::order::check_admissible;
use garside_wb::{CPFamily, CoxeterDiagram, FinitePoset, Graph, MincutFamily, PathP, VSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{admissibility, bits, mincut_family, Gr, Rel};
use crate::{data, Outcome, Tally};

const GRAPHS: usize = 200;
const SEED: u64 = 0x6d63;

/// Connected graphs on 2..=9 vertices: a random spanning tree plus extra
/// edges at a per-graph density.
fn random_graphs() -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    (0..GRAPHS)
        .map(|_| {
            let n = r.gen_range(2..=9);
            let p = r.gen_range(0.0..0.6);
            let mut es = Vec::new();
            for v in 1..n {
                es.push((r.gen_range(0..v), v));
            }
            for u in 0..n {
                for v in u + 1..n {
                    if !es.contains(&(u, v)) && r.gen_bool(p) {
                        es.push((u, v));
                    }
                }
            }
            (n, es)
        })
        .collect()
}

fn small_sets(n: usize) -> Vec<u32> {
    (1u32..1 << n).filter(|m| (1..=2).contains(&m.count_ones())).collect()
}

fn vs(m: u32) -> VSet {
    VSet(u64::from(m))
}

/// Library order, meet and join against the brute-force order; containment,
/// squeeze and chain separation on every pair and chain.
pub fn lattice() -> Outcome {
    let mut t = Tally::new();
    let mut families = 0;
    for (gi, (n, es)) in random_graphs().into_iter().enumerate() {
        let g = Graph::new(n, &es);
        let mut o = Gr::new(n, &es);
        for &a in &small_sets(n) {
            for &b in &small_sets(n) {
                families += 1;
                let tag = |s: String| format!("graph {gi} A={a:#b} B={b:#b}: {s}");
                let (sets, rel) = mincut_family(&mut o, a, b);
                let f = MincutFamily::enumerate(&g, vs(a), vs(b)).expect("small graph");
                let mut lib: Vec<u32> = f.sets().iter().map(|s| s.0 as u32).collect();
                lib.sort();
                t.check(lib == sets, || tag(format!("family {lib:?} ≠ {sets:?}")));
                if lib != sets {
                    continue;
                }
                t.check(rel.poset_problems().is_empty(), || tag("order is not a poset".into()));
                let at = |i: usize| f.index_of(vs(sets[i])).unwrap();
                let k = sets.len();
                for i in 0..k {
                    for j in 0..k {
                        t.check(f.less(at(i), at(j)) == rel.lt[i][j], || tag(format!("order differs at {i},{j}")));
                        let (inf, sup) = (rel.inf(i, j), rel.sup(i, j));
                        let meet = f.meet(at(i), at(j)).ok().map(|m| f.set(m).0 as u32);
                        let join = f.join(at(i), at(j)).ok().map(|m| f.set(m).0 as u32);
                        t.check(inf.is_some() && meet == inf.map(|x| sets[x]), || {
                            tag(format!("meet {meet:?} vs infimum {:?}", inf.map(|x| sets[x])))
                        });
                        t.check(sup.is_some() && join == sup.map(|x| sets[x]), || {
                            tag(format!("join {join:?} vs supremum {:?}", sup.map(|x| sets[x])))
                        });
                        let union = sets[i] | sets[j];
                        t.check(meet.is_some_and(|m| m & !union == 0), || tag("meet leaves Φ1∪Φ2".into()));
                        t.check(join.is_some_and(|m| m & !union == 0), || tag("join leaves Φ1∪Φ2".into()));
                        if rel.lt[i][j] {
                            for c in o.mincuts(sets[i], sets[j]) {
                                let pos = sets.iter().position(|&x| x == c);
                                t.check(pos.is_some_and(|p| rel.le(i, p) && rel.le(p, j)), || {
                                    tag(format!("squeeze: {c:#b} between {:#b} and {:#b}", sets[i], sets[j]))
                                });
                            }
                            for l in 0..k {
                                if rel.lt[j][l] {
                                    t.check(o.separates(sets[j], sets[i], sets[l]), || {
                                        tag(format!("{:#b} does not separate a chain", sets[j]))
                                    });
                                }
                            }
                        }
                    }
                }
                let v = check_lattice(&f).expect("small family");
                t.check(v.is_empty(), || tag(format!("library lemma check: {v:?}")));
            }
        }
    }
    let mut out = t.outcome("lattice");
    out.detail = format!("{families} families over {GRAPHS} graphs, {}", out.detail);
    out
}

fn poset(rel: &Rel) -> FinitePoset {
    FinitePoset::new(rel.lt.clone())
}

/// Localizations C′_{P,T} over every path of the diagram with Λ_P connected.
fn localized(name: &str, t: &mut Tally) -> usize {
    let d = CoxeterDiagram::from_json(&std::fs::read_to_string(data(name)).unwrap()).unwrap();
    let es: Vec<(usize, usize)> = d.edges().map(|(u, v, _)| (u, v)).collect();
    let mut count = 0;
    for p in simple_paths(&d) {
        let Ok(pp) = PathP::new(&d, p.clone()) else { continue };
        let lp = pp.lambda_p(&d);
        if !lp.is_connected(lp.universe()) {
            continue;
        }
        let Ok(cp) = CPFamily::build(&d, &pp) else { continue };
        for ti in 0..cp.len() {
            count += 1;
            let tag = |s: String| format!("{name} P={p:?} T={}: {s}", cp.element_name(ti));
            let loc = cp.localize(ti).unwrap();
            t.check(loc.is_bijective(), || tag(format!("{:?}", loc.problems)));
            let keep = loc.lambda_t.0 as u32;
            let (mut sub, idx) = Gr::induced(&es, keep);
            let compress = |s: VSet| -> u32 {
                bits(s.0 as u32)
                    .map(|v| 1u32 << idx.iter().position(|&w| w == v).expect("inside Λ_T"))
                    .fold(0, |a, b| a | b)
            };
            let q: Vec<u32> = loc.primed.iter().map(|&s| compress(s)).collect();
            let m = q.len();
            let rel = Rel {
                lt: (0..m).map(|i| (0..m).map(|j| loc.order.lt(i, j)).collect()).collect(),
            };
            let v = admissibility(&mut sub, &q, &rel);
            t.check(v.is_empty(), || tag(format!("oracle: {v:?}")));
            let lib = loc.admissibility(d.graph()).unwrap();
            t.check(lib.is_empty(), || tag(format!("library: {lib:?}")));
        }
    }
    count
}

/// Simple paths with at least three vertices, each listed once per direction.
fn simple_paths(d: &CoxeterDiagram) -> Vec<Vec<usize>> {
    fn go(d: &CoxeterDiagram, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() >= 3 {
            out.push(path.clone());
        }
        let last = *path.last().unwrap();
        for w in d.graph().neighbors(last).iter() {
            if !path.contains(&w) {
                path.push(w);
                go(d, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..d.len() {
        go(d, &mut vec![v], &mut out);
    }
    out
}

pub fn admissible() -> Outcome {
    let mut t = Tally::new();
    let mut families = 0;
    for (gi, (n, es)) in random_graphs().into_iter().enumerate() {
        let g = Graph::new(n, &es);
        let mut o = Gr::new(n, &es);
        for &a in &small_sets(n) {
            for &b in &small_sets(n) {
                families += 1;
                let (sets, rel) = mincut_family(&mut o, a, b);
                let v = admissibility(&mut o, &sets, &rel);
                t.check(v.is_empty(), || format!("graph {gi} A={a:#b} B={b:#b}: {v:?}"));
                let q: Vec<VSet> = sets.iter().map(|&s| vs(s)).collect();
                let lib = check_admissible(&q, &poset(&rel), &g).unwrap();
                t.check(lib.is_empty(), || format!("graph {gi} A={a:#b} B={b:#b}: library {lib:?}"));
            }
        }
    }
    let theta = localized("theta.json", &mut t);
    let cycle = localized("affine_a3.json", &mut t);
    let mut out = t.outcome("admissibility");
    out.detail = format!(
        "{families} mincut families, {theta} theta and {cycle} Ã_3-cycle localizations, {}",
        out.detail
    );
    out
}

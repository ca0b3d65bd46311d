use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use garside_wb::coxeter::{BallTable, CosetWindow, CoxeterGroup, DavisWindow};
use garside_wb::garside::{bestvina_window, check_an_like, FiniteComplex};
use garside_wb::instances::{analyze_shadow, coxeter_shadow_provider, iso_check, mincut_complex_shadow, IsoOutcome, ZnProvider};
use garside_wb::{CPFamily, CoxeterDiagram, PathP, Report, VSet};
use garside_wb_cli::{run, EXIT_OK};

use crate::oracle::Rel;
use crate::{data, Outcome, Tally};

fn diagram(name: &str) -> CoxeterDiagram {
    CoxeterDiagram::from_json(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

/// Vertices of Z³/⟨(1,1,1)⟩ within distance r of 0, by BFS over the six
/// non-trivial proper simples and their inverses.
fn z3_ball_size(r: usize) -> usize {
    let norm = |v: [i64; 3]| [v[0] - v[2], v[1] - v[2], 0];
    let mut seen = HashSet::from([[0i64; 3]]);
    let mut q = VecDeque::from([([0i64; 3], 0)]);
    while let Some((v, d)) = q.pop_front() {
        if d == r {
            continue;
        }
        for m in 1..7 {
            for s in [1, -1] {
                let w = norm([v[0] + s * (m & 1), v[1] + s * (m >> 1 & 1), v[2] + s * (m >> 2 & 1)]);
                if seen.insert(w) {
                    q.push_back((w, d + 1));
                }
            }
        }
    }
    seen.len()
}

fn z3_window(r: usize) -> FiniteComplex {
    let z = ZnProvider::new(3).unwrap();
    bestvina_window(&z, &vec![0, 0, 0], r).unwrap().1
}

fn affine_a2(radius: usize) -> (CoxeterDiagram, CoxeterGroup, Arc<BallTable>) {
    let d = diagram("affine_a2.json");
    let g = CoxeterGroup::new(&d).unwrap();
    let t = Arc::new(BallTable::build(&g, radius).unwrap());
    (d, g, t)
}

/// Re-verifies an isomorphism certificate: bijective, adjacency both ways,
/// types through the type map, oriented triangles onto oriented triangles.
fn verify_iso(a: &FiniteComplex, b: &FiniteComplex, out: &IsoOutcome) -> Result<(), String> {
    let IsoOutcome::Isomorphic { map, type_map } = out else {
        return Err(format!("no isomorphism: {out:?}"));
    };
    if a.len() != b.len() || map.iter().collect::<HashSet<_>>().len() != a.len() {
        return Err("map is not a bijection".into());
    }
    for u in 0..a.len() {
        if type_map.get(&a.types[u]) != Some(&b.types[map[u]]) {
            return Err(format!("type of {} not preserved", a.names[u]));
        }
        for v in 0..a.len() {
            if a.adjacent(u, v) != b.adjacent(map[u], map[v]) {
                return Err(format!("adjacency of {},{} not preserved", a.names[u], a.names[v]));
            }
        }
    }
    if a.triples.len() != b.triples.len() || a.triples.iter().any(|t| !b.holds(map[t[0]], map[t[1]], map[t[2]])) {
        return Err("cyclic orders not preserved".into());
    }
    Ok(())
}

pub fn isomorphism() -> Outcome {
    let x = z3_window(4);
    let (d, g, t) = affine_a2(CosetWindow::ball_radius(12));
    let sh = coxeter_shadow_provider(&g, t, d.all(), 12).unwrap();
    let c0 = sh.window.index_of(sh.window.table().coset(0, d.all().without(0))).unwrap();
    let y = sh.complex.ball(c0, 4);
    let expect = z3_ball_size(4);
    let out = iso_check(&x, &y);
    let res = if x.len() != expect {
        Err(format!("Z³ window has {} vertices, BFS gives {expect}", x.len()))
    } else {
        verify_iso(&x, &y, &out)
    };
    Outcome {
        pass: res.is_ok(),
        detail: match res {
            Ok(()) => format!("{} vertices, {} edges, {} triangles; certificate re-verified", x.len(), x.edge_count(), x.triangles().len()),
            Err(e) => e,
        },
    }
}

pub fn negative_control() -> Outcome {
    let c = z3_window(4);
    let clean = check_an_like(&c).local_pass();
    let mut bad = c.clone();
    let tri = *bad
        .triangles()
        .iter()
        .find(|t| t.iter().all(|&v| !c.boundary[v]))
        .expect("interior triangle");
    let [p, q, r] = tri;
    if bad.holds(p, q, r) {
        bad.set_orientation(r, q, p);
    } else {
        bad.set_orientation(p, q, r);
    }
    let rep = check_an_like(&bad);
    let names: Vec<String> = tri.iter().map(|&v| c.names[v].clone()).collect();
    let witness = rep
        .consistency
        .iter()
        .chain(&rep.link)
        .find(|w| w.vertices.iter().any(|v| names.contains(v)));
    Outcome {
        pass: clean && !rep.local_pass() && witness.is_some(),
        detail: match witness {
            Some(w) => format!("flipped {{{}}}; witness {}: {}", names.join(","), w.kind, w.vertices.join(" ")),
            None => format!("flipped {{{}}}; no witness on the triangle (clean window passes: {clean})", names.join(",")),
        },
    }
}

/// BFS over right multiplication inside the table.
fn bfs(t: &BallTable, x: usize) -> Vec<Option<usize>> {
    let mut d = vec![None; t.size()];
    d[x] = Some(0);
    let mut q = VecDeque::from([x]);
    while let Some(v) = q.pop_front() {
        for s in 0..t.rank() {
            if let Some(w) = t.right(v, s) {
                if d[w].is_none() {
                    d[w] = Some(d[v].unwrap() + 1);
                    q.push_back(w);
                }
            }
        }
    }
    d
}

/// Gates against BFS-nearest points for x with |x| ≤ r and every coset
/// of a maximal standard parabolic meeting that ball.
fn gates_in(t: &BallTable, r: usize, tally: &mut Tally, name: &str) -> usize {
    let n = t.rank();
    let ball: Vec<usize> = (0..t.size()).filter(|&i| t.len(i) <= r).collect();
    let mut cosets = Vec::new();
    for s in 0..n {
        let gens = VSet::full(n).without(s);
        let mut seen = HashSet::new();
        for &i in &ball {
            let c = t.coset(i, gens);
            if seen.insert((c.rep, c.gens)) {
                cosets.push(c);
            }
        }
    }
    let mut pairs = 0;
    for &x in &ball {
        let d = bfs(t, x);
        for &c in &cosets {
            pairs += 1;
            let elems = t.elements(c).unwrap();
            let best = elems.iter().filter_map(|&e| d[e]).min().unwrap();
            let nearest: Vec<usize> = elems.iter().copied().filter(|&e| d[e] == Some(best)).collect();
            let gate = t.gate(x, c).unwrap();
            tally.check(nearest == [gate], || format!("{name}: gate of {x} in {c:?} is {gate}, nearest {nearest:?}"));
        }
    }
    pairs
}

pub fn gates() -> Outcome {
    let mut tally = Tally::new();
    let b3 = diagram("b3.json");
    let g = CoxeterGroup::new(&b3).unwrap();
    let t = BallTable::build(&g, 9).unwrap();
    tally.check(t.size() == 48, || format!("B_3 has {} elements", t.size()));
    let b3_pairs = gates_in(&t, 9, &mut tally, "B_3");
    // |x| ≤ 5, coset elements ≤ 8, distance ≤ 13: geodesics stay within 18
    let (_, g, t) = affine_a2(18);
    let a2_pairs = gates_in(&t, 5, &mut tally, "Ã_2");
    let dw = DavisWindow::build(&g, t.clone(), 4).unwrap();
    let kinds = dw.spherical_types().to_vec();
    let rep = dw.check_retractions(&kinds).unwrap();
    tally.check(rep.failures.is_empty(), || rep.failures[0].clone());
    tally.check(rep.truncated == 0, || format!("{} retraction pairs left the table", rep.truncated));
    let mut out = tally.outcome("gate");
    out.detail = format!(
        "{b3_pairs} B_3 and {a2_pairs} Ã_2 (vertex, coset) pairs; {} faces × {} targets, {} compatibility checks; {}",
        rep.faces, rep.targets, rep.compatibility_checks, out.detail
    );
    out
}

/// Exhaustive partial cyclic order axioms on C_P, from `holds` alone.
fn cyclic_axioms(cp: &CPFamily) -> Vec<String> {
    let n = cp.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !cp.holds(x, y, z) {
                    continue;
                }
                if x == y || y == z || x == z {
                    out.push(format!("degenerate triple {x},{y},{z}"));
                }
                if !cp.holds(y, z, x) {
                    out.push(format!("cyclicity at {x},{y},{z}"));
                }
                if cp.holds(z, y, x) {
                    out.push(format!("asymmetry at {x},{y},{z}"));
                }
                for w in 0..n {
                    if cp.holds(x, z, w) && !cp.holds(x, y, w) {
                        out.push(format!("transitivity at {x},{y},{z},{w}"));
                    }
                }
            }
        }
    }
    out
}

/// Link relations y <_x z ⇔ [y, z, x] must be strict partial orders.
/// Restriction to the window preserves this, so every vertex is checked.
fn link_orders(c: &FiniteComplex) -> (usize, Vec<String>) {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for x in 0..c.len() {
        let lk = &c.adj[x];
        let m = lk.len();
        pairs += m * m.saturating_sub(1) / 2;
        let rel = Rel {
            lt: (0..m).map(|i| (0..m).map(|j| c.holds(lk[i], lk[j], x)).collect()).collect(),
        };
        if let Some(p) = rel.poset_problems().first() {
            bad.push(format!("link of {}: {p}", c.names[x]));
        }
    }
    (pairs, bad)
}

pub fn shadow() -> Outcome {
    let d = diagram("theta.json");
    let p = PathP::parse(&d, "a,p,b").unwrap();
    let g = CoxeterGroup::new(&d).unwrap();
    let t = Arc::new(BallTable::build(&g, CosetWindow::ball_radius(3)).unwrap());
    let sh = mincut_complex_shadow(&g, t, &p, 3).unwrap();
    let rep = analyze_shadow(&g, &sh).unwrap();
    let axioms = cyclic_axioms(&CPFamily::build(&d, &p).unwrap());
    let (pairs, links) = link_orders(&sh.complex);
    let rate = rep.inconclusive_rate();
    let pass = rep.passed() && axioms.is_empty() && links.is_empty() && rate < 0.5;
    Outcome {
        pass,
        detail: format!(
            "{} vertices; library: {} conclusive / {} inconclusive pairs (rate {:.1}%), {} bound failures; \
             oracle: C_P axioms {}, link orders on {pairs} pairs{}",
            rep.vertices,
            rep.conclusive,
            rep.inconclusive,
            100.0 * rate,
            rep.bound_failures.len(),
            if axioms.is_empty() { "hold".to_string() } else { axioms[0].clone() },
            links.first().map(|l| format!(", first failure {l}")).unwrap_or_default(),
        ),
    }
}

fn cli(args: &[&str]) -> (i32, Report) {
    let mut argv = vec!["garside-wb"];
    argv.extend_from_slice(args);
    let out = run(argv);
    (out.code, serde_json::from_str(&out.stdout).expect("report on stdout"))
}

pub fn four_cycle() -> Outcome {
    let a3 = data("a3.json");
    let base = ["experiment", "four-cycle", "--complex", &a3, "--s", "1", "--t", "3", "--subdiagram", "1,2,3", "--seed", "11"];
    let runs: Vec<(i32, Report)> = (0..3).map(|_| cli(&base)).collect();
    let stable = runs.iter().all(|(c, r)| *c == EXIT_OK && r.stable_json() == runs[0].1.stable_json());
    let verdicts = runs[0].1.data["verdicts"].as_array().cloned().unwrap_or_default();
    let mut replayed = 0;
    for v in &verdicts {
        let case = v["case"].to_string();
        let mut args = base.to_vec();
        args.extend(["--case", &case]);
        let (code, r) = cli(&args);
        if code == EXIT_OK && r.data["replay"] == *v {
            replayed += 1;
        }
    }
    Outcome {
        pass: stable && !verdicts.is_empty() && replayed == verdicts.len(),
        detail: format!(
            "3 runs {}; {replayed}/{} cases replayed identically",
            if stable { "byte-identical" } else { "differ" },
            verdicts.len()
        ),
    }
}

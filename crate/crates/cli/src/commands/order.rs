use std::collections::BTreeMap;

use garside_wb::order::{check_admissible, CPKind};
use garside_wb::{CPFamily, CoxeterDiagram, FinitePoset, PartialCyclicOrder, PathP, VSet};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{ok, read_diagram, read_text, to_value, Ctx};
use crate::{Failure, OrderCmd, Output};

#[derive(Deserialize)]
struct FamilyInput {
    graph: Value,
    family: Vec<Vec<String>>,
    #[serde(default)]
    less: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct CyclicInput {
    elements: Vec<String>,
    triples: Vec<[String; 3]>,
}

fn parse_json<T: for<'a> Deserialize<'a>>(path: &std::path::Path) -> Result<T, Failure> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn induced_poset_failures(c: &PartialCyclicOrder, names: &[String]) -> Vec<Value> {
    let mut out = Vec::new();
    for x in 0..c.ground_size() {
        let (elems, p) = c.induced_order(x);
        for v in p.violations() {
            out.push(json!({ "at": names[x], "elements": elems.iter().map(|&e| &names[e]).collect::<Vec<_>>(), "violation": format!("{v:?}") }));
        }
    }
    out
}

fn cp_data(d: &CoxeterDiagram, cp: &CPFamily) -> Value {
    let elements: Vec<Value> = (0..cp.len())
        .map(|i| {
            let e = cp.elements()[i];
            json!({
                "set": d.set_names(e.set),
                "kind": e.kind,
                "rank": cp.rank(i),
            })
        })
        .collect();
    let mut comparable = Vec::new();
    for i in 0..cp.len() {
        for j in i + 1..cp.len() {
            if cp.comparable(i, j) {
                comparable.push([i, j]);
            }
        }
    }
    let triples: Option<Vec<[usize; 3]>> = cp.cyclic_order().map(|c| c.triples().copied().filter(|t| t[0] < t[1] && t[0] < t[2]).collect());
    json!({
        "elements": elements,
        "comparable": comparable,
        "period": cp.period(),
        "cyclic_triples": triples,
    })
}

pub fn run(ctx: &Ctx, cmd: &OrderCmd) -> Result<Output, Failure> {
    match cmd {
        OrderCmd::Cp { diagram, path } => {
            let d = read_diagram(diagram)?;
            let p = PathP::parse(&d, path)?;
            let cp = CPFamily::build(&d, &p)?;
            let mut r = ctx.report("order cp", &[d.canonical_json(), path_names(&d, &p)], None);
            let names: Vec<String> = (0..cp.len()).map(|i| cp.element_name(i)).collect();
            match cp.cyclic_order() {
                Some(c) => {
                    let v = c.check();
                    r.verdict("partial cyclic order", v.is_empty(), format!("{} violations", v.len()));
                    for x in &v {
                        r.counterexamples.push(json!({ "axiom": x.axiom, "witness": x.witness.iter().map(|&i| &names[i]).collect::<Vec<_>>() }));
                    }
                    let ind = induced_poset_failures(c, &names);
                    r.verdict("induced orders are posets", ind.is_empty(), "");
                    r.counterexamples.extend(ind);
                }
                None => r.verdict("partial cyclic order", true, "not materialized; answered on demand"),
            }
            let rv = cp.rank_morphism_violations();
            r.verdict("rank is a cyclic morphism", rv.is_empty(), format!("{} triples", rv.len()));
            r.data = cp_data(&d, &cp);
            ok(r)
        }
        OrderCmd::Admissible { input: Some(input), .. } => {
            let inp: FamilyInput = parse_json(input)?;
            let d = CoxeterDiagram::from_json(&inp.graph.to_string())?;
            let q: Vec<VSet> = inp
                .family
                .iter()
                .map(|s| d.parse_set(&s.join(",")))
                .collect::<garside_wb::Result<_>>()?;
            if let Some(&(i, j)) = inp.less.iter().find(|&&(i, j)| i >= q.len() || j >= q.len()) {
                return Err(Failure::usage(format!("less pair ({i},{j}) out of range")));
            }
            let lt = FinitePoset::from_fn(q.len(), |i, j| inp.less.contains(&(i, j)));
            let mut r = ctx.report(
                "order admissible",
                &[d.canonical_json(), format!("{:?}", inp.family), format!("{:?}", inp.less)],
                None,
            );
            let v = check_admissible(&q, &lt, d.graph())?;
            admissible_verdicts(&mut r, "family", &v);
            ok(r)
        }
        OrderCmd::Admissible { diagram: Some(diagram), path: Some(path), .. } => {
            let d = read_diagram(diagram)?;
            let p = PathP::parse(&d, path)?;
            let cp = CPFamily::build(&d, &p)?;
            let mut r = ctx.report("order admissible", &[d.canonical_json(), path_names(&d, &p)], None);
            let fam = cp.type2_family();
            let lt = FinitePoset::new(fam.relation());
            let v = check_admissible(&fam.sets(), &lt, cp.lambda_p())?;
            admissible_verdicts(&mut r, "Mincut(a,b) in Λ_P", &v);
            let mut locs = Vec::new();
            for t in 0..cp.len() {
                let loc = cp.localize(t)?;
                let name = cp.element_name(t);
                r.verdict(format!("inverse map at {name}"), loc.is_bijective(), loc.problems.join("; "));
                let v = loc.admissibility(d.graph())?;
                admissible_verdicts(&mut r, &format!("localized at {name}"), &v);
                locs.push(json!({
                    "t": name,
                    "kind": if cp.elements()[t].kind == CPKind::TypeI { "I" } else { "II" },
                    "members": loc.members.len(),
                    "lambda_t": d.set_names(loc.lambda_t),
                    "lambda_t_components": loc.lambda_t_components,
                    "primed": loc.primed.iter().map(|&s| d.set_names(s)).collect::<Vec<_>>(),
                }));
            }
            r.data = json!({ "family": cp_data(&d, &cp), "localizations": locs });
            ok(r)
        }
        OrderCmd::Admissible { .. } => Err(Failure::usage("give --in FILE or --diagram FILE --path P")),
        OrderCmd::CyclicCheck { input } => {
            let inp: CyclicInput = parse_json(input)?;
            let idx: BTreeMap<&str, usize> = inp.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
            if idx.len() != inp.elements.len() {
                return Err(Failure::usage("duplicate element names"));
            }
            let mut triples = Vec::new();
            for t in &inp.triples {
                let mut out = [0; 3];
                for (k, name) in t.iter().enumerate() {
                    out[k] = *idx
                        .get(name.as_str())
                        .ok_or_else(|| Failure::usage(format!("unknown element {name:?}")))?;
                }
                triples.push(out);
            }
            let c = PartialCyclicOrder::new(inp.elements.len(), triples);
            let mut r = ctx.report("order cyclic-check", &[format!("{:?}", inp.elements), format!("{:?}", c.triples().collect::<Vec<_>>())], None);
            let v = c.check();
            for axiom in ["distinctness", "cyclicity", "asymmetry", "transitivity"] {
                let bad: Vec<_> = v.iter().filter(|x| x.axiom == axiom).collect();
                r.verdict(axiom, bad.is_empty(), "");
                for x in bad {
                    r.counterexamples.push(json!({ "axiom": axiom, "witness": x.witness.iter().map(|&i| &inp.elements[i]).collect::<Vec<_>>() }));
                }
            }
            if v.is_empty() {
                let ind = induced_poset_failures(&c, &inp.elements);
                r.verdict("induced orders are posets", ind.is_empty(), "");
                r.counterexamples.extend(ind);
            }
            r.data = json!({ "elements": inp.elements.len(), "triples": c.len() });
            ok(r)
        }
    }
}

fn path_names(d: &CoxeterDiagram, p: &PathP) -> String {
    p.vertices().iter().map(|&v| d.name(v)).collect::<Vec<_>>().join(",")
}

fn admissible_verdicts(r: &mut garside_wb::Report, what: &str, v: &[garside_wb::order::AdmissibleViolation]) {
    for cond in 1..=4u8 {
        let bad = v.iter().filter(|x| x.condition == cond).count();
        r.verdict(format!("{what}: condition {cond}"), bad == 0, if bad == 0 { String::new() } else { format!("{bad} violations") });
    }
    r.counterexamples.extend(v.iter().map(|x| json!({ "family": what, "violation": to_value(x) })));
}

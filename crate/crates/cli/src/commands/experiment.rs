use garside_wb::coxeter::{BallTable, CoxeterGroup};
use garside_wb::instances::four_cycle::EXACT_LIMIT;
use garside_wb::instances::{four_cycle_search, replay_case, strong_four_cycle_search};
use garside_wb::CoxeterDiagram;
use serde_json::json;

use super::coxeter::shadow;
use super::{ok, read_diagram, to_value, Ctx};
use crate::{ExperimentCmd, Failure, Output};

/// Length of the longest element, for finite groups.
fn longest_length(g: &CoxeterGroup) -> Result<usize, Failure> {
    let t = BallTable::build(g, usize::MAX / 4)?;
    Ok(t.len(t.size() - 1))
}

fn gen(d: &CoxeterDiagram, name: &Option<String>, flag: &str) -> Result<usize, Failure> {
    let n = name.as_deref().ok_or_else(|| Failure::usage(format!("--{flag} is required")))?;
    Ok(d.index(n)?)
}

pub fn run(ctx: &Ctx, cmd: &ExperimentCmd) -> Result<Output, Failure> {
    let ExperimentCmd::FourCycle { complex, s, t, subdiagram, radius, seed, case, strong, a, b } = cmd;
    let d = read_diagram(complex)?;
    let g = CoxeterGroup::new(&d)?;
    let radius = match radius {
        Some(r) => *r,
        None if g.is_spherical(d.all()) => longest_length(&g)?,
        None => return Err(Failure::usage("--radius is required for infinite groups")),
    };
    let sh = shadow(ctx, &g, d.all(), radius)?;
    if sh.complex.len() > EXACT_LIMIT && seed.is_none() {
        return Err(Failure::usage(format!(
            "window has {} vertices (> {EXACT_LIMIT}); cycles are sampled, so --seed is required",
            sh.complex.len()
        )));
    }
    let seed_v = seed.unwrap_or(0);
    let mut parts = vec![d.canonical_json(), radius.to_string()];
    if *strong {
        let (av, bv) = (
            d.parse_set(a.as_deref().unwrap_or_default())?,
            d.parse_set(b.as_deref().unwrap_or_default())?,
        );
        parts.extend(["strong".into(), d.set_names(av).join(","), d.set_names(bv).join(",")]);
        let rep = strong_four_cycle_search(&g, &sh, av, bv)?;
        let mut r = ctx.report("experiment four-cycle", &parts, *seed);
        r.data = to_value(&rep);
        return ok(r);
    }
    let (si, ti) = (gen(&d, s, "s")?, gen(&d, t, "t")?);
    let sub = d.parse_set(subdiagram.as_deref().ok_or_else(|| Failure::usage("--subdiagram is required"))?)?;
    parts.extend([d.name(si).to_string(), d.name(ti).to_string(), d.set_names(sub).join(",")]);
    if let Some(k) = case {
        parts.push(format!("case {k}"));
        let v = replay_case(&g, &sh, si, ti, sub, seed_v, *k)?;
        let mut r = ctx.report("experiment four-cycle", &parts, *seed);
        r.data = json!({ "radius": radius, "replay": to_value(&v) });
        return ok(r);
    }
    let rep = four_cycle_search(&g, &sh, si, ti, sub, seed_v)?;
    let mut r = ctx.report("experiment four-cycle", &parts, *seed);
    let mut data = to_value(&rep);
    data["radius"] = json!(radius);
    r.data = data;
    ok(r)
}

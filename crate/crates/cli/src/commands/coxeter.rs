use std::sync::Arc;

use garside_wb::coxeter::{BallTable, CosetWindow, CoxeterGroup};
use garside_wb::garside::check_an_like;
use garside_wb::instances::{coxeter_shadow_provider, CoxeterShadow};
use garside_wb::{CoxeterDiagram, Error, VSet};
use serde_json::json;

use super::{dot, ok, read_diagram, to_value, Ctx};
use crate::{load_or_build_ball, CoxeterCmd, Failure, OutFormat, Output};

const SPHERICAL_ENUM_LIMIT: usize = 16;

pub fn table(ctx: &Ctx, group: &CoxeterGroup, radius: usize) -> Result<Arc<BallTable>, Failure> {
    Ok(load_or_build_ball(group, radius, ctx.cache.as_deref())?.0)
}

pub fn types_arg(d: &CoxeterDiagram, types: Option<&str>) -> Result<VSet, Failure> {
    Ok(match types {
        Some(t) => d.parse_set(t)?,
        None => d.all(),
    })
}

/// The relative Coxeter complex window on `types` with window radius R.
pub fn shadow(ctx: &Ctx, group: &CoxeterGroup, types: VSet, radius: usize) -> Result<CoxeterShadow, Failure> {
    let t = table(ctx, group, CosetWindow::ball_radius(radius))?;
    Ok(coxeter_shadow_provider(group, t, types, radius)?)
}

fn word(group: &CoxeterGroup, w: &[usize]) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        group.word_names(w).join(" ")
    }
}

pub fn run(ctx: &Ctx, cmd: &CoxeterCmd) -> Result<Output, Failure> {
    match cmd {
        CoxeterCmd::Ball { diagram, radius } => {
            let d = read_diagram(diagram)?;
            let g = CoxeterGroup::new(&d)?;
            let t = table(ctx, &g, *radius)?;
            let mut r = ctx.report("coxeter ball", &[d.canonical_json(), radius.to_string()], None);
            let mut by_len = vec![0usize; radius + 1];
            for i in 0..t.size() {
                by_len[t.len(i)] += 1;
            }
            while by_len.len() > 1 && by_len.last() == Some(&0) {
                by_len.pop();
            }
            r.data = json!({
                "diagram_hash": d.hash(),
                "radius": radius,
                "size": t.size(),
                "sphere_sizes": by_len,
                "finite_group": by_len.len() <= *radius,
            });
            ok(r)
        }
        CoxeterCmd::Gate { diagram, x, coset } => {
            let d = read_diagram(diagram)?;
            let g = CoxeterGroup::new(&d)?;
            let (cw, cs) = coset
                .split_once(';')
                .ok_or_else(|| Failure::usage("coset must be \"WORD;SET\""))?;
            let xe = g.parse_word(x)?;
            let f = g.coset_min_rep(&g.parse_word(cw)?, d.parse_set(cs)?)?;
            let gate = g.gate(&xe, &f)?;
            let dist = g.mul(&g.inverse(&xe)?, &gate)?.length();
            let mut r = ctx.report(
                "coxeter gate",
                &[d.canonical_json(), word(&g, xe.reduced_word()), word(&g, f.rep.reduced_word()), d.set_names(f.gens).join(",")],
                None,
            );
            r.data = json!({
                "x": word(&g, xe.reduced_word()),
                "coset_rep": word(&g, f.rep.reduced_word()),
                "coset_gens": d.set_names(f.gens),
                "gate": word(&g, gate.reduced_word()),
                "distance": dist,
            });
            ok(r)
        }
        CoxeterCmd::Window { diagram, radius, types, out } => {
            let d = read_diagram(diagram)?;
            let g = CoxeterGroup::new(&d)?;
            let ty = types_arg(&d, types.as_deref())?;
            let sh = shadow(ctx, &g, ty, *radius)?;
            if *out == OutFormat::Dot {
                return Ok(Output::Text(dot(&sh.complex)?));
            }
            let mut r = ctx.report("coxeter window", &[d.canonical_json(), radius.to_string(), d.set_names(ty).join(",")], None);
            let an = check_an_like(&sh.complex);
            r.verdict("flag", sh.complex.non_simplices.is_empty(), format!("{} discrepancies", sh.complex.non_simplices.len()));
            if sh.affine_a {
                r.verdict("Ã_n-like local conditions", an.local_pass(), "");
            }
            r.data = json!({
                "radius": radius,
                "types": d.set_names(ty),
                "vertices": sh.complex.len(),
                "edges": sh.complex.edge_count(),
                "triangles": sh.complex.triangles().len(),
                "cyclic_orders": sh.affine_a,
                "an_like": to_value(&an),
            });
            ok(r)
        }
        CoxeterCmd::Spherical { diagram, subset } => {
            let d = read_diagram(diagram)?;
            let g = CoxeterGroup::new(&d)?;
            let mut r = ctx.report("coxeter spherical", &[d.canonical_json(), subset.clone().unwrap_or_default()], None);
            if let Some(s) = subset {
                let x = d.parse_set(s)?;
                r.data = json!({ "subset": d.set_names(x), "spherical": g.is_spherical(x) });
                return ok(r);
            }
            if d.len() > SPHERICAL_ENUM_LIMIT {
                return Err(Error::TooLarge {
                    what: "diagram for spherical subset enumeration",
                    size: d.len(),
                    limit: SPHERICAL_ENUM_LIMIT,
                }
                .into());
            }
            let sph: Vec<VSet> = (0u64..1 << d.len()).map(VSet).filter(|&x| g.is_spherical(x)).collect();
            let maximal: Vec<Vec<String>> = sph
                .iter()
                .filter(|&&x| !sph.iter().any(|&y| y != x && x.is_subset(y)))
                .map(|&x| d.set_names(x))
                .collect();
            r.data = json!({
                "count": sph.len(),
                "spherical": sph.iter().map(|&x| d.set_names(x)).collect::<Vec<_>>(),
                "maximal": maximal,
                "group_finite": g.is_spherical(d.all()),
            });
            ok(r)
        }
    }
}

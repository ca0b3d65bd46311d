use garside_wb::coxeter::{CosetWindow, CoxeterGroup};
use garside_wb::garside::complex::FiniteComplex;
use garside_wb::garside::{bestvina_window, check_an_like};
use garside_wb::instances::{analyze_shadow, mincut_complex_shadow, BraidProvider, ZnProvider};
use garside_wb::{PathP, Report};
use serde_json::json;

use super::coxeter::{shadow, table, types_arg};
use super::garside::Instance;
use super::{dot, ok, read_diagram, to_value, Ctx};
use crate::{Failure, InstanceCmd, InstanceKind, OutFormat, Output};

fn summary(r: &mut Report, c: &FiniteComplex, oriented: bool) {
    let an = check_an_like(c);
    r.verdict("flag", c.non_simplices.is_empty(), format!("{} discrepancies", c.non_simplices.len()));
    if oriented {
        r.verdict("Ã_n-like local conditions", an.local_pass(), "");
        r.counterexamples.extend(
            an.flag
                .iter()
                .chain(&an.consistency)
                .chain(&an.link)
                .chain(&an.f_morphism)
                .map(to_value),
        );
    }
    r.data = json!({
        "vertices": c.len(),
        "edges": c.edge_count(),
        "triangles": c.triangles().len(),
        "period": c.period,
        "an_like": to_value(&an),
    });
}

fn group_window<H: Instance>(
    ctx: &Ctx,
    kind: &str,
    n: usize,
    h: &H,
    radius: usize,
    out: OutFormat,
) -> Result<Output, Failure> {
    let (_, c) = bestvina_window(h, &h.origin(), radius)?;
    if out == OutFormat::Dot {
        return Ok(Output::Text(dot(&c)?));
    }
    let mut r = ctx.report("instance build", &[kind.into(), n.to_string(), radius.to_string()], None);
    summary(&mut r, &c, true);
    ok(r)
}

pub fn run(ctx: &Ctx, cmd: &InstanceCmd) -> Result<Output, Failure> {
    let InstanceCmd::Build { kind, n, diagram, path, types, radius, out } = cmd;
    let need_n = || n.ok_or_else(|| Failure::usage("--n is required for this kind"));
    let need_diagram = || {
        diagram
            .as_deref()
            .ok_or_else(|| Failure::usage("--diagram is required for this kind"))
            .and_then(read_diagram)
    };
    match kind {
        InstanceKind::Zn => {
            let n = need_n()?;
            group_window(ctx, "zn", n, &ZnProvider::new(n)?, *radius, *out)
        }
        InstanceKind::Braid => {
            let n = need_n()?;
            group_window(ctx, "braid", n, &BraidProvider::new(n)?, *radius, *out)
        }
        InstanceKind::Coxeter => {
            let d = need_diagram()?;
            let g = CoxeterGroup::new(&d)?;
            let ty = types_arg(&d, types.as_deref())?;
            let sh = shadow(ctx, &g, ty, *radius)?;
            if *out == OutFormat::Dot {
                return Ok(Output::Text(dot(&sh.complex)?));
            }
            let mut r = ctx.report(
                "instance build",
                &["coxeter".into(), d.canonical_json(), d.set_names(ty).join(","), radius.to_string()],
                None,
            );
            summary(&mut r, &sh.complex, sh.affine_a);
            ok(r)
        }
        InstanceKind::MincutShadow => {
            let d = need_diagram()?;
            let p = PathP::parse(&d, path.as_deref().ok_or_else(|| Failure::usage("--path is required"))?)?;
            let g = CoxeterGroup::new(&d)?;
            let t = table(ctx, &g, CosetWindow::ball_radius(*radius))?;
            let sh = mincut_complex_shadow(&g, t, &p, *radius)?;
            if *out == OutFormat::Dot {
                return Ok(Output::Text(dot(&sh.complex)?));
            }
            let rep = analyze_shadow(&g, &sh)?;
            let names: Vec<&str> = p.vertices().iter().map(|&v| d.name(v)).collect();
            let mut r = ctx.report(
                "instance build",
                &["mincut-shadow".into(), d.canonical_json(), names.join(","), radius.to_string()],
                None,
            );
            r.verdict("C_P partial cyclic order", rep.cp_axiom_violations.is_empty(), rep.cp_axiom_violations.join("; "));
            r.verdict("rank morphism on C_P", rep.cp_rank_violations == 0, "");
            r.verdict("edge types comparable", rep.edge_type_violations == 0, "");
            r.verdict("Ã_n-like local conditions", rep.an_like.local_pass(), "");
            r.verdict("link relations are posets", rep.link_poset_violations.is_empty(), "");
            r.verdict(
                "bounded link pairs have meet/join",
                rep.bound_failures.is_empty(),
                format!("{} conclusive, {} inconclusive", rep.conclusive, rep.inconclusive),
            );
            r.verdict("window enumeration agrees", rep.enumeration_misses == 0, "");
            r.counterexamples = rep
                .link_poset_violations
                .iter()
                .chain(&rep.bound_failures)
                .map(to_value)
                .collect();
            let mut data = to_value(&rep);
            data["inconclusive_rate"] = json!(rep.inconclusive_rate());
            r.data = data;
            ok(r)
        }
    }
}

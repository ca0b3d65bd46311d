use garside_wb::mincut::check_lattice;
use garside_wb::{CoxeterDiagram, MincutFamily};
use serde_json::json;

use super::{ok, read_diagram, to_value, Ctx};
use crate::{Failure, GraphArgs, MincutCmd, Output};

fn family(g: &GraphArgs) -> Result<(CoxeterDiagram, MincutFamily, Vec<String>), Failure> {
    let d = read_diagram(&g.graph)?;
    let a = d.parse_set(&g.a)?;
    let b = d.parse_set(&g.b)?;
    let f = MincutFamily::enumerate(d.graph(), a, b)?;
    let parts = vec![d.canonical_json(), d.set_names(a).join(","), d.set_names(b).join(",")];
    Ok((d, f, parts))
}

const LEMMAS: [&str; 5] = ["meet-join", "containment", "squeeze", "separation", "comparable-pair"];

pub fn run(ctx: &Ctx, cmd: &MincutCmd) -> Result<Output, Failure> {
    match cmd {
        MincutCmd::Enum(g) => {
            let (d, f, parts) = family(g)?;
            let mut r = ctx.report("mincut enum", &parts, None);
            let cuts: Vec<Vec<String>> = f.sets().into_iter().map(|c| d.set_names(c)).collect();
            r.data = json!({
                "count": cuts.len(),
                "cuts": cuts,
                "hasse": f.hasse(),
                "heights": f.heights(),
            });
            ok(r)
        }
        MincutCmd::LatticeCheck(g) => {
            let (d, f, parts) = family(g)?;
            let mut r = ctx.report("mincut lattice-check", &parts, None);
            let v = check_lattice(&f)?;
            for lemma in LEMMAS {
                let bad = v.iter().filter(|x| x.lemma == lemma).count();
                r.verdict(lemma, bad == 0, if bad == 0 { String::new() } else { format!("{bad} violations") });
            }
            let other = v
                .iter()
                .filter(|x| !LEMMAS.contains(&x.lemma))
                .count();
            if other > 0 {
                r.verdict("other", false, format!("{other} violations"));
            }
            r.counterexamples = v.iter().map(to_value).collect();
            r.data = json!({
                "count": f.len(),
                "pairs": f.len() * f.len(),
                "cuts": f.sets().into_iter().map(|c| d.set_names(c)).collect::<Vec<_>>(),
            });
            ok(r)
        }
    }
}

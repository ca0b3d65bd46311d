use garside_wb::Report;
use serde_json::json;

use super::{ok, read_text, Ctx};
use crate::{Failure, Output, ReportCmd};

pub fn run(ctx: &Ctx, cmd: &ReportCmd) -> Result<Output, Failure> {
    let ReportCmd::Verify { file } = cmd;
    let stored: Report = serde_json::from_str(&read_text(file)?)
        .map_err(|e| Failure::usage(format!("{}: not a report: {e}", file.display())))?;
    if stored.command == "report verify" {
        return Err(Failure::usage("refusing to verify a verification report"));
    }
    let mut argv = vec!["garside-wb".to_string()];
    argv.extend(stored.args.iter().cloned());
    let out = crate::run(&argv);
    let mut r = ctx.report("report verify", &[stored.stable_json()], stored.seed);
    let rerun: Option<Report> = serde_json::from_str(&out.stdout).ok();
    match rerun {
        Some(again) => {
            let same = again.stable_json() == stored.stable_json();
            r.verdict("reproduced", same, if same { String::new() } else { "re-run differs from the stored report".into() });
            r.data = json!({ "command": stored.command, "exit_code": out.code, "input_hash": again.input_hash });
        }
        None => {
            r.verdict("reproduced", false, format!("re-run produced no report: {}", out.stderr.trim()));
        }
    }
    ok(r)
}

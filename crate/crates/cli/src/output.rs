use crate::args::GlobalOpts;
use anyhow::Context;
use serde::Serialize;
use std::io::Write;

/// Writes the JSON report to `--out` (or stdout) and the human summary to the
/// terminal; with no `--out` the summary goes to stderr so stdout stays JSON.
pub fn emit<T: Serialize>(opts: &GlobalOpts, report: &T, summary: &str) -> anyhow::Result<()> {
    let json = serde_json::to_string_pretty(report)?;
    match &opts.out {
        Some(path) => {
            std::fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
            print!("{summary}");
        }
        None => {
            println!("{json}");
            eprint!("{summary}");
        }
    }
    std::io::stdout().flush()?;
    Ok(())
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

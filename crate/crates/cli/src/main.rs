//! `ord` — command-line front end for the brwdec ordinal engine.
//!
//! Exit codes are a pure function of the summary verdict: 0 for Proven (or a
//! successful plain evaluation), 1 for Refuted, 2 for Unknown, and 64 for
//! usage errors (bad flags, parse errors, registry misses).

mod expr;

use brwdec::{
    eval_top, exists_forall_witness, exists_witness, forall_witness, jump, leq, lookup_family,
    probe_ge, run_all, s_n_of, BitSeq, CnfForm, FamilyKind, Fuel, LevelProbe, Ordinal, Verdict,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

/// How many opening elements `ord jump` prints.
const JUMP_PREFIX_LEN: usize = 8;

#[derive(Parser)]
#[command(
    name = "ord",
    version,
    about = "Brouwer-tree ordinals: arithmetic, bounded comparison, and decidability probes"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Fuel budget for bounded verdict searches.
    #[arg(long, global = true, env = "BRWDEC_FUEL", default_value_t = 100_000)]
    fuel: u64,

    /// Rungs drawn from a deep limit's fundamental sequence when laddering.
    #[arg(long = "k-max", global = true, default_value_t = 6)]
    k_max: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Forall,
    Exists,
    ExistsForall,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Forall => "forall",
            Mode::Exists => "exists",
            Mode::ExistsForall => "exists-forall",
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an ordinal expression and print its exact normal form.
    Eval {
        /// Expression: normal-form grammar plus psi(FAMILY), lim-min, lim-max,
        /// round-up, round-down, lim-jump(BITS).
        expr: String,
    },
    /// Decide whether the first ordinal is <= the second, within the fuel budget.
    Cmp {
        /// Left-hand expression.
        a: String,
        /// Right-hand expression.
        b: String,
    },
    /// Probe whether a subject ordinal reaches a closed-normal-form target,
    /// climbing the target's ladder rung by rung.
    Probe {
        /// Subject expression (may be lazy: psi(...), lim-jump(...), ...).
        subject: String,
        /// Target, in the closed normal-form grammar only.
        target: String,
    },
    /// Print the opening elements of the limit jump of a bit sequence.
    Jump {
        /// Bit literal such as `001:zeros` or `:ones`.
        bits: String,
    },
    /// Build a characteristic witness for a registry family and probe it.
    Psi {
        /// Family spec, e.g. `twin-primes(5000)`, `const-true`, `diagonal`.
        family: String,
        /// Quantifier shape: forall/exists need a one-dimensional family,
        /// exists-forall a two-dimensional one.
        mode: Mode,
    },
    /// Evaluate the staged membership map s_n at an ordinal expression.
    Sierp {
        /// Stage index n.
        n: u64,
        /// Subject expression.
        expr: String,
    },
    /// Run the built-in acceptance checks and report pass/fail counts.
    Selftest,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(i32::from(run(&cli)));
}

fn run(cli: &Cli) -> u8 {
    match &cli.command {
        Cmd::Eval { expr } => cmd_eval(cli, expr),
        Cmd::Cmp { a, b } => cmd_cmp(cli, a, b),
        Cmd::Probe { subject, target } => cmd_probe(cli, subject, target),
        Cmd::Jump { bits } => cmd_jump(cli, bits),
        Cmd::Psi { family, mode } => cmd_psi(cli, family, *mode),
        Cmd::Sierp { n, expr } => cmd_sierp(cli, *n, expr),
        Cmd::Selftest => cmd_selftest(cli),
    }
}

fn usage(message: impl AsRef<str>) -> u8 {
    eprintln!("error: {}", message.as_ref());
    64
}

fn exit_of(v: Verdict) -> u8 {
    match v {
        Verdict::Proven => 0,
        Verdict::Refuted => 1,
        Verdict::Unknown(_) => 2,
    }
}

/// Canonical rendering of an ordinal value: its exact normal form when one is
/// attached, otherwise a structural description.
fn render_value(o: &Ordinal) -> String {
    match o.annotation() {
        Some(c) => c.to_string(),
        None => o.describe(),
    }
}

fn levels_json(levels: &[LevelProbe]) -> serde_json::Value {
    json!(levels
        .iter()
        .map(|l| json!({
            "level": l.level.to_string(),
            "verdict": l.verdict.to_string(),
            "fuel_spent": l.spent,
        }))
        .collect::<Vec<_>>())
}

fn emit_json(
    command: &str,
    subject: Option<&str>,
    target: Option<&str>,
    levels: serde_json::Value,
    summary: &str,
    exit: u8,
) {
    let doc = json!({
        "command": command,
        "subject": subject,
        "target": target,
        "levels": levels,
        "summary": summary,
        "exit": exit,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable report"));
}

fn cmd_eval(cli: &Cli, src: &str) -> u8 {
    let value = match expr::parse_subject(src) {
        Ok(v) => v,
        Err(e) => return usage(e.to_string()),
    };
    let shown = render_value(&value);
    match cli.format {
        OutFormat::Text => println!("{shown}"),
        OutFormat::Json => emit_json("eval", Some(src.trim()), None, json!([]), &shown, 0),
    }
    0
}

fn cmd_cmp(cli: &Cli, a_src: &str, b_src: &str) -> u8 {
    let a = match expr::parse_subject(a_src) {
        Ok(v) => v,
        Err(e) => return usage(e.to_string()),
    };
    let b = match expr::parse_subject(b_src) {
        Ok(v) => v,
        Err(e) => return usage(e.to_string()),
    };
    let fuel = Fuel(cli.fuel);
    let forward = leq(&a, &b, fuel);
    let backward = leq(&b, &a, fuel);
    let relation = match (forward, backward) {
        (Verdict::Proven, Verdict::Proven) => Some("EQ"),
        (Verdict::Proven, Verdict::Refuted) => Some("LT"),
        (Verdict::Proven, Verdict::Unknown(_)) => Some("LE"),
        (Verdict::Refuted, _) => Some("GT"),
        (Verdict::Unknown(_), _) => None,
    };
    let mechanism = if a.annotation().is_some() && b.annotation().is_some() {
        "annotation"
    } else {
        "search"
    };
    let summary = match relation {
        Some(r) => format!("{forward} ({r} via {mechanism})"),
        None => forward.to_string(),
    };
    let exit = exit_of(forward);
    match cli.format {
        OutFormat::Text => println!("{summary}"),
        OutFormat::Json => emit_json(
            "cmp",
            Some(a_src.trim()),
            Some(b_src.trim()),
            json!([]),
            &summary,
            exit,
        ),
    }
    exit
}

fn cmd_probe(cli: &Cli, subject_src: &str, target_src: &str) -> u8 {
    let subject = match expr::parse_subject(subject_src) {
        Ok(v) => v,
        Err(e) => return usage(e.to_string()),
    };
    let target = match CnfForm::parse(target_src) {
        Ok(t) => t,
        Err(e) => return usage(format!("target must be a closed normal form: {e}")),
    };
    let report = probe_ge(&subject, &target, Fuel(cli.fuel), cli.k_max);
    let exit = exit_of(report.summary);
    match cli.format {
        OutFormat::Text => {
            println!("probe: {} >= {}", subject_src.trim(), report.target);
            for level in &report.per_level {
                println!("  {}: {} (spent {})", level.level, level.verdict, level.spent);
            }
            println!("summary: {} (spent {})", report.summary, report.spent);
        }
        OutFormat::Json => emit_json(
            "probe",
            Some(subject_src.trim()),
            Some(&report.target.to_string()),
            levels_json(&report.per_level),
            &report.summary.to_string(),
            exit,
        ),
    }
    exit
}

fn cmd_jump(cli: &Cli, bits_src: &str) -> u8 {
    let bits = match BitSeq::parse_literal(bits_src.trim()) {
        Ok(b) => b,
        Err(e) => return usage(e),
    };
    let seq = jump(&bits);
    let shown: Vec<String> = (0..JUMP_PREFIX_LEN)
        .map(|i| render_value(&seq.get(i)))
        .collect();
    let line = format!("{}, ...", shown.join(", "));
    match cli.format {
        OutFormat::Text => println!("{line}"),
        OutFormat::Json => emit_json("jump", Some(bits_src.trim()), None, json!([]), &line, 0),
    }
    0
}

fn cmd_psi(cli: &Cli, family_src: &str, mode: Mode) -> u8 {
    let kind = match lookup_family(family_src) {
        Ok(k) => k,
        Err(e) => return usage(e),
    };
    let witness = match (mode, kind) {
        (Mode::Forall, FamilyKind::OneDim(p)) => forall_witness(&p),
        (Mode::Exists, FamilyKind::OneDim(p)) => exists_witness(&p),
        (Mode::ExistsForall, FamilyKind::TwoDim(f)) => match exists_forall_witness(&f) {
            Ok(w) => w,
            Err(e) => return usage(e.to_string()),
        },
        (Mode::Forall | Mode::Exists, FamilyKind::TwoDim(_)) => {
            return usage(format!(
                "mode `{}` needs a one-dimensional family; `{}` is two-dimensional",
                mode.name(),
                family_src.trim()
            ));
        }
        (Mode::ExistsForall, FamilyKind::OneDim(_)) => {
            return usage(format!(
                "mode `exists-forall` needs a two-dimensional family; `{}` is one-dimensional",
                family_src.trim()
            ));
        }
    };
    let report = witness.probe(Fuel(cli.fuel), cli.k_max);
    let exit = exit_of(report.summary);
    match cli.format {
        OutFormat::Text => {
            println!("psi {} over {}", mode.name(), family_src.trim());
            println!("witness level: {}", witness.level);
            for level in &report.per_level {
                println!("  {}: {} (spent {})", level.level, level.verdict, level.spent);
            }
            println!("summary: {} (spent {})", report.summary, report.spent);
        }
        OutFormat::Json => emit_json(
            "psi",
            Some(&format!("{} {}", mode.name(), family_src.trim())),
            Some(&witness.level.to_string()),
            levels_json(&report.per_level),
            &report.summary.to_string(),
            exit,
        ),
    }
    exit
}

fn cmd_sierp(cli: &Cli, n: u64, expr_src: &str) -> u8 {
    let subject = match expr::parse_subject(expr_src) {
        Ok(v) => v,
        Err(e) => return usage(e.to_string()),
    };
    let staged = s_n_of(n, &subject);
    let verdict = eval_top(&staged, Fuel(cli.fuel));
    let exit = exit_of(verdict);
    let label = format!("s_{n}({})", expr_src.trim());
    match cli.format {
        OutFormat::Text => println!("{label}: {verdict}"),
        OutFormat::Json => emit_json(
            "sierp",
            Some(&label),
            None,
            json!([]),
            &verdict.to_string(),
            exit,
        ),
    }
    exit
}

fn cmd_selftest(cli: &Cli) -> u8 {
    let outcomes = run_all();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let total = outcomes.len();
    let summary = format!("{passed} of {total} criteria passed");
    let exit = if passed == total { 0 } else { 1 };
    match cli.format {
        OutFormat::Text => {
            for outcome in &outcomes {
                println!("{}", outcome.render());
            }
            println!("{summary}");
        }
        OutFormat::Json => {
            let levels = json!(outcomes
                .iter()
                .map(|o| json!({
                    "level": format!("criterion {}: {}", o.number, o.name),
                    "verdict": if o.passed { "PASS" } else { "FAIL" },
                    "fuel_spent": 0,
                }))
                .collect::<Vec<_>>());
            emit_json("selftest", None, None, levels, &summary, exit);
        }
    }
    exit
}

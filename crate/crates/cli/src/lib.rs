//! Command-line front end: argument parsing, orchestration and output.
//!
//! [`run`] never exits the process; it returns the exit code so tests can
//! drive it directly. `0` means every check passed, `1` that some report
//! failed, `2` a usage or parse error.

pub mod report;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclocert::arith::{lcm, prime_power};
use cyclocert::chartab::enumerate;
use cyclocert::cyclonum::{conductor, field_of_set};
use cyclocert::expr::evaluate;
use cyclocert::props::{self, PropertyOutcome};
use cyclocert::vansum::{enumerate_minimal_vanishing, min_rep};
use cyclocert::verify::verify_all;
use cyclocert::{CharacterId, Family, GroupKind, SubsetSize};
use serde::Serialize;

pub use report::{Metadata, ReportDocument, ReportRow, Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "cyclocert",
    version,
    about = "Exact conductor certification for character values"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Upper bound on worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Include a timestamp and wall time in the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Conductor and field stabilizer of an expression.
    Conductor {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Shortest sum of roots of unity equal to an expression.
    Minrep {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
    },
    /// Minimal vanishing sums up to rotation.
    VansumTable {
        #[arg(long, default_value_t = 7)]
        max_terms: usize,
        #[arg(long, default_value_t = 210)]
        order_bound: u64,
    },
    /// Verify the characters of a group.
    Check {
        #[command(subcommand)]
        target: Target,
        /// Largest subset size tried when probing for generating values.
        #[arg(long, default_value_t = 2)]
        subset_cap: usize,
    },
    /// Smallest number of values whose conductors already give the full one.
    SubsetProbe {
        #[arg(long, default_value_t = 2)]
        cap: usize,
        #[command(subcommand)]
        target: Target,
    },
    /// Seeded property checks.
    Props {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 60)]
        max_modulus: u64,
        #[arg(long, default_value_t = 31)]
        q_max: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Target {
    Gl2(LinearArgs),
    Sl2(LinearArgs),
    Suzuki(SuzukiArgs),
}

#[derive(Debug, Args)]
struct Selection {
    /// Only characters of this family.
    #[arg(long)]
    family: Option<String>,
    /// Only the character with these parameters, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
struct LinearArgs {
    #[arg(long)]
    q: u64,
    /// Sweep every prime power from `--q` up to this.
    #[arg(long)]
    q_max: Option<u64>,
    #[command(flatten)]
    selection: Selection,
}

#[derive(Debug, Args)]
struct SuzukiArgs {
    /// `q = 2^(2n+1)`.
    #[arg(long)]
    exponent: u32,
    #[arg(long)]
    exponent_max: Option<u32>,
    #[command(flatten)]
    selection: Selection,
}

/// A usage error: reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code. Errors go to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() || e.downcast_ref::<cyclocert::Error>().is_some()
            {
                EXIT_USAGE
            } else {
                EXIT_FAILED
            }
        }
    }
}

/// Rendered output plus the exit code it implies.
struct Outcome {
    text: String,
    code: i32,
}

fn execute(cli: &Cli) -> Result<i32> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(usage("--jobs must be positive"));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().context("cannot start worker threads")?;
    let outcome = pool.install(|| dispatch(cli))?;
    match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{}", outcome.text),
    }
    Ok(outcome.code)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Conductor { expr } => conductor_cmd(cli.format, expr),
        Command::Minrep { expr, max_k } => minrep_cmd(cli.format, expr, *max_k),
        Command::VansumTable {
            max_terms,
            order_bound,
        } => vansum_cmd(cli.format, *max_terms, *order_bound),
        Command::Check { target, subset_cap } => check_cmd(cli, target, *subset_cap),
        Command::SubsetProbe { cap, target } => probe_cmd(cli, target, *cap),
        Command::Props {
            samples,
            max_modulus,
            q_max,
        } => props_cmd(cli.format, cli.seed, *samples, *max_modulus, *q_max),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_of<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Serialize)]
struct ConductorOutput {
    expression: String,
    value: String,
    conductor: u64,
    modulus: u64,
    stabilizer: Vec<u64>,
}

fn conductor_cmd(format: Format, text: &str) -> Result<Outcome> {
    let a = evaluate(text)?;
    let field = field_of_set(std::slice::from_ref(&a));
    let out = ConductorOutput {
        expression: text.to_string(),
        value: a.to_string(),
        conductor: conductor(&a),
        modulus: field.modulus(),
        stabilizer: field.stabilizer().to_vec(),
    };
    let text = match format {
        Format::Json => json(&out)?,
        Format::Csv => {
            let s: Vec<String> = out.stabilizer.iter().map(u64::to_string).collect();
            let row = (
                &out.expression,
                &out.value,
                out.conductor,
                out.modulus,
                s.join(";"),
            );
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["expression", "value", "conductor", "modulus", "stabilizer"])?;
            w.serialize(row)?;
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let s: Vec<String> = out.stabilizer.iter().map(u64::to_string).collect();
            format!(
                "{}\nstabilizer mod {}: {{{}}}\n",
                out.conductor,
                out.modulus,
                s.join(", ")
            )
        }
    };
    Ok(Outcome {
        text,
        code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct MinRepOutput {
    expression: String,
    max_k: usize,
    order_bound: u64,
    length: Option<usize>,
    terms: Vec<String>,
}

fn minrep_cmd(format: Format, text: &str, max_k: usize) -> Result<Outcome> {
    let a = evaluate(text)?;
    let rep = min_rep(&a, max_k);
    let out = MinRepOutput {
        expression: text.to_string(),
        max_k,
        order_bound: lcm(2, conductor(&a)),
        length: rep.as_ref().map(|r| r.length),
        terms: rep
            .map(|r| r.terms.iter().map(|t| t.to_string()).collect())
            .unwrap_or_default(),
    };
    let text = match format {
        Format::Json => json(&out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["expression", "max_k", "order_bound", "length", "terms"])?;
            w.write_record([
                out.expression.clone(),
                out.max_k.to_string(),
                out.order_bound.to_string(),
                out.length.map(|l| l.to_string()).unwrap_or_default(),
                out.terms.join(";"),
            ])?;
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => match out.length {
            Some(0) => "0 terms: 0\n".to_string(),
            Some(k) => format!("{k} terms: {}\n", out.terms.join(" + ")),
            None => format!(
                "no sum of at most {} roots of order dividing {}\n",
                out.max_k, out.order_bound
            ),
        },
    };
    Ok(Outcome {
        text,
        code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct VansumRow {
    term_count: usize,
    label: String,
    terms: String,
}

fn vansum_cmd(format: Format, max_terms: usize, order_bound: u64) -> Result<Outcome> {
    if !(2..=cyclocert::vansum::MAX_CLASSIFIED_TERMS).contains(&max_terms) {
        return Err(usage(format!(
            "--max-terms must be between 2 and {}",
            cyclocert::vansum::MAX_CLASSIFIED_TERMS
        )));
    }
    let mut rows = Vec::new();
    for k in 2..=max_terms {
        let mut classes = enumerate_minimal_vanishing(k, order_bound)?;
        classes.sort_by(|a, b| a.label.cmp(&b.label));
        for class in classes {
            let terms: Vec<String> = class
                .canonical_terms
                .iter()
                .map(|t| t.to_string())
                .collect();
            rows.push(VansumRow {
                term_count: k,
                label: class.label,
                terms: terms.join(" + "),
            });
        }
    }
    let text = match format {
        Format::Json => json(&rows)?,
        Format::Csv => csv_of(&rows)?,
        Format::Text => {
            let mut s = String::new();
            for k in 2..=max_terms {
                let of_k: Vec<&VansumRow> = rows.iter().filter(|r| r.term_count == k).collect();
                if of_k.is_empty() {
                    let _ = writeln!(s, "{k}: none");
                }
                for r in of_k {
                    let _ = writeln!(s, "{k} [{}]: {} = 0", r.label, r.terms);
                }
            }
            s
        }
    };
    Ok(Outcome {
        text,
        code: EXIT_OK,
    })
}

fn linear_qs(args: &LinearArgs) -> Result<Vec<u64>> {
    let hi = args.q_max.unwrap_or(args.q);
    if hi < args.q {
        return Err(usage("--q-max is smaller than --q"));
    }
    if args.q_max.is_none() && prime_power(args.q).is_none() {
        return Err(usage(format!("{} is not a prime power", args.q)));
    }
    let qs: Vec<u64> = (args.q.max(2)..=hi)
        .filter(|&q| prime_power(q).is_some())
        .collect();
    if qs.is_empty() {
        return Err(usage("no prime power in the requested range"));
    }
    Ok(qs)
}

fn suzuki_qs(args: &SuzukiArgs) -> Result<Vec<u64>> {
    let hi = args.exponent_max.unwrap_or(args.exponent);
    if hi < args.exponent {
        return Err(usage("--exponent-max is smaller than --exponent"));
    }
    (args.exponent..=hi)
        .map(|n| {
            1u64.checked_shl(2 * n + 1)
                .filter(|_| 2 * n + 1 < 32)
                .ok_or_else(|| usage(format!("exponent {n} is too large")))
        })
        .collect()
}

/// The characters selected by a target, in enumeration order.
fn select(target: &Target) -> Result<(GroupKind, Vec<u64>, Vec<CharacterId>)> {
    let (group, qs, selection) = match target {
        Target::Gl2(a) => (GroupKind::GL2, linear_qs(a)?, &a.selection),
        Target::Sl2(a) => (GroupKind::SL2, linear_qs(a)?, &a.selection),
        Target::Suzuki(a) => (GroupKind::Suzuki, suzuki_qs(a)?, &a.selection),
    };
    let family: Option<Family> = selection
        .family
        .as_deref()
        .map(|f| {
            f.parse()
                .map_err(|e: cyclocert::Error| usage(e.to_string()))
        })
        .transpose()?;
    let mut chars = Vec::new();
    for &q in &qs {
        chars.extend(enumerate(group, q)?.into_iter().filter(|c| {
            family.is_none_or(|f| c.family == f)
                && selection.params.as_ref().is_none_or(|p| &c.params == p)
        }));
    }
    if chars.is_empty() {
        return Err(usage("no character matches the selection"));
    }
    Ok((group, qs, chars))
}

fn metadata(cli: &Cli, group: GroupKind, qs: Vec<u64>) -> Metadata {
    Metadata {
        tool: "cyclocert".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        group: group.name().to_string(),
        q_values: qs,
        timestamp: cli.timing.then(|| chrono::Utc::now().to_rfc3339()),
    }
}

fn check_cmd(cli: &Cli, target: &Target, subset_cap: usize) -> Result<Outcome> {
    let start = Instant::now();
    let (group, qs, chars) = select(target)?;
    let reports = verify_all(&chars, subset_cap)?;
    let rows: Vec<ReportRow> = reports.iter().map(ReportRow::from).collect();
    let elapsed = cli.timing.then(|| start.elapsed().as_secs_f64());
    let doc = ReportDocument::new(metadata(cli, group, qs), rows, elapsed);
    let text = match cli.format {
        Format::Json => doc.to_json()?,
        Format::Csv => report::rows_to_csv(&doc.reports)?,
        Format::Text => doc.to_text(),
    };
    let code = if doc.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    Ok(Outcome { text, code })
}

#[derive(Serialize)]
struct ProbeRow {
    group: String,
    q: u64,
    family: String,
    params: String,
    conductor: u64,
    subset_size: String,
}

fn probe_cmd(cli: &Cli, target: &Target, cap: usize) -> Result<Outcome> {
    let (_, _, chars) = select(target)?;
    let reports = verify_all(&chars, cap)?;
    let over = reports
        .iter()
        .filter(|r| matches!(r.generating_subset_size, SubsetSize::ExceedsCap(_)))
        .count();
    let rows: Vec<ProbeRow> = reports
        .iter()
        .map(|r| ProbeRow {
            group: r.character.group.name().to_string(),
            q: r.character.q,
            family: r.character.family.name().to_string(),
            params: r
                .character
                .params
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(";"),
            conductor: r.conductor,
            subset_size: r.generating_subset_size.to_string(),
        })
        .collect();
    let text = match cli.format {
        Format::Json => json(&rows)?,
        Format::Csv => csv_of(&rows)?,
        Format::Text => {
            let mut counts = std::collections::BTreeMap::new();
            for r in &rows {
                *counts.entry(r.subset_size.clone()).or_insert(0usize) += 1;
            }
            let mut s = String::new();
            for (size, n) in counts {
                let _ = writeln!(s, "subset size {size}: {n} characters");
            }
            let _ = writeln!(s, "{} characters, {over} over cap {cap}", rows.len());
            s
        }
    };
    let code = if over == 0 { EXIT_OK } else { EXIT_FAILED };
    Ok(Outcome { text, code })
}

#[derive(Serialize)]
struct PropsRow {
    name: String,
    checked: usize,
    violations: usize,
    first_violation: String,
}

fn props_cmd(
    format: Format,
    seed: u64,
    samples: usize,
    max_modulus: u64,
    q_max: u64,
) -> Result<Outcome> {
    if max_modulus == 0 {
        return Err(usage("--max-modulus must be positive"));
    }
    let outcomes: Vec<PropertyOutcome> = vec![
        props::conductor_dual_oracle(seed, max_modulus, samples),
        props::two_root_index(seed, samples, max_modulus),
        props::four_root_index(seed, samples, max_modulus),
        props::shortest_rep_containment(q_max)?,
        props::case_classifier_agreement(q_max)?,
    ];
    let rows: Vec<PropsRow> = outcomes
        .iter()
        .map(|o| PropsRow {
            name: o.name.to_string(),
            checked: o.checked,
            violations: o.violations.len(),
            first_violation: o.violations.first().cloned().unwrap_or_default(),
        })
        .collect();
    let text = match format {
        Format::Json => json(&rows)?,
        Format::Csv => csv_of(&rows)?,
        Format::Text => {
            let mut s = String::new();
            for o in &outcomes {
                let status = if o.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{}: {} checked, {} violations: {status}",
                    o.name,
                    o.checked,
                    o.violations.len()
                );
                for v in o.violations.iter().take(5) {
                    let _ = writeln!(s, "  {v}");
                }
            }
            s
        }
    };
    let code = if outcomes.iter().all(PropertyOutcome::passed) {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    Ok(Outcome { text, code })
}

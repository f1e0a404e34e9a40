use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use polyring::ci::ci_report;
use polyring::normal_form::{normal_form_of, normalize, DColumn, DMatrix};
use polyring::polytope::{count_lattice, enumerate_lattice, format_point};
use polyring::presentation::{presentation_with, semistandard_basis, Options, Presentation, Route};
use polyring::Weights;
use serde_json::json;

const MAX_POINTS: usize = 16;
const TRIVIAL: &str = "empty moduli space; trivial ring";

#[derive(Parser)]
#[command(name = "polyring", version, about = "Coordinate rings of polygon spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ring generators, or the semistandard basis in degree N.
    Generators(Common),
    /// Minimal relations among the generators.
    Relations(Common),
    /// Normal forms of degree N, or the normalization of one matrix.
    NormalForm {
        #[command(flatten)]
        common: Common,
        /// Columns separated by ';', each `d_1,...,d_{n-1}@degree`.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Number of lattice points of N times the diagonal polytope.
    Count(Common),
    /// Check every relation on random matrices and report the Hilbert checks.
    Verify(Common),
    /// Complete-intersection report.
    CiCheck(Common),
}

#[derive(Args)]
struct Common {
    /// Comma-separated positive weights.
    #[arg(short, long, value_parser = parse_weights)]
    weights: Weights,
    #[arg(short = 'N', long)]
    degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 2)]
    lg_constant: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_weights(s: &str) -> std::result::Result<Weights, String> {
    let w: Weights = s.parse().map_err(|e: polyring::Error| e.to_string())?;
    if w.len() > MAX_POINTS {
        return Err(format!("{} weights given; at most {MAX_POINTS} are supported", w.len()));
    }
    Ok(w)
}

fn parse_matrix(s: &str, weights: &Weights) -> Result<DMatrix> {
    let columns = s
        .split(';')
        .filter(|c| !c.trim().is_empty())
        .map(|c| {
            let (d, k) = c.trim().split_once('@').with_context(|| format!("column {c:?} lacks '@degree'"))?;
            let d = d
                .trim()
                .trim_start_matches('(')
                .trim_end_matches(')')
                .split(',')
                .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad entry {x:?} in column {c:?}")))
                .collect::<Result<Vec<_>>>()?;
            let k = k.trim().parse::<u32>().with_context(|| format!("bad degree in column {c:?}"))?;
            Ok(DColumn::new(d, k))
        })
        .collect::<Result<Vec<_>>>()?;
    if columns.iter().any(|c| c.d.len() + 1 != weights.len()) {
        bail!("columns must have {} entries", weights.len() - 1);
    }
    Ok(DMatrix::new(weights.clone(), columns)?)
}

fn build(common: &Common) -> Result<Presentation> {
    let opts = Options { lg_constant: common.lg_constant, ..Options::default() };
    Ok(presentation_with(&common.weights, &opts)?)
}

fn to_json(value: serde_json::Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

fn generators(common: &Common) -> Result<String> {
    let mut out = String::new();
    if let Some(k) = common.degree {
        let basis = semistandard_basis(&common.weights, k);
        if common.format == Format::Json {
            return to_json(json!(basis));
        }
        for t in basis {
            writeln!(out, "{t}")?;
        }
        return Ok(out);
    }
    let p = build(common)?;
    if common.format == Format::Json {
        let records: Vec<_> =
            p.generators.iter().enumerate().map(|(i, t)| json!({ "label": p.label(i as u32), "tableau": t })).collect();
        return to_json(json!({ "weights": p.weights, "route": p.route, "generators": records }));
    }
    if p.is_trivial() {
        return Ok(format!("{TRIVIAL}\n"));
    }
    if let Route::Doubled { base } = &p.route {
        writeln!(out, "# degree-two tableaux over {base}")?;
    }
    for (i, t) in p.generators.iter().enumerate() {
        writeln!(out, "{} = {t}", p.label(i as u32))?;
    }
    Ok(out)
}

fn relations(common: &Common) -> Result<String> {
    let p = build(common)?;
    if common.format == Format::Json {
        return to_json(json!(p.relations));
    }
    if p.is_trivial() {
        return Ok(format!("{TRIVIAL}\n"));
    }
    let mut out = String::new();
    for r in &p.relations {
        writeln!(out, "{}", p.format_relation(r))?;
    }
    if p.relations.is_empty() {
        writeln!(out, "no relations")?;
    }
    Ok(out)
}

fn normal_forms(common: &Common, matrix: Option<&str>) -> Result<String> {
    let w = &common.weights;
    let mut out = String::new();
    if let Some(columns) = matrix {
        let m = parse_matrix(columns, w)?;
        let (nf, trace) = normalize(&m)?;
        if common.format == Format::Json {
            return to_json(json!({ "input": m, "normal_form": nf, "trace": trace }));
        }
        writeln!(out, "input  {m}")?;
        for mv in &trace.moves {
            let cols: Vec<String> = mv.result.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{:?} on columns {} and {} -> {}", mv.kind, mv.first, mv.second, cols.join(" "))?;
        }
        writeln!(out, "normal {nf}")?;
        return Ok(out);
    }
    let k = common.degree.context("pass -N/--degree or --matrix")?;
    let forms =
        enumerate_lattice(w, k).iter().map(|d| normal_form_of(d, w, k)).collect::<polyring::Result<Vec<_>>>()?;
    if common.format == Format::Json {
        return to_json(json!(forms));
    }
    for nf in forms {
        writeln!(out, "{} {nf}", format_point(&nf.sum()))?;
    }
    Ok(out)
}

fn count(common: &Common) -> Result<String> {
    let k = common.degree.unwrap_or(1);
    let n = count_lattice(&common.weights, k);
    Ok(match common.format {
        Format::Text => format!("{n}\n"),
        Format::Json => to_json(json!({ "weights": common.weights, "degree": k, "count": n }))?,
    })
}

/// Output and whether every relation passed.
fn verify(common: &Common) -> Result<(String, bool)> {
    let p = build(common)?;
    if p.is_trivial() {
        let out = match common.format {
            Format::Text => format!("{TRIVIAL}\n"),
            Format::Json => to_json(json!({ "weights": p.weights, "trivial": true }))?,
        };
        return Ok((out, true));
    }
    let checks = p.verify(common.seed, common.trials);
    let ok = checks.iter().all(|c| c.passed);
    if common.format == Format::Json {
        let out = to_json(json!({
            "weights": p.weights,
            "seed": common.seed,
            "relations": checks,
            "hilbert": p.hilbert,
        }))?;
        return Ok((out, ok));
    }
    let mut out = String::new();
    for (c, r) in checks.iter().zip(&p.relations) {
        let verdict = if c.passed { "pass" } else { "FAIL" };
        writeln!(out, "{verdict} {}", p.format_relation(r))?;
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    writeln!(out, "{passed} of {} relations pass {} trials (seed {})", checks.len(), common.trials, common.seed)?;
    for h in &p.hilbert {
        let status = match h.ideal_rank {
            None => "skipped".to_string(),
            Some(rank) if h.certified() => format!("ideal rank {rank}, certified"),
            Some(rank) => format!("ideal rank at least {rank}, open"),
        };
        writeln!(out, "degree {}: {} monomials, {} lattice points, {status}", h.degree, h.free, h.expected)?;
    }
    Ok((out, ok))
}

fn ci_check(common: &Common) -> Result<String> {
    let report = ci_report(&common.weights);
    Ok(match common.format {
        Format::Text => format!("{report}\n"),
        Format::Json => to_json(json!(report))?,
    })
}

fn run(command: &Command) -> Result<(String, bool)> {
    let out = match command {
        Command::Generators(c) => generators(c)?,
        Command::Relations(c) => relations(c)?,
        Command::NormalForm { common, matrix } => normal_forms(common, matrix.as_deref())?,
        Command::Count(c) => count(c)?,
        Command::Verify(c) => return verify(c),
        Command::CiCheck(c) => ci_check(c)?,
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

//! Command-line front end.

use crate::cells::Chart;
use crate::decomposer::{
    analyze, case1_structure, case2_structure, Analysis, CaseTag, Count, DecompositionReport, MeasureTag, Options,
    DEFAULT_CELL_BUDGET,
};
use crate::error::{Error, Result};
use crate::measure::{mu, ComponentMeasure};
use crate::projective::{Disk, HomographicMap, QPoint};
use crate::rational::{check_prime, fmt_rational, parse_rational, vp};
use crate::verifier::{orbit, verify_all};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::io::Write;

pub const BUDGET_ENV: &str = "HOMODYN_CELL_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "homodyn", version, about = "Minimal decomposition of p-adic homographic maps")]
pub struct Cli {
    /// Relative p-adic precision in digits.
    #[arg(long, global = true, default_value_t = 64)]
    pub precision: u32,
    /// Largest cell complex any command may enumerate.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_CELL_BUDGET)]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    pub json: Option<std::path::PathBuf>,
    /// Label the fixed points with −√Δ in place of √Δ.
    #[arg(long, global = true)]
    pub swap_roots: bool,
    /// Worker threads; enumeration is sequential, so only 1 is accepted.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    /// The prime p.
    #[arg(long = "p")]
    pub p: u64,
    /// Coefficients a,b,c,d of (ax+b)/(cx+d); integers or fractions n/m.
    #[arg(long, allow_hyphen_values = true)]
    pub map: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the map and report the component count.
    Analyze {
        #[command(flatten)]
        m: MapArgs,
        /// Include the component atlas at this level.
        #[arg(long)]
        level: Option<u32>,
    },
    /// List the components at a level.
    Decompose {
        #[command(flatten)]
        m: MapArgs,
        #[arg(long)]
        level: u32,
    },
    /// Iterate the map from a rational start.
    Orbit {
        #[command(flatten)]
        m: MapArgs,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        x0: String,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        /// Levels whose cells the trace records, comma separated.
        #[arg(long, value_delimiter = ',')]
        levels: Vec<u32>,
    },
    /// Measure of a ball or complement of a ball.
    Measure {
        #[command(flatten)]
        m: MapArgs,
        /// center,radius with radius a power of p, e.g. 0,1 for Z_p.
        #[arg(long, allow_hyphen_values = true)]
        cell: String,
        /// Use the complement of the ball.
        #[arg(long)]
        complement: bool,
        /// mu_hat, mu_bar or sigma:i.
        #[arg(long, default_value = "mu_hat")]
        kind: String,
        /// Atlas level for sigma; defaults to the stabilization level.
        #[arg(long)]
        level: Option<u32>,
    },
    /// Check every claim against brute-force dynamics.
    Verify {
        #[command(flatten)]
        m: MapArgs,
        #[arg(long, default_value_t = 3)]
        level: u32,
    },
}

/// What a command produced: text for the terminal, JSON for files, and
/// whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub ok: bool,
}

fn parse_map(m: &MapArgs) -> Result<HomographicMap> {
    check_prime(m.p)?;
    HomographicMap::parse(&m.map, m.p)
}

fn options(cli: &Cli) -> Result<Options> {
    if cli.precision < 8 {
        return Err(Error::Config(format!("precision {} is below 8", cli.precision)));
    }
    if cli.budget == 0 {
        return Err(Error::Config("budget must be positive".into()));
    }
    if cli.threads != 1 {
        return Err(Error::Config("only --threads 1 is supported".into()));
    }
    Ok(Options { precision: cli.precision, cell_budget: cli.budget, swap_roots: cli.swap_roots })
}

fn parse_cell(s: &str, complement: bool, p: u64) -> Result<Disk> {
    let (c, r) = s
        .split_once(',')
        .ok_or_else(|| Error::Input(format!("cell '{s}' is not center,radius")))?;
    let center = parse_rational(c)?;
    let radius = parse_rational(r)?;
    let k = vp(&radius, p).filter(|&k| crate::rational::pow_p_rat(p, -k) == radius);
    let Some(k) = k else {
        return Err(Error::Input(format!("radius {r} is not a power of {p}")));
    };
    Ok(if complement { Disk::complement(p, center, -k) } else { Disk::ball(p, center, -k) })
}

fn measure_symbol(t: MeasureTag) -> &'static str {
    match t {
        MeasureTag::MuHat => "μ̂",
        MeasureTag::MuBar => "μ̄",
    }
}

/// One-line summary such as "Case III unramified (√2); MINIMAL; odometer (4,12,36,…); measure μ̂".
pub fn summary(an: &Analysis) -> String {
    let mut parts = vec![an.case.short()];
    match an.count() {
        Count::Finite(1) => parts.push("MINIMAL".into()),
        Count::Finite(k) => parts.push(format!("{k} components")),
        Count::Infinite(_) => parts.push("infinitely many components".into()),
    }
    if let Some(o) = an.odometer() {
        parts.push(format!("odometer {}", o.text()));
    }
    if let Some(t) = an.measure_tag() {
        parts.push(format!("measure {}", measure_symbol(t)));
    }
    parts.join("; ")
}

fn report_text(an: &Analysis, r: &DecompositionReport) -> String {
    let mut out = vec![summary(an)];
    let pr = &an.profile;
    if let Some(l) = &pr.lambda {
        out.push(format!("λ = {l}"));
    }
    if let Some(l) = pr.ell {
        out.push(format!("ℓ = {l}"));
    }
    for (k, v) in &pr.valuations {
        out.push(format!("{k} = {v}"));
    }
    for (name, v) in [("x₀", &pr.x0), ("x₁", &pr.x1), ("x₂", &pr.x2), ("α", &pr.alpha)] {
        if let Some(v) = v {
            out.push(format!("{name} = {v}"));
        }
    }
    if let (Some(d), Some(v)) = (pr.delta, pr.v0) {
        out.push(format!("δ = {d}, v₀ = {v}"));
    }
    if let Some(f) = &r.formula {
        out.push(format!("count = {f}"));
    }
    if let Some(c) = &r.chart {
        out.push(format!("chart: {:?} q = {}, m = {}", c.kind, c.q, c.m));
    }
    if let Some(s) = r.stabilization_level {
        out.push(format!("stabilization level = {s}"));
    }
    if let Some(a) = &r.atlas {
        out.push(format!("atlas at level {}:", a.level));
        for (i, c) in a.components.iter().enumerate() {
            let disks: Vec<String> = c.disks.iter().map(disk_text).collect();
            out.push(format!("  B{} ({} cells): {}", i + 1, c.cells.len(), disks.join(", ")));
        }
    }
    out.extend(r.notes.iter().cloned());
    out.join("\n")
}

fn disk_text(d: &crate::projective::DiskJson) -> String {
    let b = format!("D̄({}, {})", d.center, d.radius);
    if d.complement {
        format!("P¹∖{b}")
    } else {
        b
    }
}

fn to_value<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let opts = options(cli)?;
    match &cli.command {
        Command::Analyze { m, level } => {
            let an = analyze(&parse_map(m)?, &opts)?;
            let r = match level {
                Some(n) => an.component_atlas(*n)?,
                None => an.minimal_count()?,
            };
            Ok(Outcome { text: report_text(&an, &r), json: to_value(&r), ok: true })
        }
        Command::Decompose { m, level } => {
            let an = analyze(&parse_map(m)?, &opts)?;
            let r = an.component_atlas(*level)?;
            let mut json = to_value(&r);
            let mut text = report_text(&an, &r);
            match &an.case {
                CaseTag::CaseI => {
                    let s = case1_structure(&an, *level)?;
                    text.push_str(&format!("\ncomplement component: {}", disk_text(&s.complement_component)));
                    for sp in &s.spheres {
                        text.push_str(&format!(
                            "\nsphere S(x₀, p^{}): {} components of radius p^{}",
                            sp.m, sp.count, sp.radius_exp
                        ));
                    }
                    json["structure"] = to_value(&s);
                }
                CaseTag::CaseII { .. } | CaseTag::AffineDelegate { translation: false, .. } => {
                    let s = case2_structure(&an)?;
                    text.push_str(&format!("\n{}", s.description));
                    json["structure"] = to_value(&s);
                }
                _ => {}
            }
            Ok(Outcome { text, json, ok: true })
        }
        Command::Orbit { m, x0, steps, levels } => {
            let phi = parse_map(m)?;
            let x = if x0 == "inf" || x0 == "∞" { QPoint::Infinity } else { QPoint::Finite(parse_rational(x0)?) };
            let chart = match analyze(&phi, &opts) {
                Ok(an) => an.chart().cloned(),
                Err(Error::Refusal(_)) => Some(Chart::identity(phi.p)),
                Err(e) => return Err(e),
            };
            if !levels.is_empty() && chart.is_none() {
                return Err(Error::Domain("this map has no invariant cell complex to record visits in".into()));
            }
            let t = orbit(&phi, &x, *steps, opts.precision, chart.as_ref(), levels)?;
            let mut text: Vec<String> = t
                .points
                .iter()
                .enumerate()
                .map(|(i, s)| match t.exact_prefix.get(i) {
                    Some(e) => format!("{i:>4}  {e}"),
                    None => format!("{i:>4}  {s}"),
                })
                .collect();
            for v in &t.visited_cells {
                text.push(format!("level {}: {} cells visited", v.level, v.cells.len()));
            }
            for e in &t.precision_events {
                text.push(format!("precision at step {}: {:?} → {:?} digits", e.step, e.from, e.to));
            }
            Ok(Outcome { text: text.join("\n"), json: to_value(&t), ok: true })
        }
        Command::Measure { m, cell, complement, kind, level } => {
            let phi = parse_map(m)?;
            let disk = parse_cell(cell, *complement, phi.p)?;
            let value = match kind.as_str() {
                "mu_hat" => mu(MeasureTag::MuHat, &disk),
                "mu_bar" => mu(MeasureTag::MuBar, &disk),
                k => {
                    let i: usize = k
                        .strip_prefix("sigma:")
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::Input(format!("unknown measure kind '{k}'")))?;
                    let an = analyze(&phi, &opts)?;
                    let n = match level {
                        Some(n) => *n,
                        None => an.stabilization_level()?,
                    };
                    ComponentMeasure::from_analysis(&an, n, i)?.sigma(&disk)?
                }
            };
            let json = json!({
                "cell": disk.to_json(),
                "kind": kind,
                "value": {"num": value.numer().to_string(), "den": value.denom().to_string()},
            });
            Ok(Outcome { text: fmt_rational(&value), json, ok: true })
        }
        Command::Verify { m, level } => {
            let an = analyze(&parse_map(m)?, &opts)?;
            let r = verify_all(&an, *level)?;
            let mut text = vec![summary(&an)];
            text.extend(r.lines.iter().cloned());
            Ok(Outcome { text: text.join("\n"), json: to_value(&r), ok: r.agree })
        }
    }
}

/// Run a parsed command line, print, and return the exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(out) => {
            let rendered = serde_json::to_string_pretty(&out.json).expect("json renders");
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, format!("{rendered}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            let body = match cli.format {
                Format::Text => &out.text,
                Format::Json => &rendered,
            };
            let _ = writeln!(std::io::stdout(), "{body}");
            if out.ok {
                0
            } else {
                eprintln!("error: verification disagreement");
                5
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

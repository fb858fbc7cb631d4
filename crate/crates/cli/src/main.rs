//! `heatcomp` command line: temperatures, comparisons, hottest points and
//! the acceptance suites, written as CSV or JSON.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heatcomp::compare::{
    compare_on_times, criterion_complement, criterion_theorem1, criterion_theorem2, initially_hotter_numeric,
    ComparisonVerdict, Relation, Side,
};
use heatcomp::heat::{Field, QuadratureConfig, Triple};
use heatcomp::hotspot::{track, SearchConfig};
use heatcomp::{Domain, Location, Point, Space};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "heatcomp", version, about = "Heat content comparison on the Euclidean and hyperbolic planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Temperature of a domain at points over a time grid.
    Temp(TempArgs),
    /// Which of two (point, domain) pairs is initially hotter.
    Compare(CompareArgs),
    /// Hottest points along a time grid, with merge and collapse events.
    Hotspots(HotspotArgs),
    /// Run acceptance suites by name or number, or "all".
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Seed recorded in the output header.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Absolute accuracy requested for temperatures.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct TempArgs {
    #[arg(long)]
    domain: PathBuf,
    /// Evaluation point `x,y` (hyperbolic: `x,y` or `x,y,z`); repeatable.
    #[arg(long = "point")]
    points: Vec<String>,
    /// Adds an `N×N` chart grid over the bounding box.
    #[arg(long)]
    grid: Option<usize>,
    /// `tmin:tmax:N[:log|lin]`.
    #[arg(long)]
    times: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    domain: PathBuf,
    #[arg(long)]
    point: String,
    /// Second domain (default: the first).
    #[arg(long)]
    domain2: Option<PathBuf>,
    /// Second point (default: the first).
    #[arg(long)]
    point2: Option<String>,
    /// Explicit time grid; without it the horizon is discovered.
    #[arg(long)]
    times: Option<String>,
    /// `R:R̃` for the spherical area comparison.
    #[arg(long)]
    radii: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct HotspotArgs {
    #[arg(long)]
    domain: PathBuf,
    #[arg(long)]
    times: String,
    /// Seeds per axis of the search grid.
    #[arg(long, default_value_t = 7)]
    search_grid: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(default_value = "all")]
    suite: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

type CliResult<T> = std::result::Result<T, String>;

/// Report text and whether every check passed.
struct Output {
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let (common, result) = match &cli.command {
        Command::Temp(a) => (&a.common, cmd_temp(a)),
        Command::Compare(a) => (&a.common, cmd_compare(a)),
        Command::Hotspots(a) => (&a.common, cmd_hotspots(a)),
        Command::Verify(a) => (&a.common, cmd_verify(a)),
    };
    match result.and_then(|out| write_output(common.out.as_deref(), &out.text).map(|_| out.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("HEATCOMP_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("HEATCOMP_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn load_domain(path: &Path) -> CliResult<Domain> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Domain::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_point(space: Space, raw: &str) -> CliResult<Point> {
    let coords: Vec<f64> = raw
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| format!("bad coordinate {s:?} in point {raw:?}")))
        .collect::<CliResult<_>>()?;
    Point::from_coords(space, &coords).map_err(|e| e.to_string())
}

/// Parses `tmin:tmax:N[:log|lin]`.
fn parse_times(raw: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = raw.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(format!("time grid {raw:?} is not tmin:tmax:N[:log|lin]"));
    }
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("bad number {s:?} in time grid"));
    let (lo, hi) = (num(parts[0])?, num(parts[1])?);
    let n: usize = parts[2].trim().parse().map_err(|_| format!("bad point count {:?} in time grid", parts[2]))?;
    let log = match parts.get(3).map(|s| s.trim()) {
        None | Some("log") => true,
        Some("lin") | Some("linear") => false,
        Some(other) => return Err(format!("unknown time spacing {other:?}")),
    };
    if n == 0 {
        return Err("empty time grid".into());
    }
    if !(lo > 0.0 && lo.is_finite() && hi.is_finite() && hi >= lo) {
        return Err(format!("time grid needs 0 < tmin <= tmax, got {lo}:{hi}"));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n)
        .map(|k| {
            let u = k as f64 / (n - 1) as f64;
            if log {
                lo * (hi / lo).powf(u)
            } else {
                lo + (hi - lo) * u
            }
        })
        .collect())
}

fn quad_config(common: &Common) -> CliResult<QuadratureConfig> {
    QuadratureConfig::with_tol(common.tol).map_err(|e| e.to_string())
}

/// Shortest decimal with 17 significant digits.
fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn header(out: &mut String, command: &str, common: &Common, extra: &[(&str, String)]) {
    let _ = write!(out, "# heatcomp {command} seed={} tol={}", common.seed, num(common.tol));
    for (k, v) in extra {
        let _ = write!(out, " {k}={v}");
    }
    out.push('\n');
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn grid_points(domain: &Domain, n: usize) -> Vec<Point> {
    let (lo, hi) = domain.chart_box();
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let u = if n == 1 { 0.5 } else { i as f64 / (n - 1) as f64 };
            let v = if n == 1 { 0.5 } else { j as f64 / (n - 1) as f64 };
            let c = heatcomp::geometry::plane::Vec2::new(lo.x + u * (hi.x - lo.x), lo.y + v * (hi.y - lo.y));
            out.push(Point::from_chart(domain.space(), c));
        }
    }
    out
}

fn cmd_temp(a: &TempArgs) -> CliResult<Output> {
    let domain = load_domain(&a.domain)?;
    let times = parse_times(&a.times)?;
    let cfg = quad_config(&a.common)?;
    let mut points: Vec<Point> = a.points.iter().map(|p| parse_point(domain.space(), p)).collect::<CliResult<_>>()?;
    if let Some(n) = a.grid {
        if n == 0 {
            return Err("empty spatial grid".into());
        }
        points.extend(grid_points(&domain, n));
    }
    if points.is_empty() {
        return Err("no evaluation points: pass --point or --grid".into());
    }
    let mut rows = Vec::with_capacity(times.len() * points.len());
    for &t in &times {
        let field = Field::tabulated(&domain, t, domain.diameter(), cfg).map_err(|e| e.to_string())?;
        let temps = field.batch(&points).map_err(|e| format!("t = {t}: {e}"))?;
        for (p, f) in points.iter().zip(temps) {
            rows.push((t, p.coords(), f));
        }
    }
    let space = domain.space().name();
    let text = match a.common.format {
        Format::Csv => {
            let mut s = String::new();
            header(&mut s, "temp", &a.common, &[("space", space.into())]);
            s.push_str("t,x,y,value,complement,ln_value,ln_complement,abs_err\n");
            for (t, c, f) in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    num(*t),
                    num(c[0]),
                    num(c[1]),
                    num(f.value),
                    num(f.complement),
                    num(f.ln_value),
                    num(f.ln_complement),
                    num(f.abs_err())
                );
            }
            s
        }
        Format::Json => to_json(&json!({
            "command": "temp",
            "seed": a.common.seed,
            "tol": a.common.tol,
            "space": space,
            "rows": rows.iter().map(|(t, c, f)| json!({"t": t, "point": c, "temperature": f})).collect::<Vec<_>>(),
        })),
    };
    Ok(Output { text, ok: true })
}

fn relation_name(v: &ComparisonVerdict) -> &'static str {
    match (v.relation, v.hotter) {
        (Relation::StrictlyHotter, Some(Side::First)) => "first_strictly_hotter",
        (Relation::StrictlyHotter, Some(Side::Second)) => "second_strictly_hotter",
        (Relation::HotterOrEqual, Some(Side::First)) => "first_hotter_or_equal",
        (Relation::HotterOrEqual, Some(Side::Second)) => "second_hotter_or_equal",
        (Relation::HotterOrEqual, None) => "equal",
        _ => "inconclusive",
    }
}

fn cmd_compare(a: &CompareArgs) -> CliResult<Output> {
    let d1 = load_domain(&a.domain)?;
    let d2 = match &a.domain2 {
        Some(p) => load_domain(p)?,
        None => d1.clone(),
    };
    let p1 = parse_point(d1.space(), &a.point)?;
    let p2 = parse_point(d2.space(), a.point2.as_deref().unwrap_or(&a.point))?;
    let t1 = Triple::new(p1, d1).map_err(|e| e.to_string())?;
    let t2 = Triple::new(p2, d2).map_err(|e| e.to_string())?;
    let cfg = quad_config(&a.common)?;
    let err = |e: heatcomp::Error| e.to_string();

    let mut verdicts: Vec<(&str, ComparisonVerdict)> = Vec::new();
    let loc = |t: &Triple| t.domain.contains(&t.point).map_err(err);
    let (l1, l2) = (loc(&t1)?, loc(&t2)?);
    if l1 == Location::Inside && l2 == Location::Inside {
        verdicts.push(("distance_from_complement", criterion_theorem1(&t1, &t2).map_err(err)?));
    } else if l1 != Location::Inside && l2 != Location::Inside {
        verdicts.push(("distance_to_domain", criterion_complement(&t1, &t2).map_err(err)?));
    }
    if let Some(raw) = &a.radii {
        let (r, rt) = raw
            .split_once(':')
            .and_then(|(x, y)| Some((x.trim().parse::<f64>().ok()?, y.trim().parse::<f64>().ok()?)))
            .ok_or_else(|| format!("radii {raw:?} are not R:R̃"))?;
        verdicts.push(("sphere_areas", criterion_theorem2(&t1, &t2, r, rt).map_err(err)?));
    }
    let numeric = match &a.times {
        Some(raw) => compare_on_times(&t1, &t2, &parse_times(raw)?, &cfg),
        None => initially_hotter_numeric(&t1, &t2, None, 10, &cfg),
    }
    .map_err(err)?;
    verdicts.push(("numeric_grid", numeric));

    let text = match a.common.format {
        Format::Csv => {
            let mut s = String::new();
            header(&mut s, "compare", &a.common, &[]);
            s.push_str("criterion,verdict,min_margin,tau\n");
            for (name, v) in &verdicts {
                let tau = v.tau.map(num).unwrap_or_default();
                let _ = writeln!(s, "{name},{},{},{tau}", relation_name(v), num(v.min_margin));
            }
            s.push_str("# numeric trace: t,first_logit,second_logit,margin,budget\n");
            for m in &verdicts.last().expect("numeric verdict").1.trace {
                let _ = writeln!(s, "{},{},{},{},{}", num(m.at), num(m.first), num(m.second), num(m.margin), num(m.budget));
            }
            s
        }
        Format::Json => to_json(&json!({
            "command": "compare",
            "seed": a.common.seed,
            "tol": a.common.tol,
            "verdicts": verdicts
                .iter()
                .map(|(name, v)| json!({"criterion": name, "verdict": relation_name(v), "report": v}))
                .collect::<Vec<_>>(),
        })),
    };
    Ok(Output { text, ok: true })
}

fn cmd_hotspots(a: &HotspotArgs) -> CliResult<Output> {
    let domain = load_domain(&a.domain)?;
    let times = parse_times(&a.times)?;
    let cfg = SearchConfig {
        grid: a.search_grid,
        quad: quad_config(&a.common)?,
        ..SearchConfig::default()
    };
    let traj = track(&domain, &times, &cfg).map_err(|e| e.to_string())?;
    let text = match a.common.format {
        Format::Csv => {
            let mut s = String::new();
            header(&mut s, "hotspots", &a.common, &[("space", domain.space().name().into())]);
            s.push_str("t,x,y,value,cluster_id\n");
            for h in &traj.samples {
                for (k, p) in h.points.iter().enumerate() {
                    let c = p.coords();
                    let _ = writeln!(s, "{},{},{},{},{k}", num(h.t), num(c[0]), num(c[1]), num(h.temperature.value));
                }
            }
            s.push_str("# events: kind,t,bracket_lo,bracket_hi\n");
            for e in &traj.events {
                let kind = serde_json::to_value(&e.kind).expect("events serialize");
                let _ = writeln!(
                    s,
                    "# {},{},{},{}",
                    kind.as_str().unwrap_or("event"),
                    num(e.t),
                    num(e.bracket.0),
                    num(e.bracket.1)
                );
            }
            s
        }
        Format::Json => to_json(&json!({
            "command": "hotspots",
            "seed": a.common.seed,
            "tol": a.common.tol,
            "samples": traj.samples,
            "events": traj.events,
        })),
    };
    Ok(Output { text, ok: true })
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<Output> {
    let reports = heatcomp::verify::run(&a.suite).map_err(|e| e.to_string())?;
    let passed = reports.iter().filter(|r| r.passed).count();
    let ok = passed == reports.len();
    let text = match a.common.format {
        Format::Csv => {
            let mut s = String::new();
            header(&mut s, "verify", &a.common, &[("suite", a.suite.clone())]);
            for r in &reports {
                let failed = r.checks.iter().filter(|c| !c.passed).count();
                let _ = writeln!(
                    s,
                    "[{}] {:>2} {:<10} {} ({} checks, {failed} failed)",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.id,
                    r.suite,
                    r.title,
                    r.checks.len()
                );
                for c in r.checks.iter().filter(|c| !c.passed) {
                    let _ = writeln!(s, "    failed: {}", c.message);
                }
            }
            let _ = writeln!(s, "{passed} of {} suites passed", reports.len());
            s
        }
        Format::Json => to_json(&json!({
            "command": "verify",
            "seed": a.common.seed,
            "passed": passed,
            "total": reports.len(),
            "suites": reports
                .iter()
                .map(|r| json!({"id": r.id, "suite": r.suite, "title": r.title, "passed": r.passed, "checks": r.checks}))
                .collect::<Vec<_>>(),
        })),
    };
    Ok(Output { text, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_grids() {
        assert_eq!(parse_times("0.1:0.1:1").unwrap(), vec![0.1]);
        let g = parse_times("0.01:1:3:log").unwrap();
        assert!((g[1] - 0.1).abs() < 1e-15 && (g[2] - 1.0).abs() < 1e-15);
        assert_eq!(parse_times("1:3:3:lin").unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(parse_times("0.1:1:0").unwrap_err().contains("empty"));
        assert!(parse_times("0:1:3").is_err());
        assert!(parse_times("1:0.5:3").is_err());
        assert!(parse_times("1:2").is_err());
        assert!(parse_times("1:2:3:cubic").is_err());
    }

    #[test]
    fn points_and_numbers() {
        assert_eq!(parse_point(Space::Euclidean2, "0.5, -1").unwrap().coords(), vec![0.5, -1.0]);
        assert_eq!(parse_point(Space::Hyperbolic2, "0,0").unwrap().coords(), vec![0.0, 0.0, 1.0]);
        assert!(parse_point(Space::Euclidean2, "1;2").is_err());
        assert!(parse_point(Space::Euclidean2, "1,2,3").is_err());
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(0.1).parse::<f64>().unwrap(), 0.1);
    }
}

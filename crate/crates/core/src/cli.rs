//! The `torheight` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::concave::{legendre_dual, refined_lattice_points};
use crate::error::Error;
use crate::exact::{fmt_decimal, fmt_q, ValueGroup, Q};
use crate::heights::{global_height, place_integral, roof_from_lift, CircleOptions, RoofInstance};
use crate::json::{
    concave_from_json, concave_to_json, envelope_from_json, envelope_to_json, float, height_report_to_json,
    instance_from_json, measure_to_json, polytope_from_json, polytope_to_json, support_from_json,
};
use crate::monge::ma_measure;
use crate::polyhedra::{volume, VolumeMode};
use crate::random::InstanceGen;
use crate::toric::{degree, toric_local_height, trop_pushforward_measure, weil_divisor_coefficients};
use crate::verify::{
    a21_case, balanced_shifts, involution_case, mass_case, product_formula_on, run_suite, scaling_on,
    PropertyOutcome, SuiteSize,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Hull,
    Volume,
    Dual,
    Ma,
    Degree,
    LocalHeight,
    Pushforward,
    GlobalHeight,
    Check,
    EmitRoof,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "torheight", version, about = "Exact convex geometry for toric heights")]
pub struct Args {
    pub command: Command,
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Defaults to json, except csv for emit-roof.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value = "divisible")]
    pub gamma: ValueGroup,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Place id for emit-roof and global-height.
    #[arg(long)]
    pub place: Option<String>,
    /// Grid refinement for emit-roof.
    #[arg(long, default_value_t = 4)]
    pub resolution: u32,
}

/// Rows for csv output.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn coords(prefix: &str, n: usize, tail: &[&str]) -> Self {
        let mut header: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        header.extend(tail.iter().map(|s| s.to_string()));
        Table { header, rows: Vec::new() }
    }
}

struct Outcome {
    payload: Value,
    table: Table,
    exact: bool,
    /// False for a failed `check`.
    passed: bool,
}

impl Outcome {
    fn exact(payload: Value, table: Table) -> Self {
        Outcome { payload, table, exact: true, passed: true }
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&args, stdout) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Compute(Error::Parse(msg))) => {
            let _ = writeln!(stderr, "error: malformed input: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_COMPUTE
        }
    }
}

fn execute(args: &Args, stdout: &mut dyn Write) -> Result<bool, Failure> {
    let start = Instant::now();
    let (bytes, input) = read_input(args)?;
    let outcome = match args.command {
        Command::Hull => hull(&require(input)?)?,
        Command::Volume => volume_cmd(&require(input)?)?,
        Command::Dual => dual(&require(input)?, &args.gamma)?,
        Command::Ma => ma(&require(input)?, &args.gamma)?,
        Command::Degree => degree_cmd(&require(input)?)?,
        Command::LocalHeight => local_height(&require(input)?)?,
        Command::Pushforward => pushforward(&require(input)?)?,
        Command::GlobalHeight => global(&require(input)?, args)?,
        Command::Check => check(input.as_ref(), args.seed)?,
        Command::EmitRoof => emit_roof(&require(input)?, args)?,
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let format = args.format.unwrap_or(if args.command == Command::EmitRoof { Format::Csv } else { Format::Json });
    let text = match format {
        Format::Json => {
            let result = json!({
                "command": args.command.to_possible_value().expect("named").get_name(),
                "inputs_digest": format!("{:x}", Sha256::digest(&bytes)),
                "payload": outcome.payload,
                "exact": outcome.exact,
                "elapsed_ms": float(elapsed_ms),
            });
            let mut s = serde_json::to_string_pretty(&result).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(&outcome.table)?,
    };
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Usage(format!("cannot write output: {e}")))?,
    }
    Ok(outcome.passed)
}

fn read_input(args: &Args) -> Result<(Vec<u8>, Option<Value>), Failure> {
    let Some(path) = &args.input else {
        return Ok((Vec::new(), None));
    };
    let bytes =
        std::fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::Usage(format!("{} is not valid JSON: {e}", path.display())))?;
    Ok((bytes, Some(value)))
}

fn require(input: Option<Value>) -> Result<Value, Failure> {
    input.ok_or_else(|| Failure::Usage("--input FILE is required for this command".into()))
}

fn render_csv(table: &Table) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::Usage(format!("cannot write csv: {e}"));
    w.write_record(&table.header).map_err(csv_err)?;
    for row in &table.rows {
        w.write_record(row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(format!("cannot write csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn hull(input: &Value) -> Result<Outcome, Failure> {
    let p = polytope_from_json(input)?;
    let mut table = Table::coords("x", p.ambient_dim(), &[]);
    table.rows = p.vertices().iter().map(|v| strings(v)).collect();
    Ok(Outcome::exact(polytope_to_json(&p), table))
}

fn volume_cmd(input: &Value) -> Result<Outcome, Failure> {
    let p = polytope_from_json(input)?;
    let (vol, rel) = (volume(&p, VolumeMode::Ambient), volume(&p, VolumeMode::Relative));
    let mut table = Table::new(&["volume", "relative_volume", "dim"]);
    table.rows.push(vec![fmt_q(&vol), fmt_q(&rel), p.dim().to_string()]);
    Ok(Outcome::exact(json!({"value": fmt_q(&vol), "relative_value": fmt_q(&rel), "dim": p.dim()}), table))
}

/// Pieces go to the lift of the dual; a lift goes back to pieces.
fn dual(input: &Value, gamma: &ValueGroup) -> Result<Outcome, Failure> {
    if input.get("lift").is_some() {
        let f = envelope_from_json(input)?.dual();
        let mut table = Table::coords("slope", f.ambient_dim(), &["constant"]);
        table.rows = f
            .pieces()
            .iter()
            .map(|p| strings(&p.slope).into_iter().chain([fmt_q(&p.constant)]).collect())
            .collect();
        let mut payload = concave_to_json(&f);
        payload["gamma_lattice"] = json!(f.is_gamma_lattice(gamma));
        return Ok(Outcome::exact(payload, table));
    }
    let f = concave_from_json(input)?;
    let g = legendre_dual(&f);
    let mut table = Table::coords("m", f.ambient_dim(), &["value"]);
    table.rows = g.vertex_lift().iter().map(|(m, t)| strings(m).into_iter().chain([fmt_q(t)]).collect()).collect();
    let mut payload = envelope_to_json(&g);
    payload["gamma_lattice"] = json!(f.is_gamma_lattice(gamma));
    Ok(Outcome::exact(payload, table))
}

fn measure_outcome(m: &crate::monge::DiscreteMeasure, n: usize) -> (Value, Table) {
    let mut table = Table::coords("u", n, &["mass"]);
    table.rows =
        m.atoms().iter().map(|a| strings(&a.at).into_iter().chain([fmt_q(&a.mass)]).collect()).collect();
    let mut payload = measure_to_json(m);
    payload["total_mass"] = json!(fmt_q(&m.total_mass()));
    (payload, table)
}

fn ma(input: &Value, gamma: &ValueGroup) -> Result<Outcome, Failure> {
    let f = concave_from_json(input)?;
    let (mut payload, table) = measure_outcome(&ma_measure(&f), f.ambient_dim());
    payload["gamma_lattice"] = json!(f.is_gamma_lattice(gamma));
    Ok(Outcome::exact(payload, table))
}

fn degree_cmd(input: &Value) -> Result<Outcome, Failure> {
    let support = support_from_json(input)?;
    let d = degree(&support)?;
    let report = weil_divisor_coefficients(&support);
    let rays: Vec<Value> = report
        .ray_coefficients
        .iter()
        .map(|(v, c)| json!({"ray": v.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "coefficient": c.to_string()}))
        .collect();
    let mut table = Table::new(&["degree"]);
    table.rows.push(vec![d.to_string()]);
    let payload = json!({
        "value": d.to_string(),
        "ray_coefficients": rays,
        "base_point_free": report.base_point_free,
        "ample": report.ample,
    });
    Ok(Outcome::exact(payload, table))
}

fn metric_of(input: &Value) -> Result<crate::concave::ConcavePA, Failure> {
    let m = input.get("metric").ok_or_else(|| Failure::Compute(Error::parse("missing \"metric\"")))?;
    Ok(concave_from_json(m)?)
}

fn local_height(input: &Value) -> Result<Outcome, Failure> {
    let support = support_from_json(input)?;
    let h = toric_local_height(&support, &metric_of(input)?)?;
    let mut table = Table::new(&["value", "dimension"]);
    table.rows.push(vec![fmt_q(&h.value), h.dimension.to_string()]);
    Ok(Outcome::exact(json!({"value": fmt_q(&h.value), "dimension": h.dimension, "exact": true}), table))
}

/// Accepts either `{"metric": {"pieces": ..}}` or bare pieces.
fn pushforward(input: &Value) -> Result<Outcome, Failure> {
    let f = match input.get("metric") {
        Some(m) => concave_from_json(m)?,
        None => concave_from_json(input)?,
    };
    let (payload, table) = measure_outcome(&trop_pushforward_measure(&f), f.ambient_dim());
    Ok(Outcome::exact(payload, table))
}

fn global(input: &Value, args: &Args) -> Result<Outcome, Failure> {
    let instance = instance_from_json(input)?;
    let opts = CircleOptions { tol: args.tol, ..CircleOptions::default() };
    let mut table = Table::new(&["place", "weight", "integral", "exact"]);
    if let Some(id) = &args.place {
        let p = place_integral(&instance, instance.place(id)?, &opts)?;
        let exact = p.integral.exact().is_some();
        let value = p.integral.exact().map_or_else(|| float(p.integral.to_f64()), |q| json!(fmt_q(q)));
        table.rows.push(vec![p.id.clone(), fmt_q(&p.weight), plain(&value), exact.to_string()]);
        let payload = json!({"id": p.id, "weight": fmt_q(&p.weight), "integral": value, "exact": exact});
        return Ok(Outcome { payload, table, exact, passed: true });
    }
    let report = global_height(&instance, &opts)?;
    let payload = height_report_to_json(&report);
    for p in &payload["per_place"].as_array().cloned().unwrap_or_default() {
        table.rows.push(
            ["id", "weight", "integral", "exact"].iter().map(|k| plain(&p[*k])).collect(),
        );
    }
    let total = report.exact_total.as_ref().map_or_else(|| float(report.total).to_string(), fmt_q);
    table.rows.push(vec!["total".into(), String::new(), total, report.is_exact().to_string()]);
    Ok(Outcome { payload, table, exact: report.is_exact(), passed: true })
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn outcome_json(o: &PropertyOutcome) -> Value {
    json!({"name": o.name, "cases": o.cases, "failures": o.failures, "passed": o.passed(), "first_failure": o.first_failure})
}

/// Properties of the user's own input, chosen by its shape.
fn check_input(input: &Value, seed: u64) -> Result<Vec<PropertyOutcome>, Failure> {
    let mut out = Vec::new();
    let mut gen = InstanceGen::new(seed);
    if input.get("pieces").is_some() {
        let f = concave_from_json(input)?;
        let mut inv = PropertyOutcome::new("input-involution");
        inv.record(involution_case(&f));
        let mut mass = PropertyOutcome::new("input-mass");
        mass.record(mass_case(&f));
        out.extend([inv, mass]);
        let delta = f.stability_set();
        if delta.is_full_dimensional() && delta.is_lattice() {
            let mut a21 = PropertyOutcome::new("input-a21");
            a21.record(a21_case(&f));
            out.push(a21);
        }
    } else if input.get("places").is_some() {
        let instance: RoofInstance = instance_from_json(input)?;
        let shifts = balanced_shifts(&mut gen, &instance);
        let mut pf = PropertyOutcome::new("input-product-formula-invariance");
        pf.record(product_formula_on(&instance, &shifts));
        out.push(pf);
    } else {
        let support = support_from_json(input)?;
        let metric = match input.get("metric") {
            Some(m) => concave_from_json(m)?,
            None => support.min_form(),
        };
        let mut sc = PropertyOutcome::new("input-scaling-law");
        sc.record(scaling_on(&support, &metric, &gen.rational(5, 4)));
        out.push(sc);
    }
    Ok(out)
}

fn check(input: Option<&Value>, seed: u64) -> Result<Outcome, Failure> {
    // input errors are reported before the suite runs
    let mut outcomes = match input {
        Some(v) => check_input(v, seed)?,
        None => Vec::new(),
    };
    outcomes.extend(run_suite(seed, SuiteSize::default()));
    let passed = outcomes.iter().all(PropertyOutcome::passed);
    let mut table = Table::new(&["property", "cases", "failures", "passed"]);
    table.rows = outcomes
        .iter()
        .map(|o| vec![o.name.to_string(), o.cases.to_string(), o.failures.to_string(), o.passed().to_string()])
        .collect();
    let payload = json!({
        "seed": seed,
        "passed": passed,
        "properties": outcomes.iter().map(outcome_json).collect::<Vec<_>>(),
    });
    Ok(Outcome { payload, table, exact: true, passed })
}

/// `ϑ_w` sampled on `Δ ∩ (1/k) Z^n`, values as 12-digit decimals.
fn emit_roof(input: &Value, args: &Args) -> Result<Outcome, Failure> {
    let instance = instance_from_json(input)?;
    let id = args.place.as_deref().ok_or_else(|| Failure::Usage("emit-roof needs --place ID".into()))?;
    let place = instance.place(id)?;
    let (roof, _) = roof_from_lift(&instance, place)?;
    let mut table = Table::coords("m", instance.dimension(), &["theta"]);
    let mut rows = Vec::new();
    for m in refined_lattice_points(&instance.polytope(), args.resolution) {
        let value = roof.evaluate(&m).expect("grid points lie in the polytope");
        let row: Vec<String> =
            m.iter().map(|x| fmt_decimal(x, 12)).chain([fmt_decimal(&value, 12)]).collect();
        table.rows.push(row.clone());
        rows.push(json!(row));
    }
    let payload = json!({"place": id, "resolution": args.resolution, "rows": rows});
    Ok(Outcome::exact(payload, table))
}

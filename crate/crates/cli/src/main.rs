//! `adelic`: command-line front end for the height library.

use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use adelic::adelic::{
    northcott_enumerate, poly_height_report, product_formula_lambda_report, rat_height_lambda, HeightReport,
    LambdaMeasure, NorthcottSearch,
};
use adelic::arith::parse_rat;
use adelic::mahler::{mahler_jensen, torus_log_integral, Estimate, QuadratureConfig};
use adelic::polyring::{parse_poly_any, parse_ratfunc};
use adelic::qplaces::{weil_height_breakdown, weil_height_exact, PlaceQ, Prime};
use adelic::resultant::{
    eps_norm_log_p_exact, local_equality_defect, local_height_p1_nonarch_exact, sphere_mc_log_integral, stoll,
    sylvester_res, BinaryForm, MCConfig,
};
use adelic::{Error, LogRat};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "adelic", version, about = "Adelic heights, Mahler measures and resultant local heights")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Emit JSON (one object per input line).
    #[arg(long, global = true)]
    json: bool,
    /// Seed for quadrature offsets and Monte-Carlo sampling.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Absolute slack for verify-style checks.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Monte-Carlo sample count.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    samples: u64,
    /// Weight of the degree place.
    #[arg(long, global = true, default_value_t = 1.0)]
    lambda: f64,
    /// Restrict to one finite place.
    #[arg(long, global = true)]
    p: Option<String>,
    /// Variable used for degree and leading coefficients.
    #[arg(long, global = true, default_value = "T")]
    var: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Weil height of a tuple of rationals.
    Height {
        #[arg(allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Logarithmic Mahler measure of a polynomial (stdin lines when omitted).
    Mahler { poly: Option<String> },
    /// Height of a polynomial with its per-place breakdown.
    PolyHeight { poly: Option<String> },
    /// Verify the product formula of the lambda-twisted structure.
    ProductFormula {
        #[arg(long)]
        f: Option<String>,
    },
    /// Enumerate rational functions of height at most C.
    Northcott {
        c: f64,
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
        #[arg(long, default_value_t = 20)]
        bound: u32,
    },
    /// Sylvester resultant of two binary forms, with the normalized norm at --p.
    Resultant {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Local height of P¹ for two linear sections.
    LocalHeight {
        #[arg(allow_hyphen_values = true)]
        s0: String,
        #[arg(allow_hyphen_values = true)]
        s1: String,
        /// Check the local equality at 2, 3, 5, 7 (or --p) and the archimedean place.
        #[arg(long)]
        verify: bool,
    },
    /// The r-th Stoll number.
    Stoll {
        #[arg(long)]
        r: u64,
    },
    /// Height of a rational function together with its product-formula check.
    Report { f: Option<String> },
}

/// A failure that maps to an exit code.
enum Failure {
    Input(String),
    Tolerance(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

struct Out {
    json: bool,
    lines: Vec<String>,
}

impl Out {
    fn emit(&mut self, human: String, value: Value) {
        self.lines.push(if self.json { value.to_string() } else { human });
    }
}

fn inputs(arg: &Option<String>) -> Res<Vec<String>> {
    if let Some(a) = arg {
        return Ok(vec![a.clone()]);
    }
    let stdin = io::stdin();
    let lines: Vec<String> = stdin
        .lock()
        .lines()
        .map(|l| l.map_err(|e| Failure::Input(e.to_string())))
        .collect::<Res<Vec<_>>>()?
        .into_iter()
        .filter(|l| !l.trim().is_empty())
        .collect();
    if lines.is_empty() {
        return Err(Failure::Input("no input given on the command line or stdin".into()));
    }
    Ok(lines)
}

fn fmt_est(e: &Estimate) -> String {
    if e.is_exact() {
        format!("{:.12}", e.value)
    } else {
        format!("{:.12} ± {:.2e}", e.value, e.abs_error_bound)
    }
}

fn table(report: &HeightReport) -> String {
    let rows: Vec<(String, &Estimate)> = report.breakdown.iter().map(|(p, e)| (p.to_string(), e)).collect();
    let width = rows.iter().map(|(p, _)| p.len()).max().unwrap_or(0).max(5);
    let mut s = String::new();
    for (p, e) in &rows {
        s.push_str(&format!("  {p:<width$}  {:>18.12}  {:.2e}\n", e.value, e.abs_error_bound));
    }
    s.push_str(&format!("  {:<width$}  {:>18.12}  {:.2e}", "total", report.total.value, report.total.abs_error_bound));
    s
}

fn prime(opts: &Opts) -> Res<Option<Prime>> {
    let Some(p) = &opts.p else { return Ok(None) };
    let n: u64 = p.parse().map_err(|e| Failure::Input(format!("--p {p}: {e}")))?;
    Ok(Some(Prime::new(n)?))
}

fn form(s: &str) -> Res<BinaryForm> {
    Ok(s.parse::<BinaryForm>()?)
}

fn quad(opts: &Opts) -> QuadratureConfig {
    QuadratureConfig { rng_seed: opts.seed, ..QuadratureConfig::default() }
}

fn mc(opts: &Opts) -> Res<MCConfig> {
    let c = MCConfig { seed: opts.seed, samples: opts.samples };
    c.validate()?;
    Ok(c)
}

fn log_json(l: &LogRat) -> Value {
    json!({"exact": l.to_string(), "value": l.to_f64()})
}

fn run(cli: &Cli, out: &mut Out) -> Res<()> {
    let opts = &cli.opts;
    if !(opts.tol >= 0.0) {
        return Err(Failure::Input(format!("--tol must be nonnegative, got {}", opts.tol)));
    }
    match &cli.cmd {
        Cmd::Height { values } => {
            let v = values.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>()?;
            let h = weil_height_exact(&v)?;
            let parts = weil_height_breakdown(&v)?;
            let mut human = format!("{h} = {:.12}", h.to_f64());
            for (place, t) in &parts {
                human.push_str(&format!("\n  {:<8} {:>18.12}", place.to_string(), t.to_f64()));
            }
            let places: Vec<Value> =
                parts.iter().map(|(place, t)| json!({"place": place.to_string(), "value": t.to_f64()})).collect();
            out.emit(human, json!({"height": log_json(&h), "places": places}));
        }
        Cmd::Mahler { poly } => {
            for line in inputs(poly)? {
                let f = parse_poly_any(&line)?;
                let e = if f.is_univariate() { mahler_jensen(&f)? } else { torus_log_integral(&f, &quad(opts))? };
                out.emit(format!("m({f}) = {} [{:?}]", fmt_est(&e), e.method), json!({"poly": f.to_string(), "estimate": e}));
            }
        }
        Cmd::PolyHeight { poly } => {
            for line in inputs(poly)? {
                let f = parse_poly_any(&line)?;
                let r = poly_height_report(&f, &quad(opts))?;
                out.emit(format!("h({f}) = {}\n{}", fmt_est(&r.total), table(&r)), serde_json::to_value(&r).unwrap());
            }
        }
        Cmd::ProductFormula { f } => {
            let m = LambdaMeasure::new(opts.lambda, quad(opts))?;
            let mut failed = Vec::new();
            for line in inputs(f)? {
                let g = parse_ratfunc(&line)?;
                let r = product_formula_lambda_report(&g, &m)?;
                let ok = r.total.value.abs() <= r.total.abs_error_bound + opts.tol;
                if !ok {
                    failed.push(g.to_string());
                }
                let mut v = serde_json::to_value(&r).unwrap();
                v["f"] = json!(g.to_string());
                v["pass"] = json!(ok);
                out.emit(format!("defect of {g} = {} {}\n{}", fmt_est(&r.total), if ok { "ok" } else { "FAIL" }, table(&r)), v);
            }
            if !failed.is_empty() {
                return Err(Failure::Tolerance(format!("product formula defect above tolerance for {}", failed.join(", "))));
            }
        }
        Cmd::Northcott { c, max_deg, bound } => {
            let search = NorthcottSearch { max_deg: *max_deg, coeff_bound: *bound, var: opts.var.clone() };
            let found = northcott_enumerate(*c, opts.lambda, &search, &quad(opts))?;
            let names: Vec<String> = found.iter().map(|f| f.to_string()).collect();
            out.emit(
                format!("{} functions with height <= {c}:\n  {}", names.len(), names.join("\n  ")),
                json!({"c": c, "lambda": opts.lambda, "functions": names}),
            );
        }
        Cmd::Resultant { f, g } => {
            let (a, b) = (form(f)?, form(g)?);
            let r = sylvester_res(&a, &b)?;
            let mut human = format!("Res = {r}");
            let mut v = json!({"resultant": r.to_string()});
            if let Some(p) = prime(opts)? {
                let n = eps_norm_log_p_exact(&a, &b, &p)?;
                human.push_str(&format!("\nln||R||_{p} = {n} = {:.12}", n.to_f64()));
                v["norm_log_p"] = log_json(&n);
                v["p"] = json!(p.to_string());
            }
            out.emit(human, v);
        }
        Cmd::LocalHeight { s0, s1, verify } => {
            let (a, b) = (form(s0)?, form(s1)?);
            let p = prime(opts)?;
            if *verify {
                let mut places: Vec<PlaceQ> = match &p {
                    Some(p) => vec![PlaceQ::Finite(p.clone())],
                    None => [2u32, 3, 5, 7].iter().map(|&q| PlaceQ::Finite(Prime::new(q).unwrap())).collect(),
                };
                places.push(PlaceQ::Arch);
                let cfg = mc(opts)?;
                let mut bad = Vec::new();
                let mut rows = Vec::new();
                let mut human = String::from("local equality defects:");
                for place in &places {
                    let d = local_equality_defect(&a, &b, place, &cfg)?;
                    let label = place.to_string();
                    let ok = d.value <= d.abs_error_bound + if d.is_exact() { 0.0 } else { opts.tol };
                    if !ok {
                        bad.push(label.clone());
                    }
                    human.push_str(&format!("\n  {label:<6} {:.3e} <= {:.3e} {}", d.value, d.abs_error_bound, if ok { "ok" } else { "FAIL" }));
                    rows.push(json!({"place": label, "defect": d, "pass": ok}));
                }
                out.emit(human, json!({"places": rows}));
                if !bad.is_empty() {
                    return Err(Failure::Tolerance(format!("local equality fails at {}", bad.join(", "))));
                }
            } else if let Some(p) = p {
                let h = local_height_p1_nonarch_exact(&a, &b, &p)?;
                out.emit(format!("h_{p} = {h} = {:.12}", h.to_f64()), json!({"p": p.to_string(), "height": log_json(&h)}));
            } else {
                let e = sphere_mc_log_integral(&a, &b, &mc(opts)?)?;
                out.emit(
                    format!("sphere integral = {:.6} ± {:.2e} ({} samples, seed {})", e.value, e.stderr, e.samples, e.seed),
                    serde_json::to_value(e).unwrap(),
                );
            }
        }
        Cmd::Stoll { r } => {
            let s = stoll(*r);
            out.emit(s.to_string(), json!({"r": r, "sigma": s.to_string(), "value": adelic::arith::rat_to_f64(&s)}));
        }
        Cmd::Report { f } => {
            let m = LambdaMeasure::new(opts.lambda, quad(opts))?;
            let mut failed = Vec::new();
            for line in inputs(f)? {
                let g = parse_ratfunc(&line)?;
                let h = rat_height_lambda(&g, opts.lambda, m.cfg())?;
                let mut v = json!({"f": g.to_string(), "lambda": opts.lambda, "height": serde_json::to_value(&h).unwrap()});
                let mut human = format!("h({g}, 1) = {}\n{}", fmt_est(&h.total), table(&h));
                if g.is_univariate() || g.is_constant() {
                    let d = product_formula_lambda_report(&g, &m)?.total;
                    let ok = d.value.abs() <= d.abs_error_bound + opts.tol;
                    if !ok {
                        failed.push(g.to_string());
                    }
                    human.push_str(&format!("\nproduct formula defect = {} {}", fmt_est(&d), if ok { "ok" } else { "FAIL" }));
                    v["defect"] = serde_json::to_value(d).unwrap();
                    v["pass"] = json!(ok);
                }
                out.emit(human, v);
            }
            if !failed.is_empty() {
                return Err(Failure::Tolerance(format!("product formula defect above tolerance for {}", failed.join(", "))));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = std::env::var("ADELIC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut out = Out { json: cli.opts.json, lines: Vec::new() };
    let result = run(&cli, &mut out);
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    for l in &out.lines {
        let _ = writeln!(lock, "{l}");
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Tolerance(m)) => {
            eprintln!("tolerance failure: {m}");
            ExitCode::from(3)
        }
    }
}

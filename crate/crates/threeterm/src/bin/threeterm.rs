//! Command-line front end. All logic lives in the library; this binary
//! parses arguments, dispatches, prints, and maps errors to exit codes
//! (2 parse, 3 validation, 4 numeric non-convergence).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use threeterm::criterion::{certified_sweep, full_verdict};
use threeterm::curve::{
    classify, gamma_point_cloud, render_components_csv, render_svg, trace_gamma_tilde, Window,
};
use threeterm::error::{Error, Result};
use threeterm::levels::zeros_via_levels;
use threeterm::numeric::{all_complex_roots, RootFindConfig};
use threeterm::parse::parse_poly;
use threeterm::poly::RatPoly;
use threeterm::report::{self, to_json_string};
use threeterm::recurrence::{RecurrencePair, RecurrenceSpec};

#[derive(Parser)]
#[command(
    name = "threeterm",
    about = "Reality of zeros for polynomial sequences from three-term recurrences",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PairArgs {
    /// First coefficient polynomial Q1, e.g. "-x^2+2x"
    #[arg(long, allow_hyphen_values = true)]
    q1: String,
    /// Second coefficient polynomial Q2, e.g. "5x^2-1"
    #[arg(long, allow_hyphen_values = true)]
    q2: String,
}

#[derive(Args, Clone)]
struct NumericArgs {
    /// Aberth correction tolerance
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    /// Maximum Aberth iterations
    #[arg(long, default_value_t = 400)]
    max_iterations: usize,
    /// Imaginary-part threshold for snapping near-real roots
    #[arg(long, default_value_t = 1e-8)]
    pairing_threshold: f64,
}

impl NumericArgs {
    fn config(&self) -> RootFindConfig {
        RootFindConfig {
            tolerance: self.tolerance,
            max_iterations: self.max_iterations,
            pairing_threshold: self.pairing_threshold,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the five-condition reality criterion on a pair (Q1, Q2)
    Check {
        #[command(flatten)]
        pair: PairArgs,
        /// Write the full report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include wall-clock timings in the JSON report (makes output
        /// nondeterministic)
        #[arg(long)]
        timings: bool,
    },
    /// Compute the zeros of P_N
    Zeros {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(short)]
        n: usize,
        /// "levels" solves Q1^2 - c_k Q2 per level; "expand" expands P_N
        #[arg(long, default_value = "levels")]
        method: String,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Generate P_0..P_N for a recurrence of any order
    Gen {
        /// Semicolon-separated coefficient polynomials "Q1;Q2;..."
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Trace the curve Im(Q1^2/Q2) = 0 and sample the level cloud
    Curve {
        #[command(flatten)]
        pair: PairArgs,
        /// Window as "xmin,xmax,ymin,ymax" (default derived from root bounds)
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Grid cells per axis
        #[arg(long, default_value_t = 512)]
        resolution: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Number of levels for the point cloud overlay
        #[arg(long, default_value_t = 41)]
        cloud_levels: usize,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Empirical reality table: max |Im root| of P_n for n = 1..N
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        n_max: usize,
        /// Zero computation route. "levels" stays well-conditioned for large
        /// n; "expand" finds roots of the expanded coefficients and loses
        /// accuracy once real roots cluster (high n)
        #[arg(long, default_value = "levels")]
        method: String,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Certified hyperbolicity sweep detail (per-sample Sturm counts)
    Sweep {
        #[command(flatten)]
        pair: PairArgs,
        /// Extra uniform grid samples across (0,4)
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_pair(args: &PairArgs) -> Result<RecurrencePair> {
    let q1 = parse_poly(&args.q1)?;
    let q2 = parse_poly(&args.q2)?;
    RecurrencePair::new(q1, q2)
}

fn write_out(path: &PathBuf, contents: &str) -> Result<()> {
    report::atomic_write(path, contents.as_bytes())?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_check(pair_args: &PairArgs, json: Option<&PathBuf>, timings: bool) -> Result<()> {
    let start = std::time::Instant::now();
    let pair = parse_pair(pair_args)?;
    let verdict = full_verdict(&pair)?;
    println!("Q1 = {}", pair.q1());
    println!("Q2 = {}", pair.q2());
    println!("D  = {}", pair.discriminant());
    for report in &verdict.reports {
        println!(
            "condition {} ({}): {} -- {}",
            report.id.as_str(),
            report.id.summary(),
            report.status.as_str(),
            report.note
        );
    }
    println!("verdict: {}", if verdict.overall { "PASS" } else { "FAIL" });
    if let Some(support) = &verdict.support {
        println!("support: {}", report::support_text(support));
    }
    if let Some(path) = json {
        let mut doc = report::check_document(&pair, &verdict);
        if timings {
            doc.timings_ms = Some(vec![(
                "total".into(),
                start.elapsed().as_secs_f64() * 1e3,
            )]);
        }
        write_out(path, &to_json_string(&doc)?)?;
    }
    Ok(())
}

fn cmd_zeros(
    pair_args: &PairArgs,
    n: usize,
    method: &str,
    csv: Option<&PathBuf>,
    json: Option<&PathBuf>,
    config: &RootFindConfig,
) -> Result<()> {
    let pair = parse_pair(pair_args)?;
    if n == 0 {
        return Err(Error::Validation("n must be at least 1 (P_0 = 1 has no zeros)".into()));
    }
    let (doc, roots) = match method {
        "levels" => {
            let zeros = zeros_via_levels(&pair, n, config)?;
            if !zeros.converged {
                return Err(Error::NonConvergence(
                    "per-level root finding did not converge".into(),
                ));
            }
            let doc = report::zeros_document_levels(&pair, &zeros);
            (doc, zeros.roots)
        }
        "expand" => {
            let pn = pair.spec().generate(n).pop().unwrap();
            let rs = all_complex_roots(&pn, config)?;
            if !rs.converged {
                return Err(Error::NonConvergence(
                    "root finding on the expanded polynomial did not converge".into(),
                ));
            }
            let doc = report::zeros_document_expand(&pair, n, &rs);
            (doc, rs.roots)
        }
        other => {
            return Err(Error::Validation(format!(
                "unknown method '{}': expected levels or expand",
                other
            )))
        }
    };
    println!(
        "P_{}: {} zeros, max |Im| = {}{}",
        n,
        roots.len(),
        doc.max_imag_deviation,
        if doc.roots_at_infinity > 0 {
            format!(" ({} roots at infinity)", doc.roots_at_infinity)
        } else {
            String::new()
        }
    );
    if let Some(path) = csv {
        write_out(path, &report::zeros_csv(&roots))?;
    }
    if let Some(path) = json {
        write_out(path, &to_json_string(&doc)?)?;
    }
    Ok(())
}

fn cmd_gen(q: &str, n: usize, json: Option<&PathBuf>) -> Result<()> {
    let qs: Vec<RatPoly> = q
        .split(';')
        .map(|s| parse_poly(s.trim()))
        .collect::<Result<_>>()?;
    let spec = RecurrenceSpec::new(qs)?;
    let seq = spec.generate(n);
    for (i, p) in seq.iter().enumerate() {
        println!("P_{} = {}", i, p);
    }
    if let Some(path) = json {
        let doc = report::GenDocument {
            schema_version: report::SCHEMA_VERSION,
            order: spec.order(),
            qs: spec.qs().iter().map(|p| p.to_string()).collect(),
            n,
            polynomials: seq.iter().map(|p| p.to_string()).collect(),
            coefficients: seq
                .iter()
                .map(|p| p.coeffs().iter().map(|c| c.to_string()).collect())
                .collect(),
        };
        write_out(path, &to_json_string(&doc)?)?;
    }
    Ok(())
}

fn parse_window(text: &str, resolution: usize) -> Result<Window> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Validation(format!("bad window '{}': {}", text, e)))?;
    if parts.len() != 4 {
        return Err(Error::Validation(
            "window must be xmin,xmax,ymin,ymax".into(),
        ));
    }
    Window::new(parts[0], parts[1], parts[2], parts[3], resolution)
}

fn cmd_curve(
    pair_args: &PairArgs,
    window: Option<&String>,
    resolution: usize,
    svg: Option<&PathBuf>,
    csv: Option<&PathBuf>,
    cloud_levels: usize,
    config: &RootFindConfig,
) -> Result<()> {
    let pair = parse_pair(pair_args)?;
    let window = match window {
        Some(text) => parse_window(text, resolution)?,
        None => {
            let mut w = Window::default_for(&pair);
            w.resolution = resolution;
            w
        }
    };
    let cps = threeterm::criterion::critical_point_analysis(&pair)?;
    let critical_xs: Vec<f64> = cps.iter().map(|cp| cp.point_approx).collect();
    let components = classify(trace_gamma_tilde(&pair, &window), &critical_xs, &window);
    let cloud = gamma_point_cloud(&pair, cloud_levels, config)?;
    let mut counts = std::collections::BTreeMap::new();
    for c in &components {
        *counts.entry(c.classification.as_str()).or_insert(0usize) += 1;
    }
    let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{} {}", v, k)).collect();
    println!(
        "traced {} components ({}) over [{}, {}] x [{}, {}]",
        components.len(),
        summary.join(", "),
        window.x_min,
        window.x_max,
        window.y_min,
        window.y_max
    );
    if let Some(path) = csv {
        write_out(path, &render_components_csv(&components))?;
    }
    if let Some(path) = svg {
        let d_roots: Vec<f64> = threeterm::algebraic::isolate_real_roots(pair.discriminant())?
            .iter()
            .map(|r| r.approx_f64())
            .collect();
        let mut svg_text = render_svg(&components, &window, &d_roots, &critical_xs);
        // Overlay the level cloud as faint dots.
        let mut dots = String::new();
        for slice in &cloud {
            for z in &slice.roots {
                if z.re >= window.x_min
                    && z.re <= window.x_max
                    && z.im >= window.y_min
                    && z.im <= window.y_max
                {
                    let sx = (z.re - window.x_min) / (window.x_max - window.x_min) * 640.0;
                    let sy = 640.0 - (z.im - window.y_min) / (window.y_max - window.y_min) * 640.0;
                    dots.push_str(&format!(
                        "<circle cx=\"{}\" cy=\"{}\" r=\"1\" fill=\"#30303060\"/>\n",
                        sx, sy
                    ));
                }
            }
        }
        svg_text = svg_text.replace("</svg>\n", &format!("{}</svg>\n", dots));
        write_out(path, &svg_text)?;
    }
    Ok(())
}

fn cmd_verify(
    pair_args: &PairArgs,
    n_max: usize,
    method: &str,
    json: Option<&PathBuf>,
    config: &RootFindConfig,
) -> Result<()> {
    let pair = parse_pair(pair_args)?;
    let verdict = full_verdict(&pair)?;
    let expanded = match method {
        "levels" => None,
        "expand" => Some(pair.spec().generate(n_max)),
        other => {
            return Err(Error::Validation(format!(
                "unknown method '{}': expected levels or expand",
                other
            )))
        }
    };
    let mut rows = Vec::new();
    println!("{:>4} {:>7} {:>24}", "n", "degree", "max |Im root|");
    for n in 1..=n_max {
        let (degree, deviation) = match &expanded {
            None => {
                let zeros = zeros_via_levels(&pair, n, config)?;
                if !zeros.converged {
                    return Err(Error::NonConvergence(format!(
                        "level solves for P_{} did not converge",
                        n
                    )));
                }
                (zeros.roots.len() + zeros.roots_at_infinity, zeros.max_imag_deviation())
            }
            Some(seq) => {
                let pn = &seq[n];
                let degree = pn.degree().unwrap_or(0);
                if degree == 0 {
                    (0, 0.0)
                } else {
                    let rs = all_complex_roots(pn, config)?;
                    if !rs.converged {
                        return Err(Error::NonConvergence(format!(
                            "root finding for P_{} did not converge",
                            n
                        )));
                    }
                    (degree, rs.max_imag_deviation())
                }
            }
        };
        println!("{:>4} {:>7} {:>24e}", n, degree, deviation);
        rows.push(report::VerifyRow {
            n,
            degree,
            max_imag_deviation: deviation,
        });
    }
    let empirically_real = rows.iter().all(|r| r.max_imag_deviation < 1e-8);
    let consistent = empirically_real == verdict.overall;
    println!(
        "empirically real up to n = {}: {}; criterion verdict: {}; consistent: {}",
        n_max,
        empirically_real,
        if verdict.overall { "PASS" } else { "FAIL" },
        consistent
    );
    if let Some(path) = json {
        let doc = report::VerifyDocument {
            schema_version: report::SCHEMA_VERSION,
            input: report::check_document(&pair, &verdict).input,
            n_max,
            rows,
            empirically_real,
            verdict_overall: if verdict.overall { "pass" } else { "fail" }.into(),
            consistent,
        };
        write_out(path, &to_json_string(&doc)?)?;
    }
    Ok(())
}

fn cmd_sweep(pair_args: &PairArgs, grid: Option<usize>, json: Option<&PathBuf>) -> Result<()> {
    let pair = parse_pair(pair_args)?;
    let sweep = certified_sweep(&pair, grid)?;
    println!(
        "cut points: {}",
        sweep
            .cut_points
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("{:>24} {:>12} {:>9}", "sample s", "real roots", "expected");
    for s in &sweep.samples {
        println!(
            "{:>24} {:>12} {:>9}{}",
            s.s.to_string(),
            s.real_count,
            s.expected,
            if s.full() { "" } else { "   << deficit" }
        );
    }
    println!(
        "sweep: {}{}",
        if sweep.all_full() { "pass (full real count at every sample)" } else { "fail" },
        if sweep.certified { "" } else { " [numeric-only]" }
    );
    for note in &sweep.notes {
        println!("note: {}", note);
    }
    if let Some(path) = json {
        let pair_doc = report::SweepDocument {
            schema_version: report::SCHEMA_VERSION,
            input: report::check_document(&pair, &full_verdict(&pair)?).input,
            sweep: report::sweep_json(&sweep),
        };
        write_out(path, &to_json_string(&pair_doc)?)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Check { pair, json, timings } => cmd_check(pair, json.as_ref(), *timings),
        Command::Zeros {
            pair,
            n,
            method,
            csv,
            json,
            numeric,
        } => cmd_zeros(pair, *n, method, csv.as_ref(), json.as_ref(), &numeric.config()),
        Command::Gen { q, n, json } => cmd_gen(q, *n, json.as_ref()),
        Command::Curve {
            pair,
            window,
            resolution,
            svg,
            csv,
            cloud_levels,
            numeric,
        } => cmd_curve(
            pair,
            window.as_ref(),
            *resolution,
            svg.as_ref(),
            csv.as_ref(),
            *cloud_levels,
            &numeric.config(),
        ),
        Command::Verify {
            pair,
            n_max,
            method,
            json,
            numeric,
        } => cmd_verify(pair, *n_max, method, json.as_ref(), &numeric.config()),
        Command::Sweep { pair, grid, json } => cmd_sweep(pair, *grid, json.as_ref()),
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("HRL_THREADS") {
        if let Ok(n) = threads.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

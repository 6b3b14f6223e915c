//! `dirichlet-bounds`: lower bounds for the first Dirichlet eigenvalue of
//! conformal images of rectangles and discs.
//!
//! Exit codes: 0 success, 1 a valid bound failed oracle validation,
//! 2 input error, 3 computation error, 4 no valid bound.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod expr;

use clap::{Parser, Subcommand, ValueEnum};
use dirichlet_bounds::bounds::{gap_catalogue, BoundResult};
use dirichlet_bounds::families::{self, Example};
use dirichlet_bounds::norms::regularity_profile;
use dirichlet_bounds::oracle::{validate_with, ValidationOptions};
use dirichlet_bounds::report::{dec3, sig6, text_table};
use dirichlet_bounds::spec_file::read_spec;
use dirichlet_bounds::{best_bound, catalogue, CatalogueOptions, DomainSpec, Error, QuadratureConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "dirichlet-bounds", version, about = "Lower bounds for the first Dirichlet eigenvalue on conformal images")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    out: Output,
    /// Gauss–Legendre nodes per axis (and radial nodes on discs).
    #[arg(long, default_value_t = 16, global = true)]
    quad_nodes: usize,
    /// Panels per axis.
    #[arg(long, default_value_t = 8, global = true)]
    quad_panels: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExampleArg {
    Exp,
    Sin,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every applicable lower bound for a domain spec, and the best one.
    Bounds {
        #[arg(long)]
        spec: PathBuf,
        /// Exponents for the α-regular estimate.
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        /// Raster pitch for the inradius when the spec declares none.
        #[arg(long, default_value = "0.01", value_parser = parse_expr)]
        h: f64,
    },
    /// Makai, RFK and sup-norm estimates for one of the example families.
    Table {
        #[arg(long, value_enum)]
        example: ExampleArg,
        /// Comma-separated widths; accepts expressions such as 1/3 or ln(sqrt(2)).
        #[arg(long)]
        d: String,
    },
    /// Checks the bounds against finite-difference eigenvalues on grids h and h/2.
    Oracle {
        #[arg(long)]
        spec: PathBuf,
        /// Coarse grid pitch; the fine grid uses h/2.
        #[arg(long, default_value = "1/128", value_parser = parse_expr)]
        h: f64,
        /// Eigenvalues to compute.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Relative residual target.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
    },
    /// Spectral-gap estimates for a unit-disc spec.
    Gap {
        #[arg(long)]
        spec: PathBuf,
        /// Raster pitch for the inradius when the spec declares none.
        #[arg(long, default_value = "0.01", value_parser = parse_expr)]
        h: f64,
    },
    /// L^α norms of the derivative for a list of exponents.
    CheckRegularity {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "3,4,6,10")]
        alphas: Vec<f64>,
    },
}

enum Failure {
    Input(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Spec(_) => Failure::Input(e.to_string()),
            e => Failure::Compute(e),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn quad_config(cli: &Cli) -> Result<QuadratureConfig, Failure> {
    let quad = QuadratureConfig {
        nodes_per_axis: cli.quad_nodes,
        panels_per_axis: cli.quad_panels,
        disc_radial_nodes: cli.quad_nodes,
        ..QuadratureConfig::default()
    };
    quad.validate().map_err(|e| Failure::Input(e.to_string()))?;
    Ok(quad)
}

fn load(path: &Path) -> Result<DomainSpec, Failure> {
    read_spec(path).map_err(|e| Failure::Input(e.to_string()))
}

fn parse_expr(s: &str) -> Result<f64, String> {
    expr::eval(s).map_err(|e| e.to_string())
}

fn catalogue_options(cli: &Cli, alphas: &Option<Vec<f64>>, h: f64) -> Result<CatalogueOptions, Failure> {
    if !(h > 0.0) {
        return Err(Failure::Input(format!("--h must be positive, got {h}")));
    }
    let mut opts = CatalogueOptions {
        quad: quad_config(cli)?,
        h,
        ..CatalogueOptions::default()
    };
    if let Some(a) = alphas {
        if let Some(bad) = a.iter().find(|a| !(**a > 2.0)) {
            return Err(Failure::Input(format!("--alphas must exceed 2, got {bad}")));
        }
        opts.alphas = a.clone();
    }
    Ok(opts)
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(cells: &[String]) -> String {
    cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",")
}

fn bounds_csv(bounds: &[BoundResult]) -> String {
    let mut out = String::from("method,value,valid,preconditions,notes\n");
    for b in bounds {
        out.push_str(&csv_line(&[
            b.method.to_string(),
            sig6(b.value),
            b.valid.to_string(),
            b.preconditions_summary(),
            b.notes(),
        ]));
        out.push('\n');
    }
    out
}

fn bounds_text(bounds: &[BoundResult]) -> String {
    let header = ["method", "value", "valid", "preconditions"].map(String::from);
    let rows: Vec<Vec<String>> = bounds
        .iter()
        .map(|b| {
            vec![
                b.method.to_string(),
                dec3(b.value),
                yes_no(b.valid),
                b.preconditions_summary(),
            ]
        })
        .collect();
    text_table(&header, &rows)
}

fn cmd_bounds(cli: &Cli, spec: &Path, alphas: &Option<Vec<f64>>, h: f64) -> Outcome {
    let spec = load(spec)?;
    let opts = catalogue_options(cli, alphas, h)?;
    let bounds = catalogue(&spec, &opts)?;
    let best = best_bound(&bounds);
    match cli.out {
        Output::Csv => print!("{}", bounds_csv(&bounds)),
        Output::Text => {
            print!("{}", bounds_text(&bounds));
            if let Ok(b) = &best {
                println!("best: {} {}", b.method, dec3(b.value));
            }
        }
    }
    match best {
        Ok(_) => Ok(ExitCode::SUCCESS),
        Err(e) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(4))
        }
    }
}

fn cmd_table(cli: &Cli, example: ExampleArg, d: &str) -> Outcome {
    let ds = expr::eval_list(d).map_err(|e| Failure::Input(format!("--d: {e}")))?;
    if let Some(bad) = ds.iter().find(|d| !(**d > 0.0)) {
        return Err(Failure::Input(format!("--d values must be positive, got {bad}")));
    }
    let example = match example {
        ExampleArg::Exp => Example::Exp,
        ExampleArg::Sin => Example::Sin,
    };
    let quad = quad_config(cli)?;
    let cols = families::table(example, &ds, &quad)?;
    let rows: [(&str, Vec<f64>); 3] = [
        ("Makai", cols.iter().map(|c| c.makai.value).collect()),
        ("RFK", cols.iter().map(|c| c.rfk.value).collect()),
        ("Estimate", cols.iter().map(|c| c.estimate.value).collect()),
    ];
    match cli.out {
        Output::Csv => {
            let mut header = vec!["method".to_string()];
            header.extend(ds.iter().map(|d| sig6(*d)));
            println!("{}", csv_line(&header));
            for (name, vals) in &rows {
                let mut line = vec![name.to_string()];
                line.extend(vals.iter().map(|v| sig6(*v)));
                println!("{}", csv_line(&line));
            }
        }
        Output::Text => {
            let mut header = vec!["d".to_string()];
            header.extend(ds.iter().map(|d| format!("{d:.4}")));
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|(name, vals)| {
                    std::iter::once(name.to_string())
                        .chain(vals.iter().map(|v| dec3(*v)))
                        .collect()
                })
                .collect();
            print!("{}", text_table(&header, &body));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(cli: &Cli, spec: &Path, h: f64, k: usize, tol: f64, alphas: &Option<Vec<f64>>) -> Outcome {
    if k == 0 {
        return Err(Failure::Input("--k must be at least 1".into()));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Failure::Input(format!("--tol must lie in (0, 1), got {tol}")));
    }
    let spec = load(spec)?;
    let opts = catalogue_options(cli, alphas, 0.5 * h)?;
    let bounds = catalogue(&spec, &opts)?;
    let report = validate_with(
        &spec,
        &bounds,
        &ValidationOptions {
            h,
            tol,
            k,
            ..ValidationOptions::default()
        },
    )?;
    match cli.out {
        Output::Csv => {
            println!("method,value,valid,reference,tightness,pass");
            for c in &report.checks {
                println!(
                    "{}",
                    csv_line(&[
                        c.method.to_string(),
                        sig6(c.value),
                        c.valid.to_string(),
                        sig6(c.reference),
                        sig6(c.tightness),
                        c.pass.to_string(),
                    ])
                );
            }
        }
        Output::Text => {
            let mut header = vec!["grid".to_string(), "h".to_string(), "unknowns".to_string()];
            header.extend((1..=report.extrapolated.len()).map(|j| format!("lambda_{j}")));
            let grid_row = |name: &str, r: &dirichlet_bounds::oracle::EigenResult| {
                let mut row = vec![name.to_string(), sig6(r.h), r.unknowns.to_string()];
                row.extend(r.eigenvalues.iter().map(|v| dec3(*v)));
                row
            };
            let mut ext = vec!["extrapolated".to_string(), String::new(), String::new()];
            ext.extend(report.extrapolated.iter().map(|v| dec3(*v)));
            print!(
                "{}",
                text_table(
                    &header,
                    &[grid_row("h", &report.coarse), grid_row("h/2", &report.fine), ext]
                )
            );
            println!("eps_grid = {}", sig6(report.eps_grid));
            println!();
            let header = ["method", "value", "valid", "reference", "tightness", "pass"].map(String::from);
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.method.to_string(),
                        dec3(c.value),
                        yes_no(c.valid),
                        dec3(c.reference),
                        dec3(c.tightness),
                        if c.pass { "PASS" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            print!("{}", text_table(&header, &rows));
        }
    }
    if report.valid_bounds_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: a valid bound exceeds the finite-difference reference");
        Ok(ExitCode::from(1))
    }
}

fn cmd_gap(cli: &Cli, spec: &Path, h: f64) -> Outcome {
    if !(h > 0.0) {
        return Err(Failure::Input(format!("--h must be positive, got {h}")));
    }
    let spec = load(spec)?;
    let bounds = gap_catalogue(&spec, &quad_config(cli)?, h)?;
    match cli.out {
        Output::Csv => print!("{}", bounds_csv(&bounds)),
        Output::Text => {
            print!("{}", bounds_text(&bounds));
            for b in &bounds {
                println!();
                println!("{}:", b.method);
                for (k, v) in &b.intermediates {
                    println!("  {k} = {}", sig6(*v));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_regularity(cli: &Cli, spec: &Path, alphas: &[f64]) -> Outcome {
    if alphas.is_empty() {
        return Err(Failure::Input("--alphas must not be empty".into()));
    }
    if let Some(bad) = alphas.iter().find(|a| !(**a > 2.0)) {
        return Err(Failure::Input(format!("--alphas must exceed 2, got {bad}")));
    }
    let spec = load(spec)?;
    let profile = regularity_profile(&spec.map, &spec.base, alphas, &quad_config(cli)?)?;
    let cell = |v: Option<f64>, f: fn(f64) -> String| v.map(f).unwrap_or_else(|| "inf".to_string());
    match cli.out {
        Output::Csv => {
            println!("alpha,norm,estimated_rel_error,finite");
            for e in &profile.entries {
                println!(
                    "{}",
                    csv_line(&[sig6(e.alpha), cell(e.value, sig6), cell(e.estimated_rel_error, sig6), e.finite.to_string()])
                );
            }
        }
        Output::Text => {
            let header = ["alpha", "norm", "est_rel_error", "finite"].map(String::from);
            let rows: Vec<Vec<String>> = profile
                .entries
                .iter()
                .map(|e| vec![sig6(e.alpha), cell(e.value, dec3), cell(e.estimated_rel_error, sig6), yes_no(e.finite)])
                .collect();
            print!("{}", text_table(&header, &rows));
            println!("conformal regular: {}", yes_no(profile.conformal_regular()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Bounds { spec, alphas, h } => cmd_bounds(cli, spec, alphas, *h),
        Command::Table { example, d } => cmd_table(cli, *example, d),
        Command::Oracle {
            spec,
            h,
            k,
            tol,
            alphas,
        } => cmd_oracle(cli, spec, *h, *k, *tol, alphas),
        Command::Gap { spec, h } => cmd_gap(cli, spec, *h),
        Command::CheckRegularity { spec, alphas } => cmd_regularity(cli, spec, alphas),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(Error::NoValidBound { count })) => {
            eprintln!("error: no valid lower bound among {count} results");
            ExitCode::from(4)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rqas::kinetics::{extract_barrier, scan_pes, site_hamiltonian, tunneling_probability};
use rqas::qubit::write_hamiltonian;
use rqas::report::{
    emit_plots, rank_variants, read_results, run_pipeline, validate, write_curve_csv,
    write_outputs, Mode, PipelineConfig, PipelineOutput,
};
use rqas::variants::{save_dataset, write_csv, DatasetFormat};
use rqas::Error;

#[derive(Parser)]
#[command(
    name = "rqas",
    version,
    about = "Proton-tunneling activity scores for enzyme active-site variants"
)]
struct Cli {
    /// Flat TOML config; command-line flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Ignore and do not write cached scans.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    AbInitio,
    Parametric,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run every variant and write results, validation report and plots.
    Pipeline,
    /// Scan one proton-transfer PES.
    Scan {
        #[arg(long, value_name = "ANGSTROM")]
        doo: f64,
    },
    /// Run one variant against the wild type.
    Variant { id: String },
    /// Statistics from the results of an earlier pipeline run in --out.
    Validate,
    /// Write the variant table.
    ExportDataset {
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Defaults to stdout.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Print the active-space qubit Hamiltonian at one geometry.
    Hamiltonian {
        #[arg(long, value_name = "ANGSTROM")]
        doo: f64,
        #[arg(long, value_name = "ANGSTROM")]
        z: f64,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

fn config(cli: &Cli) -> rqas::Result<PipelineConfig> {
    let mut cfg = match &cli.config {
        Some(p) => PipelineConfig::from_file(p)?,
        None => PipelineConfig::default(),
    };
    if let Some(m) = cli.mode {
        cfg.mode = match m {
            ModeArg::AbInitio => Mode::AbInitio,
            ModeArg::Parametric => Mode::Parametric,
        };
    }
    if let Some(s) = cli.seed {
        cfg.scan.vqe.seed = s;
    }
    if let Some(o) = &cli.out {
        cfg.out_dir = o.clone();
    }
    if cli.no_cache {
        cfg.cache = false;
    }
    Ok(cfg)
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> rqas::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.into(),
            source: e,
        })?;
    }
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    std::fs::write(path, bytes).map_err(|e| Error::Io {
        path: path.into(),
        source: e,
    })
}

fn print_json(value: &impl serde::Serialize) -> rqas::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out).map_err(|e| Error::Io {
        path: "<stdout>".into(),
        source: e,
    })
}

/// Manifest of failed variants, reported as a failure once outputs are written.
fn finish(out: &PipelineOutput) -> rqas::Result<ExitCode> {
    if out.errors.is_empty() {
        return Ok(ExitCode::SUCCESS);
    }
    let msg = serde_json::json!({ "error": "variant_failures", "failures": out.errors });
    eprintln!("{msg}");
    Ok(ExitCode::FAILURE)
}

fn run(cli: Cli) -> rqas::Result<ExitCode> {
    let cfg = config(&cli)?;
    match &cli.command {
        Command::Pipeline => {
            let ds = cfg.load_dataset()?;
            let out = run_pipeline(&cfg, &ds)?;
            write_outputs(&out, &cfg.out_dir)?;
            write_json(
                &cfg.out_dir.join("ranking.json"),
                &rank_variants(&out.results),
            )?;
            let report = match validate(&out.results, &ds, cfg.include_wt_in_regression) {
                Ok(r) => {
                    write_json(&cfg.out_dir.join("validation.json"), &r)?;
                    Some(r)
                }
                Err(Error::InsufficientData(n)) => {
                    eprintln!("validation skipped: only {n} variants with activity");
                    None
                }
                Err(e) => return Err(e),
            };
            if !out.results.is_empty() {
                emit_plots(&out.results, report.as_ref(), &cfg.out_dir, true)?;
            }
            for r in &rank_variants(&out.results) {
                println!(
                    "{:>2}  {:<8} d_OO {:.2}  log10 RQAS {:>10.3}  {}",
                    r.rank, r.variant, r.d_oo, r.log10_rqas, r.severity
                );
            }
            if let Some(r) = &report {
                println!(
                    "r² = {:.4} over {} variants, rank concordant: {}",
                    r.r_squared, r.n_points, r.rank_concordant
                );
            }
            finish(&out)
        }
        Command::Scan { doo } => {
            let curve = scan_pes(*doo, &cfg.scan)?;
            let stem = format!("scan_{doo:.3}");
            let mut bytes = Vec::new();
            write_curve_csv(&curve, &mut bytes)?;
            let csv_path = cfg.out_dir.join(format!("{stem}.csv"));
            std::fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::Io {
                path: cfg.out_dir.clone(),
                source: e,
            })?;
            std::fs::write(&csv_path, bytes).map_err(|e| Error::Io {
                path: csv_path.clone(),
                source: e,
            })?;
            write_json(&cfg.out_dir.join(format!("{stem}.json")), &curve)?;
            match extract_barrier(&curve) {
                Ok(b) => {
                    let p = tunneling_probability(&b, &cfg.constants)?;
                    print_json(
                        &serde_json::json!({ "barrier": b, "kinetics": p, "curve": csv_path }),
                    )?;
                }
                Err(e) => print_json(
                    &serde_json::json!({ "barrier": null, "reason": e.to_string(), "curve": csv_path }),
                )?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Variant { id } => {
            let ds = cfg.dataset.load()?.subset(std::slice::from_ref(id))?;
            let out = run_pipeline(&cfg, &ds)?;
            match out.results.iter().find(|r| &r.variant == id) {
                Some(r) => print_json(r)?,
                None => print_json(&out.errors)?,
            }
            finish(&out)
        }
        Command::Validate => {
            let results = read_results(&cfg.out_dir.join("results.json"))?;
            let report = validate(&results, &cfg.dataset.load()?, cfg.include_wt_in_regression)?;
            write_json(&cfg.out_dir.join("validation.json"), &report)?;
            print_json(&report)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportDataset { format, output } => {
            let ds = cfg.dataset.load()?;
            let fmt = match format {
                FormatArg::Csv => DatasetFormat::Csv,
                FormatArg::Json => DatasetFormat::Json,
            };
            match output {
                Some(p) => save_dataset(&ds, p, fmt)?,
                None if matches!(fmt, DatasetFormat::Csv) => write_csv(&ds, io::stdout().lock())?,
                None => print_json(&ds)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hamiltonian { doo, z, output } => {
            let (h, _) = site_hamiltonian(*doo, *z, &cfg.scan.scf)?;
            let result = match output {
                Some(p) => std::fs::File::create(p)
                    .and_then(|f| write_hamiltonian(&h, io::BufWriter::new(f))),
                None => write_hamiltonian(&h, io::stdout().lock()),
            };
            result.map_err(|e| Error::Io {
                path: output.clone().unwrap_or_else(|| "<stdout>".into()),
                source: e,
            })?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": e.kind(), "message": e.to_string() })
            );
            ExitCode::FAILURE
        }
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Mode, PipelineConfig};
use crate::error::{Error, Result};
use crate::kinetics::{
    extract_barrier, log10_rqas, scan_pes, tunneling_probability, BarrierParams, PesCurve,
};
use crate::variants::{Severity, VariantDataset, VariantRecord};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RqasResult {
    pub variant: String,
    pub d_oo: f64,
    pub v0_kcalmol: f64,
    pub width_a: f64,
    pub log10_p_tunnel: f64,
    pub log10_p_thermal: f64,
    pub log10_p_total: f64,
    /// Exactly 0 for the wild type.
    pub log10_rqas: f64,
    pub severity_predicted: Severity,
    pub mode: Mode,
    pub config_hash: String,
    /// The scanned curve was flatter than the degeneracy threshold.
    pub degenerate_barrier: bool,
}

/// One failed variant in the error manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorEntry {
    pub variant: String,
    /// `scan`, `barrier`, `kinetics` or `rqas`.
    pub stage: String,
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineOutput {
    pub config_hash: String,
    /// Successful variants, in dataset order.
    pub results: Vec<RqasResult>,
    pub errors: Vec<ErrorEntry>,
    /// Ab-initio curves by variant id, including cache hits.
    pub curves: BTreeMap<String, PesCurve>,
    /// Circuit energy evaluations performed in this run (cache hits cost none).
    pub n_vqe_evaluations: usize,
    pub cache_hits: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheEntry {
    config_hash: String,
    variant: String,
    d_oo: f64,
    barrier: BarrierParams,
    curve: Option<PesCurve>,
}

struct Stage {
    barrier: BarrierParams,
    curve: Option<PesCurve>,
    cached: bool,
}

fn failure(variant: &str, stage: &str, e: &Error) -> ErrorEntry {
    ErrorEntry {
        variant: variant.to_string(),
        stage: stage.to_string(),
        kind: e.kind().to_string(),
        message: e.to_string(),
    }
}

/// Variant id made safe for use as a file name.
pub(crate) fn file_stem(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn cache_path(cfg: &PipelineConfig, hash: &str, id: &str) -> PathBuf {
    cfg.out_dir
        .join("cache")
        .join(format!("{}-{}.json", &hash[..16], file_stem(id)))
}

fn read_cache(path: &Path, hash: &str, rec: &VariantRecord) -> Option<CacheEntry> {
    let entry: CacheEntry = serde_json::from_slice(&fs::read(path).ok()?).ok()?;
    (entry.config_hash == hash && entry.variant == rec.id && entry.d_oo == rec.d_oo)
        .then_some(entry)
}

fn barrier_stage(
    cfg: &PipelineConfig,
    hash: &str,
    rec: &VariantRecord,
) -> std::result::Result<Stage, ErrorEntry> {
    if cfg.cache {
        if let Some(hit) = read_cache(&cache_path(cfg, hash, &rec.id), hash, rec) {
            let tabulated_changed = cfg.mode == Mode::Parametric
                && rec.tabulated_barrier().is_none_or(|b| {
                    (b.v0_kcalmol, b.width_a) != (hit.barrier.v0_kcalmol, hit.barrier.width_a)
                });
            if !tabulated_changed {
                return Ok(Stage {
                    barrier: hit.barrier,
                    curve: hit.curve,
                    cached: true,
                });
            }
        }
    }
    match cfg.mode {
        Mode::Parametric => match rec.tabulated_barrier() {
            Some(b) => Ok(Stage {
                barrier: b,
                curve: None,
                cached: false,
            }),
            None => Err(failure(
                &rec.id,
                "barrier",
                &Error::Dataset(format!(
                    "{} has no tabulated V0/width for parametric mode",
                    rec.id
                )),
            )),
        },
        Mode::AbInitio => {
            let curve = scan_pes(rec.d_oo, &cfg.scan).map_err(|e| failure(&rec.id, "scan", &e))?;
            let barrier = extract_barrier(&curve).map_err(|e| failure(&rec.id, "barrier", &e))?;
            Ok(Stage {
                barrier,
                curve: Some(curve),
                cached: false,
            })
        }
    }
}

fn write_cache(cfg: &PipelineConfig, hash: &str, rec: &VariantRecord, stage: &Stage) -> Result<()> {
    let path = cache_path(cfg, hash, &rec.id);
    let dir = path.parent().expect("cache path has a parent");
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let entry = CacheEntry {
        config_hash: hash.to_string(),
        variant: rec.id.clone(),
        d_oo: rec.d_oo,
        barrier: stage.barrier.clone(),
        curve: stage.curve.clone(),
    };
    fs::write(&path, serde_json::to_vec_pretty(&entry)?).map_err(|e| Error::io(&path, e))
}

/// Runs every variant of `dataset` through barrier → kinetics → RQAS.
///
/// Variants are processed concurrently; a failing variant lands in the
/// error manifest and never stops the others. If the wild type fails, no
/// RQAS can be formed and every other variant is reported under `rqas`.
/// Cache entries are keyed by config hash and variant id, and written after
/// all workers finish.
pub fn run_pipeline(cfg: &PipelineConfig, dataset: &VariantDataset) -> Result<PipelineOutput> {
    cfg.check()?;
    let hash = cfg.hash();
    let records = dataset.records();
    let work = || {
        records
            .par_iter()
            .map(|r| barrier_stage(cfg, &hash, r))
            .collect::<Vec<_>>()
    };
    let stages = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };

    let mut out = PipelineOutput {
        config_hash: hash.clone(),
        results: Vec::new(),
        errors: Vec::new(),
        curves: BTreeMap::new(),
        n_vqe_evaluations: 0,
        cache_hits: 0,
    };
    let mut kinetics = Vec::with_capacity(records.len());
    for (rec, stage) in records.iter().zip(stages) {
        let stage = match stage {
            Ok(s) => s,
            Err(e) => {
                out.errors.push(e);
                kinetics.push(None);
                continue;
            }
        };
        if stage.cached {
            out.cache_hits += 1;
        } else {
            out.n_vqe_evaluations += stage.curve.as_ref().map_or(0, |c| c.n_evaluations);
            if cfg.cache {
                write_cache(cfg, &hash, rec, &stage)?;
            }
        }
        if let Some(c) = &stage.curve {
            out.curves.insert(rec.id.clone(), c.clone());
        }
        match tunneling_probability(&stage.barrier, &cfg.constants) {
            Ok(p) => kinetics.push(Some((stage.barrier, p))),
            Err(e) => {
                out.errors.push(failure(&rec.id, "kinetics", &e));
                kinetics.push(None);
            }
        }
    }

    let wt_index = records
        .iter()
        .position(VariantRecord::is_wildtype)
        .expect("dataset has a WT");
    let wt = kinetics[wt_index].as_ref().map(|(_, p)| p.clone());
    for (rec, k) in records.iter().zip(kinetics) {
        let Some((barrier, p)) = k else { continue };
        let Some(wt) = &wt else {
            let e = Error::Dataset("wild-type kinetics unavailable".into());
            out.errors.push(failure(&rec.id, "rqas", &e));
            continue;
        };
        let lr = if rec.is_wildtype() {
            0.0
        } else {
            log10_rqas(&p, wt)
        };
        out.results.push(RqasResult {
            variant: rec.id.clone(),
            d_oo: rec.d_oo,
            v0_kcalmol: barrier.v0_kcalmol,
            width_a: barrier.width_a,
            log10_p_tunnel: p.log10_p_tunnel,
            log10_p_thermal: p.log10_p_thermal,
            log10_p_total: p.log10_p_total,
            log10_rqas: lr,
            severity_predicted: Severity::from_log10_rqas(lr),
            mode: cfg.mode,
            config_hash: hash.clone(),
            degenerate_barrier: barrier.degenerate,
        });
    }
    Ok(out)
}

pub const RESULTS_CSV_HEADER: [&str; 8] = [
    "variant",
    "d_OO",
    "V0_kcalmol",
    "w_A",
    "log10_Ptunnel",
    "log10_Pthermal",
    "log10_Ptotal",
    "log10_RQAS",
];

/// Results table. Numbers use the shortest round-trip representation, so
/// identical results give identical bytes.
pub fn write_results_csv<W: Write>(results: &[RqasResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_CSV_HEADER)?;
    for r in results {
        let nums = [
            r.d_oo,
            r.v0_kcalmol,
            r.width_a,
            r.log10_p_tunnel,
            r.log10_p_thermal,
            r.log10_p_total,
            r.log10_rqas,
        ];
        w.write_record(std::iter::once(r.variant.clone()).chain(nums.iter().map(f64::to_string)))?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

/// PES samples: `z_A,energy_Eh,scf_energy_Eh`.
pub fn write_curve_csv<W: Write>(curve: &PesCurve, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["z_A", "energy_Eh", "scf_energy_Eh"])?;
    for s in &curve.samples {
        w.write_record([
            s.z.to_string(),
            s.energy.to_string(),
            s.scf_energy.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Writes `results.csv`, `results.json`, `errors.json` and one
/// `pes/<variant>.csv` per scanned curve into `dir`.
pub fn write_outputs(out: &PipelineOutput, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mut csv_bytes = Vec::new();
    write_results_csv(&out.results, &mut csv_bytes)?;
    let mut emit = |name: PathBuf, bytes: Vec<u8>| -> Result<()> {
        let path = dir.join(name);
        write_file(&path, &bytes)?;
        written.push(path);
        Ok(())
    };
    emit("results.csv".into(), csv_bytes)?;
    emit(
        "results.json".into(),
        serde_json::to_vec_pretty(&out.results)?,
    )?;
    emit(
        "errors.json".into(),
        serde_json::to_vec_pretty(&out.errors)?,
    )?;
    for (id, curve) in &out.curves {
        let mut bytes = Vec::new();
        write_curve_csv(curve, &mut bytes)?;
        emit(
            Path::new("pes").join(format!("{}.csv", file_stem(id))),
            bytes,
        )?;
    }
    Ok(written)
}

/// Reads `results.json` as written by [`write_outputs`].
pub fn read_results(path: &Path) -> Result<Vec<RqasResult>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_slice(&bytes)?)
}

//! Pipeline configuration and its flat TOML file form.
//!
//! Every key is optional; missing keys keep their defaults.
//!
//! ```toml
//! mode = "ab-initio"        # or "parametric"
//! dataset = "builtin"       # or a path to a .csv / .json variant table
//! variants = ["WT", "R91W"] # restrict the run; WT is always added
//! out_dir = "out"
//! cache = true
//! threads = 4
//! include_wt = true         # WT point in the validation regression
//!
//! seed = 0
//! iterations = 25
//! step_size = 0.4
//! layers = 3
//! init_noise = 0.01
//! return_best = true
//! points = 25
//! margin = 0.8
//! sweeps = 2
//! warm_start = "optimizer"  # "off" | "angles" | "optimizer"
//!
//! scf_max_iter = 200
//! scf_damping = 0.3
//! scf_diis_subspace = 6
//! scf_energy_threshold = 1e-8
//! scf_density_threshold = 1e-6
//! scf_stability_rounds = 4
//!
//! temperature_K = 310.0
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chem::PhysicalConstants;
use crate::error::{Error, Result};
use crate::kinetics::{ScanOptions, WarmStart};
use crate::variants::{builtin_dataset, load_dataset, DatasetFormat, VariantDataset};

/// Bumped whenever cached results would change meaning.
const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Barrier from a VQE scan of the model active site.
    #[serde(rename = "ab-initio")]
    AbInitio,
    /// Barrier from the tabulated (V₀, width) columns.
    #[serde(rename = "parametric")]
    Parametric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::AbInitio => "ab-initio",
            Mode::Parametric => "parametric",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "ab-initio" | "abinitio" => Ok(Mode::AbInitio),
            "parametric" => Ok(Mode::Parametric),
            _ => Err(Error::Config(format!(
                "unknown mode {s:?} (expected ab-initio or parametric)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DatasetSource {
    Builtin,
    File(PathBuf),
}

impl DatasetSource {
    pub fn load(&self) -> Result<VariantDataset> {
        match self {
            DatasetSource::Builtin => Ok(builtin_dataset()),
            DatasetSource::File(p) => load_dataset(p, DatasetFormat::from_path(p)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub dataset: DatasetSource,
    pub mode: Mode,
    pub scan: ScanOptions,
    pub constants: PhysicalConstants,
    pub out_dir: PathBuf,
    pub cache: bool,
    /// Worker threads for variant-level parallelism; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// Restrict the run to these ids (WT is always kept).
    pub variants: Option<Vec<String>>,
    pub include_wt_in_regression: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            dataset: DatasetSource::Builtin,
            mode: Mode::AbInitio,
            scan: ScanOptions::default(),
            constants: PhysicalConstants::default(),
            out_dir: PathBuf::from("out"),
            cache: true,
            threads: None,
            variants: None,
            include_wt_in_regression: true,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    mode: Option<String>,
    dataset: Option<String>,
    variants: Option<Vec<String>>,
    out_dir: Option<PathBuf>,
    cache: Option<bool>,
    threads: Option<usize>,
    include_wt: Option<bool>,
    seed: Option<u64>,
    iterations: Option<usize>,
    step_size: Option<f64>,
    layers: Option<usize>,
    init_noise: Option<f64>,
    return_best: Option<bool>,
    points: Option<usize>,
    margin: Option<f64>,
    sweeps: Option<usize>,
    warm_start: Option<WarmStart>,
    scf_max_iter: Option<usize>,
    scf_damping: Option<f64>,
    scf_diis_subspace: Option<usize>,
    scf_energy_threshold: Option<f64>,
    scf_density_threshold: Option<f64>,
    scf_stability_rounds: Option<usize>,
    #[serde(rename = "temperature_K")]
    temperature_k: Option<f64>,
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

impl PipelineConfig {
    /// Defaults overridden by a flat TOML document.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let f: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut c = PipelineConfig::default();
        if let Some(m) = f.mode {
            c.mode = m.parse()?;
        }
        if let Some(d) = f.dataset {
            c.dataset = if d == "builtin" {
                DatasetSource::Builtin
            } else {
                DatasetSource::File(d.into())
            };
        }
        c.variants = f.variants.or(c.variants);
        set(&mut c.out_dir, f.out_dir);
        set(&mut c.cache, f.cache);
        c.threads = f.threads.or(c.threads);
        set(&mut c.include_wt_in_regression, f.include_wt);

        let s = &mut c.scan;
        set(&mut s.vqe.seed, f.seed);
        set(&mut s.vqe.iterations, f.iterations);
        set(&mut s.vqe.step_size, f.step_size);
        set(&mut s.n_layers, f.layers);
        set(&mut s.vqe.init_noise, f.init_noise);
        set(&mut s.vqe.return_best, f.return_best);
        set(&mut s.points, f.points);
        set(&mut s.margin, f.margin);
        set(&mut s.sweeps, f.sweeps);
        set(&mut s.warm_start, f.warm_start);
        set(&mut s.scf.max_iter, f.scf_max_iter);
        set(&mut s.scf.density_damping, f.scf_damping);
        set(&mut s.scf.diis_subspace, f.scf_diis_subspace);
        set(&mut s.scf.energy_threshold, f.scf_energy_threshold);
        set(&mut s.scf.density_threshold, f.scf_density_threshold);
        set(&mut s.scf.stability_rounds, f.scf_stability_rounds);
        set(&mut c.constants.body_temperature, f.temperature_k);
        c.check()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    /// Rejects option values no stage could run with.
    pub fn check(&self) -> Result<()> {
        let s = &self.scan;
        let bad = |what: &str| Err(Error::Config(what.to_string()));
        if s.points < 3 {
            return bad("points must be at least 3");
        }
        if !(s.margin > 0.0) {
            return bad("margin must be positive");
        }
        if s.sweeps == 0 {
            return bad("sweeps must be at least 1");
        }
        if !(s.vqe.step_size > 0.0 && s.vqe.step_size.is_finite()) {
            return bad("step_size must be positive");
        }
        if s.n_layers == 0 {
            return bad("layers must be at least 1");
        }
        if !(self.constants.body_temperature > 0.0) {
            return bad("temperature_K must be positive");
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1");
        }
        Ok(())
    }

    /// SHA-256 over every option that can change a number in the results.
    pub fn hash(&self) -> String {
        #[derive(Serialize)]
        struct Physics<'a> {
            version: u32,
            mode: Mode,
            scan: &'a ScanOptions,
            constants: &'a PhysicalConstants,
        }
        let view = Physics {
            version: CACHE_VERSION,
            mode: self.mode,
            scan: &self.scan,
            constants: &self.constants,
        };
        let bytes = serde_json::to_vec(&view).expect("plain data serializes");
        hex::encode(Sha256::digest(bytes))
    }

    /// The configured dataset, restricted to `variants` when set.
    pub fn load_dataset(&self) -> Result<VariantDataset> {
        let ds = self.dataset.load()?;
        match &self.variants {
            Some(ids) => ds.subset(ids),
            None => Ok(ds),
        }
    }
}

//! Variant records: structural shifts, experimental activities and severity
//! labels, plus CSV/JSON ingestion.

mod builtin;
mod io;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinetics::BarrierParams;

pub use builtin::{builtin_dataset, published_tunnel_probability};
pub use io::{load_dataset, read_csv, save_dataset, write_csv, DatasetFormat, CSV_HEADER};

/// Wild-type donor-acceptor distance, Å.
pub const WT_D_OO: f64 = 2.70;
pub const WT_ID: &str = "WT";
const SHIFT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Severity {
    Healthy,
    Mild,
    Moderate,
    Severe,
    Null,
}

impl Severity {
    pub const ALL: [Severity; 5] = [
        Severity::Healthy,
        Severity::Mild,
        Severity::Moderate,
        Severity::Severe,
        Severity::Null,
    ];

    /// Predicted label from log₁₀ RQAS. The cut-points are a calibration to
    /// the published labels, not a physical model.
    pub fn from_log10_rqas(x: f64) -> Severity {
        match x {
            x if x >= -1.0 => Severity::Healthy,
            x if x >= -15.0 => Severity::Mild,
            x if x >= -25.0 => Severity::Moderate,
            x if x >= -80.0 => Severity::Severe,
            _ => Severity::Null,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Healthy => "Healthy",
            Severity::Mild => "Mild",
            Severity::Moderate => "Moderate",
            Severity::Severe => "Severe",
            Severity::Null => "Null",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Severity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Severity::ALL
            .into_iter()
            .find(|v| v.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Dataset(format!("unknown severity {s:?}")))
    }
}

/// Where a record's numbers come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceTag {
    /// Published kinetic parameters with measured activities.
    Assay,
    /// Published structural shifts only.
    Structure,
    User,
}

impl SourceTag {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceTag::Assay => "assay",
            SourceTag::Structure => "structure",
            SourceTag::User => "user",
        }
    }
}

impl FromStr for SourceTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "assay" => Ok(SourceTag::Assay),
            "structure" => Ok(SourceTag::Structure),
            "user" | "" => Ok(SourceTag::User),
            other => Err(Error::Dataset(format!("unknown source tag {other:?}"))),
        }
    }
}

/// Residue substitution such as R91W.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    pub from: String,
    pub position: u32,
    pub to: String,
}

/// A conflicting distance reported elsewhere for the same variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternateDistance {
    pub d_oo: f64,
    pub source: SourceTag,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantRecord {
    pub id: String,
    /// `None` for the wild type.
    pub substitution: Option<Substitution>,
    /// Δd relative to [`WT_D_OO`], Å. Negative means a compressed site.
    pub shift_a: f64,
    pub d_oo: f64,
    pub impact_note: String,
    /// Percent of wild-type activity; `None` when not measured.
    pub activity_pct: Option<f64>,
    pub severity: Option<Severity>,
    pub source: SourceTag,
    /// Tabulated barrier height, kcal/mol, for parametric runs.
    pub v0_kcalmol: Option<f64>,
    /// Tabulated barrier width, Å, for parametric runs.
    pub width_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternate: Option<AlternateDistance>,
}

impl VariantRecord {
    /// A user variant defined by its shift alone.
    pub fn from_shift(id: impl Into<String>, shift_a: f64) -> Self {
        VariantRecord {
            id: id.into(),
            substitution: None,
            shift_a,
            d_oo: WT_D_OO + shift_a,
            impact_note: String::new(),
            activity_pct: None,
            severity: None,
            source: SourceTag::User,
            v0_kcalmol: None,
            width_a: None,
            alternate: None,
        }
    }

    pub fn is_wildtype(&self) -> bool {
        self.id == WT_ID
    }

    /// Tabulated (V₀, width), when both are present.
    pub fn tabulated_barrier(&self) -> Option<BarrierParams> {
        Some(BarrierParams::new(
            self.v0_kcalmol?,
            self.width_a?,
            self.d_oo,
        ))
    }

    fn check(&self) -> std::result::Result<(), String> {
        if self.id.trim().is_empty() {
            return Err("empty id".into());
        }
        if !(self.d_oo.is_finite() && self.d_oo > 0.0) {
            return Err(format!(
                "{}: d_OO = {} is not a positive distance",
                self.id, self.d_oo
            ));
        }
        if (WT_D_OO + self.shift_a - self.d_oo).abs() > SHIFT_TOLERANCE {
            return Err(format!(
                "{}: d_OO = {} does not equal 2.70 + shift ({})",
                self.id, self.d_oo, self.shift_a
            ));
        }
        if let Some(a) = self.activity_pct {
            if !(a > 0.0 && a <= 100.0) {
                return Err(format!("{}: activity {a}% is outside (0, 100]", self.id));
            }
        }
        for (name, v) in [("V0", self.v0_kcalmol), ("width", self.width_a)] {
            if matches!(v, Some(x) if !(x.is_finite() && x >= 0.0)) {
                return Err(format!("{}: {name} must be non-negative", self.id));
            }
        }
        if self.is_wildtype() && self.shift_a != 0.0 {
            return Err(format!("WT must have zero shift, got {}", self.shift_a));
        }
        Ok(())
    }
}

/// Validated, ordered variant collection with exactly one wild type.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantDataset {
    records: Vec<VariantRecord>,
}

impl VariantDataset {
    pub fn new(records: Vec<VariantRecord>) -> Result<Self> {
        Self::validate(&records, |i| format!("record {}", i + 1))?;
        Ok(VariantDataset { records })
    }

    /// `locate(i)` names record `i` in error messages.
    fn validate(records: &[VariantRecord], locate: impl Fn(usize) -> String) -> Result<()> {
        for (i, r) in records.iter().enumerate() {
            r.check()
                .map_err(|m| Error::Dataset(format!("{}: {m}", locate(i))))?;
            if let Some(j) = records[..i].iter().position(|o| o.id == r.id) {
                return Err(Error::Dataset(format!(
                    "{}: duplicate id {:?} (first seen at {})",
                    locate(i),
                    r.id,
                    locate(j)
                )));
            }
        }
        if !records.iter().any(VariantRecord::is_wildtype) {
            return Err(Error::Dataset("no WT record".into()));
        }
        Ok(())
    }

    pub fn records(&self) -> &[VariantRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn wildtype(&self) -> &VariantRecord {
        self.records
            .iter()
            .find(|r| r.is_wildtype())
            .expect("validated on construction")
    }

    pub fn lookup(&self, id: &str) -> Result<&VariantRecord> {
        self.records
            .iter()
            .find(|r| r.id == id)
            .ok_or_else(|| Error::UnknownVariant(id.to_string()))
    }

    /// Records with a measured activity.
    pub fn with_activity(&self) -> impl Iterator<Item = &VariantRecord> {
        self.records.iter().filter(|r| r.activity_pct.is_some())
    }

    /// The same dataset with only the listed ids (plus WT), in dataset order.
    pub fn subset(&self, ids: &[String]) -> Result<Self> {
        for id in ids {
            self.lookup(id)?;
        }
        let records = self
            .records
            .iter()
            .filter(|r| r.is_wildtype() || ids.contains(&r.id))
            .cloned()
            .collect();
        Ok(VariantDataset { records })
    }
}

impl<'de> Deserialize<'de> for VariantDataset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            records: Vec<VariantRecord>,
        }
        let raw = Raw::deserialize(d)?;
        VariantDataset::new(raw.records).map_err(serde::de::Error::custom)
    }
}

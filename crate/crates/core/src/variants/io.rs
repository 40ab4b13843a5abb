//! Variant table files.
//!
//! CSV columns, in order:
//!
//! ```text
//! id,from,pos,to,shift_A,dOO_A,activity_pct,severity,source,V0_kcalmol,width_A,note,alt_dOO_A,alt_source
//! ```
//!
//! The first nine are required in the header; the rest may be omitted. Empty
//! `activity_pct` means not measured. One of `shift_A` and `dOO_A` may be
//! empty and is then derived from the other. An empty `source` marks a user
//! record. `from`, `pos` and `to` are all empty for the wild type.
//!
//! JSON is the serde form of [`VariantDataset`]: `{"records": [...]}`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use csv::{ReaderBuilder, StringRecord, Trim};

use super::{
    AlternateDistance, Severity, SourceTag, Substitution, VariantDataset, VariantRecord, WT_D_OO,
};
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 14] = [
    "id",
    "from",
    "pos",
    "to",
    "shift_A",
    "dOO_A",
    "activity_pct",
    "severity",
    "source",
    "V0_kcalmol",
    "width_A",
    "note",
    "alt_dOO_A",
    "alt_source",
];
const REQUIRED: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    Csv,
    Json,
}

impl DatasetFormat {
    /// From the file extension; anything but `.json` is read as CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => DatasetFormat::Json,
            _ => DatasetFormat::Csv,
        }
    }
}

pub fn load_dataset(path: &Path, format: DatasetFormat) -> Result<VariantDataset> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    match format {
        DatasetFormat::Csv => read_csv(reader),
        DatasetFormat::Json => Ok(serde_json::from_reader(reader)?),
    }
}

pub fn save_dataset(ds: &VariantDataset, path: &Path, format: DatasetFormat) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    match format {
        DatasetFormat::Csv => write_csv(ds, &mut w)?,
        DatasetFormat::Json => {
            serde_json::to_writer_pretty(&mut w, ds)?;
            w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
        }
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_csv<W: Write>(ds: &VariantDataset, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in ds.records() {
        let (from, pos, to) = match &r.substitution {
            Some(s) => (s.from.clone(), s.position.to_string(), s.to.clone()),
            None => Default::default(),
        };
        w.write_record([
            r.id.clone(),
            from,
            pos,
            to,
            r.shift_a.to_string(),
            r.d_oo.to_string(),
            opt(r.activity_pct),
            r.severity.map(|s| s.to_string()).unwrap_or_default(),
            r.source.as_str().to_string(),
            opt(r.v0_kcalmol),
            opt(r.width_a),
            r.impact_note.clone(),
            opt(r.alternate.as_ref().map(|a| a.d_oo)),
            r.alternate
                .as_ref()
                .map(|a| a.source.as_str().to_string())
                .unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

pub fn read_csv<R: Read>(input: R) -> Result<VariantDataset> {
    let mut rdr = ReaderBuilder::new().trim(Trim::All).from_reader(input);
    let header = rdr.headers()?.clone();
    let mut columns = [None; CSV_HEADER.len()];
    for (k, name) in CSV_HEADER.iter().enumerate() {
        columns[k] = header.iter().position(|h| h == *name);
        if k < REQUIRED && columns[k].is_none() {
            return Err(Error::Dataset(format!("missing column {name:?}")));
        }
    }

    let mut records = Vec::new();
    let mut lines = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let rec =
            parse_row(&row, &columns).map_err(|m| Error::Dataset(format!("line {line}: {m}")))?;
        records.push(rec);
        lines.push(line);
    }
    VariantDataset::validate(&records, |i| format!("line {}", lines[i]))?;
    Ok(VariantDataset { records })
}

fn parse_row(
    row: &StringRecord,
    columns: &[Option<usize>],
) -> std::result::Result<VariantRecord, String> {
    let field = |k: usize| columns[k].and_then(|c| row.get(c)).unwrap_or("");
    let number = |k: usize| -> std::result::Result<Option<f64>, String> {
        match field(k) {
            "" => Ok(None),
            s => s
                .parse::<f64>()
                .map(Some)
                .map_err(|_| format!("{} = {s:?} is not a number", CSV_HEADER[k])),
        }
    };

    let substitution = match (field(1), field(2), field(3)) {
        ("", "", "") => None,
        (from, pos, to) if !from.is_empty() && !to.is_empty() => Some(Substitution {
            from: from.to_string(),
            position: pos
                .parse()
                .map_err(|_| format!("pos = {pos:?} is not a residue number"))?,
            to: to.to_string(),
        }),
        _ => return Err("from, pos and to must be given together".into()),
    };
    let (shift_a, d_oo) = match (number(4)?, number(5)?) {
        (Some(s), Some(d)) => (s, d),
        (Some(s), None) => (s, WT_D_OO + s),
        (None, Some(d)) => (d - WT_D_OO, d),
        (None, None) => return Err("one of shift_A and dOO_A is required".into()),
    };
    let severity = match field(7) {
        "" => None,
        s => Some(Severity::from_str(s).map_err(|e| e.to_string())?),
    };
    let alternate = match number(12)? {
        Some(d_oo) => Some(AlternateDistance {
            d_oo,
            source: SourceTag::from_str(field(13)).map_err(|e| e.to_string())?,
        }),
        None => None,
    };
    Ok(VariantRecord {
        id: field(0).to_string(),
        substitution,
        shift_a,
        d_oo,
        impact_note: field(11).to_string(),
        activity_pct: number(6)?,
        severity,
        source: SourceTag::from_str(field(8)).map_err(|e| e.to_string())?,
        v0_kcalmol: number(9)?,
        width_a: number(10)?,
        alternate,
    })
}

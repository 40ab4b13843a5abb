use super::{AlternateDistance, Severity, SourceTag, Substitution, VariantDataset, VariantRecord};

struct Row {
    id: &'static str,
    sub: Option<(&'static str, u32, &'static str)>,
    shift: f64,
    d_oo: f64,
    v0: f64,
    width: f64,
    activity: Option<f64>,
    severity: Severity,
    note: &'static str,
}

const ROWS: [Row; 8] = [
    Row {
        id: "WT",
        shift: 0.0,
        sub: None,
        d_oo: 2.70,
        v0: 14.2,
        width: 0.42,
        activity: Some(100.0),
        severity: Severity::Healthy,
        note: "Healthy active site reference",
    },
    Row {
        id: "T457N",
        shift: 0.08,
        sub: Some(("Thr", 457, "Asn")),
        d_oo: 2.78,
        v0: 14.8,
        width: 0.48,
        activity: Some(85.0),
        severity: Severity::Mild,
        note: "Surface variation",
    },
    Row {
        id: "L341S",
        shift: 0.15,
        sub: Some(("Leu", 341, "Ser")),
        d_oo: 2.85,
        v0: 15.3,
        width: 0.55,
        activity: Some(22.4),
        severity: Severity::Moderate,
        note: "Packing void",
    },
    Row {
        id: "Y368H",
        shift: 0.28,
        sub: Some(("Tyr", 368, "His")),
        d_oo: 2.98,
        v0: 16.1,
        width: 0.64,
        activity: Some(5.2),
        severity: Severity::Severe,
        note: "H-bond loss",
    },
    Row {
        id: "E417Q",
        shift: 0.38,
        sub: Some(("Glu", 417, "Gln")),
        d_oo: 3.08,
        v0: 16.8,
        width: 0.72,
        activity: None,
        severity: Severity::Severe,
        note: "Charge loss",
    },
    Row {
        id: "R91W",
        shift: 0.42,
        sub: Some(("Arg", 91, "Trp")),
        d_oo: 3.12,
        v0: 17.2,
        width: 0.78,
        activity: Some(0.78),
        severity: Severity::Severe,
        note: "Steric clash",
    },
    Row {
        id: "D470N",
        shift: 0.55,
        sub: Some(("Asp", 470, "Asn")),
        d_oo: 3.25,
        v0: 18.1,
        width: 0.89,
        activity: Some(0.008),
        severity: Severity::Severe,
        note: "Substrate float",
    },
    Row {
        id: "H241R",
        shift: 0.65,
        sub: Some(("His", 241, "Arg")),
        d_oo: 3.35,
        v0: 19.3,
        width: 0.97,
        activity: None,
        severity: Severity::Null,
        note: "Iron kick",
    },
];

/// The eight published variants. E417Q carries the parameter-table distance
/// (3.08 Å, shift +0.38); the structural-shift table's 3.20 Å is kept as
/// its alternate.
pub fn builtin_dataset() -> VariantDataset {
    let records = ROWS
        .iter()
        .map(|r| VariantRecord {
            id: r.id.to_string(),
            substitution: r.sub.map(|(from, position, to)| Substitution {
                from: from.into(),
                position,
                to: to.into(),
            }),
            shift_a: r.shift,
            d_oo: r.d_oo,
            impact_note: r.note.to_string(),
            activity_pct: r.activity,
            severity: Some(r.severity),
            source: SourceTag::Assay,
            v0_kcalmol: Some(r.v0),
            width_a: Some(r.width),
            alternate: (r.id == "E417Q").then_some(AlternateDistance {
                d_oo: 3.20,
                source: SourceTag::Structure,
            }),
        })
        .collect();
    VariantDataset::new(records).expect("builtin table is consistent")
}

/// The tunneling probabilities printed alongside the parameter table. They
/// are not reproduced by the closed-form model with the printed constants
/// and are kept only so reports can show the gap.
pub fn published_tunnel_probability(id: &str) -> Option<f64> {
    const PRINTED: [(&str, f64); 8] = [
        ("WT", 1.0),
        ("T457N", 3.5e-10),
        ("L341S", 1.5e-18),
        ("Y368H", 2.6e-34),
        ("E417Q", 1.6e-46),
        ("R91W", 9.1e-59),
        ("D470N", 7.7e-74),
        ("H241R", 1.6e-85),
    ];
    PRINTED.iter().find(|(k, _)| *k == id).map(|(_, p)| *p)
}

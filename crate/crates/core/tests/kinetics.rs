use std::f64::consts::LN_10;

use proptest::prelude::*;
use rqas::chem::{kcalmol_to_hartree, PhysicalConstants};
use rqas::kinetics::{
    barrier_width, cliff_slope, extract_barrier, log10_rqas, parametric_kinetics, rqas, scan_grid,
    scan_pes, tunneling_probability, BarrierParams, PesCurve, PesSample, Provenance, ScanOptions,
    WarmStart,
};
use rqas::scf::ScfOptions;
use rqas::Error;

// 40-digit mpmath evaluation of the closed forms with the published constants
// (ħ = 1.054e-34, μ = 1.67e-27, k_B = 1.38e-23, T = 310 K, 4184 J / N_A).
const WT_KAPPA: f64 = 172225391817.75446119;
const WT_LN_TUNNEL: f64 = -14.46693291269137474;
const WT_LN_THERMAL: f64 = -23.06154172281120081;
const WT_LOG10_TOTAL: f64 = -6.2828287531324605476;
const T457N_LOG10_TOTAL: f64 = -7.3302596506019582966;
const R91W_LN_TUNNEL: f64 = -29.569353622238807388;
const R91W_LOG10_RQAS: f64 = -5.7713181469040947469;
const WT_FORMULA_WIDTH_LN_TUNNEL: f64 = -27.556062690840713791;
const SLOPE_AT_14_2: f64 = -14.959307462015244047;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs()
}

fn probs(v0: f64, w: f64) -> rqas::kinetics::TransferProbabilities {
    tunneling_probability(
        &BarrierParams::new(v0, w, w + 1.9),
        &PhysicalConstants::default(),
    )
    .unwrap()
}

fn synthetic(d_oo: f64, energies: &[f64]) -> PesCurve {
    let samples = energies
        .iter()
        .enumerate()
        .map(|(i, &e)| PesSample {
            z: 0.8 + 0.1 * i as f64,
            energy: e,
            scf_energy: e,
            exact_energy: None,
        })
        .collect();
    PesCurve {
        d_oo,
        samples,
        provenance: Provenance::Parametric,
        n_evaluations: 0,
    }
}

#[test]
fn wildtype_table_row_matches_high_precision_oracle() {
    let p = probs(14.2, 0.42);
    assert!(close(p.kappa, WT_KAPPA, 1e-12), "{}", p.kappa);
    assert!(close(p.log10_p_tunnel * LN_10, WT_LN_TUNNEL, 1e-12));
    assert!(close(p.log10_p_thermal * LN_10, WT_LN_THERMAL, 1e-12));
    assert!(close(p.log10_p_total, WT_LOG10_TOTAL, 1e-12));
    assert!((p.kappa - 1.72e11).abs() < 0.01e11);
    assert!((p.log10_p_thermal + 10.0).abs() < 0.05);
}

#[test]
fn other_rows_match_oracle() {
    assert!(close(
        probs(14.8, 0.48).log10_p_total,
        T457N_LOG10_TOTAL,
        1e-12
    ));
    assert!(close(
        probs(17.2, 0.78).log10_p_tunnel * LN_10,
        R91W_LN_TUNNEL,
        1e-12
    ));
    assert!(close(
        probs(14.2, 0.80).log10_p_tunnel * LN_10,
        WT_FORMULA_WIDTH_LN_TUNNEL,
        1e-12
    ));
}

#[test]
fn r91w_relative_activity_regression() {
    let wt = probs(14.2, 0.42);
    let r91w = probs(17.2, 0.78);
    assert!(close(log10_rqas(&r91w, &wt), R91W_LOG10_RQAS, 1e-11));
    assert!(close(rqas(&r91w, &wt), 10f64.powf(R91W_LOG10_RQAS), 1e-10));
    assert_eq!(log10_rqas(&wt, &wt), 0.0);
    assert_eq!(rqas(&wt, &wt), 1.0);
}

#[test]
fn total_is_the_sum_of_channels() {
    for (v0, w) in [(14.2, 0.42), (1.0, 0.1), (30.0, 1.45), (5.0, 0.0)] {
        let p = probs(v0, w);
        assert_eq!(p.p_total, p.p_tunnel + p.p_thermal);
        assert!(close(p.p_total.log10(), p.log10_p_total, 1e-12));
        assert!(close(p.p_tunnel.log10(), p.log10_p_tunnel, 1e-12) || p.log10_p_tunnel == 0.0);
    }
}

#[test]
fn zero_width_tunnels_with_certainty() {
    let p = probs(14.8, 0.0);
    assert_eq!(p.p_tunnel, 1.0);
    assert_eq!(p.log10_p_tunnel, 0.0);
    let flat = probs(0.0, 0.6);
    assert_eq!(flat.p_thermal, 1.0);
    assert_eq!(flat.kappa, 0.0);
}

#[test]
fn invalid_barriers_are_domain_errors() {
    let c = PhysicalConstants::default();
    for (v0, w) in [
        (-1.0, 0.5),
        (14.2, -0.1),
        (f64::NAN, 0.5),
        (14.2, f64::INFINITY),
    ] {
        let e = tunneling_probability(&BarrierParams::new(v0, w, 2.7), &c).unwrap_err();
        assert!(matches!(e, Error::Domain { .. }), "{e}");
    }
}

#[test]
fn tiny_probabilities_survive_in_log_space() {
    let p = probs(60.0, 15.0);
    assert_eq!(p.p_tunnel, 0.0);
    assert!(p.log10_p_tunnel < -308.0 && p.log10_p_tunnel.is_finite());
    assert!(p.log10_p_total.is_finite());
}

#[test]
fn cliff_law_is_exactly_linear_in_width() {
    let c = PhysicalConstants::default();
    let slope = cliff_slope(14.2, &c).unwrap();
    assert!(close(slope, SLOPE_AT_14_2, 1e-12));
    let ws: Vec<f64> = (0..=60).map(|i| 0.4 + 0.01 * i as f64).collect();
    let ys: Vec<f64> = ws.iter().map(|&w| probs(14.2, w).log10_p_tunnel).collect();
    let n = ws.len() as f64;
    let (mx, my) = (ws.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = ws.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = ws.iter().map(|x| (x - mx).powi(2)).sum();
    assert!(close(sxy / sxx, slope, 1e-10), "{} vs {slope}", sxy / sxx);
    for (&w, &y) in ws.iter().zip(&ys) {
        assert!(close(y, slope * w, 1e-10));
    }
}

#[test]
fn parametric_kinetics_preserves_order() {
    let rows = vec![
        BarrierParams::new(14.2, 0.42, 2.70),
        BarrierParams::new(14.8, 0.48, 2.78),
    ];
    let out = parametric_kinetics(&rows, &PhysicalConstants::default()).unwrap();
    assert_eq!(out.len(), 2);
    assert!(close(out[1].log10_p_total, T457N_LOG10_TOTAL, 1e-12));
    let bad = vec![
        BarrierParams::new(14.2, 0.42, 2.70),
        BarrierParams::new(-1.0, 0.5, 2.8),
    ];
    assert!(parametric_kinetics(&bad, &PhysicalConstants::default()).is_err());
}

proptest! {
    #[test]
    fn rqas_decreases_in_width_and_height(v0 in 0.5f64..40.0, w in 0.0f64..2.0, dv in 0.01f64..5.0, dw in 0.01f64..1.0) {
        let base = probs(v0, w);
        let wider = probs(v0, w + dw);
        let taller = probs(v0 + dv, w);
        // strict in each channel; the total can sit below one ulp of change
        // once the other channel dominates by many orders of magnitude
        prop_assert!(wider.log10_p_tunnel < base.log10_p_tunnel);
        prop_assert!(wider.log10_p_total <= base.log10_p_total);
        prop_assert!(taller.log10_p_tunnel <= base.log10_p_tunnel && taller.log10_p_thermal < base.log10_p_thermal);
        prop_assert!(taller.log10_p_total < base.log10_p_total);
        prop_assert!(base.log10_p_tunnel <= 0.0 && base.log10_p_thermal < 0.0);
    }
}

#[test]
fn width_model() {
    assert!((barrier_width(2.70).unwrap() - 0.80).abs() < 1e-12);
    assert!((barrier_width(3.35).unwrap() - 1.45).abs() < 1e-12);
    assert!(barrier_width(1.9).is_err());
    assert!(barrier_width(1.5).is_err());
}

#[test]
fn barrier_is_peak_to_trough() {
    let b = extract_barrier(&synthetic(
        2.70,
        &[-100.0, -100.0 + kcalmol_to_hartree(5.0), -100.0],
    ))
    .unwrap();
    assert!((b.v0_kcalmol - 5.0).abs() < 1e-9);
    assert!((b.width_a - 0.80).abs() < 1e-12);
    assert_eq!(b.z_max, Some(0.9));
    assert!(!b.degenerate);

    let flat = extract_barrier(&synthetic(2.70, &[-1.0, -1.0 + 1e-8, -1.0])).unwrap();
    assert!(flat.degenerate);
    assert!(flat.v0_kcalmol > 0.0);

    assert!(extract_barrier(&synthetic(1.8, &[0.0, 1.0, 0.0])).is_err());
    assert!(extract_barrier(&synthetic(2.7, &[0.0, 1.0])).is_err());
}

#[test]
fn grid_is_equidistant_inside_the_margins() {
    let g = scan_grid(2.70, 0.8, 25).unwrap();
    assert_eq!(g.len(), 25);
    assert!((g[0] - 0.8).abs() < 1e-12 && (g[24] - 1.9).abs() < 1e-12);
    let step = g[1] - g[0];
    for w in g.windows(2) {
        assert!(w[1] > w[0]);
        assert!((w[1] - w[0] - step).abs() < 1e-12);
    }
    assert!(scan_grid(2.70, 1.35, 25).is_err());
    assert!(scan_grid(2.70, 1.5, 25).is_err());
    assert!(scan_grid(2.70, 0.8, 2).is_err());
}

#[test]
fn wildtype_scan_has_a_barrier() {
    let curve = scan_pes(2.70, &ScanOptions::default()).unwrap();
    assert_eq!(curve.samples.len(), 25);
    assert_eq!(curve.provenance, Provenance::AbInitio);
    assert!(curve.n_evaluations > 25 * 25);
    for s in &curve.samples {
        assert!(s.energy.is_finite() && s.energy <= s.scf_energy + 1e-9);
    }
    let b = extract_barrier(&curve).unwrap();
    assert!(b.v0_kcalmol > 0.0 && !b.degenerate);
}

#[test]
fn three_point_scan_is_mirror_symmetric() {
    let opts = ScanOptions {
        points: 3,
        warm_start: WarmStart::Off,
        ..ScanOptions::default()
    };
    let curve = scan_pes(2.70, &opts).unwrap();
    let e: Vec<f64> = curve.samples.iter().map(|s| s.energy).collect();
    // both ends run the same seeded optimization on mirror-image Hamiltonians
    assert!((e[0] - e[2]).abs() < 2.0 * 1e-2, "{e:?}");
    assert!((curve.samples[0].scf_energy - curve.samples[2].scf_energy).abs() < 1e-8);
}

#[test]
fn scans_are_deterministic() {
    let opts = ScanOptions {
        points: 4,
        ..ScanOptions::default()
    };
    assert_eq!(
        scan_pes(2.85, &opts).unwrap(),
        scan_pes(2.85, &opts).unwrap()
    );
}

#[test]
fn failures_carry_the_proton_position() {
    let opts = ScanOptions {
        points: 3,
        scf: ScfOptions {
            max_iter: 1,
            ..ScfOptions::default()
        },
        ..ScanOptions::default()
    };
    match scan_pes(2.70, &opts).unwrap_err() {
        Error::Scan { z, source } => {
            assert!((0.8..=1.9).contains(&z));
            assert!(matches!(*source, Error::ScfNotConverged(_)));
        }
        e => panic!("unexpected {e}"),
    }
    assert!(matches!(
        scan_pes(
            2.70,
            &ScanOptions {
                margin: 2.0,
                ..ScanOptions::default()
            }
        ),
        Err(Error::Domain { .. })
    ));
}

mod common;

use common::quadrature::{random_sp_function, IntegralOracle};
use nalgebra::SymmetricEigen;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rqas::chem::{build_geometry, sto3g_basis, ContractedGaussian, Element, Geometry, Nucleus};
use rqas::integrals::{build_tables, eri, kinetic, nuclear_attraction, overlap};
use rqas::Error;

fn random_nuclei(rng: &mut ChaCha8Rng) -> Vec<Nucleus> {
    use rand::Rng;
    (0..rng.gen_range(1..=3))
        .map(|_| {
            let el = if rng.gen_bool(0.5) {
                Element::H
            } else {
                Element::O
            };
            Nucleus::new(
                el,
                [
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                ],
            )
        })
        .collect()
}

#[test]
fn one_body_kernels_match_quadrature() {
    let oracle = IntegralOracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let a = random_sp_function(&mut rng);
        let b = random_sp_function(&mut rng);
        let nuclei = random_nuclei(&mut rng);
        let s = overlap(&a, &b).unwrap();
        let t = kinetic(&a, &b).unwrap();
        let v = nuclear_attraction(&a, &b, &nuclei).unwrap();
        assert!((s - oracle.overlap(&a, &b)).abs() < 1e-10, "overlap {s}");
        assert!((t - oracle.kinetic(&a, &b)).abs() < 1e-10, "kinetic {t}");
        let vq = oracle.nuclear_attraction(&a, &b, &nuclei);
        assert!((v - vq).abs() < 1e-9, "nuclear {v} vs {vq}");
    }
}

#[test]
fn eri_matches_quadrature() {
    let oracle = IntegralOracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..15 {
        let f: Vec<ContractedGaussian> = (0..4).map(|_| random_sp_function(&mut rng)).collect();
        let got = eri(&f[0], &f[1], &f[2], &f[3]).unwrap();
        let want = oracle.eri(&f[0], &f[1], &f[2], &f[3]);
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }
}

#[test]
fn normalized_self_overlap() {
    let g = build_geometry(2.70, 1.35).unwrap();
    let oracle = IntegralOracle::default();
    for f in sto3g_basis(&g).unwrap() {
        assert!((overlap(&f, &f).unwrap() - 1.0).abs() < 1e-10);
        assert!((oracle.overlap(&f, &f) - 1.0).abs() < 1e-10);
    }
}

#[test]
fn same_exponent_overlap_scaling() {
    let alpha = 0.8;
    for r in [0.0, 0.3, 1.0, 2.2] {
        let a = ContractedGaussian::new([0.0; 3], [0, 0, 0], &[(alpha, 1.0)]);
        let b = ContractedGaussian::new([0.0, 0.0, r], [0, 0, 0], &[(alpha, 1.0)]);
        let s = overlap(&a, &b).unwrap();
        assert!((s - (-alpha * r * r / 2.0).exp()).abs() < 1e-14);
    }
}

#[test]
fn d_functions_are_rejected() {
    let d = ContractedGaussian::new([0.0; 3], [1, 1, 0], &[(1.0, 1.0)]);
    let s = ContractedGaussian::new([0.0; 3], [0, 0, 0], &[(1.0, 1.0)]);
    assert!(matches!(
        overlap(&d, &s),
        Err(Error::UnsupportedAngularMomentum(2))
    ));
    assert!(matches!(
        eri(&s, &s, &s, &d),
        Err(Error::UnsupportedAngularMomentum(2))
    ));
}

#[test]
fn h2_nuclear_repulsion() {
    let g = Geometry::new(
        vec![
            Nucleus::new(Element::H, [0.0; 3]),
            Nucleus::new(Element::H, [0.0, 0.0, 1.4]),
        ],
        0,
    )
    .unwrap();
    let basis = sto3g_basis(&g).unwrap();
    let tables = build_tables(&g, &basis).unwrap();
    assert!((tables.nuclear_repulsion - 1.0 / 1.4).abs() < 1e-15);
}

#[test]
fn oho_table_structure() {
    let g = build_geometry(2.70, 1.35).unwrap();
    let basis = sto3g_basis(&g).unwrap();
    let t = build_tables(&g, &basis).unwrap();
    let n = t.n_basis();
    assert_eq!(n, 11);
    assert_eq!(t.eri.as_slice().len(), 11usize.pow(4));
    for i in 0..n {
        assert!((t.overlap[(i, i)] - 1.0).abs() < 1e-10);
        assert!(t.eri.chemist(i, i, i, i) > 0.0);
        for j in 0..n {
            assert!((t.overlap[(i, j)] - t.overlap[(j, i)]).abs() < 1e-14);
            assert!((t.kinetic[(i, j)] - t.kinetic[(j, i)]).abs() < 1e-14);
            assert!((t.nuclear[(i, j)] - t.nuclear[(j, i)]).abs() < 1e-14);
        }
    }
    let eig = SymmetricEigen::new(t.overlap.clone());
    assert!(eig.eigenvalues.min() > 0.0);

    // eight-fold permutational symmetry of (pq|rs)
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v = t.eri.chemist(p, q, r, s);
                    for w in [
                        t.eri.chemist(q, p, r, s),
                        t.eri.chemist(p, q, s, r),
                        t.eri.chemist(q, p, s, r),
                        t.eri.chemist(r, s, p, q),
                        t.eri.chemist(s, r, p, q),
                        t.eri.chemist(r, s, q, p),
                        t.eri.chemist(s, r, q, p),
                    ] {
                        assert!((v - w).abs() < 1e-10);
                    }
                }
            }
        }
    }
}

#[test]
fn physicist_storage_matches_kernel() {
    let g = build_geometry(2.70, 1.1).unwrap();
    let basis = sto3g_basis(&g).unwrap();
    let t = build_tables(&g, &basis).unwrap();
    // ⟨pq|rs⟩ = (pr|qs), with (pr|qs) straight from the kernel
    for (p, q, r, s) in [
        (0, 1, 2, 3),
        (5, 6, 7, 10),
        (4, 9, 3, 8),
        (2, 2, 7, 7),
        (1, 3, 3, 1),
    ] {
        let kernel = eri(&basis[p], &basis[r], &basis[q], &basis[s]).unwrap();
        assert!((t.eri.get(p, q, r, s) - kernel).abs() < 1e-14);
        assert_eq!(t.eri.get(p, q, r, s), t.eri.chemist(p, r, q, s));
    }
}

#[test]
fn mirror_symmetric_proton() {
    let g = build_geometry(2.70, 1.35).unwrap();
    let basis = sto3g_basis(&g).unwrap();
    let t = build_tables(&g, &basis).unwrap();
    // reflection z -> L - z swaps the oxygens and flips the sign of each pz
    let perm = [6, 7, 8, 9, 10, 5, 0, 1, 2, 3, 4];
    let sign = |i: usize| if i == 4 || i == 10 { -1.0 } else { 1.0 };
    for i in 0..11 {
        for j in 0..11 {
            let f = sign(i) * sign(j);
            for m in [&t.overlap, &t.kinetic, &t.nuclear] {
                assert!((m[(i, j)] - f * m[(perm[i], perm[j])]).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn json_dump_round_trip() {
    let g = build_geometry(2.8, 1.2).unwrap();
    let t = build_tables(&g, &sto3g_basis(&g).unwrap()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ints.json");
    t.write_json(&path).unwrap();
    let dump: rqas::integrals::IntegralDump =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let back = dump.into_tables().unwrap();
    assert_eq!(back.overlap, t.overlap);
    assert_eq!(back.eri, t.eri);
    assert_eq!(back.nuclear_repulsion, t.nuclear_repulsion);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn translation_invariance(dx in -3.0f64..3.0, dy in -3.0f64..3.0, dz in -3.0f64..3.0, z in 0.9f64..1.8) {
        let g = build_geometry(2.70, z).unwrap();
        let moved = g.translated([dx, dy, dz]);
        let a = build_tables(&g, &sto3g_basis(&g).unwrap()).unwrap();
        let b = build_tables(&moved, &sto3g_basis(&moved).unwrap()).unwrap();
        prop_assert!((&a.overlap - &b.overlap).amax() < 1e-10);
        prop_assert!((&a.kinetic - &b.kinetic).amax() < 1e-10);
        prop_assert!((&a.nuclear - &b.nuclear).amax() < 1e-10);
        let worst = a.eri.as_slice().iter().zip(b.eri.as_slice()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        prop_assert!(worst < 1e-10);
        prop_assert!((a.nuclear_repulsion - b.nuclear_repulsion).abs() < 1e-10);
    }
}

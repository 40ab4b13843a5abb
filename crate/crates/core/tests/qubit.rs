use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rqas::chem::{build_geometry, sto3g_basis};
use rqas::integrals::{build_tables, TwoElectronTensor};
use rqas::qubit::{
    build_fermionic_hamiltonian, exact_ground_state, hartree_fock_bitstring, jordan_wigner,
    pauli_multiply, qubit_hamiltonian, read_hamiltonian, sector_ground_state, write_hamiltonian,
    FermionOperator, Ladder, Pauli, PauliString, PauliSum, Phase,
};
use rqas::scf::{
    run_rhf, select_active_space, ActiveSelection, ActiveSpaceIntegrals, ScfOptions, ScfResult,
};
use rqas::Error;

// PySCF 2.14 CASCI(4,4) on RHF/STO-3G orbitals, same geometry.
const OHO_270_135_CASCI: f64 = -147.796853355918;

type CMat = DMatrix<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMat::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// a†_j built from 2×2 blocks with a Z string on lower modes. Qubit q is bit
/// q of the basis index, so qubit 0 is the rightmost Kronecker factor.
fn creation_matrix(j: usize, n: usize) -> CMat {
    let id = CMat::identity(2, 2);
    let z = CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
    // |0⟩ → |1⟩
    let raise = CMat::from_row_slice(2, 2, &[c(0.0), c(0.0), c(1.0), c(0.0)]);
    let mut m = CMat::identity(1, 1);
    for q in (0..n).rev() {
        let f = if q == j {
            &raise
        } else if q < j {
            &z
        } else {
            &id
        };
        m = kron(&m, f);
    }
    m
}

fn fermion_matrix(f: &FermionOperator, n: usize) -> CMat {
    let dim = 1 << n;
    let cr: Vec<CMat> = (0..n).map(|j| creation_matrix(j, n)).collect();
    let an: Vec<CMat> = cr.iter().map(|m| m.adjoint()).collect();
    let mut out = CMat::identity(dim, dim) * c(f.constant);
    for (ops, coeff) in f.terms() {
        let mut m = CMat::identity(dim, dim);
        for l in ops {
            m *= if l.dagger { &cr[l.mode] } else { &an[l.mode] };
        }
        out += m * c(coeff);
    }
    out
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn oho(d: f64, z: f64) -> (ScfResult, ActiveSpaceIntegrals) {
    let g = build_geometry(d, z).unwrap();
    let t = build_tables(&g, &sto3g_basis(&g).unwrap()).unwrap();
    let scf = run_rhf(&t, g.n_electrons, &ScfOptions::default()).unwrap();
    let asi = select_active_space(&scf, &t).unwrap();
    (scf, asi)
}

fn random_active_space(rng: &mut ChaCha8Rng, n: usize) -> ActiveSpaceIntegrals {
    let mut h = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    h = &h + h.transpose();
    // real-orbital 8-fold symmetry by symmetrising a random chemists' tensor
    let mut chem = vec![0.0; n * n * n * n];
    let idx = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v: f64 = rng.gen_range(-0.5..0.5);
                    for (a, b, cc, d) in [
                        (p, q, r, s),
                        (q, p, r, s),
                        (p, q, s, r),
                        (q, p, s, r),
                        (r, s, p, q),
                        (s, r, p, q),
                        (r, s, q, p),
                        (s, r, q, p),
                    ] {
                        chem[idx(a, b, cc, d)] += v;
                    }
                }
            }
        }
    }
    let g = TwoElectronTensor::from_chemist(n, &chem);
    ActiveSpaceIntegrals::from_mo_integrals(
        &h,
        &g,
        rng.gen_range(-5.0..5.0),
        &[],
        &(0..n).collect::<Vec<_>>(),
        n,
        ActiveSelection::Frontier,
    )
}

#[test]
fn jw_hopping_example() {
    let mut f = FermionOperator::new();
    f.add_term(&[Ladder::create(0), Ladder::annihilate(1)], 1.0);
    f.add_term(&[Ladder::create(1), Ladder::annihilate(0)], 1.0);
    let h = jordan_wigner(&f, 2).unwrap();
    assert_eq!(h.len(), 2);
    assert_eq!(h.constant, 0.0);
    assert!((h.coefficient(&PauliString::from_label("XX").unwrap()) - 0.5).abs() < 1e-15);
    assert!((h.coefficient(&PauliString::from_label("YY").unwrap()) - 0.5).abs() < 1e-15);
}

#[test]
fn identity_one_body_gives_number_operator() {
    let asi = ActiveSpaceIntegrals::from_mo_integrals(
        &DMatrix::identity(4, 4),
        &TwoElectronTensor::zeros(4),
        0.0,
        &[],
        &[0, 1, 2, 3],
        4,
        ActiveSelection::Frontier,
    );
    let f = build_fermionic_hamiltonian(&asi);
    assert_eq!(f.len(), 8);
    assert!(f.max_difference(&FermionOperator::number(8)) == 0.0);
}

#[test]
fn zero_integrals_leave_only_constant() {
    let mut asi = ActiveSpaceIntegrals::from_mo_integrals(
        &DMatrix::zeros(4, 4),
        &TwoElectronTensor::zeros(4),
        -3.25,
        &[],
        &[0, 1, 2, 3],
        4,
        ActiveSelection::Frontier,
    );
    asi.e_frozen = -3.25;
    let f = build_fermionic_hamiltonian(&asi);
    assert!(f.is_empty());
    assert_eq!(f.constant, -3.25);
    let h = jordan_wigner(&f, 8).unwrap();
    assert!(h.is_empty());
    assert_eq!(h.constant, -3.25);
}

#[test]
fn fermionic_hamiltonian_is_hermitian() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let f = build_fermionic_hamiltonian(&random_active_space(&mut rng, 3));
        assert!(f.max_difference(&f.adjoint()) < 1e-12);
        let canon = f.canonical();
        assert_eq!(canon.canonical(), canon);
    }
}

#[test]
fn jw_matches_kronecker_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..3 {
        let asi = random_active_space(&mut rng, 2);
        let f = build_fermionic_hamiltonian(&asi);
        let h = jordan_wigner(&f, 4).unwrap();
        let diff = h.to_dense() - fermion_matrix(&f, 4);
        assert!(max_abs(&diff) < 1e-12);
    }
    // products whose normal ordering produces a constant
    let mut f = FermionOperator::new();
    f.add_term(
        &[
            Ladder::create(2),
            Ladder::create(0),
            Ladder::annihilate(1),
            Ladder::annihilate(3),
        ],
        0.7,
    );
    f.add_term(
        &[
            Ladder::create(3),
            Ladder::create(1),
            Ladder::annihilate(0),
            Ladder::annihilate(2),
        ],
        0.7,
    );
    f.add_term(&[Ladder::annihilate(1), Ladder::create(1)], -0.3);
    let h = jordan_wigner(&f, 4).unwrap();
    assert!(max_abs(&(h.to_dense() - fermion_matrix(&f, 4))) < 1e-12);
}

#[test]
fn pauli_multiply_matches_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let a = PauliString::new(rng.gen_range(0..8), rng.gen_range(0..8));
        let b = PauliString::new(rng.gen_range(0..8), rng.gen_range(0..8));
        let (p, ph) = pauli_multiply(&a, &b);
        let lhs = a.to_dense(3) * b.to_dense(3);
        let rhs = p.to_dense(3) * ph.to_complex();
        assert!(max_abs(&(lhs - rhs)) < 1e-15);
        assert_eq!(
            a.commutes_with(&b),
            matches!(ph, Phase::ONE | Phase::MINUS_ONE) || a == b || {
                let (_, back) = pauli_multiply(&b, &a);
                back == ph
            }
        );
    }
}

#[test]
fn oho_hamiltonian_properties() {
    let (scf, asi) = oho(2.70, 1.35);
    let h = qubit_hamiltonian(&asi).unwrap();
    assert_eq!(h.n_qubits(), 8);
    assert!(!h.is_empty() && h.len() <= 400, "{} terms", h.len());
    assert!(h.terms().all(|(_, c)| c.abs() >= 1e-10));
    assert!(h.is_real());

    // closed-shell reference reproduces SCF energy
    let hf = hartree_fock_bitstring(4, 4);
    assert_eq!(hf, 0x33);
    assert!((h.diagonal_element(hf) - scf.energy_total).abs() < 1e-8);

    // symmetries
    let n_op = jordan_wigner(&FermionOperator::number(8), 8)
        .unwrap()
        .to_dense();
    let sz = jordan_wigner(&FermionOperator::spin_z(4), 8)
        .unwrap()
        .to_dense();
    let hm = h.to_dense();
    assert!(max_abs(&(&hm * &n_op - &n_op * &hm)) < 1e-8);
    assert!(max_abs(&(&hm * &sz - &sz * &hm)) < 1e-8);

    // CASCI reference in the 4-electron sector
    let n4 = sector_ground_state(&h, 4).unwrap();
    assert!(
        (n4.energy - OHO_270_135_CASCI).abs() < 1e-6,
        "{}",
        n4.energy
    );
    assert!(n4.energy <= scf.energy_total);

    let full = exact_ground_state(&h).unwrap();
    assert!(full.energy <= n4.energy + 1e-10);
    let mut hv = vec![Complex64::new(0.0, 0.0); 256];
    h.apply(&full.vector, &mut hv);
    for (a, b) in hv.iter().zip(&full.vector) {
        assert!((a - b * full.energy).norm() < 1e-8);
    }
}

#[test]
fn spectrum_invariant_under_active_rotation() {
    let (_, asi) = oho(2.85, 1.1);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0));
    let u = a.qr().q();
    let rotated = asi.rotated(&u);
    assert!((&rotated.h_eff - &asi.h_eff).amax() > 1e-3);
    let e0 = sector_ground_state(&qubit_hamiltonian(&asi).unwrap(), 4)
        .unwrap()
        .energy;
    let e1 = sector_ground_state(&qubit_hamiltonian(&rotated).unwrap(), 4)
        .unwrap()
        .energy;
    assert!((e0 - e1).abs() < 1e-8);
    let f0 = exact_ground_state(&qubit_hamiltonian(&asi).unwrap())
        .unwrap()
        .energy;
    let f1 = exact_ground_state(&qubit_hamiltonian(&rotated).unwrap())
        .unwrap()
        .energy;
    assert!((f0 - f1).abs() < 1e-8);
}

#[test]
fn spectrum_invariant_under_orbital_relabelling() {
    let (_, asi) = oho(2.70, 1.0);
    let perm = [2usize, 0, 3, 1];
    let u = DMatrix::from_fn(4, 4, |i, j| if perm[j] == i { 1.0 } else { 0.0 });
    let h0 = qubit_hamiltonian(&asi).unwrap();
    let h1 = qubit_hamiltonian(&asi.rotated(&u)).unwrap();
    assert_eq!(h0.len(), h1.len());
    let e0 = exact_ground_state(&h0).unwrap().energy;
    let e1 = exact_ground_state(&h1).unwrap().energy;
    assert!((e0 - e1).abs() < 1e-9);
}

#[test]
fn term_structure_stable_along_scan() {
    let counts: Vec<usize> = [0.9, 1.2, 1.35]
        .iter()
        .map(|&z| qubit_hamiltonian(&oho(2.70, z).1).unwrap().len())
        .collect();
    assert!(counts.iter().all(|&n| n <= 400));
    println!("term counts {counts:?}");
}

#[test]
fn text_format_round_trip() {
    let (_, asi) = oho(2.70, 1.35);
    let h = qubit_hamiltonian(&asi).unwrap();
    let mut buf = Vec::new();
    write_hamiltonian(&h, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.lines().nth(1).unwrap().ends_with("IIIIIIII"));
    let back = read_hamiltonian(&text).unwrap();
    assert_eq!(back, h);
}

#[test]
fn text_format_errors() {
    let err = read_hamiltonian("0.5 XI\n# c\n1.0 XYZ\n").unwrap_err();
    assert!(
        matches!(err, Error::HamiltonianFormat { line: 3, .. }),
        "{err}"
    );
    let err = read_hamiltonian("abc XI\n").unwrap_err();
    assert!(matches!(err, Error::HamiltonianFormat { line: 1, .. }));
    let err = read_hamiltonian("1.0 XQ\n").unwrap_err();
    assert!(matches!(err, Error::HamiltonianFormat { line: 1, .. }));
    assert!(read_hamiltonian("# nothing\n").is_err());
    let h = read_hamiltonian("1.0 XI II\n0.25 IIII\n-0.5 ZIII\n0.5 ZIII").unwrap();
    assert_eq!(h.n_qubits(), 4);
    assert_eq!(h.constant, 0.25);
    assert_eq!(h.len(), 2);
    assert_eq!(h.coefficient(&PauliString::single(0, Pauli::Z)), 0.0);
    assert_eq!(h.coefficient(&PauliString::single(0, Pauli::X)), 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in 0u32..64, b in 0u32..64, c in 0u32..64, d in 0u32..64, e in 0u32..64, f in 0u32..64) {
        let (p, q, r) = (PauliString::new(a, b), PauliString::new(c, d), PauliString::new(e, f));
        let (pq, ph1) = pauli_multiply(&p, &q);
        let (pq_r, ph2) = pauli_multiply(&pq, &r);
        let (qr, ph3) = pauli_multiply(&q, &r);
        let (p_qr, ph4) = pauli_multiply(&p, &qr);
        prop_assert_eq!(pq_r, p_qr);
        prop_assert_eq!(ph1 * ph2, ph3 * ph4);
    }

    #[test]
    fn squares_to_identity(a in 0u32..256, b in 0u32..256) {
        let p = PauliString::new(a, b);
        prop_assert_eq!(pauli_multiply(&p, &p), (PauliString::IDENTITY, Phase::ONE));
    }
}

#[test]
fn sum_linearity() {
    let mut a = PauliSum::new(2).unwrap();
    a.add_term(PauliString::from_label("XZ").unwrap(), 0.3)
        .unwrap();
    let mut b = PauliSum::new(2).unwrap();
    b.add_term(PauliString::from_label("XZ").unwrap(), -0.3)
        .unwrap();
    b.constant = 1.0;
    let s = a.plus(&b).unwrap();
    assert_eq!(s.constant, 1.0);
    assert_eq!(s.coefficient(&PauliString::from_label("XZ").unwrap()), 0.0);
    assert!(max_abs(&(a.scaled(2.0).to_dense() - a.to_dense() * c(2.0))) < 1e-15);
}

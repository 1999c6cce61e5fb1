//! Cross-checks of every module against independent routes: closed-form
//! eigenvalues, Fock-space density matrices, truncation doubling.

mod common;

use approx::assert_abs_diff_eq;
use mixmeter_core::dynamics::{
    atomic_density, damped_eigenvalues, damped_oracle_eigenvalues, damped_timeseries, field_density,
    jcm_branches, jcm_timeseries, two_outcome_delta_s, uniform_grid, DampedConfig, JcmConfig,
};
use mixmeter_core::mixedness::{
    araki_lieb_holds, entropy_variance, report, von_neumann_entropy, Spectrum,
};
use mixmeter_core::qmatrix::{
    hermitian_eigenvalues, outer_product, validate_density, ComplexMatrix, DEFAULT_DENSITY_TOL,
    DEFAULT_EIGEN_TOL,
};
use mixmeter_core::states::{
    cat2_closed_form, cat3_gram, coherent_overlap, coherent_vector, gram_matrix, gram_spectrum,
    mixture_density, thermal_closed_form, thermal_density, Cat3Mode, FockConfig, PureStateMixture,
    THERMAL_TAIL_TOL,
};
use mixmeter_core::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn cat3_gram_matches_characteristic_polynomial() {
    for mode in [Cat3Mode::Recomputed, Cat3Mode::Paper] {
        let g = cat3_gram(1.0, mode);
        let jacobi = hermitian_eigenvalues(&g, DEFAULT_EIGEN_TOL).unwrap().eigenvalues;
        let roots = common::hermitian3_eigenvalues(&g);
        for (a, b) in jacobi.iter().zip(roots) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-13);
        }
        assert_abs_diff_eq!(jacobi.iter().sum::<f64>(), 1.0, epsilon = 1e-14);
    }
}

#[test]
fn random_complex_3x3_matches_characteristic_polynomial() {
    let mut rng = common::rng(3);
    for _ in 0..200 {
        let mut m = ComplexMatrix::zeros(3, 3);
        for i in 0..3 {
            m[(i, i)] = real(rng.gen_range(-2.0..2.0));
            for j in (i + 1)..3 {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        let jacobi = hermitian_eigenvalues(&m, DEFAULT_EIGEN_TOL).unwrap().eigenvalues;
        for (a, b) in jacobi.iter().zip(common::hermitian3_eigenvalues(&m)) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
    }
}

#[test]
fn eigenvalues_are_deterministic_and_trace_preserving() {
    let mut rng = common::rng(11);
    for dim in [2, 5, 16, 40] {
        let m = common::random_density(&mut rng, dim, dim);
        let a = hermitian_eigenvalues(&m, DEFAULT_EIGEN_TOL).unwrap();
        let b = hermitian_eigenvalues(&m, DEFAULT_EIGEN_TOL).unwrap();
        assert_eq!(a, b);
        assert!(a.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        assert!(a.offdiag_residual <= a.threshold);
        assert_abs_diff_eq!(a.eigenvalues.iter().sum::<f64>(), m.trace().re, epsilon = 1e-10 * dim as f64);
    }
}

#[test]
fn eigenvalues_are_unitarily_invariant() {
    let mut rng = common::rng(12);
    for dim in 2..=12 {
        let rank = rng.gen_range(1..=dim);
        let m = common::random_density(&mut rng, dim, rank);
        let u = common::random_unitary(&mut rng, dim, 4 * dim);
        let a = hermitian_eigenvalues(&m, DEFAULT_EIGEN_TOL).unwrap().eigenvalues;
        let b = hermitian_eigenvalues(&m.conjugated_by(&u).unwrap(), DEFAULT_EIGEN_TOL).unwrap().eigenvalues;
        for (x, y) in a.iter().zip(&b) {
            assert_abs_diff_eq!(*x, *y, epsilon = 1e-9);
        }
    }
}

#[test]
fn large_matrix_converges() {
    let mut rng = common::rng(13);
    let m = common::random_density(&mut rng, 128, 128);
    let sp = hermitian_eigenvalues(&m, DEFAULT_EIGEN_TOL).unwrap();
    assert!(sp.sweeps < 20, "{} sweeps", sp.sweeps);
}

#[test]
fn coherent_projector_has_unit_trace() {
    let cfg = FockConfig::new(40).unwrap();
    let v = coherent_vector(Complex64::new(1.2, -0.9), &cfg).unwrap();
    let w = coherent_vector(Complex64::new(-0.3, 0.4), &cfg).unwrap();
    assert_abs_diff_eq!(v.projector().trace().re, 1.0, epsilon = 1e-12);
    // Tr |v⟩⟨w| = ⟨w|v⟩
    let tr = outer_product(v.amps(), w.amps()).trace();
    let direct = w.inner(&v).unwrap();
    assert_abs_diff_eq!(tr.re, direct.re, epsilon = 1e-15);
    assert_abs_diff_eq!(tr.im, direct.im, epsilon = 1e-15);
}

#[test]
fn purification_matches_fock_density() {
    let mut rng = common::rng(21);
    for case in 0..40 {
        let k = rng.gen_range(2..=4);
        let alphas: Vec<Complex64> = (0..k)
            .map(|_| Complex64::from_polar(rng.gen_range(0.0..2.0), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let cfg = FockConfig::for_amplitude(2.0);
        let components = alphas
            .iter()
            .zip(&raw)
            .map(|(&a, w)| (w / total, coherent_vector(a, &cfg).unwrap()))
            .collect();
        let mix = PureStateMixture::new(components).unwrap();
        let gram = gram_spectrum(&gram_matrix(&mix).unwrap()).unwrap();
        let rho = mixture_density(&mix).unwrap();
        for (i, &l) in rho.eigenvalues().iter().enumerate() {
            let g = gram.probs().get(i).copied().unwrap_or(0.0);
            assert!((g - l).abs() <= 1e-8, "case {case}, eigenvalue {i}: gram {g} vs fock {l}");
        }
    }
}

proptest! {
    #[test]
    fn overlap_modulus_and_symmetry(
        ar in -3.0..3.0_f64, ai in -3.0..3.0_f64, br in -3.0..3.0_f64, bi in -3.0..3.0_f64,
    ) {
        let (a, b) = (Complex64::new(ar, ai), Complex64::new(br, bi));
        let ab = coherent_overlap(a, b);
        let ba = coherent_overlap(b, a);
        prop_assert!((ab.norm() - (-(a - b).norm_sqr() / 2.0).exp()).abs() <= 1e-14);
        prop_assert!((ab - ba.conj()).norm() <= 1e-14);
    }

    #[test]
    fn two_by_two_closed_form(a in -5.0..5.0_f64, b in -5.0..5.0_f64, cr in -5.0..5.0_f64, ci in -5.0..5.0_f64) {
        let c = Complex64::new(cr, ci);
        let m = ComplexMatrix::from_row_major(2, 2, vec![real(a), c, c.conj(), real(b)]).unwrap();
        let ev = hermitian_eigenvalues(&m, DEFAULT_EIGEN_TOL).unwrap().eigenvalues;
        let rad = (((a - b) / 2.0).powi(2) + c.norm_sqr()).sqrt();
        prop_assert!((ev[0] - ((a + b) / 2.0 + rad)).abs() <= 1e-12);
        prop_assert!((ev[1] - ((a + b) / 2.0 - rad)).abs() <= 1e-12);
    }

    #[test]
    fn report_is_basis_invariant(seed in any::<u64>(), dim in 2usize..7) {
        let mut rng = common::rng(seed);
        let m = common::random_density(&mut rng, dim, dim);
        let u = common::random_unitary(&mut rng, dim, 3 * dim);
        let a = report(&validate_density(&m, DEFAULT_DENSITY_TOL).unwrap(), None).unwrap();
        let b = report(&validate_density(&m.conjugated_by(&u).unwrap(), DEFAULT_DENSITY_TOL).unwrap(), None).unwrap();
        prop_assert!((a.entropy - b.entropy).abs() <= 1e-9);
        prop_assert!((a.entropy_variance - b.entropy_variance).abs() <= 1e-9);
        prop_assert!((a.q_s - b.q_s).abs() <= 1e-9);
    }
}

#[test]
fn cat2_is_monotone_and_saturates() {
    let rows: Vec<_> = (0..=30).map(|k| cat2_closed_form(0.1 * k as f64)).collect();
    for w in rows.windows(2) {
        assert!(w[1].entropy >= w[0].entropy);
        assert!(w[1].q_s >= w[0].q_s);
    }
    assert!(rows.iter().all(|r| r.entropy <= std::f64::consts::LN_2 + 1e-15));
}

#[test]
fn cat2_closed_form_matches_oracle_at_unit_amplitude() {
    let mix = PureStateMixture::coherent(&[real(1.0), real(-1.0)], &FockConfig::new(32).unwrap()).unwrap();
    let r = report(&mixture_density(&mix).unwrap(), None).unwrap();
    let cf = cat2_closed_form(1.0);
    assert_abs_diff_eq!(cf.entropy, r.entropy, epsilon = 1e-8);
    assert_abs_diff_eq!(cf.q_s, r.q_s, epsilon = 1e-8);
}

#[test]
fn thermal_entropy_matches_geometric_closed_form() {
    for nbar in [0.1_f64, 1.0, 5.0, 10.0] {
        let exact = (1.0 + nbar) * (1.0 + nbar).ln() - nbar * nbar.ln();
        assert_abs_diff_eq!(thermal_closed_form(nbar, THERMAL_TAIL_TOL).entropy, exact, epsilon = 1e-9);
        let t = thermal_density(nbar, &FockConfig::new(16).unwrap(), true).unwrap();
        let r = report(&t.density, None).unwrap();
        assert_abs_diff_eq!(r.entropy, exact, epsilon = 1e-7);
    }
}

fn fields(r: &mixmeter_core::mixedness::MixednessReport) -> [f64; 4] {
    [r.entropy, r.linear_entropy, r.entropy_variance, r.q_s]
}

#[test]
fn doubling_truncation_changes_nothing() {
    let pairs: [(&[Complex64], usize); 3] = [
        (&[real(3.0), real(-3.0)], 64),
        (&[real(1.0), real(-1.0)], 32),
        (&[real(2.0), real(-2.0), real(4.0)], 64),
    ];
    for (alphas, n) in pairs {
        let r1 = report(&mixture_density(&PureStateMixture::coherent(alphas, &FockConfig::new(n).unwrap()).unwrap()).unwrap(), None).unwrap();
        let r2 = report(&mixture_density(&PureStateMixture::coherent(alphas, &FockConfig::new(2 * n).unwrap()).unwrap()).unwrap(), None).unwrap();
        for (a, b) in fields(&r1).iter().zip(fields(&r2)) {
            assert!((a - b).abs() < 1e-8, "{alphas:?}: {a} vs {b}");
        }
    }

    let t1 = thermal_density(5.0, &FockConfig::new(256).unwrap(), false).unwrap();
    let t2 = thermal_density(5.0, &FockConfig::new(512).unwrap(), false).unwrap();
    let (r1, r2) = (report(&t1.density, None).unwrap(), report(&t2.density, None).unwrap());
    for (a, b) in fields(&r1).iter().zip(fields(&r2)) {
        assert!((a - b).abs() < 1e-8, "thermal: {a} vs {b}");
    }

    let grid = vec![0.0, 1.3, 5.0, 12.7];
    let jcm64 = jcm_timeseries(&JcmConfig::new(real(4.0), grid.clone(), FockConfig::new(64).unwrap()).unwrap()).unwrap();
    let jcm128 = jcm_timeseries(&JcmConfig::new(real(4.0), grid, FockConfig::new(128).unwrap()).unwrap()).unwrap();
    for (a, b) in jcm64.iter().zip(&jcm128) {
        assert!((a.s_atom - b.s_atom).abs() < 1e-8);
        assert!((a.q_s_atom - b.q_s_atom).abs() < 1e-8);
        assert!((a.s_field - b.s_field).abs() < 1e-8);
    }

    let cfg = DampedConfig::new(2.0, 7.0, 1.0, vec![0.0]).unwrap();
    let doubled = cfg.clone().with_fock(FockConfig::new(2 * cfg.fock.truncation_n).unwrap());
    for gt in [0.1, 1.0, 5.0] {
        let (a, _) = damped_oracle_eigenvalues(&cfg, gt).unwrap();
        let (b, _) = damped_oracle_eigenvalues(&doubled, gt).unwrap();
        assert!((a - b).abs() < 1e-8);
    }
}

/// Atomic fluctuations with `Λ₁ ln²Λ₂` in place of `Λ₂ ln²Λ₂`.
fn swapped_weight_variance(l1: f64, l2: f64) -> f64 {
    let s = -l1 * l1.ln() - l2 * l2.ln();
    l1 * l1.ln().powi(2) + l1 * l2.ln().powi(2) - s * s
}

#[test]
fn swapped_weight_atomic_fluctuation_breaks_two_outcome_identity() {
    let (psi1, psi2) = jcm_branches(&JcmConfig::new(real(4.0), vec![0.0], FockConfig::new(64).unwrap()).unwrap(), 5.0).unwrap();
    let ev = atomic_density(&psi1, &psi2).unwrap().eigenvalues().to_vec();
    let (l1, l2) = (ev[0], ev[1]);
    assert!((l1 - l2).abs() > 0.05, "need an asymmetric spectrum, got {ev:?}");
    let identity = two_outcome_delta_s(l1, l2).powi(2);
    let general = entropy_variance(&Spectrum::new(ev.clone()).unwrap());
    assert_abs_diff_eq!(general, identity, epsilon = 1e-12);
    assert!((swapped_weight_variance(l1, l2) - identity).abs() > 1e-3);
}

#[test]
fn jcm_snapshots_satisfy_invariants() {
    let grid = uniform_grid(8.0, 0.05).unwrap();
    let cfg = JcmConfig::new(real(4.0), grid, FockConfig::new(64).unwrap()).unwrap();
    for snap in jcm_timeseries(&cfg).unwrap() {
        assert!((snap.branch_norm_sum - 1.0).abs() <= 1e-8);
        assert!((snap.s_atom - snap.s_field).abs() <= 1e-6);
        assert!(araki_lieb_holds(snap.s_atom, snap.s_field, 0.0, 1e-6));
        let ev = snap.atomic_rho.eigenvalues();
        let var = entropy_variance(&Spectrum::new(ev.to_vec()).unwrap());
        assert!((var.sqrt() - two_outcome_delta_s(ev[0], ev[1])).abs() <= 1e-12);
        assert!((snap.ds_atom - var.sqrt()).abs() <= 1e-12);
    }
}

#[test]
fn field_density_rank_stays_two() {
    let cfg = JcmConfig::new(real(4.0), vec![0.0], FockConfig::new(64).unwrap()).unwrap();
    for lt in [0.5, 2.0, 5.0, 11.0, 19.0] {
        let (psi1, psi2) = jcm_branches(&cfg, lt).unwrap();
        let rho = field_density(&psi1, &psi2).unwrap();
        assert!(rho.eigenvalues().iter().filter(|&&l| l > 1e-9).count() <= 2, "λt = {lt}");
        let atom = Spectrum::of_density(&atomic_density(&psi1, &psi2).unwrap()).unwrap();
        let field = Spectrum::of_density(&rho).unwrap();
        assert!((von_neumann_entropy(&atom) - von_neumann_entropy(&field)).abs() <= 1e-6);
    }
}

#[test]
fn damped_closed_form_matches_branch_gram() {
    let cfg = DampedConfig::new(2.0, 7.0, 1.0, vec![0.0]).unwrap();
    for gt in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let (lp, lm) = damped_eigenvalues(&cfg, gt);
        let (op, om) = damped_oracle_eigenvalues(&cfg, gt).unwrap();
        assert_abs_diff_eq!(lp, op, epsilon = 1e-9);
        assert_abs_diff_eq!(lm, om, epsilon = 1e-9);
        assert_abs_diff_eq!(lp + lm, 1.0, epsilon = 1e-12);
    }
}

#[test]
fn damped_series_rises_peaks_and_decays() {
    let cfg = DampedConfig::new(2.0, 7.0, 1.0, uniform_grid(5.0, 0.005).unwrap()).unwrap();
    let series = damped_timeseries(&cfg).unwrap();
    let s: Vec<f64> = series.iter().map(|x| x.s).collect();
    let q: Vec<f64> = series.iter().map(|x| x.q_s).collect();
    let argmax = |v: &[f64]| v.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    let (is, iq) = (argmax(&s), argmax(&q));
    assert!(is > 0 && is < s.len() - 1, "entropy peak at the boundary");
    assert!(is.abs_diff(iq) <= 1);
    assert!(s[0] < 1e-12 && *s.last().unwrap() < s[is]);
    assert!(*q.last().unwrap() < q[is]);
    for snap in &series {
        assert!((snap.trace_check - 1.0).abs() <= 1e-12);
        assert!((snap.lambda_plus + snap.lambda_minus - 1.0).abs() <= 1e-12);
        assert!((0.0..=1.0).contains(&snap.lambda_minus) && (0.0..=1.0).contains(&snap.lambda_plus));
        let var = entropy_variance(&Spectrum::new(vec![snap.lambda_plus, snap.lambda_minus]).unwrap());
        assert!((var.sqrt() - snap.ds).abs() <= 1e-12);
    }
}

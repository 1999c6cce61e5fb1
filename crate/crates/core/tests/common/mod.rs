#![allow(dead_code)]

use mixmeter_core::qmatrix::ComplexMatrix;
use mixmeter_core::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Plane rotation on `(p, q)`: `[[cos θ, −e^{iφ} sin θ], [e^{−iφ} sin θ, cos θ]]`.
pub fn givens(dim: usize, p: usize, q: usize, theta: f64, phi: f64) -> ComplexMatrix {
    let mut g = ComplexMatrix::identity(dim);
    let phase = Complex64::from_polar(1.0, phi);
    g[(p, p)] = Complex64::new(theta.cos(), 0.0);
    g[(q, q)] = Complex64::new(theta.cos(), 0.0);
    g[(p, q)] = -phase * theta.sin();
    g[(q, p)] = phase.conj() * theta.sin();
    g
}

/// Product of `count` random Givens rotations.
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize, count: usize) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(dim);
    if dim < 2 {
        return u;
    }
    for _ in 0..count {
        let p = rng.gen_range(0..dim);
        let mut q = rng.gen_range(0..dim - 1);
        if q >= p {
            q += 1;
        }
        let g = givens(dim, p, q, rng.gen_range(0.0..std::f64::consts::TAU), rng.gen_range(0.0..std::f64::consts::TAU));
        u = g.matmul(&u).unwrap();
    }
    u
}

/// `G G† / Tr(G G†)` with `G` of shape `dim × rank`, uniform complex entries.
pub fn random_density<R: Rng>(rng: &mut R, dim: usize, rank: usize) -> ComplexMatrix {
    let data = (0..dim * rank)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let g = ComplexMatrix::from_row_major(dim, rank, data).unwrap();
    let m = g.matmul(&g.adjoint()).unwrap();
    let tr = m.trace().re;
    let mut m = m.scale(1.0 / tr);
    // exact Hermitian symmetry
    for i in 0..dim {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in (i + 1)..dim {
            m[(j, i)] = m[(i, j)].conj();
        }
    }
    m
}

/// Eigenvalues of a 3×3 Hermitian matrix from the trigonometric solution of
/// its characteristic polynomial, descending.
pub fn hermitian3_eigenvalues(a: &ComplexMatrix) -> [f64; 3] {
    let re = |i: usize, j: usize| a[(i, j)].re;
    let p1 = a[(0, 1)].norm_sqr() + a[(0, 2)].norm_sqr() + a[(1, 2)].norm_sqr();
    let q = (re(0, 0) + re(1, 1) + re(2, 2)) / 3.0;
    if p1 == 0.0 {
        let mut d = [re(0, 0), re(1, 1), re(2, 2)];
        d.sort_by(|x, y| y.total_cmp(x));
        return d;
    }
    let p2 = (re(0, 0) - q).powi(2) + (re(1, 1) - q).powi(2) + (re(2, 2) - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    // B = (A − qI)/p, r = det(B)/2
    let b = |i: usize, j: usize| {
        let z = a[(i, j)];
        if i == j {
            Complex64::new((z.re - q) / p, 0.0)
        } else {
            z / p
        }
    };
    let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (det.re / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut out = [e1, e2, e3];
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

/// Interior indices where the series has a local maximum (rising into it,
/// not rising out of it).
pub fn local_maxima(series: &[f64]) -> Vec<usize> {
    (1..series.len().saturating_sub(1))
        .filter(|&i| series[i] > series[i - 1] && series[i] >= series[i + 1])
        .collect()
}

/// Every peak of `a` has a peak of `b` within `slack` grid steps and vice versa.
pub fn peaks_aligned(a: &[usize], b: &[usize], slack: usize) -> Result<(), String> {
    let near = |i: usize, other: &[usize]| other.iter().any(|&j| i.abs_diff(j) <= slack);
    if let Some(i) = a.iter().find(|&&i| !near(i, b)) {
        return Err(format!("peak at index {i} of the first series has no partner"));
    }
    if let Some(j) = b.iter().find(|&&j| !near(j, a)) {
        return Err(format!("peak at index {j} of the second series has no partner"));
    }
    Ok(())
}

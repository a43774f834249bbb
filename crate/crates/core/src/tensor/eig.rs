//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.

use num_complex::Complex64;

use super::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Inputs further than this from Hermitian are rejected.
const HERMITIAN_INPUT_TOL: f64 = 1e-10;
/// Sweeps stop once the off-diagonal Frobenius norm drops below this.
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// `Σ λ_k v_k v_k†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vector(k);
            out = &out + &ComplexMatrix::outer(&v, &v).scale_re(lambda);
        }
        out
    }
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[r * n + c].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<Eigen> {
    if !h.is_square() {
        return Err(Error::Dimension(
            "eigendecomposition needs a square matrix".into(),
        ));
    }
    let herm = h.hermiticity_residual();
    if herm > HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let n = h.rows();
    // symmetrize so rounding noise in the input does not bias the rotations
    let mut a = vec![ZERO; n * n];
    for r in 0..n {
        for c in 0..n {
            a[r * n + c] = (h.get(r, c) + h.get(c, r).conj()) * 0.5;
        }
    }
    let mut v = vec![ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let scale = h.frobenius_norm().max(1.0);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) < OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }
    if off_diagonal_norm(&a, n) >= OFF_DIAGONAL_TOL * scale * 10.0 {
        return Err(Error::Invariant("Jacobi iteration did not converge".into()));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, dst, v[r * n + src]);
        }
    }
    Ok(Eigen { values, vectors })
}

/// One complex Jacobi rotation zeroing `a[p][q]`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    // phase e^{-iφ} turns a_pq real, then a real rotation finishes the job
    let phase = (apq / mag).conj();
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = [[c, s], [-s·phase, c·phase]] on the (p, q) plane
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    // A ← A G
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * g_pp + akq * g_qp;
        a[k * n + q] = akp * g_pq + akq * g_qq;
    }
    // A ← G† A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[q * n + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
    // V ← V G
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * g_pp + vkq * g_qp;
        v[k * n + q] = vkp * g_pq + vkq * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::pauli;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            m.set(r, r, Complex64::new(rng.gen_range(-2.0..2.0), 0.0));
            for c in (r + 1)..n {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m.set(r, c, z);
                m.set(c, r, z.conj());
            }
        }
        m
    }

    fn residuals(h: &ComplexMatrix, e: &Eigen) -> (f64, f64) {
        let n = h.rows();
        let mut res = 0.0f64;
        for k in 0..n {
            let v = e.vector(k);
            let hv = h.matvec(&v);
            for i in 0..n {
                res = res.max((hv[i] - v[i] * e.values[k]).norm());
            }
        }
        let ortho = (&e.vectors.adjoint() * &e.vectors).max_abs_diff(&ComplexMatrix::identity(n));
        (res, ortho)
    }

    #[test]
    fn diagonal_input_sorted_descending() {
        let h = ComplexMatrix::diag(&[3.0, 1.0, 2.0].map(|x| Complex64::new(x, 0.0)));
        let e = hermitian_eig(&h).unwrap();
        assert_eq!(e.values, vec![3.0, 2.0, 1.0]);
        assert_eq!(e.vector(0)[0].norm(), 1.0);
        assert_eq!(e.vector(1)[2].norm(), 1.0);
        assert_eq!(e.vector(2)[1].norm(), 1.0);
    }

    #[test]
    fn pauli_x_spectrum() {
        let e = hermitian_eig(&pauli::x()).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] + 1.0).abs() < 1e-15);
        let plus = e.vector(0);
        // |+⟩ up to phase
        assert!(((plus[0] * plus[1].conj()).re - 0.5).abs() < 1e-14);
        let minus = e.vector(1);
        assert!(((minus[0] * minus[1].conj()).re + 0.5).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_random_4x4() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..50 {
            let h = random_hermitian(&mut rng, 4);
            let e = hermitian_eig(&h).unwrap();
            assert!(e.reconstruct().max_abs_diff(&h) < 1e-11);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::mat2(ZERO, Complex64::new(1.0, 0.0), ZERO, ZERO);
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn residuals_over_many_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for (dim, count) in [(2, 600), (4, 350), (32, 50)] {
            for _ in 0..count {
                let h = random_hermitian(&mut rng, dim);
                let e = hermitian_eig(&h).unwrap();
                let (res, ortho) = residuals(&h, &e);
                assert!(res < 1e-11, "dim {dim}: residual {res}");
                assert!(ortho < 1e-11, "dim {dim}: orthonormality {ortho}");
                assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let e = hermitian_eig(&ComplexMatrix::identity(4)).unwrap();
        assert!(e.values.iter().all(|&l| (l - 1.0).abs() < 1e-15));
    }
}

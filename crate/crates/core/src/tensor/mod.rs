//! Dense complex linear algebra on qubit registers.
//!
//! Tensor factor 0 is the leftmost (most significant) index of a basis label,
//! so qubit `q` of an `n`-qubit register corresponds to bit `n - 1 - q` of the
//! row/column index.

mod eig;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use eig::{hermitian_eig, Eigen};

use crate::channel::QuantumChannel;
use crate::error::{Error, Result};

/// Tolerance used by the unitarity and Hermiticity predicates.
pub const MATRIX_TOL: f64 = 1e-12;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// A dense, row-major complex matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<[f64; 2]>>", into = "Vec<Vec<[f64; 2]>>")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix must be non-empty".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    /// Builds a matrix from rows of complex entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(rows.len(), ncols, rows.concat())
    }

    /// Builds a 2x2 matrix from its four entries in row-major order.
    pub fn mat2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self {
            rows: 2,
            cols: 2,
            data: vec![a, b, c, d],
        }
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m.data[i * n + i] = z;
        }
        m
    }

    /// `|u⟩⟨v|`
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m.data[i * v.len() + j] = ui * vj.conj();
            }
        }
        m
    }

    /// Single matrix unit `|r⟩⟨c|` of the given dimension.
    pub fn unit(dim: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        m.data[r * dim + c] = ONE;
        m
    }

    pub fn from_columns(cols: &[Vec<Complex64>]) -> Result<Self> {
        let nrows = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != nrows) {
            return Err(Error::Dimension("ragged columns".into()));
        }
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                m.data[i * cols.len() + j] = z;
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, z: Complex64) {
        self.data[r * self.cols + c] = z;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[c * self.rows + r] = self.data[r * self.cols + c].conj();
            }
        }
        m
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Largest absolute elementwise difference. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max elementwise deviation of `A†A` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.rows))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    /// Max elementwise deviation of `A` from `A†`.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        self.data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `A X A†`
    pub fn conjugate(&self, x: &Self) -> Self {
        &(self * x) * &self.adjoint()
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self.get(r, c);
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl TryFrom<Vec<Vec<[f64; 2]>>> for ComplexMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<[f64; 2]>>) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect()
            })
            .collect();
        Self::from_rows(&rows)
    }
}

impl From<ComplexMatrix> for Vec<Vec<[f64; 2]>> {
    fn from(m: ComplexMatrix) -> Self {
        m.data
            .chunks_exact(m.cols)
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
            .collect()
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if aij == ZERO {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.data[(i * b.rows + k) * cols + (j * b.cols + l)] = aij * b.get(k, l);
                }
            }
        }
    }
    out
}

/// Kronecker product of a vector list, left to right.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// Number of qubits `n` such that `dim == 2^n`.
pub fn qubit_count(dim: usize) -> Option<usize> {
    dim.is_power_of_two().then(|| dim.trailing_zeros() as usize)
}

fn check_register(rho: &ComplexMatrix, n_qubits: usize) -> Result<()> {
    if !rho.is_square() || rho.rows() != 1usize << n_qubits {
        return Err(Error::Dimension(format!(
            "expected {0}x{0} operator for {n_qubits} qubits, got {1}x{2}",
            1usize << n_qubits,
            rho.rows(),
            rho.cols()
        )));
    }
    Ok(())
}

/// `(I ⊗ … ⊗ K ⊗ … ⊗ I) rho`, with `K` a 2x2 matrix on `qubit`.
fn left_local(k: &ComplexMatrix, rho: &ComplexMatrix, stride: usize) -> ComplexMatrix {
    let dim = rho.rows;
    let (k00, k01, k10, k11) = (k.get(0, 0), k.get(0, 1), k.get(1, 0), k.get(1, 1));
    let mut out = ComplexMatrix::zeros(dim, dim);
    for r0 in (0..dim).filter(|r| r & stride == 0) {
        let r1 = r0 | stride;
        for c in 0..dim {
            let a = rho.data[r0 * dim + c];
            let b = rho.data[r1 * dim + c];
            out.data[r0 * dim + c] = k00 * a + k01 * b;
            out.data[r1 * dim + c] = k10 * a + k11 * b;
        }
    }
    out
}

/// Accumulates `x (I ⊗ … ⊗ K† ⊗ … ⊗ I)` into `acc`.
fn right_local_adjoint_acc(
    acc: &mut ComplexMatrix,
    x: &ComplexMatrix,
    k: &ComplexMatrix,
    stride: usize,
) {
    let dim = x.rows;
    // (X K†)_{r,c} = Σ_b X_{r,b} conj(K_{c,b})
    let (k00, k01, k10, k11) = (
        k.get(0, 0).conj(),
        k.get(0, 1).conj(),
        k.get(1, 0).conj(),
        k.get(1, 1).conj(),
    );
    for r in 0..dim {
        let row = &x.data[r * dim..(r + 1) * dim];
        let out = &mut acc.data[r * dim..(r + 1) * dim];
        for c0 in (0..dim).filter(|c| c & stride == 0) {
            let c1 = c0 | stride;
            let a = row[c0];
            let b = row[c1];
            out[c0] += a * k00 + b * k01;
            out[c1] += a * k10 + b * k11;
        }
    }
}

/// Applies a list of 2x2 Kraus operators to one qubit of an `n_qubits`
/// register operator. Linear in `rho`; `rho` need not be Hermitian.
pub fn apply_local_kraus(
    rho: &ComplexMatrix,
    kraus: &[ComplexMatrix],
    qubit: usize,
    n_qubits: usize,
) -> Result<ComplexMatrix> {
    check_register(rho, n_qubits)?;
    if qubit >= n_qubits {
        return Err(Error::Dimension(format!(
            "qubit {qubit} out of range for {n_qubits} qubits"
        )));
    }
    if kraus.iter().any(|k| k.rows() != 2 || k.cols() != 2) {
        return Err(Error::Dimension("Kraus operators must be 2x2".into()));
    }
    let stride = 1usize << (n_qubits - 1 - qubit);
    let mut out = ComplexMatrix::zeros(rho.rows, rho.cols);
    for k in kraus {
        let left = left_local(k, rho, stride);
        right_local_adjoint_acc(&mut out, &left, k, stride);
    }
    Ok(out)
}

/// `Σ_m (I⊗…⊗A_m⊗…⊗I) rho (…)†` with `A_m` the Kraus operators of `ch`
/// acting on tensor position `qubit`.
pub fn apply_single_qubit_channel(
    rho: &ComplexMatrix,
    ch: &QuantumChannel,
    qubit: usize,
    n_qubits: usize,
) -> Result<ComplexMatrix> {
    apply_local_kraus(rho, ch.kraus(), qubit, n_qubits)
}

/// Traces out the first `n_ancilla` tensor factors of a `2^n_total` operator.
pub fn partial_trace_ancilla(
    rho: &ComplexMatrix,
    n_total: usize,
    n_ancilla: usize,
) -> Result<ComplexMatrix> {
    check_register(rho, n_total)?;
    if n_ancilla == 0 || n_ancilla >= n_total {
        return Err(Error::Dimension(format!(
            "cannot trace {n_ancilla} of {n_total} qubits"
        )));
    }
    let keep = 1usize << (n_total - n_ancilla);
    let anc = 1usize << n_ancilla;
    let dim = rho.rows;
    let mut out = ComplexMatrix::zeros(keep, keep);
    for a in 0..anc {
        let off = a * keep;
        for i in 0..keep {
            for j in 0..keep {
                out.data[i * keep + j] += rho.data[(off + i) * dim + off + j];
            }
        }
    }
    Ok(out)
}

/// Single-qubit Pauli matrices.
pub mod pauli {
    use super::*;

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::mat2(ZERO, ONE, ONE, ZERO)
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::mat2(ZERO, -I, I, ZERO)
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::mat2(ONE, ZERO, ZERO, -ONE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{make_standard_channel, StandardKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        let data = (0..dim * dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        ComplexMatrix::new(dim, dim, data).unwrap()
    }

    fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        let a = random_matrix(rng, dim);
        let rho = &a * &a.adjoint();
        let tr = rho.trace().re;
        rho.scale_re(1.0 / tr)
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ComplexMatrix::new(2, 2, vec![ZERO; 3]).is_err());
        assert!(ComplexMatrix::new(0, 2, vec![]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![Complex64::new(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn kron_places_flip_on_second_factor() {
        let op = kron(&pauli::identity(), &pauli::x());
        let ket00 = vec![ONE, ZERO, ZERO, ZERO];
        assert_eq!(op.matvec(&ket00), vec![ZERO, ONE, ZERO, ZERO]);
    }

    #[test]
    fn kron_block_structure() {
        let a = ComplexMatrix::from_rows(&[vec![c(1.0), c(2.0)], vec![c(3.0), c(4.0)]]).unwrap();
        let b = ComplexMatrix::new(3, 3, (0..9).map(|k| c(k as f64)).collect()).unwrap();
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        for i in 0..2 {
            for j in 0..2 {
                for r in 0..3 {
                    for s in 0..3 {
                        assert_eq!(k.get(3 * i + r, 3 * j + s), a.get(i, j) * b.get(r, s));
                    }
                }
            }
        }
    }

    #[test]
    fn kron_trace_factorizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 2);
            let b = random_matrix(&mut rng, 2);
            let k = kron(&a, &b);
            // direct 4x4 trace
            let direct: Complex64 = (0..4).map(|i| k.get(i, i)).sum();
            assert!((direct - a.trace() * b.trace()).norm() < 1e-14);
        }
    }

    #[test]
    fn identity_channel_leaves_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random_density(&mut rng, 8);
        let id = make_standard_channel(StandardKind::Dep, 1.0).unwrap();
        for q in 0..3 {
            let out = apply_single_qubit_channel(&rho, &id, q, 3).unwrap();
            assert!(out.max_abs_diff(&rho) < 1e-15);
        }
    }

    #[test]
    fn bit_flip_on_ground_state() {
        let p = 0.83;
        let bf = make_standard_channel(StandardKind::Bf, p).unwrap();
        let rho = ComplexMatrix::unit(2, 0, 0);
        let out = apply_single_qubit_channel(&rho, &bf, 0, 1).unwrap();
        let expect = ComplexMatrix::diag(&[c(p), c(1.0 - p)]);
        assert!(out.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn local_application_matches_embedded_kron() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random_matrix(&mut rng, 16);
        let k = random_matrix(&mut rng, 2);
        for q in 0..4 {
            let mut full = ComplexMatrix::identity(1);
            for pos in 0..4 {
                let f = if pos == q {
                    k.clone()
                } else {
                    pauli::identity()
                };
                full = kron(&full, &f);
            }
            let expect = full.conjugate(&rho);
            let got = apply_local_kraus(&rho, std::slice::from_ref(&k), q, 4).unwrap();
            assert!(got.max_abs_diff(&expect) < 1e-13);
        }
    }

    #[test]
    fn apply_rejects_bad_qubit_or_dimension() {
        let rho = ComplexMatrix::identity(4);
        let bf = make_standard_channel(StandardKind::Bf, 0.9).unwrap();
        assert!(apply_single_qubit_channel(&rho, &bf, 2, 2).is_err());
        assert!(apply_single_qubit_channel(&rho, &bf, 0, 3).is_err());
    }

    #[test]
    fn partial_trace_of_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sigma = random_density(&mut rng, 4);
        let tau = random_matrix(&mut rng, 8);
        let out = partial_trace_ancilla(&kron(&sigma, &tau), 5, 2).unwrap();
        assert!(out.max_abs_diff(&tau) < 1e-12);
    }

    #[test]
    fn partial_trace_of_bell_state() {
        let h = 1.0 / 2f64.sqrt();
        let bell = vec![c(h), ZERO, ZERO, c(h)];
        let rho = ComplexMatrix::outer(&bell, &bell);
        let out = partial_trace_ancilla(&rho, 2, 1).unwrap();
        assert!(out.max_abs_diff(&ComplexMatrix::identity(2).scale_re(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_keeps_positivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let rho = random_density(&mut rng, 32);
            let red = partial_trace_ancilla(&rho, 5, 3).unwrap();
            assert!((red.trace().re - 1.0).abs() < 1e-12);
            let eig = hermitian_eig(&red).unwrap();
            assert!(eig.values.iter().all(|&l| l >= -1e-12));
        }
    }

    #[test]
    fn partial_trace_rejects_bad_split() {
        let rho = ComplexMatrix::identity(4);
        assert!(partial_trace_ancilla(&rho, 2, 0).is_err());
        assert!(partial_trace_ancilla(&rho, 2, 2).is_err());
        assert!(partial_trace_ancilla(&rho, 3, 1).is_err());
    }

    #[test]
    fn serde_roundtrip_uses_pairs() {
        let m = pauli::y();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[[[0.0,0.0],[-0.0,-1.0]],[[0.0,1.0],[0.0,0.0]]]");
        let back: ComplexMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}

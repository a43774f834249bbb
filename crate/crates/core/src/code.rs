//! The five-qubit perfect code and the Steane code as explicit encoders.
//!
//! An encoder `U` maps `|a_m⟩ ⊗ |s⟩` to `E_m|s_L⟩`, where `|a_m⟩` is the
//! computational basis state of the first `n − 1` qubits labelled by the
//! binary integer `m`, and the data qubit sits at tensor position `n − 1`.
//! The columns of `U` are therefore `E_m|s_L⟩` in `(m, s)` order.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{ComplexMatrix, ONE, ZERO};

/// Tolerance for the code invariants.
pub const CODE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];
}

/// A tensor product of single-qubit Paulis on an `n`-qubit register.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    /// (qubit, Pauli), qubits distinct and sorted.
    factors: Vec<(usize, Pauli)>,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            factors: Vec::new(),
        }
    }

    pub fn new(n_qubits: usize, mut factors: Vec<(usize, Pauli)>) -> Result<Self> {
        factors.sort_by_key(|f| f.0);
        if factors.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Construction("repeated qubit in Pauli string".into()));
        }
        if factors.iter().any(|f| f.0 >= n_qubits) {
            return Err(Error::Construction(
                "Pauli factor outside the register".into(),
            ));
        }
        Ok(Self { n_qubits, factors })
    }

    pub fn single(n_qubits: usize, qubit: usize, p: Pauli) -> Self {
        Self::new(n_qubits, vec![(qubit, p)]).expect("valid single-qubit Pauli")
    }

    pub fn pair(n_qubits: usize, a: (usize, Pauli), b: (usize, Pauli)) -> Self {
        Self::new(n_qubits, vec![a, b]).expect("valid two-qubit Pauli")
    }

    pub fn weight(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[(usize, Pauli)] {
        &self.factors
    }

    /// Applies the operator to a state vector of dimension `2^n`.
    pub fn apply(&self, state: &[Complex64]) -> Vec<Complex64> {
        let n = self.n_qubits;
        assert_eq!(state.len(), 1 << n);
        let mut flip = 0usize;
        let mut zmask = 0usize;
        let mut n_y = 0u32;
        for &(q, p) in &self.factors {
            let bit = 1usize << (n - 1 - q);
            match p {
                Pauli::X => flip |= bit,
                Pauli::Z => zmask |= bit,
                Pauli::Y => {
                    flip |= bit;
                    zmask |= bit;
                    n_y += 1;
                }
            }
        }
        // Y = i·X·Z, so the string equals i^{n_y} X^flip Z^zmask
        let global = Complex64::new(0.0, 1.0).powu(n_y);
        let mut out = vec![ZERO; state.len()];
        for (idx, &amp) in state.iter().enumerate() {
            let sign = if (idx & zmask).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[idx ^ flip] = amp * global * sign;
        }
        out
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let dim = 1usize << self.n_qubits;
        let cols: Vec<Vec<Complex64>> = (0..dim)
            .map(|j| {
                let mut e = vec![ZERO; dim];
                e[j] = ONE;
                self.apply(&e)
            })
            .collect();
        ComplexMatrix::from_columns(&cols).expect("square")
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("I");
        }
        for (k, (q, p)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "{p:?}{}", q + 1)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CodeName {
    Five,
    Steane,
}

impl CodeName {
    pub fn build(self) -> Result<CodeSpec> {
        match self {
            Self::Five => build_five_qubit_code(),
            Self::Steane => build_steane_code(),
        }
    }

    pub fn n_physical(self) -> usize {
        match self {
            Self::Five => 5,
            Self::Steane => 7,
        }
    }
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::Five => "five",
            Self::Steane => "steane",
        })
    }
}

impl FromStr for CodeName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "five" => Ok(Self::Five),
            "steane" => Ok(Self::Steane),
            other => Err(Error::Config(format!(
                "unknown code `{other}` (expected five|steane)"
            ))),
        }
    }
}

/// Codewords, correctable errors and the encoding unitary of a code.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    pub name: CodeName,
    pub n_physical: usize,
    pub logical_zero: Vec<Complex64>,
    pub logical_one: Vec<Complex64>,
    pub errors: Vec<PauliString>,
    pub encoder: ComplexMatrix,
}

impl CodeSpec {
    /// Assembles a code from its parts without checking the invariants;
    /// use [`verify_code`] to inspect the result.
    pub fn assemble(
        name: CodeName,
        logical_zero: Vec<Complex64>,
        logical_one: Vec<Complex64>,
        errors: Vec<PauliString>,
    ) -> Result<Self> {
        let dim = logical_zero.len();
        let n_physical = crate::tensor::qubit_count(dim)
            .ok_or_else(|| Error::Dimension("codeword length must be a power of two".into()))?;
        if logical_one.len() != dim {
            return Err(Error::Dimension("codewords differ in length".into()));
        }
        if errors.len() != dim / 2 {
            return Err(Error::Construction(format!(
                "need {} correctable errors for {n_physical} qubits, got {}",
                dim / 2,
                errors.len()
            )));
        }
        let columns: Vec<Vec<Complex64>> = errors
            .iter()
            .flat_map(|e| [e.apply(&logical_zero), e.apply(&logical_one)])
            .collect();
        let encoder = ComplexMatrix::from_columns(&columns)?;
        Ok(Self {
            name,
            n_physical,
            logical_zero,
            logical_one,
            errors,
            encoder,
        })
    }

    pub fn ancilla_qubits(&self) -> usize {
        self.n_physical - 1
    }

    pub fn ancilla_dim(&self) -> usize {
        1 << self.ancilla_qubits()
    }

    pub fn dim(&self) -> usize {
        1 << self.n_physical
    }

    /// `E_m|s_L⟩`.
    pub fn corrected_state(&self, m: usize, s: usize) -> Vec<Complex64> {
        let base = if s == 0 {
            &self.logical_zero
        } else {
            &self.logical_one
        };
        self.errors[m].apply(base)
    }
}

/// Residuals of the code invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeReport {
    pub unitarity_residual: f64,
    pub gram_residual: f64,
    pub roundtrip_residual: f64,
}

impl CodeReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.unitarity_residual < tol && self.gram_residual < tol && self.roundtrip_residual < tol
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Gram matrix of `{E_m|s_L⟩}` in `(m, s)` order.
fn gram(code: &CodeSpec) -> (Vec<Vec<Complex64>>, ComplexMatrix) {
    let vecs: Vec<Vec<Complex64>> = (0..code.errors.len())
        .flat_map(|m| [code.corrected_state(m, 0), code.corrected_state(m, 1)])
        .collect();
    let n = vecs.len();
    let mut g = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let z = inner(&vecs[i], &vecs[j]);
            g.set(i, j, z);
            g.set(j, i, z.conj());
        }
    }
    (vecs, g)
}

pub fn verify_code(code: &CodeSpec) -> CodeReport {
    let unitarity_residual = code.encoder.unitarity_residual();
    let (vecs, g) = gram(code);
    let gram_residual = g.max_abs_diff(&ComplexMatrix::identity(g.rows()));
    let dim = code.dim();
    let mut roundtrip_residual = 0.0f64;
    for (col, expect) in vecs.iter().enumerate() {
        // U(|a_m⟩⊗|s⟩) is column 2m + s of U
        let mut basis = vec![ZERO; dim];
        basis[col] = ONE;
        let got = code.encoder.matvec(&basis);
        let err = got
            .iter()
            .zip(expect)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        roundtrip_residual = roundtrip_residual.max(err);
    }
    CodeReport {
        unitarity_residual,
        gram_residual,
        roundtrip_residual,
    }
}

/// Fails with the first colliding pair of error operators if the Gram
/// matrix of `{E_m|s_L⟩}` is not the identity.
fn check_orthonormal(code: &CodeSpec) -> Result<()> {
    let (_, g) = gram(code);
    for i in 0..g.rows() {
        for j in i..g.cols() {
            let target = if i == j { ONE } else { ZERO };
            let dev = (g.get(i, j) - target).norm();
            if dev > CODE_TOL {
                return Err(Error::Construction(format!(
                    "E_{} = {} and E_{} = {} collide (Gram deviation {dev:.3e})",
                    i / 2,
                    code.errors[i / 2],
                    j / 2,
                    code.errors[j / 2]
                )));
            }
        }
    }
    Ok(())
}

fn superposition(n: usize, terms: &[(f64, &str)]) -> Vec<Complex64> {
    let mut v = vec![ZERO; 1 << n];
    for &(amp, bits) in terms {
        debug_assert_eq!(bits.len(), n);
        let idx = usize::from_str_radix(bits, 2).expect("binary label");
        v[idx] += Complex64::new(amp, 0.0);
    }
    v
}

fn five_qubit_codewords() -> (Vec<Complex64>, Vec<Complex64>) {
    const Q: f64 = 0.25;
    let zero = superposition(
        5,
        &[
            (Q, "00000"),
            (Q, "10010"),
            (Q, "01001"),
            (Q, "10100"),
            (Q, "01010"),
            (-Q, "11011"),
            (-Q, "00110"),
            (-Q, "11000"),
            (-Q, "11101"),
            (-Q, "00011"),
            (-Q, "11110"),
            (-Q, "01111"),
            (-Q, "10001"),
            (-Q, "01100"),
            (-Q, "10111"),
            (Q, "00101"),
        ],
    );
    let one = superposition(
        5,
        &[
            (Q, "11111"),
            (Q, "01101"),
            (Q, "10110"),
            (Q, "01011"),
            (Q, "10101"),
            (-Q, "00100"),
            (-Q, "11001"),
            (-Q, "00111"),
            (-Q, "00010"),
            (-Q, "11100"),
            (-Q, "00001"),
            (-Q, "10000"),
            (-Q, "01110"),
            (-Q, "10011"),
            (-Q, "01000"),
            (Q, "11010"),
        ],
    );
    (zero, one)
}

/// `[I] ++ [σ_j on qubit i]` ordered by `m = 3i + j` (zero-based `i`).
fn single_qubit_errors(n: usize) -> Vec<PauliString> {
    std::iter::once(PauliString::identity(n))
        .chain((0..n).flat_map(|q| Pauli::ALL.map(|p| PauliString::single(n, q, p))))
        .collect()
}

pub fn build_five_qubit_code() -> Result<CodeSpec> {
    let (zero, one) = five_qubit_codewords();
    let code = CodeSpec::assemble(CodeName::Five, zero, one, single_qubit_errors(5))?;
    check_orthonormal(&code)?;
    Ok(code)
}

/// Choice of the 42 weight-two correctable errors of the Steane code.
///
/// Each of the 42 syndrome classes outside the weight-≤1 errors has three
/// weight-two representatives; different choices give different effective
/// channels for non-depolarizing noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SteaneErrorSet {
    /// Fixed table whose effective fidelities under
    /// BF⊗BPF⊗PF⊗AD⊗GAD⊗DEP⊗DEP match `oracles::f7_mixed`
    /// exactly. Contains `X₁Y₂` and `X₃Z₅`.
    #[default]
    Reference,
    /// `{X_i Z_j : i ≠ j}`.
    XzPairs,
}

const REFERENCE_PAIRS: [((usize, Pauli), (usize, Pauli)); 42] = {
    use Pauli::{X, Y, Z};
    [
        ((1, Y), (2, X)),
        ((1, X), (2, Y)),
        ((0, X), (3, Z)),
        ((0, X), (4, Z)),
        ((0, X), (5, Z)),
        ((0, Y), (5, Z)),
        ((0, Y), (2, X)),
        ((1, X), (2, Z)),
        ((1, X), (3, Z)),
        ((1, X), (4, Z)),
        ((3, X), (5, Y)),
        ((4, X), (6, Y)),
        ((0, Z), (2, X)),
        ((0, X), (1, Y)),
        ((3, Y), (6, X)),
        ((2, X), (4, Z)),
        ((2, Y), (4, Z)),
        ((3, X), (6, Y)),
        ((3, Y), (4, Z)),
        ((3, Y), (5, Z)),
        ((2, Y), (6, X)),
        ((3, X), (4, Z)),
        ((1, X), (5, Y)),
        ((2, X), (6, Y)),
        ((0, Y), (3, X)),
        ((1, Z), (4, X)),
        ((2, Y), (5, X)),
        ((0, X), (3, Y)),
        ((4, X), (5, Z)),
        ((1, X), (6, Y)),
        ((5, Y), (6, Z)),
        ((1, Y), (3, X)),
        ((4, Z), (5, Y)),
        ((1, Z), (5, Y)),
        ((4, Z), (5, X)),
        ((5, X), (6, Z)),
        ((0, Z), (6, X)),
        ((1, Y), (4, X)),
        ((3, Z), (6, Y)),
        ((2, Z), (6, Y)),
        ((4, Z), (6, X)),
        ((5, Z), (6, X)),
    ]
};

impl SteaneErrorSet {
    pub fn weight_two(self) -> Vec<PauliString> {
        match self {
            Self::Reference => REFERENCE_PAIRS
                .iter()
                .map(|&(a, b)| PauliString::pair(7, a, b))
                .collect(),
            Self::XzPairs => (0..7)
                .flat_map(|i| {
                    (0..7)
                        .filter(move |&j| j != i)
                        .map(move |j| PauliString::pair(7, (i, Pauli::X), (j, Pauli::Z)))
                })
                .collect(),
        }
    }
}

fn steane_codewords() -> (Vec<Complex64>, Vec<Complex64>) {
    let a = 1.0 / 8f64.sqrt();
    let zero = [
        "0000000", "1010101", "0110011", "1100110", "0001111", "1011010", "0111100", "1101001",
    ];
    let one = [
        "1111111", "0101010", "1001100", "0011001", "1110000", "0100101", "1000011", "0010110",
    ];
    let terms = |list: [&'static str; 8]| list.map(|b| (a, b));
    (
        superposition(7, &terms(zero)),
        superposition(7, &terms(one)),
    )
}

pub fn build_steane_code() -> Result<CodeSpec> {
    build_steane_code_with(SteaneErrorSet::default())
}

pub fn build_steane_code_with(set: SteaneErrorSet) -> Result<CodeSpec> {
    let (zero, one) = steane_codewords();
    let mut errors = single_qubit_errors(7);
    errors.extend(set.weight_two());
    let code = CodeSpec::assemble(CodeName::Steane, zero, one, errors)?;
    check_orthonormal(&code)?;
    Ok(code)
}

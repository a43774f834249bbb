//! Effective logical channels by process tomography.
//!
//! For each input `E_cd = |c⟩⟨d|` the register operator
//! `|a₀⟩⟨a₀| ⊗ E_cd` is encoded, every physical qubit is hit by its own
//! channel, the result is decoded and the ancilla traced out. The outputs
//! give `λ̃_{ab;cd} = ⟨a|ε̃(E_cd)|b⟩`, from which the Choi matrix
//! `χ̃_{ab;cd} = λ̃_{ac;bd}` and the fidelity follow.

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{choi_of_kraus, kraus_fidelity, QuantumChannel, PSD_TOL};
use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::tensor::{
    apply_single_qubit_channel, hermitian_eig, partial_trace_ancilla, ComplexMatrix, ZERO,
};

/// Tolerance for the Choi invariants of an effective channel.
pub const CHOI_TOL: f64 = 1e-10;
/// Choi eigenvalues at or below this are dropped during Kraus extraction.
pub const KRAUS_CUTOFF: f64 = 1e-12;
/// Deepest concatenation accepted by [`concatenate`].
pub const MAX_LEVELS: usize = 8;

/// One channel per physical qubit, in tensor order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub per_qubit: Vec<QuantumChannel>,
}

impl NoiseModel {
    pub fn new(per_qubit: Vec<QuantumChannel>) -> Self {
        Self { per_qubit }
    }

    pub fn uniform(ch: &QuantumChannel, n: usize) -> Self {
        Self {
            per_qubit: vec![ch.clone(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.per_qubit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_qubit.is_empty()
    }
}

/// `λ̃_{ab;cd}` stored as `lambda[a][b][c][d]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessTomogram {
    pub lambda: [[[[Complex64; 2]; 2]; 2]; 2],
}

impl ProcessTomogram {
    /// Output of the channel on `E_cd`, as a 2x2 matrix.
    pub fn output(&self, c: usize, d: usize) -> ComplexMatrix {
        let l = &self.lambda;
        ComplexMatrix::mat2(l[0][0][c][d], l[0][1][c][d], l[1][0][c][d], l[1][1][c][d])
    }

    pub fn of_channel(ch: &QuantumChannel) -> Self {
        let mut lambda = [[[[ZERO; 2]; 2]; 2]; 2];
        for c in 0..2 {
            for d in 0..2 {
                let out = ch.apply(&ComplexMatrix::unit(2, c, d));
                for a in 0..2 {
                    for b in 0..2 {
                        lambda[a][b][c][d] = out.get(a, b);
                    }
                }
            }
        }
        Self { lambda }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        worst =
                            worst.max((self.lambda[a][b][c][d] - other.lambda[a][b][c][d]).norm());
                    }
                }
            }
        }
        worst
    }

    /// Convex combination `w·self + (1−w)·other`.
    pub fn mix(&self, other: &Self, w: f64) -> Self {
        let mut lambda = self.lambda;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        lambda[a][b][c][d] =
                            self.lambda[a][b][c][d] * w + other.lambda[a][b][c][d] * (1.0 - w);
                    }
                }
            }
        }
        Self { lambda }
    }
}

/// Residuals of the Choi-matrix invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChoiInvariants {
    pub hermiticity_residual: f64,
    pub min_eigenvalue: f64,
    pub trace_error: f64,
    /// Deviation of the trace over the output factor from `I₂`.
    pub trace_preservation_residual: f64,
}

impl ChoiInvariants {
    pub fn holds(&self, tol: f64) -> bool {
        self.hermiticity_residual < tol
            && self.min_eigenvalue > -tol
            && self.trace_error < tol
            && self.trace_preservation_residual < tol
    }
}

/// 4x4 Choi matrix with rows `(a, b)` = (output, input) and `Tr χ = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    pub chi: ComplexMatrix,
}

impl ChoiMatrix {
    pub fn from_tomogram(t: &ProcessTomogram) -> Self {
        let mut chi = ComplexMatrix::zeros(4, 4);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        chi.set(2 * a + b, 2 * c + d, t.lambda[a][c][b][d]);
                    }
                }
            }
        }
        Self { chi }
    }

    pub fn from_channel(ch: &QuantumChannel) -> Self {
        Self {
            chi: choi_of_kraus(ch.kraus()),
        }
    }

    pub fn to_tomogram(&self) -> ProcessTomogram {
        let mut lambda = [[[[ZERO; 2]; 2]; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        lambda[a][c][b][d] = self.chi.get(2 * a + b, 2 * c + d);
                    }
                }
            }
        }
        ProcessTomogram { lambda }
    }

    /// `F = ¼(χ̃_{00;00} + χ̃_{00;11} + χ̃_{11;00} + χ̃_{11;11})`.
    pub fn fidelity(&self) -> f64 {
        let c = &self.chi;
        0.25 * (c.get(0, 0) + c.get(0, 3) + c.get(3, 0) + c.get(3, 3)).re
    }

    pub fn invariants(&self) -> ChoiInvariants {
        let chi = &self.chi;
        let hermiticity_residual = chi.hermiticity_residual();
        let min_eigenvalue = hermitian_eig(chi)
            .map(|e| *e.values.last().unwrap())
            .unwrap_or(f64::NEG_INFINITY);
        let trace_error = (chi.trace() - Complex64::new(2.0, 0.0)).norm();
        // Tr_out χ: Σ_a χ_{(a b),(a d)}
        let mut reduced = ComplexMatrix::zeros(2, 2);
        for b in 0..2 {
            for d in 0..2 {
                reduced.set(b, d, chi.get(b, d) + chi.get(2 + b, 2 + d));
            }
        }
        let trace_preservation_residual = reduced.max_abs_diff(&ComplexMatrix::identity(2));
        ChoiInvariants {
            hermiticity_residual,
            min_eigenvalue,
            trace_error,
            trace_preservation_residual,
        }
    }
}

/// Tomogram, Choi matrix, fidelity and Kraus form of an effective channel.
#[derive(Debug, Clone)]
pub struct EffectiveChannelReport {
    pub tomogram: ProcessTomogram,
    pub choi: ChoiMatrix,
    pub fidelity: f64,
    pub kraus: QuantumChannel,
}

/// Encoded image of `|a₀⟩⟨a₀| ⊗ |c⟩⟨d|`, i.e. `U(·)U†`.
fn encode_input(code: &CodeSpec, c: usize, d: usize) -> ComplexMatrix {
    // |a₀, s⟩ is basis index s, so U|a₀, s⟩ is column s of U
    ComplexMatrix::outer(&code.encoder.column(c), &code.encoder.column(d))
}

/// Runs the encode → noise → decode → trace-out protocol on every `E_cd`.
pub fn process_tomogram(code: &CodeSpec, noise: &NoiseModel) -> Result<ProcessTomogram> {
    let n = code.n_physical;
    if noise.len() != n {
        return Err(Error::Dimension(format!(
            "noise model has {} channels for a {n}-qubit code",
            noise.len()
        )));
    }
    let decoder = code.encoder.adjoint();
    let mut lambda = [[[[ZERO; 2]; 2]; 2]; 2];
    for c in 0..2 {
        for d in 0..2 {
            let mut rho = encode_input(code, c, d);
            for (q, ch) in noise.per_qubit.iter().enumerate() {
                rho = apply_single_qubit_channel(&rho, ch, q, n)?;
            }
            let decoded = &(&decoder * &rho) * &code.encoder;
            let out = partial_trace_ancilla(&decoded, n, n - 1)?;
            for a in 0..2 {
                for b in 0..2 {
                    lambda[a][b][c][d] = out.get(a, b);
                }
            }
        }
    }
    Ok(ProcessTomogram { lambda })
}

/// The effective single-qubit channel of `code` under `noise`.
pub fn effective_channel(code: &CodeSpec, noise: &NoiseModel) -> Result<EffectiveChannelReport> {
    let tomogram = process_tomogram(code, noise)?;
    let choi = ChoiMatrix::from_tomogram(&tomogram);
    let inv = choi.invariants();
    if !inv.holds(CHOI_TOL) {
        return Err(Error::Invariant(format!("effective Choi matrix: {inv:?}")));
    }
    let kraus = kraus_from_choi(&choi)?;
    Ok(EffectiveChannelReport {
        fidelity: choi.fidelity(),
        tomogram,
        choi,
        kraus,
    })
}

/// Only the fidelity; skips Kraus extraction.
pub fn effective_fidelity(code: &CodeSpec, noise: &NoiseModel) -> Result<f64> {
    let tomogram = process_tomogram(code, noise)?;
    Ok(ChoiMatrix::from_tomogram(&tomogram).fidelity())
}

/// Kraus operators `(K_k)_{ac} = √μ_k (v_k)_{2a+c}` from `χ = Σ μ_k v_k v_k†`.
pub fn kraus_from_choi(choi: &ChoiMatrix) -> Result<QuantumChannel> {
    let eig = hermitian_eig(&choi.chi).map_err(|e| Error::InvalidChoi(e.to_string()))?;
    if let Some(&low) = eig.values.last() {
        if low < -PSD_TOL {
            return Err(Error::InvalidChoi(format!("negative eigenvalue {low:.3e}")));
        }
    }
    let mut kraus = Vec::new();
    for (k, &mu) in eig.values.iter().enumerate() {
        if mu <= KRAUS_CUTOFF {
            continue;
        }
        let v = eig.vector(k);
        let s = mu.sqrt();
        kraus.push(ComplexMatrix::mat2(v[0] * s, v[1] * s, v[2] * s, v[3] * s));
    }
    if kraus.is_empty() {
        return Err(Error::InvalidChoi(
            "Choi matrix has no positive spectrum".into(),
        ));
    }
    let reconstructed = choi_of_kraus(&kraus);
    let dev = reconstructed.max_abs_diff(&choi.chi);
    if dev > CHOI_TOL {
        return Err(Error::InvalidChoi(format!(
            "extracted Kraus set reproduces the Choi matrix only to {dev:.3e}"
        )));
    }
    QuantumChannel::with_tolerance(kraus, "effective", CHOI_TOL)
}

/// Fidelity of the extracted Kraus set, for cross-checking against the Choi route.
pub fn kraus_route_fidelity(report: &EffectiveChannelReport) -> f64 {
    kraus_fidelity(report.kraus.kraus())
}

/// Iterates the code: level `k + 1` uses `n` copies of the level-`k` channel.
pub fn concatenate(
    code: &CodeSpec,
    base_noise: &NoiseModel,
    levels: usize,
) -> Result<Vec<EffectiveChannelReport>> {
    if levels == 0 || levels > MAX_LEVELS {
        return Err(Error::Domain(format!(
            "levels must be in 1..={MAX_LEVELS}, got {levels}"
        )));
    }
    let mut reports = Vec::with_capacity(levels);
    let mut noise = base_noise.clone();
    for _ in 0..levels {
        let report = effective_channel(code, &noise)?;
        noise = NoiseModel::uniform(&report.kraus, code.n_physical);
        reports.push(report);
    }
    Ok(reports)
}

#[derive(Serialize, Deserialize)]
struct TomogramRepr {
    index_order: String,
    lambda: Vec<Vec<Vec<Vec<[f64; 2]>>>>,
}

impl Serialize for ProcessTomogram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let lambda = self
            .lambda
            .iter()
            .map(|x| {
                x.iter()
                    .map(|y| {
                        y.iter()
                            .map(|z| z.iter().map(|v| [v.re, v.im]).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        TomogramRepr {
            index_order: "ab;cd".into(),
            lambda,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProcessTomogram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = TomogramRepr::deserialize(d)?;
        if repr.index_order != "ab;cd" {
            return Err(D::Error::custom(format!(
                "unsupported index_order {}",
                repr.index_order
            )));
        }
        let mut lambda = [[[[ZERO; 2]; 2]; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for e in 0..2 {
                        let [re, im] = *repr
                            .lambda
                            .get(a)
                            .and_then(|x| x.get(b))
                            .and_then(|x| x.get(c))
                            .and_then(|x| x.get(e))
                            .ok_or_else(|| D::Error::custom("tomogram must be 2x2x2x2"))?;
                        lambda[a][b][c][e] = Complex64::new(re, im);
                    }
                }
            }
        }
        Ok(Self { lambda })
    }
}

#[derive(Serialize, Deserialize)]
struct ChoiRepr {
    index_order: String,
    chi: ComplexMatrix,
}

impl Serialize for ChoiMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChoiRepr {
            index_order: "ab;cd".into(),
            chi: self.chi.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChoiMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ChoiRepr::deserialize(d)?;
        if repr.index_order != "ab;cd" {
            return Err(D::Error::custom(format!(
                "unsupported index_order {}",
                repr.index_order
            )));
        }
        if repr.chi.rows() != 4 || repr.chi.cols() != 4 {
            return Err(D::Error::custom("Choi matrix must be 4x4"));
        }
        Ok(Self { chi: repr.chi })
    }
}

impl Serialize for EffectiveChannelReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EffectiveChannelReport", 4)?;
        st.serialize_field("fidelity", &self.fidelity)?;
        st.serialize_field("tomogram", &self.tomogram)?;
        st.serialize_field("choi", &self.choi)?;
        st.serialize_field("kraus", self.kraus.kraus())?;
        st.end()
    }
}

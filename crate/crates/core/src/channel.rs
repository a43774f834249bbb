//! Single-qubit channels in Kraus form.
//!
//! Covers the six standard noise models used as benchmarks (bit flip,
//! bit-phase flip, phase flip, amplitude damping, generalized amplitude
//! damping, depolarizing), a five-parameter family of arbitrary channels
//! that can be sampled at a fixed entanglement fidelity, and the fidelity
//! functionals used throughout the crate.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{hermitian_eig, pauli, ComplexMatrix, ONE, ZERO};

/// Tolerance on `Σ K†K = I` accepted at construction.
pub const CPTP_TOL: f64 = 1e-12;
/// Choi eigenvalues below `-PSD_TOL` fail complete positivity.
pub const PSD_TOL: f64 = 1e-10;
/// Redraw cap for the fixed-fidelity sampler.
pub const SAMPLER_RETRY_CAP: u64 = 1_000_000;

/// The standard single-qubit noise models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardKind {
    Bf,
    Bpf,
    Pf,
    Ad,
    Gad,
    Dep,
}

impl StandardKind {
    pub const ALL: [StandardKind; 6] = [
        Self::Bf,
        Self::Bpf,
        Self::Pf,
        Self::Ad,
        Self::Gad,
        Self::Dep,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Bf => "bf",
            Self::Bpf => "bpf",
            Self::Pf => "pf",
            Self::Ad => "ad",
            Self::Gad => "gad",
            Self::Dep => "dep",
        }
    }

    fn is_damping(self) -> bool {
        matches!(self, Self::Ad | Self::Gad)
    }
}

impl fmt::Display for StandardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for StandardKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown channel kind `{s}`")))
    }
}

/// Parameters of the arbitrary channel family: `A_m = U₂(θ,φ) Ā_m(α,β,γ) U₂(θ,φ)†`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArbitraryParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub theta: f64,
    pub phi: f64,
}

/// Serializable description of a channel, as read from `--channels` files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChannelSpec {
    Bf { p: f64 },
    Bpf { p: f64 },
    Pf { p: f64 },
    Ad { p: f64 },
    Gad { p: f64 },
    Dep { p: f64 },
    Arbitrary(ArbitraryParams),
}

impl ChannelSpec {
    pub fn standard(kind: StandardKind, p: f64) -> Self {
        match kind {
            StandardKind::Bf => Self::Bf { p },
            StandardKind::Bpf => Self::Bpf { p },
            StandardKind::Pf => Self::Pf { p },
            StandardKind::Ad => Self::Ad { p },
            StandardKind::Gad => Self::Gad { p },
            StandardKind::Dep => Self::Dep { p },
        }
    }

    pub fn build(&self) -> Result<QuantumChannel> {
        match *self {
            Self::Bf { p } => make_standard_channel(StandardKind::Bf, p),
            Self::Bpf { p } => make_standard_channel(StandardKind::Bpf, p),
            Self::Pf { p } => make_standard_channel(StandardKind::Pf, p),
            Self::Ad { p } => make_standard_channel(StandardKind::Ad, p),
            Self::Gad { p } => make_standard_channel(StandardKind::Gad, p),
            Self::Dep { p } => make_standard_channel(StandardKind::Dep, p),
            Self::Arbitrary(params) => arbitrary_channel(params),
        }
    }
}

/// `P1 = |2√p − 1|`, `P2 = √(4(√p − p))` of the damping channels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DampingCoefficients {
    pub p1: f64,
    pub p2: f64,
}

impl DampingCoefficients {
    pub fn from_p(p: f64) -> Self {
        let s = p.sqrt();
        Self {
            p1: (2.0 * s - 1.0).abs(),
            p2: (4.0 * (s - p)).max(0.0).sqrt(),
        }
    }
}

/// An ordered Kraus decomposition of a single-qubit CPTP map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumChannel {
    kraus: Vec<ComplexMatrix>,
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spec: Option<ChannelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    damping: Option<DampingCoefficients>,
}

impl QuantumChannel {
    /// Validates trace preservation and Kraus count (1..=4).
    pub fn new(kraus: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        Self::with_tolerance(kraus, label, CPTP_TOL)
    }

    /// As [`QuantumChannel::new`] with a caller-chosen trace-preservation tolerance.
    pub fn with_tolerance(
        kraus: Vec<ComplexMatrix>,
        label: impl Into<String>,
        tol: f64,
    ) -> Result<Self> {
        if kraus.is_empty() || kraus.len() > 4 {
            return Err(Error::NotCptp(format!(
                "expected 1..=4 Kraus operators, got {}",
                kraus.len()
            )));
        }
        if kraus.iter().any(|k| k.rows() != 2 || k.cols() != 2) {
            return Err(Error::Dimension("Kraus operators must be 2x2".into()));
        }
        let tp = trace_preservation_residual(&kraus);
        if tp > tol {
            return Err(Error::NotCptp(format!(
                "Σ K†K deviates from identity by {tp:.3e}"
            )));
        }
        Ok(Self {
            kraus,
            label: label.into(),
            spec: None,
            damping: None,
        })
    }

    pub fn identity() -> Self {
        Self::new(vec![pauli::identity()], "identity").expect("identity is CPTP")
    }

    fn with_spec(mut self, spec: ChannelSpec) -> Self {
        self.spec = Some(spec);
        self
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn spec(&self) -> Option<&ChannelSpec> {
        self.spec.as_ref()
    }

    pub fn damping(&self) -> Option<DampingCoefficients> {
        self.damping
    }

    /// `ε(ρ) = Σ K ρ K†` on a 2x2 operator.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2, 2);
        for k in &self.kraus {
            out = &out + &k.conjugate(rho);
        }
        out
    }

    /// The 4x4 Choi matrix `Σ vec(K) vec(K)†` with row-major `vec`, i.e.
    /// entry `((a,b),(c,d)) = ⟨a|ε(|b⟩⟨d|)|c⟩`.
    pub fn choi(&self) -> ComplexMatrix {
        choi_of_kraus(&self.kraus)
    }
}

pub(crate) fn choi_of_kraus(kraus: &[ComplexMatrix]) -> ComplexMatrix {
    let mut chi = ComplexMatrix::zeros(4, 4);
    for k in kraus {
        let v = k.data();
        chi = &chi + &ComplexMatrix::outer(v, v);
    }
    chi
}

fn trace_preservation_residual(kraus: &[ComplexMatrix]) -> f64 {
    let mut sum = ComplexMatrix::zeros(2, 2);
    for k in kraus {
        sum = &sum + &(&k.adjoint() * k);
    }
    sum.max_abs_diff(&ComplexMatrix::identity(2))
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::Domain(format!("p = {p} is outside [0, 1]")));
    }
    Ok(())
}

/// Builds one of the standard channels with initial fidelity `p`.
///
/// Amplitude damping and generalized amplitude damping require `p ≥ 1/4`;
/// below that `P1 = |2√p − 1|` no longer gives an entanglement fidelity of `p`.
pub fn make_standard_channel(kind: StandardKind, p: f64) -> Result<QuantumChannel> {
    check_probability(p)?;
    if kind.is_damping() && p < 0.25 {
        return Err(Error::Domain(format!(
            "{kind} requires p ≥ 1/4 for F₀ = p, got {p}"
        )));
    }
    let keep = p.sqrt();
    let flip = (1.0 - p).sqrt();
    let mut kraus = match kind {
        StandardKind::Bf => vec![pauli::identity().scale_re(keep), pauli::x().scale_re(flip)],
        StandardKind::Bpf => vec![pauli::identity().scale_re(keep), pauli::y().scale_re(flip)],
        StandardKind::Pf => vec![pauli::identity().scale_re(keep), pauli::z().scale_re(flip)],
        StandardKind::Dep => {
            let w = ((1.0 - p) / 3.0).sqrt();
            vec![
                pauli::identity().scale_re(keep),
                pauli::x().scale_re(w),
                pauli::y().scale_re(w),
                pauli::z().scale_re(w),
            ]
        }
        StandardKind::Ad => {
            let d = DampingCoefficients::from_p(p);
            vec![
                ComplexMatrix::mat2(ONE, ZERO, ZERO, re(d.p1)),
                ComplexMatrix::mat2(ZERO, re(d.p2), ZERO, ZERO),
            ]
        }
        StandardKind::Gad => {
            let d = DampingCoefficients::from_p(p);
            vec![
                ComplexMatrix::mat2(ONE, ZERO, ZERO, re(d.p1)).scale_re(keep),
                ComplexMatrix::mat2(ZERO, re(d.p2), ZERO, ZERO).scale_re(keep),
                ComplexMatrix::mat2(re(d.p1), ZERO, ZERO, ONE).scale_re(flip),
                ComplexMatrix::mat2(ZERO, ZERO, re(d.p2), ZERO).scale_re(flip),
            ]
        }
    };
    // p = 1 collapses the Pauli channels to the identity
    if p == 1.0 && !kind.is_damping() {
        kraus.truncate(1);
    }
    let mut ch = QuantumChannel::new(kraus, format!("{kind}({p})"))?
        .with_spec(ChannelSpec::standard(kind, p));
    if kind.is_damping() {
        ch.damping = Some(DampingCoefficients::from_p(p));
    }
    Ok(ch)
}

/// `F = ¼ Σ_m |Tr K_m|²`.
pub fn entanglement_fidelity(ch: &QuantumChannel) -> f64 {
    kraus_fidelity(ch.kraus())
}

pub(crate) fn kraus_fidelity(kraus: &[ComplexMatrix]) -> f64 {
    0.25 * kraus.iter().map(|k| k.trace().norm_sqr()).sum::<f64>()
}

/// Entanglement and average fidelity of a qubit channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub entanglement_fidelity: f64,
    pub average_fidelity: f64,
    pub dimension: usize,
}

impl FidelityReport {
    pub fn from_entanglement_fidelity(f: f64) -> Self {
        let d = 2.0;
        Self {
            entanglement_fidelity: f,
            average_fidelity: (d * f + 1.0) / (d + 1.0),
            dimension: 2,
        }
    }
}

pub fn average_fidelity(ch: &QuantumChannel) -> FidelityReport {
    FidelityReport::from_entanglement_fidelity(entanglement_fidelity(ch))
}

/// The six Pauli eigenstates, which form a qubit state 2-design.
pub fn pauli_eigenstates() -> [[Complex64; 2]; 6] {
    let h = 1.0 / 2f64.sqrt();
    [
        [ONE, ZERO],
        [ZERO, ONE],
        [re(h), re(h)],
        [re(h), re(-h)],
        [re(h), Complex64::new(0.0, h)],
        [re(h), Complex64::new(0.0, -h)],
    ]
}

/// Mean of `⟨ψ|ε(ψ)|ψ⟩` over the Pauli eigenstates.
pub fn two_design_average_fidelity(ch: &QuantumChannel) -> f64 {
    let states = pauli_eigenstates();
    let total: f64 = states
        .iter()
        .map(|psi| {
            let out = ch.apply(&ComplexMatrix::outer(psi, psi));
            let v = out.matvec(psi);
            (psi[0].conj() * v[0] + psi[1].conj() * v[1]).re
        })
        .sum();
    total / states.len() as f64
}

/// Outcome of a CPTP check.
#[derive(Debug, Clone, PartialEq)]
pub struct CptpReport {
    pub is_cptp: bool,
    /// Max elementwise deviation of `Σ K†K` from `I₂`.
    pub trace_residual: f64,
    pub choi_min_eigenvalue: f64,
    pub diagnostic: String,
}

/// Checks `Σ K†K = I₂` to 1e-12 and positivity of the Choi matrix.
pub fn validate_kraus(kraus: &[ComplexMatrix]) -> CptpReport {
    if kraus.is_empty() || kraus.iter().any(|k| k.rows() != 2 || k.cols() != 2) {
        return CptpReport {
            is_cptp: false,
            trace_residual: f64::INFINITY,
            choi_min_eigenvalue: f64::NAN,
            diagnostic: "expected a non-empty list of 2x2 Kraus operators".into(),
        };
    }
    let trace_residual = trace_preservation_residual(kraus);
    let choi_min_eigenvalue = hermitian_eig(&choi_of_kraus(kraus))
        .map(|e| *e.values.last().unwrap())
        .unwrap_or(f64::NAN);
    let tp_ok = trace_residual <= CPTP_TOL;
    let cp_ok = choi_min_eigenvalue > -PSD_TOL;
    let diagnostic = match (tp_ok, cp_ok) {
        (true, true) => "ok".to_string(),
        (false, true) => format!("not trace preserving: deficit {trace_residual:.3e}"),
        (true, false) => format!("not completely positive: Choi eigenvalue {choi_min_eigenvalue:.3e}"),
        (false, false) => format!(
            "not trace preserving (deficit {trace_residual:.3e}) and not completely positive (Choi eigenvalue {choi_min_eigenvalue:.3e})"
        ),
    };
    CptpReport {
        is_cptp: tp_ok && cp_ok,
        trace_residual,
        choi_min_eigenvalue,
        diagnostic,
    }
}

pub fn validate_cptp(ch: &QuantumChannel) -> CptpReport {
    validate_kraus(ch.kraus())
}

/// `U₂(θ,φ) = [[cos θ/2, sin θ/2 e^{-iφ}], [-sin θ/2 e^{iφ}, cos θ/2]]`.
pub fn rotation(theta: f64, phi: f64) -> ComplexMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    ComplexMatrix::mat2(
        re(c),
        Complex64::from_polar(s, -phi),
        -Complex64::from_polar(s, phi),
        re(c),
    )
}

/// The unrotated Kraus set `Ā_1..Ā_4`.
pub fn base_kraus(alpha: f64, beta: f64, gamma: f64) -> [ComplexMatrix; 4] {
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let (sg, cg) = gamma.sin_cos();
    [
        ComplexMatrix::mat2(re(ca), ZERO, ZERO, re(sb * cg)),
        ComplexMatrix::mat2(ZERO, ZERO, re(sa * sg), ZERO),
        ComplexMatrix::mat2(ZERO, re(sb * sg), ZERO, ZERO),
        ComplexMatrix::mat2(re(sa * cg), ZERO, ZERO, re(cb)),
    ]
}

/// Builds `A_m = U₂ Ā_m U₂†` from explicit parameters.
pub fn arbitrary_channel(params: ArbitraryParams) -> Result<QuantumChannel> {
    let ArbitraryParams {
        alpha,
        beta,
        gamma,
        theta,
        phi,
    } = params;
    if [alpha, beta, gamma, theta, phi]
        .iter()
        .any(|x| !x.is_finite())
    {
        return Err(Error::Domain("channel parameters must be finite".into()));
    }
    let u = rotation(theta, phi);
    let kraus = base_kraus(alpha, beta, gamma)
        .iter()
        .map(|a| u.conjugate(a))
        .collect();
    Ok(QuantumChannel::new(kraus, "arbitrary")?.with_spec(ChannelSpec::Arbitrary(params)))
}

/// Real roots in `[-1, 1]` of the fidelity constraint for `cos γ`:
/// `(sin²β + sin²α)c² + 2(cos α sin β + cos β sin α)c + (cos²α + cos²β − 4F₀) = 0`.
pub fn admissible_cos_gamma(alpha: f64, beta: f64, f0: f64) -> Vec<f64> {
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let a = sb * sb + sa * sa;
    let b = 2.0 * (ca * sb + cb * sa);
    let c = ca * ca + cb * cb - 4.0 * f0;
    if a < 1e-15 {
        return Vec::new();
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    // stable quadratic roots
    let q = -0.5 * (b + b.signum() * sq);
    let mut roots = vec![q / a];
    if q != 0.0 {
        roots.push(c / q);
    } else {
        roots.push(-roots[0]);
    }
    const EDGE: f64 = 1e-12;
    roots
        .into_iter()
        .filter(|r| r.abs() <= 1.0 + EDGE)
        .map(|r| r.clamp(-1.0, 1.0))
        .collect()
}

/// Draws `(α, β, γ, θ, φ)` with `α, β, φ ~ U[0, 2π)`, `θ ~ U[0, π]` and
/// `cos γ` solved so that the channel has entanglement fidelity `f0`.
pub fn sample_arbitrary_params<R: Rng + ?Sized>(f0: f64, rng: &mut R) -> Result<ArbitraryParams> {
    if !(f0 > 0.25 && f0 <= 1.0) {
        return Err(Error::Domain(format!("F₀ = {f0} is outside (1/4, 1]")));
    }
    let theta = rng.gen_range(0.0..=PI);
    let phi = rng.gen_range(0.0..TAU);
    if f0 == 1.0 {
        // Only the boundary points α ∈ {0, π}, sin β = ±1 reach F = 1; draw among them.
        let alpha = if rng.gen_bool(0.5) { 0.0 } else { PI };
        let beta = if alpha == 0.0 {
            PI / 2.0
        } else {
            3.0 * PI / 2.0
        };
        return Ok(ArbitraryParams {
            alpha,
            beta,
            gamma: 0.0,
            theta,
            phi,
        });
    }
    for _ in 0..SAMPLER_RETRY_CAP {
        let alpha = rng.gen_range(0.0..TAU);
        let beta = rng.gen_range(0.0..TAU);
        let roots = admissible_cos_gamma(alpha, beta, f0);
        let cos_gamma = match roots.as_slice() {
            [] => continue,
            [only] => *only,
            [first, second, ..] => {
                if rng.gen_bool(0.5) {
                    *first
                } else {
                    *second
                }
            }
        };
        return Ok(ArbitraryParams {
            alpha,
            beta,
            gamma: cos_gamma.acos(),
            theta,
            phi,
        });
    }
    Err(Error::SamplerExhausted {
        f0,
        retries: SAMPLER_RETRY_CAP,
    })
}

/// Samples a channel from the arbitrary family at entanglement fidelity `f0`.
pub fn sample_arbitrary_channel<R: Rng + ?Sized>(f0: f64, rng: &mut R) -> Result<QuantumChannel> {
    arbitrary_channel(sample_arbitrary_params(f0, rng)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::kron;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// `⟨S₊|(ε⊗I)(|S₊⟩⟨S₊|)|S₊⟩` by explicit 4x4 evolution.
    fn schumacher_fidelity(ch: &QuantumChannel) -> f64 {
        let h = 1.0 / 2f64.sqrt();
        let s_plus = vec![re(h), ZERO, ZERO, re(h)];
        let rho = ComplexMatrix::outer(&s_plus, &s_plus);
        let mut out = ComplexMatrix::zeros(4, 4);
        for k in ch.kraus() {
            let big = kron(k, &pauli::identity());
            out = &out + &big.conjugate(&rho);
        }
        let v = out.matvec(&s_plus);
        s_plus
            .iter()
            .zip(&v)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .re
    }

    fn library() -> Vec<QuantumChannel> {
        let mut out = Vec::new();
        for kind in StandardKind::ALL {
            for p in [0.3, 0.7, 0.92, 1.0] {
                out.push(make_standard_channel(kind, p).unwrap());
            }
        }
        out
    }

    #[test]
    fn dep_one_is_identity() {
        let ch = make_standard_channel(StandardKind::Dep, 1.0).unwrap();
        assert_eq!(ch.kraus().len(), 1);
        assert_eq!(ch.kraus()[0], pauli::identity());
    }

    #[test]
    fn standard_channels_have_fidelity_p() {
        for ch in library() {
            let p = match ch.spec().unwrap() {
                ChannelSpec::Bf { p }
                | ChannelSpec::Bpf { p }
                | ChannelSpec::Pf { p }
                | ChannelSpec::Ad { p }
                | ChannelSpec::Gad { p }
                | ChannelSpec::Dep { p } => *p,
                ChannelSpec::Arbitrary(_) => unreachable!(),
            };
            assert!(
                (entanglement_fidelity(&ch) - p).abs() < 1e-12,
                "{}",
                ch.label()
            );
            assert!(validate_cptp(&ch).is_cptp, "{}", ch.label());
        }
    }

    #[test]
    fn gad_at_092() {
        let ch = make_standard_channel(StandardKind::Gad, 0.92).unwrap();
        let report = validate_cptp(&ch);
        assert!(report.trace_residual < 1e-12);
        assert!((entanglement_fidelity(&ch) - 0.92).abs() < 1e-12);
        let d = ch.damping().unwrap();
        assert!((0.25 * (1.0 + d.p1).powi(2) - 0.92).abs() < 1e-12);
    }

    #[test]
    fn ad_at_081_matches_both_fidelity_routes() {
        let ch = make_standard_channel(StandardKind::Ad, 0.81).unwrap();
        assert!((entanglement_fidelity(&ch) - 0.81).abs() < 1e-12);
        assert!((schumacher_fidelity(&ch) - 0.81).abs() < 1e-12);
    }

    #[test]
    fn damping_below_quarter_rejected() {
        assert!(make_standard_channel(StandardKind::Ad, 0.2).is_err());
        assert!(make_standard_channel(StandardKind::Gad, 0.1).is_err());
        assert!(make_standard_channel(StandardKind::Bf, 0.1).is_ok());
        assert!(make_standard_channel(StandardKind::Dep, 1.2).is_err());
        assert!(make_standard_channel(StandardKind::Dep, -0.1).is_err());
    }

    #[test]
    fn fidelity_routes_agree_on_library() {
        for ch in library() {
            assert!(
                (entanglement_fidelity(&ch) - schumacher_fidelity(&ch)).abs() < 1e-12,
                "{}",
                ch.label()
            );
        }
    }

    #[test]
    fn average_fidelity_relation() {
        assert_eq!(
            FidelityReport::from_entanglement_fidelity(1.0).average_fidelity,
            1.0
        );
        let full_dep = make_standard_channel(StandardKind::Dep, 0.25).unwrap();
        assert!((average_fidelity(&full_dep).average_fidelity - 0.5).abs() < 1e-15);
        let bf = make_standard_channel(StandardKind::Bf, 0.9).unwrap();
        let rep = average_fidelity(&bf);
        assert!((rep.average_fidelity - (2.0 * 0.9 + 1.0) / 3.0).abs() < 1e-12);
        assert!((two_design_average_fidelity(&bf) - rep.average_fidelity).abs() < 1e-12);
    }

    #[test]
    fn two_design_matches_relation_on_library() {
        for ch in library() {
            let rep = average_fidelity(&ch);
            assert!((two_design_average_fidelity(&ch) - rep.average_fidelity).abs() < 1e-12);
        }
    }

    #[test]
    fn validate_flags_trace_deficit() {
        let r = validate_kraus(&[pauli::identity().scale_re(0.9f64.sqrt())]);
        assert!(!r.is_cptp);
        assert!((r.trace_residual - 0.1).abs() < 1e-12);
        assert!(r.diagnostic.contains("trace"));
        assert!(validate_kraus(&[pauli::identity()]).is_cptp);
        assert!(
            QuantumChannel::new(vec![pauli::identity().scale_re(0.9f64.sqrt())], "bad").is_err()
        );
    }

    #[test]
    fn sampler_hits_target_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10_000 {
            let ch = sample_arbitrary_channel(0.95, &mut rng).unwrap();
            assert!((entanglement_fidelity(&ch) - 0.95).abs() < 1e-12);
            assert!(validate_cptp(&ch).trace_residual < 1e-12);
        }
    }

    #[test]
    fn sampler_at_unit_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let ch = sample_arbitrary_channel(1.0, &mut rng).unwrap();
            assert!((entanglement_fidelity(&ch) - 1.0).abs() < 1e-12);
            // unitary-equivalent to identity: ε(ρ) = ρ
            let rho = ComplexMatrix::outer(
                &[re(0.6), Complex64::new(0.0, 0.8)],
                &[re(0.6), Complex64::new(0.0, 0.8)],
            );
            assert!(ch.apply(&rho).max_abs_diff(&rho) < 1e-12);
        }
    }

    #[test]
    fn sampler_rejects_low_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(sample_arbitrary_channel(0.25, &mut rng).is_err());
        assert!(sample_arbitrary_channel(1.01, &mut rng).is_err());
    }

    #[test]
    fn gamma_sign_is_a_gauge() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let params = sample_arbitrary_params(0.9, &mut rng).unwrap();
            let a = arbitrary_channel(params).unwrap();
            let b = arbitrary_channel(ArbitraryParams {
                gamma: -params.gamma,
                ..params
            })
            .unwrap();
            for r in 0..2 {
                for c in 0..2 {
                    let e = ComplexMatrix::unit(2, r, c);
                    assert!(a.apply(&e).max_abs_diff(&b.apply(&e)) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn spec_json_shapes() {
        let s: ChannelSpec = serde_json::from_str(r#"{"kind":"gad","p":0.9}"#).unwrap();
        assert_eq!(s, ChannelSpec::Gad { p: 0.9 });
        let a: ChannelSpec = serde_json::from_str(
            r#"{"kind":"arbitrary","alpha":0.1,"beta":0.2,"gamma":0.3,"theta":0.4,"phi":0.5}"#,
        )
        .unwrap();
        assert!(matches!(a, ChannelSpec::Arbitrary(p) if p.phi == 0.5));
        let v = serde_json::to_value(ChannelSpec::Bf { p: 0.5 }).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "bf", "p": 0.5}));
        let ch = make_standard_channel(StandardKind::Bf, 0.5).unwrap();
        let v = serde_json::to_value(&ch).unwrap();
        assert_eq!(
            v["kraus"][1][0][1],
            serde_json::json!([(0.5f64).sqrt(), 0.0])
        );
    }
}

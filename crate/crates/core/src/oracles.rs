//! Closed-form effective fidelities and fidelity gaps.
//!
//! Every polynomial is stored by powers of `√p` and evaluated with Horner's
//! rule in `√p`, which handles the half-integer powers without separate
//! `powf` calls.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleId {
    /// Five-qubit code, depolarizing noise on every qubit.
    F5Dep,
    /// Five-qubit code, BF⊗BPF⊗PF⊗AD⊗GAD.
    F5Mixed,
    /// `F5Mixed − F5Dep`.
    Gap5,
    /// `Gap5 / (F5Dep − p)`.
    Rdev5,
    /// Steane code, depolarizing noise on every qubit.
    F7Dep,
    /// Steane code, BF⊗BPF⊗PF⊗AD⊗GAD⊗DEP⊗DEP.
    F7Mixed,
    /// `F7Mixed − F7Dep`.
    Gap7,
    /// `|Gap7| / (F7Dep − p)`.
    Rdev7,
    /// Five-qubit code, bit flip on every qubit: `p⁵ + 5p⁴(1 − p)`.
    F5Bitflip,
    /// `F5Bitflip − F5Dep`.
    Gap5Bitflip,
}

impl OracleId {
    pub const ALL: [OracleId; 10] = [
        Self::F5Dep,
        Self::F5Mixed,
        Self::Gap5,
        Self::Rdev5,
        Self::F7Dep,
        Self::F7Mixed,
        Self::Gap7,
        Self::Rdev7,
        Self::F5Bitflip,
        Self::Gap5Bitflip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::F5Dep => "f5_dep",
            Self::F5Mixed => "f5_mixed",
            Self::Gap5 => "gap5",
            Self::Rdev5 => "rdev5",
            Self::F7Dep => "f7_dep",
            Self::F7Mixed => "f7_mixed",
            Self::Gap7 => "gap7",
            Self::Rdev7 => "rdev7",
            Self::F5Bitflip => "f5_bitflip",
            Self::Gap5Bitflip => "gap5_bitflip",
        }
    }

    fn is_relative(self) -> bool {
        matches!(self, Self::Rdev5 | Self::Rdev7)
    }
}

impl fmt::Display for OracleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for OracleId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown oracle `{s}`")))
    }
}

// Coefficients indexed by the power of √p.

const F5_DEP: [f64; 11] = [
    5.0, 0.0, 20.0, 0.0, -70.0, 0.0, 40.0, 0.0, 160.0, 0.0, -128.0,
];
const F5_DEP_DEN: f64 = 27.0;

const F5_MIXED: [f64; 11] = [0.0, 0.0, 3.0, -4.0, -3.0, 4.0, 5.0, -8.0, 4.0, 8.0, -8.0];

const GAP5: [f64; 11] = [
    -5.0, 0.0, 61.0, -108.0, -11.0, 108.0, 95.0, -216.0, -52.0, 216.0, -88.0,
];
const GAP5_DEN: f64 = 27.0;

const F7_DEP: [f64; 15] = [
    154.0, 0.0, 350.0, 0.0, -1491.0, 0.0, 2296.0, 0.0, 140.0, 0.0, -4368.0, 0.0, 8512.0, 0.0,
    -4864.0,
];
const F7_DEP_DEN: f64 = 729.0;

const F7_MIXED: [f64; 15] = [
    3.0, 5.0, -15.0, -4.0, 46.0, -28.0, -136.0, 157.0, 347.0, -618.0, -48.0, 576.0, -244.0, -16.0,
    -16.0,
];
const F7_MIXED_DEN: f64 = 9.0;

const GAP7: [f64; 15] = [
    89.0, 405.0, -1565.0, -324.0, 5217.0, -2268.0, -13312.0, 12717.0, 27967.0, -50058.0, 480.0,
    46656.0, -28276.0, -1296.0, 3568.0,
];
const GAP7_DEN: f64 = 729.0;

fn horner_sqrt(coeffs: &[f64], p: f64) -> f64 {
    let s = p.sqrt();
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
}

pub fn f5_dep(p: f64) -> f64 {
    horner_sqrt(&F5_DEP, p) / F5_DEP_DEN
}

pub fn f5_mixed(p: f64) -> f64 {
    horner_sqrt(&F5_MIXED, p)
}

/// Explicit gap polynomial; equals `f5_mixed − f5_dep`.
pub fn gap5(p: f64) -> f64 {
    horner_sqrt(&GAP5, p) / GAP5_DEN
}

pub fn f7_dep(p: f64) -> f64 {
    horner_sqrt(&F7_DEP, p) / F7_DEP_DEN
}

pub fn f7_mixed(p: f64) -> f64 {
    horner_sqrt(&F7_MIXED, p) / F7_MIXED_DEN
}

/// Explicit gap polynomial; equals `f7_mixed − f7_dep`.
pub fn gap7(p: f64) -> f64 {
    horner_sqrt(&GAP7, p) / GAP7_DEN
}

pub fn f5_bitflip(p: f64) -> f64 {
    let p4 = p * p * p * p;
    p4 * p + 5.0 * p4 * (1.0 - p)
}

pub fn gap5_bitflip(p: f64) -> f64 {
    f5_bitflip(p) - f5_dep(p)
}

/// Relative deviation of a five-qubit gap from the depolarizing improvement.
pub fn relative_to_dep5(gap: f64, p: f64) -> f64 {
    gap / (f5_dep(p) - p)
}

/// Evaluates an oracle at `p ∈ [0, 1]` (`p < 1` for the relative deviations).
pub fn oracle_eval(id: OracleId, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::Domain(format!("{id}: p = {p} is outside [0, 1]")));
    }
    if id.is_relative() && p >= 1.0 {
        return Err(Error::Domain(format!("{id} is undefined at p = 1")));
    }
    let value = match id {
        OracleId::F5Dep => f5_dep(p),
        OracleId::F5Mixed => f5_mixed(p),
        OracleId::Gap5 => gap5(p),
        OracleId::Rdev5 => gap5(p) / (f5_dep(p) - p),
        OracleId::F7Dep => f7_dep(p),
        OracleId::F7Mixed => f7_mixed(p),
        OracleId::Gap7 => gap7(p),
        OracleId::Rdev7 => gap7(p).abs() / (f7_dep(p) - p),
        OracleId::F5Bitflip => f5_bitflip(p),
        OracleId::Gap5Bitflip => gap5_bitflip(p),
    };
    if !value.is_finite() {
        return Err(Error::Domain(format!("{id} is singular at p = {p}")));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> impl Iterator<Item = f64> {
        (0..50).map(|k| 0.9 + 0.1 * k as f64 / 49.0)
    }

    #[test]
    fn noiseless_limit() {
        for id in [
            OracleId::F5Dep,
            OracleId::F5Mixed,
            OracleId::F7Dep,
            OracleId::F7Mixed,
            OracleId::F5Bitflip,
        ] {
            assert!((oracle_eval(id, 1.0).unwrap() - 1.0).abs() < 1e-12, "{id}");
        }
        assert!(oracle_eval(OracleId::Gap5, 1.0).unwrap().abs() < 1e-12);
        assert!(oracle_eval(OracleId::Gap7, 1.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn explicit_gaps_match_differences() {
        for p in grid() {
            assert!((gap5(p) - (f5_mixed(p) - f5_dep(p))).abs() < 1e-12);
            assert!((gap7(p) - (f7_mixed(p) - f7_dep(p))).abs() < 1e-12);
        }
    }

    #[test]
    fn gap_signs() {
        for p in grid().filter(|&p| (0.92..1.0).contains(&p)) {
            assert!(gap5(p) > 0.0, "gap5({p})");
            assert!(gap7(p) < 0.0, "gap7({p})");
        }
    }

    #[test]
    fn printed_point_values() {
        assert!((gap5(0.92) - 1.05533e-4).abs() < 5e-10);
        assert!((gap7(0.92).abs() - 1.11788e-3).abs() < 5e-9);
        assert!((gap5_bitflip(0.92).abs() - 1.02643e-3).abs() < 5e-8);
        assert!((oracle_eval(OracleId::Rdev7, 0.95).unwrap() - 2.79574e-2).abs() < 5e-7);
    }

    #[test]
    fn domain_errors() {
        assert!(oracle_eval(OracleId::F5Dep, 1.1).is_err());
        assert!(oracle_eval(OracleId::F5Dep, -0.1).is_err());
        assert!(oracle_eval(OracleId::Rdev5, 1.0).is_err());
        assert!(oracle_eval(OracleId::Rdev7, 1.0).is_err());
        assert!(oracle_eval(OracleId::Gap7, f64::NAN).is_err());
    }

    #[test]
    fn names_roundtrip() {
        for id in OracleId::ALL {
            assert_eq!(id.name().parse::<OracleId>().unwrap(), id);
        }
    }
}

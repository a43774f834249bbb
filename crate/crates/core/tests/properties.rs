use num_complex::Complex64;
use proptest::prelude::*;
use qec_lab::channel::{
    arbitrary_channel, entanglement_fidelity, make_standard_channel, sample_arbitrary_params,
    validate_cptp, ArbitraryParams, QuantumChannel, StandardKind,
};
use qec_lab::code::{build_five_qubit_code, CodeSpec, Pauli, PauliString};
use qec_lab::effective::{
    effective_channel, effective_fidelity, kraus_from_choi, ChoiMatrix, NoiseModel,
};
use qec_lab::experiment::{run_montecarlo, ExperimentConfig};
use qec_lab::oracles::f5_bitflip;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Entanglement fidelity of the code under i.i.d. bit flips, by enumerating
/// every X pattern and decoding it with the syndrome lookup table.
fn bitflip_by_lookup(code: &CodeSpec, p: f64) -> f64 {
    let n = code.n_physical;
    let mut total = 0.0;
    for mask in 0u32..(1 << n) {
        let flips: Vec<(usize, Pauli)> = (0..n)
            .filter(|q| mask >> q & 1 == 1)
            .map(|q| (q, Pauli::X))
            .collect();
        let w = flips.len() as i32;
        let prob = p.powi(n as i32 - w) * (1.0 - p).powi(w);
        let e = PauliString::new(n, flips).unwrap();
        let hit = [e.apply(&code.logical_zero), e.apply(&code.logical_one)];
        // the syndrome space that contains E|0_L⟩ identifies the correction
        let m = (0..code.errors.len())
            .find(|&m| {
                let s0 = code.corrected_state(m, 0);
                let s1 = code.corrected_state(m, 1);
                inner(&s0, &hit[0]).norm_sqr() + inner(&s1, &hit[0]).norm_sqr() > 0.5
            })
            .expect("every pattern has a syndrome");
        let tr: Complex64 = (0..2)
            .map(|s| inner(&code.corrected_state(m, s), &hit[s]))
            .sum();
        total += prob * (tr / 2.0).norm_sqr();
    }
    total
}

fn pauli_channel(px: f64, py: f64, pz: f64) -> QuantumChannel {
    let paulis = [
        PauliString::identity(1),
        PauliString::single(1, 0, Pauli::X),
        PauliString::single(1, 0, Pauli::Y),
        PauliString::single(1, 0, Pauli::Z),
    ];
    let probs = [1.0 - px - py - pz, px, py, pz];
    let kraus = paulis
        .iter()
        .zip(probs)
        .map(|(s, w)| s.to_matrix().scale_re(w.sqrt()))
        .collect();
    QuantumChannel::new(kraus, "pauli").unwrap()
}

fn arbitrary_params() -> impl Strategy<Value = (f64, u64)> {
    (0.3f64..=1.0, any::<u64>())
}

fn sampled(f0: f64, seed: u64) -> QuantumChannel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    arbitrary_channel(sample_arbitrary_params(f0, &mut rng).unwrap()).unwrap()
}

#[test]
fn bitflip_closed_form_matches_lookup_decoding() {
    let code = build_five_qubit_code().unwrap();
    for k in 0..=40 {
        let p = 0.6 + 0.01 * k as f64;
        let brute = bitflip_by_lookup(&code, p);
        assert!(
            (brute - f5_bitflip(p)).abs() < 1e-14,
            "p = {p}: {brute} vs {}",
            f5_bitflip(p)
        );
        let bf = make_standard_channel(StandardKind::Bf, p).unwrap();
        let sim = effective_fidelity(&code, &NoiseModel::uniform(&bf, 5)).unwrap();
        assert!((sim - brute).abs() < 1e-12, "p = {p}");
    }
}

#[test]
fn monte_carlo_gaps_take_both_signs() {
    let cfg = ExperimentConfig {
        f0_list: vec![0.95],
        samples: 1000,
        master_seed: 5,
        ..Default::default()
    };
    let s = &run_montecarlo(&cfg).unwrap()[0];
    assert!(s.n_positive > 0 && s.n_positive < s.n_samples, "{s:?}");
    assert!(s.gap_max > 0.0 && s.df_min > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_channels_are_cptp_with_exact_fidelity((f0, seed) in arbitrary_params()) {
        let ch = sampled(f0, seed);
        prop_assert!(validate_cptp(&ch).is_cptp);
        prop_assert!((entanglement_fidelity(&ch) - f0).abs() < 1e-12);
    }

    #[test]
    fn fidelity_ignores_the_rotation((f0, seed) in arbitrary_params(), theta in 0.0f64..=std::f64::consts::PI, phi in 0.0f64..std::f64::consts::TAU) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = sample_arbitrary_params(f0, &mut rng).unwrap();
        let turned = ArbitraryParams { theta, phi, ..base };
        let a = entanglement_fidelity(&arbitrary_channel(base).unwrap());
        let b = entanglement_fidelity(&arbitrary_channel(turned).unwrap());
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn effective_channels_round_trip_through_kraus(seeds in prop::array::uniform5(any::<u64>()), f0 in 0.8f64..=1.0) {
        let code = build_five_qubit_code().unwrap();
        let noise = NoiseModel::new(seeds.iter().map(|&s| sampled(f0, s)).collect());
        let rep = effective_channel(&code, &noise).unwrap();
        prop_assert!(rep.choi.invariants().holds(1e-10));
        let back = ChoiMatrix::from_channel(&kraus_from_choi(&rep.choi).unwrap());
        prop_assert!(back.chi.max_abs_diff(&rep.choi.chi) < 1e-10);
        prop_assert!(rep.fidelity <= 1.0 + 1e-12 && rep.fidelity >= -1e-12);
    }

    #[test]
    fn pauli_noise_gives_a_pauli_effective_channel(ps in prop::collection::vec((0.0f64..0.1, 0.0f64..0.1, 0.0f64..0.1), 5)) {
        let code = build_five_qubit_code().unwrap();
        let noise = NoiseModel::new(ps.iter().map(|&(x, y, z)| pauli_channel(x, y, z)).collect());
        let rep = effective_channel(&code, &noise).unwrap();
        // a Pauli channel never mixes populations with coherences
        for a in 0..2 { for b in 0..2 { for c in 0..2 { for d in 0..2 {
            if (a ^ b) != (c ^ d) {
                prop_assert!(rep.tomogram.lambda[a][b][c][d].norm() < 1e-12);
            }
        }}}}
    }

    #[test]
    fn cyclic_shift_of_the_noise_preserves_fidelity(seeds in prop::array::uniform5(any::<u64>()), f0 in 0.85f64..=1.0, shift in 1usize..5) {
        let code = build_five_qubit_code().unwrap();
        let channels: Vec<_> = seeds.iter().map(|&s| sampled(f0, s)).collect();
        let mut rotated = channels.clone();
        rotated.rotate_left(shift);
        let a = effective_fidelity(&code, &NoiseModel::new(channels)).unwrap();
        let b = effective_fidelity(&code, &NoiseModel::new(rotated)).unwrap();
        prop_assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn effective_fidelity_is_multilinear_in_one_qubit(w in 0.0f64..=1.0, p in 0.8f64..=1.0) {
        let code = build_five_qubit_code().unwrap();
        let bf = make_standard_channel(StandardKind::Bf, p).unwrap();
        let pf = make_standard_channel(StandardKind::Pf, p).unwrap();
        let mix_kraus = bf.kraus().iter().map(|k| k.scale_re(w.sqrt()))
            .chain(pf.kraus().iter().map(|k| k.scale_re((1.0 - w).sqrt())))
            .collect();
        let mix = QuantumChannel::with_tolerance(mix_kraus, "mix", 1e-12).unwrap();
        let dep = make_standard_channel(StandardKind::Dep, p).unwrap();
        let with = |c: &QuantumChannel| {
            let mut v = vec![c.clone()];
            v.extend(std::iter::repeat_n(dep.clone(), 4));
            effective_fidelity(&code, &NoiseModel::new(v)).unwrap()
        };
        let expected = w * with(&bf) + (1.0 - w) * with(&pf);
        prop_assert!((with(&mix) - expected).abs() < 1e-12);
    }
}

use pdm_core::classical::ClassicalPoint;
use pdm_core::coulomb_pdm::{closed_e0_e1, frequency_shift, PowerLawCoulomb};
use pdm_core::models::qpf_series;
use pdm_core::oracle::solve_state;
use pdm_core::recursion::centrifugal_split;
use pdm_core::series::TruncatedSeries;
use pdm_core::{table1, AmbiguitySet, MassModel, PotentialModel, Problem, QuantumNumbers, RadialProfile};
use proptest::prelude::*;

fn power_law() -> impl Strategy<Value = (f64, f64)> {
    (-4.0..4.0f64, 0.0..0.2f64)
}

fn state() -> impl Strategy<Value = QuantumNumbers> {
    (0u32..4, 0u32..4).prop_map(|(n_r, l)| QuantumNumbers::new(n_r, l))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn log_derivative_series_matches_pointwise((lambda, a) in power_law(), r0 in 0.1..20.0f64, m_c in 0.1..2.0f64) {
        let mass = MassModel::power_law(m_c, a, lambda).unwrap();
        let m = mass.taylor(r0, 8).unwrap();
        let terms = qpf_series(&m, &AmbiguitySet::default(), r0, 6).unwrap();
        let direct = mass.log_derivative(r0);
        prop_assert!((terms.q.coeff(0) - direct).abs() <= 1e-10 * direct.abs().max(1e-3));
    }

    #[test]
    fn constant_mass_has_no_correction_term(alpha in -3.0..3.0f64, gamma in -3.0..3.0f64, r0 in 0.1..20.0f64) {
        let mass = MassModel::constant(0.5).unwrap();
        let amb = AmbiguitySet::from_alpha_gamma(alpha, gamma).unwrap();
        let terms = qpf_series(&mass.taylor(r0, 10).unwrap(), &amb, r0, 8).unwrap();
        prop_assert!(terms.f.coeffs().iter().all(|&c| c == 0.0));
        prop_assert_eq!(amb.correction_term(&mass, r0), 0.0);
    }

    #[test]
    fn only_alpha_and_gamma_matter((lambda, a) in power_law(), alpha in -2.0..2.0f64, gamma in -2.0..2.0f64) {
        let beta = -1.0 - alpha - gamma;
        let via_beta = AmbiguitySet::new(alpha, beta, gamma).unwrap();
        let direct = AmbiguitySet::from_alpha_gamma(alpha, gamma).unwrap();
        prop_assert_eq!(via_beta, direct);
        prop_assert!(AmbiguitySet::new(alpha, beta + 0.5, gamma).is_err());
        let problem = Problem::coulomb_power_law(10.0, 0.5, a, lambda).unwrap();
        let qn = QuantumNumbers::new(1, 1);
        if let Ok(s) = problem.clone().with_ambiguity(direct).spectrum(&qn, 4) {
            let t = problem.with_ambiguity(via_beta).spectrum(&qn, 4).unwrap();
            prop_assert_eq!(s.corrections, t.corrections);
        }
    }

    #[test]
    fn leading_log_derivative_squares_to_the_shape((lambda, a) in power_law(), qn in state()) {
        let mass = MassModel::power_law(0.5, a, lambda).unwrap();
        let pot = PotentialModel::coulomb(10.0).unwrap();
        let split = centrifugal_split(&qn);
        let Ok(cp) = ClassicalPoint::compute(&mass, &pot, split.big_lambda, 10) else { return Ok(()) };
        // C_0 = x c0(x); C_0^2 = omega^2 x^2 shape(x)
        let square = cp.c0.mul(&cp.c0).unwrap();
        let target = cp.shape.scale(cp.omega * cp.omega);
        let scale = target.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
        for (s, t) in square.coeffs().iter().zip(target.coeffs()) {
            prop_assert!((s - t).abs() <= 1e-11 * scale, "{s} vs {t}");
        }
        prop_assert!(cp.c0.coeff(0) < 0.0);

        let m0 = mass.value(cp.r0);
        let v0 = pot.value(cp.r0);
        let balance = 2.0 * m0 * (v0 - cp.e0) + split.big_lambda.powi(2) / (cp.r0 * cp.r0);
        prop_assert!(balance.abs() <= 1e-10 * (2.0 * m0 * cp.e0).abs());
    }

    #[test]
    fn quantization_entries((lambda, a) in power_law(), qn in state()) {
        let problem = Problem::coulomb_power_law(10.0, 0.5, a, lambda).unwrap();
        let Ok(exp) = problem.expand(&qn, 6) else { return Ok(()) };
        for k in 1..=6 {
            let expected = if k == 1 { f64::from(qn.n_r) / exp.table.r0 } else { 0.0 };
            prop_assert_eq!(exp.table.coeff(k, 2 * k - 2), expected);
        }
    }

    #[test]
    fn constant_mass_levels_depend_on_n_only(q in 0.5..20.0f64, m_c in 0.1..2.0f64, n in 1u32..6, hbar in 0.5..2.0f64) {
        let problem = Problem::coulomb_power_law(q, m_c, 0.0, 0.0).unwrap();
        let levels: Vec<f64> = (0..n)
            .map(|n_r| problem.spectrum(&QuantumNumbers::with_hbar(n_r, n - n_r - 1, hbar).unwrap(), 5).unwrap().energy())
            .collect();
        let balmer = -m_c * q * q / (2.0 * hbar * hbar * f64::from(n * n));
        for e in levels {
            prop_assert!(rel(e, balmer) < 1e-10, "{e} vs {balmer}");
        }
    }

    #[test]
    fn closed_first_order_matches_the_table((lambda, a) in power_law(), qn in state()) {
        let p = PowerLawCoulomb::new(0.5, a, lambda, 10.0).unwrap();
        let Ok((e0, e1)) = closed_e0_e1(&p, &qn) else { return Ok(()) };
        let e = p.problem().expand(&qn, 1).unwrap().table.energies().to_vec();
        prop_assert!(rel(e0, e[0]) < 1e-10);
        prop_assert!((e1 - e[1]).abs() <= 1e-10 * e[1].abs().max(1e-6 * e[0].abs()));
    }

    #[test]
    fn orbit_identities((lambda, a) in power_law(), qn in state()) {
        let p = PowerLawCoulomb::new(0.5, a, lambda, 10.0).unwrap();
        let Ok(geo) = p.geometry(&qn) else { return Ok(()) };
        prop_assert!(geo.orbit_identity_residual(&p).abs() < 1e-10);
        let (direct, factored) = frequency_shift(&p, &qn).unwrap();
        prop_assert!((direct - factored).abs() <= 1e-10 * direct.abs().max(1e-6));
        if lambda > 0.0 {
            let u = a * geo.r0;
            prop_assert!(2.0 + (3.0 - lambda) * u > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn numerov_states_have_n_r_nodes((lambda, a) in power_law(), n_r in 0u32..4, l in 0u32..3) {
        let problem = Problem::coulomb_power_law(10.0, 0.5, a, lambda).unwrap();
        let qn = QuantumNumbers::new(n_r, l);
        let Ok(res) = solve_state(&problem, &qn) else { return Ok(()) };
        prop_assert_eq!(res.node_count(), n_r);
        let series = problem.spectrum(&qn, 5).unwrap().energy();
        // the series is asymptotic; it only has to land near the exact level
        prop_assert!(rel(series, res.energy) < 0.05, "{series} vs {}", res.energy);
    }
}

#[test]
fn hbar_expansion_tracks_the_exact_levels() {
    for col in table1::columns() {
        let problem = col.problem().unwrap();
        let qn = col.quantum_numbers();
        let e5 = problem.spectrum(&qn, 5).unwrap().energy();
        let e_num = solve_state(&problem, &qn).unwrap().energy;
        assert!((e5 - e_num).abs() < 2e-3, "lambda = {}: {e5} vs {e_num}", col.lambda);
    }
}

#[test]
fn power_law_taylor_series_resums_to_the_profile() {
    // the Taylor data feeding the recursion must describe the profile itself
    let mass = MassModel::power_law(0.5, 0.1, -3.0).unwrap();
    let r0 = 2.0;
    let s: TruncatedSeries = mass.taylor(r0, 20).unwrap();
    for x in [-0.3, 0.0, 0.25] {
        assert!(rel(s.eval(x), mass.value(r0 * (1.0 + x))) < 1e-9);
    }
}

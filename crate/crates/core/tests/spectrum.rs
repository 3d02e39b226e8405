use deltaritz::analysis::{
    convergence_table, critical_coupling, ground_energy, ho_critical_coupling, ho_exact_levels, linear_grid, solve,
};
use deltaritz::eigensolver::condition_estimate;
use deltaritz::{assemble, BasisSpec, DerivativeForm, MonomialPotential, PrecisionContext};
use proptest::prelude::*;

fn potentials() -> [(MonomialPotential, f64); 3] {
    [
        (MonomialPotential::harmonic(), 1.0),
        (MonomialPotential::quartic(), 2.0),
        (MonomialPotential::cubic(), 2.0),
    ]
}

#[test]
fn roots_never_rise_with_basis_size() {
    let ctx = PrecisionContext::default();
    for (potential, a) in potentials() {
        for g in [-1.0, 1.0] {
            let table = convergence_table(&potential, g, a, 17, 5, &ctx).unwrap();
            assert!(table.monotonicity_violations().is_empty(), "{potential} g={g}");
            assert_eq!(table.rows.len(), 16);
            assert_eq!(table.row(2).unwrap().roots.len(), 2);
            assert_eq!(table.row(17).unwrap().roots.len(), 5);
        }
    }
}

#[test]
fn harmonic_roots_bound_the_exact_levels() {
    let ctx = PrecisionContext::default();
    for g in [-2.0, -1.0, -0.3, 0.0, 0.4, 1.0, 3.0] {
        let exact = ho_exact_levels(g, 5).unwrap();
        let (_, spectrum) = solve(&MonomialPotential::harmonic(), &BasisSpec::even(1.0, 14, g), &ctx).unwrap();
        for (w, e) in spectrum.roots_f64().iter().zip(&exact) {
            assert!(*w >= e - 1e-12, "g={g}: {w} < {e}");
        }
        assert!((spectrum.roots_f64()[0] - exact[0]).abs() < 1e-8, "g={g}");
    }
}

#[test]
fn zero_coupling_recovers_the_oscillator() {
    let ctx = PrecisionContext::default();
    let (_, spectrum) = solve(&MonomialPotential::harmonic(), &BasisSpec::even(1.0, 10, 0.0), &ctx).unwrap();
    for (m, w) in spectrum.roots_f64().iter().take(4).enumerate() {
        assert!((w - (2.0 * m as f64 + 0.5)).abs() < 1e-14, "level {m}: {w}");
    }
}

#[test]
fn odd_levels_of_the_oscillator() {
    let ctx = PrecisionContext::default();
    let (_, spectrum) = solve(&MonomialPotential::harmonic(), &BasisSpec::odd(1.0, 12), &ctx).unwrap();
    for (m, w) in spectrum.roots_f64().iter().take(3).enumerate() {
        assert!((w - (2.0 * m as f64 + 1.5)).abs() < 1e-12);
    }
}

#[test]
fn higher_precision_agrees_to_thirty_digits() {
    let lo = PrecisionContext::new(50).unwrap();
    let hi = PrecisionContext::new(80).unwrap();
    for (potential, a) in potentials() {
        let spec = BasisSpec::even(a, 12, -1.0);
        let (_, s50) = solve(&potential, &spec, &lo).unwrap();
        let (_, s80) = solve(&potential, &spec, &hi).unwrap();
        let tol = hi.int(10).powi(30).recip();
        for (x, y) in s50.roots.iter().zip(&s80.roots) {
            let scale = y.abs().max(&hi.one()).clone();
            assert!((x - y).abs() < &tol * &scale, "{potential}");
        }
    }
}

#[test]
fn gram_condition_is_a_property_of_the_basis() {
    // harmonic g = 1, a = 1, n = 11: the estimate must not depend on the
    // precision it is computed at
    let spec = BasisSpec::even(1.0, 11, 1.0);
    let potential = MonomialPotential::harmonic();
    let estimates: Vec<f64> = [50, 80, 120]
        .iter()
        .map(|&d| {
            let ctx = PrecisionContext::new(d).unwrap();
            let sys = assemble(&potential, &spec, &ctx, DerivativeForm::FirstDerivative).unwrap();
            condition_estimate(&sys.s, &ctx).unwrap()
        })
        .collect();
    println!("condition of S, harmonic g=1 a=1 n=11: {estimates:?}");
    assert!(estimates[0] > 1e6 && estimates[0].is_finite(), "{estimates:?}");
    for e in &estimates[1..] {
        assert!(((e - estimates[0]) / estimates[0]).abs() < 1e-12, "{estimates:?}");
    }
}

#[test]
fn thread_count_does_not_change_a_single_bit() {
    let ctx = PrecisionContext::default();
    let build = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| convergence_table(&MonomialPotential::cubic(), -1.0, 2.0, 9, 5, &ctx).unwrap())
    };
    let (one, four) = (build(1), build(4));
    for (r1, r4) in one.rows.iter().zip(&four.rows) {
        assert_eq!(r1.n, r4.n);
        assert!(r1.roots.iter().zip(&r4.roots).all(|(x, y)| x.bit_eq(y)));
    }
}

#[test]
fn ground_energy_increases_with_coupling() {
    let ctx = PrecisionContext::new(30).unwrap();
    for (potential, a) in potentials() {
        let w: Vec<f64> = linear_grid(-2.0, 2.0, 21)
            .into_iter()
            .map(|g| {
                ground_energy(&potential, &BasisSpec::even(a, 12, g), &ctx)
                    .unwrap()
                    .to_f64()
            })
            .collect();
        for pair in w.windows(2) {
            assert!(pair[1] > pair[0], "{potential}: {w:?}");
        }
    }
}

#[test]
fn critical_coupling_matches_oracle() {
    let ctx = PrecisionContext::default();
    let c = critical_coupling(&MonomialPotential::harmonic(), 1.0, 14, &ctx, 1e-13).unwrap();
    assert!((c.g0 - ho_critical_coupling()).abs() < 1e-9, "{}", c.g0);
    assert!(c.bracket.0 <= c.g0 && c.g0 <= c.bracket.1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn spectrum_is_sorted_and_s_orthonormal(a in 0.5f64..3.0, n in 1usize..9, g in -2.0f64..2.0, b in 1u32..5) {
        let ctx = PrecisionContext::new(40).unwrap();
        let potential = MonomialPotential::monomial(1.0, b).unwrap();
        let (sys, spectrum) = solve(&potential, &BasisSpec::even(a, n, g), &ctx).unwrap();
        prop_assert_eq!(spectrum.len(), n);
        for w in spectrum.roots.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        for (i, ci) in spectrum.vectors.iter().enumerate() {
            let norm = sys.s.bilinear(ci, ci, &ctx);
            prop_assert!((norm - ctx.one()).abs() < ctx.tolerance(12));
            let rq = sys.h.bilinear(ci, ci, &ctx);
            prop_assert!((rq - &spectrum.roots[i]).abs() < ctx.tolerance(12) * spectrum.roots[i].abs().max(&ctx.one()));
        }
    }

    #[test]
    fn oracle_inverts_its_own_levels(g in -2.5f64..3.0) {
        let levels = ho_exact_levels(g, 3).unwrap();
        for e in &levels {
            let back = deltaritz::analysis::ho_coupling_for_energy(*e).unwrap();
            prop_assert!((back - g).abs() < 1e-9 * g.abs().max(1.0));
        }
        prop_assert!(levels[0] < levels[1] && levels[1] < levels[2]);
    }
}

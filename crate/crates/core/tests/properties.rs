use gauss_renyi::correlations::two_mode_partition;
use gauss_renyi::verify::{random_inseparable_triple, random_two_mode, trial_rng};
use gauss_renyi::*;
use proptest::prelude::*;

fn mixed(n: usize, seed: u64) -> CovarianceMatrix {
    random_mixed_cm(n, 1.5, 5.0, &mut trial_rng(seed)).unwrap()
}

fn two_mode(seed: u64) -> CovarianceMatrix {
    random_two_mode(&mut trial_rng(seed)).unwrap()
}

fn locally_moved(cm: &CovarianceMatrix, seed: u64) -> CovarianceMatrix {
    let s = gauss_renyi::gaussian::random_local_symplectic(&[1, 1], 1.0, &mut trial_rng(seed ^ 0x5eed)).unwrap();
    cm.transformed(&s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_states_are_valid(seed in any::<u64>(), n in 1usize..=4) {
        let pure = random_pure_cm(n, 1.5, &mut trial_rng(seed)).unwrap();
        let report = validate(pure.matrix()).unwrap();
        prop_assert!(report.symmetric && report.positive_definite && report.physical);
        prop_assert!((pure.det() - 1.0).abs() <= 1e-9);
        prop_assert!(symplectic_spectrum(&pure).is_pure());
        let m = mixed(n, seed);
        prop_assert!(symplectic_spectrum(&m).min() >= 1.0 - 1e-9);
    }

    #[test]
    fn renyi_alpha_two_is_renyi2(seed in any::<u64>(), n in 1usize..=3) {
        let cm = mixed(n, seed);
        let s2 = renyi2_entropy(&cm).unwrap();
        prop_assert!((renyi_alpha_entropy(&cm, 2.0).unwrap() - s2).abs() <= 1e-10 * (1.0 + s2));
    }

    #[test]
    fn renyi_brackets_von_neumann(seed in any::<u64>(), n in 1usize..=3) {
        let cm = mixed(n, seed);
        let vn = von_neumann_entropy(&cm).unwrap();
        let below = renyi_alpha_entropy(&cm, 1.0 - 1e-4).unwrap();
        let above = renyi_alpha_entropy(&cm, 1.0 + 1e-4).unwrap();
        prop_assert!(below >= vn - 1e-10 && vn >= above - 1e-10);
        prop_assert!(below - above <= 1e-2);
        prop_assert!(renyi2_entropy(&cm).unwrap() <= vn + 1e-10);
    }

    #[test]
    fn entropies_are_additive(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (mixed(1, s1), mixed(2, s2));
        let ab = a.direct_sum(&b);
        let sum = renyi2_entropy(&a).unwrap() + renyi2_entropy(&b).unwrap();
        prop_assert!((renyi2_entropy(&ab).unwrap() - sum).abs() <= 1e-10);
        let vn = von_neumann_entropy(&a).unwrap() + von_neumann_entropy(&b).unwrap();
        prop_assert!((von_neumann_entropy(&ab).unwrap() - vn).abs() <= 1e-10);
    }

    #[test]
    fn spectrum_is_symplectic_invariant(seed in any::<u64>(), n in 1usize..=3) {
        let cm = mixed(n, seed);
        let s = gauss_renyi::gaussian::random_symplectic(n, 1.0, &mut trial_rng(seed.wrapping_add(1))).unwrap();
        let moved = cm.transformed(&s).unwrap();
        let (x, y) = (symplectic_spectrum(&cm).values, symplectic_spectrum(&moved).values);
        for (u, v) in x.iter().zip(&y) {
            prop_assert!((u - v).abs() <= 1e-8 * u);
        }
    }

    #[test]
    fn standard_form_round_trip(seed in any::<u64>()) {
        let cm = two_mode(seed);
        let inv = local_invariants(&cm).unwrap();
        let sf = to_standard_form(&cm).unwrap();
        prop_assert!(sf.c_plus >= sf.c_minus.abs());
        let back = local_invariants(&sf.to_cm().unwrap()).unwrap();
        let scale = 1.0 + inv.i4.abs() + inv.i1 * inv.i2;
        prop_assert!((back.i1 - inv.i1).abs() <= 1e-9 * scale);
        prop_assert!((back.i2 - inv.i2).abs() <= 1e-9 * scale);
        prop_assert!((back.i3 - inv.i3).abs() <= 1e-9 * scale);
        prop_assert!((back.i4 - inv.i4).abs() <= 1e-9 * scale);
        let again = to_standard_form(&locally_moved(&cm, seed)).unwrap();
        prop_assert!((again.c_plus - sf.c_plus).abs() <= 1e-8 * (1.0 + sf.a * sf.b));
        prop_assert!((again.c_minus - sf.c_minus).abs() <= 1e-8 * (1.0 + sf.a * sf.b));
    }

    #[test]
    fn relative_entropy_is_nonnegative(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..=2) {
        let (a, b) = (mixed(n, s1), mixed(n, s2));
        prop_assert!(relative_sampling_entropy(&a, &b).unwrap() >= -1e-12);
    }

    #[test]
    fn mutual_information_and_ssa_are_nonnegative(seed in any::<u64>()) {
        let cm = mixed(3, seed);
        let p = ModePartition::parse("0;1,2", 3).unwrap();
        prop_assert!(mutual_information(&cm, &p).unwrap() >= -1e-12);
        for groups in ["0;1;2", "1;0;2", "2;1;0"] {
            let p = ModePartition::parse(groups, 3).unwrap();
            prop_assert!(ssa_gap(&cm, &p).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn correlations_are_ordered(seed in any::<u64>()) {
        let cm = two_mode(seed);
        let p = two_mode_partition();
        let i = mutual_information(&cm, &p).unwrap();
        for dir in [Direction::AGivenB, Direction::BGivenA] {
            let j = classical_correlations(&cm, &p, dir).unwrap().value;
            let d = discord(&cm, &p, dir).unwrap().value;
            prop_assert!(j >= -1e-12 && j <= i + 1e-9);
            prop_assert!(d >= -1e-9 && d <= i + 1e-9);
            prop_assert!((i - j - d).abs() <= 1e-10);
        }
    }

    #[test]
    fn measures_are_locally_invariant(seed in any::<u64>()) {
        let cm = two_mode(seed);
        let moved = locally_moved(&cm, seed);
        let p = two_mode_partition();
        let pairs = [
            (mutual_information(&cm, &p).unwrap(), mutual_information(&moved, &p).unwrap(), 1e-9),
            (
                classical_correlations(&cm, &p, Direction::AGivenB).unwrap().value,
                classical_correlations(&moved, &p, Direction::AGivenB).unwrap().value,
                1e-8,
            ),
            (e2_two_mode(&cm).unwrap().value, e2_two_mode(&moved).unwrap().value, 1e-7),
        ];
        for (x, y, tol) in pairs {
            prop_assert!((x - y).abs() <= tol, "{x} vs {y}");
        }
    }

    #[test]
    fn conditional_states_are_valid(seed in any::<u64>(), ln_lambda in -6.0f64..6.0, phi in 0.0f64..std::f64::consts::TAU) {
        let cm = mixed(3, seed);
        let seed_state = MeasurementSeed::single_mode(ln_lambda.exp(), phi).unwrap();
        let p = ModePartition::parse("0,1;2", 3).unwrap();
        let out = conditional_cm(&cm, &p, Direction::AGivenB, &seed_state).unwrap();
        prop_assert!(symplectic_spectrum(&out).min() >= 1.0 - 1e-8);
        prop_assert!(out.det() <= reduce(&cm, &[0, 1]).unwrap().det() * (1.0 + 1e-12));
    }

    #[test]
    fn entanglement_vanishes_exactly_on_ppt_states(seed in any::<u64>()) {
        let cm = two_mode(seed);
        let e = e2_two_mode(&cm).unwrap().value;
        let ppt = ppt_min_symplectic_eigenvalue(&cm).unwrap() >= 1.0 - 1e-9;
        prop_assert_eq!(e == 0.0, ppt);
        prop_assert!(e >= 0.0);
    }

    #[test]
    fn closed_form_g_matches_generic_entanglement(seed in any::<u64>()) {
        let inv = random_inseparable_triple(&mut trial_rng(seed)).unwrap();
        let cm = three_mode_pure_cm(&inv).unwrap();
        for pair in [(0, 1), (0, 2), (1, 2)] {
            let red = reduce(&cm, &[pair.0, pair.1]).unwrap();
            let g = g_reduced(&inv, pair).unwrap();
            prop_assert!((g - (2.0 * e2_two_mode(&red).unwrap().value).exp()).abs() <= 1e-6 * g);
        }
    }
}

#[test]
fn mixing_never_raises_entanglement_on_thermalized_tmss() {
    let base = tmss_cm(0.6);
    let mut last = f64::INFINITY;
    for k in 0..60 {
        let nu = 1.0 + 0.05 * k as f64;
        let noisy = CovarianceMatrix::new(base.matrix() * nu).unwrap();
        let e = e2_two_mode(&noisy).unwrap().value;
        assert!(e <= last + 1e-12, "nu {nu}: {e} > {last}");
        last = e;
    }
    assert_eq!(last, 0.0);
}

mod common;

use forrel::boolfn::{linear, parse_truth_table, TruthTable};
use forrel::protocols::{
    amplitude_amplify, check_resilient, check_uncorrelated, dicke_cost, CheckConfig, GoodSet, Method, Verdict,
    DICKE_FLAT_CONSTANT,
};
use forrel::qsim::{Circuit, Gate, StateVector};
use forrel::spectra::{cross_correlation, forrelation3, forrelation_k, fwht_in_place, walsh_transform};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn table(max_n: usize) -> impl Strategy<Value = TruthTable> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::ANY, 1 << n)
            .prop_map(move |bits| TruthTable::new(n, bits.iter().map(|b| if *b { -1 } else { 1 }).collect()).unwrap())
    })
}

fn tables(max_n: usize, count: usize) -> impl Strategy<Value = Vec<TruthTable>> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(
            prop::collection::vec(prop::bool::ANY, 1 << n).prop_map(move |bits| {
                TruthTable::new(n, bits.iter().map(|b| if *b { -1 } else { 1 }).collect()).unwrap()
            }),
            count,
        )
    })
}

fn gate(q: usize) -> impl Strategy<Value = Gate> {
    let single = (0..q, 0usize..4, -6.3f64..6.3).prop_map(|(a, kind, theta)| match kind {
        0 => Gate::H { q: a },
        1 => Gate::X { q: a },
        2 => Gate::Ry { q: a, theta },
        _ => Gate::Phase { q: a, theta },
    });
    let pair = (0..q, 1..q).prop_map(move |(a, d)| Gate::Cnot {
        control: a,
        target: (a + d) % q,
    });
    prop_oneof![3 => single, 1 => pair]
}

fn circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=4).prop_flat_map(|q| {
        prop::collection::vec(gate(q), 1..16).prop_map(move |gates| {
            let mut c = Circuit::new(q).unwrap();
            c.extend(gates).unwrap();
            c
        })
    })
}

proptest! {
    #[test]
    fn file_format_round_trips(f in table(6)) {
        let back = parse_truth_table(&f.to_file_string()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn walsh_transform_is_an_involution_up_to_scale(f in table(8)) {
        let original: Vec<i64> = f.values().iter().map(|v| *v as i64).collect();
        let mut v = original.clone();
        fwht_in_place(&mut v);
        fwht_in_place(&mut v);
        let scale = 1i64 << f.n();
        prop_assert!(v.iter().zip(&original).all(|(a, b)| *a == b * scale));
    }

    #[test]
    fn fast_transform_matches_definition(f in table(6)) {
        let fast = walsh_transform(&f);
        prop_assert_eq!(fast.values().to_vec(), walsh(&f));
        prop_assert_eq!(fast.energy(), 1i64 << (2 * f.n()));
    }

    #[test]
    fn correlation_through_transforms_matches_definition(fs in tables(6, 2)) {
        let c = cross_correlation(&fs[0], &fs[1]).unwrap();
        prop_assert_eq!(c.values().to_vec(), correlation(&fs[0], &fs[1]));
    }

    #[test]
    fn product_form_matches_nested_sums(fs in tables(4, 3)) {
        let product = forrelation3(&fs[0], &fs[1], &fs[2]).unwrap().value;
        let nested = forrelation_k(&fs).unwrap().value;
        let oracle = common::forrelation3(&fs[0], &fs[1], &fs[2]);
        prop_assert!((product - oracle).abs() < 1e-12);
        prop_assert!((nested - oracle).abs() < 1e-12);
    }

    #[test]
    fn three_fold_with_linear_middle_is_correlation(fs in tables(4, 2), y_seed in any::<usize>()) {
        let n = fs[0].n();
        let y = y_seed % (1 << n);
        let phi = forrelation3(&fs[0], &linear(n, y).unwrap(), &fs[1]).unwrap().value;
        let c = correlation(&fs[0], &fs[1])[y] as f64 / (1u64 << n) as f64;
        prop_assert!((phi - c).abs() < 1e-12);
    }

    #[test]
    fn linear_functions_are_hadamard_rows(n in 1usize..=6, y_seed in any::<usize>()) {
        let y = y_seed % (1 << n);
        let l = linear(n, y).unwrap();
        // Row y of the n-fold tensor power of [[1, 1], [1, -1]].
        for x in 0..1usize << n {
            let entry: i64 = (0..n).map(|b| if (x >> b) & (y >> b) & 1 == 1 { -1 } else { 1 }).product();
            prop_assert_eq!(l.value(x) as i64, entry);
        }
    }

    #[test]
    fn circuits_are_unitary(c in circuit(), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amps: Vec<num_complex::Complex64> = (0..1usize << c.q())
            .map(|_| num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let amps: Vec<_> = amps.into_iter().map(|a| a / norm).collect();
        let start = StateVector::from_amplitudes(amps).unwrap();
        let mut s = start.clone();
        s.apply_all(c.gates()).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        s.apply_all(&c.inverse_gates()).unwrap();
        for (a, b) in s.amplitudes().iter().zip(start.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn amplification_follows_the_sine_law(c in circuit(), marks in prop::collection::vec(prop::bool::ANY, 16), k in 0usize..6) {
        let good = GoodSet::new((0..c.q()).collect(), |o| marks[o % marks.len()]);
        let r = amplitude_amplify(&c, &good, k).unwrap();
        prop_assert!((r.success - r.predicted).abs() < 1e-10);
    }
}

#[test]
fn balanced_xor_of_bents_gives_zero_against_duals() {
    let bents: Vec<TruthTable> = every_function(4).into_iter().filter(is_bent).collect();
    assert_eq!(bents.len(), 896);
    let mut checked = 0;
    for (i, f) in bents.iter().enumerate().step_by(7) {
        for g in bents.iter().skip(i % 5).step_by(11) {
            let balanced = f
                .values()
                .iter()
                .zip(g.values())
                .map(|(a, b)| (a * b) as i64)
                .sum::<i64>()
                == 0;
            if !balanced {
                continue;
            }
            assert!(common::forrelation2(f, &dual(g)).abs() < 1e-12);
            assert!(common::forrelation2(g, &dual(f)).abs() < 1e-12);
            checked += 1;
        }
    }
    assert!(checked > 100, "only {checked} balanced pairs");
}

#[test]
fn sampled_checkers_agree_with_predicates() {
    for (idx, f) in every_function(3).iter().enumerate() {
        for m in 0..3 {
            let config = CheckConfig {
                seed: idx as u64,
                ..CheckConfig::default()
            };
            let v = check_resilient(f, m, &config).unwrap();
            assert_eq!(v.verdict == Verdict::NotRefuted, resilient(f, m), "{f} m={m}");
            assert!(v.oracle_calls <= config.budget);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for trial in 0..50u64 {
        let n = 2 + (trial % 2) as usize;
        let f = TruthTable::random(n, &mut rng).unwrap();
        let g = TruthTable::random(n, &mut rng).unwrap();
        for m in 0..n {
            for method in [Method::Flat, Method::Dicke] {
                let config = CheckConfig {
                    seed: trial,
                    ..CheckConfig::default()
                };
                let v = check_uncorrelated(&f, &g, m, method, &config).unwrap();
                assert_eq!(
                    v.verdict == Verdict::NotRefuted,
                    uncorrelated(&f, &g, m),
                    "{f} {g} m={m} {method:?}"
                );
            }
        }
    }
}

#[test]
fn dicke_schedule_cost_against_flat_on_four_variables() {
    let mut rng = ChaCha8Rng::seed_from_u64(4444);
    let mut compared = 0;
    for _ in 0..400 {
        let f = TruthTable::random(4, &mut rng).unwrap();
        let g = TruthTable::random(4, &mut rng).unwrap();
        for m in 0..3 {
            let Some(cost) = dicke_cost(&f, &g, m).unwrap() else {
                continue;
            };
            assert!(cost.dicke <= DICKE_FLAT_CONSTANT * cost.flat, "{cost:?}");
            assert!(cost.dicke <= cost.flat_per_weight, "{cost:?}");
            if m == 0 {
                assert!(cost.dicke <= cost.flat);
            }
            compared += 1;
        }
    }
    assert!(compared > 300);
}

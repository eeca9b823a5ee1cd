use ciw_core::hilbert::{hf_ci, slp_quotient_hf, socle_degree, DegreeTuple};
use ciw_core::linalg::PrimeField;
use ciw_core::oracle::{ci_witness, quotient_hf_explicit, OracleConfig};
use ciw_core::poly::{random_homogeneous_form, HomogeneousForm};
use ciw_core::CIQuery;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn forms(degrees: &[u64], field: PrimeField, rng: &mut ChaCha8Rng) -> Vec<HomogeneousForm> {
    degrees
        .iter()
        .map(|&e| random_homogeneous_form(e as u32, field, rng).unwrap())
        .collect()
}

fn random_degrees(rng: &mut ChaCha8Rng, k: usize) -> Vec<u64> {
    (0..k).map(|_| rng.random_range(1..=5)).collect()
}

#[test]
fn regular_sequences_match_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let field = PrimeField::new(10_007).unwrap();
    let mut mismatches = Vec::new();
    for instance in 0..120 {
        let k = 1 + instance % 4;
        let degrees = random_degrees(&mut rng, k);
        let fs = forms(&degrees, field, &mut rng);
        let t = DegreeTuple::new(degrees.clone()).unwrap();
        let top = if k == 4 { socle_degree(&t).unwrap() + 2 } else { 20 };
        for d in 0..=top {
            if quotient_hf_explicit(&fs, d).unwrap() != hf_ci(&t, d).unwrap() {
                mismatches.push((degrees.clone(), d));
            }
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn four_forms_of_degrees_6_6_6_9() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let field = PrimeField::default_prime();
    let fs = forms(&[6, 6, 6, 9], field, &mut rng);
    let t = DegreeTuple::new(vec![6, 6, 6, 9]).unwrap();
    for d in 0..=23 {
        assert_eq!(quotient_hf_explicit(&fs, d).unwrap(), hf_ci(&t, d).unwrap(), "d={d}");
    }
}

#[test]
fn six_forms_vanish_in_degree_15() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let fs = forms(&[6, 6, 6, 9, 9, 9], PrimeField::default_prime(), &mut rng);
    assert_eq!(quotient_hf_explicit(&fs, 15).unwrap(), 0);
}

#[test]
fn fifth_form_has_maximal_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let field = PrimeField::default_prime();
    let (mut cells, mut failures) = (0, Vec::new());
    for _ in 0..40 {
        let base = random_degrees(&mut rng, 4);
        let e = rng.random_range(1..=5u64);
        let mut all = base.clone();
        all.push(e);
        let fs = forms(&all, field, &mut rng);
        let t = DegreeTuple::new(base.clone()).unwrap();
        for d in 0..=socle_degree(&t).unwrap() + 1 {
            cells += 1;
            let explicit = quotient_hf_explicit(&fs, d).unwrap();
            if explicit != slp_quotient_hf(&t, e as i64, d).unwrap() {
                failures.push((base.clone(), e, d));
            }
        }
    }
    assert!((failures.len() as f64) < 0.01 * cells as f64, "{failures:?} of {cells}");
}

#[test]
fn slp_example_against_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fs = forms(&[6, 6, 6, 9, 9], PrimeField::default_prime(), &mut rng);
    let t = DegreeTuple::new(vec![6, 6, 6, 9]).unwrap();
    assert_eq!(quotient_hf_explicit(&fs, 15).unwrap(), slp_quotient_hf(&t, 9, 15).unwrap());
}

#[test]
fn adding_a_form_never_increases_the_quotient() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let field = PrimeField::new(65_521).unwrap();
    for _ in 0..30 {
        let k = rng.random_range(1..=5);
        let degrees = random_degrees(&mut rng, k);
        let fs = forms(&degrees, field, &mut rng);
        for d in 0..16 {
            let mut previous = quotient_hf_explicit(&[], d).unwrap();
            for j in 1..=fs.len() {
                let now = quotient_hf_explicit(&fs[..j], d).unwrap();
                assert!(now <= previous, "{degrees:?} d={d}");
                previous = now;
            }
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let q = CIQuery::new(5, 6, 7, 14).unwrap();
    for prime in [PrimeField::default_prime(), PrimeField::new(10_007).unwrap()] {
        for seed in [0, 1, 99] {
            let cfg = OracleConfig {
                prime,
                seed,
                trials: 3,
                ..OracleConfig::default()
            };
            let first = ci_witness(&q, &cfg).unwrap();
            assert_eq!(first, ci_witness(&q, &cfg).unwrap());
            assert_eq!(first.certified(), first.hilbert_values().contains(&0));
        }
    }
}

#[test]
fn example_grid_certified() {
    for d in 7..=15 {
        let q = CIQuery::new(6, 6, 6, d).unwrap();
        let report = ci_witness(&q, &OracleConfig::default()).unwrap();
        assert!(report.certified(), "{q:?}: {:?}", report.hilbert_values());
    }
}

#[test]
fn negative_margin_means_no_witness() {
    // the oracle value is bounded below by minus the margin
    let cfg = OracleConfig {
        trials: 1,
        ..OracleConfig::default()
    };
    for (a, b, c, d, margin) in [(6, 9, 9, 24, -7), (7, 7, 9, 20, -6), (7, 8, 8, 20, -11)] {
        let q = CIQuery::new(a, b, c, d).unwrap();
        let report = ci_witness(&q, &cfg).unwrap();
        assert!(!report.certified());
        assert!(report.hilbert_values().iter().all(|&v| v as i128 >= -margin), "{q:?}");
    }
}

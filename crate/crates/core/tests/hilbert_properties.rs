use ciw_core::hilbert::{h_poly, hf_ci, nonexistence_margin, slp_quotient_hf, socle_degree, DegreeTuple, HilbertTable};
use proptest::prelude::*;

fn tuple(d: &[u64]) -> DegreeTuple {
    DegreeTuple::new(d.to_vec()).unwrap()
}

fn hf(d: &[u64], x: i64) -> i128 {
    hf_ci(&tuple(d), x).unwrap() as i128
}

fn binom3_trunc(n: i64) -> i128 {
    if n < 0 {
        0
    } else {
        let n = n as i128;
        (n + 1) * (n + 2) * (n + 3) / 6
    }
}

/// Alternating sum over all subsets of generators, one Koszul shift each.
fn koszul_sum(degrees: &[u64], d: i64) -> i128 {
    let k = degrees.len();
    (0u32..1 << k)
        .map(|mask| {
            let shift: i64 = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| degrees[i] as i64).sum();
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            sign * binom3_trunc(d - shift)
        })
        .sum()
}

/// Number of monomials of degree `d` not divisible by `x_i^{a_i}` for any `i`;
/// the quotient by pure powers is a complete intersection of these degrees.
fn monomials_below_powers(degrees: &[u64], d: i64) -> i128 {
    if d < 0 {
        return 0;
    }
    let mut caps = [u64::MAX; 4];
    caps[..degrees.len()].copy_from_slice(degrees);
    let d = d as u64;
    let mut n = 0;
    for e0 in 0..=d.min(caps[0].saturating_sub(1)) {
        for e1 in 0..=(d - e0).min(caps[1].saturating_sub(1)) {
            for e2 in 0..=(d - e0 - e1).min(caps[2].saturating_sub(1)) {
                if d - e0 - e1 - e2 < caps[3] {
                    n += 1;
                }
            }
        }
    }
    n
}

fn sorted_quads(max: u64) -> impl Iterator<Item = [u64; 4]> {
    (1..=max).flat_map(move |a| {
        (a..=max).flat_map(move |b| (b..=max).flat_map(move |c| (c..=max).map(move |e| [a, b, c, e])))
    })
}

#[test]
fn gorenstein_symmetry_exhaustive() {
    for w in sorted_quads(15) {
        let table = HilbertTable::artinian(&tuple(&w)).unwrap();
        let s = socle_degree(&tuple(&w)).unwrap() as usize;
        let v = table.values();
        assert_eq!(v.len(), s + 2, "{w:?}");
        assert_eq!(v[0], 1);
        assert_eq!(v[s + 1], 0);
        for x in 0..=s {
            assert_eq!(v[x], v[s - x], "{w:?} at {x}");
        }
    }
}

#[test]
fn vanishes_above_socle() {
    for w in sorted_quads(9) {
        let s = socle_degree(&tuple(&w)).unwrap();
        for x in s + 1..s + 6 {
            assert_eq!(hf(&w, x), 0);
        }
        assert!(hf(&w, s) > 0);
    }
}

#[test]
fn koszul_sum_agrees() {
    for k in 1..=4usize {
        for w in sorted_quads(8) {
            let degrees = &w[..k];
            for d in -2..40 {
                assert_eq!(hf(degrees, d), koszul_sum(degrees, d), "{degrees:?} at {d}");
            }
        }
    }
}

#[test]
fn monomial_count_agrees() {
    for w in sorted_quads(7) {
        for k in 1..=4 {
            for d in 0..30 {
                assert_eq!(hf(&w[..k], d), monomials_below_powers(&w[..k], d));
            }
        }
    }
}

#[test]
fn degree_b_formula() {
    let c3 = |n: i64| binom3_trunc(n - 3);
    for a in 1..=15u64 {
        for b in a..=15 {
            for c in b..=15 {
                for e in b + 1..=15 {
                    // W of type (a,b,c,d-c) with d - c = e > b
                    let w = [a, b, c, e];
                    let expected = c3(b as i64 + 3) - c3((b - a) as i64 + 3) - if b == c { 2 } else { 1 };
                    assert_eq!(hf(&w, b as i64), expected, "{w:?}");
                }
            }
        }
    }
}

#[test]
fn coincidence_region() {
    let (mut plain, mut edge) = (0, 0);
    for a in 1..=15i64 {
        for b in a..=15 {
            for c in b..=15 {
                for d in c + 1..=c + 15 {
                    if d < a + b + c - 3 {
                        continue;
                    }
                    let w = [a as u64, b as u64, c as u64, (d - c) as u64];
                    let gap = c - a - b;
                    if gap >= -3 {
                        assert_eq!(hf(&w, d), h_poly(a, b, c, d), "{w:?} at {d}");
                        plain += 1;
                    } else if a == 4 && b == c && gap == -4 {
                        assert_eq!(hf(&w, d), h_poly(a, b, c, d) - 1, "{w:?} at {d}");
                        edge += 1;
                    }
                }
            }
        }
    }
    assert!(plain > 1000 && edge > 10);
}

#[test]
fn h_poly_closed_form() {
    for a in -10..=20i64 {
        for b in -10..=20 {
            let expected = (a * a * b + a * b * b) as i128 / 2 - 2 * (a * b) as i128 + 1;
            for (c, d) in [(0, 0), (7, 30), (-3, 5)] {
                assert_eq!(h_poly(a, b, c, d), expected);
            }
        }
    }
}

#[test]
fn fewer_generators_stabilize_at_product() {
    for w in sorted_quads(6) {
        for k in 1..=3 {
            let degrees = &w[..k];
            let sum: u64 = degrees.iter().sum();
            let tail: Vec<i128> = (sum as i64..sum as i64 + 10).map(|d| hf(degrees, d)).collect();
            match k {
                3 => assert!(tail.iter().all(|&v| v == degrees.iter().product::<u64>() as i128)),
                // curves: growth d * a * b, surfaces: quadratic growth
                _ => assert!(tail.windows(2).all(|p| p[1] > p[0])),
            }
        }
    }
}

#[test]
fn margin_nonnegative_when_a_is_four() {
    for b in 4..=20i64 {
        for c in b..=20 {
            for d in (4 + b + c - 3).max(c + 1)..=4 + b + c + 10 {
                assert!(nonexistence_margin(4, b, c, d).unwrap() >= 0, "(4,{b},{c},{d})");
            }
        }
    }
}

#[test]
fn margin_rejects_bad_order() {
    assert!(nonexistence_margin(5, 4, 6, 9).is_err());
    assert!(nonexistence_margin(2, 3, 9, 9).is_err());
    assert!(nonexistence_margin(0, 3, 4, 9).is_err());
}

#[test]
fn slp_prediction_edges() {
    let w = tuple(&[6, 6, 6, 9]);
    for d in 0..30 {
        if d < 9 {
            assert_eq!(slp_quotient_hf(&w, 9, d).unwrap(), hf_ci(&w, d).unwrap());
        }
        if d > 23 {
            assert_eq!(slp_quotient_hf(&w, 9, d).unwrap(), 0);
        }
    }
    assert_eq!(slp_quotient_hf(&w, 9, 15).unwrap() as i128, (hf(&[6, 6, 6, 9], 15) - hf(&[6, 6, 6, 9], 6)).max(0));
}

proptest! {
    #[test]
    fn table_matches_pointwise(degrees in proptest::collection::vec(1u64..40, 1..=4), top in 0usize..200) {
        let t = tuple(&degrees);
        let table = HilbertTable::through(&t, top).unwrap();
        for (d, &v) in table.values().iter().enumerate() {
            prop_assert_eq!(v, hf_ci(&t, d as i64).unwrap());
        }
    }

    #[test]
    fn symmetry_large_degrees(w in proptest::array::uniform4(1u64..5000), x in 0u64..20000) {
        let t = tuple(&w);
        let s = socle_degree(&t).unwrap();
        let x = (x as i64) % (s + 1);
        prop_assert_eq!(hf_ci(&t, x).unwrap(), hf_ci(&t, s - x).unwrap());
    }

    #[test]
    fn sorting_is_irrelevant(mut w in proptest::collection::vec(1u64..30, 1..=4), d in -5i64..150) {
        let before = hf_ci(&tuple(&w), d).unwrap();
        w.reverse();
        prop_assert_eq!(before, hf_ci(&tuple(&w), d).unwrap());
        prop_assert_eq!(before as i128, koszul_sum(&w, d));
    }
}

mod common;

use common::*;
use finrank::linear::{classify_by_vanishing_subsums, count_solutions, EquationSpec};
use finrank::matrix::{charpoly, det, rank};
use finrank::sweep::{count_charpoly2, fast_det2_histogram, sweep, SweepOptions};
use finrank::{CharPolyKey, ElementSet, Field, MatrixInstance, Scalar};
use num_bigint::BigUint;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Scalar::ratio(Field::Q, n, d).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn gaussian() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, -9i64..=9, 1i64..=4)
        .prop_map(|(re, im, d)| Scalar::from_parts(Field::Qi, re.into(), im.into(), d.into()).unwrap())
}

fn nonzero_set(max: usize) -> impl Strategy<Value = ElementSet> {
    prop::collection::btree_set((-12i64..=12).prop_filter("nonzero", |v| *v != 0), 1..=max).prop_map(|s| {
        ElementSet::new(Field::Q, s.into_iter().map(|v| Scalar::from_int(Field::Q, v)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(&a.try_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn display_parse_roundtrip(a in gaussian(), b in rational()) {
        prop_assert_eq!(Scalar::parse(&a.to_string(), Field::Qi).unwrap(), a);
        prop_assert_eq!(Scalar::parse(&b.to_string(), Field::Q).unwrap(), b);
    }

    #[test]
    fn canonical_key_is_injective(a in gaussian(), b in gaussian()) {
        prop_assert_eq!(a.canonical_key() == b.canonical_key(), a == b);
    }

    #[test]
    fn matrix_routines_agree_with_naive(entries in prop::collection::vec(nonzero_rational(), 9)) {
        let set = ElementSet::new(Field::Q, {
            let mut v = entries.clone();
            v.sort();
            v.dedup();
            v
        }).unwrap();
        let idx: Vec<usize> = entries.iter().map(|e| set.elements().iter().position(|x| x == e).unwrap()).collect();
        let x = MatrixInstance::new(3, 3, idx, &set).unwrap();
        let d = det(&x, &set).unwrap();
        prop_assert_eq!(&d, &laplace_det(&entries, 3));
        prop_assert_eq!(rank(&x, &set), gauss_rank(&entries, 3, 3));
        // f(0) = -det for n = 3
        let f: CharPolyKey = charpoly(&x, &set).unwrap();
        prop_assert_eq!(f.coeff(0), -&d);
    }

    #[test]
    fn det2_histogram_matches_naive(set in nonzero_set(7)) {
        let fast = fast_det2_histogram(&set);
        prop_assert_eq!(fast, naive_det2_histogram(&set));
    }

    #[test]
    fn charpoly2_fast_path_matches_sweep(set in nonzero_set(5), t in -6i64..=6, d in -6i64..=6) {
        let (t, d) = (Scalar::from_int(Field::Q, t), Scalar::from_int(Field::Q, d));
        let h = sweep(&set, 2, 2, &SweepOptions::only_charpoly()).unwrap();
        let key = CharPolyKey::new(vec![d.clone(), -&t]).unwrap();
        prop_assert_eq!(count_charpoly2(&set, &t, &d).unwrap(), h.charpoly_count(&key));
    }

    #[test]
    fn sweep_matches_naive(set in nonzero_set(3), rows in 1usize..=3, cols in 1usize..=3) {
        let opts = if rows == cols { SweepOptions::all() } else { SweepOptions::only_rank() };
        let h = sweep(&set, rows, cols, &opts).unwrap();
        let (ranks, dets) = naive_matrix_tallies(&set, rows, cols);
        prop_assert_eq!(h.rank_profile.unwrap(), ranks);
        if let Some(dets) = dets {
            prop_assert_eq!(h.det.unwrap(), dets);
        }
    }

    #[test]
    fn equation_counts_and_classes(
        set in nonzero_set(6),
        coeffs in prop::collection::vec(prop::sample::select(vec![1i64, -1, 2, -2, 3]), 1..=5),
        rhs in -4i64..=4,
    ) {
        let coeffs: Vec<Scalar> = coeffs.iter().map(|&c| Scalar::from_int(Field::Q, c)).collect();
        let rhs = Scalar::from_int(Field::Q, rhs);
        let eq = EquationSpec::new(coeffs.clone(), rhs.clone()).unwrap();
        let count = count_solutions(&eq, &set).unwrap();
        prop_assert_eq!(&count, &BigUint::from(naive_equation_count(&coeffs, &rhs, &set)));
        prop_assert_eq!(classify_by_vanishing_subsums(&eq, &set).unwrap().total(), count);
    }
}

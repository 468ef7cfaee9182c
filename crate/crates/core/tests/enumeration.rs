use proptest::prelude::*;
use qkernel::fast_enum::{enumerate, fast_series_symmetric, Method};
use qkernel::kernel_iter::gf_total_asymmetric;
use qkernel::naive::{count_all, count_axis, Axis};
use qkernel::ModelId;
use rug::Integer;

const TABLE: [(ModelId, [u64; 11]); 5] = [
    (ModelId::A, [1, 1, 3, 7, 21, 55, 165, 457, 1371, 3909, 11727]),
    (ModelId::B, [1, 2, 6, 20, 70, 254, 942, 3550, 13532, 52030, 201386]),
    (
        ModelId::C,
        [1, 3, 13, 59, 279, 1341, 6527, 31995, 157659, 779601, 3864985],
    ),
    (ModelId::D, [1, 1, 2, 4, 10, 23, 61, 153, 418, 1100, 3064]),
    (ModelId::E, [1, 2, 7, 24, 91, 339, 1316, 5064, 19876, 77655, 306653]),
];

#[test]
fn first_eleven_terms_every_method() {
    for (m, row) in TABLE {
        let want: Vec<Integer> = row.iter().map(|&v| Integer::from(v)).collect();
        for method in Method::ALL {
            assert_eq!(enumerate(m, 11, method).unwrap(), want, "{m} {}", method.name());
        }
    }
}

#[test]
fn methods_agree_to_eighty() {
    for m in ModelId::ALL {
        let naive = count_all(m, 79);
        assert_eq!(enumerate(m, 80, Method::Iterated).unwrap(), naive, "{m} iterated");
        assert_eq!(enumerate(m, 80, Method::Fast).unwrap(), naive, "{m} fast");
    }
}

#[test]
fn two_chain_formula_covers_symmetric_models() {
    for m in [ModelId::A, ModelId::B, ModelId::C] {
        let s = gf_total_asymmetric::<Integer>(m, 40).unwrap();
        assert_eq!(s.coeffs(), &count_all(m, 39)[..], "{m}");
    }
}

#[test]
fn fast_symmetric_series_match_naive() {
    for m in [ModelId::A, ModelId::B, ModelId::C] {
        let s = fast_series_symmetric(m, 60).unwrap();
        assert_eq!(s.total.coeffs(), &count_all(m, 59)[..]);
        assert_eq!(s.axis.coeffs(), &count_axis(m, 59, Axis::YAxis)[..]);
    }
}

#[test]
fn counts_outgrow_machine_words() {
    let c = enumerate(ModelId::C, 31, Method::Fast).unwrap();
    assert!(c[30] > u64::MAX);
    let first_big = c.iter().position(|v| *v > u64::MAX).unwrap();
    assert!((27..=30).contains(&first_big), "{first_big}");
}

#[test]
fn zero_terms_is_empty() {
    for method in Method::ALL {
        assert!(enumerate(ModelId::A, 0, method).unwrap().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shorter_runs_are_prefixes(
        m in prop::sample::select(ModelId::ALL.to_vec()),
        k in 1usize..40,
        method in prop::sample::select(Method::ALL.to_vec()),
    ) {
        let long = enumerate(m, 40, Method::Fast).unwrap();
        let short = enumerate(m, k, method).unwrap();
        prop_assert_eq!(&short[..], &long[..k]);
    }

    #[test]
    fn counts_are_positive_and_at_most_cardinality_growth(m in prop::sample::select(ModelId::ALL.to_vec())) {
        let s = enumerate(m, 50, Method::Fast).unwrap();
        let card = m.cardinality() as u32;
        for w in s.windows(2) {
            prop_assert!(w[0] > 0);
            prop_assert!(w[1] <= Integer::from(&w[0] * card));
        }
    }
}

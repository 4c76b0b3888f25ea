mod common;

use hypbill::polygon::PolygonSpec;
use hypbill::shiftspace::{
    sft_approximation, subshift_hausdorff, tail_extension, EvenFamily, SubshiftHandle, DEFAULT_BUDGET,
};
use hypbill::symdyn::{forbidden_set, ForbiddenSet, Letter, Word};
use proptest::prelude::*;

fn sft(name: &str, k: Letter, words: &[&str]) -> SubshiftHandle {
    let words = words.iter().map(|w| Word::parse(w).unwrap().into_letters());
    SubshiftHandle::from_forbidden(name, ForbiddenSet::new(k, words).unwrap())
}

fn polygon(name: &str, spec: &PolygonSpec) -> SubshiftHandle {
    SubshiftHandle::sft(name, forbidden_set(spec).unwrap())
}

/// Pairs whose distinguishing words are realized by periodic points of
/// period at most six.
fn cloud_pairs() -> Vec<(SubshiftHandle, SubshiftHandle)> {
    vec![
        (sft("full2", 2, &[]), sft("golden", 2, &["22"])),
        (sft("golden", 2, &["22"]), sft("golden_111", 2, &["22", "111"])),
        (sft_approximation(&EvenFamily, 1), sft_approximation(&EvenFamily, 2)),
        (
            polygon("ideal_triangle", &PolygonSpec::ideal(3)),
            polygon("lambda4", &PolygonSpec::triangle([Some(4); 3])),
        ),
        (
            sft("ttoct1", 3, &["22", "23", "32", "33", "212", "213", "312", "313"]),
            sft(
                "ttoct2",
                3,
                &[
                    "22", "23", "32", "33", "212", "213", "312", "313", "2112", "2113", "3112", "3113",
                ],
            ),
        ),
        (sft("full2", 2, &[]), sft("fixed2", 2, &["1"])),
    ]
}

#[test]
fn language_distance_matches_point_clouds() {
    const MAX_M: usize = 6;
    for (x, y) in cloud_pairs() {
        let d = subshift_hausdorff(&x, &y, MAX_M, DEFAULT_BUDGET).unwrap();
        let cloud = common::cloud_exponent(x.presentation(), y.presentation(), 6, MAX_M);
        assert_eq!(d.exponent, cloud, "{} vs {}", x.name(), y.name());
        assert!(d.exponent.is_some());
    }
}

#[test]
fn distance_is_symmetric_and_vanishes_on_the_diagonal() {
    let pairs = cloud_pairs();
    for (x, y) in &pairs {
        let xy = subshift_hausdorff(x, y, 12, DEFAULT_BUDGET).unwrap();
        let yx = subshift_hausdorff(y, x, 12, DEFAULT_BUDGET).unwrap();
        assert_eq!(xy.exponent, yx.exponent);
        assert!(subshift_hausdorff(x, x, 12, DEFAULT_BUDGET)
            .unwrap()
            .is_equal_within_budget());
    }
    // Ultrametric inequality on a chain of three shifts.
    let (a, b, c) = (sft("a", 2, &[]), sft("b", 2, &["22"]), sft("c", 2, &["22", "111"]));
    let d = |x, y| subshift_hausdorff(x, y, 12, DEFAULT_BUDGET).unwrap().value();
    assert!(d(&a, &c) <= d(&a, &b).max(d(&b, &c)));
}

fn forbidden_words() -> impl Strategy<Value = (Letter, Vec<Vec<Letter>>)> {
    (2u8..=3).prop_flat_map(|k| {
        let word = prop::collection::vec(1..=k, 1..=3);
        (Just(k), prop::collection::vec(word, 0..=4))
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 300,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn periodic_orbits_are_isolated(
        (k, words) in forbidden_words(),
        period in prop::collection::vec(1u8..=3, 1..=4),
    ) {
        let period: Vec<Letter> = period.into_iter().map(|a| a.min(k)).collect();
        let p = period.len();
        let z = SubshiftHandle::periodic_orbit(k, Word::new(period).unwrap());
        let y = SubshiftHandle::from_forbidden("y", ForbiddenSet::new(k, words).unwrap());
        let d = subshift_hausdorff(&z, &y, p + 4, DEFAULT_BUDGET).unwrap();
        if let Some(m) = d.exponent {
            prop_assert!(m <= p.div_ceil(2), "exponent {} for period {}", m, p);
            prop_assert!(d.value() >= 0.5f64.powi(p as i32 + 1));
        } else {
            // Equal through every window: the shift is the orbit itself.
            prop_assert_eq!(y.count_words(p + 4), z.count_words(p + 4));
        }
    }

    #[test]
    fn tail_extensions_agree_on_short_words(j in 1usize..8, n0 in 1usize..4) {
        let base = ForbiddenSet::new(2, vec![vec![2, 2]]).unwrap();
        let limit = SubshiftHandle::from_forbidden("base", base.clone());
        let x = tail_extension(&base, 2, 1, n0, j);
        let len = n0 + j;
        prop_assert_eq!(x.count_words(len), limit.count_words(len));
        prop_assert!(x.count_words(len + 1)[len] < limit.count_words(len + 1)[len]);
    }
}

#[test]
fn approximations_converge_monotonically() {
    let even = SubshiftHandle::even_shift();
    let mut last = None;
    for j in 1..=12 {
        let x = sft_approximation(&EvenFamily, j);
        let m = subshift_hausdorff(&x, &even, 24, DEFAULT_BUDGET)
            .unwrap()
            .exponent
            .unwrap();
        if let Some(prev) = last {
            assert!(m > prev, "even approximant {j}: {m} after {prev}");
        }
        last = Some(m);
    }

    let base = ForbiddenSet::new(3, vec![vec![1, 1], vec![2, 2], vec![3, 3]]).unwrap();
    let limit = SubshiftHandle::from_forbidden("base", base.clone());
    let mut last = 0.0;
    let mut exponents = Vec::new();
    for j in 1..=8 {
        let d = subshift_hausdorff(&tail_extension(&base, 1, 2, 0, j), &limit, 16, DEFAULT_BUDGET).unwrap();
        assert!(j == 1 || d.value() <= last);
        last = d.value();
        exponents.push(d.exponent);
    }
    assert!(
        exponents.windows(2).all(|w| w[0] <= w[1] || w[1].is_none()),
        "{exponents:?}"
    );
}

#[test]
fn entropy_is_continuous_along_approximations() {
    let entropies: Vec<f64> = (1..=12)
        .map(|j| sft_approximation(&EvenFamily, j).entropy().unwrap())
        .collect();
    let gaps: Vec<f64> = entropies.windows(2).map(|w| w[0] - w[1]).collect();
    for g in &gaps {
        assert!(*g >= -1e-12, "entropy increased: {entropies:?}");
    }
    for w in gaps.windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "gaps grew: {gaps:?}");
    }
    assert!(gaps.last().unwrap().abs() < 1e-3, "{gaps:?}");
    let limit = SubshiftHandle::even_shift().entropy().unwrap();
    let golden = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    assert!((limit - golden).abs() < 1e-9);
    assert!((entropies[11] - golden).abs() < 1e-2);
}

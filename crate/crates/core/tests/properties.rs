use std::collections::BTreeMap;

use chrono::{DateTime, Duration, TimeZone, Utc};
use mockboard_core::items::extreme_group_size;
use mockboard_core::{
    difficulty_index, discrimination_index, grade, presentation_order, remaining_seconds,
    subject_outcome, weighted_score, Outcome, Percent, QuestionId, Response,
};
use proptest::prelude::*;

/// Per-question comparison written without the map-walk used by `grade`.
fn brute_grade(ids: &[QuestionId], key: &[u8], answers: &[Option<u8>]) -> u32 {
    let mut score = 0;
    for i in 0..ids.len() {
        if let Some(a) = answers[i] {
            if a == key[i] {
                score += 1;
            }
        }
    }
    score
}

fn keyed(
    n: usize,
    key: &[u8],
    answers: &[Option<u8>],
) -> (
    Vec<QuestionId>,
    BTreeMap<QuestionId, u8>,
    BTreeMap<QuestionId, u8>,
) {
    let ids: Vec<QuestionId> = (0..n).map(|_| QuestionId::new()).collect();
    let key_map = ids.iter().zip(key).map(|(q, k)| (*q, *k)).collect();
    let answer_map = ids
        .iter()
        .zip(answers)
        .filter_map(|(q, a)| a.map(|a| (*q, a)))
        .collect();
    (ids, key_map, answer_map)
}

fn key_and_answers() -> impl Strategy<Value = (Vec<u8>, Vec<Option<u8>>)> {
    (0usize..=12).prop_flat_map(|n| {
        (
            proptest::collection::vec(0u8..5, n),
            proptest::collection::vec(proptest::option::of(0u8..5), n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn grade_matches_brute_force((key, answers) in key_and_answers()) {
        let (ids, key_map, answer_map) = keyed(key.len(), &key, &answers);
        prop_assert_eq!(grade(&answer_map, &key_map).unwrap(), brute_grade(&ids, &key, &answers));
    }

    #[test]
    fn weighted_score_is_monotone(total in 1u32..200, weight in 1u32..=10_000) {
        let weight = Percent::from_hundredths(weight).unwrap();
        let mut prev = None;
        for raw in 0..=total {
            let s = weighted_score(raw, total, weight).unwrap().rounded();
            if let Some(p) = prev {
                prop_assert!(s >= p);
            }
            prev = Some(s);
        }
        // full marks carry the weight exactly (to the displayed decimal)
        let full = weighted_score(total, total, weight).unwrap();
        prop_assert_eq!(full.ratio().0, u64::from(total) * u64::from(weight.hundredths()));
        prop_assert_eq!(u64::from(full.rounded().tenths()) * 10, (u64::from(weight.hundredths()) + 5) / 10 * 10);
    }

    #[test]
    fn remaining_is_non_increasing(offsets in proptest::collection::vec(0i64..10_000, 2..20), minutes in 1u32..120) {
        let start: DateTime<Utc> = Utc.with_ymd_and_hms(2018, 11, 21, 14, 0, 0).unwrap();
        let mut sorted = offsets.clone();
        sorted.sort();
        let mut prev = u64::MAX;
        for off in sorted {
            let left = remaining_seconds(start + Duration::seconds(off), start, minutes).unwrap();
            prop_assert!(left <= prev);
            prev = left;
        }
        let deadline = start + Duration::minutes(i64::from(minutes));
        prop_assert_eq!(remaining_seconds(deadline, start, minutes).unwrap(), 0);
        prop_assert_eq!(remaining_seconds(deadline - Duration::seconds(1), start, minutes).unwrap(), 1);
    }

    #[test]
    fn presentation_is_a_bijection_and_tracks_answers(
        counts in proptest::collection::vec(2usize..=5, 1..40),
        seed in any::<u64>(),
    ) {
        let p = presentation_order(&counts, seed);
        let mut q = p.question_order.clone();
        q.sort();
        prop_assert_eq!(q, (0..counts.len()).collect::<Vec<_>>());
        for (i, order) in p.choice_orders.iter().enumerate() {
            let mut c = order.clone();
            c.sort();
            prop_assert_eq!(c, (0..counts[i]).collect::<Vec<_>>());
            for correct in 0..counts[i] {
                let shown = p.display_of_choice(i, correct).unwrap();
                prop_assert_eq!(p.authored_of_choice(i, shown), Some(correct));
            }
        }
        prop_assert_eq!(presentation_order(&counts, seed), p);
    }
}

/// Exact oracle: the smallest passing raw score is ceil(rate * total / 100).
#[test]
fn outcome_boundary_sweep() {
    for total in 1u32..=20 {
        for rate in [20u32, 50, 75, 100] {
            let min_pass = (rate * total).div_ceil(100);
            for raw in 0..=total {
                let expected = if raw >= min_pass {
                    Outcome::Passed
                } else {
                    Outcome::Failed
                };
                assert_eq!(
                    subject_outcome(raw, total, Percent::whole(rate)).unwrap(),
                    expected,
                    "{raw}/{total} @ {rate}"
                );
            }
        }
    }
}

/// Rank by counting who beats whom instead of sorting.
fn brute_discrimination(cohort: &[(u32, u32, bool)]) -> f64 {
    let n = cohort.len();
    let k = extreme_group_size(n);
    let mut upper = 0usize;
    let mut lower = 0usize;
    for (id, score, correct) in cohort {
        let ahead = cohort
            .iter()
            .filter(|(oid, os, _)| os > score || (os == score && oid < id))
            .count();
        if *correct && ahead < k {
            upper += 1;
        }
        if *correct && ahead >= n - k {
            lower += 1;
        }
    }
    upper as f64 / k as f64 - lower as f64 / k as f64
}

#[test]
fn extreme_group_size_matches_float_rounding() {
    for n in 1usize..=1000 {
        let expected = ((0.27 * n as f64).round() as usize).max(1);
        // 0.27 * 50k lands exactly on .5 only in exact arithmetic; f64 may fall either side.
        if n % 50 != 0 {
            assert_eq!(extreme_group_size(n), expected, "n = {n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn item_indices_match_brute_force(
        cohort in proptest::collection::vec((0u32..40, any::<bool>(), proptest::option::of(0u8..4)), 2..=30),
        correct in 0u8..4,
    ) {
        let rows: Vec<(u32, u32, bool)> = cohort.iter().enumerate().map(|(i, (s, c, _))| (i as u32, *s, *c)).collect();
        let d = discrimination_index(&rows).unwrap();
        prop_assert!((d - brute_discrimination(&rows)).abs() < 1e-9);
        prop_assert!((-1.0..=1.0).contains(&d));

        let responses: Vec<Response> = cohort.iter().map(|(_, _, chosen)| Response { chosen: *chosen, correct }).collect();
        let hits = cohort.iter().filter(|(_, _, chosen)| *chosen == Some(correct)).count();
        let p = difficulty_index(&responses).unwrap();
        prop_assert!((p - hits as f64 / cohort.len() as f64).abs() < 1e-9);
    }
}

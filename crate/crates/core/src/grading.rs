//! Raw grading, weighting and pass/fail decisions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ids::QuestionId;
use crate::percent::{Percent, Points, WeightedScore};
use crate::CoreError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Passed,
    Failed,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Passed => "Passed",
            Outcome::Failed => "Failed",
        })
    }
}

/// Counts answers that match the key. Questions without an answer score 0.
pub fn grade(
    answers: &BTreeMap<QuestionId, u8>,
    key: &BTreeMap<QuestionId, u8>,
) -> Result<u32, CoreError> {
    let mut raw = 0;
    for (question, choice) in answers {
        match key.get(question) {
            Some(correct) if correct == choice => raw += 1,
            Some(_) => {}
            None => return Err(CoreError::UnknownQuestion(*question)),
        }
    }
    Ok(raw)
}

pub fn weighted_score(raw: u32, total: u32, weight: Percent) -> Result<WeightedScore, CoreError> {
    if total == 0 {
        return Err(CoreError::DegenerateExam);
    }
    if raw > total {
        return Err(CoreError::RawExceedsTotal { raw, total });
    }
    Ok(WeightedScore::new(raw, total, weight))
}

/// Passed iff `100 * raw / total >= passing_rate`, compared exactly.
pub fn subject_outcome(raw: u32, total: u32, passing_rate: Percent) -> Result<Outcome, CoreError> {
    if total == 0 {
        return Err(CoreError::DegenerateExam);
    }
    if raw > total {
        return Err(CoreError::RawExceedsTotal { raw, total });
    }
    // raw/total * 10000 >= hundredths  <=>  raw * 10000 >= hundredths * total
    let lhs = u64::from(raw) * 10_000;
    let rhs = u64::from(passing_rate.hundredths()) * u64::from(total);
    Ok(if lhs >= rhs {
        Outcome::Passed
    } else {
        Outcome::Failed
    })
}

/// One finalized subject feeding the composite rating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScorePart {
    pub raw: u32,
    pub total: u32,
    pub weight: Percent,
    pub passing_rate: Percent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverallRating {
    pub rating: Points,
    pub outcome: Outcome,
}

/// Sums the displayed (one-decimal) weighted scores of every part. The
/// overall outcome requires `rating >= threshold` and every subject passed.
pub fn overall_rating(parts: &[ScorePart], threshold: Percent) -> Result<OverallRating, CoreError> {
    let weight_sum = Percent::checked_sum(parts.iter().map(|p| p.weight));
    if weight_sum > 10_000 {
        return Err(CoreError::WeightOverflow {
            hundredths: weight_sum,
        });
    }
    let mut rating = Points::ZERO;
    let mut all_passed = true;
    for part in parts {
        rating = rating + weighted_score(part.raw, part.total, part.weight)?.rounded();
        all_passed &= subject_outcome(part.raw, part.total, part.passing_rate)? == Outcome::Passed;
    }
    let outcome = if all_passed && rating.reaches(threshold) {
        Outcome::Passed
    } else {
        Outcome::Failed
    };
    Ok(OverallRating { rating, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qids(n: usize) -> Vec<QuestionId> {
        (0..n).map(|_| QuestionId::new()).collect()
    }

    #[test]
    fn grade_counts_matches() {
        let ids = qids(10);
        let key: BTreeMap<_, _> = ids.iter().map(|q| (*q, 1u8)).collect();
        let mut answers = BTreeMap::new();
        for (i, q) in ids.iter().enumerate() {
            answers.insert(*q, if i < 3 { 1 } else { 0 });
        }
        assert_eq!(grade(&answers, &key).unwrap(), 3);
        assert_eq!(grade(&BTreeMap::new(), &key).unwrap(), 0);
        assert_eq!(grade(&key, &key).unwrap(), 10);
    }

    #[test]
    fn grade_rejects_unknown_question() {
        let key: BTreeMap<_, _> = qids(2).into_iter().map(|q| (q, 0u8)).collect();
        let stray = QuestionId::new();
        let answers = BTreeMap::from([(stray, 0u8)]);
        assert_eq!(
            grade(&answers, &key),
            Err(CoreError::UnknownQuestion(stray))
        );
    }

    #[test]
    fn weighted_score_examples() {
        let w = |r, t, p| weighted_score(r, t, Percent::whole(p)).unwrap().to_string();
        assert_eq!(w(9, 10, 15), "13.5");
        assert_eq!(w(3, 10, 20), "6.0");
        assert_eq!(w(0, 10, 20), "0.0");
        assert_eq!(
            weighted_score(9, 10, Percent::whole(15))
                .unwrap()
                .display_of_weight(),
            "13.5 of 15%"
        );
        assert_eq!(
            weighted_score(1, 0, Percent::whole(15)),
            Err(CoreError::DegenerateExam)
        );
    }

    #[test]
    fn outcome_examples() {
        let o = |r, t, p| subject_outcome(r, t, Percent::whole(p)).unwrap();
        assert_eq!(o(9, 10, 75), Outcome::Passed);
        assert_eq!(o(3, 10, 75), Outcome::Failed);
        assert_eq!(o(3, 4, 75), Outcome::Passed);
        assert_eq!(o(2, 3, 67), Outcome::Failed);
        assert_eq!(
            subject_outcome(0, 0, Percent::whole(75)),
            Err(CoreError::DegenerateExam)
        );
    }

    #[test]
    fn overall_examples() {
        let part = |raw, weight| ScorePart {
            raw,
            total: 10,
            weight: Percent::whole(weight),
            passing_rate: Percent::whole(75),
        };
        let r =
            overall_rating(&[part(0, 20), part(3, 20), part(9, 15)], Percent::whole(75)).unwrap();
        assert_eq!(r.rating.to_string(), "19.5");
        assert_eq!(r.outcome, Outcome::Failed);

        let perfect: Vec<_> = [20, 20, 15, 15, 30]
            .into_iter()
            .map(|w| part(10, w))
            .collect();
        let r = overall_rating(&perfect, Percent::whole(75)).unwrap();
        assert_eq!(r.rating.to_string(), "100.0");
        assert_eq!(r.outcome, Outcome::Passed);

        let single = ScorePart {
            raw: 75,
            total: 100,
            weight: Percent::HUNDRED,
            passing_rate: Percent::whole(75),
        };
        let r = overall_rating(&[single], Percent::whole(75)).unwrap();
        assert_eq!(
            (r.rating.to_string().as_str(), r.outcome),
            ("75.0", Outcome::Passed)
        );
    }

    #[test]
    fn overall_rejects_weight_overflow() {
        let part = ScorePart {
            raw: 1,
            total: 1,
            weight: Percent::whole(60),
            passing_rate: Percent::whole(75),
        };
        assert!(matches!(
            overall_rating(&[part, part], Percent::whole(75)),
            Err(CoreError::WeightOverflow { hundredths: 12_000 })
        ));
    }

    #[test]
    fn high_rating_with_failed_subject_fails_overall() {
        let parts = [
            ScorePart {
                raw: 10,
                total: 10,
                weight: Percent::whole(90),
                passing_rate: Percent::whole(75),
            },
            ScorePart {
                raw: 0,
                total: 10,
                weight: Percent::whole(10),
                passing_rate: Percent::whole(75),
            },
        ];
        let r = overall_rating(&parts, Percent::whole(75)).unwrap();
        assert_eq!(r.rating.to_string(), "90.0");
        assert_eq!(r.outcome, Outcome::Failed);
    }
}

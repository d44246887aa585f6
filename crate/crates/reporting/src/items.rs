use std::collections::BTreeMap;

use mockboard_api::{ItemAnalysisReport, ItemRow};
use mockboard_core::{item_stats, AccountId, Attempt, ExamId};
use mockboard_store::State;

use crate::ReportError;

pub const REVIEW_FLAG: &str = "review";
const EXCERPT_CHARS: usize = 60;

fn excerpt(stem: &str) -> String {
    let mut chars = stem.chars();
    let head: String = chars.by_ref().take(EXCERPT_CHARS).collect();
    if chars.next().is_some() {
        format!("{head}…")
    } else {
        head
    }
}

/// Flags items that are too easy, too hard, or discriminate poorly.
pub fn review_flag(difficulty: Option<f64>, discrimination: Option<f64>) -> Option<String> {
    let p = difficulty?;
    let poor = p < 0.2 || p > 0.9 || discrimination.is_some_and(|d| d < 0.2);
    poor.then(|| REVIEW_FLAG.to_string())
}

/// Uses each examinee's latest finalized attempt.
pub fn item_analysis_report(
    state: &State,
    exam_id: ExamId,
) -> Result<ItemAnalysisReport, ReportError> {
    let exam = state.exam(exam_id).ok_or(ReportError::UnknownExam)?;
    let mut latest: BTreeMap<AccountId, &Attempt> = BTreeMap::new();
    for attempt in state
        .attempts()
        .filter(|a| a.exam_id == exam_id && a.is_finalized())
    {
        let slot = latest.entry(attempt.examinee_id).or_insert(attempt);
        if attempt.attempt_no > slot.attempt_no {
            *slot = attempt;
        }
    }

    let items = state
        .questions_of(exam)
        .into_iter()
        .enumerate()
        .map(|(position, q)| {
            let rows: Vec<(AccountId, u32, Option<u8>)> = latest
                .values()
                .filter(|a| a.question_ids.contains(&q.question_id))
                .map(|a| {
                    (
                        a.examinee_id,
                        a.raw_score,
                        a.answers.get(&q.question_id).copied(),
                    )
                })
                .collect();
            let stats = item_stats(q.question_id, q.choices.len(), q.correct_index, &rows);
            ItemRow {
                question_id: q.question_id,
                position: position + 1,
                stem_excerpt: excerpt(&q.stem),
                category: q.category.clone(),
                correct_index: q.correct_index,
                n_responses: stats.n_responses,
                flag: review_flag(stats.difficulty, stats.discrimination),
                difficulty: stats.difficulty,
                discrimination: stats.discrimination,
                choice_distribution: stats.choice_distribution,
            }
        })
        .collect();

    Ok(ItemAnalysisReport {
        exam_id,
        exam_name: exam.name.clone(),
        examinees: latest.len(),
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_thresholds() {
        assert_eq!(review_flag(Some(1.0), None).as_deref(), Some(REVIEW_FLAG));
        assert_eq!(
            review_flag(Some(0.19), Some(0.5)).as_deref(),
            Some(REVIEW_FLAG)
        );
        assert_eq!(
            review_flag(Some(0.5), Some(0.19)).as_deref(),
            Some(REVIEW_FLAG)
        );
        assert_eq!(review_flag(Some(0.5), Some(1.0)), None);
        assert_eq!(review_flag(Some(0.2), Some(0.2)), None);
        assert_eq!(review_flag(Some(0.9), None), None);
        assert_eq!(review_flag(None, None), None);
    }

    #[test]
    fn excerpt_truncates_on_chars() {
        assert_eq!(excerpt("short"), "short");
        let long = "é".repeat(70);
        assert_eq!(excerpt(&long).chars().count(), EXCERPT_CHARS + 1);
    }
}

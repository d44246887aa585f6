//! Classical item analysis.
//!
//! Difficulty is the proportion of responses that are correct. Discrimination
//! ranks examinees by total score (descending, ties by id ascending), takes
//! the top and bottom `k = max(1, round(0.27 n))` and returns the difference
//! in the item's proportion correct between the two groups. Unanswered items
//! count as incorrect.

use serde::{Deserialize, Serialize};

use crate::ids::QuestionId;
use crate::CoreError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Response {
    pub chosen: Option<u8>,
    pub correct: u8,
}

impl Response {
    pub fn is_correct(&self) -> bool {
        self.chosen == Some(self.correct)
    }
}

pub fn difficulty_index(responses: &[Response]) -> Result<f64, CoreError> {
    if responses.is_empty() {
        return Err(CoreError::NoData);
    }
    let correct = responses.iter().filter(|r| r.is_correct()).count();
    Ok(correct as f64 / responses.len() as f64)
}

/// Size of each extreme group for `n` examinees: `max(1, round(0.27 n))`,
/// rounding half up in integer arithmetic.
pub fn extreme_group_size(n: usize) -> usize {
    ((27 * n + 50) / 100).max(1)
}

/// `examinees` holds `(id, total raw score, answered this item correctly)`.
pub fn discrimination_index<K: Ord>(examinees: &[(K, u32, bool)]) -> Result<f64, CoreError> {
    let n = examinees.len();
    if n < 2 {
        return Err(CoreError::NoData);
    }
    let mut ranked: Vec<&(K, u32, bool)> = examinees.iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let k = extreme_group_size(n);
    let share = |group: &[&(K, u32, bool)]| group.iter().filter(|e| e.2).count() as f64 / k as f64;
    Ok(share(&ranked[..k]) - share(&ranked[n - k..]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemStats {
    pub question_id: QuestionId,
    pub n_responses: u32,
    /// Absent when there are no responses.
    pub difficulty: Option<f64>,
    /// Absent with fewer than two examinees.
    pub discrimination: Option<f64>,
    pub choice_distribution: Vec<u32>,
}

/// One examinee's row for a single item: `(id, total raw score, chosen choice)`.
pub fn item_stats<K: Ord + Clone>(
    question_id: QuestionId,
    choice_count: usize,
    correct: u8,
    rows: &[(K, u32, Option<u8>)],
) -> ItemStats {
    let mut choice_distribution = vec![0u32; choice_count];
    for (_, _, chosen) in rows {
        if let Some(slot) = chosen.and_then(|c| choice_distribution.get_mut(usize::from(c))) {
            *slot += 1;
        }
    }
    let responses: Vec<Response> = rows
        .iter()
        .map(|(_, _, chosen)| Response {
            chosen: *chosen,
            correct,
        })
        .collect();
    let per_examinee: Vec<(K, u32, bool)> = rows
        .iter()
        .map(|(id, total, chosen)| (id.clone(), *total, *chosen == Some(correct)))
        .collect();
    ItemStats {
        question_id,
        n_responses: rows.len() as u32,
        difficulty: difficulty_index(&responses).ok(),
        discrimination: discrimination_index(&per_examinee).ok(),
        choice_distribution,
    }
}

//! Deterministic presentation order.
//!
//! The generator, the bounded draw and the shuffle are fixed so that any
//! component holding the seed reproduces the same layout:
//!
//! * SplitMix64 as the raw stream.
//! * `below(n)` rejects draws `r >= n * floor(2^64 / n)` and returns `r % n`.
//! * Fisher-Yates from the last index down to 1.
//! * The question order is drawn first, then one choice order per question
//!   in authored question order.

use serde::{Deserialize, Serialize};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let span = 1u128 << 64;
        let zone = span / u128::from(n) * u128::from(n);
        loop {
            let r = self.next_u64();
            if u128::from(r) < zone {
                return r % n;
            }
        }
    }

    /// Fisher-Yates permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i as u64 + 1) as usize;
            out.swap(i, j);
        }
        out
    }
}

/// A seeded layout of an exam.
///
/// `question_order[d]` is the authored index of the question shown at display
/// position `d`. `choice_orders[q][d]` is the authored choice index shown at
/// display position `d` of authored question `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub question_order: Vec<usize>,
    pub choice_orders: Vec<Vec<usize>>,
}

impl Presentation {
    /// Display position of an authored choice.
    pub fn display_of_choice(&self, question: usize, authored: usize) -> Option<usize> {
        self.choice_orders
            .get(question)?
            .iter()
            .position(|&c| c == authored)
    }

    /// Authored index of the choice shown at `display`.
    pub fn authored_of_choice(&self, question: usize, display: usize) -> Option<usize> {
        self.choice_orders.get(question)?.get(display).copied()
    }
}

pub fn presentation_order(choice_counts: &[usize], seed: u64) -> Presentation {
    let mut rng = SplitMix64::new(seed);
    let question_order = rng.permutation(choice_counts.len());
    let choice_orders = choice_counts.iter().map(|&c| rng.permutation(c)).collect();
    Presentation {
        question_order,
        choice_orders,
    }
}

//! Uniform and conditional Dyck-path sampling.

use rand::Rng;

use super::dyck::{DyckPath, Step};
use crate::error::{Error, Result};

/// Default rejection budget for [`sample_dyck_given_k`].
pub const REJECTION_BUDGET: u64 = 1_000_000;

/// Uniform sample over all Dyck paths of half-length `s`.
///
/// Cycle-lemma construction: shuffle a word of `s` up and `s + 1` down
/// steps; exactly one rotation of it is a Dyck path followed by a down
/// step, and that rotation is equidistributed.
pub fn sample_uniform_dyck(s: usize, rng: &mut impl Rng) -> DyckPath {
    if s == 0 {
        return DyckPath::empty();
    }
    let n = 2 * s + 1;
    let mut word = vec![Step::Down; n];
    word[..s].fill(Step::Up);
    // Fisher-Yates.
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        word.swap(i, j);
    }
    // The valid rotation starts right after the first prefix minimum.
    let mut height = 0i64;
    let mut min_height = i64::MAX;
    let mut rotation = 0;
    for (i, step) in word.iter().enumerate() {
        height += if *step == Step::Up { 1 } else { -1 };
        if height < min_height {
            min_height = height;
            rotation = i + 1;
        }
    }
    let steps: Vec<Step> = word[rotation..]
        .iter()
        .chain(word[..rotation].iter())
        .take(2 * s)
        .copied()
        .collect();
    DyckPath::from_steps(steps).expect("cycle-lemma rotation is a Dyck word")
}

/// Uniform sample over Dyck paths of half-length `s` with exactly `k` odd
/// up steps, by rejection from the unconditional sampler.
pub fn sample_dyck_given_k(s: usize, k: usize, rng: &mut impl Rng) -> Result<DyckPath> {
    sample_dyck_given_k_budgeted(s, k, rng, REJECTION_BUDGET)
}

/// Same with an explicit rejection budget.
pub fn sample_dyck_given_k_budgeted(
    s: usize,
    k: usize,
    rng: &mut impl Rng,
    budget: u64,
) -> Result<DyckPath> {
    if s == 0 || k == 0 || k > s {
        return Err(Error::Domain(format!(
            "conditional sampler needs 1 <= k <= s, got s={s}, k={k}"
        )));
    }
    for _ in 0..budget {
        let path = sample_uniform_dyck(s, rng);
        if path.statistics().odd_up_count == k {
            return Ok(path);
        }
    }
    Err(Error::RejectionBudget { s, k, budget })
}

//! Dyck paths, their enumeration, and per-path statistics.

use std::fmt;

use crate::error::{Error, Result};

/// Half-lengths above this are refused by [`enumerate_dyck`]: the Catalan
/// number at 15 already exceeds 9.6 million paths.
pub const ENUMERATION_CAP: usize = 14;

/// One lattice step of a Dyck path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
}

/// A nonnegative lattice excursion: `2s` steps of `+-1`, every prefix sum
/// nonnegative, total sum zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

/// Statistics gathered in a single pass over a path.
///
/// Instants are indexed `1..=2s`; an "odd instant" is an odd index. The
/// two-step decomposition cuts the path into consecutive blocks of two
/// steps, classified as UU, UD, DU or DD; the number of UU blocks always
/// equals the number of DD blocks and the counts satisfy
///
/// ```text
/// 2l + k3 + k2 = s,    l + k2 = s - k,    l + k3 = k,
/// ```
///
/// with `k` the odd-up-step count, `l` the UU count, `k2` the DU count and
/// `k3` the UD count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathStatistics {
    /// `k`: number of up steps performed at an odd instant.
    pub odd_up_count: usize,
    /// Times the path touches level zero after the start.
    pub returns_to_zero: usize,
    /// Maximum level reached.
    pub max_level: usize,
    /// `l`: number of UU two-step blocks (equals the DD count).
    pub uu_count: usize,
    /// `k2`: number of DU two-step blocks.
    pub du_count: usize,
    /// `k3`: number of UD two-step blocks.
    pub ud_count: usize,
}

impl DyckPath {
    /// The empty path (half-length zero).
    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    /// Validates the excursion conditions: even length, prefixes
    /// nonnegative, balanced.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        if steps.len() % 2 != 0 {
            return Err(Error::Domain(format!(
                "Dyck path must have even length, got {}",
                steps.len()
            )));
        }
        let mut height: i64 = 0;
        for (i, step) in steps.iter().enumerate() {
            height += match step {
                Step::Up => 1,
                Step::Down => -1,
            };
            if height < 0 {
                return Err(Error::Domain(format!(
                    "negative prefix sum after step {}",
                    i + 1
                )));
            }
        }
        if height != 0 {
            return Err(Error::Domain(format!(
                "path does not return to zero (final level {height})"
            )));
        }
        Ok(DyckPath { steps })
    }

    /// Parses a word over the alphabet `U`/`D`.
    pub fn parse(word: &str) -> Result<Self> {
        let steps = word
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::Up),
                'D' | 'd' => Ok(Step::Down),
                other => Err(Error::Domain(format!("unexpected step character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_steps(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `s`: half the number of steps.
    pub fn half_length(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// All statistics in one pass.
    pub fn statistics(&self) -> PathStatistics {
        let mut height: usize = 0;
        let mut max_level = 0;
        let mut returns = 0;
        let mut odd_up = 0;
        for (idx, step) in self.steps.iter().enumerate() {
            let instant = idx + 1;
            match step {
                Step::Up => {
                    height += 1;
                    if instant % 2 == 1 {
                        odd_up += 1;
                    }
                }
                Step::Down => height -= 1,
            }
            max_level = max_level.max(height);
            if height == 0 {
                returns += 1;
            }
        }
        let (mut uu, mut du, mut ud) = (0, 0, 0);
        for pair in self.steps.chunks_exact(2) {
            match (pair[0], pair[1]) {
                (Step::Up, Step::Up) => uu += 1,
                (Step::Down, Step::Up) => du += 1,
                (Step::Up, Step::Down) => ud += 1,
                (Step::Down, Step::Down) => {}
            }
        }
        PathStatistics {
            odd_up_count: odd_up,
            returns_to_zero: returns,
            max_level,
            uu_count: uu,
            du_count: du,
            ud_count: ud,
        }
    }

    /// The sub-Dyck path of the two-step decomposition: UU blocks become up
    /// steps, DD blocks become down steps, UD and DU blocks are deleted.
    ///
    /// The result has half-length `l` (the UU count) and may be empty.
    pub fn uu_dd_subpath(&self) -> DyckPath {
        let mut steps = Vec::new();
        for pair in self.steps.chunks_exact(2) {
            match (pair[0], pair[1]) {
                (Step::Up, Step::Up) => steps.push(Step::Up),
                (Step::Down, Step::Down) => steps.push(Step::Down),
                _ => {}
            }
        }
        DyckPath::from_steps(steps)
            .expect("UU/DD contraction of a Dyck path is again a Dyck path")
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            f.write_str(match step {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

/// Streams every Dyck path of half-length `s` exactly once, in lexicographic
/// step order with `U < D`. Refuses `s` above [`ENUMERATION_CAP`].
pub fn enumerate_dyck(s: usize) -> Result<DyckEnumeration> {
    enumerate_dyck_capped(s, ENUMERATION_CAP)
}

/// Same as [`enumerate_dyck`] with an explicit cap.
pub fn enumerate_dyck_capped(s: usize, cap: usize) -> Result<DyckEnumeration> {
    if s > cap {
        return Err(Error::EnumerationCap { requested: s, cap });
    }
    // Lexicographically smallest word: all ups, then all downs.
    let mut word = vec![Step::Up; s];
    word.extend(std::iter::repeat(Step::Down).take(s));
    Ok(DyckEnumeration { word: Some(word) })
}

/// Single-consumer stream over the paths; see [`enumerate_dyck`].
pub struct DyckEnumeration {
    word: Option<Vec<Step>>,
}

impl DyckEnumeration {
    /// Advances `word` to its lexicographic successor among Dyck words.
    /// Returns false when the current word is the last one.
    fn advance(word: &mut [Step]) -> bool {
        let n = word.len();
        // Height just before each candidate position, scanned right to left.
        let mut heights = vec![0i64; n];
        let mut h = 0i64;
        for i in 0..n {
            heights[i] = h;
            h += if word[i] == Step::Up { 1 } else { -1 };
        }
        for i in (0..n).rev() {
            if word[i] != Step::Up {
                continue;
            }
            // Flip this Up to Down; the prefix height must stay nonnegative
            // and the remaining slots must be able to close the path.
            let h_after = heights[i] - 1;
            let remaining = (n - i - 1) as i64;
            if h_after < 0 || h_after > remaining {
                continue;
            }
            word[i] = Step::Down;
            // Smallest completion: as many ups as the balance allows, then downs.
            let ups = ((remaining - h_after) / 2) as usize;
            for (j, slot) in word[i + 1..].iter_mut().enumerate() {
                *slot = if j < ups { Step::Up } else { Step::Down };
            }
            return true;
        }
        false
    }
}

impl Iterator for DyckEnumeration {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let word = self.word.as_mut()?;
        let item = DyckPath { steps: word.clone() };
        if item.steps.is_empty() || !Self::advance(word) {
            self.word = None;
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::catalan;
    use num_traits::ToPrimitive;

    #[test]
    fn rejects_invalid_words() {
        assert!(DyckPath::parse("UDD").is_err()); // odd length
        assert!(DyckPath::parse("DU").is_err()); // negative prefix
        assert!(DyckPath::parse("UUDU").is_err()); // unbalanced
        assert!(DyckPath::parse("UXDD").is_err());
        assert!(DyckPath::parse("").is_ok());
    }

    #[test]
    fn statistics_of_small_words() {
        let st = DyckPath::parse("UDUD").unwrap().statistics();
        assert_eq!(st.odd_up_count, 2); // ups at instants 1 and 3
        assert_eq!(st.ud_count, 2);
        assert_eq!(st.uu_count, 0);

        let st = DyckPath::parse("UUDD").unwrap().statistics();
        assert_eq!(st.odd_up_count, 1);
        assert_eq!(st.uu_count, 1);
        assert_eq!(st.returns_to_zero, 1);
        assert_eq!(st.max_level, 2);
    }

    #[test]
    fn enumeration_of_tiny_half_lengths() {
        let paths: Vec<String> = enumerate_dyck(1).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(paths, vec!["UD"]);

        let paths: Vec<String> = enumerate_dyck(2).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(paths, vec!["UUDD", "UDUD"]);

        assert_eq!(enumerate_dyck(3).unwrap().count(), 5);
    }

    #[test]
    fn enumeration_matches_catalan_counts() {
        for s in 0..=10usize {
            let count = enumerate_dyck(s).unwrap().count();
            assert_eq!(count, catalan(s as u64).to_usize().unwrap(), "s = {s}");
        }
    }

    #[test]
    fn enumeration_is_strictly_increasing_and_unique() {
        for s in 1..=7usize {
            let words: Vec<String> = enumerate_dyck(s).unwrap().map(|p| p.to_string()).collect();
            for pair in words.windows(2) {
                assert!(pair[0] < pair[1], "not increasing: {} vs {}", pair[0], pair[1]);
            }
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        match enumerate_dyck(15) {
            Err(Error::EnumerationCap { requested: 15, cap: 14 }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
        assert!(enumerate_dyck_capped(15, 15).is_ok());
    }

    #[test]
    fn two_step_relations_hold_on_all_paths_up_to_8() {
        for s in 1..=8usize {
            for path in enumerate_dyck(s).unwrap() {
                let st = path.statistics();
                assert_eq!(2 * st.uu_count + st.ud_count + st.du_count, s);
                assert_eq!(st.uu_count + st.du_count, s - st.odd_up_count);
                assert_eq!(st.uu_count + st.ud_count, st.odd_up_count);
                assert!(st.max_level <= s);
                assert!((1..=s).contains(&st.odd_up_count));
            }
        }
    }

    #[test]
    fn subpath_examples() {
        assert!(DyckPath::parse("UDUDUD").unwrap().uu_dd_subpath().is_empty());
        assert_eq!(DyckPath::parse("UUDD").unwrap().uu_dd_subpath().to_string(), "UD");
    }

    #[test]
    fn subpath_is_valid_with_half_length_l() {
        for s in 1..=8usize {
            for path in enumerate_dyck(s).unwrap() {
                let st = path.statistics();
                let sub = path.uu_dd_subpath();
                assert_eq!(sub.half_length(), st.uu_count);
                // from_steps inside uu_dd_subpath already validated it.
            }
        }
    }
}

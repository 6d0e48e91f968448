//! Words, their ascent statistics, reduction and classical pattern containment.
//!
//! Positions in the public API are 1-based: `ascent_positions("0011")` reports
//! the single ascent at position 2.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A finite sequence of bits. Ordered lexicographically with `0 < 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::domain(format!("binary word contains letter {b}")));
        }
        Ok(BinaryWord(bits))
    }

    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    /// Concatenates runs `(bit, length)`. Runs of length zero are skipped.
    pub fn from_runs<I: IntoIterator<Item = (u8, usize)>>(runs: I) -> Self {
        let mut bits = Vec::new();
        for (bit, len) in runs {
            debug_assert!(bit <= 1);
            bits.extend(std::iter::repeat_n(bit, len));
        }
        BinaryWord(bits)
    }

    /// The word whose `i`-th letter is bit `len - i` of `mask`, so that counting
    /// `mask` upward walks words in lexicographic order.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        BinaryWord((0..len).map(|i| ((mask >> (len - 1 - i)) & 1) as u8).collect())
    }

    pub(crate) fn from_vec_unchecked(bits: Vec<u8>) -> Self {
        BinaryWord(bits)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn ascents(&self) -> usize {
        asc(&self.0)
    }

    pub fn leading_ones(&self) -> usize {
        self.0.iter().take_while(|&&b| b == 1).count()
    }

    pub fn trailing_zeros(&self) -> usize {
        self.0.iter().rev().take_while(|&&b| b == 0).count()
    }

    /// Letters in reverse index order, `b_n ... b_2 b_1`.
    pub fn reverse(&self) -> Self {
        BinaryWord(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        BinaryWord(self.0.iter().map(|&b| 1 - b).collect())
    }

    /// Run-length encoding as `(bit, length)` pairs.
    pub fn runs(&self) -> Vec<(u8, usize)> {
        let mut runs: Vec<(u8, usize)> = Vec::new();
        for &b in &self.0 {
            match runs.last_mut() {
                Some((bit, len)) if *bit == b => *len += 1,
                _ => runs.push((b, 1)),
            }
        }
        runs
    }

    pub fn to_gen_word(&self) -> GenWord {
        GenWord(self.0.iter().map(|&b| u32::from(b)).collect())
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ε" || s == "-" {
            return Ok(BinaryWord::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse {
                    input: s.to_string(),
                    reason: format!("`{c}` is not a bit"),
                }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BinaryWord)
    }
}

impl TryFrom<String> for BinaryWord {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BinaryWord> for String {
    fn from(w: BinaryWord) -> String {
        w.to_string()
    }
}

/// A word over the nonnegative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenWord(Vec<u32>);

impl GenWord {
    /// Builds a word, rejecting letters above the default alphabet cap.
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        Self::with_cap(letters, Limits::default().max_letter)
    }

    pub fn with_cap(letters: Vec<u32>, cap: u32) -> Result<Self> {
        if let Some(&l) = letters.iter().find(|&&l| l > cap) {
            return Err(Error::domain(format!("letter {l} exceeds the alphabet cap {cap}")));
        }
        Ok(GenWord(letters))
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u32>) -> Self {
        GenWord(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ascents(&self) -> usize {
        asc(&self.0)
    }
}

impl fmt::Display for GenWord {
    /// Single digits are concatenated (`0120`); larger alphabets are comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l < 10) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for GenWord {
    type Err = Error;

    /// Accepts `"0120"` (one digit per letter) or `"0,1,12,0"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "-" {
            return Ok(GenWord(Vec::new()));
        }
        let bad = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let letters = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|e| bad(e.to_string())))
                .collect::<Result<Vec<u32>>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| bad(format!("`{c}` is not a digit"))))
                .collect::<Result<Vec<u32>>>()?
        };
        GenWord::new(letters)
    }
}

impl From<&BinaryWord> for GenWord {
    fn from(b: &BinaryWord) -> Self {
        b.to_gen_word()
    }
}

/// A word that equals its own reduction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(GenWord);

impl Pattern {
    pub fn new(word: GenWord) -> Result<Self> {
        let reduced = reduce(&word);
        if reduced.0 != word {
            return Err(Error::domain(format!(
                "{word} is not a pattern (reduces to {})",
                reduced.0
            )));
        }
        Ok(Pattern(word))
    }

    pub fn p001() -> Self {
        Pattern(GenWord(vec![0, 0, 1]))
    }

    pub fn p210() -> Self {
        Pattern(GenWord(vec![2, 1, 0]))
    }

    pub fn word(&self) -> &GenWord {
        &self.0
    }

    pub fn letters(&self) -> &[u32] {
        &self.0 .0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::new(s.parse()?)
    }
}

/// 1-based positions `i` with `w_i < w_{i+1}`.
pub fn ascent_positions<T: Ord>(w: &[T]) -> Vec<usize> {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] < p[1])
        .map(|(i, _)| i + 1)
        .collect()
}

/// 1-based positions `i` with `w_i > w_{i+1}`.
pub fn descent_positions<T: Ord>(w: &[T]) -> Vec<usize> {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| i + 1)
        .collect()
}

pub fn asc<T: Ord>(w: &[T]) -> usize {
    w.windows(2).filter(|p| p[0] < p[1]).count()
}

pub fn des<T: Ord>(w: &[T]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Number of adjacent equal pairs.
pub fn plateaus<T: Ord>(w: &[T]) -> usize {
    w.windows(2).filter(|p| p[0] == p[1]).count()
}

/// Replaces the `i`-th smallest distinct letter by `i - 1`.
pub fn reduce(w: &GenWord) -> Pattern {
    let Some(&max) = w.0.iter().max() else {
        return Pattern(GenWord(Vec::new()));
    };
    // Letters are capped at construction, so a dense rank table is cheap.
    let mut rank = vec![u32::MAX; max as usize + 1];
    for &l in &w.0 {
        rank[l as usize] = 0;
    }
    for (next, r) in rank.iter_mut().filter(|r| **r == 0).enumerate() {
        *r = next as u32;
    }
    Pattern(GenWord(w.0.iter().map(|&l| rank[l as usize]).collect()))
}

/// Whether some subsequence of `w` reduces to `p`.
///
/// Dispatches to linear scans for `001` and `210`.
pub fn contains_pattern(w: &[u32], p: &Pattern) -> bool {
    match p.letters() {
        [0, 0, 1] => contains_001(w),
        [2, 1, 0] => contains_210(w),
        _ => contains_pattern_generic(w, p),
    }
}

/// Backtracking search over subsequence embeddings.
pub fn contains_pattern_generic(w: &[u32], p: &Pattern) -> bool {
    fn extend(w: &[u32], p: &[u32], start: usize, chosen: &mut Vec<usize>) -> bool {
        let depth = chosen.len();
        if depth == p.len() {
            return true;
        }
        // Leave room for the remaining pattern letters.
        let last = w.len() + depth + 1 - p.len();
        for i in start..last {
            let consistent = chosen
                .iter()
                .enumerate()
                .all(|(d, &j)| p[d].cmp(&p[depth]) == w[j].cmp(&w[i]));
            if consistent {
                chosen.push(i);
                if extend(w, p, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if p.len() > w.len() {
        return p.is_empty();
    }
    extend(w, p.letters(), 0, &mut Vec::with_capacity(p.len()))
}

/// `i < j < l` with `w_i = w_j < w_l`.
pub fn contains_001(w: &[u32]) -> bool {
    let mut seen = std::collections::HashSet::new();
    let mut min_repeated: Option<u32> = None;
    for &l in w {
        if min_repeated.is_some_and(|m| m < l) {
            return true;
        }
        if !seen.insert(l) {
            min_repeated = Some(min_repeated.map_or(l, |m| m.min(l)));
        }
    }
    false
}

/// `i < j < l` with `w_i > w_j > w_l`.
pub fn contains_210(w: &[u32]) -> bool {
    let n = w.len();
    if n < 3 {
        return false;
    }
    let mut suffix_min = vec![u32::MAX; n + 1];
    for i in (0..n).rev() {
        suffix_min[i] = suffix_min[i + 1].min(w[i]);
    }
    let mut prefix_max = w[0];
    for j in 1..n - 1 {
        if prefix_max > w[j] && suffix_min[j + 1] < w[j] {
            return true;
        }
        prefix_max = prefix_max.max(w[j]);
    }
    false
}

/// `w_1 = 0` and each later letter is at most one more than the ascent count
/// of the prefix before it. The empty word qualifies.
pub fn is_ascent_sequence(w: &[u32]) -> bool {
    let Some((&first, _)) = w.split_first() else {
        return true;
    };
    if first != 0 {
        return false;
    }
    let mut ascents = 0u32;
    for i in 1..w.len() {
        if w[i] > ascents + 1 {
            return false;
        }
        if w[i - 1] < w[i] {
            ascents += 1;
        }
    }
    true
}

/// Restricted growth function: the first occurrence of each `x >= 1` comes
/// after an occurrence of `x - 1`.
pub fn is_rgf(w: &[u32]) -> bool {
    let mut max: Option<u32> = None;
    for &l in w {
        let bound = max.map_or(0, |m| m + 1);
        if l > bound {
            return false;
        }
        max = Some(max.map_or(l, |m| m.max(l)));
    }
    true
}

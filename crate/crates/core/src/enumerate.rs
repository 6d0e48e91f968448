//! Generators for every counted family, in lexicographic order.
//!
//! Brute-force generators ([`all_binary_words`], [`AscentCensus`]) serve as
//! oracles for the structured ones ([`words_with_ascents`],
//! [`canonical_avoiders`]). Generators are lazy except where the construction
//! has to sort its output.

use std::fmt;

use itertools::{Combinations, Itertools};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::word::{contains_pattern, BinaryWord, GenWord, Pattern};

/// Parameters of `B^{(j)}_k(n)`, or of `B^{(j)}(n)` when `k` is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordFamilySpec {
    pub n: usize,
    pub k: Option<usize>,
    pub j: u32,
}

impl WordFamilySpec {
    pub fn new(n: usize, k: Option<usize>, j: u32) -> Self {
        WordFamilySpec { n, k, j }
    }

    pub fn contains(&self, w: &BinaryWord) -> bool {
        w.len() == self.n && self.k.is_none_or(|k| w.ones() == k) && w.ascents() <= self.j as usize
    }

    /// Structured generation, sorted.
    pub fn generate(&self) -> std::vec::IntoIter<BinaryWord> {
        let mut words: Vec<BinaryWord> = match self.k {
            Some(k) => structured(self.n, k, self.j),
            None => (0..=self.n).flat_map(|k| structured(self.n, k, self.j)).collect(),
        };
        words.sort_unstable();
        words.into_iter()
    }

    /// Filters all `2^n` words.
    pub fn brute_force(&self, limits: &Limits) -> Result<impl Iterator<Item = BinaryWord>> {
        let spec = *self;
        Ok(all_binary_words(self.n, limits)?.filter(move |w| spec.contains(w)))
    }
}

/// Every word of length `n`, from `0^n` to `1^n`.
pub fn all_binary_words(n: usize, limits: &Limits) -> Result<AllBinaryWords> {
    limits.check_word_len(n)?;
    if n >= 64 {
        return Err(Error::limit("word length", n, 63));
    }
    Ok(AllBinaryWords {
        len: n,
        next: 0,
        end: 1u64 << n,
    })
}

#[derive(Debug, Clone)]
pub struct AllBinaryWords {
    len: usize,
    next: u64,
    end: u64,
}

impl Iterator for AllBinaryWords {
    type Item = BinaryWord;

    fn next(&mut self) -> Option<BinaryWord> {
        if self.next == self.end {
            return None;
        }
        let w = BinaryWord::from_mask(self.next, self.len);
        self.next += 1;
        Some(w)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for AllBinaryWords {}

/// `B^{(j)}_k(n)`: words of length `n` with `k` ones and at most `j` ascents.
///
/// Built from run lengths `1^{x_0} 0^{y_1} 1^{x_1} ... 0^{y_r} 1^{x_r} 0^{y_0}`
/// with `x_0, y_0 >= 0` and the inner runs positive, then sorted.
pub fn words_with_ascents(n: usize, k: usize, j: u32) -> std::vec::IntoIter<BinaryWord> {
    let words = WordFamilySpec::new(n, Some(k), j).generate();
    #[cfg(debug_assertions)]
    if n <= 8 {
        let spec = WordFamilySpec::new(n, Some(k), j);
        let filtered: Vec<BinaryWord> = spec
            .brute_force(&Limits::default())
            .expect("n is within the default cap")
            .collect();
        debug_assert_eq!(words.as_slice(), filtered.as_slice());
    }
    words
}

fn structured(n: usize, k: usize, j: u32) -> Vec<BinaryWord> {
    if k > n {
        return Vec::new();
    }
    let zeros = n - k;
    let max_r = (j as usize).min(k).min(zeros);
    let mut out = Vec::new();
    for r in 0..=max_r {
        // ones: x_0 may be empty; zeros: y_0 (the trailing run) may be empty.
        let mut one_mins = vec![1; r + 1];
        one_mins[0] = 0;
        let mut zero_mins = vec![1; r + 1];
        zero_mins[r] = 0;
        let ones_runs = compositions(k, &one_mins);
        let zero_runs = compositions(zeros, &zero_mins);
        for xs in &ones_runs {
            for ys in &zero_runs {
                let mut runs = Vec::with_capacity(2 * r + 2);
                runs.push((1, xs[0]));
                for i in 1..=r {
                    runs.push((0, ys[i - 1]));
                    runs.push((1, xs[i]));
                }
                runs.push((0, ys[r]));
                out.push(BinaryWord::from_runs(runs));
            }
        }
    }
    out
}

/// All ways to write `total` as an ordered sum whose `i`-th part is at least `mins[i]`.
fn compositions(total: usize, mins: &[usize]) -> Vec<Vec<usize>> {
    fn go(left: usize, mins: &[usize], acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match mins {
            [] => {
                if left == 0 {
                    out.push(acc.clone());
                }
            }
            [last] => {
                if left >= *last {
                    acc.push(left);
                    out.push(acc.clone());
                    acc.pop();
                }
            }
            [first, rest @ ..] => {
                let reserve: usize = rest.iter().sum();
                if left < first + reserve {
                    return;
                }
                for part in *first..=left - reserve {
                    acc.push(part);
                    go(left - part, rest, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(total, mins, &mut Vec::with_capacity(mins.len()), &mut out);
    out
}

/// Brute-force tally of all binary words up to some length by
/// `(length, ones, ascents)`.
///
/// Walks every bitmask, so it shares nothing with the closed form, the
/// recurrences or the structured generator.
#[derive(Debug, Clone)]
pub struct AscentCensus {
    max_len: usize,
    // counts[len][ones][ascents]
    counts: Vec<Vec<Vec<u64>>>,
}

impl AscentCensus {
    pub fn build(max_len: usize, limits: &Limits) -> Result<Self> {
        limits.check_word_len(max_len)?;
        if max_len >= 40 {
            return Err(Error::limit("census word length", max_len, 39));
        }
        let counts = (0..=max_len)
            .map(|len| {
                let mut table = vec![vec![0u64; len / 2 + 2]; len + 1];
                let inner = if len > 1 { (1u64 << (len - 1)) - 1 } else { 0 };
                for mask in 0..1u64 << len {
                    let ones = mask.count_ones() as usize;
                    // bit p holds letter len - p; an ascent is a 0 followed by a 1.
                    let ascents = ((!mask >> 1) & mask & inner).count_ones() as usize;
                    table[ones][ascents] += 1;
                }
                table
            })
            .collect();
        Ok(AscentCensus { max_len, counts })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Words of length `n` with `k` ones and at most `j` ascents; `Some(0)`
    /// outside the triangle, `None` past `max_len`.
    pub fn count(&self, n: i64, k: i64, j: u32) -> Option<u64> {
        if n > self.max_len as i64 {
            return None;
        }
        if n < 0 || k < 0 || k > n {
            return Some(0);
        }
        let row = &self.counts[n as usize][k as usize];
        Some(row.iter().take(j as usize + 1).sum())
    }

    /// Words of length `n` with exactly `k` ones.
    pub fn with_ones(&self, n: i64, k: i64) -> Option<u64> {
        self.count(n, k, u32::MAX - 1)
    }
}

/// All ascent sequences of length `n` in lexicographic order.
pub fn ascent_sequences(n: usize, limits: &Limits) -> Result<AscentSequences> {
    limits.check_ascseq_len(n)?;
    Ok(AscentSequences {
        letters: vec![0; n],
        prefix_asc: vec![0; n],
        state: SeqState::Fresh,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SeqState {
    Fresh,
    Running,
    Done,
}

/// Odometer over ascent sequences: bump the rightmost letter still below its
/// bound, zero everything after it.
#[derive(Debug, Clone)]
pub struct AscentSequences {
    letters: Vec<u32>,
    // prefix_asc[i] = asc(letters[..=i])
    prefix_asc: Vec<u32>,
    state: SeqState,
}

impl Iterator for AscentSequences {
    type Item = GenWord;

    fn next(&mut self) -> Option<GenWord> {
        match self.state {
            SeqState::Done => return None,
            SeqState::Fresh => {
                self.state = if self.letters.is_empty() {
                    SeqState::Done
                } else {
                    SeqState::Running
                };
                return Some(GenWord::from_vec_unchecked(self.letters.clone()));
            }
            SeqState::Running => {}
        }
        let n = self.letters.len();
        let Some(i) = (1..n).rev().find(|&i| self.letters[i] <= self.prefix_asc[i - 1]) else {
            self.state = SeqState::Done;
            return None;
        };
        self.letters[i] += 1;
        self.prefix_asc[i] = self.prefix_asc[i - 1] + u32::from(self.letters[i - 1] < self.letters[i]);
        for t in i + 1..n {
            self.letters[t] = 0;
            self.prefix_asc[t] = self.prefix_asc[t - 1];
        }
        Some(GenWord::from_vec_unchecked(self.letters.clone()))
    }
}

/// Ascent sequences of length `n` avoiding every pattern in `patterns`,
/// optionally restricted to exactly `k` ascents.
pub fn avoiders(n: usize, patterns: &[Pattern], k: Option<usize>, limits: &Limits) -> Result<Avoiders> {
    Ok(Avoiders {
        inner: ascent_sequences(n, limits)?,
        patterns: patterns.to_vec(),
        k,
    })
}

#[derive(Debug, Clone)]
pub struct Avoiders {
    inner: AscentSequences,
    patterns: Vec<Pattern>,
    k: Option<usize>,
}

impl Iterator for Avoiders {
    type Item = GenWord;

    fn next(&mut self) -> Option<GenWord> {
        let Avoiders { inner, patterns, k } = self;
        inner.find(|w| k.is_none_or(|k| w.ascents() == k) && patterns.iter().all(|p| !contains_pattern(w.letters(), p)))
    }
}

/// `A_{{001,210},k}(n)` built directly: `01...k` followed by `k`'s, or
/// `01...k^y x^{n-k-y}` with `1 <= y < n-k` and `0 <= x < k`.
pub fn canonical_avoiders(n: usize, k: usize) -> Result<std::vec::IntoIter<GenWord>> {
    if n == 0 || k >= n {
        return Err(Error::domain(format!(
            "a length-{n} ascent sequence cannot have {k} ascents"
        )));
    }
    let staircase: Vec<u32> = (0..k as u32).collect();
    let build = |y: usize, tail: Option<u32>| {
        let mut letters = staircase.clone();
        letters.extend(std::iter::repeat_n(k as u32, y));
        if let Some(x) = tail {
            letters.extend(std::iter::repeat_n(x, n - k - y));
        }
        GenWord::from_vec_unchecked(letters)
    };
    let mut out = vec![build(n - k, None)];
    for y in 1..n - k {
        for x in 0..k as u32 {
            out.push(build(y, Some(x)));
        }
    }
    out.sort_unstable();
    Ok(out.into_iter())
}

/// A `k`-subset of `{1..n}` meeting `{1..n-k}` in at most `j` elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RestrictedSubset {
    elements: Vec<u32>,
    n: u32,
    k: u32,
    j: u32,
}

impl RestrictedSubset {
    pub fn new(mut elements: Vec<u32>, n: u32, k: u32, j: u32) -> Result<Self> {
        elements.sort_unstable();
        if elements.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::domain("subset has repeated elements"));
        }
        if elements.iter().any(|&e| e == 0 || e > n) {
            return Err(Error::domain(format!("subset {elements:?} is not inside 1..={n}")));
        }
        if elements.len() != k as usize {
            return Err(Error::domain(format!("subset {elements:?} does not have {k} elements")));
        }
        let low = elements.iter().filter(|&&e| e <= n - k).count();
        if low > j as usize {
            return Err(Error::domain(format!(
                "subset {elements:?} meets 1..={} in {low} > {j} elements",
                n - k
            )));
        }
        Ok(RestrictedSubset { elements, n, k, j })
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn j(&self) -> u32 {
        self.j
    }
}

impl fmt::Display for RestrictedSubset {
    /// Space-separated elements; the empty subset prints as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elements.is_empty() {
            return f.write_str("{}");
        }
        f.write_str(&self.elements.iter().join(" "))
    }
}

/// `C(n,k)_j` in lexicographic order of the sorted element lists.
pub fn restricted_subsets(n: u32, k: u32, j: u32) -> Result<RestrictedSubsets> {
    if k > n {
        return Err(Error::domain(format!("need k <= n, got k = {k}, n = {n}")));
    }
    Ok(RestrictedSubsets {
        inner: (1..=n).combinations(k as usize),
        n,
        k,
        j,
    })
}

pub struct RestrictedSubsets {
    inner: Combinations<std::ops::RangeInclusive<u32>>,
    n: u32,
    k: u32,
    j: u32,
}

impl Iterator for RestrictedSubsets {
    type Item = RestrictedSubset;

    fn next(&mut self) -> Option<RestrictedSubset> {
        let bound = self.n - self.k;
        let j = self.j as usize;
        let elements = self
            .inner
            .find(|c| c.iter().take_while(|&&e| e <= bound).count() <= j)?;
        Some(RestrictedSubset {
            elements,
            n: self.n,
            k: self.k,
            j: self.j,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(it: impl Iterator<Item = BinaryWord>) -> Vec<String> {
        it.map(|w| w.to_string()).collect()
    }

    fn seqs(it: impl Iterator<Item = GenWord>) -> Vec<String> {
        it.map(|w| w.to_string()).collect()
    }

    #[test]
    fn all_words_small() {
        let l = Limits::default();
        assert_eq!(words(all_binary_words(2, &l).unwrap()), ["00", "01", "10", "11"]);
        assert_eq!(words(all_binary_words(0, &l).unwrap()), [""]);
        assert_eq!(all_binary_words(4, &l).unwrap().len(), 16);
        assert!(matches!(all_binary_words(21, &l), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn words_with_ascents_examples() {
        let b46 = words(words_with_ascents(6, 4, 1));
        let mut expected = vec![
            "111100", "111010", "111001", "110110", "110011", "101110", "100111", "001111", "011110",
        ];
        expected.sort();
        assert_eq!(b46, expected);
        for n in 0..7 {
            for k in 0..=n {
                let zero: Vec<BinaryWord> = words_with_ascents(n, k, 0).collect();
                assert_eq!(zero, vec![BinaryWord::from_runs([(1, k), (0, n - k)])]);
            }
        }
        assert_eq!(words(words_with_ascents(3, 1, 2)), ["001", "010", "100"]);
        assert_eq!(words_with_ascents(3, 4, 1).count(), 0);
    }

    #[test]
    fn family_without_k_spans_all_ones_counts() {
        let spec = WordFamilySpec::new(4, None, 1);
        let got: Vec<BinaryWord> = spec.generate().collect();
        let filtered: Vec<BinaryWord> = spec.brute_force(&Limits::default()).unwrap().collect();
        assert_eq!(got, filtered);
        assert_eq!(got.len(), 1 + 4 + 5 + 4 + 1);
    }

    #[test]
    fn compositions_respect_minimums() {
        assert_eq!(compositions(3, &[0, 1]), vec![vec![0, 3], vec![1, 2], vec![2, 1]]);
        assert!(compositions(1, &[1, 1]).is_empty());
        assert_eq!(compositions(0, &[0]), vec![vec![0]]);
    }

    #[test]
    fn census_matches_filtering() {
        let l = Limits::default();
        let census = AscentCensus::build(10, &l).unwrap();
        for n in 0..=10 {
            for k in 0..=n {
                for j in 0..4 {
                    let spec = WordFamilySpec::new(n, Some(k), j);
                    let filtered = spec.brute_force(&l).unwrap().count() as u64;
                    assert_eq!(census.count(n as i64, k as i64, j), Some(filtered));
                }
            }
        }
        assert_eq!(census.count(11, 2, 1), None);
        assert_eq!(census.count(5, 6, 1), Some(0));
        assert_eq!(census.with_ones(6, 3), Some(20));
    }

    #[test]
    fn ascent_sequence_counts() {
        let l = Limits::default();
        let length4 = seqs(ascent_sequences(4, &l).unwrap());
        let mut listed = vec![
            "0000", "0001", "0010", "0100", "0011", "0101", "0110", "0111", "0012", "0102", "0112", "0120", "0121",
            "0122", "0123",
        ];
        listed.sort();
        assert_eq!(length4, listed);
        assert_eq!(seqs(ascent_sequences(1, &l).unwrap()), ["0"]);
        assert_eq!(seqs(ascent_sequences(0, &l).unwrap()), [""]);
        assert_eq!(ascent_sequences(5, &l).unwrap().count(), 53);
        assert!(ascent_sequences(13, &l).is_err());
    }

    #[test]
    fn avoider_examples() {
        let l = Limits::default();
        let p = [Pattern::p001(), Pattern::p210()];
        assert_eq!(
            seqs(avoiders(4, &p, None, &l).unwrap()),
            ["0000", "0100", "0110", "0111", "0120", "0121", "0122", "0123"]
        );
        assert_eq!(seqs(avoiders(4, &p, Some(1), &l).unwrap()), ["0100", "0110", "0111"]);
        assert_eq!(avoiders(4, &p, Some(4), &l).unwrap().count(), 0);
        assert_eq!(avoiders(6, &[], None, &l).unwrap().count(), 217);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(seqs(canonical_avoiders(4, 2).unwrap()), ["0120", "0121", "0122"]);
        assert_eq!(seqs(canonical_avoiders(4, 0).unwrap()), ["0000"]);
        assert_eq!(canonical_avoiders(5, 2).unwrap().count(), 5);
        assert!(canonical_avoiders(4, 4).is_err());
        assert!(canonical_avoiders(0, 0).is_err());
    }

    #[test]
    fn subset_examples() {
        let s: Vec<String> = restricted_subsets(4, 2, 1).unwrap().map(|s| s.to_string()).collect();
        assert_eq!(s, ["1 3", "1 4", "2 3", "2 4", "3 4"]);
        let s: Vec<String> = restricted_subsets(4, 2, 0).unwrap().map(|s| s.to_string()).collect();
        assert_eq!(s, ["3 4"]);
        assert_eq!(restricted_subsets(7, 3, 3).unwrap().count(), 35);
        assert_eq!(
            restricted_subsets(3, 0, 0)
                .unwrap()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
            ["{}"]
        );
        assert!(restricted_subsets(2, 3, 1).is_err());
        assert!(RestrictedSubset::new(vec![1, 2], 4, 2, 1).is_err());
        assert!(RestrictedSubset::new(vec![5], 4, 1, 1).is_err());
    }
}

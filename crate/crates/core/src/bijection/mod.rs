//! Executable bijections and sign-reversing involutions on the counted families.
//!
//! Every map works pointwise and validates its input; the exhaustive checks
//! that materialize whole domains live in [`verify`].

pub mod verify;

use std::fmt;

use crate::enumerate::RestrictedSubset;
use crate::error::{Error, Result};
use crate::word::{BinaryWord, GenWord};

/// Run decomposition `1^{lead} 0^{y_1} 1^{x_1} ... 0^{y_m} 1^{x_m} 0^{trail}`
/// with every inner run positive; `m` is the number of ascents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Blocks {
    pub lead: usize,
    // (zeros, ones) pairs
    pub inner: Vec<(usize, usize)>,
    pub trail: usize,
}

impl Blocks {
    pub fn of(b: &BinaryWord) -> Self {
        let mut runs = b.runs().into_iter().peekable();
        let lead = match runs.peek() {
            Some(&(1, len)) => {
                runs.next();
                len
            }
            _ => 0,
        };
        let mut inner = Vec::new();
        let mut trail = 0;
        while let Some((_, zeros)) = runs.next() {
            match runs.next() {
                Some((_, ones)) => inner.push((zeros, ones)),
                None => trail = zeros,
            }
        }
        Blocks { lead, inner, trail }
    }

    pub fn word(&self) -> BinaryWord {
        let mut runs = vec![(1, self.lead)];
        for &(zeros, ones) in &self.inner {
            runs.push((0, zeros));
            runs.push((1, ones));
        }
        runs.push((0, self.trail));
        BinaryWord::from_runs(runs)
    }
}

fn require_ascents(b: &BinaryWord, j: usize) -> Result<()> {
    if b.ascents() > j {
        return Err(Error::domain(format!("{b} has {} ascents, more than {j}", b.ascents())));
    }
    Ok(())
}

/// `b ↦ complement(reverse(b))`, taking `B_k(n)` onto `B_{n-k}(n)`.
pub fn sym_map(b: &BinaryWord) -> Result<BinaryWord> {
    require_ascents(b, 1)?;
    Ok(b.reverse().complement())
}

/// Removes `l` leading ones and `u` trailing zeros.
pub fn strip(b: &BinaryWord, l: usize, u: usize) -> Result<BinaryWord> {
    if b.leading_ones() < l || b.trailing_zeros() < u || l + u > b.len() {
        return Err(Error::domain(format!(
            "{b} does not start with {l} ones and end with {u} zeros"
        )));
    }
    Ok(BinaryWord::from_vec_unchecked(b.bits()[l..b.len() - u].to_vec()))
}

/// Prepends `l` ones and appends `u` zeros; the result must have at most one ascent.
pub fn unstrip(b: &BinaryWord, l: usize, u: usize) -> Result<BinaryWord> {
    let mut bits = vec![1; l];
    bits.extend_from_slice(b.bits());
    bits.extend(std::iter::repeat_n(0, u));
    let out = BinaryWord::from_vec_unchecked(bits);
    require_ascents(&out, 1)?;
    Ok(out)
}

/// `B_k(n) → A_{{001,210},k}(n+1)`.
///
/// `1^k 0^{n-k} ↦ 01...k^{n+1-k}` and
/// `1^{k-x} 0^y 1^x 0^{n-k-y} ↦ 01...k^y (k-x)^{n+1-k-y}`.
pub fn word_to_ascseq(b: &BinaryWord) -> Result<GenWord> {
    require_ascents(b, 1)?;
    let n = b.len();
    let k = b.ones();
    let blocks = Blocks::of(b);
    let mut letters: Vec<u32> = (0..k as u32).collect();
    match blocks.inner.first() {
        None => letters.extend(std::iter::repeat_n(k as u32, n + 1 - k)),
        Some(&(y, x)) => {
            letters.extend(std::iter::repeat_n(k as u32, y));
            letters.extend(std::iter::repeat_n((k - x) as u32, n + 1 - k - y));
        }
    }
    Ok(GenWord::from_vec_unchecked(letters))
}

/// Inverse of [`word_to_ascseq`]; rejects sequences not of the form
/// `01...k^{y} x^{m}` with `x < k`.
pub fn ascseq_to_word(w: &GenWord) -> Result<BinaryWord> {
    let letters = w.letters();
    let reject = || Error::domain(format!("{w} is not a {{001, 210}}-avoiding ascent sequence"));
    let stairs = letters.iter().enumerate().take_while(|&(i, &l)| l == i as u32).count();
    if stairs == 0 {
        return Err(reject());
    }
    let k = stairs - 1;
    let n = letters.len() - 1;
    let rest = &letters[stairs..];
    let extra_tops = rest.iter().take_while(|&&l| l == k as u32).count();
    let y = 1 + extra_tops;
    let tail = &rest[extra_tops..];
    let Some(&bottom) = tail.first() else {
        return Ok(BinaryWord::from_runs([(1, k), (0, n - k)]));
    };
    if bottom >= k as u32 || tail.iter().any(|&l| l != bottom) {
        return Err(reject());
    }
    let x = k - bottom as usize;
    Ok(BinaryWord::from_runs([(1, k - x), (0, y), (1, x), (0, n - k - y)]))
}

/// `B^{(j)}_k(n) → C(n,k)_j`.
///
/// Zero runs `y_i` become the partial sums forming `S ∩ {1..n-k}`; the partial
/// sums of one runs `x_i` are the elements of `{1..k}` missing from the
/// shifted upper part `S ∩ {n-k+1..n}`.
pub fn word_to_subset(b: &BinaryWord, j: u32) -> Result<RestrictedSubset> {
    require_ascents(b, j as usize)?;
    let n = b.len();
    let k = b.ones();
    let blocks = Blocks::of(b);
    let mut elements = Vec::with_capacity(k);
    let mut y_sum = 0;
    for &(y, _) in &blocks.inner {
        y_sum += y;
        elements.push(y_sum as u32);
    }
    let mut gaps = Vec::with_capacity(blocks.inner.len());
    let mut x_sum = 0;
    for &(_, x) in &blocks.inner {
        x_sum += x;
        gaps.push(x_sum);
    }
    elements.extend((1..=k).filter(|i| !gaps.contains(i)).map(|i| (i + n - k) as u32));
    RestrictedSubset::new(elements, n as u32, k as u32, j)
}

/// Inverse of [`word_to_subset`]:
/// `S ↦ 1^{k-X} (∏ 0^{y_i} 1^{x_i}) 0^{n-k-Y}` with `Y = max(S ∩ {1..n-k})` and
/// `X` the largest element of `{1..k}` missing from the shifted upper part
/// (each 0 when the set is empty).
pub fn subset_to_word(s: &RestrictedSubset) -> Result<BinaryWord> {
    let (n, k) = (s.n() as usize, s.k() as usize);
    let low = n - k;
    let (lower, upper): (Vec<usize>, Vec<usize>) = s.elements().iter().map(|&e| e as usize).partition(|&e| e <= low);
    let shifted: Vec<usize> = upper.iter().map(|e| e - low).collect();
    let gaps: Vec<usize> = (1..=k).filter(|i| !shifted.contains(i)).collect();
    if gaps.len() != lower.len() {
        return Err(Error::domain(format!(
            "{s} is not a restricted subset for n = {n}, k = {k}"
        )));
    }
    let diffs = |v: &[usize]| -> Vec<usize> {
        v.iter()
            .scan(0, |prev, &e| {
                let d = e - *prev;
                *prev = e;
                Some(d)
            })
            .collect()
    };
    let big_y = lower.last().copied().unwrap_or(0);
    let big_x = gaps.last().copied().unwrap_or(0);
    let blocks = Blocks {
        lead: k - big_x,
        inner: diffs(&lower).into_iter().zip(diffs(&gaps)).collect(),
        trail: low - big_y,
    };
    Ok(blocks.word())
}

/// Places a divider before position `i` for each `i` in `s` (a subset of
/// `{1..n}`), labels the sections `0, 1, ...` from the left and fills even
/// sections with ones and odd sections with zeros.
pub fn divider_encode(s: &[u32], n: usize) -> Result<BinaryWord> {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != s.len() || sorted.iter().any(|&e| e == 0 || e as usize > n) {
        return Err(Error::domain(format!("{s:?} is not a subset of 1..={n}")));
    }
    let mut dividers = sorted.iter().peekable();
    let mut label = 0usize;
    let bits = (1..=n as u32)
        .map(|pos| {
            while dividers.next_if(|&&d| d == pos).is_some() {
                label += 1;
            }
            u8::from(label.is_multiple_of(2))
        })
        .collect();
    Ok(BinaryWord::from_vec_unchecked(bits))
}

/// `{1 if w_1 = 0} ∪ {i >= 2 : w_{i-1} != w_i}`, sorted.
pub fn divider_decode(b: &BinaryWord) -> Vec<u32> {
    let bits = b.bits();
    let mut out = Vec::new();
    if bits.first() == Some(&0) {
        out.push(1);
    }
    out.extend(
        bits.windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] != p[1])
            .map(|(i, _)| i as u32 + 2),
    );
    out
}

/// A word with one of its ones circled (1-based position).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedWord {
    word: BinaryWord,
    mark: usize,
}

impl MarkedWord {
    pub fn new(word: BinaryWord, mark: usize) -> Result<Self> {
        if mark == 0 || mark > word.len() || word.bits()[mark - 1] != 1 {
            return Err(Error::domain(format!("position {mark} of {word} is not a 1")));
        }
        Ok(MarkedWord { word, mark })
    }

    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    pub fn mark(&self) -> usize {
        self.mark
    }

    pub fn marks_first_one(&self) -> bool {
        self.word.bits().iter().position(|&b| b == 1) == Some(self.mark - 1)
    }
}

impl fmt::Display for MarkedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mark {}", self.word, self.mark)
    }
}

/// Injection from circled words whose circle is not on the first 1 into
/// circled words that start with 1.
///
/// Words already starting with 1 are unchanged. Otherwise the word is
/// `0^a 1^p 1^q 0^b` with the circle on the first of the `q` ones, and it maps
/// to `1^q 0^a 1^p 0^b` circled at position 1.
pub fn ratio_map(mw: &MarkedWord) -> Result<MarkedWord> {
    require_ascents(&mw.word, 1)?;
    if mw.marks_first_one() {
        return Err(Error::domain(format!("{mw}: the circled 1 is the first 1")));
    }
    let bits = mw.word.bits();
    if bits[0] == 1 {
        return Ok(mw.clone());
    }
    let a = mw.word.bits().iter().take_while(|&&b| b == 0).count();
    let k = mw.word.ones();
    let q = a + k - mw.mark + 1;
    let p = k - q;
    let b = mw.word.len() - a - k;
    MarkedWord::new(BinaryWord::from_runs([(1, q), (0, a), (1, p), (0, b)]), 1)
}

/// An element `(S, w)` of the signed set for the alternating binomial sum,
/// with `S ⊆ {1..r}` and weight `(-1)^{r-|S|}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPair {
    subset: Vec<u32>,
    word: BinaryWord,
    weight: i8,
}

impl SignedPair {
    /// Requires `S ⊆ {1..r}` and `w` ending in at least `r - |S|` zeros.
    pub fn new(mut subset: Vec<u32>, word: BinaryWord, r: u32) -> Result<Self> {
        subset.sort_unstable();
        subset.dedup();
        if subset.iter().any(|&e| e == 0 || e > r) {
            return Err(Error::domain(format!("{subset:?} is not a subset of 1..={r}")));
        }
        let need = r as usize - subset.len();
        if word.trailing_zeros() < need {
            return Err(Error::domain(format!("{word} does not end in {need} zeros")));
        }
        let weight = if need.is_multiple_of(2) { 1 } else { -1 };
        Ok(SignedPair { subset, word, weight })
    }

    pub fn subset(&self) -> &[u32] {
        &self.subset
    }

    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    pub fn weight(&self) -> i8 {
        self.weight
    }

    fn toggled(&self, x: u32, word: BinaryWord, r: u32) -> Result<SignedPair> {
        let mut subset = self.subset.clone();
        match subset.binary_search(&x) {
            Ok(i) => {
                subset.remove(i);
            }
            Err(i) => subset.insert(i, x),
        }
        SignedPair::new(subset, word, r)
    }
}

impl fmt::Display for SignedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.subset.iter().map(u32::to_string).collect();
        write!(f, "({{{}}}, {}, {:+})", elems.join(","), self.word, self.weight)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltStage {
    /// Toggles `r` in `S` except on pairs where `w` ends in exactly
    /// `r - |S|` zeros and `r ∈ S`.
    First,
    /// On the fixed points of the first stage: toggles 1 in `S` and moves one
    /// zero between the trailing run and the inner run. No fixed points.
    Second,
}

impl AltStage {
    pub fn from_index(stage: u32) -> Result<Self> {
        match stage {
            1 => Ok(AltStage::First),
            2 => Ok(AltStage::Second),
            _ => Err(Error::domain(format!("involution stage must be 1 or 2, got {stage}"))),
        }
    }
}

/// Whether `pair` is fixed by the first stage.
pub fn altbin_first_fixed(pair: &SignedPair, r: u32) -> bool {
    let t = pair.word.trailing_zeros();
    let s = pair.subset.len();
    t < r as usize && r as usize - s == t && pair.subset.binary_search(&r).is_ok()
}

/// One of the two sign-reversing involutions on
/// `{(S, w) : S ⊆ {1..r}, w ∈ B_k(n+r), w ends in >= r - |S| zeros}`.
pub fn altbin_involution(stage: AltStage, pair: &SignedPair, r: u32, n: usize, k: usize) -> Result<SignedPair> {
    if r < 2 {
        return Err(Error::domain(format!("the involutions need r >= 2, got {r}")));
    }
    let w = &pair.word;
    if w.len() != n + r as usize || w.ones() != k || w.ascents() > 1 {
        return Err(Error::domain(format!("{w} is not in B_{k}({})", n + r as usize)));
    }
    // Revalidates subset range, trailing zeros and weight.
    if SignedPair::new(pair.subset.clone(), w.clone(), r)? != *pair {
        return Err(Error::domain(format!("{pair} carries the wrong weight")));
    }
    let fixed = altbin_first_fixed(pair, r);
    match stage {
        AltStage::First if fixed => Ok(pair.clone()),
        AltStage::First => pair.toggled(r, w.clone(), r),
        AltStage::Second => {
            if !fixed {
                return Err(Error::domain(format!("{pair} is not a fixed point of the first stage")));
            }
            let mut blocks = Blocks::of(w);
            let [(mid, _)] = blocks.inner.as_mut_slice() else {
                return Err(Error::domain(format!("{w} has no ascent")));
            };
            if pair.subset.first() == Some(&1) {
                *mid -= 1;
                blocks.trail += 1;
            } else {
                *mid += 1;
                blocks.trail -= 1;
            }
            pair.toggled(1, blocks.word(), r)
        }
    }
}

/// `I_d` without domain checks.
fn genalt_step(d: u32, w: &BinaryWord) -> BinaryWord {
    let mut blocks = Blocks::of(w);
    if d == 0 {
        // The leading run and the trailing zeros bracket a middle part that
        // neither starts with 1 nor ends with 0.
        let (x0, y0) = (blocks.lead, blocks.trail);
        if x0 % 2 == 1 {
            blocks.lead -= 1;
            blocks.trail += 1;
        } else if y0 > 0 {
            blocks.lead += 1;
            blocks.trail -= 1;
        } else {
            return w.clone();
        }
        // Moving the last zero of an all-zero tail into a leading run of ones
        // shifts where the word splits; rebuilding from runs handles both.
        return blocks.word();
    }
    let Some((y, x)) = blocks.inner.get_mut(d as usize - 1) else {
        return w.clone();
    };
    if *x % 2 == 0 {
        *y += 1;
        *x -= 1;
    } else if *y > 1 {
        *y -= 1;
        *x += 1;
    } else {
        return w.clone();
    }
    blocks.word()
}

/// Whether `w` lies in `fix(I_0) ∩ ... ∩ fix(I_{d-1})`, the domain of `I_d`.
pub fn genalt_in_domain(d: u32, w: &BinaryWord) -> bool {
    (0..d).all(|e| genalt_step(e, w) == *w)
}

/// The involution `I_d` on `B^{(j)}(n)` weighted by `(-1)^{#ones}`.
///
/// `I_0` adjusts the parity of the leading run of ones against the trailing
/// zeros. For `d >= 1`, `I_d` acts on the `d`-th `0^{y} 1^{x}` block: an even
/// `x` gives up a one to `y`, an odd `x` with `y > 1` takes one back, and
/// blocks with odd `x` and `y = 1` (or a missing block) are fixed.
pub fn genalt_involution(d: u32, w: &BinaryWord, j: u32) -> Result<BinaryWord> {
    require_ascents(w, j as usize)?;
    if !genalt_in_domain(d, w) {
        return Err(Error::domain(format!(
            "{w} is not fixed by I_0 .. I_{}",
            d.saturating_sub(1)
        )));
    }
    Ok(genalt_step(d, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn blocks_round_trip() {
        for s in ["", "0", "1", "1100", "0011", "101001", "000", "111", "0101"] {
            assert_eq!(Blocks::of(&b(s)).word(), b(s), "{s}");
        }
        let bl = Blocks::of(&b("1100101"));
        assert_eq!((bl.lead, bl.inner.clone(), bl.trail), (2, vec![(2, 1), (1, 1)], 0));
    }

    #[test]
    fn sym_examples() {
        assert_eq!(sym_map(&b("1100")).unwrap(), b("1100"));
        assert_eq!(sym_map(&b("111000")).unwrap(), b("111000"));
        assert_eq!(sym_map(&b("110")).unwrap(), b("100"));
        assert_eq!(sym_map(&b("1001")).unwrap(), b("0110"));
        assert!(sym_map(&b("0101")).is_err());
    }

    #[test]
    fn strip_examples() {
        assert_eq!(strip(&b("110010"), 1, 1).unwrap(), b("1001"));
        assert_eq!(strip(&b("0110"), 0, 0).unwrap(), b("0110"));
        assert_eq!(unstrip(&b("10"), 2, 1).unwrap(), b("11100"));
        assert_eq!(strip(&b("11100"), 2, 1).unwrap(), b("10"));
        assert!(strip(&b("0110"), 1, 0).is_err());
        assert!(strip(&b("0110"), 0, 2).is_err());
        assert!(unstrip(&b("0101"), 1, 0).is_err());
    }

    #[test]
    fn ascseq_examples() {
        assert_eq!(word_to_ascseq(&b("1100")).unwrap().to_string(), "01222");
        assert_eq!(word_to_ascseq(&b("1010")).unwrap().to_string(), "01211");
        assert_eq!(word_to_ascseq(&BinaryWord::empty()).unwrap().to_string(), "0");
        assert_eq!(ascseq_to_word(&"01211".parse().unwrap()).unwrap(), b("1010"));
        assert_eq!(ascseq_to_word(&"0".parse().unwrap()).unwrap(), BinaryWord::empty());
        for bad in ["0102", "0012", "0210", "1", ""] {
            assert!(ascseq_to_word(&bad.parse().unwrap()).is_err(), "{bad}");
        }
    }

    #[test]
    fn subset_examples() {
        let s = |e: Vec<u32>, n, k, j| RestrictedSubset::new(e, n, k, j).unwrap();
        assert_eq!(subset_to_word(&s(vec![3], 3, 1, 1)).unwrap(), b("100"));
        assert_eq!(subset_to_word(&s(vec![2], 3, 1, 1)).unwrap(), b("001"));
        assert_eq!(subset_to_word(&s(vec![2, 4], 4, 2, 1)).unwrap(), b("1001"));
        assert_eq!(word_to_subset(&b("1001"), 1).unwrap(), s(vec![2, 4], 4, 2, 1));
        assert!(word_to_subset(&b("0101"), 1).is_err());
    }

    #[test]
    fn divider_examples() {
        assert_eq!(divider_encode(&[], 3).unwrap(), b("111"));
        assert_eq!(divider_encode(&[1], 2).unwrap(), b("00"));
        assert_eq!(divider_encode(&[2], 2).unwrap(), b("10"));
        assert_eq!(divider_decode(&b("00")), vec![1]);
        assert_eq!(divider_decode(&b("10")), vec![2]);
        assert_eq!(divider_decode(&b("11")), Vec::<u32>::new());
        assert!(divider_encode(&[3], 2).is_err());
        assert!(divider_encode(&[0], 2).is_err());
    }

    #[test]
    fn ratio_examples() {
        let m = |s: &str, i| MarkedWord::new(b(s), i).unwrap();
        assert_eq!(ratio_map(&m("110", 2)).unwrap(), m("110", 2));
        assert_eq!(ratio_map(&m("011", 3)).unwrap(), m("101", 1));
        assert!(ratio_map(&m("011", 2)).is_err());
        assert!(MarkedWord::new(b("010"), 1).is_err());
        assert_eq!(m("110", 1).to_string(), "110 mark 1");
    }

    #[test]
    fn altbin_examples() {
        // r = 2, S = {1,2}, w ends in exactly r - |S| = 0 zeros: fixed by I1.
        let fixed = SignedPair::new(vec![1, 2], b("1001"), 2).unwrap();
        assert!(altbin_first_fixed(&fixed, 2));
        assert_eq!(altbin_involution(AltStage::First, &fixed, 2, 2, 2).unwrap(), fixed);
        let moved = altbin_involution(AltStage::Second, &fixed, 2, 2, 2).unwrap();
        assert_eq!(moved, SignedPair::new(vec![2], b("1010"), 2).unwrap());
        assert_eq!(moved.weight(), -fixed.weight());

        // w ends in at least r zeros: r is toggled.
        let p = SignedPair::new(vec![1], b("1100"), 2).unwrap();
        let q = altbin_involution(AltStage::First, &p, 2, 2, 2).unwrap();
        assert_eq!(q.subset(), &[1, 2]);
        assert_eq!(q.weight(), -p.weight());
        assert!(altbin_involution(AltStage::Second, &p, 2, 2, 2).is_err());
        assert!(altbin_involution(AltStage::First, &p, 1, 3, 2).is_err());
        assert!(SignedPair::new(vec![], b("1001"), 2).is_err());
        assert!(AltStage::from_index(3).is_err());
    }

    #[test]
    fn genalt_examples() {
        // odd leading run: one 1 moves to the trailing zeros
        assert_eq!(genalt_involution(0, &b("10110"), 2).unwrap(), b("01100"));
        assert_eq!(genalt_involution(0, &b("01100"), 2).unwrap(), b("10110"));
        assert_eq!(genalt_involution(0, &b("110101"), 2).unwrap(), b("110101"));
        assert_eq!(genalt_involution(1, &b("110101"), 2).unwrap(), b("110101"));
        assert_eq!(genalt_involution(1, &b("1100111"), 2).unwrap(), b("1101111"));
        assert_eq!(genalt_involution(1, &b("0011"), 1).unwrap(), b("0001"));
        assert!(genalt_involution(1, &b("10110"), 2).is_err());
        assert!(genalt_involution(0, &b("010101"), 2).is_err());
    }
}

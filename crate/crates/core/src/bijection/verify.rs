//! Exhaustive checks of the maps in [`super`] over small domains.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::*;
use crate::binomial::binomial;
use crate::enumerate::{avoiders, restricted_subsets, words_with_ascents};
use crate::limits::Limits;
use crate::number::{closed, closed_gen};
use crate::word::Pattern;

const MAX_RECORDED_FAILURES: usize = 50;

/// The verifiable maps, by CLI name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BijectionKind {
    Sym,
    Strip,
    Ascseq,
    Subset,
    Divider,
    Ratio,
    Altbin,
    Genalt,
}

impl BijectionKind {
    pub const ALL: [BijectionKind; 8] = [
        BijectionKind::Sym,
        BijectionKind::Strip,
        BijectionKind::Ascseq,
        BijectionKind::Subset,
        BijectionKind::Divider,
        BijectionKind::Ratio,
        BijectionKind::Altbin,
        BijectionKind::Genalt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BijectionKind::Sym => "sym",
            BijectionKind::Strip => "strip",
            BijectionKind::Ascseq => "ascseq",
            BijectionKind::Subset => "subset",
            BijectionKind::Divider => "divider",
            BijectionKind::Ratio => "ratio",
            BijectionKind::Altbin => "altbin",
            BijectionKind::Genalt => "genalt",
        }
    }
}

impl fmt::Display for BijectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BijectionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BijectionKind::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownBijection(s.to_string()))
    }
}

/// Sizes swept by a verifier. `n`, `k`, `j` pin a single value; otherwise
/// `n` runs over `0..=n_max`, `j` over `0..=j_max` and `r` over `2..=r_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionParams {
    pub n_max: usize,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub j_max: u32,
    pub j: Option<u32>,
    pub r_max: u32,
}

impl Default for BijectionParams {
    fn default() -> Self {
        BijectionParams {
            n_max: 10,
            n: None,
            k: None,
            j_max: 3,
            j: None,
            r_max: 4,
        }
    }
}

impl BijectionParams {
    fn ns(&self) -> impl Iterator<Item = usize> {
        match self.n {
            Some(n) => n..=n,
            None => 0..=self.n_max,
        }
    }

    fn ks(&self, n: usize) -> impl Iterator<Item = usize> {
        let pinned = self.k;
        (0..=n).filter(move |&k| pinned.is_none_or(|p| p == k))
    }

    fn js(&self) -> impl Iterator<Item = u32> {
        match self.j {
            Some(j) => j..=j,
            None => 0..=self.j_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub name: String,
    /// Elements of all domains visited.
    pub checked: u64,
    pub failure_count: u64,
    /// The first few failures, one line each.
    pub failures: Vec<String>,
    /// One line per parameter cell.
    pub summary: Vec<String>,
}

impl BijectionReport {
    fn new(kind: BijectionKind) -> Self {
        BijectionReport {
            name: kind.name().to_string(),
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(msg.into());
        }
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    fn expect_eq<T: PartialEq + Display>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.fail(format!("{what}: got {got}, expected {want}"));
        }
    }

    fn record<T, E: Display>(&mut self, context: impl Display, r: std::result::Result<T, E>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(format!("{context}: {e}"));
                None
            }
        }
    }
}

/// Runs the verifier for `kind` over `params`.
pub fn verify_bijection(kind: BijectionKind, params: &BijectionParams, limits: &Limits) -> Result<BijectionReport> {
    match kind {
        BijectionKind::Sym => verify_sym(params, limits),
        BijectionKind::Strip => verify_strip(params, limits),
        BijectionKind::Ascseq => verify_ascseq(params, limits),
        BijectionKind::Subset => verify_subset(params, limits),
        BijectionKind::Divider => verify_divider(params, limits),
        BijectionKind::Ratio => verify_ratio(params, limits),
        BijectionKind::Altbin => verify_altbin(params, limits),
        BijectionKind::Genalt => verify_genalt(params, limits),
    }
}

/// [`verify_bijection`] by name.
pub fn verify_by_name(name: &str, params: &BijectionParams, limits: &Limits) -> Result<BijectionReport> {
    verify_bijection(name.parse()?, params, limits)
}

fn max_n(params: &BijectionParams) -> usize {
    params.n.unwrap_or(params.n_max)
}

fn r_value(n: usize, k: usize) -> u64 {
    closed::<i64>(n as i64, k as i64).map_or(0, |v| v as u64)
}

/// `B_k(n)`, the words of length `n` with `k` ones and at most one ascent.
fn family(n: usize, k: usize) -> Vec<BinaryWord> {
    words_with_ascents(n, k, 1).collect()
}

pub fn verify_sym(params: &BijectionParams, limits: &Limits) -> Result<BijectionReport> {
    limits.check_word_len(max_n(params))?;
    let mut rep = BijectionReport::new(BijectionKind::Sym);
    for n in params.ns() {
        for k in params.ks(n) {
            let domain = family(n, k);
            let target: BTreeSet<_> = family(n, n - k).into_iter().collect();
            let mut image = BTreeSet::new();
            for b in &domain {
                rep.checked += 1;
                let Some(c) = rep.record(b, sym_map(b)) else { continue };
                rep.expect(target.contains(&c), || {
                    format!("{b} -> {c} lies outside B_{}({n})", n - k)
                });
                let back = sym_map(&c).ok();
                rep.expect(back.as_ref() == Some(b), || format!("{b} -> {c} does not map back"));
                image.insert(c);
            }
            rep.expect(image == target, || {
                format!("n={n} k={k}: image is not all of B_{}({n})", n - k)
            });
            rep.summary
                .push(format!("n={n} k={k}: {} words onto B_{}({n})", domain.len(), n - k));
        }
    }
    Ok(rep)
}

pub fn verify_strip(params: &BijectionParams, limits: &Limits) -> Result<BijectionReport> {
    limits.check_word_len(max_n(params))?;
    let mut rep = BijectionReport::new(BijectionKind::Strip);
    for n in params.ns() {
        for k in params.ks(n) {
            let words = family(n, k);
            for (l, u) in (0..=k).cartesian_product(0..=n - k) {
                let domain: Vec<_> = words
                    .iter()
                    .filter(|b| b.leading_ones() >= l && b.trailing_zeros() >= u)
                    .collect();
                let target: BTreeSet<_> = family(n - l - u, k - l).into_iter().collect();
                let mut image = BTreeSet::new();
                for b in domain.iter().copied() {
                    rep.checked += 1;
                    let Some(s) = rep.record(format!("strip({b}, {l}, {u})"), strip(b, l, u)) else {
                        continue;
                    };
                    let back = unstrip(&s, l, u).ok();
                    rep.expect(back.as_ref() == Some(b), || {
                        format!("unstrip(strip({b}, {l}, {u})) != {b}")
                    });
                    image.insert(s);
                }
                rep.expect(image == target, || {
                    format!(
                        "n={n} k={k} l={l} u={u}: image is not all of B_{}({})",
                        k - l,
                        n - l - u
                    )
                });
                for s in &target {
                    let back = unstrip(s, l, u).and_then(|w| strip(&w, l, u));
                    rep.expect(back.as_ref().ok() == Some(s), || {
                        format!("strip(unstrip({s}, {l}, {u})) != {s}")
                    });
                }
                let counted = crate::number::prefix_suffix_count::<i64>(n as i64, k as i64, l as i64, u as i64)?;
                rep.expect_eq(&format!("n={n} k={k} l={l} u={u} count"), domain.len() as i64, counted);
            }
            rep.summary
                .push(format!("n={n} k={k}: {} words, all (l, u)", words.len()));
        }
    }
    Ok(rep)
}

pub fn verify_ascseq(params: &BijectionParams, limits: &Limits) -> Result<BijectionReport> {
    limits.check_ascseq_len(max_n(params) + 1)?;
    let mut rep = BijectionReport::new(BijectionKind::Ascseq);
    let patterns = [Pattern::p001(), Pattern::p210()];
    for n in params.ns() {
        let mut by_k: BTreeMap<usize, BTreeSet<GenWord>> = BTreeMap::new();
        for w in avoiders(n + 1, &patterns, None, limits)? {
            by_k.entry(w.ascents()).or_default().insert(w);
        }
        for k in params.ks(n) {
            let target = by_k.remove(&k).unwrap_or_default();
            let mut image = BTreeSet::new();
            for b in family(n, k) {
                rep.checked += 1;
                let Some(w) = rep.record(&b, word_to_ascseq(&b)) else {
                    continue;
                };
                rep.expect(w.ascents() == k, || {
                    format!("{b} -> {w} has {} ascents, not {k}", w.ascents())
                });
                let back = ascseq_to_word(&w).ok();
                rep.expect(back.as_ref() == Some(&b), || format!("{b} -> {w} does not map back"));
                image.insert(w);
            }
            rep.expect(image == target, || {
                format!("n={n} k={k}: image differs from A_{{001,210}},{k}({})", n + 1)
            });
            rep.expect_eq(&format!("n={n} k={k} size"), target.len() as u64, r_value(n, k));
            rep.summary
                .push(format!("n={n} k={k}: {} = R_{{{n},{k}}}", target.len()));
        }
        for (k, rest) in by_k {
            if params.k.is_none() {
                rep.fail(format!(
                    "n={n}: {} avoiders with {k} ascents have no preimage",
                    rest.len()
                ));
            }
        }
    }
    Ok(rep)
}

pub fn verify_subset(params: &BijectionParams, limits: &Limits) -> Result<BijectionReport> {
    limits.check_word_len(max_n(params))?;
    let mut rep = BijectionReport::new(BijectionKind::Subset);
    for n in params.ns() {
        for k in params.ks(n) {
            for j in params.js() {
                let target: BTreeSet<_> = restricted_subsets(n as u32, k as u32, j)?.collect();
                let mut image = BTreeSet::new();
                for b in words_with_ascents(n, k, j) {
                    rep.checked += 1;
                    let Some(s) = rep.record(&b, word_to_subset(&b, j)) else {
                        continue;
                    };
                    let back = subset_to_word(&s).ok();
                    rep.expect(back.as_ref() == Some(&b), || {
                        format!("{b} -> {{{s}}} does not map back")
                    });
                    image.insert(s);
                }
                rep.expect(image == target, || {
                    format!("n={n} k={k} j={j}: image is not all of C({n},{k})_{j}")
                });
                for s in &target {
                    let back = subset_to_word(s).and_then(|b| word_to_subset(&b, j));
                    rep.expect(back.as_ref().ok() == Some(s), || format!("{{{s}}} does not round-trip"));
                }
                let want = closed_gen::<i64>(n as i64, k as i64, j)?;
                rep.expect_eq(&format!("n={n} k={k} j={j} size"), target.len() as i64, want);
                rep.summary.push(format!("n={n} k={k} j={j}: {} subsets", target.len()));
            }
        }
    }
    Ok(rep)
}

pub fn verify_divider(params: &BijectionParams, limits: &Limits) -> Result<BijectionReport> {
    limits.check_word_len(max_n(params))?;
    let mut rep = BijectionReport::new(BijectionKind::Divider);
    for n in params.ns() {
        let all: Vec<BinaryWord> = crate::enumerate::all_binary_words(n, limits)?.collect();
        for b in &all {
            let back = divider_encode(&divider_decode(b), n).ok();
            rep.expect(back.as_ref() == Some(b), || format!("encode(decode({b})) != {b}"));
        }
        for j in params.js() {
            let target: BTreeSet<_> = all.iter().filter(|b| b.ascents() <= j as usize).cloned().collect();
            let mut image = BTreeSet::new();
            for size in 0..=n.min(2 * j as usize + 2) {
                for s in (1..=n as u32).combinations(size) {
                    rep.checked += 1;
                    let Some(b) = rep.record(format!("{s:?}"), divider_encode(&s, n)) else {
                        continue;
                    };
                    rep.expect_eq(
                        &format!("decode(encode({s:?}))"),
                        format!("{:?}", divider_decode(&b)),
                        format!("{s:?}"),
                    );
                    let inside = b.ascents() <= j as usize;
                    rep.expect(inside == (size <= 2 * j as usize + 1), || {
                        format!("{s:?} -> {b}: {} ascents with |S| = {size}, j = {j}", b.ascents())
                    });
                    if inside {
                        image.insert(b);
                    }
                }
            }
            rep.expect(image == target, || {
                format!("n={n} j={j}: image is not all of B^({j})({n})")
            });
            let want: u64 = (0..=2 * j as i64 + 1)
                .map(|i| binomial::<i64>(n as i64, i).unwrap_or(0) as u64)
                .sum();
            rep.expect_eq(&format!("n={n} j={j} size"), target.len() as u64, want);
            rep.summary.push(format!("n={n} j={j}: {} words", target.len()));
        }
    }
    Ok(rep)
}

pub fn verify_ratio(params: &BijectionParams, limits: &Limits) -> Result<BijectionReport> {
    limits.check_word_len(max_n(params))?;
    let mut rep = BijectionReport::new(BijectionKind::Ratio);
    for n in params.ns() {
        for k in params.ks(n).filter(|&k| 0 < k && k < n) {
            let marked: Vec<MarkedWord> = family(n, k)
                .into_iter()
                .flat_map(|w| {
                    let ones: Vec<usize> = (1..=n).filter(|&i| w.bits()[i - 1] == 1).collect();
                    ones.into_iter()
                        .map(move |i| MarkedWord::new(w.clone(), i).expect("marked a 1"))
                })
                .collect();
            let (s_set, t_set): (BTreeSet<_>, Vec<_>) = (
                marked.iter().filter(|m| m.word().bits()[0] == 1).cloned().collect(),
                marked.iter().filter(|m| !m.marks_first_one()).cloned().collect(),
            );
            let mut image = BTreeSet::new();
            for m in &t_set {
                rep.checked += 1;
                let Some(img) = rep.record(m, ratio_map(m)) else {
                    continue;
                };
                rep.expect(s_set.contains(&img), || format!("{m} -> {img} lies outside S"));
                rep.expect(image.insert(img.clone()), || format!("{m} -> {img} collides"));
            }
            let missed: Vec<String> = s_set.difference(&image).map(ToString::to_string).collect();
            let corner = MarkedWord::new(BinaryWord::from_runs([(1, k), (0, n - k)]), 1)?.to_string();
            rep.expect(missed == [corner.clone()], || {
                format!("n={n} k={k}: missed {missed:?}, expected [{corner}]")
            });
            rep.expect_eq(
                &format!("n={n} k={k} |T|"),
                t_set.len() as u64,
                (k as u64 - 1) * r_value(n, k),
            );
            rep.expect_eq(
                &format!("n={n} k={k} |S|"),
                s_set.len() as u64,
                k as u64 * r_value(n - 1, k - 1),
            );
            rep.summary.push(format!(
                "n={n} k={k}: image {} of {}, missed: {}",
                image.len(),
                s_set.len(),
                missed.join(", ")
            ));
        }
    }
    Ok(rep)
}

pub fn verify_altbin(params: &BijectionParams, limits: &Limits) -> Result<BijectionReport> {
    limits.check_word_len(max_n(params) + params.r_max as usize)?;
    let mut rep = BijectionReport::new(BijectionKind::Altbin);
    for r in 2..=params.r_max {
        let subsets: Vec<Vec<u32>> = (1..=r).powerset().collect();
        for n in params.ns() {
            for k in params.ks(n) {
                let words = family(n + r as usize, k);
                let domain: Vec<SignedPair> = subsets
                    .iter()
                    .cartesian_product(&words)
                    .filter_map(|(s, w)| SignedPair::new(s.clone(), w.clone(), r).ok())
                    .collect();
                let mut sum = 0i64;
                let mut fixed = Vec::new();
                for p in &domain {
                    rep.checked += 1;
                    sum += i64::from(p.weight());
                    let Some(q) = rep.record(p, altbin_involution(AltStage::First, p, r, n, k)) else {
                        continue;
                    };
                    let back = altbin_involution(AltStage::First, &q, r, n, k).ok();
                    rep.expect(back.as_ref() == Some(p), || format!("I1 is not an involution at {p}"));
                    if q == *p {
                        fixed.push(q);
                    } else {
                        rep.expect(q.weight() == -p.weight(), || format!("I1: {p} -> {q} keeps its sign"));
                    }
                }
                for p in &fixed {
                    let t = p.word().trailing_zeros();
                    let described = t == r as usize - p.subset().len() && p.subset().contains(&r);
                    rep.expect(described, || {
                        format!("{p} is fixed by I1 but not of the described form")
                    });
                    let Some(q) = rep.record(p, altbin_involution(AltStage::Second, p, r, n, k)) else {
                        continue;
                    };
                    rep.expect(q != *p, || format!("I2 fixes {p}"));
                    rep.expect(q.weight() == -p.weight(), || format!("I2: {p} -> {q} keeps its sign"));
                    rep.expect(altbin_first_fixed(&q, r), || format!("I2: {p} -> {q} leaves fix(I1)"));
                    let back = altbin_involution(AltStage::Second, &q, r, n, k).ok();
                    rep.expect(back.as_ref() == Some(p), || format!("I2 is not an involution at {p}"));
                }
                let mut lhs = 0i64;
                for i in 0..=r as i64 {
                    let sign = if (r as i64 - i) % 2 == 0 { 1 } else { -1 };
                    lhs += sign * binomial::<i64>(r as i64, i)? * closed::<i64>(n as i64 + i, k as i64)?;
                }
                rep.expect_eq(&format!("r={r} n={n} k={k} signed sum vs binomial sum"), sum, lhs);
                rep.expect_eq(&format!("r={r} n={n} k={k} signed sum"), sum, 0);
                rep.summary.push(format!(
                    "r={r} n={n} k={k}: {} pairs, {} fixed by I1, signed sum {sum}",
                    domain.len(),
                    fixed.len()
                ));
            }
        }
    }
    Ok(rep)
}

/// Whether `w` has the form `1^{2z_0} ∏ 0 1^{2z_i + 1}`.
fn has_fixed_form(w: &BinaryWord) -> bool {
    let blocks = Blocks::of(w);
    blocks.lead.is_multiple_of(2) && blocks.trail == 0 && blocks.inner.iter().all(|&(y, x)| y == 1 && x % 2 == 1)
}

pub fn verify_genalt(params: &BijectionParams, limits: &Limits) -> Result<BijectionReport> {
    limits.check_word_len(max_n(params))?;
    let mut rep = BijectionReport::new(BijectionKind::Genalt);
    for n in params.ns() {
        let all: Vec<BinaryWord> = crate::enumerate::all_binary_words(n, limits)?.collect();
        for j in params.js() {
            let mut domain: Vec<BinaryWord> = all.iter().filter(|b| b.ascents() <= j as usize).cloned().collect();
            for d in 0..=j {
                let members: BTreeSet<&BinaryWord> = domain.iter().collect();
                let mut fixed = Vec::new();
                for w in &domain {
                    rep.checked += 1;
                    let Some(v) = rep.record(format!("I_{d}({w})"), genalt_involution(d, w, j)) else {
                        continue;
                    };
                    rep.expect(members.contains(&v), || format!("I_{d}: {w} -> {v} leaves the domain"));
                    let back = genalt_involution(d, &v, j).ok();
                    rep.expect(back.as_ref() == Some(w), || {
                        format!("I_{d} is not an involution at {w}")
                    });
                    if v == *w {
                        fixed.push(v);
                    } else {
                        rep.expect(w.ones().abs_diff(v.ones()) == 1, || {
                            format!("I_{d}: {w} -> {v} changes the number of ones by more than 1")
                        });
                    }
                }
                domain = fixed;
            }
            for w in &domain {
                rep.expect(has_fixed_form(w), || {
                    format!("{w} is fixed by I_0 .. I_{j} but not of the fixed form")
                });
            }
            let sum: i64 = domain.iter().map(|w| if w.ones() % 2 == 0 { 1 } else { -1 }).sum();
            let mut row = 0i64;
            for k in 0..=n as i64 {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                row += sign * closed_gen::<i64>(n as i64, k, j)?;
            }
            rep.expect_eq(&format!("n={n} j={j} signed sum"), sum, row);
            rep.summary
                .push(format!("n={n} j={j}: {} fixed points, signed sum {sum}", domain.len()));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n_max: usize) -> BijectionParams {
        BijectionParams {
            n_max,
            j_max: 2,
            r_max: 3,
            ..BijectionParams::default()
        }
    }

    #[test]
    fn all_pass_small() {
        let limits = Limits::default();
        for kind in BijectionKind::ALL {
            let rep = verify_bijection(kind, &small(6), &limits).unwrap();
            assert!(rep.passed(), "{kind}: {:?}", rep.failures);
            assert!(rep.checked > 0, "{kind}");
        }
    }

    #[test]
    fn ratio_summary() {
        let params = BijectionParams {
            n: Some(3),
            k: Some(2),
            ..BijectionParams::default()
        };
        let rep = verify_ratio(&params, &Limits::default()).unwrap();
        assert_eq!(rep.summary, ["n=3 k=2: image 3 of 4, missed: 110 mark 1"]);
    }

    #[test]
    fn genalt_summary() {
        let params = BijectionParams {
            n: Some(6),
            j: Some(1),
            ..BijectionParams::default()
        };
        let rep = verify_genalt(&params, &Limits::default()).unwrap();
        assert!(rep.passed());
        assert!(rep.summary[0].ends_with("signed sum -2"), "{}", rep.summary[0]);
    }

    #[test]
    fn names() {
        assert_eq!("genalt".parse::<BijectionKind>().unwrap(), BijectionKind::Genalt);
        assert!(matches!(
            "nope".parse::<BijectionKind>(),
            Err(Error::UnknownBijection(_))
        ));
    }
}

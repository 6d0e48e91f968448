use std::collections::BTreeSet;

use proptest::prelude::*;
use rascal_core::enumerate::{all_binary_words, ascent_sequences};
use rascal_core::word::{
    asc, contains_001, contains_210, contains_pattern, contains_pattern_generic, is_ascent_sequence, is_rgf, reduce,
};
use rascal_core::{BinaryWord, GenWord, Limits, Pattern};

fn word() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..5, 0..12)
}

fn pattern() -> impl Strategy<Value = Pattern> {
    prop::collection::vec(0u32..4, 1..5).prop_map(|w| reduce(&GenWord::new(w).unwrap()))
}

fn binary() -> impl Strategy<Value = BinaryWord> {
    prop::collection::vec(0u8..2, 0..16).prop_map(|b| BinaryWord::new(b).unwrap())
}

proptest! {
    #[test]
    fn fast_containment_matches_generic(w in word()) {
        prop_assert_eq!(contains_001(&w), contains_pattern_generic(&w, &Pattern::p001()));
        prop_assert_eq!(contains_210(&w), contains_pattern_generic(&w, &Pattern::p210()));
    }

    #[test]
    fn dispatching_containment_matches_generic(w in word(), p in pattern()) {
        prop_assert_eq!(contains_pattern(&w, &p), contains_pattern_generic(&w, &p));
    }

    #[test]
    fn a_word_contains_its_own_reduction(w in prop::collection::vec(0u32..6, 1..10)) {
        let p = reduce(&GenWord::new(w.clone()).unwrap());
        prop_assert!(contains_pattern(&w, &p));
        prop_assert_eq!(asc(p.letters()), asc(&w));
    }

    #[test]
    fn reverse_and_complement(b in binary()) {
        prop_assert_eq!(b.reverse().reverse(), b.clone());
        prop_assert_eq!(b.complement().complement(), b.clone());
        prop_assert_eq!(b.reverse().complement(), b.complement().reverse());
        prop_assert_eq!(b.reverse().complement().ascents(), b.ascents());
        prop_assert_eq!(b.complement().ones(), b.len() - b.ones());
    }

    #[test]
    fn runs_rebuild_the_word(b in binary()) {
        prop_assert_eq!(BinaryWord::from_runs(b.runs()), b);
    }

    #[test]
    fn words_display_and_parse(b in binary(), w in word()) {
        prop_assert_eq!(b.to_string().parse::<BinaryWord>().unwrap(), b);
        let g = GenWord::new(w).unwrap();
        prop_assert_eq!(g.to_string().parse::<GenWord>().unwrap(), g);
    }
}

/// Depth-first construction straight from the definition.
fn ascent_sequences_dfs(n: usize) -> BTreeSet<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, n: usize, out: &mut BTreeSet<Vec<u32>>) {
        if prefix.len() == n {
            out.insert(prefix.clone());
            return;
        }
        let bound = if prefix.is_empty() { 0 } else { asc(prefix) as u32 + 1 };
        for l in 0..=bound {
            prefix.push(l);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

#[test]
fn ascent_sequence_generator_matches_definition() {
    let limits = Limits::default();
    for n in 0..=8 {
        let generated: Vec<Vec<u32>> = ascent_sequences(n, &limits)
            .unwrap()
            .map(|w| w.letters().to_vec())
            .collect();
        let mut sorted = generated.clone();
        sorted.sort();
        assert_eq!(generated, sorted, "n={n} not in lexicographic order");
        assert_eq!(
            generated.into_iter().collect::<BTreeSet<_>>(),
            ascent_sequences_dfs(n),
            "n={n}"
        );
    }
    assert_eq!(ascent_sequences(5, &limits).unwrap().count(), 53);
}

#[test]
fn ascent_sequences_avoiding_001_are_rgfs_at_length_8() {
    for w in ascent_sequences(8, &Limits::default()).unwrap() {
        assert!(is_ascent_sequence(w.letters()));
        if !contains_001(w.letters()) {
            assert!(is_rgf(w.letters()), "{w}");
        }
    }
}

#[test]
fn binary_words_are_lexicographic_and_complete() {
    let words: Vec<BinaryWord> = all_binary_words(10, &Limits::default()).unwrap().collect();
    assert_eq!(words.len(), 1024);
    assert!(words.windows(2).all(|p| p[0] < p[1]));
}

use rascal_core::bijection::verify::{verify_bijection, BijectionKind, BijectionParams};
use rascal_core::bijection::{genalt_involution, sym_map};
use rascal_core::enumerate::words_with_ascents;
use rascal_core::Limits;

#[test]
fn every_map_passes_at_full_size() {
    let limits = Limits::default();
    let params = BijectionParams::default();
    assert_eq!((params.n_max, params.j_max, params.r_max), (10, 3, 4));
    for kind in BijectionKind::ALL {
        let report = verify_bijection(kind, &params, &limits).unwrap();
        assert!(report.passed(), "{kind}: {:?}", report.failures);
    }
}

#[test]
fn sym_is_an_involution_to_12() {
    for n in 0..=12 {
        for k in 0..=n {
            for b in words_with_ascents(n, k, 1) {
                assert_eq!(sym_map(&sym_map(&b).unwrap()).unwrap(), b);
            }
        }
    }
}

#[test]
fn ratio_misses_exactly_one() {
    let params = BijectionParams {
        n_max: 10,
        ..BijectionParams::default()
    };
    let report = verify_bijection(BijectionKind::Ratio, &params, &Limits::default()).unwrap();
    assert!(report.passed());
    // one line per 0 < k < n <= 10
    assert_eq!(report.summary.len(), (2..=10).map(|n| n - 1).sum::<usize>());
    assert!(report.summary.iter().all(|l| l.contains("missed: ")));
}

#[test]
fn genalt_on_odd_rows_has_no_fixed_points() {
    let params = BijectionParams {
        n: Some(5),
        j: Some(1),
        ..BijectionParams::default()
    };
    let report = verify_bijection(BijectionKind::Genalt, &params, &Limits::default()).unwrap();
    assert_eq!(report.summary, ["n=5 j=1: 0 fixed points, signed sum 0"]);
}

#[test]
fn genalt_fixed_points_at_n_6() {
    let all: Vec<_> = (0..=6).flat_map(|k| words_with_ascents(6, k, 1)).collect();
    let fixed: Vec<String> = all
        .iter()
        .filter(|w| (0..=1).all(|d| genalt_involution(d, w, 1).map(|v| v == **w).unwrap_or(false)))
        .map(|w| w.to_string())
        .collect();
    let mut fixed = fixed;
    fixed.sort();
    // 1^{2z_0} 0 1^{2z_1+1} with 2(z_0 + z_1 + 1) = 6, plus 1^6
    assert_eq!(fixed, ["011111", "110111", "111101", "111111"]);
}

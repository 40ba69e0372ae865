mod common;

use common::{block, named, seeded_block_case};
use omnilife::analysis::detect_dynamics;
use omnilife::catsearch::{
    search_catalysts, search_exhaustive, C2Symmetry, CatalystSpec, SearchConfig, SearchConfigFile,
};
use omnilife::parallel::Parallelism;
use omnilife::{transform, D8Transform, Pattern, Rect, Symmetry};

fn config(active: Pattern, period: Option<u64>) -> SearchConfig {
    SearchConfig {
        active_region: active,
        catalysts: vec![CatalystSpec::new("block", block())],
        max_catalysts: 1,
        placement_box: Rect {
            x0: -4,
            y0: -4,
            x1: 4,
            y1: 4,
        },
        max_gens: 64,
        require_period: period,
        symmetry: None,
        max_nodes: None,
    }
}

#[test]
fn pulsar_qualifies_bare() {
    let r = search_catalysts(&config(named("pulsar"), Some(3)), Parallelism::Sequential).unwrap();
    assert!(r.solutions.iter().any(|s| s.placements.is_empty()));
    assert!(r.solutions.iter().all(|s| s.report.period == Some(3)));
}

#[test]
fn empty_library_gives_empty_result() {
    let mut cfg = config(named("pulsar"), Some(5));
    cfg.catalysts.clear();
    let r = search_catalysts(&cfg, Parallelism::Sequential).unwrap();
    assert!(r.solutions.is_empty() && r.complete);
}

#[test]
fn pruned_matches_exhaustive() {
    for seed in 0..6 {
        let mut cfg = seeded_block_case(seed);
        let pruned = search_catalysts(&cfg, Parallelism::Sequential).unwrap();
        let exhaustive = search_exhaustive(&cfg).unwrap();
        assert!(!pruned.solutions.is_empty(), "seed {seed}");
        assert_eq!(pruned.solutions, exhaustive.solutions, "seed {seed}");
        cfg.require_period = Some(30);
        let pruned = search_catalysts(&cfg, Parallelism::Sequential).unwrap();
        assert_eq!(
            pruned.solutions,
            search_exhaustive(&cfg).unwrap().solutions,
            "seed {seed}"
        );
    }
}

#[test]
fn solutions_reverify_and_place_what_they_claim() {
    let cfg = seeded_block_case(3);
    let r = search_catalysts(&cfg, Parallelism::Sequential).unwrap();
    for s in &r.solutions {
        assert_eq!(
            detect_dynamics(&s.resulting_pattern, cfg.max_gens.max(4096)).unwrap(),
            s.report
        );
        let mut built = cfg.active_region.clone();
        for p in &s.placements {
            built =
                built.union(&transform(&cfg.catalysts[p.catalyst].pattern, &p.transform).unwrap());
        }
        assert_eq!(built, s.resulting_pattern);
    }
}

#[test]
fn schedule_invariance() {
    let mut cfg = seeded_block_case(1);
    cfg.max_catalysts = 2;
    let a = search_catalysts(&cfg, Parallelism::Sequential).unwrap();
    let b = search_catalysts(&cfg, Parallelism::Threads(4)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn symmetric_mode_places_rotated_twins() {
    // two far-apart copies of a damaged shuttle, related by a half turn
    let base = seeded_block_case(0);
    let a = base.active_region.bounding_box().unwrap();
    let (cx2, cy2) = (a.x0 + a.x1, a.y0 + a.y1 + 200);
    let half_turn = D8Transform::new(Symmetry::Rot180, cx2, cy2);
    let active = base
        .active_region
        .union(&transform(&base.active_region, &half_turn).unwrap());
    let cfg = SearchConfig {
        active_region: active,
        max_catalysts: 2,
        require_period: Some(30),
        symmetry: Some(C2Symmetry { cx2, cy2 }),
        ..base.clone()
    };
    let r = search_catalysts(&cfg, Parallelism::Sequential).unwrap();
    let single = search_catalysts(&base, Parallelism::Sequential).unwrap();
    assert!(!r.solutions.is_empty());
    assert_eq!(
        r.solutions.len(),
        single
            .solutions
            .iter()
            .filter(|s| s.report.period == Some(30))
            .count()
    );
    for s in &r.solutions {
        assert_eq!(s.placements.len(), 2);
        assert_eq!(
            transform(&s.resulting_pattern, &half_turn).unwrap(),
            s.resulting_pattern
        );
        assert_eq!(s.report.period, Some(30));
    }
}

#[test]
fn config_file_rejects_unknown_fields() {
    let json = r#"{"active_region": "3o!", "catalysts": [], "max_catalysts": 1,
        "placement_box": {"x0": 0, "y0": 0, "x1": 1, "y1": 1}, "max_gens": 8, "bogus": 1}"#;
    assert!(serde_json::from_str::<SearchConfigFile>(json).is_err());
}

use omnilife::analysis::{cell_period_map, detect_dynamics, volatility_stats};
use omnilife::catalog;
use omnilife::synthesis::{
    compose_lcm, resolve_period, snark_fixture, synth_snark_loop, synth_snark_loop_spec,
    Provenance, SnarkLoopSpec,
};
use omnilife::{step, Error, Pattern, Topology};

fn named(name: &str) -> Pattern {
    catalog::by_name(name).unwrap().pattern().unwrap()
}

#[test]
fn p100_loop() {
    let p = synth_snark_loop(100).unwrap();
    let r = detect_dynamics(&p, 5000).unwrap();
    assert_eq!(r.oscillator_period(), Some(100));
}

#[test]
fn spec_arithmetic() {
    for p in [43, 44, 45, 77, 120] {
        let (spec, _) = synth_snark_loop_spec(p).unwrap();
        let (n, m) = SnarkLoopSpec::sides(p);
        assert_eq!((spec.n, spec.m), (n, m));
        assert_eq!(spec.n + spec.m + 1, p);
        assert!(spec.n > 13 && spec.m > 13);
        assert_eq!(spec.traversal_time(), 8 * p);
        assert_eq!(spec.reflector_placements.len(), 4);
        assert_eq!(spec.glider_insertions.len(), 8);
    }
}

#[test]
fn p43_matches_the_figure_up_to_phase() {
    let ours = synth_snark_loop(43).unwrap();
    let figure = named("Snark loop");
    let mut cur = figure.clone();
    let mut seen = false;
    for _ in 0..43 {
        seen |= cur == ours;
        cur = step(&cur, Topology::Plane).unwrap();
    }
    assert!(seen);
}

#[test]
fn snark_fixture_metadata() {
    let f = snark_fixture();
    assert_eq!(f.min_repeat_time, 43);
    assert_eq!(f.reflection_delay, 2);
    assert_eq!(step(&f.reflector, Topology::Plane).unwrap(), f.reflector);
}

#[test]
fn below_43_points_to_resolve() {
    match synth_snark_loop(30) {
        Err(Error::Synthesis(msg)) => assert!(msg.contains("resolve_period")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn jam_and_mold_make_a_trivial_p12() {
    let c = compose_lcm(&named("jam"), 3, &named("mold"), 4).unwrap();
    assert_eq!(
        detect_dynamics(&c, 100).unwrap().oscillator_period(),
        Some(12)
    );
    assert!(volatility_stats(&c, 12).unwrap().trivial);
}

#[test]
fn octagon_and_figure_eight_make_p40() {
    let c = compose_lcm(&named("octagon 2"), 5, &named("figure eight"), 8).unwrap();
    assert_eq!(
        detect_dynamics(&c, 100).unwrap().oscillator_period(),
        Some(40)
    );
}

#[test]
fn composite_cell_periods_restrict_to_components() {
    let (a, b) = (named("pulsar"), named("figure eight"));
    let c = compose_lcm(&a, 3, &b, 8).unwrap();
    let whole = cell_period_map(&c, 24).unwrap();
    let ma = cell_period_map(&a, 3).unwrap();
    for (cell, d) in &ma.cells {
        assert_eq!(whole.get(*cell), Some(*d));
    }
    // b was moved; find its translation from the cells not belonging to a
    let moved = c.difference(&a);
    let (_, corner) = moved.normalized().unwrap();
    let (_, b_corner) = b.normalized().unwrap();
    let (dx, dy) = (corner.x - b_corner.x, corner.y - b_corner.y);
    let mb = cell_period_map(&b, 8).unwrap();
    for (cell, d) in &mb.cells {
        assert_eq!(whole.get(cell.offset(dx, dy).unwrap()), Some(*d));
    }
    assert_eq!(whole.len(), ma.len() + mb.len());
}

#[test]
fn resolve_examples() {
    let r = resolve_period(19).unwrap();
    assert_eq!(
        (r.name.as_str(), r.provenance),
        ("cribbage", Provenance::Catalog)
    );
    assert_eq!(resolve_period(41).unwrap().name, "204P41");
    let r = resolve_period(43).unwrap();
    assert_eq!(r.provenance, Provenance::SnarkLoop);
    assert_eq!(
        detect_dynamics(&r.pattern, 100)
            .unwrap()
            .oscillator_period(),
        Some(43)
    );
    assert_eq!(resolve_period(0).unwrap_err(), Error::ZeroPeriod);
}

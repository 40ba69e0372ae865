use omnilife::census::random_soup;
use omnilife::life::{PlaneGrid, TorusGrid};
use omnilife::{
    step, step_n, step_reference, transform, Cell, D8Transform, Error, Pattern, Symmetry, Topology,
    Torus,
};
use proptest::prelude::*;

fn pattern_strategy(span: i64, max_cells: usize) -> impl Strategy<Value = Pattern> {
    prop::collection::vec((0..span, 0..span), 0..max_cells)
        .prop_map(|v| v.into_iter().map(Cell::from).collect::<Pattern>())
}

fn offset_strategy() -> impl Strategy<Value = (i64, i64)> {
    prop_oneof![
        (-200i64..200, -200i64..200),
        (-1i64 << 40..1i64 << 40, -1i64 << 40..1i64 << 40),
        Just((-64, -64)),
        Just((60, 60)),
    ]
}

fn symmetry_strategy() -> impl Strategy<Value = Symmetry> {
    (0usize..8).prop_map(|i| Symmetry::ALL[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn plane_matches_reference(p in pattern_strategy(20, 200), (dx, dy) in offset_strategy()) {
        let mut cur = p.translate(dx, dy).unwrap();
        for _ in 0..8 {
            let fast = step(&cur, Topology::Plane).unwrap();
            let slow = step_reference(&cur, Topology::Plane).unwrap();
            prop_assert_eq!(&fast, &slow);
            cur = fast;
        }
    }

    #[test]
    fn torus_matches_reference(w in 3usize..140, h in 3usize..40, seed in any::<u64>()) {
        let t = Torus::new(w, h).unwrap();
        let mut cur = random_soup(seed, w, h, 0.4);
        for _ in 0..6 {
            let fast = step(&cur, Topology::Torus(t)).unwrap();
            let slow = step_reference(&cur, Topology::Torus(t)).unwrap();
            prop_assert_eq!(&fast, &slow);
            cur = fast;
        }
    }

    #[test]
    fn translation_equivariance(p in pattern_strategy(16, 100), (dx, dy) in offset_strategy()) {
        let a = step(&p.translate(dx, dy).unwrap(), Topology::Plane).unwrap();
        let b = step(&p, Topology::Plane).unwrap().translate(dx, dy).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn d8_equivariance(p in pattern_strategy(16, 100), s in symmetry_strategy(), dx in -50i64..50, dy in -50i64..50) {
        let g = D8Transform::new(s, dx, dy);
        let a = step(&transform(&p, &g).unwrap(), Topology::Plane).unwrap();
        let b = transform(&step(&p, Topology::Plane).unwrap(), &g).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn transform_inverse(p in pattern_strategy(30, 50), s in symmetry_strategy(), dx in -1000i64..1000, dy in -1000i64..1000) {
        let g = D8Transform::new(s, dx, dy);
        let back = transform(&transform(&p, &g).unwrap(), &g.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, p.clone());
        prop_assert_eq!(transform(&p, &D8Transform::IDENTITY).unwrap(), p);
    }

    #[test]
    fn torus_shift_equivariance(w in 3usize..80, h in 3usize..80, seed in any::<u64>(), sx in 0i64..80, sy in 0i64..80) {
        let t = Torus::new(w, h).unwrap();
        let shift = |p: &Pattern| -> Pattern { p.iter().map(|c| t.wrap(Cell::new(c.x + sx, c.y + sy))).collect() };
        let p = random_soup(seed, w, h, 0.35);
        let a = step(&shift(&p), Topology::Torus(t)).unwrap();
        let b = shift(&step(&p, Topology::Torus(t)).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn bounding_box_grows_by_at_most_one(p in pattern_strategy(24, 150)) {
        let q = step(&p, Topology::Plane).unwrap();
        if let (Some(a), Some(b)) = (p.bounding_box(), q.bounding_box()) {
            prop_assert!(b.x0 >= a.x0 - 1 && b.y0 >= a.y0 - 1 && b.x1 <= a.x1 + 1 && b.y1 <= a.y1 + 1);
            prop_assert!(q.population() as u64 <= (a.width() + 2) * (a.height() + 2));
        }
    }

    #[test]
    fn zero_steps_is_identity(p in pattern_strategy(30, 80)) {
        prop_assert_eq!(step_n(&p, Topology::Plane, 0).unwrap(), p);
    }
}

#[test]
fn small_examples() {
    let blinker = Pattern::from_coords(&[(0, 0), (1, 0), (2, 0)]);
    assert_eq!(
        step(&blinker, Topology::Plane).unwrap(),
        Pattern::from_coords(&[(1, -1), (1, 0), (1, 1)])
    );
    let block = Pattern::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
    assert_eq!(step(&block, Topology::Plane).unwrap(), block);
    assert!(step(&Pattern::new(), Topology::Plane).unwrap().is_empty());
    assert_eq!(step_n(&blinker, Topology::Plane, 2).unwrap(), blinker);
}

#[test]
fn works_next_to_the_coordinate_limit() {
    let p = Pattern::from_coords(&[(i64::MAX - 3, 0), (i64::MAX - 2, 0), (i64::MAX - 1, 0)]);
    let fast = step(&p, Topology::Plane).unwrap();
    assert_eq!(fast, step_reference(&p, Topology::Plane).unwrap());
    // the horizontal phase is back and touches i64::MAX - 1; one more
    // generation reaches i64::MAX, and stepping from there must fail
    let wide = Pattern::from_coords(&[(i64::MAX - 2, 0), (i64::MAX - 1, 0), (i64::MAX, 0)]);
    assert_eq!(step(&wide, Topology::Plane), Err(Error::CoordinateOverflow));
    let low = Pattern::from_coords(&[(0, i64::MIN), (1, i64::MIN), (2, i64::MIN)]);
    assert_eq!(step(&low, Topology::Plane), Err(Error::CoordinateOverflow));
}

#[test]
fn grids_round_trip() {
    let p = random_soup(99, 100, 70, 0.5).translate(-37, -90).unwrap();
    assert_eq!(PlaneGrid::from_pattern(&p).to_pattern(), p);
    let t = Torus::new(100, 70).unwrap();
    let q = random_soup(99, 100, 70, 0.5);
    let g = TorusGrid::from_pattern(t, &q).unwrap();
    assert_eq!(g.to_pattern(), q);
    assert_eq!(g.population(), q.population());
}

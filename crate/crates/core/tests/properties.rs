use std::collections::BTreeSet;
use std::sync::LazyLock;

use proptest::prelude::*;
use proptest::sample::subsequence;

use rotsys::corpus;
use rotsys::draw::{drawability_witness, planarity_fixed_graph};
use rotsys::encode::{CnfInstance, EncodeOptions};
use rotsys::geometry::{rotation_from_points, segment_crossings, Point};
use rotsys::hamconvex::{plane_hc_convex_with, plane_hp_with_edge, verify_hp};
use rotsys::predicates::{
    crosses, crossing_relation, empty_triangles, is_convex, is_drawable, is_hconvex, side_members, SideRef,
};
use rotsys::solve::{self, Budget, Status};
use rotsys::system::{Edge, RotationSystem};

/// A pre-rotation system with uniformly shuffled rows.
fn pre_rotation(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RotationSystem> {
    n.prop_flat_map(|n| {
        let rows: Vec<_> = (0..n)
            .map(|v| Just((0..n).filter(|&u| u != v).collect::<Vec<_>>()).prop_shuffle())
            .collect();
        rows
    })
    .prop_map(|rows| RotationSystem::from_rows(&rows).unwrap())
}

/// Points in general position (rejection-sampled).
fn point_set(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Point>> {
    n.prop_flat_map(|n| prop::collection::vec((0i64..1000, 0i64..1000), n))
        .prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x, y)).collect::<Vec<_>>())
        .prop_filter("general position", |pts| rotation_from_points(pts).is_ok())
}

static DRAWABLE6: LazyLock<Vec<RotationSystem>> =
    LazyLock::new(|| rotsys::experiments::enumerate_property(6, rotsys::experiments::Property::Drawable).unwrap());

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn ordered_pairs(pairs: impl IntoIterator<Item = (Edge, Edge)>) -> BTreeSet<(Edge, Edge)> {
    pairs.into_iter().map(|(e, f)| if e < f { (e, f) } else { (f, e) }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_a_class_invariant(
        (rs, perm) in pre_rotation(4..=7).prop_flat_map(|rs| { let n = rs.n(); (Just(rs), permutation(n)) }),
        mirror in any::<bool>(),
    ) {
        let mut other = rs.relabel(&perm).unwrap();
        if mirror {
            other = other.reflect();
        }
        let c = rs.canonical_form();
        prop_assert_eq!(&c, &other.canonical_form());
        prop_assert!(c <= rs);
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonical_form(), c);
    }

    #[test]
    fn ccw_is_a_cyclic_orientation(
        (rs, pick) in pre_rotation(4..=8).prop_flat_map(|rs| { let n = rs.n(); (Just(rs), subsequence((0..n).collect::<Vec<_>>(), 4).prop_shuffle()) }),
    ) {
        let [a, b, c, d] = [pick[0], pick[1], pick[2], pick[3]];
        prop_assert_eq!(rs.ccw(a, b, c, d), rs.ccw(a, c, d, b));
        prop_assert_ne!(rs.ccw(a, b, c, d), rs.ccw(a, c, b, d));
        prop_assert_ne!(rs.ccw(a, b, c, d), rs.reflect().ccw(a, b, c, d));
    }

    #[test]
    fn crossings_survive_relabeling_and_reflection(
        (pts, perm) in point_set(4..=8).prop_flat_map(|pts| { let n = pts.len(); (Just(pts), permutation(n)) }),
    ) {
        let rs = rotation_from_points(&pts).unwrap();
        let moved = rs.relabel(&perm).unwrap();
        let mirrored = rs.reflect();
        let rel = crossing_relation(&rs).unwrap();
        for (e, f) in rel.pairs() {
            let map = |e: Edge| Edge::new(perm[e.u()], perm[e.v()]);
            prop_assert!(crosses(&moved, map(e), map(f)));
            prop_assert!(crosses(&mirrored, e, f));
        }
        prop_assert_eq!(crossing_relation(&moved).unwrap().len(), rel.len());
    }

    #[test]
    fn straight_line_drawings_match_the_rotation_system(pts in point_set(4..=8)) {
        let rs = rotation_from_points(&pts).unwrap();
        prop_assert!(is_drawable(&rs));
        prop_assert!(is_convex(&rs).unwrap());
        prop_assert!(is_hconvex(&rs).unwrap());
        let geometric = ordered_pairs(segment_crossings(&pts));
        let combinatorial = ordered_pairs(crossing_relation(&rs).unwrap().pairs());
        prop_assert_eq!(geometric, combinatorial);
    }

    #[test]
    fn triangle_sides_partition_the_other_vertices(
        (pts, tri) in point_set(4..=8).prop_flat_map(|pts| { let n = pts.len(); (Just(pts), subsequence((0..n).collect::<Vec<_>>(), 3).prop_shuffle()) }),
    ) {
        let rs = rotation_from_points(&pts).unwrap();
        let side = SideRef::new(tri[0], tri[1], tri[2]);
        let a = side_members(&rs, side).unwrap();
        let b = side_members(&rs, side.opposite()).unwrap();
        prop_assert!(tri.iter().all(|t| a.contains(t) && b.contains(t)));
        let mut all: Vec<usize> = a.iter().chain(&b).copied().filter(|v| !tri.contains(v)).collect();
        all.sort();
        let expected: Vec<usize> = (0..rs.n()).filter(|v| !tri.contains(v)).collect();
        prop_assert_eq!(all, expected);
    }

    #[test]
    fn properties_are_hereditary(rs in prop::sample::select(DRAWABLE6.clone()), perm in permutation(6), drop in 0usize..6) {
        let rs = rs.relabel(&perm).unwrap();
        let rest: Vec<usize> = (0..rs.n()).filter(|&v| v != drop).collect();
        let sub = rs.induced(&rest).unwrap();
        if is_drawable(&rs) {
            prop_assert!(is_drawable(&sub));
            if is_convex(&rs).unwrap() {
                prop_assert!(is_convex(&sub).unwrap());
            }
            if is_hconvex(&rs).unwrap() {
                prop_assert!(is_hconvex(&sub).unwrap());
            }
        }
    }

    #[test]
    fn geometric_systems_have_enough_empty_triangles(pts in point_set(4..=8)) {
        let rs = rotation_from_points(&pts).unwrap();
        let n = rs.n();
        prop_assert!(empty_triangles(&rs).unwrap().len() >= 2 * n - 4);
    }

    #[test]
    fn corpus_lines_round_trip(rs in pre_rotation(3..=9)) {
        let line = corpus::to_json_line(&rs, Some("x"));
        let back = corpus::parse_line(&line, 1).unwrap();
        prop_assert_eq!(back.system, rs);
        prop_assert_eq!(back.name.as_deref(), Some("x"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cycles_and_paths_on_point_sets(pts in point_set(5..=30)) {
        let rs = rotation_from_points(&pts).unwrap();
        let n = rs.n();
        for star in 0..n {
            let hc = plane_hc_convex_with(&rs, star, Some(true)).unwrap();
            prop_assert!(hc.report.passed());
            prop_assert!(hc.report.rotation_order);
            prop_assert_eq!(hc.report.star_union_edges, 2 * n - 3);
        }
        for e in [Edge::new(0, 1), Edge::new(0, n - 1), Edge::new(1, n / 2 + 1)] {
            let p = plane_hp_with_edge(&rs, e).unwrap();
            prop_assert!(verify_hp(&rs, &p.path, e));
        }
    }

    #[test]
    fn fixing_a_drawable_system_is_satisfiable(rs in pre_rotation(4..=6)) {
        let mut inst = CnfInstance::new(rs.n(), EncodeOptions { natural: false, ..EncodeOptions::default() }).unwrap();
        inst.assert_system(&rs);
        let res = solve::solve(&inst, Budget::unlimited()).unwrap();
        prop_assert_eq!(res.status == Status::Sat, is_drawable(&rs));
        if let Some(m) = res.model {
            prop_assert!(solve::check_model(&inst, &m));
            prop_assert_eq!(solve::decode(&inst, &m).unwrap(), rs);
        }
    }

    #[test]
    fn planarizations_have_the_right_size(pts in point_set(4..=6)) {
        let rs = rotation_from_points(&pts).unwrap();
        let p = drawability_witness(&rs).unwrap().unwrap();
        let n = rs.n();
        let x = crossing_relation(&rs).unwrap().len();
        prop_assert_eq!(p.num_vertices(), n + x);
        prop_assert_eq!(p.num_edges(), n * (n - 1) / 2 + 2 * x);
        prop_assert!(planarity_fixed_graph(p.num_vertices(), &p.edges()).unwrap());
        prop_assert!((n..p.num_vertices()).all(|v| p.degree(v) == 4));
    }
}

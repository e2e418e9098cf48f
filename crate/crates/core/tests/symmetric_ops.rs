//! Symmetric union presentations: realization, partial knots, projection.

use symknot::diagram::Crossing;
use symknot::invariants;
use symknot::symmetric::{
    build_symmetric_union, parse_su, partial_knot, projection_curve, serialize_su, smooth_axis,
    to_knot_diagram, AxisEnd, AxisInsertion, HalfTangle, SymmetricUnionDiagram,
};

/// Trefoil drawn as a half tangle: one strand, three crossings.
/// The strand enters at the top of the axis, weaves through a braid-like
/// pattern and returns to the axis.
fn trefoil_half() -> HalfTangle {
    // a 2-braid with three positive crossings, plat-closed on the right:
    // arcs 1..7 along the strand; crossings X(a, b, c, d) with the slot
    // convention of KnotDiagram.
    // Take the knot diagram of the trefoil as a braid closure and cut one
    // arc open: closure of sigma_1^3 cut at its outer strand.
    // the braid closure of three positive crossings, cut open at one arc
    HalfTangle {
        crossings: vec![
            Crossing { slots: [1, 4, 2, 5] },
            Crossing { slots: [3, 6, 4, 7] },
            Crossing { slots: [5, 2, 6, 3] },
        ],
        ends: vec![AxisEnd { arc: 1, tail: true }, AxisEnd { arc: 7, tail: false }],
    }
}

#[test]
fn empty_presentation_is_unknot() {
    let su = build_symmetric_union(HalfTangle::empty(), vec![]).unwrap();
    let d = to_knot_diagram(&su).unwrap();
    assert_eq!(d.crossing_count(), 0);
    assert_eq!(invariants::determinant(&d).unwrap(), 1);
    let p = partial_knot(&su).unwrap();
    assert_eq!(p.crossing_count(), 0);
}

#[test]
fn single_strand_half_is_unknot() {
    let su = build_symmetric_union(HalfTangle::single_strand(), vec![]).unwrap();
    let d = to_knot_diagram(&su).unwrap();
    assert_eq!(d.crossing_count(), 0);
    assert_eq!(d.component_count().unwrap(), 1);
}

#[test]
fn trefoil_half_realizes_square_knot() {
    let su = build_symmetric_union(trefoil_half(), vec![]).unwrap();
    let d = to_knot_diagram(&su).unwrap();
    assert_eq!(d.crossing_count(), 6);
    assert_eq!(invariants::determinant(&d).unwrap(), 9);
    let p = invariants::alexander_polynomial(&d).unwrap();
    assert_eq!(p.coefficients, vec![1, -2, 3, -2, 1]);
}

#[test]
fn partial_of_trefoil_half_is_trefoil() {
    let su = build_symmetric_union(trefoil_half(), vec![]).unwrap();
    let p = partial_knot(&su).unwrap();
    assert_eq!(p.crossing_count(), 3);
    assert_eq!(invariants::determinant(&p).unwrap(), 3);
}

#[test]
fn projection_curve_counts_crossings() {
    let su = build_symmetric_union(trefoil_half(), vec![]).unwrap();
    let c = projection_curve(&su).unwrap();
    assert_eq!(c.double_point_count(), 3);
    let e = build_symmetric_union(HalfTangle::empty(), vec![]).unwrap();
    assert_eq!(projection_curve(&e).unwrap().double_point_count(), 0);
}

/// Two crossing-free strands joined by one odd insertion.
#[test]
fn two_strand_odd_insertion_accepted() {
    let half = HalfTangle {
        crossings: vec![],
        ends: vec![
            AxisEnd { arc: 1, tail: true },
            AxisEnd { arc: 2, tail: true },
            AxisEnd { arc: 2, tail: false },
            AxisEnd { arc: 1, tail: false },
        ],
    };
    let su = build_symmetric_union(
        half,
        vec![AxisInsertion { site: 3, half_twists: 1 }],
    )
    .unwrap();
    let d = to_knot_diagram(&su).unwrap();
    assert_eq!(d.component_count().unwrap(), 1);
    assert_eq!(d.crossing_count(), 1);
    // even insertion would leave two components
    let half2 = HalfTangle {
        crossings: vec![],
        ends: vec![
            AxisEnd { arc: 1, tail: true },
            AxisEnd { arc: 2, tail: true },
            AxisEnd { arc: 2, tail: false },
            AxisEnd { arc: 1, tail: false },
        ],
    };
    assert!(build_symmetric_union(half2, vec![AxisInsertion { site: 3, half_twists: 2 }]).is_err());
}

#[test]
fn smooth_axis_removes_all_twists_idempotently() {
    let half = HalfTangle {
        crossings: vec![],
        ends: vec![
            AxisEnd { arc: 1, tail: true },
            AxisEnd { arc: 2, tail: true },
            AxisEnd { arc: 2, tail: false },
            AxisEnd { arc: 1, tail: false },
        ],
    };
    let su = build_symmetric_union(half, vec![AxisInsertion { site: 3, half_twists: 3 }]).unwrap();
    let s = smooth_axis(&su);
    assert!(s.insertions().is_empty());
    let s2 = smooth_axis(&s);
    assert_eq!(s, s2);
    // crossing delta = sum of |half twists|
    let d = to_knot_diagram(&su).unwrap();
    let (sd, comps) = symknot::symmetric::realize_link(&s).unwrap();
    assert_eq!(d.crossing_count() - sd.crossing_count(), 3);
    assert_eq!(comps, 2);
}

#[test]
fn su_round_trip_serialization() {
    let su = build_symmetric_union(trefoil_half(), vec![]).unwrap();
    let text = serialize_su(&su);
    let su2 = parse_su(&text).unwrap();
    assert_eq!(serialize_su(&su2), text);
    let half = HalfTangle {
        crossings: vec![],
        ends: vec![
            AxisEnd { arc: 1, tail: true },
            AxisEnd { arc: 2, tail: true },
            AxisEnd { arc: 2, tail: false },
            AxisEnd { arc: 1, tail: false },
        ],
    };
    let su3 = build_symmetric_union(half, vec![AxisInsertion { site: 3, half_twists: -2 }]);
    // -2 is even: two components, rejected
    assert!(su3.is_err());
}

#[test]
fn realization_signs_come_in_mirror_pairs() {
    let su = build_symmetric_union(trefoil_half(), vec![]).unwrap();
    let d = to_knot_diagram(&su).unwrap();
    let signs = d.crossing_signs().unwrap();
    let total: i64 = signs.iter().map(|&s| s as i64).sum();
    assert_eq!(total, 0, "off-axis crossings cancel in mirror pairs");
}

#[test]
fn partial_knot_ignores_insertions() {
    let half = HalfTangle {
        crossings: vec![],
        ends: vec![
            AxisEnd { arc: 1, tail: true },
            AxisEnd { arc: 2, tail: true },
            AxisEnd { arc: 2, tail: false },
            AxisEnd { arc: 1, tail: false },
        ],
    };
    let su1 = build_symmetric_union(half.clone(), vec![AxisInsertion { site: 3, half_twists: 1 }])
        .unwrap();
    let su2 = build_symmetric_union(half, vec![AxisInsertion { site: 3, half_twists: 3 }]).unwrap();
    let p1 = partial_knot(&su1).unwrap();
    let p2 = partial_knot(&su2).unwrap();
    assert_eq!(p1, p2);
}

#[test]
fn det_is_square_of_partial_det() {
    let su = build_symmetric_union(trefoil_half(), vec![]).unwrap();
    let d = to_knot_diagram(&su).unwrap();
    let p = partial_knot(&su).unwrap();
    let dp = invariants::determinant(&p).unwrap();
    assert_eq!(invariants::determinant(&d).unwrap(), dp * dp);
}

#[test]
fn rejects_link_presentations() {
    // two strands, no insertion: two components
    let half = HalfTangle {
        crossings: vec![],
        ends: vec![
            AxisEnd { arc: 1, tail: true },
            AxisEnd { arc: 2, tail: true },
            AxisEnd { arc: 2, tail: false },
            AxisEnd { arc: 1, tail: false },
        ],
    };
    assert!(build_symmetric_union(half, vec![]).is_err());
}

#[test]
fn su_type_is_send_sync_value() {
    fn takes<T: Send + Sync + Clone>(_: &T) {}
    let su = SymmetricUnionDiagram::empty();
    takes(&su);
}

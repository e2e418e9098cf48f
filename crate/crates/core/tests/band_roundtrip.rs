//! Flat band diagrams: boundary knots, dual-path invariants, round trips.

use rand::rngs::StdRng;
use rand::SeedableRng;

mod common;
use common::random_su;
use symknot::band::{
    band_seifert_counts, boundary_knot, disk_complement_h1_rank, from_symmetric_disk,
    heegaard_upper_bound, normalize_orientations, parse_band, serialize_band, to_symmetric_union,
    validate_flat, CoreEvent, FlatBandDiagram, Role,
};
use symknot::diagram::Crossing;
use symknot::invariants;
use symknot::symmetric::{build_symmetric_union, to_knot_diagram, AxisEnd, HalfTangle};

fn trefoil_half() -> HalfTangle {
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
fn bare_band_is_unknot() {
    let bd = FlatBandDiagram::bare();
    validate_flat(&bd).unwrap();
    assert_eq!(bd.singularity_count(), 0);
    let b = boundary_knot(&bd).unwrap();
    assert_eq!(b.crossing_count(), 0);
    let c = band_seifert_counts(&bd).unwrap();
    assert_eq!((c.circle_count, c.genus), (1, 0));
    assert_eq!(disk_complement_h1_rank(&bd).unwrap(), 0);
    assert_eq!(heegaard_upper_bound(&bd).unwrap().bound, 0);
}

#[test]
fn single_singularity_band_bounds_unknot() {
    // every ribbon disk with fewer than two singularities bounds the unknot
    for sign in [1i8, -1] {
        let bd = FlatBandDiagram {
            events: vec![
                CoreEvent::SingPass { id: 1, role: Role::Through, branch_sign: sign },
                CoreEvent::SingPass { id: 1, role: Role::Clasp, branch_sign: -sign },
            ],
        };
        validate_flat(&bd).unwrap();
        let b = boundary_knot(&bd).unwrap();
        assert_eq!(b.crossing_count(), 4);
        assert_eq!(invariants::determinant(&b).unwrap(), 1, "{}", serialize_band(&bd));
        assert!(invariants::alexander_polynomial(&b).unwrap().is_one());
        assert_eq!(disk_complement_h1_rank(&bd).unwrap(), 1);
    }
}

#[test]
fn validation_rejects_double_through() {
    let bd = FlatBandDiagram {
        events: vec![
            CoreEvent::SingPass { id: 1, role: Role::Through, branch_sign: 1 },
            CoreEvent::SingPass { id: 1, role: Role::Through, branch_sign: -1 },
        ],
    };
    assert!(validate_flat(&bd).is_err());
}

#[test]
fn trefoil_half_band_has_three_singularities() {
    let su = build_symmetric_union(trefoil_half(), vec![]).unwrap();
    let bd = from_symmetric_disk(&su).unwrap();
    assert_eq!(bd.singularity_count(), 3);
    // dual-path determinant
    let b = boundary_knot(&bd).unwrap();
    let d = to_knot_diagram(&su).unwrap();
    assert_eq!(
        invariants::determinant(&b).unwrap(),
        invariants::determinant(&d).unwrap(),
        "band {}",
        serialize_band(&bd)
    );
    assert_eq!(
        invariants::alexander_polynomial(&b).unwrap(),
        invariants::alexander_polynomial(&d).unwrap()
    );
}

#[test]
fn dual_path_invariants_on_random_presentations() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..50 {
        let su = random_su(&mut rng, 8);
        let bd = from_symmetric_disk(&su).unwrap();
        assert_eq!(bd.singularity_count(), su.half().crossing_count());
        let b = boundary_knot(&bd).unwrap();
        let d = to_knot_diagram(&su).unwrap();
        assert_eq!(
            invariants::determinant(&b).unwrap(),
            invariants::determinant(&d).unwrap(),
            "su {:?}\nband {}",
            symknot::symmetric::serialize_su(&su),
            serialize_band(&bd)
        );
        assert_eq!(
            invariants::alexander_polynomial(&b).unwrap(),
            invariants::alexander_polynomial(&d).unwrap(),
            "su {:?}",
            symknot::symmetric::serialize_su(&su)
        );
    }
}

#[test]
fn band_round_trip_preserves_singularities_and_invariants() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..50 {
        let su = random_su(&mut rng, 6);
        let bd = from_symmetric_disk(&su).unwrap();
        let su2 = to_symmetric_union(&bd).unwrap();
        assert_eq!(su2.half().crossing_count(), bd.singularity_count());
        let d1 = to_knot_diagram(&su).unwrap();
        let d2 = to_knot_diagram(&su2).unwrap();
        assert_eq!(
            invariants::determinant(&d1).unwrap(),
            invariants::determinant(&d2).unwrap(),
            "su {}",
            symknot::symmetric::serialize_su(&su)
        );
        assert_eq!(
            invariants::alexander_polynomial(&d1).unwrap(),
            invariants::alexander_polynomial(&d2).unwrap()
        );
    }
}

#[test]
fn seifert_counts_closed_forms() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..40 {
        let su = random_su(&mut rng, 8);
        let bd = from_symmetric_disk(&su).unwrap();
        let n = normalize_orientations(&bd).unwrap();
        let r = n.singularity_count();
        let c = band_seifert_counts(&n).unwrap();
        assert_eq!(c.circle_count, 2 * r + 1);
        assert_eq!(c.euler_characteristic, 1 - 2 * r as i64);
        assert_eq!(c.genus, r);
    }
}

#[test]
fn normalization_is_idempotent_and_preserves_boundary() {
    let mut rng = StdRng::seed_from_u64(24);
    for _ in 0..30 {
        let su = random_su(&mut rng, 6);
        let bd = from_symmetric_disk(&su).unwrap();
        let n1 = normalize_orientations(&bd).unwrap();
        let n2 = normalize_orientations(&n1).unwrap();
        assert_eq!(n1, n2);
        let d0 = boundary_knot(&bd).unwrap();
        let d1 = boundary_knot(&n1).unwrap();
        assert_eq!(
            invariants::determinant(&d0).unwrap(),
            invariants::determinant(&d1).unwrap()
        );
    }
}

#[test]
fn h1_rank_equals_singularity_count() {
    let mut rng = StdRng::seed_from_u64(25);
    for _ in 0..40 {
        let su = random_su(&mut rng, 8);
        let bd = from_symmetric_disk(&su).unwrap();
        assert_eq!(
            disk_complement_h1_rank(&bd).unwrap(),
            bd.singularity_count(),
            "band {}",
            serialize_band(&bd)
        );
    }
}

#[test]
fn heegaard_certificate_values() {
    let su = build_symmetric_union(trefoil_half(), vec![]).unwrap();
    let bd = from_symmetric_disk(&su).unwrap();
    let cert = heegaard_upper_bound(&bd).unwrap();
    assert_eq!(cert.bound, 9);
    assert_eq!(cert.ball_count, 3);
    assert_eq!(cert.points_per_ball, 8);
}

#[test]
fn band_code_round_trips() {
    let su = build_symmetric_union(trefoil_half(), vec![]).unwrap();
    let bd = from_symmetric_disk(&su).unwrap();
    let text = serialize_band(&bd);
    let bd2 = parse_band(&text).unwrap();
    assert_eq!(serialize_band(&bd2), text);
    // embedding block must match the events
    let broken = text.replace("emb: S1+", "emb: S1-").replace("emb: S1-", "emb: S1+");
    if broken != text {
        assert!(parse_band(&broken).is_err());
    }
}

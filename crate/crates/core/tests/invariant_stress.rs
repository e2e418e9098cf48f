//! Randomized cross-checks between independent invariant routes.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use symknot::braid;
use symknot::diagram::KnotDiagram;
use symknot::invariants;

fn random_knot(rng: &mut StdRng, max_crossings: usize) -> KnotDiagram {
    loop {
        let strands = rng.gen_range(2..=4usize);
        let len = rng.gen_range(1..=max_crossings);
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        if braid::closure_components(strands, &word) != 1 {
            continue;
        }
        let d = braid::braid_closure(strands, &word).unwrap();
        if d.validate().ok() {
            return d;
        }
    }
}

#[test]
fn dual_route_determinant_on_random_diagrams() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..120 {
        let d = random_knot(&mut rng, 10);
        let det = invariants::determinant(&d).unwrap();
        let g = invariants::goeritz_matrix(&d).unwrap();
        assert_eq!(
            g.det().unsigned_abs() as i64,
            det,
            "goeritz vs seifert disagree on {}",
            d.serialize()
        );
        assert_eq!(det % 2, 1, "even determinant on {}", d.serialize());
    }
}

#[test]
fn alexander_at_one_is_unit_and_size_matches_genus() {
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..60 {
        let d = random_knot(&mut rng, 10);
        let p = invariants::alexander_polynomial(&d).unwrap();
        assert_eq!(p.eval(1).abs(), 1, "{}", d.serialize());
        let v = d.seifert_matrix().unwrap();
        let sd = d.seifert_data().unwrap();
        assert_eq!(v.rows(), 2 * sd.genus, "{}", d.serialize());
        // span(alexander)/2 is a genus lower bound
        assert!(p.span() / 2 <= sd.genus, "{}", d.serialize());
        // H1 order equals the determinant
        let h1 = invariants::h1_double_cover(&d).unwrap();
        assert_eq!(h1.order(), Some(invariants::determinant(&d).unwrap()));
    }
}

#[test]
fn alexander_multiplicative_under_connected_sum() {
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..20 {
        let a = random_knot(&mut rng, 7);
        let b = random_knot(&mut rng, 7);
        let s = a.connected_sum(&b).unwrap();
        let pa = invariants::alexander_polynomial(&a).unwrap();
        let pb = invariants::alexander_polynomial(&b).unwrap();
        let ps = invariants::alexander_polynomial(&s).unwrap();
        let mut prod = vec![0i64; pa.coefficients.len() + pb.coefficients.len() - 1];
        for (i, x) in pa.coefficients.iter().enumerate() {
            for (j, y) in pb.coefficients.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        if prod.last().is_some_and(|&c| c < 0) {
            for c in &mut prod {
                *c = -*c;
            }
        }
        assert_eq!(ps.coefficients, prod, "{} # {}", a.serialize(), b.serialize());
        assert_eq!(
            invariants::determinant(&s).unwrap(),
            invariants::determinant(&a).unwrap() * invariants::determinant(&b).unwrap()
        );
    }
}

#[test]
fn connected_sum_determinant_associative() {
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..20 {
        let a = random_knot(&mut rng, 5);
        let b = random_knot(&mut rng, 5);
        let c = random_knot(&mut rng, 5);
        let left = a.connected_sum(&b).unwrap().connected_sum(&c).unwrap();
        let right = a.connected_sum(&b.connected_sum(&c).unwrap()).unwrap();
        assert_eq!(
            invariants::determinant(&left).unwrap(),
            invariants::determinant(&right).unwrap()
        );
    }
}

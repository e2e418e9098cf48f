//! Shared randomized generators for integration tests.

use rand::rngs::StdRng;
use rand::Rng;
use symknot::braid;
use symknot::diagram::{Crossing, KnotDiagram};
use symknot::symmetric::{
    build_symmetric_union, cut_open, AxisEnd, AxisInsertion, HalfTangle, SymmetricUnionDiagram,
};

/// Random 1-component braid closure with up to `max_crossings` crossings.
pub fn random_knot(rng: &mut StdRng, max_crossings: usize) -> KnotDiagram {
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

/// Random symmetric union whose partial knot is a random braid-closure
/// knot: the knot is cut open into a half tangle, and each extra strand
/// comes from re-cutting and re-joining through a twist insertion.
pub fn random_su(rng: &mut StdRng, max_half_crossings: usize) -> SymmetricUnionDiagram {
    'outer: loop {
        let d = random_knot(rng, max_half_crossings.max(1));
        if d.crossing_count() > max_half_crossings {
            continue;
        }
        // find a cuttable arc: the realization check accepts exactly the
        // arcs whose cut point can reach the axis
        let mut arcs: Vec<u32> = (1..=d.arc_count()).collect();
        for k in (1..arcs.len()).rev() {
            arcs.swap(k, rng.gen_range(0..=k));
        }
        let mut su = None;
        for &a in &arcs {
            let half = cut_open(&d, a).unwrap();
            if let Ok(ok) = build_symmetric_union(half, vec![]) {
                su = Some(ok);
                break;
            }
        }
        let Some(mut su) = su else { continue };
        // optionally split strands to add twist regions
        let extra = rng.gen_range(0..=2usize);
        'grow: for _ in 0..extra {
            let half = su.half().clone();
            let m2 = half.ends.len();
            // choose an arc to cut; relabel arcs above it
            let all_arcs: u32 = half
                .crossings
                .iter()
                .flat_map(|c| c.slots)
                .chain(half.ends.iter().map(|e| e.arc))
                .max()
                .unwrap_or(0);
            for _attempt in 0..12 {
                let cut = rng.gen_range(1..=all_arcs);
                let bump = |x: u32| if x > cut { x + 1 } else { x };
                let crossings: Vec<Crossing> = half
                    .crossings
                    .iter()
                    .map(|c| Crossing { slots: c.slots.map(bump) })
                    .collect();
                let ends_base: Vec<AxisEnd> =
                    half.ends.iter().map(|e| AxisEnd { arc: bump(e.arc), tail: e.tail }).collect();
                let twists = loop {
                    let t = rng.gen_range(-3i32..=3);
                    if t != 0 {
                        break t;
                    }
                };
                // the cut splits arc `cut` into head piece `cut` and tail
                // piece `cut+1`; insert the new end pair at a random axis
                // position
                let pos = rng.gen_range(0..=m2);
                let mut ends = ends_base.clone();
                ends.insert(pos, AxisEnd { arc: cut + 1, tail: true });
                ends.insert(pos, AxisEnd { arc: cut, tail: false });
                let mut insertions: Vec<AxisInsertion> = su
                    .insertions()
                    .iter()
                    .map(|i| {
                        let mut site = i.site;
                        if site > pos {
                            site += 2;
                        }
                        AxisInsertion { site, half_twists: i.half_twists }
                    })
                    .collect();
                insertions.push(AxisInsertion { site: pos + 1, half_twists: twists });
                let half2 = HalfTangle { crossings, ends };
                if let Ok(ok) = build_symmetric_union(half2, insertions) {
                    su = ok;
                    continue 'grow;
                }
            }
            // could not grow further; keep what we have
            break;
        }
        if su.half().crossing_count() > max_half_crossings {
            continue 'outer;
        }
        return su;
    }
}

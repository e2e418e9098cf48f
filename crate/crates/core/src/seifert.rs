//! Seifert matrix of the surface built by the Seifert algorithm.
//!
//! The surface retracts to a fat graph: one disk per Seifert circle and one
//! half-twisted band per crossing, attached at the crossing in the cyclic
//! order read off the circle. A basis of H1 comes from the fundamental
//! cycles of a spanning tree. The linking number of a pushed-off basis
//! cycle with another is half the signed count of shadow crossings between
//! the two tracks, with each track drawn as follows: through a band it keeps
//! its corridor lane (the half twist swaps lanes and crosses every pair of
//! tracks once), and on a disk it dives off the boundary to a fixed depth
//! lane, hugs the circle along its orientation, and rises at its exit mouth.
//! Crossings on a disk then happen exactly where one track dives or rises
//! inside another track's hug interval at a shallower depth.
//!
//! The pushed-off copy of a cycle hovers off the surface, so its shadow is
//! the cycle's own shadow: diagonal entries only collect the band twists.

use crate::diagram::KnotDiagram;
use crate::matrix::IntMatrix;
use crate::{Error, Result};
use std::collections::{HashMap, VecDeque};

struct FatGraph {
    /// events[c] = crossing indices met along circle c, in cyclic order.
    events: Vec<Vec<usize>>,
    /// For each crossing: the two incident circles (tail, head) with the
    /// position of the crossing in each circle's event list.
    band_ends: Vec<((usize, usize), (usize, usize))>,
    /// +1 if the circle runs counterclockwise in the plane.
    rotation: Vec<i8>,
    signs: Vec<i8>,
    /// Per band: whether it climbs over the disk at its tail/head end (its
    /// channel region is the disk side of that circle). Such a band casts a
    /// shadow across every hug lane of that disk near its mouth.
    fold_tail: Vec<bool>,
    fold_head: Vec<bool>,
}

fn build_fatgraph(d: &KnotDiagram) -> Result<FatGraph> {
    let circles = d.seifert_circles()?;
    let signs = d.crossing_signs()?;
    let over_in = d.over_in_slots_checked()?;
    let n = d.crossings().len();

    let mut ends: Vec<Vec<(usize, usize)>> = vec![vec![]; n];
    for (c, evs) in circles.events.iter().enumerate() {
        for (pos, &x) in evs.iter().enumerate() {
            ends[x].push((c, pos));
        }
    }
    let mut band_ends = Vec::with_capacity(n);
    for (x, e) in ends.iter().enumerate() {
        if e.len() != 2 || e[0].0 == e[1].0 {
            return Err(Error::inconsistency(format!(
                "crossing {x} does not join two distinct Seifert circles"
            )));
        }
        let (mut t, mut h) = (e[0], e[1]);
        if t.0 > h.0 {
            std::mem::swap(&mut t, &mut h);
        }
        band_ends.push((t, h));
    }

    // circle rotations: merge diagram faces across each smoothing and walk
    // the region tree of the circle arrangement from the outer face
    let (face_of_corner, face_count) = d.faces()?;
    let mut uf: Vec<usize> = (0..face_count).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for i in 0..n {
        let (p, q) = if over_in[i] == 1 { (0, 2) } else { (1, 3) };
        let a = find(&mut uf, face_of_corner[i][p]);
        let b = find(&mut uf, face_of_corner[i][q]);
        uf[a] = b;
    }
    let ports = d.arc_ports()?;
    let mut left_of: Vec<Option<usize>> = vec![None; circles.count];
    let mut right_of: Vec<Option<usize>> = vec![None; circles.count];
    for (arc, (out, inp)) in &ports {
        let c = circles.circle_of_arc[arc];
        if left_of[c].is_none() {
            // the face walk marks right faces at arrival corners
            let right = face_of_corner[inp.0][inp.1 as usize];
            let left = face_of_corner[out.0][out.1 as usize];
            left_of[c] = Some(find(&mut uf, left));
            right_of[c] = Some(find(&mut uf, right));
        }
    }
    let outer = find(&mut uf, face_of_corner[0][0]);
    let mut depth: HashMap<usize, usize> = HashMap::new();
    depth.insert(outer, 0);
    let mut queue = VecDeque::from([outer]);
    while let Some(r) = queue.pop_front() {
        for c in 0..circles.count {
            let (l, rgt) = (left_of[c].unwrap(), right_of[c].unwrap());
            let nbr = if l == r {
                rgt
            } else if rgt == r {
                l
            } else {
                continue;
            };
            if !depth.contains_key(&nbr) {
                depth.insert(nbr, depth[&r] + 1);
                queue.push_back(nbr);
            }
        }
    }
    let mut rotation = vec![0i8; circles.count];
    let mut disk_side = vec![0usize; circles.count];
    for c in 0..circles.count {
        let (l, r) = (left_of[c].unwrap(), right_of[c].unwrap());
        let (dl, dr) = match (depth.get(&l), depth.get(&r)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::inconsistency("disconnected circle region graph")),
        };
        // counterclockwise iff the disk side (the deeper region) is on the
        // left of the traversal
        rotation[c] = if dl > dr { 1 } else { -1 };
        disk_side[c] = if dl > dr { l } else { r };
    }
    // channel region of each crossing: the merged class of its smoothing
    let mut fold_tail = vec![false; n];
    let mut fold_head = vec![false; n];
    for x in 0..n {
        let corner = if over_in[x] == 1 { 0 } else { 1 };
        let channel = find(&mut uf, face_of_corner[x][corner]);
        let ((tc, _), (hc, _)) = band_ends[x];
        fold_tail[x] = channel == disk_side[tc];
        fold_head[x] = channel == disk_side[hc];
    }
    Ok(FatGraph { events: circles.events, band_ends, rotation, signs, fold_tail, fold_head })
}

/// One step of a basis cycle: crossing `band`, walked tail-to-head or not.
#[derive(Debug, Clone, Copy)]
struct Step {
    band: usize,
    forward: bool,
}

fn fundamental_cycles(fg: &FatGraph) -> Vec<Vec<Step>> {
    let s = fg.events.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![vec![]; s];
    for (x, &((tc, _), (hc, _))) in fg.band_ends.iter().enumerate() {
        adj[tc].push((hc, x));
        adj[hc].push((tc, x));
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; s];
    let mut seen = vec![false; s];
    seen[0] = true;
    let mut order = VecDeque::from([0usize]);
    let mut tree_edge = vec![false; fg.band_ends.len()];
    while let Some(v) = order.pop_front() {
        for &(w, x) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, x));
                tree_edge[x] = true;
                order.push_back(w);
            }
        }
    }
    let path_to_root = |mut v: usize| -> Vec<(usize, usize)> {
        let mut p = vec![];
        while let Some((u, x)) = parent[v] {
            p.push((v, x));
            v = u;
        }
        p
    };
    let other_end = |band: usize, at: usize| -> usize {
        let ((tc, _), (hc, _)) = fg.band_ends[band];
        if tc == at {
            hc
        } else {
            tc
        }
    };
    let mut cycles = vec![];
    for (x, &((tc, _), (hc, _))) in fg.band_ends.iter().enumerate() {
        if tree_edge[x] {
            continue;
        }
        let mut up_t = path_to_root(tc);
        let mut up_h = path_to_root(hc);
        while let (Some(&(_, xa)), Some(&(_, xb))) = (up_t.last(), up_h.last()) {
            if xa == xb {
                up_t.pop();
                up_h.pop();
            } else {
                break;
            }
        }
        // tc -> hc over x, then hc up the tree to the meet, then down to tc
        let mut steps = vec![Step { band: x, forward: fg.band_ends[x].0 .0 == tc }];
        let mut at = hc;
        for &(v, e) in &up_h {
            debug_assert_eq!(v, at);
            steps.push(Step { band: e, forward: fg.band_ends[e].0 .0 == at });
            at = other_end(e, at);
        }
        for &(v, e) in up_t.iter().rev() {
            debug_assert_eq!(other_end(e, v), at);
            steps.push(Step { band: e, forward: fg.band_ends[e].0 .0 == at });
            at = v;
        }
        debug_assert_eq!(at, tc);
        cycles.push(steps);
    }
    cycles
}

/// Refined position on a circle: event index plus the corridor rank of the
/// track within the band mouth at that event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Pt {
    pos: usize,
    rank: i64,
}

/// Strictly inside the cyclic interval (a, b).
fn inside(a: Pt, b: Pt, x: Pt) -> bool {
    if a < b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

/// Disk visit of one cycle: enter at `p` (diving), exit at `q` (rising).
/// The fold flags record whether the arriving/departing band climbs over
/// this disk at its mouth.
#[derive(Debug, Clone, Copy)]
struct Visit {
    circle: usize,
    p: Pt,
    p_fold: bool,
    q: Pt,
    q_fold: bool,
}

pub fn seifert_matrix(d: &KnotDiagram) -> Result<IntMatrix> {
    if d.crossings().is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let fg = build_fatgraph(d)?;
    let cycles = fundamental_cycles(&fg);
    let m = cycles.len();
    // corridor rank: ascending by cycle index at tail mouths; the half twist
    // reverses the order at head mouths
    let rank = |cycle: usize, at_tail: bool| -> i64 {
        if at_tail {
            cycle as i64
        } else {
            -(cycle as i64)
        }
    };
    let visits_of = |steps: &[Step], cycle_idx: usize| -> Vec<Visit> {
        let k = steps.len();
        let mut out = Vec::with_capacity(k);
        for i in 0..k {
            let s = steps[i];
            let t = steps[(i + 1) % k];
            let (tail, head) = fg.band_ends[s.band];
            let arrive = if s.forward { head } else { tail };
            let arrive_at_tail = !s.forward;
            let (t_tail, t_head) = fg.band_ends[t.band];
            let depart = if t.forward { t_tail } else { t_head };
            let depart_at_tail = t.forward;
            debug_assert_eq!(arrive.0, depart.0);
            out.push(Visit {
                circle: arrive.0,
                p: Pt { pos: arrive.1, rank: rank(cycle_idx, arrive_at_tail) },
                p_fold: if arrive_at_tail { fg.fold_tail[s.band] } else { fg.fold_head[s.band] },
                q: Pt { pos: depart.1, rank: rank(cycle_idx, depart_at_tail) },
                q_fold: if depart_at_tail { fg.fold_tail[t.band] } else { fg.fold_head[t.band] },
            });
        }
        out
    };
    let all_visits: Vec<Vec<Visit>> = cycles
        .iter()
        .enumerate()
        .map(|(k, c)| visits_of(c, k))
        .collect();
    let mut v = IntMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let mut sum: i64 = 0;
            // band twists: one shadow crossing per shared band
            for si in &cycles[i] {
                for sj in &cycles[j] {
                    if si.band == sj.band {
                        let dir = if si.forward == sj.forward { 1 } else { -1 };
                        sum += -(fg.signs[si.band] as i64) * dir;
                    }
                }
            }
            if i != j {
                // disk crossings. Cycle index doubles as the depth lane
                // (larger index hugs deeper). A dive or rise crosses every
                // shallower hug it lands inside of; a fold-mouth band
                // additionally shadows every hug lane at its position.
                for vi in &all_visits[i] {
                    for vj in &all_visits[j] {
                        if vi.circle != vj.circle {
                            continue;
                        }
                        let rot = fg.rotation[vi.circle] as i64;
                        // events of j against i's hug
                        if inside(vi.p, vi.q, vj.p) {
                            if i < j {
                                sum += 1; // j dives through i's hug
                            }
                            if vj.p_fold {
                                sum += rot; // j's band shadows i's hug
                            }
                        }
                        if inside(vi.p, vi.q, vj.q) {
                            if i < j {
                                sum += -1; // j rises through i's hug
                            }
                            if vj.q_fold {
                                sum += -rot;
                            }
                        }
                        // events of i against j's hug
                        if inside(vj.p, vj.q, vi.p) {
                            if j < i {
                                sum += -1;
                            }
                            if vi.p_fold {
                                sum += rot;
                            }
                        }
                        if inside(vj.p, vj.q, vi.q) {
                            if j < i {
                                sum += 1;
                            }
                            if vi.q_fold {
                                sum += -rot;
                            }
                        }
                    }
                }
            }
            if sum.rem_euclid(2) != 0 {
                return Err(Error::inconsistency(format!(
                    "odd crossing sum {sum} between cycles {i} and {j}"
                )));
            }
            v[(i, j)] = (sum / 2) as i128;
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_matrix_empty() {
        let v = seifert_matrix(&KnotDiagram::unknot()).unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn trefoil_matrix() {
        let d = KnotDiagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let v = seifert_matrix(&d).unwrap();
        assert_eq!(v.rows(), 2);
        // |det(V + V^T)| is the determinant 3
        let mut s = IntMatrix::zeros(2, 2);
        let mut a = IntMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                s[(i, j)] = v[(i, j)] + v[(j, i)];
                a[(i, j)] = v[(i, j)] - v[(j, i)];
            }
        }
        assert_eq!(s.det().abs(), 3);
        // V - V^T is the intersection form, so unimodular
        assert_eq!(a.det().abs(), 1);
    }

    #[test]
    fn figure_eight_matrix() {
        let d = crate::braid::figure_eight();
        let v = seifert_matrix(&d).unwrap();
        assert_eq!(v.rows(), 2);
        let mut s = IntMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                s[(i, j)] = v[(i, j)] + v[(j, i)];
            }
        }
        assert_eq!(s.det().abs(), 5);
    }
}

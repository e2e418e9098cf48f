//! 4-ended tangles, partial sums, and the twisted family of ribbon knots.
//!
//! A tangle is a ball with two properly embedded arcs, drawn as a PD-style
//! crossing list whose four open ends sit at the corners NW, NE, SW, SE.
//! A partial sum glues a (disk, two points) pair in one boundary to a
//! similar pair in another; here the east pair of the left operand meets
//! the west pair of the right one.
//!
//! The family generator chains one copy of the base tangle with n copies of
//! the twist tangle and closes up. The same knots arise as boundaries of a
//! two-singularity flat band, which is how the ribbon certificate is
//! produced.

use crate::band::{boundary_knot, boundary_tangle_wiring, CoreEvent, FlatBandDiagram, Role};
use crate::diagram::{Crossing, KnotDiagram};
use crate::invariants::{self, BoundsReport};
use crate::symmetric::{AxisEnd, HalfTangle};
use crate::wiring::{add_oriented_crossing, Dir, End, Wiring};
use crate::{Error, Result};
use std::collections::HashMap;

/// Corner order: NW, NE, SW, SE.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    NW = 0,
    NE = 1,
    SW = 2,
    SE = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TangleEnd {
    pub arc: u32,
    /// The strand starts here (flows into the tangle).
    pub tail: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tangle {
    pub crossings: Vec<Crossing>,
    /// Ends in corner order NW, NE, SW, SE.
    pub ends: [TangleEnd; 4],
}

impl Tangle {
    pub fn end(&self, c: Corner) -> TangleEnd {
        self.ends[c as usize]
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn as_half(&self) -> HalfTangle {
        HalfTangle {
            crossings: self.crossings.clone(),
            ends: self.ends.iter().map(|e| AxisEnd { arc: e.arc, tail: e.tail }).collect(),
        }
    }

    /// Validity: four ends, exactly two open strands, no closed component.
    pub fn validate(&self) -> Result<()> {
        let orient = self.as_half().orient()?;
        let strands = orient.strands.len();
        if strands != 2 {
            return Err(Error::invalid(format!("tangle has {strands} strands, expected 2")));
        }
        Ok(())
    }

    fn max_arc(&self) -> u32 {
        self.crossings
            .iter()
            .flat_map(|c| c.slots)
            .chain(self.ends.iter().map(|e| e.arc))
            .max()
            .unwrap_or(0)
    }

    fn relabel(&self, f: impl Fn(u32) -> u32) -> Tangle {
        Tangle {
            crossings: self.crossings.iter().map(|c| Crossing { slots: c.slots.map(&f) }).collect(),
            ends: self.ends.map(|e| TangleEnd { arc: f(e.arc), tail: e.tail }),
        }
    }
}

/// Joins two strand ends; the tail-side arc is renamed to the head arc.
/// Returns (renamed from, to).
fn glue_pair(crossings: &mut [Crossing], a: TangleEnd, b: TangleEnd) -> Result<(u32, u32)> {
    if a.tail == b.tail {
        return Err(Error::invalid("gluing needs one incoming and one outgoing strand end"));
    }
    let (head, tail) = if a.tail { (b, a) } else { (a, b) };
    let (from, to) = (tail.arc, head.arc);
    if from == to {
        return Err(Error::invalid("gluing closes a strand onto itself"));
    }
    for c in crossings.iter_mut() {
        for s in c.slots.iter_mut() {
            if *s == from {
                *s = to;
            }
        }
    }
    Ok((from, to))
}

/// Reverses the orientation of the strand holding the given end: the slot
/// anchor of every crossing the strand passes under rotates by two, and the
/// strand's two end flags swap. Tangles are pairs of unoriented arcs, so
/// this changes nothing but the bookkeeping.
fn reverse_strand(t: &Tangle, end_arc: u32) -> Result<Tangle> {
    let orient = t.as_half().orient()?;
    let sid = *orient
        .strand_of_arc
        .get(&end_arc)
        .ok_or_else(|| Error::invalid("unknown strand end"))?;
    let mut crossings = t.crossings.clone();
    for (i, c) in t.crossings.iter().enumerate() {
        if orient.strand_of_arc[&c.slots[0]] == sid {
            crossings[i] =
                Crossing { slots: [c.slots[2], c.slots[3], c.slots[0], c.slots[1]] };
        }
    }
    let ends = t.ends.map(|e| {
        if orient.strand_of_arc.get(&e.arc) == Some(&sid) {
            TangleEnd { arc: e.arc, tail: !e.tail }
        } else {
            e
        }
    });
    let out = Tangle { crossings, ends };
    out.validate()?;
    Ok(out)
}

/// Flips strands of `b` so that each listed (a-end, b-end) pair joins an
/// incoming to an outgoing strand.
fn heal_orientations(b: &Tangle, pairs: &[(TangleEnd, Corner)]) -> Result<Tangle> {
    let mut b = b.clone();
    for &(a_end, b_corner) in pairs {
        let be = b.end(b_corner);
        if a_end.tail == be.tail {
            b = reverse_strand(&b, be.arc)?;
        }
    }
    Ok(b)
}

/// Partial sum: glues the east pair of `a` to the west pair of `b`
/// (NE to NW and SE to SW). The arcs of a tangle are unoriented, so a
/// strand of `b` is reversed whenever the orientations disagree at the
/// gluing disk. The result keeps `a`'s west pair and `b`'s east pair.
pub fn partial_sum(a: &Tangle, b: &Tangle) -> Result<Tangle> {
    Ok(partial_sum_tracked(a, b)?.0)
}

/// Partial sum that also reports the post-merge arc names crossing the
/// gluing disk: (upper strand, lower strand).
pub(crate) fn partial_sum_tracked(a: &Tangle, b: &Tangle) -> Result<(Tangle, (u32, u32))> {
    a.validate()?;
    b.validate()?;
    let b = heal_orientations(
        b,
        &[(a.end(Corner::NE), Corner::NW), (a.end(Corner::SE), Corner::SW)],
    )?;
    let off = a.max_arc();
    let b = b.relabel(|x| x + off);
    let mut crossings = a.crossings.clone();
    crossings.extend(b.crossings.iter().cloned());
    let r1 = glue_pair(&mut crossings, a.end(Corner::NE), b.end(Corner::NW))?;
    let r2 = glue_pair(&mut crossings, a.end(Corner::SE), b.end(Corner::SW))?;
    let fix = |e: TangleEnd| -> TangleEnd {
        let mut arc = e.arc;
        if arc == r1.0 {
            arc = r1.1;
        }
        if arc == r2.0 {
            arc = r2.1;
        }
        TangleEnd { arc, tail: e.tail }
    };
    let t = Tangle {
        crossings,
        ends: [
            fix(a.end(Corner::NW)),
            fix(b.end(Corner::NE)),
            fix(a.end(Corner::SW)),
            fix(b.end(Corner::SE)),
        ],
    };
    t.validate()?;
    Ok((t, (r1.1, r2.1)))
}

/// Closes a tangle into a knot diagram by joining its east pair back around
/// to its west pair: NE to NW and SE to SW. Returns the diagram and the
/// label compaction map applied at the end.
fn close_tangle_tracked(t: &Tangle) -> Result<(KnotDiagram, impl Fn(u32) -> u32)> {
    t.validate()?;
    let healed = heal_orientations(
        t,
        &[(t.end(Corner::NE), Corner::NW), (t.end(Corner::SE), Corner::SW)],
    );
    // healing against the tangle itself converges in one pass unless both
    // gluings touch one strand; retry once through the other corner
    let t = match healed {
        Ok(h) if h.end(Corner::NE).tail != h.end(Corner::NW).tail
            && h.end(Corner::SE).tail != h.end(Corner::SW).tail => h,
        _ => {
            let h = heal_orientations(
                t,
                &[(t.end(Corner::SE), Corner::SW), (t.end(Corner::NE), Corner::NW)],
            )?;
            h
        }
    };
    let t = &t;
    let mut crossings = t.crossings.clone();
    let r1 = glue_pair(&mut crossings, t.end(Corner::NE), t.end(Corner::NW))?;
    let fix1 = |e: TangleEnd| -> TangleEnd {
        TangleEnd { arc: if e.arc == r1.0 { r1.1 } else { e.arc }, tail: e.tail }
    };
    let r2 = glue_pair(&mut crossings, fix1(t.end(Corner::SE)), fix1(t.end(Corner::SW)))?;
    let mut seen: Vec<u32> = crossings.iter().flat_map(|c| c.slots).collect();
    seen.sort();
    seen.dedup();
    let index: HashMap<u32, u32> = seen.iter().enumerate().map(|(i, &a)| (a, i as u32 + 1)).collect();
    let compact: Vec<Crossing> =
        crossings.iter().map(|c| Crossing { slots: c.slots.map(|s| index[&s]) }).collect();
    let n = seen.len() as u32;
    let d = KnotDiagram::from_crossings(compact, n)?;
    d.require_valid()?;
    let map = move |a: u32| -> u32 {
        let a = if a == r1.0 { r1.1 } else { a };
        let a = if a == r2.0 { r2.1 } else { a };
        index[&a]
    };
    Ok((d, map))
}

/// Closes a tangle into a knot diagram.
pub fn close_tangle(t: &Tangle) -> Result<KnotDiagram> {
    Ok(close_tangle_tracked(t)?.0)
}

/// Walks an open wiring whose four loose ends are the given corner
/// terminals, producing a tangle.
fn trace_open_tangle(w: &Wiring, corners: [End; 4]) -> Result<Tangle> {
    let mut adj: HashMap<End, Vec<End>> = HashMap::new();
    for &(a, b) in w.pairs() {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    // step through pass-through terminals (degree two) to the next port or
    // degree-one terminal
    let step = |from: End, at: End| -> (End, End) {
        let mut prev = from;
        let mut cur = at;
        loop {
            match cur {
                End::Port { .. } => return (prev, cur),
                End::Term(_) => {
                    let nbrs = &adj[&cur];
                    if nbrs.len() == 1 {
                        return (prev, cur);
                    }
                    let nxt = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
                    prev = cur;
                    cur = nxt;
                }
            }
        }
    };
    let mut arc_at: HashMap<End, u32> = HashMap::new();
    let mut corner_arc: HashMap<End, (u32, bool)> = HashMap::new();
    let mut next_arc = 0u32;
    for &start in &corners {
        if corner_arc.contains_key(&start) {
            continue;
        }
        let (_, probe) = step(start, adj[&start][0]);
        let is_tail = match probe {
            End::Term(_) => true, // crossing-free strand, orient from here
            End::Port { node, slot } => w.port_is_in(node, slot),
        };
        if !is_tail {
            continue;
        }
        next_arc += 1;
        corner_arc.insert(start, (next_arc, true));
        let (mut prev, mut cur) = (start, adj[&start][0]);
        loop {
            let (p, c) = step(prev, cur);
            prev = p;
            cur = c;
            match cur {
                End::Term(_) => {
                    corner_arc.insert(cur, (next_arc, false));
                    break;
                }
                End::Port { node, slot } => {
                    arc_at.insert(cur, next_arc);
                    next_arc += 1;
                    let out = End::Port { node, slot: (slot + 2) % 4 };
                    arc_at.insert(out, next_arc);
                    prev = out;
                    cur = adj[&out][0];
                }
            }
        }
    }
    let mut crossings = vec![];
    for node in 0..w.node_count() {
        let mut out = [0u32; 4];
        for s in 0..4u8 {
            out[s as usize] = *arc_at
                .get(&End::Port { node, slot: s })
                .ok_or_else(|| Error::inconsistency("tangle walk missed a port"))?;
        }
        crossings.push(Crossing { slots: out });
    }
    let mut ends = [TangleEnd { arc: 0, tail: false }; 4];
    for (i, &c) in corners.iter().enumerate() {
        let (arc, tail) = *corner_arc
            .get(&c)
            .ok_or_else(|| Error::inconsistency("corner not reached by any strand"))?;
        ends[i] = TangleEnd { arc, tail };
    }
    let t = Tangle { crossings, ends };
    t.validate()?;
    Ok(t)
}

/// Twist tangle: the two chain strands cross `n` times. The upper strand
/// flows westward (the returning band edge), the lower one eastward.
fn twist_tangle(n: usize) -> Result<Tangle> {
    let mut w = Wiring::new();
    let nw = w.add_term();
    let ne = w.add_term();
    let sw = w.add_term();
    let se = w.add_term();
    let mut cur_t = nw;
    let mut cur_b = sw;
    let mut top_westward = true;
    for _ in 0..n {
        // rows swap through each crossing and the strand entering from the
        // upper left goes on top
        let a_dir: Dir = if top_westward { (-1, 1) } else { (1, -1) };
        let b_dir: Dir = if top_westward { (1, 1) } else { (-1, -1) };
        let (over, under) = (a_dir, b_dir);
        let (_n, at) = add_oriented_crossing(&mut w, under, over);
        w.join(cur_t, at((-1, 1)));
        w.join(cur_b, at((-1, -1)));
        cur_t = at((1, 1));
        cur_b = at((1, -1));
        top_westward = !top_westward;
    }
    w.join(cur_t, ne);
    w.join(cur_b, se);
    trace_open_tangle(&w, [nw, ne, sw, se])
}

/// The flat band whose boundary is the base ribbon knot of the family,
/// with `n` blocks of half twists inserted along the chain segment.
pub(crate) fn family_band(n: usize, block: usize) -> FlatBandDiagram {
    let mut evs = vec![CoreEvent::SingPass { id: 1, role: Role::Clasp, branch_sign: 1 }];
    for _ in 0..n * block {
        evs.push(CoreEvent::HalfTwist { sign: 1 });
    }
    evs.extend([
        CoreEvent::SingPass { id: 2, role: Role::Through, branch_sign: -1 },
        CoreEvent::SingPass { id: 1, role: Role::Through, branch_sign: -1 },
        CoreEvent::SingPass { id: 2, role: Role::Clasp, branch_sign: 1 },
    ]);
    FlatBandDiagram { events: evs }
}

/// Half twists per chain block.
pub const BLOCK_TWISTS: usize = 3;

/// The two fixed generating tangles: the base tangle carries the two ribbon
/// singularities of the band (its boundary cut open along the chain
/// segment), the twist tangle is one chain block.
pub fn builtin_tangles() -> (Tangle, Tangle) {
    let t1 = base_tangle().expect("base tangle construction");
    let t2 = twist_tangle(BLOCK_TWISTS).expect("twist tangle construction");
    (t1, t2)
}

fn base_tangle() -> Result<Tangle> {
    let bd = family_band(0, BLOCK_TWISTS);
    let (w, corners) = boundary_tangle_wiring(&bd, 1)?;
    trace_open_tangle(&w, corners)
}

/// A knot of the family with its ribbon certificate: the tangle-sum
/// diagram, the matching two-singularity flat band, and one marker per
/// chain block recording the four arcs its separating circle crosses.
#[derive(Debug, Clone)]
pub struct FamilyKnot {
    pub n: usize,
    pub diagram: KnotDiagram,
    pub ribbon_band: FlatBandDiagram,
    pub sphere_markers: Vec<[u32; 4]>,
}

/// Builds the n-th family knot as the iterated partial sum of the base
/// tangle with n twist tangles, closed up.
pub fn build_kn(n: usize) -> Result<FamilyKnot> {
    if n == 0 {
        return Err(Error::invalid("family index starts at 1"));
    }
    let (t1, t2) = builtin_tangles();
    let mut chain = t1;
    let mut interfaces: Vec<(u32, u32)> = vec![];
    for _ in 0..n {
        let (next, glued) = partial_sum_tracked(&chain, &t2)?;
        chain = next;
        interfaces.push(glued);
    }
    let east_final = (chain.end(Corner::NE).arc, chain.end(Corner::SE).arc);
    let (diagram, relabel) = close_tangle_tracked(&chain)?;
    let mut markers = vec![];
    for (k, &(wtop, wbot)) in interfaces.iter().enumerate() {
        let (etop, ebot) =
            if k + 1 < interfaces.len() { interfaces[k + 1] } else { east_final };
        markers.push([relabel(wtop), relabel(wbot), relabel(etop), relabel(ebot)]);
    }
    let ribbon_band = family_band(n, BLOCK_TWISTS);
    crate::band::validate_flat(&ribbon_band)?;
    let fk = FamilyKnot { n, diagram, ribbon_band, sphere_markers: markers };
    fk.verify()?;
    Ok(fk)
}

impl FamilyKnot {
    /// Checks the ribbon certificate: two singularities, boundary
    /// invariants matching the tangle diagram, and genuinely separating
    /// 4-point markers.
    pub fn verify(&self) -> Result<()> {
        if self.ribbon_band.singularity_count() != 2 {
            return Err(Error::inconsistency("family band must have two singularities"));
        }
        let b = boundary_knot(&self.ribbon_band)?;
        if invariants::determinant(&b)? != invariants::determinant(&self.diagram)? {
            return Err(Error::inconsistency(
                "family band boundary determinant differs from the tangle diagram",
            ));
        }
        if invariants::alexander_polynomial(&b)? != invariants::alexander_polynomial(&self.diagram)?
        {
            return Err(Error::inconsistency(
                "family band boundary Alexander polynomial differs from the tangle diagram",
            ));
        }
        if self.sphere_markers.len() != self.n {
            return Err(Error::inconsistency("marker count must equal n"));
        }
        for m in &self.sphere_markers {
            if !marker_separates(&self.diagram, m)? {
                return Err(Error::inconsistency(format!(
                    "marker {m:?} does not separate the diagram in four points"
                )));
            }
        }
        Ok(())
    }
}

/// A circle crossing exactly these four arcs must cut the diagram's
/// underlying graph into two nonempty parts.
fn marker_separates(d: &KnotDiagram, arcs: &[u32; 4]) -> Result<bool> {
    let mut set = arcs.to_vec();
    set.sort();
    set.dedup();
    if set.len() != 4 {
        return Ok(false);
    }
    let n = d.crossings().len();
    if n < 2 {
        return Ok(false);
    }
    let mut occ: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, c) in d.crossings().iter().enumerate() {
        for &a in &c.slots {
            occ.entry(a).or_default().push(i);
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![vec![]; n];
    for (a, who) in &occ {
        if set.contains(a) {
            continue;
        }
        if who.len() == 2 && who[0] != who[1] {
            adj[who[0]].push(who[1]);
            adj[who[1]].push(who[0]);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                reached += 1;
                stack.push(u);
            }
        }
    }
    Ok(reached < n)
}

/// Bound chain for the n-th family knot, using its two-singularity plain
/// ribbon witness.
pub fn kn_report(n: usize) -> Result<BoundsReport> {
    let fk = build_kn(n)?;
    let mut report = invariants::bounds_report(&fk.diagram, 2, false)?;
    report.note = Some(
        "ribbon witness r = 2 is a plain (not symmetric) presentation; the Heegaard genus \
         growth of the branched double covers is not certified by homology"
            .into(),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tangles_are_valid() {
        let (t1, t2) = builtin_tangles();
        t1.validate().unwrap();
        t2.validate().unwrap();
        assert_eq!(t2.crossing_count(), BLOCK_TWISTS);
    }

    #[test]
    fn partial_sum_counts() {
        let (t1, t2) = builtin_tangles();
        let s = partial_sum(&t1, &t2).unwrap();
        assert_eq!(s.crossing_count(), t1.crossing_count() + t2.crossing_count());
        let mut chain = s;
        for _ in 0..5 {
            chain = partial_sum(&chain, &t2).unwrap();
            chain.validate().unwrap();
        }
    }

    #[test]
    fn base_closure_is_the_square_knot() {
        let (t1, _) = builtin_tangles();
        let d = close_tangle(&t1).unwrap();
        assert_eq!(invariants::determinant(&d).unwrap(), 9);
        let p = invariants::alexander_polynomial(&d).unwrap();
        assert_eq!(p.coefficients, vec![1, -2, 3, -2, 1]);
    }

    #[test]
    fn family_members_check_out() {
        for n in 1..=4 {
            let fk = build_kn(n).unwrap();
            assert_eq!(fk.ribbon_band.singularity_count(), 2);
            assert_eq!(fk.sphere_markers.len(), n);
            let det = invariants::determinant(&fk.diagram).unwrap();
            assert_eq!(det, 9);
            assert!(!invariants::alexander_polynomial(&fk.diagram).unwrap().is_one());
        }
    }

    #[test]
    fn family_report() {
        let r = kn_report(2).unwrap();
        assert_eq!(r.heegaard_upper, 6);
        assert_eq!(r.singularity_count, 2);
        assert!(r.note.is_some());
        let det = r.determinant;
        assert!((1..=det).any(|x| x * x == det), "det {det} not a square");
    }

    #[test]
    fn kn_rejects_zero() {
        assert!(build_kn(0).is_err());
    }
}

//! Oriented knot diagrams as PD codes.
//!
//! A crossing `X(a,b,c,d)` lists the four arcs counterclockwise starting
//! from the incoming under-strand, so the under-strand runs `a -> c`. Arc
//! labels are consecutive along each component. The 0-crossing unknot is
//! admitted as a diagram with a single closed arc.

use crate::matrix::IntMatrix;
use crate::wiring;
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Crossing {
    /// Arcs in slots a, b, c, d: counterclockwise from the incoming
    /// under-strand.
    pub slots: [u32; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    crossings: Vec<Crossing>,
    arc_count: u32,
}

/// Output of the Seifert algorithm on an oriented diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SeifertData {
    pub circle_count: usize,
    pub crossing_count: usize,
    pub genus: usize,
    pub euler_characteristic: i64,
}

/// Structured validation outcome; `ok()` iff no errors were found.
#[derive(Debug, Clone, Default)]
pub struct Validation {
    pub errors: Vec<String>,
}

impl Validation {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }
}

impl KnotDiagram {
    /// The round unknot: no crossings, one closed arc.
    pub fn unknot() -> Self {
        KnotDiagram { crossings: vec![], arc_count: 1 }
    }

    /// Builds a diagram from crossings; sorts them into canonical order.
    pub fn from_crossings(mut crossings: Vec<Crossing>, arc_count: u32) -> Result<Self> {
        if crossings.is_empty() {
            return Ok(KnotDiagram::unknot());
        }
        crossings.sort();
        let d = KnotDiagram { crossings, arc_count };
        d.over_in_slots_checked()?;
        Ok(d)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arc_count(&self) -> u32 {
        self.arc_count
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Parses whitespace-separated `X(a,b,c,d)` tokens. The empty string is
    /// the round unknot.
    pub fn parse_pd(text: &str) -> Result<Self> {
        let mut crossings = vec![];
        let mut max_arc = 0u32;
        for tok in text.split_whitespace() {
            let inner = tok
                .strip_prefix("X(")
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| Error::parse(format!("malformed token `{tok}`")))?;
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 4 {
                return Err(Error::parse(format!("token `{tok}` needs 4 arc labels")));
            }
            let mut slots = [0u32; 4];
            for (i, p) in parts.iter().enumerate() {
                let v: u32 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(format!("bad arc label `{p}` in `{tok}`")))?;
                if v == 0 {
                    return Err(Error::parse("arc labels are positive"));
                }
                slots[i] = v;
                max_arc = max_arc.max(v);
            }
            crossings.push(Crossing { slots });
        }
        if crossings.is_empty() {
            return Ok(KnotDiagram::unknot());
        }
        // arc multiplicity must be exactly two before deeper analysis
        let mut mult: HashMap<u32, u32> = HashMap::new();
        for c in &crossings {
            for &a in &c.slots {
                *mult.entry(a).or_default() += 1;
            }
        }
        if let Some((&a, &m)) = mult.iter().find(|(_, &m)| m != 2) {
            return Err(Error::parse(format!("arc multiplicity: arc {a} used {m} times")));
        }
        KnotDiagram::from_crossings(crossings, max_arc)
    }

    /// Canonical serialization: crossings sorted by first slot label.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let mut cs = self.crossings.clone();
        cs.sort();
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "X({},{},{},{})", c.slots[0], c.slots[1], c.slots[2], c.slots[3]);
        }
        s
    }

    /// For each crossing, the slot (1 or 3) where the over-strand enters.
    ///
    /// Under-strands fix one begin and one end occurrence per crossing; the
    /// over-strand directions are then the unique assignment under which
    /// every arc begins exactly once and ends exactly once. Leftover
    /// ambiguity (components that never pass under) is broken with the
    /// consecutive-numbering convention.
    pub(crate) fn over_in_slots_checked(&self) -> Result<Vec<u8>> {
        let n = self.crossings.len();
        let mut occs: HashMap<u32, Vec<(usize, u8)>> = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for s in 0..4u8 {
                occs.entry(c.slots[s as usize]).or_default().push((i, s));
            }
        }
        if let Some((&a, v)) = occs.iter().find(|(_, v)| v.len() != 2) {
            return Err(Error::invalid(format!("arc multiplicity: arc {a} used {} times", v.len())));
        }
        // needs[arc] = (begin still unassigned, end still unassigned)
        let mut begins: HashMap<u32, u32> = HashMap::new();
        let mut ends: HashMap<u32, u32> = HashMap::new();
        for c in &self.crossings {
            *ends.entry(c.slots[0]).or_default() += 1;
            *begins.entry(c.slots[2]).or_default() += 1;
        }
        let mut over_in: Vec<Option<u8>> = vec![None; n];
        let assign = |i: usize,
                          oi: u8,
                          over_in: &mut Vec<Option<u8>>,
                          begins: &mut HashMap<u32, u32>,
                          ends: &mut HashMap<u32, u32>| {
            over_in[i] = Some(oi);
            let c = &self.crossings[i];
            *ends.entry(c.slots[oi as usize]).or_default() += 1;
            *begins.entry(c.slots[((oi + 2) % 4) as usize]).or_default() += 1;
        };
        loop {
            let mut progress = false;
            for i in 0..n {
                if over_in[i].is_some() {
                    continue;
                }
                let c = &self.crossings[i];
                let (b, d) = (c.slots[1], c.slots[3]);
                let b_end_used = ends.get(&b).copied().unwrap_or(0) > 0;
                let b_begin_used = begins.get(&b).copied().unwrap_or(0) > 0;
                let d_end_used = ends.get(&d).copied().unwrap_or(0) > 0;
                let d_begin_used = begins.get(&d).copied().unwrap_or(0) > 0;
                // over_in = 1 means arc b ends here and arc d begins here
                let can1 = !(b_end_used || d_begin_used) || b == d;
                let can3 = !(d_end_used || b_begin_used) || b == d;
                match (can1, can3) {
                    (true, false) => {
                        assign(i, 1, &mut over_in, &mut begins, &mut ends);
                        progress = true;
                    }
                    (false, true) => {
                        assign(i, 3, &mut over_in, &mut begins, &mut ends);
                        progress = true;
                    }
                    (false, false) => {
                        return Err(Error::invalid(format!(
                            "inconsistent orientation at crossing X({},{},{},{})",
                            c.slots[0], c.slots[1], c.slots[2], c.slots[3]
                        )))
                    }
                    (true, true) => {}
                }
            }
            if progress {
                continue;
            }
            // no forced moves left: break a remaining tie with numbering
            match over_in.iter().position(Option::is_none) {
                None => break,
                Some(i) => {
                    let c = &self.crossings[i];
                    let oi = if c.slots[1] % self.arc_count + 1 == c.slots[3] { 1 } else { 3 };
                    assign(i, oi, &mut over_in, &mut begins, &mut ends);
                }
            }
        }
        let ok = occs.keys().all(|a| {
            begins.get(a).copied().unwrap_or(0) == 1 && ends.get(a).copied().unwrap_or(0) == 1
        });
        if !ok {
            return Err(Error::invalid("inconsistent orientation (arc begins/ends unbalanced)"));
        }
        Ok(over_in.into_iter().map(Option::unwrap).collect())
    }

    pub(crate) fn over_in_slots(&self) -> Vec<u8> {
        self.over_in_slots_checked().expect("diagram was validated")
    }

    /// Signs of all crossings: +1 where the over-strand enters at slot d,
    /// -1 where it enters at slot b.
    pub fn crossing_signs(&self) -> Result<Vec<i8>> {
        Ok(self
            .over_in_slots_checked()?
            .into_iter()
            .map(|oi| if oi == 3 { 1 } else { -1 })
            .collect())
    }

    pub fn writhe(&self) -> Result<i64> {
        Ok(self.crossing_signs()?.iter().map(|&s| s as i64).sum())
    }

    /// Number of components: cycles of the arc successor relation, plus one
    /// closed round arc when there are no crossings.
    pub fn component_count(&self) -> Result<usize> {
        if self.crossings.is_empty() {
            return Ok(1);
        }
        let over_in = self.over_in_slots_checked()?;
        let mut next: HashMap<u32, u32> = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            let oi = over_in[i] as usize;
            let oo = (oi + 2) % 4;
            next.insert(c.slots[0], c.slots[2]);
            next.insert(c.slots[oi], c.slots[oo]);
        }
        let mut seen: HashMap<u32, bool> = HashMap::new();
        let mut comps = 0;
        for &start in next.keys() {
            if seen.get(&start).copied().unwrap_or(false) {
                continue;
            }
            comps += 1;
            let mut x = start;
            loop {
                seen.insert(x, true);
                x = next[&x];
                if x == start {
                    break;
                }
            }
        }
        Ok(comps)
    }

    /// Structural validation. Never aborts; collects every failed invariant.
    pub fn validate(&self) -> Validation {
        let mut v = Validation::default();
        if self.crossings.is_empty() {
            return v;
        }
        let mut mult: HashMap<u32, u32> = HashMap::new();
        for c in &self.crossings {
            for &a in &c.slots {
                *mult.entry(a).or_default() += 1;
            }
        }
        let mut bad: Vec<(u32, u32)> =
            mult.iter().filter(|(_, &m)| m != 2).map(|(&a, &m)| (a, m)).collect();
        bad.sort();
        for (a, m) in bad {
            v.errors.push(format!("arc multiplicity: arc {a} used {m} times"));
        }
        if !v.ok() {
            return v;
        }
        match self.over_in_slots_checked() {
            Err(e) => {
                v.errors.push(e.to_string());
                return v;
            }
            Ok(_) => {}
        }
        match self.component_count() {
            Ok(1) => {}
            Ok(k) => v.errors.push(format!("component count {k}")),
            Err(e) => v.errors.push(e.to_string()),
        }
        match self.face_count() {
            Ok(f) => {
                let n = self.crossings.len();
                if f != n + 2 {
                    v.errors.push(format!(
                        "not planar: {f} faces on {n} crossings (expected {})",
                        n + 2
                    ));
                }
            }
            Err(e) => v.errors.push(e.to_string()),
        }
        v
    }

    pub fn require_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.ok() {
            Ok(())
        } else {
            Err(Error::invalid(v.errors.join("; ")))
        }
    }

    /// Port matching: for each arc, its out-port (where it leaves a
    /// crossing) and in-port (where it enters).
    pub(crate) fn arc_ports(&self) -> Result<HashMap<u32, ((usize, u8), (usize, u8))>> {
        let over_in = self.over_in_slots_checked()?;
        let mut outs: HashMap<u32, (usize, u8)> = HashMap::new();
        let mut ins: HashMap<u32, (usize, u8)> = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            let oi = over_in[i];
            for s in 0..4u8 {
                let arc = c.slots[s as usize];
                if s == 0 || s == oi {
                    ins.insert(arc, (i, s));
                } else {
                    outs.insert(arc, (i, s));
                }
            }
        }
        Ok(outs
            .into_iter()
            .map(|(arc, o)| (arc, (o, ins[&arc])))
            .collect())
    }

    /// Faces of the underlying 4-valent plane graph, as orbits of darts.
    ///
    /// Returns `(face_of_corner, face_count)` where corner `k` of a crossing
    /// is the sector between slots `k` and `k+1`.
    pub(crate) fn faces(&self) -> Result<(Vec<[usize; 4]>, usize)> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok((vec![], 1));
        }
        let ports = self.arc_ports()?;
        // other endpoint of the arc touching each port
        let mut other: HashMap<(usize, u8), (usize, u8)> = HashMap::new();
        for (_, (o, i)) in &ports {
            other.insert(*o, *i);
            other.insert(*i, *o);
        }
        let mut face_of_corner = vec![[usize::MAX; 4]; n];
        let mut face_id = 0usize;
        for start_node in 0..n {
            for start_slot in 0..4u8 {
                // dart: leaving start_node along the arc at start_slot
                if face_of_corner[start_node][((start_slot + 3) % 4) as usize] != usize::MAX {
                    continue;
                }
                // check: has this dart been consumed? we mark corners; the
                // corner swept on arrival identifies the dart uniquely.
                let (mut cn, mut cs) = (start_node, start_slot);
                loop {
                    let (an, aslot) = other[&(cn, cs)];
                    // walking the face counterclockwise at each vertex: the
                    // corner between aslot and aslot+1 belongs to this face
                    if face_of_corner[an][aslot as usize] != usize::MAX {
                        break;
                    }
                    face_of_corner[an][aslot as usize] = face_id;
                    (cn, cs) = (an, (aslot + 1) % 4);
                    if cn == start_node && cs == start_slot {
                        break;
                    }
                }
                // orbit may have been already fully claimed by another start
                face_id += 1;
            }
        }
        // face_id over-counts aborted walks; renumber compactly
        let mut remap: HashMap<usize, usize> = HashMap::new();
        for f in face_of_corner.iter_mut().flat_map(|c| c.iter_mut()) {
            let l = remap.len();
            *f = *remap.entry(*f).or_insert(l);
        }
        Ok((face_of_corner, remap.len()))
    }

    pub(crate) fn face_count(&self) -> Result<usize> {
        Ok(self.faces()?.1)
    }

    /// Mirror image: every crossing switches which strand is on top, so all
    /// signs are negated while the underlying plane curve is unchanged.
    pub fn mirror(&self) -> Result<KnotDiagram> {
        if self.crossings.is_empty() {
            return Ok(self.clone());
        }
        let over_in = self.over_in_slots_checked()?;
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for (i, c) in self.crossings.iter().enumerate() {
            // new incoming under-strand = old incoming over-strand; the
            // counterclockwise slot order is preserved
            let s = over_in[i] as usize;
            crossings.push(Crossing {
                slots: [c.slots[s], c.slots[(s + 1) % 4], c.slots[(s + 2) % 4], c.slots[(s + 3) % 4]],
            });
        }
        KnotDiagram::from_crossings(crossings, self.arc_count)
    }

    /// Connected sum, splicing at the highest-numbered arc of each operand.
    pub fn connected_sum(&self, other: &KnotDiagram) -> Result<KnotDiagram> {
        self.require_valid()?;
        other.require_valid()?;
        if self.crossings.is_empty() {
            return Ok(other.clone());
        }
        if other.crossings.is_empty() {
            return Ok(self.clone());
        }
        let ports1 = self.arc_ports()?;
        let ports2 = other.arc_ports()?;
        let over1 = self.over_in_slots();
        let over2 = other.over_in_slots();
        let mut w0 = crate::wiring::Wiring::new();
        for (i, _) in self.crossings().iter().enumerate() {
            w0.add_crossing(0, over1[i]);
        }
        let offset = self.crossings.len();
        for (i, _) in other.crossings().iter().enumerate() {
            w0.add_crossing(0, over2[i]);
        }
        for (arc, (o, i)) in &ports1 {
            if *arc == self.arc_count {
                continue;
            }
            w0.join(wiring::port(o.0, o.1), wiring::port(i.0, i.1));
        }
        for (arc, (o, i)) in &ports2 {
            if *arc == other.arc_count {
                continue;
            }
            w0.join(
                wiring::port(o.0 + offset, o.1),
                wiring::port(i.0 + offset, i.1),
            );
        }
        // crosswise splice of the two cut arcs
        let (o1, i1) = ports1[&self.arc_count];
        let (o2, i2) = ports2[&other.arc_count];
        w0.join(wiring::port(o1.0, o1.1), wiring::port(i2.0 + offset, i2.1));
        w0.join(wiring::port(o2.0 + offset, o2.1), wiring::port(i1.0, i1.1));
        let traced = w0.trace()?;
        if traced.components != 1 {
            return Err(Error::invalid("connected sum produced a link"));
        }
        traced.diagram.require_valid()?;
        Ok(traced.diagram)
    }

    /// Seifert circles from the oriented resolution of every crossing.
    pub fn seifert_data(&self) -> Result<SeifertData> {
        self.require_valid()?;
        let circles = self.seifert_circles()?;
        let s = circles.count;
        let c = self.crossings.len();
        let chi = s as i64 - c as i64;
        let genus = (c + 1 - s) / 2;
        debug_assert_eq!(chi, 1 - 2 * genus as i64);
        Ok(SeifertData {
            circle_count: s,
            crossing_count: c,
            genus,
            euler_characteristic: chi,
        })
    }

    /// Oriented-resolution circles; `circle_of_arc[arc]` indexes circles and
    /// `events[k]` lists the crossings met along circle `k` in cyclic order.
    pub(crate) fn seifert_circles(&self) -> Result<SeifertCircles> {
        let over_in = self.over_in_slots_checked()?;
        if self.crossings.is_empty() {
            return Ok(SeifertCircles { count: 1, circle_of_arc: HashMap::new(), events: vec![] });
        }
        // smoothing successor: at each crossing the incoming arcs reconnect
        // to outgoing arcs without crossing
        let mut smooth_next: HashMap<u32, (u32, usize)> = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            let (a, b, cc, d) = (c.slots[0], c.slots[1], c.slots[2], c.slots[3]);
            if over_in[i] == 1 {
                // over runs b -> d: connect a -> d and b -> c
                smooth_next.insert(a, (d, i));
                smooth_next.insert(b, (cc, i));
            } else {
                // over runs d -> b: connect a -> b and d -> c
                smooth_next.insert(a, (b, i));
                smooth_next.insert(d, (cc, i));
            }
        }
        let mut circle_of_arc: HashMap<u32, usize> = HashMap::new();
        let mut events: Vec<Vec<usize>> = vec![];
        let mut arcs: Vec<u32> = smooth_next.keys().copied().collect();
        arcs.sort();
        for &start in &arcs {
            if circle_of_arc.contains_key(&start) {
                continue;
            }
            let id = events.len();
            let mut evs = vec![];
            let mut x = start;
            loop {
                circle_of_arc.insert(x, id);
                let (y, cr) = smooth_next[&x];
                evs.push(cr);
                x = y;
                if x == start {
                    break;
                }
            }
            events.push(evs);
        }
        Ok(SeifertCircles { count: events.len(), circle_of_arc, events })
    }

    /// Seifert matrix of the surface produced by the Seifert algorithm.
    pub fn seifert_matrix(&self) -> Result<IntMatrix> {
        crate::seifert::seifert_matrix(self)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct SeifertCircles {
    pub count: usize,
    pub circle_of_arc: HashMap<u32, usize>,
    pub events: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn parse_empty_is_unknot() {
        let d = KnotDiagram::parse_pd("").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count().unwrap(), 1);
        assert!(d.validate().ok());
    }

    #[test]
    fn parse_trefoil() {
        // oracle: tracing arcs by hand gives one component of six arcs
        let d = KnotDiagram::parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count().unwrap(), 1);
        assert!(d.validate().ok());
        assert_eq!(d.crossing_signs().unwrap(), vec![-1, -1, -1]);
    }

    #[test]
    fn parse_kinked_unknot() {
        // oracle: arc-tracing forces the over-strand to run d -> b
        let d = KnotDiagram::parse_pd("X(1,1,2,2)").unwrap();
        assert!(d.validate().ok());
        assert_eq!(d.component_count().unwrap(), 1);
        assert_eq!(d.crossing_signs().unwrap(), vec![1]);
    }

    #[test]
    fn parse_errors() {
        assert!(KnotDiagram::parse_pd("X(1,2,3)").is_err());
        assert!(KnotDiagram::parse_pd("Y(1,2,3,4)").is_err());
        // arc 3 used three times
        assert!(KnotDiagram::parse_pd("X(1,3,2,3) X(3,1,2,4)").is_err());
    }

    #[test]
    fn two_component_link_detected() {
        // split union of two kinked unknots, arcs 1-2 and 3-4
        let d = KnotDiagram::parse_pd("X(1,1,2,2) X(3,3,4,4)").unwrap();
        let v = d.validate();
        assert!(v.errors.iter().any(|e| e.contains("component count 2")), "{:?}", v.errors);
    }

    #[test]
    fn serialize_round_trip() {
        let d = KnotDiagram::parse_pd(TREFOIL).unwrap();
        let s = d.serialize();
        let d2 = KnotDiagram::parse_pd(&s).unwrap();
        assert_eq!(d, d2);
        assert_eq!(d2.serialize(), s);
        assert_eq!(KnotDiagram::unknot().serialize(), "");
    }

    #[test]
    fn mirror_is_involution_and_negates_signs() {
        let d = KnotDiagram::parse_pd(TREFOIL).unwrap();
        let m = d.mirror().unwrap();
        assert!(m.validate().ok());
        assert_eq!(m.crossing_signs().unwrap(), vec![1, 1, 1]);
        assert_eq!(m.mirror().unwrap(), d);
        let u = KnotDiagram::unknot();
        assert_eq!(u.mirror().unwrap(), u);
    }

    #[test]
    fn connected_sum_counts() {
        let d = KnotDiagram::parse_pd(TREFOIL).unwrap();
        let s = d.connected_sum(&d).unwrap();
        assert!(s.validate().ok());
        assert_eq!(s.crossing_count(), 6);
        // identity element
        let u = KnotDiagram::unknot();
        assert_eq!(u.connected_sum(&d).unwrap(), d);
        assert_eq!(d.connected_sum(&u).unwrap(), d);
    }

    #[test]
    fn seifert_data_examples() {
        // oracles: manual oriented resolution
        let u = KnotDiagram::unknot();
        let sd = u.seifert_data().unwrap();
        assert_eq!((sd.circle_count, sd.genus), (1, 0));
        let d = KnotDiagram::parse_pd(TREFOIL).unwrap();
        let sd = d.seifert_data().unwrap();
        assert_eq!((sd.circle_count, sd.genus), (2, 1));
        assert_eq!(sd.euler_characteristic, -1);
    }

    #[test]
    fn mirror_preserves_genus() {
        let d = KnotDiagram::parse_pd(TREFOIL).unwrap();
        let m = d.mirror().unwrap();
        assert_eq!(
            d.seifert_data().unwrap().genus,
            m.seifert_data().unwrap().genus
        );
    }
}

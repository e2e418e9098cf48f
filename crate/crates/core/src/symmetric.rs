//! Symmetric union presentations.
//!
//! A presentation is a half tangle drawn in the closed right half-plane
//! (open strands with both ends on the axis) together with twist insertions
//! in gaps between consecutive axis endpoints. Realizing the presentation
//! doubles the half tangle with its mirror image and splices the twist
//! regions on the axis.

use crate::diagram::{Crossing, KnotDiagram};
use crate::wiring::{add_oriented_crossing, port, Dir, End, Wiring};
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

/// One end of an open strand on the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisEnd {
    pub arc: u32,
    /// true: the strand leaves the axis here (this is the arc's tail).
    pub tail: bool,
}

/// Half of a symmetric diagram: PD-style crossings plus the ordered list of
/// axis endpoints, top to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfTangle {
    pub crossings: Vec<Crossing>,
    pub ends: Vec<AxisEnd>,
}

/// Twist region in the gap between axis endpoints `site` and `site + 1`
/// (1-based sites).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisInsertion {
    pub site: usize,
    pub half_twists: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricUnionDiagram {
    half: HalfTangle,
    insertions: Vec<AxisInsertion>,
}

/// Self-intersection code of the projection of the symmetric ribbon disk
/// onto the symmetry plane: an immersed arc whose double points match the
/// crossing pairs of the half tangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionCurve {
    pub visits: Vec<CurveVisit>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveVisit {
    /// Passing double point `id`; `branch_sign` is the sign of
    /// (this branch direction, other branch direction) in the plane, and
    /// `over` records whether this branch is the over-strand of the
    /// underlying half-tangle crossing.
    DoublePoint { id: u32, branch_sign: i8, over: bool },
    /// A half-twist mark at an insertion site.
    TwistMark { sign: i8 },
}

impl ProjectionCurve {
    pub fn double_point_count(&self) -> usize {
        self.visits
            .iter()
            .filter(|v| matches!(v, CurveVisit::DoublePoint { .. }))
            .count()
            / 2
    }
}

/// Internal: resolved orientation data of a half tangle.
pub(crate) struct HalfOrientation {
    /// over-in slot (1 or 3) per crossing.
    pub over_in: Vec<u8>,
    /// strand id of every arc.
    pub strand_of_arc: HashMap<u32, usize>,
    /// per strand: (tail end index, head end index, arcs in order).
    pub strands: Vec<(usize, usize, Vec<u32>)>,
}

impl HalfTangle {
    pub fn empty() -> Self {
        HalfTangle { crossings: vec![], ends: vec![] }
    }

    /// A single crossing-free strand from the first axis point to the second.
    pub fn single_strand() -> Self {
        HalfTangle {
            crossings: vec![],
            ends: vec![AxisEnd { arc: 1, tail: true }, AxisEnd { arc: 1, tail: false }],
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn strand_count(&self) -> usize {
        self.ends.len() / 2
    }

    pub(crate) fn orient(&self) -> Result<HalfOrientation> {
        if self.ends.len() % 2 != 0 {
            return Err(Error::invalid("odd number of axis endpoints"));
        }
        // occurrences: crossing slots plus axis ends
        let mut occ: HashMap<u32, u32> = HashMap::new();
        for c in &self.crossings {
            for &a in &c.slots {
                *occ.entry(a).or_default() += 1;
            }
        }
        for e in &self.ends {
            *occ.entry(e.arc).or_default() += 1;
        }
        if let Some((&a, &m)) = occ.iter().find(|(_, &m)| m != 2) {
            return Err(Error::invalid(format!(
                "half tangle arc {a} used {m} times, expected 2"
            )));
        }
        let mut begins: HashMap<u32, u32> = HashMap::new();
        let mut ends_used: HashMap<u32, u32> = HashMap::new();
        for e in &self.ends {
            if e.tail {
                *begins.entry(e.arc).or_default() += 1;
            } else {
                *ends_used.entry(e.arc).or_default() += 1;
            }
        }
        for c in &self.crossings {
            *ends_used.entry(c.slots[0]).or_default() += 1;
            *begins.entry(c.slots[2]).or_default() += 1;
        }
        let n = self.crossings.len();
        let mut over_in: Vec<Option<u8>> = vec![None; n];
        loop {
            let mut progress = false;
            for i in 0..n {
                if over_in[i].is_some() {
                    continue;
                }
                let c = &self.crossings[i];
                let (b, d) = (c.slots[1], c.slots[3]);
                let can1 = !(ends_used.get(&b).copied().unwrap_or(0) > 0
                    || begins.get(&d).copied().unwrap_or(0) > 0)
                    || b == d;
                let can3 = !(ends_used.get(&d).copied().unwrap_or(0) > 0
                    || begins.get(&b).copied().unwrap_or(0) > 0)
                    || b == d;
                let pick = match (can1, can3) {
                    (true, false) => Some(1),
                    (false, true) => Some(3),
                    (false, false) => {
                        return Err(Error::invalid(format!(
                            "inconsistent orientation at half-tangle crossing X({},{},{},{})",
                            c.slots[0], c.slots[1], c.slots[2], c.slots[3]
                        )))
                    }
                    (true, true) => None,
                };
                if let Some(oi) = pick {
                    over_in[i] = Some(oi);
                    let (oi, oo) = (oi as usize, ((oi + 2) % 4) as usize);
                    *ends_used.entry(c.slots[oi]).or_default() += 1;
                    *begins.entry(c.slots[oo]).or_default() += 1;
                    progress = true;
                }
            }
            if progress {
                continue;
            }
            match over_in.iter().position(Option::is_none) {
                None => break,
                Some(i) => {
                    over_in[i] = Some(1);
                    let c = &self.crossings[i];
                    *ends_used.entry(c.slots[1]).or_default() += 1;
                    *begins.entry(c.slots[3]).or_default() += 1;
                }
            }
        }
        let all_ok = occ.keys().all(|a| {
            begins.get(a).copied().unwrap_or(0) == 1 && ends_used.get(a).copied().unwrap_or(0) == 1
        });
        if !all_ok {
            return Err(Error::invalid("half tangle has a closed component or bad orientation"));
        }
        let over_in: Vec<u8> = over_in.into_iter().map(Option::unwrap).collect();
        // successor along strands
        let mut next: HashMap<u32, u32> = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            let oi = over_in[i] as usize;
            next.insert(c.slots[0], c.slots[2]);
            next.insert(c.slots[oi], c.slots[(oi + 2) % 4]);
        }
        let mut head_of_arc: HashMap<u32, usize> = HashMap::new();
        for (k, e) in self.ends.iter().enumerate() {
            if !e.tail {
                head_of_arc.insert(e.arc, k);
            }
        }
        let mut strand_of_arc = HashMap::new();
        let mut strands = vec![];
        for (k, e) in self.ends.iter().enumerate() {
            if !e.tail {
                continue;
            }
            let sid = strands.len();
            let mut arcs = vec![];
            let mut x = e.arc;
            let head;
            loop {
                strand_of_arc.insert(x, sid);
                arcs.push(x);
                match next.get(&x) {
                    Some(&y) => x = y,
                    None => {
                        head = *head_of_arc.get(&x).ok_or_else(|| {
                            Error::invalid(format!("strand starting at end {k} never returns to the axis"))
                        })?;
                        break;
                    }
                }
            }
            strands.push((k, head, arcs));
        }
        // every arc must lie on some strand (no closed loops in the half)
        if strand_of_arc.len() != occ.len() {
            return Err(Error::invalid("half tangle contains a closed component"));
        }
        Ok(HalfOrientation { over_in, strand_of_arc, strands })
    }

    pub fn validate(&self) -> Result<()> {
        self.orient().map(|_| ())
    }
}

impl SymmetricUnionDiagram {
    pub fn half(&self) -> &HalfTangle {
        &self.half
    }

    pub fn insertions(&self) -> &[AxisInsertion] {
        &self.insertions
    }

    pub fn singularity_count(&self) -> usize {
        self.half.crossings.len()
    }

    /// The empty presentation of the unknot.
    pub fn empty() -> Self {
        SymmetricUnionDiagram { half: HalfTangle::empty(), insertions: vec![] }
    }
}

/// Validates and assembles a symmetric union presentation.
///
/// Accepted presentations realize to a knot: the insertion sites must be
/// pairwise disjoint, the insertions must chain all strands into a single
/// arc (so the associated ribbon surface is a disk), and both the
/// realization and the zero-insertion partial closure must be connected.
pub fn build_symmetric_union(
    half: HalfTangle,
    mut insertions: Vec<AxisInsertion>,
) -> Result<SymmetricUnionDiagram> {
    let orient = half.orient()?;
    insertions.retain(|ins| ins.half_twists != 0);
    insertions.sort_by_key(|i| i.site);
    let m = half.strand_count();
    let e2m = half.ends.len();
    for w in insertions.windows(2) {
        if w[1].site <= w[0].site + 1 {
            return Err(Error::invalid(format!(
                "overlapping sites {} and {}",
                w[0].site, w[1].site
            )));
        }
    }
    for ins in &insertions {
        if ins.site == 0 || ins.site + 1 > e2m {
            return Err(Error::invalid(format!("site {} out of range", ins.site)));
        }
    }
    // the insertions must join the strands into one open arc
    if m > 0 {
        if insertions.len() != m - 1 {
            return Err(Error::invalid(format!(
                "{} insertions cannot join {} strands into one disk band",
                insertions.len(),
                m
            )));
        }
        let mut adj: Vec<Vec<usize>> = vec![vec![]; m];
        for ins in &insertions {
            let s1 = orient.strand_of_arc[&half.ends[ins.site - 1].arc];
            let s2 = orient.strand_of_arc[&half.ends[ins.site].arc];
            if s1 == s2 {
                return Err(Error::invalid(format!(
                    "insertion at site {} joins a strand to itself",
                    ins.site
                )));
            }
            adj[s1].push(s2);
            adj[s2].push(s1);
        }
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(s) = stack.pop() {
            for &t in &adj[s] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::invalid("insertions do not connect all strands"));
        }
        if adj.iter().any(|a| a.len() > 2) {
            return Err(Error::invalid("insertion joins make a branched band, not an arc"));
        }
    } else if !insertions.is_empty() {
        return Err(Error::invalid("insertions on an empty half tangle"));
    }
    let su = SymmetricUnionDiagram { half, insertions };
    let (d, components, _) = realize(&su)?;
    if components != 1 {
        return Err(Error::invalid(format!(
            "symmetric diagram of a link, not a knot ({components} components)"
        )));
    }
    d.require_valid()?;
    let p = partial_knot(&su)?;
    p.require_valid()?;
    Ok(su)
}

/// Bookkeeping from a realization, locating the mirror crossing pairs.
pub struct RealizationParts {
    /// (right crossing index, left crossing index) in the output diagram,
    /// per half-tangle crossing.
    pub mirror_pairs: Vec<(usize, usize)>,
    /// Output indices of the axis twist crossings.
    pub axis: Vec<usize>,
}

/// Doubles the half tangle across the axis and splices the twist regions.
/// Returns the diagram, its component count and crossing bookkeeping.
pub(crate) fn realize(su: &SymmetricUnionDiagram) -> Result<(KnotDiagram, usize, RealizationParts)> {
    let half = &su.half;
    let orient = half.orient()?;
    let mut w = Wiring::new();
    let nh = half.crossings.len();
    // right copy: node i, ports = slots
    for (i, _) in half.crossings.iter().enumerate() {
        let n = w.add_crossing(0, orient.over_in[i]);
        debug_assert_eq!(n, i);
    }
    // left copy: node nh + i; reflection reverses the cyclic slot order and
    // the strand orientations. Old slot s sits at new port mu(s).
    let mu = |s: u8| -> u8 { [0u8, 3, 2, 1][s as usize] };
    for (i, _) in half.crossings.iter().enumerate() {
        let over_out = (orient.over_in[i] + 2) % 4;
        let n = w.add_crossing(2, mu(over_out));
        debug_assert_eq!(n, nh + i);
    }
    // wire arcs inside each copy
    let mut right_end_attach: HashMap<usize, End> = HashMap::new(); // end idx -> right loose end
    let mut left_end_attach: HashMap<usize, End> = HashMap::new();
    {
        // occurrences of each arc: crossing ports and axis ends
        let mut att_right: HashMap<u32, Vec<End>> = HashMap::new();
        let mut att_left: HashMap<u32, Vec<End>> = HashMap::new();
        for (i, c) in half.crossings.iter().enumerate() {
            for s in 0..4u8 {
                let arc = c.slots[s as usize];
                att_right.entry(arc).or_default().push(port(i, s));
                att_left.entry(arc).or_default().push(port(nh + i, mu(s)));
            }
        }
        for (k, e) in half.ends.iter().enumerate() {
            let tr = w.add_term();
            let tl = w.add_term();
            right_end_attach.insert(k, tr);
            left_end_attach.insert(k, tl);
            att_right.entry(e.arc).or_default().push(tr);
            att_left.entry(e.arc).or_default().push(tl);
        }
        for (arc, atts) in att_right.iter().chain(att_left.iter()) {
            if atts.len() != 2 {
                return Err(Error::invalid(format!("arc {arc} not wired exactly twice")));
            }
        }
        for atts in att_right.values().chain(att_left.values()) {
            w.join(atts[0], atts[1]);
        }
    }
    // axis: twist boxes at insertion gaps, straight joins elsewhere
    let mut covered: HashMap<usize, &AxisInsertion> = HashMap::new();
    for ins in &su.insertions {
        covered.insert(ins.site - 1, ins); // 0-based index of the upper end
    }
    let mut axis_nodes = vec![];
    let mut k = 0usize;
    while k < half.ends.len() {
        if let Some(ins) = covered.get(&k) {
            // twist region on the strands through endpoints k and k+1
            let nodes = splice_twist_box(
                &mut w,
                ins.half_twists,
                left_end_attach[&k],
                left_end_attach[&(k + 1)],
                right_end_attach[&k],
                right_end_attach[&(k + 1)],
                half.ends[k].tail,
                half.ends[k + 1].tail,
            );
            axis_nodes.extend(nodes);
            k += 2;
        } else {
            w.join(left_end_attach[&k], right_end_attach[&k]);
            k += 1;
        }
    }
    let traced = w.trace()?;
    // locate output crossings: the diagram sorts crossings canonically, so
    // recover positions through the arc labels at slot 0
    let mut where_is: HashMap<u32, usize> = HashMap::new();
    for (idx, c) in traced.diagram.crossings().iter().enumerate() {
        where_is.insert(c.slots[0], idx);
    }
    let node_out = |node: usize, under_in: u8| -> usize {
        let arc = traced.arc_at_port[&(node, under_in)];
        where_is[&arc]
    };
    let mut mirror_pairs = vec![];
    for i in 0..nh {
        mirror_pairs.push((node_out(i, 0), node_out(nh + i, 2)));
    }
    let axis = axis_nodes.iter().map(|&n| node_out(n, 0)).collect();
    Ok((traced.diagram, traced.components, RealizationParts { mirror_pairs, axis }))
}

/// Builds `|n|` twist crossings between the two strands through a pair of
/// adjacent axis endpoints. `lt`, `lb` are the loose ends on the left-half
/// side (upper, lower row), `rt`, `rb` on the right-half side. The strand
/// through the upper-left stub flows toward the right half iff `flow_top`
/// (and similarly `flow_bot`). Positive twists put the strand entering each
/// crossing from the upper left on top. Returns the created nodes.
fn splice_twist_box(
    w: &mut Wiring,
    n: i32,
    lt: End,
    lb: End,
    rt: End,
    rb: End,
    flow_top: bool,
    flow_bot: bool,
) -> Vec<usize> {
    debug_assert!(n != 0);
    let mut nodes = vec![];
    let mut cur_t = lt;
    let mut cur_b = lb;
    let mut cur_flow_t = flow_top;
    let mut cur_flow_b = flow_bot;
    for _ in 0..n.unsigned_abs() {
        // rows swap through each crossing: diagonals LT-RB and LB-RT, with
        // attachment rays (-1,1), (1,-1), (-1,-1), (1,1) respectively
        let top_dir: Dir = if cur_flow_t { (1, -1) } else { (-1, 1) };
        let bot_dir: Dir = if cur_flow_b { (1, 1) } else { (-1, -1) };
        let (over_dir, under_dir) = if n > 0 { (top_dir, bot_dir) } else { (bot_dir, top_dir) };
        let (node, at) = add_oriented_crossing(w, under_dir, over_dir);
        nodes.push(node);
        w.join(cur_t, at((-1, 1)));
        w.join(cur_b, at((-1, -1)));
        cur_t = at((1, 1));
        cur_b = at((1, -1));
        std::mem::swap(&mut cur_flow_t, &mut cur_flow_b);
    }
    w.join(cur_t, rt);
    w.join(cur_b, rb);
    nodes
}

/// Realizes the presentation as a knot diagram.
pub fn to_knot_diagram(su: &SymmetricUnionDiagram) -> Result<KnotDiagram> {
    let (d, components, _) = realize(su)?;
    if components != 1 {
        return Err(Error::invalid(format!(
            "symmetric diagram of a link, not a knot ({components} components)"
        )));
    }
    d.require_valid()?;
    Ok(d)
}

/// The factor knot: the half tangle closed along the axis by the
/// zero-insertion pairing (e1 e2)(e3 e4)…, independent of the insertions.
pub fn partial_knot(su: &SymmetricUnionDiagram) -> Result<KnotDiagram> {
    let half = &su.half;
    if half.ends.is_empty() {
        return Ok(KnotDiagram::unknot());
    }
    let orient = half.orient()?;
    if half.ends.len() % 2 != 0 {
        return Err(Error::invalid("odd number of axis endpoints"));
    }
    // orient the closed curve: strands may need reversal
    let m = orient.strands.len();
    let mut end_strand: Vec<(usize, bool)> = vec![(usize::MAX, false); half.ends.len()];
    for (sid, &(tail, head, _)) in orient.strands.iter().enumerate() {
        end_strand[tail] = (sid, true); // strand leaves the axis here
        end_strand[head] = (sid, false);
    }
    let partner = |k: usize| -> usize { if k % 2 == 0 { k + 1 } else { k - 1 } };
    let mut reversed = vec![None::<bool>; m];
    let mut components = 0;
    for start in 0..m {
        if reversed[start].is_some() {
            continue;
        }
        components += 1;
        let mut sid = start;
        let mut rev = false;
        loop {
            reversed[sid] = Some(rev);
            // walk to the far end of this strand (respecting direction)
            let (tail, head, _) = orient.strands[sid];
            let arrive = if rev { tail } else { head };
            let next_end = partner(arrive);
            let (nsid, is_tail) = end_strand[next_end];
            let nrev = !is_tail; // entering at the head means walking reversed
            if reversed[nsid].is_some() {
                break;
            }
            sid = nsid;
            rev = nrev;
        }
    }
    if components != 1 {
        return Err(Error::invalid(format!(
            "partial closure yields {components} components"
        )));
    }
    // build the wiring with per-strand reversal applied
    let mut w = Wiring::new();
    for (i, c) in half.crossings.iter().enumerate() {
        let under_rev = reversed[orient.strand_of_arc[&c.slots[0]]].unwrap();
        let over_rev = reversed[orient.strand_of_arc[&c.slots[orient.over_in[i] as usize]]].unwrap();
        let under_in = if under_rev { 2 } else { 0 };
        let over_in = if over_rev { (orient.over_in[i] + 2) % 4 } else { orient.over_in[i] };
        w.add_crossing(under_in, over_in);
    }
    let mut att: HashMap<u32, Vec<End>> = HashMap::new();
    for (i, c) in half.crossings.iter().enumerate() {
        for s in 0..4u8 {
            att.entry(c.slots[s as usize]).or_default().push(port(i, s));
        }
    }
    let mut end_term: Vec<End> = vec![];
    for (k, e) in half.ends.iter().enumerate() {
        let t = w.add_term();
        end_term.push(t);
        att.entry(e.arc).or_default().push(t);
        let _ = k;
    }
    for atts in att.values() {
        if atts.len() != 2 {
            return Err(Error::invalid("arc not wired exactly twice in partial closure"));
        }
        w.join(atts[0], atts[1]);
    }
    let mut k = 0;
    while k < half.ends.len() {
        w.join(end_term[k], end_term[k + 1]);
        k += 2;
    }
    let traced = w.trace()?;
    if traced.components != 1 {
        return Err(Error::invalid(format!(
            "partial closure yields {} components",
            traced.components
        )));
    }
    traced.diagram.require_valid()?;
    Ok(traced.diagram)
}

/// Removes every insertion; the realization loses all axis crossings.
pub fn smooth_axis(su: &SymmetricUnionDiagram) -> SymmetricUnionDiagram {
    SymmetricUnionDiagram { half: su.half.clone(), insertions: vec![] }
}

/// Realization that tolerates links, for smoothed presentations.
pub fn realize_link(su: &SymmetricUnionDiagram) -> Result<(KnotDiagram, usize)> {
    let (d, components, _) = realize(su)?;
    Ok((d, components))
}

/// Orders the strands of the half tangle along the insertion-join chain and
/// returns (strand id, reversed) steps plus the insertion between steps.
pub(crate) fn core_order(su: &SymmetricUnionDiagram) -> Result<Vec<CoreStep>> {
    let half = &su.half;
    let orient = half.orient()?;
    let m = orient.strands.len();
    if m == 0 {
        return Ok(vec![]);
    }
    // join graph: insertion joins end (site-1) to end (site)
    let mut joins_at_end: HashMap<usize, &AxisInsertion> = HashMap::new();
    for ins in &su.insertions {
        joins_at_end.insert(ins.site - 1, ins);
        joins_at_end.insert(ins.site, ins);
    }
    let mut end_strand: Vec<(usize, bool)> = vec![(usize::MAX, false); half.ends.len()];
    for (sid, &(tail, head, _)) in orient.strands.iter().enumerate() {
        end_strand[tail] = (sid, true);
        end_strand[head] = (sid, false);
    }
    // find the free end to start from: an end not used by any insertion,
    // belonging to a strand with at most one joined end
    let mut deg = vec![0usize; m];
    for ins in &su.insertions {
        deg[end_strand[ins.site - 1].0] += 1;
        deg[end_strand[ins.site].0] += 1;
    }
    let Some(start_sid) = (0..m).find(|&s| deg[s] <= 1) else {
        return Err(Error::invalid("insertion joins contain a cycle"));
    };
    // start at the free end of start_sid
    let (tail, head, _) = orient.strands[start_sid];
    let start_end = if joins_at_end.contains_key(&tail) { head } else { tail };
    let mut steps = vec![];
    let mut cur_end = start_end;
    loop {
        let (sid, is_tail) = end_strand[cur_end];
        let rev = !is_tail;
        let (t, h, _) = orient.strands[sid];
        let far = if rev { t } else { h };
        steps.push(CoreStep { strand: sid, reversed: rev, join_after: joins_at_end.get(&far).map(|i| **i) });
        match joins_at_end.get(&far) {
            None => break,
            Some(ins) => {
                let other = if ins.site - 1 == far { ins.site } else { ins.site - 1 };
                cur_end = other;
            }
        }
    }
    if steps.len() != m {
        return Err(Error::invalid("insertions do not chain the strands into one arc"));
    }
    Ok(steps)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct CoreStep {
    pub strand: usize,
    pub reversed: bool,
    pub join_after: Option<AxisInsertion>,
}

/// The projection of the symmetric ribbon disk onto the symmetry plane:
/// the shadow of the half tangle with the insertion bands joining strands.
pub fn projection_curve(su: &SymmetricUnionDiagram) -> Result<ProjectionCurve> {
    let half = &su.half;
    let orient = half.orient()?;
    let steps = core_order(su)?;
    let mut visits = vec![];
    for step in &steps {
        let (_, _, arcs) = &orient.strands[step.strand];
        let ordered: Vec<u32> = if step.reversed {
            arcs.iter().rev().copied().collect()
        } else {
            arcs.clone()
        };
        // walk the strand arc by arc; each crossing passed emits one visit.
        // Passing arc x then arc y through crossing i happens when x ends
        // (or begins, when reversed) at crossing i.
        for win in ordered.windows(2) {
            let (x, _y) = (win[0], win[1]);
            // locate the crossing where x meets the next arc
            let mut found = None;
            for (i, c) in half.crossings.iter().enumerate() {
                let oi = orient.over_in[i] as usize;
                let (u_in, u_out) = (c.slots[0], c.slots[2]);
                let (o_in, o_out) = (c.slots[oi], c.slots[(oi + 2) % 4]);
                let hit = if step.reversed {
                    (u_out == x) || (o_out == x)
                } else {
                    (u_in == x) || (o_in == x)
                };
                if hit {
                    let on_under = if step.reversed { u_out == x } else { u_in == x };
                    found = Some((i, on_under));
                    break;
                }
            }
            let (i, on_under) = found.ok_or_else(|| Error::invalid("broken strand walk"))?;
            let base = -(crossing_sign(&half.crossings[i], orient.over_in[i]));
            let my_sign = if on_under { base } else { -base };
            let my_rev = step.reversed;
            let other_strand = orient.strand_of_arc[&half.crossings[i].slots[if on_under {
                orient.over_in[i] as usize
            } else {
                0
            }]];
            let other_rev = steps
                .iter()
                .find(|s| s.strand == other_strand)
                .map(|s| s.reversed)
                .unwrap_or(false);
            let flip = (my_rev as i8 * 2 - 1) * (other_rev as i8 * 2 - 1);
            visits.push(CurveVisit::DoublePoint {
                id: i as u32,
                branch_sign: my_sign * flip,
                over: !on_under,
            });
        }
        if let Some(ins) = step.join_after {
            for _ in 0..ins.half_twists.unsigned_abs() {
                visits.push(CurveVisit::TwistMark { sign: ins.half_twists.signum() as i8 });
            }
        }
    }
    Ok(ProjectionCurve { visits })
}

/// Cuts a knot diagram open at the given arc, producing a one-strand half
/// tangle whose partial knot is the original knot; realizing it presents
/// the connected sum of the knot with its mirror image as a symmetric
/// union. Arcs are renumbered so the strand runs from 1 at the axis back
/// to 2n+1.
pub fn cut_open(d: &KnotDiagram, cut_arc: u32) -> Result<HalfTangle> {
    d.require_valid()?;
    if d.crossings().is_empty() {
        return Ok(HalfTangle::single_strand());
    }
    let n = d.arc_count();
    if cut_arc == 0 || cut_arc > n {
        return Err(Error::invalid(format!("no arc {cut_arc} to cut")));
    }
    let ports = d.arc_ports()?;
    let (out_port, _in_port) = ports[&cut_arc];
    // the piece of the cut arc entering its crossing keeps the relabeled
    // name 1; the piece leaving the out port becomes 2n+1
    let relabel = |old: u32| -> u32 { (old + n - cut_arc) % n + 1 };
    let mut crossings: Vec<Crossing> = d
        .crossings()
        .iter()
        .map(|c| Crossing { slots: c.slots.map(relabel) })
        .collect();
    crossings[out_port.0].slots[out_port.1 as usize] = n + 1;
    Ok(HalfTangle {
        crossings,
        ends: vec![AxisEnd { arc: 1, tail: true }, AxisEnd { arc: n + 1, tail: false }],
    })
}

/// Sign of a crossing given its over-in slot.
pub(crate) fn crossing_sign(_c: &Crossing, over_in: u8) -> i8 {
    if over_in == 3 {
        1
    } else {
        -1
    }
}

/// Serializes in the `half: … ; ends: … ; axis: …` format.
pub fn serialize_su(su: &SymmetricUnionDiagram) -> String {
    let mut s = String::from("su: half:");
    for c in &su.half.crossings {
        let _ = write!(s, " X({},{},{},{})", c.slots[0], c.slots[1], c.slots[2], c.slots[3]);
    }
    s.push_str(" ; ends:");
    for (k, e) in su.half.ends.iter().enumerate() {
        let _ = write!(s, " E{}{}{}", k + 1, if e.tail { '+' } else { '-' }, e.arc);
    }
    s.push_str(" ; axis:");
    for ins in &su.insertions {
        let _ = write!(s, " ({},{})", ins.site, ins.half_twists);
    }
    s
}

/// Parses the `su:` format produced by [`serialize_su`].
pub fn parse_su(text: &str) -> Result<SymmetricUnionDiagram> {
    let text = text.trim();
    let body = text.strip_prefix("su:").unwrap_or(text);
    let mut half_part = None;
    let mut ends_part = None;
    let mut axis_part = None;
    for section in body.split(';') {
        let section = section.trim();
        if let Some(rest) = section.strip_prefix("half:") {
            half_part = Some(rest.trim());
        } else if let Some(rest) = section.strip_prefix("ends:") {
            ends_part = Some(rest.trim());
        } else if let Some(rest) = section.strip_prefix("axis:") {
            axis_part = Some(rest.trim());
        } else if !section.is_empty() {
            return Err(Error::parse(format!("unknown section `{section}`")));
        }
    }
    let (Some(half_part), Some(ends_part), Some(axis_part)) = (half_part, ends_part, axis_part)
    else {
        return Err(Error::parse("su needs `half:`, `ends:` and `axis:` sections"));
    };
    let mut crossings = vec![];
    for tok in half_part.split_whitespace() {
        let inner = tok
            .strip_prefix("X(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::parse(format!("malformed token `{tok}`")))?;
        let vals: Vec<u32> = inner
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| Error::parse(format!("bad arc in `{tok}`"))))
            .collect::<Result<_>>()?;
        if vals.len() != 4 {
            return Err(Error::parse(format!("token `{tok}` needs 4 arcs")));
        }
        crossings.push(Crossing { slots: [vals[0], vals[1], vals[2], vals[3]] });
    }
    let mut ends = vec![];
    for (k, tok) in ends_part.split_whitespace().enumerate() {
        let rest = tok
            .strip_prefix('E')
            .ok_or_else(|| Error::parse(format!("bad end marker `{tok}`")))?;
        let idx_end = rest
            .find(['+', '-'])
            .ok_or_else(|| Error::parse(format!("end marker `{tok}` needs a sign")))?;
        let idx: usize = rest[..idx_end]
            .parse()
            .map_err(|_| Error::parse(format!("bad end index in `{tok}`")))?;
        if idx != k + 1 {
            return Err(Error::parse(format!("end markers out of order at `{tok}`")));
        }
        let tail = rest.as_bytes()[idx_end] == b'+';
        let arc: u32 = rest[idx_end + 1..]
            .parse()
            .map_err(|_| Error::parse(format!("bad arc in `{tok}`")))?;
        ends.push(AxisEnd { arc, tail });
    }
    let mut insertions = vec![];
    for tok in axis_part.split_whitespace() {
        let inner = tok
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::parse(format!("bad insertion `{tok}`")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(format!("bad insertion `{tok}`")))?;
        insertions.push(AxisInsertion {
            site: a.trim().parse().map_err(|_| Error::parse("bad site"))?,
            half_twists: b.trim().parse().map_err(|_| Error::parse("bad half twist count"))?,
        });
    }
    build_symmetric_union(HalfTangle { crossings, ends }, insertions)
}

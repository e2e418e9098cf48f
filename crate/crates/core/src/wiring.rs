//! Combinatorial 4-valent tangle assembler.
//!
//! Constructions in this crate (symmetric union realization, tangle sums,
//! band boundaries, connected sums) all build diagrams the same way: create
//! crossing nodes with known strand flow, wire ports together (possibly
//! through intermediate pass-through terminals), then emit a PD code by
//! tracing the result. Ports are listed counterclockwise, slot 0 carrying the
//! incoming under-strand, matching [`crate::diagram::Crossing`].

use crate::diagram::{Crossing, KnotDiagram};
use crate::{Error, Result};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    /// Slot `slot` of crossing node `node`.
    Port { node: usize, slot: u8 },
    /// A pass-through joint; must be wired to exactly two other ends.
    Term(usize),
}

pub fn port(node: usize, slot: u8) -> End {
    End::Port { node, slot }
}

#[derive(Debug, Clone)]
struct Node {
    /// Slot (0 or 2) where the under-strand enters.
    under_in: u8,
    /// Slot (1 or 3) where the over-strand enters.
    over_in: u8,
}

/// A diagram under construction.
#[derive(Debug, Clone, Default)]
pub struct Wiring {
    nodes: Vec<Node>,
    term_count: usize,
    pairs: Vec<(End, End)>,
}

/// Result of tracing a closed wiring.
#[derive(Debug, Clone)]
pub struct Traced {
    pub diagram: KnotDiagram,
    pub components: usize,
    /// Arc label assigned to the strand leaving each out-port, keyed by node
    /// and slot. Lets callers locate construction features in the output.
    pub arc_at_port: HashMap<(usize, u8), u32>,
}

impl Wiring {
    pub fn new() -> Self {
        Wiring::default()
    }

    /// Adds a crossing whose under-strand enters at `under_in` (0 or 2) and
    /// whose over-strand enters at `over_in` (1 or 3). Returns the node id.
    pub fn add_crossing(&mut self, under_in: u8, over_in: u8) -> usize {
        assert!(under_in == 0 || under_in == 2);
        assert!(over_in == 1 || over_in == 3);
        self.nodes.push(Node { under_in, over_in });
        self.nodes.len() - 1
    }

    pub fn add_term(&mut self) -> End {
        self.term_count += 1;
        End::Term(self.term_count - 1)
    }

    pub fn join(&mut self, a: End, b: End) {
        self.pairs.push((a, b));
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// All recorded joins.
    pub(crate) fn pairs(&self) -> &[(End, End)] {
        &self.pairs
    }

    /// Whether the strand flows out of the node at this slot.
    fn is_out(&self, node: usize, slot: u8) -> bool {
        let n = &self.nodes[node];
        slot == (n.under_in + 2) % 4 || slot == (n.over_in + 2) % 4
    }

    /// Whether the strand flows into the node at this slot.
    pub(crate) fn port_is_in(&self, node: usize, slot: u8) -> bool {
        !self.is_out(node, slot)
    }

    /// Contracts terminals and returns the port-to-port matching.
    fn resolve(&self) -> Result<HashMap<End, End>> {
        let mut adj: HashMap<End, Vec<End>> = HashMap::new();
        for &(a, b) in &self.pairs {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        for node in 0..self.nodes.len() {
            for slot in 0..4u8 {
                let deg = adj.get(&port(node, slot)).map_or(0, |v| v.len());
                if deg != 1 {
                    return Err(Error::invalid(format!(
                        "port ({node},{slot}) wired {deg} times, expected 1"
                    )));
                }
            }
        }
        for t in 0..self.term_count {
            let deg = adj.get(&End::Term(t)).map_or(0, |v| v.len());
            if deg != 2 {
                return Err(Error::invalid(format!(
                    "terminal {t} wired {deg} times, expected 2"
                )));
            }
        }
        // walk through terminals from each port
        let mut mate = HashMap::new();
        for node in 0..self.nodes.len() {
            for slot in 0..4u8 {
                let start = port(node, slot);
                if mate.contains_key(&start) {
                    continue;
                }
                let mut prev = start;
                let mut cur = adj[&start][0];
                while let End::Term(_) = cur {
                    let nbrs = &adj[&cur];
                    let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
                    prev = cur;
                    cur = next;
                }
                if cur == start {
                    return Err(Error::invalid("strand closes onto itself through terminals"));
                }
                mate.insert(start, cur);
                mate.insert(cur, start);
            }
        }
        Ok(mate)
    }

    /// Counts closed loops made only of terminals (crossing-free circles).
    fn free_loops(&self) -> usize {
        let mut adj: HashMap<End, Vec<End>> = HashMap::new();
        for &(a, b) in &self.pairs {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen = vec![false; self.term_count];
        let mut loops = 0;
        for t in 0..self.term_count {
            if seen[t] {
                continue;
            }
            // follow the chain; if it never reaches a port it is a free loop
            let mut chain = vec![t];
            let start = End::Term(t);
            let mut prev = start;
            let mut cur = match adj.get(&start) {
                Some(nbrs) => nbrs[0],
                None => continue,
            };
            let mut is_loop = false;
            loop {
                match cur {
                    End::Port { .. } => break,
                    End::Term(u) => {
                        if cur == start {
                            is_loop = true;
                            break;
                        }
                        chain.push(u);
                        let nbrs = &adj[&cur];
                        let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
                        prev = cur;
                        cur = next;
                    }
                }
            }
            for u in chain {
                seen[u] = true;
            }
            if is_loop {
                loops += 1;
            }
        }
        loops
    }

    /// Seifert circles of the closed wiring, without building a PD code:
    /// cycles of the oriented smoothing on the wires.
    pub(crate) fn seifert_circle_count(&self) -> Result<usize> {
        if self.nodes.is_empty() {
            return Ok(self.free_loops().max(1));
        }
        let mate = self.resolve()?;
        // smoothing successor: arriving at an in-port, continue at the
        // out-port adjacent against the rotation for incoming-under, with
        // the rotation for incoming-over
        let mut next: HashMap<(usize, u8), (usize, u8)> = HashMap::new();
        for (node, nd) in self.nodes.iter().enumerate() {
            let (a, c) = (nd.under_in, (nd.under_in + 2) % 4);
            let (b, d) = (nd.over_in, (nd.over_in + 2) % 4);
            // the oriented smoothing joins each incoming strand to the
            // outgoing port beside it: under-in to over-out, over-in to
            // under-out
            next.insert((node, a), (node, d));
            next.insert((node, b), (node, c));
        }
        // cycle count over ports: follow in-port -> smoothing -> out-port -> wire
        let mut seen: HashMap<(usize, u8), bool> = HashMap::new();
        let mut circles = 0;
        for node in 0..self.nodes.len() {
            for slot in [self.nodes[node].under_in, self.nodes[node].over_in] {
                if seen.contains_key(&(node, slot)) {
                    continue;
                }
                circles += 1;
                let (mut n, mut s) = (node, slot);
                loop {
                    seen.insert((n, s), true);
                    let (n2, s2) = next[&(n, s)];
                    let End::Port { node: n3, slot: s3 } = mate[&port(n2, s2)] else {
                        unreachable!()
                    };
                    (n, s) = (n3, s3);
                    if seen.contains_key(&(n, s)) {
                        break;
                    }
                }
            }
        }
        Ok(circles + self.free_loops())
    }

    /// Closes the wiring into a PD diagram, tracing strand orientations and
    /// assigning arc labels consecutively along each component.
    pub fn trace(&self) -> Result<Traced> {
        if self.nodes.is_empty() {
            let loops = self.free_loops();
            return Ok(Traced {
                diagram: KnotDiagram::unknot(),
                components: loops.max(1),
                arc_at_port: HashMap::new(),
            });
        }
        let mate = self.resolve()?;
        // orientation sanity: every wire runs out-port -> in-port
        for (&a, &b) in &mate {
            if let (End::Port { node: n1, slot: s1 }, End::Port { node: n2, slot: s2 }) = (a, b) {
                if self.is_out(n1, s1) == self.is_out(n2, s2) {
                    return Err(Error::invalid(format!(
                        "incoherent strand orientation between ({n1},{s1}) and ({n2},{s2})"
                    )));
                }
            }
        }
        let arc_total = 2 * self.nodes.len() as u32;
        let mut arc_at_port: HashMap<(usize, u8), u32> = HashMap::new();
        let mut label = 0u32;
        let mut components = 0usize;
        // deterministic start order over out-ports
        let mut outs: Vec<(usize, u8)> = vec![];
        for node in 0..self.nodes.len() {
            for slot in 0..4u8 {
                if self.is_out(node, slot) {
                    outs.push((node, slot));
                }
            }
        }
        for &(node, slot) in &outs {
            if arc_at_port.contains_key(&(node, slot)) {
                continue;
            }
            components += 1;
            let (mut n, mut s) = (node, slot);
            loop {
                label += 1;
                arc_at_port.insert((n, s), label);
                let End::Port { node: n2, slot: s2 } = mate[&port(n, s)] else {
                    unreachable!("terminals contracted")
                };
                arc_at_port.insert((n2, s2), label);
                // continue through the crossing
                let out = (s2 + 2) % 4;
                debug_assert!(self.is_out(n2, out));
                if arc_at_port.contains_key(&(n2, out)) {
                    break;
                }
                (n, s) = (n2, out);
            }
        }
        debug_assert_eq!(label, arc_total);
        let components = components + self.free_loops();
        let mut crossings = Vec::with_capacity(self.nodes.len());
        for (i, nd) in self.nodes.iter().enumerate() {
            let slots: Vec<u32> = (0..4u8)
                .map(|k| arc_at_port[&(i, (nd.under_in + k) % 4)])
                .collect();
            let over_in_rel = (nd.over_in + 4 - nd.under_in) % 4; // 1 or 3
            debug_assert!(over_in_rel == 1 || over_in_rel == 3);
            crossings.push(Crossing { slots: [slots[0], slots[1], slots[2], slots[3]] });
        }
        let diagram = KnotDiagram::from_crossings(crossings, arc_total)?;
        Ok(Traced { diagram, components, arc_at_port })
    }
}

/// Integer direction vector in the plane.
pub type Dir = (i32, i32);

pub fn rot90(d: Dir) -> Dir {
    (-d.1, d.0)
}

/// Adds a crossing between two transversal oriented strands given by their
/// direction vectors, `under_dir` and `over_dir` (which must be 90 degrees
/// apart up to sign). Returns the node and a lookup from attachment ray to
/// (node, slot): the strand flowing `d` enters at ray `-d` and leaves at
/// ray `d`.
pub fn add_oriented_crossing(
    w: &mut Wiring,
    under_dir: Dir,
    over_dir: Dir,
) -> (usize, impl Fn(Dir) -> End) {
    let under_in_ray = (-under_dir.0, -under_dir.1);
    let mut cyc = [under_in_ray; 4];
    for k in 1..4 {
        cyc[k] = rot90(cyc[k - 1]);
    }
    let over_in_ray = (-over_dir.0, -over_dir.1);
    let over_slot = cyc
        .iter()
        .position(|&r| r == over_in_ray)
        .expect("over strand not transversal to under strand") as u8;
    assert!(over_slot == 1 || over_slot == 3, "strands not transversal");
    let node = w.add_crossing(0, over_slot);
    let lookup = move |ray: Dir| -> End {
        let slot = cyc.iter().position(|&r| r == ray).expect("unknown ray") as u8;
        End::Port { node, slot }
    };
    (node, lookup)
}

/// Loads an existing diagram into a wiring so it can be re-spliced.
///
/// Node `i` of the result is crossing `i` of `d`, with slot `k` of the node
/// holding the arc in PD slot `k`.
pub fn from_diagram(d: &KnotDiagram) -> (Wiring, Vec<[End; 4]>) {
    let mut w = Wiring::new();
    let over_ins = d.over_in_slots();
    for (i, _c) in d.crossings().iter().enumerate() {
        let n = w.add_crossing(0, over_ins[i]);
        debug_assert_eq!(n, i);
    }
    // wire each arc from its out-port to its in-port
    let mut out_of: HashMap<u32, End> = HashMap::new();
    let mut in_of: HashMap<u32, End> = HashMap::new();
    for (i, c) in d.crossings().iter().enumerate() {
        let over_in = over_ins[i];
        for slot in 0..4u8 {
            let arc = c.slots[slot as usize];
            let is_in = slot == 0 || slot == over_in;
            if is_in {
                in_of.insert(arc, port(i, slot));
            } else {
                out_of.insert(arc, port(i, slot));
            }
        }
    }
    let mut ends = vec![[End::Term(usize::MAX); 4]; d.crossings().len()];
    for (i, _) in d.crossings().iter().enumerate() {
        for slot in 0..4u8 {
            ends[i][slot as usize] = port(i, slot);
        }
    }
    for (arc, o) in out_of {
        w.join(o, in_of[&arc]);
    }
    (w, ends)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_one_positive_kink() {
        // single crossing, under in at 0, over in at 3; wire 1->2? build a kink:
        // out slot 2 (under out) loops to over-in 3; over-out 1 loops to under-in 0.
        let mut w = Wiring::new();
        let n = w.add_crossing(0, 3);
        w.join(port(n, 2), port(n, 3));
        w.join(port(n, 1), port(n, 0));
        let t = w.trace().unwrap();
        assert_eq!(t.components, 1);
        assert_eq!(t.diagram.crossings().len(), 1);
        assert_eq!(t.diagram.crossing_signs().unwrap(), vec![1]);
    }

    #[test]
    fn trace_round_unknot() {
        let mut w = Wiring::new();
        let a = w.add_term();
        let b = w.add_term();
        w.join(a, b);
        w.join(b, a);
        let t = w.trace().unwrap();
        assert_eq!(t.components, 1);
        assert_eq!(t.diagram.crossings().len(), 0);
    }
}

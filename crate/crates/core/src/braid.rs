//! Braid words and their closures, used to construct test diagrams.
//!
//! A word is a sequence of nonzero integers; letter `i > 0` crosses the
//! strands at positions `i`, `i+1` so that the strand entering at position
//! `i+1` passes over, producing a positive crossing in the closure. Strands
//! flow downward and the closure joins bottom to top position-wise.

use crate::diagram::KnotDiagram;
use crate::wiring::{port, End, Wiring};
use crate::{Error, Result};

/// Closure of the braid word on `strands` strands.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<KnotDiagram> {
    if strands < 1 {
        return Err(Error::invalid("braid needs at least one strand"));
    }
    for &l in word {
        let i = l.unsigned_abs() as usize;
        if i == 0 || i + 1 > strands {
            return Err(Error::invalid(format!("letter {l} out of range for {strands} strands")));
        }
    }
    let mut w = Wiring::new();
    // current dangling end at each strand position
    let mut cur: Vec<End> = (0..strands).map(|_| w.add_term()).collect();
    let top: Vec<End> = cur.clone();
    for &l in word {
        let i = l.unsigned_abs() as usize - 1; // positions i, i+1
        // positive letter: under-strand runs top-left -> bottom-right,
        // over-strand top-right -> bottom-left.
        // Slots counterclockwise from incoming under:
        //   positive: a = NW (under in), b = SW (over out), c = SE, d = NE
        //   negative: a = NE (under in), b = NW (over in)… see below
        let n = if l > 0 {
            // under in at slot 0 = NW; over in at NE = slot 3
            w.add_crossing(0, 3)
        } else {
            // negative: under in at NE, over in at NW; counterclockwise
            // from under-in: a = NE, b = NW, c = SW, d = SE
            w.add_crossing(0, 1)
        };
        if l > 0 {
            // ports: 0 = NW in, 3 = NE in, 2 = SE out (under), 1 = SW out (over)
            w.join(cur[i], port(n, 0));
            w.join(cur[i + 1], port(n, 3));
            cur[i] = port(n, 1); // bottom-left: over-strand exit
            cur[i + 1] = port(n, 2); // bottom-right: under-strand exit
        } else {
            // ports: 0 = NE in (under), 1 = NW in (over), 2 = SW out (under),
            // 3 = SE out (over)
            w.join(cur[i + 1], port(n, 0));
            w.join(cur[i], port(n, 1));
            cur[i] = port(n, 2);
            cur[i + 1] = port(n, 3);
        }
    }
    for p in 0..strands {
        let t = w.add_term();
        w.join(cur[p], t);
        w.join(t, top[p]);
    }
    let traced = w.trace()?;
    if traced.components != 1 {
        return Err(Error::invalid(format!(
            "braid closure has {} components",
            traced.components
        )));
    }
    Ok(traced.diagram)
}

/// Number of components of the braid closure, from the strand permutation.
pub fn closure_components(strands: usize, word: &[i32]) -> usize {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &l in word {
        let i = l.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; strands];
    let mut comps = 0;
    for s in 0..strands {
        if seen[s] {
            continue;
        }
        comps += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
        }
    }
    comps
}

/// The right-handed trefoil, closure of the positive 2-braid word.
pub fn trefoil() -> KnotDiagram {
    braid_closure(2, &[1, 1, 1]).unwrap()
}

/// The figure-eight knot.
pub fn figure_eight() -> KnotDiagram {
    braid_closure(3, &[1, -2, 1, -2]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_closure() {
        let d = trefoil();
        assert!(d.validate().ok(), "{:?}", d.validate().errors);
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.crossing_signs().unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn figure_eight_closure() {
        let d = figure_eight();
        assert!(d.validate().ok());
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.writhe().unwrap(), 0);
        let sd = d.seifert_data().unwrap();
        // oracle: manual oriented resolution of the 3-braid closure
        assert_eq!((sd.circle_count, sd.genus), (3, 1));
    }

    #[test]
    fn component_count_matches_permutation() {
        assert_eq!(closure_components(2, &[1, 1]), 2);
        assert_eq!(closure_components(2, &[1, 1, 1]), 1);
        assert!(braid_closure(2, &[1, 1]).is_err());
    }
}

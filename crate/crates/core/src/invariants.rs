//! Exact integer and polynomial knot invariants.
//!
//! Two independent routes to the determinant are kept deliberately separate:
//! `|Δ(-1)|` through the Seifert matrix and `|det G|` through the Goeritz
//! matrix of a checkerboard coloring. Their agreement is used as a
//! cross-check throughout the test suite.

use crate::diagram::KnotDiagram;
use crate::matrix::{smith_diagonal, IntMatrix};
use crate::poly::{poly_det, IntPoly};
use crate::{Error, Result};
use serde::Serialize;

/// Laurent polynomial normalized so the lowest exponent is 0 and the leading
/// coefficient is positive; zero coefficients are never stored at the ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentPolynomial {
    /// Coefficient of `t^i` at index `i`.
    pub coefficients: Vec<i64>,
}

impl LaurentPolynomial {
    pub fn one() -> Self {
        LaurentPolynomial { coefficients: vec![1] }
    }

    pub fn is_one(&self) -> bool {
        self.coefficients == [1]
    }

    /// Width of the exponent range, an even number for knots.
    pub fn span(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, x: i64) -> i64 {
        let mut acc = 0i64;
        for &c in self.coefficients.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn from_int_poly(p: &IntPoly) -> Self {
        if p.is_zero() {
            return LaurentPolynomial { coefficients: vec![0] };
        }
        let low = p.coeffs.iter().position(|&c| c != 0).unwrap();
        let mut coeffs: Vec<i64> = p.coeffs[low..].iter().map(|&c| c as i64).collect();
        if *coeffs.last().unwrap() < 0 {
            for c in &mut coeffs {
                *c = -*c;
            }
        }
        LaurentPolynomial { coefficients: coeffs }
    }

    pub fn to_string_in_t(&self) -> String {
        if self.coefficients.iter().all(|&c| c == 0) {
            return "0".into();
        }
        let mut parts = vec![];
        for (i, &c) in self.coefficients.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            let term = match (i, mag) {
                (0, m) => format!("{m}"),
                (1, 1) => "t".into(),
                (1, m) => format!("{m}t"),
                (e, 1) => format!("t^{e}"),
                (e, m) => format!("{m}t^{e}"),
            };
            if parts.is_empty() {
                parts.push(if c < 0 { format!("-{term}") } else { term });
            } else {
                parts.push(format!("{} {term}", if c < 0 { "-" } else { "+" }));
            }
        }
        parts.join(" ")
    }
}

/// Finitely generated abelian group in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    /// Divisor chain d1 | d2 | …, each ≥ 2 or 0 (0 = infinite factor).
    pub invariant_factors: Vec<i64>,
    pub min_generators: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { invariant_factors: vec![], min_generators: 0 }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order when finite (product of the factors), None otherwise.
    pub fn order(&self) -> Option<i64> {
        if self.invariant_factors.contains(&0) {
            None
        } else {
            Some(self.invariant_factors.iter().product())
        }
    }
}

/// Invariant factors of the cokernel of an integer matrix, as a group.
///
/// The cokernel of an `r x c` matrix is `Z^r / im`, so zero factors appear
/// when the rank falls short of `r`.
pub fn smith_normal_form(m: &IntMatrix) -> AbelianGroup {
    let mut diag = smith_diagonal(m);
    // cokernel: one factor per row; missing diagonal entries are zeros
    while diag.len() < m.rows() {
        diag.push(0);
    }
    diag.truncate(m.rows().max(diag.iter().filter(|&&d| d != 0).count()));
    let mut factors: Vec<i64> = diag
        .iter()
        .filter(|&&d| d != 1)
        .map(|&d| d as i64)
        .collect();
    factors.sort_by_key(|&d| if d == 0 { i64::MAX } else { d });
    let min_generators = factors.len();
    AbelianGroup { invariant_factors: factors, min_generators }
}

/// Diagram checks shared by the invariant routes: consistent orientation,
/// connected underlying projection, planar embedding.
fn check_analyzable(d: &KnotDiagram) -> Result<()> {
    if d.crossings().is_empty() {
        return Ok(());
    }
    d.over_in_slots_checked()?;
    let n = d.crossings().len();
    let f = d.face_count()?;
    if f != n + 2 {
        return Err(Error::invalid(format!("not planar: {f} faces on {n} crossings")));
    }
    // connectivity of the underlying 4-valent graph
    let ports = d.arc_ports()?;
    let mut adj = vec![vec![]; n];
    for (_, (o, i)) in &ports {
        adj[o.0].push(i.0);
        adj[i.0].push(o.0);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::invalid("split diagram: projection not connected"));
    }
    Ok(())
}

/// Alexander polynomial `det(V - t V^T)`, normalized.
pub fn alexander_polynomial(d: &KnotDiagram) -> Result<LaurentPolynomial> {
    d.require_valid()?;
    let v = d.seifert_matrix()?;
    let m = v.rows();
    if m == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let mut a = vec![vec![IntPoly::zero(); m]; m];
    for i in 0..m {
        for j in 0..m {
            // V[i][j] - t V[j][i]
            a[i][j] = IntPoly { coeffs: vec![v[(i, j)], -v[(j, i)]] };
            while a[i][j].coeffs.last() == Some(&0) {
                a[i][j].coeffs.pop();
            }
        }
    }
    let det = poly_det(&a);
    let p = LaurentPolynomial::from_int_poly(&det);
    let at_one = p.eval(1);
    if at_one.abs() != 1 {
        return Err(Error::inconsistency(format!(
            "Alexander polynomial evaluates to {at_one} at t=1"
        )));
    }
    Ok(p)
}

/// Knot determinant `|Δ(-1)|`, computed through the Seifert matrix as
/// `|det(V + V^T)|`. Accepts connected multi-component diagrams too.
pub fn determinant(d: &KnotDiagram) -> Result<i64> {
    check_analyzable(d)?;
    let v = d.seifert_matrix()?;
    let m = v.rows();
    let mut s = IntMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            s[(i, j)] = v[(i, j)] + v[(j, i)];
        }
    }
    Ok(s.det().unsigned_abs() as i64)
}

/// Goeritz matrix from the checkerboard coloring seeded white at the
/// canonical unbounded region, with that region's row and column removed.
pub fn goeritz_matrix(d: &KnotDiagram) -> Result<IntMatrix> {
    check_analyzable(d)?;
    if d.crossings().is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let (face_of_corner, face_count) = d.faces()?;
    // 2-color faces; adjacency across each arc
    let ports = d.arc_ports()?;
    let mut adj: Vec<Vec<usize>> = vec![vec![]; face_count];
    for (_, (o, i)) in &ports {
        let left = face_of_corner[o.0][o.1 as usize];
        let right = face_of_corner[i.0][i.1 as usize];
        adj[left].push(right);
        adj[right].push(left);
    }
    let outer = face_of_corner[0][0];
    let mut color: Vec<Option<bool>> = vec![None; face_count]; // true = white
    color[outer] = Some(true);
    let mut stack = vec![outer];
    while let Some(f) = stack.pop() {
        let c = color[f].unwrap();
        for &g in &adj[f] {
            match color[g] {
                None => {
                    color[g] = Some(!c);
                    stack.push(g);
                }
                Some(cg) => {
                    if cg == c {
                        return Err(Error::inconsistency("diagram is not checkerboard colorable"));
                    }
                }
            }
        }
    }
    let whites: Vec<usize> = (0..face_count).filter(|&f| color[f] == Some(true)).collect();
    let widx: std::collections::HashMap<usize, usize> =
        whites.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let w = whites.len();
    let mut g = IntMatrix::zeros(w, w);
    for (i, corners) in face_of_corner.iter().enumerate() {
        // the two white corners sit at {0,2} or {1,3}
        let pair02 = color[corners[0]] == Some(true);
        let (u, v, eta) = if pair02 {
            (corners[0], corners[2], -1i128)
        } else {
            (corners[1], corners[3], 1i128)
        };
        debug_assert_eq!(color[u], Some(true), "corner parity at crossing {i}");
        debug_assert_eq!(color[v], Some(true));
        if u == v {
            continue;
        }
        let (ui, vi) = (widx[&u], widx[&v]);
        g[(ui, vi)] -= eta;
        g[(vi, ui)] -= eta;
        g[(ui, ui)] += eta;
        g[(vi, vi)] += eta;
    }
    Ok(g.minor(widx[&outer], widx[&outer]))
}

/// First homology of the double cover of S^3 branched along the diagram.
pub fn h1_double_cover(d: &KnotDiagram) -> Result<AbelianGroup> {
    let g = goeritz_matrix(d)?;
    Ok(smith_normal_form(&g))
}

/// The inequality chain attached to a ribbon presentation with `r`
/// singularities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    /// Singularity count of the presentation used as witness.
    pub singularity_count: usize,
    /// 3r: Heegaard genus upper bound for the branched double cover.
    pub heegaard_upper: i64,
    /// Minimal generator count of H1 of the branched double cover,
    /// a Heegaard genus lower bound ("lower bound via H1").
    pub heegaard_lower: i64,
    pub heegaard_lower_method: String,
    /// ceil((heegaard_lower + 1) / 4): lower bound for the symmetric
    /// ribbon number.
    pub rs_lower: i64,
    /// r bounds the free genus from above.
    pub free_genus_upper: i64,
    /// span(Δ)/2: Seifert genus lower bound.
    pub genus_lower: i64,
    pub determinant: i64,
    pub alexander: LaurentPolynomial,
    /// Inconsistencies found while assembling the report. Non-empty means a
    /// bug or a transcription error upstream.
    pub flags: Vec<String>,
    pub note: Option<String>,
}

/// Assembles the bound chain for a diagram presented with `r` ribbon
/// singularities. `symmetric_witness` records whether `r` comes from a
/// symmetric presentation, in which case `rs_lower ≤ r` must hold.
pub fn bounds_report(d: &KnotDiagram, r: usize, symmetric_witness: bool) -> Result<BoundsReport> {
    d.require_valid()?;
    let alexander = alexander_polynomial(d)?;
    let det = determinant(d)?;
    let h1 = h1_double_cover(d)?;
    let mut flags = vec![];
    if det % 2 == 0 {
        flags.push(format!("determinant {det} is even"));
    }
    if let Some(order) = h1.order() {
        if order != det {
            flags.push(format!("|H1| = {order} but determinant = {det}"));
        }
    } else {
        flags.push("H1 of the double branched cover is infinite".into());
    }
    let heegaard_lower = h1.min_generators as i64;
    let heegaard_upper = 3 * r as i64;
    // ceil((g_H + 1)/4) degenerates to 1 on the trivial group, where no
    // obstruction exists; report 0 there so the unknot carries all-zero
    // bounds.
    let rs_lower = if heegaard_lower == 0 { 0 } else { (heegaard_lower + 1 + 3).div_euclid(4) };
    let genus_lower = (alexander.span() / 2) as i64;
    let free_genus_upper = r as i64;
    if symmetric_witness {
        if rs_lower > r as i64 {
            flags.push(format!("rs_lower {rs_lower} exceeds witness r = {r}"));
        }
        if genus_lower > free_genus_upper {
            flags.push(format!(
                "genus lower bound {genus_lower} exceeds free genus upper bound {free_genus_upper}"
            ));
        }
        if heegaard_lower > heegaard_upper {
            flags.push(format!(
                "Heegaard lower bound {heegaard_lower} exceeds upper bound {heegaard_upper}"
            ));
        }
    }
    Ok(BoundsReport {
        singularity_count: r,
        heegaard_upper,
        heegaard_lower,
        heegaard_lower_method: "lower bound via H1".into(),
        rs_lower,
        free_genus_upper,
        genus_lower,
        determinant: det,
        alexander,
        flags,
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn alexander_unknot_and_trefoil() {
        assert!(alexander_polynomial(&KnotDiagram::unknot()).unwrap().is_one());
        let d = KnotDiagram::parse_pd(TREFOIL).unwrap();
        let p = alexander_polynomial(&d).unwrap();
        // hand Seifert matrix [[-1,1],[0,-1]]: det(V - tV^T) ~ t^2 - t + 1
        assert_eq!(p.coefficients, vec![1, -1, 1]);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&KnotDiagram::unknot()).unwrap(), 1);
        let d = KnotDiagram::parse_pd(TREFOIL).unwrap();
        assert_eq!(determinant(&d).unwrap(), 3);
        assert_eq!(determinant(&d.mirror().unwrap()).unwrap(), 3);
        // kinked unknot
        let k = KnotDiagram::parse_pd("X(1,1,2,2)").unwrap();
        assert_eq!(determinant(&k).unwrap(), 1);
        assert!(alexander_polynomial(&k).unwrap().is_one());
    }

    #[test]
    fn square_knot_alexander() {
        let d = KnotDiagram::parse_pd(TREFOIL).unwrap();
        let sq = d.connected_sum(&d.mirror().unwrap()).unwrap();
        assert_eq!(determinant(&sq).unwrap(), 9);
        let p = alexander_polynomial(&sq).unwrap();
        // (t - 1 + 1/t)^2 normalized
        assert_eq!(p.coefficients, vec![1, -2, 3, -2, 1]);
    }

    #[test]
    fn goeritz_matches_alexander_at_minus_one() {
        for pd in [TREFOIL, "X(1,1,2,2)"] {
            let d = KnotDiagram::parse_pd(pd).unwrap();
            let g = goeritz_matrix(&d).unwrap();
            assert_eq!(g.det().unsigned_abs() as i64, determinant(&d).unwrap());
        }
    }

    #[test]
    fn h1_examples() {
        assert!(h1_double_cover(&KnotDiagram::unknot()).unwrap().is_trivial());
        let d = KnotDiagram::parse_pd(TREFOIL).unwrap();
        let g = h1_double_cover(&d).unwrap();
        assert_eq!(g.invariant_factors, vec![3]);
        assert_eq!(g.min_generators, 1);
    }

    #[test]
    fn smith_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let g = smith_normal_form(&m);
        assert_eq!(g.invariant_factors, vec![6]);
        assert_eq!(g.min_generators, 1);
        let z = IntMatrix::zeros(1, 1);
        let g = smith_normal_form(&z);
        assert_eq!(g.invariant_factors, vec![0]);
        assert_eq!(g.min_generators, 1);
        let id = IntMatrix::identity(3);
        assert!(smith_normal_form(&id).is_trivial());
    }

    #[test]
    fn bounds_paper_constants() {
        // heegaard_lower 7 -> rs_lower 2; r = 2 -> heegaard_upper 6
        let d = KnotDiagram::unknot();
        let b = bounds_report(&d, 2, true).unwrap();
        assert_eq!(b.heegaard_upper, 6);
        assert_eq!((7i64 + 1).div_euclid(4), 2);
        let b0 = bounds_report(&d, 0, true).unwrap();
        assert_eq!(b0.determinant, 1);
        assert_eq!(b0.heegaard_upper, 0);
        assert_eq!(b0.genus_lower, 0);
        assert_eq!(b0.rs_lower, 0);
        assert!(b0.flags.is_empty(), "{:?}", b0.flags);
        // ceil((7+1)/4) = 2
        let h7 = (7i64 + 1 + 3).div_euclid(4);
        assert_eq!(h7, 2);
    }
}

//! Integer polynomials and the exact determinant over Z[t].

use crate::matrix::gcd;

/// Dense polynomial with integer coefficients, `coeffs[i]` multiplying `t^i`.
///
/// The zero polynomial is the empty coefficient vector; otherwise the leading
/// coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn constant(c: i128) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            IntPoly { coeffs: vec![c] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0; n];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i] += v;
        }
        for (i, v) in other.coeffs.iter().enumerate() {
            c[i] += v;
        }
        IntPoly { coeffs: c }.trim()
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j]
                    .checked_add(a.checked_mul(*b).expect("poly mul overflow"))
                    .expect("poly mul overflow");
            }
        }
        IntPoly { coeffs: c }.trim()
    }

    /// Exact division; panics if `other` does not divide `self` in Z[t].
    pub fn div_exact(&self, other: &IntPoly) -> IntPoly {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut rem = self.coeffs.clone();
        let d = other.coeffs.len();
        assert!(rem.len() >= d, "exact division degree mismatch");
        let lead = *other.coeffs.last().unwrap();
        let mut q = vec![0i128; rem.len() - d + 1];
        for k in (0..q.len()).rev() {
            let r = rem[k + d - 1];
            if r == 0 {
                continue;
            }
            assert!(r % lead == 0, "inexact polynomial division");
            let c = r / lead;
            q[k] = c;
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= c * b;
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
        IntPoly { coeffs: q }.trim()
    }

    pub fn eval(&self, x: i128) -> i128 {
        let mut acc = 0i128;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x).and_then(|a| a.checked_add(c)).expect("poly eval overflow");
        }
        acc
    }

    /// Content (gcd of coefficients), 0 for the zero polynomial.
    pub fn content(&self) -> i128 {
        self.coeffs.iter().fold(0, |g, &c| gcd(g, c))
    }
}

/// Determinant of a square matrix over Z[t] by fraction-free Bareiss
/// elimination. All divisions are exact in Z[t].
pub fn poly_det(m: &[Vec<IntPoly>]) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::constant(1);
    }
    assert!(m.iter().all(|row| row.len() == n), "non-square polynomial matrix");
    let mut a: Vec<Vec<IntPoly>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = IntPoly::constant(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return IntPoly::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev);
            }
            a[i][k] = IntPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let mut d = a[n - 1][n - 1].clone();
    if sign < 0 {
        d = d.neg();
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i128]) -> IntPoly {
        IntPoly { coeffs: coeffs.to_vec() }.trim()
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = p(&[1, -1, 1]);
        let b = p(&[2, 3]);
        let c = a.mul(&b);
        assert_eq!(c.div_exact(&b), a);
        assert_eq!(c.div_exact(&a), b);
    }

    #[test]
    fn det_2x2_poly() {
        // det [[t, 1], [1, t]] = t^2 - 1
        let t = p(&[0, 1]);
        let one = p(&[1]);
        let d = poly_det(&[vec![t.clone(), one.clone()], vec![one, t]]);
        assert_eq!(d, p(&[-1, 0, 1]));
    }

    #[test]
    fn det_zero_row() {
        let z = IntPoly::zero();
        let one = p(&[1]);
        let d = poly_det(&[vec![z.clone(), z.clone()], vec![one.clone(), one]]);
        assert!(d.is_zero());
    }
}

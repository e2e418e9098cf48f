//! Dense integer matrices with exact arithmetic.
//!
//! Everything here works over `i128`; sizes stay small (a few dozen rows at
//! most), so exact elimination is cheap and there is no need for modular
//! tricks.

/// A dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Removes row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows - 1, self.cols - 1);
        for r in 0..self.rows {
            if r == i {
                continue;
            }
            for c in 0..self.cols {
                if c == j {
                    continue;
                }
                m[(r - (r > i) as usize, c - (c > j) as usize)] = self[(r, c)];
            }
        }
        m
    }

    /// Block-diagonal sum of two square presentations.
    pub fn block_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    ///
    /// Panics if the matrix is not square.
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a = self.data.clone();
        let at = |a: &Vec<i128>, i: usize, j: usize| a[i * n + j];
        let mut sign: i128 = 1;
        let mut prev: i128 = 1;
        for k in 0..n - 1 {
            if at(&a, k, k) == 0 {
                // find a pivot row below
                let Some(p) = (k + 1..n).find(|&r| at(&a, r, k) != 0) else {
                    return 0;
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = at(&a, i, j)
                        .checked_mul(at(&a, k, k))
                        .and_then(|x| {
                            at(&a, i, k).checked_mul(at(&a, k, j)).and_then(|y| x.checked_sub(y))
                        })
                        .expect("integer overflow in determinant");
                    a[i * n + j] = v / prev;
                }
                a[i * n + k] = 0;
            }
            prev = at(&a, k, k);
        }
        sign * at(&a, n - 1, n - 1)
    }

    /// Rank over the rationals, by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let Some(p) = (row..m.rows).find(|&r| m[(r, col)] != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let t = m[(row, j)];
                m[(row, j)] = m[(p, j)];
                m[(p, j)] = t;
            }
            for r in row + 1..m.rows {
                if m[(r, col)] != 0 {
                    let a = m[(row, col)];
                    let b = m[(r, col)];
                    let g = gcd(a, b);
                    let (fa, fb) = (b / g, a / g);
                    for j in 0..m.cols {
                        m[(r, j)] = m[(r, j)] * fb - m[(row, j)] * fa;
                    }
                }
            }
            row += 1;
            rank += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Diagonal of the Smith normal form of `m`.
///
/// Exact integer elimination; the pivot is always the entry of smallest
/// nonzero absolute value in the remaining block, and a final divisibility
/// pass enforces `d_1 | d_2 | …`. Returned entries are non-negative and the
/// list has length `min(rows, cols)`.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<i128> {
    let mut a = m.clone();
    let n = a.rows.min(a.cols);
    let mut diag = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        // locate smallest nonzero entry in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..a.rows {
            for j in k..a.cols {
                if a[(i, j)] != 0
                    && pivot.is_none_or(|(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        for j in 0..a.cols {
            let t = a[(k, j)];
            a[(k, j)] = a[(pi, j)];
            a[(pi, j)] = t;
        }
        for i in 0..a.rows {
            let t = a[(i, k)];
            a[(i, k)] = a[(i, pj)];
            a[(i, pj)] = t;
        }
        let p = a[(k, k)];
        let mut clean = true;
        for i in k + 1..a.rows {
            let q = div_round(a[(i, k)], p);
            if q != 0 {
                for j in k..a.cols {
                    a[(i, j)] -= q * a[(k, j)];
                }
            }
            if a[(i, k)] != 0 {
                clean = false;
            }
        }
        for j in k + 1..a.cols {
            let q = div_round(a[(k, j)], p);
            if q != 0 {
                for i in k..a.rows {
                    a[(i, j)] -= q * a[(i, k)];
                }
            }
            if a[(k, j)] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue; // smaller remainders appeared; re-pivot this block
        }
        diag.push(a[(k, k)].abs());
        k += 1;
    }
    while diag.len() < n {
        diag.push(0);
    }
    // divisibility fixup d_i | d_{i+1}
    loop {
        let mut changed = false;
        for i in 0..diag.len().saturating_sub(1) {
            let (x, y) = (diag[i], diag[i + 1]);
            if x != 0 && y != 0 && y % x != 0 {
                let g = gcd(x, y);
                let l = x / g * y;
                diag[i] = g;
                diag[i + 1] = l;
                changed = true;
            } else if x == 0 && y != 0 {
                diag[i] = y;
                diag[i + 1] = 0;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    diag
}

/// Rounded division, so remainders shrink in absolute value.
fn div_round(a: i128, b: i128) -> i128 {
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + if (r > 0) == (b > 0) { 1 } else { -1 }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(m.det(), 3);
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), -1);
        assert_eq!(IntMatrix::zeros(0, 0).det(), 1);
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(m.det(), 0);
    }

    #[test]
    fn smith_diag_2_3() {
        // hand reduction: diag(2,3) ~ diag(1,6)
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_diagonal(&m), vec![1, 6]);
    }

    #[test]
    fn smith_zero_and_identity() {
        let z = IntMatrix::zeros(1, 1);
        assert_eq!(smith_diagonal(&z), vec![0]);
        let id = IntMatrix::identity(4);
        assert_eq!(smith_diagonal(&id), vec![1, 1, 1, 1]);
    }

    #[test]
    fn smith_random_against_det() {
        // |product of invariant factors| = |det| for square nonsingular
        let m = IntMatrix::from_rows(&[vec![-6, 111, -36, 6], vec![5, -672, 210, 74], vec![0, -255, 81, 24], vec![-7, 255, -81, -10]]);
        let d = smith_diagonal(&m);
        assert_eq!(d, vec![1, 3, 21, 0]);
    }

    #[test]
    fn rank_works() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }
}

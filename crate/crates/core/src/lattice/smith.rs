//! Smith normal form with unimodular transforms.
//!
//! Pivoting picks a unit entry when one is available and otherwise the entry
//! of smallest absolute value in the active submatrix, which keeps
//! intermediate entries small on the sparse, nearly unimodular relation
//! matrices this crate produces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `left * input * right == diagonal`, with `left` and `right` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// The `min(rows, cols)` diagonal entries in divisibility order.
    pub fn divisors(&self) -> Vec<BigInt> {
        let d = &self.diagonal;
        (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (diagonal, left, right) = reduce(a, true, true);
    SmithDecomposition { diagonal, left: left.unwrap(), right: right.unwrap() }
}

pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let (d, _, _) = reduce(a, false, false);
    (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect()
}

/// Diagonal form plus only the column transform; used where the quotient map
/// `x -> x * right` is needed but the row transform is not.
pub(crate) fn smith_with_right(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (d, _, right) = reduce(a, false, true);
    (d, right.unwrap())
}

fn is_unit(x: &BigInt) -> bool {
    x.is_one() || (-x).is_one()
}

fn find_pivot(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let (rows, cols) = (m.rows(), m.cols());
    if is_unit(&m[(t, t)]) {
        return Some((t, t));
    }
    for j in t..cols {
        if is_unit(&m[(t, j)]) {
            return Some((t, j));
        }
    }
    for i in t..rows {
        if is_unit(&m[(i, t)]) {
            return Some((i, t));
        }
    }
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..rows {
        for j in t..cols {
            let v = &m[(i, j)];
            if v.is_zero() {
                continue;
            }
            if is_unit(v) {
                return Some((i, j));
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                best = Some((i, j, abs));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn reduce(a: &IntMatrix, track_left: bool, track_right: bool) -> (IntMatrix, Option<IntMatrix>, Option<IntMatrix>) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut left = track_left.then(|| IntMatrix::identity(rows));
    let mut right = track_right.then(|| IntMatrix::identity(cols));

    let row_op = |m: &mut IntMatrix, left: &mut Option<IntMatrix>, dst: usize, src: usize, f: &BigInt| {
        m.add_row_multiple(dst, src, f);
        if let Some(l) = left.as_mut() {
            l.add_row_multiple(dst, src, f);
        }
    };
    let col_op = |m: &mut IntMatrix, right: &mut Option<IntMatrix>, dst: usize, src: usize, f: &BigInt| {
        m.add_col_multiple(dst, src, f);
        if let Some(r) = right.as_mut() {
            r.add_col_multiple(dst, src, f);
        }
    };

    for t in 0..rows.min(cols) {
        'pivot: loop {
            let Some((pi, pj)) = find_pivot(&m, t) else {
                return (m, left, right);
            };
            m.swap_rows(t, pi);
            if let Some(l) = left.as_mut() {
                l.swap_rows(t, pi);
            }
            m.swap_cols(t, pj);
            if let Some(r) = right.as_mut() {
                r.swap_cols(t, pj);
            }

            // Clear column t below and row t to the right. A nonzero remainder
            // means a smaller pivot exists; restart with it.
            let mut clean = true;
            for i in t + 1..rows {
                if m[(i, t)].is_zero() {
                    continue;
                }
                let q = m[(i, t)].div_floor(&m[(t, t)]);
                row_op(&mut m, &mut left, i, t, &-q);
                if !m[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if m[(t, j)].is_zero() {
                    continue;
                }
                let q = m[(t, j)].div_floor(&m[(t, t)]);
                col_op(&mut m, &mut right, j, t, &-q);
                if !m[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }

            // Divisibility chain: the pivot must divide the whole remaining block.
            if !is_unit(&m[(t, t)]) {
                let p = m[(t, t)].clone();
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[(i, j)].is_multiple_of(&p)));
                if let Some(i) = offender {
                    row_op(&mut m, &mut left, t, i, &BigInt::one());
                    continue 'pivot;
                }
            }
            if m[(t, t)].is_negative() {
                m.negate_row(t);
                if let Some(l) = left.as_mut() {
                    l.negate_row(t);
                }
            }
            break;
        }
    }
    (m, left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        let prod = s.left.mul(a).unwrap().mul(&s.right).unwrap();
        assert_eq!(prod, s.diagonal);
        assert!(s.left.determinant().unwrap().abs().is_one());
        assert!(s.right.determinant().unwrap().abs().is_one());
        s
    }

    #[test]
    fn identity() {
        let a = IntMatrix::identity(3);
        let s = check(&a);
        assert_eq!(s.diagonal, a);
        assert_eq!(s.left, a);
        assert_eq!(s.right, a);
    }

    #[test]
    fn two_by_two() {
        let s = check(&IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.divisors(), ints(&[2, 4]));
    }

    #[test]
    fn diag_six_four() {
        let a = IntMatrix::from_i64_rows(&[vec![6, 0], vec![0, 4]]);
        check(&a);
        assert_eq!(elementary_divisors(&a), ints(&[2, 12]));
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(2, 5);
        check(&a);
        assert_eq!(elementary_divisors(&a), ints(&[0, 0]));
        assert_eq!(elementary_divisors(&IntMatrix::zeros(0, 4)), ints(&[]));
    }

    #[test]
    fn rectangular_with_trailing_zero() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = check(&a);
        assert_eq!(s.divisors(), ints(&[2, 6, 12]));
        let b = IntMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4], vec![3, 6]]);
        let s = check(&b);
        assert_eq!(s.divisors(), ints(&[1, 0]));
    }
}

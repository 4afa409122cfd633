//! Gaussian elimination over exact fields.

use num_traits::{One, Zero};

use super::rat::Rat;
use super::sqrt_combo::SqrtCombo;

/// The field operations elimination needs.
pub trait ExactField: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl ExactField for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl ExactField for SqrtCombo {
    fn zero() -> Self {
        SqrtCombo::zero()
    }
    fn one() -> Self {
        SqrtCombo::one()
    }
    fn is_zero(&self) -> bool {
        SqrtCombo::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.invert().expect("pivot is nonzero")
    }
}

/// Reduces `m` to row echelon form in place and returns the pivot columns.
/// Pivots are taken at the first nonzero entry scanning rows top-down within
/// each column, so the result is deterministic.
pub fn row_reduce<T: ExactField>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for v in m[r].iter_mut() {
            *v = v.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = f.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: ExactField>(m: &[Vec<T>]) -> usize {
    let mut work = m.to_vec();
    row_reduce(&mut work).len()
}

/// One solution of `a·x = b`, or `None` when the system is inconsistent.
pub fn solve<T: ExactField>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn mat_mul<T: ExactField>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(T::zero(), |acc, k| {
                        if row[k].is_zero() {
                            acc
                        } else {
                            acc.add(&row[k].mul(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<T: ExactField>(a: &[Vec<T>], v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(rank(&q(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        let empty: Vec<Vec<Rat>> = Vec::new();
        assert_eq!(rank(&empty), 0);
    }

    #[test]
    fn rank_over_radicals() {
        let s2 = SqrtCombo::term(rat(1), 2).unwrap();
        let two = SqrtCombo::from_int(2);
        // [[√2, 2], [1, √2]] is singular: √2·√2 − 2·1 = 0
        let m = vec![vec![s2.clone(), two], vec![SqrtCombo::one(), s2]];
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = q(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        let s = q(&[&[1, 1], &[2, 2]]);
        assert!(solve(&s, &[rat(1), rat(3)]).is_none());
        assert_eq!(mat_vec(&a, &x), vec![rat(3), rat(1)]);
    }
}

//! Smith normal form over `ℤ` and abelianization of finite presentations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::group::Presentation;

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols])).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    *out.at(i, j) += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    *m.at(i, j) = v;
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += factor · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * factor;
            *self.at(dst, j) += v;
        }
    }

    /// `col[dst] += factor · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * factor;
            *self.at(i, dst) += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            *self.at(r, j) = v;
        }
    }
}

/// `d = u · m · v` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next and all of them non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.abs() < d.get(pi, pj).abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return SmithForm { d, u, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = -d.get(i, t).div_floor(d.get(t, t));
                if !q.is_zero() {
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = -d.get(t, j).div_floor(d.get(t, t));
                if !q.is_zero() {
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the remaining block; otherwise fold a
            // offending row into row t and reduce again.
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(d.get(t, t))));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d, u, v }
}

/// Invariant factors of `G/G'` for a finite presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    /// `d₁ | d₂ | …` with unit factors dropped; `0` stands for a `ℤ` summand.
    pub factors: Vec<BigInt>,
}

impl Abelianization {
    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|f| !f.is_zero())
    }

    /// Exponent of the abelianization when it is finite: the last invariant factor.
    pub fn exponent(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.last().cloned().unwrap_or_else(BigInt::one))
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.factors.iter().product())
    }

    pub fn factors_u64(&self) -> Option<Vec<u64>> {
        self.factors.iter().map(|f| f.to_u64()).collect()
    }
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    let n = p.generator_count();
    let rows = p.exponent_sum_rows();
    let m = if rows.is_empty() { IntMatrix::zeros(0, n) } else { IntMatrix::from_rows(&rows) };
    let snf = smith_normal_form(&m);
    let diag = snf.d.diagonal();
    let factors = (0..n)
        .map(|i| diag.get(i).cloned().unwrap_or_else(BigInt::zero))
        .filter(|f| !f.is_one())
        .collect();
    Abelianization { factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Word;
    use alloc::string::ToString;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(m: &IntMatrix, expect_diag: &[i64]) {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.d.diagonal(), ints(expect_diag));
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
    }

    #[test]
    fn hand_reduced_examples() {
        check(&IntMatrix::from_rows(&[vec![0, 4], vec![4, 0]]), &[4, 4]);
        check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]), &[2, 4]);
        check(&IntMatrix::identity(3), &[1, 1, 1]);
        check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]), &[1, 6]);
        check(&IntMatrix::from_rows(&[vec![0, 0, 0], vec![0, 0, 0]]), &[0, 0]);
        check(&IntMatrix::from_rows(&[vec![6, 4, 10]]), &[2]);
    }

    #[test]
    fn determinant_values() {
        assert_eq!(IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).determinant(), BigInt::from(-8));
        assert_eq!(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).determinant(), BigInt::zero());
    }

    #[test]
    fn abelianizations() {
        let ab = abelianization(&Presentation::promislow());
        assert_eq!(ab.factors, ints(&[4, 4]));
        assert_eq!(ab.exponent(), Some(BigInt::from(4)));
        assert_eq!(ab.order(), Some(BigInt::from(16)));

        let z5 = Presentation::new(vec!["a".to_string()], vec![Word::letter(0, 5)]);
        assert_eq!(abelianization(&z5).factors, ints(&[5]));

        let z2 = Presentation::new(
            vec!["a".to_string(), "b".to_string()],
            vec![Word::from_syllables([(0, 1), (1, 1), (0, -1), (1, -1)])],
        );
        let ab = abelianization(&z2);
        assert_eq!(ab.factors, ints(&[0, 0]));
        assert!(!ab.is_finite());
        assert_eq!(ab.exponent(), None);

        let free = Presentation::new(vec!["a".to_string()], Vec::new());
        assert_eq!(abelianization(&free).factors, ints(&[0]));
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::poly::{rat, Rational};

/// Dense row-major matrix of rationals. Vectors are columns: an `m × n`
/// matrix maps `Q^n` to `Q^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from row vectors of equal length; `cols` fixes the width when
    /// `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        QMat { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged matrix columns");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &QMat) -> Result<QMat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// `self + t·other`.
    pub fn add_scaled(&self, other: &QMat, t: &Rational) -> Result<QMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("pencil shapes differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b * t).collect();
        Ok(QMat { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Rational) -> QMat {
        QMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[&QMat]) -> Result<QMat> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::DimensionMismatch("vstack of unequal widths".into()));
        }
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(QMat { rows, cols, data })
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(blocks: &[&QMat]) -> Result<QMat> {
        let t: Vec<QMat> = blocks.iter().map(|b| b.transpose()).collect();
        Ok(QMat::vstack(&t.iter().collect::<Vec<_>>())?.transpose())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if v.is_zero() {
                        continue;
                    }
                    let nv = m.get(i, j) - &f * v;
                    m.set(i, j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `{v : self·v = 0}` inside `Q^cols`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, basis).expect("kernel vectors have the ambient length")
    }

    /// Column space inside `Q^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::from_spanning(self.rows, self.transpose().row_vecs())
            .expect("columns have the ambient length")
    }

    /// Exact determinant by fraction-free (Bareiss) elimination after
    /// clearing denominators row by row.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            m.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
            scale *= l;
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            let (top, bottom) = m.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom.iter_mut() {
                let f = row[k].clone();
                for j in k + 1..n {
                    let v = &row[j] * &pivot_row[k] - &f * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = Rational::new(m[n - 1][n - 1].clone(), scale);
        Ok(if sign < 0 { -d } else { d })
    }

    /// Solves `self·x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::DimensionMismatch("solve needs a square system".into()));
        }
        let rhs = QMat::from_columns(self.rows, &[b.to_vec()]);
        let aug = QMat::hstack(&[self, &rhs])?;
        let (r, pivots) = aug.rref();
        if pivots.len() < self.cols || pivots.last() == Some(&self.cols) {
            return Err(Error::SingularMatrix);
        }
        Ok((0..self.rows).map(|i| r.get(i, self.cols).clone()).collect())
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(crate::poly::rational::fmt_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::frac;

    #[test]
    fn rank_kernel_image_examples() {
        let id = QMat::identity(3);
        assert_eq!(id.rank(), 3);
        assert_eq!(id.kernel().dim(), 0);
        assert_eq!(id.image(), Subspace::full(3));

        let z = QMat::zeros(2, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().dim(), 3);

        let m = QMat::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k, Subspace::from_spanning(2, vec![vec![rat(2), rat(-1)]]).unwrap());
        assert_eq!(m.image().dim(), 1);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = QMat::from_rows(
            3,
            vec![
                vec![frac(1, 2), rat(2), rat(0)],
                vec![rat(3), frac(-1, 3), rat(1)],
                vec![rat(0), rat(4), frac(5, 7)],
            ],
        );
        // cofactor expansion along the first row
        let g = |i: usize, j: usize| m.get(i, j).clone();
        let expected = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
            - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
            + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
        assert_eq!(m.det().unwrap(), expected);
        assert_eq!(QMat::from_i64(&[&[0, 1], &[1, 0]]).det().unwrap(), rat(-1));
        assert_eq!(QMat::from_i64(&[&[1, 2], &[2, 4]]).det().unwrap(), rat(0));
        assert_eq!(QMat::zeros(0, 0).det().unwrap(), rat(1));
    }

    #[test]
    fn solve_recovers_solution() {
        let m = QMat::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let x = vec![rat(1), frac(-1, 2), rat(3)];
        let b = m.mul_vec(&x).unwrap();
        assert_eq!(m.solve(&b).unwrap(), x);
        assert_eq!(QMat::from_i64(&[&[1, 2], &[2, 4]]).solve(&[rat(1), rat(0)]), Err(Error::SingularMatrix));
    }
}

use num_traits::Zero;

use super::matrix::QMat;
use crate::error::{Error, Result};
use crate::poly::Rational;

/// Linear subspace of `Q^n`, stored as the nonzero rows of a reduced row
/// echelon basis. Two subspaces are equal exactly when their canonical
/// bases are identical, so derived `PartialEq` is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: QMat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: QMat::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: QMat::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the first `k` coordinate vectors.
    pub fn coordinate_prefix(ambient: usize, k: usize) -> Self {
        let rows = (0..k.min(ambient))
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::from_integer(1.into());
                v
            })
            .collect();
        Self::from_spanning(ambient, rows).expect("unit vectors")
    }

    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a space of dimension {ambient}",
                v.len()
            )));
        }
        Ok(Self::from_matrix(&QMat::from_rows(ambient, vectors)))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &QMat) -> Self {
        let (r, pivots) = m.rref();
        let rows = r.row_vecs().into_iter().take(pivots.len()).collect();
        Subspace { ambient: m.cols(), basis: QMat::from_rows(m.cols(), rows), pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let mut w = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (wj, bj) in w.iter_mut().zip(self.basis.row(row)) {
                if !bj.is_zero() {
                    *wj -= &f * bj;
                }
            }
        }
        Ok(w.iter().all(Zero::is_zero))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for v in other.basis.row_vecs() {
            if !self.contains_vector(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::from_matrix(&QMat::vstack(&[&self.basis, &other.basis])?))
    }

    /// Zassenhaus: reduce `[[S, S], [T, 0]]`; rows with vanishing left half
    /// span `S ∩ T` on the right.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for v in self.basis.row_vecs() {
            let mut r = v.clone();
            r.extend(v);
            rows.push(r);
        }
        for v in other.basis.row_vecs() {
            let mut r = v;
            r.extend(std::iter::repeat_with(Rational::zero).take(n));
            rows.push(r);
        }
        let (red, pivots) = QMat::from_rows(2 * n, rows).rref();
        let inter = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(row, _)| red.row(row)[n..].to_vec())
            .collect();
        Self::from_spanning(n, inter)
    }

    /// `{M v : v ∈ self}`.
    pub fn image_under(&self, m: &QMat) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch("image: matrix width differs from ambient".into()));
        }
        let imgs = self.basis.row_vecs().iter().map(|v| m.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Self::from_spanning(m.rows(), imgs)
    }

    /// `{v : M v ∈ self}`.
    pub fn preimage_under(&self, m: &QMat) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::DimensionMismatch("preimage: matrix height differs from ambient".into()));
        }
        let ann = self.annihilator();
        Ok(ann.mul(m)?.kernel())
    }

    /// Rows spanning the orthogonal complement under the standard pairing.
    pub fn annihilator(&self) -> QMat {
        let k = self.basis.kernel();
        QMat::from_rows(self.ambient, k.basis_vectors())
    }

    /// Intersection with the span of the first `k` coordinates. Eliminates
    /// the trailing coordinates first and keeps the rows supported in the
    /// prefix.
    pub fn prefix_intersect(&self, k: usize) -> Result<Subspace> {
        let n = self.ambient;
        if k > n {
            return Err(Error::DimensionMismatch(format!("prefix {k} longer than ambient {n}")));
        }
        let order: Vec<usize> = (k..n).chain(0..k).collect();
        let permuted = QMat::from_rows(
            n,
            self.basis.row_vecs().iter().map(|v| order.iter().map(|&c| v[c].clone()).collect()).collect(),
        );
        let (red, pivots) = permuted.rref();
        let tail = n - k;
        let kept = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= tail)
            .map(|(row, _)| {
                let mut v = vec![Rational::zero(); n];
                for (pos, &c) in order.iter().enumerate() {
                    v[c] = red.get(row, pos).clone();
                }
                v
            })
            .collect();
        Self::from_spanning(n, kept)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::from_spanning(n, vs.iter().map(|v| v.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn lattice_basics() {
        let s = span(3, &[&[1, 2, 0], &[0, 1, 1]]);
        assert_eq!(s.sum(&Subspace::zero(3)).unwrap(), s);
        assert_eq!(s.intersection(&Subspace::full(3)).unwrap(), s);
        let a = span(2, &[&[1, 0]]);
        let b = span(2, &[&[0, 1]]);
        assert_eq!(a.intersection(&b).unwrap(), Subspace::zero(2));
        assert!(Subspace::full(2).contains(&a).unwrap());
        assert!(!a.contains(&b).unwrap());
        assert!(a.intersection(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn prefix_intersection_examples() {
        assert_eq!(Subspace::full(4).prefix_intersect(2).unwrap(), Subspace::coordinate_prefix(4, 2));
        assert_eq!(span(3, &[&[1, 0, 1]]).prefix_intersect(2).unwrap(), Subspace::zero(3));
        let s = span(3, &[&[1, 0, 1], &[0, 1, 1]]);
        let expected = span(3, &[&[1, -1, 0]]);
        assert_eq!(s.prefix_intersect(2).unwrap(), expected);
        // same answer from the generic intersection
        assert_eq!(s.intersection(&Subspace::coordinate_prefix(3, 2)).unwrap(), expected);
    }

    #[test]
    fn image_and_preimage() {
        // M = [[0, 1], [0, 0]] maps e2 -> e1
        let m = QMat::from_i64(&[&[0, 1], &[0, 0]]);
        let e1 = span(2, &[&[1, 0]]);
        assert_eq!(Subspace::full(2).image_under(&m).unwrap(), e1);
        assert_eq!(e1.preimage_under(&m).unwrap(), Subspace::full(2));
        assert_eq!(Subspace::zero(2).preimage_under(&m).unwrap(), e1);
    }

    fn random_subspace(n: usize, rows: usize) -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), rows).prop_map(move |rs| {
            Subspace::from_spanning(n, rs.into_iter().map(|r| r.into_iter().map(rat).collect()).collect())
                .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn grassmann_formula(s in random_subspace(6, 3), t in random_subspace(6, 4)) {
            let sum = s.sum(&t).unwrap();
            let inter = s.intersection(&t).unwrap();
            // oracle: rank of the stacked bases
            let stacked = QMat::vstack(&[s.basis(), t.basis()]).unwrap();
            prop_assert_eq!(sum.dim(), stacked.rank());
            prop_assert_eq!(sum.dim() + inter.dim(), s.dim() + t.dim());
            prop_assert!(s.contains(&inter).unwrap() && t.contains(&inter).unwrap());
        }

        #[test]
        fn prefix_agrees_with_generic_intersection(s in random_subspace(7, 4), k in 0usize..=7) {
            let direct = s.prefix_intersect(k).unwrap();
            let generic = s.intersection(&Subspace::coordinate_prefix(7, k)).unwrap();
            prop_assert_eq!(direct, generic);
        }
    }
}

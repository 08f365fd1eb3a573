//! Matrix pencils `A + tB`: exact determinant polynomials by
//! evaluation–interpolation, and the degree of `det(η' + tη)` from the
//! subspace filtration `L_{i+1} = η'(η⁻¹(L_i)) ∩ Im η`.

use rayon::prelude::*;

use super::matrix::QMat;
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::poly::{rat, Rational, UPoly};

/// The pencil `a + t·b`; both matrices have the same shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilMatrix {
    a: QMat,
    b: QMat,
}

impl PencilMatrix {
    pub fn new(a: QMat, b: QMat) -> Result<Self> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(Error::DimensionMismatch(format!(
                "pencil of {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(PencilMatrix { a, b })
    }

    pub fn constant_part(&self) -> &QMat {
        &self.a
    }

    pub fn linear_part(&self) -> &QMat {
        &self.b
    }

    pub fn at(&self, t: &Rational) -> QMat {
        self.a.add_scaled(&self.b, t).expect("shapes checked at construction")
    }
}

/// Interpolation nodes `0, 1, -1, 2, -2, ...`.
pub fn interpolation_node(k: usize) -> Rational {
    let k = k as i64;
    if k % 2 == 1 {
        rat((k + 1) / 2)
    } else {
        rat(-k / 2)
    }
}

/// Interpolates a polynomial of degree at most `degree_bound` from values
/// at the first `degree_bound + 1` nodes, evaluated in parallel.
pub fn interpolate_on_nodes<F>(degree_bound: usize, f: F) -> Result<UPoly>
where
    F: Fn(&Rational) -> Result<Rational> + Sync,
{
    let points = (0..=degree_bound)
        .into_par_iter()
        .map(|k| {
            let t = interpolation_node(k);
            f(&t).map(|v| (t, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UPoly::interpolate(&points))
}

/// `det(A + tB)` as an exact polynomial of degree at most `n`.
pub fn pencil_det(p: &PencilMatrix) -> Result<UPoly> {
    if !p.a.is_square() {
        return Err(Error::DimensionMismatch("pencil determinant needs square matrices".into()));
    }
    interpolate_on_nodes(p.a.rows(), |t| p.at(t).det())
}

/// Output of [`pencil_degree_filtration`].
#[derive(Clone, Debug)]
pub struct PencilFiltration {
    /// `L_0, L_1, ...` up to and including the first repeated term.
    pub chain: Vec<Subspace>,
    pub dims: Vec<usize>,
    /// `dim η⁻¹(0)`.
    pub kernel_dim: usize,
    /// First index `i` with `L_{i+1} = L_i`.
    pub stabilized_at: usize,
    /// `deg_t det(η' + tη) = n - dim ker η - dim L_∞`.
    pub degree: usize,
}

impl PencilFiltration {
    pub fn stable_dim(&self) -> usize {
        *self.dims.last().expect("chain starts with L_0")
    }
}

/// Degree in `t` of `det(η' + tη)` from the chain
/// `L_0 = 0, L_{i+1} = η'(η⁻¹(L_i)) ∩ Im η`.
pub fn pencil_degree_filtration(eta: &QMat, eta_prime: &QMat) -> Result<PencilFiltration> {
    let pencil = PencilMatrix::new(eta_prime.clone(), eta.clone())?;
    if pencil_det(&pencil)?.is_zero() {
        return Err(Error::SingularPencil);
    }
    filtration_unchecked(eta, eta_prime)
}

/// The chain alone, without the regularity check; used where regularity is
/// already known (or irrelevant, as for chain-law checks).
pub fn filtration_unchecked(eta: &QMat, eta_prime: &QMat) -> Result<PencilFiltration> {
    let n = eta.cols();
    if !eta.is_square() || eta.rows() != eta_prime.rows() || eta.cols() != eta_prime.cols() {
        return Err(Error::DimensionMismatch("filtration needs equal square shapes".into()));
    }
    let image = eta.image();
    let kernel_dim = n - image.dim();
    let mut chain = vec![Subspace::zero(eta.rows())];
    loop {
        let last = chain.last().expect("nonempty");
        let next = last.preimage_under(eta)?.image_under(eta_prime)?.intersection(&image)?;
        let stable = next.dim() == last.dim() && next.contains(last)?;
        chain.push(next);
        if stable {
            break;
        }
        if chain.len() > n + 2 {
            return Err(Error::Internal("pencil filtration failed to stabilize".into()));
        }
    }
    let dims: Vec<usize> = chain.iter().map(Subspace::dim).collect();
    let stable_dim = *dims.last().unwrap();
    Ok(PencilFiltration {
        stabilized_at: chain.len() - 2,
        degree: n - kernel_dim - stable_dim,
        kernel_dim,
        dims,
        chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_sequence() {
        let nodes: Vec<_> = (0..5).map(interpolation_node).collect();
        assert_eq!(nodes, vec![rat(0), rat(1), rat(-1), rat(2), rat(-2)]);
    }

    #[test]
    fn pencil_det_examples() {
        let i2 = QMat::identity(2);
        let p = PencilMatrix::new(i2.clone(), i2.clone()).unwrap();
        assert_eq!(pencil_det(&p).unwrap(), UPoly::from_i64(&[1, 2, 1]));
        let p = PencilMatrix::new(i2.clone(), QMat::zeros(2, 2)).unwrap();
        assert_eq!(pencil_det(&p).unwrap(), UPoly::from_i64(&[1]));
        let a = QMat::from_i64(&[&[1, 0], &[0, 0]]);
        let b = QMat::from_i64(&[&[0, 0], &[0, 1]]);
        assert_eq!(pencil_det(&PencilMatrix::new(a, b).unwrap()).unwrap(), UPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn filtration_examples() {
        let i3 = QMat::identity(3);
        let m = QMat::from_i64(&[&[2, 1, 0], &[0, 1, 0], &[1, 0, 3]]);
        let f = pencil_degree_filtration(&m, &i3).unwrap();
        assert_eq!((f.degree, f.stable_dim()), (3, 0));

        let f = pencil_degree_filtration(&QMat::zeros(3, 3), &m).unwrap();
        assert_eq!(f.degree, 0);

        let nil = QMat::from_i64(&[&[0, 1], &[0, 0]]);
        let f = pencil_degree_filtration(&nil, &QMat::identity(2)).unwrap();
        assert_eq!(f.dims, vec![0, 1, 1]);
        assert_eq!(f.degree, 0);
        let direct = pencil_det(&PencilMatrix::new(QMat::identity(2), nil).unwrap()).unwrap();
        assert_eq!(direct, UPoly::from_i64(&[1]));
    }

    #[test]
    fn singular_pencil_is_rejected() {
        let a = QMat::from_i64(&[&[1, 0], &[0, 0]]);
        let b = QMat::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(pencil_degree_filtration(&a, &b).unwrap_err(), Error::SingularPencil);
    }
}

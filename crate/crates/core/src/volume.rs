//! Volumes of divisor classes on surfaces.
//!
//! On a surface `vol(D) = P_D²`. Inside a chamber the negative part depends
//! linearly on `D`, so the volume is a quadratic form there.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::chambers::construct_nef_with_null;
use crate::lattice::{gram_matrix, DivisorClass};
use crate::matrix::Matrix;
use crate::scalar::Rational;
use crate::surface::SurfaceModel;
use crate::zariski::{zariski_decompose, ChamberDescriptor};
use crate::{Error, Result};

/// `P_D²`, or zero for classes that are not big.
pub fn vol(model: &SurfaceModel, d: &DivisorClass) -> Result<Rational> {
    model.check(d)?;
    Ok(match zariski_decompose(model, d) {
        Ok(z) => {
            let sq = z.positive.square();
            if sq.is_positive() {
                sq
            } else {
                Rational::zero()
            }
        }
        Err(Error::LatticeMismatch) => return Err(Error::LatticeMismatch),
        Err(_) => Rational::zero(),
    })
}

/// Quadratic form computing the volume on one chamber, in the model's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticVolumePolynomial {
    pub chamber: ChamberDescriptor,
    pub matrix: Matrix,
}

impl QuadraticVolumePolynomial {
    pub fn evaluate(&self, d: &DivisorClass) -> Rational {
        self.matrix.bilinear(d.coords(), d.coords())
    }
}

/// `Q = (I − M)ᵀ G (I − M)` where `M` maps `D` to its negative part
/// `Σ xᵢCᵢ` with `(Cⱼ·Cᵢ) x = (D·Cᵢ)`.
pub fn volume_polynomial(model: &SurfaceModel, chamber: &ChamberDescriptor) -> Result<QuadraticVolumePolynomial> {
    let support = &chamber.support;
    match construct_nef_with_null(model, support) {
        Ok(_) => {}
        Err(Error::NotNegativeDefinite | Error::NullMismatch { .. } | Error::NotNef) => {
            return Err(Error::UnrealizableSupport(support.labels(model)))
        }
        Err(e) => return Err(e),
    }
    let n = model.rank();
    let form = model.lattice().form();
    let curves = support.classes(model);
    let k = curves.len();
    let projection = if k == 0 {
        Matrix::identity(n)
    } else {
        // columns of C are the curve coordinates
        let mut c = Matrix::zeros(n, k);
        for (j, curve) in curves.iter().enumerate() {
            for i in 0..n {
                c[(i, j)] = curve.coords()[i].clone();
            }
        }
        let g_inv = gram_matrix(&curves).inverse().expect("chamber supports are negative definite");
        let m = &(&(&c * &g_inv) * &c.transpose()) * form;
        let mut p = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] -= &m[(i, j)];
            }
        }
        p
    };
    let matrix = &(&projection.transpose() * form) * &projection;
    Ok(QuadraticVolumePolynomial { chamber: chamber.clone(), matrix })
}

/// Volume of a product: `binom(n1+n2, n1) · v1 · v2`.
pub fn kunneth_volume(v1: &Rational, n1: i64, v2: &Rational, n2: i64) -> Result<Rational> {
    if n1 < 0 || n2 < 0 {
        return Err(Error::NegativeDimension);
    }
    if v1.is_negative() || v2.is_negative() {
        return Err(Error::OutOfDomain("volumes are non-negative".into()));
    }
    let binom = num_integer::binomial(BigInt::from(n1 + n2), BigInt::from(n1));
    Ok(Rational::from_integer(binom) * v1 * v2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use crate::zariski::Support;

    fn dp2() -> SurfaceModel {
        SurfaceModel::del_pezzo(2).unwrap()
    }

    #[test]
    fn volumes_on_two_point_blowup() {
        let m = dp2();
        assert_eq!(vol(&m, &m.class_from_ints(&[3, -1, -1]).unwrap()).unwrap(), int(7));
        assert_eq!(vol(&m, &m.class_from_ints(&[2, 1, -1]).unwrap()).unwrap(), int(3));
        let d = m.class(vec![int(2), ratio(-3, 2), int(-1)]).unwrap();
        assert_eq!(vol(&m, &d).unwrap(), int(1));
        assert_eq!(vol(&m, &m.class_from_ints(&[0, 1, 0]).unwrap()).unwrap(), int(0));
        assert_eq!(vol(&m, &m.class_from_ints(&[-1, 0, 0]).unwrap()).unwrap(), int(0));
    }

    /// Coefficients of `D = aL − b1E1 − b2E2`, i.e. coordinates `(a, −b1, −b2)`.
    fn sign_coords(q: &Matrix) -> [[Rational; 3]; 3] {
        let s = [int(1), int(-1), int(-1)];
        std::array::from_fn(|i| std::array::from_fn(|j| &q[(i, j)] * &s[i] * &s[j]))
    }

    #[test]
    fn chamber_polynomials() {
        let m = dp2();
        let ch = |l: &[&str]| ChamberDescriptor::from(Support::from_labels(&m, l).unwrap());
        // a² − b1² − b2²
        let q = volume_polynomial(&m, &ch(&[])).unwrap();
        assert_eq!(q.matrix, Matrix::from_i64(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]));
        // a² − b2²
        let q = volume_polynomial(&m, &ch(&["E1"])).unwrap();
        assert_eq!(q.matrix, Matrix::from_i64(&[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, -1]]));
        // 2a² − 2ab1 − 2ab2 + 2b1b2 as a symmetric matrix in (a, b1, b2)
        let q = volume_polynomial(&m, &ch(&["L-E1-E2"])).unwrap();
        let expect = [[int(2), int(-1), int(-1)], [int(-1), int(0), int(1)], [int(-1), int(1), int(0)]];
        assert_eq!(sign_coords(&q.matrix), expect);
        assert!(matches!(volume_polynomial(&m, &ch(&["E1", "L-E1-E2"])), Err(Error::UnrealizableSupport(_))));
    }

    #[test]
    fn kunneth() {
        assert_eq!(kunneth_volume(&int(5), 3, &int(0), 2).unwrap(), int(0));
        assert_eq!(kunneth_volume(&ratio(1, 3), 3, &int(1), 2).unwrap(), ratio(10, 3));
        assert_eq!(kunneth_volume(&int(2), 1, &int(3), 1).unwrap(), int(12));
        assert_eq!(kunneth_volume(&int(2), -1, &int(3), 1), Err(Error::NegativeDimension));
    }
}

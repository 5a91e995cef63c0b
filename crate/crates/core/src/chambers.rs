//! Zariski chambers of a model with finitely many negative curves.
//!
//! A support set `S` is a chamber when some big nef class `P` has
//! `Null(P) = S`. Candidates are exactly the negative definite subsets of the
//! curve list; each one is tested by building `P = A + Σ λᵢCᵢ` orthogonal to
//! `S` and comparing its null set.

use num_traits::Signed;

use crate::lattice::{combination, gram_matrix, is_negative_definite, DivisorClass};
use crate::matrix::Matrix;
use crate::scalar::Rational;
use crate::surface::SurfaceModel;
use crate::zariski::{null_set, ChamberDescriptor, Support};
use crate::{Error, Result};

/// Nef class `A + Σ λᵢCᵢ` orthogonal to every curve of `support`.
pub fn construct_nef_with_null(model: &SurfaceModel, support: &Support) -> Result<DivisorClass> {
    let curves = support.classes(model);
    let g = gram_matrix(&curves);
    if !is_negative_definite(&g) {
        return Err(Error::NotNegativeDefinite);
    }
    let ample = model.ample();
    let rhs: Vec<Rational> = curves.iter().map(|c| -ample.dot(c)).collect();
    let lambda = g.solve(&rhs).expect("negative definite matrices are invertible");
    debug_assert!(lambda.iter().all(Signed::is_positive), "λ must be positive for an ample witness");
    let terms: Vec<_> = curves.iter().copied().zip(&lambda).collect();
    let p = ample + &combination(model.lattice(), &terms);
    if !model.is_nef(&p)? {
        return Err(Error::NotNef);
    }
    let null = null_set(model, &p)?;
    if &null != support {
        return Err(Error::NullMismatch { expected: support.labels(model), got: null.labels(model) });
    }
    Ok(p)
}

/// The face of the nef cone containing `P` in its relative interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub null: Support,
    /// Basis of `Null(P)^⊥`.
    pub complement: Vec<DivisorClass>,
}

pub fn face_of(model: &SurfaceModel, p: &DivisorClass) -> Result<Face> {
    let null = null_set(model, p)?;
    let form = model.lattice().form();
    let rows: Vec<Vec<Rational>> = null.classes(model).iter().map(|c| form.mul_vec(c.coords())).collect();
    let complement = if rows.is_empty() {
        (0..model.rank()).map(|i| DivisorClass::basis(model.lattice(), i)).collect()
    } else {
        Matrix::from_rows(rows).kernel().into_iter().map(|v| model.class(v)).collect::<Result<_>>()?
    };
    Ok(Face { null, complement })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChamberEnumeration {
    /// Canonically ordered: by support size, then by curve indices.
    pub chambers: Vec<ChamberDescriptor>,
    /// Negative definite supports whose constructed class had a larger null set.
    pub unrealizable: Vec<Support>,
}

/// All chambers, found by walking the negative definite subsets of the curve list.
///
/// Subsets of negative definite sets are negative definite, so the walk only
/// extends sets that passed.
pub fn enumerate_chambers(model: &SurfaceModel) -> Result<ChamberEnumeration> {
    let n = model.curves().len();
    if n > 63 {
        return Err(Error::TooManyCurves(n));
    }
    let mut out = ChamberEnumeration::default();
    let mut stack = vec![(Support::empty(), 0usize)];
    while let Some((support, next)) = stack.pop() {
        match construct_nef_with_null(model, &support) {
            Ok(_) => out.chambers.push(support.clone().into()),
            Err(Error::NullMismatch { .. } | Error::NotNef) => out.unrealizable.push(support.clone()),
            Err(e) => return Err(e),
        }
        for idx in next..n {
            let mut grown = support.clone();
            grown.insert(idx);
            if is_negative_definite(&gram_matrix(&grown.classes(model))) {
                stack.push((grown, idx + 1));
            }
        }
    }
    let key = |s: &Support| (s.len(), s.indices().collect::<Vec<_>>());
    out.chambers.sort_by_key(|c| key(&c.support));
    out.unrealizable.sort_by_key(key);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zariski::{chamber_of, on_chamber_boundary};
    use num_traits::Zero;

    fn dp2() -> SurfaceModel {
        SurfaceModel::del_pezzo(2).unwrap()
    }

    #[test]
    fn constructed_nef_classes() {
        let m = dp2();
        let s = |l: &[&str]| Support::from_labels(&m, l).unwrap();
        assert_eq!(construct_nef_with_null(&m, &s(&["E1"])).unwrap(), m.class_from_ints(&[3, 0, -1]).unwrap());
        assert_eq!(construct_nef_with_null(&m, &s(&[])).unwrap(), *m.ample());
        assert_eq!(construct_nef_with_null(&m, &s(&["E1", "E2"])).unwrap(), m.class_from_ints(&[3, 0, 0]).unwrap());
        assert_eq!(construct_nef_with_null(&m, &s(&["E1", "L-E1-E2"])), Err(Error::NotNegativeDefinite));
    }

    #[test]
    fn faces() {
        let m = dp2();
        let f = face_of(&m, &m.class_from_ints(&[2, 0, 0]).unwrap()).unwrap();
        assert_eq!(f.null.labels(&m), ["E1", "E2"]);
        assert_eq!(f.complement, vec![m.class_from_ints(&[1, 0, 0]).unwrap()]);
        let f = face_of(&m, m.ample()).unwrap();
        assert!(f.null.is_empty());
        assert_eq!(f.complement.len(), 3);
        let f = face_of(&m, &m.class_from_ints(&[3, 0, -1]).unwrap()).unwrap();
        assert_eq!(f.null.labels(&m), ["E1"]);
        assert_eq!(f.complement.len(), 2);
        for v in &f.complement {
            assert!(v.dot(&m.curves()[0].class).is_zero());
        }
        assert_eq!(face_of(&m, &m.class_from_ints(&[2, 1, 0]).unwrap()), Err(Error::NotNef));
    }

    #[test]
    fn two_point_blowup_has_five_chambers() {
        let m = dp2();
        let e = enumerate_chambers(&m).unwrap();
        let got: Vec<Vec<String>> = e.chambers.iter().map(|c| c.support.labels(&m)).collect();
        assert_eq!(got, vec![vec![], vec!["E1".to_string()], vec!["E2".into()], vec!["L-E1-E2".into()], vec!["E1".into(), "E2".into()]]);
        assert!(e.unrealizable.is_empty());
    }

    #[test]
    fn one_point_blowup_has_two_chambers() {
        let m = SurfaceModel::del_pezzo(1).unwrap();
        assert_eq!(enumerate_chambers(&m).unwrap().chambers.len(), 2);
    }

    #[test]
    fn interior_points_of_each_chamber() {
        let m = SurfaceModel::del_pezzo(3).unwrap();
        let small = crate::scalar::ratio(1, 10);
        for ch in enumerate_chambers(&m).unwrap().chambers {
            let p = construct_nef_with_null(&m, &ch.support).unwrap();
            let mut d = p.clone();
            for c in ch.support.classes(&m) {
                d = &d + &c.scale(&small);
            }
            assert_eq!(chamber_of(&m, &d).unwrap(), ch);
            assert!(!on_chamber_boundary(&m, &d).unwrap());
        }
    }
}

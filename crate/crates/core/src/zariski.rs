//! Zariski decomposition and the Neg/Null chamber predicates.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::chambers::construct_nef_with_null;
use crate::lattice::{combination, gram_matrix, is_negative_definite, pairings, DivisorClass};
use crate::scalar::Rational;
use crate::surface::SurfaceModel;
use crate::{Error, Result};

/// A set of listed curves, stored as indices into [`SurfaceModel::curves`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support(BTreeSet<usize>);

impl Support {
    pub fn empty() -> Self {
        Support::default()
    }

    pub fn from_labels<S: AsRef<str>>(model: &SurfaceModel, labels: &[S]) -> Result<Self> {
        labels.iter().map(|l| model.curve_index(l.as_ref())).collect()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.0.contains(&idx)
    }

    pub fn insert(&mut self, idx: usize) -> bool {
        self.0.insert(idx)
    }

    pub fn remove(&mut self, idx: usize) -> bool {
        self.0.remove(&idx)
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Labels in lexicographic order.
    pub fn labels(&self, model: &SurfaceModel) -> Vec<String> {
        let mut out: Vec<String> = self.indices().map(|i| model.curves()[i].label.clone()).collect();
        out.sort();
        out
    }

    pub fn classes<'m>(&self, model: &'m SurfaceModel) -> Vec<&'m DivisorClass> {
        self.indices().map(|i| &model.curves()[i].class).collect()
    }
}

impl FromIterator<usize> for Support {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Support(iter.into_iter().collect())
    }
}

/// A Zariski chamber, identified by the common support of its negative parts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChamberDescriptor {
    pub support: Support,
}

impl From<Support> for ChamberDescriptor {
    fn from(support: Support) -> Self {
        ChamberDescriptor { support }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    pub input: DivisorClass,
    pub positive: DivisorClass,
    /// `(curve index, coefficient)`, coefficients strictly positive, sorted by index.
    pub negative: Vec<(usize, Rational)>,
}

impl ZariskiDecomposition {
    pub fn support(&self) -> Support {
        self.negative.iter().map(|(i, _)| *i).collect()
    }

    pub fn negative_part(&self, model: &SurfaceModel) -> DivisorClass {
        let terms: Vec<_> = self.negative.iter().map(|(i, c)| (&model.curves()[*i].class, c)).collect();
        combination(model.lattice(), &terms)
    }

    pub fn coefficient(&self, idx: usize) -> Rational {
        self.negative.iter().find(|(i, _)| *i == idx).map_or_else(Rational::zero, |(_, c)| c.clone())
    }
}

/// Coefficients of the negative part of `d` supported on `support`: the
/// solution of `(Cᵢ·Cⱼ) x = (D·Cᵢ)`.
pub fn negative_coefficients(model: &SurfaceModel, d: &DivisorClass, support: &Support) -> Result<Vec<Rational>> {
    let curves = support.classes(model);
    let g = gram_matrix(&curves);
    if !is_negative_definite(&g) {
        return Err(Error::NotNegativeDefinite);
    }
    let rhs = pairings(d, &curves);
    Ok(g.solve(&rhs).expect("negative definite matrices are invertible"))
}

/// Fujita's algorithm, adding every violating curve in each round.
///
/// Start with the curves meeting `D` negatively; repeatedly solve for the
/// negative part on the current set and add every curve that the resulting
/// positive part meets negatively. The loop ends when no curve is violated.
/// A non-definite accumulated set, a negative coefficient, or a final positive
/// part failing the square/ample test all mean `D` is not pseudo-effective in
/// the model.
pub fn zariski_decompose(model: &SurfaceModel, d: &DivisorClass) -> Result<ZariskiDecomposition> {
    model.check(d)?;
    let along_ample = d.dot(model.ample());
    if along_ample.is_negative() || (along_ample.is_zero() && !d.is_zero()) {
        return Err(Error::NotPseudoEffective);
    }
    let curves = model.curves();
    let all: Vec<&DivisorClass> = curves.iter().map(|c| &c.class).collect();
    let mut support: Support = pairings(d, &all).iter().enumerate().filter(|(_, v)| v.is_negative()).map(|(i, _)| i).collect();
    let (positive, coeffs) = loop {
        let coeffs = negative_coefficients(model, d, &support)?;
        let terms: Vec<_> = support.indices().map(|i| &curves[i].class).zip(&coeffs).collect();
        let positive = d - &combination(model.lattice(), &terms);
        let violated: Vec<usize> = pairings(&positive, &all)
            .iter()
            .enumerate()
            .filter(|(i, v)| v.is_negative() && !support.contains(*i))
            .map(|(i, _)| i)
            .collect();
        if violated.is_empty() {
            break (positive, coeffs);
        }
        support.0.extend(violated);
    };
    if coeffs.iter().any(Signed::is_negative) || !model.is_nef(&positive)? {
        return Err(Error::NotPseudoEffective);
    }
    let negative = support.indices().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect();
    Ok(ZariskiDecomposition { input: d.clone(), positive, negative })
}

pub fn neg_set(model: &SurfaceModel, d: &DivisorClass) -> Result<Support> {
    Ok(zariski_decompose(model, d)?.support())
}

/// Listed curves orthogonal to the nef class `p`.
pub fn null_set(model: &SurfaceModel, p: &DivisorClass) -> Result<Support> {
    if !model.is_nef(p)? {
        return Err(Error::NotNef);
    }
    Ok(model.curves().iter().enumerate().filter(|(_, c)| p.dot(&c.class).is_zero()).map(|(i, _)| i).collect())
}

/// Decomposition succeeds and `P² > 0`.
pub fn is_big(model: &SurfaceModel, d: &DivisorClass) -> bool {
    zariski_decompose(model, d).is_ok_and(|z| z.positive.square().is_positive())
}

pub(crate) fn decompose_big(model: &SurfaceModel, d: &DivisorClass) -> Result<ZariskiDecomposition> {
    match zariski_decompose(model, d) {
        Ok(z) if z.positive.square().is_positive() => Ok(z),
        Ok(_) | Err(Error::NotPseudoEffective | Error::NotNegativeDefinite) => Err(Error::NotBig),
        Err(e) => Err(e),
    }
}

pub fn chamber_of(model: &SurfaceModel, d: &DivisorClass) -> Result<ChamberDescriptor> {
    Ok(decompose_big(model, d)?.support().into())
}

/// `Neg(D) ≠ Null(P_D)`.
pub fn on_chamber_boundary(model: &SurfaceModel, d: &DivisorClass) -> Result<bool> {
    let z = decompose_big(model, d)?;
    Ok(z.support() != null_set(model, &z.positive)?)
}

/// Closure test for the chamber with support `S`: `Neg(D) ⊆ S ⊆ Null(P_D)`.
pub fn chamber_closure_contains(model: &SurfaceModel, reference: &ChamberDescriptor, d: &DivisorClass) -> Result<bool> {
    let s = &reference.support;
    match construct_nef_with_null(model, s) {
        Ok(_) => {}
        Err(Error::NotNegativeDefinite | Error::NullMismatch { .. }) => {
            return Err(Error::UnrealizableSupport(s.labels(model)))
        }
        Err(e) => return Err(e),
    }
    let z = decompose_big(model, d)?;
    Ok(z.support().is_subset(s) && s.is_subset(&null_set(model, &z.positive)?))
}

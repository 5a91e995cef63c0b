//! Intersection lattices and divisor classes.
//!
//! A lattice is a symmetric integer Gram matrix of hyperbolic signature
//! `(1, ρ−1)`, the shape forced on a Néron–Severi lattice by the Hodge index
//! theorem. Divisor classes carry rational coordinates in the lattice basis
//! and a shared handle to the lattice they belong to.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::matrix::{dot, Matrix};
use crate::scalar::{format_rational, int, Rational};
use crate::{Error, Result};

/// Inertia of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Signature {
    pub fn as_tuple(self) -> (usize, usize, usize) {
        (self.plus, self.minus, self.zero)
    }
}

/// Inertia of a symmetric rational matrix by exact congruence reduction.
///
/// Each step either pivots on a non-zero diagonal entry or, when the remaining
/// diagonal vanishes, adds one basis vector to another to manufacture one
/// (`a_ii + 2a_ij + a_jj = 2a_ij`). Congruences preserve inertia.
pub fn signature(m: &Matrix) -> Signature {
    assert!(m.is_symmetric(), "signature of a non-symmetric matrix");
    let mut a = m.clone();
    let (mut plus, mut minus) = (0, 0);
    let mut active: Vec<usize> = (0..a.rows()).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[(i, j)].is_zero());
                let Some((i, j)) = pair else { break };
                // row/column i += row/column j
                for k in 0..a.cols() {
                    let v = a[(j, k)].clone();
                    a[(i, k)] += v;
                }
                for k in 0..a.rows() {
                    let v = a[(k, j)].clone();
                    a[(k, i)] += v;
                }
                i
            }
        };
        let p = a[(pivot, pivot)].clone();
        if p.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        active.retain(|&i| i != pivot);
        for &i in &active {
            if a[(i, pivot)].is_zero() {
                continue;
            }
            let f = &a[(i, pivot)] / &p;
            for &j in &active {
                let d = &f * &a[(pivot, j)];
                a[(i, j)] -= d;
            }
            a[(i, pivot)] = Rational::zero();
        }
        for &j in &active {
            a[(pivot, j)] = Rational::zero();
        }
    }
    Signature { plus, minus, zero: m.rows() - plus - minus }
}

pub fn is_negative_definite(m: &Matrix) -> bool {
    m.rows() == 0 || signature(m).minus == m.rows()
}

#[derive(Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
    form: Matrix,
}

impl IntersectionLattice {
    /// Validates symmetry and the hyperbolic signature `(1, ρ−1, 0)`.
    pub fn new(labels: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::Lattice("rank must be positive".into()));
        }
        if gram.iter().any(|row| row.len() != rank) {
            return Err(Error::Lattice("gram matrix is not square".into()));
        }
        if labels.len() != rank {
            return Err(Error::Lattice(format!("{} basis labels for rank {rank}", labels.len())));
        }
        let form = Matrix::from_i64(&gram);
        if !form.is_symmetric() {
            return Err(Error::Lattice("gram matrix is not symmetric".into()));
        }
        let sig = signature(&form);
        if sig.as_tuple() != (1, rank - 1, 0) {
            return Err(Error::Signature { found: sig.as_tuple(), expected_minus: rank - 1 });
        }
        Ok(IntersectionLattice { labels, gram, form })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn signature(&self) -> Signature {
        signature(&self.form)
    }
}

impl fmt::Debug for IntersectionLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntersectionLattice").field("labels", &self.labels).field("gram", &self.gram).finish()
    }
}

/// A numerical divisor class with rational coordinates.
#[derive(Clone)]
pub struct DivisorClass {
    lattice: Arc<IntersectionLattice>,
    coords: Vec<Rational>,
}

impl DivisorClass {
    pub fn new(lattice: &Arc<IntersectionLattice>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch { expected: lattice.rank(), got: coords.len() });
        }
        Ok(DivisorClass { lattice: Arc::clone(lattice), coords })
    }

    pub fn from_ints(lattice: &Arc<IntersectionLattice>, coords: &[i64]) -> Result<Self> {
        DivisorClass::new(lattice, coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(lattice: &Arc<IntersectionLattice>) -> Self {
        DivisorClass { lattice: Arc::clone(lattice), coords: vec![Rational::zero(); lattice.rank()] }
    }

    pub fn basis(lattice: &Arc<IntersectionLattice>, i: usize) -> Self {
        let mut d = DivisorClass::zero(lattice);
        d.coords[i] = int(1);
        d
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn same_lattice(&self, other: &DivisorClass) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice
    }

    /// Intersection number `self · other`.
    pub fn pair(&self, other: &DivisorClass) -> Result<Rational> {
        if !self.same_lattice(other) {
            return Err(Error::LatticeMismatch);
        }
        Ok(self.dot(other))
    }

    /// Pairing without the lattice check; callers guarantee a shared lattice.
    pub(crate) fn dot(&self, other: &DivisorClass) -> Rational {
        self.lattice.form.bilinear(&self.coords, &other.coords)
    }

    pub fn square(&self) -> Rational {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> DivisorClass {
        DivisorClass { lattice: Arc::clone(&self.lattice), coords: self.coords.iter().map(|x| x * c).collect() }
    }

    /// Renders the class in its basis, e.g. `3L-E1-E2` or `1/2L+E1`.
    pub fn display(&self) -> String {
        let mut out = String::new();
        for (c, label) in self.coords.iter().zip(&self.lattice.labels) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = c.abs();
            let coeff = if mag == int(1) { String::new() } else { format_rational(&mag) };
            out.push_str(&format!("{sign}{coeff}{label}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn zip_with(&self, other: &DivisorClass, f: impl Fn(&Rational, &Rational) -> Rational) -> DivisorClass {
        assert!(self.same_lattice(other), "divisor arithmetic across lattices");
        DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl PartialEq for DivisorClass {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.same_lattice(other)
    }
}

impl Eq for DivisorClass {}

impl Hash for DivisorClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        self.scale(&int(-1))
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

/// Gram matrix `(C_i · C_j)` of a list of classes.
pub fn gram_matrix(classes: &[&DivisorClass]) -> Matrix {
    let n = classes.len();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = classes[i].dot(classes[j]);
            g[(j, i)] = v.clone();
            g[(i, j)] = v;
        }
    }
    g
}

/// Exact solution of `(C_i·C_j) x = rhs` for a negative definite curve Gram matrix.
pub fn solve_gram_system(curves: &[&DivisorClass], rhs: &[Rational]) -> Result<Vec<Rational>> {
    if let Some(first) = curves.first() {
        if curves.iter().any(|c| !c.same_lattice(first)) {
            return Err(Error::LatticeMismatch);
        }
    }
    if rhs.len() != curves.len() {
        return Err(Error::DimensionMismatch { expected: curves.len(), got: rhs.len() });
    }
    let g = gram_matrix(curves);
    if !is_negative_definite(&g) {
        return Err(Error::NotNegativeDefinite);
    }
    Ok(g.solve(rhs).expect("negative definite matrices are invertible"))
}

/// Whether every entry of `S⁻¹` is `≤ 0` for a negative definite `S`.
pub fn inverse_is_nonpositive(s: &Matrix) -> Result<bool> {
    if !s.is_symmetric() || !is_negative_definite(s) {
        return Err(Error::NotNegativeDefinite);
    }
    let inv = s.inverse().expect("negative definite matrices are invertible");
    Ok((0..inv.rows()).all(|i| inv.row(i).iter().all(|v| !v.is_positive())))
}

/// Sum `Σ cᵢ·Cᵢ`, or the zero class of `lattice` for an empty combination.
pub fn combination(lattice: &Arc<IntersectionLattice>, terms: &[(&DivisorClass, &Rational)]) -> DivisorClass {
    let mut coords = vec![Rational::zero(); lattice.rank()];
    for (class, c) in terms {
        for (acc, x) in coords.iter_mut().zip(class.coords()) {
            *acc += *c * x;
        }
    }
    DivisorClass { lattice: Arc::clone(lattice), coords }
}

pub(crate) fn pairings(d: &DivisorClass, classes: &[&DivisorClass]) -> Vec<Rational> {
    let gd = d.lattice.form.mul_vec(&d.coords);
    classes.iter().map(|c| dot(&c.coords, &gd)).collect()
}

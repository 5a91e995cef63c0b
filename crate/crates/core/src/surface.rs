//! The surface model: lattice, ample witness, and the full list of negative curves.
//!
//! Nefness is decided from the data alone. A class is nef when it has
//! non-negative square, pairs non-negatively with the ample witness, and pairs
//! non-negatively with every listed curve. This is exact when the listed curves
//! are all irreducible negative curves of the surface, which holds for del Pezzo
//! surfaces, abelian surfaces (no curves), and K3 surfaces with a known list of
//! (−2)-curves. On K3 surfaces the Mori cone may also need square-zero classes.
//! The square condition stands in for those, and they are not listed as curves.

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::matrix::Matrix;
use crate::scalar::{int, to_f64, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCurve {
    pub label: String,
    pub class: DivisorClass,
}

#[derive(Debug, Clone)]
pub struct SurfaceModel {
    lattice: Arc<IntersectionLattice>,
    ample: DivisorClass,
    curves: Vec<NegativeCurve>,
    canonical: Option<DivisorClass>,
}

impl SurfaceModel {
    pub fn new(
        lattice: Arc<IntersectionLattice>,
        ample: DivisorClass,
        curves: Vec<NegativeCurve>,
        canonical: Option<DivisorClass>,
    ) -> Result<Self> {
        let probe = DivisorClass::zero(&lattice);
        let foreign = |d: &DivisorClass| !d.same_lattice(&probe);
        if foreign(&ample) || curves.iter().any(|c| foreign(&c.class)) || canonical.as_ref().is_some_and(foreign) {
            return Err(Error::LatticeMismatch);
        }
        if !ample.square().is_positive() {
            return Err(Error::AmpleWitness(format!("A² = {} is not positive", ample.square())));
        }
        let mut labels = HashSet::new();
        let mut classes = HashSet::new();
        for (i, c) in curves.iter().enumerate() {
            if !c.class.square().is_negative() {
                return Err(Error::CurvePairing(format!("{} has non-negative square", c.label)));
            }
            if !ample.dot(&c.class).is_positive() {
                return Err(Error::AmpleWitness(format!("A·{} = {} is not positive", c.label, ample.dot(&c.class))));
            }
            if !labels.insert(c.label.as_str()) {
                return Err(Error::CurvePairing(format!("duplicate label {}", c.label)));
            }
            if !classes.insert(c.class.coords().to_vec()) {
                return Err(Error::CurvePairing(format!("duplicate class for {}", c.label)));
            }
            for other in &curves[..i] {
                if c.class.dot(&other.class).is_negative() {
                    return Err(Error::CurvePairing(format!("{}·{} < 0", c.label, other.label)));
                }
            }
        }
        Ok(SurfaceModel { lattice, ample, curves, canonical })
    }

    /// Blow-up of the plane in `r` general points, `1 ≤ r ≤ 8`.
    ///
    /// Basis `L, E1, …, Er` with form `diag(1, −1, …, −1)`, canonical class
    /// `−3L + ΣEi`, ample witness `−K`, and as curves every exceptional class
    /// (`E² = E·K = −1`).
    pub fn del_pezzo(r: usize) -> Result<Self> {
        if !(1..=8).contains(&r) {
            return Err(Error::OutOfRange(format!("del Pezzo blow-up count {r}")));
        }
        let n = r + 1;
        let labels = std::iter::once("L".to_string()).chain((1..=r).map(|i| format!("E{i}"))).collect();
        let gram = (0..n).map(|i| (0..n).map(|j| if i != j { 0 } else if i == 0 { 1 } else { -1 }).collect()).collect();
        let lattice = Arc::new(IntersectionLattice::new(labels, gram)?);
        let k: Vec<i64> = std::iter::once(-3).chain(std::iter::repeat_n(1, r)).collect();
        let canonical = DivisorClass::from_ints(&lattice, &k)?;
        let ample = -&canonical;
        let mut classes = classes_with(&lattice, &canonical, &int(-1), &int(-1))?;
        sort_del_pezzo_classes(&mut classes);
        let curves = classes.into_iter().map(|class| NegativeCurve { label: class.display(), class }).collect();
        SurfaceModel::new(lattice, ample, curves, Some(canonical))
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn ample(&self) -> &DivisorClass {
        &self.ample
    }

    pub fn curves(&self) -> &[NegativeCurve] {
        &self.curves
    }

    pub fn canonical(&self) -> Option<&DivisorClass> {
        self.canonical.as_ref()
    }

    pub fn curve_index(&self, label: &str) -> Result<usize> {
        self.curves.iter().position(|c| c.label == label).ok_or_else(|| Error::UnknownCurve(label.to_string()))
    }

    pub fn class(&self, coords: Vec<Rational>) -> Result<DivisorClass> {
        DivisorClass::new(&self.lattice, coords)
    }

    pub fn class_from_ints(&self, coords: &[i64]) -> Result<DivisorClass> {
        DivisorClass::from_ints(&self.lattice, coords)
    }

    pub(crate) fn check(&self, d: &DivisorClass) -> Result<()> {
        if d.same_lattice(&self.ample) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    /// `D² ≥ 0`, `D·A ≥ 0` and `D·C ≥ 0` for every listed curve.
    pub fn is_nef(&self, d: &DivisorClass) -> Result<bool> {
        self.check(d)?;
        Ok(!d.square().is_negative()
            && !d.dot(&self.ample).is_negative()
            && self.curves.iter().all(|c| !d.dot(&c.class).is_negative()))
    }

    /// Strict version of the nef test.
    pub fn is_ample(&self, d: &DivisorClass) -> Result<bool> {
        self.check(d)?;
        Ok(d.square().is_positive()
            && d.dot(&self.ample).is_positive()
            && self.curves.iter().all(|c| d.dot(&c.class).is_positive()))
    }

    /// All roots (`α² = −2`, `α·K = 0`) together with a simple system.
    pub fn enumerate_roots(&self) -> Result<RootSystem> {
        let k = self.canonical.as_ref().ok_or(Error::MissingCanonical)?;
        let mut roots = classes_with(&self.lattice, k, &int(-2), &int(0))?;
        roots.sort_by(|a, b| a.coords().cmp(b.coords()));
        let simple = match self.del_pezzo_degree() {
            Some(r) => classical_simple_roots(&self.lattice, r),
            None => simple_roots_by_functional(&roots),
        };
        Ok(RootSystem { roots, simple })
    }

    /// `Some(r)` when the lattice is `diag(1, −1, …)` with `K = −3L + ΣEi`.
    pub fn del_pezzo_degree(&self) -> Option<usize> {
        let k = self.canonical.as_ref()?;
        let n = self.rank();
        let standard_form = self.lattice.gram().iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &v)| v == if i != j { 0 } else if i == 0 { 1 } else { -1 })
        });
        let standard_k = k.coords().iter().enumerate().all(|(i, c)| *c == int(if i == 0 { -3 } else { 1 }));
        (standard_form && standard_k && n >= 2).then_some(n - 1)
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub roots: Vec<DivisorClass>,
    pub simple: Vec<DivisorClass>,
}

fn sort_del_pezzo_classes(classes: &mut [DivisorClass]) {
    classes.sort_by(|a, b| {
        let (ca, cb) = (a.coords(), b.coords());
        ca[0].cmp(&cb[0]).then_with(|| cb[1..].cmp(&ca[1..]))
    });
}

/// `α₁ = L − E1 − E2 − E3` (for r ≥ 3) followed by `E(i+1) − Ei`.
fn classical_simple_roots(lattice: &Arc<IntersectionLattice>, r: usize) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    if r >= 3 {
        let mut c = vec![0i64; r + 1];
        c[0] = 1;
        c[1..4].fill(-1);
        out.push(DivisorClass::from_ints(lattice, &c).expect("rank matches"));
    }
    for i in 1..r {
        let mut c = vec![0i64; r + 1];
        c[i] = -1;
        c[i + 1] = 1;
        out.push(DivisorClass::from_ints(lattice, &c).expect("rank matches"));
    }
    out
}

/// Simple roots for the positive system cut out by a generic linear functional.
fn simple_roots_by_functional(roots: &[DivisorClass]) -> Vec<DivisorClass> {
    let Some(first) = roots.first() else { return Vec::new() };
    let n = first.coords().len();
    // weights 1, 1000, 1000², … separate every root in the small boxes roots live in
    let weights: Vec<Rational> = (0..n).map(|i| Rational::from_integer(num_bigint::BigInt::from(1000).pow(i as u32))).collect();
    let f = |d: &DivisorClass| d.coords().iter().zip(&weights).fold(Rational::zero(), |acc, (c, w)| acc + c * w);
    let positive: Vec<&DivisorClass> = roots.iter().filter(|r| f(r).is_positive()).collect();
    let set: HashSet<&[Rational]> = positive.iter().map(|r| r.coords()).collect();
    positive
        .iter()
        .filter(|&&r| !positive.iter().any(|&p| set.contains((r - p).coords())))
        .map(|&r| r.clone())
        .collect()
}

/// Every integral class `x` with `x² = square` and `x·K = k_pair`.
///
/// For `K² > 0` the form `Q(x) = 2(x·K)²/K² − x²` is positive definite (Hodge
/// index), and the wanted classes are lattice points on the ellipsoid
/// `Q(x) = 2·k_pair²/K² − square`. They are found by Fincke–Pohst enumeration.
pub fn classes_with(
    lattice: &Arc<IntersectionLattice>,
    canonical: &DivisorClass,
    square: &Rational,
    k_pair: &Rational,
) -> Result<Vec<DivisorClass>> {
    let k2 = canonical.square();
    if !k2.is_positive() {
        return Err(Error::OutOfDomain("root and curve enumeration needs K² > 0".into()));
    }
    let n = lattice.rank();
    let gk = lattice.form().mul_vec(canonical.coords());
    let mut q = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            q[(i, j)] = int(2) * &gk[i] * &gk[j] / &k2 - &lattice.form()[(i, j)];
        }
    }
    let target = int(2) * k_pair * k_pair / &k2 - square;
    if target.is_negative() {
        return Ok(Vec::new());
    }
    let (diag, mu) = quadratic_completion(&q);
    let diag: Vec<f64> = diag.iter().map(to_f64).collect();
    let mu: Vec<Vec<f64>> = mu.iter().map(|row| row.iter().map(to_f64).collect()).collect();
    let mut found = Vec::new();
    let mut x = vec![0i64; n];
    fincke_pohst(n, &diag, &mu, to_f64(&target), &mut x, &mut |x| {
        let d = DivisorClass::from_ints(lattice, x).expect("rank matches");
        if d.square() == *square && d.dot(canonical) == *k_pair {
            found.push(d);
        }
    });
    Ok(found)
}

/// `q(x) = Σ dᵢ (xᵢ + Σ_{j>i} μᵢⱼ xⱼ)²` for a positive definite `q`.
fn quadratic_completion(q: &Matrix) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    let n = q.rows();
    let mut a = q.clone();
    for i in 0..n {
        for j in i + 1..n {
            let v = &a[(i, j)] / &a[(i, i)];
            a[(j, i)] = a[(i, j)].clone();
            a[(i, j)] = v;
        }
        for k in i + 1..n {
            for l in k..n {
                let d = &a[(k, i)] * &a[(i, l)];
                a[(k, l)] -= d;
            }
        }
    }
    let diag = (0..n).map(|i| a[(i, i)].clone()).collect();
    let mu = (0..n).map(|i| (0..n).map(|j| if j > i { a[(i, j)].clone() } else { Rational::zero() }).collect()).collect();
    (diag, mu)
}

fn fincke_pohst(
    n: usize,
    diag: &[f64],
    mu: &[Vec<f64>],
    target: f64,
    x: &mut [i64],
    visit: &mut impl FnMut(&[i64]),
) {
    fn level(
        i: usize,
        budget: f64,
        diag: &[f64],
        mu: &[Vec<f64>],
        x: &mut [i64],
        visit: &mut impl FnMut(&[i64]),
    ) {
        let n = x.len();
        let c: f64 = (i + 1..n).map(|j| mu[i][j] * x[j] as f64).sum();
        let radius = (budget.max(0.0) / diag[i]).sqrt() + 1e-7;
        let lo = (-c - radius).ceil().to_i64().unwrap_or(0);
        let hi = (-c + radius).floor().to_i64().unwrap_or(-1);
        for v in lo..=hi {
            x[i] = v;
            let t = v as f64 + c;
            let rest = budget - diag[i] * t * t;
            if rest < -1e-7 {
                continue;
            }
            if i == 0 {
                if rest.abs() < 1e-6 {
                    visit(x);
                }
            } else {
                level(i - 1, rest, diag, mu, x, visit);
            }
        }
        x[i] = 0;
    }
    level(n - 1, target, diag, mu, x, visit);
}

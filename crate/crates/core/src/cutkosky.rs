//! A threefold whose volume function is not locally polynomial.
//!
//! `S = C × C` is the self-product of an elliptic curve without complex
//! multiplication, with Néron–Severi basis `f1, f2, δ` (two fibres and the
//! diagonal), all squares zero and all mutual pairings one. With `D = f1 + f2`
//! and `H = 3(f2 + δ)`, the threefold is `X = P(O(D + εf1) ⊕ O(−H + εf1))` and
//! `L(ε) = O_X(1)`. Sections of `L(ε)^k` split over `i + j = k` into sections of
//! `iD − jH + kεf1` on `S`, which by Riemann–Roch number `½(iD − jH + kεf1)²`
//! as long as `j/i < σ(ε)` and vanish otherwise. Hence
//! `vol L(ε) = 3∫_{1/(1+σ)}^1 q(x) dx` with `q(x) = (xD − (1−x)H + εf1)²`.
//!
//! For rational `ε` everything lives in `Q(√(45 + 78ε + 49ε²))`, so the
//! volume is computed exactly there. Floats only appear in the quadrature
//! cross-check and in the interpolation certificate.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::quadratic::QuadraticIrrational;
use crate::scalar::{int, ratio, to_f64, Rational};
use crate::surface::SurfaceModel;
use crate::{Error, Result};

/// Intersection data of the abelian surface `C × C`.
#[derive(Debug, Clone)]
pub struct AbelianSurfaceData {
    pub model: SurfaceModel,
    pub f1: DivisorClass,
    pub f2: DivisorClass,
    pub delta: DivisorClass,
    /// `D = f1 + f2`
    pub d: DivisorClass,
    /// `H = 3f2 + 3δ`
    pub h: DivisorClass,
}

impl AbelianSurfaceData {
    pub fn new() -> Self {
        let lattice = Arc::new(
            IntersectionLattice::new(
                vec!["f1".into(), "f2".into(), "delta".into()],
                vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
            )
            .expect("the C×C form is hyperbolic"),
        );
        let class = |c: &[i64]| DivisorClass::from_ints(&lattice, c).expect("rank 3");
        let d = class(&[1, 1, 0]);
        let model = SurfaceModel::new(Arc::clone(&lattice), d.clone(), vec![], None).expect("D is ample");
        AbelianSurfaceData {
            f1: class(&[1, 0, 0]),
            f2: class(&[0, 1, 0]),
            delta: class(&[0, 0, 1]),
            h: class(&[0, 3, 3]),
            d,
            model,
        }
    }
}

impl Default for AbelianSurfaceData {
    fn default() -> Self {
        AbelianSurfaceData::new()
    }
}

fn check_eps(eps: &Rational) -> Result<()> {
    if eps.is_negative() || *eps >= ratio(3, 2) {
        return Err(Error::OutOfDomain(format!("ε = {}", crate::scalar::format_rational(eps))));
    }
    Ok(())
}

/// `σ(ε) = (9 + 5ε − √(45 + 78ε + 49ε²)) / (18 − 12ε)`, the slope where
/// `D − tH + (1+t)εf1` leaves the nef cone.
pub fn sigma_eps(eps: &Rational) -> Result<QuadraticIrrational> {
    check_eps(eps)?;
    let radicand = int(45) + int(78) * eps + int(49) * eps * eps;
    let root = QuadraticIrrational::sqrt(&radicand).expect("positive radicand");
    let num = &QuadraticIrrational::from(int(9) + int(5) * eps) - &root;
    Ok(num.scale(&(int(1) / (int(18) - int(12) * eps))))
}

/// `c0 + c1·x + c2·x²`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPoly {
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
}

impl QuadPoly {
    pub fn eval(&self, x: &Rational) -> Rational {
        &self.c0 + x * (&self.c1 + x * &self.c2)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        to_f64(&self.c0) + x * (to_f64(&self.c1) + x * to_f64(&self.c2))
    }

    /// `∫_lo^hi`, exactly in the quadratic field.
    pub fn integrate(&self, lo: &QuadraticIrrational, hi: &QuadraticIrrational) -> QuadraticIrrational {
        let antiderivative = |x: &QuadraticIrrational| {
            let x2 = x * x;
            let x3 = &x2 * x;
            &(&x3.scale(&(&self.c2 / int(3))) + &x2.scale(&(&self.c1 / int(2)))) + &x.scale(&self.c0)
        };
        &antiderivative(hi) - &antiderivative(lo)
    }
}

/// Expands `(u + x·v)²` from the lattice pairings.
fn square_along(u: &DivisorClass, v: &DivisorClass) -> QuadPoly {
    QuadPoly { c0: u.square(), c1: int(2) * u.dot(v), c2: v.square() }
}

/// `q(x) = (xD − (1−x)H + εf1)²`
pub fn q_poly(eps: &Rational) -> QuadPoly {
    let s = AbelianSurfaceData::new();
    let base = &(-&s.h) + &s.f1.scale(eps);
    let dir = &s.d + &s.h;
    square_along(&base, &dir)
}

/// `(D − tH + (1+t)εf1)²` as a polynomial in `t`; `σ(ε)` is its smaller root.
pub fn restricted_square(eps: &Rational) -> QuadPoly {
    let s = AbelianSurfaceData::new();
    let base = &s.d + &s.f1.scale(eps);
    let dir = &(-&s.h) + &s.f1.scale(eps);
    square_along(&base, &dir)
}

/// Lower integration limit `1/(1 + σ(ε))`.
pub fn lower_limit(eps: &Rational) -> Result<QuadraticIrrational> {
    let sigma = sigma_eps(eps)?;
    Ok((&sigma + &QuadraticIrrational::from(Rational::one())).recip().expect("σ > −1"))
}

/// `vol L(ε) = 3∫_{1/(1+σ(ε))}^1 q(x) dx`, exactly.
pub fn volume_l_eps(eps: &Rational) -> Result<QuadraticIrrational> {
    let lo = lower_limit(eps)?;
    let hi = QuadraticIrrational::from(Rational::one());
    Ok(q_poly(eps).integrate(&lo, &hi).scale(&int(3)))
}

/// The printed closed form
/// `(33480ε + 43128ε² + 8748 − 1692R + 14120ε³ − 3300εR − 2740ε²R + 84ε³R + 588ε⁴) / (−27 + 7ε + R)³`
/// with `R = √(45 + 78ε + 49ε²)`.
pub fn closed_form_volume(eps: &Rational) -> Result<QuadraticIrrational> {
    check_eps(eps)?;
    let e = eps;
    let e2 = e * e;
    let e3 = &e2 * e;
    let e4 = &e3 * e;
    let r = QuadraticIrrational::sqrt(&(int(45) + int(78) * e + int(49) * &e2)).expect("positive radicand");
    let rational_part = int(33480) * e + int(43128) * &e2 + int(8748) + int(14120) * &e3 + int(588) * &e4;
    let root_coeff = int(-1692) - int(3300) * e - int(2740) * &e2 + int(84) * &e3;
    let numerator = &QuadraticIrrational::from(rational_part) + &r.scale(&root_coeff);
    let base = &QuadraticIrrational::from(int(-27) + int(7) * e) + &r;
    Ok(&numerator / &base.pow(3))
}

/// `h⁰(X, L(ε)^k) = Σ_{i+j=k} ½(iD − jH + kεf1)²` over the pairs with `j < iσ(ε)`.
///
/// The `i = 0` term is always zero: `−kH + kεf1` pairs negatively with the
/// ample `D` for `ε < 3/2`, so it is not effective.
pub fn h0_section_count(k: u64, eps: &Rational) -> Result<Rational> {
    let sigma = sigma_eps(eps)?;
    let s = AbelianSurfaceData::new();
    let twist = s.f1.scale(&(Rational::from_integer(k.into()) * eps));
    let mut total = Rational::zero();
    for i in 1..=k {
        let j = k - i;
        let (iq, jq) = (Rational::from_integer(i.into()), Rational::from_integer(j.into()));
        if !(&sigma.scale(&iq) - &QuadraticIrrational::from(&jq)).is_positive() {
            continue;
        }
        let class = &(&s.d.scale(&iq) - &s.h.scale(&jq)) + &twist;
        total += class.square() / int(2);
    }
    Ok(total)
}

/// Adaptive Simpson quadrature of `3∫q` over `[1/(1+σ), 1]`.
pub fn quadrature_volume(eps: &Rational, tolerance: f64) -> Result<f64> {
    let lo = lower_limit(eps)?.to_f64();
    let q = q_poly(eps);
    Ok(3.0 * adaptive_simpson(&|x| q.eval_f64(x), lo, 1.0, tolerance))
}

pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tolerance: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tolerance, 50)
}

pub const CERTIFICATE_MAX_DEGREE: usize = 6;
pub const CERTIFICATE_MIN_RESIDUAL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct NonPolynomialityReport {
    /// `(degree, max residual at held-out samples)` for degrees `1..=6`.
    pub residuals: Vec<(usize, f64)>,
    pub passed: bool,
}

/// Fits the interpolating polynomial of each degree `d ≤ 6` through the first
/// `d + 1` samples and measures the worst miss on the remaining ones. Passing
/// means no such polynomial reproduces `f` to within `1e-6`.
pub fn nonpolynomiality_certificate(
    samples: &[Rational],
    f: impl Fn(&Rational) -> Result<f64>,
) -> Result<NonPolynomialityReport> {
    let mut distinct = samples.to_vec();
    distinct.sort();
    distinct.dedup();
    let needed = CERTIFICATE_MAX_DEGREE + 2;
    if distinct.len() < needed || distinct.len() != samples.len() {
        return Err(Error::TooFewSamples { needed, got: distinct.len() });
    }
    let xs: Vec<f64> = samples.iter().map(to_f64).collect();
    let ys: Vec<f64> = samples.iter().map(&f).collect::<Result<_>>()?;
    let residuals: Vec<(usize, f64)> = (1..=CERTIFICATE_MAX_DEGREE)
        .map(|deg| {
            let (fx, fy) = (&xs[..=deg], &ys[..=deg]);
            let worst = (deg + 1..xs.len())
                .map(|k| (lagrange(fx, fy, xs[k]) - ys[k]).abs())
                .fold(0.0, f64::max);
            (deg, worst)
        })
        .collect();
    let passed = residuals.iter().all(|&(_, r)| r > CERTIFICATE_MIN_RESIDUAL);
    Ok(NonPolynomialityReport { residuals, passed })
}

fn lagrange(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    xs.iter()
        .zip(ys)
        .enumerate()
        .map(|(i, (&xi, &yi))| {
            let basis: f64 = xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &xj)| (x - xj) / (xi - xj)).product();
            yi * basis
        })
        .sum()
}

/// The certificate applied to `ε ↦ vol L(ε)`.
pub fn volume_certificate(samples: &[Rational]) -> Result<NonPolynomialityReport> {
    nonpolynomiality_certificate(samples, |e| Ok(volume_l_eps(e)?.to_f64()))
}

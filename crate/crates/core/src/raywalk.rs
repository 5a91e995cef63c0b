//! Walking `L − λA` through the Zariski chambers.
//!
//! Inside a chamber with support `S` the negative part solves
//! `(Cᵢ·Cⱼ) x = ((L − λA)·Cᵢ)`, so both `x(λ)` and `P(λ)` are affine in `λ`.
//! A curve outside `S` enters when its affine pairing with `P(λ)` reaches
//! zero, and the walk ends where the quadratic `P(λ)²` first vanishes. Every
//! breakpoint is therefore the root of an affine function with rational
//! data, while the final bigness threshold may be a quadratic irrational.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::lattice::{combination, gram_matrix, is_negative_definite, pairings, DivisorClass};
use crate::quadratic::QuadraticIrrational;
use crate::scalar::{int, Rational};
use crate::surface::SurfaceModel;
use crate::zariski::{decompose_big, negative_coefficients, neg_set, null_set, ChamberDescriptor, Support};
use crate::{Error, Result};

/// `[start, end)` with a constant negative-part support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub start: Rational,
    pub end: QuadraticIrrational,
    pub support: ChamberDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayWalkResult {
    pub segments: Vec<Segment>,
    /// Destabilizing numbers strictly between 0 and the threshold.
    pub breakpoints: Vec<Rational>,
    /// `sup{λ : L − λA big}`.
    pub bigness_threshold: QuadraticIrrational,
}

/// Affine data of the walk on one chamber: `x(λ) = x0 + λ·x1`, `P(λ) = p0 + λ·p1`.
struct ChamberLine {
    x0: Vec<Rational>,
    x1: Vec<Rational>,
    p0: DivisorClass,
    p1: DivisorClass,
}

fn chamber_line(model: &SurfaceModel, l: &DivisorClass, a: &DivisorClass, support: &Support) -> Result<ChamberLine> {
    let x0 = negative_coefficients(model, l, support)?;
    let x1: Vec<Rational> = negative_coefficients(model, a, support)?.into_iter().map(|v| -v).collect();
    let curves = support.classes(model);
    let n0 = combination(model.lattice(), &curves.iter().copied().zip(&x0).collect::<Vec<_>>());
    let n1 = combination(model.lattice(), &curves.iter().copied().zip(&x1).collect::<Vec<_>>());
    Ok(ChamberLine { p0: l - &n0, p1: &(-a) - &n1, x0, x1 })
}

/// Least root `> after` of `c2 λ² + c1 λ + c0`.
fn least_root_after(c2: &Rational, c1: &Rational, c0: &Rational, after: &Rational) -> Option<QuadraticIrrational> {
    let after_q = QuadraticIrrational::from(after);
    if c2.is_zero() {
        if c1.is_zero() {
            return None;
        }
        let root = -c0 / c1;
        return (root > *after).then(|| root.into());
    }
    let disc = c1 * c1 - int(4) * c2 * c0;
    if disc.is_negative() {
        return None;
    }
    let sqrt = QuadraticIrrational::sqrt(&disc).expect("non-negative");
    let inv = int(1) / (int(2) * c2);
    let minus_c1 = QuadraticIrrational::from(-c1);
    let mut roots = [(&minus_c1 - &sqrt).scale(&inv), (&minus_c1 + &sqrt).scale(&inv)];
    roots.sort_by(|x, y| x.partial_cmp(y).expect("same field"));
    roots.into_iter().find(|r| r.partial_cmp(&after_q) == Some(Ordering::Greater))
}

/// Chamber walk along `L − λA`, `λ ≥ 0`, up to the edge of the big cone.
pub fn destabilizing_numbers(model: &SurfaceModel, l: &DivisorClass, a: &DivisorClass) -> Result<RayWalkResult> {
    model.check(l)?;
    if !model.is_ample(a)? {
        return Err(Error::NotAmple);
    }
    let mut support = decompose_big(model, l)?.support();
    let all: Vec<&DivisorClass> = model.curves().iter().map(|c| &c.class).collect();
    let mut lambda = Rational::zero();
    let mut segments = Vec::new();
    let mut breakpoints = Vec::new();
    let mut segment_start = Rational::zero();

    loop {
        let line = chamber_line(model, l, a, &support)?;
        let value = pairings(&line.p0, &all);
        let slope = pairings(&line.p1, &all);
        let at = |i: usize| &value[i] + &lambda * &slope[i];

        // curves already on their wall that are about to be crossed enter at once
        let immediate: Vec<usize> =
            (0..all.len()).filter(|&i| !support.contains(i) && at(i).is_zero() && slope[i].is_negative()).collect();
        if !immediate.is_empty() {
            let mut grown = support.clone();
            immediate.iter().for_each(|&i| {
                grown.insert(i);
            });
            if !is_negative_definite(&gram_matrix(&grown.classes(model))) {
                let end = QuadraticIrrational::from(&lambda);
                segments.push(Segment { start: segment_start, end: end.clone(), support: support.into() });
                return Ok(RayWalkResult { segments, breakpoints, bigness_threshold: end });
            }
            support = grown;
            continue;
        }

        // next wall: least rational root > λ of an affine pairing or coefficient
        let mut next: Option<Rational> = None;
        let mut consider = |root: Rational| {
            if root > lambda && next.as_ref().is_none_or(|n| root < *n) {
                next = Some(root);
            }
        };
        for i in (0..all.len()).filter(|i| !support.contains(*i)) {
            if slope[i].is_negative() {
                consider(-&value[i] / &slope[i]);
            }
        }
        for (x0, x1) in line.x0.iter().zip(&line.x1) {
            if x1.is_negative() {
                consider(-x0 / x1);
            }
        }

        let c2 = line.p1.square();
        let c1 = int(2) * line.p0.dot(&line.p1);
        let c0 = line.p0.square();
        let vanish = least_root_after(&c2, &c1, &c0, &lambda);

        let threshold_first = match (&vanish, &next) {
            (Some(v), Some(w)) => v.partial_cmp(&QuadraticIrrational::from(w)) != Some(Ordering::Greater),
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => return Err(Error::OutOfDomain("ray never leaves the big cone".into())),
        };
        if threshold_first {
            let end = vanish.expect("checked above");
            segments.push(Segment { start: segment_start, end: end.clone(), support: support.into() });
            return Ok(RayWalkResult { segments, breakpoints, bigness_threshold: end });
        }

        let wall = next.expect("checked above");
        let entering: Vec<usize> = (0..all.len())
            .filter(|&i| !support.contains(i) && slope[i].is_negative() && -&value[i] / &slope[i] == wall)
            .collect();
        let leaving: Vec<usize> = support
            .indices()
            .zip(line.x0.iter().zip(&line.x1))
            .filter(|(_, (x0, x1))| x1.is_negative() && -*x0 / *x1 == wall)
            .map(|(i, _)| i)
            .collect();
        let mut grown = support.clone();
        for &i in &entering {
            grown.insert(i);
        }
        for &i in &leaving {
            grown.remove(i);
        }
        if !is_negative_definite(&gram_matrix(&grown.classes(model))) {
            let end = QuadraticIrrational::from(&wall);
            segments.push(Segment { start: segment_start, end: end.clone(), support: support.into() });
            return Ok(RayWalkResult { segments, breakpoints, bigness_threshold: end });
        }
        segments.push(Segment { start: segment_start, end: wall.clone().into(), support: support.into() });
        if !entering.is_empty() {
            breakpoints.push(wall.clone());
        }
        segment_start = wall.clone();
        lambda = wall;
        support = grown;
    }
}

/// `Neg(D) = Null(P_D)`: the class sits in the interior of its chamber.
pub fn is_stable(model: &SurfaceModel, d: &DivisorClass) -> Result<bool> {
    let z = decompose_big(model, d)?;
    Ok(z.support() == null_set(model, &z.positive)?)
}

/// The stable base locus of a stable class, which is its negative-part support.
pub fn stable_base_locus(model: &SurfaceModel, d: &DivisorClass) -> Result<Support> {
    if !is_stable(model, d)? {
        return Err(Error::InstableDivisor);
    }
    neg_set(model, d)
}

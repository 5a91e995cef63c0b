//! Random generators and brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zlab_core::lattice::DivisorClass;
use zlab_core::scalar::{int, ratio};
use zlab_core::{is_big, Matrix, Rational, Support, SurfaceModel};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut impl Rng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let den = rng.random_range(1..=max_den);
    ratio(rng.random_range(lo * den..=hi * den), den)
}

/// Random class in a box around the anticanonical direction: `cA + Σ tᵢ eᵢ`.
pub fn random_class(rng: &mut impl Rng, model: &SurfaceModel, max_den: i64) -> DivisorClass {
    let n = model.rank();
    let scale = random_rational(rng, 0, 3, max_den);
    let coords = (0..n)
        .map(|i| &model.ample().coords()[i] * &scale + random_rational(rng, -4, 4, max_den))
        .collect();
    model.class(coords).unwrap()
}

pub fn random_big_class(rng: &mut impl Rng, model: &SurfaceModel, max_den: i64) -> DivisorClass {
    loop {
        let d = random_class(rng, model, max_den);
        if is_big(model, &d) {
            return d;
        }
    }
}

/// Random big class built as nef + effective curves, so non-nef chambers show up often.
pub fn random_big_mixed(rng: &mut impl Rng, model: &SurfaceModel, max_den: i64) -> DivisorClass {
    if rng.random_bool(0.5) {
        return random_big_class(rng, model, max_den);
    }
    loop {
        let mut d = model.ample().scale(&random_rational(rng, 0, 2, max_den));
        for _ in 0..rng.random_range(0..4) {
            let c = &model.curves()[rng.random_range(0..model.curves().len())].class;
            d = &d + &c.scale(&random_rational(rng, 0, 3, max_den));
        }
        let jitter = (0..model.rank()).map(|_| random_rational(rng, -1, 1, max_den)).collect();
        d = &d + &model.class(jitter).unwrap();
        if is_big(model, &d) {
            return d;
        }
    }
}

/// Random ample class near the model's witness.
pub fn random_ample(rng: &mut impl Rng, model: &SurfaceModel) -> DivisorClass {
    loop {
        let base = model.ample().scale(&int(rng.random_range(1..=3)));
        let jitter = (0..model.rank()).map(|_| random_rational(rng, -1, 1, 3)).collect();
        let a = &base + &model.class(jitter).unwrap();
        if model.is_ample(&a).unwrap() {
            return a;
        }
    }
}

/// Sylvester's criterion: `(−1)^k det(leading k×k) > 0` for every k.
pub fn negative_definite_by_minors(m: &Matrix) -> bool {
    let n = m.rows();
    (1..=n).all(|k| {
        let minor = Matrix::from_rows((0..k).map(|i| m.row(i)[..k].to_vec()).collect());
        let det = minor.determinant();
        if k % 2 == 0 {
            det.is_positive()
        } else {
            det.is_negative()
        }
    })
}

fn pair(model: &SurfaceModel, a: &[Rational], b: &[Rational]) -> Rational {
    model.lattice().form().bilinear(a, b)
}

fn nef_by_pairings(model: &SurfaceModel, p: &[Rational]) -> bool {
    !pair(model, p, p).is_negative()
        && !pair(model, p, model.ample().coords()).is_negative()
        && model.curves().iter().all(|c| !pair(model, p, c.class.coords()).is_negative())
}

/// Every decomposition `D = P + Σ xᵢCᵢ` over every subset of curves with
/// negative definite Gram matrix, `x > 0`, `P·Cᵢ = 0` and `P` nef.
pub fn brute_force_zariski(model: &SurfaceModel, d: &DivisorClass) -> Vec<(Vec<Rational>, Support)> {
    let curves = model.curves();
    let n = curves.len();
    assert!(n <= 16, "brute force over 2^{n} subsets");
    let mut found = Vec::new();
    for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let k = idx.len();
        let gram = Matrix::from_rows(
            idx.iter()
                .map(|&i| idx.iter().map(|&j| pair(model, curves[i].class.coords(), curves[j].class.coords())).collect())
                .collect(),
        );
        if k > 0 && !negative_definite_by_minors(&gram) {
            continue;
        }
        let rhs: Vec<Rational> = idx.iter().map(|&i| pair(model, d.coords(), curves[i].class.coords())).collect();
        let x = if k == 0 { vec![] } else { gram.solve(&rhs).unwrap() };
        if x.iter().any(|v| !v.is_positive()) {
            continue;
        }
        let mut p = d.coords().to_vec();
        for (&i, xi) in idx.iter().zip(&x) {
            for (pc, cc) in p.iter_mut().zip(curves[i].class.coords()) {
                *pc -= xi * cc;
            }
        }
        if nef_by_pairings(model, &p) {
            found.push((p, idx.into_iter().collect()));
        }
    }
    found
}

/// Exceptional classes `dL − Σ aᵢEᵢ` (`Σaᵢ = 3d − 1`, `Σaᵢ² = d² + 1`) counted
/// over non-increasing tuples in the Cauchy–Schwarz box, weighted by the
/// number of distinct permutations.
pub fn brute_force_exceptional_count(r: usize) -> u64 {
    let mut total = 0u64;
    for d in -10i64..=10 {
        let (sum, sumsq) = (3 * d - 1, d * d + 1);
        // (Σaᵢ)² ≤ r·Σaᵢ²
        if sum * sum > r as i64 * sumsq {
            continue;
        }
        let bound = (sumsq as f64).sqrt() as i64;
        let mut tuple = Vec::with_capacity(r);
        sorted_tuples(r, bound, -bound, &mut tuple, &mut |t| {
            if t.iter().sum::<i64>() == sum && t.iter().map(|a| a * a).sum::<i64>() == sumsq {
                total += permutations(t);
            }
        });
    }
    total
}

fn sorted_tuples(r: usize, max: i64, min: i64, tuple: &mut Vec<i64>, visit: &mut impl FnMut(&[i64])) {
    if tuple.len() == r {
        visit(tuple);
        return;
    }
    for a in (min..=max).rev() {
        tuple.push(a);
        sorted_tuples(r, a, min, tuple, visit);
        tuple.pop();
    }
}

fn permutations(t: &[i64]) -> u64 {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    let mut counts = std::collections::HashMap::new();
    for a in t {
        *counts.entry(a).or_insert(0usize) += 1;
    }
    counts.values().fold(fact(t.len()), |acc, &c| acc / fact(c))
}

/// Chambers by checking every subset of the curve list.
pub fn brute_force_chambers(model: &SurfaceModel) -> Vec<Support> {
    let curves = model.curves();
    let n = curves.len();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let gram = Matrix::from_rows(
            idx.iter()
                .map(|&i| idx.iter().map(|&j| pair(model, curves[i].class.coords(), curves[j].class.coords())).collect())
                .collect(),
        );
        if !idx.is_empty() && !negative_definite_by_minors(&gram) {
            continue;
        }
        let rhs: Vec<Rational> =
            idx.iter().map(|&i| -pair(model, model.ample().coords(), curves[i].class.coords())).collect();
        let lambda = if idx.is_empty() { vec![] } else { gram.solve(&rhs).unwrap() };
        let mut p = model.ample().coords().to_vec();
        for (&i, l) in idx.iter().zip(&lambda) {
            for (pc, cc) in p.iter_mut().zip(curves[i].class.coords()) {
                *pc += l * cc;
            }
        }
        let null: Vec<usize> = (0..n).filter(|&i| pair(model, &p, curves[i].class.coords()).is_zero()).collect();
        if nef_by_pairings(model, &p) && null == idx {
            out.push(idx.into_iter().collect());
        }
    }
    out
}

pub fn max_abs_diff(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(Rational::zero(), |m, v| if v > m { v } else { m })
}


//! Reflections in (−2)-classes, Weyl orbits and group orders.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::ToPrimitive;

use crate::lattice::DivisorClass;
use crate::scalar::{int, Rational};
use crate::surface::SurfaceModel;
use crate::volume::vol;
use crate::{Error, Result};

pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;
pub const DEFAULT_GROUP_RANK_CAP: usize = 6;

/// `σ_α(D) = D + (D·α)α` for `α² = −2`.
pub fn reflect(d: &DivisorClass, alpha: &DivisorClass) -> Result<DivisorClass> {
    let da = d.pair(alpha)?;
    let sq = alpha.square();
    if sq != int(-2) {
        return Err(Error::NotMinusTwoClass(crate::scalar::format_rational(&sq)));
    }
    Ok(d + &alpha.scale(&da))
}

/// Orbit of `start` under the group generated by the simple-root reflections,
/// sorted by coordinates.
pub fn weyl_orbit(model: &SurfaceModel, start: &DivisorClass, cap: usize) -> Result<Vec<DivisorClass>> {
    model.check(start)?;
    let generators = model.enumerate_roots()?.simple;
    let mut seen: HashSet<Vec<Rational>> = HashSet::from([start.coords().to_vec()]);
    let mut queue = VecDeque::from([start.clone()]);
    let mut out = vec![start.clone()];
    while let Some(d) = queue.pop_front() {
        for g in &generators {
            let image = reflect(&d, g)?;
            if seen.insert(image.coords().to_vec()) {
                if seen.len() > cap {
                    return Err(Error::OrbitTooLarge(cap));
                }
                out.push(image.clone());
                queue.push_back(image);
            }
        }
    }
    out.sort_by(|a, b| a.coords().cmp(b.coords()));
    Ok(out)
}

/// Partition of `classes` into orbits of the Weyl group (each orbit sorted).
pub fn orbit_partition(model: &SurfaceModel, classes: &[DivisorClass]) -> Result<Vec<Vec<DivisorClass>>> {
    let mut remaining: BTreeSet<Vec<Rational>> = classes.iter().map(|c| c.coords().to_vec()).collect();
    let mut orbits = Vec::new();
    for c in classes {
        if !remaining.contains(c.coords()) {
            continue;
        }
        let orbit = weyl_orbit(model, c, DEFAULT_ORBIT_CAP)?;
        for o in &orbit {
            remaining.remove(o.coords());
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Order of the group generated by the simple-root reflections, by closing the
/// set of integer matrices under left multiplication with the generators.
pub fn weyl_group_order(model: &SurfaceModel, rank_cap: usize) -> Result<u64> {
    let roots = model.enumerate_roots()?;
    let r = model.rank() - 1;
    if r > rank_cap {
        return Err(Error::RankTooLargeForEnumeration { rank: r, cap: rank_cap });
    }
    let n = model.rank();
    let form = model.lattice().form();
    let generators: Vec<Vec<i64>> = roots
        .simple
        .iter()
        .map(|alpha| {
            // σ(v) = v + α (αᵀ G v), so σ = I + α (Gα)ᵀ
            let ga = form.mul_vec(alpha.coords());
            let mut m = vec![0i64; n * n];
            for i in 0..n {
                for j in 0..n {
                    let v = &alpha.coords()[i] * &ga[j] + int(i64::from(i == j));
                    m[i * n + j] = v.to_integer().to_i64().expect("roots are integral and small");
                }
            }
            m
        })
        .collect();
    let identity: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
    let mut seen = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in &generators {
            let prod = mat_mul(s, &g, n);
            if seen.insert(prod.clone()) {
                queue.push_back(prod);
            }
        }
    }
    Ok(seen.len() as u64)
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

/// `vol(σ_E(P))` for a nef `P` and a listed (−2)-curve `E`, via Zariski decomposition.
///
/// The decomposition is `σ_E(P) = (P + ½(P·E)E) + ½(P·E)E`, so the value is
/// `P² + ½(P·E)²`.
pub fn k3_reflection_volume(model: &SurfaceModel, p: &DivisorClass, curve: usize) -> Result<Rational> {
    if !model.is_nef(p)? {
        return Err(Error::NotNef);
    }
    let e = &model
        .curves()
        .get(curve)
        .ok_or_else(|| Error::UnknownCurve(format!("#{curve}")))?
        .class;
    vol(model, &reflect(p, e)?)
}

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{locate_region, verify_position, Arrangement, Region};
use crate::error::{Error, Result};
use crate::exactmath::{int, rank, rat, Matrix, Rational};

const MAX_ATTEMPTS: usize = 256;

/// A random arrangement of `n` hyperplanes in `R^d` verified to be in
/// `d'`-relaxed general position. Deterministic in `seed`.
///
/// Normals are random integer combinations of `d'` random spanning
/// directions; biases are random integers. Coefficient ranges widen with
/// every rejected attempt.
pub fn random_arrangement(n: usize, d: usize, dprime: usize, seed: u64) -> Result<Arrangement> {
    if dprime == 0 || dprime > d || n == 0 {
        return Err(Error::Domain(format!(
            "need 1 ≤ d' ≤ d and n ≥ 1, got n={n}, d={d}, d'={dprime}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..MAX_ATTEMPTS {
        let range = 3 + attempt as i64;
        let directions: Vec<Vec<i64>> = (0..dprime)
            .map(|_| (0..d).map(|_| rng.gen_range(-range..=range)).collect())
            .collect();
        let dir_matrix = Matrix::from_rows(
            d,
            &directions
                .iter()
                .map(|v| v.iter().map(|&x| int(x)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )?;
        if rank(&dir_matrix) != dprime {
            continue;
        }
        let mut planes = Vec::with_capacity(n);
        while planes.len() < n {
            let coeffs: Vec<i64> = (0..dprime).map(|_| rng.gen_range(-range..=range)).collect();
            let normal: Vec<i64> = (0..d)
                .map(|j| coeffs.iter().zip(&directions).map(|(c, v)| c * v[j]).sum())
                .collect();
            if normal.iter().all(|&x| x == 0) {
                continue;
            }
            let bias = rng.gen_range(-4 * range..=4 * range);
            planes.push((normal.into_iter().map(int).collect(), int(bias)));
        }
        let a = Arrangement::new(d, planes)?;
        let report = verify_position(&a);
        if report.admits(dprime) {
            return Ok(a.with_report(report));
        }
    }
    Err(Error::GenerationFailed {
        n,
        d,
        dprime,
        attempts: MAX_ATTEMPTS,
    })
}

/// Rational points on the unit sphere, strictly inside the positive orthant,
/// via inverse stereographic projection: `u ↦ ((1 − |u|²), 2u) / (1 + |u|²)`
/// for `u ∈ (0, 1)^{d−1}` with `|u| < 1`. Enumerated by increasing common
/// denominator of `u`, so for `d = 2` the sequence starts
/// `(3/5, 4/5), (4/5, 3/5), (5/13, 12/13), …`.
fn sphere_candidates(d: usize, max_den: i64) -> impl Iterator<Item = Vec<Rational>> {
    (2..=max_den).flat_map(move |q| {
        numerators(d - 1, q)
            .into_iter()
            .filter(move |a| {
                let norm: i64 = a.iter().map(|x| x * x).sum();
                let g = a.iter().fold(q, |g, &x| g.gcd(&x));
                norm < q * q && g == 1
            })
            .map(move |a| {
                let u: Vec<Rational> = a.iter().map(|&x| rat(x, q)).collect();
                let norm2: Rational = u.iter().map(|x| x * x).sum();
                let den = Rational::one() + &norm2;
                let mut p = Vec::with_capacity(d);
                p.push((Rational::one() - &norm2) / &den);
                p.extend(u.iter().map(|x| int(2) * x / &den));
                p
            })
    })
}

/// All vectors of `k` numerators in `1..q`, lexicographic.
fn numerators(k: usize, q: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..q).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `n` tangent points for the worst-case construction: every `d`-subset is
/// linearly independent and the tangent arrangement is in `d`-relaxed
/// general position.
pub fn worst_case_points(n: usize, d: usize) -> Result<Vec<Vec<Rational>>> {
    if d < 2 || n < d {
        return Err(Error::Domain(format!("need n ≥ d ≥ 2, got n={n}, d={d}")));
    }
    let max_den = 16 + 4 * n as i64;
    let mut points: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for p in sphere_candidates(d, max_den) {
        if points.len() == n {
            break;
        }
        if points.contains(&p) {
            continue;
        }
        let mut trial = points.clone();
        trial.push(p);
        if tangent_arrangement(d, &trial)?.position().admits(d)
            && independent_d_subsets(d, &trial)
        {
            points = trial;
        }
    }
    if points.len() < n {
        return Err(Error::ConstructionFailed(format!(
            "found only {} of {n} admissible sphere points with denominators ≤ {max_den}",
            points.len()
        )));
    }
    Ok(points)
}

fn independent_d_subsets(d: usize, points: &[Vec<Rational>]) -> bool {
    use itertools::Itertools;
    let newest = points.len() - 1;
    if points.len() < d {
        let m = Matrix::from_rows(d, points).expect("dimension");
        return rank(&m) == points.len();
    }
    // only subsets containing the newest point are new
    (0..newest).combinations(d - 1).all(|mut s| {
        s.push(newest);
        let rows: Vec<&Vec<Rational>> = s.iter().map(|&i| &points[i]).collect();
        rank(&Matrix::from_rows(d, &rows).expect("dimension")) == d
    })
}

fn tangent_arrangement(d: usize, points: &[Vec<Rational>]) -> Result<Arrangement> {
    Arrangement::new(d, points.iter().map(|p| (p.clone(), Rational::one())).collect())
}

/// Tangent hyperplanes `p·z = 1` to the unit sphere at [`worst_case_points`].
/// The cell containing the origin has every hyperplane as a face.
pub fn worst_case_arrangement(n: usize, d: usize) -> Result<Arrangement> {
    let a = tangent_arrangement(d, &worst_case_points(n, d)?)?;
    let report = verify_position(&a);
    if !report.admits(d) {
        return Err(Error::ConstructionFailed("tangent arrangement not in general position".into()));
    }
    Ok(a.with_report(report))
}

/// The origin-side cell of a worst-case arrangement (the one touching the
/// spherical cap).
pub fn cap_region(a: &Arrangement) -> Result<Region> {
    locate_region(a, &vec![Rational::zero(); a.dimension()])
}

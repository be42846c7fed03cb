//! Exact Lebesgue volume of the convex hull of a rational point set in
//! dimension at most 4.
//!
//! Facets are enumerated through the polar dual: with the vertex centroid
//! translated to the origin, the facets of the hull are the extreme rays of
//! the homogenized polar cone, which the double-description method computes
//! with exact rational arithmetic and no general-position assumption.
//! The volume is then a sum of simplex determinants over a cone
//! triangulation from the centroid, with each facet triangulated
//! recursively through its own face lattice.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullVolumeResult {
    pub volume: Rat,
    /// Affine dimension of the point set.
    pub dim: usize,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn centroid(points: &[Vec<Rat>]) -> Vec<Rat> {
    let n = points[0].len();
    let count = Rat::from_integer(points.len().into());
    (0..n)
        .map(|j| points.iter().map(|p| &p[j]).sum::<Rat>() / &count)
        .collect()
}

/// Divides by the absolute value of the first nonzero entry, so equal rays
/// compare equal.
fn canonical_ray(mut v: Vec<Rat>) -> Vec<Rat> {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        let scale = if first < &Rat::zero() {
            -first.clone()
        } else {
            first.clone()
        };
        for x in &mut v {
            *x /= &scale;
        }
    }
    v
}

#[derive(Debug, Clone)]
struct Ray {
    v: Vec<Rat>,
    /// Indices of processed constraints tight at this ray.
    tight: BTreeSet<usize>,
}

/// Extreme rays of the pointed cone {z : row . z <= 0 for every row},
/// by double description. The rows must have full column rank.
fn extreme_rays(rows: &[Vec<Rat>]) -> Vec<Ray> {
    let dim = rows[0].len();
    // greedy full-rank initial subset
    let mut chosen: Vec<usize> = Vec::new();
    for (k, _) in rows.iter().enumerate() {
        let mut candidate = chosen.clone();
        candidate.push(k);
        let mat = QMatrix::from_rows(candidate.iter().map(|&i| rows[i].clone()).collect());
        if mat.rank() == candidate.len() {
            chosen = candidate;
            if chosen.len() == dim {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), dim, "constraint rows must have full rank");
    let initial = QMatrix::from_rows(chosen.iter().map(|&i| rows[i].clone()).collect());
    // rays of the simplicial cone: columns of -A^{-1}
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let mut rhs = vec![Rat::zero(); dim];
            rhs[j] = -Rat::one();
            let v = canonical_ray(initial.solve(&rhs).expect("invertible initial block"));
            Ray {
                v,
                tight: BTreeSet::new(),
            }
        })
        .collect();
    let mut processed: Vec<usize> = chosen.clone();
    for ray in &mut rays {
        for &k in &processed {
            if dot(&rows[k], &ray.v).is_zero() {
                ray.tight.insert(k);
            }
        }
    }
    let chosen_set: BTreeSet<usize> = chosen.into_iter().collect();
    for k in 0..rows.len() {
        if chosen_set.contains(&k) {
            continue;
        }
        let values: Vec<Rat> = rays.iter().map(|r| dot(&rows[k], &r.v)).collect();
        if values.iter().all(|s| *s <= Rat::zero()) {
            for (ray, s) in rays.iter_mut().zip(&values) {
                if s.is_zero() {
                    ray.tight.insert(k);
                }
            }
            processed.push(k);
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for (ray, s) in rays.iter().zip(&values) {
            if *s <= Rat::zero() {
                let mut kept = ray.clone();
                if s.is_zero() {
                    kept.tight.insert(k);
                }
                seen.insert(kept.v.clone());
                next.push(kept);
            }
        }
        for (i, ri) in rays.iter().enumerate() {
            if values[i] <= Rat::zero() {
                continue;
            }
            for (j, rj) in rays.iter().enumerate() {
                if values[j] >= Rat::zero() {
                    continue;
                }
                // adjacency: no third ray is tight on everything both share
                let common: BTreeSet<usize> =
                    ri.tight.intersection(&rj.tight).copied().collect();
                let blocked = rays.iter().enumerate().any(|(l, rl)| {
                    l != i && l != j && common.is_subset(&rl.tight)
                });
                if blocked {
                    continue;
                }
                let combo: Vec<Rat> = ri
                    .v
                    .iter()
                    .zip(&rj.v)
                    .map(|(a, b)| &values[i] * b - &values[j] * a)
                    .collect();
                let v = canonical_ray(combo);
                if !seen.insert(v.clone()) {
                    continue;
                }
                let mut tight: BTreeSet<usize> = BTreeSet::new();
                for &p in processed.iter().chain(std::iter::once(&k)) {
                    if dot(&rows[p], &v).is_zero() {
                        tight.insert(p);
                    }
                }
                next.push(Ray { v, tight });
            }
        }
        processed.push(k);
        rays = next;
    }
    rays
}

/// Facet vertex sets (as indices into `points`) of a full-dimensional hull.
fn facets(points: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let d = points[0].len();
    let c = centroid(points);
    // homogenized polar: rays (y, t) with q_k . y <= t and t >= 0
    let mut rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| {
            let mut row = sub(p, &c);
            row.push(-Rat::one());
            row
        })
        .collect();
    let mut tcap = vec![Rat::zero(); d];
    tcap.push(-Rat::one());
    rows.push(tcap);
    let rays = extreme_rays(&rows);
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for ray in rays {
        let t = ray.v.last().unwrap();
        assert!(
            t > &Rat::zero(),
            "polar cone has a ray at infinity (hull not full-dimensional?)"
        );
        let members: Vec<usize> = (0..points.len())
            .filter(|&k| ray.tight.contains(&k))
            .collect();
        assert!(members.len() >= d, "facet with too few incident points");
        out.insert(members);
    }
    out.into_iter().collect()
}

/// Affine dimension together with a chart: coordinates of every point of
/// `subset` with respect to an independent difference basis.
fn chart(points: &[Vec<Rat>], subset: &[usize]) -> (usize, Vec<Vec<Rat>>) {
    let base = &points[subset[0]];
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for &i in &subset[1..] {
        let q = sub(&points[i], base);
        let mut rows = basis.clone();
        rows.push(q.clone());
        if QMatrix::from_rows(rows.clone()).rank() == rows.len() {
            basis.push(q);
        }
    }
    let k = basis.len();
    if k == 0 {
        return (0, vec![Vec::new(); subset.len()]);
    }
    // columns of b are the basis vectors; solve b x = p - base
    let d = base.len();
    let mut bmat = QMatrix::zeros(d, k);
    for (j, col) in basis.iter().enumerate() {
        for i in 0..d {
            *bmat.get_mut(i, j) = col[i].clone();
        }
    }
    let coords = subset
        .iter()
        .map(|&i| {
            bmat.solve(&sub(&points[i], base))
                .expect("point lies in the affine hull")
        })
        .collect();
    (k, coords)
}

/// Triangulation of conv(points[subset]) into simplices of its own affine
/// dimension, returned as global index lists.
fn triangulate(points: &[Vec<Rat>], subset: &[usize]) -> Vec<Vec<usize>> {
    let (k, coords) = chart(points, subset);
    if k == 0 {
        return vec![vec![subset[0]]];
    }
    if subset.len() == k + 1 {
        return vec![subset.to_vec()];
    }
    let apex = subset[0];
    let mut simplices = Vec::new();
    for facet_local in facets(&coords) {
        let facet_global: Vec<usize> = facet_local.iter().map(|&l| subset[l]).collect();
        if facet_global.contains(&apex) {
            continue;
        }
        for mut simplex in triangulate(points, &facet_global) {
            simplex.push(apex);
            simplices.push(simplex);
        }
    }
    simplices
}

/// Exact hull volume in the coordinates given; dimension at most 4.
pub fn hull_volume(points: &[Vec<Rat>]) -> Result<HullVolumeResult> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = points[0].len();
    if n > 4 {
        return Err(Error::UnsupportedDimension(n));
    }
    for p in points {
        if p.len() != n {
            return Err(Error::DimMismatch {
                expected: n,
                got: p.len(),
            });
        }
    }
    let dedup: Vec<Vec<Rat>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let all: Vec<usize> = (0..dedup.len()).collect();
    let (dim, _) = chart(&dedup, &all);
    if dim < n {
        return Ok(HullVolumeResult {
            volume: Rat::zero(),
            dim,
        });
    }
    if n == 1 {
        let min = dedup.iter().map(|p| &p[0]).min().unwrap();
        let max = dedup.iter().map(|p| &p[0]).max().unwrap();
        return Ok(HullVolumeResult {
            volume: max - min,
            dim,
        });
    }
    let c = centroid(&dedup);
    let mut factorial = Rat::one();
    for s in 1..=n {
        factorial *= Rat::from_integer(s.into());
    }
    let mut volume = Rat::zero();
    for facet in facets(&dedup) {
        for simplex in triangulate(&dedup, &facet) {
            // cone from the centroid over a facet simplex
            let rows: Vec<Vec<Rat>> = simplex.iter().map(|&i| sub(&dedup[i], &c)).collect();
            let det = QMatrix::from_rows(rows).determinant().expect("square");
            let abs = if det < Rat::zero() { -det } else { det };
            volume += abs / &factorial;
        }
    }
    Ok(HullVolumeResult { volume, dim })
}

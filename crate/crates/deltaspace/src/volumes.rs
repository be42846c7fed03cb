//! Volumes of Weyl-orbit polytopes and the polynomials they define.
//!
//! For a Cartan system of rank n, the volume of the convex hull of the
//! orbit of a dominant weight is a homogeneous degree-n polynomial in the
//! weight coordinates. It is recovered exactly by interpolation on an
//! integer grid, then validated on off-grid rational points. Face volume
//! polynomials attach one polynomial to every subset of the simple roots,
//! multiplying over the connected components of the sub-diagram.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hull::hull_volume;
use crate::matrix::{subsets_by_cardinality, QMatrix};
use crate::mpoly::{monomials_of_degree, MPoly};
use crate::rational::{rat, rat2, Rat};
use crate::rootsys::CartanSystem;

/// Which lattice the volume is measured against. `Weight` is plain
/// Lebesgue measure in the coordinates the orbits live in; `Root` divides
/// by the Cartan determinant of each irreducible factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    Weight,
    Root,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Weight => "weight",
            Normalization::Root => "root",
        }
    }
}

/// Exact volume of the convex hull of the Weyl orbit of `lambda`, in
/// weight coordinates. Zero when the orbit is not full-dimensional.
pub fn permutohedron_volume(sys: &CartanSystem, lambda: &[Rat]) -> Result<Rat> {
    let n = sys.rank();
    if lambda.len() != n {
        return Err(Error::DimMismatch {
            expected: n,
            got: lambda.len(),
        });
    }
    let orbit: Vec<Vec<Rat>> = sys.weyl_orbit(lambda)?.into_iter().collect();
    let result = hull_volume(&orbit)?;
    Ok(result.volume)
}

/// The homogeneous degree-n polynomial that evaluates to the orbit hull
/// volume at every weight, in weight normalization.
pub fn volume_polynomial(sys: &CartanSystem) -> Result<MPoly> {
    let n = sys.rank();
    let monomials = monomials_of_degree(n, n);
    let target = monomials.len();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let mut rank = 0;
    // lex walk over the grid {1..n+1}^n, keeping only rank-increasing rows
    let mut grid = vec![1i64; n];
    'outer: loop {
        let point: Vec<Rat> = grid.iter().map(|&v| rat(v)).collect();
        let row: Vec<Rat> = monomials
            .iter()
            .map(|mono| MPoly::monomial(n, mono.clone(), Rat::one()).evaluate(&point))
            .collect();
        let mut candidate = rows.clone();
        candidate.push(row.clone());
        let new_rank = QMatrix::from_rows(candidate).rank();
        if new_rank > rank {
            rank = new_rank;
            rhs.push(permutohedron_volume(sys, &point)?);
            rows.push(row);
            if rank == target {
                break;
            }
        }
        for j in (0..n).rev() {
            if grid[j] < (n as i64) + 1 {
                grid[j] += 1;
                continue 'outer;
            }
            grid[j] = 1;
            if j == 0 {
                break 'outer;
            }
        }
    }
    assert_eq!(rank, target, "interpolation grid did not reach full rank");
    let system = QMatrix::from_rows(rows);
    let coefs = system.solve(&rhs).expect("full-rank interpolation system");
    let mut poly = MPoly::zero(n);
    for (mono, c) in monomials.iter().zip(coefs) {
        poly = poly.add(&MPoly::monomial(n, mono.clone(), c));
    }
    // validate on off-grid rational points before trusting the result
    let offgrid = [rat2(1, 2), rat(3), rat2(7, 2), rat(5)];
    for shift in 0..5usize {
        let point: Vec<Rat> = (0..n).map(|i| offgrid[(i + shift) % 4].clone()).collect();
        let expected = permutohedron_volume(sys, &point)?;
        assert_eq!(
            poly.evaluate(&point),
            expected,
            "volume polynomial failed off-grid validation"
        );
    }
    Ok(poly)
}

/// Renames the variables of a rank-k polynomial into an n-variable ring,
/// sending variable j to `positions[j]`.
fn embed(p: &MPoly, nvars: usize, positions: &[usize]) -> MPoly {
    let mut out = MPoly::zero(nvars);
    for (exps, c) in p.terms() {
        let mut target = vec![0u32; nvars];
        for (j, &e) in exps.iter().enumerate() {
            target[positions[j]] = e;
        }
        out = out.add(&MPoly::monomial(nvars, target, c.clone()));
    }
    out
}

/// Product of Cartan determinants over the connected components of the
/// sub-diagram on `subset` (0-based); 1 for the empty set.
pub fn normalization_factor(sys: &CartanSystem, subset: &[usize]) -> Rat {
    let mut factor = Rat::one();
    for comp in sys.dynkin_components(subset) {
        factor *= sys
            .matrix()
            .principal_submatrix(&comp)
            .determinant()
            .expect("square principal block");
    }
    factor
}

/// Face volume polynomial for the sub-diagram on `subset` (0-based), a
/// degree-|subset| polynomial in the full n-variable ring using only the
/// variables of the subset. The empty set gives the constant 1.
pub fn face_volume_polynomial(
    sys: &CartanSystem,
    subset: &[usize],
    normalization: Normalization,
) -> Result<MPoly> {
    let n = sys.rank();
    for &i in subset {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i + 1, max: n });
        }
    }
    let mut product = MPoly::one(n);
    for comp in sys.dynkin_components(subset) {
        let sub = sys.subsystem(&comp);
        let vpoly = volume_polynomial(&sub)?;
        product = product.mul(&embed(&vpoly, n, &comp));
    }
    if normalization == Normalization::Root {
        let factor = normalization_factor(sys, subset);
        product = product.scale(&(Rat::one() / factor));
    }
    Ok(product)
}

/// Exponent vector of the squarefree monomial on `subset`.
pub fn indicator(nvars: usize, subset: &[usize]) -> Vec<u32> {
    let mut exps = vec![0u32; nvars];
    for &i in subset {
        exps[i] = 1;
    }
    exps
}

/// The 2^n face volume polynomials, indexed by subsets of the simple
/// roots in (cardinality, lexicographic) order.
#[derive(Debug, Clone)]
pub struct VolumeBasis {
    n: usize,
    normalization: Normalization,
    entries: Vec<(Vec<usize>, MPoly)>,
}

impl VolumeBasis {
    pub fn build(sys: &CartanSystem, normalization: Normalization) -> Result<VolumeBasis> {
        let n = sys.rank();
        // every connected sub-diagram shows up in many subsets; interpolate
        // each component once
        let mut component_cache: BTreeMap<Vec<usize>, MPoly> = BTreeMap::new();
        let mut entries = Vec::new();
        let all_subsets: Vec<Vec<usize>> =
            std::iter::once(Vec::new()).chain(subsets_by_cardinality(n)).collect();
        for subset in all_subsets {
            let mut poly = MPoly::one(n);
            for comp in sys.dynkin_components(&subset) {
                let embedded = match component_cache.get(&comp) {
                    Some(p) => p.clone(),
                    None => {
                        let p = embed(&volume_polynomial(&sys.subsystem(&comp))?, n, &comp);
                        component_cache.insert(comp.clone(), p.clone());
                        p
                    }
                };
                poly = poly.mul(&embedded);
            }
            if normalization == Normalization::Root {
                poly = poly.scale(&(Rat::one() / normalization_factor(sys, &subset)));
            }
            assert_eq!(poly.degree(), Some(subset.len()));
            assert!(!poly.coefficient(&indicator(n, &subset)).is_zero());
            for (exps, _) in poly.terms() {
                for (i, &e) in exps.iter().enumerate() {
                    assert!(e == 0 || subset.contains(&i));
                }
            }
            entries.push((subset, poly));
        }
        Ok(VolumeBasis {
            n,
            normalization,
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn get(&self, subset: &[usize]) -> Option<&MPoly> {
        self.entries
            .iter()
            .find(|(s, _)| s.as_slice() == subset)
            .map(|(_, p)| p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &MPoly)> {
        self.entries.iter().map(|(s, p)| (s.as_slice(), p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::MPoly;

    fn sys(label: &str) -> CartanSystem {
        CartanSystem::from_label(label).unwrap()
    }

    fn p(text: &str, nvars: usize) -> MPoly {
        MPoly::parse(text, nvars).unwrap()
    }

    #[test]
    fn a1_volume_polynomial() {
        // orbit of (t) is {t, -t}: a segment of length 2t
        assert_eq!(volume_polynomial(&sys("A1")).unwrap(), p("2*x1", 1));
    }

    #[test]
    fn a2_volume_polynomial() {
        let v = volume_polynomial(&sys("A2")).unwrap();
        assert_eq!(v, p("3/2*x1^2 + 6*x1*x2 + 3/2*x2^2", 2));
        // orbit of (1,0) is a triangle of area 3/2
        assert_eq!(
            permutohedron_volume(&sys("A2"), &[rat(1), rat(0)]).unwrap(),
            rat2(3, 2)
        );
        // independent off-grid evaluation
        let pt = vec![rat(2), rat(5)];
        assert_eq!(
            v.evaluate(&pt),
            permutohedron_volume(&sys("A2"), &pt).unwrap()
        );
    }

    #[test]
    fn degenerate_weight_gives_zero() {
        assert_eq!(
            permutohedron_volume(&sys("A2"), &[rat(0), rat(0)]).unwrap(),
            rat(0)
        );
        // a wall weight of B2 still spans the plane (a diamond), and the
        // volume polynomial is exact there too
        let v = volume_polynomial(&sys("B2")).unwrap();
        let wall = vec![rat(1), rat(0)];
        let vol = permutohedron_volume(&sys("B2"), &wall).unwrap();
        assert!(vol > rat(0));
        assert_eq!(v.evaluate(&wall), vol);
    }

    #[test]
    fn volume_scales_like_degree_n() {
        for label in ["A2", "B2", "G2", "A3"] {
            let s = sys(label);
            let n = s.rank();
            let lambda: Vec<Rat> = (1..=n as i64).map(rat).collect();
            let doubled: Vec<Rat> = lambda.iter().map(|x| x * rat(2)).collect();
            let v1 = permutohedron_volume(&s, &lambda).unwrap();
            let v2 = permutohedron_volume(&s, &doubled).unwrap();
            assert_eq!(v2, v1 * rat(1 << n));
        }
    }

    #[test]
    fn volume_polynomial_is_homogeneous() {
        for label in ["A1", "B2", "A3", "C3"] {
            let s = sys(label);
            let v = volume_polynomial(&s).unwrap();
            assert!(v.is_homogeneous());
            assert_eq!(v.degree(), Some(s.rank()));
        }
    }

    #[test]
    fn face_polynomials_a2() {
        let s = sys("A2");
        let w = Normalization::Weight;
        assert_eq!(face_volume_polynomial(&s, &[], w).unwrap(), p("1", 2));
        assert_eq!(face_volume_polynomial(&s, &[0], w).unwrap(), p("2*x1", 2));
        assert_eq!(face_volume_polynomial(&s, &[1], w).unwrap(), p("2*x2", 2));
        assert_eq!(
            face_volume_polynomial(&s, &[0, 1], w).unwrap(),
            volume_polynomial(&s).unwrap()
        );
        // root normalization divides each factor by its Cartan determinant
        let r = Normalization::Root;
        assert_eq!(face_volume_polynomial(&s, &[0], r).unwrap(), p("x1", 2));
        assert_eq!(
            face_volume_polynomial(&s, &[0, 1], r).unwrap(),
            p("1/2*x1^2 + 2*x1*x2 + 1/2*x2^2", 2)
        );
    }

    #[test]
    fn disconnected_subset_multiplies_components() {
        // in A3, {0, 2} is a pair of A1 components
        let s = sys("A3");
        let v = face_volume_polynomial(&s, &[0, 2], Normalization::Weight).unwrap();
        assert_eq!(v, p("4*x1*x3", 3));
        assert_eq!(
            face_volume_polynomial(&s, &[0, 2], Normalization::Root).unwrap(),
            p("x1*x3", 3)
        );
    }

    #[test]
    fn volume_basis_structure() {
        let basis = VolumeBasis::build(&sys("A3"), Normalization::Weight).unwrap();
        assert_eq!(basis.iter().count(), 8);
        for (subset, poly) in basis.iter() {
            assert_eq!(poly.degree(), Some(subset.len()));
            assert_eq!(
                poly,
                &face_volume_polynomial(&sys("A3"), subset, Normalization::Weight).unwrap()
            );
        }
        assert_eq!(basis.get(&[]), Some(&p("1", 3)));
        assert!(basis.get(&[0, 1, 2]).is_some());
    }
}

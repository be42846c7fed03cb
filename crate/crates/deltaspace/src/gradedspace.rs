//! Degree-by-degree computation of the polynomial space cut out by the
//! row operators: a canonical basis in each degree from an exact nullspace
//! on the primal side, and the dimensions of the dual quotient by the
//! second-order operator ideal as a cross-check.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diffops::OperatorContext;
use crate::matrix::{MinorsVerdict, QMatrix};
use crate::mpoly::{monomials_of_degree, Exponents, MPoly};
use crate::rational::{render_rat, Rat};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Constraint matrix whose kernel (in the degree-d monomial coefficients,
/// grevlex descending) is the degree-d piece of the space: one row per
/// (row index i, monomial of degree d-2), rows ordered i-major.
fn constraint_matrix(m: &QMatrix, d: usize) -> (QMatrix, Vec<Exponents>) {
    let n = m.nrows();
    let cols = monomials_of_degree(n, d);
    if d < 2 {
        return (QMatrix::zeros(0, cols.len()), cols);
    }
    let target = monomials_of_degree(n, d - 2);
    let target_index: std::collections::BTreeMap<&Exponents, usize> =
        target.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let ctx = OperatorContext::new(m.clone());
    let mut mat = QMatrix::zeros(n * target.len(), cols.len());
    for (col, beta) in cols.iter().enumerate() {
        let basis_mono = MPoly::monomial(n, beta.clone(), Rat::from_integer(BigInt::from(1)));
        for i in 0..n {
            let q = ctx.dee(i, &basis_mono).partial(i);
            for (e, c) in q.terms() {
                let row = i * target.len() + target_index[e];
                *mat.get_mut(row, col) = c.clone();
            }
        }
    }
    (mat, cols)
}

/// Basis of the degree-d piece, in canonical nullspace form.
pub fn basis_degree(m: &QMatrix, d: usize) -> Vec<MPoly> {
    let n = m.nrows();
    let (mat, cols) = constraint_matrix(m, d);
    mat.nullspace()
        .into_iter()
        .map(|v| {
            let mut p = MPoly::zero(n);
            for (coef, exps) in v.into_iter().zip(&cols) {
                if !coef.is_zero() {
                    p = p.add(&MPoly::monomial(n, exps.clone(), coef));
                }
            }
            p
        })
        .collect()
}

/// Dimension of the degree-d piece without materializing basis polynomials.
pub fn dim_degree(m: &QMatrix, d: usize) -> usize {
    let (mat, cols) = constraint_matrix(m, d);
    cols.len() - mat.rank()
}

/// Dimension of the degree-d piece of the quotient of the operator ring by
/// the ideal generated by the quadrics y_i * (i-th row linear form).
pub fn dual_quotient_dim(m: &QMatrix, d: usize) -> usize {
    let n = m.nrows();
    let s_d = monomials_of_degree(n, d);
    if d < 2 {
        return s_d.len();
    }
    let s_index: std::collections::BTreeMap<&Exponents, usize> =
        s_d.iter().enumerate().map(|(i, e)| (e, i)).collect();
    // generators y_i L_i, multiplied by every monomial of degree d - 2
    let gens: Vec<MPoly> = (0..n)
        .map(|i| {
            let yi = MPoly::var(n, i);
            let li = (0..n).fold(MPoly::zero(n), |acc, j| {
                acc.add(&MPoly::var(n, j).scale(m.get(i, j)))
            });
            yi.mul(&li)
        })
        .collect();
    let shifts = monomials_of_degree(n, d - 2);
    let mut rows = QMatrix::zeros(n * shifts.len(), s_d.len());
    for (si, gamma) in shifts.iter().enumerate() {
        let shift_mono = MPoly::monomial(n, gamma.clone(), Rat::from_integer(BigInt::from(1)));
        for (i, gen) in gens.iter().enumerate() {
            let prod = shift_mono.mul(gen);
            let row = i * shifts.len() + si;
            for (e, c) in prod.terms() {
                *rows.get_mut(row, s_index[e]) = c.clone();
            }
        }
    }
    s_d.len() - rows.rank()
}

/// Per-degree bases of the space, recomputed and revalidated on build.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    m: QMatrix,
    by_degree: Vec<Vec<MPoly>>,
}

impl GradedBasis {
    pub fn build(m: &QMatrix, dmax: usize) -> GradedBasis {
        let ctx = OperatorContext::new(m.clone());
        let by_degree: Vec<Vec<MPoly>> = (0..=dmax)
            .map(|d| {
                let basis = basis_degree(m, d);
                for p in &basis {
                    assert!(
                        ctx.in_d(p).verdict,
                        "basis element fails membership: {}",
                        p.render()
                    );
                }
                basis
            })
            .collect();
        GradedBasis {
            m: m.clone(),
            by_degree,
        }
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.m
    }

    pub fn dmax(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn degree(&self, d: usize) -> &[MPoly] {
        &self.by_degree[d]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.by_degree.iter().map(|b| b.len()).collect()
    }

    pub fn iter_all(&self) -> impl Iterator<Item = &MPoly> {
        self.by_degree.iter().flatten()
    }
}

/// Default top degree: two past the binomial profile's last nonzero entry.
pub fn default_dmax(n: usize) -> usize {
    n + 2
}

#[derive(Debug, Clone)]
pub struct HilbertReport {
    pub dims_primal: Vec<usize>,
    pub dims_dual: Vec<usize>,
    pub dmax: usize,
    pub binomial_profile: bool,
    pub minors: MinorsVerdict,
}

impl HilbertReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dims_primal": self.dims_primal,
            "dims_dual": self.dims_dual,
            "binomial_profile": self.binomial_profile,
            "minors_nonzero": self.minors.all_nonzero,
            "witness": self.minors.witness.as_ref().map(|w| {
                w.iter().map(|i| i + 1).collect::<Vec<usize>>()
            }),
        })
    }
}

/// Primal and dual dimension sequences for d = 0..dmax. The two sides must
/// agree at every degree; a mismatch is an implementation bug, not a
/// reportable outcome.
pub fn hilbert_report(m: &QMatrix, dmax: usize) -> HilbertReport {
    let n = m.nrows();
    let dims_primal: Vec<usize> = (0..=dmax).map(|d| dim_degree(m, d)).collect();
    let dims_dual: Vec<usize> = (0..=dmax).map(|d| dual_quotient_dim(m, d)).collect();
    assert_eq!(
        dims_primal, dims_dual,
        "primal/dual dimension mismatch (bug)"
    );
    let binomial_profile = dims_primal
        .iter()
        .enumerate()
        .all(|(d, &dim)| dim == binomial(n, d));
    let minors = m.all_principal_minors_nonzero().expect("square matrix");
    HilbertReport {
        dims_primal,
        dims_dual,
        dmax,
        binomial_profile,
        minors,
    }
}

/// Expresses p in the concatenated graded basis up to dmax. Returns the
/// coordinate vector (ordered degree-major) if p lies in the span.
pub fn membership_in_span(m: &QMatrix, p: &MPoly, dmax: usize) -> Option<Vec<Rat>> {
    let basis = GradedBasis::build(m, dmax);
    membership_in_basis(&basis, p)
}

pub fn membership_in_basis(basis: &GradedBasis, p: &MPoly) -> Option<Vec<Rat>> {
    let n = basis.m.nrows();
    if p.is_zero() {
        return Some(vec![Rat::zero(); basis.iter_all().count()]);
    }
    if p.degree().unwrap() > basis.dmax() {
        return None;
    }
    // all monomials up to dmax, grevlex descending within each degree
    let mut monos: Vec<Exponents> = Vec::new();
    for d in 0..=basis.dmax() {
        monos.extend(monomials_of_degree(n, d));
    }
    let elements: Vec<&MPoly> = basis.iter_all().collect();
    if elements.is_empty() {
        return None;
    }
    let mut mat = QMatrix::zeros(monos.len(), elements.len());
    let index: std::collections::BTreeMap<&Exponents, usize> =
        monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    for (col, q) in elements.iter().enumerate() {
        for (e, c) in q.terms() {
            *mat.get_mut(index[e], col) = c.clone();
        }
    }
    let mut rhs = vec![Rat::zero(); monos.len()];
    for (e, c) in p.terms() {
        rhs[index[e]] = c.clone();
    }
    mat.solve(&rhs)
}

/// Renders a coordinate vector for reports.
pub fn render_coordinates(coords: &[Rat]) -> Vec<String> {
    coords.iter().map(render_rat).collect()
}

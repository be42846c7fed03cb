//! Finite-difference and directional-derivative operators attached to the
//! rows of a square matrix, and membership tests for the polynomial space
//! they cut out.

use num_bigint::BigInt;
use num_traits::One;

use crate::matrix::QMatrix;
use crate::mpoly::MPoly;
use crate::rational::Rat;

/// A fixed square matrix whose rows drive the shift and derivative
/// operators on polynomials in as many variables as the matrix has rows.
#[derive(Debug, Clone)]
pub struct OperatorContext {
    m: QMatrix,
}

/// Verdict of a membership test, with a reproducible failure certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipWitness {
    pub verdict: bool,
    /// Smallest failing row index (0-based) when the verdict is false.
    pub failing_index: Option<usize>,
    /// The nonzero polynomial d/dx_i of (Delta_i p) or (D_i p).
    pub offending: Option<MPoly>,
}

impl MembershipWitness {
    fn pass() -> Self {
        MembershipWitness {
            verdict: true,
            failing_index: None,
            offending: None,
        }
    }

    fn fail(i: usize, offending: MPoly) -> Self {
        MembershipWitness {
            verdict: false,
            failing_index: Some(i),
            offending: Some(offending),
        }
    }
}

impl OperatorContext {
    pub fn new(m: QMatrix) -> Self {
        assert!(m.is_square(), "operator context needs a square matrix");
        OperatorContext { m }
    }

    pub fn n(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.m
    }

    /// Finite difference: p(x - M_i) - p(x).
    pub fn delta(&self, i: usize, p: &MPoly) -> MPoly {
        assert!(i < self.n(), "row index out of range");
        p.shift(&self.m.row(i)).sub(p)
    }

    /// Directional derivative along the i-th row.
    pub fn dee(&self, i: usize, p: &MPoly) -> MPoly {
        assert!(i < self.n(), "row index out of range");
        p.directional(&self.m.row(i))
    }

    /// True iff d/dx_i (Delta_i p) = 0 for every i; otherwise the smallest
    /// failing index together with the offending polynomial.
    pub fn in_delta(&self, p: &MPoly) -> MembershipWitness {
        for i in 0..self.n() {
            let offending = self.delta(i, p).partial(i);
            if !offending.is_zero() {
                return MembershipWitness::fail(i, offending);
            }
        }
        MembershipWitness::pass()
    }

    /// True iff d/dx_i (D_i p) = 0 for every i.
    pub fn in_d(&self, p: &MPoly) -> MembershipWitness {
        for i in 0..self.n() {
            let offending = self.dee(i, p).partial(i);
            if !offending.is_zero() {
                return MembershipWitness::fail(i, offending);
            }
        }
        MembershipWitness::pass()
    }

    /// Checks Delta_i p = sum_{s=1..deg p} (-1)^s / s! * D_i^s p exactly.
    pub fn verify_expansion(&self, i: usize, p: &MPoly) -> bool {
        let lhs = self.delta(i, p);
        let mut rhs = MPoly::zero(p.nvars());
        let mut iterate = p.clone();
        let mut factorial = BigInt::one();
        let d = p.degree().unwrap_or(0);
        for s in 1..=d {
            iterate = self.dee(i, &iterate);
            factorial *= s;
            let coef = Rat::new(
                if s % 2 == 0 { BigInt::one() } else { -BigInt::one() },
                factorial.clone(),
            );
            rhs = rhs.add(&iterate.scale(&coef));
        }
        lhs == rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat2};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ctx_a2() -> OperatorContext {
        OperatorContext::new(QMatrix::from_i64_rows(&[&[2, -1], &[-1, 2]]))
    }

    fn p(text: &str, nvars: usize) -> MPoly {
        MPoly::parse(text, nvars).unwrap()
    }

    #[test]
    fn delta_examples() {
        let ctx = OperatorContext::new(QMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]));
        assert_eq!(ctx.delta(0, &p("x1^2", 2)), p("-2*x1 + 1", 2));
        assert_eq!(ctx.delta(0, &p("5", 2)), MPoly::zero(2));
        // Cartan A2 row (2,-1) shifts x1 by -2
        assert_eq!(ctx_a2().delta(0, &p("x1", 2)), p("-2", 2));
    }

    #[test]
    fn dee_examples() {
        assert_eq!(ctx_a2().dee(0, &p("x1^2", 2)), p("4*x1", 2));
        // linear a.x maps to the constant <M_i, a>
        assert_eq!(ctx_a2().dee(0, &p("3*x1 + 5*x2", 2)), p("1", 2));
        assert_eq!(ctx_a2().dee(0, &p("7", 2)), MPoly::zero(2));
    }

    #[test]
    fn delta_membership() {
        let ctx = ctx_a2();
        assert!(ctx.in_delta(&p("42", 2)).verdict);
        let w = ctx.in_delta(&p("x1^2", 2));
        assert!(!w.verdict);
        assert_eq!(w.failing_index, Some(0));
        assert_eq!(w.offending.unwrap(), p("-4", 2));
    }

    #[test]
    fn d_membership() {
        let ctx = ctx_a2();
        for text in ["42", "x1^2", "x1*x2 - 3"] {
            let q = p(text, 2);
            assert_eq!(ctx.in_delta(&q).verdict, ctx.in_d(&q).verdict);
        }
        let id3 = OperatorContext::new(QMatrix::identity(3));
        assert!(id3.in_d(&p("x1*x2*x3", 3)).verdict);
        let w = id3.in_d(&p("x1^2", 3));
        assert!(!w.verdict);
        assert_eq!(w.failing_index, Some(0));
        assert_eq!(w.offending.unwrap(), p("2", 3));
    }

    fn random_poly(rng: &mut StdRng, nvars: usize, max_deg: u32) -> MPoly {
        let mut poly = MPoly::zero(nvars);
        for _ in 0..rng.gen_range(1..8) {
            let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
            let c = rat2(rng.gen_range(-6..=6), rng.gen_range(1..=3));
            poly = poly.add(&MPoly::monomial(nvars, exps, c));
        }
        poly
    }

    fn random_matrix(rng: &mut StdRng, n: usize) -> QMatrix {
        QMatrix::from_rows(
            (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| rat2(rng.gen_range(-5..=5), rng.gen_range(1..=2)))
                        .collect()
                })
                .collect(),
        )
    }

    #[test]
    fn expansion_identity_random() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=3);
            let ctx = OperatorContext::new(random_matrix(&mut rng, n));
            let poly = random_poly(&mut rng, n, 3);
            for i in 0..n {
                assert!(ctx.verify_expansion(i, &poly));
            }
        }
        // constants and linear polynomials truncate the series
        let ctx = ctx_a2();
        assert!(ctx.verify_expansion(0, &p("9", 2)));
        assert!(ctx.verify_expansion(1, &p("x1 - 2*x2", 2)));
    }

    #[test]
    fn operators_are_linear() {
        let mut rng = StdRng::seed_from_u64(11);
        let ctx = ctx_a2();
        for _ in 0..20 {
            let a = random_poly(&mut rng, 2, 4);
            let b = random_poly(&mut rng, 2, 4);
            for i in 0..2 {
                assert_eq!(
                    ctx.delta(i, &a.add(&b)),
                    ctx.delta(i, &a).add(&ctx.delta(i, &b))
                );
                assert_eq!(ctx.dee(i, &a.add(&b)), ctx.dee(i, &a).add(&ctx.dee(i, &b)));
            }
        }
    }

    #[test]
    fn dee_iterates_commute_with_partials() {
        // polynomials free of x_j stay free of x_j under D_i iterates
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..20 {
            let ctx = OperatorContext::new(random_matrix(&mut rng, 3));
            // build a polynomial free of x2 (index 1)
            let mut poly = MPoly::zero(3);
            for _ in 0..4 {
                let exps = vec![rng.gen_range(0..=3), 0, rng.gen_range(0..=3)];
                poly = poly.add(&MPoly::monomial(3, exps, rat(rng.gen_range(1..=5))));
            }
            let mut it = poly;
            for _ in 0..3 {
                it = ctx.dee(0, &it);
                assert!(it.partial(1).is_zero());
            }
        }
    }
}

//! Randomized algebraic invariants, with independent oracles implemented
//! in test code where the library result could share a bug with itself.

use num_traits::{One, Zero};
use proptest::prelude::*;

use deltaspace::matrix::subsets_by_cardinality;
use deltaspace::mpoly::monomials_of_degree;
use deltaspace::rational::{rat, Rat};
use deltaspace::{MPoly, QMatrix};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn arb_poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), arb_rat()),
        1..6,
    )
    .prop_map(move |terms| {
        let mut p = MPoly::zero(nvars);
        for (exps, c) in terms {
            p = p.add(&MPoly::monomial(nvars, exps, c));
        }
        p
    })
}

fn arb_vec(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(arb_rat(), n)
}

fn arb_matrix(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(arb_vec(n), n).prop_map(QMatrix::from_rows)
}

/// Plain Gaussian elimination over the rationals: an independent
/// determinant oracle for the fraction-free path in the library.
fn gaussian_det(m: &QMatrix) -> Rat {
    let n = m.nrows();
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| m.row(i)).collect();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shift_composes_additively(p in arb_poly(3, 3), v in arb_vec(3), w in arb_vec(3)) {
        let sum: Vec<Rat> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
        prop_assert_eq!(p.shift(&v).shift(&w), p.shift(&sum));
    }

    #[test]
    fn directional_is_sum_of_partials(p in arb_poly(3, 3), v in arb_vec(3)) {
        let mut expected = MPoly::zero(3);
        for (j, c) in v.iter().enumerate() {
            expected = expected.add(&p.partial(j).scale(c));
        }
        prop_assert_eq!(p.directional(&v), expected);
    }

    #[test]
    fn partials_commute(p in arb_poly(3, 4), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
    }

    #[test]
    fn product_degree_adds(p in arb_poly(2, 3), q in arb_poly(2, 3)) {
        let prod = p.mul(&q);
        match (p.degree(), q.degree()) {
            (Some(a), Some(b)) => prop_assert_eq!(prod.degree(), Some(a + b)),
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn parse_render_round_trip(p in arb_poly(3, 4)) {
        let text = p.render();
        prop_assert_eq!(MPoly::parse(&text, 3).unwrap(), p);
    }

    #[test]
    fn rank_plus_nullity(m in arb_matrix(4)) {
        prop_assert_eq!(m.rank() + m.nullspace().len(), 4);
    }

    #[test]
    fn nullspace_vectors_are_in_kernel(m in arb_matrix(3)) {
        for v in m.nullspace() {
            for i in 0..3 {
                let dot: Rat = m.row(i).iter().zip(&v).map(|(a, b)| a * b).sum();
                prop_assert_eq!(dot, Rat::zero());
            }
        }
    }

    #[test]
    fn determinant_matches_gaussian_oracle(m in arb_matrix(4)) {
        prop_assert_eq!(m.determinant().unwrap(), gaussian_det(&m));
    }

    #[test]
    fn principal_minors_invariant_under_permutation_similarity(
        m in arb_matrix(3),
        swap in 0usize..3,
    ) {
        // conjugating by a transposition permutes the subsets, so the
        // multiset of principal minors is unchanged
        let perm: Vec<usize> = match swap {
            0 => vec![1, 0, 2],
            1 => vec![0, 2, 1],
            _ => vec![2, 1, 0],
        };
        let conj = QMatrix::from_rows(
            perm.iter()
                .map(|&i| perm.iter().map(|&j| m.get(i, j).clone()).collect())
                .collect(),
        );
        let minors = |q: &QMatrix| -> Vec<Rat> {
            let mut all: Vec<Rat> = subsets_by_cardinality(3)
                .iter()
                .map(|s| q.principal_minor(s).unwrap())
                .collect();
            all.sort();
            all
        };
        prop_assert_eq!(minors(&m), minors(&conj));
    }

    #[test]
    fn apolarity_pairing_gram_is_diagonal_factorial(d in 1usize..4) {
        // <y^a, x^b> = a! when a = b and 0 otherwise
        let monos = monomials_of_degree(2, d);
        for a in &monos {
            for b in &monos {
                let q = MPoly::monomial(2, a.clone(), Rat::one());
                let p = MPoly::monomial(2, b.clone(), Rat::one());
                let value = MPoly::pairing(&q, &p);
                if a == b {
                    let expected: i64 = a.iter().map(|&e| (1..=e as i64).product::<i64>()).product();
                    prop_assert_eq!(value, rat(expected));
                } else {
                    prop_assert_eq!(value, Rat::zero());
                }
            }
        }
    }
}

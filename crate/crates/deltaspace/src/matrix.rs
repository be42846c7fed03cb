//! Dense matrices over the rationals with exact elimination kernels:
//! determinants, principal minors, rank and canonical nullspaces.
//!
//! Forward elimination is fraction-free (Bareiss): each row is first scaled
//! to integer entries, and the integer elimination keeps every intermediate
//! value equal to a minor of the scaled matrix, which bounds coefficient
//! growth on the large basis systems produced by the graded-space module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rat, render_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<Rat>,
}

/// Outcome of scanning all nonempty principal minors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorsVerdict {
    pub all_nonzero: bool,
    /// A vanishing subset (0-based, sorted), smallest by cardinality then
    /// lexicographic, when `all_nonzero` is false.
    pub witness: Option<Vec<usize>>,
}

impl QMatrix {
    pub fn new(nrows: usize, ncols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), nrows * ncols, "entry count mismatch");
        QMatrix {
            nrows,
            ncols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            entries.extend(row);
        }
        QMatrix {
            nrows,
            ncols,
            entries,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(BigInt::from(v))).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMatrix {
            nrows,
            ncols,
            entries: vec![Rat::zero(); nrows * ncols],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.ncols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.ncols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        (0..self.ncols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Submatrix on the given (sorted, 0-based) row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        QMatrix::new(rows.len(), cols.len(), entries)
    }

    pub fn principal_submatrix(&self, subset: &[usize]) -> QMatrix {
        self.submatrix(subset, subset)
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.nrows)
        } else {
            Err(Error::NotSquare {
                nrows: self.nrows,
                ncols: self.ncols,
            })
        }
    }

    /// Rows scaled to integers. Returns the integer rows together with the
    /// product of the per-row scale factors (all positive).
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let mut rows = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut lcm = BigInt::one();
            for j in 0..self.ncols {
                lcm = lcm.lcm(self.get(i, j).denom());
            }
            let row: Vec<BigInt> = (0..self.ncols)
                .map(|j| {
                    let r = self.get(i, j);
                    r.numer() * (&lcm / r.denom())
                })
                .collect();
            scale *= &lcm;
            rows.push(row);
        }
        (rows, scale)
    }

    pub fn determinant(&self) -> Result<Rat> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(Rat::one());
        }
        let (mut rows, scale) = self.integer_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot_row = match (k..n).find(|&i| !rows[i][k].is_zero()) {
                Some(r) => r,
                None => return Ok(Rat::zero()),
            };
            if pivot_row != k {
                rows.swap(k, pivot_row);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &rows[i][j] * &rows[k][k] - &rows[i][k] * &rows[k][j];
                    rows[i][j] = &v / &prev;
                }
                rows[i][k] = BigInt::zero();
            }
            prev = rows[k][k].clone();
        }
        Ok(Rat::new(sign * &rows[n - 1][n - 1], scale))
    }

    /// Principal minor on a (0-based) index subset; the empty subset gives 1.
    pub fn principal_minor(&self, subset: &[usize]) -> Result<Rat> {
        let n = self.require_square()?;
        for &j in subset {
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j + 1, max: n });
            }
        }
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        self.principal_submatrix(&s).determinant()
    }

    /// Scans nonempty subsets by cardinality, then lexicographically, and
    /// reports the first vanishing principal minor if any.
    pub fn all_principal_minors_nonzero(&self) -> Result<MinorsVerdict> {
        let n = self.require_square()?;
        for subset in subsets_by_cardinality(n) {
            if self.principal_minor(&subset)?.is_zero() {
                return Ok(MinorsVerdict {
                    all_nonzero: false,
                    witness: Some(subset),
                });
            }
        }
        Ok(MinorsVerdict {
            all_nonzero: true,
            witness: None,
        })
    }

    /// Fraction-free row echelon form of the integer-scaled matrix.
    /// Returns (echelon rows, pivot column indices).
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let (mut rows, _) = self.integer_rows();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0; // current pivot row
        for col in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let pivot_row = match (r..self.nrows).find(|&i| !rows[i][col].is_zero()) {
                Some(p) => p,
                None => continue,
            };
            rows.swap(r, pivot_row);
            for i in r + 1..self.nrows {
                for j in col + 1..self.ncols {
                    let v = &rows[i][j] * &rows[r][col] - &rows[i][col] * &rows[r][j];
                    rows[i][j] = &v / &prev;
                }
                rows[i][col] = BigInt::zero();
            }
            prev = rows[r][col].clone();
            pivots.push(col);
            r += 1;
        }
        (rows, pivots)
    }

    /// Exact rank. A modular full-rank certificate short-circuits the
    /// common case where the matrix has full column rank: a nonzero minor
    /// modulo a prime is nonzero over the rationals.
    pub fn rank(&self) -> usize {
        let bound = self.nrows.min(self.ncols);
        if bound > 0 && self.rank_mod_p() == bound {
            return bound;
        }
        self.bareiss_echelon().1.len()
    }

    /// Rank of the matrix modulo a fixed 61-bit prime: a certified lower
    /// bound for the exact rank.
    pub fn rank_mod_p(&self) -> usize {
        const P: u64 = (1 << 61) - 1;
        let (rows, _) = self.integer_rows();
        let p = BigInt::from(P);
        let mut m: Vec<Vec<u64>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        let r = ((v % &p) + &p) % &p;
                        r.to_u64().expect("residue fits u64")
                    })
                    .collect()
            })
            .collect();
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % P as u128) as u64;
        let powmod = |mut b: u64, mut e: u64| {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(acc, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            acc
        };
        let mut rank = 0;
        for col in 0..self.ncols {
            if rank == self.nrows {
                break;
            }
            let Some(pr) = (rank..self.nrows).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(rank, pr);
            let inv = powmod(m[rank][col], P - 2);
            for i in rank + 1..self.nrows {
                if m[i][col] != 0 {
                    let f = mulmod(m[i][col], inv);
                    for j in col..self.ncols {
                        let sub = mulmod(f, m[rank][j]);
                        m[i][j] = (m[i][j] + P - sub) % P;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right kernel in canonical form: one vector per free
    /// column (ascending), with the free coordinate set to 1, the other
    /// free coordinates 0, and pivot coordinates solved exactly.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let bound = self.nrows.min(self.ncols);
        if bound == self.ncols && bound > 0 && self.rank_mod_p() == bound {
            return Vec::new();
        }
        let (rows, pivots) = self.bareiss_echelon();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rat::zero(); self.ncols];
            v[f] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = Rat::zero();
                for c in pc + 1..self.ncols {
                    if !v[c].is_zero() && !rows[r][c].is_zero() {
                        acc += Rat::from_integer(rows[r][c].clone()) * &v[c];
                    }
                }
                if !acc.is_zero() {
                    v[pc] = -acc / Rat::from_integer(rows[r][pc].clone());
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves A x = b exactly; `None` when the system is inconsistent.
    /// When the kernel is nontrivial, returns the solution whose free
    /// coordinates are zero.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.nrows, "rhs length mismatch");
        // Eliminate on the augmented matrix.
        let mut aug = QMatrix::zeros(self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                *aug.get_mut(i, j) = self.get(i, j).clone();
            }
            *aug.get_mut(i, self.ncols) = b[i].clone();
        }
        let (rows, pivots) = aug.bareiss_echelon();
        if pivots.last() == Some(&self.ncols) {
            return None; // pivot in the rhs column
        }
        let mut x = vec![Rat::zero(); self.ncols];
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = Rat::from_integer(rows[r][self.ncols].clone());
            for c in pc + 1..self.ncols {
                if !x[c].is_zero() && !rows[r][c].is_zero() {
                    acc -= Rat::from_integer(rows[r][c].clone()) * &x[c];
                }
            }
            x[pc] = acc / Rat::from_integer(rows[r][pc].clone());
        }
        // Rows below the pivot rows must be consistent.
        for r in pivots.len()..self.nrows {
            if !rows[r][self.ncols].is_zero() {
                return None;
            }
        }
        Some(x)
    }

    /// Matrix JSON: {"n": <int>, "rows": [["p/q", ...], ...]}.
    pub fn from_json(value: &serde_json::Value) -> Result<QMatrix> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Invalid("matrix JSON must be an object".into()))?;
        let n = obj
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Invalid("matrix JSON missing positive integer \"n\"".into()))?
            as usize;
        if n == 0 {
            return Err(Error::Invalid("matrix size must be positive".into()));
        }
        let rows_val = obj
            .get("rows")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Invalid("matrix JSON missing array \"rows\"".into()))?;
        if rows_val.len() != n {
            return Err(Error::DimMismatch {
                expected: n,
                got: rows_val.len(),
            });
        }
        let mut rows = Vec::with_capacity(n);
        for rv in rows_val {
            let arr = rv
                .as_array()
                .ok_or_else(|| Error::Invalid("matrix row must be an array".into()))?;
            if arr.len() != n {
                return Err(Error::DimMismatch {
                    expected: n,
                    got: arr.len(),
                });
            }
            let mut row = Vec::with_capacity(n);
            for ev in arr {
                let r = match ev {
                    serde_json::Value::String(s) => parse_rat(s)?,
                    serde_json::Value::Number(num) => {
                        let i = num
                            .as_i64()
                            .ok_or_else(|| Error::Invalid(format!("non-integer entry {num}")))?;
                        Rat::from_integer(BigInt::from(i))
                    }
                    other => return Err(Error::Invalid(format!("bad matrix entry {other}"))),
                };
                row.push(r);
            }
            rows.push(row);
        }
        Ok(QMatrix::from_rows(rows))
    }

    pub fn from_json_str(text: &str) -> Result<QMatrix> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse {
                pos: 0,
                msg: e.to_string(),
            })?;
        Self::from_json(&value)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| render_rat(self.get(i, j))).collect())
            .collect();
        serde_json::json!({ "n": self.nrows, "rows": rows })
    }
}

/// All nonempty subsets of {0,..,n-1}, ordered by cardinality and then
/// lexicographically within each cardinality.
pub fn subsets_by_cardinality(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat2};

    fn cartan_a2() -> QMatrix {
        QMatrix::from_i64_rows(&[&[2, -1], &[-1, 2]])
    }

    fn cyclic3() -> QMatrix {
        QMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(cartan_a2().determinant().unwrap(), rat(3));
        assert_eq!(QMatrix::identity(4).determinant().unwrap(), rat(1));
        let singular = QMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(singular.determinant().unwrap(), rat(0));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let m = QMatrix::zeros(2, 3);
        assert!(m.determinant().is_err());
    }

    #[test]
    fn principal_minors() {
        assert_eq!(cartan_a2().principal_minor(&[0, 1]).unwrap(), rat(3));
        assert_eq!(cartan_a2().principal_minor(&[]).unwrap(), rat(1));
        assert_eq!(cyclic3().principal_minor(&[0]).unwrap(), rat(0));
        assert!(cartan_a2().principal_minor(&[5]).is_err());
    }

    #[test]
    fn minors_verdicts() {
        let g2 = QMatrix::from_i64_rows(&[&[2, -1], &[-3, 2]]);
        assert!(g2.all_principal_minors_nonzero().unwrap().all_nonzero);
        let v = cyclic3().all_principal_minors_nonzero().unwrap();
        assert!(!v.all_nonzero);
        assert_eq!(v.witness, Some(vec![0]));
        assert!(QMatrix::identity(5)
            .all_principal_minors_nonzero()
            .unwrap()
            .all_nonzero);
    }

    #[test]
    fn rank_cases() {
        assert_eq!(QMatrix::identity(5).rank(), 5);
        assert_eq!(QMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(QMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]).rank(), 1);
    }

    #[test]
    fn nullspace_cases() {
        assert!(QMatrix::identity(3).nullspace().is_empty());
        let z = QMatrix::zeros(2, 3);
        assert_eq!(
            z.nullspace(),
            vec![
                vec![rat(1), rat(0), rat(0)],
                vec![rat(0), rat(1), rat(0)],
                vec![rat(0), rat(0), rat(1)],
            ]
        );
        let m = QMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(m.nullspace(), vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn rank_plus_nullity() {
        let m = QMatrix::from_rows(vec![
            vec![rat2(1, 2), rat(3), rat(-1), rat(0)],
            vec![rat(1), rat(6), rat(-2), rat(0)],
            vec![rat(0), rat(0), rat(0), rat(7)],
        ]);
        assert_eq!(m.rank() + m.nullspace().len(), m.ncols());
        for v in m.nullspace() {
            for i in 0..m.nrows() {
                let mut acc = Rat::zero();
                for j in 0..m.ncols() {
                    acc += m.get(i, j) * &v[j];
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn solve_exact() {
        let m = cartan_a2();
        let x = m.solve(&[rat(1), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        let inconsistent = QMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert!(inconsistent.solve(&[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn json_round_trip() {
        let m = QMatrix::from_rows(vec![vec![rat2(1, 2), rat(-3)], vec![rat(0), rat2(7, 5)]]);
        let back = QMatrix::from_json(&m.to_json()).unwrap();
        assert_eq!(m, back);
        assert!(QMatrix::from_json_str(r#"{"n":1,"rows":[["1/0"]]}"#).is_err());
        assert!(QMatrix::from_json_str(r#"{"n":2,"rows":[["1"]]}"#).is_err());
    }
}

//! Cartan matrices of the finite irreducible types, simple-root coordinates
//! in the fundamental-weight basis, Weyl orbits, and parabolic
//! subgroup combinatorics. All orbit geometry lives in weight coordinates.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rational::{rat, Rat};

pub const DEFAULT_ORBIT_CAP: usize = 60480;

/// Which slice of the Cartan matrix holds the coordinates of the i-th
/// simple root in the fundamental-weight basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    Row,
    Column,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Row => "row",
            Convention::Column => "column",
        }
    }
}

impl Default for Convention {
    fn default() -> Self {
        Convention::Row
    }
}

#[derive(Debug, Clone)]
pub struct CartanSystem {
    c: QMatrix,
    label: Option<String>,
    convention: Convention,
    orbit_cap: usize,
}

fn validate_cartan(c: &QMatrix) -> Result<()> {
    if !c.is_square() {
        return Err(Error::InvalidCartan("matrix must be square".into()));
    }
    let n = c.nrows();
    for i in 0..n {
        if c.get(i, i) != &rat(2) {
            return Err(Error::InvalidCartan(format!(
                "diagonal entry ({},{}) must be 2",
                i + 1,
                i + 1
            )));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if c.get(i, j) > &Rat::zero() {
                return Err(Error::InvalidCartan(format!(
                    "off-diagonal entry ({},{}) must be nonpositive",
                    i + 1,
                    j + 1
                )));
            }
            if c.get(i, j).is_zero() != c.get(j, i).is_zero() {
                return Err(Error::InvalidCartan(format!(
                    "entries ({},{}) and ({},{}) must vanish together",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    Ok(())
}

impl CartanSystem {
    /// Wraps a validated Cartan-shaped matrix (diagonal 2, nonpositive
    /// off-diagonal, symmetric zero pattern).
    pub fn from_matrix(c: QMatrix) -> Result<CartanSystem> {
        validate_cartan(&c)?;
        Ok(CartanSystem {
            c,
            label: None,
            convention: Convention::Row,
            orbit_cap: DEFAULT_ORBIT_CAP,
        })
    }

    /// Builds the standard Cartan matrix of a finite type. Labeled systems
    /// additionally assert that every principal minor is positive.
    pub fn labeled(letter: char, rank: usize) -> Result<CartanSystem> {
        let c = cartan_matrix(letter, rank)?;
        let verdict = c.all_principal_minors_nonzero()?;
        assert!(verdict.all_nonzero, "finite-type Cartan matrix has a zero minor (table bug)");
        for subset in crate::matrix::subsets_by_cardinality(c.nrows()) {
            let minor = c.principal_minor(&subset)?;
            assert!(minor > Rat::zero(), "finite-type principal minor not positive (table bug)");
        }
        let mut sys = CartanSystem::from_matrix(c)?;
        sys.label = Some(format!("{letter}{rank}"));
        Ok(sys)
    }

    /// Parses a type label such as "A3" or "G2".
    pub fn from_label(label: &str) -> Result<CartanSystem> {
        let label = label.trim();
        let mut chars = label.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::UnknownType(label.to_string()))?
            .to_ascii_uppercase();
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(label.to_string()))?;
        Self::labeled(letter, rank)
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn with_orbit_cap(mut self, cap: usize) -> Self {
        self.orbit_cap = cap;
        self
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.c
    }

    pub fn rank(&self) -> usize {
        self.c.nrows()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Coordinates of the i-th simple root in the fundamental-weight basis
    /// (0-based), under the system's convention.
    pub fn simple_root(&self, i: usize) -> Vec<Rat> {
        assert!(i < self.rank(), "root index out of range");
        match self.convention {
            Convention::Row => self.c.row(i),
            Convention::Column => self.c.col(i),
        }
    }

    /// Simple reflection in weight coordinates: s_i(v) = v - v_i * alpha_i.
    pub fn reflect(&self, i: usize, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.rank());
        let alpha = self.simple_root(i);
        v.iter()
            .zip(&alpha)
            .map(|(x, a)| x - &v[i] * a)
            .collect()
    }

    /// Breadth-first closure of a weight under all simple reflections.
    pub fn weyl_orbit(&self, lambda: &[Rat]) -> Result<BTreeSet<Vec<Rat>>> {
        assert_eq!(lambda.len(), self.rank());
        let mut orbit: BTreeSet<Vec<Rat>> = BTreeSet::new();
        let mut queue: Vec<Vec<Rat>> = vec![lambda.to_vec()];
        orbit.insert(lambda.to_vec());
        while let Some(v) = queue.pop() {
            for i in 0..self.rank() {
                let w = self.reflect(i, &v);
                if orbit.insert(w.clone()) {
                    if orbit.len() > self.orbit_cap {
                        return Err(Error::OrbitCapExceeded { cap: self.orbit_cap });
                    }
                    queue.push(w);
                }
            }
        }
        Ok(orbit)
    }

    /// Group order as the orbit size of the strictly dominant weight
    /// (1,...,1).
    pub fn weyl_order(&self) -> Result<usize> {
        let ones = vec![rat(1); self.rank()];
        Ok(self.weyl_orbit(&ones)?.len())
    }

    /// Connected components of the sub-diagram on J (0-based), each sorted,
    /// ordered by smallest element.
    pub fn dynkin_components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut remaining: BTreeSet<usize> = subset.iter().copied().collect();
        let mut components = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut comp = vec![];
            let mut stack = vec![start];
            remaining.remove(&start);
            while let Some(i) = stack.pop() {
                comp.push(i);
                let adjacent: Vec<usize> = remaining
                    .iter()
                    .copied()
                    .filter(|&j| !self.c.get(i, j).is_zero())
                    .collect();
                for j in adjacent {
                    remaining.remove(&j);
                    stack.push(j);
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// The principal subsystem on a connected index set, inheriting the
    /// convention and orbit cap.
    pub fn subsystem(&self, subset: &[usize]) -> CartanSystem {
        CartanSystem {
            c: self.c.principal_submatrix(subset),
            label: None,
            convention: self.convention,
            orbit_cap: self.orbit_cap,
        }
    }

    /// Index [W : W_J] of the parabolic subgroup on J.
    pub fn parabolic_index(&self, subset: &[usize]) -> Result<usize> {
        let total = self.weyl_order()?;
        let mut sub_order = 1usize;
        for comp in self.dynkin_components(subset) {
            sub_order *= self.subsystem(&comp).weyl_order()?;
        }
        assert_eq!(total % sub_order, 0, "parabolic order must divide group order");
        Ok(total / sub_order)
    }
}

/// Standard Cartan matrices of the finite irreducible types, with nodes
/// numbered along the chain (branch/short-root conventions match the
/// determinant table asserted in the tests).
pub fn cartan_matrix(letter: char, rank: usize) -> Result<QMatrix> {
    let n = rank;
    let bad = || Error::UnknownType(format!("{letter}{rank}"));
    let mut m = vec![vec![0i64; n]; n];
    let chain = |m: &mut Vec<Vec<i64>>| {
        for i in 0..n {
            m[i][i] = 2;
            if i + 1 < n {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
        }
    };
    match letter.to_ascii_uppercase() {
        'A' => {
            if n < 1 {
                return Err(bad());
            }
            chain(&mut m);
        }
        'B' => {
            if n < 2 {
                return Err(bad());
            }
            chain(&mut m);
            m[n - 1][n - 2] = -2;
        }
        'C' => {
            if n < 2 {
                return Err(bad());
            }
            chain(&mut m);
            m[n - 2][n - 1] = -2;
        }
        'D' => {
            if n < 4 {
                return Err(bad());
            }
            // chain on 1..n-1, with node n attached to node n-2
            for i in 0..n {
                m[i][i] = 2;
            }
            for i in 0..n - 2 {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
            m[n - 3][n - 1] = -1;
            m[n - 1][n - 3] = -1;
        }
        'E' => {
            if !(6..=8).contains(&n) {
                return Err(bad());
            }
            // Bourbaki numbering: chain 1-3-4-5-...-n, node 2 attached to 4
            for i in 0..n {
                m[i][i] = 2;
            }
            let link = |a: usize, b: usize, m: &mut Vec<Vec<i64>>| {
                m[a - 1][b - 1] = -1;
                m[b - 1][a - 1] = -1;
            };
            link(1, 3, &mut m);
            link(2, 4, &mut m);
            link(3, 4, &mut m);
            for k in 4..n {
                link(k, k + 1, &mut m);
            }
        }
        'F' => {
            if n != 4 {
                return Err(bad());
            }
            chain(&mut m);
            m[2][1] = -2;
            m[1][2] = -1;
        }
        'G' => {
            if n != 2 {
                return Err(bad());
            }
            m[0][0] = 2;
            m[0][1] = -1;
            m[1][0] = -3;
            m[1][1] = 2;
        }
        _ => return Err(bad()),
    }
    let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
    Ok(QMatrix::from_i64_rows(&rows))
}

/// (letter, rank) pairs of every finite irreducible type up to the given
/// rank bound.
pub fn all_finite_types(max_rank: usize) -> Vec<(char, usize)> {
    let mut types = Vec::new();
    for r in 1..=max_rank {
        types.push(('A', r));
    }
    for r in 2..=max_rank {
        types.push(('B', r));
    }
    for r in 2..=max_rank {
        types.push(('C', r));
    }
    for r in 4..=max_rank {
        types.push(('D', r));
    }
    for r in 6..=8.min(max_rank) {
        types.push(('E', r));
    }
    if max_rank >= 4 {
        types.push(('F', 4));
    }
    if max_rank >= 2 {
        types.push(('G', 2));
    }
    types
}

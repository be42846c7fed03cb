//! Sparse multivariate polynomials over the rationals.
//!
//! Exponent vectors are the term keys; no zero coefficient is ever stored,
//! so structural equality is polynomial equality. The degree of the zero
//! polynomial is `None`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{render_rat, Rat};

pub type Exponents = Vec<u32>;

/// Graded reverse lexicographic order with x1 > x2 > ... .
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            match x.cmp(y) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    })
}

pub fn total_degree(exps: &[u32]) -> usize {
    exps.iter().map(|&e| e as usize).sum()
}

pub fn support(exps: &[u32]) -> Vec<usize> {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, _)| i)
        .collect()
}

/// All exponent vectors of the given total degree, grevlex-descending.
pub fn monomials_of_degree(nvars: usize, degree: usize) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<Exponents>, current: &mut Vec<u32>, pos: usize, left: usize) {
        if pos + 1 == current.len() {
            current[pos] = left as u32;
            out.push(current.clone());
            return;
        }
        for e in (0..=left).rev() {
            current[pos] = e as u32;
            rec(out, current, pos + 1, left - e);
        }
        current[pos] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut out, &mut current, 0, degree);
    out.sort_by(|a, b| grevlex_cmp(b, a));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The variable x_{j+1} (0-based index).
    pub fn var(nvars: usize, j: usize) -> Self {
        assert!(j < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[j] = 1;
        Self::monomial(nvars, e, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, coef: Rat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !coef.is_zero() {
            p.terms.insert(exps, coef);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| total_degree(e));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    fn assert_same_arity(&self, other: &MPoly) {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
    }

    fn insert_term(&mut self, exps: Exponents, coef: Rat) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.assert_same_arity(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.assert_same_arity(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.assert_same_arity(other);
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(e, ca * cb);
            }
        }
        out
    }

    /// Exact partial derivative with respect to x_{j+1} (0-based).
    pub fn partial(&self, j: usize) -> MPoly {
        assert!(j < self.nvars, "variable index out of range");
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[j] -= 1;
            out.insert_term(d, c * Rat::from_integer(BigInt::from(e[j])));
        }
        out
    }

    /// Directional derivative sum_j v_j * d/dx_j.
    pub fn directional(&self, v: &[Rat]) -> MPoly {
        assert_eq!(v.len(), self.nvars, "direction length mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (j, vj) in v.iter().enumerate() {
            if !vj.is_zero() {
                out = out.add(&self.partial(j).scale(vj));
            }
        }
        out
    }

    /// The polynomial p(x - v), by per-term binomial expansion.
    pub fn shift(&self, v: &[Rat]) -> MPoly {
        assert_eq!(v.len(), self.nvars, "shift length mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            // expand prod_j (x_j - v_j)^{e_j}
            let mut term = MPoly::constant(self.nvars, c.clone());
            for (j, &ej) in e.iter().enumerate() {
                if ej == 0 {
                    continue;
                }
                let factor = MPoly::var(self.nvars, j)
                    .sub(&MPoly::constant(self.nvars, v[j].clone()));
                for _ in 0..ej {
                    term = term.mul(&factor);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn homogeneous_component(&self, d: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if total_degree(e) == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        assert_eq!(exps.len(), self.nvars);
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Action of the operator polynomial q on p: each monomial y^g of q
    /// acts as the composite partial derivative of multi-order g.
    pub fn apply_operator(q: &MPoly, p: &MPoly) -> MPoly {
        q.assert_same_arity(p);
        let mut out = MPoly::zero(p.nvars);
        for (g, cq) in &q.terms {
            for (b, cp) in &p.terms {
                if g.iter().zip(b).any(|(gi, bi)| gi > bi) {
                    continue;
                }
                let mut coef = cq * cp;
                let mut e = b.clone();
                for j in 0..p.nvars {
                    for _ in 0..g[j] {
                        coef *= Rat::from_integer(BigInt::from(e[j]));
                        e[j] -= 1;
                    }
                }
                out.insert_term(e, coef);
            }
        }
        out
    }

    /// The apolarity pairing: (q . p)(0).
    pub fn pairing(q: &MPoly, p: &MPoly) -> Rat {
        Self::apply_operator(q, p).coefficient(&vec![0; p.nvars])
    }

    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "point length mismatch");
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (j, &ej) in e.iter().enumerate() {
                for _ in 0..ej {
                    v *= &point[j];
                }
            }
            acc += v;
        }
        acc
    }

    /// Coefficient vector with respect to the given list of exponent
    /// vectors; panics if a term of `self` is not covered.
    pub fn coefficient_vector(&self, basis: &[Exponents]) -> Vec<Rat> {
        let index: BTreeMap<&Exponents, usize> =
            basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut v = vec![Rat::zero(); basis.len()];
        for (e, c) in &self.terms {
            let i = *index.get(e).expect("term outside basis");
            v[i] = c.clone();
        }
        v
    }

    /// Renders in grevlex order, highest degree first.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| grevlex_cmp(b, a));
        let mut out = String::new();
        for (idx, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let constant_term = total_degree(e) == 0;
            if !abs.is_one() || constant_term {
                factors.push(render_rat(&abs));
            }
            for (j, &ej) in e.iter().enumerate() {
                match ej {
                    0 => {}
                    1 => factors.push(format!("x{}", j + 1)),
                    _ => factors.push(format!("x{}^{}", j + 1, ej)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn parse(text: &str, nvars: usize) -> Result<MPoly> {
        Parser::new(text, nvars).parse()
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, nvars: usize) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            nvars,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn coef(&mut self) -> Result<Rat> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.bump();
            let den = self.integer()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_integer(num))
        }
    }

    /// factor := 'x' INT ('^' INT)?
    fn factor(&mut self) -> Result<(usize, u32)> {
        if self.peek() != Some(b'x') {
            return self.err("expected variable");
        }
        self.bump();
        let idx = self.integer()?;
        let idx: usize = idx
            .try_into()
            .ok()
            .filter(|&i: &usize| i >= 1 && i <= self.nvars)
            .ok_or(Error::Parse {
                pos: self.pos,
                msg: format!("variable index out of range 1..={}", self.nvars),
            })?;
        let exp = if self.peek() == Some(b'^') {
            self.bump();
            let e = self.integer()?;
            e.try_into().map_err(|_| Error::Parse {
                pos: self.pos,
                msg: "exponent too large".into(),
            })?
        } else {
            1u32
        };
        Ok((idx - 1, exp))
    }

    /// term := [coef ('*')?]? factor ('*' factor)* | coef
    fn term(&mut self) -> Result<(Exponents, Rat)> {
        let mut coef = Rat::one();
        let mut exps = vec![0u32; self.nvars];
        if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            coef = self.coef()?;
            if self.peek() == Some(b'*') {
                self.bump();
                let (j, e) = self.factor()?;
                exps[j] += e;
            } else if self.peek() == Some(b'x') {
                // implicit product like "3x1" is not in the grammar
                return self.err("expected '*' between coefficient and variable");
            } else {
                return Ok((exps, coef));
            }
        } else {
            let (j, e) = self.factor()?;
            exps[j] += e;
        }
        while self.peek() == Some(b'*') {
            self.bump();
            let (j, e) = self.factor()?;
            exps[j] += e;
        }
        Ok((exps, coef))
    }

    fn parse(mut self) -> Result<MPoly> {
        let mut poly = MPoly::zero(self.nvars);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.bump();
                -1
            }
            Some(b'+') => {
                self.bump();
                1
            }
            None => return self.err("empty polynomial"),
            _ => 1,
        };
        loop {
            let (exps, coef) = self.term()?;
            let signed = if sign < 0 { -coef } else { coef };
            poly.insert_term(exps, signed);
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.bump();
                    sign = 1;
                }
                Some(b'-') => {
                    self.bump();
                    sign = -1;
                }
                _ => return self.err("expected '+' or '-'"),
            }
        }
        Ok(poly)
    }
}

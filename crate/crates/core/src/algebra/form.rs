//! Homogeneous forms with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors. All exponent
//! vectors of a form share the same total degree, so graded-lexicographic
//! order reduces to lexicographic order with `x0 > x1 > ...`; the map is
//! ordered so iteration yields terms in that canonical order and two forms
//! are equal iff their maps are equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::arith::{denom_lcm, gcd_all, Rat};
use super::linalg::Matrix;
use crate::error::{Error, Result};

/// Exponent vector. Ordered so that `x0^3 < x0^2*x1 < ...` in map order,
/// i.e. the canonical (descending lex) printing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomForm {
    n_vars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Rat>,
}

/// How variables are spelled in the text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Vars {
    /// `x0, x1, ...`; the count is the number of variables.
    Indexed(usize),
    /// Explicit names, e.g. `["s", "t"]`.
    Named(Vec<String>),
}

impl Vars {
    pub fn binary() -> Self {
        Vars::Named(vec!["s".into(), "t".into()])
    }

    fn len(&self) -> usize {
        match self {
            Vars::Indexed(n) => *n,
            Vars::Named(v) => v.len(),
        }
    }

    fn name(&self, i: usize) -> String {
        match self {
            Vars::Indexed(_) => format!("x{i}"),
            Vars::Named(v) => v[i].clone(),
        }
    }
}

impl HomForm {
    pub fn zero(n_vars: usize, degree: u32) -> Self {
        HomForm {
            n_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        let mut f = Self::zero(n_vars, 0);
        if !c.is_zero() {
            f.terms.insert(Monomial(vec![0; n_vars]), c);
        }
        f
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Rat) -> Self {
        let n = exps.len();
        let d = exps.iter().sum();
        let mut f = Self::zero(n, d);
        if !c.is_zero() {
            f.terms.insert(Monomial(exps), c);
        }
        f
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        let mut f = Self::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                f.terms.insert(Monomial(e), c.clone());
            }
        }
        f
    }

    /// Builds a form from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        n_vars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, Rat)>,
    ) -> Result<Self> {
        let mut f = Self::zero(n_vars, degree);
        for (e, c) in terms {
            if e.len() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    got: e.len(),
                });
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::Invalid(format!(
                    "monomial of degree {} in a form of degree {degree}",
                    e.iter().sum::<u32>()
                )));
            }
            f.add_term(Monomial(e), c);
        }
        Ok(f)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Leading term in canonical order.
    pub fn leading(&self) -> Option<(&[u32], &Rat)> {
        self.terms.iter().next().map(|(m, c)| (m.0.as_slice(), c))
    }

    fn check_compatible(&self, other: &HomForm) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: other.n_vars,
            });
        }
        Ok(())
    }

    /// Sum of two forms of the same degree (a zero form of any degree is
    /// accepted as the additive identity).
    pub fn add(&self, other: &HomForm) -> Result<HomForm> {
        self.check_compatible(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Invalid(format!(
                "adding forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomForm) -> Result<HomForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomForm {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> HomForm {
        if c.is_zero() {
            return HomForm::zero(self.n_vars, self.degree);
        }
        HomForm {
            n_vars: self.n_vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &HomForm) -> Result<HomForm> {
        self.check_compatible(other)?;
        let mut out = HomForm::zero(self.n_vars, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> HomForm {
        let mut acc = HomForm::constant(self.n_vars, Rat::one());
        for _ in 0..k {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.n_vars, "evaluation point has wrong length");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(xi.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_int(&self, x: &[BigInt]) -> Rat {
        let xr: Vec<Rat> = x.iter().map(|v| Rat::from_integer(v.clone())).collect();
        self.eval(&xr)
    }

    /// Substitutes `x_i := subs[i]`. All substituted forms must share arity
    /// and degree; the result has degree `self.degree * subs degree`.
    pub fn compose(&self, subs: &[HomForm]) -> Result<HomForm> {
        if subs.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: subs.len(),
            });
        }
        let Some(first) = subs.first() else {
            return Ok(self.clone());
        };
        let m = first.n_vars;
        if let Some(bad) = subs.iter().find(|s| s.n_vars != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: bad.n_vars,
            });
        }
        let e = subs
            .iter()
            .find(|s| !s.is_zero())
            .map(|s| s.degree)
            .unwrap_or(first.degree);
        if subs.iter().any(|s| !s.is_zero() && s.degree != e) {
            return Err(Error::Invalid("substituted forms of unequal degree".into()));
        }
        // powers[i][k] = subs[i]^k
        let maxexp: Vec<u32> = (0..self.n_vars)
            .map(|i| self.terms.keys().map(|mo| mo.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<HomForm>> = subs
            .iter()
            .zip(&maxexp)
            .map(|(s, &k)| {
                let mut v = vec![HomForm::constant(m, Rat::one())];
                for j in 1..=k as usize {
                    let next = v[j - 1].mul(s).expect("same arity");
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = HomForm::zero(m, self.degree * e);
        for (mo, c) in &self.terms {
            let mut t = HomForm::constant(m, c.clone());
            for (i, &k) in mo.0.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize])?;
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Returns `form ∘ M`, i.e. substitutes `x_i := sum_j M[i][j] y_j`.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<HomForm> {
        if m.rows() != self.n_vars || m.cols() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: m.rows(),
            });
        }
        if m.determinant().is_zero() {
            return Err(Error::SingularChange);
        }
        self.substitute_rows(m)
    }

    /// Like [`substitute_linear`](Self::substitute_linear) but for any
    /// `n_vars x k` matrix (restriction to a linear subspace).
    pub fn substitute_rows(&self, m: &Matrix) -> Result<HomForm> {
        if m.rows() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: m.rows(),
            });
        }
        let subs: Vec<HomForm> = (0..m.rows()).map(|i| HomForm::linear(m.row(i))).collect();
        let mut out = self.compose(&subs)?;
        out.n_vars = m.cols();
        out.degree = self.degree;
        Ok(out)
    }

    pub fn derivative(&self, i: usize) -> HomForm {
        let mut out = HomForm::zero(self.n_vars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c * Rat::from_integer(k.into()));
        }
        out
    }

    pub fn gradient_at(&self, x: &[Rat]) -> Vec<Rat> {
        (0..self.n_vars)
            .map(|i| self.derivative(i).eval(x))
            .collect()
    }

    /// Writes the form as `sum_k c_k * x_i^k` and returns the coefficient
    /// forms `c_k` (free of `x_i`, same arity), indexed by `k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<HomForm> {
        let maxk = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
        let mut out: Vec<HomForm> = (0..=maxk)
            .map(|k| HomForm::zero(self.n_vars, self.degree - k))
            .collect();
        for (m, c) in &self.terms {
            let k = m.0[i];
            let mut e = m.0.clone();
            e[i] = 0;
            out[k as usize].add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Drops variable `i` (which must not occur).
    pub fn remove_var(&self, i: usize) -> Result<HomForm> {
        let mut out = HomForm::zero(self.n_vars - 1, self.degree);
        for (m, c) in &self.terms {
            if m.0[i] != 0 {
                return Err(Error::Invalid(format!("variable {i} still occurs")));
            }
            let mut e = m.0.clone();
            e.remove(i);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Reinterprets the form in a larger variable set via an index map.
    pub fn embed(&self, n_vars: usize, index: &[usize]) -> HomForm {
        let mut out = HomForm::zero(n_vars, self.degree);
        for (m, c) in &self.terms {
            let mut e = vec![0; n_vars];
            for (j, &k) in m.0.iter().enumerate() {
                e[index[j]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Sets variable `i` to zero.
    pub fn set_zero(&self, i: usize) -> HomForm {
        HomForm {
            n_vars: self.n_vars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[i] == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Scalar multiple with coprime integer coefficients and positive
    /// leading coefficient. Returns `(lambda, lambda * self)`.
    pub fn primitive(&self) -> (Rat, HomForm) {
        if self.is_zero() {
            return (Rat::one(), self.clone());
        }
        let l = denom_lcm(self.terms.values());
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = gcd_all(&ints);
        let mut lambda = Rat::new(l, g);
        if self
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            lambda = -lambda;
        }
        (lambda.clone(), self.scale(&lambda))
    }

    /// Integer coefficients of the primitive multiple, in canonical order.
    pub fn integer_terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        let (_, p) = self.primitive();
        p.terms
            .into_iter()
            .map(|(m, c)| (m.0, c.to_integer()))
            .collect()
    }

    /// Exact division `self / divisor`, if the quotient is a polynomial.
    pub fn divide(&self, divisor: &HomForm) -> Option<HomForm> {
        if divisor.is_zero() || self.n_vars != divisor.n_vars {
            return None;
        }
        if divisor.degree > self.degree && !self.is_zero() {
            return None;
        }
        let qdeg = self.degree.checked_sub(divisor.degree)?;
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.to_vec(), lc.clone());
        let mut rem = self.clone();
        let mut q = HomForm::zero(self.n_vars, qdeg);
        while let Some((m, c)) = rem.leading() {
            if m.iter().zip(&lm).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = m.iter().zip(&lm).map(|(a, b)| a - b).collect();
            let coef = c / &lc;
            let t = HomForm::monomial(e.clone(), coef.clone());
            q.add_term(Monomial(e), coef);
            let sub = t.mul(divisor).ok()?;
            rem = rem.sub(&sub).ok()?;
        }
        Some(q)
    }

    /// True if `self = c * other` for some nonzero rational `c`.
    pub fn proportional(&self, other: &HomForm) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.primitive().1 == other.primitive().1
    }

    // ---- text format ----

    /// Parses with variables `x0, x1, ...`; the arity is one more than the
    /// largest index that occurs (or `min_vars`, whichever is larger).
    pub fn parse(text: &str) -> Result<HomForm> {
        Self::parse_with_min_vars(text, 0)
    }

    pub fn parse_with_min_vars(text: &str, min_vars: usize) -> Result<HomForm> {
        let (poly, seen) = Parser::new(text, None).parse_all()?;
        let n = seen.max(min_vars).max(1);
        poly_to_form(text, poly, n)
    }

    /// Parses with an explicit variable set.
    pub fn parse_vars(text: &str, vars: &Vars) -> Result<HomForm> {
        let (poly, _) = Parser::new(text, Some(vars)).parse_all()?;
        poly_to_form(text, poly, vars.len())
    }

    pub fn display_with<'a>(&'a self, vars: &'a Vars) -> FormDisplay<'a> {
        FormDisplay { form: self, vars }
    }

    pub fn to_text(&self, vars: &Vars) -> String {
        self.display_with(vars).to_string()
    }
}

pub struct FormDisplay<'a> {
    form: &'a HomForm,
    vars: &'a Vars,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.form.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.vars.name(i)
                        } else {
                            format!("{}^{}", self.vars.name(i), e)
                        }
                    })
                    .collect();
            let coef_needed = vars.is_empty() || !a.is_one();
            if coef_needed {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
                if !vars.is_empty() {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", vars.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for HomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(&Vars::Indexed(self.n_vars)).fmt(f)
    }
}

// ---- parser ----

/// Sparse, not necessarily homogeneous polynomial used while parsing.
/// Exponent vectors have variable length (trailing zeros trimmed).
type Poly = BTreeMap<Vec<u32>, Rat>;

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn poly_add(a: &Poly, b: &Poly, sign: i32) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        let c = if sign < 0 { -c.clone() } else { c.clone() };
        let entry = out.entry(e.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            out.remove(e);
        }
    }
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let n = e1.len().max(e2.len());
            let e: Vec<u32> = (0..n)
                .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                .collect();
            let e = trim(e);
            let entry = out.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c1 * c2;
            if entry.is_zero() {
                out.remove(&e);
            }
        }
    }
    out
}

fn poly_const(c: Rat) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert(vec![], c);
    }
    p
}

fn poly_to_form(text: &str, poly: Poly, n_vars: usize) -> Result<HomForm> {
    let degrees: Vec<u32> = poly.keys().map(|e| e.iter().sum()).collect();
    let degree = degrees.first().copied().unwrap_or(0);
    if degrees.iter().any(|&d| d != degree) {
        let (line, column) = line_col(text, text.len());
        return Err(Error::parse(line, column, "polynomial is not homogeneous"));
    }
    let mut f = HomForm::zero(n_vars, degree);
    for (e, c) in poly {
        let mut full = e;
        if full.len() > n_vars {
            let (line, column) = line_col(text, 0);
            return Err(Error::parse(line, column, "variable index out of range"));
        }
        full.resize(n_vars, 0);
        f.add_term(Monomial(full), c);
    }
    Ok(f)
}

fn line_col(text: &str, pos: usize) -> (usize, usize) {
    let before = &text[..pos.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(pos, |nl| pos - nl - 1) + 1;
    (line, column)
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: Option<&'a Vars>,
    /// One more than the largest variable index mentioned.
    seen: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: Option<&'a Vars>) -> Self {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
            vars,
            seen: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, column) = line_col(self.text, self.pos);
        Err(Error::parse(line, column, msg))
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

    fn parse_all(mut self) -> Result<(Poly, usize)> {
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let p = self.expr()?;
        if self.peek().is_some() {
            return self.err(format!(
                "unexpected character '{}'",
                self.bytes[self.pos] as char
            ));
        }
        Ok((p, self.seen))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let t = self.term()?;
                poly_add(&Poly::new(), &t, -1)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = poly_add(&acc, &t, 1);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = poly_add(&acc, &t, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = poly_mul(&acc, &f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.power()?;
                    let c = match (f.len(), f.get(&vec![])) {
                        (1, Some(c)) => c.clone(),
                        _ => return self.err("division is only allowed by a nonzero constant"),
                    };
                    acc = poly_mul(&acc, &poly_const(Rat::one() / c));
                }
                // implicit multiplication: "2x0" or "x0 x1" is not accepted
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent after '^'");
            }
            let k: u32 = match self.text[start..self.pos].parse() {
                Ok(k) if k <= 64 => k,
                _ => return self.err("exponent too large"),
            };
            let mut acc = poly_const(Rat::one());
            for _ in 0..k {
                acc = poly_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                let a = self.power()?;
                Ok(poly_add(&Poly::new(), &a, -1))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = self.text[start..self.pos].parse().expect("digits");
                Ok(poly_const(Rat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                let idx = self.var_index(name, start)?;
                self.seen = self.seen.max(idx + 1);
                let mut e = vec![0; idx + 1];
                e[idx] = 1;
                let mut p = Poly::new();
                p.insert(e, Rat::one());
                Ok(p)
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
        }
    }

    fn var_index(&mut self, name: &str, start: usize) -> Result<usize> {
        let found = match self.vars {
            None | Some(Vars::Indexed(_)) => name
                .strip_prefix('x')
                .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| match self.vars {
                    Some(Vars::Indexed(n)) => i < *n,
                    _ => i < 64,
                }),
            Some(Vars::Named(names)) => names.iter().position(|n| n == name),
        };
        match found {
            Some(i) => Ok(i),
            None => {
                self.pos = start;
                self.err(format!("unknown variable '{name}'"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::{rat, ratio};

    fn f(s: &str) -> HomForm {
        HomForm::parse(s).unwrap()
    }

    #[test]
    fn parse_and_print_canonical() {
        let g = f("x3^3 + x0^3 + x2^3+x1^3");
        assert_eq!(g.to_string(), "x0^3 + x1^3 + x2^3 + x3^3");
        let h = f("-1/2*x0*x1 + 3*x1^2 - x0^2");
        assert_eq!(h.to_string(), "-x0^2 - 1/2*x0*x1 + 3*x1^2");
        assert_eq!(f(&h.to_string()), h);
        assert_eq!(f("(x0 + x1)^2 - x0^2 - x1^2").to_string(), "2*x0*x1");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match HomForm::parse("x0^") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(column, 4);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            HomForm::parse("x0^2 + x1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(HomForm::parse("x0 + y"), Err(Error::Parse { .. })));
    }

    #[test]
    fn binary_variables() {
        let vars = Vars::binary();
        let g = HomForm::parse_vars("s^2 - 2*t^2", &vars).unwrap();
        assert_eq!(g.to_text(&vars), "s^2 - 2*t^2");
        assert_eq!(g.n_vars(), 2);
    }

    #[test]
    fn substitute_linear_examples() {
        let id = Matrix::identity(2);
        let c = f("x0^3 + x1^3");
        assert_eq!(c.substitute_linear(&id).unwrap(), c);
        let swap = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            f("x0^2 + 0*x1^2")
                .substitute_linear(&swap)
                .unwrap()
                .to_string(),
            "x1^2"
        );
        // x0 -> x0 + x1 applied to x0^2 x1: hand expansion of (x0+x1)^2 x1
        let m = Matrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        let got = f("x0^2*x1").substitute_linear(&m).unwrap();
        assert_eq!(got, f("x0^2*x1 + 2*x0*x1^2 + x1^3"));
        let singular = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            f("x0^2*x1").substitute_linear(&singular),
            Err(Error::SingularChange)
        );
    }

    #[test]
    fn division_and_proportionality() {
        let a = HomForm::parse_with_min_vars("x0 + 2*x1", 3).unwrap();
        let b = f("x0^2 - x1*x2");
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.divide(&a).unwrap(), b);
        assert!(f("x0^3 + x1^3").divide(&f("x0 - x1")).is_none());
        assert!(ab.proportional(&ab.scale(&ratio(-3, 7))));
    }

    #[test]
    fn eval_and_gradient() {
        let g = f("x0^3 + x1^3 + x2^3 + x3^3");
        let p = [rat(1), rat(-1), rat(0), rat(0)];
        assert_eq!(g.eval(&p), rat(0));
        assert_eq!(g.gradient_at(&p), vec![rat(3), rat(3), rat(0), rat(0)]);
    }

    #[test]
    fn coefficients_in_last_variable() {
        let g = f("x0^2*x2 + x1^3 + 5*x0*x2^2");
        let cs = g.coefficients_in(2);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], f("x1^3 + 0*x2^3"));
        assert_eq!(cs[1].to_string(), "x0^2");
        assert_eq!(cs[2].to_string(), "5*x0");
    }
}

//! Univariate polynomials over Q and factorization of binary forms.
//!
//! Binary forms are handled by dehomogenizing at `t = 1`; the power of `t`
//! dividing a form accounts for the root `[1:0]`. Rational roots are found
//! exactly: real roots are isolated with Sturm sequences, and a rational root
//! `r` of a primitive integer polynomial with leading coefficient `a` always
//! has `a * r` integral, so once an isolating interval is shorter than `1/|a|`
//! at most one candidate remains to be tested.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::arith::{exact_sqrt, gcd_all, prime_divisors, Rat};
use super::form::HomForm;
use super::linalg::Matrix;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients from low to high degree,
/// with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    c: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rat::from_integer(x.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { c: vec![] }
    }

    pub fn one() -> Self {
        UniPoly {
            c: vec![Rat::one()],
        }
    }

    /// `x - r`.
    pub fn linear_root(r: &Rat) -> Self {
        UniPoly::new(vec![-r.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for a in self.c.iter().rev() {
            acc = acc * x + super::arith::rat_to_f64(a);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    self.c.get(i).cloned().unwrap_or_else(Rat::zero)
                        + o.c.get(i).cloned().unwrap_or_else(Rat::zero)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(self.c.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        UniPoly::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] / &lead;
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &coef * b;
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rat::one() / self.lead()))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Primitive integer coefficients (content removed, positive leading
    /// coefficient).
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let l = super::arith::denom_lcm(&self.c);
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| (a * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = gcd_all(&ints);
        if g.is_zero() {
            return ints;
        }
        let neg = ints.last().is_some_and(Signed::is_negative);
        ints.into_iter()
            .map(|x| if neg { -(x / &g) } else { x / &g })
            .collect()
    }

    pub fn primitive(&self) -> Self {
        UniPoly::new(
            self.integer_coeffs()
                .into_iter()
                .map(Rat::from_integer)
                .collect(),
        )
    }

    /// `p(x + a)`.
    pub fn shift(&self, a: &Rat) -> Self {
        let xa = UniPoly::new(vec![a.clone(), Rat::one()]);
        let mut acc = Self::zero();
        for coef in self.c.iter().rev() {
            acc = acc.mul(&xa).add(&UniPoly::new(vec![coef.clone()]));
        }
        acc
    }

    /// `x^deg * p(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        UniPoly::new(c)
    }

    /// Square-free decomposition (Yun): returns `(factor, multiplicity)`
    /// with monic, pairwise coprime, square-free factors.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().expect("nonempty").is_zero() {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        seq
    }

    /// Bound strictly larger than the absolute value of every root.
    pub fn root_bound(&self) -> Rat {
        let lead = self.lead().abs();
        let m = self.c[..self.c.len() - 1]
            .iter()
            .map(|a| a.abs() / &lead)
            .max()
            .unwrap_or_else(Rat::zero);
        m + Rat::one()
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let sf = self.div_rem(&self.gcd(&self.derivative())).0;
        let seq = sf.sturm_sequence();
        let r = sf.root_bound();
        sign_changes(&seq, &-r.clone()).saturating_sub(sign_changes(&seq, &r))
    }

    /// Exact rational roots of the polynomial (each listed once).
    pub fn rational_roots(&self) -> Vec<Rat> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return roots;
        }
        // work on the square-free part
        let mut p = self.div_rem(&self.gcd(&self.derivative())).0.primitive();
        'restart: loop {
            if p.degree().unwrap_or(0) == 0 {
                break;
            }
            if p.c[0].is_zero() {
                roots.push(Rat::zero());
                p = p.div_rem(&UniPoly::linear_root(&Rat::zero())).0.primitive();
                continue;
            }
            let lead = p.lead().abs();
            let seq = p.sturm_sequence();
            let r = p.root_bound();
            let mut stack = vec![(-r.clone(), r)];
            while let Some((a, b)) = stack.pop() {
                let n = sign_changes(&seq, &a).saturating_sub(sign_changes(&seq, &b));
                if n == 0 {
                    continue;
                }
                if n == 1 && (&b - &a) * &lead < Rat::new(1.into(), 2.into()) {
                    let lo = (&a * &lead).ceil().to_integer();
                    let hi = (&b * &lead).floor().to_integer();
                    let mut k = lo;
                    while k <= hi {
                        let cand = Rat::new(k.clone(), lead.to_integer());
                        if p.eval(&cand).is_zero() {
                            roots.push(cand.clone());
                            p = p.div_rem(&UniPoly::linear_root(&cand)).0.primitive();
                            continue 'restart;
                        }
                        k += 1;
                    }
                    continue;
                }
                let mid = (&a + &b) / Rat::from_integer(2.into());
                if p.eval(&mid).is_zero() {
                    roots.push(mid.clone());
                    p = p.div_rem(&UniPoly::linear_root(&mid)).0.primitive();
                    continue 'restart;
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
            break;
        }
        roots.sort();
        roots
    }

    /// Approximations of the real roots (distinct), ascending.
    pub fn real_roots_f64(&self, tol: &Rat) -> Vec<Rat> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.div_rem(&self.gcd(&self.derivative())).0;
        let seq = p.sturm_sequence();
        let r = p.root_bound();
        let mut stack = vec![(-r.clone(), r)];
        while let Some((a, b)) = stack.pop() {
            let n = sign_changes(&seq, &a).saturating_sub(sign_changes(&seq, &b));
            if n == 0 {
                continue;
            }
            if p.eval(&b).is_zero() {
                out.push(b.clone());
            }
            if n == 1 && &b - &a < *tol {
                if !p.eval(&b).is_zero() {
                    out.push((&a + &b) / Rat::from_integer(2.into()));
                }
                continue;
            }
            let mid = (&a + &b) / Rat::from_integer(2.into());
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        out.sort();
        out.dedup();
        out
    }

    /// Disjoint isolating intervals `(a, b]` of the distinct real roots,
    /// ascending; an exact rational root is reported as `(r, r)`.
    pub fn real_root_intervals(&self) -> Vec<(Rat, Rat)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.div_rem(&self.gcd(&self.derivative())).0;
        let seq = p.sturm_sequence();
        let r = p.root_bound();
        let mut stack = vec![(-r.clone(), r)];
        while let Some((a, b)) = stack.pop() {
            let n = sign_changes(&seq, &a).saturating_sub(sign_changes(&seq, &b));
            if n == 0 {
                continue;
            }
            if p.eval(&b).is_zero() {
                out.push((b.clone(), b.clone()));
                if n == 1 {
                    continue;
                }
            }
            if n == 1 {
                out.push((a, b));
                continue;
            }
            let mid = (&a + &b) / Rat::from_integer(2.into());
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        out.sort();
        out.dedup();
        out
    }

    /// Shrinks an isolating interval `(a, b]` of a simple root until
    /// `b - a <= width`, by bisection on sign.
    pub fn refine_root(&self, a: &Rat, b: &Rat, width: &Rat) -> (Rat, Rat) {
        let (mut a, mut b) = (a.clone(), b.clone());
        if a == b {
            return (a, b);
        }
        let sb = self.eval(&b);
        if sb.is_zero() {
            return (b.clone(), b);
        }
        let two = Rat::from_integer(2.into());
        while &b - &a > *width {
            let mid = (&a + &b) / &two;
            let sm = self.eval(&mid);
            if sm.is_zero() {
                return (mid.clone(), mid);
            }
            if sm.is_positive() == sb.is_positive() {
                b = mid;
            } else {
                a = mid;
            }
        }
        (a, b)
    }

    /// Resultant via the Sylvester determinant.
    pub fn resultant(&self, o: &Self) -> Rat {
        let (Some(m), Some(n)) = (self.degree(), o.degree()) else {
            return Rat::zero();
        };
        if m + n == 0 {
            return Rat::one();
        }
        let size = m + n;
        let mut s = Matrix::zeros(size, size);
        for i in 0..n {
            for (j, a) in self.c.iter().rev().enumerate() {
                s[(i, i + j)] = a.clone();
            }
        }
        for i in 0..m {
            for (j, b) in o.c.iter().rev().enumerate() {
                s[(n + i, i + j)] = b.clone();
            }
        }
        s.determinant()
    }

    pub fn discriminant(&self) -> Rat {
        self.resultant(&self.derivative())
    }
}

fn sign_changes(seq: &[UniPoly], x: &Rat) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

// ---- binary forms ----

/// Dehomogenizes a binary form at `t = 1`; also returns the power of `t`
/// dividing the form (the multiplicity of the root `[1:0]`).
pub fn dehomogenize(f: &HomForm) -> (UniPoly, u32) {
    assert_eq!(f.n_vars(), 2, "binary form expected");
    let d = f.degree() as usize;
    let mut c = vec![Rat::zero(); d + 1];
    for (e, a) in f.terms() {
        c[e[0] as usize] = a.clone();
    }
    let p = UniPoly::new(c);
    let deg = p.degree().map_or(0, |x| x as u32);
    let mult = if p.is_zero() { 0 } else { d as u32 - deg };
    (p, mult)
}

/// Homogenizes `p(s)` to a binary form of degree `d >= deg p`.
pub fn homogenize(p: &UniPoly, d: u32) -> HomForm {
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| (vec![i as u32, d - i as u32], a.clone()));
    HomForm::from_terms(2, d, terms).expect("valid binary terms")
}

/// Root data exposed by a factor of degree at most two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootData {
    /// The root `[s:t]`, primitive integers.
    Rational { s: BigInt, t: BigInt },
    /// Irreducible quadratic `a s^2 + b s t + c t^2` with discriminant
    /// `b^2 - 4ac` (not a square).
    Quadratic {
        a: BigInt,
        b: BigInt,
        c: BigInt,
        disc: BigInt,
    },
    /// Irreducible of degree three or four.
    Higher { degree: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryFactor {
    /// Primitive integral factor.
    pub form: HomForm,
    pub multiplicity: u32,
    pub root: RootData,
}

impl BinaryFactor {
    pub fn degree(&self) -> u32 {
        self.form.degree()
    }
}

fn root_form(s: &BigInt, t: &BigInt) -> HomForm {
    // t*S - s*T vanishes at [s:t]
    HomForm::linear(&[Rat::from_integer(t.clone()), Rat::from_integer(-s.clone())])
        .primitive()
        .1
}

fn factor_from_uni(p: &UniPoly, mult: u32) -> BinaryFactor {
    let d = p.degree().expect("nonconstant") as u32;
    let form = homogenize(p, d).primitive().1;
    let ic = p.integer_coeffs();
    let root = match d {
        1 => {
            // a1 s + a0 = 0 -> s/t = -a0/a1
            let (s, t) = (-ic[0].clone(), ic[1].clone());
            let g = s.gcd(&t);
            let (mut s, mut t) = (s / &g, t / &g);
            if t.is_negative() || (t.is_zero() && s.is_negative()) {
                s = -s;
                t = -t;
            }
            RootData::Rational { s, t }
        }
        2 => {
            let (c, b, a) = (ic[0].clone(), ic[1].clone(), ic[2].clone());
            let disc = &b * &b - BigInt::from(4) * &a * &c;
            RootData::Quadratic { a, b, c, disc }
        }
        _ => RootData::Higher { degree: d },
    };
    BinaryFactor {
        form,
        multiplicity: mult,
        root,
    }
}

/// Splits a monic-izable integer quartic without rational roots into two
/// quadratics over Q when possible.
fn split_quartic(p: &UniPoly) -> Result<Option<(UniPoly, UniPoly)>> {
    let ic = p.integer_coeffs();
    let a4 = ic[4].clone();
    // q(y) = a4^3 p(y / a4) is monic with integer coefficients
    let e = &ic[0] * a4.pow(3);
    let d = &ic[1] * a4.pow(2);
    let c = &ic[2] * &a4;
    let b = ic[3].clone();
    if e.is_zero() {
        return Ok(None);
    }
    if e.magnitude().bits() > 100 {
        return Err(Error::Unsupported(
            "quartic constant term too large to enumerate divisors".into(),
        ));
    }
    let primes = prime_divisors(&e)
        .ok_or_else(|| Error::Unsupported("cannot factor quartic constant term".into()))?;
    let mut divisors = vec![BigInt::one()];
    for p in primes {
        let pb = BigInt::from(p);
        let (k, _) = super::arith::split_valuation(&e, p);
        let mut next = Vec::new();
        for dv in &divisors {
            let mut pw = BigInt::one();
            for _ in 0..=k {
                next.push(dv * &pw);
                pw *= &pb;
            }
        }
        divisors = next;
    }
    for v0 in divisors {
        for v in [v0.clone(), -v0] {
            let z = &e / &v;
            // u + w = b, uw = c - v - z
            let s = &b;
            let pr = &c - &v - &z;
            let disc = s * s - BigInt::from(4) * &pr;
            let Some(r) = exact_sqrt(&disc) else { continue };
            if !(s + &r).is_even() {
                continue;
            }
            let u: BigInt = (s + &r) / 2;
            let w: BigInt = (s - &r) / 2;
            if &u * &z + &w * &v != d {
                continue;
            }
            // y^2 + u y + v with y = a4 x
            let a4r = Rat::from_integer(a4.clone());
            let f1 = UniPoly::new(vec![
                Rat::from_integer(v.clone()),
                Rat::from_integer(u.clone()) * &a4r,
                &a4r * &a4r,
            ]);
            let f2 = UniPoly::new(vec![
                Rat::from_integer(z.clone()),
                Rat::from_integer(w.clone()) * &a4r,
                &a4r * &a4r,
            ]);
            return Ok(Some((f1.primitive(), f2.primitive())));
        }
    }
    Ok(None)
}

/// Factors a nonzero binary form of degree at most four into irreducible
/// factors over Q with multiplicities. The product of `factor^mult` equals
/// the input up to a rational scalar.
pub fn factor_binary_form(f: &HomForm) -> Result<Vec<BinaryFactor>> {
    if f.n_vars() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: f.n_vars(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (p, tmult) = dehomogenize(f);
    let mut out = Vec::new();
    if tmult > 0 {
        out.push(BinaryFactor {
            form: HomForm::var(2, 1),
            multiplicity: tmult,
            root: RootData::Rational {
                s: BigInt::one(),
                t: BigInt::zero(),
            },
        });
    }
    for (sf, mult) in p.squarefree_decomposition() {
        let mut rest = sf.clone();
        for r in sf.rational_roots() {
            let lin = UniPoly::linear_root(&r);
            rest = rest.div_rem(&lin).0;
            out.push(factor_from_uni(&lin, mult));
        }
        match rest.degree().unwrap_or(0) {
            0 => {}
            2 | 3 => out.push(factor_from_uni(&rest, mult)),
            4 => match split_quartic(&rest)? {
                Some((a, b)) => {
                    out.push(factor_from_uni(&a, mult));
                    out.push(factor_from_uni(&b, mult));
                }
                None => out.push(factor_from_uni(&rest, mult)),
            },
            d => {
                return Err(Error::Unsupported(format!(
                    "irreducible part of degree {d} (only degree <= 4 is handled)"
                )))
            }
        }
    }
    out.sort_by_key(|a| (a.degree(), a.form.to_string()));
    Ok(out)
}

/// Greatest common divisor of binary forms (primitive, positive leading
/// coefficient). The gcd with a zero form is the other form.
pub fn binary_gcd(f: &HomForm, g: &HomForm) -> HomForm {
    if f.is_zero() {
        return g.primitive().1;
    }
    if g.is_zero() {
        return f.primitive().1;
    }
    let (pf, tf) = dehomogenize(f);
    let (pg, tg) = dehomogenize(g);
    let u = pf.gcd(&pg);
    let tm = tf.min(tg);
    let d = u.degree().unwrap_or(0) as u32;
    let h = homogenize(&u, d);
    let t = HomForm::var(2, 1).pow(tm);
    h.mul(&t).expect("binary").primitive().1
}

/// Rational roots `[s:t]` of a nonzero binary form, primitive integers.
pub fn binary_rational_roots(f: &HomForm) -> Vec<(BigInt, BigInt)> {
    let (p, tm) = dehomogenize(f);
    let mut out = Vec::new();
    if tm > 0 {
        out.push((BigInt::one(), BigInt::zero()));
    }
    for r in p.rational_roots() {
        out.push((r.numer().clone(), r.denom().clone()));
    }
    out
}

/// Value of a binary form at `[s:t]`.
pub fn eval_binary(f: &HomForm, s: &BigInt, t: &BigInt) -> Rat {
    f.eval_int(&[s.clone(), t.clone()])
}

/// Vanishing order of a binary form at the rational point `[s:t]`.
pub fn order_at(f: &HomForm, s: &BigInt, t: &BigInt) -> u32 {
    if f.is_zero() {
        return u32::MAX;
    }
    let lin = root_form(s, t);
    let mut g = f.clone();
    let mut k = 0;
    while let Some(q) = g.divide(&lin) {
        g = q;
        k += 1;
    }
    k
}

pub fn to_u32(x: &BigInt) -> Option<u32> {
    x.to_u32()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::{big, rat, ratio};
    use crate::algebra::form::Vars;

    fn bf(s: &str) -> HomForm {
        HomForm::parse_vars(s, &Vars::binary()).unwrap()
    }

    fn product(factors: &[BinaryFactor]) -> HomForm {
        let mut acc = HomForm::constant(2, rat(1));
        for f in factors {
            acc = acc.mul(&f.form.pow(f.multiplicity)).unwrap();
        }
        acc
    }

    #[test]
    fn factor_split_product() {
        let fs = factor_binary_form(&bf("s*t")).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|f| f.multiplicity == 1 && f.degree() == 1));
        assert!(product(&fs).proportional(&bf("s*t")));
    }

    #[test]
    fn factor_sum_of_squares_is_irreducible() {
        let fs = factor_binary_form(&bf("s^2 + t^2")).unwrap();
        assert_eq!(fs.len(), 1);
        match &fs[0].root {
            RootData::Quadratic { disc, .. } => assert_eq!(disc, &big(-4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn factor_cube_root_of_two() {
        // candidates from the rational root theorem: ±1, ±2 (t = 1)
        let f = bf("s^3 - 2*t^3");
        for cand in [1, -1, 2, -2] {
            assert_ne!(eval_binary(&f, &big(cand), &big(1)), rat(0));
        }
        let fs = factor_binary_form(&f).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].root, RootData::Higher { degree: 3 });
    }

    #[test]
    fn factor_with_multiplicity_and_infinity() {
        let f = bf("(s - 2*t)^2*(3*s + t)*t");
        let fs = factor_binary_form(&f).unwrap();
        assert!(product(&fs).proportional(&f));
        let mults: Vec<u32> = fs.iter().map(|x| x.multiplicity).collect();
        assert_eq!(mults.iter().sum::<u32>(), 4);
        assert!(fs.iter().any(|x| x.root
            == RootData::Rational {
                s: big(1),
                t: big(0)
            }));
        assert!(fs.iter().any(|x| x.root
            == RootData::Rational {
                s: big(2),
                t: big(1)
            }
            && x.multiplicity == 2));
        assert!(fs.iter().any(|x| x.root
            == RootData::Rational {
                s: big(-1),
                t: big(3)
            }));
    }

    #[test]
    fn quartic_into_quadratics() {
        let f = bf("(s^2 - 2*t^2)*(s^2 + s*t + 3*t^2)");
        let fs = factor_binary_form(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|x| x.degree() == 2));
        assert!(product(&fs).proportional(&f));
        let irreducible = bf("s^4 + t^4");
        assert_eq!(factor_binary_form(&irreducible).unwrap().len(), 1);
    }

    #[test]
    fn rational_roots_with_large_leading_coefficient() {
        // (1001 x - 7)(x^2 + 1)(x + 5/3)
        let p = UniPoly::new(vec![ratio(-7, 1), rat(1001)])
            .mul(&UniPoly::from_ints(&[1, 0, 1]))
            .mul(&UniPoly::new(vec![ratio(5, 3), rat(1)]));
        assert_eq!(p.rational_roots(), vec![ratio(-5, 3), ratio(7, 1001)]);
        assert_eq!(p.count_real_roots(), 2);
    }

    #[test]
    fn discriminant_of_quadratic() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(p.discriminant(), rat(-8));
    }

    #[test]
    fn gcd_of_binary_forms() {
        let g = binary_gcd(&bf("s^2*t - t^3"), &bf("s^2 + s*t"));
        assert_eq!(g, bf("s + t"));
        let g2 = binary_gcd(&bf("t^2*s"), &bf("t*s^2 + t^3"));
        assert_eq!(g2, bf("t"));
    }

    #[test]
    fn orders() {
        let f = bf("s^3*t - s^2*t^2");
        assert_eq!(order_at(&f, &big(0), &big(1)), 2);
        assert_eq!(order_at(&f, &big(1), &big(1)), 1);
        assert_eq!(order_at(&f, &big(1), &big(0)), 1);
    }
}

//! Sparse multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arrangement::var_name;
use crate::rational::{parse_rational, Rational};

/// A polynomial in `nvars` variables, stored as exponent vector → coefficient
/// with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// All exponent vectors of total degree `d` in `n` variables, with the
/// first variable's exponent decreasing fastest (graded lex order).
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, d, &mut vec![0; n], &mut out);
    out
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True for the zero polynomial and for polynomials whose terms all
    /// share one total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^exps`.
    pub fn shift(&self, exps: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), x.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    for _ in 0..k {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    /// Substitutes `x_j := replacement`, where `replacement` is a polynomial
    /// in the same variables.
    pub fn substitute(&self, j: usize, replacement: &Poly) -> Poly {
        let mut powers = vec![Poly::one(self.nvars)];
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[j] as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * replacement;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[j] = 0;
            for (re, rc) in powers[k].shift(&rest).terms {
                out.add_term(re, rc * c);
            }
        }
        out
    }

    /// Whether `α^m` divides `self`, for a nonzero linear form `α`.
    ///
    /// Writes the polynomial in coordinates where `α` replaces its pivot
    /// variable and checks that every term carries `α` to at least the
    /// `m`-th power.
    pub fn divisible_by_power(&self, alpha: &[Rational], m: u32) -> bool {
        if m == 0 || self.is_zero() {
            return true;
        }
        let (j, inverse) = pivot_inverse(alpha);
        let q = self.substitute(j, &inverse);
        q.terms.keys().all(|e| e[j] >= m)
    }

    /// Exact quotient by `α^m`, or `None` when it does not divide.
    pub fn div_by_power(&self, alpha: &[Rational], m: u32) -> Option<Poly> {
        let (j, inverse) = pivot_inverse(alpha);
        let q = self.substitute(j, &inverse);
        let mut shifted = Poly::zero(self.nvars);
        for (e, c) in q.terms {
            if e[j] < m {
                return None;
            }
            let mut e = e;
            e[j] -= m;
            shifted.add_term(e, c);
        }
        Some(shifted.substitute(j, &Poly::linear(alpha)))
    }
}

/// For `α` with pivot `j`, the expression of `x_j` through `y = α` and the
/// remaining variables, with `y` stored in slot `j`.
pub(crate) fn pivot_inverse(alpha: &[Rational]) -> (usize, Poly) {
    let j = alpha
        .iter()
        .position(|a| !a.is_zero())
        .expect("linear forms are nonzero");
    let inv = alpha[j].recip();
    let coeffs: Vec<Rational> = alpha
        .iter()
        .enumerate()
        .map(|(k, a)| if k == j { inv.clone() } else { -(a * &inv) })
        .collect();
    (j, Poly::linear(&coeffs))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest degree first, then graded lex
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let a = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|&(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let v = var_name(i, self.nvars);
                    if p == 1 {
                        v
                    } else {
                        format!("{v}^{p}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<(Vec<u32>, String)>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut p = Poly::zero(repr.nvars);
        for (e, c) in repr.terms {
            if e.len() != repr.nvars {
                return Err(serde::de::Error::custom("exponent vector length differs from nvars"));
            }
            let c = parse_rational(&c).ok_or_else(|| serde::de::Error::custom(format!("bad rational {c:?}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

//! Central, affine and multi-arrangements, plus the coordinate changes that
//! move between them: deconing, Ziegler restriction and localization.
//!
//! Coordinate conventions. For a hyperplane `H0` with form `α`, let `j` be the
//! first index with `α_j ≠ 0`. Both the deconing and the Ziegler restriction
//! with respect to `H0` use the coordinates `x_k, k ≠ j` (in their original
//! order); `x_j` is eliminated through `α`. The deconing is the slice
//! `α = 1`, the restriction is the slice `α = 0`, so a flat of the deconing
//! and its direction space live in the same coordinates.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Flat;
use crate::linalg::{self, Echelon};
use crate::rational::{primitive_integer_vector, Rational};

/// A nonzero linear form stored as a primitive integer vector with positive
/// leading entry, so that equal hyperplanes have equal forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<BigInt>,
}

impl LinearForm {
    /// Normalizes a rational vector. `None` for the zero vector.
    pub fn from_rationals(v: &[Rational]) -> Option<Self> {
        primitive_integer_vector(v).map(|coeffs| LinearForm { coeffs })
    }

    pub fn from_integers(v: &[i64]) -> Option<Self> {
        let q: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x.into())).collect();
        Self::from_rationals(&q)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }

    /// Index of the first nonzero coefficient.
    pub fn pivot(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("linear forms are nonzero")
    }
}

pub(crate) fn var_name(i: usize, n: usize) -> String {
    if n <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

pub(crate) fn write_linear(f: &mut fmt::Formatter<'_>, coeffs: &[Rational]) -> fmt::Result {
    let n = coeffs.len();
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let a = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
        }
        first = false;
        if a == Rational::from_integer(1.into()) {
            write!(f, "{}", var_name(i, n))?;
        } else {
            write!(f, "{}{}", a, var_name(i, n))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.to_rationals())
    }
}

/// Anything whose hyperplanes can be written as `a·x = c` in `dim`
/// coordinates. Lattice construction and the oracles are generic over this.
pub trait Arrangement {
    fn ambient_dim(&self) -> usize;
    fn hyperplane_count(&self) -> usize;
    /// `[a_1, …, a_n, c]` for the hyperplane `a·x = c`.
    fn augmented_row(&self, index: usize) -> Vec<Rational>;

    fn augmented_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.hyperplane_count()).map(|i| self.augmented_row(i)).collect()
    }
}

/// A simple central arrangement: distinct linear hyperplanes through the
/// origin of `Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralArrangement {
    dim: usize,
    forms: Vec<LinearForm>,
}

/// Normalizes raw rational vectors into a central arrangement, preserving
/// their order.
pub fn canonicalize(raw: &[Vec<Rational>], dim: usize) -> Result<CentralArrangement> {
    let mut forms = Vec::with_capacity(raw.len());
    let mut seen: HashMap<LinearForm, usize> = HashMap::new();
    for (index, v) in raw.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        let form = LinearForm::from_rationals(v).ok_or(Error::ZeroForm { index })?;
        if let Some(&first) = seen.get(&form) {
            return Err(Error::DuplicateHyperplane { first, second: index });
        }
        seen.insert(form.clone(), index);
        forms.push(form);
    }
    Ok(CentralArrangement { dim, forms })
}

impl CentralArrangement {
    pub fn from_forms(dim: usize, forms: Vec<LinearForm>) -> Result<Self> {
        let raw: Vec<Vec<Rational>> = forms.iter().map(LinearForm::to_rationals).collect();
        canonicalize(&raw, dim)
    }

    /// Convenience constructor for integer coefficient rows.
    pub fn from_integer_rows(dim: usize, rows: &[&[i64]]) -> Result<Self> {
        let raw: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        canonicalize(&raw, dim)
    }

    pub fn empty(dim: usize) -> Self {
        CentralArrangement { dim, forms: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn form(&self, index: usize) -> Result<&LinearForm> {
        self.forms.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.forms.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Codimension of the center.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rational>> = self.forms.iter().map(LinearForm::to_rationals).collect();
        linalg::rank(&rows, self.dim)
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    /// The sub-arrangement on the given indices, in that order.
    pub fn subarrangement(&self, indices: &[usize]) -> CentralArrangement {
        CentralArrangement {
            dim: self.dim,
            forms: indices.iter().map(|&i| self.forms[i].clone()).collect(),
        }
    }
}

impl Arrangement for CentralArrangement {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn hyperplane_count(&self) -> usize {
        self.forms.len()
    }

    fn augmented_row(&self, index: usize) -> Vec<Rational> {
        let mut row = self.forms[index].to_rationals();
        row.push(Rational::zero());
        row
    }
}

impl fmt::Display for CentralArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, form) in self.forms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{form}")?;
        }
        write!(f, "}}")
    }
}

/// The affine hyperplane `form · x = constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineHyperplane {
    pub form: LinearForm,
    pub constant: Rational,
}

impl AffineHyperplane {
    /// Normalizes `a·x = c`. `None` when `a` is zero.
    pub fn new(linear: &[Rational], constant: Rational) -> Option<Self> {
        let form = LinearForm::from_rationals(linear)?;
        let p = form.pivot();
        // form = linear * s with s = form[p] / linear[p]
        let s = Rational::from_integer(form.coeffs()[p].clone()) / &linear[p];
        Some(AffineHyperplane {
            form,
            constant: constant * s,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineArrangement {
    dim: usize,
    hyperplanes: Vec<AffineHyperplane>,
}

impl AffineArrangement {
    pub fn new(dim: usize, hyperplanes: Vec<AffineHyperplane>) -> Result<Self> {
        let mut seen: HashMap<&AffineHyperplane, usize> = HashMap::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.form.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: h.form.dim(),
                });
            }
            if let Some(&first) = seen.get(h) {
                return Err(Error::DuplicateHyperplane { first, second: i });
            }
            seen.insert(h, i);
        }
        Ok(AffineArrangement { dim, hyperplanes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[AffineHyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }
}

impl Arrangement for AffineArrangement {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn hyperplane_count(&self) -> usize {
        self.hyperplanes.len()
    }

    fn augmented_row(&self, index: usize) -> Vec<Rational> {
        let h = &self.hyperplanes[index];
        let mut row = h.form.to_rationals();
        row.push(h.constant.clone());
        row
    }
}

impl fmt::Display for AffineArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} = {}", h.form, h.constant)?;
        }
        write!(f, "}}")
    }
}

/// A central arrangement with a nonnegative multiplicity per hyperplane.
///
/// Hyperplanes of multiplicity zero stay in the base but impose no
/// condition on derivations and do not appear in `Q(A, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiarrangement {
    base: CentralArrangement,
    mult: Vec<u32>,
}

impl Multiarrangement {
    pub fn new(base: CentralArrangement, mult: Vec<u32>) -> Result<Self> {
        if mult.len() != base.len() {
            return Err(Error::DimensionMismatch {
                expected: base.len(),
                found: mult.len(),
            });
        }
        Ok(Multiarrangement { base, mult })
    }

    pub fn simple(base: CentralArrangement) -> Self {
        let mult = vec![1; base.len()];
        Multiarrangement { base, mult }
    }

    pub fn base(&self) -> &CentralArrangement {
        &self.base
    }

    pub fn mult(&self) -> &[u32] {
        &self.mult
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `|m|`.
    pub fn total(&self) -> u64 {
        self.mult.iter().map(|&m| u64::from(m)).sum()
    }

    /// Indices of hyperplanes with positive multiplicity.
    pub fn support_indices(&self) -> Vec<usize> {
        (0..self.mult.len()).filter(|&i| self.mult[i] > 0).collect()
    }

    /// The multiarrangement restricted to its positive-multiplicity
    /// hyperplanes, with the original indices.
    pub fn support(&self) -> (Multiarrangement, Vec<usize>) {
        let idx = self.support_indices();
        let m = Multiarrangement {
            base: self.base.subarrangement(&idx),
            mult: idx.iter().map(|&i| self.mult[i]).collect(),
        };
        (m, idx)
    }

    /// Rank of the support.
    pub fn rank(&self) -> usize {
        self.support().0.base.rank()
    }

    /// The support, localized at its center and written in
    /// `rank` coordinates.
    pub fn essentialization(&self) -> Multiarrangement {
        let (support, _) = self.support();
        let rows: Vec<Vec<Rational>> = support.base.forms.iter().map(LinearForm::to_rationals).collect();
        let center = Echelon::from_rows(self.dim(), rows).into_rows();
        let all: Vec<usize> = (0..support.base.len()).collect();
        quotient_by_flat(&support, &center, &all)
    }
}

impl fmt::Display for Multiarrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (form, m)) in self.base.forms.iter().zip(&self.mult).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({form})^{m}")?;
        }
        write!(f, "}}")
    }
}

/// Splits `β` along `α`: returns `(c, s)` with `β = Σ_{k≠j} c_k x_k + s·α`
/// where `j` is the pivot of `α`.
fn split_along(alpha: &LinearForm, beta: &LinearForm) -> (Vec<Rational>, Rational) {
    let j = alpha.pivot();
    let a = alpha.to_rationals();
    let b = beta.to_rationals();
    let s = &b[j] / &a[j];
    let c = (0..a.len()).filter(|&k| k != j).map(|k| &b[k] - &s * &a[k]).collect();
    (c, s)
}

/// The affine arrangement `A ∩ {α_{h0} = 1}` in the coordinates described
/// in the module docs.
pub fn decone(a: &CentralArrangement, h0: usize) -> Result<AffineArrangement> {
    let alpha = a.form(h0)?;
    let hyperplanes = a
        .forms
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != h0)
        .map(|(_, beta)| {
            let (c, s) = split_along(alpha, beta);
            AffineHyperplane::new(&c, -s).expect("distinct hyperplanes stay non-parallel to H0")
        })
        .collect();
    AffineArrangement::new(a.dim - 1, hyperplanes)
}

/// The Ziegler restriction onto `H_{h0}`: distinct restrictions, in order of
/// first appearance, weighted by fiber size.
pub fn ziegler_restriction(a: &CentralArrangement, h0: usize) -> Result<Multiarrangement> {
    Ok(ziegler_with_fibers(a, h0)?.0)
}

/// Ziegler restriction together with, for each restricted hyperplane, the
/// indices of `a` that restrict onto it.
pub fn ziegler_with_fibers(a: &CentralArrangement, h0: usize) -> Result<(Multiarrangement, Vec<Vec<usize>>)> {
    if a.dim < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: a.dim });
    }
    let alpha = a.form(h0)?;
    let mut forms: Vec<LinearForm> = Vec::new();
    let mut fibers: Vec<Vec<usize>> = Vec::new();
    let mut position: HashMap<LinearForm, usize> = HashMap::new();
    for (i, beta) in a.forms.iter().enumerate() {
        if i == h0 {
            continue;
        }
        let (c, _) = split_along(alpha, beta);
        let form = LinearForm::from_rationals(&c).expect("distinct hyperplanes restrict nontrivially");
        match position.get(&form) {
            Some(&k) => fibers[k].push(i),
            None => {
                position.insert(form.clone(), forms.len());
                forms.push(form);
                fibers.push(vec![i]);
            }
        }
    }
    let mult = fibers.iter().map(|f| f.len() as u32).collect();
    let base = CentralArrangement { dim: a.dim - 1, forms };
    Ok((Multiarrangement { base, mult }, fibers))
}

/// Checks that `x` is a flat of the central arrangement `a`: its hyperplane
/// list is exactly the set of hyperplanes containing it and its equations
/// are the reduced echelon form of their forms.
pub(crate) fn check_central_flat(a: &CentralArrangement, x: &Flat) -> Result<()> {
    let n = a.dim;
    let rows: Vec<Vec<Rational>> = x
        .hyperplanes
        .iter()
        .map(|&i| {
            a.forms
                .get(i)
                .map(|f| {
                    let mut r = f.to_rationals();
                    r.push(Rational::zero());
                    r
                })
                .ok_or(Error::FlatNotInLattice)
        })
        .collect::<Result<_>>()?;
    let e = Echelon::from_rows(n + 1, rows);
    if e.rows() != x.equations.as_slice() || e.rank() != x.codim {
        return Err(Error::FlatNotInLattice);
    }
    let contained: Vec<usize> = (0..a.len()).filter(|&i| e.contains(&a.augmented_row(i))).collect();
    if contained != x.hyperplanes {
        return Err(Error::FlatNotInLattice);
    }
    Ok(())
}

/// Localization of `m` at `x`, written in `codim x` coordinates.
///
/// The forms of the hyperplanes through `x` lie in the span of the
/// equations of `x`; their coordinates in that (reduced echelon) basis are
/// the entries in the pivot columns.
pub fn localize_and_essentialize(m: &Multiarrangement, x: &Flat) -> Result<Multiarrangement> {
    check_central_flat(&m.base, x)?;
    let linear: Vec<Vec<Rational>> = x.equations.iter().map(|r| r[..m.dim()].to_vec()).collect();
    Ok(quotient_by_flat(m, &linear, &x.hyperplanes))
}

fn quotient_by_flat(m: &Multiarrangement, equations: &[Vec<Rational>], indices: &[usize]) -> Multiarrangement {
    let e = Echelon::from_reduced(m.dim(), equations.to_vec());
    let pivots = e.pivots().to_vec();
    let forms = indices
        .iter()
        .map(|&i| {
            let a = m.base.forms[i].to_rationals();
            let coords: Vec<Rational> = pivots.iter().map(|&p| a[p].clone()).collect();
            LinearForm::from_rationals(&coords).expect("hyperplanes through a flat are nonzero on it")
        })
        .collect();
    Multiarrangement {
        base: CentralArrangement {
            dim: pivots.len(),
            forms,
        },
        mult: indices.iter().map(|&i| m.mult[i]).collect(),
    }
}

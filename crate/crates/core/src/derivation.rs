//! Logarithmic derivations of multiarrangements.
//!
//! Everything here is exact graded linear algebra. A homogeneous vector
//! field `θ = Σ f_i ∂_i` of degree `d` is a coefficient vector indexed by
//! `(i, β)` with `β` running over the degree-`d` monomials; the condition
//! `α^m | θ(α)` becomes the vanishing of the coefficients of `y^e`, `e < m`,
//! after rewriting `θ(α)` in coordinates where `y = α`.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::{localize_and_essentialize, Multiarrangement};
use crate::error::{Error, Result};
use crate::lattice::{intersection_lattice, Flat, IntersectionLattice};
use crate::linalg::Echelon;
use crate::multipoly::{monomials, pivot_inverse, Poly};
use crate::poly::IntPolynomial;
use crate::rational::Rational;

/// `θ = Σ f_i ∂_{x_i}` with all `f_i` homogeneous of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyVectorField {
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|p| p.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.nvars(),
            });
        }
        let mut degrees = components.iter().filter_map(Poly::total_degree);
        let first = degrees.next();
        if !components.iter().all(Poly::is_homogeneous) || degrees.any(|d| Some(d) != first) {
            return Err(Error::NotHomogeneous);
        }
        Ok(PolyVectorField { components })
    }

    /// `Σ x_i ∂_{x_i}`.
    pub fn euler(n: usize) -> Self {
        PolyVectorField {
            components: (0..n).map(|i| Poly::var(n, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// Common degree of the components; `None` for the zero field.
    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Poly::total_degree).next()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// `θ(α) = Σ a_i f_i`.
    pub fn apply(&self, alpha: &[Rational]) -> Poly {
        let mut out = Poly::zero(self.dim());
        for (f, a) in self.components.iter().zip(alpha) {
            if !a.is_zero() {
                out = &out + &f.scale(a);
            }
        }
        out
    }

    fn shift(&self, exps: &[u32]) -> PolyVectorField {
        PolyVectorField {
            components: self.components.iter().map(|f| f.shift(exps)).collect(),
        }
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})∂{}", crate::arrangement::var_name(i, n))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Degrees of a homogeneous basis, nondecreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponents(Vec<u64>);

impl Exponents {
    pub fn new(mut degrees: Vec<u64>) -> Self {
        degrees.sort_unstable();
        Exponents(degrees)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn product(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).product()
    }

    /// `e_k` of the exponents; `e_0 = 1`.
    pub fn elementary_symmetric(&self, k: usize) -> i64 {
        let mut e = vec![0i64; k + 1];
        e[0] = 1;
        for &x in &self.0 {
            for j in (1..=k).rev() {
                e[j] += e[j - 1] * x as i64;
            }
        }
        e[k]
    }

    /// The exponents with an extra `1`, as for a free arrangement built
    /// from its Ziegler restriction.
    pub fn with_one(&self) -> Exponents {
        let mut v = self.0.clone();
        v.push(1);
        Exponents::new(v)
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FreenessVerdict {
    Free {
        exponents: Exponents,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        basis: Option<Vec<PolyVectorField>>,
    },
    NotFree {
        witness: String,
    },
    /// No decision within the searched degrees `0..=bound`.
    Unknown {
        bound: u64,
    },
}

impl FreenessVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, FreenessVerdict::Free { .. })
    }

    pub fn is_definitive(&self) -> bool {
        !matches!(self, FreenessVerdict::Unknown { .. })
    }

    pub fn exponents(&self) -> Option<&Exponents> {
        match self {
            FreenessVerdict::Free { exponents, .. } => Some(exponents),
            _ => None,
        }
    }
}

impl fmt::Display for FreenessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreenessVerdict::Free { exponents, .. } => write!(f, "Free{exponents}"),
            FreenessVerdict::NotFree { witness } => write!(f, "NotFree ({witness})"),
            FreenessVerdict::Unknown { bound } => write!(f, "Unknown (searched degrees up to {bound})"),
        }
    }
}

/// A verified homogeneous basis with its degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeBasis {
    pub exponents: Exponents,
    pub basis: Vec<PolyVectorField>,
}

/// `Q(A, m) = Π α_H^{m(H)}`.
pub fn defining_polynomial(m: &Multiarrangement) -> Poly {
    let mut q = Poly::one(m.dim());
    for (form, &k) in m.base().forms().iter().zip(m.mult()) {
        if k > 0 {
            q = &q * &Poly::linear(&form.to_rationals()).pow(k);
        }
    }
    q
}

pub fn derivation_membership(theta: &PolyVectorField, m: &Multiarrangement) -> Result<bool> {
    if theta.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: theta.dim(),
        });
    }
    Ok(m.base()
        .forms()
        .iter()
        .zip(m.mult())
        .filter(|(_, &k)| k > 0)
        .all(|(form, &k)| {
            let alpha = form.to_rationals();
            theta.apply(&alpha).divisible_by_power(&alpha, k)
        }))
}

/// The degree-`d` piece of `D(A, m)` as a kernel.
struct GradedPiece {
    n: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    constraints: Echelon,
}

impl GradedPiece {
    fn new(m: &Multiarrangement, d: u32) -> Self {
        let n = m.dim();
        let monomials = monomials(n, d);
        let index: HashMap<Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let width = monomials.len();
        let ncols = n * width;
        let mut constraints = Echelon::new(ncols);
        for (form, &k) in m.base().forms().iter().zip(m.mult()) {
            if k == 0 {
                continue;
            }
            let alpha = form.to_rationals();
            let (j, inverse) = pivot_inverse(&alpha);
            let mut powers = vec![Poly::one(n)];
            for _ in 0..d {
                let next = &powers[powers.len() - 1] * &inverse;
                powers.push(next);
            }
            let mut rows: HashMap<Vec<u32>, Vec<Rational>> = HashMap::new();
            for (b, beta) in monomials.iter().enumerate() {
                let mut rest = beta.clone();
                rest[j] = 0;
                for (mu, c) in powers[beta[j] as usize].shift(&rest).terms() {
                    if mu[j] >= k {
                        continue;
                    }
                    let row = rows.entry(mu.clone()).or_insert_with(|| vec![Rational::zero(); ncols]);
                    for (i, a) in alpha.iter().enumerate() {
                        if !a.is_zero() {
                            row[i * width + b] += a * c;
                        }
                    }
                }
            }
            let mut keys: Vec<Vec<u32>> = rows.keys().cloned().collect();
            keys.sort();
            for key in keys {
                constraints.insert(rows.remove(&key).expect("key present"));
            }
        }
        GradedPiece {
            n,
            monomials,
            index,
            constraints,
        }
    }

    fn ncols(&self) -> usize {
        self.n * self.monomials.len()
    }

    fn dim(&self) -> usize {
        self.ncols() - self.constraints.rank()
    }

    fn kernel(&self) -> Vec<Vec<Rational>> {
        self.constraints.nullspace()
    }

    fn field(&self, v: &[Rational]) -> PolyVectorField {
        let width = self.monomials.len();
        let components = (0..self.n)
            .map(|i| {
                let mut p = Poly::zero(self.n);
                for (b, beta) in self.monomials.iter().enumerate() {
                    p.add_term(beta.clone(), v[i * width + b].clone());
                }
                p
            })
            .collect();
        PolyVectorField { components }
    }

    fn vector(&self, theta: &PolyVectorField) -> Vec<Rational> {
        let width = self.monomials.len();
        let mut v = vec![Rational::zero(); self.ncols()];
        for (i, f) in theta.components.iter().enumerate() {
            for (e, c) in f.terms() {
                v[i * width + self.index[e]] = c.clone();
            }
        }
        v
    }
}

/// `dim_Q D(A, m)_d`.
pub fn derivation_space_dim(m: &Multiarrangement, d: u32) -> usize {
    GradedPiece::new(m, d).dim()
}

/// Determinant of the coefficient matrix `(θ_i(x_j))`.
pub fn coefficient_determinant(fields: &[PolyVectorField]) -> Poly {
    fn det(rows: &[&[Poly]], cols: &[usize], n: usize) -> Poly {
        if rows.is_empty() {
            return Poly::one(n);
        }
        let mut out = Poly::zero(n);
        for (k, &c) in cols.iter().enumerate() {
            let entry = &rows[0][c];
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = det(&rows[1..], &rest, n);
            let term = entry * &minor;
            out = if k % 2 == 0 { &out + &term } else { &out - &term };
        }
        out
    }
    let n = fields.first().map_or(0, PolyVectorField::dim);
    let rows: Vec<&[Poly]> = fields.iter().map(|f| f.components.as_slice()).collect();
    let cols: Vec<usize> = (0..n).collect();
    det(&rows, &cols, n)
}

fn proportional(a: &Poly, b: &Poly) -> bool {
    let Some((e, cb)) = b.terms().next() else {
        return false;
    };
    let ca = a.coeff(e);
    !ca.is_zero() && a.scale(cb) == b.scale(&ca)
}

/// Saito's criterion: `ℓ` derivations form a basis of `D(A, m)` iff their
/// coefficient determinant is a nonzero multiple of `Q(A, m)`.
pub fn saito_check(basis: &[PolyVectorField], m: &Multiarrangement) -> Result<bool> {
    let n = m.dim();
    if basis.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: basis.len(),
        });
    }
    for (index, theta) in basis.iter().enumerate() {
        if !derivation_membership(theta, m)? {
            return Err(Error::NotADerivation { index });
        }
    }
    Ok(proportional(&coefficient_determinant(basis), &defining_polynomial(m)))
}

/// Searches for a homogeneous basis degree by degree.
///
/// In each degree `d` the span of the multiples of the generators found so
/// far is extended by kernel vectors of the constraint system, in the
/// order returned by [`Echelon::nullspace`]; every vector that enlarges the
/// span is a new minimal generator. The verdicts are:
///
/// * `Free` once `ℓ` generators pass [`saito_check`];
/// * `NotFree` when more than `ℓ` minimal generators appear, when `ℓ`
///   generators fail the determinant test, or when the remaining
///   generators would need degrees whose sum exceeds `|m|`;
/// * `Unknown` when `bound` is reached first.
///
/// With `bound ≥ |m|` the search always ends with a definitive verdict.
pub fn find_free_basis(m: &Multiarrangement, bound: u64) -> FreenessVerdict {
    let n = m.dim();
    let total = m.total();
    let mut gens: Vec<PolyVectorField> = Vec::new();
    let mut degrees: Vec<u64> = Vec::new();
    if n == 0 {
        return FreenessVerdict::Free {
            exponents: Exponents::default(),
            basis: Some(Vec::new()),
        };
    }
    for d in 0..=bound {
        let piece = GradedPiece::new(m, d as u32);
        let mut span = Echelon::new(piece.ncols());
        for (g, &e) in gens.iter().zip(&degrees) {
            for gamma in monomials(n, (d - e) as u32) {
                span.insert(piece.vector(&g.shift(&gamma)));
            }
        }
        for v in piece.kernel() {
            if span.insert(v.clone()) {
                gens.push(piece.field(&v));
                degrees.push(d);
            }
        }
        if gens.len() > n {
            return FreenessVerdict::NotFree {
                witness: format!(
                    "{} minimal generators up to degree {d}, more than the rank {n}",
                    gens.len()
                ),
            };
        }
        let found: u64 = degrees.iter().sum();
        if gens.len() == n {
            if found != total {
                return FreenessVerdict::NotFree {
                    witness: format!(
                        "generator degrees {} sum to {found}, not |m| = {total}",
                        Exponents::new(degrees)
                    ),
                };
            }
            let det = coefficient_determinant(&gens);
            if !proportional(&det, &defining_polynomial(m)) {
                return FreenessVerdict::NotFree {
                    witness: format!(
                        "{n} minimal generators of degrees {} with determinant not a multiple of Q",
                        Exponents::new(degrees)
                    ),
                };
            }
            return FreenessVerdict::Free {
                exponents: Exponents::new(degrees),
                basis: Some(gens),
            };
        }
        let missing = (n - gens.len()) as u64;
        if found + missing * (d + 1) > total {
            return FreenessVerdict::NotFree {
                witness: format!(
                    "{} minimal generators up to degree {d}; the remaining {missing} would push the degree sum past |m| = {total}",
                    gens.len()
                ),
            };
        }
    }
    FreenessVerdict::Unknown { bound }
}

/// Exponents and basis of a rank-2 multiarrangement, computed on its
/// essentialization (whose coordinates the basis uses).
pub fn rank2_exponents(m: &Multiarrangement) -> Result<FreeBasis> {
    if m.total() == 0 {
        return Err(Error::EmptyMultiarrangement);
    }
    let r = m.rank();
    if r != 2 {
        return Err(Error::WrongRank { expected: 2, found: r });
    }
    let e = m.essentialization();
    match find_free_basis(&e, e.total()) {
        FreenessVerdict::Free {
            exponents,
            basis: Some(basis),
        } => Ok(FreeBasis { exponents, basis }),
        other => unreachable!("rank-2 multiarrangements are free, got {other}"),
    }
}

/// `Π (t - e_i)`.
pub fn multi_char_poly_free(e: &Exponents) -> IntPolynomial {
    let roots: Vec<i64> = e.as_slice().iter().map(|&x| x as i64).collect();
    IntPolynomial::from_roots(&roots)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaMethod {
    Rank2,
    FreeFactorization,
    LocalToGlobal,
}

impl fmt::Display for SigmaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaMethod::Rank2 => "rank<=2",
            SigmaMethod::FreeFactorization => "free-factorization",
            SigmaMethod::LocalToGlobal => "local-to-global",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaStatus {
    /// `None` when some localization could not be resolved.
    pub value: Option<i64>,
    pub method: SigmaMethod,
}

impl SigmaStatus {
    pub fn exact(value: i64, method: SigmaMethod) -> Self {
        SigmaStatus {
            value: Some(value),
            method,
        }
    }
}

impl fmt::Display for SigmaStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "?"),
        }
    }
}

/// `σ_k^X` for one flat `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSigma {
    pub codim: usize,
    pub hyperplanes: Vec<usize>,
    pub value: Option<i64>,
    /// Exponents of the essentialized localization, when free.
    pub exponents: Option<Exponents>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaTable {
    /// `σ_0, …, σ_r` with `r` the rank.
    pub sigma: Vec<SigmaStatus>,
    /// One entry per flat of the support's lattice, in lattice order.
    pub per_flat: Vec<LocalSigma>,
}

impl SigmaTable {
    pub fn values(&self) -> Vec<Option<i64>> {
        self.sigma.iter().map(|s| s.value).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.sigma.iter().all(|s| s.value.is_some())
    }
}

/// `σ_k = Σ_{X ∈ L_k} σ_k^X`, with `σ_k^X` the product of the exponents of
/// the essentialized localization at `X`. Flats of codimension at most two
/// always resolve; higher ones need [`find_free_basis`] to succeed within
/// `bound`. Hyperplanes of multiplicity zero are ignored; hyperplane
/// indices in the result refer to `m`.
pub fn sigma_coefficients(m: &Multiarrangement, bound: u64) -> SigmaTable {
    let (support, idx) = m.support();
    let lattice = intersection_lattice(support.base());
    let mut table = sigma_over_lattice(&support, &lattice, bound, None);
    for f in &mut table.per_flat {
        for h in &mut f.hyperplanes {
            *h = idx[*h];
        }
    }
    table
}

/// As [`sigma_coefficients`] for a multiarrangement without zero
/// multiplicities, over its already computed lattice. With `max_codim`,
/// only `σ_0, …, σ_{max_codim}` are computed.
pub(crate) fn sigma_over_lattice(
    m: &Multiarrangement,
    lattice: &IntersectionLattice,
    bound: u64,
    max_codim: Option<usize>,
) -> SigmaTable {
    let r = max_codim.map_or(lattice.rank(), |k| k.min(lattice.rank()));
    let per_flat: Vec<LocalSigma> = lattice.flats()[..lattice.level_range(r).end]
        .iter()
        .map(|x| local_sigma(m, x, bound))
        .collect();
    let sigma = (0..=r)
        .map(|k| {
            let value = per_flat[lattice.level_range(k)]
                .iter()
                .map(|f| f.value)
                .sum::<Option<i64>>();
            let method = if k <= 2 {
                SigmaMethod::Rank2
            } else if k == lattice.rank() {
                SigmaMethod::FreeFactorization
            } else {
                SigmaMethod::LocalToGlobal
            };
            SigmaStatus { value, method }
        })
        .collect();
    SigmaTable { sigma, per_flat }
}

fn local_sigma(m: &Multiarrangement, x: &Flat, bound: u64) -> LocalSigma {
    let exponents = match x.codim {
        0 => Some(Exponents::default()),
        1 => Some(Exponents::new(vec![u64::from(m.mult()[x.hyperplanes[0]])])),
        _ => {
            let local = localize_and_essentialize(m, x).expect("flats of the lattice localize");
            if x.codim == 2 {
                Some(
                    rank2_exponents(&local)
                        .expect("codimension-two localizations have rank two")
                        .exponents,
                )
            } else {
                find_free_basis(&local, bound).exponents().cloned()
            }
        }
    };
    LocalSigma {
        codim: x.codim,
        hyperplanes: x.hyperplanes.clone(),
        value: exponents.as_ref().map(Exponents::product),
        exponents,
    }
}

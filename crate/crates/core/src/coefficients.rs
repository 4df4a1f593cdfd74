//! The `b_i` coefficients of the reduced characteristic polynomial and their
//! decomposition over the flats of the Ziegler restriction.

use serde::{Deserialize, Serialize};

use crate::arrangement::{decone, ziegler_restriction, AffineArrangement, CentralArrangement, Multiarrangement};
use crate::derivation::SigmaStatus;
use crate::error::{Error, Result};
use crate::lattice::{intersection_lattice, Flat, IntersectionLattice};

/// Deconing and Ziegler restriction with respect to one hyperplane, with
/// both lattices, sharing coordinates so that `ρ` is a lookup.
#[derive(Clone, Debug)]
pub struct DeconeRestriction {
    pub h0: usize,
    pub decone: AffineArrangement,
    pub restriction: Multiarrangement,
    pub decone_lattice: IntersectionLattice,
    pub restriction_lattice: IntersectionLattice,
}

impl DeconeRestriction {
    pub fn new(a: &CentralArrangement, h0: usize) -> Result<Self> {
        let restriction = ziegler_restriction(a, h0)?;
        let decone = decone(a, h0)?;
        let decone_lattice = intersection_lattice(&decone);
        let restriction_lattice = intersection_lattice(restriction.base());
        Ok(DeconeRestriction {
            h0,
            decone,
            restriction,
            decone_lattice,
            restriction_lattice,
        })
    }

    /// `ρ(Y)`: the flat of the restriction cut out by the direction space
    /// of `Y`, as an index into `restriction_lattice`.
    pub fn rho(&self, y: &Flat) -> Result<usize> {
        if self.decone_lattice.index_of(y).is_none() {
            return Err(Error::FlatNotInLattice);
        }
        // A consistent reduced system has no pivot in the constant column,
        // so zeroing the constants leaves the reduced direction equations.
        self.restriction_lattice
            .find(&y.direction())
            .ok_or(Error::FlatNotInLattice)
    }

    /// `ρ` on every flat of the deconing.
    pub fn rho_map(&self) -> Vec<usize> {
        self.decone_lattice
            .flats()
            .iter()
            .map(|y| {
                self.rho(y)
                    .expect("direction spaces of deconed flats are restriction flats")
            })
            .collect()
    }
}

pub fn rho(a: &CentralArrangement, h0: usize, y: &Flat) -> Result<Flat> {
    let dr = DeconeRestriction::new(a, h0)?;
    let i = dr.rho(y)?;
    Ok(dr.restriction_lattice.flat(i).clone())
}

/// Per-flat entry of a [`CoefficientTable`], keyed by a flat of the
/// Ziegler restriction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatCoefficients {
    pub codim: usize,
    /// Hyperplanes of the restriction containing the flat.
    pub hyperplanes: Vec<usize>,
    /// `b_i^X`: sum of `|μ(Y)|` over deconed flats `Y` with `ρ(Y) = X`.
    pub b: i64,
    /// `σ_i^X` when the localization could be resolved.
    pub sigma: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientTable {
    /// `b_0, …, b_{ℓ-1}`.
    pub b: Vec<i64>,
    /// `σ_0, …, σ_{ℓ-1}`; empty until filled in by the comparison.
    pub sigma: Vec<SigmaStatus>,
    pub per_flat: Vec<FlatCoefficients>,
}

/// `b_i = |[t^{ℓ-1-i}] χ_0(A, t)|`, with the per-flat split through `ρ`.
pub fn b_coefficients(a: &CentralArrangement, h0: usize) -> Result<CoefficientTable> {
    let dr = DeconeRestriction::new(a, h0)?;
    Ok(b_table(&dr))
}

pub(crate) fn b_table(dr: &DeconeRestriction) -> CoefficientTable {
    let chi0 = dr.decone_lattice.char_poly();
    let top = dr.decone.dim();
    let b: Vec<i64> = (0..=top).map(|i| chi0.coeff(top - i).abs()).collect();

    let rl = &dr.restriction_lattice;
    let mut per_flat: Vec<FlatCoefficients> = rl
        .flats()
        .iter()
        .map(|x| FlatCoefficients {
            codim: x.codim,
            hyperplanes: x.hyperplanes.clone(),
            b: 0,
            sigma: None,
        })
        .collect();
    for (y, x) in dr.rho_map().into_iter().enumerate() {
        per_flat[x].b += dr.decone_lattice.moebius(y).abs();
    }
    CoefficientTable {
        b,
        sigma: Vec::new(),
        per_flat,
    }
}

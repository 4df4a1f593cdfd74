//! Intersection lattices, Möbius values and characteristic polynomials.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, CentralArrangement};
use crate::error::Result;
use crate::linalg::Echelon;
use crate::poly::IntPolynomial;
use crate::rational::{serde_rows, Rational};

/// A flat of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Flat {
    pub codim: usize,
    /// Reduced row echelon rows `[a_1, …, a_n, c]`; the flat is the
    /// solution set of `a·x = c` over all rows. Empty for the whole space.
    #[serde(with = "serde_rows")]
    pub equations: Vec<Vec<Rational>>,
    /// Indices of the hyperplanes containing the flat, increasing.
    pub hyperplanes: Vec<usize>,
}

impl Flat {
    pub fn ambient() -> Flat {
        Flat {
            codim: 0,
            equations: Vec::new(),
            hyperplanes: Vec::new(),
        }
    }

    /// `self ≤ other` in reverse inclusion, i.e. `self ⊇ other`.
    pub fn is_below(&self, other: &Flat) -> bool {
        self.codim <= other.codim && is_subset(&self.hyperplanes, &other.hyperplanes)
    }

    /// Equations of the direction space, constants dropped.
    pub fn direction(&self) -> Vec<Vec<Rational>> {
        self.equations
            .iter()
            .map(|r| {
                let mut r = r.clone();
                if let Some(c) = r.last_mut() {
                    *c = Rational::zero();
                }
                r
            })
            .collect()
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|s| it.any(|b| b == s))
}

/// The poset of flats, ordered by reverse inclusion, with Möbius values.
///
/// Flats are stored in canonical order: by codimension, then
/// lexicographically by echelon equations.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    dim: usize,
    flats: Vec<Flat>,
    moebius: Vec<i64>,
    level_start: Vec<usize>,
    index: HashMap<Vec<Vec<Rational>>, usize>,
}

/// Builds the lattice level by level: each flat of codimension `k` is cut
/// with every hyperplane not containing it.
pub fn intersection_lattice<A: Arrangement + ?Sized>(a: &A) -> IntersectionLattice {
    let n = a.ambient_dim();
    let rows = a.augmented_rows();
    let mut levels: Vec<Vec<Flat>> = vec![vec![Flat::ambient()]];
    loop {
        let current = levels.last().expect("at least one level");
        let codim = current[0].codim + 1;
        let mut next: BTreeMap<Vec<Vec<Rational>>, Vec<usize>> = BTreeMap::new();
        for x in current {
            let base = Echelon::from_reduced(n + 1, x.equations.clone());
            let mut done = vec![false; rows.len()];
            for &h in &x.hyperplanes {
                done[h] = true;
            }
            for h in 0..rows.len() {
                if done[h] {
                    continue;
                }
                let mut e = base.clone();
                e.insert(rows[h].clone());
                if e.pivots().last() == Some(&n) {
                    // parallel: empty intersection
                    done[h] = true;
                    continue;
                }
                let key = e.rows().to_vec();
                let contained = next
                    .entry(key)
                    .or_insert_with(|| (0..rows.len()).filter(|&k| e.contains(&rows[k])).collect());
                for &k in contained.iter() {
                    done[k] = true;
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(
            next.into_iter()
                .map(|(equations, hyperplanes)| Flat {
                    codim,
                    equations,
                    hyperplanes,
                })
                .collect(),
        );
    }

    let mut level_start = Vec::with_capacity(levels.len() + 1);
    let mut flats = Vec::new();
    for level in levels {
        level_start.push(flats.len());
        flats.extend(level);
    }
    level_start.push(flats.len());

    let moebius = moebius_values(&flats, &level_start, rows.len());
    let index = flats
        .iter()
        .enumerate()
        .map(|(i, f)| (f.equations.clone(), i))
        .collect();
    IntersectionLattice {
        dim: n,
        flats,
        moebius,
        level_start,
        index,
    }
}

/// `μ(V) = 1` and `μ(X) = -Σ_{Y < X} μ(Y)`, with flats compared through
/// bitsets of their hyperplanes.
fn moebius_values(flats: &[Flat], level_start: &[usize], n_hyperplanes: usize) -> Vec<i64> {
    let words = n_hyperplanes.div_ceil(64).max(1);
    let bits: Vec<Vec<u64>> = flats
        .iter()
        .map(|f| {
            let mut b = vec![0u64; words];
            for &h in &f.hyperplanes {
                b[h / 64] |= 1 << (h % 64);
            }
            b
        })
        .collect();
    let mut mu = vec![0i64; flats.len()];
    for (i, f) in flats.iter().enumerate() {
        if f.codim == 0 {
            mu[i] = 1;
            continue;
        }
        let below = level_start[f.codim];
        let s: i64 = (0..below)
            .filter(|&j| bits[j].iter().zip(&bits[i]).all(|(a, b)| a & !b == 0))
            .map(|j| mu[j])
            .sum();
        mu[i] = -s;
    }
    mu
}

impl IntersectionLattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> &Flat {
        &self.flats[i]
    }

    pub fn moebius(&self, i: usize) -> i64 {
        self.moebius[i]
    }

    pub fn moebius_values(&self) -> &[i64] {
        &self.moebius
    }

    /// Largest codimension of a flat.
    pub fn rank(&self) -> usize {
        self.level_start.len() - 2
    }

    /// Index range of the flats of codimension `k`.
    pub fn level_range(&self, k: usize) -> std::ops::Range<usize> {
        if k + 1 >= self.level_start.len() {
            let end = self.flats.len();
            return end..end;
        }
        self.level_start[k]..self.level_start[k + 1]
    }

    pub fn level(&self, k: usize) -> &[Flat] {
        &self.flats[self.level_range(k)]
    }

    pub fn find(&self, equations: &[Vec<Rational>]) -> Option<usize> {
        self.index.get(equations).copied()
    }

    pub fn index_of(&self, x: &Flat) -> Option<usize> {
        self.find(&x.equations).filter(|&i| self.flats[i] == *x)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.flats[i].is_below(&self.flats[j])
    }

    /// `Σ_X μ(X) t^{dim X}`.
    pub fn char_poly(&self) -> IntPolynomial {
        let mut coeffs = vec![0i64; self.dim + 1];
        for (f, &mu) in self.flats.iter().zip(&self.moebius) {
            coeffs[self.dim - f.codim] += mu;
        }
        IntPolynomial::new(coeffs)
    }
}

pub fn char_poly<A: Arrangement + ?Sized>(a: &A) -> IntPolynomial {
    intersection_lattice(a).char_poly()
}

/// `χ(A, t) / (t - 1)` for a nonempty central arrangement.
pub fn reduced_char_poly(a: &CentralArrangement) -> Result<IntPolynomial> {
    if a.is_empty() {
        return Err(crate::error::Error::EmptyArrangement);
    }
    char_poly(a).div_t_minus_one()
}

/// Number of chambers of the real complement, `(-1)^dim χ(A, -1)`.
pub fn chamber_count<A: Arrangement + ?Sized>(a: &A) -> u64 {
    let chi = char_poly(a);
    let v = chi.eval(-1);
    let signed = if a.ambient_dim() % 2 == 0 { v } else { -v };
    u64::try_from(signed).expect("chamber counts are positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::decone;

    fn arr(dim: usize, rows: &[&[i64]]) -> CentralArrangement {
        CentralArrangement::from_integer_rows(dim, rows).unwrap()
    }

    fn generic34() -> CentralArrangement {
        arr(3, &[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
    }

    fn braid_ess3() -> CentralArrangement {
        arr(
            3,
            &[
                &[1, -1, 0],
                &[1, 0, -1],
                &[0, 1, -1],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
            ],
        )
    }

    #[test]
    fn boolean2_lattice() {
        let l = intersection_lattice(&arr(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(l.len(), 4);
        assert_eq!(l.moebius_values(), &[1, -1, -1, 1]);
        assert_eq!(l.flat(3).hyperplanes, vec![0, 1]);
    }

    #[test]
    fn generic34_level_sizes() {
        let l = intersection_lattice(&generic34());
        assert_eq!((l.level(1).len(), l.level(2).len(), l.level(3).len()), (4, 6, 1));
    }

    #[test]
    fn braid_ess3_has_four_triple_lines() {
        let l = intersection_lattice(&braid_ess3());
        let sizes: Vec<usize> = l.level(2).iter().map(|x| x.hyperplanes.len()).collect();
        assert_eq!(sizes.len(), 7);
        assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 4);
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 3);
        for i in l.level_range(2) {
            let want = l.flat(i).hyperplanes.len() as i64 - 1;
            assert_eq!(l.moebius(i), want);
        }
    }

    #[test]
    fn char_polys_of_small_arrangements() {
        assert_eq!(
            char_poly(&arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).coeffs(),
            &[-1, 3, -3, 1]
        );
        assert_eq!(char_poly(&generic34()).coeffs(), &[-3, 6, -4, 1]);
        assert_eq!(char_poly(&braid_ess3()), IntPolynomial::from_roots(&[1, 2, 3]));
    }

    #[test]
    fn reduced_char_polys() {
        assert_eq!(reduced_char_poly(&generic34()).unwrap().coeffs(), &[3, -3, 1]);
        assert_eq!(reduced_char_poly(&braid_ess3()).unwrap().coeffs(), &[6, -5, 1]);
        assert!(reduced_char_poly(&CentralArrangement::empty(2)).is_err());
    }

    #[test]
    fn non_essential_keeps_the_center_factor() {
        // {x, y} in three dimensions
        let a = arr(3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(char_poly(&a).coeffs(), &[0, 1, -2, 1]);
        assert_eq!(chamber_count(&a), 4);
    }

    #[test]
    fn empty_arrangement_conventions() {
        let a = CentralArrangement::empty(3);
        assert_eq!(char_poly(&a), IntPolynomial::monomial(3));
        assert_eq!(chamber_count(&a), 1);
    }

    #[test]
    fn chamber_counts() {
        assert_eq!(chamber_count(&arr(1, &[&[1]])), 2);
        assert_eq!(chamber_count(&decone(&generic34(), 3).unwrap()), 7);
        assert_eq!(chamber_count(&braid_ess3()), 24);
    }

    #[test]
    fn affine_lattice_skips_parallel_pairs() {
        // x = 0, x = 1, y = 0: two points
        let a = decone(&arr(3, &[&[1, 0, 0], &[1, 0, -1], &[0, 1, 0], &[0, 0, 1]]), 3).unwrap();
        let l = intersection_lattice(&a);
        assert_eq!(l.level(2).len(), 2);
        assert_eq!(l.char_poly().coeffs(), &[2, -3, 1]);
    }

    #[test]
    fn flats_are_found_by_equations() {
        let l = intersection_lattice(&braid_ess3());
        for (i, f) in l.flats().iter().enumerate() {
            assert_eq!(l.index_of(f), Some(i));
        }
        assert!(l.le(0, l.len() - 1));
        assert!(!l.le(l.len() - 1, 0));
    }
}

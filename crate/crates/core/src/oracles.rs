//! Independent checks of the lattice computations: point counts over finite
//! fields, region counts by deletion and restriction, and Möbius values by
//! direct enumeration of intervals.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, CentralArrangement};
use crate::error::{Error, Result};
use crate::lattice::Flat;
use crate::linalg::{max_abs_minor, Echelon};
use crate::poly::IntPolynomial;
use crate::rational::{monic_vector, Rational};

/// Largest `q^ℓ` the point counter will enumerate.
pub const POINT_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeWitness {
    pub prime: u64,
    pub point_count: u64,
    pub accepted: bool,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Every prime above this bound preserves the intersection lattice under
/// reduction: it is the largest absolute value of a square minor of the
/// coefficient matrix.
pub fn bad_prime_bound(a: &CentralArrangement) -> BigInt {
    let m: Vec<Vec<BigInt>> = a.forms().iter().map(|f| f.coeffs().to_vec()).collect();
    max_abs_minor(&m)
}

/// The `count` smallest primes above the bad-prime bound.
pub fn guarded_primes(a: &CentralArrangement, count: usize) -> Vec<u64> {
    let bound = bad_prime_bound(a);
    let mut p = bound.to_u64().unwrap_or(u64::MAX - 1) + 1;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if is_prime(p) {
            out.push(p);
        }
        p += 1;
    }
    out
}

/// Number of points of `F_q^ℓ` on no hyperplane.
pub fn point_count(a: &CentralArrangement, q: u64) -> Result<u64> {
    let n = a.dim();
    if (q as f64).powi(n as i32) > POINT_LIMIT as f64 {
        return Err(Error::OracleTooLarge { q, dim: n });
    }
    let qb = BigInt::from(q);
    let forms: Vec<Vec<u64>> = a
        .forms()
        .iter()
        .map(|f| {
            f.coeffs()
                .iter()
                .map(|c| {
                    let r = ((c % &qb) + &qb) % &qb;
                    r.to_u64().expect("residue fits")
                })
                .collect()
        })
        .collect();
    let mut point = vec![0u64; n];
    let mut count = 0u64;
    loop {
        let off = forms
            .iter()
            .all(|f| f.iter().zip(&point).map(|(a, x)| a * x).sum::<u64>() % q != 0);
        if off {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            point[i] += 1;
            if point[i] < q {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

/// Point counts for each prime, with the guard applied.
pub fn prime_witnesses(a: &CentralArrangement, primes: &[u64]) -> Result<Vec<PrimeWitness>> {
    let bound = bad_prime_bound(a);
    primes
        .iter()
        .map(|&q| {
            let accepted = is_prime(q) && BigInt::from(q) > bound;
            let point_count = if accepted { point_count(a, q)? } else { 0 };
            Ok(PrimeWitness {
                prime: q,
                point_count,
                accepted,
            })
        })
        .collect()
}

/// `χ(A, t)` by interpolating `|F_q^ℓ \ ∪H|` over the given primes.
///
/// Needs at least `ℓ + 1` primes, each prime and above [`bad_prime_bound`].
/// All counts must lie on one monic integer polynomial of degree `ℓ`.
pub fn finite_field_char_poly(a: &CentralArrangement, primes: &[u64]) -> Result<IntPolynomial> {
    let n = a.dim();
    if primes.len() < n + 1 {
        return Err(Error::InsufficientPrimes {
            needed: n + 1,
            got: primes.len(),
        });
    }
    let witnesses = prime_witnesses(a, primes)?;
    if let Some(w) = witnesses.iter().find(|w| !w.accepted) {
        return Err(Error::BadPrime {
            prime: w.prime,
            bound: bad_prime_bound(a).to_string(),
        });
    }
    let points: Vec<(i64, i64)> = witnesses
        .iter()
        .map(|w| (w.prime as i64, w.point_count as i64))
        .collect();
    let coeffs = interpolate(&points);
    let ints: Option<Vec<i64>> = coeffs
        .iter()
        .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
        .collect();
    let poly = IntPolynomial::new(ints.ok_or(Error::InconsistentCounts)?);
    if poly.degree() != Some(n) || !poly.is_monic() {
        return Err(Error::InconsistentCounts);
    }
    Ok(poly)
}

/// Coefficients, lowest first, of the polynomial through the points.
fn interpolate(points: &[(i64, i64)]) -> Vec<Rational> {
    let k = points.len();
    let mut out = vec![Rational::zero(); k];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // basis polynomial Π_{j≠i} (t - x_j) / (x_i - x_j)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * Rational::from_integer(xj.into());
            }
            basis = next;
            denom *= Rational::from_integer((xi - xj).into());
        }
        let scale = Rational::from_integer(yi.into()) / denom;
        for (d, c) in basis.into_iter().enumerate() {
            out[d] += c * &scale;
        }
    }
    out
}

type Key = (usize, Vec<Vec<Rational>>);

/// Canonical form of a set of affine hyperplanes: rows scaled so the
/// linear part is monic, parallel-empty and duplicate rows removed, sorted.
fn canonical_rows(dim: usize, rows: Vec<Vec<Rational>>) -> Key {
    let mut out: Vec<Vec<Rational>> = rows
        .into_iter()
        .filter_map(|mut r| {
            if r[..dim].iter().all(Zero::is_zero) {
                return None;
            }
            monic_vector(&mut r);
            Some(r)
        })
        .collect();
    out.sort();
    out.dedup();
    (dim, out)
}

/// `H ∩ K` for every other `K`, in coordinates of `H` (its pivot variable
/// eliminated).
fn restrict_rows(dim: usize, rows: &[Vec<Rational>], h: usize) -> Vec<Vec<Rational>> {
    let a = &rows[h];
    let j = a[..dim]
        .iter()
        .position(|x| !x.is_zero())
        .expect("hyperplanes have a nonzero linear part");
    rows.iter()
        .enumerate()
        .filter(|&(k, _)| k != h)
        .map(|(_, b)| {
            let s = &b[j] / &a[j];
            (0..=dim).filter(|&k| k != j).map(|k| &b[k] - &s * &a[k]).collect()
        })
        .collect()
}

fn regions(key: Key, memo: &mut HashMap<Key, u64>) -> u64 {
    if key.1.is_empty() {
        return 1;
    }
    if let Some(&r) = memo.get(&key) {
        return r;
    }
    let (dim, rows) = &key;
    let last = rows.len() - 1;
    let deleted = canonical_rows(*dim, rows[..last].to_vec());
    let restricted = canonical_rows(dim - 1, restrict_rows(*dim, rows, last));
    let r = regions(deleted, memo) + regions(restricted, memo);
    memo.insert(key, r);
    r
}

/// Number of regions of the real complement by `r(A) = r(A \ H) + r(A^H)`.
pub fn region_count_recursion<A: Arrangement + ?Sized>(a: &A) -> u64 {
    let key = canonical_rows(a.ambient_dim(), a.augmented_rows());
    regions(key, &mut HashMap::new())
}

/// `μ(X)` by the defining recursion over the interval `[V, X]`, with the
/// interval built from all subsets of the hyperplanes through `X`.
pub fn moebius_bruteforce<A: Arrangement + ?Sized>(a: &A, x: &Flat) -> Result<i64> {
    let n = a.ambient_dim();
    let rows = a.augmented_rows();
    if x.hyperplanes.iter().any(|&h| h >= rows.len()) {
        return Err(Error::FlatNotInLattice);
    }
    let e = Echelon::from_rows(n + 1, x.hyperplanes.iter().map(|&h| rows[h].clone()));
    let consistent = e.pivots().last() != Some(&n);
    let through: Vec<usize> = (0..rows.len()).filter(|&h| e.contains(&rows[h])).collect();
    if !consistent || e.rows() != x.equations.as_slice() || e.rank() != x.codim || through != x.hyperplanes {
        return Err(Error::FlatNotInLattice);
    }

    // every flat Y ⊇ X is cut out by a subset of the hyperplanes through X
    let k = through.len();
    let mut interval: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0u64..(1u64 << k) {
        let subset: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| through[i]).collect();
        let f = Echelon::from_rows(n + 1, subset.iter().map(|&h| rows[h].clone()));
        let closure: Vec<usize> = through.iter().copied().filter(|&h| f.contains(&rows[h])).collect();
        interval.insert(closure);
    }
    let flats: Vec<Vec<usize>> = interval.into_iter().collect();
    let below = |y: &[usize], z: &[usize]| y.len() < z.len() && y.iter().all(|h| z.contains(h));
    let mut memo: HashMap<Vec<usize>, i64> = HashMap::new();
    fn mu(
        y: &[usize],
        flats: &[Vec<usize>],
        below: &dyn Fn(&[usize], &[usize]) -> bool,
        memo: &mut HashMap<Vec<usize>, i64>,
    ) -> i64 {
        if y.is_empty() {
            return 1;
        }
        if let Some(&v) = memo.get(y) {
            return v;
        }
        let s: i64 = flats
            .iter()
            .filter(|z| below(z, y))
            .map(|z| mu(z, flats, below, memo))
            .sum();
        memo.insert(y.to_vec(), -s);
        -s
    }
    Ok(mu(&x.hyperplanes, &flats, &below, &mut memo))
}

/// Whether every `(codim, μ)` pair has the sign `(-1)^codim`.
pub fn signs_alternate(values: &[(usize, i64)]) -> bool {
    values
        .iter()
        .all(|&(codim, mu)| mu == 0 || (mu.is_positive() == (codim % 2 == 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::decone;
    use crate::lattice::{char_poly, intersection_lattice};

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
    fn point_counts() {
        let boolean2 = arr(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(point_count(&boolean2, 5).unwrap(), 16);
        assert_eq!(point_count(&generic34(), 7).unwrap(), 186);
    }

    #[test]
    fn interpolation_recovers_boolean3() {
        let b3 = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            finite_field_char_poly(&b3, &[5, 7, 11, 13]).unwrap(),
            IntPolynomial::from_roots(&[1, 1, 1])
        );
    }

    #[test]
    fn guard_and_prime_count() {
        let a = arr(2, &[&[1, 0], &[0, 1], &[1, 3]]);
        assert_eq!(bad_prime_bound(&a), BigInt::from(3));
        assert!(matches!(
            finite_field_char_poly(&a, &[3, 5, 7]),
            Err(Error::BadPrime { prime: 3, .. })
        ));
        assert!(matches!(
            finite_field_char_poly(&a, &[5, 7]),
            Err(Error::InsufficientPrimes { needed: 3, got: 2 })
        ));
        assert_eq!(
            finite_field_char_poly(&a, &[5, 7, 11]).unwrap(),
            IntPolynomial::from_roots(&[1, 2])
        );
        assert_eq!(guarded_primes(&a, 3), vec![5, 7, 11]);
    }

    #[test]
    fn oversized_enumeration_is_refused() {
        assert!(matches!(
            point_count(&generic34(), 257),
            Err(Error::OracleTooLarge { q: 257, dim: 3 })
        ));
    }

    #[test]
    fn oracle_matches_lattice() {
        for a in [generic34(), braid_ess3()] {
            let primes = guarded_primes(&a, a.dim() + 2);
            assert_eq!(finite_field_char_poly(&a, &primes).unwrap(), char_poly(&a));
        }
    }

    #[test]
    fn region_counts() {
        assert_eq!(region_count_recursion(&CentralArrangement::empty(3)), 1);
        assert_eq!(region_count_recursion(&decone(&generic34(), 0).unwrap()), 7);
        assert_eq!(region_count_recursion(&braid_ess3()), 24);
        assert_eq!(region_count_recursion(&arr(1, &[&[1]])), 2);
    }

    #[test]
    fn moebius_values() {
        let boolean2 = arr(2, &[&[1, 0], &[0, 1]]);
        let l = intersection_lattice(&boolean2);
        assert_eq!(moebius_bruteforce(&boolean2, l.flat(0)).unwrap(), 1);
        assert_eq!(moebius_bruteforce(&boolean2, l.flat(3)).unwrap(), 1);

        let b = braid_ess3();
        let l = intersection_lattice(&b);
        let triple = l.level(2).iter().find(|x| x.hyperplanes.len() == 3).unwrap();
        assert_eq!(moebius_bruteforce(&b, triple).unwrap(), 2);
        for (i, f) in l.flats().iter().enumerate() {
            assert_eq!(moebius_bruteforce(&b, f).unwrap(), l.moebius(i));
        }
    }

    #[test]
    fn moebius_rejects_foreign_flats() {
        let b = braid_ess3();
        let l = intersection_lattice(&b);
        let mut f = l.flat(1).clone();
        f.hyperplanes.push(5);
        assert_eq!(moebius_bruteforce(&b, &f), Err(Error::FlatNotInLattice));
    }

    #[test]
    fn sign_alternation_helper() {
        assert!(signs_alternate(&[(0, 1), (1, -1), (2, 2)]));
        assert!(!signs_alternate(&[(1, 1)]));
    }
}

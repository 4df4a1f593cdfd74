//! Decision procedures comparing an arrangement with its Ziegler
//! restriction: the coefficient inequality `b_i ≥ σ_i ≥ 0`, the minimal
//! chamber test, and freeness criteria from chamber counts and from `b_2 = σ_2`.
//!
//! Functions taking `bound: Option<u64>` search derivations up to that
//! degree; `None` means `|m|` of the object searched, which always yields a
//! definitive freeness verdict.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::{ziegler_restriction, CentralArrangement, Multiarrangement};
use crate::coefficients::{b_table, CoefficientTable, DeconeRestriction};
use crate::derivation::{
    find_free_basis, rank2_exponents, sigma_over_lattice, Exponents, FreenessVerdict, SigmaMethod, SigmaStatus,
    SigmaTable,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TamenessReason {
    RankAtMost3,
    VerifiedFree,
    UserAsserted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TamenessTag {
    Tame { reason: TamenessReason },
    Unknown,
}

impl TamenessTag {
    pub fn is_tame(&self) -> bool {
        matches!(self, TamenessTag::Tame { .. })
    }
}

impl fmt::Display for TamenessTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TamenessTag::Tame { reason } => {
                let r = match reason {
                    TamenessReason::RankAtMost3 => "rank<=3",
                    TamenessReason::VerifiedFree => "verified-free",
                    TamenessReason::UserAsserted => "user-asserted",
                };
                write!(f, "tame ({r})")
            }
            TamenessTag::Unknown => write!(f, "unknown"),
        }
    }
}

/// Rank at most three, then a free basis within `bound`, then the user's
/// assertion.
pub fn tameness_classify(m: &Multiarrangement, bound: Option<u64>, user_asserted: bool) -> TamenessTag {
    if m.rank() <= 3 {
        return TamenessTag::Tame {
            reason: TamenessReason::RankAtMost3,
        };
    }
    if find_free_basis(m, bound.unwrap_or(m.total())).is_free() {
        return TamenessTag::Tame {
            reason: TamenessReason::VerifiedFree,
        };
    }
    if user_asserted {
        return TamenessTag::Tame {
            reason: TamenessReason::UserAsserted,
        };
    }
    TamenessTag::Unknown
}

/// `(-1)^{ℓ-1} χ_0(A, -1) = Σ b_i` against `(-1)^{ℓ-1} χ(A'', m, -1) = Σ σ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberBound {
    pub deconed_chambers: i64,
    pub restriction_bound: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub dim: usize,
    pub hyperplane_count: usize,
    pub h0: usize,
    pub restriction_multiplicities: Vec<u32>,
    pub table: CoefficientTable,
    pub tame_arrangement: TamenessTag,
    pub tame_restriction: TamenessTag,
    /// `b_i ≥ σ_i ≥ 0`, defined where `σ_i` is exact.
    pub inequality_holds: Vec<Option<bool>>,
    pub chamber_bound: ChamberBound,
}

impl ComparisonReport {
    pub fn sigma_values(&self) -> Vec<Option<i64>> {
        self.table.sigma.iter().map(|s| s.value).collect()
    }

    /// Indices where both sides are exact and `b_i > σ_i`.
    pub fn strict_indices(&self) -> Vec<usize> {
        self.table
            .b
            .iter()
            .zip(&self.table.sigma)
            .enumerate()
            .filter(|(_, (b, s))| s.value.is_some_and(|s| **b > s))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn sigma_exact(&self) -> bool {
        self.table.sigma.iter().all(|s| s.value.is_some())
    }
}

/// σ of the Ziegler restriction over its lattice, padded with exact zeros
/// up to `σ_{ℓ-1}`.
fn restriction_sigma(dr: &DeconeRestriction, bound: Option<u64>, max_codim: Option<usize>) -> SigmaTable {
    let m = &dr.restriction;
    let mut t = sigma_over_lattice(m, &dr.restriction_lattice, bound.unwrap_or(m.total()), max_codim);
    let top = max_codim.map_or(m.dim(), |k| k.min(m.dim()));
    while t.sigma.len() < top + 1 {
        let k = t.sigma.len();
        let method = if k <= 2 {
            SigmaMethod::Rank2
        } else {
            SigmaMethod::LocalToGlobal
        };
        t.sigma.push(SigmaStatus::exact(0, method));
    }
    t
}

fn full_table(a: &CentralArrangement, h0: usize, bound: Option<u64>) -> Result<(DeconeRestriction, CoefficientTable)> {
    let dr = DeconeRestriction::new(a, h0)?;
    let mut table = b_table(&dr);
    let sigma = restriction_sigma(&dr, bound, None);
    for (entry, local) in table.per_flat.iter_mut().zip(&sigma.per_flat) {
        entry.sigma = local.value;
    }
    table.sigma = sigma.sigma;
    Ok((dr, table))
}

pub fn compare_coefficients(
    a: &CentralArrangement,
    h0: usize,
    bound: Option<u64>,
    assert_tame: bool,
) -> Result<ComparisonReport> {
    let (dr, table) = full_table(a, h0, bound)?;
    let tame_arrangement = tameness_classify(&Multiarrangement::simple(a.clone()), bound, assert_tame);
    let tame_restriction = tameness_classify(&dr.restriction, bound, assert_tame);

    let inequality_holds: Vec<Option<bool>> = table
        .b
        .iter()
        .zip(&table.sigma)
        .map(|(&b, s)| s.value.map(|s| b >= s && s >= 0))
        .collect();
    if tame_arrangement.is_tame() && tame_restriction.is_tame() {
        for (index, (&b, s)) in table.b.iter().zip(&table.sigma).enumerate() {
            if let Some(sigma) = s.value {
                if sigma > b {
                    return Err(Error::TheoremViolation { index, b, sigma });
                }
            }
        }
    }
    let chamber_bound = ChamberBound {
        deconed_chambers: table.b.iter().sum(),
        restriction_bound: table.sigma.iter().map(|s| s.value).sum(),
    };
    Ok(ComparisonReport {
        dim: a.dim(),
        hyperplane_count: a.len(),
        h0,
        restriction_multiplicities: dr.restriction.mult().to_vec(),
        table,
        tame_arrangement,
        tame_restriction,
        inequality_holds,
        chamber_bound,
    })
}

/// Whether `Σ b_i = Σ σ_i`; `None` when some `σ_i` is unknown.
pub fn mca_check(a: &CentralArrangement, h0: usize, bound: Option<u64>) -> Result<Option<bool>> {
    let (_, table) = full_table(a, h0, bound)?;
    let sigma: Option<i64> = table.sigma.iter().map(|s| s.value).sum();
    Ok(sigma.map(|s| s == table.b.iter().sum::<i64>()))
}

/// For an essential arrangement of rank three: free with exponents
/// `(1, d1, d2)` iff the deconing has `(1 + d1)(1 + d2)` chambers, where
/// `(d1, d2)` are the exponents of the Ziegler restriction.
pub fn yoshinaga_3d(a: &CentralArrangement, h0: usize) -> Result<FreenessVerdict> {
    let r = a.rank();
    if a.dim() != 3 || r != 3 {
        return Err(Error::WrongRank { expected: 3, found: r });
    }
    let dr = DeconeRestriction::new(a, h0)?;
    let chambers: i64 = b_table(&dr).b.iter().sum();
    let e = rank2_exponents(&dr.restriction)?.exponents;
    let (d1, d2) = (e.as_slice()[0] as i64, e.as_slice()[1] as i64);
    let bound = (1 + d1) * (1 + d2);
    Ok(if chambers == bound {
        FreenessVerdict::Free {
            exponents: e.with_one(),
            basis: None,
        }
    } else {
        FreenessVerdict::NotFree {
            witness: format!("deconed chamber count {chambers} differs from (1+{d1})(1+{d2}) = {bound}"),
        }
    })
}

/// Free iff the Ziegler restriction is free and `b_2 = σ_2`.
pub fn abe_yoshinaga_free_check(a: &CentralArrangement, h0: usize, bound: Option<u64>) -> Result<FreenessVerdict> {
    let dr = DeconeRestriction::new(a, h0)?;
    let restricted = find_free_basis(&dr.restriction, bound.unwrap_or(dr.restriction.total()));
    match restricted {
        FreenessVerdict::Free { exponents, .. } => {
            let b = b_table(&dr).b;
            let sigma = restriction_sigma(&dr, bound, Some(2));
            let b2 = b.get(2).copied().unwrap_or(0);
            let s2 = sigma
                .sigma
                .get(2)
                .map_or(0, |s| s.value.expect("codimension-two sigma is always exact"));
            Ok(if b2 == s2 {
                FreenessVerdict::Free {
                    exponents: exponents.with_one(),
                    basis: None,
                }
            } else {
                FreenessVerdict::NotFree {
                    witness: format!("Ziegler restriction is free but b_2 = {b2} differs from sigma_2 = {s2}"),
                }
            })
        }
        FreenessVerdict::NotFree { witness } => Ok(FreenessVerdict::NotFree {
            witness: format!("Ziegler restriction is not free: {witness}"),
        }),
        unknown @ FreenessVerdict::Unknown { .. } => Ok(unknown),
    }
}

/// Freeness of the simple arrangement by direct basis search.
pub fn saito_free_check(a: &CentralArrangement, bound: Option<u64>) -> FreenessVerdict {
    let m = Multiarrangement::simple(a.clone());
    find_free_basis(&m, bound.unwrap_or(m.total()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FreenessMethod {
    Yoshinaga,
    AbeYoshinaga,
    Saito,
}

impl fmt::Display for FreenessMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FreenessMethod::Yoshinaga => "yoshinaga",
            FreenessMethod::AbeYoshinaga => "abe-yoshinaga",
            FreenessMethod::Saito => "saito",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergedVerdict {
    pub verdict: FreenessVerdict,
    /// False when two definitive verdicts disagree.
    pub consistent: bool,
}

fn same_answer(a: &FreenessVerdict, b: &FreenessVerdict) -> bool {
    match (a, b) {
        (FreenessVerdict::Free { exponents: x, .. }, FreenessVerdict::Free { exponents: y, .. }) => x == y,
        (FreenessVerdict::NotFree { .. }, FreenessVerdict::NotFree { .. }) => true,
        _ => false,
    }
}

/// Combines verdicts from several methods: the first definitive verdict
/// wins over unknowns, and disagreeing definitive verdicts mark the result
/// inconsistent.
pub fn merge_verdicts(verdicts: &[FreenessVerdict]) -> MergedVerdict {
    let definitive: Vec<&FreenessVerdict> = verdicts.iter().filter(|v| v.is_definitive()).collect();
    match definitive.first() {
        Some(first) => MergedVerdict {
            verdict: (*first).clone(),
            consistent: definitive.iter().all(|v| same_answer(first, v)),
        },
        None => MergedVerdict {
            verdict: verdicts
                .iter()
                .filter_map(|v| match v {
                    FreenessVerdict::Unknown { bound } => Some(*bound),
                    _ => None,
                })
                .min()
                .map_or(FreenessVerdict::Unknown { bound: 0 }, |bound| {
                    FreenessVerdict::Unknown { bound }
                }),
            consistent: true,
        },
    }
}

/// Exponents `(1, e_2, …, e_ℓ)` of a free arrangement predicted by its
/// Ziegler restriction, or `None` when the restriction is not found free.
pub fn ziegler_exponents(a: &CentralArrangement, h0: usize, bound: Option<u64>) -> Result<Option<Exponents>> {
    let z = ziegler_restriction(a, h0)?;
    Ok(find_free_basis(&z, bound.unwrap_or(z.total()))
        .exponents()
        .map(Exponents::with_one))
}

/// Whether `b_i^X ≥ σ_i^X` at every flat whose localization was resolved.
pub fn local_inequalities_hold(table: &CoefficientTable) -> bool {
    table.per_flat.iter().all(|f| f.sigma.is_none_or(|s| f.b >= s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(dim: usize, rows: &[&[i64]]) -> CentralArrangement {
        CentralArrangement::from_integer_rows(dim, rows).unwrap()
    }

    fn boolean(n: usize) -> CentralArrangement {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        arr(n, &refs)
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

    fn generic34() -> CentralArrangement {
        arr(3, &[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
    }

    fn exps(v: &FreenessVerdict) -> Vec<u64> {
        v.exponents().expect("free").as_slice().to_vec()
    }

    #[test]
    fn tameness_tags() {
        let rank2 = Multiarrangement::new(arr(2, &[&[1, 0], &[0, 1], &[1, 1]]), vec![2, 2, 1]).unwrap();
        assert_eq!(
            tameness_classify(&rank2, None, false),
            TamenessTag::Tame {
                reason: TamenessReason::RankAtMost3
            }
        );
        assert_eq!(
            tameness_classify(&Multiarrangement::simple(boolean(4)), None, false),
            TamenessTag::Tame {
                reason: TamenessReason::VerifiedFree
            }
        );
        let generic46 = Multiarrangement::simple(arr(
            4,
            &[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
                &[1, 1, 1, 1],
                &[1, 2, 3, 4],
            ],
        ));
        assert_eq!(tameness_classify(&generic46, None, false), TamenessTag::Unknown);
        assert_eq!(
            tameness_classify(&generic46, None, true),
            TamenessTag::Tame {
                reason: TamenessReason::UserAsserted
            }
        );
    }

    #[test]
    fn compare_boolean3() {
        for h0 in 0..3 {
            let r = compare_coefficients(&boolean(3), h0, None, false).unwrap();
            assert_eq!(r.table.b, vec![1, 2, 1]);
            assert_eq!(r.sigma_values(), vec![Some(1), Some(2), Some(1)]);
            assert_eq!(r.chamber_bound.deconed_chambers, 4);
            assert_eq!(r.chamber_bound.restriction_bound, Some(4));
        }
    }

    #[test]
    fn compare_generic34() {
        let r = compare_coefficients(&generic34(), 3, None, false).unwrap();
        assert_eq!(r.table.b, vec![1, 3, 3]);
        assert_eq!(r.sigma_values(), vec![Some(1), Some(3), Some(2)]);
        assert_eq!(r.strict_indices(), vec![2]);
        assert_eq!(r.chamber_bound.deconed_chambers, 7);
        assert_eq!(r.chamber_bound.restriction_bound, Some(6));
        assert!(r.inequality_holds.iter().all(|h| *h == Some(true)));
        assert!(local_inequalities_hold(&r.table));
    }

    #[test]
    fn compare_braid_ess3_every_h0() {
        for h0 in 0..6 {
            let r = compare_coefficients(&braid_ess3(), h0, None, false).unwrap();
            assert_eq!(r.table.b, vec![1, 5, 6]);
            assert_eq!(r.sigma_values(), vec![Some(1), Some(5), Some(6)]);
            assert_eq!(r.chamber_bound.restriction_bound, Some(12));
        }
    }

    #[test]
    fn mca() {
        assert_eq!(mca_check(&braid_ess3(), 0, None).unwrap(), Some(true));
        assert_eq!(mca_check(&generic34(), 3, None).unwrap(), Some(false));
        assert_eq!(mca_check(&boolean(3), 0, None).unwrap(), Some(true));
    }

    #[test]
    fn yoshinaga() {
        assert_eq!(exps(&yoshinaga_3d(&braid_ess3(), 0).unwrap()), vec![1, 2, 3]);
        assert_eq!(exps(&yoshinaga_3d(&boolean(3), 0).unwrap()), vec![1, 1, 1]);
        assert!(matches!(
            yoshinaga_3d(&generic34(), 3).unwrap(),
            FreenessVerdict::NotFree { .. }
        ));
        assert_eq!(
            yoshinaga_3d(&boolean(4), 0),
            Err(Error::WrongRank { expected: 3, found: 4 })
        );
        let flat = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        assert_eq!(yoshinaga_3d(&flat, 0), Err(Error::WrongRank { expected: 3, found: 2 }));
    }

    #[test]
    fn abe_yoshinaga() {
        assert_eq!(
            exps(&abe_yoshinaga_free_check(&boolean(4), 1, None).unwrap()),
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            exps(&abe_yoshinaga_free_check(&braid_ess3(), 2, None).unwrap()),
            vec![1, 2, 3]
        );
        let g = abe_yoshinaga_free_check(&generic34(), 3, None).unwrap();
        let FreenessVerdict::NotFree { witness } = g else {
            panic!("expected NotFree")
        };
        assert!(witness.contains("b_2 = 3"));
        assert_eq!(
            exps(&abe_yoshinaga_free_check(&boolean(2), 0, None).unwrap()),
            vec![1, 1]
        );
    }

    #[test]
    fn abe_yoshinaga_unknown_below_the_bound() {
        assert_eq!(
            abe_yoshinaga_free_check(&braid_ess3(), 0, Some(1)).unwrap(),
            FreenessVerdict::Unknown { bound: 1 }
        );
    }

    #[test]
    fn merging() {
        let free = FreenessVerdict::Free {
            exponents: Exponents::new(vec![1, 2, 3]),
            basis: None,
        };
        let not_free = FreenessVerdict::NotFree { witness: "x".into() };
        let unknown = FreenessVerdict::Unknown { bound: 3 };
        let m = merge_verdicts(&[unknown.clone(), free.clone(), free.clone()]);
        assert_eq!(m.verdict, free);
        assert!(m.consistent);
        assert!(!merge_verdicts(&[free, not_free.clone()]).consistent);
        assert_eq!(merge_verdicts(&[unknown.clone(), not_free.clone()]).verdict, not_free);
        assert_eq!(merge_verdicts(std::slice::from_ref(&unknown)).verdict, unknown);
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = compare_coefficients(&generic34(), 3, None, false).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: ComparisonReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}

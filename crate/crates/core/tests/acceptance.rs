//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use arrcalc_core::criteria::ziegler_exponents;
use arrcalc_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn exps(v: &[u64]) -> Exponents {
    Exponents::new(v.to_vec())
}

fn entry(name: &str) -> CorpusEntry {
    corpus_entry(name).unwrap_or_else(|| panic!("missing corpus entry {name}"))
}

fn oracle_agreement() -> Outcome {
    let entries = corpus();
    for e in &entries {
        let a = e.arrangement();
        ensure!(a.dim() <= 4 && a.len() <= 10, "{} exceeds desk scale", e.name);
        let primes = guarded_primes(&a, a.dim() + 1);
        ensure!(
            primes.len() > a.dim(),
            "{}: only {} guarded primes",
            e.name,
            primes.len()
        );
        let ff = finite_field_char_poly(&a, &primes).map_err(|err| format!("{}: {err}", e.name))?;
        let chi = char_poly(&a);
        ensure!(ff == chi, "{}: lattice {chi}, point count {ff}", e.name);
        let (c, r) = (chamber_count(&a), region_count_recursion(&a));
        ensure!(c == r, "{}: {c} chambers, recursion {r}", e.name);
    }
    Ok(format!("{} arrangements", entries.len()))
}

fn low_identities() -> Outcome {
    let mut checked = 0;
    for e in corpus() {
        let a = e.arrangement();
        let n = a.len() as i64 - 1;
        for h0 in 0..a.len() {
            let r = compare_coefficients(&a, h0, None, false).map_err(|err| err.to_string())?;
            let b = &r.table.b;
            let s = r.sigma_values();
            let z = ziegler_restriction(&a, h0).map_err(|err| err.to_string())?;
            ensure!(
                b[0] == 1 && s[0] == Some(1),
                "{} at {h0}: b0={} σ0={:?}",
                e.name,
                b[0],
                s[0]
            );
            ensure!(
                b[1] == n && s[1] == Some(n) && z.total() as i64 == n,
                "{} at {h0}: b1={} σ1={:?} |m|={}",
                e.name,
                b[1],
                s[1],
                z.total()
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} (arrangement, h0) pairs"))
}

fn coefficient_inequality() -> Outcome {
    let (mut tame, mut total) = (0, 0);
    for e in corpus() {
        let a = e.arrangement();
        for h0 in 0..a.len() {
            let r = compare_coefficients(&a, h0, None, false).map_err(|err| err.to_string())?;
            let b = &r.table.b;
            total += 1;
            if let Some(Some(s2)) = r.sigma_values().get(2) {
                ensure!(b[2] >= *s2, "{} at {h0}: b2={} < σ2={s2}", e.name, b[2]);
            }
            if r.tame_arrangement.is_tame() && r.tame_restriction.is_tame() && r.sigma_exact() {
                tame += 1;
                for (i, s) in r.sigma_values().into_iter().enumerate() {
                    let s = s.unwrap();
                    ensure!(b[i] >= s && s >= 0, "{} at {h0}: b{i}={} σ{i}={s}", e.name, b[i]);
                }
            }
        }
    }
    ensure!(tame > 0, "no tame inputs exercised");
    Ok(format!("{tame} tame of {total} pairs"))
}

fn yoshinaga_rank3() -> Outcome {
    let cases = [
        ("braid-ess3", Some(exps(&[1, 2, 3]))),
        ("boolean3", Some(exps(&[1, 1, 1]))),
        ("generic34", None),
    ];
    for (name, want) in cases {
        let a = entry(name).arrangement();
        let direct = saito_free_check(&a, None);
        ensure!(direct.is_definitive(), "{name}: Saito route undecided");
        for h0 in 0..a.len() {
            let v = yoshinaga_3d(&a, h0).map_err(|err| err.to_string())?;
            ensure!(v.exponents() == want.as_ref(), "{name} at {h0}: {v:?}");
            ensure!(
                direct.exponents() == want.as_ref(),
                "{name}: Saito route gives {direct:?}"
            );
        }
        let z = ziegler_restriction(&a, 0).map_err(|err| err.to_string())?;
        let chi0 = reduced_char_poly(&a).map_err(|err| err.to_string())?;
        let b2 = chi0.coeff(0).abs();
        let restricted = rank2_exponents(&z).map_err(|err| err.to_string())?.exponents;
        ensure!(
            (restricted.product() as i64 == b2) == want.is_some(),
            "{name}: b2={b2}, d1*d2={}",
            restricted.product()
        );
    }
    Ok("braid-ess3 (1, 2, 3), boolean3 (1, 1, 1), generic34 not free".into())
}

fn abe_yoshinaga_rank4() -> Outcome {
    for (name, want) in [("boolean4", exps(&[1, 1, 1, 1])), ("braid-ess4", exps(&[1, 2, 3, 4]))] {
        let e = entry(name);
        let a = e.arrangement();
        let h0 = e.expected.h0;
        let v = abe_yoshinaga_free_check(&a, h0, None).map_err(|err| err.to_string())?;
        ensure!(v.exponents() == Some(&want), "{name}: {v:?}");
        let m = Multiarrangement::simple(a.clone());
        let direct = find_free_basis(&m, m.total());
        ensure!(direct.exponents() == Some(&want), "{name}: direct {direct:?}");
        if name == "braid-ess4" {
            let z = ziegler_restriction(&a, h0).map_err(|err| err.to_string())?;
            let r = find_free_basis(&z, z.total());
            ensure!(r.exponents() == Some(&exps(&[2, 3, 4])), "restriction {r:?}");
            let c = compare_coefficients(&a, h0, None, false).map_err(|err| err.to_string())?;
            ensure!(
                c.table.b[2] == 26 && c.sigma_values()[2] == Some(26),
                "b2={} σ2={:?}",
                c.table.b[2],
                c.sigma_values()[2]
            );
        }
    }
    Ok("boolean4 (1, 1, 1, 1), braid-ess4 (1, 2, 3, 4), b2 = σ2 = 26".into())
}

fn ziegler_consistency() -> Outcome {
    let mut checked = Vec::new();
    for e in corpus() {
        let a = e.arrangement();
        let Some(ex) = saito_free_check(&a, None).exponents().cloned() else {
            continue;
        };
        ensure!(ex.as_slice()[0] == 1, "{}: exponents {ex}", e.name);
        let rest = Exponents::new(ex.as_slice()[1..].to_vec());
        for h0 in 0..a.len() {
            let z = ziegler_restriction(&a, h0).map_err(|err| err.to_string())?;
            let sigma = sigma_coefficients(&z, z.total()).values();
            let want: Vec<Option<i64>> = (0..=rest.len()).map(|k| Some(rest.elementary_symmetric(k))).collect();
            ensure!(sigma == want, "{} at {h0}: σ={sigma:?}, want {want:?}", e.name);
            let zx = ziegler_exponents(&a, h0, None).map_err(|err| err.to_string())?;
            ensure!(zx.as_ref() == Some(&ex), "{} at {h0}: Ziegler exponents {zx:?}", e.name);
        }
        checked.push(e.name);
    }
    ensure!(!checked.is_empty(), "no free corpus arrangements");
    Ok(checked.join(", "))
}

fn rank2_exponents_cases() -> Outcome {
    let simple = |rows: &[&[i64]]| CentralArrangement::from_integer_rows(2, rows).unwrap();
    let cases = [
        (Multiarrangement::simple(simple(&[&[1, 0], &[0, 1]])), exps(&[1, 1])),
        (
            Multiarrangement::simple(simple(&[&[1, 0], &[0, 1], &[1, 1]])),
            exps(&[1, 2]),
        ),
        (
            Multiarrangement::new(simple(&[&[1, 0], &[0, 1], &[1, 1]]), vec![2, 2, 1]).unwrap(),
            exps(&[2, 3]),
        ),
    ];
    for (m, want) in &cases {
        let fb = rank2_exponents(m).map_err(|err| err.to_string())?;
        ensure!(&fb.exponents == want, "{m:?}: {}", fb.exponents);
        ensure!(fb.exponents.sum() == m.total(), "d1+d2 != |m|");
        ensure!(
            saito_check(&fb.basis, m).map_err(|err| err.to_string())?,
            "basis fails Saito"
        );
    }
    Ok("(1, 1), (1, 2), (2, 3)".into())
}

fn random_arrangement(rng: &mut ChaCha8Rng) -> CentralArrangement {
    loop {
        let dim = rng.random_range(1..=3usize);
        let n = rng.random_range(1..=7usize);
        let mut seen = HashSet::new();
        let forms: Vec<LinearForm> = (0..n)
            .filter_map(|_| {
                let row: Vec<Rational> = (0..dim)
                    .map(|_| Rational::new(rng.random_range(-4i64..=4).into(), rng.random_range(1i64..=3).into()))
                    .collect();
                LinearForm::from_rationals(&row)
            })
            .filter(|f| seen.insert(f.clone()))
            .collect();
        if !forms.is_empty() {
            return CentralArrangement::from_forms(dim, forms).unwrap();
        }
    }
}

fn structural_properties(a: &CentralArrangement) -> Result<(), String> {
    let chi = char_poly(a);
    ensure!(chi.is_monic() && chi.degree() == Some(a.dim()), "{a}: χ = {chi}");
    let chi0 = chi
        .div_t_minus_one()
        .map_err(|_| format!("{a}: (t-1) does not divide {chi}"))?;
    for k in 0..=a.dim() {
        let c = chi.coeff(k);
        ensure!(c == 0 || (c > 0) == ((a.dim() - k) % 2 == 0), "{a}: signs of {chi}");
    }
    if a.dim() < 2 {
        return Ok(());
    }
    for h0 in 0..a.len() {
        let d = decone(a, h0).map_err(|err| err.to_string())?;
        ensure!(
            char_poly(&d) == chi0,
            "{a} at {h0}: χ(dA) = {}, χ0 = {chi0}",
            char_poly(&d)
        );
        let dr = DeconeRestriction::new(a, h0).map_err(|err| err.to_string())?;
        for (y, &x) in dr.rho_map().iter().enumerate() {
            let (cy, cx) = (dr.decone_lattice.flat(y).codim, dr.restriction_lattice.flat(x).codim);
            ensure!(cy == cx, "{a} at {h0}: ρ sends codim {cy} to {cx}");
        }
        let t = b_coefficients(a, h0).map_err(|err| err.to_string())?;
        for (i, &bi) in t.b.iter().enumerate() {
            let s: i64 = t.per_flat.iter().filter(|f| f.codim == i).map(|f| f.b).sum();
            ensure!(s == bi, "{a} at {h0}: Σ b{i}^X = {s}, b{i} = {bi}");
        }
    }
    Ok(())
}

fn randomized() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_da11);
    let cases = 200;
    for _ in 0..cases {
        structural_properties(&random_arrangement(&mut rng))?;
    }
    Ok(format!("{cases} seeded cases"))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 8] = [
        ("1 oracle agreement", oracle_agreement, Some(secs(60))),
        ("2 b0 = σ0 = 1, b1 = σ1 = |m|", low_identities, None),
        (
            "3 b_i >= σ_i >= 0 when tame, b2 >= σ2 always",
            coefficient_inequality,
            None,
        ),
        ("4 rank-3 freeness from b2 = d1*d2", yoshinaga_rank3, Some(secs(5))),
        (
            "5 rank-4 freeness via restriction",
            abe_yoshinaga_rank4,
            Some(secs(120)),
        ),
        ("6 Ziegler σ = elementary symmetric", ziegler_consistency, None),
        ("7 rank-2 exponents", rank2_exponents_cases, Some(secs(1))),
        ("8 randomized structural properties", randomized, Some(secs(120))),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name}  [{elapsed:.2?}]  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  [{elapsed:.2?}]  {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria fail");
        ExitCode::FAILURE
    }
}

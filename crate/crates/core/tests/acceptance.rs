//! Acceptance suite. Runs every criterion, prints one `[PASS]`/`[FAIL]` line
//! each, and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dtorus::criteria::{
    d2_closed_form, is_zero_eigenvalue, lowerbound_pq_witness, pq_optimality_check,
    product_inequality_check, table60_check, verify_bound24, zero_lower_bound_family,
};
use dtorus::cyclotomic::{context, CycElt};
use dtorus::spectrum::{membership, multiplicity_of_value, torus_spectrum, DEFAULT_BUDGET};
use dtorus::vanishing::{
    is_symmetric_rotation, is_vanishing, minimal_vanishing_sums, vanishing_length_exists,
    w_membership, RootMultiset,
};
use dtorus::zeta::{cjk_table, r2};
use dtorus::{Error, Result};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome { pass, summary: summary.into(), details: Vec::new() }
    }

    fn with(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }
}

fn zero_mult(n: u64, d: usize) -> Result<BigUint> {
    multiplicity_of_value(n, d, &context(n)?.zero(), DEFAULT_BUDGET)
}

fn c1_zero_d2() -> Result<Outcome> {
    let bad: Vec<String> = (2..=200u64)
        .into_par_iter()
        .map(|h| 2 * h)
        .map(|n| Ok((n, zero_mult(n, 2)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(n, m)| *m != BigUint::from(2 * n - 2))
        .map(|(n, m)| format!("N={n}: m(0)={m}"))
        .collect();
    let pass = bad.is_empty();
    let mut o = Outcome::new(pass, "m_{T^2_N}(0) = 2N-2 for every even N in [4, 400]");
    for b in bad {
        o = o.with(b);
    }
    Ok(o)
}

fn closed_form_mismatches(n: u64) -> Result<Vec<String>> {
    let t = torus_spectrum(n, 2, DEFAULT_BUDGET)?;
    let ctx = t.context().clone();
    let cos: Vec<CycElt> = (0..n).map(|k| ctx.cos_key(k as i64)).collect::<Result<_>>()?;
    let mut bad = Vec::new();
    for k1 in 0..n {
        for k2 in 0..n {
            let key = cos[k1 as usize].checked_add(&cos[k2 as usize])?;
            let m = t.count(&key);
            let f = d2_closed_form(n, k1, k2)?;
            if m != BigUint::from(f) {
                bad.push(format!("N={n} ({k1},{k2}): formula {f}, enumeration {m}"));
            }
        }
    }
    Ok(bad)
}

fn c2_closed_forms() -> Result<Outcome> {
    let ns: Vec<u64> = (3..=200u64)
        .filter(|&n| {
            if n % 2 == 1 {
                n <= 199
            } else {
                n >= 4 && n % 12 != 0 && n % 30 != 0 && n % 42 != 0
            }
        })
        .collect();
    let bad: Vec<String> = ns
        .par_iter()
        .map(|&n| closed_form_mismatches(n))
        .collect::<Result<Vec<_>>>()?
        .concat();
    let pairs: u64 = ns.iter().map(|n| n * n).sum();
    let mut o = Outcome::new(
        bad.is_empty(),
        format!("d2_closed_form equals enumeration on {} moduli, {pairs} index pairs", ns.len()),
    );
    for b in bad.into_iter().take(20) {
        o = o.with(b);
    }
    Ok(o)
}

fn c3_bound24() -> Result<Outcome> {
    let reports: Vec<std::result::Result<(u64, u64), String>> = (3..=420u64)
        .into_par_iter()
        .map(|n| match verify_bound24(n, DEFAULT_BUDGET) {
            Ok(r) => Ok((n, r.max_multiplicity)),
            Err(e) => Err(format!("N={n}: {e}")),
        })
        .collect();
    let violations: Vec<String> = reports.iter().filter_map(|r| r.clone().err()).collect();
    let at24: Vec<u64> = reports
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .filter(|(_, m)| *m == 24)
        .map(|(n, _)| *n)
        .collect();
    let bound_ok = violations.is_empty();

    let r60 = verify_bound24(60, DEFAULT_BUDGET)?;
    let ctx = context(60)?;
    let mut expected = Vec::new();
    for k in [6, 12] {
        let c = ctx.cos_key(k)?;
        expected.push(c.checked_neg()?);
        expected.push(c);
    }
    let mut attained: Vec<CycElt> = r60.attaining.iter().map(|(k, _)| k.clone()).collect();
    attained.sort();
    expected.sort();
    let n60_ok = r60.max_multiplicity == 24 && attained == expected;

    let table = table60_check(DEFAULT_BUDGET)?;
    let printed_ok = table.printed_values_confirmed();
    let exact_ok = table.matches_exactly();

    let mut o = Outcome::new(
        bound_ok && n60_ok && exact_ok,
        "bound 24 on T^2_N for N <= 420, attained at N=60, T^2_60 table as printed",
    )
    .with(format!(
        "bound <= 24 for 3 <= N <= 420: {} (maximum 24 attained at N = {at24:?})",
        verdict(bound_ok)
    ))
    .with(format!(
        "N=60 maximum {} attained exactly by +-2cos(pi/5), +-2cos(2pi/5): {}",
        r60.max_multiplicity,
        verdict(n60_ok)
    ))
    .with(format!("every printed value has its printed multiplicity: {}", verdict(printed_ok)))
    .with(format!("printed table is the complete list above 8: {}", verdict(exact_ok)));
    for v in violations {
        o = o.with(v);
    }
    for row in &table.rows {
        o = o.with(format!(
            "  row {}: printed {} values, computed {} values, missing {}, unprinted {}",
            row.multiplicity,
            row.printed.len(),
            row.computed.len(),
            row.missing.len(),
            row.unprinted.len()
        ));
    }
    if !table.extra_multiplicities.is_empty() {
        o = o.with(format!("  multiplicities without a row: {:?}", table.extra_multiplicities));
    }
    Ok(o)
}

fn c4_zero_criterion() -> Result<Outcome> {
    let cases: Vec<(u64, usize)> =
        (3..=60u64).flat_map(|n| (1..=6usize).map(move |d| (n, d))).collect();
    type Case = (u64, usize, Option<(bool, bool)>);
    let results: Vec<Case> = cases
        .par_iter()
        .map(|&(n, d)| {
            let crit = is_zero_eigenvalue(n, d)?;
            let zero = context(n)?.zero();
            match membership(n, d, &zero, DEFAULT_BUDGET) {
                Ok(m) => Ok((n, d, Some((crit, m)))),
                Err(Error::BudgetExceeded { .. }) => Ok((n, d, None)),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let skipped = results.iter().filter(|r| r.2.is_none()).count();
    let bad: Vec<String> = results
        .iter()
        .filter_map(|&(n, d, r)| match r {
            Some((c, m)) if c != m => Some(format!("N={n} d={d}: criterion {c}, membership {m}")),
            _ => None,
        })
        .collect();
    let mut o = Outcome::new(
        bad.is_empty(),
        format!(
            "is_zero_eigenvalue agrees with membership for N <= 60, d <= 6 ({} cases, {skipped} over budget)",
            results.len() - skipped
        ),
    );
    for b in bad {
        o = o.with(b);
    }
    Ok(o)
}

fn c5_growth() -> Result<Outcome> {
    let m15 = zero_mult(15, 4)?;
    let m105 = zero_mult(105, 4)?;
    let a_ok = m15 == m105;

    let ns = [30u64, 60, 90, 120];
    let mut b_ok = true;
    let mut b_lines = Vec::new();
    for n in ns {
        let m = zero_mult(n, 3)?;
        let m2 = zero_mult(2 * n, 3)?;
        let ratio_ok = &m * 2u32 >= BigUint::from(n);
        let slope_ok = &m2 * 2u32 >= &m * 3u32;
        b_ok &= ratio_ok && slope_ok;
        b_lines.push(format!("  N={n}: m(0)={m}, m at 2N={m2}"));
    }

    let c15 = multiplicity_of_value(15, 4, &context(15)?.cos_key(1)?, DEFAULT_BUDGET)?;
    let c45 = multiplicity_of_value(45, 4, &context(45)?.cos_key(1)?, DEFAULT_BUDGET)?;
    let c_ok = c15 >= BigUint::from(2u32) && c45 >= BigUint::from(7u32);

    let mut o = Outcome::new(a_ok && b_ok && c_ok, "growth dichotomy on T^3 and T^4")
        .with(format!(
            "(a) m_{{T^4_15}}(0) = {m15}, m_{{T^4_105}}(0) = {m105}: {}",
            verdict(a_ok)
        ))
        .with(format!("(b) m_{{T^3_N}}(0)/N >= 1/2 and doubling slope >= 1.5: {}", verdict(b_ok)));
    for l in b_lines {
        o = o.with(l);
    }
    Ok(o.with(format!(
        "(c) m_{{T^4_15}}(2cos 2pi/15) = {c15} >= 2, m_{{T^4_45}}(2cos 2pi/45) = {c45} >= 7: {}",
        verdict(c_ok)
    )))
}

fn c6_vanishing() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in [5u64, 6, 10, 15, 21, 30] {
        for l in 0..=8usize {
            let found = match vanishing_length_exists(n, l, DEFAULT_BUDGET) {
                Ok(f) => f,
                Err(Error::BudgetExceeded { .. }) => continue,
                Err(e) => return Err(e),
            };
            checked += 1;
            if let Some(w) = found.as_ref().filter(|w| !w.is_empty()) {
                let m = RootMultiset::new(n, w.iter().map(|&e| e as i64))?;
                if m.len() != l || !is_vanishing(&m)? {
                    bad.push(format!("N={n} L={l}: witness {m} does not vanish"));
                }
            }
            let predicted = w_membership(n, l as u64).is_some();
            if found.is_some() != predicted {
                bad.push(format!("N={n} L={l}: search {}, semigroup {predicted}", found.is_some()));
            }
        }
    }
    let minimal = minimal_vanishing_sums(30, 5, DEFAULT_BUDGET)?;
    let mut asym = Vec::new();
    for s in minimal.iter().filter(|s| s.minimal) {
        let sym = match is_symmetric_rotation(&s.roots) {
            Ok(r) => r.is_some(),
            Err(Error::NotApplicable(_)) => false,
            Err(e) => return Err(e),
        };
        if !sym {
            asym.push(s.roots.to_string());
        }
    }
    let n_min = minimal.iter().filter(|s| s.minimal).count();
    let mut o = Outcome::new(
        bad.is_empty() && asym.is_empty() && n_min > 0,
        format!(
            "vanishing lengths match W(N) on {checked} (N, L) cases; {n_min} minimal sums over U_30 of size <= 5 all symmetric"
        ),
    );
    for b in bad.into_iter().chain(asym) {
        o = o.with(b);
    }
    Ok(o)
}

fn c7_pq() -> Result<Outcome> {
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23];
    let mut witnesses = 0;
    let mut bad = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let lo = ((p - 1) * (q - 2)).max(p + q + 1);
            for two_d in lo..=lo + 40 {
                if two_d % 2 == 1 {
                    continue;
                }
                let d = two_d / 2;
                match lowerbound_pq_witness(p, q, d) {
                    Ok((k1, k2)) if k1 * p + k2 * q == two_d && k1.max(k2) >= 2 => witnesses += 1,
                    Ok(w) => bad.push(format!("p={p} q={q} d={d}: invalid witness {w:?}")),
                    Err(e) => bad.push(format!("p={p} q={q} d={d}: {e}")),
                }
            }
            if !pq_optimality_check(p, q)? {
                bad.push(format!("p={p} q={q}: (p-1)(q-2)-2 is representable"));
            }
        }
    }
    let mut o = Outcome::new(
        bad.is_empty(),
        format!("{witnesses} <p,q> witnesses verified, optimality holds for all 28 pairs"),
    );
    for b in bad {
        o = o.with(b);
    }
    Ok(o)
}

fn c8_r2() -> Result<Outcome> {
    const LIMIT: i64 = 10_000;
    let mut brute = vec![0u64; LIMIT as usize + 1];
    for a in -100i64..=100 {
        for b in -100i64..=100 {
            let m = a * a + b * b;
            if m <= LIMIT {
                brute[m as usize] += 1;
            }
        }
    }
    let bad: Vec<String> = (0..=LIMIT as u64)
        .filter(|&m| r2(m) != brute[m as usize])
        .map(|m| format!("M={m}: formula {}, lattice count {}", r2(m), brute[m as usize]))
        .collect();
    let mut o = Outcome::new(bad.is_empty(), "r2 formula equals lattice count for M <= 10^4");
    for b in bad.into_iter().take(20) {
        o = o.with(b);
    }
    Ok(o)
}

fn c9_cjk() -> Result<Outcome> {
    let t = cjk_table(2.0, &[16, 32, 64, 128], 1_000_000, 128, DEFAULT_BUDGET)?;
    let gaps = t.gaps();
    let reference = t.reference.to_f64();
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let final_rel = gaps[gaps.len() - 1] / reference;
    let mut o = Outcome::new(
        decreasing && final_rel < 0.02,
        format!(
            "N^-4 zeta_{{T^2_N}}(2) approaches the continuum sum (final relative gap {:.3}%)",
            100.0 * final_rel
        ),
    )
    .with(format!("  reference (cutoff 10^6) = {}", t.reference.to_decimal(20)));
    for (row, g) in t.rows.iter().zip(&gaps) {
        o = o.with(format!(
            "  N={:>3}: {}  gap {:.3e} ({:.3}%)",
            row.n,
            row.value.to_decimal(20),
            g,
            100.0 * g / reference
        ));
    }
    Ok(o)
}

fn c10_global_exponent() -> Result<Outcome> {
    let mut pass = true;
    let mut lines = Vec::new();
    for (n, k) in [(9u64, 1u32), (15, 1), (21, 1), (9, 2)] {
        let r = zero_lower_bound_family(n, k, DEFAULT_BUDGET)?;
        pass &= r.holds();
        lines.push(format!(
            "  m_{{T^{}_{n}}}(0) = {} >= {}",
            r.dim, r.multiplicity, r.lower_bound
        ));
    }
    let mut o = Outcome::new(pass, "zero multiplicity at least (N/p1)^k");
    for l in lines {
        o = o.with(l);
    }
    Ok(o)
}

fn c11_product() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let cases: Vec<(u64, usize, Vec<u64>, usize)> = (0..200)
        .map(|_| {
            let n = rng.gen_range(3..=20u64);
            let d = rng.gen_range(2..=3usize);
            let tuple = (0..d).map(|_| rng.gen_range(0..n)).collect();
            let d1 = rng.gen_range(1..d);
            (n, d, tuple, d1)
        })
        .collect();
    let mut bad = Vec::new();
    for (n, d, tuple, d1) in &cases {
        let r = product_inequality_check(*n, *d, tuple, *d1, DEFAULT_BUDGET)?;
        if !r.holds() {
            bad.push(format!(
                "N={n} d={d} {tuple:?} split {d1}: {} < {} * {}",
                r.whole, r.prefix, r.suffix
            ));
        }
    }
    let mut o = Outcome::new(bad.is_empty(), "product inequality on 200 seeded random cases");
    for b in bad {
        o = o.with(b);
    }
    Ok(o)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

type Criterion = (u32, &'static str, Duration, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 11] = [
        (1, "zero multiplicity d=2", secs(60), c1_zero_d2),
        (2, "closed forms d=2", secs(300), c2_closed_forms),
        (3, "optimal bound 24", secs(600), c3_bound24),
        (4, "zero-eigenvalue criterion", secs(600), c4_zero_criterion),
        (5, "growth dichotomy", secs(600), c5_growth),
        (6, "vanishing-sum lengths", secs(600), c6_vanishing),
        (7, "<p,q> lemma", secs(1), c7_pq),
        (8, "r2 formula", secs(10), c8_r2),
        (9, "CJK limit", secs(120), c9_cjk),
        (10, "optimal global exponent", secs(300), c10_global_exponent),
        (11, "product inequality", secs(60), c11_product),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let within = elapsed <= limit;
        let (pass, summary, details) = match result {
            Ok(o) => (o.pass && within, o.summary, o.details),
            Err(e) => (false, format!("error: {e}"), Vec::new()),
        };
        let tag = if pass { "[PASS]" } else { "[FAIL]" };
        println!(
            "{tag} criterion {id:>2} ({name}): {summary} [{:.2}s, limit {}s{}]",
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if within { "" } else { ", exceeded" }
        );
        for d in details {
            println!("         {d}");
        }
        if !pass {
            failed.push(id);
        }
    }
    let total = criteria.len();
    println!("acceptance: {} of {total} criteria passed", total - failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}

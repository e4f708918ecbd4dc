//! Subcommand implementations. Each returns a [`Report`]; library errors
//! propagate and are mapped to exit codes by the caller.

use dtorus::criteria::{
    d2_closed_form, factorize, eigenvalue_growth, is_prime, is_zero_eigenvalue, lowerbound_pq_witness,
    pq_optimality_check, table60_check, verify_bound24, zero_growth, GrowthClass,
};
use dtorus::cyclotomic::{context, CycElt};
use dtorus::spectrum::{
    laplacian_view, membership, multiplicity_of_tuple, multiplicity_of_value, torus_spectrum,
    tuple_key,
};
use dtorus::vanishing::{classify_cos4, is_symmetric_rotation, minimal_vanishing_sums, Cos4Params};
use dtorus::zeta::{cjk_table, zeta_continuum_partial, zeta_discrete};
use dtorus::{Error, Result};
use num_bigint::BigUint;
use num_rational::Rational64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{Report, Status};

/// Run-wide settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub budget: usize,
    pub bits: usize,
}

fn decimal(n: u64, key: &CycElt, bits: usize) -> Result<String> {
    Ok(context(n)?.approx_value(key, bits)?.re.to_decimal(30))
}

fn ints<T: Copy + Into<Value>>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|&x| x.into()).collect())
}

fn growth_fields(report: Report, class: &GrowthClass) -> Report {
    match class {
        GrowthClass::Bounded => report
            .field("class", "Bounded")
            .field("r", Value::Null)
            .field("residual_dim", Value::Null)
            .field("witness", Value::Null),
        GrowthClass::LinearGrowth { r, witness, residual_dim } => report
            .field("class", "LinearGrowth")
            .field("r", *r)
            .field("residual_dim", *residual_dim)
            .field("witness", witness.to_string())
            .field("witness_primes", ints(&witness.primes))
            .field("witness_coeffs", ints(&witness.coeffs)),
    }
}

pub fn spectrum(cfg: RunConfig, n: u64, d: usize, laplacian: bool) -> Result<Report> {
    let mut t = torus_spectrum(n, d, cfg.budget)?;
    if laplacian {
        t = laplacian_view(&t, 2 * d as u64)?;
    }
    let mut report = Report::new("spectrum")
        .field("n", n)
        .field("d", d)
        .field("kind", if laplacian { "laplacian" } else { "adjacency" })
        .field("distinct", t.len())
        .field("total", t.total().to_string())
        .columns(&["value_decimal", "key_coeffs", "multiplicity", "representative"]);
    for (k, e) in t.sorted_entries() {
        report.row(vec![
            decimal(n, k, cfg.bits)?.into(),
            ints(k.coeffs()),
            e.count.to_string().into(),
            ints(&e.representative),
        ]);
    }
    Ok(report)
}

pub fn mult(cfg: RunConfig, n: u64, d: usize, tuple: &[u64]) -> Result<Report> {
    let m = multiplicity_of_tuple(n, d, tuple, cfg.budget)?;
    let key = tuple_key(&*context(n)?, tuple)?;
    let closed = if d == 2 {
        match d2_closed_form(n, tuple[0], tuple[1]) {
            Ok(f) => Some(f),
            Err(Error::NotApplicable(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let mismatch = closed.is_some_and(|f| BigUint::from(f) != m);
    Ok(Report::new("mult")
        .field("n", n)
        .field("d", d)
        .field("tuple", ints(tuple))
        .field("value_decimal", decimal(n, &key, cfg.bits)?)
        .field("multiplicity", m.to_string())
        .field("closed_form", closed.map_or(Value::Null, |f| f.to_string().into()))
        .status(if mismatch { Status::Internal } else { Status::Pass }))
}

pub fn growth(cfg: RunConfig, n: u64, d: usize, tuple: &[u64]) -> Result<Report> {
    let class = eigenvalue_growth(n, d, tuple, cfg.budget)?;
    let report = Report::new("growth").field("n", n).field("d", d).field("tuple", ints(tuple));
    Ok(growth_fields(report, &class))
}

pub fn zero(cfg: RunConfig, n: u64, d: usize) -> Result<Report> {
    let is_zero = is_zero_eigenvalue(n, d)?;
    let report = Report::new("zero")
        .field("n", n)
        .field("factorization", factorize(n).to_string())
        .field("d", d)
        .field("eigenvalue", is_zero);
    if !is_zero {
        return Ok(report.field("multiplicity", "0"));
    }
    let m = multiplicity_of_value(n, d, &context(n)?.zero(), cfg.budget)?;
    let class = zero_growth(n, d)?;
    Ok(growth_fields(report.field("multiplicity", m.to_string()), &class))
}

fn rat(q: &Rational64) -> Value {
    q.to_string().into()
}

pub fn cos4(angles: [Rational64; 4]) -> Result<Report> {
    let c = classify_cos4(angles)?;
    let params = match &c.params {
        Cos4Params::Pair(a, b) => json!({ "alpha1": rat(a), "alpha2": rat(b) }),
        Cos4Params::Delta(x) => json!({ "delta": rat(x) }),
        Cos4Params::Fixed(q) => json!({ "quadruple": q.iter().map(rat).collect::<Vec<_>>() }),
        Cos4Params::None => Value::Null,
    };
    Ok(Report::new("cos4")
        .field("input", angles.iter().map(rat).collect::<Vec<_>>())
        .field("normalized", c.angles.iter().map(rat).collect::<Vec<_>>())
        .field("family", c.family.to_string())
        .field("also", c.also.iter().map(|f| f.to_string()).collect::<Vec<_>>())
        .field("params", params))
}

pub fn vanishing(cfg: RunConfig, n: u64, max_len: usize, all: bool) -> Result<Report> {
    let sums = minimal_vanishing_sums(n, max_len, cfg.budget)?;
    let minimal = sums.iter().filter(|s| s.minimal).count();
    let mut report = Report::new("vanishing")
        .field("n", n)
        .field("max_len", max_len)
        .field("vanishing", sums.len())
        .field("minimal", minimal)
        .columns(&["size", "exponents", "minimal", "symmetric"]);
    for s in sums.iter().filter(|s| all || s.minimal) {
        let sym = match is_symmetric_rotation(&s.roots) {
            Ok(Some((p, a))) => json!({ "p": p, "a": a }),
            Ok(None) | Err(Error::NotApplicable(_)) => Value::Null,
            Err(e) => return Err(e),
        };
        report.row(vec![s.roots.len().into(), ints(s.roots.exponents()), s.minimal.into(), sym]);
    }
    Ok(report)
}

pub fn zeta(cfg: RunConfig, n: Option<u64>, d: usize, s: f64, cutoff: Option<u64>) -> Result<Report> {
    let (report, v) = match (n, cutoff) {
        (Some(n), None) => (
            Report::new("zeta").field("n", n).field("d", d),
            zeta_discrete(n, d, s, cfg.bits, cfg.budget)?,
        ),
        (None, Some(c)) => (
            Report::new("zeta").field("cutoff", c),
            zeta_continuum_partial(s, c, cfg.bits)?,
        ),
        _ => {
            return Err(Error::InvalidArgument(
                "give exactly one of --n (discrete) or --cutoff (continuum)".into(),
            ))
        }
    };
    Ok(report
        .field("s", s)
        .field("value_decimal", v.to_decimal(30))
        .field("radius", format!("{:.3e}", v.radius())))
}

pub fn verify_bound24_cmd(cfg: RunConfig, nmin: u64, nmax: u64) -> Result<Report> {
    let results: Vec<(u64, Result<u64>)> = (nmin.max(3)..=nmax)
        .into_par_iter()
        .map(|n| (n, verify_bound24(n, cfg.budget).map(|r| r.max_multiplicity)))
        .collect();
    let mut report = Report::new("verify bound24").columns(&["n", "max_multiplicity", "ok"]);
    let mut failures = Vec::new();
    let mut best = 0;
    let mut attained = Vec::new();
    for (n, r) in results {
        match r {
            Ok(m) => {
                if m > best {
                    best = m;
                    attained.clear();
                }
                if m == best {
                    attained.push(n);
                }
                report.row(vec![n.into(), m.into(), true.into()]);
            }
            Err(Error::Bound24Violated { multiplicity, .. }) => {
                failures.push(n);
                report.row(vec![n.into(), multiplicity.into(), false.into()]);
            }
            Err(e) => return Err(e),
        }
    }
    let r60 = if (nmin..=nmax).contains(&60) { Some(verify_bound24(60, cfg.budget)?) } else { None };
    let at60: Value = match r60 {
        Some(r) => r
            .attaining
            .iter()
            .map(|(k, _)| decimal(60, k, cfg.bits).map(Value::from))
            .collect::<Result<Vec<_>>>()?
            .into(),
        None => Value::Null,
    };
    Ok(report
        .field("bound", 24)
        .field("max", best)
        .field("attained_at", ints(&attained))
        .field("attaining_values_n60", at60)
        .field("failures", ints(&failures))
        .status(if failures.is_empty() { Status::Pass } else { Status::ClaimFailed }))
}

pub fn verify_table60(cfg: RunConfig) -> Result<Report> {
    let t = table60_check(cfg.budget)?;
    let dec = |ks: &[CycElt]| -> Result<Value> {
        Ok(ks.iter().map(|k| decimal(60, k, cfg.bits)).collect::<Result<Vec<_>>>()?.into())
    };
    let mut report = Report::new("verify table60")
        .columns(&["multiplicity", "printed", "computed", "missing", "unprinted"]);
    for r in &t.rows {
        report.row(vec![
            r.multiplicity.into(),
            dec(&r.printed)?,
            r.computed.len().into(),
            dec(&r.missing)?,
            dec(&r.unprinted)?,
        ]);
    }
    let status = if t.matches_exactly() { Status::Pass } else { Status::ClaimFailed };
    Ok(report
        .field("printed_values_confirmed", t.printed_values_confirmed())
        .field("matches_exactly", t.matches_exactly())
        .field("extra_multiplicities", ints(&t.extra_multiplicities))
        .status(status))
}

pub fn verify_zero(cfg: RunConfig, nmax: u64, dmax: usize) -> Result<Report> {
    let cases: Vec<(u64, usize)> =
        (3..=nmax).flat_map(|n| (1..=dmax).map(move |d| (n, d))).collect();
    let results: Vec<(u64, usize, bool, bool)> = cases
        .par_iter()
        .map(|&(n, d)| {
            let c = is_zero_eigenvalue(n, d)?;
            let m = membership(n, d, &context(n)?.zero(), cfg.budget)?;
            Ok((n, d, c, m))
        })
        .collect::<Result<_>>()?;
    let mut report =
        Report::new("verify zero").columns(&["n", "d", "criterion", "membership", "ok"]);
    let mut failures = 0;
    for (n, d, c, m) in results {
        if c != m {
            failures += 1;
        }
        report.row(vec![n.into(), d.into(), c.into(), m.into(), (c == m).into()]);
    }
    Ok(report
        .field("nmax", nmax)
        .field("dmax", dmax)
        .field("cases", cases.len())
        .field("failures", failures)
        .status(if failures == 0 { Status::Pass } else { Status::ClaimFailed }))
}

pub fn verify_cjk(cfg: RunConfig, s: f64, cutoff: u64, ns: &[u64], max_rel_gap: f64) -> Result<Report> {
    let t = cjk_table(s, ns, cutoff, cfg.bits, cfg.budget)?;
    let gaps = t.gaps();
    let reference = t.reference.to_f64();
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let final_rel = gaps.last().map(|g| g / reference);
    let close = final_rel.is_none_or(|r| r < max_rel_gap);
    let mut report = Report::new("verify cjk")
        .columns(&["n", "value_decimal", "gap", "relative_gap"]);
    for (row, g) in t.rows.iter().zip(&gaps) {
        report.row(vec![
            row.n.into(),
            row.value.to_decimal(30).into(),
            format!("{g:.6e}").into(),
            format!("{:.6e}", g / reference).into(),
        ]);
    }
    Ok(report
        .field("s", s)
        .field("cutoff", cutoff)
        .field("reference_decimal", t.reference.to_decimal(30))
        .field("gaps_strictly_decreasing", decreasing)
        .field("final_relative_gap_below", max_rel_gap)
        .field("final_relative_gap_ok", close)
        .status(if decreasing && close { Status::Pass } else { Status::ClaimFailed }))
}

pub fn verify_semigroup(pmax: u64, span: u64) -> Result<Report> {
    let primes: Vec<u64> = (3..=pmax).filter(|&p| is_prime(p)).collect();
    let mut report = Report::new("verify semigroup")
        .columns(&["p", "q", "two_d_from", "two_d_to", "witnesses", "optimal", "ok"]);
    let mut failures = 0;
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let lo = ((p - 1) * (q - 2)).max(p + q + 1);
            let mut valid = 0u64;
            let mut all = true;
            for d in lo.div_ceil(2)..=(lo + span) / 2 {
                match lowerbound_pq_witness(p, q, d) {
                    Ok((k1, k2)) if k1 * p + k2 * q == 2 * d && k1.max(k2) >= 2 => valid += 1,
                    Ok(_) | Err(Error::PreconditionViolated(_)) => all = false,
                    Err(e) => return Err(e),
                }
            }
            let optimal = pq_optimality_check(p, q)?;
            let ok = all && optimal;
            if !ok {
                failures += 1;
            }
            report.row(vec![
                p.into(),
                q.into(),
                lo.into(),
                (lo + span).into(),
                valid.into(),
                optimal.into(),
                ok.into(),
            ]);
        }
    }
    Ok(report
        .field("pmax", pmax)
        .field("failures", failures)
        .status(if failures == 0 { Status::Pass } else { Status::ClaimFailed }))
}

//! Decision procedures and closed forms for torus eigenvalue multiplicities.
//!
//! Covers zero-eigenvalue existence, the set I(0;N), the bounded/linear growth
//! dichotomy, closed-form multiplicities for d = 2, the bound 24, the two-prime
//! representation lemma, and checks of the product inequality and lower-bound
//! families.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{self, CycElt};
use crate::error::{Error, Result};
use crate::spectrum::{self, Entry};

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> Vec<u64> {
        self.pairs.iter().map(|&(p, _)| p).collect()
    }

    pub fn product(&self) -> u128 {
        self.pairs.iter().map(|&(p, a)| (p as u128).pow(a)).product()
    }

    /// The l-th smallest prime divisor (0-based).
    pub fn prime(&self, l: usize) -> Option<u64> {
        self.pairs.get(l).map(|&(p, _)| p)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|&(p, a)| if a == 1 { p.to_string() } else { format!("{p}^{a}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Trial-division factorization. `factorize(1)` (and `factorize(0)`) is empty.
pub fn factorize(n: u64) -> Factorization {
    let mut pairs = Vec::new();
    if n == 0 {
        return Factorization { pairs };
    }
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m % p == 0 {
            let mut a = 0;
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            pairs.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        pairs.push((m, 1));
    }
    Factorization { pairs }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).pairs == [(n, 1)]
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, a) in factorize(n).pairs() {
        let cur = divs.clone();
        let mut pk = 1;
        for _ in 0..a {
            pk *= p;
            divs.extend(cur.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .pairs()
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Membership of `l` in the numerical semigroup generated by `gens`.
///
/// Returns coefficients `b` aligned with `gens` and `Σ b_j gens_j = l`.
pub fn semigroup_member(l: u64, gens: &[u64]) -> Option<Vec<u64>> {
    if gens.contains(&0) {
        return None;
    }
    let len = l as usize;
    // via[v] = index of a generator g with v − g reachable
    let mut via: Vec<Option<usize>> = vec![None; len + 1];
    let mut reach = vec![false; len + 1];
    reach[0] = true;
    for v in 1..=len {
        for (j, &g) in gens.iter().enumerate() {
            let g = g as usize;
            if g <= v && reach[v - g] {
                reach[v] = true;
                via[v] = Some(j);
                break;
            }
        }
    }
    if !reach[len] {
        return None;
    }
    let mut coeffs = vec![0u64; gens.len()];
    let mut v = len;
    while v > 0 {
        let j = via[v].expect("reachable value has a predecessor");
        coeffs[j] += 1;
        v -= gens[j] as usize;
    }
    Some(coeffs)
}

/// Certificate that `r ∈ I(0;N)`: `2r = Σ b_l p_l` with `b_{l0} >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct I0Witness {
    pub r: u64,
    pub primes: Vec<u64>,
    pub coeffs: Vec<u64>,
    pub l0: usize,
}

impl fmt::Display for I0Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .primes
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &b)| b > 0)
            .map(|(p, b)| format!("{b}·{p}"))
            .collect();
        write!(f, "2·{} = {}", self.r, terms.join(" + "))
    }
}

/// Membership of `r` in I(0;N), decided as: some `2r − 2p_l` lies in the
/// semigroup generated by the prime divisors of N.
pub fn in_i0(n: u64, r: u64) -> Option<I0Witness> {
    let primes = factorize(n).primes();
    for (l, &p) in primes.iter().enumerate() {
        if 2 * r < 2 * p {
            continue;
        }
        if let Some(mut coeffs) = semigroup_member(2 * r - 2 * p, &primes) {
            coeffs[l] += 2;
            return Some(I0Witness { r, primes, coeffs, l0: l });
        }
    }
    None
}

fn require_nd(n: u64, d: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("N = {n} < 3")));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    Ok(())
}

/// Whether 0 is an eigenvalue of T^d_N, by the four-case criterion.
pub fn is_zero_eigenvalue(n: u64, d: usize) -> Result<bool> {
    require_nd(n, d)?;
    let f = factorize(n);
    if n % 2 == 1 {
        return Ok(semigroup_member(2 * d as u64, &f.primes()).is_some());
    }
    if d % 2 == 0 {
        return Ok(true);
    }
    match f.prime(1) {
        Some(p2) if p2 <= d as u64 => Ok(true),
        _ => Ok(n % 4 == 0),
    }
}

/// Bounded versus linear-in-N growth of a multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthClass {
    Bounded,
    LinearGrowth {
        /// Number of coordinates absorbed by a vanishing block.
        r: usize,
        witness: I0Witness,
        /// d − r: the dimension in which the value is still an eigenvalue.
        residual_dim: usize,
    },
}

impl GrowthClass {
    pub fn is_linear(&self) -> bool {
        matches!(self, GrowthClass::LinearGrowth { .. })
    }
}

/// Growth class of the zero eigenvalue of T^d_N.
pub fn zero_growth(n: u64, d: usize) -> Result<GrowthClass> {
    if !is_zero_eigenvalue(n, d)? {
        return Err(Error::ZeroNotEigenvalue { n, d });
    }
    Ok(match in_i0(n, d as u64) {
        Some(witness) => GrowthClass::LinearGrowth { r: d, witness, residual_dim: 0 },
        None => GrowthClass::Bounded,
    })
}

/// Growth class of the eigenvalue at `tuple`: linear iff for some `r` in
/// `1..=d`, `r ∈ I(0;N)` and the value is an eigenvalue of T^{d−r}_N.
/// The smallest such `r` is reported.
pub fn eigenvalue_growth(n: u64, d: usize, tuple: &[u64], budget: usize) -> Result<GrowthClass> {
    require_nd(n, d)?;
    if tuple.len() != d || tuple.iter().any(|&k| k >= n) {
        return Err(Error::InvalidArgument(format!(
            "expected {d} indices in 0..{n}, got {tuple:?}"
        )));
    }
    let ctx = cyclotomic::context(n)?;
    let key = spectrum::tuple_key(&ctx, tuple)?;
    for r in 1..=d {
        let Some(witness) = in_i0(n, r as u64) else { continue };
        if spectrum::membership(n, d - r, &key, budget)? {
            return Ok(GrowthClass::LinearGrowth { r, witness, residual_dim: d - r });
        }
    }
    Ok(GrowthClass::Bounded)
}

/// Closed-form multiplicity of the T^2_N eigenvalue at `(k1, k2)`.
///
/// Applies to odd N and to even N divisible by none of 12, 30, 42. Pairs
/// with eigenvalue 0 (even N, `k1 ± k2 ≡ N/2`) get `2N − 2`.
pub fn d2_closed_form(n: u64, k1: u64, k2: u64) -> Result<u64> {
    if n < 3 || k1 >= n || k2 >= n {
        return Err(Error::InvalidArgument(format!("pair ({k1}, {k2}) for N = {n}")));
    }
    let canon = |k: u64| k.min(n - k);
    let (a, b) = {
        let (x, y) = (canon(k1), canon(k2));
        (x.min(y), x.max(y))
    };
    if n % 2 == 1 {
        return Ok(match (a, b) {
            (0, 0) => 1,
            _ if a == 0 || a == b => 4,
            _ => 8,
        });
    }
    if n % 12 == 0 || n % 30 == 0 || n % 42 == 0 {
        return Err(Error::NotApplicable(format!(
            "N = {n} is divisible by 12, 30 or 42"
        )));
    }
    let h = n / 2;
    Ok(if a + b == h {
        2 * n - 2
    } else if (a, b) == (0, 0) || (a, b) == (h, h) {
        1
    } else if a == 0 || b == h || a == b {
        4
    } else {
        8
    })
}

/// Largest multiplicity among nonzero eigenvalues of T^2_N.
#[derive(Debug, Clone)]
pub struct Bound24Report {
    pub n: u64,
    pub max_multiplicity: u64,
    /// Keys attaining the maximum, in display order.
    pub attaining: Vec<(CycElt, Entry)>,
}

/// Computes the maximum nonzero multiplicity of T^2_N and checks it is at most 24.
pub fn verify_bound24(n: u64, budget: usize) -> Result<Bound24Report> {
    let t = spectrum::torus_spectrum(n, 2, budget)?;
    let max = t
        .iter()
        .filter(|(k, _)| !k.is_zero())
        .map(|(_, e)| e.count.clone())
        .max()
        .unwrap_or_default();
    let attaining = t
        .sorted_entries()
        .into_iter()
        .filter(|(k, e)| !k.is_zero() && e.count == max)
        .map(|(k, e)| (k.clone(), e.clone()))
        .collect();
    let max = max.to_u64().ok_or(Error::CoefficientOverflow)?;
    if max > 24 {
        return Err(Error::Bound24Violated { n, multiplicity: max });
    }
    Ok(Bound24Report { n, max_multiplicity: max, attaining })
}

/// One multiplicity class of the T^2_60 table.
#[derive(Debug, Clone)]
pub struct Table60Row {
    pub multiplicity: u64,
    /// Values listed in the published table.
    pub printed: Vec<CycElt>,
    /// Values with this multiplicity in the exact spectrum.
    pub computed: Vec<CycElt>,
    /// Printed values whose exact multiplicity differs.
    pub missing: Vec<CycElt>,
    /// Computed values absent from the printed row.
    pub unprinted: Vec<CycElt>,
}

#[derive(Debug, Clone)]
pub struct Table60Report {
    pub rows: Vec<Table60Row>,
    /// Multiplicities above 8 that have no printed row.
    pub extra_multiplicities: Vec<u64>,
}

impl Table60Report {
    /// Every printed value has its printed multiplicity.
    pub fn printed_values_confirmed(&self) -> bool {
        self.rows.iter().all(|r| r.missing.is_empty())
    }

    /// The printed table equals the exact list of multiplicities above 8.
    pub fn matches_exactly(&self) -> bool {
        self.printed_values_confirmed()
            && self.extra_multiplicities.is_empty()
            && self.rows.iter().all(|r| r.unprinted.is_empty())
    }
}

/// A multiplicity together with the keys attaining it.
pub type MultiplicityClass = (u64, Vec<(CycElt, Entry)>);

/// Multiplicity classes above `threshold`, each with its keys in display order.
pub fn high_multiplicities(n: u64, threshold: u64, budget: usize) -> Result<Vec<MultiplicityClass>> {
    let t = spectrum::torus_spectrum(n, 2, budget)?;
    let mut rows: Vec<MultiplicityClass> = Vec::new();
    for (k, e) in t.sorted_entries() {
        let c = e.count.to_u64().ok_or(Error::CoefficientOverflow)?;
        if c <= threshold {
            continue;
        }
        match rows.iter_mut().find(|(m, _)| *m == c) {
            Some((_, v)) => v.push((k.clone(), e.clone())),
            None => rows.push((c, vec![(k.clone(), e.clone())])),
        }
    }
    rows.sort_by_key(|(m, _)| *m);
    Ok(rows)
}

/// Compares the exact T^2_60 spectrum with the published table of
/// multiplicities above 8.
pub fn table60_check(budget: usize) -> Result<Table60Report> {
    let ctx = cyclotomic::context(60)?;
    let one = ctx.constant(1);
    let c = |k: i64| ctx.cos_key(k);
    let pm = |x: CycElt| -> Result<Vec<CycElt>> { Ok(vec![x.checked_neg()?, x]) };
    // π/5, 2π/5, π/15 correspond to k = 6, 12, 2 for N = 60
    let printed: Vec<(u64, Vec<CycElt>)> = vec![
        (12, [pm(c(6)?.checked_add(&one)?)?, pm(c(12)?.checked_sub(&one)?)?].concat()),
        (16, pm(c(2)?.checked_add(&one)?)?),
        (20, pm(one.clone())?),
        (24, [pm(c(6)?)?, pm(c(12)?)?].concat()),
        (118, vec![ctx.zero()]),
    ];
    let computed = high_multiplicities(60, 8, budget)?;
    let mut rows = Vec::new();
    for (m, vals) in printed {
        let comp: Vec<CycElt> = computed
            .iter()
            .find(|(cm, _)| *cm == m)
            .map(|(_, v)| v.iter().map(|(k, _)| k.clone()).collect())
            .unwrap_or_default();
        let missing = vals.iter().filter(|v| !comp.contains(v)).cloned().collect();
        let unprinted = comp.iter().filter(|v| !vals.contains(v)).cloned().collect();
        rows.push(Table60Row { multiplicity: m, printed: vals, computed: comp, missing, unprinted });
    }
    let extra_multiplicities = computed
        .iter()
        .map(|(m, _)| *m)
        .filter(|m| !rows.iter().any(|r| r.multiplicity == *m))
        .collect();
    Ok(Table60Report { rows, extra_multiplicities })
}

fn require_odd_prime_pair(p: u64, q: u64) -> Result<()> {
    if !(p < q && p > 2 && is_prime(p) && is_prime(q)) {
        return Err(Error::InvalidArgument(format!(
            "({p}, {q}) is not a pair of odd primes p < q"
        )));
    }
    Ok(())
}

/// Nonnegative `(k1, k2)` with `k1·p + k2·q = 2d` and `max(k1, k2) >= 2`.
///
/// Solves `A p + B q = 2d`, then shifts to `0 <= k2 < p`; a direct search is
/// kept as a fallback. The result is re-verified before returning.
pub fn lowerbound_pq_witness(p: u64, q: u64, d: u64) -> Result<(u64, u64)> {
    require_odd_prime_pair(p, q)?;
    let two_d = 2 * d;
    let bound = ((p - 1) * (q - 2)).max(p + q + 1);
    if two_d < bound {
        return Err(Error::PreconditionViolated(format!(
            "2d = {two_d} < max{{(p-1)(q-2), p+q+1}} = {bound}"
        )));
    }
    let valid = |k1: u64, k2: u64| k1 * p + k2 * q == two_d && k1.max(k2) >= 2;

    let (pi, qi, ti) = (p as i128, q as i128, two_d as i128);
    let eg = pi.extended_gcd(&qi);
    // eg.x·p + eg.y·q = 1
    let b = eg.y * ti;
    let k2 = b.rem_euclid(pi);
    let k1 = (ti - k2 * qi) / pi;
    if k1 >= 0 && valid(k1 as u64, k2 as u64) {
        return Ok((k1 as u64, k2 as u64));
    }
    for k2 in 0..=two_d / q {
        let rest = two_d - k2 * q;
        if rest % p == 0 && valid(rest / p, k2) {
            return Ok((rest / p, k2));
        }
    }
    Err(Error::PreconditionViolated(format!(
        "no representation of {two_d} by {p} and {q} with a coefficient >= 2"
    )))
}

/// Whether `(p−1)(q−2) − 2` lies outside the semigroup generated by p and q.
pub fn pq_optimality_check(p: u64, q: u64) -> Result<bool> {
    require_odd_prime_pair(p, q)?;
    let x = (p - 1) * (q - 2) - 2;
    Ok(semigroup_member(x, &[p, q]).is_none())
}

/// Both sides of the product inequality for one split of a tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductInequality {
    pub whole: BigUint,
    pub prefix: BigUint,
    pub suffix: BigUint,
}

impl ProductInequality {
    pub fn holds(&self) -> bool {
        self.whole >= &self.prefix * &self.suffix
    }
}

/// `m_{T^d}(μ)` against `m_{T^{d1}}(prefix) · m_{T^{d−d1}}(suffix)`.
pub fn product_inequality_check(
    n: u64,
    d: usize,
    tuple: &[u64],
    d1: usize,
    budget: usize,
) -> Result<ProductInequality> {
    if d1 == 0 || d1 >= d {
        return Err(Error::InvalidArgument(format!("split {d1} not in 1..{d}")));
    }
    let whole = spectrum::multiplicity_of_tuple(n, d, tuple, budget)?;
    let prefix = spectrum::multiplicity_of_tuple(n, d1, &tuple[..d1], budget)?;
    let suffix = spectrum::multiplicity_of_tuple(n, d - d1, &tuple[d1..], budget)?;
    Ok(ProductInequality { whole, prefix, suffix })
}

/// Zero multiplicity in T^{k·p1}_N against the lower bound `(N/p1)^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroFamilyReport {
    pub p1: u64,
    pub dim: usize,
    pub multiplicity: BigUint,
    pub lower_bound: BigUint,
}

impl ZeroFamilyReport {
    pub fn holds(&self) -> bool {
        self.multiplicity >= self.lower_bound
    }
}

pub fn zero_lower_bound_family(n: u64, k: u32, budget: usize) -> Result<ZeroFamilyReport> {
    if n < 3 || k == 0 {
        return Err(Error::InvalidArgument(format!("N = {n}, k = {k}")));
    }
    let p1 = factorize(n).prime(0).expect("N >= 3 has a prime factor");
    let dim = (k as u64 * p1) as usize;
    let zero = cyclotomic::context(n)?.zero();
    let multiplicity = spectrum::multiplicity_of_value(n, dim, &zero, budget)?;
    let lower_bound = BigUint::from(n / p1).pow(k);
    Ok(ZeroFamilyReport { p1, dim, multiplicity, lower_bound })
}

/// Tuples whose eigenvalue lies strictly outside `[−2(d−2), 2(d−2)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeScan {
    pub n: u64,
    pub d: usize,
    pub outer_tuples: BigUint,
    pub total: BigUint,
    /// outer_tuples / N^d.
    pub fraction: f64,
    pub max_multiplicity: BigUint,
}

/// Measures the outer range of the T^d_N spectrum, where multiplicities stay bounded.
pub fn range_bound_scan(n: u64, d: usize, budget: usize) -> Result<RangeScan> {
    require_nd(n, d)?;
    let t = spectrum::torus_spectrum(n, d, budget)?;
    let ctx = t.context().clone();
    let edge = 2.0 * (d as f64 - 2.0);
    let pos = ctx.constant(2 * (d as i64 - 2));
    let neg = pos.checked_neg()?;
    let mut outer = BigUint::zero();
    let mut max = BigUint::zero();
    for (k, e) in t.iter() {
        if *k == pos || *k == neg {
            continue;
        }
        let mut v = e.approx;
        if (v.abs() - edge).abs() < 1e-9 {
            v = ctx.approx_within(k, 1e-30)?.re.to_f64();
            if (v.abs() - edge).abs() < 1e-25 {
                let hi = ctx.approx_within(k, 1e-60)?;
                let diff = hi.re.to_f64().abs() - edge;
                v = if diff > 0.0 { v.signum() * (edge + 1.0) } else { 0.0 };
            }
        }
        if v > edge || v < -edge {
            outer += &e.count;
            if e.count > max {
                max = e.count.clone();
            }
        }
    }
    let total = t.total();
    let fraction = outer.to_f64().unwrap_or(0.0) / total.to_f64().unwrap_or(1.0);
    Ok(RangeScan { n, d, outer_tuples: outer, total, fraction, max_multiplicity: max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::DEFAULT_BUDGET;

    #[test]
    fn factorizations() {
        assert_eq!(factorize(60).pairs(), &[(2, 2), (3, 1), (5, 1)]);
        assert_eq!(factorize(105).pairs(), &[(3, 1), (5, 1), (7, 1)]);
        assert!(factorize(1).pairs().is_empty());
        assert_eq!(factorize(60).to_string(), "2^2·3·5");
        for n in 1..500u64 {
            assert_eq!(factorize(n).product(), n as u128);
        }
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(totient(105), 48);
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
    }

    #[test]
    fn semigroup_examples() {
        assert_eq!(semigroup_member(8, &[3, 5]), Some(vec![1, 1]));
        assert_eq!(semigroup_member(7, &[3, 5]), None);
        assert_eq!(semigroup_member(0, &[3, 5]), Some(vec![0, 0]));
        for l in (2..40).step_by(2) {
            assert!(semigroup_member(l, &[2, 7]).is_some());
        }
    }

    #[test]
    fn i0_examples() {
        assert!(in_i0(6, 2).is_some());
        assert!(in_i0(6, 1).is_none());
        let w = in_i0(15, 3).unwrap();
        assert_eq!(w.coeffs, vec![2, 0]);
        assert_eq!(w.to_string(), "2·3 = 2·3");
        assert!(in_i0(15, 4).is_none());
        for r in 2..30 {
            assert!(in_i0(12, r).is_some());
        }
    }

    #[test]
    fn zero_criterion_examples() {
        assert!(is_zero_eigenvalue(15, 4).unwrap());
        assert!(!is_zero_eigenvalue(10, 3).unwrap());
        assert!(is_zero_eigenvalue(12, 3).unwrap());
        assert!(!is_zero_eigenvalue(15, 1).unwrap());
        assert!(is_zero_eigenvalue(8, 1).unwrap());
        assert!(is_zero_eigenvalue(2, 1).is_err());
    }

    #[test]
    fn growth_examples() {
        assert!(zero_growth(12, 2).unwrap().is_linear());
        assert_eq!(zero_growth(15, 4).unwrap(), GrowthClass::Bounded);
        assert!(zero_growth(15, 3).unwrap().is_linear());
        assert_eq!(zero_growth(15, 1), Err(Error::ZeroNotEigenvalue { n: 15, d: 1 }));

        let b = DEFAULT_BUDGET;
        match eigenvalue_growth(15, 4, &[1, 0, 5, 10], b).unwrap() {
            GrowthClass::LinearGrowth { r, residual_dim, .. } => {
                assert_eq!((r, residual_dim), (3, 1))
            }
            g => panic!("{g:?}"),
        }
        assert_eq!(eigenvalue_growth(60, 2, &[24, 10], b).unwrap(), GrowthClass::Bounded);
        match eigenvalue_growth(12, 2, &[0, 6], b).unwrap() {
            GrowthClass::LinearGrowth { r, .. } => assert_eq!(r, 2),
            g => panic!("{g:?}"),
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(d2_closed_form(5, 1, 2), Ok(8));
        assert_eq!(d2_closed_form(8, 0, 4), Ok(14));
        assert!(matches!(d2_closed_form(60, 1, 2), Err(Error::NotApplicable(_))));
        assert_eq!(d2_closed_form(5, 0, 0), Ok(1));
        assert_eq!(d2_closed_form(5, 4, 1), Ok(4));
        assert_eq!(d2_closed_form(8, 2, 2), Ok(14));
        assert_eq!(d2_closed_form(8, 4, 4), Ok(1));
        assert_eq!(d2_closed_form(8, 4, 1), Ok(4));
    }

    #[test]
    fn bound24_examples() {
        let b = DEFAULT_BUDGET;
        let r = verify_bound24(60, b).unwrap();
        assert_eq!(r.max_multiplicity, 24);
        assert_eq!(r.attaining.len(), 4);
        assert_eq!(verify_bound24(5, b).unwrap().max_multiplicity, 8);
        let r = verify_bound24(12, b).unwrap();
        assert_eq!(r.max_multiplicity, 12);
        let ctx = cyclotomic::context(12).unwrap();
        let keys: Vec<_> = r.attaining.iter().map(|(k, _)| k.clone()).collect();
        assert_eq!(keys, vec![ctx.constant(1), ctx.constant(-1)]);
    }

    #[test]
    fn pq_examples() {
        assert_eq!(lowerbound_pq_witness(3, 5, 5), Ok((0, 2)));
        assert_eq!(lowerbound_pq_witness(3, 5, 6), Ok((4, 0)));
        assert_eq!(lowerbound_pq_witness(7, 11, 27), Ok((3, 3)));
        assert!(matches!(
            lowerbound_pq_witness(7, 11, 20),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(pq_optimality_check(3, 5).unwrap());
        assert!(pq_optimality_check(7, 11).unwrap());
        assert!(pq_optimality_check(3, 7).unwrap());
        assert!(pq_optimality_check(5, 3).is_err());
    }

    #[test]
    fn product_inequality_examples() {
        let b = DEFAULT_BUDGET;
        let r = product_inequality_check(12, 2, &[1, 2], 1, b).unwrap();
        assert_eq!((r.prefix.clone(), r.suffix.clone()), (2u32.into(), 2u32.into()));
        assert!(r.holds());
        let r = product_inequality_check(12, 3, &[0, 6, 1], 2, b).unwrap();
        assert_eq!(&r.prefix * &r.suffix, BigUint::from(44u32));
        assert!(r.holds());
        let r = product_inequality_check(3, 2, &[0, 0], 1, b).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn lower_bound_family_examples() {
        let b = DEFAULT_BUDGET;
        let r = zero_lower_bound_family(9, 1, b).unwrap();
        assert!(r.holds() && r.dim == 3);
        let r = zero_lower_bound_family(6, 1, b).unwrap();
        assert_eq!(r.multiplicity, BigUint::from(10u32));
        assert!(zero_lower_bound_family(15, 1, b).unwrap().holds());
    }

    #[test]
    fn range_scan_is_a_fraction() {
        let s = range_bound_scan(12, 3, DEFAULT_BUDGET).unwrap();
        assert!(s.fraction > 0.0 && s.fraction < 1.0);
        assert_eq!(s.total, BigUint::from(1728u32));
    }
}

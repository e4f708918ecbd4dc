//! Vanishing sums of roots of unity and of cosines.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Pow, Zero};
use rustc_hash::{FxHashMap, FxHashSet};

use crate::criteria::{factorize, is_prime, semigroup_member};
use crate::cyclotomic::{self, CycContext, CycElt};
use crate::error::{Error, Result};

/// A nonempty multiset of exponents mod N, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootMultiset {
    n: u64,
    exponents: Vec<u64>,
}

impl RootMultiset {
    pub fn new(n: u64, exponents: impl IntoIterator<Item = i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let mut exponents: Vec<u64> = exponents
            .into_iter()
            .map(|e| e.rem_euclid(n as i64) as u64)
            .collect();
        if exponents.is_empty() {
            return Err(Error::InvalidArgument("empty root multiset".into()));
        }
        exponents.sort_unstable();
        Ok(Self { n, exponents })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    fn key(&self, ctx: &CycContext) -> Result<CycElt> {
        let exps: Vec<i64> = self.exponents.iter().map(|&e| e as i64).collect();
        ctx.sum_reduce(&exps)
    }
}

impl fmt::Display for RootMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}} mod {}", parts.join(","), self.n)
    }
}

pub fn is_vanishing(m: &RootMultiset) -> Result<bool> {
    let ctx = cyclotomic::context(m.n)?;
    Ok(m.key(&ctx)?.is_zero())
}

/// Whether `l` is the length of some vanishing sum over U_N, by the
/// semigroup generated by the prime divisors of N. The witness pairs each
/// prime with its coefficient.
pub fn w_membership(n: u64, l: u64) -> Option<Vec<(u64, u64)>> {
    let primes = factorize(n).primes();
    let coeffs = semigroup_member(l, &primes)?;
    Some(primes.into_iter().zip(coeffs).collect())
}

/// Distinct sums of exactly `c` roots with one representative multiset each.
fn sums_of(ctx: &CycContext, c: usize, budget: usize) -> Result<FxHashMap<CycElt, Vec<u64>>> {
    let n = ctx.n();
    let mut cur: FxHashMap<CycElt, Vec<u64>> = FxHashMap::default();
    cur.insert(ctx.zero(), Vec::new());
    for _ in 0..c {
        let mut next: FxHashMap<CycElt, Vec<u64>> = FxHashMap::default();
        for (s, rep) in &cur {
            let lo = rep.last().copied().unwrap_or(0);
            for e in lo..n {
                let key = s.checked_add(&ctx.root_power(e as i64))?;
                if let std::collections::hash_map::Entry::Vacant(slot) = next.entry(key) {
                    let mut r = rep.clone();
                    r.push(e);
                    slot.insert(r);
                    if next.len() > budget {
                        return Err(Error::BudgetExceeded { limit: budget, reached: next.len() });
                    }
                }
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Searches for a vanishing multiset of exactly `l` roots in U_N by
/// meeting in the middle. `Some(vec![])` for `l = 0`.
pub fn vanishing_length_exists(n: u64, l: usize, budget: usize) -> Result<Option<Vec<u64>>> {
    if l == 0 {
        return Ok(Some(Vec::new()));
    }
    let ctx = cyclotomic::context(n)?;
    let a = l / 2;
    let sa = sums_of(&ctx, a, budget)?;
    let sb = if l - a == a { sa.clone() } else { sums_of(&ctx, l - a, budget)? };
    let mut best: Option<Vec<u64>> = None;
    for (x, rep) in &sa {
        if let Some(other) = sb.get(&x.checked_neg()?) {
            let mut w: Vec<u64> = rep.iter().chain(other).copied().collect();
            w.sort_unstable();
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
    }
    Ok(best)
}

/// A vanishing multiset found by [`minimal_vanishing_sums`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingSum {
    pub roots: RootMultiset,
    /// No proper nonempty sub-multiset vanishes.
    pub minimal: bool,
}

/// All vanishing multisets over U_N with at most `max_len` roots, in order
/// of size then exponents, each tagged minimal or decomposable.
pub fn minimal_vanishing_sums(n: u64, max_len: usize, budget: usize) -> Result<Vec<VanishingSum>> {
    if max_len > 12 {
        return Err(Error::PreconditionViolated(format!("max_len = {max_len} > 12")));
    }
    let ctx = cyclotomic::context(n)?;
    // reach[c]: sums of exactly c unrestricted roots, used to prune branches
    let mut reach: Vec<FxHashSet<CycElt>> = Vec::new();
    for c in 0..=max_len {
        let set = match sums_of(&ctx, c, budget) {
            Ok(m) => m.into_keys().collect(),
            Err(Error::BudgetExceeded { .. }) => break,
            Err(e) => return Err(e),
        };
        reach.push(set);
    }

    struct Search<'a> {
        ctx: &'a CycContext,
        reach: &'a [FxHashSet<CycElt>],
        max_len: usize,
        budget: usize,
        visited: usize,
        found: Vec<Vec<u64>>,
    }

    impl Search<'_> {
        fn completable(&self, s: &CycElt, remaining: usize) -> Result<bool> {
            if remaining >= self.reach.len() {
                return Ok(true);
            }
            let target = s.checked_neg()?;
            Ok((0..=remaining).any(|c| self.reach[c].contains(&target)))
        }

        fn dfs(&mut self, prefix: &mut Vec<u64>, sum: &CycElt) -> Result<()> {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(Error::BudgetExceeded { limit: self.budget, reached: self.visited });
            }
            if !prefix.is_empty() && sum.is_zero() {
                self.found.push(prefix.clone());
                if self.found.len() > self.budget {
                    return Err(Error::BudgetExceeded {
                        limit: self.budget,
                        reached: self.found.len(),
                    });
                }
            }
            let remaining = self.max_len - prefix.len();
            if remaining == 0 || !self.completable(sum, remaining)? {
                return Ok(());
            }
            let lo = prefix.last().copied().unwrap_or(0);
            for e in lo..self.ctx.n() {
                let next = sum.checked_add(&self.ctx.root_power(e as i64))?;
                if !self.completable(&next, remaining - 1)? {
                    continue;
                }
                prefix.push(e);
                self.dfs(prefix, &next)?;
                prefix.pop();
            }
            Ok(())
        }
    }

    let mut search = Search { ctx: &ctx, reach: &reach, max_len, budget, visited: 0, found: Vec::new() };
    search.dfs(&mut Vec::new(), &ctx.zero())?;
    let mut found = search.found;
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    found
        .into_iter()
        .map(|exps| {
            let minimal = !has_vanishing_proper_part(&ctx, &exps)?;
            let roots = RootMultiset { n, exponents: exps };
            Ok(VanishingSum { roots, minimal })
        })
        .collect()
}

fn has_vanishing_proper_part(ctx: &CycContext, exps: &[u64]) -> Result<bool> {
    let k = exps.len();
    let full = (1u32 << k) - 1;
    for mask in 1..full {
        let part: Vec<i64> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| exps[i] as i64)
            .collect();
        if ctx.sum_reduce(&part)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `Some((p, a))` iff `m = {a, a + N/p, …, a + (p−1)N/p}` with `0 <= a < N/p`.
///
/// Fails with `NotApplicable` when `|m|` is not a prime dividing N.
pub fn is_symmetric_rotation(m: &RootMultiset) -> Result<Option<(u64, u64)>> {
    let p = m.len() as u64;
    if !is_prime(p) || m.n % p != 0 {
        return Err(Error::NotApplicable(format!(
            "size {p} is not a prime divisor of {}",
            m.n
        )));
    }
    let step = m.n / p;
    let a = m.exponents[0];
    let expected: Vec<u64> = (0..p).map(|j| a + j * step).collect();
    Ok((a < step && expected == m.exponents).then_some((p, a)))
}

/// Whether the roots pair off into conjugates `{e, N − e}`; roots equal to
/// their own conjugate (0 and N/2) must occur an even number of times.
pub fn is_admissible(m: &RootMultiset) -> bool {
    let n = m.n;
    let mut counts: FxHashMap<u64, usize> = FxHashMap::default();
    for &e in &m.exponents {
        *counts.entry(e).or_default() += 1;
    }
    m.len() % 2 == 0
        && counts.iter().all(|(&e, &c)| {
            let conj = (n - e) % n;
            if conj == e {
                c % 2 == 0
            } else {
                counts.get(&conj) == Some(&c)
            }
        })
}

/// A positive exact integer bound.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BigBound {
    pub value: BigUint,
}

impl fmt::Display for BigBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// `(k+1)^{3(k+1)^2}`: the bound on non-degenerate solutions of a unit equation.
pub fn evertse_bound(k: u32) -> BigBound {
    let b = k as u64 + 1;
    BigBound { value: Pow::pow(BigUint::from(b), 3 * b * b) }
}

/// `ℓ^{3ℓ^2}`: the bound on minimal vanishing sums of length ℓ through a fixed root.
pub fn fmvs_bound(l: u32) -> Result<BigBound> {
    if l == 0 {
        return Err(Error::InvalidArgument("length must be at least 1".into()));
    }
    let b = l as u64;
    Ok(BigBound { value: Pow::pow(BigUint::from(b), 3 * b * b) })
}

/// Reduces an angle in π-units into `[0, 1]` using `cos θ = cos(−θ) = cos(2 − θ)`.
pub fn normalize_angle(a: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    let r = a - two * (a / two).floor();
    if r > Rational64::one() {
        two - r
    } else {
        r
    }
}

/// Whether `Σ cos(π a_j)` vanishes, decided exactly over `2·lcm` of the denominators.
pub fn cos_sum_vanishes(angles: &[Rational64]) -> Result<bool> {
    if angles.is_empty() {
        return Ok(true);
    }
    let l = angles.iter().fold(1i64, |acc, a| acc.lcm(a.denom()));
    let m = 2 * l;
    let ctx = cyclotomic::context(m as u64)?;
    // cos(π a/b) = cos(2π k / m) with k = a·l/b
    let exps: Vec<i64> = angles
        .iter()
        .flat_map(|a| {
            let k = a.numer() * (l / a.denom());
            [k, -k]
        })
        .collect();
    Ok(ctx.sum_reduce(&exps)?.is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cos4Family {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    NotVanishing,
}

impl fmt::Display for Cos4Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Cos4Family::I => "I",
            Cos4Family::II => "II",
            Cos4Family::III => "III",
            Cos4Family::IV => "IV",
            Cos4Family::V => "V",
            Cos4Family::VI => "VI",
            Cos4Family::VII => "VII",
            Cos4Family::NotVanishing => "NotVanishing",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cos4Params {
    /// Family I: `{α1, α2, 1 − α1, 1 − α2}` with `0 <= α1 <= α2 <= 1/2`.
    Pair(Rational64, Rational64),
    /// Family II: `{δ, 2/3 − δ, 2/3 + δ, 1/2}` with `0 <= δ <= 1/3`.
    Delta(Rational64),
    /// A sporadic family: the matched quadruple.
    Fixed([Rational64; 4]),
    None,
}

/// Classification of four rational angles (π-units) with vanishing cosine sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cos4Classification {
    pub family: Cos4Family,
    pub params: Cos4Params,
    /// Further families that also match, in increasing order.
    pub also: Vec<Cos4Family>,
    /// The normalized input, sorted.
    pub angles: [Rational64; 4],
}

impl Cos4Classification {
    /// The quadruple rebuilt from family and parameters, sorted.
    pub fn quadruple(&self) -> Option<[Rational64; 4]> {
        let r = |n, d| Rational64::new(n, d);
        let mut q = match &self.params {
            Cos4Params::Pair(a, b) => [*a, *b, r(1, 1) - a, r(1, 1) - b],
            Cos4Params::Delta(d) => [*d, r(2, 3) - d, r(2, 3) + d, r(1, 2)],
            Cos4Params::Fixed(q) => *q,
            Cos4Params::None => return None,
        };
        q.sort();
        Some(q)
    }
}

fn rq(v: [(i64, i64); 4]) -> [Rational64; 4] {
    let mut q = v.map(|(n, d)| Rational64::new(n, d));
    q.sort();
    q
}

/// The two listed quadruples of each sporadic family III–VII.
fn sporadic() -> [(Cos4Family, [[Rational64; 4]; 2]); 5] {
    use Cos4Family::*;
    [
        (III, [rq([(2, 5), (4, 5), (1, 2), (1, 3)]), rq([(3, 5), (1, 5), (1, 2), (2, 3)])]),
        (IV, [rq([(1, 5), (3, 5), (1, 3), (1, 1)]), rq([(4, 5), (2, 5), (2, 3), (0, 1)])]),
        (V, [rq([(2, 5), (7, 15), (13, 15), (1, 3)]), rq([(3, 5), (8, 15), (2, 15), (2, 3)])]),
        (VI, [rq([(1, 15), (11, 15), (4, 5), (1, 3)]), rq([(14, 15), (4, 15), (1, 5), (2, 3)])]),
        (VII, [rq([(2, 7), (4, 7), (6, 7), (1, 3)]), rq([(5, 7), (3, 7), (1, 7), (2, 3)])]),
    ]
}

/// Matches four rational angles (π-units) against the seven families of
/// rational vanishing cosine quadruples.
///
/// Angles are first normalized into `[0, 1]`. When several families match
/// the lowest-numbered one is reported and the rest are listed in `also`.
pub fn classify_cos4(angles: [Rational64; 4]) -> Result<Cos4Classification> {
    let mut q = angles.map(normalize_angle);
    q.sort();
    if !cos_sum_vanishes(&q)? {
        return Ok(Cos4Classification {
            family: Cos4Family::NotVanishing,
            params: Cos4Params::None,
            also: Vec::new(),
            angles: q,
        });
    }
    let one = Rational64::one();
    let half = Rational64::new(1, 2);
    let third = Rational64::new(1, 3);
    let two_thirds = Rational64::new(2, 3);
    let mut matches: Vec<(Cos4Family, Cos4Params)> = Vec::new();

    if q[0] + q[3] == one && q[1] + q[2] == one && q[1] <= half {
        matches.push((Cos4Family::I, Cos4Params::Pair(q[0], q[1])));
    }
    let mut deltas: Vec<Rational64> = q.iter().copied().filter(|d| *d <= third).collect();
    deltas.dedup();
    for d in deltas {
        let mut cand = [d, two_thirds - d, two_thirds + d, half];
        cand.sort();
        if cand == q {
            matches.push((Cos4Family::II, Cos4Params::Delta(d)));
            break;
        }
    }
    for (fam, quads) in sporadic() {
        if let Some(hit) = quads.iter().find(|x| **x == q) {
            matches.push((fam, Cos4Params::Fixed(*hit)));
        }
    }
    let mut it = matches.into_iter();
    let Some((family, params)) = it.next() else {
        let list: Vec<String> = q.iter().map(|a| a.to_string()).collect();
        return Err(Error::UnclassifiedVanishing(list.join(", ")));
    };
    Ok(Cos4Classification { family, params, also: it.map(|(f, _)| f).collect(), angles: q })
}

/// A pair `(k', k'')` whose cosine sum equals that of a given `(k1, k2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cos4Partner {
    /// `2cos(2πk'/N) + 2cos(2πk''/N) = μ(k1, k2)`, with `k' <= k''`.
    pub equal: (u64, u64),
    /// For even N, `(N/2 − k'', N/2 − k')`: the same relation written as a
    /// vanishing sum of four cosines together with `k1, k2`.
    pub vanishing: Option<(u64, u64)>,
}

/// All pairs `k' <= k''` in `[0, N/2]`, disjoint from `{k1, k2}`, with
/// `μ(k', k'') = μ(k1, k2)`; found by exact key lookup.
pub fn find_cos4_partners(n: u64, k1: u64, k2: u64) -> Result<Vec<Cos4Partner>> {
    let h = n / 2;
    if n < 3 || k1 > h || k2 > h {
        return Err(Error::InvalidArgument(format!(
            "indices ({k1}, {k2}) must lie in [0, {h}]"
        )));
    }
    let ctx = cyclotomic::context(n)?;
    let cos: Vec<CycElt> = (0..=h).map(|k| ctx.cos_key(k as i64)).collect::<Result<_>>()?;
    let index: FxHashMap<&CycElt, u64> = cos.iter().zip(0..).collect();
    let mu = cos[k1 as usize].checked_add(&cos[k2 as usize])?;
    if mu.is_zero() {
        return Err(Error::ZeroEigenvalue);
    }
    let mut out = Vec::new();
    for a in 0..=h {
        if a == k1 || a == k2 {
            continue;
        }
        let rest = mu.checked_sub(&cos[a as usize])?;
        let Some(&b) = index.get(&rest) else { continue };
        if b < a || b == k1 || b == k2 {
            continue;
        }
        let vanishing = (n % 2 == 0).then(|| (h - b, h - a));
        out.push(Cos4Partner { equal: (a, b), vanishing });
    }
    Ok(out)
}

/// The p angles of the rotated prime family `C_p(δ)` in π-units: `δ` and
/// `2j/p ± δ` for `1 <= j <= (p−1)/2`, normalized into `[0, 1]`, sorted,
/// duplicates kept. Their cosine sum is checked to vanish.
pub fn cp_delta(p: u64, delta: Rational64) -> Result<Vec<Rational64>> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    if delta < Rational64::zero() || delta > Rational64::one() {
        return Err(Error::InvalidArgument(format!("δ = {delta} outside [0, 1]")));
    }
    let mut out = vec![normalize_angle(delta)];
    for j in 1..=(p - 1) / 2 {
        let base = Rational64::new(2 * j as i64, p as i64);
        out.push(normalize_angle(base + delta));
        out.push(normalize_angle(base - delta));
    }
    out.sort();
    if !cos_sum_vanishes(&out)? {
        return Err(Error::PreconditionViolated(format!(
            "C_{p}({delta}) does not vanish"
        )));
    }
    Ok(out)
}

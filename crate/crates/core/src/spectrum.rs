//! Exact spectrum tables for C_N, T^d_N and abelian Cayley graphs on (Z/NZ)^d.
//!
//! A table maps each eigenvalue key to its multiplicity, one index tuple that
//! attains it, and an `f64` approximation for display. Torus tables are built
//! by convolving the C_N table with itself, never by walking all N^d tuples.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::cyclotomic::{self, CycContext, CycElt};
use crate::error::{Error, Result};
use crate::precision::DEFAULT_BITS;

/// Default ceiling on the number of distinct keys held by one table.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Work size (pairs of entries) above which convolution runs in parallel.
const PAR_THRESHOLD: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Adjacency,
    /// Laplacian of a regular graph of the given degree: λ = degree − μ.
    Laplacian { degree: u64 },
}

/// One eigenvalue of a table.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub count: BigUint,
    /// An index tuple (or character vector) attaining the key.
    pub representative: Box<[u32]>,
    pub approx: f64,
}

impl Entry {
    /// Adds `other`'s count and keeps the lexicographically smaller representative.
    fn absorb(&mut self, other: Entry) {
        self.count += other.count;
        if other.representative < self.representative {
            self.representative = other.representative;
            self.approx = other.approx;
        }
    }
}

type EntryMap = FxHashMap<CycElt, Entry>;

#[derive(Debug, Clone)]
pub struct SpectrumTable {
    ctx: Arc<CycContext>,
    d: usize,
    kind: SpectrumKind,
    entries: EntryMap,
}

impl SpectrumTable {
    pub fn n(&self) -> u64 {
        self.ctx.n()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn context(&self) -> &Arc<CycContext> {
        &self.ctx
    }

    /// Number of distinct eigenvalues.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &CycElt) -> Option<&Entry> {
        self.entries.get(key)
    }

    /// Multiplicity of `key`, zero when absent.
    pub fn count(&self, key: &CycElt) -> BigUint {
        self.entries
            .get(key)
            .map(|e| e.count.clone())
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CycElt, &Entry)> {
        self.entries.iter()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().map(|e| &e.count).sum()
    }

    /// Entries ordered by value, largest first.
    ///
    /// Values closer than 1e-9 in `f64` are re-ordered using 128-bit
    /// evaluations, then by key, so distinct keys are never merged and the
    /// order is total and reproducible.
    pub fn sorted_entries(&self) -> Vec<(&CycElt, &Entry)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|a, b| b.1.approx.total_cmp(&a.1.approx).then_with(|| a.0.cmp(b.0)));
        let mut i = 0;
        while i < v.len() {
            let mut j = i + 1;
            while j < v.len() && (v[j - 1].1.approx - v[j].1.approx).abs() < 1e-9 {
                j += 1;
            }
            if j - i > 1 {
                let mut run: Vec<_> = v[i..j]
                    .iter()
                    .map(|&(k, e)| {
                        let hp = self.ctx.approx_value(k, DEFAULT_BITS).map(|a| a.re);
                        (hp, k, e)
                    })
                    .collect();
                run.sort_by(|a, b| {
                    let by_value = match (&a.0, &b.0) {
                        (Ok(x), Ok(y)) => y.value().partial_cmp(x.value()).unwrap_or(Ordering::Equal),
                        _ => Ordering::Equal,
                    };
                    by_value.then_with(|| a.1.cmp(b.1))
                });
                for (slot, (_, k, e)) in v[i..j].iter_mut().zip(run) {
                    *slot = (k, e);
                }
            }
            i = j;
        }
        v
    }
}

/// The one-point table of T^0_N: key 0 with multiplicity 1.
pub fn point_mass(n: u64) -> Result<SpectrumTable> {
    let ctx = cyclotomic::context(n)?;
    let mut entries = EntryMap::default();
    entries.insert(
        ctx.zero(),
        Entry { count: BigUint::one(), representative: Box::new([]), approx: 0.0 },
    );
    Ok(SpectrumTable { ctx, d: 0, kind: SpectrumKind::Adjacency, entries })
}

fn require_n(n: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("N = {n} < 3")));
    }
    Ok(())
}

/// Spectrum of the cycle C_N: keys `cos_key(k)` for `0 <= k <= N/2`.
pub fn cn_spectrum(n: u64) -> Result<SpectrumTable> {
    require_n(n)?;
    let ctx = cyclotomic::context(n)?;
    let mut entries = EntryMap::default();
    let tau = 2.0 * std::f64::consts::PI / n as f64;
    for k in 0..=n / 2 {
        let mult = if k == 0 || 2 * k == n { 1u32 } else { 2 };
        entries.insert(
            ctx.cos_key(k as i64)?,
            Entry {
                count: BigUint::from(mult),
                representative: Box::new([k as u32]),
                approx: 2.0 * (tau * k as f64).cos(),
            },
        );
    }
    Ok(SpectrumTable { ctx, d: 1, kind: SpectrumKind::Adjacency, entries })
}

fn add_keys(x: &CycElt, y: &CycElt) -> Result<CycElt> {
    x.checked_add(y)
}

fn merge_into(dst: &mut EntryMap, src: EntryMap, budget: usize) -> Result<()> {
    for (k, e) in src {
        match dst.get_mut(&k) {
            Some(cur) => cur.absorb(e),
            None => {
                dst.insert(k, e);
            }
        }
    }
    if dst.len() > budget {
        return Err(Error::BudgetExceeded { limit: budget, reached: dst.len() });
    }
    Ok(())
}

fn convolve_chunk(a: &[(&CycElt, &Entry)], b: &[(&CycElt, &Entry)], budget: usize) -> Result<EntryMap> {
    let mut out = EntryMap::default();
    for &(ka, ea) in a {
        for &(kb, eb) in b {
            let key = add_keys(ka, kb)?;
            let mut rep = Vec::with_capacity(ea.representative.len() + eb.representative.len());
            rep.extend_from_slice(&ea.representative);
            rep.extend_from_slice(&eb.representative);
            let e = Entry {
                count: &ea.count * &eb.count,
                representative: rep.into_boxed_slice(),
                approx: ea.approx + eb.approx,
            };
            match out.get_mut(&key) {
                Some(cur) => cur.absorb(e),
                None => {
                    out.insert(key, e);
                    if out.len() > budget {
                        return Err(Error::BudgetExceeded { limit: budget, reached: out.len() });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Spectrum of the product graph: keys add, counts multiply.
pub fn convolve(a: &SpectrumTable, b: &SpectrumTable, budget: usize) -> Result<SpectrumTable> {
    if a.n() != b.n() {
        return Err(Error::ModulusMismatch { left: a.n(), right: b.n() });
    }
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be positive".into()));
    }
    let kind = match (a.kind, b.kind) {
        (SpectrumKind::Adjacency, SpectrumKind::Adjacency) => SpectrumKind::Adjacency,
        (SpectrumKind::Laplacian { degree: x }, SpectrumKind::Laplacian { degree: y }) => {
            SpectrumKind::Laplacian { degree: x + y }
        }
        _ => {
            return Err(Error::InvalidArgument(
                "cannot convolve adjacency and Laplacian tables".into(),
            ))
        }
    };
    let mut ea: Vec<_> = a.entries.iter().collect();
    ea.sort_by(|x, y| x.0.cmp(y.0));
    let eb: Vec<_> = b.entries.iter().collect();

    let entries = if ea.len() * eb.len() < PAR_THRESHOLD {
        convolve_chunk(&ea, &eb, budget)?
    } else {
        let chunk = ea.len().div_ceil(rayon::current_num_threads() * 4).max(1);
        let parts = ea
            .par_chunks(chunk)
            .map(|c| convolve_chunk(c, &eb, budget))
            .collect::<Result<Vec<_>>>()?;
        let mut parts = parts.into_iter();
        let mut acc = parts.next().unwrap_or_default();
        for p in parts {
            merge_into(&mut acc, p, budget)?;
        }
        acc
    };

    let out = SpectrumTable { ctx: Arc::clone(&a.ctx), d: a.d + b.d, kind, entries };
    let expected = a.total() * b.total();
    let total = out.total();
    if total != expected {
        return Err(Error::ConservationViolated {
            total: total.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(out)
}

/// Spectrum of T^d_N as the d-fold convolution of C_N (d = 0 gives the point mass).
pub fn torus_spectrum(n: u64, d: usize, budget: usize) -> Result<SpectrumTable> {
    require_n(n)?;
    if d == 0 {
        return point_mass(n);
    }
    let cn = cn_spectrum(n)?;
    if cn.len() > budget {
        return Err(Error::BudgetExceeded { limit: budget, reached: cn.len() });
    }
    let mut t = cn.clone();
    for _ in 1..d {
        t = convolve(&t, &cn, budget)?;
    }
    Ok(t)
}

fn check_tuple(n: u64, d: usize, tuple: &[u64]) -> Result<()> {
    if tuple.len() != d {
        return Err(Error::InvalidArgument(format!(
            "tuple has length {}, expected {d}",
            tuple.len()
        )));
    }
    if let Some(k) = tuple.iter().find(|&&k| k >= n) {
        return Err(Error::InvalidArgument(format!("index {k} out of range 0..{n}")));
    }
    Ok(())
}

/// Adjacency key `Σ_j (x^{k_j} + x^{-k_j})` of an index tuple.
pub fn tuple_key(ctx: &CycContext, tuple: &[u64]) -> Result<CycElt> {
    let exps: Vec<i64> = tuple.iter().flat_map(|&k| [k as i64, -(k as i64)]).collect();
    ctx.sum_reduce(&exps)
}

/// Number of d-tuples whose eigenvalue equals `key`.
///
/// Splits d = a + b and sums `c_a[x] · c_b[key − x]`, so only the two half
/// tables are materialized.
pub fn multiplicity_of_value(n: u64, d: usize, key: &CycElt, budget: usize) -> Result<BigUint> {
    require_n(n)?;
    if key.modulus() != n {
        return Err(Error::ModulusMismatch { left: n, right: key.modulus() });
    }
    let a = d / 2;
    let ta = torus_spectrum(n, a, budget)?;
    let tb = if d - a == a { ta.clone() } else { torus_spectrum(n, d - a, budget)? };
    let mut total = BigUint::zero();
    for (x, ex) in ta.iter() {
        let rest = key.checked_sub(x)?;
        if let Some(ey) = tb.get(&rest) {
            total += &ex.count * &ey.count;
        }
    }
    Ok(total)
}

/// Multiplicity of the eigenvalue attained at `tuple` in T^d_N.
pub fn multiplicity_of_tuple(n: u64, d: usize, tuple: &[u64], budget: usize) -> Result<BigUint> {
    require_n(n)?;
    check_tuple(n, d, tuple)?;
    let ctx = cyclotomic::context(n)?;
    let key = tuple_key(&ctx, tuple)?;
    multiplicity_of_value(n, d, &key, budget)
}

/// The set of eigenvalue keys of T^d_N, without counts.
pub fn value_set(n: u64, d: usize, budget: usize) -> Result<FxHashSet<CycElt>> {
    require_n(n)?;
    let ctx = cyclotomic::context(n)?;
    let cos: Vec<CycElt> = (0..=n / 2)
        .map(|k| ctx.cos_key(k as i64))
        .collect::<Result<_>>()?;
    let mut set = FxHashSet::default();
    set.insert(ctx.zero());
    for _ in 0..d {
        let mut next = FxHashSet::default();
        for x in &set {
            for c in &cos {
                next.insert(x.checked_add(c)?);
                if next.len() > budget {
                    return Err(Error::BudgetExceeded { limit: budget, reached: next.len() });
                }
            }
        }
        set = next;
    }
    Ok(set)
}

/// Whether `target` is an eigenvalue of T^{d'}_N. For d' = 0 only 0 qualifies.
pub fn membership(n: u64, dprime: usize, target: &CycElt, budget: usize) -> Result<bool> {
    require_n(n)?;
    if target.modulus() != n {
        return Err(Error::ModulusMismatch { left: n, right: target.modulus() });
    }
    if dprime == 0 {
        return Ok(target.is_zero());
    }
    let a = dprime / 2;
    let sa = value_set(n, a, budget)?;
    let sb = if dprime - a == a { sa.clone() } else { value_set(n, dprime - a, budget)? };
    for x in &sa {
        if sb.contains(&target.checked_sub(x)?) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A Cayley graph on (Z/NZ)^d with generating multiset `generators`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleySpec {
    pub n: u64,
    pub d: usize,
    pub generators: Vec<Vec<i64>>,
}

impl CayleySpec {
    /// The standard torus generators ±e_1, …, ±e_d.
    pub fn torus(n: u64, d: usize) -> Self {
        let mut generators = Vec::with_capacity(2 * d);
        for i in 0..d {
            for s in [1, -1] {
                let mut g = vec![0; d];
                g[i] = s;
                generators.push(g);
            }
        }
        Self { n, d, generators }
    }

    /// The cyclic generating set `±(jN/p + 1)`, `0 <= j < p`, for a prime p | N.
    pub fn twisted_cyclic(n: u64, p: u64) -> Result<Self> {
        if p < 2 || n % p != 0 || !crate::criteria::is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not a prime divisor of {n}")));
        }
        let mut generators = Vec::with_capacity(2 * p as usize);
        for j in 0..p {
            let g = (j * (n / p) + 1) as i64;
            generators.push(vec![g]);
            generators.push(vec![-g]);
        }
        Ok(Self { n, d: 1, generators })
    }

    pub fn degree(&self) -> u64 {
        self.generators.len() as u64
    }

    fn normalized(&self) -> Result<Vec<Vec<u64>>> {
        let n = self.n as i64;
        self.generators
            .iter()
            .map(|g| {
                if g.len() != self.d {
                    return Err(Error::InvalidArgument(format!(
                        "generator {g:?} does not have rank {}",
                        self.d
                    )));
                }
                Ok(g.iter().map(|&c| c.rem_euclid(n) as u64).collect())
            })
            .collect()
    }

    /// True when the generating multiset equals its negation.
    pub fn is_symmetric(&self) -> Result<bool> {
        let n = self.n;
        let mut s = self.normalized()?;
        let mut neg: Vec<Vec<u64>> = s
            .iter()
            .map(|g| g.iter().map(|&c| (n - c) % n).collect())
            .collect();
        s.sort();
        neg.sort();
        Ok(s == neg)
    }
}

/// Character-sum spectrum `μ_t = Σ_{g∈S} ζ^{⟨t,g⟩}` over all N^d characters t.
pub fn cayley_spectrum(spec: &CayleySpec, budget: usize) -> Result<SpectrumTable> {
    require_n(spec.n)?;
    if !spec.is_symmetric()? {
        return Err(Error::AsymmetricGeneratingSet);
    }
    let gens = spec.normalized()?;
    let n = spec.n;
    let d = spec.d;
    let chars = n
        .checked_pow(d as u32)
        .ok_or_else(|| Error::InvalidArgument("N^d does not fit in 64 bits".into()))?;
    let ctx = cyclotomic::context(n)?;

    let build = |range: std::ops::Range<u64>| -> Result<EntryMap> {
        let mut out = EntryMap::default();
        let mut t = vec![0u64; d];
        let mut exps = vec![0i64; gens.len()];
        for idx in range {
            let mut r = idx;
            for slot in t.iter_mut().rev() {
                *slot = r % n;
                r /= n;
            }
            for (e, g) in exps.iter_mut().zip(&gens) {
                let dot: u128 = t.iter().zip(g).map(|(&a, &b)| a as u128 * b as u128).sum();
                *e = (dot % n as u128) as i64;
            }
            let key = ctx.sum_reduce(&exps)?;
            let e = Entry {
                count: BigUint::one(),
                representative: t.iter().map(|&x| x as u32).collect(),
                approx: ctx.approx_f64(&key),
            };
            match out.get_mut(&key) {
                Some(cur) => cur.absorb(e),
                None => {
                    out.insert(key, e);
                    if out.len() > budget {
                        return Err(Error::BudgetExceeded { limit: budget, reached: out.len() });
                    }
                }
            }
        }
        Ok(out)
    };

    let entries = if chars < PAR_THRESHOLD as u64 {
        build(0..chars)?
    } else {
        let pieces = (rayon::current_num_threads() * 4) as u64;
        let step = chars.div_ceil(pieces);
        let parts = (0..pieces)
            .into_par_iter()
            .map(|i| build(i * step..((i + 1) * step).min(chars)))
            .collect::<Result<Vec<_>>>()?;
        let mut acc = EntryMap::default();
        for p in parts {
            merge_into(&mut acc, p, budget)?;
        }
        acc
    };
    let out = SpectrumTable { ctx, d, kind: SpectrumKind::Adjacency, entries };
    if out.total() != BigUint::from(chars) {
        return Err(Error::ConservationViolated {
            total: out.total().to_string(),
            expected: chars.to_string(),
        });
    }
    Ok(out)
}

/// Re-keys an adjacency table of a `degree`-regular graph as its Laplacian table.
pub fn laplacian_view(t: &SpectrumTable, degree: u64) -> Result<SpectrumTable> {
    if t.kind != SpectrumKind::Adjacency {
        return Err(Error::InvalidArgument("table is already a Laplacian view".into()));
    }
    let c = t.ctx.constant(degree as i64);
    let entries = t
        .entries
        .iter()
        .map(|(k, e)| {
            let key = c.checked_sub(k)?;
            let mut e = e.clone();
            e.approx = degree as f64 - e.approx;
            Ok((key, e))
        })
        .collect::<Result<EntryMap>>()?;
    Ok(SpectrumTable {
        ctx: Arc::clone(&t.ctx),
        d: t.d,
        kind: SpectrumKind::Laplacian { degree },
        entries,
    })
}

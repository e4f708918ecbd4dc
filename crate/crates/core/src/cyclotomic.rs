//! Exact arithmetic in `Z[x]/(Φ_N(x))`.
//!
//! An element is stored as its remainder modulo the N-th cyclotomic
//! polynomial, which is a canonical form: two sums of N-th roots of unity are
//! equal as complex numbers iff their residues agree coefficient by
//! coefficient. Residue coefficients use checked `i64` arithmetic; Φ_N itself
//! is computed over arbitrary-precision integers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::criteria::{divisors, totient};
use crate::error::{Error, Result};
use crate::precision::{self, HpReal, DEFAULT_BITS, RM};

type PolyCache = Mutex<HashMap<u64, Arc<Vec<BigInt>>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared, memoized ring context for modulus `n`.
pub fn context(n: u64) -> Result<Arc<CycContext>> {
    static CTX: OnceLock<Mutex<HashMap<u64, Arc<CycContext>>>> = OnceLock::new();
    let cache = CTX.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return Ok(Arc::clone(c));
    }
    let ctx = Arc::new(CycContext::new(n)?);
    Ok(Arc::clone(cache.lock().unwrap().entry(n).or_insert(ctx)))
}

/// Coefficients (constant term first) of the N-th cyclotomic polynomial.
///
/// Computed as `(x^N − 1) / Π_{d | N, d < N} Φ_d` by exact integer division
/// and memoized per N.
pub fn cyclotomic_poly(n: u64) -> Result<Arc<Vec<BigInt>>> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclotomic_poly requires N >= 1".into()));
    }
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return Ok(Arc::clone(p));
    }
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_poly(d)?;
        poly = div_exact_monic(&poly, &phi_d);
    }
    let poly = Arc::new(poly);
    poly_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&poly));
    Ok(poly)
}

/// Quotient of `num` by the monic `den`; the remainder must vanish.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// An element of `Z[x]/(Φ_N)` in canonical (reduced) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycElt {
    n: u64,
    coeffs: Box<[i64]>,
}

impl CycElt {
    pub(crate) fn from_coeffs(n: u64, coeffs: Box<[i64]>) -> Self {
        Self { n, coeffs }
    }

    /// The modulus N of the ring this element lives in.
    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Residue coefficients, constant term first; length φ(N).
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_ring(&self, other: &CycElt) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CycElt) -> Result<CycElt> {
        self.same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::CoefficientOverflow))
            .collect::<Result<Box<[i64]>>>()?;
        Ok(CycElt { n: self.n, coeffs })
    }

    pub fn checked_sub(&self, other: &CycElt) -> Result<CycElt> {
        self.same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::CoefficientOverflow))
            .collect::<Result<Box<[i64]>>>()?;
        Ok(CycElt { n: self.n, coeffs })
    }

    pub fn checked_neg(&self) -> Result<CycElt> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_neg().ok_or(Error::CoefficientOverflow))
            .collect::<Result<Box<[i64]>>>()?;
        Ok(CycElt { n: self.n, coeffs })
    }
}

impl fmt::Debug for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElt[N={}]{:?}", self.n, &self.coeffs[..])
    }
}

/// Cached `cos(2πj/N)`, `sin(2πj/N)` for `0 <= j < φ(N)` at one working precision.
struct RootTable {
    cos: Vec<BigFloat>,
    sin: Vec<BigFloat>,
}

/// The ring `Z[x]/(Φ_N)` together with precomputed residues of `x^k`.
pub struct CycContext {
    n: u64,
    phi: usize,
    phi_coeffs: Arc<Vec<BigInt>>,
    /// Residue of x^k at `powers[k*phi .. (k+1)*phi]`, for 0 <= k < N.
    powers: Vec<i64>,
    cos_f64: Vec<f64>,
    tables: Mutex<HashMap<usize, Arc<RootTable>>>,
}

impl fmt::Debug for CycContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycContext")
            .field("n", &self.n)
            .field("phi", &self.phi)
            .finish()
    }
}

impl CycContext {
    pub fn new(n: u64) -> Result<Self> {
        let phi_coeffs = cyclotomic_poly(n)?;
        let phi = phi_coeffs.len() - 1;
        debug_assert_eq!(phi as u64, totient(n));
        let low = phi_coeffs[..phi]
            .iter()
            .map(|c| c.to_i64().ok_or(Error::CoefficientOverflow))
            .collect::<Result<Vec<i64>>>()?;

        let mut powers = vec![0i64; n as usize * phi];
        powers[0] = 1;
        for k in 1..n as usize {
            let (prev, cur) = powers.split_at_mut(k * phi);
            let prev = &prev[(k - 1) * phi..];
            let cur = &mut cur[..phi];
            // x · r, then fold the x^phi term back using x^phi ≡ −Σ low_i x^i
            let top = prev[phi - 1];
            cur[0] = 0;
            cur[1..phi].copy_from_slice(&prev[..phi - 1]);
            if top != 0 {
                for i in 0..phi {
                    let t = top.checked_mul(low[i]).ok_or(Error::CoefficientOverflow)?;
                    cur[i] = cur[i].checked_sub(t).ok_or(Error::CoefficientOverflow)?;
                }
            }
        }

        let tau = 2.0 * std::f64::consts::PI / n as f64;
        let cos_f64 = (0..phi).map(|j| (tau * j as f64).cos()).collect();

        Ok(Self {
            n,
            phi,
            phi_coeffs,
            powers,
            cos_f64,
            tables: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// φ(N), the degree of Φ_N and the length of every residue.
    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn phi_coeffs(&self) -> &[BigInt] {
        &self.phi_coeffs
    }

    pub fn zero(&self) -> CycElt {
        CycElt::from_coeffs(self.n, vec![0; self.phi].into_boxed_slice())
    }

    /// The integer `c` as a ring element.
    pub fn constant(&self, c: i64) -> CycElt {
        let mut coeffs = vec![0; self.phi];
        coeffs[0] = c;
        CycElt::from_coeffs(self.n, coeffs.into_boxed_slice())
    }

    fn power_slice(&self, k: i64) -> &[i64] {
        let k = k.rem_euclid(self.n as i64) as usize;
        &self.powers[k * self.phi..(k + 1) * self.phi]
    }

    /// Canonical form of ζ_N^k.
    pub fn root_power(&self, k: i64) -> CycElt {
        CycElt::from_coeffs(self.n, self.power_slice(k).into())
    }

    /// Adds the residue of `x^k` into `acc` in place.
    pub(crate) fn add_power_into(&self, acc: &mut [i64], k: i64) -> Result<()> {
        for (a, p) in acc.iter_mut().zip(self.power_slice(k)) {
            *a = a.checked_add(*p).ok_or(Error::CoefficientOverflow)?;
        }
        Ok(())
    }

    /// `x^k + x^{N−k}`, the key of the C_N eigenvalue `2cos(2πk/N)`.
    pub fn cos_key(&self, k: i64) -> Result<CycElt> {
        self.sum_reduce(&[k, -k])
    }

    /// Canonical form of `Σ_j ζ_N^{k_j}`.
    pub fn sum_reduce(&self, exponents: &[i64]) -> Result<CycElt> {
        let mut acc = vec![0i64; self.phi];
        for &k in exponents {
            self.add_power_into(&mut acc, k)?;
        }
        Ok(CycElt::from_coeffs(self.n, acc.into_boxed_slice()))
    }

    fn check_member(&self, e: &CycElt) -> Result<()> {
        if e.n != self.n {
            return Err(Error::ModulusMismatch { left: self.n, right: e.n });
        }
        Ok(())
    }

    /// Real part of the principal embedding in double precision.
    pub fn approx_f64(&self, e: &CycElt) -> f64 {
        e.coeffs
            .iter()
            .zip(&self.cos_f64)
            .map(|(&c, &x)| c as f64 * x)
            .sum()
    }

    fn root_table(&self, p: usize) -> Result<Arc<RootTable>> {
        if let Some(t) = self.tables.lock().unwrap().get(&p) {
            return Ok(Arc::clone(t));
        }
        let mut cc = precision::consts()?;
        let wp = p + 16;
        let two_pi = cc.pi(wp, RM).mul(&BigFloat::from_u64(2, wp), wp, RM);
        let n = BigFloat::from_u64(self.n, wp);
        let mut cos = Vec::with_capacity(self.phi);
        let mut sin = Vec::with_capacity(self.phi);
        for j in 0..self.phi as u64 {
            let theta = two_pi.mul(&BigFloat::from_u64(j, wp), wp, RM).div(&n, wp, RM);
            let mut c = precision::check(theta.cos(wp, RM, &mut cc))?;
            let mut s = precision::check(theta.sin(wp, RM, &mut cc))?;
            c.set_precision(p, RM).map_err(|e| Error::Precision(format!("{e:?}")))?;
            s.set_precision(p, RM).map_err(|e| Error::Precision(format!("{e:?}")))?;
            cos.push(c);
            sin.push(s);
        }
        let table = Arc::new(RootTable { cos, sin });
        self.tables
            .lock()
            .unwrap()
            .entry(p)
            .or_insert_with(|| Arc::clone(&table));
        Ok(table)
    }

    /// Evaluates `e` at `exp(2πi/N)` with `bits` of precision and a rigorous
    /// error radius (shared by the real and imaginary parts).
    pub fn approx_value(&self, e: &CycElt, bits: usize) -> Result<CycApprox> {
        self.check_member(e)?;
        if bits < 64 {
            return Err(Error::InvalidArgument(format!("precision {bits} < 64 bits")));
        }
        let p = bits + 32;
        let table = self.root_table(p)?;
        let mut re = BigFloat::from_u64(0, p);
        let mut im = BigFloat::from_u64(0, p);
        let mut l1 = 0f64;
        for (j, &c) in e.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            l1 += (c as f64).abs();
            let cb = precision::bigfloat_from_i64(c, p);
            re = re.add(&cb.mul(&table.cos[j], p, RM), p, RM);
            im = im.add(&cb.mul(&table.sin[j], p, RM), p, RM);
        }
        // table entries are off by at most 2^{4-p}; each of the 2φ roundings
        // adds at most l1·2^{-p}
        let work = l1 * (2.0 * self.phi as f64 + 18.0) * 2f64.powi(-(p as i32));
        let mut out = [re, im];
        let mut mags = [0f64; 2];
        for (x, m) in out.iter_mut().zip(mags.iter_mut()) {
            x.set_precision(bits, RM)
                .map_err(|e| Error::Precision(format!("{e:?}")))?;
            *m = precision::bigfloat_to_f64(x).abs();
        }
        let radius = precision::next_up(
            work + (mags[0].max(mags[1]) + 1.0) * 2f64.powi(-(bits as i32)),
        );
        let [re, im] = out;
        Ok(CycApprox {
            re: HpReal::new(re, radius),
            im: HpReal::new(im, radius),
        })
    }

    /// Escalates precision from 128 bits, doubling until the radius is below `bound`.
    pub fn approx_within(&self, e: &CycElt, bound: f64) -> Result<CycApprox> {
        let mut bits = DEFAULT_BITS;
        loop {
            let a = self.approx_value(e, bits)?;
            if a.radius() < bound {
                return Ok(a);
            }
            if bits >= 1 << 16 {
                return Err(Error::Precision(format!("cannot reach radius {bound:e}")));
            }
            bits *= 2;
        }
    }
}

/// Principal complex embedding of a ring element.
#[derive(Debug, Clone)]
pub struct CycApprox {
    pub re: HpReal,
    pub im: HpReal,
}

impl CycApprox {
    pub fn radius(&self) -> f64 {
        self.re.radius()
    }

    /// True when the imaginary part is certified to lie within the radius of 0.
    pub fn is_certified_real(&self) -> bool {
        self.im.to_f64().abs() <= self.im.radius()
    }
}

/// Free-function form of [`CycContext::root_power`].
pub fn root_power(ctx: &CycContext, k: i64) -> CycElt {
    ctx.root_power(k)
}

/// Free-function form of [`CycContext::cos_key`].
pub fn cos_key(ctx: &CycContext, k: i64) -> Result<CycElt> {
    ctx.cos_key(k)
}

/// Free-function form of [`CycContext::sum_reduce`].
pub fn sum_reduce(ctx: &CycContext, exponents: &[i64]) -> Result<CycElt> {
    ctx.sum_reduce(exponents)
}

/// Free-function form of [`CycContext::approx_value`].
pub fn approx_value(ctx: &CycContext, e: &CycElt, bits: usize) -> Result<CycApprox> {
    ctx.approx_value(e, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1).unwrap(), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(2).unwrap(), ints(&[1, 1]));
        assert_eq!(*cyclotomic_poly(6).unwrap(), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_poly(12).unwrap(), ints(&[1, 0, -1, 0, 1]));
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        let p = cyclotomic_poly(105).unwrap();
        assert_eq!(p.len(), 49);
        assert!(p.iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn phi_divides_x_n_minus_one() {
        for n in 1..=60u64 {
            let p = cyclotomic_poly(n).unwrap();
            assert_eq!(p.last().unwrap(), &BigInt::one());
            assert_eq!((p.len() - 1) as u64, totient(n));
            let mut xn1 = vec![BigInt::zero(); n as usize + 1];
            xn1[0] = -BigInt::one();
            xn1[n as usize] = BigInt::one();
            // div_exact_monic debug-asserts a zero remainder; recompute it here too
            let q = div_exact_monic(&xn1, &p);
            let mut prod = vec![BigInt::zero(); q.len() + p.len() - 1];
            for (i, a) in q.iter().enumerate() {
                for (j, b) in p.iter().enumerate() {
                    prod[i + j] += a * b;
                }
            }
            assert_eq!(prod, xn1, "N = {n}");
        }
    }

    #[test]
    fn root_powers() {
        let c4 = CycContext::new(4).unwrap();
        assert_eq!(c4.root_power(3).coeffs(), &[0, -1]);
        let c6 = CycContext::new(6).unwrap();
        assert_eq!(c6.root_power(2).coeffs(), &[-1, 1]);
        for n in [5u64, 12, 30] {
            let c = CycContext::new(n).unwrap();
            assert_eq!(c.root_power(0), c.constant(1));
            assert_eq!(c.root_power(7), c.root_power(7 + n as i64));
            assert_eq!(c.root_power(-1), c.root_power(n as i64 - 1));
        }
    }

    #[test]
    fn cos_keys() {
        let c12 = CycContext::new(12).unwrap();
        assert!(c12.cos_key(3).unwrap().is_zero());
        let c6 = CycContext::new(6).unwrap();
        assert_eq!(c6.cos_key(1).unwrap(), c6.constant(1));
        assert_eq!(c6.cos_key(0).unwrap(), c6.constant(2));
        for k in 0..12 {
            assert_eq!(c12.cos_key(k).unwrap(), c12.cos_key(12 - k).unwrap());
        }
    }

    #[test]
    fn vanishing_examples() {
        let c5 = CycContext::new(5).unwrap();
        assert!(c5.sum_reduce(&[0, 1, 2, 3, 4]).unwrap().is_zero());
        let c6 = CycContext::new(6).unwrap();
        assert!(c6.sum_reduce(&[0, 2, 4]).unwrap().is_zero());
        assert!(!c6.sum_reduce(&[0, 1]).unwrap().is_zero());
        let c12 = CycContext::new(12).unwrap();
        assert!(c12.sum_reduce(&[1, 7]).unwrap().is_zero());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = CycContext::new(5).unwrap().constant(1);
        let b = CycContext::new(7).unwrap().constant(1);
        assert_eq!(
            a.checked_add(&b),
            Err(Error::ModulusMismatch { left: 5, right: 7 })
        );
    }

    #[test]
    fn approximations() {
        let c = CycContext::new(7).unwrap();
        let one = c.approx_value(&c.root_power(0), 128).unwrap();
        assert!((one.re.to_f64() - 1.0).abs() <= one.radius());
        assert!(one.radius() < 1e-35);

        let c12 = CycContext::new(12).unwrap();
        let a = c12.approx_value(&c12.cos_key(2).unwrap(), 128).unwrap();
        assert_eq!(a.re.to_decimal(30), "1.00000000000000000000000000000");
        assert!(a.is_certified_real());

        let c5 = CycContext::new(5).unwrap();
        let a = c5.approx_value(&c5.cos_key(1).unwrap(), 128).unwrap();
        assert_eq!(a.re.to_decimal(30), "0.618033988749894848204586834366");
        assert!(a.is_certified_real());

        assert!(c5.approx_value(&c5.constant(1), 32).is_err());
    }

    #[test]
    fn precision_escalation_meets_the_bound() {
        let c = CycContext::new(9).unwrap();
        let e = c.cos_key(2).unwrap();
        let a = c.approx_within(&e, 1e-60).unwrap();
        assert!(a.radius() < 1e-60);
        assert!(a.re.precision() > 128);
    }
}

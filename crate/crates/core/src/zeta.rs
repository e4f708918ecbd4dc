//! Spectral zeta functions of discrete and continuous 2-tori (real s only).

use astro_float::BigFloat;
use rayon::prelude::*;

use crate::criteria::factorize;
use crate::error::{Error, Result};
use crate::precision::{self, HpReal, RM};
use crate::spectrum;

/// Continuum terms summed per parallel task; fixed so output does not
/// depend on the thread count.
const CHUNK: u64 = 1 << 16;

/// Ordered representations of `m` as a sum of two squares; `r2(0) = 1`.
pub fn r2(m: u64) -> u64 {
    if m == 0 {
        return 1;
    }
    let mut prod = 4;
    for &(p, a) in factorize(m).pairs() {
        match p % 4 {
            1 => prod *= a as u64 + 1,
            3 if a % 2 == 1 => return 0,
            _ => {}
        }
    }
    prod
}

/// `r2(m)` for `0 <= m <= limit` via a smallest-prime-factor sieve.
pub fn r2_table(limit: u64) -> Vec<u64> {
    let len = limit as usize + 1;
    let mut spf = vec![0u32; len];
    for i in 2..len {
        if spf[i] == 0 {
            let mut j = i;
            while j < len {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let mut out = vec![0u64; len];
    out[0] = 1;
    for (m, slot) in out.iter_mut().enumerate().skip(1) {
        let mut x = m;
        let mut prod = 4;
        while x > 1 {
            let p = spf[x] as usize;
            let mut a = 0;
            while x % p == 0 {
                x /= p;
                a += 1;
            }
            match p % 4 {
                1 => prod *= a + 1,
                3 if a % 2 == 1 => {
                    prod = 0;
                    break;
                }
                _ => {}
            }
        }
        *slot = prod;
    }
    out
}

fn integer_exponent(s: f64) -> Option<usize> {
    (s.fract() == 0.0 && (1.0..=64.0).contains(&s)).then_some(s as usize)
}

fn require_s(s: f64, min: f64) -> Result<()> {
    if !s.is_finite() || s <= min {
        return Err(Error::InvalidArgument(format!("s = {s} must exceed {min}")));
    }
    Ok(())
}

/// `x^{-s}` for positive `x`.
fn inv_pow(x: &BigFloat, s: f64, p: usize, cc: &mut astro_float::Consts) -> Result<BigFloat> {
    let v = match integer_exponent(s) {
        Some(k) => x.powi(k, p, RM).reciprocal(p, RM),
        None => x.pow(&BigFloat::from_f64(-s, p), p, RM, cc),
    };
    precision::check(v)
}

/// `Σ λ^{-s}` over the nonzero Laplacian eigenvalues of T^d_N, with multiplicity.
///
/// Eigenvalues come from exact keys evaluated at `bits + 64` bits; terms are
/// summed in increasing order of λ.
pub fn zeta_discrete(n: u64, d: usize, s: f64, bits: usize, budget: usize) -> Result<HpReal> {
    require_s(s, 0.0)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    if bits < 64 {
        return Err(Error::InvalidArgument(format!("precision {bits} < 64 bits")));
    }
    let adj = spectrum::torus_spectrum(n, d, budget)?;
    let lap = spectrum::laplacian_view(&adj, 2 * d as u64)?;
    let ctx = lap.context().clone();
    let p = bits + 64;
    let mut rows: Vec<_> = lap.iter().filter(|(k, _)| !k.is_zero()).collect();
    rows.sort_by(|a, b| a.1.approx.total_cmp(&b.1.approx).then_with(|| a.0.cmp(b.0)));

    let terms = rows
        .par_iter()
        .map(|(k, e)| -> Result<(BigFloat, f64)> {
            let mut cc = precision::consts()?;
            let lam = ctx.approx_value(k, p)?.re;
            let lf = lam.to_f64();
            let inv = inv_pow(lam.value(), s, p, &mut cc)?;
            let term = inv.mul(&precision::bigfloat_from_biguint(&e.count, p), p, RM);
            // first-order propagation of the eigenvalue radius, plus rounding
            let rel = s * lam.radius() / lf * 1.01 + 8.0 * 2f64.powi(-(p as i32));
            let err = precision::bigfloat_to_f64(&term) * rel;
            Ok((term, err))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sum = BigFloat::from_u64(0, p);
    let mut radius = 0.0;
    for (t, r) in &terms {
        sum = sum.add(t, p, RM);
        radius += r;
    }
    let total = precision::bigfloat_to_f64(&sum);
    radius += total * (terms.len() as f64 + 2.0) * 2f64.powi(-(p as i32));
    sum.set_precision(bits, RM)
        .map_err(|e| Error::Precision(format!("{e:?}")))?;
    radius += total * 2f64.powi(-(bits as i32));
    Ok(HpReal::new(precision::check(sum)?, precision::next_up(radius)))
}

/// `Σ_{0 < M <= cutoff} r2(M) (4π² M)^{-s}`, the continuum 2-torus zeta truncated at `cutoff`.
pub fn zeta_continuum_partial(s: f64, cutoff: u64, bits: usize) -> Result<HpReal> {
    require_s(s, 1.0)?;
    if bits < 64 {
        return Err(Error::InvalidArgument(format!("precision {bits} < 64 bits")));
    }
    let p = bits + 64;
    if cutoff == 0 {
        return Ok(HpReal::exact_zero(bits));
    }
    let r2s = r2_table(cutoff);
    let chunks: Vec<u64> = (0..cutoff.div_ceil(CHUNK)).collect();
    let partials = chunks
        .par_iter()
        .map(|&c| -> Result<BigFloat> {
            let mut cc = precision::consts()?;
            let lo = (c * CHUNK).max(1);
            let hi = ((c + 1) * CHUNK - 1).min(cutoff);
            let mut acc = BigFloat::from_u64(0, p);
            for m in lo..=hi {
                let r = r2s[m as usize];
                if r == 0 {
                    continue;
                }
                let term = match integer_exponent(s).and_then(|k| (m as u128).checked_pow(k as u32)) {
                    Some(mk) => BigFloat::from_u64(r, p).div(&BigFloat::from_u128(mk, p.max(128)), p, RM),
                    None => {
                        let mk = inv_pow(&BigFloat::from_u64(m, p), s, p, &mut cc)?;
                        mk.mul(&BigFloat::from_u64(r, p), p, RM)
                    }
                };
                acc = acc.add(&term, p, RM);
            }
            precision::check(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sum = BigFloat::from_u64(0, p);
    for x in &partials {
        sum = sum.add(x, p, RM);
    }
    let mut cc = precision::consts()?;
    let pi = cc.pi(p, RM);
    let four_pi2 = pi.mul(&pi, p, RM).mul(&BigFloat::from_u64(4, p), p, RM);
    let mut value = precision::check(sum.mul(&inv_pow(&four_pi2, s, p, &mut cc)?, p, RM))?;
    let total = precision::bigfloat_to_f64(&value);
    let mut radius = total * (cutoff as f64 + 16.0 + 8.0 * s) * 2f64.powi(-(p as i32));
    value
        .set_precision(bits, RM)
        .map_err(|e| Error::Precision(format!("{e:?}")))?;
    radius += total * 2f64.powi(-(bits as i32));
    Ok(HpReal::new(value, precision::next_up(radius)))
}

/// One rescaled discrete value `N^{-2s} ζ_{T²_N}(s)`.
#[derive(Debug, Clone)]
pub struct ZetaRow {
    pub n: u64,
    pub s: f64,
    pub value: HpReal,
}

#[derive(Debug, Clone)]
pub struct CjkTable {
    pub s: f64,
    pub cutoff: u64,
    pub rows: Vec<ZetaRow>,
    pub reference: HpReal,
}

impl CjkTable {
    /// `|row − reference|` for each row, as upper bounds.
    pub fn gaps(&self) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| r.value.distance_upper(&self.reference))
            .collect()
    }
}

/// Rescaled discrete zeta values for each N next to the truncated continuum value.
pub fn cjk_table(s: f64, ns: &[u64], cutoff: u64, bits: usize, budget: usize) -> Result<CjkTable> {
    require_s(s, 1.0)?;
    let p = bits + 64;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let z = zeta_discrete(n, 2, s, bits, budget)?;
        let mut cc = precision::consts()?;
        let n2 = BigFloat::from_u64(n * n, p);
        let scale = inv_pow(&n2, s, p, &mut cc)?;
        let mut v = z.value().mul(&scale, p, RM);
        let rel = z.radius() / z.to_f64() + 8.0 * 2f64.powi(-(p as i32));
        v.set_precision(bits, RM)
            .map_err(|e| Error::Precision(format!("{e:?}")))?;
        let vf = precision::bigfloat_to_f64(&v);
        let radius = precision::next_up(vf * rel + vf * 2f64.powi(-(bits as i32)));
        rows.push(ZetaRow { n, s, value: HpReal::new(v, radius) });
    }
    let reference = zeta_continuum_partial(s, cutoff, bits)?;
    Ok(CjkTable { s, cutoff, rows, reference })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::DEFAULT_BITS;
    use crate::spectrum::DEFAULT_BUDGET;

    #[test]
    fn r2_examples() {
        assert_eq!(r2(0), 1);
        assert_eq!(r2(1), 4);
        assert_eq!(r2(3), 0);
        assert_eq!(r2(25), 12);
        assert_eq!(r2(9), 4);
        let t = r2_table(2000);
        for m in 0..=2000u64 {
            assert_eq!(t[m as usize], r2(m), "M = {m}");
        }
    }

    #[test]
    fn discrete_examples() {
        let z = zeta_discrete(3, 2, 1.0, DEFAULT_BITS, DEFAULT_BUDGET).unwrap();
        assert_eq!(z.to_decimal(20), "2.0000000000000000000");
        assert!(z.radius() < 1e-30);
        let z = zeta_discrete(4, 2, 1.0, DEFAULT_BITS, DEFAULT_BUDGET).unwrap();
        assert_eq!(z.to_decimal(12), "4.29166666667");
        assert!(zeta_discrete(5, 3, 0.5, DEFAULT_BITS, DEFAULT_BUDGET).unwrap().to_f64() > 0.0);
        assert!(zeta_discrete(5, 2, 0.0, DEFAULT_BITS, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn non_integer_exponent_matches_f64() {
        let z = zeta_discrete(6, 2, 1.5, DEFAULT_BITS, DEFAULT_BUDGET).unwrap();
        let mut direct = 0.0;
        for a in 0..6 {
            for b in 0..6 {
                let l = 4.0 - 2.0 * (std::f64::consts::PI * a as f64 / 3.0).cos()
                    - 2.0 * (std::f64::consts::PI * b as f64 / 3.0).cos();
                if l > 1e-9 {
                    direct += l.powf(-1.5);
                }
            }
        }
        assert!((z.to_f64() - direct).abs() < 1e-12);
    }

    #[test]
    fn continuum_examples() {
        let z = zeta_continuum_partial(2.0, 1, DEFAULT_BITS).unwrap();
        let pi = std::f64::consts::PI;
        assert!((z.to_f64() - 1.0 / (4.0 * pi.powi(4))).abs() < 1e-18);
        assert_eq!(zeta_continuum_partial(2.0, 0, DEFAULT_BITS).unwrap().to_f64(), 0.0);
        let a = zeta_continuum_partial(2.0, 100, DEFAULT_BITS).unwrap();
        let b = zeta_continuum_partial(2.0, 200, DEFAULT_BITS).unwrap();
        assert!(b.to_f64() >= a.to_f64());
        let c = zeta_continuum_partial(2.5, 50, DEFAULT_BITS).unwrap();
        let mut direct = 0.0;
        for m in 1..=50u64 {
            direct += r2(m) as f64 * (4.0 * pi * pi * m as f64).powf(-2.5);
        }
        assert!((c.to_f64() - direct).abs() < 1e-15);
        assert!(zeta_continuum_partial(1.0, 10, DEFAULT_BITS).is_err());
    }

    #[test]
    fn cjk_shapes() {
        let t = cjk_table(2.0, &[8], 10_000, DEFAULT_BITS, DEFAULT_BUDGET).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert!(t.rows[0].value.to_f64() > 0.0);
        let t = cjk_table(2.0, &[], 100, DEFAULT_BITS, DEFAULT_BUDGET).unwrap();
        assert!(t.rows.is_empty());
        assert!(t.reference.to_f64() > 0.0);
    }
}

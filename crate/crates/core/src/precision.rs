//! Software high-precision reals with an explicit error radius.
//!
//! Values are `astro_float::BigFloat`s; the radius is a conservative upper
//! bound on `|stored − true|`, kept as an `f64` rounded away from zero.

use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in bits.
pub const DEFAULT_BITS: usize = 128;

/// A high-precision real together with a rigorous error radius.
#[derive(Debug, Clone)]
pub struct HpReal {
    value: BigFloat,
    radius: f64,
}

impl HpReal {
    pub fn new(value: BigFloat, radius: f64) -> Self {
        Self { value, radius }
    }

    pub fn exact_zero(bits: usize) -> Self {
        Self::new(BigFloat::from_u64(0, bits), 0.0)
    }

    pub fn value(&self) -> &BigFloat {
        &self.value
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn precision(&self) -> usize {
        self.value.precision().unwrap_or(0)
    }

    pub fn to_f64(&self) -> f64 {
        bigfloat_to_f64(&self.value)
    }

    /// Decimal rendering with `digits` significant digits (round half up).
    pub fn to_decimal(&self, digits: usize) -> String {
        bigfloat_to_decimal(&self.value, digits)
    }

    /// `self − other` with the radii added.
    pub fn sub(&self, other: &HpReal) -> HpReal {
        let p = self.precision().max(other.precision()).max(64);
        let diff = self.value.sub(&other.value, p, RM);
        let ulp = bigfloat_to_f64(&diff).abs() * 2f64.powi(-(p as i32) + 1);
        HpReal::new(diff, next_up(self.radius + other.radius + ulp))
    }

    /// `|self − other|` as an `f64` upper bound including both radii.
    pub fn distance_upper(&self, other: &HpReal) -> f64 {
        let p = self.precision().max(other.precision()).max(64);
        let diff = self.value.sub(&other.value, p, RM).abs();
        next_up(bigfloat_to_f64(&diff) * (1.0 + 1e-15) + self.radius + other.radius)
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.1e}", self.to_decimal(30), self.radius)
    }
}

pub(crate) fn consts() -> Result<Consts> {
    Consts::new().map_err(|e| Error::Precision(format!("{e:?}")))
}

pub(crate) fn check(x: BigFloat) -> Result<BigFloat> {
    if x.is_nan() || x.is_inf() {
        return Err(Error::Precision(format!("non-finite result: {:?}", x.err())));
    }
    Ok(x)
}

/// Smallest f64 strictly greater than a nonnegative `x` (for rounding bounds up).
pub(crate) fn next_up(x: f64) -> f64 {
    if x == 0.0 {
        return f64::MIN_POSITIVE;
    }
    f64::from_bits(x.to_bits() + 1)
}

pub(crate) fn bigfloat_from_biguint(n: &BigUint, p: usize) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_u64(0, p);
    }
    if let Some(v) = n.to_u128() {
        let mut x = BigFloat::from_u128(v, 128);
        let _ = x.set_precision(p.max(128), RM);
        return x;
    }
    let words = n.to_u64_digits();
    let e = (words.len() * 64) as i32;
    let mut x = BigFloat::from_words(&words, Sign::Pos, e);
    let _ = x.set_precision(p.max(words.len() * 64), RM);
    x
}

pub(crate) fn bigfloat_from_i64(v: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(v, p.max(64))
}

/// Mantissa as a big integer together with the binary exponent `k` such that
/// `|x| = m · 2^k`.
fn exact_parts(x: &BigFloat) -> Option<(bool, BigUint, i64)> {
    let (words, _, sign, e, _) = x.as_raw_parts()?;
    let mut digits = Vec::with_capacity(words.len() * 2);
    for w in words {
        digits.push(*w as u32);
        digits.push((*w >> 32) as u32);
    }
    let m = BigUint::new(digits);
    if m.is_zero() {
        return Some((false, m, 0));
    }
    let k = e as i64 - 64 * words.len() as i64;
    Some((sign == Sign::Neg, m, k))
}

pub(crate) fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let Some(&top) = words.last() else {
        return 0.0;
    };
    if top == 0 {
        return 0.0;
    }
    let next = if words.len() >= 2 { words[words.len() - 2] } else { 0 };
    let frac = top as f64 / 18446744073709551616.0 + next as f64 / 3.402823669209385e38;
    let v = frac * 2f64.powi(e);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

pub(crate) fn bigfloat_to_decimal(x: &BigFloat, digits: usize) -> String {
    let digits = digits.max(1);
    let Some((neg, m, k)) = exact_parts(x) else {
        return "NaN".to_string();
    };
    if m.is_zero() {
        return "0".to_string();
    }
    let approx = bigfloat_to_f64(x).abs();
    let mut e10 = if approx.is_finite() && approx > 0.0 {
        approx.log10().floor() as i64
    } else {
        (k + m.bits() as i64) * 30103 / 100000
    };
    let scaled = loop {
        let t = digits as i64 - 1 - e10;
        let mut num = BigInt::from(m.clone());
        let mut den = BigInt::one();
        if k >= 0 {
            num <<= k as usize;
        } else {
            den <<= (-k) as usize;
        }
        let ten = BigInt::from(10u32);
        if t >= 0 {
            num *= num_traits::pow(ten, t as usize);
        } else {
            den *= num_traits::pow(ten, (-t) as usize);
        }
        // round half up
        let (q, r) = num.div_rem(&den);
        let s = if (r << 1usize) >= den { q + 1 } else { q };
        let len = s.abs().to_string().len();
        if len > digits {
            e10 += 1;
        } else if len < digits {
            e10 -= 1;
        } else {
            break s;
        }
    };
    let ds = scaled.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e10 >= 0 {
        let int_len = (e10 + 1) as usize;
        if int_len >= ds.len() {
            out.push_str(&ds);
            out.extend(std::iter::repeat_n('0', int_len - ds.len()));
        } else {
            out.push_str(&ds[..int_len]);
            out.push('.');
            out.push_str(&ds[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-e10 - 1) as usize));
        out.push_str(&ds);
    }
    out
}

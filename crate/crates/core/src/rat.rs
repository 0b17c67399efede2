//! Exact rational scalars and parsing helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: arbitrary-precision rationals, always reduced with
/// positive denominator (maintained by `num_rational`).
pub type Rat = BigRational;

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"1/3"`, `"-7"`, or a decimal like `"0.05"` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse()
                .map_err(|_| Error::Parse(format!("bad decimal in {s:?}")))?
        };
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal in {s:?}")));
        }
        let frac_num: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().unwrap()
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mut v = Rat::from_integer(int_part.abs()) + Rat::new(frac_num, scale);
        if neg {
            v = -v;
        }
        return Ok(v);
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(Rat::from_integer(n))
}

/// Render exactly: integers without a slash, otherwise `num/den`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` significant digits, round-to-nearest.
/// Used only for OBJ/JSON output profiles; internal arithmetic stays exact.
pub fn format_decimal(r: &Rat, digits: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // find exponent e with 10^e <= a < 10^(e+1)
    let ten = Rat::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut x = a.clone();
    while x >= ten {
        x = &x / &ten;
        e += 1;
    }
    while x < Rat::one() {
        x = &x * &ten;
        e -= 1;
    }
    // scaled = round(a * 10^(digits-1-e))
    let shift = digits as i64 - 1 - e;
    let scaled = if shift >= 0 {
        a * Rat::from_integer(BigInt::from(10u32).pow(shift as u32))
    } else {
        a / Rat::from_integer(BigInt::from(10u32).pow((-shift) as u32))
    };
    let rounded = scaled.round().to_integer();
    let mut digits_str = rounded.to_string();
    // rounding may push us to digits+1 characters (e.g. 999.96 -> 1000)
    let extra = digits_str.len() as i64 - digits as i64;
    let e = e + extra.max(0);
    if extra > 0 {
        digits_str.truncate(digits);
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e >= 0 && (e as usize) < digits {
        let (int, frac) = digits_str.split_at(e as usize + 1);
        out.push_str(int);
        let frac = frac.trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else if e < 0 && e >= -4 {
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(digits_str.trim_end_matches('0'));
    } else {
        let (h, t) = digits_str.split_at(1);
        out.push_str(h);
        let t = t.trim_end_matches('0');
        if !t.is_empty() {
            out.push('.');
            out.push_str(t);
        }
        out.push('e');
        out.push_str(&e.to_string());
    }
    out
}

/// Numeric view, used only for plotting and the sampled Hausdorff estimate.
pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // fall back through bit-length rescaling for huge numerator/denominator
        let shift = (r.numer().bits() as i64 - r.denom().bits() as i64 - 52).max(0) as u64;
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::MAX);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rat("-7").unwrap(), rat_i(-7));
        assert_eq!(parse_rat("0.05").unwrap(), rat(1, 20));
        assert_eq!(parse_rat("-0.25").unwrap(), rat(-1, 4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&rat(1, 4), 12), "0.25");
        assert_eq!(format_decimal(&rat(-1, 3), 6), "-0.333333");
        assert_eq!(format_decimal(&rat_i(0), 12), "0");
        assert_eq!(format_decimal(&rat_i(32), 12), "32");
    }
}

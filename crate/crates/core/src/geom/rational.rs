use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. `BigRational` keeps `den > 0` and `gcd(num, den) = 1`.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, an integer, or a decimal literal (`"-0.25"`, `"1e-3"`) exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".to_string()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a number: {s:?}"));
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact binary value of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Smallest integer `>= r`.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

pub fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Rational upper bound on `ln(n)` for `n >= 1`, tight to below `1e-30`.
///
/// Uses `ln n = 2 atanh(z)` with `z = (n-1)/(n+1)`; the truncated series is a
/// lower bound and the geometric tail bound `z^(2K+1) / ((2K+1)(1-z^2))` closes it.
pub fn ln_upper(n: u64) -> Rational {
    assert!(n >= 1);
    if n == 1 {
        return Rational::zero();
    }
    // ln n = k ln 2 + ln(n / 2^k) keeps z small enough for quick convergence.
    let k = 63 - n.leading_zeros() as i64;
    let reduced = ratio(n as i64, 1) / Rational::from_integer(BigInt::from(1u64) << k as usize);
    let ln2 = atanh_series_upper(&ratio(1, 3), 40) * rat(2);
    let rest = if reduced.is_one() {
        Rational::zero()
    } else {
        let z = (&reduced - rat(1)) / (&reduced + rat(1));
        atanh_series_upper(&z, 40) * rat(2)
    };
    ln2 * rat(k) + rest
}

fn atanh_series_upper(z: &Rational, terms: usize) -> Rational {
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = Rational::zero();
    for j in 0..terms {
        sum += &power / rat(2 * j as i64 + 1);
        power *= &z2;
    }
    let tail = &power / (rat(2 * terms as i64 + 1) * (rat(1) - &z2));
    sum + tail
}

/// `H_m = 1 + 1/2 + ... + 1/m`, exactly.
pub fn harmonic(m: u64) -> Rational {
    (1..=m).map(|i| ratio(1, i as i64)).sum()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(parse_rational("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("1.5e2").unwrap(), rat(150));
        assert_eq!(parse_rational("25e-2").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(format_rational(&ratio(4, 8)), "1/2");
        assert_eq!(format_rational(&ratio(-6, 3)), "-2");
    }

    #[test]
    fn ln_upper_brackets_the_float_value() {
        for n in [2u64, 3, 10, 16, 100, 400, 1000, 65537] {
            let up = to_f64(&ln_upper(n));
            let exact = (n as f64).ln();
            assert!(up >= exact - 1e-12, "n={n}");
            assert!(up - exact < 1e-12, "n={n}");
        }
        assert!(ln_upper(1).is_zero());
    }

    #[test]
    fn harmonic_small_values() {
        assert_eq!(harmonic(1), rat(1));
        assert_eq!(harmonic(3), ratio(11, 6));
    }
}

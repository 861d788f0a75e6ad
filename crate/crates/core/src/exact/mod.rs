//! Exact rational scalars, combinatorial primitives and dense polynomials.
//!
//! Every identity in the crate is checked with exact rational equality. The
//! only place floating values enter is [`interval`], which brackets
//! transcendental quantities between two rationals.

pub mod interval;
pub mod poly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;
pub use poly::{multiplicity_at, newton_interpolate, poly_eval, DensePoly};

use crate::error::{Error, Result};

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `num/den` as a reduced rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Generalized binomial coefficient `top (top-1) ... (top-k+1) / k!`.
pub fn binomial(top: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut t = top.clone();
    for i in 1..=k {
        acc = acc * &t / rat(i as i64);
        t -= BigRational::one();
    }
    acc
}

/// Integer binomial coefficient; zero when `k > n` or either argument is negative.
pub fn binomial_int(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-j+1)`.
pub fn falling_factorial(x: &BigRational, j: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut t = x.clone();
    for _ in 0..j {
        if t.is_zero() {
            return BigRational::zero();
        }
        acc *= &t;
        t -= BigRational::one();
    }
    acc
}

/// Falling factorial at an integer point, as an integer.
pub fn falling_factorial_int(x: i64, j: usize) -> BigInt {
    let mut acc = BigInt::one();
    for m in 0..j as i64 {
        let f = x - m;
        if f == 0 {
            return BigInt::zero();
        }
        acc *= f;
    }
    acc
}

/// `n!` for `n >= 0`.
pub fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, i| acc * i)
}

/// `base^e` for any integer exponent; panics on `0^negative`.
pub fn pow_int(base: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Parses `"p/q"`, `"p"` or a plain decimal like `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_abs = int.trim_start_matches(['-', '+']);
        let int_part: BigInt = if int_abs.is_empty() {
            BigInt::zero()
        } else {
            int_abs.parse().map_err(|_| bad())?
        };
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = BigRational::new(int_part * &scale + frac_part, scale);
        return Ok(if negative { -mag } else { mag });
    }
    s.parse::<BigInt>()
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Parses a comma separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// Canonical `"p/q"` serialization; integers are written with `/1`.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering with `digits` digits after the point, rounded toward zero.
pub fn to_decimal(r: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (r.numer().abs() * &scale) / r.denom();
    let (int, frac) = scaled.div_rem(&scale);
    let sign = if r.is_negative() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// Lossy conversion used only for envelopes and display.
pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

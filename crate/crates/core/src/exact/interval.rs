//! Rational interval enclosures of transcendental values.
//!
//! Quantities such as `e^x` or `(1-q)^(1/2)` are bracketed by two rationals
//! whose relative gap is about `2^-bits`. Comparisons against an exact
//! rational are decided only when the enclosure separates; otherwise the
//! precision is doubled, up to [`MAX_BITS`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{pow_int, to_decimal, BigRational};

/// First working precision; 128 bits is finer than 1e-30.
pub const START_BITS: u32 = 128;
/// Precision cap; beyond it a comparison is reported undecided.
pub const MAX_BITS: u32 = 512;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Largest dyadic rational `<= r` carrying about `bits` significant bits.
pub fn round_down(r: &BigRational, bits: u32) -> BigRational {
    if r.is_zero() {
        return r.clone();
    }
    let mag = r.numer().bits() as i64 - r.denom().bits() as i64;
    let k = bits as i64 - mag;
    if k >= 0 {
        let scale = pow2(k as u64);
        let q = (r.numer() * &scale).div_floor(r.denom());
        BigRational::new(q, scale)
    } else {
        let scale = pow2((-k) as u64);
        let q = r.numer().div_floor(&(r.denom() * &scale));
        BigRational::from_integer(q * scale)
    }
}

/// Smallest dyadic rational `>= r` carrying about `bits` significant bits.
pub fn round_up(r: &BigRational, bits: u32) -> BigRational {
    -round_down(&-r, bits)
}

/// Floor and ceiling enclosure of `r^(1/b)` for `r >= 0`.
fn root_bounds(r: &BigRational, b: u32, bits: u32) -> (BigRational, BigRational) {
    assert!(!r.is_negative(), "root of a negative rational");
    if r.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    // r^(1/b) = (u v^(b-1))^(1/b) / v
    let u = r.numer();
    let v = r.denom();
    let k = bits as u64 + v.bits() + 2;
    let big = (u * num_traits::pow(v.clone(), (b - 1) as usize)) << (k * b as u64);
    let root = big.nth_root(b);
    let den = v * pow2(k);
    let lo = BigRational::new(root.clone(), den.clone());
    let exact = num_traits::pow(root.clone(), b as usize) == big;
    let hi = if exact {
        lo.clone()
    } else {
        BigRational::new(root + 1, den)
    };
    (lo, hi)
}

/// Lower (or upper) bound of `2^w e^(y / 2^w)` for `|y| <= 2^(w-1)`.
fn exp_fixed(y: &BigInt, w: u32, upper: bool) -> BigInt {
    let unit = pow2(w as u64);
    let mut sum = BigInt::zero();
    let mut term = unit.clone();
    let mut k = 0u32;
    while !term.is_zero() {
        sum += &term;
        k += 1;
        term = (&term * y) / (&unit * k);
    }
    // Each truncated term is within 2 units of the exact one, and the
    // omitted tail is below 4 units.
    let slack = BigInt::from(2 * k + 4);
    if upper {
        sum + slack
    } else {
        sum - slack
    }
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn exact(v: BigRational) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Decimal rendering of the midpoint.
    pub fn to_decimal(&self, digits: usize) -> String {
        to_decimal(&self.midpoint(), digits)
    }

    fn rounded(lo: BigRational, hi: BigRational, bits: u32) -> Self {
        Interval {
            lo: round_down(&lo, bits),
            hi: round_up(&hi, bits),
        }
    }

    pub fn add(&self, other: &Interval, bits: u32) -> Self {
        Self::rounded(&self.lo + &other.lo, &self.hi + &other.hi, bits)
    }

    pub fn sub(&self, other: &Interval, bits: u32) -> Self {
        Self::rounded(&self.lo - &other.hi, &self.hi - &other.lo, bits)
    }

    pub fn mul(&self, other: &Interval, bits: u32) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().unwrap();
        let hi = products.iter().max().cloned().unwrap();
        Self::rounded(lo, hi, bits)
    }

    pub fn scale(&self, c: &BigRational, bits: u32) -> Self {
        self.mul(&Interval::exact(c.clone()), bits)
    }

    /// `1/self`, or `None` when the interval touches zero.
    pub fn recip(&self, bits: u32) -> Option<Self> {
        if self.contains(&BigRational::zero()) {
            return None;
        }
        Some(Self::rounded(self.hi.recip(), self.lo.recip(), bits))
    }

    /// Square root of a nonnegative interval.
    pub fn sqrt(&self, bits: u32) -> Self {
        let (lo, _) = root_bounds(&self.lo, 2, bits);
        let (_, hi) = root_bounds(&self.hi, 2, bits);
        Self::rounded(lo, hi, bits)
    }

    /// Enclosure of `e^x`.
    pub fn exp(x: &BigRational, bits: u32) -> Self {
        if x.is_zero() {
            return Interval::exact(BigRational::one());
        }
        // Halve until |y| <= 1/2, then square back up.
        let mag = x.numer().bits() as i64 - x.denom().bits() as i64;
        let halvings = (mag + 2).max(0) as u64;
        let work = bits + halvings as u32 + 24;
        let scaled = x.numer() << work as u64;
        let den = x.denom() << halvings;
        let y_lo = scaled.div_floor(&den);
        let y_hi = -(-&scaled).div_floor(&den);
        // [lo, hi] * 2^exp, squared in integers with outward truncation.
        let mut lo = exp_fixed(&y_lo, work, false);
        let mut hi = exp_fixed(&y_hi, work, true);
        let mut exp = -(work as i64);
        for _ in 0..halvings {
            lo = &lo * &lo;
            hi = &hi * &hi;
            exp *= 2;
            let excess = lo.bits().saturating_sub(work as u64 + 8);
            if excess > 0 {
                lo >>= excess;
                hi = -((-hi) >> excess);
                exp += excess as i64;
            }
        }
        let scale = |m: BigInt| {
            if exp >= 0 {
                BigRational::from_integer(m << exp as u64)
            } else {
                BigRational::new(m, pow2((-exp) as u64))
            }
        };
        Self::rounded(scale(lo), scale(hi), bits)
    }

    /// Enclosure of `base^e` for `base > 0` and rational `e`.
    pub fn pow_rational(base: &BigRational, e: &BigRational, bits: u32) -> Self {
        assert!(base.is_positive(), "pow_rational needs a positive base");
        use num_traits::ToPrimitive;
        let num = e.numer().to_i64().expect("exponent numerator too large");
        let den = e.denom().to_u32().expect("exponent denominator too large");
        let r = pow_int(base, num);
        if den == 1 {
            return Interval::exact(r);
        }
        let (lo, hi) = root_bounds(&r, den, bits + 8);
        Self::rounded(lo, hi, bits)
    }
}

/// Outcome of comparing an exact value with an enclosed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Undecided,
}

/// Result of [`compare_guarded`].
#[derive(Debug, Clone)]
pub struct GuardedComparison {
    pub verdict: Verdict,
    /// The two sides coincide exactly (only possible for a degenerate enclosure).
    pub equal: bool,
    pub bits_used: u32,
    pub rhs: Interval,
}

/// Decides `lhs >= rhs` (or `lhs > rhs` when `strict`), where `rhs(bits)`
/// encloses the right-hand side at the requested precision.
pub fn compare_guarded(
    lhs: &BigRational,
    strict: bool,
    rhs: impl Fn(u32) -> Option<Interval>,
) -> GuardedComparison {
    compare_guarded_from(lhs, strict, START_BITS, rhs)
}

/// As [`compare_guarded`], starting at a chosen precision.
pub fn compare_guarded_from(
    lhs: &BigRational,
    strict: bool,
    start_bits: u32,
    rhs: impl Fn(u32) -> Option<Interval>,
) -> GuardedComparison {
    let mut bits = start_bits.clamp(8, MAX_BITS);
    let mut last = None;
    loop {
        if let Some(iv) = rhs(bits) {
            if iv.is_exact() {
                let equal = lhs == iv.lo();
                let ok = if strict { lhs > iv.lo() } else { lhs >= iv.lo() };
                return GuardedComparison {
                    verdict: if ok { Verdict::Holds } else { Verdict::Violated },
                    equal,
                    bits_used: bits,
                    rhs: iv,
                };
            }
            let verdict = if lhs > iv.hi() {
                Some(Verdict::Holds)
            } else if lhs < iv.lo() {
                Some(Verdict::Violated)
            } else {
                None
            };
            if let Some(verdict) = verdict {
                return GuardedComparison {
                    verdict,
                    equal: false,
                    bits_used: bits,
                    rhs: iv,
                };
            }
            last = Some(iv);
        }
        if bits >= MAX_BITS {
            break;
        }
        bits = (bits * 2).min(MAX_BITS);
    }
    GuardedComparison {
        verdict: Verdict::Undecided,
        equal: false,
        bits_used: bits,
        rhs: last.unwrap_or_else(|| Interval::exact(BigRational::zero())),
    }
}

//! Dense univariate polynomials over the rationals.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat, BigRational};
use crate::error::{Error, Result};

/// Dense polynomial; `coeffs[i]` multiplies `x^i`. Trailing zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DensePoly {
    coeffs: Vec<BigRational>,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `a + b x`
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        poly_eval(self, x)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = DensePoly::constant(BigRational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * rat(i as i64))
                .collect(),
        )
    }

    /// Synthetic division by `(x - c)`: returns quotient and remainder `p(c)`.
    pub fn div_linear(&self, c: &BigRational) -> (DensePoly, BigRational) {
        if self.coeffs.is_empty() {
            return (DensePoly::zero(), BigRational::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * c;
            if i == 0 {
                return (DensePoly::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        DensePoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePoly::new(out)
    }
}

/// Horner evaluation.
pub fn poly_eval(p: &DensePoly, x: &BigRational) -> BigRational {
    p.coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Largest `m` with `(x - c)^m` dividing `p`.
pub fn multiplicity_at(p: &DensePoly, c: &BigRational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut m = 0;
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.div_linear(c);
        if !r.is_zero() {
            return Ok(m);
        }
        m += 1;
        cur = q;
    }
}

/// Least-degree interpolant through `points` by Newton divided differences.
pub fn newton_interpolate(points: &[(i64, BigRational)]) -> Result<DensePoly> {
    let mut seen = HashSet::new();
    for (x, _) in points {
        if !seen.insert(*x) {
            return Err(Error::DuplicateAbscissa(*x));
        }
    }
    let xs: Vec<BigRational> = points.iter().map(|(x, _)| rat(*x)).collect();
    // In-place divided-difference table; dd[i] ends as f[x_0..x_i].
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..dd.len() {
        for i in (level..dd.len()).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Nested Newton form, innermost first.
    let mut acc = DensePoly::zero();
    for i in (0..dd.len()).rev() {
        let factor = DensePoly::linear(-xs[i].clone(), BigRational::one());
        acc = &(&acc * &factor) + &DensePoly::constant(dd[i].clone());
    }
    Ok(acc)
}

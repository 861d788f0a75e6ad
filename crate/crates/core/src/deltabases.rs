//! Δ(n, c) bases and the coefficient-side view of multiplicity.
//!
//! A basis `F_0..F_n` qualifies when `F_i^(j)(c) = R_j(i)` for polynomials
//! `R_j` of exact degree `j`. Then `p = sum a_i F_i` has
//! `p^(j)(c) = sum_i a_i R_j(i)`, and the multiplicity of the zero at `c`
//! depends only on which moments `sum_i a_i f(i)` vanish.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    binomial, falling_factorial, factorial, rat, BigRational, DensePoly,
};
use crate::families::{FamilySpec, Scaled};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisKind {
    /// `F_i = x^i`, a Δ(n, 1) basis.
    Monomial,
    /// `F_i = (1-x)^i (1+x)^(n-i)`, a Δ(n, 0) basis.
    KrawtchoukProduct,
    /// `F_i = L_i^(alpha)(x) / L_i^(alpha)(0)`, a Δ(n, 0) basis.
    LaguerreRatio { alpha: BigRational },
    /// User supplied `R_0..R_n`.
    Custom { r: Vec<DensePoly> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaBasisSpec {
    kind: BasisKind,
    n: usize,
    c: BigRational,
}

impl DeltaBasisSpec {
    pub fn monomial(n: usize) -> Self {
        DeltaBasisSpec {
            kind: BasisKind::Monomial,
            n,
            c: BigRational::one(),
        }
    }

    pub fn krawtchouk_product(n: usize) -> Self {
        DeltaBasisSpec {
            kind: BasisKind::KrawtchoukProduct,
            n,
            c: BigRational::zero(),
        }
    }

    pub fn laguerre_ratio(n: usize, alpha: BigRational) -> Result<Self> {
        if alpha.is_integer() && alpha.is_negative() && alpha >= -rat(n as i64) {
            return Err(Error::InvalidParameters(format!(
                "alpha must avoid -1..-{n}"
            )));
        }
        Ok(DeltaBasisSpec {
            kind: BasisKind::LaguerreRatio { alpha },
            n,
            c: BigRational::zero(),
        })
    }

    /// A basis known only through its `R_j`; `r[j]` must have degree exactly `j`.
    pub fn custom(c: BigRational, r: Vec<DensePoly>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::InvalidParameters("no R_j supplied".into()));
        }
        for (j, p) in r.iter().enumerate() {
            if p.degree() != j as i64 {
                return Err(Error::InvalidParameters(format!(
                    "R_{j} has degree {}, expected {j}",
                    p.degree()
                )));
            }
        }
        Ok(DeltaBasisSpec {
            n: r.len() - 1,
            kind: BasisKind::Custom { r },
            c,
        })
    }

    pub fn kind(&self) -> &BasisKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The distinguished point `c`.
    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            BasisKind::Monomial => "monomial",
            BasisKind::KrawtchoukProduct => "krawtchouk-product",
            BasisKind::LaguerreRatio { .. } => "laguerre-ratio",
            BasisKind::Custom { .. } => "custom",
        }
    }

    /// `R_j(i) = F_i^(j)(c)`.
    pub fn r_value(&self, j: usize, i: usize) -> Result<BigRational> {
        for idx in [j, i] {
            if idx > self.n {
                return Err(Error::IndexOutOfRange {
                    index: idx as i64,
                    max: self.n as i64,
                });
            }
        }
        let ir = rat(i as i64);
        Ok(match &self.kind {
            BasisKind::Monomial => falling_factorial(&ir, j),
            BasisKind::KrawtchoukProduct => {
                BigRational::from_integer(
                    factorial(j) * crate::macwilliams::krawtchouk_gf_value(j, self.n, i),
                )
            }
            BasisKind::LaguerreRatio { alpha } => {
                let v = binomial(&ir, j) / binomial(&(rat(j as i64) + alpha), j);
                if j.is_multiple_of(2) {
                    v
                } else {
                    -v
                }
            }
            BasisKind::Custom { r } => r[j].eval(&ir),
        })
    }
}

/// Coefficients `a_0..a_n` of `p = sum a_i F_i` in a Δ(n, c) basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionVector {
    basis: DeltaBasisSpec,
    a: Vec<BigRational>,
}

impl ExpansionVector {
    pub fn new(basis: DeltaBasisSpec, a: Vec<BigRational>) -> Result<Self> {
        if a.len() != basis.n + 1 {
            return Err(Error::InvalidParameters(format!(
                "expected {} coefficients, got {}",
                basis.n + 1,
                a.len()
            )));
        }
        Ok(ExpansionVector { basis, a })
    }

    /// Coefficients in the monomial basis, `n = len - 1`.
    pub fn monomial(a: Vec<BigRational>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidParameters("empty coefficient list".into()));
        }
        Self::new(DeltaBasisSpec::monomial(a.len() - 1), a)
    }

    pub fn basis(&self) -> &DeltaBasisSpec {
        &self.basis
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    /// The sparsity set `{i : a_i != 0}`.
    pub fn support_set(&self) -> Vec<usize> {
        self.a
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// `p^(j)(c) = sum_i a_i R_j(i)` for `j = 0..=n`.
pub fn derivative_vector(v: &ExpansionVector) -> Result<Vec<BigRational>> {
    (0..=v.n())
        .map(|j| {
            v.a.iter().enumerate().try_fold(BigRational::zero(), |acc, (i, a)| {
                if a.is_zero() {
                    return Ok(acc);
                }
                Ok(acc + a * v.basis.r_value(j, i)?)
            })
        })
        .collect()
}

/// Falling-factorial moments `sum_i a_i i^(j)` for `j = 0..upto`.
pub fn falling_moments(a: &[BigRational], upto: usize) -> Vec<BigRational> {
    (0..upto)
        .map(|j| {
            a.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .fold(BigRational::zero(), |acc, (i, c)| {
                    acc + c * falling_factorial(&rat(i as i64), j)
                })
        })
        .collect()
}

/// Multiplicity detected from coefficients alone: the first nonvanishing
/// falling-factorial moment. Independent of the basis.
pub fn moment_multiplicity(a: &[BigRational]) -> Result<usize> {
    if a.iter().all(Zero::is_zero) {
        return Err(Error::AllZero);
    }
    // Falling factorials of degree <= n separate points of Z_{0,n}, so a
    // nonzero vector has a nonvanishing moment at some j <= n.
    for j in 0..a.len() {
        let m = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(BigRational::zero(), |acc, (i, c)| {
                acc + c * falling_factorial(&rat(i as i64), j)
            });
        if !m.is_zero() {
            return Ok(j);
        }
    }
    unreachable!("nonzero coefficient vector with all moments vanishing")
}

pub fn multiplicity_from_coeffs(v: &ExpansionVector) -> Result<usize> {
    moment_multiplicity(&v.a)
}

/// Whether `sum_i a_i f(i) = 0` for every `f` of degree below `mu`.
pub fn moment_conditions(v: &ExpansionVector, mu: usize) -> bool {
    falling_moments(&v.a, mu).iter().all(Zero::is_zero)
}

/// One coefficient of `a_j / w(j) = sum_k lambda_k g_k(j)`, kept in squared
/// form with its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaCoefficient {
    pub degree: usize,
    /// `lambda_k^2`
    pub squared: Scaled,
    /// Sign of `lambda_k` relative to the positive square root in `g_k`.
    pub sign: i8,
}

impl LambdaCoefficient {
    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

fn check_support(a: &[BigRational], fam: &FamilySpec) -> Result<()> {
    for (i, c) in a.iter().enumerate() {
        if !c.is_zero() && !fam.support_contains(i as i64) {
            return Err(Error::SupportViolation { index: i as i64 });
        }
    }
    Ok(())
}

/// Orthogonal expansion coefficients `lambda_k = sum_j a_j g_k(j)`.
///
/// Finite families return every degree up to their `n`; infinite families
/// return degrees up to `max_degree` (default: the basis `n`).
pub fn lambda_expansion(
    v: &ExpansionVector,
    fam: &FamilySpec,
    max_degree: Option<usize>,
) -> Result<Vec<LambdaCoefficient>> {
    check_support(&v.a, fam)?;
    let top = match fam.n() {
        Some(n) => max_degree.map_or(n, |m| m.min(n)),
        None => max_degree.unwrap_or(v.n()),
    };
    let support = v.support_set();
    (0..=top)
        .map(|k| {
            let mut inner = BigRational::zero();
            for &j in &support {
                inner += &v.a[j] * fam.unnormalized_value(k, j as i64)?;
            }
            let c = fam.norm_constant(k)?;
            let sign = if inner.is_zero() {
                0
            } else if inner.is_positive() {
                1
            } else {
                -1
            };
            Ok(LambdaCoefficient {
                degree: k,
                squared: Scaled {
                    rational: c.rational * &inner * &inner,
                    unit: c.unit,
                },
                sign,
            })
        })
        .collect()
}

/// `sum_{i in S} a_i^2 / w(i)`, the squared weighted norm of `A_w`.
pub fn weighted_norm_squared(a: &[BigRational], fam: &FamilySpec) -> Result<BigRational> {
    check_support(a, fam)?;
    let mut total = BigRational::zero();
    for (i, c) in a.iter().enumerate() {
        if !c.is_zero() {
            total += c * c / fam.weight(i as i64)?;
        }
    }
    Ok(total)
}

/// Laguerre polynomial `L_i^(alpha)` as a dense polynomial.
pub fn laguerre(i: usize, alpha: &BigRational) -> DensePoly {
    let top = rat(i as i64) + alpha;
    DensePoly::new(
        (0..=i)
            .map(|m| {
                let v = binomial(&top, i - m) / BigRational::from_integer(factorial(m));
                if m % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect(),
    )
}

/// `p = sum a_i F_i` as an explicit polynomial.
pub fn expand_explicit(v: &ExpansionVector) -> Result<DensePoly> {
    let n = v.n();
    match &v.basis.kind {
        BasisKind::Monomial => Ok(DensePoly::new(v.a.clone())),
        BasisKind::KrawtchoukProduct => {
            let minus = DensePoly::from_i64(&[1, -1]);
            let plus = DensePoly::from_i64(&[1, 1]);
            let mut acc = DensePoly::zero();
            for (i, a) in v.a.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let term = &minus.pow(i) * &plus.pow(n - i);
                acc = &acc + &term.scale(a);
            }
            Ok(acc)
        }
        BasisKind::LaguerreRatio { alpha } => {
            let mut acc = DensePoly::zero();
            for (i, a) in v.a.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let at_zero = binomial(&(rat(i as i64) + alpha), i);
                acc = &acc + &laguerre(i, alpha).scale(&(a / at_zero));
            }
            Ok(acc)
        }
        BasisKind::Custom { .. } => Err(Error::NotPolynomialBasis),
    }
}

//! Classical discrete orthogonal families: Hahn, discrete Chebyshev,
//! Krawtchouk, Meixner and Charlier.
//!
//! An orthonormal value `g_k(x)` carries a square root, so it is never
//! materialized. Each family is split as `g_k(x)^2 = c_k * v_k(x)^2`, with
//! `v_k` the unnormalized explicit sum and `c_k` the normalizer. Squares and
//! products `g_j(s) g_j(x) = c_j v_j(s) v_j(x)` are then rational, up to a
//! family-wide [`Unit`] for Meixner (non-integer `beta`) and Charlier.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::interval::Interval;
use crate::exact::{binomial, factorial, format_rational, pow_int, rat, BigRational};

/// Which family, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    Hahn {
        alpha: BigRational,
        beta: BigRational,
    },
    DiscreteChebyshev,
    Krawtchouk {
        q: BigRational,
    },
    Meixner {
        beta: BigRational,
        q: BigRational,
    },
    Charlier {
        lambda: BigRational,
    },
}

/// Positive transcendental factor shared by every normalizer of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unit {
    One,
    /// `e^(-lambda)`
    ExpNeg(BigRational),
    /// `(1 - q)^beta` with non-integer `beta`
    OneMinusQPow { q: BigRational, beta: BigRational },
}

impl Unit {
    pub fn enclosure(&self, bits: u32) -> Interval {
        match self {
            Unit::One => Interval::exact(BigRational::one()),
            Unit::ExpNeg(l) => Interval::exp(&-l, bits),
            Unit::OneMinusQPow { q, beta } => {
                Interval::pow_rational(&(BigRational::one() - q), beta, bits)
            }
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unit::One => write!(f, "1"),
            Unit::ExpNeg(l) => write!(f, "exp(-{})", format_rational(l)),
            Unit::OneMinusQPow { q, beta } => {
                write!(f, "(1-{})^({})", format_rational(q), format_rational(beta))
            }
        }
    }
}

/// A rational multiple of a family [`Unit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scaled {
    pub rational: BigRational,
    pub unit: Unit,
}

impl Scaled {
    pub fn exact(rational: BigRational) -> Self {
        Scaled {
            rational,
            unit: Unit::One,
        }
    }

    /// The value itself when no transcendental unit is attached.
    pub fn as_exact(&self) -> Option<&BigRational> {
        match self.unit {
            Unit::One => Some(&self.rational),
            _ => None,
        }
    }

    pub fn enclosure(&self, bits: u32) -> Interval {
        match self.unit {
            Unit::One => Interval::exact(self.rational.clone()),
            _ => self.unit.enclosure(bits).scale(&self.rational, bits),
        }
    }
}

impl fmt::Display for Scaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit {
            Unit::One => write!(f, "{}", format_rational(&self.rational)),
            _ => write!(f, "{}*{}", format_rational(&self.rational), self.unit),
        }
    }
}

/// Tail sum `sum_{j >= mu} g_j(s)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TailSum {
    Exact(BigRational),
    /// `total - head`, from completeness of an infinite family.
    Complement { total: BigRational, head: Scaled },
}

impl TailSum {
    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            TailSum::Exact(v) => Some(v),
            TailSum::Complement { .. } => None,
        }
    }

    pub fn enclosure(&self, bits: u32) -> Interval {
        match self {
            TailSum::Exact(v) => Interval::exact(v.clone()),
            TailSum::Complement { total, head } => {
                Interval::exact(total.clone()).sub(&head.enclosure(bits), bits)
            }
        }
    }
}

impl fmt::Display for TailSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailSum::Exact(v) => write!(f, "{}", format_rational(v)),
            TailSum::Complement { total, head } => {
                write!(f, "{} - {}", format_rational(total), head)
            }
        }
    }
}

/// A validated discrete orthogonal family on `shift + Z_{0,n}` (finite) or
/// `shift + Z_{0,inf}` (infinite).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    kind: FamilyKind,
    n: Option<usize>,
    shift: i64,
}

fn positive(name: &str, v: &BigRational) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!(
            "{name} must be positive, got {}",
            format_rational(v)
        )))
    }
}

impl FamilySpec {
    pub fn hahn(n: usize, alpha: BigRational, beta: BigRational) -> Result<Self> {
        let one = BigRational::one();
        let bound = -rat(n as i64);
        let upper = alpha > -&one && beta > -&one;
        let lower = alpha < bound && beta < bound;
        if !(upper || lower) {
            return Err(Error::InvalidParameters(format!(
                "Hahn needs alpha, beta > -1 or alpha, beta < -{n}"
            )));
        }
        let fam = FamilySpec {
            kind: FamilyKind::Hahn { alpha, beta },
            n: Some(n),
            shift: 0,
        };
        for x in 0..=n as i64 {
            if !fam.weight(x)?.is_positive() {
                return Err(Error::InvalidParameters(format!(
                    "Hahn weight is not positive at x = {x}"
                )));
            }
        }
        Ok(fam)
    }

    pub fn chebyshev(n: usize) -> Self {
        FamilySpec {
            kind: FamilyKind::DiscreteChebyshev,
            n: Some(n),
            shift: 0,
        }
    }

    pub fn krawtchouk(n: usize, q: BigRational) -> Result<Self> {
        positive("q", &q)?;
        Ok(FamilySpec {
            kind: FamilyKind::Krawtchouk { q },
            n: Some(n),
            shift: 0,
        })
    }

    pub fn meixner(beta: BigRational, q: BigRational) -> Result<Self> {
        positive("beta", &beta)?;
        positive("q", &q)?;
        if q >= BigRational::one() {
            return Err(Error::InvalidParameters("Meixner needs 0 < q < 1".into()));
        }
        if u32::try_from(beta.denom()).is_err() {
            return Err(Error::InvalidParameters(
                "Meixner beta denominator too large".into(),
            ));
        }
        Ok(FamilySpec {
            kind: FamilyKind::Meixner { beta, q },
            n: None,
            shift: 0,
        })
    }

    pub fn charlier(lambda: BigRational) -> Result<Self> {
        positive("lambda", &lambda)?;
        Ok(FamilySpec {
            kind: FamilyKind::Charlier { lambda },
            n: None,
            shift: 0,
        })
    }

    /// The family `x -> g_k(x - by)`, orthonormal on the support moved by `by`.
    pub fn shifted(mut self, by: i64) -> Self {
        self.shift += by;
        self
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    /// Support size parameter `n`, or `None` for infinite support.
    pub fn n(&self) -> Option<usize> {
        self.n
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_finite(&self) -> bool {
        self.n.is_some()
    }

    pub fn support_contains(&self, x: i64) -> bool {
        let t = x - self.shift;
        t >= 0 && self.n.is_none_or(|n| t <= n as i64)
    }

    /// Support points for a finite family.
    pub fn support(&self) -> Result<std::ops::RangeInclusive<i64>> {
        let n = self.n.ok_or(Error::InfiniteSupport)? as i64;
        Ok(self.shift..=self.shift + n)
    }

    /// The transcendental factor carried by every normalizer.
    pub fn unit(&self) -> Unit {
        match &self.kind {
            FamilyKind::Charlier { lambda } => Unit::ExpNeg(lambda.clone()),
            FamilyKind::Meixner { beta, q } if !beta.is_integer() => Unit::OneMinusQPow {
                q: q.clone(),
                beta: beta.clone(),
            },
            _ => Unit::One,
        }
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        match self.n {
            Some(n) if k > n => Err(Error::IndexOutOfRange {
                index: k as i64,
                max: n as i64,
            }),
            _ => Ok(()),
        }
    }

    fn n_rat(&self) -> BigRational {
        rat(self.n.unwrap_or(0) as i64)
    }

    /// Weight `w(x)` on the support.
    pub fn weight(&self, x: i64) -> Result<BigRational> {
        if !self.support_contains(x) {
            return Err(Error::OutOfSupport { x });
        }
        let t = x - self.shift;
        let tr = rat(t);
        let n = self.n_rat();
        let tu = t as usize;
        Ok(match &self.kind {
            FamilyKind::Hahn { alpha, beta } => {
                binomial(&(&tr + alpha), tu)
                    * binomial(&(&n - &tr + beta), self.n.unwrap() - tu)
            }
            FamilyKind::DiscreteChebyshev => BigRational::one(),
            FamilyKind::Krawtchouk { q } => binomial(&n, tu) * pow_int(q, t),
            FamilyKind::Meixner { beta, q } => {
                binomial(&(&tr + beta - BigRational::one()), tu) * pow_int(q, t)
            }
            FamilyKind::Charlier { lambda } => {
                pow_int(lambda, t) / BigRational::from_integer(factorial(tu))
            }
        })
    }

    /// The explicit sum `v_k(x)` without its normalizing square root.
    ///
    /// Defined for every integer `x`, since it is a polynomial in `x`.
    pub fn unnormalized_value(&self, k: usize, x: i64) -> Result<BigRational> {
        self.check_degree(k)?;
        let xr = rat(x - self.shift);
        let one = BigRational::one();
        let mut sum = BigRational::zero();
        match &self.kind {
            FamilyKind::Hahn { .. } | FamilyKind::DiscreteChebyshev => {
                let (alpha, beta) = self.hahn_params();
                let n = self.n_rat();
                let kr = rat(k as i64);
                let mut term = one.clone();
                for j in 0..=k {
                    sum += &term;
                    if j == k || term.is_zero() {
                        break;
                    }
                    let jr = rat(j as i64);
                    let den = (&jr + &one) * (&alpha + &jr + &one) * (&n - &jr);
                    if den.is_zero() {
                        return Err(Error::InvalidParameters(format!(
                            "Hahn sum has a vanishing denominator at j = {}",
                            j + 1
                        )));
                    }
                    let num = (&kr - &jr) * (&kr + &alpha + &beta + &jr + &one) * (&xr - &jr);
                    term = -(term * num / den);
                }
            }
            FamilyKind::Krawtchouk { q } => {
                let n = self.n_rat();
                let step = -q.recip();
                let mut p = one.clone();
                for j in 0..=k {
                    sum += &p * binomial(&xr, j) * binomial(&(&n - &xr), k - j);
                    p *= &step;
                }
            }
            FamilyKind::Meixner { beta, q } => {
                let top = -&xr - beta;
                let step = q.recip();
                let mut p = one.clone();
                for j in 0..=k {
                    sum += &p * binomial(&xr, j) * binomial(&top, k - j);
                    p *= &step;
                }
            }
            FamilyKind::Charlier { lambda } => {
                let kr = rat(k as i64);
                let step = -lambda.recip();
                let mut p = one.clone();
                for i in 0..=k {
                    sum += &p
                        * binomial(&kr, i)
                        * binomial(&xr, i)
                        * BigRational::from_integer(factorial(i));
                    p *= &step;
                }
            }
        }
        Ok(sum)
    }

    fn hahn_params(&self) -> (BigRational, BigRational) {
        match &self.kind {
            FamilyKind::Hahn { alpha, beta } => (alpha.clone(), beta.clone()),
            _ => (BigRational::zero(), BigRational::zero()),
        }
    }

    /// Normalizer `c_k` with `g_k(x)^2 = c_k v_k(x)^2`.
    pub fn norm_constant(&self, k: usize) -> Result<Scaled> {
        self.check_degree(k)?;
        let kr = rat(k as i64);
        let one = BigRational::one();
        let rational = match &self.kind {
            FamilyKind::Hahn { .. } | FamilyKind::DiscreteChebyshev => {
                let (alpha, beta) = self.hahn_params();
                let n = self.n.unwrap();
                let nr = rat(n as i64);
                let num = (rat(2 * k as i64) + &alpha + &beta + &one)
                    * binomial(&(&kr + &alpha), k)
                    * binomial(&nr, k);
                let den = (&nr + &one)
                    * binomial(&(&kr + &beta), k)
                    * binomial(&(&nr + &kr + &alpha + &beta + &one), n + 1);
                if den.is_zero() {
                    // Removable 0/0 in the closed form; normalize directly.
                    self.gram_normalizer(k)?
                } else {
                    num / den
                }
            }
            FamilyKind::Krawtchouk { q } => {
                let n = self.n.unwrap();
                pow_int(q, k as i64) * pow_int(&(&one + q), -(n as i64))
                    / binomial(&self.n_rat(), k)
            }
            FamilyKind::Meixner { beta, q } => {
                let base = pow_int(q, k as i64) / binomial(&(&kr + beta - &one), k);
                if beta.is_integer() {
                    let b: i64 = beta.to_integer().try_into().map_err(|_| {
                        Error::InvalidParameters("Meixner beta too large".into())
                    })?;
                    base * pow_int(&(&one - q), b)
                } else {
                    base
                }
            }
            FamilyKind::Charlier { lambda } => {
                pow_int(lambda, k as i64) / BigRational::from_integer(factorial(k))
            }
        };
        Ok(Scaled {
            rational,
            unit: self.unit(),
        })
    }

    /// `1 / sum_x w(x) v_k(x)^2` over a finite support.
    fn gram_normalizer(&self, k: usize) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for x in self.support()? {
            let v = self.unnormalized_value(k, x)?;
            total += self.weight(x)? * &v * &v;
        }
        if total.is_zero() {
            return Err(Error::InvalidParameters(format!(
                "degree {k} polynomial has zero norm"
            )));
        }
        Ok(total.recip())
    }

    /// `g_k(x)^2`.
    pub fn g_squared(&self, k: usize, x: i64) -> Result<Scaled> {
        let c = self.norm_constant(k)?;
        let v = self.unnormalized_value(k, x)?;
        Ok(Scaled {
            rational: c.rational * &v * &v,
            unit: c.unit,
        })
    }

    /// Christoffel kernel `sum_{j=lo}^{hi} g_j(s) g_j(x)`.
    pub fn kernel(&self, s: i64, x: i64, lo: usize, hi: usize) -> Result<Scaled> {
        if lo > hi {
            return Err(Error::InvalidParameters(format!(
                "empty degree range {lo}..={hi}"
            )));
        }
        self.check_degree(hi)?;
        let mut total = BigRational::zero();
        for j in lo..=hi {
            let c = self.norm_constant(j)?;
            let vs = self.unnormalized_value(j, s)?;
            let vx = if s == x {
                vs.clone()
            } else {
                self.unnormalized_value(j, x)?
            };
            total += c.rational * vs * vx;
        }
        Ok(Scaled {
            rational: total,
            unit: self.unit(),
        })
    }

    /// `sum_{j >= mu} g_j(s)^2`.
    ///
    /// Finite families sum up to `n`. Infinite families only have a closed
    /// form at the first support point, obtained as `1/w(s)` minus the head.
    pub fn tail_sum(&self, s: i64, mu: usize) -> Result<TailSum> {
        if !self.support_contains(s) {
            return Err(Error::OutOfSupport { x: s });
        }
        match self.n {
            Some(n) => {
                if mu > n {
                    return Ok(TailSum::Exact(BigRational::zero()));
                }
                let k = self.kernel(s, s, mu, n)?;
                Ok(TailSum::Exact(k.rational))
            }
            None => {
                if s != self.shift {
                    return Err(Error::NoClosedForm(format!(
                        "infinite-family tail sum is only available at s = {}",
                        self.shift
                    )));
                }
                let total = self.weight(s)?.recip();
                if mu == 0 {
                    return Ok(TailSum::Exact(total));
                }
                let head = self.kernel(s, s, 0, mu - 1)?;
                Ok(match head.as_exact() {
                    Some(h) => TailSum::Exact(total - h),
                    None => TailSum::Complement { total, head },
                })
            }
        }
    }

    /// `w(x) * sum_{j=0}^{n} g_j(x) g_j(y)`, which equals the Kronecker delta.
    pub fn dual_orthogonality_check(&self, x: i64, y: i64) -> Result<BigRational> {
        let n = self.n.ok_or(Error::InfiniteSupport)?;
        for p in [x, y] {
            if !self.support_contains(p) {
                return Err(Error::OutOfSupport { x: p });
            }
        }
        let k = self.kernel(x, y, 0, n)?;
        Ok(self.weight(x)? * k.rational)
    }

    /// Squared Gram entry `(sum_x w v_i v_j)^2 c_i c_j`, which equals the
    /// Kronecker delta for an orthonormal family on a finite support.
    pub fn squared_gram_entry(&self, i: usize, j: usize) -> Result<BigRational> {
        let mut inner = BigRational::zero();
        for x in self.support()? {
            inner += self.weight(x)?
                * self.unnormalized_value(i, x)?
                * self.unnormalized_value(j, x)?;
        }
        let ci = self.norm_constant(i)?.rational;
        let cj = self.norm_constant(j)?.rational;
        Ok(&inner * &inner * ci * cj)
    }

    /// `v_k(x)` for every degree and support point, indexed `[k][x - shift]`.
    fn value_table(&self) -> Result<Vec<Vec<BigRational>>> {
        let n = self.n.ok_or(Error::InfiniteSupport)?;
        (0..=n)
            .map(|k| self.support()?.map(|x| self.unnormalized_value(k, x)).collect())
            .collect()
    }

    /// [`dual_orthogonality_check`](Self::dual_orthogonality_check) for all
    /// pairs at once, indexed by offsets into the support.
    pub fn dual_orthogonality_matrix(&self) -> Result<Vec<Vec<BigRational>>> {
        let v = self.value_table()?;
        let c: Vec<BigRational> = (0..v.len())
            .map(|k| Ok(self.norm_constant(k)?.rational))
            .collect::<Result<_>>()?;
        let w: Vec<BigRational> = self.support()?.map(|x| self.weight(x)).collect::<Result<_>>()?;
        let m = w.len();
        Ok((0..m)
            .map(|x| {
                (0..m)
                    .map(|y| {
                        let k: BigRational = (0..v.len()).map(|j| &c[j] * &v[j][x] * &v[j][y]).sum();
                        &w[x] * k
                    })
                    .collect()
            })
            .collect())
    }

    /// [`squared_gram_entry`](Self::squared_gram_entry) for all pairs of degrees.
    pub fn squared_gram_matrix(&self) -> Result<Vec<Vec<BigRational>>> {
        let v = self.value_table()?;
        let c: Vec<BigRational> = (0..v.len())
            .map(|k| Ok(self.norm_constant(k)?.rational))
            .collect::<Result<_>>()?;
        let w: Vec<BigRational> = self.support()?.map(|x| self.weight(x)).collect::<Result<_>>()?;
        Ok((0..v.len())
            .map(|i| {
                (0..v.len())
                    .map(|j| {
                        let inner: BigRational =
                            (0..w.len()).map(|x| &w[x] * &v[i][x] * &v[j][x]).sum();
                        &inner * &inner * &c[i] * &c[j]
                    })
                    .collect()
            })
            .collect())
    }

    /// `sum_x w(x)` over a finite support.
    pub fn total_weight(&self) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for x in self.support()? {
            total += self.weight(x)?;
        }
        Ok(total)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self
            .n
            .map(|n| n.to_string())
            .unwrap_or_else(|| "inf".to_string());
        match &self.kind {
            FamilyKind::Hahn { alpha, beta } => write!(
                f,
                "hahn(n={n},alpha={},beta={})",
                format_rational(alpha),
                format_rational(beta)
            )?,
            FamilyKind::DiscreteChebyshev => write!(f, "chebyshev(n={n})")?,
            FamilyKind::Krawtchouk { q } => {
                write!(f, "krawtchouk(n={n},q={})", format_rational(q))?
            }
            FamilyKind::Meixner { beta, q } => write!(
                f,
                "meixner(beta={},q={})",
                format_rational(beta),
                format_rational(q)
            )?,
            FamilyKind::Charlier { lambda } => {
                write!(f, "charlier(lambda={})", format_rational(lambda))?
            }
        }
        if self.shift != 0 {
            write!(f, "@shift={}", self.shift)?;
        }
        Ok(())
    }
}

/// `n!^2 / ((n-mu)! (n+mu)!)`, the telescoped Chebyshev tail at the origin.
pub fn chebyshev_tail_closed_form(n: usize, mu: usize) -> BigRational {
    if mu > n {
        return BigRational::zero();
    }
    let nf = factorial(n);
    BigRational::new(&nf * &nf, factorial(n - mu) * factorial(n + mu))
}

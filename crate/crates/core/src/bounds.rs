//! Evaluation of the multiplicity inequalities.
//!
//! Every check returns a [`BoundReport`]. Sides that are rational are
//! compared exactly; sides involving `e^x` or square roots are enclosed in
//! rational intervals and compared with [`compare_guarded`], which reports
//! [`Verdict::Undecided`] rather than guess.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::deltabases::{moment_multiplicity, weighted_norm_squared, ExpansionVector};
use crate::error::{Error, Result};
use crate::exact::interval::{compare_guarded, Interval, Verdict};
use crate::exact::{binomial_int, factorial, format_rational, pow_int, rat, BigRational};
use crate::families::{FamilySpec, TailSum};

/// Digits after the decimal point when rendering enclosed values.
pub const DECIMAL_DIGITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundName {
    Ozl2,
    Condg2,
    Eq1,
    Eq2,
    Eq3,
    Meixner1,
    Meixner2,
    Charlier3,
    Oze,
    Schur1,
    Schur2,
}

impl BoundName {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Ozl2 => "ozl2",
            BoundName::Condg2 => "condg2",
            BoundName::Eq1 => "eq1",
            BoundName::Eq2 => "eq2",
            BoundName::Eq3 => "eq3",
            BoundName::Meixner1 => "meixner1",
            BoundName::Meixner2 => "meixner2",
            BoundName::Charlier3 => "charlier3",
            BoundName::Oze => "oze",
            BoundName::Schur1 => "schur1",
            BoundName::Schur2 => "schur2",
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One side of an inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Side {
    Exact(BigRational),
    Enclosed(Interval),
}

impl Side {
    /// `"p/q"` for exact values, a decimal for enclosures.
    pub fn render(&self) -> String {
        match self {
            Side::Exact(v) => format_rational(v),
            Side::Enclosed(iv) => iv.to_decimal(DECIMAL_DIGITS),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Side::Exact(v) => Some(v),
            Side::Enclosed(_) => None,
        }
    }
}

/// One evaluated inequality `lhs >= rhs` (or `lhs > rhs` when strict).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub name: BoundName,
    pub lhs: Side,
    pub rhs: Side,
    pub strict: bool,
    pub verdict: Verdict,
    /// Equality attained.
    pub sharp: bool,
    /// Working precision of a guarded comparison.
    pub bits_used: Option<u32>,
    pub context: BTreeMap<String, String>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    fn exact(
        name: BoundName,
        lhs: BigRational,
        rhs: BigRational,
        strict: bool,
        context: BTreeMap<String, String>,
    ) -> Self {
        let sharp = lhs == rhs;
        let ok = if strict { lhs > rhs } else { lhs >= rhs };
        BoundReport {
            name,
            lhs: Side::Exact(lhs),
            rhs: Side::Exact(rhs),
            strict,
            verdict: if ok { Verdict::Holds } else { Verdict::Violated },
            sharp,
            bits_used: None,
            context,
        }
    }

    fn guarded(
        name: BoundName,
        lhs: BigRational,
        strict: bool,
        rhs: impl Fn(u32) -> Option<Interval>,
        context: BTreeMap<String, String>,
    ) -> Self {
        let cmp = compare_guarded(&lhs, strict, rhs);
        let rhs = if cmp.rhs.is_exact() {
            Side::Exact(cmp.rhs.lo().clone())
        } else {
            Side::Enclosed(cmp.rhs)
        };
        BoundReport {
            name,
            lhs: Side::Exact(lhs),
            rhs,
            strict,
            verdict: cmp.verdict,
            sharp: cmp.equal,
            bits_used: Some(cmp.bits_used),
            context,
        }
    }
}

fn ctx(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn verdict_str(v: Verdict) -> String {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "violated",
        Verdict::Undecided => "undecided",
    }
    .to_string()
}

fn sum_squares(a: &[BigRational]) -> BigRational {
    a.iter().map(|x| x * x).sum()
}

fn nonzero_multiplicity(a: &[BigRational]) -> Result<usize> {
    match moment_multiplicity(a)? {
        0 => Err(Error::NoZero),
        mu => Ok(mu),
    }
}

fn stated_mu(a: &[BigRational], mu: usize) -> Result<usize> {
    let actual = moment_multiplicity(a)?;
    if mu == 0 || mu > actual {
        return Err(Error::MultiplicityTooSmall { stated: mu, actual });
    }
    Ok(actual)
}

/// `(n-t)!(n+t)!/n!^2 = prod_{i=1}^t (n+i)/(n-t+i)`.
fn factorial_ratio(n: usize, t: usize) -> BigRational {
    let (num, den) = (1..=t).fold((BigInt::one(), BigInt::one()), |(a, b), i| {
        (a * (n + i), b * (n - t + i))
    });
    BigRational::new(num, den)
}

/// `(n-mu)!(n+mu)!/n!^2`, the `l2` bound factor.
pub fn eq1_bound(n: usize, mu: usize) -> Result<BigRational> {
    if mu > n {
        return Err(Error::ParameterDomain(format!("mu = {mu} exceeds n = {n}")));
    }
    Ok(factorial_ratio(n, mu))
}

/// `(n-t)!(n+t)!/n!^2` with `t = floor((mu+1)/2)`, the `l_inf` bound factor.
pub fn eq2_bound(n: usize, mu: usize) -> Result<BigRational> {
    let t = mu.div_ceil(2);
    if t > n {
        return Err(Error::ParameterDomain(format!("mu = {mu} too large for n = {n}")));
    }
    Ok(factorial_ratio(n, t))
}

/// `1 / (1 - (1+q)^-n sum_{i<mu} C(n,i) q^i)`, the Krawtchouk-weighted factor.
pub fn eq3_bound(n: usize, mu: usize, q: &BigRational) -> Result<BigRational> {
    if !q.is_positive() {
        return Err(Error::ParameterDomain("q must be positive".into()));
    }
    if mu > n {
        return Err(Error::ParameterDomain(format!("mu = {mu} exceeds n = {n}")));
    }
    let head: BigRational = (0..mu)
        .map(|i| BigRational::from_integer(binomial_int(n as i64, i as i64)) * pow_int(q, i as i64))
        .sum();
    let denom = BigRational::one() - head * pow_int(&(BigRational::one() + q), -(n as i64));
    Ok(denom.recip())
}

/// `w(s)^2 sum_{i in D} a_i^2 / w(i) >= a_s^2 / sum_{j >= mu} g_j(s)^2`.
///
/// Finite families are compared exactly. Infinite families are accepted at
/// the first support point, where the tail has a closed form; the
/// comparison is then strict and guarded.
pub fn ozl2_check(
    v: &ExpansionVector,
    fam: &FamilySpec,
    s: i64,
    mu: usize,
) -> Result<BoundReport> {
    let a = v.coeffs();
    let actual = stated_mu(a, mu)?;
    if !fam.support_contains(s) {
        return Err(Error::OutOfSupport { x: s });
    }
    let norm = weighted_norm_squared(a, fam)?;
    let ws = fam.weight(s)?;
    let lhs = &ws * &ws * norm;
    let a_s = usize::try_from(s)
        .ok()
        .and_then(|i| a.get(i))
        .cloned()
        .unwrap_or_else(BigRational::zero);
    let tail = fam.tail_sum(s, mu)?;
    let context = ctx(&[
        ("family", fam.to_string()),
        ("s", s.to_string()),
        ("mu", mu.to_string()),
        ("mu_actual", actual.to_string()),
        ("tail", tail.to_string()),
    ]);
    let a_s_sq = &a_s * &a_s;
    match tail {
        TailSum::Exact(t) => {
            if t.is_zero() {
                if a_s.is_zero() {
                    return Ok(BoundReport::exact(BoundName::Ozl2, lhs, t, false, context));
                }
                return Err(Error::DegenerateTail);
            }
            let strict = !fam.is_finite();
            Ok(BoundReport::exact(BoundName::Ozl2, lhs, a_s_sq / t, strict, context))
        }
        complement => Ok(BoundReport::guarded(
            BoundName::Ozl2,
            lhs,
            true,
            |bits| {
                complement
                    .enclosure(bits)
                    .recip(bits)
                    .map(|r| r.scale(&a_s_sq, bits))
            },
            context,
        )),
    }
}

/// `max_{k in D} |a_k| / w(k) >= |a_s| sum_{j <= (mu-1)/2} g_j(s)^2` for `s` outside `D`.
pub fn condg2_check(
    v: &ExpansionVector,
    fam: &FamilySpec,
    s: i64,
    mu: usize,
) -> Result<BoundReport> {
    let a = v.coeffs();
    let actual = stated_mu(a, mu)?;
    if s < 0 || s as usize >= a.len() {
        return Err(Error::IndexOutOfRange {
            index: s,
            max: a.len() as i64 - 1,
        });
    }
    if fam.support_contains(s) {
        return Err(Error::SupportViolation { index: s });
    }
    let mut lhs = BigRational::zero();
    for (k, c) in a.iter().enumerate() {
        if k as i64 == s || c.is_zero() {
            continue;
        }
        if !fam.support_contains(k as i64) {
            return Err(Error::SupportViolation { index: k as i64 });
        }
        let r = c.abs() / fam.weight(k as i64)?;
        if r > lhs {
            lhs = r;
        }
    }
    let r = (mu - 1) / 2;
    let kernel = fam.kernel(s, s, 0, r)?;
    let a_s = a[s as usize].abs();
    let context = ctx(&[
        ("family", fam.to_string()),
        ("s", s.to_string()),
        ("mu", mu.to_string()),
        ("mu_actual", actual.to_string()),
        ("r", r.to_string()),
        ("kernel", kernel.to_string()),
    ]);
    let strict = !fam.is_finite();
    Ok(match kernel.as_exact() {
        Some(k) => BoundReport::exact(BoundName::Condg2, lhs, a_s * k, strict, context),
        None => BoundReport::guarded(
            BoundName::Condg2,
            lhs,
            strict,
            |bits| Some(kernel.enclosure(bits).scale(&a_s, bits)),
            context,
        ),
    })
}

/// Guarded check of `factor >= e^exponent`, recorded into a report context.
fn exp_form(context: &mut BTreeMap<String, String>, factor: &BigRational, exponent: BigRational) {
    let cmp = compare_guarded(factor, false, |bits| Some(Interval::exp(&exponent, bits)));
    context.insert("exp_form_exponent".into(), format_rational(&exponent));
    context.insert(
        "exp_form_rhs".into(),
        cmp.rhs.to_decimal(DECIMAL_DIGITS),
    );
    context.insert("exp_form_verdict".into(), verdict_str(cmp.verdict));
}

/// `sum |a_i|^2 >= (n-mu)!(n+mu)!/n!^2 |a_0|^2`, with the weaker
/// `e^(2 mu^2/(2n+1))` form recorded in the context.
pub fn eq1_check(v: &ExpansionVector) -> Result<BoundReport> {
    let a = v.coeffs();
    let n = v.n();
    let mu = nonzero_multiplicity(a)?;
    let factor = eq1_bound(n, mu)?;
    let rhs = &factor * &a[0] * &a[0];
    let mut context = ctx(&[
        ("n", n.to_string()),
        ("mu", mu.to_string()),
        ("factor", format_rational(&factor)),
    ]);
    let m = rat(mu as i64);
    exp_form(&mut context, &factor, rat(2) * &m * &m / rat(2 * n as i64 + 1));
    Ok(BoundReport::exact(BoundName::Eq1, sum_squares(a), rhs, false, context))
}

/// `1 + max_{k>=1} |a_k/a_0| >= (n-t)!(n+t)!/n!^2`, `t = floor((mu+1)/2)`.
pub fn eq2_check(v: &ExpansionVector) -> Result<BoundReport> {
    let a = v.coeffs();
    let n = v.n();
    if a[0].is_zero() {
        return Err(Error::ZeroLeadCoefficient);
    }
    let mu = nonzero_multiplicity(a)?;
    let a0 = a[0].abs();
    let max_ratio = a[1..]
        .iter()
        .map(|x| x.abs() / &a0)
        .max()
        .unwrap_or_else(BigRational::zero);
    let lhs = BigRational::one() + max_ratio;
    let rhs = eq2_bound(n, mu)?;
    let t = mu.div_ceil(2);
    let mut context = ctx(&[
        ("n", n.to_string()),
        ("mu", mu.to_string()),
        ("t", t.to_string()),
    ]);
    let tr = rat(t as i64);
    exp_form(&mut context, &rhs, rat(2) * &tr * &tr / rat(2 * n as i64 + 1));
    Ok(BoundReport::exact(BoundName::Eq2, lhs, rhs, false, context))
}

/// `sum |a_i|^2 q^-i / C(n,i) >= |a_0|^2 / (1 - (1+q)^-n sum_{i<mu} C(n,i) q^i)`.
pub fn eq3_check(v: &ExpansionVector, q: &BigRational) -> Result<BoundReport> {
    if !q.is_positive() {
        return Err(Error::ParameterDomain("q must be positive".into()));
    }
    let a = v.coeffs();
    let n = v.n();
    if a[0].is_zero() {
        return Err(Error::ZeroLeadCoefficient);
    }
    let mu = nonzero_multiplicity(a)?;
    let lhs: BigRational = a
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| {
            x * x * pow_int(q, -(i as i64))
                / BigRational::from_integer(binomial_int(n as i64, i as i64))
        })
        .sum();
    let rhs = eq3_bound(n, mu, q)? * &a[0] * &a[0];
    let context = ctx(&[
        ("n", n.to_string()),
        ("mu", mu.to_string()),
        ("q", format_rational(q)),
    ]);
    Ok(BoundReport::exact(BoundName::Eq3, lhs, rhs, false, context))
}

/// The three strict inequalities obtained from Meixner (`beta = 1`) and
/// Charlier families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem4 {
    /// `sum |a_i|^2 q^i > |a_0|^2 q^mu`, `q > 1`
    Meixner1,
    /// `max_i |a_i| q^i > (q^floor((mu-1)/2) - 1/q) |a_0|`, `q > 1`
    Meixner2,
    /// `sum |a_i|^2 q^-i i! > |a_0|^2 / (1 - e^-q sum_{i<mu} q^i/i!)`, `q > 0`
    Charlier3,
}

pub fn theorem4_check(v: &ExpansionVector, which: Theorem4, q: &BigRational) -> Result<BoundReport> {
    let a = v.coeffs();
    let one = BigRational::one();
    match which {
        Theorem4::Meixner1 | Theorem4::Meixner2 if q <= &one => {
            return Err(Error::ParameterDomain("Meixner bounds need q > 1".into()))
        }
        Theorem4::Charlier3 if !q.is_positive() => {
            return Err(Error::ParameterDomain("Charlier bound needs q > 0".into()))
        }
        _ => {}
    }
    if a[0].is_zero() {
        return Err(Error::ZeroLeadCoefficient);
    }
    let mu = nonzero_multiplicity(a)?;
    let a0 = a[0].abs();
    let a0_sq = &a0 * &a0;
    let context = ctx(&[
        ("n", v.n().to_string()),
        ("mu", mu.to_string()),
        ("q", format_rational(q)),
    ]);
    Ok(match which {
        Theorem4::Meixner1 => {
            let lhs: BigRational = a
                .iter()
                .enumerate()
                .map(|(i, x)| x * x * pow_int(q, i as i64))
                .sum();
            let rhs = a0_sq * pow_int(q, mu as i64);
            BoundReport::exact(BoundName::Meixner1, lhs, rhs, true, context)
        }
        Theorem4::Meixner2 => {
            let lhs = a
                .iter()
                .enumerate()
                .map(|(i, x)| x.abs() * pow_int(q, i as i64))
                .max()
                .unwrap();
            let r = (mu - 1) / 2;
            let rhs = (pow_int(q, r as i64) - q.recip()) * &a0;
            BoundReport::exact(BoundName::Meixner2, lhs, rhs, true, context)
        }
        Theorem4::Charlier3 => {
            let lhs: BigRational = a
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| {
                    x * x * pow_int(q, -(i as i64)) * BigRational::from_integer(factorial(i))
                })
                .sum();
            let head: BigRational = (0..mu)
                .map(|i| pow_int(q, i as i64) / BigRational::from_integer(factorial(i)))
                .sum();
            BoundReport::guarded(
                BoundName::Charlier3,
                lhs,
                true,
                |bits| {
                    let e = Interval::exp(&-q, bits);
                    let denom = Interval::exact(one.clone()).sub(&e.scale(&head, bits), bits);
                    denom.recip(bits).map(|r| r.scale(&a0_sq, bits))
                },
                context,
            )
        }
    })
}

/// `(n-k)!(n+k)!/n!^2 >= e^(2k^2/(2n+1))` for `0 <= k <= n`.
pub fn oze_check(n: usize, k: usize) -> Result<BoundReport> {
    if k > n {
        return Err(Error::ParameterDomain(format!("k = {k} exceeds n = {n}")));
    }
    let lhs = factorial_ratio(n, k);
    let kr = rat(k as i64);
    let exponent = rat(2) * &kr * &kr / rat(2 * n as i64 + 1);
    let context = ctx(&[
        ("n", n.to_string()),
        ("k", k.to_string()),
        ("exponent", format_rational(&exponent)),
    ]);
    Ok(BoundReport::guarded(
        BoundName::Oze,
        lhs,
        false,
        |bits| Some(Interval::exp(&exponent, bits)),
        context,
    ))
}

/// Inputs of the classical real-root comparison; `nu` is supplied by the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurInput {
    pub a0: BigRational,
    pub an: BigRational,
    pub n: usize,
    pub nu: usize,
}

/// `sum |a_i|^2 >= 2 a_0 a_n e^((nu^2-nu)/2n)` and
/// `sum |a_i| >= sqrt(a_0 a_n) e^(nu^2/4n)`.
pub fn schur_bounds(
    inp: &SchurInput,
    norm_l2_sq: &BigRational,
    norm_l1: &BigRational,
) -> Result<(BoundReport, BoundReport)> {
    if inp.n == 0 {
        return Err(Error::ParameterDomain("n must be positive".into()));
    }
    if inp.nu > inp.n {
        return Err(Error::ParameterDomain(format!(
            "nu = {} exceeds n = {}",
            inp.nu, inp.n
        )));
    }
    if !inp.a0.is_positive() || !inp.an.is_positive() {
        return Err(Error::ParameterDomain("a0 and an must be positive".into()));
    }
    let nu = rat(inp.nu as i64);
    let n = rat(inp.n as i64);
    let prod = &inp.a0 * &inp.an;
    let context = ctx(&[
        ("n", inp.n.to_string()),
        ("nu", inp.nu.to_string()),
        ("a0", format_rational(&inp.a0)),
        ("an", format_rational(&inp.an)),
    ]);
    let e1 = (&nu * &nu - &nu) / (rat(2) * &n);
    let two_prod = rat(2) * &prod;
    let first = BoundReport::guarded(
        BoundName::Schur1,
        norm_l2_sq.clone(),
        false,
        |bits| Some(Interval::exp(&e1, bits).scale(&two_prod, bits)),
        context.clone(),
    );
    let e2 = &nu * &nu / (rat(4) * &n);
    let second = BoundReport::guarded(
        BoundName::Schur2,
        norm_l1.clone(),
        false,
        |bits| {
            let root = Interval::exact(prod.clone()).sqrt(bits + 8);
            Some(root.mul(&Interval::exp(&e2, bits + 8), bits))
        },
        context,
    );
    Ok((first, second))
}

/// Which closed-form bound drives [`max_mu_for_norm`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormConstraint {
    /// `sum |a_i|^2 / |a_0|^2 <= B`
    L2Ratio,
    /// `1 + max |a_k / a_0| <= B`
    LinfRatio,
    /// Krawtchouk-weighted `l2` ratio at parameter `q`.
    KrawWeighted(BigRational),
}

/// Largest `mu` in `0..=n` whose bound factor (with `|a_0| = 1`) stays within `b`.
pub fn max_mu_for_norm(n: usize, constraint: &NormConstraint, b: &BigRational) -> Result<usize> {
    if b < &BigRational::one() {
        return Err(Error::ParameterDomain("B must be at least 1".into()));
    }
    let mut best = 0;
    for mu in 0..=n {
        let bound = match constraint {
            NormConstraint::L2Ratio => eq1_bound(n, mu)?,
            NormConstraint::LinfRatio => eq2_bound(n, mu)?,
            NormConstraint::KrawWeighted(q) => eq3_bound(n, mu, q)?,
        };
        if &bound > b {
            break;
        }
        best = mu;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, to_f64, DensePoly};

    fn mono(v: &[i64]) -> ExpansionVector {
        ExpansionVector::monomial(v.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    fn one_minus_x(n: usize) -> ExpansionVector {
        let p = DensePoly::from_i64(&[1, -1]).pow(n);
        ExpansionVector::monomial((0..=n).map(|i| p.coeff(i)).collect()).unwrap()
    }

    fn exact_sides(r: &BoundReport) -> (BigRational, BigRational) {
        (r.lhs.as_exact().unwrap().clone(), r.rhs.as_exact().unwrap().clone())
    }

    #[test]
    fn ozl2_examples() {
        let v = mono(&[1, -2, 1]);
        let k = FamilySpec::krawtchouk(2, rat(1)).unwrap();
        let r = ozl2_check(&v, &k, 0, 2).unwrap();
        assert_eq!(exact_sides(&r), (rat(4), rat(4)));
        assert!(r.holds() && r.sharp);

        let c = FamilySpec::chebyshev(2);
        let r = ozl2_check(&v, &c, 0, 2).unwrap();
        assert_eq!(exact_sides(&r), (rat(6), rat(6)));
        assert!(r.sharp);

        let e0 = mono(&[1, 0, 0]);
        assert_eq!(
            ozl2_check(&e0, &c, 0, 0),
            Err(Error::MultiplicityTooSmall { stated: 0, actual: 0 })
        );
        assert!(matches!(
            ozl2_check(&v, &c, 0, 3),
            Err(Error::MultiplicityTooSmall { .. })
        ));
        assert_eq!(
            ozl2_check(&v, &FamilySpec::chebyshev(1), 0, 1),
            Err(Error::SupportViolation { index: 2 })
        );
    }

    #[test]
    fn ozl2_infinite_matches_theorem4() {
        // Meixner beta=1 with parameter 1/q gives the first strict bound.
        let v = mono(&[1, -2, 1]);
        let m = FamilySpec::meixner(rat(1), ratio(1, 2)).unwrap();
        let r = ozl2_check(&v, &m, 0, 2).unwrap();
        let t = theorem4_check(&v, Theorem4::Meixner1, &rat(2)).unwrap();
        assert_eq!(r.lhs, t.lhs);
        assert_eq!(r.rhs, t.rhs);
        assert!(r.strict && r.holds());

        let ch = FamilySpec::charlier(rat(1)).unwrap();
        let r = ozl2_check(&v, &ch, 0, 2).unwrap();
        let t = theorem4_check(&v, Theorem4::Charlier3, &rat(1)).unwrap();
        assert_eq!(r.lhs, t.lhs);
        assert!(r.holds() && t.holds());
        let (Side::Enclosed(a), Side::Enclosed(b)) = (&r.rhs, &t.rhs) else {
            panic!("expected enclosures");
        };
        assert!(a.lo() <= b.hi() && b.lo() <= a.hi());
    }

    #[test]
    fn condg2_examples() {
        let v = mono(&[1, -2, 1]);
        let shifted = FamilySpec::chebyshev(1).shifted(1);
        let r = condg2_check(&v, &shifted, 0, 2).unwrap();
        assert_eq!(exact_sides(&r), (rat(2), ratio(1, 2)));
        assert!(r.holds());

        // One-point family on {1}, w = 1.
        let v = mono(&[1, -1]);
        let point = FamilySpec::chebyshev(0).shifted(1);
        let r = condg2_check(&v, &point, 0, 1).unwrap();
        assert_eq!(exact_sides(&r), (rat(1), rat(1)));
        assert!(r.holds() && r.sharp);

        // a_s = 0 gives a zero right side.
        let v = mono(&[0, 1, -2, 1]);
        let f = FamilySpec::chebyshev(2).shifted(1);
        let r = condg2_check(&v, &f, 0, 2).unwrap();
        assert_eq!(r.rhs, Side::Exact(rat(0)));
        assert!(r.holds());

        let c = FamilySpec::chebyshev(2);
        assert_eq!(
            condg2_check(&mono(&[1, -2, 1]), &c, 0, 2),
            Err(Error::SupportViolation { index: 0 })
        );
    }

    #[test]
    fn condg2_meixner_shifted_implies_meixner2() {
        // Shifted Meixner beta=1, parameter 1/q: RHS = |a_0| (q^(r+1) - 1)/q.
        let v = mono(&[1, -1, -1, 0, 1, 1, -1]);
        let q = rat(3);
        let m = FamilySpec::meixner(rat(1), q.recip()).unwrap().shifted(1);
        let r = condg2_check(&v, &m, 0, 3).unwrap();
        let (_, rhs) = exact_sides(&r);
        assert_eq!(rhs, (pow_int(&q, 2) - rat(1)) / &q);
        assert!(r.holds() && r.strict);
    }

    #[test]
    fn eq1_examples() {
        let r = eq1_check(&mono(&[1, -2, 1])).unwrap();
        assert_eq!(exact_sides(&r), (rat(6), rat(6)));
        assert!(r.sharp && r.holds());
        assert_eq!(r.context["exp_form_verdict"], "holds");
        assert_eq!(eq1_bound(2, 1).unwrap(), ratio(3, 2));
        assert_eq!(eq1_check(&mono(&[1, 1])), Err(Error::NoZero));
    }

    #[test]
    fn eq2_examples() {
        let r = eq2_check(&mono(&[1, -2, 1])).unwrap();
        assert_eq!(exact_sides(&r), (rat(3), ratio(3, 2)));
        let r = eq2_check(&mono(&[1, -1, -1, 0, 1, 1, -1])).unwrap();
        assert_eq!(exact_sides(&r), (rat(2), ratio(28, 15)));
        assert!(r.holds() && !r.sharp);
        for n in 1..10 {
            assert_eq!(eq2_bound(n, 1).unwrap(), ratio(n as i64 + 1, n as i64));
        }
        assert_eq!(eq2_check(&mono(&[0, 1, -1])), Err(Error::ZeroLeadCoefficient));
    }

    #[test]
    fn eq3_examples() {
        let v = mono(&[1, -2, 1]);
        let r = eq3_check(&v, &rat(1)).unwrap();
        assert_eq!(exact_sides(&r), (rat(4), rat(4)));
        assert!(r.sharp);
        let r = eq3_check(&v, &rat(2)).unwrap();
        assert_eq!(exact_sides(&r), (ratio(9, 4), ratio(9, 4)));
        assert!(r.sharp);
        assert!(eq3_check(&v, &rat(0)).is_err());
        // Denominator stays positive up to mu = n.
        for n in 1..8 {
            for mu in 0..=n {
                assert!(eq3_bound(n, mu, &ratio(1, 3)).unwrap().is_positive());
            }
        }
    }

    #[test]
    fn theorem4_examples() {
        let v = mono(&[1, -2, 1]);
        let r = theorem4_check(&v, Theorem4::Meixner1, &rat(2)).unwrap();
        assert_eq!(exact_sides(&r), (rat(13), rat(4)));
        assert!(r.holds() && r.strict && !r.sharp);
        let r = theorem4_check(&v, Theorem4::Meixner2, &rat(2)).unwrap();
        assert_eq!(exact_sides(&r), (rat(4), ratio(1, 2)));
        let r = theorem4_check(&v, Theorem4::Charlier3, &rat(1)).unwrap();
        assert_eq!(r.lhs, Side::Exact(rat(7)));
        let Side::Enclosed(iv) = &r.rhs else { panic!() };
        let approx = to_f64(&iv.midpoint());
        assert!((approx - 1.0 / (1.0 - 2.0 / std::f64::consts::E)).abs() < 1e-12);
        assert!(r.holds());
        assert!(r.bits_used.unwrap() <= 256);
        assert!(theorem4_check(&v, Theorem4::Meixner1, &rat(1)).is_err());
        assert!(theorem4_check(&v, Theorem4::Charlier3, &rat(0)).is_err());
    }

    #[test]
    fn oze_examples() {
        let r = oze_check(7, 0).unwrap();
        assert!(r.holds() && r.sharp);
        let r = oze_check(2, 2).unwrap();
        assert_eq!(r.lhs, Side::Exact(rat(6)));
        let Side::Enclosed(iv) = &r.rhs else { panic!() };
        assert!((to_f64(&iv.midpoint()) - 1.6f64.exp()).abs() < 1e-12);
        assert!(r.holds());
        let r = oze_check(300, 300).unwrap();
        assert!(r.holds());
        // Log-domain oracle: ln((2n)!/n!^2) vs 2n^2/(2n+1).
        let lhs_ln: f64 = (301..=600).map(|i| (i as f64).ln()).sum::<f64>()
            - (1..=300).map(|i| (i as f64).ln()).sum::<f64>();
        assert!(lhs_ln > 2.0 * 300.0 * 300.0 / 601.0);
        assert!(oze_check(2, 3).is_err());
    }

    #[test]
    fn schur_examples() {
        let inp = SchurInput { a0: rat(1), an: rat(1), n: 2, nu: 2 };
        let (s1, s2) = schur_bounds(&inp, &rat(6), &rat(4)).unwrap();
        let Side::Enclosed(iv) = &s1.rhs else { panic!() };
        assert!((to_f64(&iv.midpoint()) - 2.0 * 0.5f64.exp()).abs() < 1e-12);
        let Side::Enclosed(iv) = &s2.rhs else { panic!() };
        assert!((to_f64(&iv.midpoint()) - 0.5f64.exp()).abs() < 1e-12);
        assert!(s1.holds() && s2.holds());

        let inp = SchurInput { a0: rat(2), an: rat(8), n: 3, nu: 0 };
        let (s1, s2) = schur_bounds(&inp, &rat(100), &rat(100)).unwrap();
        assert_eq!(s1.rhs, Side::Exact(rat(32)));
        assert_eq!(s2.rhs, Side::Exact(rat(4)));

        let inp = SchurInput { a0: rat(1), an: rat(1), n: 4, nu: 4 };
        let (s1, _) = schur_bounds(&inp, &rat(70), &rat(16)).unwrap();
        let Side::Enclosed(iv) = &s1.rhs else { panic!() };
        assert!((to_f64(&iv.midpoint()) - 2.0 * 1.5f64.exp()).abs() < 1e-12);
        assert!(s1.holds());

        let bad = SchurInput { a0: rat(1), an: rat(-1), n: 4, nu: 1 };
        assert!(schur_bounds(&bad, &rat(1), &rat(1)).is_err());
    }

    #[test]
    fn max_mu_examples() {
        assert_eq!(max_mu_for_norm(6, &NormConstraint::LinfRatio, &rat(2)).unwrap(), 4);
        for n in 1..20 {
            assert_eq!(max_mu_for_norm(n, &NormConstraint::LinfRatio, &rat(1)).unwrap(), 0);
        }
        let m = max_mu_for_norm(40, &NormConstraint::LinfRatio, &rat(2)).unwrap();
        assert!((m as f64) <= 2.0 * (40.0 * 2f64.ln()).sqrt() + 2.0);
        assert!(max_mu_for_norm(4, &NormConstraint::L2Ratio, &ratio(1, 2)).is_err());
        // (1-x)^n meets the l2 bound with equality at mu = n.
        let b = eq1_bound(5, 5).unwrap();
        assert_eq!(max_mu_for_norm(5, &NormConstraint::L2Ratio, &b).unwrap(), 5);
    }

    #[test]
    fn derivation_routes_agree() {
        for n in 1..=25usize {
            let cheb = FamilySpec::chebyshev(n);
            let shifted = FamilySpec::chebyshev(n - 1).shifted(1);
            for mu in 0..=n {
                let tail = cheb.tail_sum(0, mu).unwrap();
                assert_eq!(eq1_bound(n, mu).unwrap(), tail.as_exact().unwrap().recip());
            }
            for mu in 1..=n {
                let r = (mu - 1) / 2;
                let head = shifted.kernel(0, 0, 0, r).unwrap().rational;
                assert_eq!(eq2_bound(n, mu).unwrap(), rat(1) + head, "n={n} mu={mu}");
            }
        }
    }

    #[test]
    fn bounds_monotone_in_mu() {
        for n in 1..=20usize {
            for mu in 1..=n {
                assert!(eq1_bound(n, mu).unwrap() >= eq1_bound(n, mu - 1).unwrap());
                assert!(eq2_bound(n, mu).unwrap() >= eq2_bound(n, mu - 1).unwrap());
                for q in [ratio(1, 3), rat(1), rat(3)] {
                    assert!(eq3_bound(n, mu, &q).unwrap() >= eq3_bound(n, mu - 1, &q).unwrap());
                }
            }
        }
    }

    #[test]
    fn sharpness_family() {
        for n in 1..=20 {
            let v = one_minus_x(n);
            let r = eq1_check(&v).unwrap();
            assert!(r.sharp, "n={n}");
            if n <= 12 {
                for q in [ratio(1, 3), ratio(1, 2), rat(1), rat(2), rat(3)] {
                    assert!(eq3_check(&v, &q).unwrap().sharp, "n={n} q={q}");
                }
            }
        }
    }
}

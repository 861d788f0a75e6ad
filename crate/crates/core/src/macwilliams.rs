//! Distance distributions, the MacWilliams transform, and the polynomial
//! `sum B_i (1-x)^i (1+x)^(n-i)` whose zero at 1 reflects the code distance.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial_int, multiplicity_at, rat, BigRational, DensePoly};

/// Distance distribution `B_0 = 1, B_1, ..., B_n` of a code of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceDistribution {
    b: Vec<BigRational>,
}

impl DistanceDistribution {
    pub fn new(b: Vec<BigRational>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::EmptyCode);
        }
        if b[0] != rat(1) {
            return Err(Error::InvalidParameters("B_0 must equal 1".into()));
        }
        if let Some(i) = b.iter().position(Signed::is_negative) {
            return Err(Error::InvalidParameters(format!("B_{i} is negative")));
        }
        Ok(DistanceDistribution { b })
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.b.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.b
    }

    /// `|C| = sum B_i`.
    pub fn size(&self) -> BigRational {
        self.b.iter().sum()
    }
}

/// Coefficient of `z^j` in `(1-z)^x (1+z)^(n-x)`, with no range checks.
pub(crate) fn krawtchouk_gf_value(j: usize, n: usize, x: usize) -> BigInt {
    let (j, n, x) = (j as i64, n as i64, x as i64);
    (0..=j).fold(BigInt::zero(), |acc, m| {
        let t = binomial_int(x, m) * binomial_int(n - x, j - m);
        if m % 2 == 0 {
            acc + t
        } else {
            acc - t
        }
    })
}

/// Binary Krawtchouk value `K_j^n(x)` from the generating function.
pub fn krawtchouk_gf(j: usize, n: usize, x: usize) -> Result<BigRational> {
    for v in [j, x] {
        if v > n {
            return Err(Error::IndexOutOfRange {
                index: v as i64,
                max: n as i64,
            });
        }
    }
    Ok(BigRational::from_integer(krawtchouk_gf_value(j, n, x)))
}

/// Dual distribution `B'_i = (1/|C|) sum_j B_j K_i^n(j)`.
pub fn macwilliams_transform(dist: &DistanceDistribution) -> Result<Vec<BigRational>> {
    let size = dist.size();
    if !size.is_positive() {
        return Err(Error::EmptyCode);
    }
    let n = dist.n();
    Ok((0..=n)
        .map(|i| {
            dist.b
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
                .fold(BigRational::zero(), |acc, (j, b)| {
                    acc + b * BigRational::from_integer(krawtchouk_gf_value(i, n, j))
                })
                / &size
        })
        .collect())
}

fn product_term(n: usize, i: usize) -> DensePoly {
    &DensePoly::from_i64(&[1, -1]).pow(i) * &DensePoly::from_i64(&[1, 1]).pow(n - i)
}

/// `sum_i B_i (1-x)^i (1+x)^(n-i)`, which equals `|C| sum_i B'_i x^i`.
pub fn code_polynomial(dist: &DistanceDistribution) -> DensePoly {
    let n = dist.n();
    dist.b
        .iter()
        .enumerate()
        .filter(|(_, b)| !b.is_zero())
        .fold(DensePoly::zero(), |acc, (i, b)| {
            &acc + &product_term(n, i).scale(b)
        })
}

/// For a code of distance at least `d`: factors
/// `sum_{i >= d} B_i (1-x)^i (1+x)^(n-i) = (1-x)^d Q(x)` and returns `Q`
/// with the exact multiplicity of the zero at 1 (at least `d`).
pub fn vanishing_factor(dist: &DistanceDistribution, d: usize) -> Result<(DensePoly, usize)> {
    let n = dist.n();
    if d == 0 || d > n {
        return Err(Error::ParameterDomain(format!("distance must lie in 1..={n}")));
    }
    if let Some(i) = (1..d).find(|&i| !dist.b[i].is_zero()) {
        return Err(Error::DistancePreconditionViolated { index: i });
    }
    let tail = (d..=n)
        .filter(|&i| !dist.b[i].is_zero())
        .fold(DensePoly::zero(), |acc, i| {
            &acc + &product_term(n, i).scale(&dist.b[i])
        });
    let mu = multiplicity_at(&tail, &rat(1))?;
    // (1-x)^d = (-1)^d (x-1)^d
    let mut q = tail;
    for _ in 0..d {
        let (quot, rem) = q.div_linear(&rat(1));
        debug_assert!(rem.is_zero());
        q = -&quot;
    }
    Ok((q, mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deltabases::{expand_explicit, DeltaBasisSpec, ExpansionVector};
    use crate::exact::ratio;
    use crate::families::FamilySpec;
    use proptest::prelude::*;

    fn dist(v: &[i64]) -> DistanceDistribution {
        DistanceDistribution::new(v.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn krawtchouk_gf_examples() {
        for n in 0..5 {
            for x in 0..=n {
                assert_eq!(krawtchouk_gf(0, n, x).unwrap(), rat(1));
            }
        }
        assert_eq!(krawtchouk_gf(1, 3, 3).unwrap(), rat(-3));
        assert_eq!(krawtchouk_gf(2, 3, 0).unwrap(), rat(3));
        assert!(krawtchouk_gf(4, 3, 0).is_err());
    }

    #[test]
    fn transform_examples() {
        let rep = dist(&[1, 0, 0, 1]);
        assert_eq!(macwilliams_transform(&rep).unwrap(), ints(&[1, 0, 3, 0]));
        let ham = dist(&[1, 0, 0, 7, 7, 0, 0, 1]);
        let simplex = macwilliams_transform(&ham).unwrap();
        assert_eq!(simplex, ints(&[1, 0, 0, 0, 7, 0, 0, 0]));
        let back = macwilliams_transform(&DistanceDistribution::new(simplex).unwrap()).unwrap();
        assert_eq!(back, ham.coeffs());
        assert_eq!(macwilliams_transform(&dist(&[1, 1])).unwrap(), ints(&[1, 0]));
    }

    #[test]
    fn code_polynomial_examples() {
        assert_eq!(code_polynomial(&dist(&[1, 0, 0, 1])), DensePoly::from_i64(&[2, 0, 6]));
        assert_eq!(code_polynomial(&dist(&[1, 1])), DensePoly::from_i64(&[2]));
        assert_eq!(
            code_polynomial(&dist(&[1, 0, 0, 7, 7, 0, 0, 1])),
            DensePoly::from_i64(&[16, 0, 0, 0, 112])
        );
    }

    #[test]
    fn vanishing_factor_examples() {
        let (q, mu) = vanishing_factor(&dist(&[1, 0, 0, 1]), 3).unwrap();
        assert_eq!(q, DensePoly::from_i64(&[1]));
        assert_eq!(mu, 3);

        let ham = dist(&[1, 0, 0, 7, 7, 0, 0, 1]);
        let (q, mu) = vanishing_factor(&ham, 3).unwrap();
        assert!(mu >= 3);
        let rebuilt = &DensePoly::from_i64(&[1, -1]).pow(3) * &q;
        let tail = (3..=7).fold(DensePoly::zero(), |acc, i| {
            &acc + &product_term(7, i).scale(&ham.coeffs()[i])
        });
        assert_eq!(rebuilt, tail);
        assert_eq!(mu, multiplicity_at(&tail, &rat(1)).unwrap());

        let (_, mu) = vanishing_factor(&ham, 1).unwrap();
        assert!(mu >= 1);
        assert_eq!(
            vanishing_factor(&ham, 5),
            Err(Error::DistancePreconditionViolated { index: 3 })
        );
    }

    #[test]
    fn validation() {
        assert_eq!(DistanceDistribution::new(vec![]), Err(Error::EmptyCode));
        assert!(DistanceDistribution::new(ints(&[2, 0])).is_err());
        assert!(DistanceDistribution::new(ints(&[1, -1])).is_err());
    }

    #[test]
    fn binary_krawtchouk_vs_orthonormal() {
        // g_j(x)^2 at q = 1 equals K_j^n(x)^2 / (C(n,j) 2^n).
        for n in 0..=8usize {
            let fam = FamilySpec::krawtchouk(n, rat(1)).unwrap();
            for j in 0..=n {
                for x in 0..=n {
                    let k = krawtchouk_gf(j, n, x).unwrap();
                    let want = &k * &k
                        / BigRational::from_integer(binomial_int(n as i64, j as i64) << n);
                    assert_eq!(fam.g_squared(j, x as i64).unwrap().rational, want);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn code_polynomial_identity(
            raw in prop::collection::vec((0i64..=5, 1i64..=3), 1..=10)
        ) {
            let mut b = vec![rat(1)];
            b.extend(raw.iter().map(|(p, q)| ratio(*p, *q)));
            let d = DistanceDistribution::new(b.clone()).unwrap();
            let dual = macwilliams_transform(&d).unwrap();
            let p = code_polynomial(&d);
            prop_assert_eq!(&p, &DensePoly::new(dual).scale(&d.size()));
            let v = ExpansionVector::new(DeltaBasisSpec::krawtchouk_product(d.n()), b).unwrap();
            prop_assert_eq!(p, expand_explicit(&v).unwrap());
        }
    }
}

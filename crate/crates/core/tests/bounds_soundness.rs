//! Every inequality must hold on random expansions with a forced zero.

use multizero::bounds::{
    condg2_check, eq1_check, eq2_check, eq3_check, ozl2_check, theorem4_check, BoundReport, Theorem4,
};
use multizero::deltabases::{moment_multiplicity, ExpansionVector};
use multizero::exact::interval::Verdict;
use multizero::exact::{rat, ratio, BigRational, DensePoly};
use multizero::families::FamilySpec;
use proptest::prelude::*;

fn forced(m: usize, r: &[i64]) -> Vec<BigRational> {
    let p = &DensePoly::from_i64(&[1, -1]).pow(m) * &DensePoly::from_i64(r);
    (0..=p.degree() as usize).map(|i| p.coeff(i)).collect()
}

fn assert_holds(r: &BoundReport) {
    assert_eq!(r.verdict, Verdict::Holds, "{} violated: {:?} vs {:?}", r.name, r.lhs, r.rhs);
}

fn r_strategy() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (1usize..=5, prop::collection::vec(-5i64..=5, 1..=6)).prop_map(|(m, mut r)| {
        if r[0] == 0 {
            r[0] = 1;
        }
        (m, r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn monomial_bounds_hold((m, r) in r_strategy(), qi in 0usize..4) {
        let a = forced(m, &r);
        let mu = moment_multiplicity(&a).unwrap();
        prop_assert!(mu >= m);
        let v = ExpansionVector::monomial(a).unwrap();
        assert_holds(&eq1_check(&v).unwrap());
        assert_holds(&eq2_check(&v).unwrap());
        let q = [ratio(1, 3), ratio(1, 2), rat(1), rat(4)][qi].clone();
        assert_holds(&eq3_check(&v, &q).unwrap());
        let mq = [ratio(5, 4), rat(2), rat(3), rat(7)][qi].clone();
        for which in [Theorem4::Meixner1, Theorem4::Meixner2] {
            let t = theorem4_check(&v, which, &mq).unwrap();
            assert_holds(&t);
            prop_assert!(!t.sharp);
        }
        assert_holds(&theorem4_check(&v, Theorem4::Charlier3, &q).unwrap());
    }

    #[test]
    fn ozl2_holds_for_finite_families((m, r) in r_strategy(), which in 0usize..4, s_pick in 0usize..100) {
        let a = forced(m, &r);
        let n = a.len() - 1;
        let fam = match which {
            0 => FamilySpec::chebyshev(n),
            1 => FamilySpec::krawtchouk(n, ratio(2, 3)).unwrap(),
            2 => FamilySpec::hahn(n, ratio(1, 2), rat(2)).unwrap(),
            _ => FamilySpec::krawtchouk(n, rat(3)).unwrap(),
        };
        let mu = moment_multiplicity(&a).unwrap();
        let v = ExpansionVector::monomial(a).unwrap();
        let s = (s_pick % (n + 1)) as i64;
        for stated in 1..=mu {
            match ozl2_check(&v, &fam, s, stated) {
                Ok(rep) => assert_holds(&rep),
                Err(multizero::error::Error::DegenerateTail) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn condg2_holds_off_support((m, r) in r_strategy(), which in 0usize..3) {
        let mut a = forced(m, &r);
        let n = a.len() - 1;
        // Support {1..n}, distinguished point 0 outside it.
        let fam = match which {
            0 => FamilySpec::chebyshev(n - 1).shifted(1),
            1 => FamilySpec::krawtchouk(n - 1, ratio(1, 2)).unwrap().shifted(1),
            _ => FamilySpec::meixner(rat(1), ratio(1, 3)).unwrap().shifted(1),
        };
        let mu = moment_multiplicity(&a).unwrap();
        a.truncate(n + 1);
        let v = ExpansionVector::monomial(a).unwrap();
        for stated in 1..=mu {
            assert_holds(&condg2_check(&v, &fam, 0, stated).unwrap());
        }
    }
}

#[test]
fn infinite_families_at_origin_are_strict() {
    for (m, r) in [(1usize, vec![1i64]), (2, vec![2, 1]), (3, vec![1, -1, 1]), (4, vec![-3])] {
        let v = ExpansionVector::monomial(forced(m, &r)).unwrap();
        let mu = moment_multiplicity(v.coeffs()).unwrap();
        for fam in [
            FamilySpec::meixner(rat(1), ratio(1, 2)).unwrap(),
            FamilySpec::meixner(ratio(5, 2), ratio(1, 3)).unwrap(),
            FamilySpec::charlier(ratio(3, 2)).unwrap(),
        ] {
            let rep = ozl2_check(&v, &fam, 0, mu).unwrap();
            assert!(rep.strict);
            assert_holds(&rep);
            assert!(!rep.sharp);
        }
    }
}

use proptest::prelude::*;

use qlacuna::bailey::{lovejoy_transform, verify_pair, BaileyPair as Pair};
use qlacuna::identities::{lhs, rhs, rhs_coeff, rhs_table};
use qlacuna::quadforms::{constant_profile, rep_count, RepTable};
use qlacuna::series::pochhammer;
use qlacuna::tauber::{cumulative_presence, eval_partial, hl_rhs, triviality_check};
use qlacuna::{AsymptoticSpec, Family, Monomial, QuadFormSpec, Series, SlowlyVarying};

fn series(max_len: usize) -> impl Strategy<Value = Series> {
    (
        -4i64..4,
        prop::collection::vec(-9i64..=9, 0..max_len),
        4i64..24,
    )
        .prop_map(|(shift, coeffs, window)| {
            Series::polynomial(&coeffs, window).unwrap().shift(shift)
        })
}

fn unit_series() -> impl Strategy<Value = Series> {
    (
        prop::bool::ANY,
        prop::collection::vec(-5i64..=5, 0..12),
        1i64..20,
        -3i64..3,
    )
        .prop_map(|(neg, mut tail, trunc, shift)| {
            tail.insert(0, if neg { -1 } else { 1 });
            Series::polynomial(&tail, trunc).unwrap().shift(shift)
        })
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (prop::bool::ANY, 0i64..6)
        .prop_map(|(neg, e)| Monomial::new(if neg { -1 } else { 1 }, e).unwrap())
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

fn definite_form() -> impl Strategy<Value = QuadFormSpec> {
    (1i64..4, -3i64..4, 1i64..5)
        .prop_filter("positive definite", |&(a, b, c)| b * b - 4 * a * c < 0)
        .prop_map(|(a, b, c)| QuadFormSpec::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_a_group(a in series(12), b in series(12), c in series(12)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        let z = a.sub(&a).unwrap();
        prop_assert!(z.is_zero());
        prop_assert_eq!(z.trunc(), a.trunc());
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in series(10), b in series(10), c in series(10)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(l.agrees_with(&r));
    }

    #[test]
    fn multiplication_distributes(a in series(10), b in series(10), c in series(10)) {
        let l = a.mul(&b.add(&c).unwrap()).unwrap();
        let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(l.agrees_with(&r));
    }

    #[test]
    fn product_window(a in series(10), b in series(10)) {
        let p = a.mul(&b).unwrap();
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(p.trunc(), (a.trunc() + b.min_exp()).min(b.trunc() + a.min_exp()));
        }
    }

    #[test]
    fn inverse_round_trip(u in unit_series()) {
        let inv = u.invert().unwrap();
        prop_assert_eq!(inv.trunc(), u.trunc() - 2 * u.min_exp());
        let p = u.mul(&inv).unwrap();
        let one = Series::one(p.trunc());
        prop_assert!(p.agrees_with(&one), "{} * {} = {}", u, inv, p);
    }

    #[test]
    fn binomial_fast_paths_match_general_product(s in series(12), x in monomial()) {
        let dense = Series::polynomial(&[1], 200).unwrap()
            .sub(&Series::monomial(x, 200).unwrap()).unwrap();
        let fast = s.mul_one_minus(x).unwrap();
        let slow = s.mul(&dense).unwrap();
        prop_assert!(fast.agrees_with(&slow), "{} vs {}", fast, slow);
        if x.exp() != 0 {
            let back = fast.div_one_minus(x).unwrap();
            prop_assert!(back.agrees_with(&s));
        }
    }

    #[test]
    fn substitution_is_a_ring_map(a in series(10), b in series(10), k in 1i64..5) {
        let l = a.mul(&b).unwrap().substitute_power(k).unwrap();
        let r = a.substitute_power(k).unwrap().mul(&b.substitute_power(k).unwrap()).unwrap();
        prop_assert!(l.agrees_with(&r));
        let l = a.add(&b).unwrap().substitute_power(k).unwrap();
        let r = a.substitute_power(k).unwrap().add(&b.substitute_power(k).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn pochhammer_recurrence(x in monomial().prop_filter("positive", |m| m.exp() >= 1), step in 1i64..4, n in 0u64..8, trunc in 1i64..40) {
        let next = pochhammer::<i64>(x, step, n + 1, trunc).unwrap();
        let factor = x.times_q(step * n as i64).unwrap();
        let built = pochhammer::<i64>(x, step, n, trunc).unwrap().mul_one_minus(factor).unwrap();
        prop_assert!(next.agrees_with(&built));
    }

    #[test]
    fn rhs_point_coefficients(f in family(), n in 0u64..400) {
        let s = rhs::<i64>(f, n as i64 + 1).unwrap();
        prop_assert_eq!(rhs_coeff(f, n), s.coeff(n as i64).unwrap());
    }

    #[test]
    fn rep_count_matches_sweep(form in definite_form(), n in 1u64..600) {
        let table = RepTable::sweep(&form, n).unwrap();
        prop_assert_eq!(rep_count(&form, n).unwrap(), table.r(n));
    }

    #[test]
    fn partial_sum_invariants(form in definite_form(), mut xs in prop::collection::btree_set(2u64..3000, 1..6)) {
        let xs: Vec<u64> = std::mem::take(&mut xs).into_iter().collect();
        let profile = constant_profile(&form, &xs).unwrap();
        let mut last = (0, 0);
        for s in &profile {
            prop_assert!(s.r2 <= s.x && s.r1 >= s.r2);
            prop_assert!(s.r1 >= last.0 && s.r2 >= last.1);
            prop_assert!((s.c1_hat - s.r1 as f64 / s.x as f64).abs() < 1e-12);
            last = (s.r1, s.r2);
        }
    }

    #[test]
    fn hl_rhs_is_increasing(a in 0.5f64..0.999, b in 0.5f64..0.999, log in prop::bool::ANY, delta in 1u32..4) {
        let h = if log { SlowlyVarying::InvSqrtLog } else { SlowlyVarying::ConstantOne };
        let spec = AsymptoticSpec::new(delta, h, 1.0).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-9);
        prop_assert!(hl_rhs(&spec, lo).unwrap() < hl_rhs(&spec, hi).unwrap());
    }

    #[test]
    fn triviality_catches_any_single_corruption(present in prop::collection::vec(prop::bool::ANY, 2..300), at in 1usize..300) {
        let mut present = present;
        present[0] = false;
        let mut r2 = cumulative_presence(&present);
        let n = present.len() as u64 - 1;
        prop_assert!(triviality_check(&present, &r2, n).passed());
        let at = at.min(present.len() - 1);
        r2[at] += 1;
        prop_assert_eq!(triviality_check(&present, &r2, n).first_failure, Some(at as u64));
    }
}

#[test]
fn lovejoy_preserves_unit_pairs() {
    let cases = [
        (Monomial::ONE, Monomial::MINUS_ONE),
        (Monomial::q_pow(1), Monomial::MINUS_ONE),
        (Monomial::q_pow(1), Monomial::neg_q_pow(1)),
        (Monomial::q_pow(2), Monomial::neg_q_pow(1)),
        (Monomial::q_pow(2), Monomial::q_pow(1)),
    ];
    for (a, b) in cases {
        let p = Pair::<i64>::unit(a).unwrap();
        let t = lovejoy_transform(&p, b).unwrap();
        assert!(
            verify_pair(&t, 6, 30).unwrap().all_passed(),
            "a = {a}, b = {b}"
        );
    }
}

#[test]
fn identities_agree_on_a_long_window() {
    for f in Family::ALL {
        let l = lhs::<i64>(f, 301).unwrap();
        let r = rhs::<i64>(f, 301).unwrap();
        assert_eq!(l.first_difference(&r), None, "{f}");
        let table = rhs_table(f, 300);
        for (n, &c) in table.iter().enumerate() {
            assert_eq!(c, r.coeff(n as i64).unwrap());
        }
    }
}

#[test]
fn tail_rule_adequacy() {
    use qlacuna::tauber::eval_series;
    use qlacuna::TailRule;
    let rule = TailRule::default();
    for z in [0.5f64, 0.9, 0.99, 0.999] {
        let sources: [&dyn Fn(u64) -> i64; 2] = [&|_| 1, &|n| n as i64];
        for a in sources {
            let short = eval_series(a, z, &rule).unwrap();
            let doubled = eval_partial(a, z, 2 * rule.terms(z).unwrap());
            assert!(((short - doubled) / doubled).abs() < 1e-6, "z = {z}");
        }
    }
}

use frieze_core::poly::{parse_poly, Monomial};
use frieze_core::{LaurentPoly, Var, VarNames};
use num_bigint::BigInt;
use proptest::prelude::*;

fn var() -> impl Strategy<Value = Var> {
    prop_oneof![(1usize..=3).prop_map(Var::x), (1usize..=3).prop_map(Var::q)]
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((var(), -3i32..=3), 0..4).prop_map(Monomial::from_exponents)
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((monomial(), -5i64..=5), 0..5)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn no_zero_coefficients_survive(a in poly(), b in poly()) {
        let s = &(&a * &b) - &(&b * &a);
        prop_assert!(s.is_zero());
        prop_assert_eq!(s.num_terms(), 0);
        prop_assert!((&a + &b).terms().all(|(_, c)| c != &BigInt::from(0)));
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let names = VarNames::default();
        let text = a.to_string_with(&names);
        prop_assert_eq!(parse_poly(&text, &names).unwrap(), a);
    }

    #[test]
    fn units_are_signed_monomials(m in monomial(), negative in any::<bool>()) {
        let u = LaurentPoly::term(m, BigInt::from(if negative { -1 } else { 1 }));
        let inv = u.is_unit().expect("signed monomial is a unit");
        prop_assert!((&u * &inv).is_one());
    }

    #[test]
    fn non_units(a in poly()) {
        if let Some(inv) = a.is_unit() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.num_terms() != 1 || a.as_term().unwrap().0.magnitude() != &1u32.into());
        }
    }
}

#[test]
fn coefficients_grow_without_overflow() {
    let p = &LaurentPoly::one() + &LaurentPoly::x(1);
    let big = p.pow(80);
    let middle = big.coefficient(&Monomial::var_pow(Var::x(1), 40));
    assert_eq!(middle.to_string(), "107507208733336176461620");
}

#[test]
fn custom_names_parse() {
    let names = VarNames::with_pieces(&["a", "b"]);
    let p = parse_poly("a^2 b - b^-1", &names).unwrap();
    assert_eq!(p, &(&LaurentPoly::x(1).pow(2) * &LaurentPoly::x(2)) - &LaurentPoly::x(2).powi(-1).unwrap());
    assert!(parse_poly("z", &names).is_err());
}

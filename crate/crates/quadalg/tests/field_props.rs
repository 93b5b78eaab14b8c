use proptest::prelude::*;
use quadalg::field::{poly, FieldCtx, FieldElem, MultiPoly, Rational, SquareTest};

fn small_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -6i64..=6), 0..5).prop_map(move |ts| {
        MultiPoly::from_terms(ts.into_iter().map(|(es, c)| {
            let m = quadalg::field::Monomial::from_pairs(es.into_iter().enumerate().collect());
            (m, Rational::from_int(c))
        }))
    })
}

fn rat_elem() -> impl Strategy<Value = FieldElem> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| FieldElem::ratio(n, d))
}

fn func_elem() -> impl Strategy<Value = FieldElem> {
    (small_poly(2), small_poly(2)).prop_filter_map("nonzero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            Some(FieldElem::from_poly(n).div(&FieldElem::from_poly(d)).unwrap())
        }
    })
}

fn check_axioms(a: &FieldElem, b: &FieldElem, c: &FieldElem) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a + &(-a), FieldElem::zero());
    if !a.is_zero() {
        prop_assert_eq!(a * &a.inv().unwrap(), FieldElem::one());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_axioms(a in rat_elem(), b in rat_elem(), c in rat_elem()) {
        check_axioms(&a, &b, &c)?;
    }

    #[test]
    fn function_field_axioms(a in func_elem(), b in func_elem(), c in func_elem()) {
        check_axioms(&a, &b, &c)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn squares_are_detected(x in func_elem()) {
        prop_assume!(!x.is_zero());
        match (&x * &x).is_square().unwrap() {
            SquareTest::Yes(r) => prop_assert!(r == x || r == -&x),
            SquareTest::No => prop_assert!(false, "square not recognised"),
        }
    }

    #[test]
    fn rational_squares_are_detected(x in rat_elem()) {
        prop_assume!(!x.is_zero());
        match (&x * &x).is_square().unwrap() {
            SquareTest::Yes(r) => prop_assert!(r == x || r == -&x),
            SquareTest::No => prop_assert!(false),
        }
    }

    #[test]
    fn gcd_is_multiplicative_in_common_factor(a in small_poly(3), b in small_poly(3), c in small_poly(3)) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let g = poly::gcd(&a, &b);
        let gc = poly::gcd(&a.mul(&c), &b.mul(&c));
        prop_assert_eq!(gc, g.mul(&c).normalized());
        if !g.is_zero() {
            prop_assert!(a.div_exact(&g).is_some());
            prop_assert!(b.div_exact(&g).is_some());
        }
    }

    #[test]
    fn formatting_round_trips(x in func_elem()) {
        let ctx = FieldCtx::function_field(["t0", "t1"]);
        let s = ctx.format(&x);
        prop_assert_eq!(ctx.parse(&s).unwrap(), x);
    }
}

#[test]
fn structural_equality_matches_semantic_equality() {
    let ctx = FieldCtx::function_field(["t"]);
    let a = ctx.parse("(t^2-1)/(t-1)").unwrap();
    let b = ctx.parse("t+1").unwrap();
    assert_eq!(a, b);
    let c = ctx.parse("1/(2*t) + 1/(2*t)").unwrap();
    assert_eq!(c, ctx.parse("1/t").unwrap());
}

fn edge_int() -> impl Strategy<Value = i64> {
    prop_oneof![any::<i64>(), -5i64..=5, Just(i64::MIN), Just(i64::MAX), (i64::MAX - 3)..=i64::MAX]
}

fn edge_rational() -> impl Strategy<Value = Rational> {
    (edge_int(), edge_int().prop_filter("nonzero", |d| *d != 0)).prop_map(|(n, d)| Rational::new(n, d))
}

fn as_big(r: &Rational) -> num_rational::BigRational {
    num_rational::BigRational::new(r.numer(), r.denom())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 2000, ..ProptestConfig::default() })]
    #[test]
    fn rational_arithmetic_matches_bigrational(a in edge_rational(), b in edge_rational()) {
        let (x, y) = (as_big(&a), as_big(&b));
        prop_assert_eq!(as_big(&(&a + &b)), &x + &y);
        prop_assert_eq!(as_big(&(&a - &b)), &x - &y);
        prop_assert_eq!(as_big(&(&a * &b)), &x * &y);
        prop_assert_eq!(as_big(&(-&a)), -&x);
        if !b.is_zero() {
            prop_assert_eq!(as_big(&(&a / &b)), &x / &y);
        }
        prop_assert_eq!(a.cmp(&b), x.cmp(&y));
        prop_assert_eq!(Rational::parse(&a.to_string()).unwrap(), a.clone());
        let round = &(&a + &b) - &b;
        prop_assert_eq!(round, a);
    }
}

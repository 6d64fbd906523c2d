use braidkit::scalars::{conjugate, parse, specialize, SpecPoint, SpecValue};
use braidkit::{Error, QScalar};
use num_rational::BigRational;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = QScalar> {
    (-3i32..=3, prop::collection::vec(-4i64..=4, 1..4)).prop_map(|(low, c)| QScalar::laurent(low, &c))
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), laurent()).prop_map(|(a, b)| if b.is_zero() { a } else { &a * &b.inv().unwrap() })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_text_round_trips(a in scalar()) {
        let text = a.to_string();
        prop_assert_eq!(parse(&text).unwrap(), a.clone());
        prop_assert_eq!(text.parse::<QScalar>().unwrap().to_string(), text);
    }

    #[test]
    fn specialization_is_a_ring_map(a in scalar(), b in scalar()) {
        let q0 = rat(3, 2);
        if let (Ok(x), Ok(y)) = (a.specialize(&q0), b.specialize(&q0)) {
            prop_assert_eq!((&a * &b).specialize(&q0).unwrap(), &x * &y);
            prop_assert_eq!((&a + &b).specialize(&q0).unwrap(), x + y);
        }
    }

    #[test]
    fn powers(a in laurent(), k in -3i32..=3) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a.pow(k).unwrap() * &a.pow(-k).unwrap(), QScalar::one());
    }
}

#[test]
fn parse_forms() {
    assert_eq!(parse("q^2 - 1/q").unwrap(), QScalar::laurent(-1, &[-1, 0, 0, 1]));
    assert_eq!(parse("(q^2-1)/(q-1)").unwrap(), parse("q + 1").unwrap());
    assert_eq!(parse("3/4").unwrap().specialize(&rat(5, 1)).unwrap(), rat(3, 4));
    assert!(matches!(parse("q^"), Err(Error::Parse { .. })));
    assert!(matches!(parse("1/(q-q)"), Err(Error::DivisionByZero)));
}

#[test]
fn poles_are_reported() {
    let s = parse("1/(q-1)").unwrap();
    assert!(matches!(s.specialize(&rat(1, 1)), Err(Error::PoleAtSpecialization(_))));
    assert_eq!(
        specialize(&parse("q+1").unwrap(), &SpecPoint::Exact(rat(1, 2))).unwrap(),
        SpecValue::Exact(rat(3, 2))
    );
    assert!(matches!(specialize(&QScalar::q(), &SpecPoint::Float(2.0)).unwrap(), SpecValue::Float(x) if x == 2.0));
}

#[test]
fn conjugation_fixes_real_q() {
    let s = parse("q^-3 + 2*q").unwrap();
    assert_eq!(conjugate(&s), s);
}

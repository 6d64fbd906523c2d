//! Exact arithmetic in Q(q).

mod parse;
mod poly;
mod qscalar;

pub use parse::parse;
pub use poly::Poly;
pub use qscalar::{rational_to_f64, QScalar};

use num_rational::BigRational;

use crate::error::Result;

/// Evaluation point for [`specialize`].
#[derive(Clone, Debug, PartialEq)]
pub enum SpecPoint {
    Exact(BigRational),
    Float(f64),
}

/// Evaluated value, exact or floating according to the evaluation point.
#[derive(Clone, Debug, PartialEq)]
pub enum SpecValue {
    Exact(BigRational),
    Float(f64),
}

pub fn specialize(s: &QScalar, q0: &SpecPoint) -> Result<SpecValue> {
    match q0 {
        SpecPoint::Exact(r) => s.specialize(r).map(SpecValue::Exact),
        SpecPoint::Float(x) => s.specialize_f64(*x).map(SpecValue::Float),
    }
}

pub fn conjugate(s: &QScalar) -> QScalar {
    s.conjugate()
}

pub fn normalize(num: (i32, Poly), den: (i32, Poly)) -> Result<QScalar> {
    QScalar::normalize(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn s(t: &str) -> QScalar {
        t.parse().unwrap()
    }

    #[test]
    fn cancels_common_factor() {
        assert_eq!(s("(q^2-1)/(q-1)"), s("q+1"));
        assert_eq!(s("((q-q^-1)*q)/(q^2-1)"), QScalar::one());
        assert_eq!(s("0/(q^3)"), QScalar::zero());
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(s("q").inv().err(), None);
        assert_eq!(QScalar::zero().inv().err(), Some(Error::DivisionByZero));
        assert!(parse("1/(q-q)").is_err());
    }

    #[test]
    fn printing_round_trips() {
        for t in ["q-q^-1", "(q^2-1)/(q^2+1)", "1/2", "-3*q^-2/(2*q+1)", "q^4+2*q^2+1", "0", "-1"] {
            let v = s(t);
            assert_eq!(s(&v.to_string()), v, "{t} -> {v}");
        }
        assert_eq!(s("q-1/q").to_string(), "q-q^-1");
        assert_eq!(s("(q^2-1)/(q+1)").to_string(), "q-1");
    }

    #[test]
    fn specialization() {
        let r = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(s("q+1").specialize(&r(2)).unwrap(), r(3));
        assert_eq!(s("q-q^-1").specialize(&r(1)).unwrap(), r(0));
        assert!(matches!(s("1/(q-1)").specialize(&r(1)), Err(Error::PoleAtSpecialization(_))));
        assert!(matches!(s("q^-1").specialize(&r(0)), Err(Error::PoleAtSpecialization(_))));
    }

    #[test]
    fn monomial_roots() {
        assert_eq!(s("q^-8").sqrt_monomial(), Some(s("q^-4")));
        assert_eq!(s("4*q^2/9").sqrt_monomial(), Some(s("2*q/3")));
        assert_eq!(s("q^-3").sqrt_monomial(), None);
        assert_eq!(s("q+1").sqrt_monomial(), None);
    }
}

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Exact element of Q(q).
///
/// Stored as `q^val * num(q) / den(q)` with `num`, `den` integer polynomials whose
/// constant terms are nonzero, coprime, with jointly coprime contents and a
/// positive leading coefficient in `den`. A denominator equal to 1 is `None`.
/// These rules make the representation unique, so derived equality and hashing
/// are equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QScalar {
    val: i32,
    num: Poly,
    den: Option<Poly>,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar::default()
    }

    pub fn one() -> Self {
        QScalar::from_int(1)
    }

    /// The deformation parameter.
    pub fn q() -> Self {
        QScalar::q_pow(1)
    }

    pub fn q_pow(k: i32) -> Self {
        QScalar { val: k, num: Poly::one(), den: None }
    }

    pub fn from_int(v: i64) -> Self {
        QScalar::from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        if v.is_zero() {
            return QScalar::zero();
        }
        QScalar { val: 0, num: Poly::constant(v), den: None }
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        QScalar::from_parts(0, Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
            .expect("rational with nonzero denominator")
    }

    /// `c * q^k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        QScalar::from_int(c).shift(k)
    }

    /// Laurent polynomial `sum_k coeffs[k] q^(low + k)`.
    pub fn laurent(low: i32, coeffs: &[i64]) -> Self {
        let p = Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect());
        QScalar::from_parts(low, p, Poly::one()).expect("unit denominator")
    }

    /// Builds `q^val * num / den` and brings it to canonical form.
    pub fn from_parts(val: i32, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(normalize(val, num, den))
    }

    /// Quotient of two Laurent polynomials given as `(lowest exponent, coefficients)`.
    pub fn normalize(num: (i32, Poly), den: (i32, Poly)) -> Result<Self> {
        QScalar::from_parts(num.0 - den.0, num.1, den.1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.val == 0 && self.den.is_none() && self.num.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_none()
    }

    /// Lowest exponent of the numerator after the `q^val` factor.
    pub fn valuation(&self) -> i32 {
        self.val
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> Poly {
        self.den.clone().unwrap_or_else(Poly::one)
    }

    /// Multiplies by `q^k`.
    pub fn shift(mut self, k: i32) -> Self {
        if !self.is_zero() {
            self.val += k;
        }
        self
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let den = self.den.clone().unwrap_or_else(Poly::one);
        Ok(normalize(-self.val, den, self.num.clone()))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = QScalar::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Complex conjugation. Coefficients are rational and q is real, so this is the identity.
    pub fn conjugate(&self) -> Self {
        self.clone()
    }

    /// `Some((c, k))` when the value is `c * q^k`.
    pub fn as_monomial(&self) -> Option<(BigRational, i32)> {
        if self.is_zero() {
            return Some((BigRational::zero(), 0));
        }
        if self.num.degree() != Some(0) {
            return None;
        }
        let d = match &self.den {
            None => BigInt::one(),
            Some(p) if p.degree() == Some(0) => p.coeffs()[0].clone(),
            Some(_) => return None,
        };
        Some((BigRational::new(self.num.coeffs()[0].clone(), d), self.val))
    }

    /// Monomial square root, chosen positive at q = 1.
    pub fn sqrt_monomial(&self) -> Option<Self> {
        let (c, k) = self.as_monomial()?;
        if c.is_negative() || k % 2 != 0 {
            return None;
        }
        let n = c.numer().sqrt();
        let d = c.denom().sqrt();
        if &(&n * &n) != c.numer() || &(&d * &d) != c.denom() {
            return None;
        }
        Some(QScalar::from_ratio(&BigRational::new(n, d)).shift(k / 2))
    }

    pub fn specialize(&self, q0: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let pole = || Error::PoleAtSpecialization(q0.to_string());
        if q0.is_zero() && self.val < 0 {
            return Err(pole());
        }
        let d = match &self.den {
            None => BigRational::one(),
            Some(p) => p.eval_rational(q0),
        };
        if d.is_zero() {
            return Err(pole());
        }
        let n = self.num.eval_rational(q0);
        let qv = if q0.is_zero() {
            if self.val == 0 { BigRational::one() } else { BigRational::zero() }
        } else {
            num_traits::pow::Pow::pow(q0, self.val)
        };
        Ok(qv * n / d)
    }

    pub fn specialize_f64(&self, q0: f64) -> Result<f64> {
        if self.is_zero() {
            return Ok(0.0);
        }
        let pole = || Error::PoleAtSpecialization(q0.to_string());
        if q0 == 0.0 && self.val < 0 {
            return Err(pole());
        }
        let d = self.den.as_ref().map_or(1.0, |p| p.eval_f64(q0));
        if d == 0.0 {
            return Err(pole());
        }
        Ok(q0.powi(self.val) * self.num.eval_f64(q0) / d)
    }

    /// Rough size used to pick a representative residual entry.
    pub fn magnitude(&self) -> f64 {
        self.specialize_f64(1.5).map(f64::abs).unwrap_or(f64::INFINITY)
    }

    /// Terms `(coefficient, exponent)` of the numerator including the `q^val` factor, highest first.
    fn num_terms(&self) -> Vec<(&BigInt, i32)> {
        let mut t: Vec<_> = self
            .num
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c, k as i32 + self.val))
            .collect();
        t.reverse();
        t
    }
}

fn normalize(mut val: i32, num: Poly, den: Poly) -> QScalar {
    if num.is_zero() {
        return QScalar::zero();
    }
    let v = num.valuation();
    let mut num = num.shift_down(v);
    val += v as i32;
    let v = den.valuation();
    let mut den = den.shift_down(v);
    val -= v as i32;
    if den.degree() > Some(0) && num.degree() > Some(0) {
        let g = Poly::gcd(&num, &den);
        if g.degree() > Some(0) {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
    }
    let mut c = num.content().gcd(&den.content());
    if den.lc().is_negative() {
        c = -c;
    }
    if !c.is_one() {
        num = num.div_int_exact(&c);
        den = den.div_int_exact(&c);
    }
    let den = if den.is_one() { None } else { Some(den) };
    QScalar { val, num, den }
}

fn add_impl(a: &QScalar, b: &QScalar, negate_b: bool) -> QScalar {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let lo = a.val.min(b.val);
    let an = a.num.clone().shift_up((a.val - lo) as usize);
    let mut bn = b.num.clone().shift_up((b.val - lo) as usize);
    if negate_b {
        bn = bn.neg();
    }
    match (&a.den, &b.den) {
        (None, None) => {
            let s = an.add(&bn);
            if s.is_zero() {
                return QScalar::zero();
            }
            let v = s.valuation();
            QScalar { val: lo + v as i32, num: s.shift_down(v), den: None }
        }
        (Some(da), Some(db)) if da == db => normalize(lo, an.add(&bn), da.clone()),
        _ => {
            let da = a.den.clone().unwrap_or_else(Poly::one);
            let db = b.den.clone().unwrap_or_else(Poly::one);
            normalize(lo, an.mul(&db).add(&bn.mul(&da)), da.mul(&db))
        }
    }
}

fn mul_impl(a: &QScalar, b: &QScalar) -> QScalar {
    if a.is_zero() || b.is_zero() {
        return QScalar::zero();
    }
    if a.den.is_none() && b.den.is_none() {
        return QScalar { val: a.val + b.val, num: a.num.mul(&b.num), den: None };
    }
    let da = a.den.clone().unwrap_or_else(Poly::one);
    let db = b.den.clone().unwrap_or_else(Poly::one);
    normalize(a.val + b.val, a.num.mul(&b.num), da.mul(&db))
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { val: self.val, num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, o: &QScalar) -> QScalar {
                $body(self, o)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, o: QScalar) -> QScalar {
                $body(&self, &o)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, o: &QScalar) -> QScalar {
                $body(&self, o)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, o: QScalar) -> QScalar {
                $body(self, &o)
            }
        }
    };
}

binop!(Add, add, |a, b| add_impl(a, b, false));
binop!(Sub, sub, |a, b| add_impl(a, b, true));
binop!(Mul, mul, mul_impl);
binop!(Div, div, |a: &QScalar, b: &QScalar| mul_impl(a, &b.inv().expect("division by zero in Q(q)")));

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, o: &QScalar) {
        *self = add_impl(self, o, false);
    }
}

impl AddAssign<QScalar> for QScalar {
    fn add_assign(&mut self, o: QScalar) {
        *self = add_impl(self, &o, false);
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, o: &QScalar) {
        *self = add_impl(self, o, true);
    }
}

impl SubAssign<QScalar> for QScalar {
    fn sub_assign(&mut self, o: QScalar) {
        *self = add_impl(self, &o, true);
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, o: &QScalar) {
        *self = mul_impl(self, o);
    }
}

impl From<i64> for QScalar {
    fn from(v: i64) -> Self {
        QScalar::from_int(v)
    }
}

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> QScalar {
        iter.fold(QScalar::zero(), |a, b| a + b)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(&BigInt, i32)]) -> fmt::Result {
    for (idx, (c, e)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if neg {
            f.write_str("-")?;
        } else if idx > 0 {
            f.write_str("+")?;
        }
        match *e {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if *e == 1 {
                    f.write_str("q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms = self.num_terms();
        let Some(den) = &self.den else {
            return write_terms(f, &terms);
        };
        if terms.len() > 1 {
            f.write_str("(")?;
            write_terms(f, &terms)?;
            f.write_str(")")?;
        } else {
            write_terms(f, &terms)?;
        }
        f.write_str("/")?;
        let dterms: Vec<(&BigInt, i32)> = den
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c, k as i32))
            .collect();
        if dterms.len() > 1 {
            f.write_str("(")?;
            write_terms(f, &dterms)?;
            f.write_str(")")
        } else {
            write_terms(f, &dterms)
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

impl std::str::FromStr for QScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse(s)
    }
}

impl serde::Serialize for QScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for QScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Approximate value of a rational at f64 precision.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

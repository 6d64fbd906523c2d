use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial with integer coefficients; `coeffs()[k]` multiplies `q^k`.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(v: BigInt) -> Self {
        Poly::from_coeffs(vec![v])
    }

    pub fn one() -> Self {
        Poly { c: vec![BigInt::one()] }
    }

    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        let mut p = Poly { c };
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn lc(&self) -> &BigInt {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    /// Index of the lowest nonzero coefficient (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(mut self, k: usize) -> Self {
        if k > 0 {
            self.c.drain(..k.min(self.c.len()));
        }
        self
    }

    pub fn shift_up(mut self, k: usize) -> Self {
        if k > 0 && !self.is_zero() {
            self.c.splice(0..0, std::iter::repeat_n(BigInt::zero(), k));
        }
        self
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (x, y) in c.iter_mut().zip(&short.c) {
            *x += y;
        }
        Poly::from_coeffs(c)
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut c = self.c.clone();
        if c.len() < o.c.len() {
            c.resize(o.c.len(), BigInt::zero());
        }
        for (x, y) in c.iter_mut().zip(&o.c) {
            *x -= y;
        }
        Poly::from_coeffs(c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, s: &BigInt) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|x| x * s).collect() }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, s: &BigInt) -> Poly {
        Poly { c: self.c.iter().map(|x| x / s).collect() }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if g.is_one() {
            self.clone()
        } else {
            self.div_int_exact(&g)
        }
    }

    /// Pseudo-remainder of `self` by `d`.
    pub fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo remainder by zero");
        let lc = d.lc().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let t = r.lc().clone();
            let shift = dr - dd;
            let mut c = r.c.iter().map(|x| x * &lc).collect::<Vec<_>>();
            for (k, y) in d.c.iter().enumerate() {
                c[k + shift] -= &t * y;
            }
            r = Poly::from_coeffs(c);
        }
        r
    }

    /// Quotient of an exact division over the integers, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let lc = d.lc();
        let mut r = self.c.clone();
        let n = r.len();
        if n <= dd {
            return None;
        }
        let mut quo = vec![BigInt::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (t, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, y) in d.c.iter().enumerate() {
                r[k + j] -= &t * y;
            }
            quo[k] = t;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(quo))
    }

    /// Primitive gcd with positive leading coefficient (the primitive PRS).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.primitive();
        }
        if b.is_zero() {
            return a.primitive();
        }
        let (mut x, mut y) = if a.degree() >= b.degree() {
            (a.primitive(), b.primitive())
        } else {
            (b.primitive(), a.primitive())
        };
        while !y.is_zero() {
            if y.degree() == Some(0) {
                return Poly::one();
            }
            let r = x.pseudo_rem(&y).primitive();
            x = y;
            y = r;
        }
        x
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for c in self.c.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }
}

//! Matrices with coefficients in `Q(q)[mu, mu^-1]`, where `mu = lambda^(1/2)`.
//!
//! `lambda` itself is often not in `Q(q)` (it can be `q^(-3/2)`, or unknown), so
//! operator blocks keep their `mu`-grading and are only folded into `Q(q)`
//! when testing for zero.

use std::collections::BTreeMap;

use crate::linalg::{max_entry, Mat};
use crate::scalars::QScalar;

/// What is known about `lambda`: `lambda^2 = q^e`, or nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LambdaField {
    pub lambda_sq_exp: Option<i32>,
}

impl LambdaField {
    pub fn formal() -> Self {
        LambdaField { lambda_sq_exp: None }
    }

    pub fn with_lambda_sq(e: i32) -> Self {
        LambdaField { lambda_sq_exp: Some(e) }
    }

    /// Smallest `p` with `mu^p` in `Q(q)`, together with that monomial; `None` if `lambda` is formal.
    pub fn period(&self) -> Option<(i32, QScalar)> {
        let e = self.lambda_sq_exp?;
        let p = if e % 4 == 0 {
            1
        } else if e % 2 == 0 {
            2
        } else {
            4
        };
        Some((p, QScalar::q_pow(e * p / 4)))
    }

    /// `mu^k` as an element of `Q(q)`, if it is one.
    pub fn mu_pow(&self, k: i32) -> Option<QScalar> {
        let e = self.lambda_sq_exp?;
        (e * k % 4 == 0).then(|| QScalar::q_pow(e * k / 4))
    }

    pub fn lambda(&self) -> Option<QScalar> {
        self.mu_pow(2)
    }

    pub fn lambda_sq(&self) -> Option<QScalar> {
        self.mu_pow(4)
    }
}

/// `sum_k mu^k parts[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WMat {
    rows: usize,
    cols: usize,
    parts: BTreeMap<i32, Mat>,
}

impl WMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        WMat { rows, cols, parts: BTreeMap::new() }
    }

    pub fn plain(m: Mat) -> Self {
        WMat::weighted(m, 0)
    }

    pub fn weighted(m: Mat, k: i32) -> Self {
        let (rows, cols) = m.shape();
        let mut parts = BTreeMap::new();
        if !m.is_zero() {
            parts.insert(k, m);
        }
        WMat { rows, cols, parts }
    }

    pub fn identity(n: usize) -> Self {
        WMat::plain(Mat::identity(n))
    }

    /// `mu^k` times the identity.
    pub fn mu_identity(n: usize, k: i32) -> Self {
        WMat::weighted(Mat::identity(n), k)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn parts(&self) -> &BTreeMap<i32, Mat> {
        &self.parts
    }

    pub fn part(&self, k: i32) -> Mat {
        self.parts.get(&k).cloned().unwrap_or_else(|| Mat::zeros(self.rows, self.cols))
    }

    fn insert_add(&mut self, k: i32, m: Mat) {
        match self.parts.get_mut(&k) {
            Some(a) => {
                a.add_assign(&m);
                if a.is_zero() {
                    self.parts.remove(&k);
                }
            }
            None => {
                if !m.is_zero() {
                    self.parts.insert(k, m);
                }
            }
        }
    }

    pub fn add(&self, o: &WMat) -> WMat {
        assert_eq!(self.shape(), o.shape(), "weighted matrix shape mismatch");
        let mut out = self.clone();
        for (k, m) in &o.parts {
            out.insert_add(*k, m.clone());
        }
        out
    }

    pub fn sub(&self, o: &WMat) -> WMat {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> WMat {
        self.scale(&-QScalar::one())
    }

    pub fn scale(&self, s: &QScalar) -> WMat {
        let mut out = WMat::zeros(self.rows, self.cols);
        for (k, m) in &self.parts {
            out.insert_add(*k, m.scale(s));
        }
        out
    }

    /// Multiplies by `mu^k`.
    pub fn shift(&self, k: i32) -> WMat {
        WMat { rows: self.rows, cols: self.cols, parts: self.parts.iter().map(|(j, m)| (j + k, m.clone())).collect() }
    }

    pub fn mul(&self, o: &WMat) -> WMat {
        assert_eq!(self.cols, o.rows, "weighted matrix product shape mismatch");
        let mut out = WMat::zeros(self.rows, o.cols);
        for (a, x) in &self.parts {
            for (b, y) in &o.parts {
                out.insert_add(a + b, x.mul(y));
            }
        }
        out
    }

    pub fn kron(&self, o: &WMat) -> WMat {
        let mut out = WMat::zeros(self.rows * o.rows, self.cols * o.cols);
        for (a, x) in &self.parts {
            for (b, y) in &o.parts {
                out.insert_add(a + b, x.kron(y));
            }
        }
        out
    }

    pub fn transpose(&self) -> WMat {
        WMat { rows: self.cols, cols: self.rows, parts: self.parts.iter().map(|(k, m)| (*k, m.transpose())).collect() }
    }

    /// Reduces the `mu`-grading modulo the relation `mu^p = q^j` known in `f`.
    pub fn fold(&self, f: &LambdaField) -> WMat {
        let Some((p, step)) = f.period() else {
            return self.clone();
        };
        let mut out = WMat::zeros(self.rows, self.cols);
        for (k, m) in &self.parts {
            let r = k.rem_euclid(p);
            let t = (k - r) / p;
            let factor = step.pow(t).expect("monomial power");
            out.insert_add(r, m.scale(&factor));
        }
        out
    }

    pub fn is_zero_in(&self, f: &LambdaField) -> bool {
        self.fold(f).parts.is_empty()
    }

    /// `"0"`, or the dominant nonzero entry after folding, tagged with its `mu` power.
    pub fn summary(&self, f: &LambdaField) -> String {
        let folded = self.fold(f);
        let best = folded
            .parts
            .iter()
            .filter_map(|(k, m)| m.max_entry().map(|e| (*k, e)))
            .max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()));
        match best {
            None => "0".into(),
            Some((0, e)) => e.to_string(),
            Some((k, e)) => format!("({e})*lambda^({k}/2)"),
        }
    }

    /// The value in `Q(q)` when every `mu` power folds away.
    pub fn to_mat(&self, f: &LambdaField) -> Option<Mat> {
        let folded = self.fold(f);
        match folded.parts.len() {
            0 => Some(Mat::zeros(self.rows, self.cols)),
            1 if folded.parts.contains_key(&0) => folded.parts.get(&0).cloned(),
            _ => None,
        }
    }
}

/// Largest entry of a scalar list, as residual text.
pub fn scalar_summary<'a>(it: impl Iterator<Item = &'a QScalar>) -> String {
    max_entry(it).map(|e| e.to_string()).unwrap_or_else(|| "0".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folds_half_integer_lambda() {
        // lambda^2 = q^-3: mu has period 4 with mu^4 = q^-3
        let f = LambdaField::with_lambda_sq(-3);
        let a = WMat::weighted(Mat::identity(1), 6);
        let b = WMat::weighted(Mat::scalar(1, &QScalar::q_pow(-3)), 2);
        assert!(a.sub(&b).is_zero_in(&f));
        assert!(!WMat::weighted(Mat::identity(1), 2).sub(&WMat::identity(1)).is_zero_in(&f));
    }

    #[test]
    fn formal_lambda_keeps_grades_apart() {
        let f = LambdaField::formal();
        let a = WMat::weighted(Mat::identity(2), 4).sub(&WMat::plain(Mat::scalar(2, &QScalar::q_pow(-2))));
        assert!(!a.is_zero_in(&f));
        assert!(a.is_zero_in(&LambdaField::with_lambda_sq(-2)));
    }

    #[test]
    fn product_adds_grades() {
        let a = WMat::mu_identity(2, 3);
        let b = WMat::mu_identity(2, -1);
        assert_eq!(a.mul(&b), WMat::mu_identity(2, 2));
    }
}

use std::collections::BTreeMap;
use std::fmt;

use super::free::{letters, word, FreeVec};
use super::{CovectorAlgebra, Space};
use crate::error::{Error, Result};
use crate::scalars::QScalar;

/// Element of the free algebra as a map from index tuples to coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeTensor {
    pub n: usize,
    pub terms: BTreeMap<Vec<usize>, QScalar>,
}

impl FreeTensor {
    pub fn new(n: usize) -> Self {
        FreeTensor { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, idx: &[usize], c: QScalar) -> Self {
        let mut t = FreeTensor::new(n);
        t.add_term(idx.to_vec(), c);
        t
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: QScalar) {
        assert!(idx.iter().all(|&i| i < self.n), "index out of range");
        let e = self.terms.entry(idx).or_insert_with(QScalar::zero);
        *e += c;
    }

    pub fn from_free(v: &FreeVec) -> Self {
        let mut t = FreeTensor::new(v.n);
        for (w, c) in v.nonzero() {
            t.add_term(letters(w, v.n, v.m), c.clone());
        }
        t
    }

    /// Homogeneous components as dense free vectors.
    pub fn components(&self) -> BTreeMap<usize, FreeVec> {
        let mut out: BTreeMap<usize, FreeVec> = BTreeMap::new();
        for (idx, c) in &self.terms {
            let v = out.entry(idx.len()).or_insert_with(|| FreeVec::zero(self.n, idx.len()));
            v.data[word(idx, self.n)] += c;
        }
        out
    }
}

/// Element of the quotient algebra in basis coordinates, one vector per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalElement {
    pub model: String,
    pub n: usize,
    coords: BTreeMap<usize, Vec<QScalar>>,
}

impl NormalElement {
    pub fn zero(model: &str, n: usize) -> Self {
        NormalElement { model: model.to_string(), n, coords: BTreeMap::new() }
    }

    pub fn from_coords(model: &str, n: usize, coords: BTreeMap<usize, Vec<QScalar>>) -> Self {
        let mut e = NormalElement { model: model.to_string(), n, coords };
        e.coords.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        e
    }

    pub fn homogeneous(model: &str, n: usize, m: usize, coords: Vec<QScalar>) -> Self {
        NormalElement::from_coords(model, n, BTreeMap::from([(m, coords)]))
    }

    pub fn coords(&self) -> &BTreeMap<usize, Vec<QScalar>> {
        &self.coords
    }

    pub fn degree_part(&self, m: usize) -> Option<&Vec<QScalar>> {
        self.coords.get(&m)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.keys().copied()
    }

    pub fn add(&self, o: &NormalElement) -> Result<NormalElement> {
        self.same_model(o)?;
        let mut coords = self.coords.clone();
        for (m, v) in &o.coords {
            match coords.get_mut(m) {
                Some(a) => a.iter_mut().zip(v).for_each(|(x, y)| *x += y),
                None => {
                    coords.insert(*m, v.clone());
                }
            }
        }
        Ok(NormalElement::from_coords(&self.model, self.n, coords))
    }

    pub fn scale(&self, s: &QScalar) -> NormalElement {
        let coords = self.coords.iter().map(|(m, v)| (*m, v.iter().map(|c| c * s).collect())).collect();
        NormalElement::from_coords(&self.model, self.n, coords)
    }

    fn same_model(&self, o: &NormalElement) -> Result<()> {
        if self.model != o.model || self.n != o.n {
            return Err(Error::ModelMismatch);
        }
        Ok(())
    }

    /// Lifts back to the free algebra through the basis monomials.
    pub fn lift(&self, alg: &CovectorAlgebra) -> FreeTensor {
        let mut t = FreeTensor::new(self.n);
        for (m, v) in &self.coords {
            for (k, c) in t_free(alg, *m, v).terms {
                t.add_term(k, c);
            }
        }
        t
    }

    /// Writes `coeff * x[i1]x[i2]...` terms; non-monomial coefficients are parenthesized.
    pub fn to_text(&self, alg: &CovectorAlgebra) -> String {
        let mut terms = Vec::new();
        for (m, v) in &self.coords {
            let words = alg.basis_words(Space::Single(*m));
            for (c, w) in v.iter().zip(words) {
                if c.is_zero() {
                    continue;
                }
                let mono = if *m == 0 {
                    "1".to_string()
                } else {
                    letters(w, self.n, *m).iter().map(|i| format!("x[{i}]")).collect::<String>()
                };
                terms.push(format!("{} * {mono}", coeff_text(c)));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn t_free(alg: &CovectorAlgebra, m: usize, v: &[QScalar]) -> FreeTensor {
    FreeTensor::from_free(&alg.include(Space::Single(m), v))
}

fn coeff_text(c: &QScalar) -> String {
    let s = c.to_string();
    let inner = s.strip_prefix('-').unwrap_or(&s);
    if inner.contains(['+', '-', '/']) {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for FreeTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| {
                let mono = if idx.is_empty() { "1".to_string() } else { idx.iter().map(|i| format!("x[{i}]")).collect() };
                format!("{} * {mono}", coeff_text(c))
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Parses `coeff * x[i]x[j] + ...`; a term may omit the coefficient or the monomial.
pub fn parse_free_tensor(s: &str, n: usize) -> Result<FreeTensor> {
    let mut t = FreeTensor::new(n);
    let s = s.trim();
    if s == "0" {
        return Ok(t);
    }
    let mut depth = 0i32;
    let mut start = 0;
    let mut pieces = Vec::new();
    for (pos, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 && pos > 0 && !s[..pos].ends_with('^') => {
                pieces.push((start, &s[start..pos]));
                start = pos + 1;
            }
            _ => {}
        }
    }
    pieces.push((start, &s[start..]));
    for (offset, piece) in pieces {
        let piece = piece.trim();
        let split = piece.rfind('*').filter(|&k| {
            let right = piece[k + 1..].trim();
            right == "1" || right.starts_with("x[")
        });
        let (coeff, mono) = match split {
            Some(k) => (piece[..k].trim(), piece[k + 1..].trim()),
            None if piece.starts_with("x[") => ("1", piece),
            None => (piece, "1"),
        };
        let c: QScalar = coeff.parse().map_err(|e: Error| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            other => other,
        })?;
        t.add_term(parse_monomial(mono, n, offset)?, c);
    }
    Ok(t)
}

fn parse_monomial(s: &str, n: usize, offset: usize) -> Result<Vec<usize>> {
    if s == "1" {
        return Ok(Vec::new());
    }
    let mut idx = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix("x[")
            .ok_or_else(|| Error::Parse { pos: offset, msg: format!("expected x[..] in {s:?}") })?;
        let close = body.find(']').ok_or_else(|| Error::Parse { pos: offset, msg: "unclosed index".into() })?;
        let i: usize = body[..close]
            .trim()
            .parse()
            .map_err(|_| Error::Parse { pos: offset, msg: format!("bad index {:?}", &body[..close]) })?;
        if i >= n {
            return Err(Error::IndexOutOfRange(format!("x[{i}] with n = {n}")));
        }
        idx.push(i);
        rest = body[close + 1..].trim_start();
    }
    Ok(idx)
}

impl CovectorAlgebra {
    pub fn normal_form(&self, model: &str, t: &FreeTensor) -> NormalElement {
        let coords = t.components().into_iter().map(|(m, v)| (m, self.reduce(Space::Single(m), &v))).collect();
        NormalElement::from_coords(model, self.n(), coords)
    }

    pub fn multiply(&self, a: &NormalElement, b: &NormalElement) -> Result<NormalElement> {
        a.same_model(b)?;
        let mut out: BTreeMap<usize, Vec<QScalar>> = BTreeMap::new();
        for (m, x) in &a.coords {
            for (k, y) in &b.coords {
                let prod = self.multiply_coords(*m, x, *k, y);
                match out.get_mut(&(m + k)) {
                    Some(acc) => acc.iter_mut().zip(&prod).for_each(|(s, p)| *s += p),
                    None => {
                        out.insert(m + k, prod);
                    }
                }
            }
        }
        Ok(NormalElement::from_coords(&a.model, a.n, out))
    }

    pub fn apply_antipode(&self, e: &NormalElement) -> Result<NormalElement> {
        let mut out = BTreeMap::new();
        for (m, v) in &e.coords {
            out.insert(*m, self.antipode(*m)?.mul_vec(v));
        }
        Ok(NormalElement::from_coords(&e.model, e.n, out))
    }

    pub fn parse_element(&self, model: &str, s: &str) -> Result<NormalElement> {
        Ok(self.normal_form(model, &parse_free_tensor(s, self.n())?))
    }
}

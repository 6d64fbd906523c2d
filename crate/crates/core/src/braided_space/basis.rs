use std::collections::HashMap;

use super::free::{word_count, FreeVec};
use crate::scalars::QScalar;

/// Sparse row sorted by strictly decreasing word index; the first entry leads.
pub type SparseRow = Vec<(usize, QScalar)>;

/// Quotient basis of one degree together with the reduction of every word.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub degree: usize,
    pub n: usize,
    /// Basis words, increasing.
    pub monomials: Vec<usize>,
    /// Position of each word among `monomials`, if it is a basis word.
    position: Vec<Option<usize>>,
    /// Reduction of each non-basis word as `(basis position, coefficient)`.
    reduction: HashMap<usize, Vec<(usize, QScalar)>>,
    /// Fully reduced echelon rows spanning the relation subspace.
    relations: Vec<SparseRow>,
}

impl DegreeBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn position(&self, w: usize) -> Option<usize> {
        self.position[w]
    }

    pub fn relations(&self) -> &[SparseRow] {
        &self.relations
    }

    /// Coordinates of a single word.
    pub fn reduce_word(&self, w: usize) -> Vec<(usize, QScalar)> {
        match self.position[w] {
            Some(p) => vec![(p, QScalar::one())],
            None => self.reduction.get(&w).cloned().unwrap_or_default(),
        }
    }

    /// Adds `c` times the coordinates of word `w` into `out`.
    pub fn reduce_word_into(&self, w: usize, c: &QScalar, out: &mut [QScalar]) {
        match self.position[w] {
            Some(p) => out[p] += c,
            None => {
                if let Some(r) = self.reduction.get(&w) {
                    for (p, x) in r {
                        out[*p] += c * x;
                    }
                }
            }
        }
    }

    pub fn reduce(&self, v: &FreeVec) -> Vec<QScalar> {
        assert_eq!(v.m, self.degree, "degree mismatch in reduce");
        let mut out = vec![QScalar::zero(); self.dim()];
        for (w, c) in v.nonzero() {
            self.reduce_word_into(w, c, &mut out);
        }
        out
    }

    /// Free tensor of basis coordinates.
    pub fn include(&self, coords: &[QScalar]) -> FreeVec {
        let mut v = FreeVec::zero(self.n, self.degree);
        for (p, c) in coords.iter().enumerate() {
            v.data[self.monomials[p]] = c.clone();
        }
        v
    }

    pub fn unit(&self, p: usize) -> FreeVec {
        FreeVec::unit(self.n, self.degree, self.monomials[p])
    }

    /// Row-reduces the span of `generators` with pivots on the largest words.
    pub fn from_relations(n: usize, degree: usize, generators: impl IntoIterator<Item = SparseRow>) -> Self {
        let mut ech = Echelon::default();
        for g in generators {
            ech.insert(g);
        }
        ech.finish(n, degree)
    }
}

#[derive(Default)]
struct Echelon {
    rows: Vec<SparseRow>,
    pivot_row: HashMap<usize, usize>,
}

fn axpy(a: &SparseRow, f: &QScalar, b: &SparseRow) -> SparseRow {
    // a - f * b, both sorted decreasing
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 > b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 > a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Echelon {
    fn insert(&mut self, mut row: SparseRow) {
        row.retain(|(_, c)| !c.is_zero());
        row.sort_by(|a, b| b.0.cmp(&a.0));
        // Rows are fully reduced, so one pass over the pivot columns of `row` suffices.
        let hits: Vec<(usize, QScalar)> = row
            .iter()
            .filter_map(|(w, c)| self.pivot_row.get(w).map(|&r| (r, c.clone())))
            .collect();
        for (r, c) in hits {
            row = axpy(&row, &c, &self.rows[r]);
        }
        let Some((lead, lc)) = row.first().cloned() else {
            return;
        };
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            for (_, c) in row.iter_mut() {
                *c = &*c * &inv;
            }
        }
        for other in self.rows.iter_mut() {
            if let Ok(k) = other.binary_search_by(|(w, _)| lead.cmp(w)) {
                let f = other[k].1.clone();
                *other = axpy(other, &f, &row);
            }
        }
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
    }

    fn finish(self, n: usize, degree: usize) -> DegreeBasis {
        let size = word_count(n, degree);
        let monomials: Vec<usize> = (0..size).filter(|w| !self.pivot_row.contains_key(w)).collect();
        let mut position = vec![None; size];
        for (p, &w) in monomials.iter().enumerate() {
            position[w] = Some(p);
        }
        let mut reduction = HashMap::new();
        for row in &self.rows {
            let lead = row[0].0;
            let red = row[1..]
                .iter()
                .map(|(w, c)| (position[*w].expect("reduced rows avoid pivots"), -c))
                .collect();
            reduction.insert(lead, red);
        }
        DegreeBasis { degree, n, monomials, position, reduction, relations: self.rows }
    }
}

use super::spinor::{spinor, SpinorGen};
use super::{dim, partial_blocks, rotation, weighted_sum};
use crate::error::Result;
use crate::linalg::Mat;
use crate::models::{Layout, Model};
use crate::report::{per_degree, SuiteEntry, Tally};
use crate::weight::WMat;

/// Momenta `p^i = -∂̄^i` from degree `m`.
pub(crate) fn momenta(model: &Model, m: usize) -> Result<Vec<Mat>> {
    Ok(partial_blocks(model, m, true)?.iter().map(Mat::neg).collect())
}

/// Lowered momenta `p_I = eta_IA p^A` from degree `m`.
pub(crate) fn lowered_momenta(model: &Model, m: usize) -> Result<Vec<Mat>> {
    let eta = model.eta()?;
    let p = momenta(model, m)?;
    let n = model.n();
    Ok((0..n)
        .map(|i| {
            let mut acc = Mat::zeros(p[0].rows(), p[0].cols());
            for a in 0..n {
                if !eta.get(i, a).is_zero() {
                    acc.add_scaled(&p[a], eta.get(i, a));
                }
            }
            acc
        })
        .collect())
}

fn vector_degree(model: &Model, m: usize, plus: bool) -> Result<Tally> {
    let n = model.n();
    let r = &model.spec.r;
    let ri = r.inverse()?;
    let p: Vec<WMat> = momenta(model, m)?.into_iter().map(WMat::plain).collect();
    let (rows, cols) = (dim(model, m - 1), dim(model, m));
    let mut t = Tally::new();
    for i in 0..n {
        for j in 0..n {
            let low = rotation(model, i, j, m - 1, plus)?;
            let high: Vec<WMat> = (0..n).map(|a| rotation(model, a, j, m, plus)).collect::<Result<_>>()?;
            for k in 0..n {
                let lhs = low.mul(&p[k]);
                let terms = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| {
                    let c = if plus { ri.get(k, b, i, a).clone() } else { r.get(i, a, k, b).clone() };
                    (c, p[b].mul(&high[a]))
                });
                let rhs = weighted_sum(terms, rows, cols).shift(if plus { -2 } else { 2 });
                t.wmat(&lhs.sub(&rhs), &model.lambda);
            }
        }
    }
    Ok(t)
}

fn dilaton_degree(model: &Model, m: usize) -> Result<Tally> {
    let mut t = Tally::new();
    let (lo, hi) = (WMat::mu_identity(dim(model, m - 1), 2 * (m as i32 - 1)), WMat::mu_identity(dim(model, m), 2 * m as i32));
    for p in momenta(model, m)? {
        let p = WMat::plain(p);
        t.wmat(&lo.mul(&p).sub(&p.mul(&hi).shift(-2)), &model.lambda);
    }
    Ok(t)
}

fn spin_idx(k: usize, l: usize) -> usize {
    2 * k + l
}

/// Momenta `p_(kl)` as they enter the spinorial relations; dressed by `l-` on Minkowski.
fn spinor_momenta(model: &Model, m: usize, dressed: bool) -> Result<Vec<WMat>> {
    let p: Vec<WMat> = lowered_momenta(model, m)?.into_iter().map(WMat::plain).collect();
    if !dressed {
        return Ok(p);
    }
    let mut out = Vec::with_capacity(4);
    for k in 0..2 {
        for l in 0..2 {
            let mut acc = WMat::zeros(p[0].shape().0, p[0].shape().1);
            for c in 0..2 {
                acc = acc.add(&p[spin_idx(k, c)].mul(&spinor(model, c, l, m, SpinorGen::L, false)?));
            }
            out.push(acc);
        }
    }
    Ok(out)
}

fn spinor_degree(model: &Model, m: usize, gen: SpinorGen) -> Result<Tally> {
    let seed = model.seed()?.clone();
    let si = seed.inverse()?;
    let mink = model.layout() == Layout::MatrixMinkowski;
    let pm = spinor_momenta(model, m, mink)?;
    let (rows, cols) = (dim(model, m - 1), dim(model, m));
    let mut t = Tally::new();
    for plus in [true, false] {
        let low: Vec<WMat> = (0..4).map(|ij| spinor(model, ij / 2, ij % 2, m - 1, gen, plus)).collect::<Result<_>>()?;
        let high: Vec<WMat> = (0..4).map(|ij| spinor(model, ij / 2, ij % 2, m, gen, plus)).collect::<Result<_>>()?;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let lhs = low[2 * i + j].mul(&pm[spin_idx(k, l)]);
                        let mut rhs = WMat::zeros(rows, cols);
                        for a in 0..2 {
                            for b in 0..2 {
                                let (c, pk) = match (gen, plus) {
                                    (SpinorGen::L, true) => (si.get(k, b, i, a), spin_idx(b, l)),
                                    (SpinorGen::L, false) => (seed.get(i, a, k, b), spin_idx(b, l)),
                                    (SpinorGen::M, true) => (seed.get(b, l, i, a), spin_idx(k, b)),
                                    (SpinorGen::M, false) => (si.get(i, a, b, l), spin_idx(k, b)),
                                };
                                if !c.is_zero() {
                                    rhs = rhs.add(&pm[pk].mul(&high[2 * a + j]).scale(c));
                                }
                            }
                        }
                        let w = match (gen, plus) {
                            (SpinorGen::L, true) | (SpinorGen::M, false) => -1,
                            _ => 1,
                        };
                        t.wmat(&lhs.sub(&rhs.shift(w)), &model.lambda);
                    }
                }
            }
        }
    }
    Ok(t)
}

/// `R21 p1 R p2 = p2 R21 p1 R` for the undressed momenta, through degree `m`.
fn momentum_pair_degree(model: &Model, m: usize) -> Result<Tally> {
    let r = model.seed()?.clone();
    let p1 = lowered_momenta(model, m - 1)?;
    let p0 = lowered_momenta(model, m)?;
    let shape = (dim(model, m - 2), dim(model, m));
    let prods: Vec<Vec<Mat>> = (0..4).map(|x| (0..4).map(|y| p1[x].mul(&p0[y])).collect()).collect();
    let mut t = Tally::new();
    for (i, j, k, l) in (0..16).map(|t| (t >> 3 & 1, t >> 2 & 1, t >> 1 & 1, t & 1)) {
        let mut lhs = Mat::zeros(shape.0, shape.1);
        let mut rhs = Mat::zeros(shape.0, shape.1);
        for (a, b, c, d) in (0..16).map(|t| (t >> 3 & 1, t >> 2 & 1, t >> 1 & 1, t & 1)) {
            let x = r.get(k, b, i, a) * r.get(c, j, b, d);
            if !x.is_zero() {
                lhs.add_scaled(&prods[spin_idx(a, c)][spin_idx(d, l)], &x);
            }
            let y = r.get(b, c, i, a) * r.get(d, j, c, l);
            if !y.is_zero() {
                rhs.add_scaled(&prods[spin_idx(k, b)][spin_idx(a, d)], &y);
            }
        }
        t.mat(&lhs.sub(&rhs));
    }
    Ok(t)
}

/// Cross relations between translations and rotations on degrees `1..=max_degree`: the
/// vector form on every model, and the spinorial forms on the 4-dimensional ones.
pub fn cross_relation_residual(model: &Model, max_degree: usize) -> Vec<SuiteEntry> {
    let mut out = Vec::new();
    out.extend(per_degree("cross-lplus-p", "l+_1 p_2 = λ^-1 R21^-1 p_2 l+_1", 1..=max_degree, |m| {
        vector_degree(model, m, true)
    }));
    out.extend(per_degree("cross-lminus-p", "l-_1 p_2 = λ R p_2 l-_1", 1..=max_degree, |m| vector_degree(model, m, false)));
    out.extend(per_degree("cross-dilaton-p", "λ^ξ p = λ^-1 p λ^ξ", 1..=max_degree, |m| dilaton_degree(model, m)));
    if model.layout() == Layout::Vector {
        return out;
    }
    let (anchor_l, anchor_m) = if model.layout() == Layout::MatrixMinkowski {
        ("l±_1 (p l-)_2 = λ^(∓1/2) R (p l-)_2 l±_1", "m±_1 (p l-)_2 = λ^(±1/2) R (p l-)_2 m±_1")
    } else {
        ("l±_1 p_2 = λ^(∓1/2) R p_2 l±_1", "m±_1 p_2 = λ^(±1/2) p_2 R m±_1")
    };
    out.extend(per_degree("cross-spinor-l", anchor_l, 1..=max_degree, |m| spinor_degree(model, m, SpinorGen::L)));
    out.extend(per_degree("cross-spinor-m", anchor_m, 1..=max_degree, |m| spinor_degree(model, m, SpinorGen::M)));
    if model.layout() == Layout::MatrixMinkowski && max_degree >= 2 {
        out.extend(per_degree("cross-momentum-pair", "R21 p_1 R p_2 = p_2 R21 p_1 R", 2..=max_degree, |m| {
            momentum_pair_degree(model, m)
        }));
    }
    out
}

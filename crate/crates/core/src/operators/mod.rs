//! Graded-operator realizations of `p`, `l±`, `lambda^xi` and left multiplication on the
//! quotient components, and the residual engines for their commutation relations.
//!
//! Convention: `∂^i` is the braided derivative built from `[m;R]`, `∂̄^i` the one built
//! from `[m;R21^-1]`, and the momentum `p^i` acts as `-∂̄^i`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::braided_space::{FreeMap, FreeVec, Space};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::models::{BlockKey, Layout, Model};
use crate::report::{per_degree, SuiteEntry, Tally};
use crate::scalars::QScalar;
use crate::weight::WMat;

mod cross;
mod spinor;
mod twist;

pub use cross::cross_relation_residual;
pub use spinor::{block_inverse, spinor_blocks, SpinorGen};
pub use twist::{twisting_residual, universal_r_action};

/// Operator on the graded quotient: `blocks[m]` maps degree `m` to degree `m + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedOperator {
    pub model: String,
    pub name: String,
    pub shift: i32,
    pub blocks: BTreeMap<usize, WMat>,
}

#[derive(Serialize)]
struct BlockJson {
    degree: usize,
    shape: (usize, usize),
    #[serde(skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<Vec<String>>>,
    /// Coefficient matrices of `lambda^(k/2)` when `lambda` is not in `Q(q)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_parts: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

fn mat_text(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect()
}

impl GradedOperator {
    pub fn block(&self, m: usize) -> Option<&WMat> {
        self.blocks.get(&m)
    }

    /// Blocks as JSON; each block is a plain matrix when every `lambda` power folds into `Q(q)`.
    pub fn to_json(&self, model: &Model) -> String {
        let blocks: Vec<BlockJson> = self
            .blocks
            .iter()
            .map(|(d, w)| match w.to_mat(&model.lambda) {
                Some(m) => BlockJson { degree: *d, shape: w.shape(), entries: Some(mat_text(&m)), lambda_parts: None },
                None => BlockJson {
                    degree: *d,
                    shape: w.shape(),
                    entries: None,
                    lambda_parts: Some(
                        w.fold(&model.lambda).parts().iter().map(|(k, m)| (format!("{k}/2"), mat_text(m))).collect(),
                    ),
                },
            })
            .collect();
        let v = serde_json::json!({
            "model": self.model,
            "op": self.name,
            "shift": self.shift,
            "blocks": blocks,
        });
        serde_json::to_string_pretty(&v).expect("serializable")
    }
}

fn check_index(model: &Model, i: usize) -> Result<()> {
    if i >= model.n() {
        return Err(Error::IndexOutOfRange(format!("index {i} with n = {}", model.n())));
    }
    Ok(())
}

fn single(m: usize) -> Space {
    Space::Single(m)
}

/// `∂^i` (or `∂̄^i`) from degree `m >= 1` to `m - 1`, for all `i`.
pub fn partial_blocks(model: &Model, m: usize, conj: bool) -> Result<Arc<Vec<Mat>>> {
    if m == 0 {
        return Err(Error::DimensionError("derivative block needs degree >= 1".into()));
    }
    model.blocks(BlockKey::Partial { m, conj }, || {
        let alg = &model.alg;
        let n = alg.n();
        let op = if conj { &alg.braid_bar } else { &alg.braid };
        let integer = FreeMap::from_fn(n, m, m, |w| {
            let u = FreeVec::unit(n, m, w);
            let mut acc = FreeVec::zero(n, m);
            for k in 0..m {
                acc.add_assign(&u.chain(op, 0, k));
            }
            acc
        });
        (0..n)
            .map(|i| {
                let proj = FreeMap::from_fn(n, m, m - 1, |w| integer.apply_sparse(&[(w, QScalar::one())]).proj_first(i));
                alg.block(single(m), single(m - 1), &proj)
            })
            .collect()
    })
}

/// The `lambda`-free part of `l±^i_j` on degree `m`, stored at `i * n + j`.
/// The full operator is `lambda^(±m)` times this block.
pub fn rotation_blocks(model: &Model, m: usize, plus: bool) -> Result<Arc<Vec<Mat>>> {
    model.blocks(BlockKey::Rotation { m, plus }, || {
        let alg = &model.alg;
        let n = alg.n();
        let op = if plus { &alg.braid } else { &alg.braid_bar };
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let map = FreeMap::from_fn(n, m, m, |w| FreeVec::unit(n, m, w).append(j).chain(op, 0, m).proj_first(i));
                out.push(alg.block(single(m), single(m), &map)?);
            }
        }
        Ok(out)
    })
}

/// Left multiplication by `x_i` from degree `m`, for all `i`.
pub fn mult_blocks(model: &Model, m: usize) -> Result<Arc<Vec<Mat>>> {
    model.blocks(BlockKey::Mult { m }, || (0..model.n()).map(|i| model.alg.left_mult(i, m)).collect())
}

pub fn antipode_block(model: &Model, m: usize) -> Result<Mat> {
    Ok(model.blocks(BlockKey::Antipode { m }, || Ok(vec![model.alg.antipode(m)?]))?[0].clone())
}

/// `l±^i_j` on degree `m` with its `lambda^(±m)` weight.
pub fn rotation(model: &Model, i: usize, j: usize, m: usize, plus: bool) -> Result<WMat> {
    let n = model.n();
    let b = rotation_blocks(model, m, plus)?;
    let k = 2 * m as i32;
    Ok(WMat::weighted(b[i * n + j].clone(), if plus { k } else { -k }))
}

fn dim(model: &Model, m: usize) -> usize {
    model.alg.dim(single(m))
}

pub fn derivative_op(model: &Model, i: usize, conjugate: bool, max_degree: usize) -> Result<GradedOperator> {
    check_index(model, i)?;
    let mut blocks = BTreeMap::new();
    blocks.insert(0, WMat::zeros(0, 1));
    for m in 1..=max_degree {
        blocks.insert(m, WMat::plain(partial_blocks(model, m, conjugate)?[i].clone()));
    }
    let name = if conjugate { format!("partialbar[{i}]") } else { format!("partial[{i}]") };
    Ok(GradedOperator { model: model.name().into(), name, shift: -1, blocks })
}

pub fn rotation_op(model: &Model, i: usize, j: usize, plus: bool, max_degree: usize) -> Result<GradedOperator> {
    check_index(model, i)?;
    check_index(model, j)?;
    let blocks = (0..=max_degree).map(|m| Ok((m, rotation(model, i, j, m, plus)?))).collect::<Result<_>>()?;
    let name = format!("{}[{i}][{j}]", if plus { "lplus" } else { "lminus" });
    Ok(GradedOperator { model: model.name().into(), name, shift: 0, blocks })
}

pub fn dilaton_op(model: &Model, max_degree: usize) -> GradedOperator {
    let blocks = (0..=max_degree).map(|m| (m, WMat::mu_identity(dim(model, m), 2 * m as i32))).collect();
    GradedOperator { model: model.name().into(), name: "dilaton".into(), shift: 0, blocks }
}

pub fn multiplication_op(model: &Model, i: usize, max_degree: usize) -> Result<GradedOperator> {
    check_index(model, i)?;
    let blocks = (0..=max_degree).map(|m| Ok((m, WMat::plain(mult_blocks(model, m)?[i].clone())))).collect::<Result<_>>()?;
    Ok(GradedOperator { model: model.name().into(), name: format!("x[{i}]"), shift: 1, blocks })
}

pub fn antipode_op(model: &Model, max_degree: usize) -> Result<GradedOperator> {
    let blocks = (0..=max_degree).map(|m| Ok((m, WMat::plain(antipode_block(model, m)?)))).collect::<Result<_>>()?;
    Ok(GradedOperator { model: model.name().into(), name: "antipode".into(), shift: 0, blocks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub enum LeibnizVariant {
    Leib,
    LowLeib,
    EucDif,
    MinkDif,
}

impl LeibnizVariant {
    pub fn applies_to(self, layout: Layout) -> bool {
        match self {
            LeibnizVariant::Leib | LeibnizVariant::LowLeib => true,
            LeibnizVariant::EucDif => layout == Layout::MatrixEuclidean,
            LeibnizVariant::MinkDif => layout == Layout::MatrixMinkowski,
        }
    }
}

/// Lowered derivatives `∂_I = eta_IA ∂^A` from degree `m`.
fn lowered(model: &Model, m: usize, conj: bool) -> Result<Vec<Mat>> {
    let eta = model.eta()?;
    let d = partial_blocks(model, m, conj)?;
    let n = model.n();
    Ok((0..n)
        .map(|i| {
            let mut acc = Mat::zeros(d[0].rows(), d[0].cols());
            for a in 0..n {
                let e = eta.get(i, a);
                if !e.is_zero() {
                    acc.add_scaled(&d[a], e);
                }
            }
            acc
        })
        .collect())
}

/// Products `D X` on degree `m` (`D` from degree `m + 1`) and `X D` on degree `m`
/// (`D` from degree `m`), where `X` is left multiplication.
struct LeibnizTerms {
    dx: Vec<Vec<Mat>>,
    xd: Option<Vec<Vec<Mat>>>,
}

fn leibniz_terms(model: &Model, m: usize, d_up: &[Mat], d_here: Option<&[Mat]>) -> Result<LeibnizTerms> {
    let n = model.n();
    let x_here = mult_blocks(model, m)?;
    let dx = (0..n).map(|i| (0..n).map(|j| d_up[i].mul(&x_here[j])).collect()).collect();
    let xd = match d_here {
        Some(dh) => {
            let x_down = mult_blocks(model, m - 1)?;
            Some((0..n).map(|a| (0..n).map(|b| x_down[a].mul(&dh[b])).collect()).collect())
        }
        None => None,
    };
    Ok(LeibnizTerms { dx, xd })
}

fn sum_terms<'a>(rows: usize, cols: usize, terms: impl Iterator<Item = (QScalar, &'a Mat)>) -> Mat {
    let mut acc = Mat::zeros(rows, cols);
    for (c, m) in terms {
        if !c.is_zero() {
            acc.add_scaled(m, &c);
        }
    }
    acc
}

/// Residual tally of one Leibniz variant on degree `m` (so degree `m + 1` enters).
fn leibniz_degree(model: &Model, variant: LeibnizVariant, m: usize) -> Result<Tally> {
    let n = model.n();
    let f = &model.lambda;
    let dm = dim(model, m);
    let id = Mat::identity(dm);
    let r = model.spec.r.clone();
    let ri = r.inverse()?;
    let mut tally = Tally::new();
    match variant {
        LeibnizVariant::Leib => {
            for conj in [false, true] {
                let up = partial_blocks(model, m + 1, conj)?;
                let here = if m > 0 { Some(partial_blocks(model, m, conj)?) } else { None };
                let t = leibniz_terms(model, m, &up, here.as_deref().map(|v| v.as_slice()))?;
                for i in 0..n {
                    for j in 0..n {
                        let mut res = t.dx[i][j].clone();
                        if let Some(xd) = &t.xd {
                            let corr = sum_terms(
                                dm,
                                dm,
                                (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| {
                                    let c = if conj { ri.get(i, b, a, j).clone() } else { r.get(a, j, i, b).clone() };
                                    (c, &xd[a][b])
                                }),
                            );
                            res = res.sub(&corr);
                        }
                        if i == j {
                            res = res.sub(&id);
                        }
                        tally.mat(&res);
                    }
                }
            }
        }
        LeibnizVariant::LowLeib => {
            let eta = model.eta()?.clone();
            for conj in [false, true] {
                let up = lowered(model, m + 1, conj)?;
                let here = if m > 0 { Some(lowered(model, m, conj)?) } else { None };
                let t = leibniz_terms(model, m, &up, here.as_deref())?;
                // barred: weight lambda^2, coefficient R[a,i,b,j] on X_b ∂_a; plain: lambda^-2, Ri[b,j,a,i]
                let weight = if conj { 4 } else { -4 };
                for i in 0..n {
                    for j in 0..n {
                        let mut res = WMat::plain(t.dx[i][j].sub(&id.scale(eta.get(i, j))));
                        if let Some(xd) = &t.xd {
                            let corr = sum_terms(
                                dm,
                                dm,
                                (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| {
                                    let c = if conj { r.get(a, i, b, j).clone() } else { ri.get(b, j, a, i).clone() };
                                    (c, &xd[b][a])
                                }),
                            );
                            res = res.sub(&WMat::weighted(corr, weight));
                        }
                        tally.wmat(&res, f);
                    }
                }
            }
        }
        LeibnizVariant::EucDif | LeibnizVariant::MinkDif => {
            let seed = model.seed()?.clone();
            let seed_inv = seed.inverse()?;
            let eta = model.eta()?.clone();
            let i2 = |a: usize, b: usize| 2 * a + b;
            let quad = || (0..16).map(|t| (t >> 3 & 1, t >> 2 & 1, t >> 1 & 1, t & 1));
            for conj in [false, true] {
                let up = lowered(model, m + 1, conj)?;
                let here = if m > 0 { Some(lowered(model, m, conj)?) } else { None };
                let t = leibniz_terms(model, m, &up, here.as_deref())?;
                let dx = |d: usize, x: usize| &t.dx[d][x];
                let zero = Mat::zeros(dm, dm);
                let xd = |x: usize, d: usize| t.xd.as_ref().map_or(&zero, |v| &v[x][d]);
                let w = if conj { 4 } else { -4 };
                for (i, j, k, l) in quad() {
                    let (lhs_dx, lhs_xd, rhs) = match (variant, conj) {
                        (LeibnizVariant::EucDif, false) => {
                            let mut s = QScalar::zero();
                            let a1 = sum_terms(
                                dm,
                                dm,
                                quad().map(|(a, b, c, d)| {
                                    let co = seed.get(i, a, k, b) * seed.get(d, j, c, l);
                                    s += &co * eta.get(i2(b, c), i2(a, d));
                                    (co, dx(i2(b, c), i2(a, d)))
                                }),
                            );
                            (a1, xd(i2(i, j), i2(k, l)).clone(), s)
                        }
                        (LeibnizVariant::EucDif, true) => {
                            let b1 = sum_terms(
                                dm,
                                dm,
                                quad().map(|(a, b, c, d)| (seed.get(i, a, k, b) * seed.get(d, j, c, l), xd(i2(b, c), i2(a, d)))),
                            );
                            (dx(i2(i, j), i2(k, l)).clone(), b1, eta.get(i2(i, j), i2(k, l)).clone())
                        }
                        (_, false) => {
                            let mut s = QScalar::zero();
                            let a1 = sum_terms(
                                dm,
                                dm,
                                quad().map(|(a, b, c, d)| {
                                    let co = seed.get(a, c, i, b) * seed.get(d, j, c, l);
                                    s += &co * eta.get(i2(k, a), i2(b, d));
                                    (co, dx(i2(k, a), i2(b, d)))
                                }),
                            );
                            let b1 = sum_terms(
                                dm,
                                dm,
                                quad().map(|(a, b, c, d)| (seed_inv.get(i, a, k, b) * seed.get(c, j, b, d), xd(i2(a, c), i2(d, l)))),
                            );
                            (a1, b1, s)
                        }
                        (_, true) => {
                            let mut s = QScalar::zero();
                            let a1 = sum_terms(
                                dm,
                                dm,
                                quad().map(|(a, b, c, d)| {
                                    let co = seed_inv.get(i, a, k, b) * seed.get(c, j, b, d);
                                    s += &co * eta.get(i2(a, c), i2(d, l));
                                    (co, dx(i2(a, c), i2(d, l)))
                                }),
                            );
                            let b1 = sum_terms(
                                dm,
                                dm,
                                quad().map(|(a, b, c, d)| (seed.get(a, c, i, b) * seed.get(d, j, c, l), xd(i2(k, a), i2(b, d)))),
                            );
                            (a1, b1, s)
                        }
                    };
                    let res = WMat::plain(lhs_dx.sub(&id.scale(&rhs))).sub(&WMat::weighted(lhs_xd, w));
                    tally.wmat(&res, f);
                }
            }
        }
    }
    Ok(tally)
}

fn leibniz_anchor(v: LeibnizVariant) -> &'static str {
    match v {
        LeibnizVariant::Leib => "∂^i x_j - R^a_j^i_b x_a ∂^b = δ^i_j",
        LeibnizVariant::LowLeib => "∂_i x_j - λ^-2 R^-1^b_j^a_i x_b ∂_a = η_ij",
        LeibnizVariant::EucDif => "R ∂ R x - λ^-2 x ∂ = R η R (2x2 matrix form)",
        LeibnizVariant::MinkDif => "R ∂ R x - λ^-2 R^-1 x R ∂ = R η R (braided matrix form)",
    }
}

pub fn leibniz_identity(v: LeibnizVariant) -> &'static str {
    match v {
        LeibnizVariant::Leib => "leibniz",
        LeibnizVariant::LowLeib => "leibniz-lowered",
        LeibnizVariant::EucDif => "leibniz-euclidean-matrix",
        LeibnizVariant::MinkDif => "leibniz-minkowski-matrix",
    }
}

/// Residuals of one Leibniz relation on degrees `1..=max_degree` (the relation acting on
/// degree `m - 1` passes through degree `m`).
pub fn leibniz_residual(model: &Model, variant: LeibnizVariant, max_degree: usize) -> Result<Vec<SuiteEntry>> {
    if !variant.applies_to(model.layout()) {
        return Err(Error::LayoutError(format!("{variant:?} does not apply to {:?}", model.layout())));
    }
    Ok(per_degree(leibniz_identity(variant), leibniz_anchor(variant), 1..=max_degree, |d| {
        leibniz_degree(model, variant, d - 1)
    }))
}

/// `S ∂^i + ∂̄^i S = 0` on each degree `1..=max_degree`.
pub fn intertwiner_residual(model: &Model, max_degree: usize) -> Vec<SuiteEntry> {
    per_degree("antipode-intertwiner", "S ∂^i = -∂̄^i S", 1..=max_degree, |m| {
        let d = partial_blocks(model, m, false)?;
        let db = partial_blocks(model, m, true)?;
        let (s0, s1) = (antipode_block(model, m - 1)?, antipode_block(model, m)?);
        let mut t = Tally::new();
        for i in 0..model.n() {
            t.mat(&s0.mul(&d[i]).add(&db[i].mul(&s1)));
        }
        Ok(t)
    })
}

pub(crate) fn weighted_sum(terms: impl IntoIterator<Item = (QScalar, WMat)>, rows: usize, cols: usize) -> WMat {
    let mut acc = WMat::zeros(rows, cols);
    for (c, m) in terms {
        if !c.is_zero() {
            acc = acc.add(&m.scale(&c));
        }
    }
    acc
}

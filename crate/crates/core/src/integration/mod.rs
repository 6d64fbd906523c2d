//! The Gaussian-weighted functional `Z`, sesquilinear forms and their adjointness suites.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::braided_space::{letters, word, word_count, FreeMap, FreeVec, LocalOp, NormalElement, Space};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::models::{BlockKey, Model, StarType};
use crate::operators::{antipode_block, block_inverse, partial_blocks, rotation_blocks};
use crate::report::{per_degree, SuiteEntry, Tally};
use crate::rmatrix::RMatrix;
use crate::scalars::QScalar;
use crate::star_metric::{rotation_s2, star_block, theta_block, StarKind, ThetaWhich};
use crate::weight::WMat;

/// `Z` on every free word of degree `m`, indexed by word.
pub fn moments(model: &Model, m: usize) -> Result<Arc<Vec<QScalar>>> {
    let prev = if m >= 2 { Some(moments(model, m - 2)?) } else { None };
    let quad = if m >= 3 { Some(moments(model, 2)?) } else { None };
    model.moments.get_or_init(m, || {
        let n = model.n();
        let lsq = model.lambda_sq()?.clone();
        let lsq_inv = lsq.inv()?;
        let size = word_count(n, m);
        match m {
            0 => return Ok(Arc::new(vec![QScalar::one()])),
            1 => return Ok(Arc::new(vec![QScalar::zero(); n])),
            2 => {
                let eta = model.eta()?;
                let ri = model.spec.r.inverse()?;
                let z = (0..size)
                    .map(|w| {
                        let (i, j) = (w / n, w % n);
                        let s: QScalar = (0..n)
                            .flat_map(|a| (0..n).map(move |b| (a, b)))
                            .map(|(a, b)| eta.get(a, b) * ri.get(a, j, b, i))
                            .sum();
                        s * &lsq_inv
                    })
                    .collect();
                return Ok(Arc::new(z));
            }
            _ => {}
        }
        let lower = prev.expect("lower moments");
        let z2 = quad.expect("quadratic moments");
        // pull the functional back through the chain of local operators
        let transposed = LocalOp::new(&transpose_local(&model.spec.r.inverse()?.r21().pr()));
        let mut total = FreeVec::zero(n, m);
        for r in 0..m - 1 {
            let mut f = FreeVec::zero(n, m);
            for w in 0..size {
                let l = letters(w, n, m);
                let pair = &z2[l[r] * n + l[r + 1]];
                if pair.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = l[..r].iter().chain(&l[r + 2..]).copied().collect();
                let low = &lower[word(&rest, n)];
                if !low.is_zero() {
                    f.data[w] = low * pair;
                }
            }
            let g = f.chain_forward(&transposed, r + 1, m - 1);
            total.add_scaled(&g, &lsq_inv.pow((m - 2 - r) as i32)?);
        }
        Ok(Arc::new(total.data))
    })
}

/// `T'^j_i^l_k = T^i_j^k_l`: the local operator whose action is the pullback through `T`.
fn transpose_local(t: &RMatrix) -> RMatrix {
    RMatrix::from_fn(t.n(), |j, i, l, k| t.get(i, j, k, l).clone())
}

pub fn z_moment(model: &Model, tuple: &[usize]) -> Result<QScalar> {
    let n = model.n();
    if let Some(&i) = tuple.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange(format!("x[{i}] with n = {n}")));
    }
    Ok(moments(model, tuple.len())?[word(tuple, n)].clone())
}

/// Linear extension of `Z` to an element of the quotient.
pub fn z_element(model: &Model, e: &NormalElement) -> Result<QScalar> {
    let mut s = QScalar::zero();
    for (m, v) in e.coords() {
        let z = moments(model, *m)?;
        for (w, c) in model.alg.basis_words(Space::Single(*m)).into_iter().zip(v) {
            s += c * &z[w];
        }
    }
    Ok(s)
}

/// `Z(b c)` for basis monomials `b` of degree `mb` and `c` of degree `mc`.
pub fn product_pairing(model: &Model, mb: usize, mc: usize) -> Result<Mat> {
    let z = moments(model, mb + mc)?;
    let sc = word_count(model.n(), mc);
    let (wb, wc) = (model.alg.basis_words(Space::Single(mb)), model.alg.basis_words(Space::Single(mc)));
    Ok(Mat::from_fn(wb.len(), wc.len(), |i, j| z[wb[i] * sc + wc[j]].clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormConfig {
    /// Include the degree factor `λ_ν^|b|`.
    pub lambda_nu: bool,
}

impl Default for FormConfig {
    fn default() -> Self {
        FormConfig { lambda_nu: true }
    }
}

fn nu_pow(model: &Model, m: i32, cfg: FormConfig) -> Result<QScalar> {
    if cfg.lambda_nu {
        model.theta()?.2.pow(m)
    } else {
        Ok(QScalar::one())
    }
}

/// Gram matrix of `(b, c) = λ_ν^|b| Z(b^* c)` between the degree-`mb` and degree-`mc` bases.
pub fn gram(model: &Model, mb: usize, mc: usize, cfg: FormConfig) -> Result<Mat> {
    let su = star_block(model, StarKind::Unitary, mb)?;
    Ok(su.transpose().mul(&product_pairing(model, mb, mc)?).scale(&nu_pow(model, mb as i32, cfg)?))
}

/// The sesquilinear form, antilinear in `b`.
pub fn sesquilinear(model: &Model, b: &NormalElement, c: &NormalElement, cfg: FormConfig) -> Result<QScalar> {
    if b.model != model.name() || c.model != model.name() {
        return Err(Error::ModelMismatch);
    }
    let mut s = QScalar::zero();
    for (mb, x) in b.coords() {
        for (mc, y) in c.coords() {
            if (mb + mc) % 2 == 1 {
                continue;
            }
            let g = gram(model, *mb, *mc, cfg)?;
            let gy = g.mul_vec(y);
            for (a, v) in x.iter().zip(&gy) {
                s += &a.conjugate() * v;
            }
        }
    }
    Ok(s)
}

/// Gram matrix of `(b, c)^U = λ_ν^|b| Z(θ_v(S(b^⋆)) c)`.
pub fn parity_gram(model: &Model, mb: usize, mc: usize, cfg: FormConfig) -> Result<Mat> {
    let t = theta_block(model, ThetaWhich::V, mb)?
        .mul(&antipode_block(model, mb)?)
        .mul(&star_block(model, StarKind::Coordinate, mb)?);
    Ok(t.transpose().mul(&product_pairing(model, mb, mc)?).scale(&nu_pow(model, mb as i32, cfg)?))
}

pub fn parity_inner_form(model: &Model, b: &NormalElement, c: &NormalElement, cfg: FormConfig) -> Result<QScalar> {
    if b.model != model.name() || c.model != model.name() {
        return Err(Error::ModelMismatch);
    }
    let mut s = QScalar::zero();
    for (mb, x) in b.coords() {
        for (mc, y) in c.coords() {
            let gy = parity_gram(model, *mb, *mc, cfg)?.mul_vec(y);
            for (a, v) in x.iter().zip(&gy) {
                s += &a.conjugate() * v;
            }
        }
    }
    Ok(s)
}

/// `E_a(c) = ·Ψ(x_a ⊗ c)` from degree `m` to `m + 1`, for all `a`.
pub fn psi_insert_blocks(model: &Model, m: usize) -> Result<Arc<Vec<Mat>>> {
    model.blocks(BlockKey::PsiInsert { m }, || {
        let alg = &model.alg;
        let n = alg.n();
        (0..n)
            .map(|a| {
                let map = FreeMap::from_fn(n, m, m + 1, |w| FreeVec::unit(n, m, w).prepend(a).chain_forward(&alg.braid, 0, m));
                alg.block(Space::Single(m), Space::Single(m + 1), &map)
            })
            .collect()
    })
}

/// Coefficients of the starred derivative `(∂^i)^* = sum_b co_b ∂^b`.
fn derivative_star_coefficients(model: &Model, i: usize) -> Result<Vec<QScalar>> {
    let n = model.n();
    let eta = model.eta()?;
    let up = model.eta_upper()?;
    Ok(match &model.spec.star_type {
        StarType::RealTypeI => (0..n).map(|b| eta.get(i, b).clone()).collect(),
        StarType::RealTypeII { bar } => {
            (0..n).map(|b| (0..n).map(|a| up.get(bar[i], a) * eta.get(a, b)).sum()).collect()
        }
    })
}

fn zeros_like(rows: usize, cols: usize) -> Mat {
    Mat::zeros(rows, cols)
}

/// `Z((∂^i)^* b, c) = -Z(b, ∂̄^i c) + η^ai λ^2|c| Z(b, ·Ψ(x_a ⊗ c))` for `|b| + |c| = tot`.
fn adjoint_derivative_degree(model: &Model, tot: usize, cfg: FormConfig) -> Result<Tally> {
    let n = model.n();
    let up = model.eta_upper()?.clone();
    let lsq = model.lambda_sq()?.clone();
    let dim = |m: usize| model.alg.dim(Space::Single(m));
    let mut t = Tally::new();
    for mb in 0..=tot {
        let mc = tot - mb;
        let g_up = gram(model, mb, mc + 1, cfg)?;
        let ins = psi_insert_blocks(model, mc)?;
        let weight = lsq.pow(mc as i32)?;
        for i in 0..n {
            let lhs = if mb > 0 {
                let d = partial_blocks(model, mb, false)?;
                let mut ds = zeros_like(dim(mb - 1), dim(mb));
                for (b, c) in derivative_star_coefficients(model, i)?.iter().enumerate() {
                    if !c.is_zero() {
                        ds.add_scaled(&d[b], c);
                    }
                }
                ds.transpose().mul(&gram(model, mb - 1, mc, cfg)?)
            } else {
                zeros_like(dim(mb), dim(mc))
            };
            let mut rhs = if mc > 0 {
                gram(model, mb, mc - 1, cfg)?.mul(&partial_blocks(model, mc, true)?[i]).neg()
            } else {
                zeros_like(dim(mb), dim(mc))
            };
            for a in 0..n {
                let c = up.get(a, i) * &weight;
                if !c.is_zero() {
                    rhs.add_scaled(&g_up.mul(&ins[a]), &c);
                }
            }
            t.mat(&lhs.sub(&rhs));
        }
    }
    Ok(t)
}

/// `Z((l^s_IJ)^* b, c) = Z(b, l^s_IJ c)` on degree `m` pairs.
fn adjoint_rotation_degree(model: &Model, m: usize, cfg: FormConfig) -> Result<Tally> {
    let n = model.n();
    let g = WMat::plain(gram(model, m, m, cfg)?);
    let k = 2 * m as i32;
    let mut t = Tally::new();
    for plus in [true, false] {
        let w = if plus { k } else { -k };
        let l = rotation_blocks(model, m, plus)?;
        let conj: Vec<WMat> = match &model.spec.star_type {
            StarType::RealTypeI => block_inverse(&rotation_blocks(model, m, !plus)?)?
                .into_iter()
                .enumerate()
                .map(|(ij, x)| (ij, WMat::weighted(x, w)))
                .map(|(_, x)| x)
                .collect(),
            StarType::RealTypeII { .. } => rotation_s2(model, m, !plus)?.into_iter().map(|x| WMat::weighted(x, -w)).collect(),
        };
        for i in 0..n {
            for j in 0..n {
                let lc = match &model.spec.star_type {
                    StarType::RealTypeI => &conj[j * n + i],
                    StarType::RealTypeII { bar } => &conj[bar[i] * n + bar[j]],
                };
                let lhs = lc.transpose().mul(&g);
                let rhs = g.mul(&WMat::weighted(l[i * n + j].clone(), w));
                t.wmat(&lhs.sub(&rhs), &model.lambda);
            }
        }
    }
    Ok(t)
}

pub fn adjointness_residual(model: &Model, max_total: usize, cfg: FormConfig) -> Vec<SuiteEntry> {
    let mut out = per_degree(
        "adjoint-derivative",
        "Z(∂^i* b, c) = -Z(b, ∂̄^i c) + Z(b, ·Ψ(x_a ⊗ c)) η^ai λ^2|c|",
        1..=max_total,
        |tot| adjoint_derivative_degree(model, tot, cfg),
    );
    out.extend(per_degree("adjoint-rotation", "Z(l±* b, c) = Z(b, l± c)", (0..=max_total / 2).map(|m| 2 * m), |d| {
        adjoint_rotation_degree(model, d / 2, cfg)
    }));
    out
}

/// `Z(c, b) = (λ_ν^|c| / λ_ν^|b|) Z(b, c)` with conjugation, for `|b|, |c| <= max_degree`.
pub fn conj_symmetry_residual(model: &Model, max_degree: usize, cfg: FormConfig) -> Vec<SuiteEntry> {
    per_degree("conjugation-symmetry", "conj Z(c, b) = λ_ν^(|c|-|b|) Z(b, c)", 0..=max_degree, |d| {
        let mut t = Tally::new();
        for other in 0..=d {
            for (mb, mc) in [(d, other), (other, d)] {
                let gbc = gram(model, mb, mc, cfg)?;
                let gcb = gram(model, mc, mb, cfg)?.transpose().map(QScalar::conjugate);
                let f = nu_pow(model, mc as i32 - mb as i32, cfg)?;
                t.mat(&gcb.sub(&gbc.scale(&f)));
            }
        }
        Ok(t)
    })
}

/// Invertibility of the degree-`m` Gram matrix.
pub fn nondegeneracy(model: &Model, max_degree: usize, cfg: FormConfig) -> Vec<SuiteEntry> {
    per_degree("form-nondegenerate", "det Z(b_i, b_j) != 0", 0..=max_degree, |m| {
        let g = gram(model, m, m, cfg)?;
        let mut t = Tally::new();
        let deficit = g.rows() - g.rank();
        if deficit > 0 {
            t.scalar(&QScalar::from_int(deficit as i64));
        }
        Ok(t)
    })
}

/// Moment checks: low moments, vanishing odd moments, and `Z` killing the relations.
pub fn moment_residual(model: &Model, max_degree: usize) -> Vec<SuiteEntry> {
    let mut out = per_degree("moments-odd-vanish", "Z[x_i1 ... x_im] = 0 for odd m", (1..=max_degree).step_by(2), |m| {
        let mut t = Tally::new();
        moments(model, m)?.iter().for_each(|z| t.scalar(z));
        Ok(t)
    });
    out.extend(per_degree("moments-kill-relations", "Z(relations) = 0", 2..=max_degree, |m| {
        let z = moments(model, m)?;
        let mut t = Tally::new();
        for row in model.alg.relation_rows(Space::Single(m)) {
            let s: QScalar = row.iter().map(|(w, c)| c * &z[*w]).sum();
            t.scalar(&s);
        }
        Ok(t)
    }));
    out
}

/// `Z` on every index tuple up to `max_degree`, keyed by the tuple.
pub fn moment_table(model: &Model, max_degree: usize) -> Result<BTreeMap<Vec<usize>, QScalar>> {
    let n = model.n();
    let mut out = BTreeMap::new();
    for m in 0..=max_degree {
        let z = moments(model, m)?;
        for (w, v) in z.iter().enumerate() {
            out.insert(letters(w, n, m), v.clone());
        }
    }
    Ok(out)
}

/// `(p^* b, c)^U = (b, p c)^U` with `p = -∂̄`, as a self-adjointness statement.
pub fn parity_selfadjoint_literal(model: &Model, max_total: usize, cfg: FormConfig) -> Vec<SuiteEntry> {
    per_degree("parity-selfadjoint-literal", "(p^i* b, c)^U = (b, p^i c)^U", 1..=max_total, |tot| {
        let n = model.n();
        let dim = |m: usize| model.alg.dim(Space::Single(m));
        let mut t = Tally::new();
        for mb in 0..=tot {
            let mc = tot - mb;
            for i in 0..n {
                let lhs = if mb > 0 {
                    let d = partial_blocks(model, mb, true)?;
                    let mut ps = zeros_like(dim(mb - 1), dim(mb));
                    for (b, c) in derivative_star_coefficients(model, i)?.iter().enumerate() {
                        if !c.is_zero() {
                            ps.add_scaled(&d[b].neg(), c);
                        }
                    }
                    ps.transpose().mul(&parity_gram(model, mb - 1, mc, cfg)?)
                } else {
                    zeros_like(dim(mb), dim(mc))
                };
                let rhs = if mc > 0 {
                    parity_gram(model, mb, mc - 1, cfg)?.mul(&partial_blocks(model, mc, true)?[i].neg())
                } else {
                    zeros_like(dim(mb), dim(mc))
                };
                t.mat(&lhs.sub(&rhs));
            }
        }
        Ok(t)
    })
}

//! Coordinate stars, the θ automorphisms and their twist identities.

use std::collections::BTreeMap;

use crate::braided_space::{FreeMap, FreeVec, NormalElement, Space};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::models::{BlockKey, FreeKey, Model, StarType};
use crate::operators::{antipode_block, partial_blocks, rotation_blocks, GradedOperator};
use crate::report::{per_degree, SuiteEntry, Tally};
use crate::scalars::QScalar;
use crate::weight::WMat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarKind {
    /// The coordinate star `x_i^⋆`.
    Coordinate,
    /// The unitary star `x_i^*` used inside the sesquilinear form.
    Unitary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaWhich {
    V,
    U,
    Nu,
}

/// Degree-1 matrix of a star: `x_i -> sum_a mat[a][i] x_a` before reversal.
pub fn star_matrix(model: &Model, kind: StarKind) -> Result<Mat> {
    let n = model.n();
    let eta = model.eta()?;
    let up = model.eta_upper()?;
    Ok(match (&model.spec.star_type, kind) {
        (StarType::RealTypeI, StarKind::Coordinate) => up.transpose(),
        (StarType::RealTypeI, StarKind::Unitary) => up.clone(),
        (StarType::RealTypeII { bar }, StarKind::Coordinate) => Mat::from_fn(n, n, |b, i| {
            (0..n).map(|a| eta.get(bar[i], a) * up.get(a, b)).sum()
        }),
        (StarType::RealTypeII { bar }, StarKind::Unitary) => {
            Mat::from_fn(n, n, |a, i| if a == bar[i] { QScalar::one() } else { QScalar::zero() })
        }
    })
}

/// Linear part of a star on degree `m` (coefficients are conjugated separately).
pub fn star_block(model: &Model, kind: StarKind, m: usize) -> Result<Mat> {
    let key = match kind {
        StarKind::Coordinate => BlockKey::StarCoord { m },
        StarKind::Unitary => BlockKey::StarUnitary { m },
    };
    let b = model.blocks(key, || {
        let mat = star_matrix(model, kind)?;
        let n = model.n();
        let map = FreeMap::from_fn(n, m, m, |w| FreeVec::unit(n, m, w).reverse_with(&mat));
        Ok(vec![model.alg.block(Space::Single(m), Space::Single(m), &map)?])
    })?;
    Ok(b[0].clone())
}

fn apply_star(model: &Model, kind: StarKind, e: &NormalElement) -> Result<NormalElement> {
    if e.model != model.name() {
        return Err(Error::ModelMismatch);
    }
    let mut out = BTreeMap::new();
    for (m, v) in e.coords() {
        let conj: Vec<QScalar> = v.iter().map(QScalar::conjugate).collect();
        out.insert(*m, star_block(model, kind, *m)?.mul_vec(&conj));
    }
    Ok(NormalElement::from_coords(model.name(), model.n(), out))
}

/// Antilinear anti-multiplicative extension of `x_i^⋆`.
pub fn star_coordinate(model: &Model, e: &NormalElement) -> Result<NormalElement> {
    apply_star(model, StarKind::Coordinate, e)
}

/// Antilinear anti-multiplicative extension of `x_i^*`.
pub fn star_unitary_coordinate(model: &Model, e: &NormalElement) -> Result<NormalElement> {
    apply_star(model, StarKind::Unitary, e)
}

/// θ on degree `m`: the multiplicative extension of `x_i -> x_a v^a_i` (or `u`, or `λ_ν`).
pub fn theta_block(model: &Model, which: ThetaWhich, m: usize) -> Result<Mat> {
    let (v, u, l) = model.theta()?;
    let d = model.alg.dim(Space::Single(m));
    let mat = match which {
        ThetaWhich::Nu => return Ok(Mat::scalar(d, &l.pow(m as i32)?)),
        ThetaWhich::V => v,
        ThetaWhich::U => u,
    };
    let key = if which == ThetaWhich::V { BlockKey::ThetaV { m } } else { BlockKey::ThetaU { m } };
    let b = model.blocks(key, || {
        let n = model.n();
        let map = FreeMap::from_fn(n, m, m, |w| FreeVec::unit(n, m, w).per_letter(mat));
        Ok(vec![model.alg.block(Space::Single(m), Space::Single(m), &map)?])
    })?;
    Ok(b[0].clone())
}

pub fn theta_automorphism(model: &Model, which: ThetaWhich, max_degree: usize) -> Result<GradedOperator> {
    let blocks = (0..=max_degree).map(|m| Ok((m, WMat::plain(theta_block(model, which, m)?)))).collect::<Result<_>>()?;
    let name = match which {
        ThetaWhich::V => "theta-v",
        ThetaWhich::U => "theta-u",
        ThetaWhich::Nu => "theta-nu",
    };
    Ok(GradedOperator { model: model.name().into(), name: name.into(), shift: 0, blocks })
}

fn lambda_nu_pow(model: &Model, m: usize) -> Result<QScalar> {
    model.theta()?.2.pow(m as i32)
}

/// Free action of `uv` on degree `m`: `D_1 = uv`, `D_m = (D_{m-1} ⊗ uv)` after two inverse
/// double braidings of the last letter around the rest.
fn uv_coproduct_free(model: &Model, m: usize) -> Result<std::sync::Arc<FreeMap>> {
    let (v, u, _) = model.theta()?;
    let uv = u.mul(v);
    let n = model.n();
    if m == 0 {
        return Ok(std::sync::Arc::new(FreeMap::identity(n, 0)));
    }
    let prev = if m > 1 { Some(uv_coproduct_free(model, m - 1)?) } else { None };
    Ok(model.free_map(FreeKey::UvCoproduct { m }, || {
        let letter = FreeMap::letter(&uv);
        let Some(prev) = prev else {
            return letter;
        };
        let alg = &model.alg;
        let unbraid = FreeMap::from_fn(n, m, m, |w| {
            let mut x = FreeVec::unit(n, m, w);
            for _ in 0..2 {
                x = x.chain(&alg.braid_inv, 0, m - 1).chain_forward(&alg.braid_inv, 0, m - 1);
            }
            x
        });
        prev.kron(&letter).compose(&unbraid)
    }))
}

pub fn uv_action_block(model: &Model, m: usize) -> Result<Mat> {
    let b = model.blocks(BlockKey::UvCoproduct { m }, || {
        let map = uv_coproduct_free(model, m)?;
        Ok(vec![model.alg.block(Space::Single(m), Space::Single(m), &map)?])
    })?;
    Ok(b[0].clone())
}

/// `θ_v(w^⋆) = λ_ν^m w^*` on degree `m`.
fn theta_star_degree(model: &Model, m: usize) -> Result<Tally> {
    let lhs = theta_block(model, ThetaWhich::V, m)?.mul(&star_block(model, StarKind::Coordinate, m)?);
    let rhs = star_block(model, StarKind::Unitary, m)?.scale(&lambda_nu_pow(model, m)?);
    let mut t = Tally::new();
    t.mat(&lhs.sub(&rhs));
    Ok(t)
}

/// `(θ_v ∘ ⋆)^2 = uv ▷ S^4` on degree `m`, with `uv` acting through its coproduct.
fn theta_square_degree(model: &Model, m: usize, group_like: bool) -> Result<Tally> {
    let ts = theta_block(model, ThetaWhich::V, m)?.mul(&star_block(model, StarKind::Coordinate, m)?);
    let s = antipode_block(model, m)?;
    let s4 = s.pow(4);
    let uv = if group_like {
        theta_block(model, ThetaWhich::U, m)?.mul(&theta_block(model, ThetaWhich::V, m)?)
    } else {
        uv_action_block(model, m)?
    };
    let mut t = Tally::new();
    t.mat(&ts.mul(&ts).sub(&uv.mul(&s4)));
    Ok(t)
}

/// `θ_v ∘ S ∘ ⋆ = λ_ν^m (* ∘ S)` on degree `m`.
fn parity_degree(model: &Model, m: usize) -> Result<Tally> {
    let s = antipode_block(model, m)?;
    let lhs = theta_block(model, ThetaWhich::V, m)?.mul(&s).mul(&star_block(model, StarKind::Coordinate, m)?);
    let rhs = star_block(model, StarKind::Unitary, m)?.mul(&s).scale(&lambda_nu_pow(model, m)?);
    let mut t = Tally::new();
    t.mat(&lhs.sub(&rhs));
    Ok(t)
}

/// θ-star compatibility and the square identity on degrees `0..=max_degree`.
pub fn theta_star_consistency(model: &Model, max_degree: usize) -> Vec<SuiteEntry> {
    let mut out = per_degree("theta-star", "θ_v(w^⋆) = λ_ν^m w^*", 0..=max_degree, |m| theta_star_degree(model, m));
    out.extend(per_degree("theta-star-square", "(θ_v ∘ ⋆)^2 = uv ▷ S^4", 0..=max_degree, |m| {
        theta_square_degree(model, m, false)
    }));
    out
}

/// The square identity with `uv ▷` read as the group-like `θ_u ∘ θ_v`.
pub fn theta_square_grouplike(model: &Model, max_degree: usize) -> Vec<SuiteEntry> {
    per_degree("theta-star-square-grouplike", "(θ_v ∘ ⋆)^2 = θ_u θ_v S^4", 0..=max_degree, |m| {
        theta_square_degree(model, m, true)
    })
}

pub fn parity_consistency(model: &Model, max_degree: usize) -> Vec<SuiteEntry> {
    per_degree("parity-star", "θ_v S(b^⋆) = λ_ν^m (S b)^*", 0..=max_degree, |m| parity_degree(model, m))
}

/// `S^2(l)^A_B = v^A_a l^a_b (v^-1)^b_B` on the `λ`-free rotation blocks at degree `m`.
pub fn rotation_s2(model: &Model, m: usize, plus: bool) -> Result<Vec<Mat>> {
    let (v, _, _) = model.theta()?;
    let vi = v.inverse()?;
    let n = model.n();
    let l = rotation_blocks(model, m, plus)?;
    let d = l[0].rows();
    let mut out = vec![Mat::zeros(d, d); n * n];
    for ab in 0..n * n {
        let (a0, b0) = (ab / n, ab % n);
        for a in 0..n {
            for b in 0..n {
                let c = v.get(a0, a) * vi.get(b, b0);
                if !c.is_zero() {
                    out[ab].add_scaled(&l[a * n + b], &c);
                }
            }
        }
    }
    Ok(out)
}

/// `⋆ ∂^i = λ^(s(m-1)) η_ab S^2(l-)^a_i ∂̄^b ⋆` on degree `m`; `sign` picks `s`.
fn delstar_degree(model: &Model, m: usize, sign: i32) -> Result<Tally> {
    if model.spec.star_type != StarType::RealTypeI {
        return Err(Error::LayoutError("the derivative-star relation is stated for real type I".into()));
    }
    let n = model.n();
    let eta = model.eta()?;
    let d = partial_blocks(model, m, false)?;
    let db = partial_blocks(model, m, true)?;
    let (sc0, sc1) = (star_block(model, StarKind::Coordinate, m - 1)?, star_block(model, StarKind::Coordinate, m)?);
    let s2 = rotation_s2(model, m - 1, false)?;
    let k = 2 * (m as i32 - 1);
    let mut t = Tally::new();
    for i in 0..n {
        let lhs = WMat::plain(sc0.mul(&d[i]));
        let mut acc = Mat::zeros(lhs.shape().0, lhs.shape().1);
        for a in 0..n {
            for b in 0..n {
                if !eta.get(a, b).is_zero() {
                    acc.add_scaled(&s2[a * n + i].mul(&db[b]).mul(&sc1), eta.get(a, b));
                }
            }
        }
        // l- carries lambda^-(m-1); the prefactor adds sign*(m-1)
        let rhs = WMat::weighted(acc, sign * k - k);
        t.wmat(&lhs.sub(&rhs), &model.lambda);
    }
    Ok(t)
}

pub fn delstar_residual(model: &Model, max_degree: usize) -> Vec<SuiteEntry> {
    per_degree("derivative-star", "(∂^i f)^⋆ = λ^-ξ η_ab S^2 l-^a_i ∂̄^b f^⋆", 1..=max_degree, |m| {
        delstar_degree(model, m, -1)
    })
}

/// The same relation with the prefactor `λ^ξ` as written.
pub fn delstar_literal(model: &Model, max_degree: usize) -> Vec<SuiteEntry> {
    per_degree("derivative-star-literal", "(∂^i f)^⋆ = λ^ξ η_ab S^2 l-^a_i ∂̄^b f^⋆", 1..=max_degree, |m| {
        delstar_degree(model, m, 1)
    })
}

use super::cross::momenta;
use super::{dim, rotation};
use crate::braided_space::{FreeMap, FreeVec, Space};
use crate::error::Result;
use crate::linalg::Mat;
use crate::models::{BlockKey, Model};
use crate::report::{per_degree, SuiteEntry, Tally};
use crate::weight::WMat;

/// Action of the universal R-matrix on `V_m ⊗ V_k`, read off the braiding as `τ ∘ Ψ`.
pub fn universal_r_action(model: &Model, m: usize, k: usize) -> Result<Mat> {
    let b = model.blocks(BlockKey::RAction { m, k }, || {
        let alg = &model.alg;
        let n = alg.n();
        let psi = alg.psi_free(m, k);
        let map = FreeMap::from_fn(n, m + k, m + k, |w| psi.apply(&FreeVec::unit(n, m + k, w)).block_swap(k));
        Ok(vec![alg.block(Space::Pair(m, k), Space::Pair(m, k), &map)?])
    })?;
    Ok(b[0].clone())
}

fn r_inverse(model: &Model, m: usize, k: usize) -> Result<Mat> {
    universal_r_action(model, m, k)?.inverse()
}

/// Blocks of `l±^i_j` on degree `m`, weighted, at `i * n + j`.
fn rotations(model: &Model, m: usize, plus: bool) -> Result<Vec<WMat>> {
    let n = model.n();
    (0..n * n).map(|ij| rotation(model, ij / n, ij % n, m, plus)).collect()
}

fn rotation_twist(model: &Model, m: usize, k: usize, plus: bool) -> Result<Tally> {
    let n = model.n();
    let rin = WMat::plain(universal_r_action(model, m, k)?);
    let rinv = WMat::plain(r_inverse(model, m, k)?);
    let (lm, lk) = (rotations(model, m, plus)?, rotations(model, k, plus)?);
    let size = dim(model, m) * dim(model, k);
    let mut t = Tally::new();
    for i in 0..n {
        for j in 0..n {
            let mut bar = WMat::zeros(size, size);
            let mut flip = WMat::zeros(size, size);
            for a in 0..n {
                bar = bar.add(&lm[i * n + a].kron(&lk[a * n + j]));
                flip = flip.add(&lm[a * n + j].kron(&lk[i * n + a]));
            }
            t.wmat(&bar.sub(&rinv.mul(&flip).mul(&rin)), &model.lambda);
        }
    }
    Ok(t)
}

fn dilaton_twist(model: &Model, m: usize, k: usize) -> Result<Tally> {
    let size = dim(model, m) * dim(model, k);
    let d = WMat::mu_identity(size, 2 * (m + k) as i32);
    let rin = WMat::plain(universal_r_action(model, m, k)?);
    let rinv = WMat::plain(r_inverse(model, m, k)?);
    let mut t = Tally::new();
    t.wmat(&d.sub(&rinv.mul(&d).mul(&rin)), &model.lambda);
    Ok(t)
}

/// `Δ̄p = p ⊗ 1 + λ^-ξ l+ ⊗ p` against `R^-1 (1 ⊗ p + p ⊗ λ^ξ l-) R`, split by output component.
fn momentum_twist(model: &Model, m: usize, k: usize) -> Result<Tally> {
    let n = model.n();
    let rin = WMat::plain(universal_r_action(model, m, k)?);
    let (dm, dk) = (dim(model, m), dim(model, k));
    let mut t = Tally::new();
    if m > 0 {
        let pm = momenta(model, m)?;
        let lkm = rotations(model, k, false)?;
        let rinv = WMat::plain(r_inverse(model, m - 1, k)?);
        let idk = WMat::identity(dk);
        for i in 0..n {
            let a_bar = WMat::plain(pm[i].clone()).kron(&idk);
            let mut a_t = WMat::zeros((dim(model, m - 1)) * dk, dm * dk);
            for a in 0..n {
                a_t = a_t.add(&WMat::plain(pm[a].clone()).kron(&lkm[i * n + a].shift(2 * k as i32)));
            }
            t.wmat(&a_bar.sub(&rinv.mul(&a_t).mul(&rin)), &model.lambda);
        }
    }
    if k > 0 {
        let pk = momenta(model, k)?;
        let lmp = rotations(model, m, true)?;
        let rinv = WMat::plain(r_inverse(model, m, k - 1)?);
        let idm = WMat::identity(dm);
        for i in 0..n {
            let mut b_bar = WMat::zeros(dm * dim(model, k - 1), dm * dk);
            for a in 0..n {
                b_bar = b_bar.add(&lmp[i * n + a].shift(-2 * m as i32).kron(&WMat::plain(pk[a].clone())));
            }
            let b_t = idm.kron(&WMat::plain(pk[i].clone()));
            t.wmat(&b_bar.sub(&rinv.mul(&b_t).mul(&rin)), &model.lambda);
        }
    }
    Ok(t)
}

fn over_splits(tot: usize, f: impl Fn(usize, usize) -> Result<Tally>) -> Result<Tally> {
    let mut t = Tally::new();
    for m in 0..=tot {
        t.merge(f(m, tot - m)?);
    }
    Ok(t)
}

/// Twisting of the conjugate coproduct by the universal R-matrix on `V_m ⊗ V_k`, reported
/// per total degree `m + k <= max_total`.
pub fn twisting_residual(model: &Model, max_total: usize) -> Vec<SuiteEntry> {
    let mut out = Vec::new();
    out.extend(per_degree("twist-lplus", "Δ̄ l+ = R^-1 (τ Δ l+) R", 0..=max_total, |tot| {
        over_splits(tot, |m, k| rotation_twist(model, m, k, true))
    }));
    out.extend(per_degree("twist-lminus", "Δ̄ l- = R^-1 (τ Δ l-) R", 0..=max_total, |tot| {
        over_splits(tot, |m, k| rotation_twist(model, m, k, false))
    }));
    out.extend(per_degree("twist-dilaton", "Δ̄ λ^ξ = R^-1 (τ Δ λ^ξ) R", 0..=max_total, |tot| {
        over_splits(tot, |m, k| dilaton_twist(model, m, k))
    }));
    out.extend(per_degree("twist-momentum", "p ⊗ 1 + λ^-ξ l+ ⊗ p = R^-1 (1 ⊗ p + p ⊗ λ^ξ l-) R", 1..=max_total, |tot| {
        over_splits(tot, |m, k| momentum_twist(model, m, k))
    }));
    out
}

//! Spinorial generators `l±`, `m±` of the 4-dimensional models, acting on `x^k_l`
//! (flattened `2k + l`) through the 2-dimensional seed.

use std::sync::Arc;

use crate::braided_space::{FreeMap, FreeVec, LocalOp, Space};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::models::{BlockKey, Layout, Model};
use crate::rmatrix::RMatrix;
use crate::scalars::QScalar;
use crate::weight::WMat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SpinorGen {
    L,
    M,
}

fn idx(k: usize, l: usize) -> usize {
    2 * k + l
}

/// Degree-1 matrices, stored at `2i + j`.
fn degree_one(seed: &RMatrix, seed_inv: &RMatrix, gen: SpinorGen, plus: bool) -> Vec<Mat> {
    let mut out = vec![Mat::zeros(4, 4); 4];
    for i in 0..2 {
        for j in 0..2 {
            let m = &mut out[2 * i + j];
            for k in 0..2 {
                for l in 0..2 {
                    for b in 0..2 {
                        match gen {
                            SpinorGen::L => {
                                let c = if plus { seed_inv.get(k, b, i, j) } else { seed.get(i, j, k, b) };
                                m.add_at(idx(b, l), idx(k, l), c);
                            }
                            SpinorGen::M => {
                                let c = if plus { seed.get(b, l, i, j) } else { seed_inv.get(i, j, b, l) };
                                m.add_at(idx(k, b), idx(k, l), c);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// The two-slot twist `x^k_l ⊗ x^k'_l' -> R^b_l^k'_b' x^k_b ⊗ x^b'_l'`.
fn twist_tensor(seed: &RMatrix) -> RMatrix {
    let mut t = RMatrix::zeros(4);
    for k in 0..2 {
        for l in 0..2 {
            for kp in 0..2 {
                for lp in 0..2 {
                    for b1 in 0..2 {
                        for bp in 0..2 {
                            let (i, j, kk, ll) = (idx(k, b1), idx(k, l), idx(bp, lp), idx(kp, lp));
                            let cur = t.get(i, j, kk, ll) + seed.get(b1, l, kp, bp);
                            t.set(i, j, kk, ll, cur);
                        }
                    }
                }
            }
        }
    }
    t
}

fn free_tensor_power(one: &[Mat], m: usize) -> Vec<FreeMap> {
    let letters: Vec<FreeMap> = one.iter().map(FreeMap::letter).collect();
    let mut cur: Vec<FreeMap> = (0..4)
        .map(|ij| {
            let map = FreeMap::identity(4, 0);
            if ij / 2 == ij % 2 {
                map
            } else {
                map.scale(&QScalar::zero())
            }
        })
        .collect();
    for _ in 0..m {
        cur = (0..4)
            .map(|ij| {
                let (i, j) = (ij / 2, ij % 2);
                letters[2 * i].kron(&cur[j]).add(&letters[2 * i + 1].kron(&cur[2 + j]))
            })
            .collect();
    }
    cur
}

/// The `lambda`-free part of a spinor generator on degree `m`, at `2i + j`. Minkowski
/// blocks are conjugated by the twist `F_m`.
pub fn spinor_blocks(model: &Model, m: usize, gen: SpinorGen, plus: bool) -> Result<Arc<Vec<Mat>>> {
    let layout = model.layout();
    if layout == Layout::Vector {
        return Err(Error::LayoutError(format!("{} has no spinor decomposition", model.name())));
    }
    let g = match gen {
        SpinorGen::L => 0,
        SpinorGen::M => 1,
    };
    model.blocks(BlockKey::Spinor { m, gen: g, plus }, || {
        let seed = model.seed()?.clone();
        let seed_inv = seed.inverse()?;
        let mut maps = free_tensor_power(&degree_one(&seed, &seed_inv, gen, plus), m);
        if layout == Layout::MatrixMinkowski && m >= 2 {
            let chi = twist_tensor(&seed);
            let (f, fi) = (LocalOp::new(&chi), LocalOp::new(&chi.inverse()?));
            let fwd = FreeMap::from_fn(4, m, m, |w| {
                let mut v = FreeVec::unit(4, m, w);
                for b in (1..m).rev() {
                    for a in 0..b {
                        v = f.apply_at(&v, a, b);
                    }
                }
                v
            });
            let back = FreeMap::from_fn(4, m, m, |w| {
                let mut v = FreeVec::unit(4, m, w);
                for b in 1..m {
                    for a in (0..b).rev() {
                        v = fi.apply_at(&v, a, b);
                    }
                }
                v
            });
            maps = maps.iter().map(|l| fwd.compose(&l.compose(&back))).collect();
        }
        maps.iter().map(|l| model.alg.block(Space::Single(m), Space::Single(m), l)).collect()
    })
}

/// `mu` power of a spinor generator on degree `m`.
pub fn spinor_weight(gen: SpinorGen, plus: bool, m: usize) -> i32 {
    let m = m as i32;
    match (gen, plus) {
        (SpinorGen::L, true) | (SpinorGen::M, false) => -m,
        _ => m,
    }
}

pub fn spinor(model: &Model, i: usize, j: usize, m: usize, gen: SpinorGen, plus: bool) -> Result<WMat> {
    Ok(WMat::weighted(spinor_blocks(model, m, gen, plus)?[2 * i + j].clone(), spinor_weight(gen, plus, m)))
}

/// `S(L)^i_j`, defined by `sum_a S(L^i_a) L^a_j = δ`: the inverse of the block matrix.
pub fn block_inverse(l: &[Mat]) -> Result<Vec<Mat>> {
    let k = (l.len() as f64).sqrt() as usize;
    let d = l[0].rows();
    let big = Mat::from_fn(k * d, k * d, |r, c| l[(r / d) * k + c / d].get(r % d, c % d).clone());
    let inv = big.inverse()?;
    Ok((0..k * k).map(|ij| Mat::from_fn(d, d, |r, c| inv.get((ij / k) * d + r, (ij % k) * d + c).clone())).collect())
}

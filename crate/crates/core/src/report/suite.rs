use std::time::Instant;

use num_rational::BigRational;

use super::{per_degree, ReportConfig, SuiteEntry, Tally, VerificationReport};
use crate::braided_space::Space;
use crate::error::Result;
use crate::integration::{adjointness_residual, conj_symmetry_residual, moment_residual, nondegeneracy, FormConfig};
use crate::linalg::Mat;
use crate::models::{build_model, Model, StarType};
use crate::operators::{
    antipode_block, cross_relation_residual, intertwiner_residual, leibniz_residual, mult_blocks, partial_blocks,
    rotation_blocks, twisting_residual, LeibnizVariant,
};
use crate::rmatrix::{hecke_check, metric_residuals, mixed_relations_residual, qybe_residual};
use crate::scalars::QScalar;
use crate::star_metric::{delstar_residual, parity_consistency, star_block, theta_star_consistency, StarKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_degree: usize,
    pub lambda_nu: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_degree: 3, lambda_nu: true }
    }
}

fn single(identity: &str, anchor: &str, degree: usize, r: Result<Tally>) -> SuiteEntry {
    match r {
        Ok(t) => t.entry(identity, anchor, degree),
        Err(e) => SuiteEntry::failed(identity, anchor, degree, &e),
    }
}

/// QYBE, Hecke condition, the `(R', R)` compatibility equations and the two metric identities.
pub fn structural_battery(model: &Model) -> Vec<SuiteEntry> {
    let spec = &model.spec;
    let mut out = Vec::new();
    out.push(single("qybe", "R12 R13 R23 = R23 R13 R12", 3, {
        let mut t = Tally::new();
        t.mat(&qybe_residual(&spec.r));
        Ok(t)
    }));
    let seed = spec.seed.as_ref().unwrap_or(&spec.r);
    let hecke = hecke_check(seed);
    out.push(SuiteEntry::new(
        "hecke",
        "(PR - q^2)(PR + 1) = 0",
        2,
        if hecke.holds { "0".into() } else { "no quadratic minimal polynomial".into() },
    ));
    let names = [
        ("mixed-r-prime-first", "R'12 R13 R23 = R23 R13 R'12"),
        ("mixed-r-prime-second", "R12 R13 R'23 = R'23 R13 R12"),
        ("mixed-qybe", "R12 R13 R23 = R23 R13 R12"),
        ("mixed-hecke", "(PR + 1)(PR' - 1) = 0"),
    ];
    match mixed_relations_residual(&spec.r_prime, &spec.r) {
        Ok(res) => {
            for ((id, anchor), m) in names.iter().zip(res) {
                let mut t = Tally::new();
                t.mat(&m);
                out.push(t.entry(id, anchor, 3));
            }
        }
        Err(e) => out.extend(names.iter().map(|(id, anchor)| SuiteEntry::failed(id, anchor, 3, &e))),
    }
    let metric = [
        ("metric-lower", "η_ia R^-1^a_j^k_l = λ^2 R^a_i^k_l η_aj"),
        ("metric-upper", "η_ka R^i_j^a_l = λ^-2 R^-1^i_j^a_k η_al"),
    ];
    let res = model.eta().and_then(|eta| metric_residuals(&spec.r, eta, model.lambda_sq()?));
    for (parity, (id, anchor)) in metric.iter().enumerate() {
        out.push(single(id, anchor, 2, res.clone().map(|v| {
            let mut t = Tally::new();
            v.iter().skip(parity).step_by(2).for_each(|x| t.scalar(x));
            t
        })));
    }
    out
}

/// Every structure map used by the suites descends to the quotient, per degree.
pub fn well_definedness(model: &Model, max_degree: usize) -> Vec<SuiteEntry> {
    per_degree("well-defined", "operators preserve the relation ideal", 0..=max_degree, |m| {
        if m > 0 {
            partial_blocks(model, m, false)?;
            partial_blocks(model, m, true)?;
        }
        rotation_blocks(model, m, true)?;
        rotation_blocks(model, m, false)?;
        mult_blocks(model, m)?;
        antipode_block(model, m)?;
        if model.eta().is_ok() {
            star_block(model, StarKind::Coordinate, m)?;
            star_block(model, StarKind::Unitary, m)?;
        }
        Ok(Tally::new())
    })
}

fn at_one(m: &Mat, t: &mut Tally) -> Result<()> {
    let one = BigRational::from_integer(1.into());
    for v in m.specialize(&one)? {
        t.scalar(&QScalar::from_ratio(&v));
    }
    Ok(())
}

/// At `q = 1`: the algebra is commutative, `∂ = ∂̄` and the antipode is `(-1)^m`, per degree.
pub fn classical_limit(model: &Model, max_degree: usize) -> Vec<SuiteEntry> {
    let alg = &model.alg;
    let n = model.n();
    let mut out = per_degree("classical-commutative", "x_i x_j = x_j x_i at q = 1", 2..=max_degree, |m| {
        let prod = alg.product(m - 1, 1)?;
        let d = alg.dim(Space::Single(m - 1));
        let mut t = Tally::new();
        for i in 0..n {
            let right = prod.mul(&Mat::from_fn(d * n, d, |r, c| if r == c * n + i { QScalar::one() } else { QScalar::zero() }));
            at_one(&alg.left_mult(i, m - 1)?.sub(&right), &mut t)?;
        }
        Ok(t)
    });
    out.extend(per_degree("classical-derivatives", "∂ = ∂̄ at q = 1", 1..=max_degree, |m| {
        let (d, dbar) = (partial_blocks(model, m, false)?, partial_blocks(model, m, true)?);
        let mut t = Tally::new();
        for (a, b) in d.iter().zip(dbar.iter()) {
            at_one(&a.sub(b), &mut t)?;
        }
        Ok(t)
    }));
    out.extend(per_degree("classical-antipode", "S = (-1)^m at q = 1", 0..=max_degree, |m| {
        let sign = if m % 2 == 0 { QScalar::one() } else { QScalar::from_int(-1) };
        let s = antipode_block(model, m)?;
        let mut t = Tally::new();
        at_one(&s.sub(&Mat::scalar(s.rows(), &sign)), &mut t)?;
        Ok(t)
    }));
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim V_m = C(n + m - 1, m)`.
pub fn flatness(model: &Model, max_degree: usize) -> Vec<SuiteEntry> {
    let n = model.n();
    per_degree("flatness", "dim V_m = C(n+m-1, m)", 0..=max_degree, |m| {
        let (got, want) = (model.alg.dim(Space::Single(m)), binomial(n + m - 1, m));
        let mut t = Tally::new();
        if got != want {
            t.scalar(&QScalar::from_int(got as i64 - want as i64));
        }
        Ok(t)
    })
}

fn timed(timings: &mut Vec<(String, f64)>, entries: &mut Vec<SuiteEntry>, name: &str, f: impl FnOnce() -> Vec<SuiteEntry>) {
    let t = Instant::now();
    entries.extend(f());
    timings.push((name.to_string(), t.elapsed().as_secs_f64()));
}

/// Runs the full identity suite on a built model.
pub fn run_suite(model: &Model, cfg: SuiteConfig) -> VerificationReport {
    let d = cfg.max_degree;
    let form = FormConfig { lambda_nu: cfg.lambda_nu };
    let mut entries = Vec::new();
    let mut timings = Vec::new();
    timed(&mut timings, &mut entries, "structure", || structural_battery(model));
    timed(&mut timings, &mut entries, "well-defined", || well_definedness(model, d));
    timed(&mut timings, &mut entries, "leibniz", || {
        let variants = [LeibnizVariant::Leib, LeibnizVariant::LowLeib, LeibnizVariant::EucDif, LeibnizVariant::MinkDif];
        variants
            .into_iter()
            .filter(|v| v.applies_to(model.layout()))
            .flat_map(|v| match leibniz_residual(model, v, d) {
                Ok(e) => e,
                Err(e) => vec![SuiteEntry::failed(crate::operators::leibniz_identity(v), "", 0, &e)],
            })
            .collect()
    });
    timed(&mut timings, &mut entries, "intertwiner", || intertwiner_residual(model, d));
    timed(&mut timings, &mut entries, "cross", || cross_relation_residual(model, d));
    timed(&mut timings, &mut entries, "twist", || twisting_residual(model, d));
    timed(&mut timings, &mut entries, "theta-star", || {
        let mut e = theta_star_consistency(model, d);
        e.extend(parity_consistency(model, d));
        if matches!(model.spec.star_type, StarType::RealTypeI) {
            e.extend(delstar_residual(model, d));
        }
        e
    });
    timed(&mut timings, &mut entries, "moments", || moment_residual(model, d));
    timed(&mut timings, &mut entries, "adjointness", || adjointness_residual(model, d, form));
    timed(&mut timings, &mut entries, "conjugation", || {
        let mut e = conj_symmetry_residual(model, d, form);
        e.extend(nondegeneracy(model, d, form));
        e
    });
    VerificationReport {
        model: model.name().to_string(),
        config: ReportConfig { max_degree: d, lambda_nu: cfg.lambda_nu },
        entries,
        timings,
    }
}

/// Builds the named model and runs [`run_suite`] on it.
pub fn run_verify_suite(name: &str, cfg: SuiteConfig) -> Result<VerificationReport> {
    Ok(run_suite(&build_model(name)?, cfg))
}

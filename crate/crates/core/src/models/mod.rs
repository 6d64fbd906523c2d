//! Built-in models and the runtime bundle that carries their caches.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::braided_space::{CovectorAlgebra, FreeMap};
use crate::cache::OnceMap;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rmatrix::{
    assemble_big_matrices, hecke_check, metric_residuals, mixed_relations_residual, qybe_residual,
    solve_metric_and_lambda, theta_matrices, BigLayout, RMatrix,
};
use crate::scalars::QScalar;
use crate::weight::LambdaField;

pub const BUILTIN_MODELS: [&str; 4] = ["quantum_plane:2", "quantum_plane:3", "q_euclidean_4", "q_minkowski_4"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layout {
    Vector,
    MatrixEuclidean,
    MatrixMinkowski,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StarType {
    RealTypeI,
    /// Type II reality with the index involution `bar`.
    RealTypeII { bar: Vec<usize> },
}

impl StarType {
    pub fn bar(&self, i: usize) -> usize {
        match self {
            StarType::RealTypeI => i,
            StarType::RealTypeII { bar } => bar[i],
        }
    }
}

/// Serializable data of one braided covector model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub name: String,
    pub n: usize,
    pub layout: Layout,
    pub r: RMatrix,
    pub r_prime: RMatrix,
    /// The 2-dimensional seed with `PR` roots `q, -q^-1`, for the matrix layouts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<RMatrix>,
    pub eta: Option<Mat>,
    pub lambda_sq: Option<QScalar>,
    /// `lambda` itself when it lies in `Q(q)`.
    pub lambda: Option<QScalar>,
    pub v: Option<Mat>,
    pub u: Option<Mat>,
    pub lambda_nu: Option<QScalar>,
    pub star_type: StarType,
    /// Why `eta` is absent, if it is.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric_error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum BlockKey {
    Partial { m: usize, conj: bool },
    Rotation { m: usize, plus: bool },
    Mult { m: usize },
    Antipode { m: usize },
    ThetaV { m: usize },
    ThetaU { m: usize },
    StarCoord { m: usize },
    StarUnitary { m: usize },
    UvCoproduct { m: usize },
    PsiInsert { m: usize },
    RAction { m: usize, k: usize },
    Spinor { m: usize, gen: u8, plus: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum FreeKey {
    UvCoproduct { m: usize },
}

type Blocks = Result<Arc<Vec<Mat>>>;

/// A validated model together with its quotient algebra and memoized operator blocks.
pub struct Model {
    pub spec: ModelSpec,
    pub alg: CovectorAlgebra,
    pub lambda: LambdaField,
    eta_upper: Option<Mat>,
    blocks: OnceMap<BlockKey, Blocks>,
    free: OnceMap<FreeKey, Arc<FreeMap>>,
    pub(crate) moments: OnceMap<usize, Result<Arc<Vec<QScalar>>>>,
}

impl std::fmt::Debug for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Model").field("name", &self.spec.name).field("n", &self.spec.n).finish_non_exhaustive()
    }
}

impl Model {
    /// Validates `spec` and sets up the algebra.
    pub fn new(spec: ModelSpec) -> Result<Self> {
        validate(&spec)?;
        let alg = CovectorAlgebra::new(&spec.r_prime, &spec.r)?;
        let lambda = match &spec.lambda_sq {
            None => LambdaField::formal(),
            Some(l2) => match l2.as_monomial() {
                Some((c, e)) if c == num_rational::BigRational::from_integer(1.into()) => LambdaField::with_lambda_sq(e),
                _ => return Err(Error::LambdaNotRational(format!("lambda^2 = {l2} is not a monic monomial"))),
            },
        };
        let eta_upper = match &spec.eta {
            Some(e) => Some(e.inverse()?.transpose()),
            None => None,
        };
        Ok(Model { spec, alg, lambda, eta_upper, blocks: OnceMap::new(), free: OnceMap::new(), moments: OnceMap::new() })
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn layout(&self) -> Layout {
        self.spec.layout
    }

    /// `eta_ij`.
    pub fn eta(&self) -> Result<&Mat> {
        self.spec.eta.as_ref().ok_or(Error::NoMetric)
    }

    /// `eta^ij`, the inverse transpose of `eta_ij`.
    pub fn eta_upper(&self) -> Result<&Mat> {
        self.eta_upper.as_ref().ok_or(Error::NoMetric)
    }

    pub fn lambda_sq(&self) -> Result<&QScalar> {
        self.spec.lambda_sq.as_ref().ok_or(Error::NoMetric)
    }

    pub fn theta(&self) -> Result<(&Mat, &Mat, &QScalar)> {
        match (&self.spec.v, &self.spec.u, &self.spec.lambda_nu) {
            (Some(v), Some(u), Some(l)) => Ok((v, u, l)),
            _ => Err(Error::NotRibbonScalar),
        }
    }

    pub fn seed(&self) -> Result<&RMatrix> {
        self.spec.seed.as_ref().ok_or_else(|| Error::LayoutError(format!("{} has no 2-dimensional seed", self.spec.name)))
    }

    pub(crate) fn blocks(&self, key: BlockKey, f: impl FnOnce() -> Result<Vec<Mat>>) -> Blocks {
        self.blocks.get_or_init(key, || f().map(Arc::new))
    }

    pub(crate) fn free_map(&self, key: FreeKey, f: impl FnOnce() -> FreeMap) -> Arc<FreeMap> {
        self.free.get_or_init(key, || Arc::new(f()))
    }
}

fn first_nonzero(ms: &[Mat]) -> Option<String> {
    ms.iter().find_map(|m| m.max_entry().map(|e| e.to_string()))
}

/// The construction-time gate: R-matrix identities, Hecke seed, metric and ribbon data.
pub fn validate(spec: &ModelSpec) -> Result<()> {
    let fail = |what: &str, res: String| Err(Error::ModelValidation(format!("{}: {what} residual {res}", spec.name)));
    if spec.r.n() != spec.n || spec.r_prime.n() != spec.n {
        return Err(Error::DimensionError(format!("{}: matrices do not have n = {}", spec.name, spec.n)));
    }
    if let Some(e) = first_nonzero(&[qybe_residual(&spec.r)]) {
        return fail("QYBE", e);
    }
    if let Some(e) = first_nonzero(&mixed_relations_residual(&spec.r_prime, &spec.r)?) {
        return fail("R'R compatibility", e);
    }
    let hecke_target = spec.seed.as_ref().unwrap_or(&spec.r);
    if !hecke_check(hecke_target).holds {
        return Err(Error::ModelValidation(format!("{}: seed is not q-Hecke", spec.name)));
    }
    if let (Some(eta), Some(l2)) = (&spec.eta, &spec.lambda_sq) {
        let res = metric_residuals(&spec.r, eta, l2)?;
        if let Some(e) = res.iter().find(|x| !x.is_zero()) {
            return fail("metric", e.to_string());
        }
    }
    if let (Some(v), Some(u), Some(l)) = (&spec.v, &spec.u, &spec.lambda_nu) {
        if u.mul(v) != Mat::scalar(spec.n, &(l * l)) {
            return fail("uv = lambda_nu^2", "nonscalar".into());
        }
    }
    Ok(())
}

fn fill_metric_and_theta(spec: &mut ModelSpec) -> Result<()> {
    match solve_metric_and_lambda(&spec.r) {
        Ok(sol) => {
            let e = sol.lambda_sq.as_monomial().map(|(_, e)| e).expect("monomial lambda^2");
            spec.lambda = LambdaField::with_lambda_sq(e).lambda();
            spec.eta = Some(sol.eta);
            spec.lambda_sq = Some(sol.lambda_sq);
        }
        Err(err @ (Error::NoMetric | Error::AmbiguousMetric(_))) => spec.metric_error = Some(err.to_string()),
        Err(err) => return Err(err),
    }
    let th = theta_matrices(&spec.r, &QScalar::one())?;
    spec.v = Some(th.v);
    spec.u = Some(th.u);
    spec.lambda_nu = Some(th.lambda_nu);
    Ok(())
}

fn bare_spec(name: &str, n: usize, layout: Layout, r: RMatrix, r_prime: RMatrix, star_type: StarType) -> ModelSpec {
    ModelSpec {
        name: name.to_string(),
        n,
        layout,
        r,
        r_prime,
        seed: None,
        eta: None,
        lambda_sq: None,
        lambda: None,
        v: None,
        u: None,
        lambda_nu: None,
        star_type,
        metric_error: None,
    }
}

/// Builds and validates a built-in model by name.
pub fn build_model_spec(name: &str) -> Result<ModelSpec> {
    let seed = RMatrix::frt(2).scale(&QScalar::q());
    let mut spec = match name {
        "quantum_plane:2" | "quantum_plane:3" => {
            let n = if name.ends_with('2') { 2 } else { 3 };
            let r = RMatrix::frt(n).scale(&QScalar::q());
            let rp = r.scale(&QScalar::q_pow(-2));
            bare_spec(name, n, Layout::Vector, r, rp, StarType::RealTypeI)
        }
        "q_euclidean_4" | "q_minkowski_4" => {
            let (layout, big, star) = if name == "q_euclidean_4" {
                (Layout::MatrixEuclidean, BigLayout::Euclidean, StarType::RealTypeI)
            } else {
                (Layout::MatrixMinkowski, BigLayout::Minkowski, StarType::RealTypeII { bar: vec![0, 2, 1, 3] })
            };
            let (rp, r) = assemble_big_matrices(&seed, big)?;
            let mut s = bare_spec(name, 4, layout, r, rp, star);
            s.seed = Some(RMatrix::frt(2));
            s
        }
        _ => return Err(Error::UnknownModel(name.to_string())),
    };
    fill_metric_and_theta(&mut spec)?;
    validate(&spec)?;
    Ok(spec)
}

pub fn build_model(name: &str) -> Result<Model> {
    Model::new(build_model_spec(name)?)
}

/// A vector-layout model from an R-matrix in the JSON file format.
///
/// Without an explicit `R'`, `R` must be Hecke with one root `-1` and `R' = R / alpha`
/// for the other root `alpha`.
pub fn load_custom_model(name: &str, r_json: &str, r_prime_json: Option<&str>) -> Result<Model> {
    let r = RMatrix::from_json(r_json)?;
    let rp = match r_prime_json {
        Some(s) => RMatrix::from_json(s)?,
        None => {
            let h = hecke_check(&r);
            let minus_one = -QScalar::one();
            let alpha = match h.eigenvalues {
                Some((a, b)) if h.holds && b == minus_one => a,
                Some((a, b)) if h.holds && a == minus_one => b,
                _ => return Err(Error::ModelValidation(format!("{name}: R' not given and PR has no root -1"))),
            };
            r.scale(&alpha.inv()?)
        }
    };
    let n = r.n();
    if rp.n() != n {
        return Err(Error::DimensionError(format!("R has n = {n}, R' has n = {}", rp.n())));
    }
    let mut spec = bare_spec(name, n, Layout::Vector, r, rp, StarType::RealTypeI);
    match fill_metric_and_theta(&mut spec) {
        Ok(()) | Err(Error::NotRibbonScalar | Error::NoCanonicalRoot(_) | Error::SingularSecondInverse) => {}
        Err(e) => return Err(e),
    }
    Model::new(spec)
}

pub fn spec_to_json(spec: &ModelSpec) -> String {
    serde_json::to_string_pretty(spec).expect("serializable")
}

pub fn spec_from_json(s: &str) -> Result<ModelSpec> {
    serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))
}

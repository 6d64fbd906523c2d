use super::RMatrix;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalars::QScalar;

/// Exponent window for the monomial candidates `lambda^2 = q^e`.
pub const LAMBDA_SQ_RANGE: std::ops::RangeInclusive<i32> = -8..=8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricSolution {
    pub eta: Mat,
    pub lambda_sq: QScalar,
}

/// Linear system in the entries `eta_(i,a) -> column i*n + a` expressing
/// `eta_ia Ri^a_j^k_l = lambda^2 R^a_i^k_l eta_aj` and
/// `eta_ka R^i_j^a_l = lambda^-2 Ri^i_j^a_k eta_al`, with `Ri = R^-1`.
pub fn metric_system(r: &RMatrix, ri: &RMatrix, lambda_sq: &QScalar) -> Result<Mat> {
    let n = r.n();
    let inv_sq = lambda_sq.inv()?;
    let mut sys = Mat::zeros(2 * n.pow(4), n * n);
    let mut row = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for a in 0..n {
                        sys.add_at(row, i * n + a, ri.get(a, j, k, l));
                        sys.add_at(row, a * n + j, &-(lambda_sq * r.get(a, i, k, l)));
                        sys.add_at(row + 1, k * n + a, r.get(i, j, a, l));
                        sys.add_at(row + 1, a * n + l, &-(&inv_sq * ri.get(i, j, a, k)));
                    }
                    row += 2;
                }
            }
        }
    }
    Ok(sys)
}

/// Both metric identities evaluated at `(eta, lambda^2)`; zero iff they hold.
pub fn metric_residuals(r: &RMatrix, eta: &Mat, lambda_sq: &QScalar) -> Result<Vec<QScalar>> {
    let ri = r.inverse()?;
    let sys = metric_system(r, &ri, lambda_sq)?;
    let flat: Vec<QScalar> = (0..eta.rows()).flat_map(|i| eta.row(i).to_vec()).collect();
    Ok(sys.mul_vec(&flat))
}

/// Scans `lambda^2 = q^e` over [`LAMBDA_SQ_RANGE`] for invertible solutions `eta`.
///
/// The returned `eta` is scaled so that its first nonzero entry in row-major order is 1.
pub fn solve_metric_and_lambda(r: &RMatrix) -> Result<MetricSolution> {
    let n = r.n();
    let ri = r.inverse()?;
    let mut found = Vec::new();
    for e in LAMBDA_SQ_RANGE {
        let l2 = QScalar::q_pow(e);
        let ns = metric_system(r, &ri, &l2)?.nullspace();
        if ns.is_empty() {
            continue;
        }
        if ns.len() > 1 {
            return Err(Error::AmbiguousMetric(format!("{}-dimensional solution space at lambda^2 = {l2}", ns.len())));
        }
        let v = &ns[0];
        let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero null vector").inv()?;
        let eta = Mat::from_fn(n, n, |i, j| &v[i * n + j] * &lead);
        if eta.inverse().is_ok() {
            found.push(MetricSolution { eta, lambda_sq: l2 });
        }
    }
    match found.len() {
        0 => Err(Error::NoMetric),
        1 => Ok(found.pop().expect("one solution")),
        _ => Err(Error::AmbiguousMetric(
            found.iter().map(|s| s.lambda_sq.to_string()).collect::<Vec<_>>().join(", "),
        )),
    }
}

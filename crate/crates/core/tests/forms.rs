use std::collections::BTreeMap;

use braidkit::braided_space::{NormalElement, Space};
use braidkit::integration::{
    adjointness_residual, conj_symmetry_residual, gram, moments, nondegeneracy, parity_inner_form,
    parity_selfadjoint_literal, sesquilinear, FormConfig,
};
use braidkit::models::{build_model, StarType};
use braidkit::star_metric::{star_matrix, StarKind};
use braidkit::{Model, QScalar};
use proptest::prelude::*;

const CFG: FormConfig = FormConfig { lambda_nu: true };

fn unit(model: &Model, m: usize, p: usize) -> NormalElement {
    let d = model.alg.dim(Space::Single(m));
    let mut v = vec![QScalar::zero(); d];
    v[p] = QScalar::one();
    NormalElement::homogeneous(model.name(), model.n(), m, v)
}

fn all_pass(entries: &[braidkit::report::SuiteEntry]) -> Result<(), String> {
    match entries.iter().find(|e| !e.passed()) {
        Some(e) => Err(format!("{} degree {}: {}", e.identity, e.degree, e.residual)),
        None => Ok(()),
    }
}

#[test]
fn unit_pairings() {
    for name in ["q_euclidean_4", "q_minkowski_4", "quantum_plane:2"] {
        let m = build_model(name).unwrap();
        let one = NormalElement::homogeneous(m.name(), m.n(), 0, vec![QScalar::one()]);
        assert_eq!(sesquilinear(&m, &one, &one, CFG).unwrap(), QScalar::one());
        assert_eq!(parity_inner_form(&m, &one, &one, CFG).unwrap(), QScalar::one());
        for i in 0..m.n() {
            assert!(sesquilinear(&m, &unit(&m, 1, i), &one, CFG).unwrap().is_zero());
        }
    }
}

#[test]
fn degree_one_pairing_through_quadratic_moment() {
    for name in ["q_euclidean_4", "q_minkowski_4"] {
        let m = build_model(name).unwrap();
        let n = m.n();
        let z2 = moments(&m, 2).unwrap();
        let nu = m.theta().unwrap().2.clone();
        let eta_inv = m.eta().unwrap().inverse().unwrap();
        for i in 0..n {
            // x_i^* = sum_a c_a x_a
            let coeff: Vec<QScalar> = match &m.spec.star_type {
                // eta^ai = (eta^-1)_ia
                StarType::RealTypeI => (0..n).map(|a| eta_inv.get(i, a).clone()).collect(),
                StarType::RealTypeII { bar } => {
                    (0..n).map(|a| if a == bar[i] { QScalar::one() } else { QScalar::zero() }).collect()
                }
            };
            for j in 0..n {
                let want: QScalar = (0..n).map(|a| coeff[a].conjugate() * &z2[a * n + j]).sum::<QScalar>() * &nu;
                let got = sesquilinear(&m, &unit(&m, 1, i), &unit(&m, 1, j), CFG).unwrap();
                assert_eq!(got, want, "{name} ({i}, {j})");
            }
        }
    }
}

#[test]
fn parity_form_degree_one_on_plane() {
    let m = build_model("quantum_plane:2").unwrap();
    let n = m.n();
    let z2 = moments(&m, 2).unwrap();
    let (v, _, nu) = m.theta().unwrap();
    let sc = star_matrix(&m, StarKind::Coordinate).unwrap();
    for i in 0..n {
        for j in 0..n {
            let mut want = QScalar::zero();
            for a in 0..n {
                for b in 0..n {
                    want -= sc.get(a, i) * v.get(b, a) * &z2[b * n + j];
                }
            }
            want = want * nu;
            assert_eq!(parity_inner_form(&m, &unit(&m, 1, i), &unit(&m, 1, j), CFG).unwrap(), want);
        }
    }
}

#[test]
fn adjointness_on_four_dim_models() {
    for name in ["q_euclidean_4", "q_minkowski_4"] {
        let m = build_model(name).unwrap();
        all_pass(&adjointness_residual(&m, 4, CFG)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn adjointness_needs_the_degree_factor() {
    let m = build_model("q_euclidean_4").unwrap();
    let res = adjointness_residual(&m, 2, FormConfig { lambda_nu: false });
    assert!(res.iter().any(|e| !e.passed()));
}

#[test]
fn conjugation_symmetry() {
    for name in ["q_euclidean_4", "q_minkowski_4"] {
        let m = build_model(name).unwrap();
        all_pass(&conj_symmetry_residual(&m, 3, CFG)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let plane = build_model("quantum_plane:2").unwrap();
    assert!(conj_symmetry_residual(&plane, 2, CFG).iter().any(|e| !e.passed()));
}

#[test]
fn gram_matrices_are_invertible() {
    for name in ["q_euclidean_4", "q_minkowski_4"] {
        let m = build_model(name).unwrap();
        all_pass(&nondegeneracy(&m, 3, CFG)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(gram(&m, 2, 2, CFG).unwrap().rank(), 10);
    }
}

#[test]
fn parity_selfadjointness_fails_against_gaussian_weight() {
    let m = build_model("q_euclidean_4").unwrap();
    assert!(parity_selfadjoint_literal(&m, 1, CFG).iter().any(|e| !e.passed()));
}

#[test]
fn elements_of_other_models_are_rejected() {
    let m = build_model("q_euclidean_4").unwrap();
    let k = build_model("q_minkowski_4").unwrap();
    assert!(sesquilinear(&m, &unit(&k, 1, 0), &unit(&m, 1, 0), CFG).is_err());
}

fn element(model: &Model, coeffs: &[(i64, i32)]) -> NormalElement {
    let mut map = BTreeMap::new();
    let mut it = coeffs.iter().cycle();
    for m in 0..=2 {
        let d = model.alg.dim(Space::Single(m));
        map.insert(m, (0..d).map(|_| it.next().map(|&(c, k)| QScalar::monomial(c, k)).unwrap()).collect());
    }
    NormalElement::from_coords(model.name(), model.n(), map)
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i32)>> {
    prop::collection::vec((-3i64..=3, -2i32..=2), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sesquilinear_is_antilinear_then_linear(b in coeffs(), c in coeffs(), d in coeffs(), s in (-3i64..=3, -2i32..=2)) {
        let m = build_model("q_euclidean_4").unwrap();
        let (b, c, d) = (element(&m, &b), element(&m, &c), element(&m, &d));
        let s = QScalar::monomial(s.0, s.1);
        let f = |x: &NormalElement, y: &NormalElement| sesquilinear(&m, x, y, CFG).unwrap();
        let cd = c.scale(&s).add(&d).unwrap();
        prop_assert_eq!(f(&b, &cd), &s * &f(&b, &c) + f(&b, &d));
        let bd = b.scale(&s).add(&d).unwrap();
        prop_assert_eq!(f(&bd, &c), s.conjugate() * f(&b, &c) + f(&d, &c));
    }
}

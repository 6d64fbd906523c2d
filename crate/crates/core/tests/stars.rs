use braidkit::braided_space::Space;
use braidkit::models::build_model;
use braidkit::operators::antipode_block;
use braidkit::report::SuiteEntry;
use braidkit::star_metric::{
    delstar_literal, delstar_residual, parity_consistency, star_block, star_coordinate, star_matrix,
    star_unitary_coordinate, theta_automorphism, theta_block, theta_square_grouplike, theta_star_consistency,
    StarKind, ThetaWhich,
};
use braidkit::{Error, Mat, QScalar};

fn q(c: i64, k: i32) -> QScalar {
    QScalar::monomial(c, k)
}

fn failing(entries: &[SuiteEntry]) -> Vec<String> {
    entries.iter().filter(|e| !e.passed()).map(|e| format!("{} {}: {}", e.identity, e.degree, e.residual)).collect()
}

/// Column `i` holds the image of `x_i`.
fn images(m: &Mat) -> Vec<Vec<QScalar>> {
    (0..m.cols()).map(|i| m.column(i)).collect()
}

#[test]
fn generator_stars_on_matrix_models() {
    let z = QScalar::zero;
    let e = build_model("q_euclidean_4").unwrap();
    let want = vec![
        vec![z(), z(), z(), q(1, 0)],
        vec![z(), z(), q(-1, 1), z()],
        vec![z(), q(-1, -1), z(), z()],
        vec![q(1, 0), z(), z(), z()],
    ];
    assert_eq!(images(&star_matrix(&e, StarKind::Coordinate).unwrap()), want);
    let k = build_model("q_minkowski_4").unwrap();
    let want = vec![
        vec![q(1, 0), z(), z(), z()],
        vec![z(), z(), q(1, 2), z()],
        vec![z(), q(1, -2), z(), z()],
        vec![z(), z(), z(), q(1, 0)],
    ];
    assert_eq!(images(&star_matrix(&k, StarKind::Coordinate).unwrap()), want);
}

#[test]
fn stars_are_antimultiplicative_involutions() {
    for name in ["q_euclidean_4", "q_minkowski_4"] {
        let m = build_model(name).unwrap();
        for kind in [StarKind::Coordinate, StarKind::Unitary] {
            for d in 0..=3 {
                let s = star_block(&m, kind, d).unwrap();
                assert_eq!(s.mul(&s), Mat::identity(s.rows()), "{name} {kind:?} {d}");
            }
        }
        let a = m.alg.parse_element(m.name(), "x[0]").unwrap();
        let b = m.alg.parse_element(m.name(), "q*x[1] + x[2]").unwrap();
        let lhs = star_coordinate(&m, &m.alg.multiply(&a, &b).unwrap()).unwrap();
        let rhs = m.alg.multiply(&star_coordinate(&m, &b).unwrap(), &star_coordinate(&m, &a).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "{name}");
        let u = star_unitary_coordinate(&m, &m.alg.multiply(&a, &b).unwrap()).unwrap();
        let v = m.alg.multiply(&star_unitary_coordinate(&m, &b).unwrap(), &star_unitary_coordinate(&m, &a).unwrap()).unwrap();
        assert_eq!(u, v, "{name}");
    }
}

#[test]
fn plane_star_is_not_involutive() {
    let m = build_model("quantum_plane:2").unwrap();
    let s = star_matrix(&m, StarKind::Unitary).unwrap();
    assert_eq!(s.mul(&s), Mat::scalar(2, &q(-1, 1)));
}

#[test]
fn theta_blocks() {
    for name in ["q_euclidean_4", "q_minkowski_4"] {
        let m = build_model(name).unwrap();
        let v = theta_block(&m, ThetaWhich::V, 1).unwrap();
        assert_eq!(v, Mat::from_fn(4, 4, |i, j| if i == j { [q(1, -4), q(1, -2), q(1, -6), q(1, -4)][i].clone() } else { QScalar::zero() }));
        for d in 0..=3 {
            let u = theta_block(&m, ThetaWhich::U, d).unwrap();
            let v = theta_block(&m, ThetaWhich::V, d).unwrap();
            let dim = m.alg.dim(Space::Single(d));
            assert_eq!(u.mul(&v), Mat::scalar(dim, &q(1, -8 * d as i32)), "{name} {d}");
            assert_eq!(theta_block(&m, ThetaWhich::Nu, d).unwrap(), Mat::scalar(dim, &q(1, -4 * d as i32)));
        }
        let op = theta_automorphism(&m, ThetaWhich::V, 3).unwrap();
        assert_eq!(op.blocks.len(), 4);
    }
}

#[test]
fn theta_is_multiplicative() {
    let m = build_model("q_minkowski_4").unwrap();
    let th = |e: &braidkit::braided_space::NormalElement| {
        let mut out = std::collections::BTreeMap::new();
        for (d, v) in e.coords() {
            out.insert(*d, theta_block(&m, ThetaWhich::V, *d).unwrap().mul_vec(v));
        }
        braidkit::braided_space::NormalElement::from_coords(m.name(), 4, out)
    };
    let a = m.alg.parse_element(m.name(), "x[1] + 2*x[3]").unwrap();
    let b = m.alg.parse_element(m.name(), "x[2]x[0] + q*x[3]").unwrap();
    assert_eq!(th(&m.alg.multiply(&a, &b).unwrap()), m.alg.multiply(&th(&a), &th(&b)).unwrap());
}

#[test]
fn theta_star_identities() {
    for name in ["q_euclidean_4", "q_minkowski_4"] {
        let m = build_model(name).unwrap();
        assert!(failing(&theta_star_consistency(&m, 3)).is_empty(), "{name}: {:?}", failing(&theta_star_consistency(&m, 3)));
        assert!(failing(&parity_consistency(&m, 3)).is_empty(), "{name}");
        // uv is not group-like, so reading it as θ_u θ_v breaks from degree 2
        let gl = theta_square_grouplike(&m, 3);
        assert!(gl.iter().filter(|e| e.degree < 2).all(SuiteEntry::passed));
        assert!(gl.iter().filter(|e| e.degree >= 2).all(|e| !e.passed()));
    }
}

#[test]
fn derivative_star() {
    for name in ["q_euclidean_4", "quantum_plane:2"] {
        let m = build_model(name).unwrap();
        assert!(failing(&delstar_residual(&m, 3)).is_empty(), "{name}");
        assert!(!failing(&delstar_literal(&m, 3)).is_empty(), "{name}");
    }
    let k = build_model("q_minkowski_4").unwrap();
    assert!(delstar_residual(&k, 1)[0].residual.contains("layout mismatch"));
}

#[test]
fn antipode_squares_to_identity_only_classically() {
    let m = build_model("q_euclidean_4").unwrap();
    let s = antipode_block(&m, 2).unwrap();
    assert_ne!(s.mul(&s), Mat::identity(10));
    assert_eq!(antipode_block(&m, 1).unwrap(), Mat::scalar(4, &q(-1, 0)));
}

#[test]
fn plane3_has_no_star() {
    let m = build_model("quantum_plane:3").unwrap();
    assert_eq!(star_matrix(&m, StarKind::Coordinate).unwrap_err(), Error::NoMetric);
}

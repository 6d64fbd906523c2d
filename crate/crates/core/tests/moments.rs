use braidkit::braided_space::{letters, word, Space};
use braidkit::integration::{moment_residual, moment_table, moments, z_element, z_moment};
use braidkit::models::build_model;
use braidkit::{Error, Mat, Model, QScalar, RMatrix};
use num_rational::BigRational;

const METRIC_MODELS: [&str; 3] = ["quantum_plane:2", "q_euclidean_4", "q_minkowski_4"];

fn quadratic_oracle(model: &Model) -> Vec<QScalar> {
    let n = model.n();
    let rinv = model.spec.r.to_mat().inverse().unwrap();
    let eta = model.eta().unwrap();
    let l2inv = model.lambda_sq().unwrap().inv().unwrap();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut s = QScalar::zero();
            for a in 0..n {
                for b in 0..n {
                    s += eta.get(a, b) * rinv.get(a * n + b, j * n + i);
                }
            }
            out.push(s * &l2inv);
        }
    }
    out
}

#[test]
fn low_moments_match_definition() {
    for name in METRIC_MODELS {
        let m = build_model(name).unwrap();
        assert_eq!(*moments(&m, 0).unwrap(), vec![QScalar::one()]);
        assert!(moments(&m, 1).unwrap().iter().all(QScalar::is_zero), "{name}");
        assert_eq!(*moments(&m, 2).unwrap(), quadratic_oracle(&m), "{name}");
    }
}

#[test]
fn quartic_moments_match_dense_recursion() {
    for name in METRIC_MODELS {
        let m = build_model(name).unwrap();
        let n = m.n();
        let rinv = m.spec.r.to_mat().inverse().unwrap();
        // P R21^-1 built directly from the inverse matrix
        let e = RMatrix::from_fn(n, |i, j, k, l| rinv.get(i * n + k, l * n + j).clone());
        let z2 = quadratic_oracle(&m);
        let l2inv = m.lambda_sq().unwrap().inv().unwrap();
        let size = n.pow(4);
        let mut z4 = Mat::zeros(1, size);
        for r in 0..3 {
            let f = Mat::from_fn(1, size, |_, w| {
                let l = letters(w, n, 4);
                let rest: Vec<usize> = l[..r].iter().chain(&l[r + 2..]).copied().collect();
                &z2[l[r] * n + l[r + 1]] * &z2[word(&rest, n)]
            });
            let mut chain = f;
            for s in r + 1..3 {
                chain = chain.mul(&e.embed(s, s + 1, 4));
            }
            z4.add_scaled(&chain, &l2inv.pow(2 - r as i32).unwrap());
        }
        assert_eq!(z4.row(0), &moments(&m, 4).unwrap()[..], "{name}");
    }
}

#[test]
fn odd_moments_vanish() {
    for name in METRIC_MODELS {
        let m = build_model(name).unwrap();
        for d in [1, 3, 5] {
            assert!(moments(&m, d).unwrap().iter().all(QScalar::is_zero), "{name} degree {d}");
        }
    }
}

#[test]
fn moments_kill_relations_on_four_dim_models() {
    for name in ["q_euclidean_4", "q_minkowski_4"] {
        let m = build_model(name).unwrap();
        for e in moment_residual(&m, 4) {
            assert!(e.passed(), "{name} {} {}: {}", e.identity, e.degree, e.residual);
        }
    }
}

#[test]
fn plane_moments_do_not_kill_relations() {
    let m = build_model("quantum_plane:2").unwrap();
    let bad: Vec<_> = moment_residual(&m, 4).into_iter().filter(|e| !e.passed()).collect();
    assert!(bad.iter().any(|e| e.identity == "moments-kill-relations" && e.degree == 2));
}

#[test]
fn plane3_has_no_moments() {
    let m = build_model("quantum_plane:3").unwrap();
    assert_eq!(moments(&m, 2).unwrap_err(), Error::NoMetric);
}

fn pairings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 1..items.len() {
        let rest: Vec<usize> = items[1..].iter().enumerate().filter(|(i, _)| *i + 1 != k).map(|(_, &x)| x).collect();
        for mut p in pairings(&rest) {
            p.insert(0, (items[0], items[k]));
            out.push(p);
        }
    }
    out
}

#[test]
fn classical_limit_is_ordered_wick_sum() {
    let one = BigRational::from_integer(1.into());
    for name in METRIC_MODELS {
        let m = build_model(name).unwrap();
        let n = m.n();
        let z2: Vec<BigRational> = moments(&m, 2).unwrap().iter().map(|z| z.specialize(&one).unwrap()).collect();
        let z4 = moments(&m, 4).unwrap();
        for w in 0..n.pow(4) {
            let l = letters(w, n, 4);
            let wick: BigRational = pairings(&[0, 1, 2, 3])
                .iter()
                .map(|p| p.iter().map(|&(a, b)| z2[l[a] * n + l[b]].clone()).product::<BigRational>())
                .sum();
            assert_eq!(z4[w].specialize(&one).unwrap(), wick, "{name} {l:?}");
        }
    }
}

#[test]
fn table_and_lookup_agree() {
    let m = build_model("q_euclidean_4").unwrap();
    let t = moment_table(&m, 4).unwrap();
    assert_eq!(t.len(), 1 + 4 + 16 + 64 + 256);
    for (tuple, v) in &t {
        assert_eq!(&z_moment(&m, tuple).unwrap(), v);
    }
    assert!(matches!(z_moment(&m, &[0, 7]), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn z_on_quotient_elements() {
    let m = build_model("q_minkowski_4").unwrap();
    let e = m.alg.parse_element(m.name(), "1 + 2*x[0]x[3] + x[1]").unwrap();
    let want = QScalar::one() + QScalar::from_int(2) * z_moment(&m, &[0, 3]).unwrap();
    assert_eq!(z_element(&m, &e).unwrap(), want);
    assert_eq!(m.alg.dim(Space::Single(2)), 10);
}

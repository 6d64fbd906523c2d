use braidkit_bench::{cold, moments_upto, suite, MODELS};

#[test]
fn workloads_run() {
    for name in MODELS {
        assert_eq!(cold(name).name(), name);
    }
    // 1 + 4 + 16 + 64 + 256 tuples
    assert_eq!(moments_upto(&cold("q_euclidean_4"), 4).unwrap(), 341);
    assert!(suite("q_euclidean_4", 2).all_pass());
    assert!(!suite("quantum_plane:2", 1).all_pass());
}

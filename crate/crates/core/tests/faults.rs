use flag_pieces::analysis::{Criterion, Status, Verifier, VerifyConfig};

fn config(types: &[&str], dir: &std::path::Path) -> VerifyConfig {
    VerifyConfig {
        types: types.iter().map(|t| t.parse().unwrap()).collect(),
        cache_dir: Some(dir.to_path_buf()),
        ..VerifyConfig::default()
    }
}

#[test]
fn corrupted_cache_surfaces_as_a_failing_check() {
    let dir = tempfile::tempdir().unwrap();
    let clean = Verifier::new(config(&["B2"], dir.path())).unwrap().run(Criterion::B2Derived).unwrap();
    assert!(clean.iter().all(|c| c.status != Status::Fail));

    let victim = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| {
            let text = std::fs::read_to_string(p).unwrap();
            text.contains("\"q\": 7") && text.contains("\"class\": \"3,1,1\"") && text.contains("\"std\"")
        })
        .expect("cached B2 vector");
    let mut file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&victim).unwrap()).unwrap();
    let e = file["counts"]["e"].as_u64().unwrap();
    file["counts"]["e"] = (e + 1).into();
    std::fs::write(&victim, serde_json::to_string(&file).unwrap()).unwrap();

    let checks = Verifier::new(config(&["B2"], dir.path())).unwrap().run(Criterion::B2Derived).unwrap();
    let failed: Vec<_> = checks.iter().filter(|c| c.status == Status::Fail).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| !c.actual.is_empty() && c.actual != c.expected), "{failed:?}");
}

#[test]
fn subsets_of_types_only_run_their_checks() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = Verifier::new(config(&["A1"], dir.path())).unwrap();
    assert!(v.run(Criterion::B2Derived).unwrap().is_empty());
    let a = v.run(Criterion::TypeATables).unwrap();
    assert_eq!(a.len(), 2);
    assert!(a.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn rank_three_primes_are_validated() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(&["B3"], dir.path());
    c.sampled_primes = vec![9];
    assert!(Verifier::new(c.clone()).is_err());
    c.sampled_primes = vec![11];
    assert!(Verifier::new(c.clone()).is_err());
    c.allow_large_q = true;
    assert!(Verifier::new(c).is_ok());
}

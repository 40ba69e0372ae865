use omnilife::catalog::{catalog_lookup, entries, verify_catalog, verify_entries, Role};
use omnilife::parallel::Parallelism;

#[test]
fn verification_passes_and_is_parallelism_invariant() {
    let seq = verify_catalog(Parallelism::Sequential);
    assert!(seq.all_passed);
    assert_eq!(seq.failed, 0);
    let par = verify_catalog(Parallelism::Threads(4));
    assert_eq!(seq, par);
    let periods: Vec<u64> = seq.entries.iter().map(|e| e.period).collect();
    let mut sorted = periods.clone();
    sorted.sort();
    assert_eq!(periods, sorted);
}

#[test]
fn pulsar_is_confirmed() {
    let r = verify_catalog(Parallelism::Sequential);
    let e = r.entries.iter().find(|e| e.name == "pulsar").unwrap();
    assert!(e.passed);
    assert_eq!(e.detected.as_ref().unwrap().period, Some(3));
}

#[test]
fn corrupted_entry_fails_alone() {
    let mut all = entries().to_vec();
    let e = all.iter_mut().find(|e| e.name == "pulsar").unwrap();
    // turn one live run into a dead run
    let text = e.rle.take().unwrap();
    let body_start = text.find("\n2b3o").unwrap() + 1;
    let mut corrupted = text.clone();
    corrupted.replace_range(body_start + 2..body_start + 3, "2");
    e.rle = Some(corrupted);
    let r = verify_entries(&all, Parallelism::Sequential);
    assert_eq!(r.failed, 1);
    assert!(!r.all_passed);
    let bad: Vec<_> = r
        .entries
        .iter()
        .filter(|e| !e.passed)
        .map(|e| e.name.as_str())
        .collect();
    assert_eq!(bad, vec!["pulsar"]);
}

#[test]
fn manifest_only_rows_are_skipped() {
    let r = verify_catalog(Parallelism::Sequential);
    let manifest_only = entries()
        .iter()
        .filter(|e| e.role == Role::ManifestOnly)
        .count();
    assert!(manifest_only > 0);
    assert!(r.skipped >= manifest_only);
    assert!(r.entries.iter().all(|e| e.name != "twin bees shuttle"));
    assert_eq!(catalog_lookup(46)[0].name, "twin bees shuttle");
}

#[test]
fn extras_and_parametric_rows() {
    let names: Vec<_> = catalog_lookup(5).iter().map(|e| e.name.clone()).collect();
    assert!(
        names.contains(&"octagon 2".to_string()) && names.contains(&"statorless p5".to_string())
    );
    assert!(entries()
        .iter()
        .any(|e| e.period.is_none() && e.period_formula.as_deref() == Some("50+40n")));
    let snark = catalog_lookup(43);
    assert_eq!(snark[0].discoverer, "Mike Playle");
}

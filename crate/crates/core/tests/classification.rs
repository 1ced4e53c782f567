use skewfiss::constructions::{cyclotomic_scheme, johnson2_scheme, wreath};
use skewfiss::exec::Strategy;
use skewfiss::feasibility::{
    candidate_tensor, classify_scheme, classify_tensor, imprimitive_scan, srg_scan, ClassifyError, Family, Status,
};
use skewfiss::spectra::srg_derive;

#[test]
fn scan_candidates_classify_back() {
    let mut records = srg_scan(1300, Strategy::default()).unwrap();
    records.extend(imprimitive_scan(600, Strategy::default()).unwrap());
    let mut checked = 0;
    for r in records.iter().filter(|r| r.status == Status::Feasible) {
        let p = srg_derive(r.n, r.k.unwrap(), r.lambda.unwrap(), r.mu.unwrap()).unwrap().integral().unwrap();
        let t = candidate_tensor(&p, r.table_type.unwrap(), r.z).unwrap();
        let c = classify_tensor(&t).unwrap_or_else(|e| panic!("n = {} {}: {e}", r.n, r.parameters()));
        assert_eq!(c.n, r.n);
        if c.k == r.k.unwrap() && c.lambda == r.lambda.unwrap() {
            assert_eq!((c.table_type, c.z), (r.table_type, r.z), "n = {} {}", r.n, r.parameters());
        } else {
            // the same scheme seen through the complementary graph
            assert_eq!(c.k, r.n - 1 - r.k.unwrap(), "n = {} {}", r.n, r.parameters());
        }
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn constructed_schemes_classify() {
    for q in [5u64, 13, 29, 37, 53, 125] {
        let c = classify_scheme(&cyclotomic_scheme(q, 4).unwrap()).unwrap();
        assert_eq!((c.family, c.n), (Family::Conference, q as i64), "q = {q}");
    }
    let w = wreath(&cyclotomic_scheme(7, 2).unwrap(), &cyclotomic_scheme(3, 2).unwrap()).unwrap();
    let c = classify_scheme(&w).unwrap();
    assert_eq!(c.blocks, Some((7, 3)));
    assert_eq!(c.to_string(), "imprimitive (21, 6, 5, 0) f=7 g=3 type I");
}

#[test]
fn classification_errors() {
    assert!(matches!(classify_scheme(&johnson2_scheme(7).unwrap()), Err(ClassifyError::NotSkew4(_))));
    assert!(matches!(classify_scheme(&cyclotomic_scheme(13, 2).unwrap()), Err(ClassifyError::NotSkew4(_))));
}

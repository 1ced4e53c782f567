use skewfiss::constructions::{
    cyc4_closed_form, cyc_skew_predicate, cyclotomic_scheme, is_prime, prime_power, thin_cyclic_scheme, two_squares,
    wreath, CyclotomicNumbers,
};
use skewfiss::exec::Strategy;
use skewfiss::scheme::{
    imprimitive_blocks, intersection_tensor, is_skew_symmetric, parse_ascm, symmetrize, verify_axioms,
    verify_axioms_with, write_ascm,
};

fn skew_prime_powers(max: u64) -> impl Iterator<Item = u64> {
    (5..=max).step_by(8).filter(|&q| prime_power(q).is_some())
}

#[test]
fn cyclotomic_numbers_match_closed_forms() {
    let mut checked = 0;
    for q in skew_prime_powers(10_000) {
        let t = CyclotomicNumbers::new(q, 4).unwrap().tensor();
        let (p, _) = prime_power(q).unwrap();
        let matches: Vec<(i64, i64)> = two_squares(q)
            .into_iter()
            .flat_map(|ts| [(ts.g, ts.h), (ts.g, -ts.h)])
            .filter(|&(g, h)| cyc4_closed_form(q, g, h).is_ok_and(|c| c.tensor() == t))
            .collect();
        assert_eq!(matches.len(), 1, "q = {q}: {matches:?}");
        assert_ne!(matches[0].0 % p as i64, 0, "q = {q}");
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn counted_tensor_equals_cyclotomic_numbers() {
    for q in skew_prime_powers(400) {
        let s = cyclotomic_scheme(q, 4).unwrap();
        assert!(is_skew_symmetric(&s), "Cyc({q},4)");
        assert_eq!(intersection_tensor(&s).unwrap(), CyclotomicNumbers::new(q, 4).unwrap().tensor(), "q = {q}");
    }
}

#[test]
fn skewness_predicate() {
    for q in 3..200u64 {
        let Some((p, b)) = prime_power(q) else { continue };
        if (q - 1) % 4 != 0 {
            continue;
        }
        assert_eq!(cyc_skew_predicate(p, b), q % 8 == 5, "q = {q}");
        assert_eq!(is_skew_symmetric(&cyclotomic_scheme(q, 4).unwrap()), q % 8 == 5, "q = {q}");
    }
}

#[test]
fn symmetrization_is_paley() {
    for q in (5..300u64).step_by(8).filter(|&q| is_prime(q)) {
        let sym = symmetrize(&cyclotomic_scheme(q, 4).unwrap()).unwrap();
        let paley = cyclotomic_scheme(q, 2).unwrap();
        assert_eq!(sym.d(), 2);
        let (a, b) = (sym.rel(0, 1), paley.rel(0, 1));
        for x in 0..q as usize {
            for y in 0..q as usize {
                assert_eq!(sym.rel(x, y) == a, paley.rel(x, y) == b, "q = {q}, ({x}, {y})");
            }
        }
    }
}

#[test]
fn wreath_blocks() {
    for (f, g) in [(3u64, 7u64), (7, 3), (3, 11), (11, 7)] {
        let w = wreath(&cyclotomic_scheme(f, 2).unwrap(), &cyclotomic_scheme(g, 2).unwrap()).unwrap();
        assert!(verify_axioms(&w).passed());
        assert_eq!((w.n(), w.d()), ((f * g) as usize, 4));
        let blocks = imprimitive_blocks(&w).unwrap();
        assert_eq!(blocks.len(), 1, "({f}, {g}): {blocks:?}");
        let within = &blocks[0];
        for x in 0..w.n() {
            let class = (0..w.n()).filter(|&y| within.contains(&w.rel(x, y))).count();
            assert_eq!(class as u64, f);
        }
    }
}

#[test]
fn ascm_round_trip_and_strategies_agree() {
    for s in [cyclotomic_scheme(29, 4).unwrap(), cyclotomic_scheme(125, 4).unwrap(), thin_cyclic_scheme(9).unwrap()] {
        assert_eq!(parse_ascm(&write_ascm(&s)).unwrap(), s);
        let seq = verify_axioms_with(&s, Strategy::Sequential);
        let par = verify_axioms_with(&s, Strategy::Parallel);
        assert_eq!(seq.tensor, par.tensor);
        assert!(seq.passed());
    }
}

#[test]
fn broken_scheme_is_rejected() {
    let mut s = cyclotomic_scheme(13, 4).unwrap();
    let (a, b) = (s.rel(0, 1), s.rel(0, 2));
    s.set(0, 1, b);
    s.set(0, 2, a);
    assert!(!verify_axioms(&s).passed());
}

// Property checks shared by the core property tests and the acceptance runner.
// Each returns a short summary on success.

use std::cell::Cell;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use skewfiss::constructions::{
    cyc4_closed_form, cyclotomic_scheme, johnson2_scheme, prime_power, thin_cyclic_scheme, two_squares, wreath,
};
use skewfiss::exactnum::{rat, surd_sign, surd_sqrt, Rational, SurdSum};
use skewfiss::exec::Strategy as Exec;
use skewfiss::feasibility::{imprimitive_scan, srg_scan};
use skewfiss::scheme::{intersection_tensor, AssociationScheme, IntersectionTensor};
use skewfiss::spectra::{
    closed_form, corollary_filters, intersection_matrices_closed_form, srg_derive, surd_to_twofloat, FissionCandidate,
    TableType,
};

pub const RANDOM_CASES: u32 = 10_000;

fn runner() -> TestRunner {
    let config = Config {
        cases: RANDOM_CASES,
        max_global_rejects: 50 * RANDOM_CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Small schemes from every construction.
pub fn constructed_schemes() -> Vec<(String, AssociationScheme)> {
    let mut out = Vec::new();
    for q in 3..=130u64 {
        if prime_power(q).is_none() {
            continue;
        }
        for d in 2..=6 {
            if (q - 1) % d == 0 && d < q - 1 {
                out.push((format!("Cyc({q},{d})"), cyclotomic_scheme(q, d).unwrap()));
            }
        }
    }
    for (f, g) in [(3, 7), (7, 3), (3, 11), (11, 3), (7, 7)] {
        let w = wreath(&cyclotomic_scheme(f, 2).unwrap(), &cyclotomic_scheme(g, 2).unwrap()).unwrap();
        out.push((format!("Cyc({f},2) wr Cyc({g},2)"), w));
    }
    for v in 4..=12 {
        out.push((format!("J({v},2)"), johnson2_scheme(v).unwrap()));
    }
    for n in 2..=15 {
        out.push((format!("Z{n}"), thin_cyclic_scheme(n).unwrap()));
    }
    out
}

/// Counted tensors of [`constructed_schemes`] and closed-form tensors from the scans.
pub fn all_tensors() -> Vec<(String, IntersectionTensor)> {
    let mut out: Vec<_> =
        constructed_schemes().into_iter().map(|(name, s)| (name, intersection_tensor(&s).unwrap())).collect();
    for q in (5..=10_000u64).step_by(8) {
        for ts in two_squares(q) {
            for h in [ts.h, -ts.h] {
                if let Ok(c) = cyc4_closed_form(q, ts.g, h) {
                    out.push((format!("closed form q={q} g={} h={h}", ts.g), c.tensor()));
                }
            }
        }
    }
    let mut records = srg_scan(1300, Exec::default()).unwrap();
    records.extend(imprimitive_scan(1300, Exec::default()).unwrap());
    for r in records {
        let p = srg_derive(r.n, r.k.unwrap(), r.lambda.unwrap(), r.mu.unwrap()).unwrap();
        let f = FissionCandidate { table_type: r.table_type.unwrap(), z: r.z.map(skewfiss::exactnum::int) };
        if let Ok(t) = intersection_matrices_closed_form(&p, &f).and_then(|c| c.to_tensor()) {
            out.push((format!("closed form n={} {}", r.n, r.parameters()), t));
        }
    }
    out
}

/// Column `k` of `B_i` sums to `k_i`.
pub fn column_sums(tensors: &[(String, IntersectionTensor)]) -> Result<String, String> {
    for (name, t) in tensors {
        let d = t.d();
        for i in 0..=d {
            for k in 0..=d {
                let sum: u64 = (0..=d).map(|j| t.get(i, j, k)).sum();
                if sum != t.valencies()[i] {
                    return Err(format!("{name}: column {k} of B{i} sums to {sum}, k{i} = {}", t.valencies()[i]));
                }
            }
        }
    }
    Ok(format!("column sums on {} tensors", tensors.len()))
}

/// `p^k_{ij} = p^{k'}_{j'i'}`.
pub fn transpose_symmetry(tensors: &[(String, IntersectionTensor)]) -> Result<String, String> {
    for (name, t) in tensors {
        let tr = t.transpose_map();
        let d = t.d();
        for i in 0..=d {
            for j in 0..=d {
                for k in 0..=d {
                    if t.get(i, j, k) != t.get(tr[j], tr[i], tr[k]) {
                        return Err(format!("{name}: p^{k}_{i}{j} differs from its transpose"));
                    }
                }
            }
        }
    }
    Ok(format!("transpose symmetry on {} tensors", tensors.len()))
}

/// Parameters with integral eigenvalues `r ≥ 1 > −2 ≥ s`: `μ` runs over divisors of `rs(r+1)(s+1)`
/// so that `n` comes out integral.
fn srg_strategy() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (1i64..30, -30i64..=-2)
        .prop_flat_map(|(r, s)| {
            let m = (r * s * (r + 1) * (s + 1)).abs();
            let divisors: Vec<i64> = (1..=m).filter(|d| m % d == 0).collect();
            (Just(r), Just(s), proptest::sample::select(divisors))
        })
        .prop_map(|(r, s, mu)| {
            let k = mu - r * s;
            let n = 1 + k - k * (r + 1) * (s + 1) / mu;
            (n, k, mu + r + s, mu)
        })
}

/// An integral closed form for type I or II implies the corollary filters pass.
pub fn filter_soundness() -> Result<String, String> {
    let tried = Cell::new(0u32);
    let integral = Cell::new(0u32);
    let rejected = Cell::new(0u32);
    runner()
        .run(&srg_strategy(), |(n, k, l, mu)| {
            let p = srg_derive(n, k, l, mu);
            prop_assume!(p.is_ok());
            let p = p.unwrap();
            tried.set(tried.get() + 1);
            let Some(ip) = p.integral() else { return Ok(()) };
            for tt in [TableType::I, TableType::II] {
                let cf = closed_form::<i128>(&ip, tt, None).unwrap();
                let filters = corollary_filters(&p, tt);
                if cf.is_integral() {
                    integral.set(integral.get() + 1);
                    prop_assert!(filters.is_ok(), "({n}, {k}, {l}, {mu}) type {tt}: {:?}", filters);
                } else if filters.is_err() {
                    rejected.set(rejected.get() + 1);
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let (tried, integral, rejected) = (tried.get(), integral.get(), rejected.get());
    Ok(format!("filter soundness on {tried} parameter sets ({integral} integral tables, {rejected} filter rejections)"))
}

fn abs(x: Rational) -> Rational {
    if x < rat(0, 1) {
        -x
    } else {
        x
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=60).prop_map(|(a, b)| rat(a, b))
}

fn surd() -> impl Strategy<Value = SurdSum> {
    (rational(), proptest::collection::vec((rational(), 2u64..500), 0..4)).prop_map(|(a, terms)| {
        terms.into_iter().fold(SurdSum::from_rational(a), |acc, (c, m)| acc + SurdSum::sqrt_int(m).scale(&c))
    })
}

/// `√x² = x`, conjugate sums and products are rational, and the exact sign agrees with the double-double value.
pub fn surd_round_trips() -> Result<String, String> {
    runner()
        .run(&(rational(), rational(), rational(), 2u64..10_000, surd()), |(x, a, b, m, s)| {
            let x = abs(x);
            let root = surd_sqrt(&x).unwrap();
            prop_assert_eq!(root.square(), SurdSum::from_rational(x.clone()));
            prop_assert!(surd_sign(&root) >= 0);

            let v = SurdSum::from_rational(a.clone()) + SurdSum::sqrt_int(m).scale(&b);
            let w = SurdSum::from_rational(a.clone()) - SurdSum::sqrt_int(m).scale(&b);
            prop_assert_eq!(&v + &w, SurdSum::from_rational(&a + &a));
            let norm = &v * &w;
            prop_assert!(norm.is_rational());
            prop_assert_eq!(norm.rational_part(), &a * &a - &b * &b * Rational::from_integer(m.into()));

            let approx = surd_to_twofloat(&s);
            let scale = s.terms().fold(SurdSum::zero(), |acc, (r, c)| acc + SurdSum::term(abs(c.clone()), r)).to_f64();
            let f: f64 = approx.hi() + approx.lo();
            if f.abs() > 1e-20 * (1.0 + scale) {
                prop_assert_eq!(surd_sign(&s), f.signum() as i32, "{} ~ {}", s, f);
            }
            prop_assert_eq!(surd_sign(&(-&s)), -surd_sign(&s));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("surd round trips on {RANDOM_CASES} values"))
}

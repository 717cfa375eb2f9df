//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
//! its runtime; the process exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use koszulkit::arith::IntPolynomial;
use koszulkit::field::Rationals;
use koszulkit::gb::{
    is_groebner, veronese2_initial_split, veronese2_kernel_gens_for, veronese2_order,
    veronese2_variables, MultiPolynomial,
};
use koszulkit::hilbert::veronese_numerics;
use koszulkit::input::{parse_input, parse_polynomial};
use koszulkit::monomial::{
    ci_plus_two_linear, is_chordal, monomial_colon, nonedge_graph, uk_recognize, Chordality,
    Monomial, MonomialIdeal, UkDerivation, VarGraph,
};
use koszulkit::obstruction::{
    br_obstruction, family_scan, obstruction_series, Asymptotic, Family, ScanVerdict,
};
use koszulkit::resolution::{
    default_degree_bound, golod_map_check, koszul_check, linearity_defect, minimal_resolution,
    serre_check, GradedModulePresentation, QuotientRing, Resolution,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("h-polynomial golden values", c1_h_polynomials, secs(1)),
        ("h(-1) values", c2_h_at_minus_one, secs(1)),
        ("obstruction series for (6,7)", c3_series_6_7, secs(5)),
        ("Veronese family scan", c4_family_scan, secs(30)),
        ("monomial certificates", c5_monomial_certificates, secs(5)),
        ("Groebner verification", c6_groebner, secs(60)),
        ("resolution golden values", c7_resolutions, secs(120)),
        ("Golod and Serre checks", c8_golod, secs(60)),
        ("linearity defect", c9_linearity_defect, secs(120)),
        ("property suites", c10_properties, secs(600)),
    ];
    let mut failures = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > *budget => Err(format!("took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{elapsed:.2?}]", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `(1-z)^n * sum_i binom(n-1+ci, n-1) z^i`, truncated once the product
/// stabilizes; the Veronese Hilbert function is a polynomial of degree n-1.
fn veronese_h_oracle(n: u64, c: u64) -> Vec<BigInt> {
    let len = n as usize + 2;
    let hf: Vec<BigInt> = (0..len as u64).map(|i| binom(n - 1 + c * i, n - 1)).collect();
    let mut h: Vec<BigInt> = (0..len)
        .map(|k| {
            (0..=k.min(n as usize))
                .map(|j| {
                    let s = binom(n, j as u64) * &hf[k - j];
                    if j % 2 == 0 { s } else { -s }
                })
                .sum()
        })
        .collect();
    while h.last().is_some_and(Zero::is_zero) {
        h.pop();
    }
    h
}

fn c1_h_polynomials() -> Outcome {
    let golden: [((u64, u64), &[i64]); 4] = [
        ((7, 2), &[1, 21, 35, 7]),
        ((5, 4), &[1, 65, 155, 35]),
        ((5, 3), &[1, 30, 45, 5]),
        ((6, 7), &[1, 786, 6891, 7872, 1251, 6]),
    ];
    for ((n, c), coeffs) in golden {
        let a = veronese_numerics(n, c).map_err(|e| e.to_string())?;
        ensure!(a.h_poly == IntPolynomial::from_i64s(coeffs), "h_({n},{c}) = {:?}", a.h_poly);
        ensure!(
            a.h_poly.coefficients() == veronese_h_oracle(n, c).as_slice(),
            "h_({n},{c}) disagrees with the Hilbert-function oracle"
        );
    }
    Ok("4 golden h-polynomials match exactly".into())
}

fn c2_h_at_minus_one() -> Outcome {
    let a = veronese_numerics(6, 7).map_err(|e| e.to_string())?;
    ensure!(a.h_poly.eval_i64(-1) == BigInt::from(-521), "h_(6,7)(-1) = {}", a.h_poly.eval_i64(-1));
    for c in 5..=50u64 {
        let a = veronese_numerics(4, c).map_err(|e| e.to_string())?;
        let ci = c as i64;
        let expected = BigInt::from((ci - 4) * (ci * ci + 4 * ci - 6) / 3);
        ensure!(a.h_poly.eval_i64(-1) == expected, "h_(4,{c})(-1) = {}", a.h_poly.eval_i64(-1));
    }
    Ok("h_(6,7)(-1) = -521 and 46 closed-form values for n = 4".into())
}

fn c3_series_6_7() -> Outcome {
    let a = veronese_numerics(6, 7).map_err(|e| e.to_string())?;
    ensure!(a.codim() == 786, "codim {}", a.codim());
    let s = obstruction_series(&a, 121);
    ensure!(*s.coeff(2) == BigInt::from(301_614), "z^2 coefficient {}", s.coeff(2));
    ensure!(*s.coeff(3) == BigInt::from(156_453_836u64), "z^3 coefficient {}", s.coeff(3));
    let v = s.coeff(121);
    let lo = BigInt::from(10u8).pow(152);
    ensure!(v.is_negative(), "index 121 coefficient is not negative");
    ensure!(v.abs() >= lo && v.abs() <= &lo * 2, "|coefficient 121| = {} out of window", v.abs());

    // independent expansion: 1 - h(-z) * sum_k binom(k+c-1, c-1) z^k
    let c = a.codim();
    let h = a.h_poly.coefficients();
    let oracle = |k: usize| -> BigInt {
        let conv: BigInt = (0..=k.min(h.len() - 1))
            .map(|j| {
                let t = &h[j] * binom((k - j) as u64 + c - 1, c - 1);
                if j % 2 == 0 { t } else { -t }
            })
            .sum();
        if k == 0 { BigInt::one() - conv } else { -conv }
    };
    for k in [0, 1, 2, 3, 50, 120, 121] {
        ensure!(*s.coeff(k) == oracle(k), "coefficient {k} disagrees with the oracle");
    }
    let report = br_obstruction(&a, 200).map_err(|e| e.to_string())?;
    let first = report.first_negative_index().ok_or("scan to 200 found no negative coefficient")?;
    ensure!(first <= 121, "first negative index {first}");
    Ok(format!("z^2, z^3 exact; coefficient 121 = -{}...e152; first negative index {first}", &v.abs().to_string()[..4]))
}

fn c4_family_scan() -> Outcome {
    let reports = family_scan(Family::Veronese, 2..=7, 2..=7, Some(200)).map_err(|e| e.to_string())?;
    ensure!(reports.len() == 36, "{} reports", reports.len());
    let expected_positive: BTreeSet<(u64, u64)> =
        [(7, 2), (5, 3), (5, 4), (4, 5), (4, 6), (4, 7)].into_iter().collect();
    // The lemma asserts positivity at these pairs; other pairs in the grid
    // are positive too and are compared against the closed-form oracle.
    let mut positive = BTreeSet::new();
    let mut k = 0;
    for n in 2..=7u64 {
        for c in 2..=7u64 {
            let r = &reports[k];
            k += 1;
            let a = veronese_numerics(n, c).map_err(|e| e.to_string())?;
            ensure!(r.label == a.label, "report order: {} at ({n},{c})", r.label);
            let oracle_value: BigInt = veronese_h_oracle(n, c)
                .iter()
                .enumerate()
                .map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x })
                .sum();
            ensure!(a.h_poly.eval_i64(-1) == oracle_value, "h_({n},{c})(-1) disagrees with the oracle");
            if oracle_value.is_positive() {
                positive.insert((n, c));
                let fails = matches!(r.verdict, ScanVerdict::FailAt { .. })
                    || r.asymptotic_verdict == Asymptotic::EventuallyNegative;
                ensure!(fails, "({n},{c}) has h(-1) > 0 but is not flagged");
            }
            let candidate = n <= 3 || (n == 4 && c <= 4) || (n <= 6 && c == 2);
            if candidate {
                ensure!(!oracle_value.is_positive(), "pass candidate ({n},{c}) has h(-1) > 0");
                ensure!(
                    matches!(r.verdict, ScanVerdict::PassUpTo { order: 200 }),
                    "({n},{c}) should pass the scan, got {:?}",
                    r.verdict
                );
            }
        }
    }
    ensure!(
        positive.is_superset(&expected_positive),
        "h(-1) > 0 fails at {:?}",
        expected_positive.difference(&positive).collect::<Vec<_>>()
    );
    Ok(format!(
        "h(-1) > 0 at the six lemma pairs (full positive set {positive:?}, all flagged); pass candidates pass to N = 200"
    ))
}

fn ideal(vars: &[&str], gens: &[&str]) -> MonomialIdeal {
    MonomialIdeal::parse(vars, gens).expect("valid monomial ideal")
}

fn h_ideal(m: usize) -> MonomialIdeal {
    let names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    let mut gens = vec![Monomial::product_of(m, m - 1, m - 1)];
    for i in 0..m - 1 {
        for j in i..m - 1 {
            gens.push(Monomial::product_of(m, i, j));
        }
    }
    MonomialIdeal::new(names, gens)
}

fn c5_monomial_certificates() -> Outcome {
    let i = ideal(&["a", "b", "c", "d"], &["a^2", "b^2", "a*d", "a*c", "b*d"]);
    let cert = ci_plus_two_linear(&i).map_err(|e| e.to_string())?.ok_or("no certificate")?;
    ensure!(cert.ci_part.same_ideal(&ideal(&["a", "b", "c", "d"], &["a^2", "b^2"])), "U = {:?}", cert.ci_part.rendered_generators());
    ensure!(cert.linear_part.same_ideal(&ideal(&["a", "b", "c", "d"], &["a*d", "a*c", "b*d"])), "V = {:?}", cert.linear_part.rendered_generators());
    ensure!(cert.validate(&i), "certificate does not replay");

    for m in 2..=6 {
        let h = h_ideal(m);
        let cert = ci_plus_two_linear(&h).map_err(|e| e.to_string())?.ok_or(format!("no certificate for H({m})"))?;
        let last = Monomial::product_of(m, m - 1, m - 1);
        // U is maximized, so the complete intersection H(2) = (x1^2, x2^2) has V = 0
        let expected_u = if m == 2 { h.generators().to_vec() } else { vec![last] };
        ensure!(
            cert.ci_part.same_ideal(&MonomialIdeal::new(h.variables().to_vec(), expected_u)),
            "H({m}): U = {:?}",
            cert.ci_part.rendered_generators()
        );
        ensure!(cert.validate(&h), "H({m}) certificate does not replay");

        let d = uk_recognize(&h).ok_or(format!("H({m}) not recognized"))?;
        ensure!(d.base_size() == Some(m), "H({m}) recognized as {}", d.render());
        ensure!(replays(&d, &h), "H({m}) derivation does not replay");

        // polynomial extension H(m)[y]
        let mut names = h.variables().to_vec();
        names.push("y".into());
        let ext = MonomialIdeal::new(names, h.generators().iter().map(|g| g.padded(m + 1)));
        let d = uk_recognize(&ext).ok_or(format!("H({m})[y] not recognized"))?;
        ensure!(matches!(d, UkDerivation::PolyExt { .. }), "H({m})[y] recognized as {}", d.render());
        ensure!(replays(&d, &ext), "H({m})[y] derivation does not replay");
    }

    let fp = ideal(&["x", "y"], &["x^2", "x*y", "y^2"]);
    let d = uk_recognize(&fp).ok_or("(x^2, xy, y^2) not recognized")?;
    ensure!(matches!(&d, UkDerivation::FibreProduct { children } if children.len() == 2), "got {}", d.render());
    ensure!(replays(&d, &fp), "fibre product does not replay");

    let ext = ideal(&["x", "y", "z"], &["x^2", "x*y", "y^2"]);
    let d = uk_recognize(&ext).ok_or("(x^2, xy, y^2) in k[x,y,z] not recognized")?;
    ensure!(d.render() == "PolyExt(z, FibreProduct(H(1)[x], H(1)[y]))", "got {}", d.render());
    ensure!(replays(&d, &ext), "extension of the fibre product does not replay");
    Ok("certificates for the example and H(2..6); derivations replay exactly".into())
}

/// The replayed ideal equals the input after matching variable names.
fn replays(d: &UkDerivation, original: &MonomialIdeal) -> bool {
    let replayed = d.replay();
    let names = replayed.variables();
    let Some(map) = names.iter().map(|n| original.var_index(n)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let gens = original
        .generators()
        .iter()
        .map(|g| Monomial::new(map.iter().map(|&i| g.exponents()[i]).collect()));
    MonomialIdeal::new(names.to_vec(), gens).same_ideal(&replayed)
}

fn c6_groebner() -> Outcome {
    let mut detail = String::new();
    for n in 3..=6 {
        let order = veronese2_order(n).map_err(|e| e.to_string())?;
        let gens = veronese2_kernel_gens_for(&Rationals, n, &order).map_err(|e| e.to_string())?;
        let check = is_groebner(&gens, &order, 6);
        ensure!(check.holds(), "n = {n}: S-pair {:?} does not reduce", check.witness.map(|w| (w.i, w.j)));
        ensure!(check.pairs_skipped == 0, "n = {n}: {} pairs above the cap", check.pairs_skipped);
        if n == 6 {
            let names = veronese2_variables(n);
            let leads = gens.iter().map(|g| g.leading_monomial(&order).expect("nonzero").clone());
            let initial = MonomialIdeal::new(names, leads);
            let split = veronese2_initial_split(&initial, n);
            ensure!(split.is_squares_plus_offdiagonal(n), "initial ideal is not squares + L");
            let graph = nonedge_graph(&split.rest).map_err(|e| e.to_string())?;
            ensure!(graph.len() == 15 && graph.edge_count() == 15, "graph has {} vertices, {} edges", graph.len(), graph.edge_count());
            let Chordality::PerfectEliminationOrdering(peo) = is_chordal(&graph) else {
                return Err("non-edge graph of L is not chordal".into());
            };
            let order: Vec<usize> = peo.iter().map(|v| graph.vertices().iter().position(|w| w == v).expect("vertex")).collect();
            ensure!(graph.is_perfect_elimination_order(&order), "reported ordering is not a PEO");
            detail = format!("{} binomials for n = 6; L graph 15 vertices, 15 edges, PEO found", gens.len());
        }
    }
    Ok(detail)
}

/// Independent structural checks every computed resolution must pass.
fn audit<F: koszulkit::field::Field>(res: &Resolution<'_, F>, what: &str) -> Result<(), String> {
    ensure!(res.check_d_squared(), "{what}: d o d != 0");
    ensure!(res.check_linear_part_squared(), "{what}: linear part does not square to zero");
    ensure!(res.check_minimal(), "{what}: not minimal");
    let euler = res.euler_characteristic();
    ensure!(!euler.is_empty(), "{what}: no complete degree column");
    ensure!(euler.iter().all(|c| c.holds()), "{what}: Euler characteristic mismatch");
    Ok(())
}

fn ring(text: &str, d: u32) -> QuotientRing<Rationals> {
    parse_input(text)
        .and_then(|inp| inp.quotient_ring(&Rationals, d))
        .unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn polys(ring: &QuotientRing<Rationals>, texts: &[&str]) -> Vec<MultiPolynomial<Rationals>> {
    texts
        .iter()
        .map(|t| parse_polynomial(ring.variables(), t).expect("polynomial").to_field(&Rationals))
        .collect()
}

fn cyclic<'r>(ring: &'r QuotientRing<Rationals>, gens: &[&str]) -> GradedModulePresentation<'r, Rationals> {
    GradedModulePresentation::cyclic(ring, &polys(ring, gens)).expect("homogeneous generators")
}

const FINAL_EXAMPLE: &str = "ring x, y, z, t; ideal x^2, x*y, z^2;";
const CI_EXAMPLE: &str = "ring a, b, c, d; ideal a*c, b*d;";
const NON_KOSZUL_EXAMPLE: &str =
    "ring x1, x2, x3, x4, x5, x6; ideal x4^2 - x1*x2, x5^2 - x2*x3, x4*x6, x5*x6;";
const SECOND_NON_KOSZUL: &str = "ring x, y, z, t; ideal x*y - z*t, x^2, y^2, z^2, t^2;";

fn c7_resolutions() -> Outcome {
    let (h, d) = (5, 8);
    let q = ring(FINAL_EXAMPLE, d);
    let m = cyclic(&q, &["z*t"]);
    let res = minimal_resolution(&m, h, d).map_err(|e| e.to_string())?;
    audit(&res, "Q/(zt) over Q")?;
    let b = res.betti();
    ensure!(b.get(0, 0) == Some(1), "beta_00 = {:?}", b.get(0, 0));
    for i in 1..=4usize {
        ensure!(b.get(i, i as u32 + 1) == Some(1), "beta_({i},{}) = {:?}", i + 1, b.get(i, i as u32 + 1));
        ensure!(b.total(i) == 1, "F_{i} has rank {}", b.total(i));
    }

    let q = ring(CI_EXAMPLE, d);
    let m = cyclic(&q, &["a^2", "b^2", "a*d", "a*c", "b*d"]);
    let res = minimal_resolution(&m, h, d).map_err(|e| e.to_string())?;
    audit(&res, "P/I over P/(ac,bd)")?;
    ensure!(res.betti().get(2, 4) == Some(1), "beta_24 = {:?}", res.betti().get(2, 4));

    let s = ring(NON_KOSZUL_EXAMPLE, d);
    let rep = koszul_check(&s, h, d).map_err(|e| e.to_string())?;
    ensure!(!rep.koszul_within_bounds, "the six-variable example passed the Koszul check");
    ensure!(rep.offending_cell == Some((3, 4)), "offending cell {:?}", rep.offending_cell);
    ensure!(rep.betti.get(3, 4).is_some_and(|b| b > 0), "beta_34(k) = {:?}", rep.betti.get(3, 4));

    let s = ring(SECOND_NON_KOSZUL, d);
    let rep = koszul_check(&s, h, d).map_err(|e| e.to_string())?;
    ensure!(!rep.koszul_within_bounds, "(xy - zt) + squares passed the Koszul check");
    Ok(format!(
        "beta_(i,i+1) = 1 for i = 1..4; beta_24 = 1; cell (3,4); second example fails at {:?}",
        rep.offending_cell.expect("failure has a cell")
    ))
}

fn c8_golod() -> Outcome {
    let (h, d) = (4, 8);
    let q = ring(FINAL_EXAMPLE, d);
    let rep = golod_map_check(&q, &polys(&q, &["z*t"]), h, d).map_err(|e| e.to_string())?;
    ensure!(rep.golod_within_bounds, "Q -> Q/(zt) not Golod: {:?}", rep.violation);

    let s = ring("ring x, y, z;", d);
    let rep = golod_map_check(&s, &polys(&s, &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]), h, d)
        .map_err(|e| e.to_string())?;
    ensure!(rep.golod_within_bounds, "S -> S/m^2 not Golod: {:?}", rep.violation);

    let p = ring(CI_EXAMPLE, d);
    let rep = golod_map_check(&p, &polys(&p, &["a^2", "b^2", "a*d"]), h, d).map_err(|e| e.to_string())?;
    ensure!(!rep.golod_within_bounds, "P/(ac,bd) -> P/I reported Golod");
    ensure!(rep.violation == Some((2, 4)), "violation {:?}", rep.violation);

    // Serre comparison through internal degree 6 needs tables to i = 6.
    let bound = 6;
    let cases: [(&str, &str, &[&str], bool); 3] = [
        (FINAL_EXAMPLE, "ring x, y, z, t; ideal x^2, x*y, z^2, z*t;", &["z*t"], true),
        (
            "ring x, y, z;",
            "ring x, y, z; ideal x^2, x*y, x*z, y^2, y*z, z^2;",
            &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"],
            true,
        ),
        (CI_EXAMPLE, "ring a, b, c, d; ideal a^2, b^2, a*d, a*c, b*d;", &["a^2", "b^2", "a*d"], false),
    ];
    let mut firsts = Vec::new();
    for (source, target, extra, golod) in cases {
        let q = ring(source, bound);
        let r = ring(target, bound);
        let k_q = minimal_resolution(&GradedModulePresentation::residue_field(&q), 6, bound).map_err(|e| e.to_string())?;
        let r_q = minimal_resolution(&cyclic(&q, extra), 6, bound).map_err(|e| e.to_string())?;
        let k_r = minimal_resolution(&GradedModulePresentation::residue_field(&r), 6, bound).map_err(|e| e.to_string())?;
        for (res, what) in [(&k_q, "k over Q"), (&r_q, "R over Q"), (&k_r, "k over R")] {
            audit(res, what)?;
        }
        let rep = serre_check(k_q.betti(), r_q.betti(), k_r.betti(), bound).map_err(|e| e.to_string())?;
        ensure!(rep.inequality_holds, "{target}: Serre inequality fails at {:?}", rep.first_difference);
        ensure!(rep.equality_holds == golod, "{target}: equality {} but Golod {golod}", rep.equality_holds);
        firsts.push(rep.first_difference);
    }
    Ok(format!("Golod verdicts match; Serre equality exactly in the Golod cases (non-Golod differs first at {:?})", firsts[2].expect("strict")))
}

fn lind(module: &GradedModulePresentation<'_, Rationals>, h: usize) -> Result<usize, String> {
    let d = default_degree_bound(h, module.max_generator_degree().max(2));
    let d = d.min(module.ring().degree_bound());
    let rep = linearity_defect(module, h, d).map_err(|e| e.to_string())?;
    ensure!(rep.stable_up_to_bounds, "linearity defect {} not stable below h = {h}", rep.lind_lower_bound);
    Ok(rep.lind_lower_bound)
}

fn c9_linearity_defect() -> Outcome {
    let h = 5;
    let r = ring("ring x, y; ideal x^2, x*y, y^2;", 8);
    let k = GradedModulePresentation::residue_field(&r);
    let res = minimal_resolution(&k, h, 8).map_err(|e| e.to_string())?;
    audit(&res, "k over k[x,y]/(x,y)^2")?;
    for (i, j, b) in res.betti().nonzero_cells() {
        ensure!(i as u32 == j, "off-diagonal beta_({i},{j}) = {b}");
    }
    for i in 0..=5usize {
        ensure!(res.betti().get(i, i as u32) == Some(1 << i), "beta_({i},{i}) = {:?}", res.betti().get(i, i as u32));
    }
    ensure!(lind(&k, h)? == 0, "lind k != 0");

    // (ring, N as R/(gens), f) with f regular on N of degree 2
    let deg2: [(&str, &[&str], &str); 5] = [
        ("ring x;", &[], "x^2"),
        ("ring x, y;", &[], "x^2"),
        ("ring x, y; ideal x^2;", &[], "y^2"),
        ("ring x, y, z; ideal x*y;", &[], "z^2"),
        ("ring x, y;", &["x^2"], "y^2"),
    ];
    let mut pairs = Vec::new();
    for (text, n_gens, f) in deg2 {
        let r = ring(text, 9);
        let n = cyclic(&r, n_gens);
        let mut quotient = n_gens.to_vec();
        quotient.push(f);
        let nf = cyclic(&r, &quotient);
        let (a, b) = (lind(&n, h)?, lind(&nf, h)?);
        ensure!(b == a + 1, "{text} N = R/{n_gens:?}, f = {f}: lind {a} then {b}");
        pairs.push((a, b));
    }

    let sixth: [(&str, &[&str], usize); 3] = [
        ("ring x1, x2; ideal x1^2;", &["x1", "x2^2"], 1),
        ("ring x1, x2, x3; ideal x1^2;", &["x1", "x2^2", "x3^2"], 2),
        ("ring x1, x2, x3; ideal x1*x2;", &["x1", "x2^2", "x3^2"], 2),
    ];
    for (text, j, dim) in sixth {
        let r = ring(text, 9);
        let l = lind(&cyclic(&r, j), h)?;
        ensure!(l == dim, "{text} J = {j:?}: lind {l}, dim {dim}");
    }
    Ok(format!("lind(k) = 0, beta_ii = 2^i; deg-2 pairs {pairs:?}; lind(R/J) = dim R three times"))
}

fn c10_properties() -> Outcome {
    let colon = colon_oracle()?;
    let graphs = chordality_oracle()?;
    let resolutions = resolution_invariants()?;
    Ok(format!("{colon} colon instances; {graphs} graphs; {resolutions} resolutions audited"))
}

fn quiet_config(cases: u32) -> Config {
    Config { cases, failure_persistence: None, ..Config::default() }
}

fn monomial_strategy(nvars: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, nvars).prop_map(Monomial::new)
}

fn colon_oracle() -> Result<usize, String> {
    let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let strategy = (prop::collection::vec(monomial_strategy(4, 3), 1..6), monomial_strategy(4, 3));
    let mut runner = TestRunner::new(quiet_config(500));
    runner
        .run(&strategy, |(gens, m)| {
            let i = MonomialIdeal::new(names.clone(), gens);
            let colon = monomial_colon(&i, &m);
            // u in (I : m) iff u m in I, checked on every monomial of degree <= 6
            for deg in 0..=6 {
                for u in Monomial::all_of_degree(4, deg) {
                    prop_assert_eq!(colon.contains(&u), i.contains(&u.mul(&m)));
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(500)
}

/// Vertex sets inducing a cycle of length at least 4.
fn has_chordless_cycle(n: usize, adj: &[Vec<bool>]) -> bool {
    (0u32..1 << n).filter(|s| s.count_ones() >= 4).any(|s| {
        let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let degree_two = vs.iter().all(|&v| vs.iter().filter(|&&w| adj[v][w]).count() == 2);
        // a 2-regular graph is a cycle iff it is connected
        let mut seen = vec![vs[0]];
        let mut stack = vec![vs[0]];
        while let Some(v) = stack.pop() {
            for &w in &vs {
                if adj[v][w] && !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        degree_two && seen.len() == vs.len()
    })
}

fn check_graph(n: usize, edges: &[bool]) -> Result<(), String> {
    let mut graph = VarGraph::new((0..n).map(|v| format!("v{v}")).collect());
    let mut adj = vec![vec![false; n]; n];
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if edges[k] {
                graph.add_edge(u, v);
                adj[u][v] = true;
                adj[v][u] = true;
            }
            k += 1;
        }
    }
    let index = |name: &String| graph.vertices().iter().position(|w| w == name).expect("vertex");
    match is_chordal(&graph) {
        Chordality::PerfectEliminationOrdering(order) => {
            let order: Vec<usize> = order.iter().map(index).collect();
            ensure!(graph.is_perfect_elimination_order(&order), "bad PEO on {n} vertices");
            ensure!(!has_chordless_cycle(n, &adj), "chordal verdict but a chordless cycle exists");
        }
        Chordality::ChordlessCycle(cycle) => {
            let c: Vec<usize> = cycle.iter().map(index).collect();
            let len = c.len();
            ensure!(len >= 4, "cycle of length {len}");
            for a in 0..len {
                for b in a + 1..len {
                    let consecutive = b == a + 1 || (a == 0 && b == len - 1);
                    ensure!(adj[c[a]][c[b]] == consecutive, "witness {cycle:?} is not a chordless cycle");
                }
            }
        }
    }
    Ok(())
}

fn chordality_oracle() -> Result<usize, String> {
    let mut count = 0;
    // every graph on at most 5 vertices
    for n in 1..=5usize {
        let e = n * (n - 1) / 2;
        for mask in 0u32..1 << e {
            let edges: Vec<bool> = (0..e).map(|k| mask >> k & 1 == 1).collect();
            check_graph(n, &edges)?;
            count += 1;
        }
    }
    // sampled graphs on 6 to 8 vertices
    let strategy = (6usize..=8).prop_flat_map(|n| {
        (Just(n), prop::collection::vec(prop::bool::weighted(0.6), n * (n - 1) / 2))
    });
    let cases = 3000;
    let mut runner = TestRunner::new(quiet_config(cases));
    runner
        .run(&strategy, |(n, edges)| {
            check_graph(n, &edges).map_err(TestCaseError::fail)
        })
        .map_err(|e| e.to_string())?;
    Ok(count + cases as usize)
}

fn resolution_invariants() -> Result<usize, String> {
    let mut audited = 0;
    let h = 4;
    let fixed: [(&str, &[&str]); 8] = [
        (FINAL_EXAMPLE, &["z*t"]),
        (CI_EXAMPLE, &["a^2", "b^2", "a*d"]),
        (NON_KOSZUL_EXAMPLE, &["x1", "x2", "x3", "x4", "x5", "x6"]),
        (SECOND_NON_KOSZUL, &["x", "y", "z", "t"]),
        ("ring x, y; ideal x^2, x*y, y^2;", &["x", "y"]),
        ("ring x;", &["x^2"]),
        ("ring x1, x2, x3; ideal x1*x2;", &["x1", "x2^2", "x3^2"]),
        ("ring x, y, z; ideal x^2 - y*z, y^2 - x*z;", &["x", "y", "z"]),
    ];
    for (text, gens) in fixed {
        let r = ring(text, 7);
        for module in [GradedModulePresentation::free_cyclic(&r), cyclic(&r, gens)] {
            let res = minimal_resolution(&module, h, 7).map_err(|e| e.to_string())?;
            audit(&res, text)?;
            audited += 1;
        }
    }

    // random quadratic monomial rings with a random cyclic module
    let names = ["a", "b", "c", "d"];
    let quadrics: Vec<String> = (0..4)
        .flat_map(|i| (i..4).map(move |j| format!("{}*{}", names[i], names[j])))
        .collect();
    let strategy = (
        prop::collection::vec(0..quadrics.len(), 1..5),
        prop::collection::vec(0..quadrics.len(), 1..3),
    );
    let cases = 40;
    let mut runner = TestRunner::new(quiet_config(cases));
    runner
        .run(&strategy, |(ideal_idx, module_idx)| {
            let text = format!(
                "ring a, b, c, d; ideal {};",
                ideal_idx.iter().map(|&k| quadrics[k].as_str()).collect::<Vec<_>>().join(", ")
            );
            let r = ring(&text, 6);
            let gens: Vec<&str> = module_idx.iter().map(|&k| quadrics[k].as_str()).collect();
            let res = minimal_resolution(&cyclic(&r, &gens), 3, 6).map_err(|e| TestCaseError::fail(e.to_string()))?;
            audit(&res, &text).map_err(TestCaseError::fail)?;
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    audited += cases as usize;

    // Betti numbers do not depend on the monomial order
    let orders: [(&str, &str); 3] = [
        ("ring x, y, z; ideal x^2 - y*z, y^2 - x*z;", "order x < y < z;"),
        ("ring x, y, z, t; ideal x*y - z*t, x^2, z^2;", "order t < x < z < y;"),
        (NON_KOSZUL_EXAMPLE, "order x3 < x1 < x6 < x2 < x5 < x4;"),
    ];
    for (text, order) in orders {
        let a = ring(text, 7);
        let b = ring(&format!("{text} {order}"), 7);
        ensure!(a.order() != b.order(), "{order} is the default order");
        let ra = minimal_resolution(&GradedModulePresentation::residue_field(&a), 4, 7).map_err(|e| e.to_string())?;
        let rb = minimal_resolution(&GradedModulePresentation::residue_field(&b), 4, 7).map_err(|e| e.to_string())?;
        audit(&ra, text)?;
        audit(&rb, text)?;
        ensure!(ra.betti().nonzero_cells() == rb.betti().nonzero_cells(), "{text}: Betti numbers depend on the order");
        audited += 2;
    }
    Ok(audited)
}

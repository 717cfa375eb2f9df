//! End-to-end paths through the public API: text in, verdicts out.

use koszulkit::gb::buchberger;
use koszulkit::monomial::{ci_plus_two_linear, uk_recognize};
use koszulkit::resolution::{koszul_check, linearity_defect, minimal_resolution};
use koszulkit::{parse_input, PrimeField, Rationals};

#[test]
fn monomial_input_feeds_both_certificate_searches() {
    let input = parse_input("ring x1, x2, x3, t; ideal x1^2, x1*x2, x2^2, x3^2;").unwrap();
    let ideal = input.monomial_ideal().unwrap();
    let uk = uk_recognize(&ideal).expect("H(3) extended by t");
    assert!(uk.replay().same_ideal(&ideal));
    let cert = ci_plus_two_linear(&ideal).unwrap().expect("x3^2 splits off");
    assert!(cert.validate(&ideal));
}

#[test]
fn declared_order_reaches_the_groebner_basis() {
    let input = parse_input("ring x, y, z; ideal x^2 - y*z, x*y - z^2; order x < y < z;").unwrap();
    let order = input.monomial_order();
    let gb = buchberger(&input.ideal_over(&Rationals), &order, 6).unwrap();
    assert!(gb.is_complete());
    for g in gb.elements() {
        assert!(gb.reduce(g).is_zero());
    }
    let ring = input.quotient_ring(&Rationals, 5).unwrap();
    let default = parse_input("ring x, y, z; ideal x^2 - y*z, x*y - z^2;").unwrap();
    let other = default.quotient_ring(&Rationals, 5).unwrap();
    assert_eq!(ring.hilbert_function(), other.hilbert_function());
}

#[test]
fn presented_module_resolves_in_two_characteristics() {
    let text = "ring x, y; ideal x*y; module gens 0, 1; rel x, 0; rel y^2, y;";
    let input = parse_input(text).unwrap();
    let q = input.quotient_ring(&Rationals, 7).unwrap();
    let p = input.quotient_ring(&PrimeField::new(32003).unwrap(), 7).unwrap();
    let over_q = minimal_resolution(&input.module_over(&q).unwrap(), 4, 7).unwrap();
    let over_p = minimal_resolution(&input.module_over(&p).unwrap(), 4, 7).unwrap();
    assert!(over_q.check_d_squared() && over_q.check_minimal());
    assert!(over_p.check_d_squared() && over_p.check_minimal());
    assert_eq!(over_q.betti(), over_p.betti());
}

#[test]
fn monomial_quotient_is_koszul_and_k_has_no_defect() {
    let input = parse_input("ring a, b, c, d; ideal a^2, b^2, a*d, a*c, b*d;").unwrap();
    let ring = input.quotient_ring(&Rationals, 7).unwrap();
    let koszul = koszul_check(&ring, 5, 7).unwrap();
    assert!(koszul.koszul_within_bounds);
    let lind = linearity_defect(&input.module_over(&ring).unwrap(), 5, 7).unwrap();
    assert_eq!(lind.lind_lower_bound, 0);
}

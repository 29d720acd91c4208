use superspecial::counting::{count_points_brute, count_points_fast, Classification};
use superspecial::ff::is_prime;
use superspecial::hassewitt::{
    coefficient_via_enumeration, enumerate_solutions, is_superspecial, target_monomials,
    CriterionEngine, ExpansionOracle, SolutionTuple,
};
use superspecial::{verify_smoothness_certificate, CurveDefinition, Exponent4, PrimeModulus};

fn fp(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&p| is_prime(p))
}

#[test]
fn enumeration_agrees_with_expansion_on_every_monomial() {
    for p in [5, 7, 11, 13] {
        let oracle = ExpansionOracle::new(fp(p)).unwrap();
        let engine = CriterionEngine::new(fp(p));
        let expanded = oracle.polynomial();
        assert!(expanded
            .terms()
            .all(|(e, _)| e.degree() == 5 * (p as u32 - 1)));
        for (ev, c) in expanded.terms() {
            assert_eq!(engine.coefficient(ev), c, "p = {p}, ev = {ev}");
        }
        for ev in target_monomials(fp(p)).unwrap().entries {
            assert_eq!(
                engine.coefficient(ev),
                oracle.coefficient(ev),
                "p = {p}, target {ev}"
            );
        }
    }
}

#[test]
fn odd_z_exponents_vanish() {
    for p in [5, 7, 11, 13] {
        let oracle = ExpansionOracle::new(fp(p)).unwrap();
        assert!(oracle.polynomial().terms().all(|(e, _)| e.z() % 2 == 0));
        for ev in target_monomials(fp(p)).unwrap().entries {
            if ev.z() % 2 == 1 {
                assert!(coefficient_via_enumeration(fp(p), ev).is_zero());
                assert!(oracle.coefficient(ev).is_zero());
            }
        }
    }
    // some odd-k vectors that are not targets
    for ev in [
        Exponent4::new(6, 6, 11, 7),
        Exponent4::new(0, 0, 1, 29),
        Exponent4::new(3, 3, 3, 21),
    ] {
        assert!(coefficient_via_enumeration(fp(7), ev).is_zero());
    }
}

#[test]
fn no_solutions_for_p_2_mod_3() {
    for p in primes(5, 269).filter(|p| p % 3 == 2) {
        for ev in target_monomials(fp(p)).unwrap().entries {
            assert!(
                enumerate_solutions(fp(p), ev).is_empty(),
                "p = {p}, ev = {ev}"
            );
        }
    }
}

#[test]
fn unique_solution_for_p_1_mod_3() {
    for p in primes(7, 269).filter(|p| p % 3 == 1) {
        let n = p - 1;
        let ev = Exponent4::new(n as u32, n as u32, 2 * n as u32, n as u32);
        let third = n / 3;
        assert_eq!(
            enumerate_solutions(fp(p), ev),
            vec![SolutionTuple([third, third, 0, 0, third, 0])]
        );
        assert!(!coefficient_via_enumeration(fp(p), ev).is_zero(), "p = {p}");
    }
}

#[test]
fn verdict_matches_residue_up_to_1000() {
    for p in primes(5, 1000) {
        let report = is_superspecial(fp(p)).unwrap();
        assert_eq!(report.superspecial, p % 3 == 2, "p = {p}");
        assert!(report.agrees);
        if p % 3 == 1 {
            assert!(report.nonzero_count() >= 1);
        }
    }
}

#[test]
fn smoothness_certificate_holds() {
    for p in primes(5, 269) {
        let report = verify_smoothness_certificate(&CurveDefinition::new(fp(p))).unwrap();
        assert!(report.passed(), "p = {p}");
    }
}

#[test]
fn fast_and_brute_counts_agree() {
    for p in [3, 5, 7, 11, 13] {
        assert_eq!(
            count_points_fast(fp(p)).unwrap().count,
            count_points_brute(fp(p)).unwrap().count,
            "p = {p}"
        );
    }
}

#[test]
fn classification_by_residue() {
    for p in primes(5, 269) {
        let r = count_points_fast(fp(p)).unwrap();
        assert!(r.hw_lower <= r.count as i64 && r.count as i64 <= r.hw_upper);
        if p % 3 == 2 {
            assert_eq!(r.classification, Classification::Maximal, "p = {p}");
            assert_eq!(r.count, p * p + 1 + 8 * p);
        } else {
            assert_eq!(r.classification, Classification::Neither, "p = {p}");
        }
    }
}

#[test]
fn counts_divisible_by_three_when_cube_roots_of_unity_exist() {
    // x -> zeta x permutes points with x != 0 in orbits of 3; the x = 0 locus has 6 points
    for p in primes(5, 269) {
        assert_eq!(count_points_fast(fp(p)).unwrap().count % 3, 0, "p = {p}");
    }
}

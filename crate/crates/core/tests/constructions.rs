//! The certificate constructions on the range where their bounds are proven.

use zsindex::certify::{small_a_certificate, verify_certificate};
use zsindex::harness::{in_two_prime_power_domain, verify_modulus, Mode, VerifyOptions};
use zsindex::{Modulus, NormalForm};

#[test]
fn small_a_certifies_when_n_over_b_exceeds_60() {
    let mut checked = 0;
    for n in (1001..=2500u64).filter(|&n| in_two_prime_power_domain(n)) {
        let nm = Modulus::new(n).unwrap();
        // a = 2 forces c = b + 1
        for b in (2..=n / 61).filter(|&b| b + 1 < n.div_ceil(2)) {
            let nf = NormalForm::new(nm, 2, b, b + 1).unwrap();
            let c = small_a_certificate(&nf).unwrap_or_else(|e| panic!("{nf}: {e}"));
            assert!(verify_certificate(&nf.sequence(), c.multiplier()), "{nf}");
            checked += 1;
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn small_a_even_b_always_certifies() {
    for n in (5..=1001u64).filter(|n| n % 2 == 1) {
        let nm = Modulus::new(n).unwrap();
        for nf in NormalForm::all(nm).into_iter().filter(|f| f.a() == 2 && f.b() % 2 == 0) {
            let c = small_a_certificate(&nf).unwrap();
            assert_eq!(c.multiplier(), (n - 1) / 2);
            assert!(verify_certificate(&nf.sequence(), c.multiplier()));
        }
    }
}

#[test]
fn orbit_runs_past_the_gating_range() {
    for n in [361u64, 385, 437, 539] {
        let r = verify_modulus(Modulus::new(n).unwrap(), VerifyOptions::new(Mode::Orbits));
        assert!(r.counterexamples.is_empty(), "n={n}");
        assert_eq!(r.cross_check_mismatches, 0);
        if in_two_prime_power_domain(n) {
            assert_eq!(r.pipeline_gaps, 0, "n={n}");
        }
    }
}

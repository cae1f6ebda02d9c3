//! Property-based invariants over randomized inputs.

use proptest::prelude::*;

use thetalab::exact::{gcd, kronecker, ReducedRational};
use thetalab::gauss::{gauss_sum_bruteforce, gauss_sum_closed, scaling_ratio};
use thetalab::local::{classify_rational, predicted_kappa, TwoSidedStatus};
use thetalab::series::sawtooth_psi;

const P: u32 = 128;

proptest! {
    /// |S(b, a)|² ∈ {0, b, 2b} for coprime (b, a): zero for b ≡ 2 mod 4,
    /// b for odd b, 2b for b ≡ 0 mod 4.
    #[test]
    fn gauss_sum_magnitude_squared(b in 1i64..=120, a in -120i64..=120) {
        prop_assume!(a != 0 && gcd(b as i128, a as i128) == 1);
        let s2 = gauss_sum_bruteforce(b, a, P).unwrap().norm_sqr().to_f64();
        let expected = match b % 4 {
            2 => 0.0,
            0 => (2 * b) as f64,
            _ => b as f64,
        };
        prop_assert!((s2 - expected).abs() < 1e-20, "|S|²={s2} expected {expected}");
    }

    /// The closed form agrees with brute force everywhere in range.
    #[test]
    fn closed_form_matches_bruteforce(b in 1i64..=200, a in -99i64..=99) {
        prop_assume!(a != 0 && gcd(b as i128, a as i128) == 1);
        let closed = gauss_sum_closed(b, a).unwrap().to_bigcomplex(P);
        let brute = gauss_sum_bruteforce(b, a, P).unwrap();
        let diff = closed.sub(&brute).abs().to_f64();
        prop_assert!(diff < 1e-30, "diff={diff:e}");
    }

    /// S(ka, kb) = k · S(a, b).
    #[test]
    fn scaling_law(a in 1i64..=60, b in -60i64..=60, k in 1i64..=9) {
        prop_assume!(b != 0 && gcd(a as i128, b as i128) == 1);
        let r = match scaling_ratio(a, b, k, P) {
            Ok(r) => r,
            // S(a, b) = 0 (a ≡ 2 mod 4) makes the ratio degenerate.
            Err(_) => return Ok(()),
        };
        let (re, im) = r.to_f64s();
        prop_assert!((re - k as f64).abs() < 1e-20 && im.abs() < 1e-20,
            "ratio=({re},{im}) expected {k}");
    }

    /// Kronecker symbol multiplicativity in the upper argument. The
    /// (0/n) convention for n < 0 breaks the identity only when one
    /// factor is zero, which is excluded.
    #[test]
    fn kronecker_multiplicative(a in -60i128..=60, b in -60i128..=60, n in -60i128..=60) {
        prop_assume!(a != 0 && b != 0);
        prop_assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
    }

    /// κ_predicted = 0 exactly in the two-sided-derivative (odd/odd)
    /// case.
    #[test]
    fn kappa_zero_iff_two_sided(num in -200i64..=200, den in 1i64..=200) {
        let xi = ReducedRational::reduce(num, den).unwrap();
        let v = classify_rational(xi);
        let kappa = predicted_kappa(xi, P);
        let is_zero = kappa.abs().to_f64() == 0.0;
        prop_assert_eq!(is_zero, v.two_sided == TwoSidedStatus::DerivativeZero);
        if !is_zero {
            // |κ| = 1/√den when nonzero.
            let mag = kappa.abs().to_f64();
            prop_assert!((mag - 1.0 / (xi.den() as f64).sqrt()).abs() < 1e-15);
        }
    }

    /// Saw-tooth ψ: period 1, odd, zero at integers, |ψ| ≤ 1/2.
    #[test]
    fn sawtooth_properties(x in -50.0f64..50.0) {
        let psi = sawtooth_psi(x);
        prop_assert!(psi.abs() <= 0.5);
        prop_assert!((sawtooth_psi(x + 1.0) - psi).abs() < 1e-12);
        if x.fract() != 0.0 {
            prop_assert!((sawtooth_psi(-x) + psi).abs() < 1e-12);
        }
    }
}

#[test]
fn sawtooth_zero_at_integers() {
    for k in -3i32..=3 {
        assert_eq!(sawtooth_psi(k as f64), 0.0);
    }
}

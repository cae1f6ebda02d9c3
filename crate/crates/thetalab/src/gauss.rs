//! Quadratic Gauss sums: brute-force evaluation with exact angle
//! reduction, symbolic closed forms, the Itatsu coefficient R(p,q), and
//! oracle checks of the reciprocity and Landsberg–Schaar identities.
//!
//! The brute-force path is the oracle everywhere: closed forms are checked
//! against it, and identities whose printed form disagrees with direct
//! summation (the reciprocity constant, the Landsberg–Schaar exponent
//! sign, the S(ka,kb) scaling) report the measured relation.

use crate::bigcomplex::{BigComplex, GUARD_BITS};
use crate::error::{Error, Result};
use crate::exact::{epsilon_factor, gcd, kronecker, EighthRootPhase};
use rug::Float;
use serde::Serialize;
use std::fmt;

/// Direct-summation bound for brute-force Gauss sums.
pub const BRUTE_FORCE_MODULUS_BOUND: i64 = 1_000_000;

/// Symbolic Gauss-sum value: zero, or √m · e^{ikπ/4}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactGaussSum {
    pub is_zero: bool,
    pub phase: EighthRootPhase,
    pub radicand: u64,
}

impl ExactGaussSum {
    pub fn zero() -> Self {
        ExactGaussSum {
            is_zero: true,
            phase: EighthRootPhase::new(0),
            radicand: 1,
        }
    }

    pub fn nonzero(k: i64, radicand: u64) -> Self {
        ExactGaussSum {
            is_zero: false,
            phase: EighthRootPhase::new(k),
            radicand,
        }
    }

    pub fn conj(self) -> Self {
        if self.is_zero {
            self
        } else {
            ExactGaussSum {
                phase: self.phase.conj(),
                ..self
            }
        }
    }

    /// Numeric value √m · e^{ikπ/4} at the given precision.
    pub fn to_bigcomplex(self, prec: u32) -> BigComplex {
        if self.is_zero {
            return BigComplex::zero(prec);
        }
        let wp = prec + GUARD_BITS;
        let root = Float::with_val(wp, self.radicand).sqrt();
        let k = self.phase.k();
        let val = if k % 2 == 0 {
            // axis direction
            match k {
                0 => BigComplex::new(root, Float::new(wp)),
                2 => BigComplex::new(Float::new(wp), root),
                4 => BigComplex::new(-root, Float::new(wp)),
                _ => BigComplex::new(Float::new(wp), -root),
            }
        } else {
            // diagonal: √m (±1 ± i)/√2
            let half = Float::with_val(wp, &root / Float::with_val(wp, 2u32).sqrt());
            let (sr, si) = match k {
                1 => (1, 1),
                3 => (-1, 1),
                5 => (-1, -1),
                _ => (1, -1),
            };
            BigComplex::new(
                Float::with_val(wp, &half * sr),
                Float::with_val(wp, &half * si),
            )
        };
        val.rounded(prec)
    }
}

impl fmt::Display for ExactGaussSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero {
            write!(f, "0")
        } else {
            write!(f, "sqrt({})*e^(i*{}π/4)", self.radicand, self.phase.k())
        }
    }
}

/// Reusable brute-force evaluator for a fixed positive modulus.
///
/// Caches the roots of unity e^{2πim/b} and the squares j² mod b, so
/// sweeping many numerators `a` over the same modulus costs only table
/// lookups and additions. Summation is in ascending index order, so the
/// result is bit-reproducible at a given precision.
pub struct GaussBruteForce {
    modulus: u64,
    prec: u32,
    roots_re: Vec<Float>,
    roots_im: Vec<Float>,
    squares: Vec<u64>,
}

impl GaussBruteForce {
    /// Precompute tables for modulus `b` (positive, ≤ the direct bound).
    pub fn new(b: u64, prec: u32) -> Result<Self> {
        if b == 0 || b > BRUTE_FORCE_MODULUS_BOUND as u64 {
            return Err(Error::precondition(format!(
                "brute-force modulus must satisfy 1 <= b <= {BRUTE_FORCE_MODULUS_BOUND}, got {b}"
            )));
        }
        let wp = prec + GUARD_BITS;
        let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
        let mut roots_re = Vec::with_capacity(b as usize);
        let mut roots_im = Vec::with_capacity(b as usize);
        for m in 0..b {
            let angle = Float::with_val(wp, &two_pi * m) / Float::with_val(wp, b);
            let (s, c) = angle.sin_cos(Float::new(wp));
            roots_re.push(c);
            roots_im.push(s);
        }
        let squares = (0..b).map(|j| (j * j) % b).collect();
        Ok(GaussBruteForce {
            modulus: b,
            prec,
            roots_re,
            roots_im,
            squares,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// S(b, a) = Σ_{j=0}^{b−1} e^{2πi j² a / b}, angle reduced exactly.
    pub fn sum(&self, a: i64) -> BigComplex {
        let b = self.modulus;
        let a_red = (a as i128).rem_euclid(b as i128) as u64;
        let wp = self.prec + GUARD_BITS;
        let mut re = Float::new(wp);
        let mut im = Float::new(wp);
        for &s in &self.squares {
            // s < b <= 1e6 and a_red < b, so s * a_red < 1e12 fits in u64.
            let m = (s * a_red % b) as usize;
            re += &self.roots_re[m];
            im += &self.roots_im[m];
        }
        BigComplex::new(re, im).rounded(self.prec)
    }
}

/// S(b,a) for non-zero integer b, with the sign extension
/// S(b,a) = S(|b|, sgn(b)·a).
pub fn gauss_sum_bruteforce(b: i64, a: i64, prec: u32) -> Result<BigComplex> {
    if b == 0 {
        return Err(Error::precondition("gauss sum requires b != 0"));
    }
    let a_signed = if b < 0 { -a } else { a };
    GaussBruteForce::new(b.unsigned_abs(), prec).map(|ctx| ctx.sum(a_signed))
}

/// Smith's half-weight sum G(r/s) = Σ_{t=0}^{s−1} e^{iπ t² r/s}, gcd(r,s)=1.
pub fn smith_g(r: i64, s: i64, prec: u32) -> Result<BigComplex> {
    if s < 1 {
        return Err(Error::precondition("smith_g requires s >= 1"));
    }
    if gcd(r as i128, s as i128) != 1 {
        return Err(Error::NotCoprime(r as i128, s as i128));
    }
    if s > BRUTE_FORCE_MODULUS_BOUND {
        return Err(Error::precondition(format!(
            "smith_g modulus too large: {s}"
        )));
    }
    let wp = prec + GUARD_BITS;
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let period = 2 * s as i128; // e^{iπ t/s} has period 2s in t
    let mut re = Float::new(wp);
    let mut im = Float::new(wp);
    for t in 0..s as i128 {
        let m = (t * t % period * (r as i128)).rem_euclid(period);
        let angle = Float::with_val(wp, &pi * Float::with_val(wp, m)) / Float::with_val(wp, s);
        let (sn, cs) = angle.sin_cos(Float::new(wp));
        re += cs;
        im += sn;
    }
    Ok(BigComplex::new(re, im).rounded(prec))
}

/// Exact closed form of S(p,q) for p ≥ 1, gcd(p,q)=1:
///
/// * odd p: ε(p) (q/p) √p,
/// * p ≡ 2 (mod 4): zero,
/// * p ≡ 0 (mod 4), q odd: (1+i) ε(q)⁻¹ (p/|q|) √p = √(2p)·e^{±iπ/4}·(p/|q|).
pub fn gauss_sum_closed(p: i64, q: i64) -> Result<ExactGaussSum> {
    if p < 1 {
        return Err(Error::precondition("gauss_sum_closed requires p >= 1"));
    }
    if gcd(p as i128, q as i128) != 1 {
        return Err(Error::NotCoprime(p as i128, q as i128));
    }
    if p % 2 == 1 {
        let eps = epsilon_factor(p)?;
        let mut k = eps.k() as i64;
        if kronecker(q as i128, p as i128) == -1 {
            k += 4;
        }
        Ok(ExactGaussSum::nonzero(k, p as u64))
    } else if p % 4 == 2 {
        Ok(ExactGaussSum::zero())
    } else {
        // p ≡ 0 (mod 4), q odd
        let qa = q.unsigned_abs() as i64;
        let mut k = 1i64;
        if qa % 4 == 3 {
            k -= 2; // ε(q)⁻¹ = −i
        }
        if kronecker(p as i128, qa as i128) == -1 {
            k += 4;
        }
        let value = ExactGaussSum::nonzero(k, 2 * p as u64);
        Ok(if q < 0 { value.conj() } else { value })
    }
}

/// The unit-modulus Itatsu coefficient R(p,q) governing the √h cusp of F
/// at q/p:
///
/// * p odd, q even: (q/p) e^{−πi(p−1)/4},
/// * p even, q odd: (p/|q|) e^{πiq/4},
/// * p, q both odd: 0.
pub fn itatsu_r(p: i64, q: i64) -> Result<ExactGaussSum> {
    if p < 1 {
        return Err(Error::precondition("itatsu_r requires p >= 1"));
    }
    if gcd(p as i128, q as i128) != 1 {
        return Err(Error::NotCoprime(p as i128, q as i128));
    }
    if p % 2 == 1 && q % 2 == 0 {
        let mut k = -(p - 1) % 16; // multiple of 2; reduced mod 8 below
        if kronecker(q as i128, p as i128) == -1 {
            k += 4;
        }
        Ok(ExactGaussSum::nonzero(k, 1))
    } else if p % 2 == 0 {
        let mut k = q;
        if kronecker(p as i128, q.unsigned_abs() as i128) == -1 {
            k += 4;
        }
        Ok(ExactGaussSum::nonzero(k, 1))
    } else {
        Ok(ExactGaussSum::zero())
    }
}

/// Measured ratio LHS/RHS of the printed reciprocity law
/// S(p,q) = e^{πi·sgn(q)/4} (p/(2|q|))^{1/2} S(4|q|, −sgn(q)·p),
/// both sides by direct summation. The oracle value of the ratio is 1/2.
pub fn reciprocity_ratio(p: i64, q: i64, prec: u32) -> Result<BigComplex> {
    if p < 1 || q == 0 {
        return Err(Error::precondition(
            "reciprocity_ratio requires p >= 1 and q != 0",
        ));
    }
    if gcd(p as i128, q as i128) != 1 {
        return Err(Error::NotCoprime(p as i128, q as i128));
    }
    let lhs = gauss_sum_bruteforce(p, q, prec)?;
    let sgn = if q > 0 { 1i64 } else { -1 };
    let inner = gauss_sum_bruteforce(4 * q.abs(), -sgn * p, prec)?;
    let wp = prec + GUARD_BITS;
    let scale = (Float::with_val(wp, p) / Float::with_val(wp, 2 * q.abs())).sqrt();
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let phase = BigComplex::cis(&(Float::with_val(wp, &pi * sgn) / 4i32));
    let rhs = phase.mul(&inner).scale_f(&scale);
    let floor = Float::with_val(wp, 2f64).pow_signed(-((prec / 2) as i32));
    if rhs.abs() < floor {
        return Err(Error::DegenerateRatio(format!(
            "RHS of reciprocity vanishes at (p,q)=({p},{q})"
        )));
    }
    Ok(lhs.div(&rhs).rounded(prec))
}

/// |LHS − RHS| for the classical Landsberg–Schaar identity
/// (1/√p) Σ_{j<p} e^{2πij²q/p} = (e^{πi/4}/√(2q)) Σ_{j<2q} e^{−πij²p/(2q)}.
/// The negative exponent on the right is the oracle-validated form.
pub fn landsberg_schaar_residual(p: i64, q: i64, prec: u32) -> Result<Float> {
    if p < 1 || q < 1 {
        return Err(Error::precondition(
            "landsberg_schaar_residual requires p, q >= 1",
        ));
    }
    let wp = prec + GUARD_BITS;
    let lhs = gauss_sum_bruteforce(p, q, prec + GUARD_BITS)?
        .scale_f(&Float::with_val(wp, p).sqrt().recip());
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    // Σ_{j=0}^{2q−1} e^{−πi j² p/(2q)}; angle period 4q in j²p.
    let period = 4 * q as i128;
    let mut re = Float::new(wp);
    let mut im = Float::new(wp);
    for j in 0..2 * q as i128 {
        let m = (j * j % period * p as i128).rem_euclid(period);
        let angle = -Float::with_val(wp, &pi * Float::with_val(wp, m)) / Float::with_val(wp, 2 * q);
        let (sn, cs) = angle.sin_cos(Float::new(wp));
        re += cs;
        im += sn;
    }
    let phase = BigComplex::cis(&Float::with_val(wp, &pi / 4i32));
    let scale = Float::with_val(wp, 2 * q).sqrt().recip();
    let rhs = phase.mul(&BigComplex::new(re, im)).scale_f(&scale);
    let mut resid = lhs.sub(&rhs).abs();
    resid.set_prec_round(prec, rug::float::Round::Nearest);
    Ok(resid)
}

/// Measured ratio S(ka, kb)/S(a, b) by brute force. The oracle value is k
/// (each residue class repeats k times), not the paper's printed 1.
pub fn scaling_ratio(a: i64, b: i64, k: i64, prec: u32) -> Result<BigComplex> {
    if a < 1 || k < 1 {
        return Err(Error::precondition("scaling_ratio requires a >= 1, k >= 1"));
    }
    if gcd(a as i128, b as i128) != 1 {
        return Err(Error::NotCoprime(a as i128, b as i128));
    }
    let base = gauss_sum_bruteforce(a, b, prec)?;
    let wp = prec + GUARD_BITS;
    let floor = Float::with_val(wp, 2f64).pow_signed(-((prec / 2) as i32));
    if base.abs() < floor {
        return Err(Error::DegenerateRatio(format!(
            "S({a},{b}) = 0; scaling ratio undefined"
        )));
    }
    let scaled = gauss_sum_bruteforce(k * a, k * b, prec)?;
    Ok(scaled.div(&base).rounded(prec))
}

/// Helper: 2^e for signed e, used for tolerance floors.
trait PowSigned {
    fn pow_signed(self, e: i32) -> Float;
}

impl PowSigned for Float {
    fn pow_signed(self, e: i32) -> Float {
        use rug::ops::Pow;
        self.pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 192;

    fn close(z: &BigComplex, re: f64, im: f64, tol: f64) -> bool {
        let (zr, zi) = z.to_f64s();
        (zr - re).abs() <= tol && (zi - im).abs() <= tol
    }

    #[test]
    fn bruteforce_examples() {
        // single term j=0
        for q in [-3i64, 0, 5] {
            assert!(close(&gauss_sum_bruteforce(1, q, P).unwrap(), 1.0, 0.0, 1e-30));
        }
        let sqrt3 = 3f64.sqrt();
        assert!(close(&gauss_sum_bruteforce(3, 1, P).unwrap(), 0.0, sqrt3, 1e-15));
        assert!(close(&gauss_sum_bruteforce(4, 1, P).unwrap(), 2.0, 2.0, 1e-15));
        assert!(close(&gauss_sum_bruteforce(2, 1, P).unwrap(), 0.0, 0.0, 1e-30));
        assert!(gauss_sum_bruteforce(0, 1, P).is_err());
    }

    #[test]
    fn bruteforce_sign_extension_and_conjugate() {
        for (b, a) in [(5i64, 2i64), (7, 3), (12, 5), (9, 4)] {
            let plus = gauss_sum_bruteforce(b, a, P).unwrap();
            let minus = gauss_sum_bruteforce(b, -a, P).unwrap();
            assert!(plus.sub(&minus.conj()).abs().to_f64() < 1e-40);
            let negmod = gauss_sum_bruteforce(-b, -a, P).unwrap();
            assert!(plus.sub(&negmod).abs().to_f64() < 1e-40);
        }
    }

    #[test]
    fn smith_g_examples() {
        let sqrt3 = 3f64.sqrt();
        assert!(close(&smith_g(2, 3, P).unwrap(), 0.0, sqrt3, 1e-15));
        assert!(close(&smith_g(1, 1, P).unwrap(), 1.0, 0.0, 1e-30));
        assert!(close(&smith_g(1, 2, P).unwrap(), 1.0, 1.0, 1e-30));
        assert!(matches!(smith_g(2, 4, P), Err(Error::NotCoprime(..))));
        // G(2q/p) equals the brute-force S(p,q) when 2q/p is reduced.
        let g = smith_g(2, 5, P).unwrap();
        let s = gauss_sum_bruteforce(5, 1, P).unwrap();
        assert!(g.sub(&s).abs().to_f64() < 1e-40);
    }

    #[test]
    fn closed_form_examples() {
        // (5,2): ε(5)(2/5)√5 = −√5
        let g = gauss_sum_closed(5, 2).unwrap();
        assert!(!g.is_zero && g.phase.k() == 4 && g.radicand == 5);
        // (3,1): i√3
        let g = gauss_sum_closed(3, 1).unwrap();
        assert!(!g.is_zero && g.phase.k() == 2 && g.radicand == 3);
        // (2,1): zero
        assert!(gauss_sum_closed(2, 1).unwrap().is_zero);
        assert!(gauss_sum_closed(6, 3).is_err());
    }

    #[test]
    fn closed_form_matches_bruteforce_small_range() {
        let tol = 2f64.powi(-(P as i32) / 4);
        for p in 1..=60i64 {
            let ctx = GaussBruteForce::new(p as u64, P).unwrap();
            for q in -60..=60i64 {
                if gcd(p as i128, q as i128) != 1 {
                    continue;
                }
                let closed = gauss_sum_closed(p, q).unwrap().to_bigcomplex(P);
                let brute = ctx.sum(q);
                assert!(
                    closed.sub(&brute).abs().to_f64() < tol,
                    "p={p} q={q} closed={closed:?} brute={brute:?}"
                );
            }
        }
    }

    #[test]
    fn itatsu_examples() {
        let r = itatsu_r(1, 0).unwrap();
        assert!(!r.is_zero && r.phase.k() == 0 && r.radicand == 1);
        assert!(itatsu_r(3, 3).is_err());
        let r = itatsu_r(2, 1).unwrap();
        assert!(!r.is_zero && r.phase.k() == 1 && r.radicand == 1);
        // both odd → zero
        assert!(itatsu_r(3, 5).unwrap().is_zero);
    }

    #[test]
    fn itatsu_zero_iff_both_odd_crosschecked_by_s2p_q() {
        let tol = 2f64.powi(-(P as i32) / 4);
        for (p, q) in [(3i64, 5i64), (7, 9), (1, 1), (5, 3), (9, 7)] {
            assert!(itatsu_r(p, q).unwrap().is_zero);
            let s = gauss_sum_bruteforce(2 * p, q, P).unwrap();
            assert!(s.abs().to_f64() < tol, "S(2p,q) should vanish at ({p},{q})");
        }
    }

    #[test]
    fn reciprocity_ratio_is_one_half() {
        for (p, q) in [(3i64, 1i64), (1, 1), (5, 1), (7, 2), (4, 3), (9, -4)] {
            let r = reciprocity_ratio(p, q, P).unwrap();
            assert!(close(&r, 0.5, 0.0, 1e-40), "(p,q)=({p},{q}) ratio={r:?}");
        }
    }

    #[test]
    fn landsberg_schaar_examples() {
        let tol = 2f64.powi(-(P as i32) / 2);
        for (p, q) in [(3i64, 1i64), (1, 1), (5, 3)] {
            let r = landsberg_schaar_residual(p, q, P).unwrap();
            assert!(r.to_f64() <= tol, "(p,q)=({p},{q}) residual={r}");
        }
    }

    #[test]
    fn scaling_ratio_is_k() {
        let r = scaling_ratio(3, 1, 2, P).unwrap();
        assert!(close(&r, 2.0, 0.0, 1e-40));
        let r = scaling_ratio(5, 2, 3, P).unwrap();
        assert!(close(&r, 3.0, 0.0, 1e-40));
        let r = scaling_ratio(7, 4, 1, P).unwrap();
        assert!(close(&r, 1.0, 0.0, 1e-40));
        assert!(matches!(
            scaling_ratio(2, 1, 5, P),
            Err(Error::DegenerateRatio(_))
        ));
    }
}

//! Arbitrary-precision complex arithmetic on top of MPFR floats.
//!
//! Every value carries its working precision in bits. Evaluators in this
//! crate compute with 32 guard bits and round back when publishing results.

use rug::float::Round;
use rug::ops::CompleteRound;
use rug::Float;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

/// Guard bits used by series evaluators on top of the requested precision.
pub const GUARD_BITS: u32 = 32;

/// Arbitrary-precision complex number with declared precision in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn zero(prec: u32) -> Self {
        BigComplex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, 1),
            im: Float::new(prec),
        }
    }

    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Round to `prec` bits.
    pub fn rounded(&self, prec: u32) -> Self {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        re.set_prec_round(prec, Round::Nearest);
        im.set_prec_round(prec, Round::Nearest);
        BigComplex { re, im }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: (-&self.im).complete(self.im.prec()),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        BigComplex {
            re: (&self.re + &rhs.re).complete(p),
            im: (&self.im + &rhs.im).complete(p),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        BigComplex {
            re: (&self.re - &rhs.re).complete(p),
            im: (&self.im - &rhs.im).complete(p),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let re = Float::with_val(p, &self.re * &rhs.re) - Float::with_val(p, &self.im * &rhs.im);
        let im = Float::with_val(p, &self.re * &rhs.im) + Float::with_val(p, &self.im * &rhs.re);
        BigComplex { re, im }
    }

    /// In-place `self *= rhs`; avoids re-allocating in inner loops.
    pub fn mul_assign(&mut self, rhs: &Self, t1: &mut Float, t2: &mut Float) {
        // t1 = re*rhs.re - im*rhs.im, t2 = re*rhs.im + im*rhs.re
        t1.assign_mul(&self.re, &rhs.re);
        t1.submul_from(&self.im, &rhs.im);
        t2.assign_mul(&self.re, &rhs.im);
        t2.addmul_from(&self.im, &rhs.re);
        std::mem::swap(&mut self.re, t1);
        std::mem::swap(&mut self.im, t2);
    }

    pub fn scale_f(&self, f: &Float) -> Self {
        let p = self.prec().max(f.prec());
        BigComplex {
            re: (&self.re * f).complete(p),
            im: (&self.im * f).complete(p),
        }
    }

    pub fn scale_f64(&self, f: f64) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re * f),
            im: Float::with_val(p, &self.im * f),
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.prec();
        BigComplex {
            re: (-&self.re).complete(p),
            im: (-&self.im).complete(p),
        }
    }

    /// Multiplication by i.
    pub fn mul_i(&self) -> Self {
        let p = self.prec();
        BigComplex {
            re: (-&self.im).complete(p),
            im: self.re.clone(),
        }
    }

    /// Division by i (multiplication by −i).
    pub fn div_i(&self) -> Self {
        let p = self.prec();
        BigComplex {
            re: self.im.clone(),
            im: (-&self.re).complete(p),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().hypot(&self.im))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let d = rhs.norm_sqr();
        let num = self.mul(&rhs.conj());
        BigComplex {
            re: Float::with_val(p, &num.re / &d),
            im: Float::with_val(p, &num.im / &d),
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.im.is_zero() {
            if self.re.is_sign_negative() && !self.re.is_zero() {
                let u = Float::with_val(p, (-&self.re).complete(p).sqrt());
                return BigComplex {
                    re: Float::new(p),
                    im: u,
                };
            }
            return BigComplex {
                re: self.re.clone().sqrt(),
                im: Float::new(p),
            };
        }
        let r = self.abs();
        if self.re.is_sign_positive() {
            // t = sqrt((r+re)/2), u = im/(2t)
            let t = Float::with_val(p, (&r + &self.re).complete(p) / 2).sqrt();
            let u = Float::with_val(p, &self.im / (Float::with_val(p, 2 * &t)));
            BigComplex { re: t, im: u }
        } else {
            let mut u = Float::with_val(p, (&r - &self.re).complete(p) / 2).sqrt();
            if self.im.is_sign_negative() {
                u = -u;
            }
            let t = Float::with_val(p, &self.im / (Float::with_val(p, 2 * &u)));
            BigComplex { re: t, im: u }
        }
    }

    /// e^{iθ} for a real angle θ.
    pub fn cis(theta: &Float) -> Self {
        let p = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(p));
        BigComplex { re: c, im: s }
    }

    /// e^{iπz} = e^{−π Im z}(cos π Re z + i sin π Re z).
    pub fn exp_i_pi(z: &Self) -> Self {
        let p = z.prec();
        let pi = Float::with_val(p, rug::float::Constant::Pi);
        let angle = Float::with_val(p, &pi * &z.re);
        let (s, c) = angle.sin_cos(Float::new(p));
        let decay = Float::with_val(p, -(&pi * &z.im).complete(p)).exp();
        BigComplex {
            re: c * &decay,
            im: s * decay,
        }
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Decimal rendering with enough digits for the stored precision.
    pub fn to_decimal_string(&self) -> String {
        let digits = (self.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
        format!(
            "{} {}",
            float_to_string(&self.re, digits),
            float_to_string(&self.im, digits)
        )
    }
}

/// Deterministic decimal rendering of a Float.
pub fn float_to_string(f: &Float, digits: usize) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    f.to_string_radix(10, Some(digits))
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64s();
        write!(f, "{re:+.17e}{im:+.17e}i")
    }
}

impl Serialize for BigComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BigComplex", 3)?;
        let digits = (self.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
        st.serialize_field("re", &float_to_string(&self.re, digits))?;
        st.serialize_field("im", &float_to_string(&self.im, digits))?;
        st.serialize_field("precision_bits", &self.prec())?;
        st.end()
    }
}

/// Helper trait: MPFR-style fused assign-multiply operations used by the
/// in-place complex multiply.
trait FloatMulExt {
    fn assign_mul(&mut self, a: &Float, b: &Float);
    fn submul_from(&mut self, a: &Float, b: &Float);
    fn addmul_from(&mut self, a: &Float, b: &Float);
}

impl FloatMulExt for Float {
    fn assign_mul(&mut self, a: &Float, b: &Float) {
        use rug::Assign;
        self.assign(a * b);
    }
    fn submul_from(&mut self, a: &Float, b: &Float) {
        *self -= (a * b).complete(self.prec());
    }
    fn addmul_from(&mut self, a: &Float, b: &Float) {
        *self += (a * b).complete(self.prec());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn sqrt_principal_branch() {
        let p = 128;
        // sqrt(-1) = i
        let z = BigComplex::from_f64(-1.0, 0.0, p).sqrt();
        let (re, im) = z.to_f64s();
        assert!(close(re, 0.0, 1e-30) && close(im, 1.0, 1e-30));
        // sqrt(i) = e^{iπ/4}
        let z = BigComplex::from_f64(0.0, 1.0, p).sqrt();
        let (re, im) = z.to_f64s();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(re, s, 1e-15) && close(im, s, 1e-15));
        // sqrt(-i) has positive real part, negative imaginary part
        let z = BigComplex::from_f64(0.0, -1.0, p).sqrt();
        let (re, im) = z.to_f64s();
        assert!(re > 0.0 && im < 0.0);
    }

    #[test]
    fn mul_div_roundtrip() {
        let p = 128;
        let a = BigComplex::from_f64(1.5, -2.25, p);
        let b = BigComplex::from_f64(-0.5, 3.0, p);
        let c = a.mul(&b).div(&b);
        let (re, im) = c.sub(&a).to_f64s();
        assert!(re.abs() < 1e-30 && im.abs() < 1e-30);
    }

    #[test]
    fn exp_i_pi_values() {
        let p = 128;
        // e^{iπ·1} = −1
        let z = BigComplex::exp_i_pi(&BigComplex::from_f64(1.0, 0.0, p));
        let (re, im) = z.to_f64s();
        assert!(close(re, -1.0, 1e-30) && close(im, 0.0, 1e-30));
        // e^{iπ·i} = e^{−π}
        let z = BigComplex::exp_i_pi(&BigComplex::from_f64(0.0, 1.0, p));
        let (re, im) = z.to_f64s();
        assert!(close(re, (-std::f64::consts::PI).exp(), 1e-15) && im == 0.0);
    }

    #[test]
    fn in_place_mul_matches_mul() {
        let p = 128;
        let a = BigComplex::from_f64(0.3, 0.7, p);
        let b = BigComplex::from_f64(-1.2, 0.4, p);
        let mut c = a.clone();
        let mut t1 = Float::new(p);
        let mut t2 = Float::new(p);
        c.mul_assign(&b, &mut t1, &mut t2);
        assert_eq!(c, a.mul(&b));
    }
}

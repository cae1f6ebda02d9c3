//! High-precision series evaluation: Θ(z) on the upper half-plane, the
//! classical θ(s) on the right half-plane, the integrated theta series
//! F(z), Riemann's lacunary sine/cosine series, Weierstrass series, and
//! the saw-tooth ψ. Every evaluator returns a certified truncation bound.
//!
//! Truncation cutoffs come from explicit geometric or integral bounds.
//! Summation is in ascending index order at working precision with guard
//! bits, so results are reproducible bit for bit.

use crate::bigcomplex::{BigComplex, GUARD_BITS};
use crate::error::{Error, Result};
use rug::float::Constant;
use rug::Float;
use serde::Serialize;

/// Default term cap for the absolutely-convergent real-axis paths.
pub const DEFAULT_MAX_TERMS: usize = 1 << 20;

/// Minimum Im z accepted by the geometric theta evaluators.
pub const THETA_IM_FLOOR: f64 = 1e-12;

/// A value together with a certified absolute error bound.
#[derive(Debug, Clone, Serialize)]
pub struct Certified<T> {
    pub value: T,
    pub error_bound: f64,
}

/// Which lacunary series a [`SeriesSpec`] denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    RiemannSin,
    RiemannCos,
    WeierstrassCos,
    WeierstrassSin,
}

/// Parameters of a lacunary series: Σ sin(n²x)/n^α (Riemann kind) or
/// Σ aⁿ trig(bⁿπx) (Weierstrass kind).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    /// Exponent for Riemann kinds; unused otherwise.
    pub alpha: f64,
    /// Amplitude base for Weierstrass kinds, 0 < a < 1.
    pub a: f64,
    /// Frequency base for Weierstrass kinds, b > 1.
    pub b: f64,
}

impl SeriesSpec {
    pub fn riemann(kind: SeriesKind, alpha: f64) -> Result<Self> {
        match kind {
            SeriesKind::RiemannSin | SeriesKind::RiemannCos => {}
            _ => return Err(Error::precondition("riemann() requires a riemann kind")),
        }
        if !(alpha > 1.0) {
            return Err(Error::precondition(format!(
                "riemann series requires alpha > 1 for absolute convergence, got {alpha}"
            )));
        }
        Ok(SeriesSpec {
            kind,
            alpha,
            a: 0.0,
            b: 0.0,
        })
    }

    pub fn weierstrass(kind: SeriesKind, a: f64, b: f64) -> Result<Self> {
        match kind {
            SeriesKind::WeierstrassCos | SeriesKind::WeierstrassSin => {}
            _ => {
                return Err(Error::precondition(
                    "weierstrass() requires a weierstrass kind",
                ))
            }
        }
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::precondition(format!(
                "weierstrass series requires 0 < a < 1, got {a}"
            )));
        }
        if !(b > 1.0) {
            return Err(Error::precondition(format!(
                "weierstrass series requires b > 1, got {b}"
            )));
        }
        Ok(SeriesSpec { kind, alpha: 0.0, a, b })
    }

    pub fn is_weierstrass(&self) -> bool {
        matches!(
            self.kind,
            SeriesKind::WeierstrassCos | SeriesKind::WeierstrassSin
        )
    }

    /// Hardy's exponent ξ = log(1/a)/log b for Weierstrass kinds.
    pub fn xi(&self) -> Option<f64> {
        if self.is_weierstrass() {
            Some((1.0 / self.a).ln() / self.b.ln())
        } else {
            None
        }
    }
}

/// Exact predicate evaluation of the classical non-differentiability
/// criteria for Σ aⁿ cos(bⁿπx). `None` marks a criterion whose defining
/// inequality is not applicable at this (a, b).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriteriaReport {
    /// ab > 1 + 3π/2 (Weierstrass).
    pub weierstrass: bool,
    /// ab > 1 + (3π/2)(1−a) (Bromwich).
    pub bromwich: bool,
    /// ab ≥ 1 and ab² > 1 + 3π² (Dini).
    pub dini_pair: bool,
    /// ab ≥ 1 and ab² > 1 + π² (Lerch).
    pub lerch_pair: bool,
    /// ab > 1 + (3π/2)(1−a)/(1−3a); requires a < 1/3.
    pub dini_general: Option<bool>,
    /// ab > 1 and ab² > 1 + 15π²(1−a)/(5−21a); requires a < 5/21.
    pub dini_general2: Option<bool>,
    /// ab ≥ 1 (Hardy; the weakest and the natural one).
    pub hardy: bool,
}

/// Evaluate every classical criterion at (a, b).
pub fn nondiff_criteria(a: f64, b: f64) -> Result<CriteriaReport> {
    if !(a > 0.0 && a < 1.0) || !(b > 1.0) {
        return Err(Error::precondition(format!(
            "nondiff_criteria requires 0 < a < 1 < b, got a={a} b={b}"
        )));
    }
    let pi = std::f64::consts::PI;
    let ab = a * b;
    let ab2 = a * b * b;
    Ok(CriteriaReport {
        weierstrass: ab > 1.0 + 1.5 * pi,
        bromwich: ab > 1.0 + 1.5 * pi * (1.0 - a),
        dini_pair: ab >= 1.0 && ab2 > 1.0 + 3.0 * pi * pi,
        lerch_pair: ab >= 1.0 && ab2 > 1.0 + pi * pi,
        dini_general: (a < 1.0 / 3.0).then(|| ab > 1.0 + 1.5 * pi * (1.0 - a) / (1.0 - 3.0 * a)),
        dini_general2: (a < 5.0 / 21.0)
            .then(|| ab > 1.0 && ab2 > 1.0 + 15.0 * pi * pi * (1.0 - a) / (5.0 - 21.0 * a)),
        hardy: ab >= 1.0,
    })
}

/// The saw-tooth ((x)) = x − ⌊x⌋ − 1/2 for non-integer x, and 0 at
/// integers (the value of its Fourier series at the jump).
pub fn sawtooth_psi(x: f64) -> f64 {
    let f = x - x.floor();
    if f == 0.0 {
        0.0
    } else {
        f - 0.5
    }
}

/// Saw-tooth at arbitrary precision (used by the Davenport–Chowla sums).
pub fn sawtooth_psi_float(x: &Float) -> Float {
    let p = x.prec();
    let f = Float::with_val(p, x - x.clone().floor());
    if f.is_zero() {
        Float::new(p)
    } else {
        f - Float::with_val(p, 0.5)
    }
}

/// Truncation length for Θ-type sums: smallest N with
/// πN²·Im z > (prec + 16)·ln 2.
fn theta_cutoff(im_z: f64, prec: u32) -> usize {
    let target = (prec as f64 + 16.0) * std::f64::consts::LN_2;
    let n = (target / (std::f64::consts::PI * im_z)).sqrt().ceil();
    (n as usize).max(1)
}

/// Geometric tail bound 2 Σ_{n>N} e^{−πn²y} ≤ 2e^{−π(N+1)²y}/(1 − e^{−π(2N+3)y}).
fn theta_tail_bound(im_z: f64, n: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let n = n as f64;
    let head = 2.0 * (-pi * (n + 1.0) * (n + 1.0) * im_z).exp();
    let ratio = (-pi * (2.0 * n + 3.0) * im_z).exp();
    head / (1.0 - ratio)
}

/// Core quadratic-exponential recurrence: visits e^{iπn²z} for n = 1..=N
/// in ascending order using two rotating phasors (no per-term sin/cos).
pub(crate) fn quadratic_phasor_sum<V>(z: &BigComplex, n_terms: usize, mut visit: V)
where
    V: FnMut(usize, &BigComplex),
{
    let wp = z.prec();
    // E_n = e^{iπn²z}; U_n = e^{iπ(2n+1)z}; V = e^{2πiz}.
    let w = BigComplex::exp_i_pi(z);
    let v = w.mul(&w);
    let mut e = w.clone();
    let mut u = w.mul(&v);
    let mut t1 = Float::new(wp);
    let mut t2 = Float::new(wp);
    for n in 1..=n_terms {
        visit(n, &e);
        e.mul_assign(&u, &mut t1, &mut t2);
        u.mul_assign(&v, &mut t1, &mut t2);
    }
}

/// Θ(z) = 1 + 2 Σ_{n≥1} e^{iπn²z} for Im z > 0.
pub fn theta_upper(z: &BigComplex, prec: u32) -> Result<Certified<BigComplex>> {
    let im = z.im.to_f64();
    if im < THETA_IM_FLOOR {
        return Err(Error::precondition(format!(
            "theta_upper requires Im z >= {THETA_IM_FLOOR}; use the F-based probes near the real line (Im z = {im})"
        )));
    }
    let wp = prec + GUARD_BITS;
    let zw = z.rounded(wp);
    let n = theta_cutoff(im, prec);
    let mut sum = BigComplex::zero(wp);
    quadratic_phasor_sum(&zw, n, |_, e| {
        sum.re += &e.re;
        sum.im += &e.im;
    });
    let two = Float::with_val(wp, 2);
    let value = BigComplex::new(
        Float::with_val(wp, 1) + Float::with_val(wp, &sum.re * &two),
        Float::with_val(wp, &sum.im * &two),
    );
    Ok(Certified {
        value: value.rounded(prec),
        error_bound: theta_tail_bound(im, n),
    })
}

/// θ(s) = Σ_{n∈Z} e^{−πn²s} = Θ(is) for Re s > 0.
pub fn theta_right(s: &BigComplex, prec: u32) -> Result<Certified<BigComplex>> {
    if !(s.re.to_f64() > 0.0) {
        return Err(Error::precondition("theta_right requires Re s > 0"));
    }
    theta_upper(&s.mul_i(), prec)
}

/// F(z) = Σ_{n≥1} e^{iπn²z}/(iπn²) for Im z ≥ 0.
///
/// On the open upper half-plane the sum is truncated geometrically. On
/// the real axis (and for very small Im z) the sum converges absolutely
/// like 1/(πn²); the returned bound reports the achieved accuracy for the
/// capped number of terms.
pub fn f_eval(z: &BigComplex, prec: u32) -> Result<Certified<BigComplex>> {
    f_eval_capped(z, prec, DEFAULT_MAX_TERMS)
}

/// [`f_eval`] with an explicit cap on the number of terms.
pub fn f_eval_capped(z: &BigComplex, prec: u32, max_terms: usize) -> Result<Certified<BigComplex>> {
    let im = z.im.to_f64();
    if im < 0.0 {
        return Err(Error::precondition("f_eval requires Im z >= 0"));
    }
    let wp = prec + GUARD_BITS;
    let zw = z.rounded(wp);
    let n = if im >= THETA_IM_FLOOR {
        theta_cutoff(im, prec).min(max_terms.max(1))
    } else {
        max_terms.max(1)
    };
    let pi = Float::with_val(wp, Constant::Pi);
    let mut sum = BigComplex::zero(wp);
    let mut denom = Float::new(wp);
    let mut term = BigComplex::zero(wp);
    quadratic_phasor_sum(&zw, n, |k, e| {
        use rug::Assign;
        denom.assign(&pi * ((k * k) as u64));
        term.re.assign(&e.re / &denom);
        term.im.assign(&e.im / &denom);
        // divide by i: (re, im) -> (im, -re)
        sum.re += &term.im;
        sum.im -= &term.re;
    });
    // Tail: both the geometric bound and the absolute 1/(πN) bound hold.
    let geometric = if im >= THETA_IM_FLOOR {
        theta_tail_bound(im, n) / (std::f64::consts::PI * ((n + 1) * (n + 1)) as f64)
    } else {
        f64::INFINITY
    };
    let absolute = 1.0 / (std::f64::consts::PI * n as f64);
    Ok(Certified {
        value: sum.rounded(prec),
        error_bound: geometric.min(absolute),
    })
}

/// |Θ(z) − e^{iπ/4} z^{−1/2} Θ(−1/z)| with the principal branch.
pub fn theta_transform_residual(z: &BigComplex, prec: u32) -> Result<Float> {
    let wp = prec + GUARD_BITS;
    let zw = z.rounded(wp);
    let lhs = theta_upper(&zw, wp)?.value;
    // −1/z = (−re + i·im)/|z|²
    let norm = zw.norm_sqr();
    let minus_inv = BigComplex::new(
        -Float::with_val(wp, &zw.re / &norm),
        Float::with_val(wp, &zw.im / &norm),
    );
    let theta_inv = theta_upper(&minus_inv, wp)?.value;
    let pi = Float::with_val(wp, Constant::Pi);
    let phase = BigComplex::cis(&Float::with_val(wp, &pi / 4i32));
    let inv_sqrt = BigComplex::one(wp).div(&zw.sqrt());
    let rhs = phase.mul(&inv_sqrt).mul(&theta_inv);
    let mut resid = lhs.sub(&rhs).abs();
    resid.set_prec_round(prec, rug::float::Round::Nearest);
    Ok(resid)
}

/// Σ sin(n²x)/n^α or Σ cos(n²x)/n^α, absolutely convergent for α > 1.
pub fn riemann_series(spec: &SeriesSpec, x: &Float, prec: u32) -> Result<Certified<Float>> {
    riemann_series_capped(spec, x, prec, DEFAULT_MAX_TERMS)
}

/// [`riemann_series`] with an explicit term cap.
pub fn riemann_series_capped(
    spec: &SeriesSpec,
    x: &Float,
    prec: u32,
    max_terms: usize,
) -> Result<Certified<Float>> {
    let use_cos = match spec.kind {
        SeriesKind::RiemannSin => false,
        SeriesKind::RiemannCos => true,
        _ => return Err(Error::precondition("riemann_series requires a riemann kind")),
    };
    let alpha = spec.alpha;
    if !(alpha > 1.0) {
        return Err(Error::precondition(
            "riemann_series requires alpha > 1 (absolute convergence)",
        ));
    }
    let wp = prec + GUARD_BITS;
    // Tail bound Σ_{n>N} n^{−α} ≤ N^{1−α}/(α−1); aim at 2^{−prec}, cap terms.
    let target = 2f64.powi(-(prec.min(200) as i32));
    let n_wanted = (1.0 / ((alpha - 1.0) * target)).powf(1.0 / (alpha - 1.0));
    let n = if n_wanted.is_finite() && n_wanted < max_terms as f64 {
        (n_wanted.ceil() as usize).max(1)
    } else {
        max_terms.max(1)
    };
    // x/π as the phasor argument: e^{iπn²(x/π)} = e^{in²x}.
    let pi = Float::with_val(wp, Constant::Pi);
    let zx = BigComplex::new(Float::with_val(wp, x / &pi), Float::new(wp));
    let mut sum = Float::new(wp);
    let mut term = Float::new(wp);
    quadratic_phasor_sum(&zx, n, |k, e| {
        use rug::Assign;
        let numer = if use_cos { &e.re } else { &e.im };
        term.assign(numer);
        let mut power = Float::with_val(wp, k as u64);
        power = power.pow_f64(alpha, wp);
        term /= &power;
        sum += &term;
    });
    let mut value = sum;
    value.set_prec_round(prec, rug::float::Round::Nearest);
    Ok(Certified {
        value,
        error_bound: (n as f64).powf(1.0 - alpha) / (alpha - 1.0),
    })
}

/// Σ_{n≥0} aⁿ cos(bⁿπx) or Σ aⁿ sin(bⁿπx), geometric truncation.
///
/// Working precision is raised with the frequency growth b^N, so that
/// argument reduction of bⁿπx stays accurate across all summed terms.
pub fn weierstrass_eval(spec: &SeriesSpec, x: &Float, prec: u32) -> Result<Certified<Float>> {
    let use_cos = match spec.kind {
        SeriesKind::WeierstrassCos => true,
        SeriesKind::WeierstrassSin => false,
        _ => {
            return Err(Error::precondition(
                "weierstrass_eval requires a weierstrass kind",
            ))
        }
    };
    let (a, b) = (spec.a, spec.b);
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::precondition("weierstrass_eval requires 0 < a < 1"));
    }
    // a^N/(1−a) < 2^{−(prec+16)}
    let target = (prec as f64 + 16.0) * std::f64::consts::LN_2 - (1.0 - a).ln();
    let n = (target / (1.0 / a).ln()).ceil() as usize + 1;
    // Guard for argument magnitude b^N·|x|.
    let magnitude_bits = (n as f64 * b.log2()).ceil() as u32 + 32;
    let wp = prec + GUARD_BITS + magnitude_bits;
    let pi = Float::with_val(wp, Constant::Pi);
    let xw = Float::with_val(wp, x);
    let af = Float::with_val(wp, a);
    let bf = Float::with_val(wp, b);
    let mut amp = Float::with_val(wp, 1);
    let mut freq = Float::with_val(wp, &pi * &xw);
    let mut sum = Float::new(wp);
    for _ in 0..n {
        let trig = if use_cos {
            freq.clone().cos()
        } else {
            freq.clone().sin()
        };
        sum += trig * &amp;
        amp *= &af;
        freq *= &bf;
    }
    let mut value = sum;
    value.set_prec_round(prec, rug::float::Round::Nearest);
    Ok(Certified {
        value,
        error_bound: a.powi(n as i32) / (1.0 - a),
    })
}

/// Helper: Float power with f64 exponent at given precision.
trait PowF64 {
    fn pow_f64(self, e: f64, wp: u32) -> Float;
}

impl PowF64 for Float {
    fn pow_f64(self, e: f64, wp: u32) -> Float {
        use rug::ops::Pow;
        Float::with_val(wp, self.pow(Float::with_val(wp, e)))
    }
}

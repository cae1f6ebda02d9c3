//! Numerical verification of the Davenport–Chowla identity
//!
//!   Σ_{n≥1} λ(n) ψ(nx) / n  =  −(1/π) Σ_{n≥1} sin(2πn²x) / n²,
//!
//! where λ is the Liouville function and ψ the saw-tooth. The left side
//! converges conditionally and is summed to a fixed schedule of partial
//! sums; the right side converges absolutely with a certified tail
//! bound, so it serves as the reference value.

use crate::error::{Error, Result};
use crate::exact::LiouvilleTable;
use crate::series::sawtooth_psi_float;
use rug::float::Constant;
use rug::Float;
use serde::Serialize;

/// Working precision for the argument reduction of n·x; enough to keep
/// the fractional part of n·x accurate for n up to ~10^9.
const DC_PREC: u32 = 160;

/// One checkpoint of the left-hand side partial sums.
#[derive(Debug, Clone, Serialize)]
pub struct DcPartial {
    pub n_terms: u64,
    pub lhs_partial: f64,
    pub residual_vs_rhs: f64,
}

/// Verification report for one x.
#[derive(Debug, Clone, Serialize)]
pub struct DcReport {
    pub x: f64,
    pub rhs: f64,
    /// Certified absolute truncation bound for the right-hand side.
    pub rhs_error_bound: f64,
    pub partials: Vec<DcPartial>,
    /// Residual at the largest checkpoint.
    pub final_residual: f64,
}

/// Left-hand side partial sum Σ_{n≤N} λ(n)ψ(nx)/n.
///
/// `x` is taken at high precision so that the fractional part of n·x is
/// accurate for every summed n; the per-term arithmetic is f64.
pub fn dc_lhs(x: &Float, table: &LiouvilleTable, n_terms: u64) -> Result<f64> {
    if n_terms as usize > table.limit() {
        return Err(Error::precondition(format!(
            "liouville table covers  1..={}, requested {n_terms}",
            table.limit()
        )));
    }
    let wp = x.prec().max(DC_PREC);
    let xw = Float::with_val(wp, x);
    let mut sum = 0.0f64;
    // n·x tracked incrementally at high precision; reduce mod 1 each step
    // to keep the magnitude small.
    let mut nx = Float::new(wp);
    for n in 1..=n_terms {
        nx += &xw;
        let fl = nx.clone().floor();
        nx -= &fl;
        let psi = sawtooth_psi_float(&nx).to_f64();
        sum += table.get(n as usize) as f64 * psi / n as f64;
    }
    Ok(sum)
}

/// Right-hand side −(1/π) Σ_{n≤N} sin(2πn²x)/n² plus its certified tail
/// bound 1/(πN).
pub fn dc_rhs(x: &Float, n_terms: u64) -> (f64, f64) {
    let wp = x.prec().max(DC_PREC);
    let xw = Float::with_val(wp, x);
    let two_pi = 2 * Float::with_val(wp, Constant::Pi);
    let mut sum = 0.0f64;
    // Angle 2πn²x reduced exactly at high precision, then one f64 sin.
    // n² x mod 1 via the increments (n+1)² − n² = 2n + 1.
    let mut n2x = Float::new(wp); // fractional part of n²·x
    let mut step = Float::with_val(wp, &xw); // (2n+1)x increment, starts at x
    let two_x = Float::with_val(wp, 2 * &xw);
    for n in 1..=n_terms {
        n2x += &step;
        let fl = n2x.clone().floor();
        n2x -= &fl;
        step += &two_x;
        let fl2 = step.clone().floor();
        step -= &fl2;
        let angle = Float::with_val(wp, &two_pi * &n2x).to_f64();
        sum += angle.sin() / (n as f64 * n as f64);
    }
    let value = -sum / std::f64::consts::PI;
    let bound = 1.0 / (std::f64::consts::PI * n_terms as f64);
    (value, bound)
}

/// Run the identity check at x with a geometric schedule of left-hand
/// checkpoints up to `lhs_terms` and a right-hand reference summed to
/// `rhs_terms`.
pub fn dc_report(
    x: &Float,
    table: &LiouvilleTable,
    lhs_terms: u64,
    rhs_terms: u64,
) -> Result<DcReport> {
    if lhs_terms == 0 || rhs_terms == 0 {
        return Err(Error::precondition("dc_report requires nonzero term counts"));
    }
    if lhs_terms as usize > table.limit() {
        return Err(Error::precondition(format!(
            "liouville table covers 1..={}, requested {lhs_terms}",
            table.limit()
        )));
    }
    let (rhs, rhs_bound) = dc_rhs(x, rhs_terms);

    // Checkpoints at lhs_terms / 8, /4, /2, and lhs_terms itself.
    let mut checkpoints: Vec<u64> = [8u64, 4, 2, 1]
        .iter()
        .map(|d| (lhs_terms / d).max(1))
        .collect();
    checkpoints.dedup();

    let wp = x.prec().max(DC_PREC);
    let xw = Float::with_val(wp, x);
    let mut partials = Vec::new();
    let mut sum = 0.0f64;
    let mut nx = Float::new(wp);
    let mut next = checkpoints.iter().copied().peekable();
    for n in 1..=lhs_terms {
        nx += &xw;
        let fl = nx.clone().floor();
        nx -= &fl;
        let psi = sawtooth_psi_float(&nx).to_f64();
        sum += table.get(n as usize) as f64 * psi / n as f64;
        if next.peek() == Some(&n) {
            next.next();
            partials.push(DcPartial {
                n_terms: n,
                lhs_partial: sum,
                residual_vs_rhs: (sum - rhs).abs(),
            });
        }
    }
    let final_residual = partials
        .last()
        .map(|p| p.residual_vs_rhs)
        .unwrap_or(f64::NAN);
    Ok(DcReport {
        x: xw.to_f64(),
        rhs,
        rhs_error_bound: rhs_bound,
        partials,
        final_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::liouville_sieve;

    fn xf(v: f64) -> Float {
        Float::with_val(DC_PREC, v)
    }

    #[test]
    fn rhs_at_rational_points() {
        // x = 1/2: sin(2πn²/2) = sin(πn²) = 0 for all n, so RHS = 0.
        let (rhs, _) = dc_rhs(&xf(0.5), 10_000);
        assert!(rhs.abs() < 1e-12, "rhs={rhs}");
        // x = 1/4: n odd gives sin(πn²/2) = sin(π/2·n²), n² ≡ 1 mod 8 so
        // the odd terms contribute 1/n²; even terms vanish.
        let (rhs, bound) = dc_rhs(&xf(0.25), 100_000);
        // Odd n: sin(πn²/2) = 1, so the sum is (π²/8)·(−1/π) = −π/8.
        let expect = -std::f64::consts::PI / 8.0;
        assert!((rhs - expect).abs() < bound + 1e-9, "rhs={rhs} expect={expect}");
    }

    #[test]
    fn lhs_first_terms_by_hand() {
        // x = 0.3, N = 3: λ(1)ψ(0.3)/1 + λ(2)ψ(0.6)/2 + λ(3)ψ(0.9)/3.
        let table = liouville_sieve(10).unwrap();
        let got = dc_lhs(&xf(0.3), &table, 3).unwrap();
        let expect = (0.3 - 0.5) - (0.6 - 0.5) / 2.0 - (0.9 - 0.5) / 3.0;
        assert!((got - expect).abs() < 1e-12);
    }

    #[test]
    fn identity_holds_at_golden_ratio_point() {
        // Moderate sizes keep the test fast; the residual at N = 2·10^5
        // should already be small at a generic irrational.
        let x = (5f64.sqrt() - 1.0) / 2.0;
        let table = liouville_sieve(200_000).unwrap();
        let rep = dc_report(&xf(x), &table, 200_000, 2_000_000).unwrap();
        assert!(rep.final_residual < 5e-4, "residual={}", rep.final_residual);
        // Residuals shrink along the schedule overall.
        let first = rep.partials.first().unwrap().residual_vs_rhs;
        assert!(rep.final_residual <= first * 2.0);
    }

    #[test]
    fn rhs_tail_bound_is_honest() {
        let x = xf(0.123456789);
        let (coarse, bound) = dc_rhs(&x, 20_000);
        let (fine, fine_bound) = dc_rhs(&x, 2_000_000);
        assert!((coarse - fine).abs() <= bound + fine_bound);
    }
}

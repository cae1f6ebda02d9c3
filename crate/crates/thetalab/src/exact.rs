//! Exact integer and rational arithmetic: gcd, reduced fractions, the
//! Kronecker symbol, eighth roots of unity, and the Liouville sieve.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a as i128
}

/// Kronecker symbol (a/n), the full extension of the Jacobi symbol to
/// even and negative lower arguments. Agrees with the Jacobi symbol for
/// odd positive `n` and with the Legendre symbol for odd prime `n`.
pub fn kronecker(a: i128, n: i128) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Strip factors of 2 from n; each contributes (a/2).
    let mut twos = 0u32;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos % 2 == 1 {
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0, // a even
        }
    }
    // Jacobi symbol (a/n) with n odd positive, by binary reciprocity.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            match n % 8 {
                3 | 5 => result = -result,
                _ => {}
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// An eighth root of unity e^{ikπ/4}, k taken modulo 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EighthRootPhase {
    k: u8,
}

impl EighthRootPhase {
    pub fn new(k: i64) -> Self {
        EighthRootPhase {
            k: k.rem_euclid(8) as u8,
        }
    }

    pub fn k(self) -> u8 {
        self.k
    }

    pub fn conj(self) -> Self {
        EighthRootPhase::new(-(self.k as i64))
    }

    /// Negation, i.e. multiplication by e^{iπ}.
    pub fn negate(self) -> Self {
        EighthRootPhase::new(self.k as i64 + 4)
    }

    /// (cos kπ/4, sin kπ/4) as exact multiples of {0, ±1, ±1/√2}.
    /// Returned as (numerator of cos, numerator of sin, halves-of-√2 flag).
    pub fn is_diagonal(self) -> bool {
        self.k % 2 == 1
    }
}

impl std::ops::Mul for EighthRootPhase {
    type Output = EighthRootPhase;
    fn mul(self, rhs: Self) -> Self {
        EighthRootPhase::new(self.k as i64 + rhs.k as i64)
    }
}

impl fmt::Display for EighthRootPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => write!(f, "1"),
            2 => write!(f, "i"),
            4 => write!(f, "-1"),
            6 => write!(f, "-i"),
            k => write!(f, "e^(i*{}π/4)", k),
        }
    }
}

/// Exact rational q/p in lowest terms, den > 0, sign carried by num.
/// Zero is 0/1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ReducedRational {
    num: i64,
    den: i64,
}

impl ReducedRational {
    /// Reduce `num/den` to lowest terms. `den = 0` is rejected.
    pub fn reduce(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = gcd(num as i128, den as i128) as i64;
        let (mut num, mut den) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(ReducedRational { num, den })
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn both_odd(self) -> bool {
        self.num % 2 != 0 && self.den % 2 != 0
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for ReducedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ReducedRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>(),
                d.trim().parse::<i64>(),
            ),
            None => (s.trim().parse::<i64>(), Ok(1)),
        };
        match (n, d) {
            (Ok(n), Ok(d)) => ReducedRational::reduce(n, d),
            _ => Err(Error::InvalidInput(format!("bad rational: {s:?}"))),
        }
    }
}

/// ε(p) for odd p: 1 when p ≡ 1 (mod 4), i when p ≡ 3 (mod 4).
pub fn epsilon_factor(p: i64) -> Result<EighthRootPhase> {
    if p < 1 || p % 2 == 0 {
        return Err(Error::precondition(format!(
            "epsilon_factor requires odd positive p, got {p}"
        )));
    }
    Ok(match p % 4 {
        1 => EighthRootPhase::new(0),
        _ => EighthRootPhase::new(2),
    })
}

/// Table of λ(n) = (−1)^{Ω(n)} for 1 ≤ n ≤ limit, Ω counted with
/// multiplicity (so λ is completely multiplicative).
pub struct LiouvilleTable {
    limit: usize,
    // values[n] for n in 1..=limit; index 0 unused.
    values: Vec<i8>,
}

impl LiouvilleTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// λ(n); panics if n = 0 or n > limit.
    pub fn get(&self, n: usize) -> i8 {
        self.values[n]
    }
}

/// Build the Liouville table up to N with a linear sieve.
pub fn liouville_sieve(n: usize) -> Result<LiouvilleTable> {
    if n < 1 {
        return Err(Error::precondition("liouville_sieve requires N >= 1"));
    }
    let mut values: Vec<i8> = Vec::new();
    values
        .try_reserve_exact(n + 1)
        .map_err(|e| Error::Resource(format!("cannot allocate sieve of size {}: {e}", n + 1)))?;
    values.resize(n + 1, 0);
    values[1] = 1;
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=n {
        if values[i] == 0 {
            primes.push(i);
            values[i] = -1;
        }
        for &p in &primes {
            let m = i.checked_mul(p).unwrap_or(usize::MAX);
            if m > n {
                break;
            }
            values[m] = -values[i];
            if i % p == 0 {
                break;
            }
        }
    }
    Ok(LiouvilleTable { limit: n, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(-4, 6), 2);
    }

    #[test]
    fn reduce_basics() {
        let r = ReducedRational::reduce(2, 4).unwrap();
        assert_eq!((r.num(), r.den()), (1, 2));
        let r = ReducedRational::reduce(3, -9).unwrap();
        assert_eq!((r.num(), r.den()), (-1, 3));
        let r = ReducedRational::reduce(0, 7).unwrap();
        assert_eq!((r.num(), r.den()), (0, 1));
        assert!(ReducedRational::reduce(1, 0).is_err());
    }

    #[test]
    fn rational_parsing() {
        let r: ReducedRational = "6/-4".parse().unwrap();
        assert_eq!((r.num(), r.den()), (-3, 2));
        let r: ReducedRational = "5".parse().unwrap();
        assert_eq!((r.num(), r.den()), (5, 1));
        assert!("a/b".parse::<ReducedRational>().is_err());
    }

    /// Independent oracle for the Legendre symbol: enumerate squares mod p.
    fn legendre_by_enumeration(a: i128, p: i128) -> i32 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        for x in 1..p {
            if (x * x).rem_euclid(p) == a {
                return 1;
            }
        }
        -1
    }

    #[test]
    fn kronecker_examples() {
        // (3/5): squares mod 5 are {1,4}.
        assert_eq!(legendre_by_enumeration(3, 5), -1);
        assert_eq!(kronecker(3, 5), -1);
        assert_eq!(kronecker(1, 1), 1);
        // (2/15) = (2/3)(2/5) = (−1)(−1).
        assert_eq!(kronecker(2, 15), 1);
        assert_eq!(kronecker(2, 3) * kronecker(2, 5), 1);
    }

    #[test]
    fn kronecker_matches_legendre_on_odd_primes() {
        for &p in &[3i128, 5, 7, 11, 13, 17, 19, 23] {
            for a in -30..30 {
                assert_eq!(
                    kronecker(a, p),
                    legendre_by_enumeration(a, p),
                    "a={a} p={p}"
                );
            }
        }
    }

    #[test]
    fn kronecker_multiplicative_in_both_arguments() {
        for n in -50..=50i128 {
            for a in -20..=20i128 {
                for b in -20..=20i128 {
                    // (0/-1) = 1 by convention, which breaks the product
                    // rule when one factor is 0 and the modulus negative.
                    if a * b == 0 && n < 0 {
                        continue;
                    }
                    assert_eq!(
                        kronecker(a * b, n),
                        kronecker(a, n) * kronecker(b, n),
                        "a={a} b={b} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn kronecker_periodic_in_upper_argument_for_odd_n() {
        for n in (1..=99i128).step_by(2) {
            for a in -500..=500i128 {
                assert_eq!(kronecker(a, n), kronecker(a + n, n));
            }
        }
    }

    #[test]
    fn quadratic_reciprocity_over_small_primes() {
        let primes = [
            3i128, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
            83, 89, 97,
        ];
        for &p in &primes {
            for &q in &primes {
                if p == q {
                    continue;
                }
                let sign = if ((p - 1) / 2) % 2 == 1 && ((q - 1) / 2) % 2 == 1 {
                    -1
                } else {
                    1
                };
                assert_eq!(kronecker(p, q) * kronecker(q, p), sign, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn epsilon_factor_cases() {
        assert_eq!(epsilon_factor(5).unwrap().k(), 0);
        assert_eq!(epsilon_factor(3).unwrap().k(), 2);
        assert_eq!(epsilon_factor(1).unwrap().k(), 0);
        assert!(epsilon_factor(4).is_err());
    }

    /// Trial-division oracle for λ.
    fn liouville_by_factorization(mut n: usize) -> i8 {
        let mut omega = 0u32;
        let mut d = 2;
        while d * d <= n {
            while n % d == 0 {
                n /= d;
                omega += 1;
            }
            d += 1;
        }
        if n > 1 {
            omega += 1;
        }
        if omega % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn liouville_examples() {
        let t = liouville_sieve(100).unwrap();
        assert_eq!(t.get(1), 1);
        assert_eq!(t.get(2), -1);
        // 12 = 2²·3, Ω = 3.
        assert_eq!(t.get(12), -1);
    }

    #[test]
    fn liouville_matches_trial_division_up_to_1e5() {
        let n = 100_000;
        let t = liouville_sieve(n).unwrap();
        for k in 1..=n {
            assert_eq!(t.get(k), liouville_by_factorization(k), "n={k}");
        }
    }

    #[test]
    fn liouville_completely_multiplicative_up_to_1e4() {
        let n = 10_000;
        let t = liouville_sieve(n).unwrap();
        for m in 1..=n {
            for k in 1..=n / m {
                assert_eq!(t.get(m * k), t.get(m) * t.get(k));
            }
        }
    }
}

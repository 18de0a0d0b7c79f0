//! Log-space factorials and binomial coefficients.
//!
//! All factorial ratios in the crate go through this table: direct
//! evaluation of terms like √((N−m−k)!) overflows near N = 170, while
//! ln-space sums stay well-conditioned into the thousands.

use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

/// Table of ln(n!) for n ≤ max_n, built once with compensated summation so
/// the absolute error stays near eps·ln(n!) instead of growing with n.
#[derive(Debug, Clone)]
pub struct LogFactorialTable {
    values: Vec<f64>,
}

impl LogFactorialTable {
    pub fn new(max_n: usize) -> Self {
        let mut values = Vec::with_capacity(max_n + 1);
        values.push(0.0);
        let mut sum = 0.0_f64;
        let mut comp = 0.0_f64;
        for n in 1..=max_n {
            // Kahan step: sum += ln(n)
            let y = math::ln(n as f64) - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            values.push(sum);
        }
        LogFactorialTable { values }
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    /// ln(n!).
    pub fn ln_factorial(&self, n: usize) -> f64 {
        self.values[n]
    }

    /// ln C(n, k).
    pub fn log_binomial(&self, n: usize, k: usize) -> Result<f64> {
        if k > n || n > self.max_n() {
            return Err(Error::OutOfRange {
                what: "log_binomial requires 0 ≤ k ≤ n ≤ max_n",
            });
        }
        Ok(self.values[n] - self.values[k] - self.values[n - k])
    }
}

/// ln C(n, k) through a table sized for the call.
pub fn log_binomial(n: usize, k: usize) -> Result<f64> {
    if k > n {
        return Err(Error::OutOfRange {
            what: "log_binomial requires 0 ≤ k ≤ n",
        });
    }
    LogFactorialTable::new(n).log_binomial(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Minimal big-unsigned on u32 limbs; addition only, which is all
    /// Pascal's triangle needs. Test oracle, independent of the table.
    #[derive(Clone)]
    struct BigUint(Vec<u32>);

    impl BigUint {
        fn zero() -> Self {
            BigUint(alloc::vec![0])
        }

        fn one() -> Self {
            BigUint(alloc::vec![1])
        }

        fn add(&self, other: &BigUint) -> BigUint {
            let n = self.0.len().max(other.0.len());
            let mut out = Vec::with_capacity(n + 1);
            let mut carry = 0u64;
            for i in 0..n {
                let a = *self.0.get(i).unwrap_or(&0) as u64;
                let b = *other.0.get(i).unwrap_or(&0) as u64;
                let s = a + b + carry;
                out.push((s & 0xffff_ffff) as u32);
                carry = s >> 32;
            }
            if carry > 0 {
                out.push(carry as u32);
            }
            BigUint(out)
        }

        /// Natural log via the top 96 bits of the mantissa.
        fn ln(&self) -> f64 {
            let limbs = &self.0;
            let top = limbs.iter().rposition(|&w| w != 0).unwrap();
            let mut mantissa = 0.0_f64;
            let mut scale_bits = (top as i64) * 32;
            for k in 0..3 {
                let idx = top as i64 - k;
                let w = if idx >= 0 { limbs[idx as usize] as f64 } else { 0.0 };
                mantissa = mantissa * 4294967296.0 + w;
            }
            scale_bits -= 64; // two limbs folded below the leading one
            libm::log(mantissa) + (scale_bits as f64) * core::f64::consts::LN_2
        }
    }

    fn exact_binomial_ln(n: usize, k: usize) -> f64 {
        // Pascal's triangle row by row.
        let mut row: Vec<BigUint> = alloc::vec![BigUint::one()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(BigUint::one());
            for w in row.windows(2) {
                next.push(w[0].add(&w[1]));
            }
            next.push(BigUint::one());
            row = next;
        }
        row[k].ln()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(log_binomial(5, 0).unwrap(), 0.0);
        assert!((log_binomial(4, 2).unwrap() - libm::log(6.0)).abs() < 1e-14);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(log_binomial(3, 4).is_err());
        let t = LogFactorialTable::new(10);
        assert!(t.log_binomial(11, 2).is_err());
    }

    #[test]
    fn matches_exact_big_integer_binomial() {
        let exact = exact_binomial_ln(400, 200);
        let fast = log_binomial(400, 200).unwrap();
        assert!(
            ((fast - exact) / exact).abs() < 1e-10,
            "relative error {:.3e}",
            ((fast - exact) / exact).abs()
        );
    }

    #[test]
    fn absolute_error_stays_small() {
        let table = LogFactorialTable::new(2000);
        for &(n, k) in &[(2000usize, 1000usize), (1999, 3), (1500, 750), (997, 499)] {
            let exact = exact_binomial_ln(n, k);
            let fast = table.log_binomial(n, k).unwrap();
            assert!(
                (fast - exact).abs() < 1e-10,
                "absolute error {:.3e} at ({n},{k})",
                (fast - exact).abs()
            );
        }
    }

    #[test]
    fn table_monotone_from_zero() {
        let t = LogFactorialTable::new(50);
        assert_eq!(t.ln_factorial(0), 0.0);
        for n in 1..=50 {
            assert!(t.ln_factorial(n) >= t.ln_factorial(n - 1));
        }
    }

    #[test]
    fn big_ln_sanity() {
        // 2^100 via repeated doubling
        let mut b = BigUint::one();
        for _ in 0..100 {
            b = b.add(&b.clone());
        }
        assert!((b.ln() - 100.0 * core::f64::consts::LN_2).abs() < 1e-9);
        let _ = BigUint::zero();
    }
}

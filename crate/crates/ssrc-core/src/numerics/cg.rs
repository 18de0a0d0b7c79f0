//! Clebsch–Gordan coefficients in the Condon–Shortley convention.
//!
//! Racah's closed form, evaluated in log-space with explicit sign tracking.
//! Half-integers are carried as doubled integers so parity and triangle
//! checks stay exact.

use alloc::vec::Vec;

use super::factorial::LogFactorialTable;
use crate::math;
use crate::{Error, Result};

/// Half-integer stored as its doubled value: `HalfInt::new_doubled(3)` is 3/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    /// From a doubled value (2j).
    pub const fn new_doubled(twice: i32) -> Self {
        HalfInt(twice)
    }

    /// From an integer value.
    pub const fn from_int(j: i32) -> Self {
        HalfInt(2 * j)
    }

    pub const fn doubled(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

/// Numerically validated CG arguments; sums like j1 + m1 are guaranteed
/// non-negative integers by the checks in [`clebsch_gordan_with`].
struct CgArgs {
    two_j1: i32,
    two_j2: i32,
    two_m1: i32,
    two_m2: i32,
    two_j: i32,
    two_m: i32,
}

impl CgArgs {
    /// (a + b)/2 for doubled arguments known to produce an integer ≥ 0.
    fn half_sum(a: i32, b: i32) -> usize {
        debug_assert!((a + b) % 2 == 0 && a + b >= 0);
        ((a + b) / 2) as usize
    }
}

/// ⟨j1 m1; j2 m2 | J M⟩.
///
/// Returns zero when M ≠ m1 + m2; rejects arguments violating |m| ≤ j,
/// j/m parity, or the triangle inequality on (j1, j2, J).
pub fn clebsch_gordan(
    j1: HalfInt,
    j2: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    big_j: HalfInt,
    big_m: HalfInt,
) -> Result<f64> {
    let max_arg = ((j1.doubled() + j2.doubled() + big_j.doubled()) / 2 + 1).max(1) as usize;
    let table = LogFactorialTable::new(max_arg);
    clebsch_gordan_with(&table, j1, j2, m1, m2, big_j, big_m)
}

/// [`clebsch_gordan`] against a caller-provided factorial table, for hot
/// loops. The table must cover j1 + j2 + J + 1.
pub fn clebsch_gordan_with(
    table: &LogFactorialTable,
    j1: HalfInt,
    j2: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    big_j: HalfInt,
    big_m: HalfInt,
) -> Result<f64> {
    let a = CgArgs {
        two_j1: j1.doubled(),
        two_j2: j2.doubled(),
        two_m1: m1.doubled(),
        two_m2: m2.doubled(),
        two_j: big_j.doubled(),
        two_m: big_m.doubled(),
    };

    // |m| ≤ j with matching parity, for each of the three pairs.
    for (tj, tm) in [
        (a.two_j1, a.two_m1),
        (a.two_j2, a.two_m2),
        (a.two_j, a.two_m),
    ] {
        if tj < 0 || tm.abs() > tj || (tj - tm) % 2 != 0 {
            return Err(Error::InvalidAngularMomenta);
        }
    }
    // Triangle inequality, with integer perimeter.
    if a.two_j > a.two_j1 + a.two_j2
        || a.two_j < (a.two_j1 - a.two_j2).abs()
        || (a.two_j1 + a.two_j2 + a.two_j) % 2 != 0
    {
        return Err(Error::InvalidAngularMomenta);
    }
    if a.two_m != a.two_m1 + a.two_m2 {
        return Ok(0.0);
    }

    // Racah's formula. All factorial arguments below are integers.
    let j1pm1 = CgArgs::half_sum(a.two_j1, a.two_m1);
    let j1mm1 = CgArgs::half_sum(a.two_j1, -a.two_m1);
    let j2pm2 = CgArgs::half_sum(a.two_j2, a.two_m2);
    let j2mm2 = CgArgs::half_sum(a.two_j2, -a.two_m2);
    let jpm = CgArgs::half_sum(a.two_j, a.two_m);
    let jmm = CgArgs::half_sum(a.two_j, -a.two_m);

    let j1pj2mj = CgArgs::half_sum(a.two_j1 + a.two_j2, -a.two_j);
    let j1mj2pj = CgArgs::half_sum(a.two_j1 - a.two_j2, a.two_j);
    let mj1pj2pj = CgArgs::half_sum(-a.two_j1 + a.two_j2, a.two_j);
    let j1pj2pj1 = CgArgs::half_sum(a.two_j1 + a.two_j2, a.two_j) + 1;

    let ln_pref = 0.5
        * (math::ln((a.two_j + 1) as f64)
            + table.ln_factorial(j1pj2mj)
            + table.ln_factorial(j1mj2pj)
            + table.ln_factorial(mj1pj2pj)
            - table.ln_factorial(j1pj2pj1)
            + table.ln_factorial(j1pm1)
            + table.ln_factorial(j1mm1)
            + table.ln_factorial(j2pm2)
            + table.ln_factorial(j2mm2)
            + table.ln_factorial(jpm)
            + table.ln_factorial(jmm));

    // k-sum bounds: every factorial argument must be ≥ 0.
    let t1 = (a.two_j2 - a.two_j - a.two_m1) / 2; // j2 − J − m1
    let t2 = (a.two_j1 - a.two_j + a.two_m2) / 2; // j1 − J + m2
    let k_min = 0.max(t1).max(t2);
    let k_max = (j1pj2mj as i32).min(j1mm1 as i32).min(j2pm2 as i32);
    if k_max < k_min {
        return Ok(0.0);
    }

    // Log-magnitude terms with alternating signs, summed relative to the
    // largest term.
    let mut logs: Vec<f64> = Vec::with_capacity((k_max - k_min + 1) as usize);
    for k in k_min..=k_max {
        let ku = k as usize;
        let ln_term = -(table.ln_factorial(ku)
            + table.ln_factorial(j1pj2mj - ku)
            + table.ln_factorial(j1mm1 - ku)
            + table.ln_factorial(j2pm2 - ku)
            + table.ln_factorial((k - t1) as usize)
            + table.ln_factorial((k - t2) as usize));
        logs.push(ln_term);
    }
    let ln_max = logs.iter().fold(f64::NEG_INFINITY, |m, &v| if v > m { v } else { m });
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for (idx, &ln_term) in logs.iter().enumerate() {
        let k = k_min + idx as i32;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let y = sign * math::exp(ln_term - ln_max) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    Ok(math::exp(ln_pref + ln_max) * sum)
}

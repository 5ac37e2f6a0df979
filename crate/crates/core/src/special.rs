//! Log-gamma, log-beta and log-binomial helpers.
//!
//! Large-argument log-beta values are formed from the Stirling remainder of each
//! argument instead of subtracting three large log-gamma values, which keeps the
//! relative error of `ln C(n, k)` near machine precision for n in the thousands.

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Remainder of the Stirling series, `ln Γ(x) - [(x - 1/2) ln x - x + ln √(2π)]`, for x >= 10.
fn stirling_remainder(x: f64) -> f64 {
    debug_assert!(x >= 10.0);
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0
        - r2 * (1.0 / 360.0
            - r2 * (1.0 / 1260.0
                - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360360.0))))))
}

/// `ln B(a, b)` for a, b > 0.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    let (p, q) = if a <= b { (a, b) } else { (b, a) };
    let s = p + q;
    if p >= 10.0 {
        let corr = stirling_remainder(p) + stirling_remainder(q) - stirling_remainder(s);
        -0.5 * q.ln() + LN_SQRT_2PI + corr + (p - 0.5) * (p / s).ln() + q * (-p / s).ln_1p()
    } else if q >= 10.0 {
        let corr = stirling_remainder(q) - stirling_remainder(s);
        ln_gamma(p) + corr + p - p * s.ln() + (q - 0.5) * (-p / s).ln_1p()
    } else {
        ln_gamma(p) + ln_gamma(q) - ln_gamma(s)
    }
}

/// Exact binomial for small arguments; `None` once the value leaves the exact f64 range.
fn exact_choose(n: u64, k: u64) -> Option<f64> {
    if n > 50 {
        return None;
    }
    let mut acc: u64 = 1;
    for i in 1..=k {
        // acc * (n - k + i) / i stays integral at every step
        acc = acc * (n - k + i) / i;
    }
    Some(acc as f64)
}

/// `ln C(n, k)` without argument checks; symmetric in `k <-> n - k` bit for bit.
pub(crate) fn ln_choose(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    match k {
        0 => 0.0,
        1 => (n as f64).ln(),
        _ => match exact_choose(n, k) {
            Some(c) => c.ln(),
            None => -((n + 1) as f64).ln() - ln_beta((n - k + 1) as f64, (k + 1) as f64),
        },
    }
}

/// Natural logarithm of the binomial coefficient `C(n, k)`.
pub fn log_binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidArguments(format!(
            "log_binomial needs k <= n, got n={n}, k={k}"
        )));
    }
    Ok(ln_choose(n, k))
}

/// `ln(exp(a) + exp(b))` with `-inf` as the additive identity.
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Compensated (Neumaier) sum.
pub(crate) fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Unevaluated sum `hi + lo` of two doubles, enough to keep the rounding of long
/// difference recurrences out of the way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        (s, err)
    }

    pub fn sub(self, other: Self) -> Self {
        let (s, e) = Self::two_sum(self.hi, -other.hi);
        let e = e + (self.lo - other.lo);
        let (hi, lo) = Self::two_sum(s, e);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

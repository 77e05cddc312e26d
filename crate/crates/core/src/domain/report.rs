use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

/// Both sides of an inequality, their ratio and a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport<T> {
    pub lhs: T,
    pub rhs: T,
    /// None when the right-hand side vanishes.
    pub ratio: Option<T>,
    pub lhs_err: T,
    pub rhs_err: T,
    pub expected: T,
    pub tolerance: T,
    pub verdict: Verdict,
}

impl<T: Scalar> RatioReport<T> {
    fn base(lhs: T, rhs: T, lhs_err: T, rhs_err: T, expected: T, tolerance: T) -> Self {
        let ratio = if rhs > T::zero() { Some(lhs / rhs) } else { None };
        Self { lhs, rhs, ratio, lhs_err, rhs_err, expected, tolerance, verdict: Verdict::Indeterminate }
    }

    /// Verdict is pass iff |ratio − expected| ≤ tolerance.
    pub fn equality(lhs: T, rhs: T, lhs_err: T, rhs_err: T, expected: T, tolerance: T) -> Self {
        let mut r = Self::base(lhs, rhs, lhs_err, rhs_err, expected, tolerance);
        r.verdict = match r.ratio {
            Some(q) if (q - expected).abs() <= tolerance => Verdict::Pass,
            Some(q) if q.is_finite() => Verdict::Fail,
            _ => Verdict::Indeterminate,
        };
        r
    }

    /// Verdict is pass iff ratio < 1 − 3·(combined error), i.e. the
    /// inequality is strict with a three-sigma margin.
    pub fn strict(lhs: T, rhs: T, lhs_err: T, rhs_err: T) -> Self {
        let mut r = Self::base(lhs, rhs, lhs_err, rhs_err, T::one(), T::zero());
        let margin = T::lit(3.0) * r.ratio_error();
        r.tolerance = margin;
        r.verdict = match r.ratio {
            Some(q) if q < T::one() - margin => Verdict::Pass,
            Some(q) if q.is_finite() => Verdict::Fail,
            _ => Verdict::Indeterminate,
        };
        r
    }

    /// First-order propagated error of lhs/rhs.
    pub fn ratio_error(&self) -> T {
        match self.ratio {
            Some(q) => {
                let rl = if self.lhs != T::zero() { self.lhs_err / self.lhs } else { T::zero() };
                let rr = self.rhs_err / self.rhs;
                q.abs() * (rl * rl + rr * rr).sqrt()
            }
            None => T::infinity(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Rational = Ratio<i64>;

/// Lebesgue exponent, finite and exact or the symbolic ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exponent {
    Finite(Rational),
    Infinity,
}

impl Exponent {
    pub fn int(p: i64) -> Self {
        Exponent::Finite(Rational::from_integer(p))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Exponent::Finite(Rational::new(num, den))
    }

    /// 1/p, with 1/∞ = 0.
    pub fn reciprocal(&self) -> Rational {
        match self {
            Exponent::Finite(p) if !p.is_zero() => p.recip(),
            Exponent::Finite(_) => Rational::from_integer(i64::MAX),
            Exponent::Infinity => Rational::zero(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    pub fn to_scalar<T: Scalar>(&self) -> T {
        match self {
            Exponent::Finite(p) => T::lit(p.to_f64().unwrap_or(f64::NAN)),
            Exponent::Infinity => T::infinity(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inf" | "infinity" | "∞" => return Ok(Exponent::Infinity),
            _ => {}
        }
        let bad = || Error::InvalidInput(format!("cannot parse exponent `{s}`"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            return Ok(Exponent::ratio(num, den));
        }
        s.parse::<i64>().map(Exponent::int).map_err(|_| bad())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) if p.is_integer() => write!(f, "{}", p.numer()),
            Exponent::Finite(p) => write!(f, "{}/{}", p.numer(), p.denom()),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// Scaling-admissibility 2/q + n/r = n/2 with 2 ≤ q, r ≤ ∞, excluding the
/// forbidden endpoint (q, r, n) = (2, ∞, 2). Exact arithmetic throughout.
pub fn admissible(q: Exponent, r: Exponent, n: usize) -> bool {
    let half = Rational::new(1, 2);
    let in_range = |p: &Exponent| match p {
        Exponent::Finite(v) => *v >= Rational::from_integer(2),
        Exponent::Infinity => true,
    };
    if !in_range(&q) || !in_range(&r) {
        return false;
    }
    if n == 2 && q == Exponent::int(2) && r == Exponent::Infinity {
        return false;
    }
    let nr = Rational::from_integer(n as i64);
    Rational::from_integer(2) * q.reciprocal() + nr * r.reciprocal() == nr * half
}

fn check_theorem1(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    if k < 2 {
        return Err(Error::Domain(format!("k = {k} is excluded: the power must satisfy k >= 2")));
    }
    if (n, k) == (1, 2) {
        return Err(Error::Domain("the case (n,k) = (1,2) is excluded (negative kernel power)".into()));
    }
    Ok(())
}

/// (p, r) = (2nk/(2nk − n − 2), 4n/(n(k+1) − 2)), exactly.
pub fn weak_exponents(n: usize, k: usize) -> Result<(Rational, Rational)> {
    check_theorem1(n, k)?;
    let (n, k) = (n as i64, k as i64);
    let p = Rational::new(2 * n * k, 2 * n * k - n - 2);
    let r = Rational::new(4 * n, n * (k + 1) - 2);
    Ok((p, r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseKind {
    /// q = r = 2k, the diagonal norms of the main inequality.
    Diagonal { k: usize },
    /// Explicit mixed exponents, either admissible or whitelisted.
    Mixed { q: Exponent, r: Exponent },
}

/// A validated exponent configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrichartzCase {
    n: usize,
    kind: CaseKind,
}

/// Non-admissible (n, q, r) triples that appear in the Sobolev-Strichartz
/// corollaries; the gradient factor restores scaling there.
pub const SOBOLEV_WHITELIST: [(usize, i64, i64); 6] = [(1, 10, 10), (1, 12, 6), (1, 16, 4), (2, 6, 6), (2, 8, 4), (4, 4, 4)];

impl StrichartzCase {
    pub fn theorem1(n: usize, k: usize) -> Result<Self> {
        check_theorem1(n, k)?;
        Ok(Self { n, kind: CaseKind::Diagonal { k } })
    }

    /// Mixed exponents: accepted when admissible, a diagonal (2k, 2k) of a
    /// valid main-inequality case, or a whitelisted Sobolev-Strichartz triple.
    pub fn mixed(n: usize, q: Exponent, r: Exponent) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        if admissible(q, r, n) || Self::whitelisted(n, q, r) {
            return Ok(Self { n, kind: CaseKind::Mixed { q, r } });
        }
        if let (Exponent::Finite(qq), Exponent::Finite(rr)) = (q, r) {
            if qq == rr && qq.is_integer() && qq.numer() % 2 == 0 {
                let k = (qq.numer() / 2) as usize;
                if check_theorem1(n, k).is_ok() {
                    return Ok(Self { n, kind: CaseKind::Mixed { q, r } });
                }
            }
        }
        Err(Error::Domain(format!("exponents (q, r) = ({q}, {r}) are not admissible in dimension {n}")))
    }

    fn whitelisted(n: usize, q: Exponent, r: Exponent) -> bool {
        SOBOLEV_WHITELIST.iter().any(|&(wn, wq, wr)| wn == n && q == Exponent::int(wq) && r == Exponent::int(wr))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> CaseKind {
        self.kind
    }

    pub fn k(&self) -> Option<usize> {
        match self.kind {
            CaseKind::Diagonal { k } => Some(k),
            CaseKind::Mixed { .. } => None,
        }
    }

    pub fn exponents(&self) -> (Exponent, Exponent) {
        match self.kind {
            CaseKind::Diagonal { k } => (Exponent::int(2 * k as i64), Exponent::int(2 * k as i64)),
            CaseKind::Mixed { q, r } => (q, r),
        }
    }

    /// (n(k−1) − 2)/2 for diagonal cases.
    pub fn kernel_power(&self) -> Option<Rational> {
        self.k().map(|k| Rational::new(self.n as i64 * (k as i64 - 1) - 2, 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility_examples() {
        assert!(admissible(Exponent::int(6), Exponent::int(6), 1));
        assert!(admissible(Exponent::int(8), Exponent::int(4), 1));
        assert!(admissible(Exponent::int(4), Exponent::int(4), 2));
        assert!(!admissible(Exponent::int(2), Exponent::Infinity, 2));
        assert!(admissible(Exponent::int(2), Exponent::ratio(2 * 3, 1), 3));
        assert!(admissible(Exponent::Infinity, Exponent::int(2), 5));
        assert!(!admissible(Exponent::int(10), Exponent::int(10), 1));
        assert!(!admissible(Exponent::ratio(3, 2), Exponent::int(6), 1));
    }

    #[test]
    fn weak_exponent_examples() {
        assert_eq!(weak_exponents(1, 3).unwrap(), (Rational::from_integer(2), Rational::from_integer(2)));
        assert_eq!(weak_exponents(2, 2).unwrap(), (Rational::from_integer(2), Rational::from_integer(2)));
        assert_eq!(weak_exponents(1, 4).unwrap(), (Rational::new(8, 5), Rational::new(4, 3)));
        assert!(weak_exponents(1, 2).is_err());
    }

    #[test]
    fn theorem1_cases() {
        let err = StrichartzCase::theorem1(1, 2).unwrap_err();
        assert!(err.to_string().contains("(1,2)"));
        assert!(StrichartzCase::theorem1(3, 1).is_err());
        let c = StrichartzCase::theorem1(2, 2).unwrap();
        assert_eq!(c.kernel_power(), Some(Rational::from_integer(0)));
        assert_eq!(StrichartzCase::theorem1(1, 4).unwrap().kernel_power(), Some(Rational::new(1, 2)));
    }

    #[test]
    fn mixed_whitelist() {
        assert!(StrichartzCase::mixed(1, Exponent::int(10), Exponent::int(10)).is_ok());
        assert!(StrichartzCase::mixed(1, Exponent::int(8), Exponent::int(8)).is_ok());
        assert!(StrichartzCase::mixed(1, Exponent::int(4), Exponent::int(4)).is_err());
        assert!(StrichartzCase::mixed(1, Exponent::int(7), Exponent::int(3)).is_err());
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!(Exponent::parse("inf").unwrap(), Exponent::Infinity);
        assert_eq!(Exponent::parse("8/5").unwrap(), Exponent::ratio(8, 5));
        assert_eq!(Exponent::parse(" 6 ").unwrap(), Exponent::int(6));
        assert!(Exponent::parse("x").is_err());
    }
}

//! Approximation-ratio functions `rho(k) = max(1, c * k^e)` with rational
//! `c` and `e`, compared exactly in integer arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RatioSpec {
    coeff: Ratio<u64>,
    exponent: Ratio<u64>,
}

impl RatioSpec {
    pub fn new(coeff: Ratio<u64>, exponent: Ratio<u64>) -> Self {
        RatioSpec { coeff, exponent }
    }

    /// `rho(k) = c`.
    pub fn constant(numer: u64, denom: u64) -> Self {
        RatioSpec::new(Ratio::new(numer, denom), Ratio::zero())
    }

    /// `rho(k) = 1`.
    pub fn one() -> Self {
        RatioSpec::constant(1, 1)
    }

    /// `rho(k) = k`.
    pub fn identity() -> Self {
        RatioSpec::new(Ratio::one(), Ratio::one())
    }

    pub fn coeff(&self) -> Ratio<u64> {
        self.coeff
    }

    pub fn exponent(&self) -> Ratio<u64> {
        self.exponent
    }

    /// Valid for maximization: `k / rho(k)` must be unbounded, which needs
    /// `e < 1` (or a zero coefficient, making `rho` identically 1).
    pub fn check_maximization(&self) -> Result<()> {
        if self.coeff.is_zero() || self.exponent < Ratio::one() {
            Ok(())
        } else {
            Err(Error::InvalidRatio(format!("k/rho(k) is bounded for rho = {self}; the exponent must be below 1")))
        }
    }

    /// Whether `lhs >= c * base^(extra + e)` for nonnegative integers.
    ///
    /// With `c = a/b` and `e = p/q` this is `(lhs * b)^q >= a^q * base^(extra*q + p)`.
    fn at_least_scaled(&self, lhs: &BigUint, base: u64, extra: u64) -> bool {
        let (a, b) = (BigUint::from(*self.coeff.numer()), BigUint::from(*self.coeff.denom()));
        let (p, q) = (*self.exponent.numer(), *self.exponent.denom());
        let q32 = u32::try_from(q).expect("exponent denominator too large");
        let power = u32::try_from(extra * q + p).expect("exponent too large");
        let left = (lhs * b).pow(q32);
        let right = a.pow(q32) * BigUint::from(base).pow(power);
        left >= right
    }

    /// `ceil(rho(k) * k)`.
    pub fn k_prime(&self, k: u64) -> u64 {
        assert!(k >= 1, "k must be positive");
        // ceil(max(1, c k^e) * k) = max(k, ceil(c k^(1+e))).
        let fits = |m: u64| self.at_least_scaled(&BigUint::from(m), k, 1);
        let mut hi = k;
        while !fits(hi) {
            hi = hi.checked_mul(2).expect("k' overflows u64");
        }
        let mut lo = 0u64;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if fits(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo.max(k)
    }

    /// Whether `d / rho(d) >= k`.
    pub fn ratio_reaches(&self, d: u64, k: u64) -> bool {
        // d >= k * max(1, c d^e)  <=>  d >= k and d >= k c d^e.
        if d < k {
            return false;
        }
        // d >= k c d^e  <=>  (d b)^q >= (k a)^q d^p; the helper scales c by k.
        let scaled = RatioSpec::new(self.coeff * Ratio::from_integer(k), self.exponent);
        scaled.at_least_scaled(&BigUint::from(d), d, 0)
    }

    /// Smallest `d >= 1` with `d / rho(d) >= k`, searched up to `cap`.
    pub fn smallest_reaching(&self, k: u64, cap: u64) -> Result<u64> {
        self.check_maximization()?;
        // d / rho(d) is nondecreasing for e < 1, so binary search applies.
        let mut hi = k.max(1);
        while !self.ratio_reaches(hi, k) {
            if hi >= cap {
                return Err(Error::InvalidRatio(format!("no d <= {cap} has d/rho(d) >= {k} for rho = {self}")));
            }
            hi = hi.saturating_mul(2).min(cap);
        }
        let mut lo = 1u64;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.ratio_reaches(mid, k) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }
}

fn fmt_ratio(r: &Ratio<u64>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for RatioSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_zero() {
            return fmt_ratio(&self.coeff, f);
        }
        if !self.coeff.is_one() {
            fmt_ratio(&self.coeff, f)?;
            f.write_str("*")?;
        }
        f.write_str("k")?;
        if self.exponent.is_one() {
            Ok(())
        } else if self.exponent.is_integer() {
            write!(f, "^{}", self.exponent.numer())
        } else {
            write!(f, "^({}/{})", self.exponent.numer(), self.exponent.denom())
        }
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<Ratio<u64>> {
    let bad = |why: &str| Error::InvalidRatio(format!("`{whole}`: {why}"));
    if s.contains('.') {
        return Err(bad("decimals are not accepted, write fractions such as k^(1/2)"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: u64 = num.parse().map_err(|_| bad("expected a nonnegative integer or fraction"))?;
    let den: u64 = den.parse().map_err(|_| bad("expected a nonnegative integer or fraction"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    let g = num.gcd(&den);
    Ok(Ratio::new_raw(num / g, den / g))
}

impl FromStr for RatioSpec {
    type Err = Error;

    /// Accepts `c`, `k`, `c*k`, `k^e`, `c*k^e` where `c` is `n` or `n/d` and
    /// `e` is `n` or `(n/d)`.
    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidRatio("empty ratio".into()));
        }
        let Some(kpos) = s.find('k') else {
            return Ok(RatioSpec::new(parse_rational(&s, text)?, Ratio::zero()));
        };
        let coeff = match &s[..kpos] {
            "" => Ratio::one(),
            prefix => match prefix.strip_suffix('*') {
                Some(c) => parse_rational(c, text)?,
                None => return Err(Error::InvalidRatio(format!("`{text}`: expected `*` before k"))),
            },
        };
        let rest = &s[kpos + 1..];
        let exponent = if rest.is_empty() {
            Ratio::one()
        } else if let Some(e) = rest.strip_prefix('^') {
            let inner = match e.strip_prefix('(') {
                Some(body) => body
                    .strip_suffix(')')
                    .ok_or_else(|| Error::InvalidRatio(format!("`{text}`: unbalanced parenthesis")))?,
                None if e.contains('/') => {
                    return Err(Error::InvalidRatio(format!("`{text}`: fractional exponents need parentheses")))
                }
                None => e,
            };
            parse_rational(inner, text)?
        } else {
            return Err(Error::InvalidRatio(format!("`{text}`: unexpected `{rest}` after k")));
        };
        Ok(RatioSpec::new(coeff, exponent))
    }
}

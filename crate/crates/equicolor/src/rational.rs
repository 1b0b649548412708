//! Exact rational arithmetic used for every measure-like quantity.

use num_rational::Ratio;
use num_traits::{CheckedMul, Signed, Zero};

/// Exact rational. The largest constant in play is `7^{k+1}`; callers that
/// may exceed `i128` use the checked helpers.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Ratio::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Ratio::from_integer(n)
}

/// `base^exp` as an exact rational.
pub fn pow(base: Rational, exp: u32) -> Rational {
    let mut acc = int(1);
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// `base^exp`, or `None` if an intermediate value leaves the `i128` range.
pub fn checked_pow(base: Rational, exp: u32) -> Option<Rational> {
    let mut acc = int(1);
    for _ in 0..exp {
        acc = acc.checked_mul(&base)?;
    }
    Some(acc)
}

/// `x · y`, or `None` on overflow.
pub fn checked_mul(x: &Rational, y: &Rational) -> Option<Rational> {
    x.checked_mul(y)
}

pub fn abs(x: Rational) -> Rational {
    x.abs()
}

pub fn is_zero(x: &Rational) -> bool {
    x.is_zero()
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn to_string(x: &Rational) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `0.25`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().ok()?;
        let q: i128 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(rat(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = whole.starts_with('-');
        let w: i128 = if whole.is_empty() || whole == "-" { 0 } else { whole.parse().ok()? };
        let f: i128 = frac.parse().ok()?;
        let scale = 10i128.pow(frac.len() as u32);
        let mag = w.abs() * scale + f;
        return Some(rat(if neg { -mag } else { mag }, scale));
    }
    s.parse::<i128>().ok().map(int)
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

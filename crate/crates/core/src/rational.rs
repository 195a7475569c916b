//! Exact rational arithmetic used for every payoff comparison.

use num_rational::Ratio;

pub type Rational = Ratio<i64>;

pub fn int(x: i64) -> Rational {
    Rational::from_integer(x)
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// `"3"` for integers, `"7/2"` otherwise.
pub fn to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => s.trim().parse().ok().map(Rational::from_integer),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Serde adapter writing a rational as its string form.
pub mod as_string {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(r))
    }
}

/// Serde adapter for a slice of rationals.
pub mod vec_as_string {
    use super::Rational;
    use serde::ser::{SerializeSeq, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&super::to_string(r))?;
        }
        seq.end()
    }
}

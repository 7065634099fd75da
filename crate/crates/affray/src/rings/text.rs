//! Element rendering and parsing, one textual form per ring.
//!
//! Integers and residues print as decimals, rationals as `p/q`, quadratic
//! elements as `a+b*w` (with `w` the ring's generator), polynomials in `t`
//! notation, and rational functions as `(num)/(den)`.

use super::poly::Poly;
use super::{RingElement, RingId, Value};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(v) => write!(f, "{v}"),
            Value::Rat(v) => write!(f, "{}", rat_str(v)),
            Value::Res(v) => write!(f, "{v}"),
            Value::Quad(a, b) => write!(f, "{}", quad_str(&a.to_string(), b.is_zero(), b.is_negative(), &b.abs().to_string(), a.is_zero())),
            Value::QuadRat(a, b) => write!(f, "{}", quad_str(&rat_str(a), b.is_zero(), b.is_negative(), &rat_str(&b.abs()), a.is_zero())),
            Value::Poly(poly) => write!(f, "{}", poly.render()),
            Value::RatFn(n, d) => {
                if d.is_one() {
                    write!(f, "{}", n.render())
                } else {
                    write!(f, "({})/({})", n.render(), d.render())
                }
            }
        }
    }
}

fn rat_str(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn quad_str(a: &str, b_zero: bool, b_neg: bool, b_abs: &str, a_zero: bool) -> String {
    if b_zero {
        return a.to_string();
    }
    let w_term = if b_abs == "1" {
        "w".to_string()
    } else {
        format!("{b_abs}*w")
    };
    let signed_w = if b_neg {
        format!("-{w_term}")
    } else {
        w_term.clone()
    };
    if a_zero {
        signed_w
    } else if b_neg {
        format!("{a}-{w_term}")
    } else {
        format!("{a}+{w_term}")
    }
}

impl RingElement {
    /// Parses `text` as an element of `ring` using the ring's canonical
    /// textual form (signs and whitespace are tolerated).
    pub fn parse(ring: RingId, text: &str) -> Result<RingElement> {
        let bad = |msg: &str| Error::BadElement {
            text: text.to_string(),
            ring: ring.to_string(),
            msg: msg.to_string(),
        };
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty input"));
        }
        match ring {
            RingId::Integers => BigInt::from_str(&s)
                .map(RingElement::from_int)
                .map_err(|e| bad(&e.to_string())),
            RingId::Rationals => parse_rational(&s)
                .map(RingElement::from_rat)
                .map_err(|e| bad(&e)),
            RingId::Residues(n) => {
                let v = BigInt::from_str(&s).map_err(|e| bad(&e.to_string()))?;
                let r = v.mod_floor(&BigInt::from(n));
                RingElement::residue(ring, u64::try_from(r).unwrap())
            }
            RingId::QuadInt(_) => {
                let (a, b) = parse_quad_parts(&s).map_err(|e| bad(&e))?;
                let pi = |s: &str| BigInt::from_str(s).map_err(|e| e.to_string());
                RingElement::quad(ring, pi(&a).map_err(|e| bad(&e))?, pi(&b).map_err(|e| bad(&e))?)
            }
            RingId::QuadField(_) => {
                let (a, b) = parse_quad_parts(&s).map_err(|e| bad(&e))?;
                RingElement::quad_rat(
                    ring,
                    parse_rational(&a).map_err(|e| bad(&e))?,
                    parse_rational(&b).map_err(|e| bad(&e))?,
                )
            }
            RingId::PolyFp(p) => {
                let f = Poly::parse(&s, p).map_err(|e| bad(&e))?;
                RingElement::from_poly(ring, f)
            }
            RingId::RatFunc(p) => {
                if let Some(rest) = s.strip_prefix('(') {
                    let (num_str, den_str) = rest
                        .split_once(")/(")
                        .ok_or_else(|| bad("expected (num)/(den)"))?;
                    let den_str = den_str
                        .strip_suffix(')')
                        .ok_or_else(|| bad("expected trailing )"))?;
                    let num = Poly::parse(num_str, p).map_err(|e| bad(&e))?;
                    let den = Poly::parse(den_str, p).map_err(|e| bad(&e))?;
                    RingElement::rat_fn(ring, num, den)
                } else {
                    let f = Poly::parse(&s, p).map_err(|e| bad(&e))?;
                    RingElement::from_poly(ring, f)
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|e| e.to_string())?;
            let d = BigInt::from_str(d).map_err(|e| e.to_string())?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|e| e.to_string()),
    }
}

/// Splits `a+b*w` into the two coordinate strings (`"0"` where absent).
fn parse_quad_parts(s: &str) -> std::result::Result<(String, String), String> {
    // Find the +/- that separates the two parts: any sign past index 0 that
    // is not immediately after '/' (rational components contain no signs
    // except possibly a leading one).
    let bytes = s.as_bytes();
    let mut split = None;
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
            split = Some(i);
            break;
        }
    }
    let w_coeff = |part: &str| -> std::result::Result<String, String> {
        let (sign, body) = match part.strip_prefix('-') {
            Some(rest) => ("-", rest),
            None => ("", part.strip_prefix('+').unwrap_or(part)),
        };
        let coeff = if body == "w" {
            "1".to_string()
        } else if let Some(c) = body.strip_suffix("*w") {
            c.to_string()
        } else {
            return Err(format!("malformed w-term {part:?}"));
        };
        Ok(format!("{sign}{coeff}"))
    };
    match split {
        Some(i) => {
            let (a, b) = (&s[..i], &s[i..]);
            if !b.contains('w') {
                return Err("second component must carry w".into());
            }
            Ok((a.to_string(), w_coeff(b)?))
        }
        None => {
            if s.contains('w') {
                Ok(("0".to_string(), w_coeff(s)?))
            } else {
                Ok((s.to_string(), "0".to_string()))
            }
        }
    }
}

use num_integer::Integer;

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(ring: RingId, text: &str) -> String {
        RingElement::parse(ring, text).unwrap().to_string()
    }

    #[test]
    fn integer_and_rational_forms() {
        assert_eq!(roundtrip(RingId::Integers, "-42"), "-42");
        assert_eq!(roundtrip(RingId::Rationals, "6/4"), "3/2");
        assert_eq!(roundtrip(RingId::Rationals, "3/-6"), "-1/2");
        assert_eq!(roundtrip(RingId::Rationals, "5"), "5");
    }

    #[test]
    fn residue_reduces_mod_n() {
        assert_eq!(roundtrip(RingId::Residues(6), "13"), "1");
        assert_eq!(roundtrip(RingId::Residues(6), "-1"), "5");
    }

    #[test]
    fn quadratic_forms() {
        let zi = RingId::QuadInt(-1);
        assert_eq!(roundtrip(zi, "1+w"), "1+w");
        assert_eq!(roundtrip(zi, "-w"), "-w");
        assert_eq!(roundtrip(zi, "3-2*w"), "3-2*w");
        assert_eq!(roundtrip(zi, "7"), "7");
        let qf = RingId::QuadField(5);
        assert_eq!(roundtrip(qf, "1/2+3/2*w"), "1/2+3/2*w");
        assert_eq!(roundtrip(qf, "-1/3-w"), "-1/3-w");
    }

    #[test]
    fn polynomial_forms() {
        let fp = RingId::PolyFp(3);
        assert_eq!(roundtrip(fp, "t^2+2*t+1"), "t^2+2*t+1");
        assert_eq!(roundtrip(fp, "t-1"), "t+2");
        assert_eq!(roundtrip(fp, "0"), "0");
        let rf = RingId::RatFunc(3);
        assert_eq!(roundtrip(rf, "(t^2+1)/(t)"), "(t^2+1)/(t)");
        assert_eq!(roundtrip(rf, "(2*t)/(2)"), "t");
        assert_eq!(roundtrip(rf, "t+1"), "t+1");
    }
}

//! Dense polynomials over a prime field F_p, p <= 97.
//!
//! Coefficients are stored low degree first, already reduced mod p, with no
//! trailing zeros (the zero polynomial is the empty vector). The modulus is
//! not stored per element; every operation takes `p` explicitly and the
//! surrounding ring id guarantees consistency.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p prime and a != 0 mod p.
    debug_assert!(a % p != 0);
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    pub fn constant(c: i64, p: u64) -> Self {
        let c = c.rem_euclid(p as i64) as u64;
        Poly::from_coeffs(vec![c], p)
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn from_coeffs(coeffs: Vec<u64>, p: u64) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, rhs: &Poly, p: u64) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + b) % p;
        }
        Poly::from_coeffs(out, p)
    }

    pub fn neg(&self, p: u64) -> Poly {
        let out = self.coeffs.iter().map(|&c| (p - c) % p).collect();
        Poly { coeffs: out }
    }

    pub fn sub(&self, rhs: &Poly, p: u64) -> Poly {
        self.add(&rhs.neg(p), p)
    }

    pub fn mul(&self, rhs: &Poly, p: u64) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Poly::from_coeffs(out, p)
    }

    pub fn scale(&self, c: u64, p: u64) -> Poly {
        let c = c % p;
        Poly::from_coeffs(self.coeffs.iter().map(|&a| a * c % p).collect(), p)
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &Poly, p: u64) -> Result<(Poly, Poly)> {
        if div.is_zero() {
            return Err(Error::ZeroElement);
        }
        let dlead_inv = inv_mod(div.leading(), p);
        let mut rem = self.coeffs.clone();
        let dd = div.coeffs.len() - 1;
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let lead = rem[k] % p;
            if lead == 0 {
                continue;
            }
            let f = lead * dlead_inv % p;
            quot[k - dd] = f;
            for (j, &dc) in div.coeffs.iter().enumerate() {
                let sub = f * dc % p;
                let idx = k - dd + j;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
        }
        Ok((Poly::from_coeffs(quot, p), Poly::from_coeffs(rem, p)))
    }

    /// Monic gcd.
    pub fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b, p).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.scale(inv_mod(a.leading(), p), p)
        }
    }

    /// Base-p positional encoding; `None` on overflow. Numeric order of the
    /// encodings equals degree-then-lexicographic order, which is the
    /// canonical enumeration order for polynomials.
    pub fn encode(&self, p: u64) -> Option<u128> {
        let mut v: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            v = v.checked_mul(p as u128)?.checked_add(c as u128)?;
        }
        Some(v)
    }

    pub fn decode(mut v: u128, p: u64) -> Poly {
        let mut coeffs = Vec::new();
        while v > 0 {
            coeffs.push((v % p as u128) as u64);
            v /= p as u128;
        }
        Poly { coeffs }
    }

    /// Canonical ordering: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &Poly) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (k, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}*t"),
                (k, 1) => format!("t^{k}"),
                (k, c) => format!("{c}*t^{k}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }

    pub fn parse(text: &str, p: u64) -> std::result::Result<Poly, String> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut acc = Poly::zero();
        let bytes = s.as_bytes();
        let mut i = 0usize;
        let mut sign = 1i64;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            sign = if bytes[0] == b'-' { -1 } else { 1 };
            i = 1;
        }
        loop {
            let start = i;
            while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                i += 1;
            }
            if start == i {
                return Err("empty term".into());
            }
            let term = Poly::parse_term(&s[start..i], sign, p)?;
            acc = acc.add(&term, p);
            if i == bytes.len() {
                break;
            }
            sign = if bytes[i] == b'-' { -1 } else { 1 };
            i += 1;
        }
        Ok(acc)
    }

    fn parse_term(term: &str, sign: i64, p: u64) -> std::result::Result<Poly, String> {
        let (coeff_str, power): (&str, usize) = if let Some(idx) = term.find('t') {
            let before = &term[..idx];
            let after = &term[idx + 1..];
            let coeff = before.strip_suffix('*').unwrap_or(before);
            let power = if after.is_empty() {
                1
            } else if let Some(exp) = after.strip_prefix('^') {
                exp.parse::<usize>().map_err(|e| e.to_string())?
            } else {
                return Err(format!("malformed term {term:?}"));
            };
            (coeff, power)
        } else {
            (term, 0)
        };
        let c: i64 = if coeff_str.is_empty() {
            1
        } else {
            coeff_str.parse::<i64>().map_err(|e| e.to_string())?
        };
        let c = (c * sign).rem_euclid(p as i64) as u64;
        let mut coeffs = vec![0u64; power + 1];
        coeffs[power] = c;
        Ok(Poly::from_coeffs(coeffs, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let p = 5;
        let a = Poly::from_coeffs(vec![1, 2, 3, 4], p);
        let b = Poly::from_coeffs(vec![2, 1], p);
        let (q, r) = a.divrem(&b, p).unwrap();
        let back = q.mul(&b, p).add(&r, p);
        assert_eq!(back, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn encode_matches_canonical_order() {
        let p = 3;
        let mut polys: Vec<Poly> = (0..81u128).map(|v| Poly::decode(v, p)).collect();
        let encs: Vec<u128> = polys.iter().map(|f| f.encode(p).unwrap()).collect();
        assert_eq!(encs, (0..81).collect::<Vec<_>>());
        polys.sort_by(|a, b| a.canonical_cmp(b));
        let encs_sorted: Vec<u128> = polys.iter().map(|f| f.encode(p).unwrap()).collect();
        assert_eq!(encs_sorted, (0..81).collect::<Vec<_>>());
    }

    #[test]
    fn render_parse_roundtrip() {
        let p = 7;
        for v in 0..2401u128 {
            let f = Poly::decode(v, p);
            let g = Poly::parse(&f.render(), p).unwrap();
            assert_eq!(f, g, "text {}", f.render());
        }
    }

    #[test]
    fn gcd_is_monic_and_divides() {
        let p = 3;
        let a = Poly::from_coeffs(vec![1, 0, 1], p); // t^2+1
        let b = Poly::from_coeffs(vec![2, 1], p); // t+2
        // (t+2)(t+1) = t^2 + 3t + 2 = t^2 + 2 over F_3
        let prod = a.mul(&b, p);
        let g = Poly::gcd(&prod, &b, p);
        assert_eq!(g, Poly::from_coeffs(vec![2, 1], p));
    }
}

//! Exact arithmetic for the supported carrier rings.
//!
//! Seven rings are supported: the integers `z`, the rationals `q`, residue
//! rings `zmod:n`, quadratic integer rings `quadint:d` (the ring of integers
//! of Q(sqrt d), with omega = sqrt(d) or (1+sqrt d)/2 for d = 1 mod 4),
//! quadratic fields `quadfield:d`, polynomial rings `polyfp:p` over a prime
//! field, and rational function fields `ratfunc:p`.
//!
//! Every element carries a unique canonical form: fractions reduced with
//! positive denominator, residues in [0, n), polynomial coefficients reduced
//! mod p with no leading zeros, rational functions reduced with monic
//! denominator. Equality is structural equality of canonical forms and all
//! arithmetic is exact; nothing in this module touches floating point.

mod enumerate;
mod lid;
pub mod poly;
mod text;

pub use enumerate::{elements_up_to_height, ring_iter, RingIter};
pub use lid::{ideal_index, lid_probe, non_amenability_witness, IndexResult, LidProbeEntry, LidProbeReport};

use crate::error::{Error, Result};
use crate::primes;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use poly::Poly;
use std::cmp::Ordering;

/// Identifier of a carrier ring, with its numeric parameter where applicable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RingId {
    Integers,
    Rationals,
    /// Z/n, n >= 2.
    Residues(u64),
    /// Ring of integers of Q(sqrt d), d squarefree, d != 0, 1, |d| <= 50.
    QuadInt(i64),
    /// Q(sqrt d), same constraints on d.
    QuadField(i64),
    /// F_p[t], p prime <= 97.
    PolyFp(u64),
    /// F_p(t), p prime <= 97.
    RatFunc(u64),
}

pub const MAX_QUAD_D: i64 = 50;
pub const MAX_POLY_P: u64 = 97;

impl RingId {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RingId::Integers | RingId::Rationals => Ok(()),
            RingId::Residues(n) if n >= 2 => Ok(()),
            RingId::Residues(n) => Err(Error::Config(format!("modulus {n} must be >= 2"))),
            RingId::QuadInt(d) | RingId::QuadField(d) => {
                if d == 0 || d == 1 {
                    Err(Error::Config(format!("d = {d} is not a valid discriminant parameter")))
                } else if d.abs() > MAX_QUAD_D {
                    Err(Error::Config(format!("|d| = {} exceeds the supported bound {MAX_QUAD_D}", d.abs())))
                } else if !primes::is_squarefree(d) {
                    Err(Error::Config(format!("d = {d} is not squarefree")))
                } else {
                    Ok(())
                }
            }
            RingId::PolyFp(p) | RingId::RatFunc(p) => {
                if p <= MAX_POLY_P && primes::is_prime_trial_division(p) {
                    Ok(())
                } else {
                    Err(Error::Config(format!("p = {p} must be a prime <= {MAX_POLY_P}")))
                }
            }
        }
    }

    pub fn is_field(&self) -> bool {
        match *self {
            RingId::Rationals | RingId::QuadField(_) | RingId::RatFunc(_) => true,
            RingId::Residues(n) => primes::is_prime_trial_division(n),
            _ => false,
        }
    }

    /// Infinite countable integral domain where every nonzero ideal has
    /// finite additive index. Residue rings are finite, hence excluded.
    pub fn is_lid(&self) -> bool {
        !matches!(self, RingId::Residues(_))
    }

    pub fn is_integral_domain(&self) -> bool {
        match *self {
            RingId::Residues(n) => primes::is_prime_trial_division(n),
            _ => true,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RingId::Residues(_))
    }

    /// For quadratic rings: true when omega = (1 + sqrt d)/2.
    pub fn quad_half_basis(&self) -> bool {
        match *self {
            RingId::QuadInt(d) => d.rem_euclid(4) == 1,
            _ => false,
        }
    }

    pub fn quad_d(&self) -> Option<i64> {
        match *self {
            RingId::QuadInt(d) | RingId::QuadField(d) => Some(d),
            _ => None,
        }
    }

    pub fn char_p(&self) -> Option<u64> {
        match *self {
            RingId::PolyFp(p) | RingId::RatFunc(p) => Some(p),
            _ => None,
        }
    }

    /// The designated subring for restricted patterns: Z in Q, the quadratic
    /// integers in Q(sqrt d), F_p[t] in F_p(t).
    pub fn integral_subring(&self) -> Option<RingId> {
        match *self {
            RingId::Rationals => Some(RingId::Integers),
            RingId::QuadField(d) => Some(RingId::QuadInt(d)),
            RingId::RatFunc(p) => Some(RingId::PolyFp(p)),
            _ => None,
        }
    }
}

impl std::fmt::Display for RingId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            RingId::Integers => write!(f, "z"),
            RingId::Rationals => write!(f, "q"),
            RingId::Residues(n) => write!(f, "zmod:{n}"),
            RingId::QuadInt(d) => write!(f, "quadint:{d}"),
            RingId::QuadField(d) => write!(f, "quadfield:{d}"),
            RingId::PolyFp(p) => write!(f, "polyfp:{p}"),
            RingId::RatFunc(p) => write!(f, "ratfunc:{p}"),
        }
    }
}

impl std::str::FromStr for RingId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, param) = match s.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (s, None),
        };
        let need = |p: Option<&str>| -> Result<i64> {
            p.ok_or_else(|| Error::Config(format!("ring {s:?} needs a parameter")))?
                .parse::<i64>()
                .map_err(|e| Error::Config(format!("bad ring parameter in {s:?}: {e}")))
        };
        let ring = match head {
            "z" => RingId::Integers,
            "q" => RingId::Rationals,
            "zmod" => RingId::Residues(need(param)? as u64),
            "quadint" => RingId::QuadInt(need(param)?),
            "quadfield" => RingId::QuadField(need(param)?),
            "polyfp" => RingId::PolyFp(need(param)? as u64),
            "ratfunc" => RingId::RatFunc(need(param)? as u64),
            _ => return Err(Error::Config(format!("unknown ring {s:?}"))),
        };
        ring.validate()?;
        Ok(ring)
    }
}

/// Canonical value payload; the variant is determined by the ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Value {
    Int(BigInt),
    Rat(BigRational),
    Res(u64),
    /// a + b*omega with integer coordinates.
    Quad(BigInt, BigInt),
    /// a + b*sqrt(d) with rational coordinates.
    QuadRat(BigRational, BigRational),
    Poly(Poly),
    /// Reduced fraction, denominator monic and nonzero.
    RatFn(Poly, Poly),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingElement {
    ring: RingId,
    value: Value,
}

fn ring_panic(expected: RingId, found: RingId) -> ! {
    panic!("ring mismatch in element arithmetic: {expected} vs {found}")
}

impl RingElement {
    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn zero(ring: RingId) -> Self {
        let value = match ring {
            RingId::Integers => Value::Int(BigInt::zero()),
            RingId::Rationals => Value::Rat(BigRational::zero()),
            RingId::Residues(_) => Value::Res(0),
            RingId::QuadInt(_) => Value::Quad(BigInt::zero(), BigInt::zero()),
            RingId::QuadField(_) => Value::QuadRat(BigRational::zero(), BigRational::zero()),
            RingId::PolyFp(_) => Value::Poly(Poly::zero()),
            RingId::RatFunc(_) => Value::RatFn(Poly::zero(), Poly::one()),
        };
        RingElement { ring, value }
    }

    pub fn one(ring: RingId) -> Self {
        let value = match ring {
            RingId::Integers => Value::Int(BigInt::one()),
            RingId::Rationals => Value::Rat(BigRational::one()),
            RingId::Residues(n) => Value::Res(1 % n),
            RingId::QuadInt(_) => Value::Quad(BigInt::one(), BigInt::zero()),
            RingId::QuadField(_) => Value::QuadRat(BigRational::one(), BigRational::zero()),
            RingId::PolyFp(_) => Value::Poly(Poly::one()),
            RingId::RatFunc(_) => Value::RatFn(Poly::one(), Poly::one()),
        };
        RingElement { ring, value }
    }

    pub fn from_i64(ring: RingId, v: i64) -> Self {
        match ring {
            RingId::Integers => RingElement::from_int(BigInt::from(v)),
            RingId::Rationals => RingElement::from_rat(BigRational::from_integer(BigInt::from(v))),
            RingId::Residues(n) => RingElement::residue(ring, v.rem_euclid(n as i64) as u64).unwrap(),
            RingId::QuadInt(_) => RingElement::quad(ring, BigInt::from(v), BigInt::zero()).unwrap(),
            RingId::QuadField(_) => RingElement::quad_rat(
                ring,
                BigRational::from_integer(BigInt::from(v)),
                BigRational::zero(),
            )
            .unwrap(),
            RingId::PolyFp(p) => RingElement {
                ring,
                value: Value::Poly(Poly::constant(v, p)),
            },
            RingId::RatFunc(p) => RingElement {
                ring,
                value: Value::RatFn(Poly::constant(v, p), Poly::one()),
            },
        }
    }

    pub fn from_int(v: BigInt) -> Self {
        RingElement {
            ring: RingId::Integers,
            value: Value::Int(v),
        }
    }

    pub fn from_rat(v: BigRational) -> Self {
        RingElement {
            ring: RingId::Rationals,
            value: Value::Rat(v),
        }
    }

    pub fn residue(ring: RingId, v: u64) -> Result<Self> {
        match ring {
            RingId::Residues(n) => Ok(RingElement {
                ring,
                value: Value::Res(v % n),
            }),
            _ => Err(Error::UnsupportedRing(format!("{ring} is not a residue ring"))),
        }
    }

    pub fn quad(ring: RingId, a: BigInt, b: BigInt) -> Result<Self> {
        match ring {
            RingId::QuadInt(_) => Ok(RingElement {
                ring,
                value: Value::Quad(a, b),
            }),
            _ => Err(Error::UnsupportedRing(format!("{ring} is not a quadratic integer ring"))),
        }
    }

    pub fn quad_rat(ring: RingId, a: BigRational, b: BigRational) -> Result<Self> {
        match ring {
            RingId::QuadField(_) => Ok(RingElement {
                ring,
                value: Value::QuadRat(a, b),
            }),
            _ => Err(Error::UnsupportedRing(format!("{ring} is not a quadratic field"))),
        }
    }

    pub fn poly(ring: RingId, coeffs: Vec<u64>) -> Result<Self> {
        match ring {
            RingId::PolyFp(p) => Ok(RingElement {
                ring,
                value: Value::Poly(Poly::from_coeffs(coeffs, p)),
            }),
            _ => Err(Error::UnsupportedRing(format!("{ring} is not a polynomial ring"))),
        }
    }

    pub fn rat_fn(ring: RingId, num: Poly, den: Poly) -> Result<Self> {
        match ring {
            RingId::RatFunc(_) => {
                if den.is_zero() {
                    return Err(Error::ZeroElement);
                }
                Ok(RingElement {
                    ring,
                    value: Value::RatFn(num, den).normalized(ring),
                })
            }
            _ => Err(Error::UnsupportedRing(format!("{ring} is not a rational function field"))),
        }
    }

    pub fn from_poly(ring: RingId, f: Poly) -> Result<Self> {
        match ring {
            RingId::PolyFp(_) => Ok(RingElement {
                ring,
                value: Value::Poly(f),
            }),
            RingId::RatFunc(_) => Ok(RingElement {
                ring,
                value: Value::RatFn(f, Poly::one()),
            }),
            _ => Err(Error::UnsupportedRing(format!("{ring} holds no polynomials"))),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(v) => v.is_zero(),
            Value::Rat(v) => v.is_zero(),
            Value::Res(v) => *v == 0,
            Value::Quad(a, b) => a.is_zero() && b.is_zero(),
            Value::QuadRat(a, b) => a.is_zero() && b.is_zero(),
            Value::Poly(f) => f.is_zero(),
            Value::RatFn(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == RingElement::one(self.ring)
    }

    pub fn is_unit(&self) -> bool {
        match (&self.value, self.ring) {
            (Value::Int(v), _) => v.abs().is_one(),
            (Value::Rat(v), _) => !v.is_zero(),
            (Value::Res(v), RingId::Residues(n)) => v.gcd(&n) == 1,
            (Value::Quad(..), ring) => self.quad_norm(ring).abs().is_one(),
            (Value::QuadRat(..), _) => !self.is_zero(),
            (Value::Poly(f), _) => f.degree() == Some(0),
            (Value::RatFn(n, _), _) => !n.is_zero(),
            _ => unreachable!(),
        }
    }

    fn quad_norm(&self, ring: RingId) -> BigInt {
        match &self.value {
            Value::Quad(a, b) => {
                let d = BigInt::from(ring.quad_d().expect("quadratic ring"));
                if ring.quad_half_basis() {
                    // N(a + b*omega) = a^2 + a*b + b^2 (1 - d)/4
                    a * a + a * b + b * b * ((BigInt::one() - d) / 4)
                } else {
                    a * a - d * (b * b)
                }
            }
            _ => panic!("quad_norm on non-quadratic element"),
        }
    }

    /// Field norm |N(x)| for quadratic integers; exposed for coset counting.
    pub fn norm_abs(&self) -> Result<BigUint> {
        match self.ring {
            RingId::QuadInt(_) => Ok(self.quad_norm(self.ring).magnitude().clone()),
            RingId::Integers => match &self.value {
                Value::Int(v) => Ok(v.magnitude().clone()),
                _ => unreachable!(),
            },
            _ => Err(Error::UnsupportedRing(format!("norm not defined for {}", self.ring))),
        }
    }

    fn conj(&self) -> RingElement {
        match &self.value {
            Value::Quad(a, b) => {
                let value = if self.ring.quad_half_basis() {
                    Value::Quad(a + b, -b.clone())
                } else {
                    Value::Quad(a.clone(), -b.clone())
                };
                RingElement { ring: self.ring, value }
            }
            Value::QuadRat(a, b) => RingElement {
                ring: self.ring,
                value: Value::QuadRat(a.clone(), -b.clone()),
            },
            _ => panic!("conj on non-quadratic element"),
        }
    }

    pub fn add(&self, rhs: &RingElement) -> RingElement {
        if self.ring != rhs.ring {
            ring_panic(self.ring, rhs.ring);
        }
        let ring = self.ring;
        let value = match (&self.value, &rhs.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Res(a), Value::Res(b)) => {
                let n = match ring {
                    RingId::Residues(n) => n as u128,
                    _ => unreachable!(),
                };
                Value::Res(((*a as u128 + *b as u128) % n) as u64)
            }
            (Value::Quad(a, b), Value::Quad(c, d)) => Value::Quad(a + c, b + d),
            (Value::QuadRat(a, b), Value::QuadRat(c, d)) => Value::QuadRat(a + c, b + d),
            (Value::Poly(f), Value::Poly(g)) => Value::Poly(f.add(g, ring.char_p().unwrap())),
            (Value::RatFn(an, ad), Value::RatFn(bn, bd)) => {
                let p = ring.char_p().unwrap();
                let num = an.mul(bd, p).add(&bn.mul(ad, p), p);
                let den = ad.mul(bd, p);
                Value::RatFn(num, den).normalized(ring)
            }
            _ => ring_panic(self.ring, rhs.ring),
        };
        RingElement { ring, value }
    }

    pub fn neg(&self) -> RingElement {
        let ring = self.ring;
        let value = match &self.value {
            Value::Int(a) => Value::Int(-a),
            Value::Rat(a) => Value::Rat(-a),
            Value::Res(a) => {
                let n = match ring {
                    RingId::Residues(n) => n,
                    _ => unreachable!(),
                };
                Value::Res(if *a == 0 { 0 } else { n - a })
            }
            Value::Quad(a, b) => Value::Quad(-a, -b),
            Value::QuadRat(a, b) => Value::QuadRat(-a, -b),
            Value::Poly(f) => Value::Poly(f.neg(ring.char_p().unwrap())),
            Value::RatFn(n, d) => Value::RatFn(n.neg(ring.char_p().unwrap()), d.clone()),
        };
        RingElement { ring, value }
    }

    pub fn sub(&self, rhs: &RingElement) -> RingElement {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RingElement) -> RingElement {
        if self.ring != rhs.ring {
            ring_panic(self.ring, rhs.ring);
        }
        let ring = self.ring;
        let value = match (&self.value, &rhs.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Res(a), Value::Res(b)) => {
                let n = match ring {
                    RingId::Residues(n) => n as u128,
                    _ => unreachable!(),
                };
                Value::Res(((*a as u128 * *b as u128) % n) as u64)
            }
            (Value::Quad(a, b), Value::Quad(c, d)) => {
                let dd = BigInt::from(ring.quad_d().unwrap());
                if ring.quad_half_basis() {
                    // omega^2 = (d-1)/4 + omega
                    let k = (&dd - 1) / 4;
                    Value::Quad(a * c + b * d * &k, a * d + b * c + b * d)
                } else {
                    Value::Quad(a * c + &dd * (b * d), a * d + b * c)
                }
            }
            (Value::QuadRat(a, b), Value::QuadRat(c, d)) => {
                let dd = BigRational::from_integer(BigInt::from(ring.quad_d().unwrap()));
                Value::QuadRat(a * c + &dd * (b * d), a * d + b * c)
            }
            (Value::Poly(f), Value::Poly(g)) => Value::Poly(f.mul(g, ring.char_p().unwrap())),
            (Value::RatFn(an, ad), Value::RatFn(bn, bd)) => {
                let p = ring.char_p().unwrap();
                Value::RatFn(an.mul(bn, p), ad.mul(bd, p)).normalized(ring)
            }
            _ => ring_panic(self.ring, rhs.ring),
        };
        RingElement { ring, value }
    }

    /// Exact division: `Some(q)` with `q * rhs == self` when such a q exists
    /// and is unique, `None` otherwise (including division by zero and by
    /// zero divisors in residue rings).
    pub fn exact_div(&self, rhs: &RingElement) -> Option<RingElement> {
        if self.ring != rhs.ring {
            ring_panic(self.ring, rhs.ring);
        }
        if rhs.is_zero() {
            return None;
        }
        let ring = self.ring;
        match (&self.value, &rhs.value) {
            (Value::Int(a), Value::Int(b)) => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then(|| RingElement::from_int(q))
            }
            (Value::Rat(a), Value::Rat(b)) => Some(RingElement::from_rat(a / b)),
            (Value::Res(_), Value::Res(_)) => rhs.inverse().map(|inv| self.mul(&inv)),
            (Value::Quad(..), Value::Quad(..)) => {
                let num = self.mul(&rhs.conj());
                let n = rhs.quad_norm(ring);
                match &num.value {
                    Value::Quad(a, b) => {
                        let (qa, ra) = a.div_rem(&n);
                        let (qb, rb) = b.div_rem(&n);
                        (ra.is_zero() && rb.is_zero())
                            .then(|| RingElement::quad(ring, qa, qb).unwrap())
                    }
                    _ => unreachable!(),
                }
            }
            (Value::QuadRat(..), Value::QuadRat(..)) => Some(self.mul(&rhs.inverse()?)),
            (Value::Poly(f), Value::Poly(g)) => {
                let p = ring.char_p().unwrap();
                let (q, r) = f.divrem(g, p).ok()?;
                r.is_zero().then(|| RingElement {
                    ring,
                    value: Value::Poly(q),
                })
            }
            (Value::RatFn(..), Value::RatFn(..)) => Some(self.mul(&rhs.inverse()?)),
            _ => ring_panic(self.ring, rhs.ring),
        }
    }

    /// Multiplicative inverse when the element is a unit.
    pub fn inverse(&self) -> Option<RingElement> {
        let ring = self.ring;
        match &self.value {
            Value::Int(v) => v.abs().is_one().then(|| self.clone()),
            Value::Rat(v) => (!v.is_zero()).then(|| RingElement::from_rat(v.recip())),
            Value::Res(v) => {
                let n = match ring {
                    RingId::Residues(n) => n,
                    _ => unreachable!(),
                };
                inverse_mod_u64(*v, n).map(|i| RingElement {
                    ring,
                    value: Value::Res(i),
                })
            }
            Value::Quad(..) => {
                let n = self.quad_norm(ring);
                if n.abs().is_one() {
                    let c = self.conj();
                    Some(if n.is_one() { c } else { c.neg() })
                } else {
                    None
                }
            }
            Value::QuadRat(a, b) => {
                if self.is_zero() {
                    return None;
                }
                let d = BigRational::from_integer(BigInt::from(ring.quad_d().unwrap()));
                let n = a * a - &d * (b * b);
                Some(RingElement {
                    ring,
                    value: Value::QuadRat(a / &n, -(b / &n)),
                })
            }
            Value::Poly(f) => {
                let p = ring.char_p().unwrap();
                (f.degree() == Some(0)).then(|| RingElement {
                    ring,
                    value: Value::Poly(Poly::from_coeffs(
                        vec![inverse_mod_u64(f.leading(), p).unwrap()],
                        p,
                    )),
                })
            }
            Value::RatFn(n, d) => {
                (!n.is_zero()).then(|| {
                    RingElement {
                        ring,
                        value: Value::RatFn(d.clone(), n.clone()).normalized(ring),
                    }
                })
            }
        }
    }

    /// Re-runs canonicalization; the result always equals the input for
    /// elements built through the public constructors.
    pub fn renormalized(&self) -> RingElement {
        let ring = self.ring;
        let value = match &self.value {
            Value::Rat(v) => Value::Rat(BigRational::new(v.numer().clone(), v.denom().clone())),
            Value::QuadRat(a, b) => Value::QuadRat(
                BigRational::new(a.numer().clone(), a.denom().clone()),
                BigRational::new(b.numer().clone(), b.denom().clone()),
            ),
            Value::RatFn(n, d) => Value::RatFn(n.clone(), d.clone()).normalized(ring),
            other => other.clone(),
        };
        RingElement { ring, value }
    }

    /// Coefficient height used for candidate-map enumeration: |x| on Z,
    /// max(|num|, den) on Q, the value on residues, the coordinate box radius
    /// on quadratic rings, and the degree on polynomial rings.
    pub fn height(&self) -> BigUint {
        match &self.value {
            Value::Int(v) => v.magnitude().clone(),
            Value::Rat(v) => v.numer().magnitude().clone().max(v.denom().magnitude().clone()),
            Value::Res(v) => BigUint::from(*v),
            Value::Quad(a, b) => a.magnitude().clone().max(b.magnitude().clone()),
            Value::QuadRat(a, b) => {
                let h = |r: &BigRational| r.numer().magnitude().clone().max(r.denom().magnitude().clone());
                h(a).max(h(b))
            }
            Value::Poly(f) => BigUint::from(f.degree().unwrap_or(0)),
            Value::RatFn(n, d) => {
                BigUint::from(n.degree().unwrap_or(0).max(d.degree().unwrap_or(0)))
            }
        }
    }

    pub fn height_le(&self, h: u64) -> bool {
        self.height() <= BigUint::from(h)
    }

    /// Natural value order on Z, Q and residues; canonical enumeration order
    /// elsewhere. Used for sorted display output.
    pub fn display_cmp(&self, other: &RingElement) -> Ordering {
        match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::Rat(a), Value::Rat(b)) => a.cmp(b),
            (Value::Res(a), Value::Res(b)) => a.cmp(b),
            _ => self.enum_cmp(other),
        }
    }

    /// Canonical enumeration order; `ring_iter` yields elements in exactly
    /// this order and all "least witness" contracts refer to it.
    pub fn enum_cmp(&self, other: &RingElement) -> Ordering {
        debug_assert_eq!(self.ring, other.ring);
        fn sign_rank<T: Signed>(v: &T) -> u8 {
            u8::from(v.is_negative())
        }
        fn rat_key(v: &BigRational) -> (BigUint, BigRational, u8) {
            let h = v.numer().magnitude().clone().max(v.denom().magnitude().clone());
            (h, v.abs(), sign_rank(v))
        }
        match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => (a.magnitude(), sign_rank(a)).cmp(&(b.magnitude(), sign_rank(b))),
            (Value::Rat(a), Value::Rat(b)) => rat_key(a).cmp(&rat_key(b)),
            (Value::Res(a), Value::Res(b)) => a.cmp(b),
            (Value::Quad(a1, b1), Value::Quad(a2, b2)) => {
                let key = |a: &BigInt, b: &BigInt| {
                    (
                        a.magnitude().clone().max(b.magnitude().clone()),
                        b.magnitude().clone(),
                        sign_rank(b),
                        a.magnitude().clone(),
                        sign_rank(a),
                    )
                };
                key(a1, b1).cmp(&key(a2, b2))
            }
            (Value::QuadRat(a1, b1), Value::QuadRat(a2, b2)) => {
                let key = |a: &BigRational, b: &BigRational| {
                    let (ha, ..) = rat_key(a);
                    let (hb, ..) = rat_key(b);
                    (ha.max(hb), rat_key(b), rat_key(a))
                };
                key(a1, b1).cmp(&key(a2, b2))
            }
            (Value::Poly(f), Value::Poly(g)) => f.canonical_cmp(g),
            (Value::RatFn(n1, d1), Value::RatFn(n2, d2)) => {
                let grade = |n: &Poly, d: &Poly| -> Poly {
                    if n.canonical_cmp(d) == Ordering::Less {
                        d.clone()
                    } else {
                        n.clone()
                    }
                };
                grade(n1, d1)
                    .canonical_cmp(&grade(n2, d2))
                    .then_with(|| d1.canonical_cmp(d2))
                    .then_with(|| n1.canonical_cmp(n2))
            }
            _ => ring_panic(self.ring, other.ring),
        }
    }

    /// Floor to an integer; defined on Z and Q.
    pub fn floor_int(&self) -> Option<BigInt> {
        match &self.value {
            Value::Int(v) => Some(v.clone()),
            Value::Rat(v) => Some(v.floor().to_integer()),
            _ => None,
        }
    }

    pub fn as_res(&self) -> Option<u64> {
        match &self.value {
            Value::Res(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_rat(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rat(v) => Some(v),
            _ => None,
        }
    }

    /// Membership in the designated integral subring; identity on rings that
    /// are themselves the subring.
    pub fn is_integral(&self) -> bool {
        match &self.value {
            Value::Rat(v) => v.is_integer(),
            Value::QuadRat(a, b) => {
                let d = self.ring.quad_d().unwrap();
                let two = BigRational::from_integer(BigInt::from(2));
                if d.rem_euclid(4) == 1 {
                    // a + b sqrt(d) integral iff 2a, 2b in Z and 2a = 2b mod 2.
                    let ta = (a * &two).is_integer();
                    let tb = (b * &two).is_integer();
                    ta && tb && ((a * &two).to_integer() - (b * &two).to_integer()).is_even()
                } else {
                    a.is_integer() && b.is_integer()
                }
            }
            Value::RatFn(_, d) => d.is_one(),
            _ => true,
        }
    }
}

pub(crate) fn inverse_mod_u64(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

impl Value {
    fn normalized(self, ring: RingId) -> Value {
        match self {
            Value::RatFn(num, den) => {
                let p = ring.char_p().expect("ratfunc ring");
                if num.is_zero() {
                    return Value::RatFn(Poly::zero(), Poly::one());
                }
                let g = Poly::gcd(&num, &den, p);
                let (num, _) = num.divrem(&g, p).unwrap();
                let (den, _) = den.divrem(&g, p).unwrap();
                let lead_inv = inverse_mod_u64(den.leading(), p).expect("nonzero denominator");
                Value::RatFn(num.scale(lead_inv, p), den.scale(lead_inv, p))
            }
            other => other,
        }
    }
}

pub fn ensure_same_ring(expected: RingId, found: RingId) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::RingMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

//! A small set-expression language and its evaluator.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! EXPR := ATOM | union(EXPR{,EXPR}) | inter(EXPR{,EXPR}) | compl(EXPR)
//!       | diff(EXPR,EXPR) | affine(U,V,EXPR) | preimage(U,V,EXPR)
//! ATOM := interval(a,b) | ap(a,d) | mod(r,m) | floormod(r,m)
//!       | set{e{,e}} | thickbad(k) | example45(k)
//! ```
//!
//! Element literals (a, b, d, e, U, V) use the textual form of the ring the
//! expression is evaluated against; they are kept verbatim in the AST and
//! only resolved at evaluation time, so parsing needs no ring context.
//!
//! `interval(a,b)` is inclusive and requires an ordered ring (Z or Q).
//! `ap(a,d)` is the one-sided progression {a + k*d : k >= 0}. `mod(r,m)` is
//! exact congruence on Z and Z/n. `floormod(r,m)` holds when floor(x) = r
//! (mod m); on Z it coincides with `mod`, on Q it selects the union of the
//! half-open bands [qm+r, qm+r+1). `compl` is relative to the evaluation
//! window. `affine(U,V,e)` and `preimage(U,V,e)` are the image and preimage
//! of `e` under x -> Ux + V; membership of both is decided pointwise and
//! exactly, so they commute with window truncation.

use super::Window;
use crate::constructions::{build_example45, build_thickbad, BlockSet};
use crate::error::{Error, Result};
use crate::rings::{RingElement, RingId};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SetExpr {
    Interval(String, String),
    Ap(String, String),
    Mod(String, String),
    FloorMod(String, String),
    List(Vec<String>),
    Named(String, u32),
    Union(Vec<SetExpr>),
    Inter(Vec<SetExpr>),
    Compl(Box<SetExpr>),
    Diff(Box<SetExpr>, Box<SetExpr>),
    AffineImage(String, String, Box<SetExpr>),
    AffinePreimage(String, String, Box<SetExpr>),
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Interval(a, b) => write!(f, "interval({a},{b})"),
            SetExpr::Ap(a, d) => write!(f, "ap({a},{d})"),
            SetExpr::Mod(r, m) => write!(f, "mod({r},{m})"),
            SetExpr::FloorMod(r, m) => write!(f, "floormod({r},{m})"),
            SetExpr::List(es) => write!(f, "set{{{}}}", es.join(",")),
            SetExpr::Named(name, k) => write!(f, "{name}({k})"),
            SetExpr::Union(es) => write_args(f, "union", es),
            SetExpr::Inter(es) => write_args(f, "inter", es),
            SetExpr::Compl(e) => write!(f, "compl({e})"),
            SetExpr::Diff(a, b) => write!(f, "diff({a},{b})"),
            SetExpr::AffineImage(u, v, e) => write!(f, "affine({u},{v},{e})"),
            SetExpr::AffinePreimage(u, v, e) => write!(f, "preimage({u},{v},{e})"),
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, name: &str, es: &[SetExpr]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, e) in es.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, ")")
}

pub fn parse_set_expr(text: &str) -> Result<SetExpr> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", b as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string())
    }

    /// A raw element literal: everything up to the next ',' or closing
    /// bracket at depth zero, with nesting of () and {} respected.
    fn literal(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0i32;
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            match b {
                b'(' | b'{' => depth += 1,
                b')' | b'}' => {
                    if depth == 0 {
                        break;
                    }
                    depth -= 1;
                }
                b',' if depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        let raw = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let trimmed: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if trimmed.is_empty() {
            return Err(self.err("expected an element literal"));
        }
        Ok(trimmed)
    }

    fn expr(&mut self) -> Result<SetExpr> {
        let at = self.pos;
        let name = self.ident()?;
        match name.as_str() {
            "union" | "inter" => {
                self.expect(b'(')?;
                let mut args = vec![self.expr()?];
                while self.peek() == Some(b',') {
                    self.expect(b',')?;
                    args.push(self.expr()?);
                }
                self.expect(b')')?;
                Ok(if name == "union" {
                    SetExpr::Union(args)
                } else {
                    SetExpr::Inter(args)
                })
            }
            "compl" => {
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(SetExpr::Compl(Box::new(inner)))
            }
            "diff" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(SetExpr::Diff(Box::new(a), Box::new(b)))
            }
            "affine" | "preimage" => {
                self.expect(b'(')?;
                let u = self.literal()?;
                self.expect(b',')?;
                let v = self.literal()?;
                self.expect(b',')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(if name == "affine" {
                    SetExpr::AffineImage(u, v, Box::new(inner))
                } else {
                    SetExpr::AffinePreimage(u, v, Box::new(inner))
                })
            }
            "interval" | "ap" | "mod" | "floormod" => {
                self.expect(b'(')?;
                let a = self.literal()?;
                self.expect(b',')?;
                let b = self.literal()?;
                self.expect(b')')?;
                Ok(match name.as_str() {
                    "interval" => SetExpr::Interval(a, b),
                    "ap" => SetExpr::Ap(a, b),
                    "mod" => SetExpr::Mod(a, b),
                    _ => SetExpr::FloorMod(a, b),
                })
            }
            "set" => {
                self.expect(b'{')?;
                let mut es = vec![self.literal()?];
                while self.peek() == Some(b',') {
                    self.expect(b',')?;
                    es.push(self.literal()?);
                }
                self.expect(b'}')?;
                Ok(SetExpr::List(es))
            }
            "thickbad" | "example45" => {
                self.expect(b'(')?;
                self.skip_ws();
                let lit = self.literal()?;
                self.expect(b')')?;
                let k: u32 = lit
                    .parse()
                    .map_err(|e| self.err(&format!("bad block count: {e}")))?;
                Ok(SetExpr::Named(name, k))
            }
            _ => {
                self.pos = at;
                Err(Error::UnknownConstruction(name))
            }
        }
    }
}

/// A set expression resolved against one ring: literals parsed, named
/// constructions built. Membership is decided pointwise and exactly.
pub struct ExprEvaluator {
    ring: RingId,
    root: Resolved,
}

enum Resolved {
    Interval(RingElement, RingElement),
    Ap(RingElement, RingElement),
    Mod(BigInt, BigInt),
    FloorMod(BigInt, BigInt),
    List(Vec<RingElement>),
    Block(BlockSet),
    Union(Vec<Resolved>),
    Inter(Vec<Resolved>),
    Compl(Box<Resolved>),
    Diff(Box<Resolved>, Box<Resolved>),
    AffineImage(RingElement, RingElement, Box<Resolved>),
    AffinePreimage(RingElement, RingElement, Box<Resolved>),
}

impl ExprEvaluator {
    pub fn new(expr: &SetExpr, ring: RingId) -> Result<ExprEvaluator> {
        Ok(ExprEvaluator {
            ring,
            root: resolve(expr, ring)?,
        })
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    /// Exact, truncation-free membership.
    pub fn contains(&self, e: &RingElement) -> Result<bool> {
        contains(&self.root, e)
    }

    /// Evaluate over a window; identical to
    /// `WindowSet::from_expr` but reuses the resolution.
    pub fn eval(&self, window: &std::sync::Arc<Window>) -> Result<super::WindowSet> {
        super::WindowSet::from_fn(window.clone(), |e| self.contains(e))
    }
}

fn ordered_cmp(a: &RingElement, b: &RingElement) -> Result<std::cmp::Ordering> {
    match a.ring() {
        RingId::Integers | RingId::Rationals => Ok(a.display_cmp(b)),
        ring => Err(Error::UnsupportedRing(format!(
            "{ring} is not ordered; interval/ap atoms do not apply"
        ))),
    }
}

fn resolve(expr: &SetExpr, ring: RingId) -> Result<Resolved> {
    let elem = |s: &str| RingElement::parse(ring, s);
    let int_lit = |s: &str| -> Result<BigInt> {
        s.parse::<BigInt>().map_err(|e| Error::BadElement {
            text: s.to_string(),
            ring: "z".into(),
            msg: e.to_string(),
        })
    };
    Ok(match expr {
        SetExpr::Interval(a, b) => Resolved::Interval(elem(a)?, elem(b)?),
        SetExpr::Ap(a, d) => Resolved::Ap(elem(a)?, elem(d)?),
        SetExpr::Mod(r, m) => {
            if !matches!(ring, RingId::Integers | RingId::Residues(_)) {
                return Err(Error::UnsupportedRing(format!(
                    "mod atom requires z or zmod, not {ring}"
                )));
            }
            let m = int_lit(m)?;
            if m.is_zero() || m.is_negative() {
                return Err(Error::Config("modulus in mod(r,m) must be positive".into()));
            }
            Resolved::Mod(int_lit(r)?, m)
        }
        SetExpr::FloorMod(r, m) => {
            if !matches!(ring, RingId::Integers | RingId::Rationals) {
                return Err(Error::UnsupportedRing(format!(
                    "floormod atom requires z or q, not {ring}"
                )));
            }
            let m = int_lit(m)?;
            if m.is_zero() || m.is_negative() {
                return Err(Error::Config("modulus in floormod(r,m) must be positive".into()));
            }
            Resolved::FloorMod(int_lit(r)?, m)
        }
        SetExpr::List(es) => {
            Resolved::List(es.iter().map(|s| elem(s)).collect::<Result<Vec<_>>>()?)
        }
        SetExpr::Named(name, k) => {
            let block = match name.as_str() {
                "thickbad" => build_thickbad(*k)?,
                "example45" => build_example45(*k)?,
                other => return Err(Error::UnknownConstruction(other.to_string())),
            };
            if block.ring() != ring {
                return Err(Error::RingMismatch {
                    expected: ring.to_string(),
                    found: block.ring().to_string(),
                });
            }
            Resolved::Block(block)
        }
        SetExpr::Union(es) => Resolved::Union(
            es.iter()
                .map(|e| resolve(e, ring))
                .collect::<Result<Vec<_>>>()?,
        ),
        SetExpr::Inter(es) => Resolved::Inter(
            es.iter()
                .map(|e| resolve(e, ring))
                .collect::<Result<Vec<_>>>()?,
        ),
        SetExpr::Compl(e) => Resolved::Compl(Box::new(resolve(e, ring)?)),
        SetExpr::Diff(a, b) => Resolved::Diff(
            Box::new(resolve(a, ring)?),
            Box::new(resolve(b, ring)?),
        ),
        SetExpr::AffineImage(u, v, e) => {
            let u = elem(u)?;
            if u.is_zero() {
                return Err(Error::ZeroElement);
            }
            Resolved::AffineImage(u, elem(v)?, Box::new(resolve(e, ring)?))
        }
        SetExpr::AffinePreimage(u, v, e) => {
            let u = elem(u)?;
            if u.is_zero() {
                return Err(Error::ZeroElement);
            }
            Resolved::AffinePreimage(u, elem(v)?, Box::new(resolve(e, ring)?))
        }
    })
}

fn contains(node: &Resolved, x: &RingElement) -> Result<bool> {
    Ok(match node {
        Resolved::Interval(a, b) => {
            ordered_cmp(a, x)? != std::cmp::Ordering::Greater
                && ordered_cmp(x, b)? != std::cmp::Ordering::Greater
        }
        Resolved::Ap(a, d) => {
            // x = a + k*d for some k >= 0.
            if d.is_zero() {
                return Ok(x == a);
            }
            match x.sub(a).exact_div(d) {
                None => false,
                Some(k) => match k.ring() {
                    RingId::Integers | RingId::Rationals => {
                        // k must be a nonnegative integer.
                        k.is_integral()
                            && k.floor_int().map(|v| !v.is_negative()).unwrap_or(false)
                    }
                    _ => {
                        return Err(Error::UnsupportedRing(
                            "ap atom requires z or q".to_string(),
                        ))
                    }
                },
            }
        }
        Resolved::Mod(r, m) => match x.ring() {
            RingId::Integers => x.as_int().unwrap().mod_floor(m) == r.mod_floor(m),
            RingId::Residues(_) => {
                BigInt::from(x.as_res().unwrap()).mod_floor(m) == r.mod_floor(m)
            }
            _ => unreachable!("checked at resolve time"),
        },
        Resolved::FloorMod(r, m) => {
            let fl = x.floor_int().expect("checked at resolve time");
            fl.mod_floor(m) == r.mod_floor(m)
        }
        Resolved::List(es) => es.contains(x),
        Resolved::Block(b) => b.contains(x),
        Resolved::Union(es) => {
            for e in es {
                if contains(e, x)? {
                    return Ok(true);
                }
            }
            false
        }
        Resolved::Inter(es) => {
            for e in es {
                if !contains(e, x)? {
                    return Ok(false);
                }
            }
            true
        }
        Resolved::Compl(e) => !contains(e, x)?,
        Resolved::Diff(a, b) => contains(a, x)? && !contains(b, x)?,
        Resolved::AffineImage(u, v, e) => {
            // x in u*e + v iff u | (x - v) and the quotient lies in e.
            match x.sub(v).exact_div(u) {
                Some(y) => contains(e, &y)?,
                None => false,
            }
        }
        Resolved::AffinePreimage(u, v, e) => {
            let y = u.mul(x).add(v);
            contains(e, &y)?
        }
    })
}

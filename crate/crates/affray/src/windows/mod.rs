//! Finite truncations of the carrier rings and dense set representations
//! over them.
//!
//! A `WindowSpec` names a finite slice of a ring; a `Window` materializes
//! its enumeration (in the ring's canonical order) together with an
//! element -> index lookup; a `WindowSet` is a bitset over that enumeration.
//! Pattern search does on the order of |W|^2 membership probes, so
//! membership is a dense bit lookup, not a hash probe.

mod expr;

pub use expr::{parse_set_expr, ExprEvaluator, SetExpr};

use crate::error::{Error, Result};
use crate::rings::{poly::Poly, ring_iter, RingElement, RingId, Value};
use bitvec::prelude::*;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// Hard cap on materialized window sizes.
pub const MAX_WINDOW: usize = 1 << 27;
/// Cap for windows that need an element table and hash index.
pub const MAX_TABLE_WINDOW: usize = 1 << 22;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "shape", content = "param", rename_all = "lowercase")]
pub enum Shape {
    /// {-N..N} over Z.
    IntBox(u64),
    /// {1..N} over Z.
    NatBox(u64),
    /// Reduced p/q with |p| <= N and 1 <= q <= N, over Q.
    Farey(u64),
    /// Polynomials of degree < d over F_p[t]; over F_p(t), reduced f/g with
    /// deg f < d, deg g < d and g monic.
    PolyDeg(u32),
    /// a + b*omega with |a|, |b| <= N over quadratic integers; over a
    /// quadratic field, a + b*sqrt(d) with both coordinates in the Farey(N)
    /// set.
    QuadBox(u64),
    /// All of Z/n.
    Residue,
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Shape::IntBox(n) => write!(f, "intbox:{n}"),
            Shape::NatBox(n) => write!(f, "natbox:{n}"),
            Shape::Farey(n) => write!(f, "farey:{n}"),
            Shape::PolyDeg(d) => write!(f, "polydeg:{d}"),
            Shape::QuadBox(n) => write!(f, "quadbox:{n}"),
            Shape::Residue => write!(f, "residue"),
        }
    }
}

impl std::str::FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Shape> {
        let (head, param) = match s.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (s, None),
        };
        let need = |p: Option<&str>| -> Result<u64> {
            p.ok_or_else(|| Error::Config(format!("window {s:?} needs a parameter")))?
                .parse::<u64>()
                .map_err(|e| Error::Config(format!("bad window parameter in {s:?}: {e}")))
        };
        Ok(match head {
            "intbox" => Shape::IntBox(need(param)?),
            "natbox" => Shape::NatBox(need(param)?),
            "farey" => Shape::Farey(need(param)?),
            "polydeg" => Shape::PolyDeg(need(param)? as u32),
            "quadbox" => Shape::QuadBox(need(param)?),
            "residue" => Shape::Residue,
            _ => return Err(Error::Config(format!("unknown window shape {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WindowSpec {
    pub ring: RingId,
    pub shape: Shape,
}

impl std::fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[{}]", self.ring, self.shape)
    }
}

impl WindowSpec {
    pub fn new(ring: RingId, shape: Shape) -> Result<WindowSpec> {
        ring.validate()?;
        let ok = match (ring, shape) {
            (RingId::Integers, Shape::IntBox(_) | Shape::NatBox(_)) => true,
            (RingId::Rationals, Shape::Farey(_)) => true,
            (RingId::Residues(_), Shape::Residue) => true,
            (RingId::PolyFp(_) | RingId::RatFunc(_), Shape::PolyDeg(_)) => true,
            (RingId::QuadInt(_) | RingId::QuadField(_), Shape::QuadBox(_)) => true,
            _ => false,
        };
        if !ok {
            return Err(Error::Config(format!(
                "window shape {shape} does not apply to ring {ring}"
            )));
        }
        Ok(WindowSpec { ring, shape })
    }
}

/// A materialized window: the enumeration of a `WindowSpec` in canonical
/// order. Boxes over Z, residue rings and polynomial windows are indexed
/// arithmetically and never store their elements.
pub struct Window {
    spec: WindowSpec,
    size: usize,
    table: Option<WindowTable>,
}

struct WindowTable {
    elements: Vec<RingElement>,
    index: HashMap<RingElement, u32>,
}

impl Window {
    pub fn new(spec: WindowSpec) -> Result<Arc<Window>> {
        let arithmetic = matches!(
            (spec.ring, spec.shape),
            (RingId::Integers, _) | (RingId::Residues(_), _) | (RingId::PolyFp(_), Shape::PolyDeg(_))
        );
        if arithmetic {
            let size = match (spec.ring, spec.shape) {
                (RingId::Integers, Shape::NatBox(n)) => n as usize,
                (RingId::Integers, Shape::IntBox(n)) => {
                    (2 * n + 1).try_into().map_err(|_| too_big(&spec))?
                }
                (RingId::Residues(n), Shape::Residue) => n as usize,
                (RingId::PolyFp(p), Shape::PolyDeg(d)) => (p as u128)
                    .checked_pow(d)
                    .and_then(|v| v.to_usize())
                    .ok_or_else(|| too_big(&spec))?,
                _ => unreachable!(),
            };
            if size > MAX_WINDOW {
                return Err(too_big(&spec));
            }
            return Ok(Arc::new(Window {
                spec,
                size,
                table: None,
            }));
        }
        // Table-backed windows: enumerate the ring until the window is
        // exhausted. All canonical orders are graded, so a prefix of the
        // ring enumeration covers each of these window shapes.
        let take_while: Box<dyn Fn(&RingElement) -> bool> = match (spec.ring, spec.shape) {
            (RingId::Rationals, Shape::Farey(n)) => Box::new(move |e| e.height_le(n)),
            (RingId::QuadInt(_), Shape::QuadBox(n)) => Box::new(move |e| e.height_le(n)),
            (RingId::QuadField(_), Shape::QuadBox(n)) => Box::new(move |e| e.height_le(n)),
            (RingId::RatFunc(p), Shape::PolyDeg(d)) => {
                let bound = (p as u128).checked_pow(d).ok_or_else(|| too_big(&spec))?;
                Box::new(move |e| match e.value() {
                    Value::RatFn(num, den) => {
                        num.encode(p).is_some_and(|v| v < bound)
                            && den.encode(p).is_some_and(|v| v < bound)
                    }
                    _ => false,
                })
            }
            _ => unreachable!("validated by WindowSpec::new"),
        };
        let mut elements = Vec::new();
        for e in ring_iter(spec.ring) {
            if !take_while(&e) {
                break;
            }
            elements.push(e);
            if elements.len() > MAX_TABLE_WINDOW {
                return Err(too_big(&spec));
            }
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        Ok(Arc::new(Window {
            spec,
            size: elements.len(),
            table: Some(WindowTable { elements, index }),
        }))
    }

    pub fn spec(&self) -> WindowSpec {
        self.spec
    }

    pub fn ring(&self) -> RingId {
        self.spec.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn element_at(&self, i: usize) -> RingElement {
        debug_assert!(i < self.size);
        match &self.table {
            Some(t) => t.elements[i].clone(),
            None => match (self.spec.ring, self.spec.shape) {
                (RingId::Integers, Shape::NatBox(_)) => {
                    RingElement::from_int(BigInt::from(i as u64 + 1))
                }
                (RingId::Integers, Shape::IntBox(_)) => {
                    // 0, 1, -1, 2, -2, ...
                    let k = (i + 1) / 2;
                    let v = if i % 2 == 1 { k as i64 } else { -(k as i64) };
                    RingElement::from_int(BigInt::from(v))
                }
                (RingId::Residues(_), Shape::Residue) => {
                    RingElement::residue(self.spec.ring, i as u64).unwrap()
                }
                (RingId::PolyFp(p), Shape::PolyDeg(_)) => {
                    RingElement::from_poly(self.spec.ring, Poly::decode(i as u128, p)).unwrap()
                }
                _ => unreachable!(),
            },
        }
    }

    /// Position of `e` in the window enumeration, `None` if outside.
    pub fn index_of(&self, e: &RingElement) -> Option<usize> {
        if e.ring() != self.spec.ring {
            return None;
        }
        match &self.table {
            Some(t) => t.index.get(e).map(|&i| i as usize),
            None => match (self.spec.ring, self.spec.shape) {
                (RingId::Integers, Shape::NatBox(n)) => {
                    let v = e.as_int().unwrap();
                    let v = v.to_u64()?;
                    (v >= 1 && v <= n).then(|| (v - 1) as usize)
                }
                (RingId::Integers, Shape::IntBox(n)) => {
                    let v = e.as_int().unwrap();
                    let mag = v.magnitude().to_u64()?;
                    if mag > n {
                        return None;
                    }
                    Some(if v.is_negative() {
                        2 * mag as usize
                    } else if mag == 0 {
                        0
                    } else {
                        2 * mag as usize - 1
                    })
                }
                (RingId::Residues(_), Shape::Residue) => Some(e.as_res().unwrap() as usize),
                (RingId::PolyFp(p), Shape::PolyDeg(_)) => match e.value() {
                    Value::Poly(f) => {
                        let enc = f.encode(p)?;
                        (enc < self.size as u128).then_some(enc as usize)
                    }
                    _ => unreachable!(),
                },
                _ => unreachable!(),
            },
        }
    }

    pub fn contains(&self, e: &RingElement) -> bool {
        self.index_of(e).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.size).map(move |i| self.element_at(i))
    }
}

/// A subset of a window, stored densely.
#[derive(Clone)]
pub struct WindowSet {
    window: Arc<Window>,
    bits: BitVec<u64, Lsb0>,
    card: usize,
}

impl WindowSet {
    pub fn empty(window: Arc<Window>) -> WindowSet {
        let bits = bitvec![u64, Lsb0; 0; window.size()];
        WindowSet {
            window,
            bits,
            card: 0,
        }
    }

    pub fn full(window: Arc<Window>) -> WindowSet {
        let size = window.size();
        let bits = bitvec![u64, Lsb0; 1; size];
        WindowSet {
            window,
            bits,
            card: size,
        }
    }

    /// Membership by predicate over the window enumeration.
    pub fn from_fn(
        window: Arc<Window>,
        mut pred: impl FnMut(&RingElement) -> Result<bool>,
    ) -> Result<WindowSet> {
        let mut bits = bitvec![u64, Lsb0; 0; window.size()];
        let mut card = 0usize;
        for i in 0..window.size() {
            if pred(&window.element_at(i))? {
                bits.set(i, true);
                card += 1;
            }
        }
        Ok(WindowSet { window, bits, card })
    }

    /// Exact evaluation of a set expression over the window.
    pub fn from_expr(expr: &SetExpr, window: &Arc<Window>) -> Result<WindowSet> {
        let ev = ExprEvaluator::new(expr, window.ring())?;
        WindowSet::from_fn(window.clone(), |e| ev.contains(e))
    }

    pub fn from_members<'a>(
        window: Arc<Window>,
        members: impl IntoIterator<Item = &'a RingElement>,
    ) -> Result<WindowSet> {
        let mut bits = bitvec![u64, Lsb0; 0; window.size()];
        let mut card = 0usize;
        for e in members {
            let i = window.index_of(e).ok_or_else(|| {
                Error::Config(format!("element {e} lies outside window {}", window.spec()))
            })?;
            if !bits[i] {
                bits.set(i, true);
                card += 1;
            }
        }
        Ok(WindowSet { window, bits, card })
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn card(&self) -> usize {
        self.card
    }

    pub fn universe_size(&self) -> usize {
        self.window.size()
    }

    pub fn contains(&self, e: &RingElement) -> bool {
        self.window.index_of(e).map(|i| self.bits[i]).unwrap_or(false)
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn member_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn members(&self) -> impl Iterator<Item = RingElement> + '_ {
        self.member_indices().map(|i| self.window.element_at(i))
    }

    fn check_same_window(&self, other: &WindowSet) -> Result<()> {
        if self.window.spec() == other.window.spec() {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                expected: self.window.spec().to_string(),
                found: other.window.spec().to_string(),
            })
        }
    }

    pub fn union(&self, other: &WindowSet) -> Result<WindowSet> {
        self.check_same_window(other)?;
        let mut bits = self.bits.clone();
        bits |= &other.bits;
        let card = bits.count_ones();
        Ok(WindowSet {
            window: self.window.clone(),
            bits,
            card,
        })
    }

    pub fn intersection(&self, other: &WindowSet) -> Result<WindowSet> {
        self.check_same_window(other)?;
        let mut bits = self.bits.clone();
        bits &= &other.bits;
        let card = bits.count_ones();
        Ok(WindowSet {
            window: self.window.clone(),
            bits,
            card,
        })
    }

    pub fn difference(&self, other: &WindowSet) -> Result<WindowSet> {
        self.check_same_window(other)?;
        let mut bits = self.bits.clone();
        for i in other.bits.iter_ones() {
            bits.set(i, false);
        }
        let card = bits.count_ones();
        Ok(WindowSet {
            window: self.window.clone(),
            bits,
            card,
        })
    }

    /// Complement relative to the window universe.
    pub fn complement(&self) -> WindowSet {
        let size = self.window.size();
        let bits = !self.bits.clone();
        let card = size - self.card;
        WindowSet {
            window: self.window.clone(),
            bits,
            card,
        }
    }
}

fn too_big(spec: &WindowSpec) -> Error {
    Error::Config(format!("window {spec} exceeds the size limit"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(ring: &str, shape: &str) -> Arc<Window> {
        Window::new(WindowSpec::new(ring.parse().unwrap(), shape.parse().unwrap()).unwrap())
            .unwrap()
    }

    #[test]
    fn natbox_indexing() {
        let w = window("z", "natbox:10");
        assert_eq!(w.size(), 10);
        let elems: Vec<String> = w.iter().map(|e| e.to_string()).collect();
        assert_eq!(elems, ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10"]);
        for i in 0..w.size() {
            assert_eq!(w.index_of(&w.element_at(i)), Some(i));
        }
        assert_eq!(w.index_of(&RingElement::from_i64(RingId::Integers, 11)), None);
        assert_eq!(w.index_of(&RingElement::from_i64(RingId::Integers, 0)), None);
    }

    #[test]
    fn intbox_follows_canonical_order() {
        let w = window("z", "intbox:3");
        let elems: Vec<String> = w.iter().map(|e| e.to_string()).collect();
        assert_eq!(elems, ["0", "1", "-1", "2", "-2", "3", "-3"]);
        for i in 0..w.size() {
            assert_eq!(w.index_of(&w.element_at(i)), Some(i));
        }
    }

    #[test]
    fn farey_window_size_and_rank() {
        let w = window("q", "farey:3");
        // heights 1..3: {0, 1, -1}, {1/2, -1/2, 2, -2}, {1/3, -1/3, 2/3, -2/3, 3/2, -3/2, 3, -3}
        assert_eq!(w.size(), 15);
        for i in 0..w.size() {
            assert_eq!(w.index_of(&w.element_at(i)), Some(i));
        }
    }

    #[test]
    fn polydeg_window_is_base_p_indexed() {
        let w = window("polyfp:3", "polydeg:3");
        assert_eq!(w.size(), 27);
        for i in 0..w.size() {
            assert_eq!(w.index_of(&w.element_at(i)), Some(i));
        }
    }

    #[test]
    fn quadbox_and_ratfunc_windows() {
        let w = window("quadint:-1", "quadbox:2");
        assert_eq!(w.size(), 25);
        for i in 0..w.size() {
            assert_eq!(w.index_of(&w.element_at(i)), Some(i));
        }
        let w = window("ratfunc:2", "polydeg:2");
        // f in {0,1,t,t+1} (enc < 4), g monic in {1, t, t+1}, coprime, reduced.
        for i in 0..w.size() {
            assert_eq!(w.index_of(&w.element_at(i)), Some(i));
        }
        let strings: Vec<String> = w.iter().map(|e| e.to_string()).collect();
        assert!(strings.contains(&"(1)/(t)".to_string()));
        assert!(strings.contains(&"t+1".to_string()));
    }

    #[test]
    fn set_ops_respect_cardinality() {
        let w = window("z", "natbox:100");
        let evens = WindowSet::from_fn(w.clone(), |e| {
            Ok(e.as_int().unwrap() % 2 == BigInt::from(0))
        })
        .unwrap();
        let odds = evens.complement();
        assert_eq!(evens.card() + odds.card(), 100);
        assert_eq!(evens.intersection(&odds).unwrap().card(), 0);
        assert_eq!(evens.union(&odds).unwrap().card(), 100);
        assert_eq!(odds.difference(&evens).unwrap().card(), odds.card());
    }
}

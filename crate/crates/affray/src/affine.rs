//! The affine maps x -> ux + v (u nonzero) that generate every action in
//! this crate, with composition, application, and windowed preimages.
//!
//! Composition is function composition: `(g.compose(h))(x) = g(h(x))`. With
//! g = (u1, v1) and h = (u2, v2) the composite is (u1*u2, u1*v2 + v1). Maps
//! serialize as `(U)*x+(V)` with ring-specific coefficient syntax; for
//! polynomial rings the inner indeterminate prints as `t`, so the map
//! variable `x` never collides with it.

use crate::error::{Error, Result};
use crate::rings::{ensure_same_ring, elements_up_to_height, RingElement, RingId};
use crate::windows::{Window, WindowSet};
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    u: RingElement,
    v: RingElement,
}

impl AffineMap {
    pub fn new(u: RingElement, v: RingElement) -> Result<AffineMap> {
        ensure_same_ring(u.ring(), v.ring())?;
        if u.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(AffineMap { u, v })
    }

    pub fn from_i64(ring: RingId, u: i64, v: i64) -> Result<AffineMap> {
        AffineMap::new(
            RingElement::from_i64(ring, u),
            RingElement::from_i64(ring, v),
        )
    }

    pub fn identity(ring: RingId) -> AffineMap {
        AffineMap {
            u: RingElement::one(ring),
            v: RingElement::zero(ring),
        }
    }

    /// The dilation x -> ux.
    pub fn dilation(u: RingElement) -> Result<AffineMap> {
        let v = RingElement::zero(u.ring());
        AffineMap::new(u, v)
    }

    /// The shift x -> x + v.
    pub fn shift(v: RingElement) -> AffineMap {
        AffineMap {
            u: RingElement::one(v.ring()),
            v,
        }
    }

    pub fn ring(&self) -> RingId {
        self.u.ring()
    }

    pub fn u(&self) -> &RingElement {
        &self.u
    }

    pub fn v(&self) -> &RingElement {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    pub fn apply(&self, x: &RingElement) -> Result<RingElement> {
        ensure_same_ring(self.ring(), x.ring())?;
        Ok(self.u.mul(x).add(&self.v))
    }

    /// g.compose(h) is the map x -> g(h(x)). Fails only over Z/n when the
    /// dilation coefficients multiply to zero.
    pub fn compose(&self, h: &AffineMap) -> Result<AffineMap> {
        ensure_same_ring(self.ring(), h.ring())?;
        let u = self.u.mul(&h.u);
        if u.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(AffineMap {
            u,
            v: self.u.mul(&h.v).add(&self.v),
        })
    }

    /// Inverse map; exists exactly when u is a unit.
    pub fn inverse(&self) -> Option<AffineMap> {
        let u_inv = self.u.inverse()?;
        let v = u_inv.mul(&self.v).neg();
        Some(AffineMap { u: u_inv, v })
    }

    /// Coefficient height: max of the heights of u and v.
    pub fn height(&self) -> num_bigint::BigUint {
        self.u.height().max(self.v.height())
    }

    /// {x in W : g(x) in S}, with membership decided against S's window
    /// universe. Images landing outside that universe count as non-members
    /// and are tallied, so callers can bound truncation error.
    pub fn preimage_in_window(&self, s: &WindowSet, w: &Arc<Window>) -> Result<PreimageResult> {
        ensure_same_ring(self.ring(), s.window().ring())?;
        ensure_same_ring(self.ring(), w.ring())?;
        let mut out_of_window = 0u64;
        let set = WindowSet::from_fn(w.clone(), |x| {
            let image = self.apply(x)?;
            Ok(match s.window().index_of(&image) {
                Some(j) => s.contains_index(j),
                None => {
                    out_of_window += 1;
                    false
                }
            })
        })?;
        Ok(PreimageResult { set, out_of_window })
    }

    /// Forward image {g(x) : x in S} as an exact element list (not window
    /// truncated), canonical order of the sources.
    pub fn image_elements(&self, s: &WindowSet) -> Result<Vec<RingElement>> {
        s.members().map(|x| self.apply(&x)).collect()
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Parses the `(U)*x+(V)` form produced by `Display`.
    pub fn parse(ring: RingId, text: &str) -> Result<AffineMap> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::BadElement {
            text: text.to_string(),
            ring: ring.to_string(),
            msg: msg.to_string(),
        };
        let rest = s.strip_prefix('(').ok_or_else(|| bad("expected (U)*x+(V)"))?;
        let (u_str, rest) = split_at_close(rest).ok_or_else(|| bad("unbalanced parentheses"))?;
        let rest = rest
            .strip_prefix("*x+(")
            .ok_or_else(|| bad("expected *x+( after the dilation coefficient"))?;
        let (v_str, rest) = split_at_close(rest).ok_or_else(|| bad("unbalanced parentheses"))?;
        if !rest.is_empty() {
            return Err(bad("trailing input"));
        }
        AffineMap::new(
            RingElement::parse(ring, u_str)?,
            RingElement::parse(ring, v_str)?,
        )
    }
}

/// Splits `"..) tail"` at the parenthesis closing an already-opened group.
fn split_at_close(s: &str) -> Option<(&str, &str)> {
    let mut depth = 1usize;
    for (i, b) in s.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return Some((&s[..i], &s[i + 1..]));
                }
            }
            _ => {}
        }
    }
    None
}

pub struct PreimageResult {
    pub set: WindowSet,
    pub out_of_window: u64,
}

impl std::fmt::Display for AffineMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})*x+({})", self.u, self.v)
    }
}

/// All maps (u, v) with coefficient heights at most `h`, u nonzero, in
/// canonical (u, v) order.
pub fn maps_up_to_height(ring: RingId, h: u64) -> Vec<AffineMap> {
    let elems = elements_up_to_height(ring, h);
    let mut out = Vec::new();
    for u in &elems {
        if u.is_zero() {
            continue;
        }
        for v in &elems {
            out.push(AffineMap {
                u: u.clone(),
                v: v.clone(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::windows::{Shape, WindowSpec};

    fn z() -> RingId {
        RingId::Integers
    }

    #[test]
    fn compose_formula_and_identity() {
        let q = RingId::Rationals;
        let g = AffineMap::from_i64(q, 2, 1).unwrap();
        let h = AffineMap::from_i64(q, 3, 5).unwrap();
        let gh = g.compose(&h).unwrap();
        assert_eq!(gh, AffineMap::from_i64(q, 6, 11).unwrap());
        assert_eq!(g.compose(&AffineMap::identity(q)).unwrap(), g);
        assert_eq!(AffineMap::identity(q).compose(&g).unwrap(), g);
    }

    #[test]
    fn distributive_identity_as_map_equality() {
        // dilation(u) . shift(v) = shift(u*v) . dilation(u)
        for (u, v) in [(2i64, 3i64), (-1, 7), (5, -4)] {
            let du = AffineMap::from_i64(z(), u, 0).unwrap();
            let av = AffineMap::from_i64(z(), 1, v).unwrap();
            let auv = AffineMap::from_i64(z(), 1, u * v).unwrap();
            assert_eq!(
                du.compose(&av).unwrap(),
                auv.compose(&du).unwrap(),
                "u={u} v={v}"
            );
        }
    }

    #[test]
    fn apply_examples() {
        let g = AffineMap::from_i64(z(), 2, 1).unwrap();
        let x = RingElement::from_i64(z(), 3);
        assert_eq!(g.apply(&x).unwrap(), RingElement::from_i64(z(), 7));

        let q = RingId::Rationals;
        let g = AffineMap::new(
            RingElement::parse(q, "1/2").unwrap(),
            RingElement::parse(q, "-1").unwrap(),
        )
        .unwrap();
        let x = RingElement::parse(q, "4/3").unwrap();
        assert_eq!(g.apply(&x).unwrap(), RingElement::parse(q, "-1/3").unwrap());

        let fp = RingId::PolyFp(2);
        let g = AffineMap::new(
            RingElement::parse(fp, "t").unwrap(),
            RingElement::parse(fp, "1").unwrap(),
        )
        .unwrap();
        let x = RingElement::parse(fp, "t+1").unwrap();
        assert_eq!(
            g.apply(&x).unwrap(),
            RingElement::parse(fp, "t^2+t+1").unwrap()
        );
    }

    #[test]
    fn inverse_exists_exactly_for_units() {
        let g = AffineMap::from_i64(z(), 2, 1).unwrap();
        assert!(g.inverse().is_none());
        let g = AffineMap::from_i64(z(), -1, 5).unwrap();
        let gi = g.inverse().unwrap();
        assert!(g.compose(&gi).unwrap().is_identity());

        let q = RingId::Rationals;
        let g = AffineMap::from_i64(q, 2, 1).unwrap();
        let gi = g.inverse().unwrap();
        assert!(g.compose(&gi).unwrap().is_identity());
        assert!(gi.compose(&g).unwrap().is_identity());
    }

    #[test]
    fn render_parse_roundtrip() {
        let q = RingId::Rationals;
        let g = AffineMap::new(
            RingElement::parse(q, "1/2").unwrap(),
            RingElement::parse(q, "-3").unwrap(),
        )
        .unwrap();
        assert_eq!(g.to_string(), "(1/2)*x+(-3)");
        assert_eq!(AffineMap::parse(q, &g.to_string()).unwrap(), g);

        let rf = RingId::RatFunc(3);
        let g = AffineMap::new(
            RingElement::parse(rf, "t^2+1").unwrap(),
            RingElement::parse(rf, "t").unwrap(),
        )
        .unwrap();
        assert_eq!(g.to_string(), "(t^2+1)*x+(t)");
        assert_eq!(AffineMap::parse(rf, &g.to_string()).unwrap(), g);

        let g = AffineMap::new(
            RingElement::parse(rf, "(t^2+1)/(t)").unwrap(),
            RingElement::parse(rf, "2").unwrap(),
        )
        .unwrap();
        assert_eq!(AffineMap::parse(rf, &g.to_string()).unwrap(), g);
    }

    #[test]
    fn preimage_counts_escapes() {
        // g = (1,1), S = odd naturals in [1,10], W = [1,10]:
        // preimage is the evens in [1,9] plus 10 iff 11 were in the window.
        let spec = WindowSpec::new(z(), Shape::NatBox(10)).unwrap();
        let w = Window::new(spec).unwrap();
        let odds = WindowSet::from_expr(&crate::windows::parse_set_expr("mod(1,2)").unwrap(), &w)
            .unwrap();
        let g = AffineMap::from_i64(z(), 1, 1).unwrap();
        let pre = g.preimage_in_window(&odds, &w).unwrap();
        let got: Vec<String> = pre.set.members().map(|e| e.to_string()).collect();
        assert_eq!(got, ["2", "4", "6", "8"]);
        // x = 10 maps to 11, outside the probe universe.
        assert_eq!(pre.out_of_window, 1);
    }
}

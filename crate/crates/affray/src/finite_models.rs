//! Finite stand-ins for the limit objects: Cayley-table semigroups with
//! idempotent and minimal-ideal computation, and joint return sets for the
//! affine action on Z/n.
//!
//! Results about Z/n are desk-scale analogues; nothing here claims to
//! transfer to the infinite rings.

use crate::error::{Error, Result};
use crate::exec;
use crate::rings::inverse_mod_u64;
use serde::Serialize;
use std::collections::BTreeSet;

/// Elements 0..n with a full composition table, row = left factor.
#[derive(Clone, Debug)]
pub struct FiniteSemigroup {
    labels: Vec<String>,
    table: Vec<u16>,
    n: usize,
    /// True when the structure is a group (identity + inverses).
    group: bool,
}

/// Associativity is checked exhaustively up to this many elements.
pub const ASSOC_CHECK_LIMIT: usize = 512;
/// Modulus bound for the affine semigroup construction.
pub const MAX_AFFINE_MODULUS: u64 = 64;
/// Modulus bound for return-set profiles.
pub const MAX_RETURN_MODULUS: u64 = 8192;

impl FiniteSemigroup {
    /// Builds from a raw table, verifying closure, and associativity when
    /// the element count is within `ASSOC_CHECK_LIMIT` (the scan is cubic).
    pub fn from_table(labels: Vec<String>, table: Vec<u16>) -> Result<FiniteSemigroup> {
        let n = labels.len();
        if n == 0 || n > u16::MAX as usize {
            return Err(Error::Config(format!("element count {n} unsupported")));
        }
        if table.len() != n * n {
            return Err(Error::Config(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(bad) = table.iter().find(|&&e| e as usize >= n) {
            return Err(Error::Config(format!("table entry {bad} out of range")));
        }
        let sg = FiniteSemigroup {
            labels,
            table,
            n,
            group: false,
        };
        if n <= ASSOC_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = sg.compose(a, b);
                    for c in 0..n {
                        if sg.compose(ab, c) != sg.compose(a, sg.compose(b, c)) {
                            return Err(Error::Invariant(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        let group = sg.detect_group();
        Ok(FiniteSemigroup { group, ..sg })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_group(&self) -> bool {
        self.group
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    fn detect_group(&self) -> bool {
        let identity = (0..self.n).find(|&e| {
            (0..self.n).all(|a| self.compose(e, a) == a && self.compose(a, e) == a)
        });
        match identity {
            Some(e) => (0..self.n)
                .all(|a| (0..self.n).any(|b| self.compose(a, b) == e && self.compose(b, a) == e)),
            None => false,
        }
    }

    /// All e with e*e = e; nonempty for every finite semigroup.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.compose(e, e) == e).collect()
    }

    /// Principal left ideal S*x (x included; all our semigroups are
    /// monoids, but the generator is kept regardless).
    fn left_ideal(&self, x: usize) -> BTreeSet<usize> {
        let mut ideal: BTreeSet<usize> = (0..self.n).map(|s| self.compose(s, x)).collect();
        ideal.insert(x);
        ideal
    }

    pub fn minimal_left_ideals(&self) -> MinimalIdealReport {
        let ideals: Vec<BTreeSet<usize>> = exec::map_indexed(self.n, |x| self.left_ideal(x));
        let mut distinct: Vec<BTreeSet<usize>> = Vec::new();
        for i in ideals {
            if !distinct.contains(&i) {
                distinct.push(i);
            }
        }
        let minimal: Vec<BTreeSet<usize>> = distinct
            .iter()
            .filter(|i| {
                !distinct
                    .iter()
                    .any(|j| j.len() < i.len() && j.is_subset(i))
            })
            .cloned()
            .collect();
        let kernel: BTreeSet<usize> = minimal.iter().flatten().copied().collect();
        let minimal_idempotents: Vec<usize> = self
            .idempotents()
            .into_iter()
            .filter(|e| kernel.contains(e))
            .collect();
        MinimalIdealReport {
            minimal_ideals: minimal,
            kernel,
            minimal_idempotents,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimalIdealReport {
    pub minimal_ideals: Vec<BTreeSet<usize>>,
    /// Union of the minimal left ideals: the least two-sided ideal.
    pub kernel: BTreeSet<usize>,
    pub minimal_idempotents: Vec<usize>,
}

/// The affine maps x -> ux + v over Z/n under composition. Generators have
/// u nonzero; over a composite modulus products of nonzero u can vanish, so
/// the element set is the closure of the generators (constant maps enter
/// exactly then). `units_only` restricts u to the units, which always
/// yields a group.
pub fn build_affine_semigroup(n: u64, units_only: bool) -> Result<FiniteSemigroup> {
    if !(2..=MAX_AFFINE_MODULUS).contains(&n) {
        return Err(Error::ModulusRange {
            got: n,
            range: format!("2..={MAX_AFFINE_MODULUS}"),
        });
    }
    let keep = |u: u64| -> bool {
        if units_only {
            inverse_mod_u64(u, n).is_some()
        } else {
            u != 0
        }
    };
    // Multiplicative closure of the kept u values.
    let mut us: BTreeSet<u64> = (0..n).filter(|&u| keep(u)).collect();
    loop {
        let mut grew = false;
        let snapshot: Vec<u64> = us.iter().copied().collect();
        for &a in &snapshot {
            for &b in &snapshot {
                if us.insert(a * b % n) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut maps: Vec<(u64, u64)> = Vec::new();
    for &u in &us {
        for v in 0..n {
            maps.push((u, v));
        }
    }
    let index_of = |u: u64, v: u64| -> u16 {
        maps.binary_search(&(u, v)).expect("closed under composition") as u16
    };
    let labels: Vec<String> = maps.iter().map(|&(u, v)| format!("{u}x+{v}")).collect();
    let m = maps.len();
    let mut table = vec![0u16; m * m];
    for (i, &(u1, v1)) in maps.iter().enumerate() {
        for (j, &(u2, v2)) in maps.iter().enumerate() {
            // (g1 . g2)(x) = u1(u2 x + v2) + v1
            let u = u1 * u2 % n;
            let v = (u1 * v2 + v1) % n;
            table[i * m + j] = index_of(u, v);
        }
    }
    FiniteSemigroup::from_table(labels, table)
}

/// (Z/n, *) as a Cayley semigroup.
pub fn build_mul_semigroup(n: u64) -> Result<FiniteSemigroup> {
    build_mod_semigroup(n, |a, b, n| a * b % n)
}

/// (Z/n, +) as a Cayley semigroup.
pub fn build_add_semigroup(n: u64) -> Result<FiniteSemigroup> {
    build_mod_semigroup(n, |a, b, n| (a + b) % n)
}

fn build_mod_semigroup(n: u64, op: fn(u64, u64, u64) -> u64) -> Result<FiniteSemigroup> {
    if !(2..=ASSOC_CHECK_LIMIT as u64).contains(&n) {
        return Err(Error::ModulusRange {
            got: n,
            range: format!("2..={ASSOC_CHECK_LIMIT}"),
        });
    }
    let labels = (0..n).map(|v| v.to_string()).collect();
    let mut table = vec![0u16; (n * n) as usize];
    for a in 0..n {
        for b in 0..n {
            table[(a * n + b) as usize] = op(a, b, n) as u16;
        }
    }
    FiniteSemigroup::from_table(labels, table)
}

/// Threshold mode for return sets. `Relative` keeps u when the joint
/// return measure strictly exceeds delta * mu(B)^2; `Absolute` keeps u when
/// it is at least mu(B)^2 - epsilon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "value")]
pub enum Threshold {
    /// delta as an exact fraction (num, den), 0 < delta < 1.
    Relative(u64, u64),
    /// epsilon as an exact fraction (num, den), epsilon >= 0.
    Absolute(u64, u64),
}

impl Threshold {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Threshold::Relative(p, q) => {
                if q == 0 || p == 0 || p >= q {
                    Err(Error::Config(format!(
                        "delta must satisfy 0 < delta < 1, got {p}/{q}"
                    )))
                } else {
                    Ok(())
                }
            }
            Threshold::Absolute(_, q) => {
                if q == 0 {
                    Err(Error::Config("epsilon denominator must be nonzero".into()))
                } else {
                    Ok(())
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SetProfile {
    pub set: Vec<u64>,
    /// mu(A_u^{-1} B and M_u^{-1} B) * n per u = 1..n-1, as counts.
    pub profile: Vec<u64>,
    /// The u passing the threshold.
    pub return_set: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct ReturnSetReport {
    pub modulus: u64,
    pub threshold: Threshold,
    pub per_set: Vec<SetProfile>,
    pub intersection: Vec<u64>,
    /// Set when the modulus is composite (dilations by zero divisors are
    /// not invertible, so the headline reading needs a prime).
    pub composite_warning: bool,
    /// Indices of empty input sets (their return sets are empty in
    /// relative mode since 0 > 0 fails).
    pub empty_sets: Vec<usize>,
}

/// Return sets R(B, threshold) for the affine action on Z/n with normalized
/// counting measure: the set of u != 0 whose joint shift/dilation preimages
/// of B overlap B by more than the threshold.
pub fn return_sets(n: u64, sets: &[Vec<u64>], threshold: Threshold) -> Result<ReturnSetReport> {
    if !(2..=MAX_RETURN_MODULUS).contains(&n) {
        return Err(Error::ModulusRange {
            got: n,
            range: format!("2..={MAX_RETURN_MODULUS}"),
        });
    }
    threshold.validate()?;
    if sets.is_empty() {
        return Err(Error::Config("at least one set is required".into()));
    }
    for (i, b) in sets.iter().enumerate() {
        if let Some(bad) = b.iter().find(|&&x| x >= n) {
            return Err(Error::Config(format!(
                "set {i} contains {bad}, outside Z/{n}"
            )));
        }
    }
    let composite_warning = !crate::primes::is_prime_trial_division(n);
    let empty_sets: Vec<usize> = sets
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_empty())
        .map(|(i, _)| i)
        .collect();
    let passes = |count: u64, b_card: u64| -> bool {
        // count/n > delta * (b/n)^2  <=>  count * n * q > p * b^2
        // count/n >= (b/n)^2 - eps   <=>  count * n * q >= q * b^2 - p * n^2
        match threshold {
            Threshold::Relative(p, q) => {
                (count as u128) * (n as u128) * (q as u128)
                    > (p as u128) * (b_card as u128) * (b_card as u128)
            }
            Threshold::Absolute(p, q) => {
                let lhs = (count as u128) * (n as u128) * (q as u128);
                let rhs = (q as u128) * (b_card as u128) * (b_card as u128);
                let slack = (p as u128) * (n as u128) * (n as u128);
                lhs + slack >= rhs
            }
        }
    };
    let per_set: Vec<SetProfile> = sets
        .iter()
        .map(|b| {
            let mut member = vec![false; n as usize];
            for &x in b {
                member[x as usize] = true;
            }
            let profile: Vec<u64> = exec::map_indexed((n - 1) as usize, |ui| {
                let u = ui as u64 + 1;
                // x with x + u in B and u x in B.
                (0..n)
                    .filter(|&x| member[((x + u) % n) as usize] && member[((u * x) % n) as usize])
                    .count() as u64
            });
            let return_set: Vec<u64> = profile
                .iter()
                .enumerate()
                .filter(|(_, &count)| passes(count, b.len() as u64))
                .map(|(ui, _)| ui as u64 + 1)
                .collect();
            SetProfile {
                set: b.clone(),
                profile,
                return_set,
            }
        })
        .collect();
    let mut intersection: Vec<u64> = per_set
        .first()
        .map(|sp| sp.return_set.clone())
        .unwrap_or_default();
    for sp in per_set.iter().skip(1) {
        intersection.retain(|u| sp.return_set.contains(u));
    }
    Ok(ReturnSetReport {
        modulus: n,
        threshold,
        per_set,
        intersection,
        composite_warning,
        empty_sets,
    })
}

//! The two explicit counterexample constructions, built exactly, plus
//! exhaustive window verifiers for the patterns they avoid.
//!
//! `thickbad` over the naturals interleaves dilated blocks p_N * [1, N]
//! with long intervals [(N p_N)^2 + 1, 2 (N p_N)^2 - 3], where p_1 = 5 and
//! p_{N+1} is the least prime above 4 (N p_N)^4. The result is additively
//! and multiplicatively thick yet contains no pair {x+y, xy} with x, y > 2.
//!
//! `example45` over the rationals alternates additive shifts a_N + G_N and
//! dilations a_N * G_N of the growing grids G_N = {p/q : q <= N, |p/q| <= N},
//! with a_N chosen by a recursion fast enough that no {x, x+1, 2x} fits
//! inside the union. The seed max(E_0) = 1 feeds the recursion; the seed
//! block itself is not part of the set. (With seed {0} the first block
//! degenerates to {2, 3, 4}, which contains {x, x+1, 2x} at x = 2; that
//! variant is kept reachable for regression tests.)

use crate::error::{Error, Result};
use crate::exec;
use crate::patterns::{PatternConfig, PatternKind};
use crate::primes::next_prime_above;
use crate::rings::{RingElement, RingId};
use crate::windows::Window;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const MAX_BLOCKS: u32 = 12;

#[derive(Clone, Debug)]
pub enum Block {
    /// {step * j : 1 <= j <= count}; step positive.
    Ap { step: RingElement, count: u64 },
    /// {x : lo <= x <= hi} in the ambient ring (integers only).
    Interval { lo: RingElement, hi: RingElement },
    /// Explicit elements, ascending value order.
    Points { elements: Vec<RingElement> },
}

#[derive(Clone, Debug)]
pub struct BlockEntry {
    /// 1-based block index N within the construction.
    pub index: u32,
    pub label: String,
    pub block: Block,
    min: RingElement,
    max: RingElement,
}

impl BlockEntry {
    pub fn min(&self) -> &RingElement {
        &self.min
    }

    pub fn max(&self) -> &RingElement {
        &self.max
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        use std::cmp::Ordering::*;
        if x.display_cmp(&self.min) == Less || x.display_cmp(&self.max) == Greater {
            return false;
        }
        match &self.block {
            Block::Ap { step, .. } => x
                .exact_div(step)
                .is_some(),
            Block::Interval { .. } => true,
            Block::Points { elements } => elements
                .binary_search_by(|e| e.display_cmp(x))
                .is_ok(),
        }
    }

    /// Number of elements; interval blocks can exceed machine integers.
    pub fn size(&self) -> BigUint {
        match &self.block {
            Block::Ap { count, .. } => BigUint::from(*count),
            Block::Interval { lo, hi } => {
                let lo = lo.as_int().unwrap();
                let hi = hi.as_int().unwrap();
                (hi - lo + 1u32).magnitude().clone()
            }
            Block::Points { elements } => BigUint::from(elements.len()),
        }
    }

    /// Elements of the block in ascending order; intervals are enumerated,
    /// so callers clip them first.
    pub fn elements(&self) -> Vec<RingElement> {
        match &self.block {
            Block::Ap { step, count } => (1..=*count)
                .map(|j| step.mul(&RingElement::from_i64(step.ring(), j as i64)))
                .collect(),
            Block::Interval { lo, hi } => {
                let mut out = Vec::new();
                let mut v = lo.as_int().unwrap().clone();
                let hi = hi.as_int().unwrap();
                while &v <= hi {
                    out.push(RingElement::from_int(v.clone()));
                    v += 1;
                }
                out
            }
            Block::Points { elements } => elements.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BlockSet {
    ring: RingId,
    name: String,
    blocks: Vec<BlockEntry>,
}

impl BlockSet {
    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn blocks(&self) -> &[BlockEntry] {
        &self.blocks
    }

    /// Exact membership; block ranges may nest, so every candidate block is
    /// consulted (there are at most MAX_BLOCKS).
    pub fn contains(&self, x: &RingElement) -> bool {
        if x.ring() != self.ring {
            return false;
        }
        self.blocks.iter().any(|b| b.contains(x))
    }

    /// All elements whose value lies in [lo, hi], ascending, with a size
    /// guard against runaway interval enumeration.
    pub fn elements_in_range(
        &self,
        lo: &RingElement,
        hi: &RingElement,
        cap: usize,
    ) -> Result<Vec<RingElement>> {
        use std::cmp::Ordering::*;
        let mut out: Vec<RingElement> = Vec::new();
        for b in &self.blocks {
            if b.max().display_cmp(lo) == Less || b.min().display_cmp(hi) == Greater {
                continue;
            }
            let clipped: Vec<RingElement> = match &b.block {
                Block::Interval { lo: blo, hi: bhi } => {
                    let from = if blo.display_cmp(lo) == Less { lo } else { blo };
                    let to = if bhi.display_cmp(hi) == Greater { hi } else { bhi };
                    let from = from.as_int().unwrap().clone();
                    let to = to.as_int().unwrap().clone();
                    let span = (&to - &from + 1u32).to_usize().unwrap_or(usize::MAX);
                    if out.len().saturating_add(span) > cap {
                        return Err(Error::SizeLimit {
                            size: out.len().saturating_add(span),
                            limit: cap,
                        });
                    }
                    let mut v = from;
                    let mut elems = Vec::with_capacity(span);
                    while v <= to {
                        elems.push(RingElement::from_int(v.clone()));
                        v += 1;
                    }
                    elems
                }
                _ => b
                    .elements()
                    .into_iter()
                    .filter(|e| {
                        e.display_cmp(lo) != Less && e.display_cmp(hi) != Greater
                    })
                    .collect(),
            };
            out.extend(clipped);
            if out.len() > cap {
                return Err(Error::SizeLimit {
                    size: out.len(),
                    limit: cap,
                });
            }
        }
        out.sort_by(|a, b| a.display_cmp(b));
        Ok(out)
    }

    /// Total enumeration; only for constructions whose blocks are all small
    /// (points and progressions).
    pub fn all_elements(&self, cap: usize) -> Result<Vec<RingElement>> {
        let total: BigUint = self.blocks.iter().map(|b| b.size()).sum();
        if total > BigUint::from(cap) {
            return Err(Error::SizeLimit {
                size: total.to_usize().unwrap_or(usize::MAX),
                limit: cap,
            });
        }
        let mut out: Vec<RingElement> = self.blocks.iter().flat_map(|b| b.elements()).collect();
        out.sort_by(|a, b| a.display_cmp(b));
        Ok(out)
    }
}

fn int_elem(v: BigInt) -> RingElement {
    RingElement::from_int(v)
}

/// The interleaved dilation/interval construction over the naturals.
pub fn build_thickbad(k: u32) -> Result<BlockSet> {
    if k == 0 || k > MAX_BLOCKS {
        return Err(Error::BlockLimit {
            got: k,
            max: MAX_BLOCKS,
        });
    }
    let mut primes: Vec<BigUint> = vec![BigUint::from(5u32)];
    let needed = (k as usize + 1) / 2;
    while primes.len() < needed {
        let n = BigUint::from(primes.len());
        let p = primes.last().unwrap();
        // least prime > 4 (N p_N)^4
        let base = (&n * p).pow(4) * 4u32;
        primes.push(next_prime_above(&base));
    }
    let mut blocks = Vec::with_capacity(k as usize);
    for j in 1..=k {
        let n = (j as u64).div_ceil(2);
        let p = BigInt::from(primes[(n - 1) as usize].clone());
        let entry = if j % 2 == 1 {
            // E_{2N-1} = p_N * [1, N]
            let step = int_elem(p.clone());
            BlockEntry {
                index: j,
                label: format!("E{j} = {p}*[1,{n}]"),
                min: int_elem(p.clone()),
                max: int_elem(&p * n),
                block: Block::Ap {
                    step,
                    count: n,
                },
            }
        } else {
            // E_{2N} = [(N p_N)^2 + 1, 2 (N p_N)^2 - 3]
            let np2 = (&p * n).pow(2);
            let lo: BigInt = &np2 + 1;
            let hi: BigInt = 2 * &np2 - 3;
            BlockEntry {
                index: j,
                label: format!("E{j} = [{lo},{hi}]"),
                min: int_elem(lo.clone()),
                max: int_elem(hi.clone()),
                block: Block::Interval {
                    lo: int_elem(lo),
                    hi: int_elem(hi),
                },
            }
        };
        blocks.push(entry);
    }
    Ok(BlockSet {
        ring: RingId::Integers,
        name: "thickbad".into(),
        blocks,
    })
}

/// The grid G_N = {p/q reduced : 1 <= q <= N, |p/q| <= N}, ascending.
pub fn example45_grid(n: u32) -> Vec<BigRational> {
    let mut out = Vec::new();
    for q in 1..=n as i64 {
        for p in -(n as i64) * q..=(n as i64) * q {
            if p.unsigned_abs().gcd(&(q as u64)) == 1 || (p == 0 && q == 1) {
                out.push(BigRational::new(BigInt::from(p), BigInt::from(q)));
            }
        }
    }
    out.sort();
    out
}

/// Alternating shift/dilation construction over the rationals with the
/// default seed max(E_0) = 1.
pub fn build_example45(k: u32) -> Result<BlockSet> {
    build_example45_seeded(k, &[BigRational::one()])
}

/// Same construction with an explicit seed block E_0 (participates in the
/// recursion only, never in the set).
pub fn build_example45_seeded(k: u32, seed: &[BigRational]) -> Result<BlockSet> {
    if k == 0 || k > MAX_BLOCKS {
        return Err(Error::BlockLimit {
            got: k,
            max: MAX_BLOCKS,
        });
    }
    if seed.is_empty() {
        return Err(Error::Config("seed block must be nonempty".into()));
    }
    let ring = RingId::Rationals;
    let mut blocks = Vec::with_capacity(k as usize);
    let mut prev_max: BigRational = seed.iter().max().unwrap().clone();
    for n in 1..=k {
        let grid = example45_grid(n);
        let g_min = grid.first().unwrap();
        let g_max = grid.last().unwrap();
        let a_n: BigRational = if n % 2 == 1 {
            // a_N = 2 max(E_{N-1}) + max(G_N) - 2 min(G_N)
            &prev_max * BigInt::from(2) + g_max - g_min * BigInt::from(2)
        } else {
            // a_N = 1/min(delta G_N) + 2 max(E_{N-1}) / M_N
            let min_gap = grid
                .windows(2)
                .map(|w| &w[1] - &w[0])
                .min()
                .expect("grid has at least two elements");
            let min_abs = grid
                .iter()
                .filter(|x| !x.is_zero())
                .map(|x| x.abs())
                .min()
                .expect("grid has nonzero elements");
            min_gap.recip() + &prev_max * BigInt::from(2) / min_abs
        };
        let elements: Vec<BigRational> = if n % 2 == 1 {
            grid.iter().map(|g| &a_n + g).collect()
        } else {
            grid.iter().map(|g| &a_n * g).collect()
        };
        // a_N > 0, so both maps preserve the ascending order.
        prev_max = elements.last().unwrap().clone();
        let op = if n % 2 == 1 { "+" } else { "*" };
        blocks.push(BlockEntry {
            index: n,
            label: format!("E{n} = {a_n} {op} G{n}"),
            min: RingElement::from_rat(elements.first().unwrap().clone()),
            max: RingElement::from_rat(elements.last().unwrap().clone()),
            block: Block::Points {
                elements: elements.into_iter().map(RingElement::from_rat).collect(),
            },
        });
    }
    Ok(BlockSet {
        ring,
        name: "example45".into(),
        blocks,
    })
}

#[derive(Clone, Debug)]
pub enum VerifyOutcome {
    Ok,
    Counterexample {
        x: RingElement,
        y: Option<RingElement>,
        configuration: Vec<RingElement>,
    },
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub outcome: VerifyOutcome,
    pub checked: u64,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        matches!(self.outcome, VerifyOutcome::Ok)
    }
}

/// Work guard for the sum-product scan.
const VERIFY_WORK_LIMIT: u64 = 200_000_000;

/// Exhaustively verifies absence of the pattern on a window.
///
/// For the sum-product pair the sums b range over the set clipped to the
/// window; for each b every split b = x + y with admissible x <= y is
/// tested for xy landing back in the clipped set. For {x, x+1, 2x} the scan
/// runs over window points with membership decided exactly against the
/// construction (no truncation). The least counterexample is returned.
pub fn verify_no_pattern(
    set: &BlockSet,
    config: &PatternConfig,
    window: &Window,
) -> Result<VerifyReport> {
    match config.kind {
        PatternKind::SumProductPair => verify_sumproduct(set, config, window),
        PatternKind::SuccDoubleTriple => verify_succ_double(set, window),
        other => Err(Error::UnsupportedPattern(format!(
            "{} is not covered by the construction verifier",
            other.name()
        ))),
    }
}

fn verify_sumproduct(
    set: &BlockSet,
    config: &PatternConfig,
    window: &Window,
) -> Result<VerifyReport> {
    if set.ring() != RingId::Integers || window.ring() != RingId::Integers {
        return Err(Error::UnsupportedRing(
            "sum-product verification runs over z windows".into(),
        ));
    }
    let min_value: u64 = config
        .flags
        .min_value
        .as_ref()
        .and_then(|m| m.as_int().and_then(|v| v.to_u64()))
        .unwrap_or(1)
        .max(1);
    let w_hi = match window.spec().shape {
        crate::windows::Shape::NatBox(n) => BigInt::from(n),
        other => {
            return Err(Error::UnsupportedRing(format!(
                "sum-product verification scans natbox windows, not {other}"
            )))
        }
    };
    let lo = int_elem(BigInt::one());
    let hi = int_elem(w_hi.clone());
    let sums = set.elements_in_range(&lo, &hi, 1 << 20)?;
    let sums: Vec<u64> = sums
        .iter()
        .filter_map(|e| e.as_int().and_then(|v| v.to_u64()))
        .collect();
    let work: u64 = sums.iter().map(|b| b / 2).sum();
    if work > VERIFY_WORK_LIMIT {
        return Err(Error::SizeLimit {
            size: work as usize,
            limit: VERIFY_WORK_LIMIT as usize,
        });
    }
    let w_hi_int = w_hi.clone();
    let hit = exec::find_map_first(sums.len(), |bi| {
        let b = sums[bi];
        for x in min_value..=b / 2 {
            let y = b - x;
            // y >= x >= min_value by construction of the range.
            if config.flags.require_sum_ne_product && x * y == b {
                continue;
            }
            if !config.flags.allow_x_eq_y && x == y {
                continue;
            }
            let a = BigInt::from(x) * BigInt::from(y);
            if a <= w_hi_int && set.contains(&int_elem(a.clone())) {
                return Some((x, y, b, a));
            }
        }
        None
    });
    let checked = work;
    Ok(match hit {
        Some((x, y, b, a)) => VerifyReport {
            outcome: VerifyOutcome::Counterexample {
                x: RingElement::from_i64(RingId::Integers, x as i64),
                y: Some(RingElement::from_i64(RingId::Integers, y as i64)),
                configuration: vec![int_elem(BigInt::from(b)), int_elem(a)],
            },
            checked,
        },
        None => VerifyReport {
            outcome: VerifyOutcome::Ok,
            checked,
        },
    })
}

fn verify_succ_double(set: &BlockSet, window: &Window) -> Result<VerifyReport> {
    if set.ring() != window.ring() {
        return Err(Error::RingMismatch {
            expected: set.ring().to_string(),
            found: window.ring().to_string(),
        });
    }
    let one = RingElement::one(set.ring());
    let two = RingElement::from_i64(set.ring(), 2);
    let hit = exec::find_map_first(window.size(), |i| {
        let x = window.element_at(i);
        if set.contains(&x) && set.contains(&x.add(&one)) && set.contains(&x.mul(&two)) {
            Some(x)
        } else {
            None
        }
    });
    Ok(match hit {
        Some(x) => {
            let configuration = vec![x.clone(), x.add(&one), x.mul(&two)];
            VerifyReport {
                outcome: VerifyOutcome::Counterexample {
                    x,
                    y: None,
                    configuration,
                },
                checked: window.size() as u64,
            }
        }
        None => VerifyReport {
            outcome: VerifyOutcome::Ok,
            checked: window.size() as u64,
        },
    })
}

/// Exact chain conditions between consecutive blocks: squaring the maximum
/// of one block stays below the minimum of the next.
pub fn chain_inequalities_hold(set: &BlockSet) -> bool {
    set.blocks().windows(2).all(|w| {
        let max = w[0].max().as_int().expect("integer construction");
        let min = w[1].min().as_int().expect("integer construction");
        max * max < *min
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::windows::{Shape, WindowSpec};

    fn nat_window(n: u64) -> std::sync::Arc<Window> {
        Window::new(WindowSpec::new(RingId::Integers, Shape::NatBox(n)).unwrap()).unwrap()
    }

    fn as_ints(v: &[RingElement]) -> Vec<i64> {
        v.iter()
            .map(|e| e.as_int().unwrap().to_i64().unwrap())
            .collect()
    }

    #[test]
    fn thickbad_first_blocks() {
        let s = build_thickbad(1).unwrap();
        assert_eq!(as_ints(&s.all_elements(100).unwrap()), vec![5]);

        let s = build_thickbad(2).unwrap();
        let all = as_ints(&s.all_elements(100).unwrap());
        let expected: Vec<i64> = std::iter::once(5).chain(26..=47).collect();
        assert_eq!(all, expected);

        let s = build_thickbad(3).unwrap();
        assert!(s.contains(&RingElement::from_i64(RingId::Integers, 2503)));
        assert!(s.contains(&RingElement::from_i64(RingId::Integers, 5006)));
        assert!(!s.contains(&RingElement::from_i64(RingId::Integers, 2504)));
        assert!(!s.contains(&RingElement::from_i64(RingId::Integers, 7509)));
        assert_eq!(s.blocks()[2].size(), BigUint::from(2u32));
    }

    #[test]
    fn thickbad_chain_inequalities() {
        let s = build_thickbad(8).unwrap();
        assert!(chain_inequalities_hold(&s));
    }

    #[test]
    fn thickbad_thickness_witnesses() {
        // Every even-index block is an interval of length growing without
        // bound (additive thickness) and every odd-index block is a dilate
        // p_N * [1, N] (multiplicative thickness).
        let s = build_thickbad(6).unwrap();
        let lens: Vec<BigUint> = s
            .blocks()
            .iter()
            .filter(|b| b.index % 2 == 0)
            .map(|b| b.size())
            .collect();
        for w in lens.windows(2) {
            assert!(w[1] > w[0]);
        }
        assert!(lens[0] >= BigUint::from(22u32));
        for b in s.blocks().iter().filter(|b| b.index % 2 == 1) {
            match &b.block {
                Block::Ap { count, .. } => assert_eq!(*count as u32, (b.index + 1) / 2),
                _ => panic!("odd blocks are dilated progressions"),
            }
        }
    }

    #[test]
    fn thickbad_has_no_sum_product_pair() {
        let s = build_thickbad(4).unwrap();
        let config = PatternConfig::defaults(PatternKind::SumProductPair, RingId::Integers)
            .with_min_value(RingElement::from_i64(RingId::Integers, 3));
        let report = verify_no_pattern(&s, &config, &nat_window(100_000)).unwrap();
        assert!(report.is_ok());
    }

    #[test]
    fn sum_product_pair_counterexample_detected() {
        // {5, 6}: 5 = 2 + 3, 6 = 2 * 3.
        let five_six = BlockSet {
            ring: RingId::Integers,
            name: "test".into(),
            blocks: vec![BlockEntry {
                index: 1,
                label: "E1".into(),
                min: RingElement::from_i64(RingId::Integers, 5),
                max: RingElement::from_i64(RingId::Integers, 6),
                block: Block::Interval {
                    lo: RingElement::from_i64(RingId::Integers, 5),
                    hi: RingElement::from_i64(RingId::Integers, 6),
                },
            }],
        };
        let config = PatternConfig::defaults(PatternKind::SumProductPair, RingId::Integers)
            .with_min_value(RingElement::from_i64(RingId::Integers, 2));
        let report = verify_no_pattern(&five_six, &config, &nat_window(10)).unwrap();
        match report.outcome {
            VerifyOutcome::Counterexample { x, y, .. } => {
                assert_eq!(x.to_string(), "2");
                assert_eq!(y.unwrap().to_string(), "3");
            }
            VerifyOutcome::Ok => panic!("expected a counterexample"),
        }
    }

    #[test]
    fn verify_agrees_with_naive_double_loop() {
        let s = build_thickbad(3).unwrap();
        let config = PatternConfig::defaults(PatternKind::SumProductPair, RingId::Integers)
            .with_min_value(RingElement::from_i64(RingId::Integers, 3));
        let n = 2000u64;
        let report = verify_no_pattern(&s, &config, &nat_window(n)).unwrap();
        // Naive loop over (x, y) with both sum and product in the window.
        let mut member = vec![false; (n + 1) as usize];
        for (i, slot) in member.iter_mut().enumerate().skip(1) {
            *slot = s.contains(&RingElement::from_i64(RingId::Integers, i as i64));
        }
        let mut naive_hit = None;
        'outer: for x in 3..=n {
            for y in x..=n {
                let (b, a) = (x + y, x * y);
                if b <= n && a <= n && member[b as usize] && member[a as usize] && a != b {
                    naive_hit = Some((x, y));
                    break 'outer;
                }
            }
        }
        assert_eq!(report.is_ok(), naive_hit.is_none());
    }

    #[test]
    fn example45_first_blocks_with_default_seed() {
        let s = build_example45(2).unwrap();
        let b1: Vec<String> = s.blocks()[0]
            .elements()
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(b1, ["4", "5", "6"]);
        let b2: Vec<String> = s.blocks()[1]
            .elements()
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(
            b2,
            ["-52", "-39", "-26", "-13", "0", "13", "26", "39", "52"]
        );
    }

    #[test]
    fn example45_zero_seed_regression() {
        // The literal zero seed yields E_1 = {2, 3, 4}, which contains
        // {x, x+1, 2x} at x = 2.
        let s = build_example45_seeded(2, &[BigRational::zero()]).unwrap();
        let b1: Vec<String> = s.blocks()[0]
            .elements()
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(b1, ["2", "3", "4"]);
        let spec = WindowSpec::new(RingId::Rationals, Shape::Farey(10)).unwrap();
        let w = Window::new(spec).unwrap();
        let config = PatternConfig::defaults(PatternKind::SuccDoubleTriple, RingId::Rationals);
        let report = verify_no_pattern(&s, &config, &w).unwrap();
        match report.outcome {
            VerifyOutcome::Counterexample { x, .. } => assert_eq!(x.to_string(), "2"),
            VerifyOutcome::Ok => panic!("zero seed must produce the x = 2 counterexample"),
        }
    }

    #[test]
    fn example45_avoids_succ_double_triple() {
        let s = build_example45(8).unwrap();
        let spec = WindowSpec::new(RingId::Rationals, Shape::Farey(60)).unwrap();
        let w = Window::new(spec).unwrap();
        let config = PatternConfig::defaults(PatternKind::SuccDoubleTriple, RingId::Rationals);
        let report = verify_no_pattern(&s, &config, &w).unwrap();
        assert!(report.is_ok());
        // Complete scan: x must itself lie in the set, so running over all
        // set elements is exhaustive over the whole field.
        let one = RingElement::one(RingId::Rationals);
        let two = RingElement::from_i64(RingId::Rationals, 2);
        for x in s.all_elements(100_000).unwrap() {
            assert!(
                !(s.contains(&x.add(&one)) && s.contains(&x.mul(&two))),
                "triple at x = {x}"
            );
        }
    }

    #[test]
    fn example45_cross_block_growth() {
        let s = build_example45(8).unwrap();
        for w in s.blocks().windows(2) {
            let max_abs = w[0]
                .elements()
                .iter()
                .map(|e| e.as_rat().unwrap().abs())
                .max()
                .unwrap();
            let min_abs = w[1]
                .elements()
                .iter()
                .map(|e| e.as_rat().unwrap().abs())
                .filter(|v| !v.is_zero())
                .min()
                .unwrap();
            assert!(
                min_abs > max_abs * BigInt::from(2),
                "blocks {} and {}",
                w[0].index,
                w[1].index
            );
        }
    }

    #[test]
    fn block_limits_enforced() {
        assert!(matches!(
            build_thickbad(0),
            Err(Error::BlockLimit { .. })
        ));
        assert!(matches!(
            build_thickbad(13),
            Err(Error::BlockLimit { .. })
        ));
        assert!(matches!(
            build_example45(13),
            Err(Error::BlockLimit { .. })
        ));
    }
}

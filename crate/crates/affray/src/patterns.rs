//! Monochromatic pattern search over colorings, sum-product pattern hunting
//! in sets, multiplicative-syndeticity driven pair search, and the minimal
//! forcing-window search by backtracking over colorings.

use crate::error::{Error, Result};
use crate::exec;
use crate::rings::{ensure_same_ring, RingElement, RingId};
use crate::windows::{Window, WindowSet};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternKind {
    /// {x, y, x+y}
    SchurTriple,
    /// {x, y, xy}
    ProductTriple,
    /// {x+y, xy}
    SumProductPair,
    /// {x, y, x+y, xy}
    SumProductQuad,
    /// {x+n, xn} with n restricted to the designated integral subring.
    RestrictedPair,
    /// {x, x+1, 2x}; used by construction verifiers, one free parameter.
    SuccDoubleTriple,
}

impl PatternKind {
    pub fn name(&self) -> &'static str {
        match self {
            PatternKind::SchurTriple => "schur",
            PatternKind::ProductTriple => "product-triple",
            PatternKind::SumProductPair => "sum-product-pair",
            PatternKind::SumProductQuad => "sum-product-quad",
            PatternKind::RestrictedPair => "restricted-pair",
            PatternKind::SuccDoubleTriple => "succ-double-triple",
        }
    }

    pub fn parse_name(s: &str) -> Result<PatternKind> {
        Ok(match s {
            "schur" => PatternKind::SchurTriple,
            "product-triple" => PatternKind::ProductTriple,
            "sum-product-pair" => PatternKind::SumProductPair,
            "sum-product-quad" => PatternKind::SumProductQuad,
            "restricted-pair" => PatternKind::RestrictedPair,
            "succ-double-triple" => PatternKind::SuccDoubleTriple,
            other => return Err(Error::UnsupportedPattern(other.to_string())),
        })
    }

    fn has_product(&self) -> bool {
        !matches!(self, PatternKind::SchurTriple)
    }
}

/// Nondegeneracy flags. Defaults per pattern: x != 0 always; y outside
/// {0, 1} for product-bearing patterns (y = 1 makes xy = x) but only y != 0
/// for the pure Schur triple; x = y allowed; for the sum-product pair
/// additionally x+y != xy.
#[derive(Clone, Debug)]
pub struct NondegFlags {
    pub allow_x_eq_y: bool,
    pub x_excluded: Vec<RingElement>,
    pub y_excluded: Vec<RingElement>,
    pub require_sum_ne_product: bool,
    /// When set, both parameters must be >= this value (ordered rings only).
    pub min_value: Option<RingElement>,
}

#[derive(Clone, Debug)]
pub struct PatternConfig {
    pub kind: PatternKind,
    pub ring: RingId,
    pub flags: NondegFlags,
}

impl PatternConfig {
    pub fn defaults(kind: PatternKind, ring: RingId) -> PatternConfig {
        let zero = RingElement::zero(ring);
        let one = RingElement::one(ring);
        let y_excluded = if kind.has_product() {
            vec![zero.clone(), one]
        } else {
            vec![zero.clone()]
        };
        PatternConfig {
            kind,
            ring,
            flags: NondegFlags {
                allow_x_eq_y: true,
                x_excluded: vec![zero],
                y_excluded,
                require_sum_ne_product: kind == PatternKind::SumProductPair,
                min_value: None,
            },
        }
    }

    /// Both parameters at least `v` (strictly above `v - 1`); used for the
    /// "x, y > 2" style side conditions.
    pub fn with_min_value(mut self, v: RingElement) -> PatternConfig {
        self.flags.min_value = Some(v);
        self
    }

    pub fn admissible(&self, x: &RingElement, y: &RingElement) -> bool {
        if self.flags.x_excluded.contains(x) || self.flags.y_excluded.contains(y) {
            return false;
        }
        if !self.flags.allow_x_eq_y && x == y {
            return false;
        }
        if let Some(min) = &self.flags.min_value {
            use std::cmp::Ordering::Less;
            if x.display_cmp(min) == Less || y.display_cmp(min) == Less {
                return false;
            }
        }
        if self.flags.require_sum_ne_product
            && self.kind == PatternKind::SumProductPair
            && x.add(y) == x.mul(y)
        {
            return false;
        }
        true
    }

    /// The elements whose common color the pattern asserts, deduplicated,
    /// in construction order. The free parameters x, y are part of the
    /// configuration only for the triple/quad patterns.
    pub fn configuration(&self, x: &RingElement, y: &RingElement) -> Result<Vec<RingElement>> {
        let mut config = match self.kind {
            PatternKind::SchurTriple => vec![x.clone(), y.clone(), x.add(y)],
            PatternKind::ProductTriple => vec![x.clone(), y.clone(), x.mul(y)],
            PatternKind::SumProductPair | PatternKind::RestrictedPair => {
                vec![x.add(y), x.mul(y)]
            }
            PatternKind::SumProductQuad => {
                vec![x.clone(), y.clone(), x.add(y), x.mul(y)]
            }
            PatternKind::SuccDoubleTriple => {
                return Err(Error::UnsupportedPattern(
                    "succ-double-triple has one parameter; use the construction verifier".into(),
                ))
            }
        };
        // Coincidences collapse: configurations are sets.
        let mut seen: Vec<RingElement> = Vec::with_capacity(config.len());
        for e in config.drain(..) {
            if !seen.contains(&e) {
                seen.push(e);
            }
        }
        Ok(seen)
    }
}

/// An r-coloring of a window, aligned with the window enumeration.
#[derive(Clone)]
pub struct Coloring {
    window: Arc<Window>,
    colors: Vec<u8>,
    r: u8,
}

impl Coloring {
    pub fn new(window: Arc<Window>, colors: Vec<u8>, r: u8) -> Result<Coloring> {
        if r == 0 {
            return Err(Error::Config("color count must be at least 1".into()));
        }
        if colors.len() != window.size() {
            return Err(Error::Config(format!(
                "coloring length {} does not match window size {}",
                colors.len(),
                window.size()
            )));
        }
        if let Some(bad) = colors.iter().find(|&&c| c >= r) {
            return Err(Error::Config(format!("color {bad} out of range 0..{r}")));
        }
        Ok(Coloring { window, colors, r })
    }

    pub fn from_fn(
        window: Arc<Window>,
        r: u8,
        mut f: impl FnMut(&RingElement) -> u8,
    ) -> Result<Coloring> {
        let colors = (0..window.size())
            .map(|i| f(&window.element_at(i)))
            .collect();
        Coloring::new(window, colors, r)
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn color_of(&self, e: &RingElement) -> Option<u8> {
        self.window.index_of(e).map(|i| self.colors[i])
    }

    /// Members of one color class as a set.
    pub fn class(&self, color: u8) -> WindowSet {
        WindowSet::from_fn(self.window.clone(), |e| {
            Ok(self.color_of(e) == Some(color))
        })
        .expect("infallible predicate")
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub x: RingElement,
    pub y: RingElement,
    pub configuration: Vec<RingElement>,
    pub color: Option<u8>,
    /// Derivation note, e.g. the (E-n) and E/n membership route.
    pub route: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct WitnessList {
    pub witnesses: Vec<Witness>,
    pub truncated: bool,
    pub skipped_out_of_window: u64,
}

impl WitnessList {
    pub fn count(&self) -> usize {
        self.witnesses.len()
    }
}

/// Scans outer indices in order, collecting per-index witness batches until
/// `m` witnesses are gathered. Batches are computed in parallel but consumed
/// in order, so the result is independent of the thread count.
fn batched_scan(
    n_outer: usize,
    m: usize,
    per: impl Fn(usize) -> (Vec<Witness>, u64) + Sync,
) -> WitnessList {
    const BATCH: usize = 512;
    let mut out = WitnessList::default();
    let mut start = 0usize;
    'outer: while start < n_outer {
        let end = (start + BATCH).min(n_outer);
        let batch = exec::map_indexed(end - start, |k| per(start + k));
        for (ws, skipped) in batch {
            out.skipped_out_of_window += skipped;
            for w in ws {
                if out.witnesses.len() == m {
                    out.truncated = true;
                    break 'outer;
                }
                out.witnesses.push(w);
            }
        }
        start = end;
    }
    out
}

/// Enumerates parameter pairs in canonical order and collects up to
/// `max_witnesses` monochromatic instances.
pub fn find_monochromatic(
    coloring: &Coloring,
    config: &PatternConfig,
    max_witnesses: usize,
) -> Result<WitnessList> {
    find_monochromatic_with_pool(coloring, config, max_witnesses, None)
}

/// Variant with an explicit second-parameter pool (used by the restricted
/// pair pattern, where n ranges over the subring inside a separate window).
pub fn find_monochromatic_with_pool(
    coloring: &Coloring,
    config: &PatternConfig,
    max_witnesses: usize,
    y_pool: Option<&[RingElement]>,
) -> Result<WitnessList> {
    ensure_same_ring(config.ring, coloring.window().ring())?;
    let w = coloring.window();
    let default_pool: Vec<RingElement>;
    let pool: &[RingElement] = match y_pool {
        Some(p) => p,
        None => {
            default_pool = subring_pool(config, w)?;
            &default_pool
        }
    };
    Ok(batched_scan(w.size(), max_witnesses, |i| {
        let x = w.element_at(i);
        let mut found = Vec::new();
        let mut skipped = 0u64;
        for y in pool {
            if !config.admissible(&x, y) {
                continue;
            }
            let cfg = config.configuration(&x, y).expect("two-parameter kind");
            let mut colors = cfg.iter().map(|e| coloring.color_of(e));
            let first = colors.next().expect("nonempty configuration");
            match first {
                None => skipped += 1,
                Some(c) => {
                    let mut escaped = false;
                    let mut mono = true;
                    for col in colors {
                        match col {
                            None => {
                                escaped = true;
                                break;
                            }
                            Some(c2) if c2 != c => {
                                mono = false;
                                break;
                            }
                            _ => {}
                        }
                    }
                    if escaped {
                        skipped += 1;
                    } else if mono {
                        found.push(Witness {
                            x: x.clone(),
                            y: y.clone(),
                            configuration: cfg,
                            color: Some(c),
                            route: None,
                        });
                        if found.len() == max_witnesses {
                            break;
                        }
                    }
                }
            }
        }
        (found, skipped)
    }))
}

fn subring_pool(config: &PatternConfig, w: &Arc<Window>) -> Result<Vec<RingElement>> {
    if config.kind == PatternKind::RestrictedPair {
        if config.ring.integral_subring().is_none() {
            return Err(Error::UnsupportedRing(format!(
                "{} has no designated integral subring",
                config.ring
            )));
        }
        Ok(w.iter().filter(|e| e.is_integral()).collect())
    } else {
        Ok(w.iter().collect())
    }
}

/// Searches a set for pairs {x+y, xy} (or {x+n, xn} with n in the subring)
/// with both members in S, testing membership against S's universe.
pub fn sumproduct_in_set(
    s: &WindowSet,
    config: &PatternConfig,
    max_witnesses: usize,
    y_pool: Option<&[RingElement]>,
) -> Result<WitnessList> {
    ensure_same_ring(config.ring, s.window().ring())?;
    if !matches!(
        config.kind,
        PatternKind::SumProductPair | PatternKind::RestrictedPair
    ) {
        return Err(Error::UnsupportedPattern(format!(
            "{} is not a sum-product pair pattern",
            config.kind.name()
        )));
    }
    let w = s.window();
    let default_pool: Vec<RingElement>;
    let pool: &[RingElement] = match y_pool {
        Some(p) => p,
        None => {
            default_pool = subring_pool(config, w)?;
            &default_pool
        }
    };
    Ok(batched_scan(w.size(), max_witnesses, |i| {
        let x = w.element_at(i);
        let mut found = Vec::new();
        let mut skipped = 0u64;
        for y in pool {
            if !config.admissible(&x, y) {
                continue;
            }
            let sum = x.add(y);
            let prod = x.mul(y);
            let sum_idx = w.index_of(&sum);
            let prod_idx = w.index_of(&prod);
            match (sum_idx, prod_idx) {
                (Some(a), Some(b)) => {
                    if s.contains_index(a) && s.contains_index(b) {
                        found.push(Witness {
                            route: Some(format!("{x} lies in (S-({y})) and S/({y})")),
                            x: x.clone(),
                            y: y.clone(),
                            configuration: vec![sum.clone(), prod.clone()],
                            color: None,
                        });
                        if found.len() == max_witnesses {
                            break;
                        }
                    }
                }
                _ => skipped += 1,
            }
        }
        (found, skipped)
    }))
}

#[derive(Clone, Debug)]
pub struct MultSyndeticWitness {
    pub a: RingElement,
    pub b: RingElement,
    pub n: RingElement,
    /// The realized pair {a+bn, abn}.
    pub pair: [RingElement; 2],
}

#[derive(Clone, Debug)]
pub struct MultSyndeticReport {
    pub witnesses: Vec<MultSyndeticWitness>,
    pub truncated: bool,
}

/// For a multiplicative shift family F covering the probe window
/// (every nonzero x has xn in S for some n in F, verified first), hunts for
/// a, b with a + bF inside S and then n in F with abn in S, emitting the
/// pair {a+bn, abn}.
pub fn multsyndetic_pattern_check(
    s: &WindowSet,
    divisors: &[RingElement],
    probe: &Arc<Window>,
    max_witnesses: usize,
    relaxed: bool,
) -> Result<MultSyndeticReport> {
    if divisors.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for n in divisors {
        ensure_same_ring(s.window().ring(), n.ring())?;
        if n.is_zero() {
            return Err(Error::ZeroElement);
        }
    }
    ensure_same_ring(s.window().ring(), probe.ring())?;
    // Cover check: the window-level form of multiplicative syndeticity.
    let mut uncovered = Vec::new();
    for x in probe.iter() {
        if x.is_zero() {
            continue;
        }
        if !divisors.iter().any(|n| s.contains(&x.mul(n))) {
            uncovered.push(x.to_string());
            if uncovered.len() >= 8 {
                break;
            }
        }
    }
    if !uncovered.is_empty() {
        return Err(Error::NotMultSyndeticOnWindow {
            uncovered: uncovered.len(),
            sample: uncovered,
        });
    }
    let one = RingElement::one(s.window().ring());
    let zero = RingElement::zero(s.window().ring());
    let mut out = MultSyndeticReport {
        witnesses: Vec::new(),
        truncated: false,
    };
    let bs: Vec<RingElement> = probe.iter().filter(|b| !b.is_zero()).collect();
    'outer: for a in probe.iter() {
        if a.is_zero() {
            continue;
        }
        for b in &bs {
            if !divisors.iter().all(|n| s.contains(&a.add(&b.mul(n)))) {
                continue;
            }
            let ab = a.mul(b);
            for n in divisors {
                let bn = b.mul(n);
                if !relaxed && (bn == zero || bn == one) {
                    continue;
                }
                let abn = ab.mul(n);
                if s.contains(&abn) {
                    if out.witnesses.len() == max_witnesses {
                        out.truncated = true;
                        break 'outer;
                    }
                    out.witnesses.push(MultSyndeticWitness {
                        a: a.clone(),
                        b: b.clone(),
                        n: n.clone(),
                        pair: [a.add(&bn), abn.clone()],
                    });
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Minimal forcing window by depth-first search over colorings.

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum RamseyOutcome {
    /// Every r-coloring of [1, n] contains the pattern; `evidence` is a
    /// pattern-free coloring of [1, n-1].
    FoundAt { n: u64, evidence: Vec<u8> },
    /// A pattern-free coloring of [1, max_n] exists and is returned.
    ExhaustedAt { n: u64, evidence: Vec<u8> },
}

#[derive(Clone, Debug)]
pub struct RamseyReport {
    pub outcome: RamseyOutcome,
    /// Deterministic node count: partial colorings visited, accumulated in
    /// subtree order up to the stopping subtree.
    pub nodes: u64,
}

struct RamseySearch {
    kind: PatternKind,
    min_y: u64,
    allow_x_eq_y: bool,
    sum_ne_product: bool,
    min_value: u64,
    r: u8,
}

impl RamseySearch {
    fn from_config(config: &PatternConfig, r: u8) -> Result<RamseySearch> {
        if !matches!(
            config.kind,
            PatternKind::SchurTriple
                | PatternKind::ProductTriple
                | PatternKind::SumProductPair
                | PatternKind::SumProductQuad
        ) {
            return Err(Error::UnsupportedPattern(format!(
                "{} is not searchable over colorings of [1, n]",
                config.kind.name()
            )));
        }
        // Translate flags to positive-integer thresholds: exclusions of 0
        // are vacuous on [1, n]; excluding 1 for y lifts the bound to 2.
        let one = RingElement::one(config.ring);
        let min_y = if config.flags.y_excluded.contains(&one) {
            2
        } else {
            1
        };
        let min_value = config
            .flags
            .min_value
            .as_ref()
            .and_then(|m| m.as_int().and_then(num_traits::ToPrimitive::to_u64))
            .unwrap_or(1);
        Ok(RamseySearch {
            kind: config.kind,
            min_y,
            allow_x_eq_y: config.flags.allow_x_eq_y,
            sum_ne_product: config.flags.require_sum_ne_product,
            min_value,
            r,
        })
    }

    fn config_of(&self, x: u64, y: u64) -> Option<Vec<u64>> {
        if y < self.min_y || x < self.min_value || y < self.min_value {
            return None;
        }
        if !self.allow_x_eq_y && x == y {
            return None;
        }
        let mut cfg = match self.kind {
            PatternKind::SchurTriple => vec![x, y, x + y],
            PatternKind::ProductTriple => vec![x, y, x * y],
            PatternKind::SumProductPair => {
                if self.sum_ne_product && x + y == x * y {
                    return None;
                }
                vec![x + y, x * y]
            }
            PatternKind::SumProductQuad => vec![x, y, x + y, x * y],
            _ => unreachable!(),
        };
        cfg.sort_unstable();
        cfg.dedup();
        Some(cfg)
    }

    /// Does assigning element `i` (1-based) complete a monochromatic
    /// configuration within colors[0..i]?
    fn completes_pattern(&self, colors: &[u8], i: u64) -> bool {
        let c = colors[(i - 1) as usize];
        let mono = |cfg: &[u64]| cfg.iter().all(|&e| colors[(e - 1) as usize] == c);
        for x in 1..=i {
            for y in 1..=i {
                if let Some(cfg) = self.config_of(x, y) {
                    // Configurations are checked exactly once, when their
                    // largest element receives a color.
                    if cfg.last() == Some(&i) && mono(&cfg) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Full-coloring validity oracle, independent of the DFS incremental
    /// check. Public through `coloring_is_pattern_free`.
    fn pattern_free(&self, colors: &[u8]) -> bool {
        let n = colors.len() as u64;
        for x in 1..=n {
            for y in 1..=n {
                if let Some(cfg) = self.config_of(x, y) {
                    if *cfg.last().unwrap() <= n {
                        let c = colors[(cfg[0] - 1) as usize];
                        if cfg.iter().all(|&e| colors[(e - 1) as usize] == c) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Lexicographically least pattern-free completion of `prefix` to
    /// length n, or `None`. Counts visited nodes into `nodes`; errors out
    /// when the local node budget is exhausted.
    fn complete(
        &self,
        prefix: &[u8],
        n: usize,
        budget: u64,
        nodes: &mut u64,
    ) -> Result<Option<Vec<u8>>> {
        let mut colors = prefix.to_vec();
        // The prefix itself must be pattern-free.
        for i in 1..=prefix.len() {
            if self.completes_pattern(&colors[..i], i as u64) {
                return Ok(None);
            }
        }
        if colors.len() == n {
            return Ok(Some(colors));
        }
        self.dfs(&mut colors, n, budget, nodes)
    }

    fn dfs(&self, colors: &mut Vec<u8>, n: usize, budget: u64, nodes: &mut u64) -> Result<Option<Vec<u8>>> {
        let i = colors.len() + 1;
        for c in 0..self.r {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::BudgetExceeded(*nodes));
            }
            colors.push(c);
            if !self.completes_pattern(colors, i as u64) {
                if i == n {
                    return Ok(Some(colors.clone()));
                }
                if let Some(done) = self.dfs(colors, n, budget, nodes)? {
                    return Ok(Some(done));
                }
            }
            colors.pop();
        }
        Ok(None)
    }
}

/// Validity oracle: no admissible (x, y) has a monochromatic configuration
/// inside [1, colors.len()].
pub fn coloring_is_pattern_free(config: &PatternConfig, r: u8, colors: &[u8]) -> Result<bool> {
    let search = RamseySearch::from_config(config, r)?;
    Ok(search.pattern_free(colors))
}

/// Least n <= max_n such that every r-coloring of [1, n] contains a
/// monochromatic instance of the pattern. Colorings are explored
/// depth-first in color-lexicographic order with the first element pinned
/// to color 0 (legitimate by color symmetry), pruning any partial coloring
/// that already completed a configuration.
///
/// The node budget bounds each parallel subtree separately and reported
/// node counts accumulate in subtree order, so verdict, evidence, and count
/// are all independent of the thread count.
pub fn minimal_ramsey_window(
    config: &PatternConfig,
    r: u8,
    max_n: u64,
    budget: u64,
) -> Result<RamseyReport> {
    if r == 0 {
        return Err(Error::Config("color count must be at least 1".into()));
    }
    ensure_same_ring(RingId::Integers, config.ring)?;
    let search = RamseySearch::from_config(config, r)?;
    let mut evidence_prev: Vec<u8> = Vec::new();
    let mut total_nodes = 0u64;
    for n in 1..=max_n {
        match free_coloring(&search, n as usize, budget, &mut total_nodes)? {
            Some(colors) => evidence_prev = colors,
            None => {
                return Ok(RamseyReport {
                    outcome: RamseyOutcome::FoundAt {
                        n,
                        evidence: evidence_prev,
                    },
                    nodes: total_nodes,
                })
            }
        }
    }
    Ok(RamseyReport {
        outcome: RamseyOutcome::ExhaustedAt {
            n: max_n,
            evidence: evidence_prev,
        },
        nodes: total_nodes,
    })
}

/// Lexicographically least pattern-free r-coloring of [1, n], if any.
fn free_coloring(
    search: &RamseySearch,
    n: usize,
    budget: u64,
    total_nodes: &mut u64,
) -> Result<Option<Vec<u8>>> {
    // Split the tree at a short prefix and scan subtrees in order; each
    // subtree search is independent, so this parallelizes cleanly.
    let r = search.r;
    let prefix_len = if n <= 1 {
        1
    } else {
        let mut len = 1usize;
        let mut count = 1usize;
        while len < n && len < 9 && count * (r as usize) <= 512 {
            len += 1;
            count *= r as usize;
        }
        len
    };
    let mut prefixes: Vec<Vec<u8>> = vec![vec![0]];
    for _ in 1..prefix_len {
        let mut next = Vec::with_capacity(prefixes.len() * r as usize);
        for p in prefixes {
            for c in 0..r {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        prefixes = next;
    }
    let results = exec::map_indexed(prefixes.len(), |i| {
        let mut nodes = 0u64;
        let outcome = search.complete(&prefixes[i], n, budget, &mut nodes);
        (outcome, nodes)
    });
    for (outcome, nodes) in results {
        *total_nodes += nodes;
        match outcome? {
            Some(colors) => return Ok(Some(colors)),
            None => continue,
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::windows::{Shape, WindowSpec};

    fn nat_window(n: u64) -> Arc<Window> {
        Window::new(WindowSpec::new(RingId::Integers, Shape::NatBox(n)).unwrap()).unwrap()
    }

    fn parity_coloring(n: u64) -> Coloring {
        Coloring::from_fn(nat_window(n), 2, |e| {
            use num_integer::Integer;
            u8::from(e.as_int().unwrap().is_odd())
        })
        .unwrap()
    }

    #[test]
    fn schur_witness_on_parity_coloring() {
        let c = parity_coloring(10);
        let config = PatternConfig::defaults(PatternKind::SchurTriple, RingId::Integers);
        let found = find_monochromatic(&c, &config, 1).unwrap();
        assert_eq!(found.count(), 1);
        let w = &found.witnesses[0];
        assert_eq!(
            (w.x.to_string(), w.y.to_string()),
            ("2".into(), "2".into()),
            "least witness is x = y = 2 giving {{2, 4}}"
        );
    }

    #[test]
    fn sumproduct_witness_on_parity_coloring() {
        let c = parity_coloring(10);
        let config = PatternConfig::defaults(PatternKind::SumProductPair, RingId::Integers)
            .with_min_value(RingElement::from_i64(RingId::Integers, 2));
        let found = find_monochromatic(&c, &config, 1).unwrap();
        assert_eq!(found.count(), 1);
        let w = &found.witnesses[0];
        assert_eq!((w.x.to_string(), w.y.to_string()), ("2".into(), "4".into()));
        let cfg: Vec<String> = w.configuration.iter().map(|e| e.to_string()).collect();
        assert_eq!(cfg, ["6", "8"]);
    }

    #[test]
    fn tiny_window_has_no_admissible_pairs() {
        let c = parity_coloring(1);
        let config = PatternConfig::defaults(PatternKind::ProductTriple, RingId::Integers);
        // y = 1 is excluded by default for product patterns, and the window
        // is {1}, so nothing is admissible.
        let found = find_monochromatic(&c, &config, 10).unwrap();
        assert_eq!(found.count(), 0);
    }

    #[test]
    fn witnesses_revalidate() {
        let c = parity_coloring(60);
        for kind in [
            PatternKind::SchurTriple,
            PatternKind::ProductTriple,
            PatternKind::SumProductPair,
            PatternKind::SumProductQuad,
        ] {
            let config = PatternConfig::defaults(kind, RingId::Integers);
            let found = find_monochromatic(&c, &config, 50).unwrap();
            for w in &found.witnesses {
                let cfg = config.configuration(&w.x, &w.y).unwrap();
                assert_eq!(cfg, w.configuration);
                for e in &cfg {
                    assert_eq!(c.color_of(e), w.color, "kind {kind:?}");
                }
            }
        }
    }

    #[test]
    fn naive_agreement_small_windows() {
        // find_monochromatic must agree with a quadruple loop on [1, 300].
        let c = Coloring::from_fn(nat_window(300), 3, |e| {
            use num_traits::ToPrimitive;
            (e.as_int().unwrap().to_u64().unwrap() % 3) as u8
        })
        .unwrap();
        for kind in [
            PatternKind::SchurTriple,
            PatternKind::ProductTriple,
            PatternKind::SumProductPair,
            PatternKind::SumProductQuad,
        ] {
            let config = PatternConfig::defaults(kind, RingId::Integers);
            let fast = find_monochromatic(&c, &config, usize::MAX).unwrap();
            let mut naive = Vec::new();
            for x in 1u64..=300 {
                for y in 1u64..=300 {
                    let xe = RingElement::from_i64(RingId::Integers, x as i64);
                    let ye = RingElement::from_i64(RingId::Integers, y as i64);
                    if !config.admissible(&xe, &ye) {
                        continue;
                    }
                    let cfg = config.configuration(&xe, &ye).unwrap();
                    let colors: Option<Vec<u8>> =
                        cfg.iter().map(|e| c.color_of(e)).collect();
                    if let Some(cols) = colors {
                        if cols.iter().all(|&col| col == cols[0]) {
                            naive.push((x, y));
                        }
                    }
                }
            }
            let fast_pairs: Vec<(u64, u64)> = fast
                .witnesses
                .iter()
                .map(|w| {
                    use num_traits::ToPrimitive;
                    (
                        w.x.as_int().unwrap().to_u64().unwrap(),
                        w.y.as_int().unwrap().to_u64().unwrap(),
                    )
                })
                .collect();
            assert_eq!(fast_pairs, naive, "kind {kind:?}");
        }
    }

    #[test]
    fn sumproduct_in_set_finds_even_pair() {
        let w = nat_window(20);
        let evens =
            WindowSet::from_expr(&crate::windows::parse_set_expr("mod(0,2)").unwrap(), &w)
                .unwrap();
        let config = PatternConfig::defaults(PatternKind::SumProductPair, RingId::Integers)
            .with_min_value(RingElement::from_i64(RingId::Integers, 2));
        let found = sumproduct_in_set(&evens, &config, 1, None).unwrap();
        assert_eq!(found.count(), 1);
        let w0 = &found.witnesses[0];
        assert_eq!((w0.x.to_string(), w0.y.to_string()), ("2".into(), "4".into()));
        assert!(w0.route.as_deref().unwrap().contains("S/"));
    }

    #[test]
    fn odd_set_parity_obstruction() {
        let w = nat_window(200);
        let odds =
            WindowSet::from_expr(&crate::windows::parse_set_expr("mod(1,2)").unwrap(), &w)
                .unwrap();
        let odd_pool: Vec<RingElement> = w
            .iter()
            .filter(|e| {
                use num_integer::Integer;
                e.as_int().unwrap().is_odd()
            })
            .collect();
        let config = PatternConfig::defaults(PatternKind::SumProductPair, RingId::Integers);
        // With y odd, a witness needs xy odd (so x odd) and x+y odd at the
        // same time; odd+odd is even, so the search must come up empty.
        let found = sumproduct_in_set(&odds, &config, 10, Some(&odd_pool)).unwrap();
        assert_eq!(found.count(), 0);
    }

    #[test]
    fn restricted_pair_on_rationals() {
        let spec = WindowSpec::new(RingId::Rationals, Shape::Farey(30)).unwrap();
        let w = Window::new(spec).unwrap();
        let bands = WindowSet::from_expr(
            &crate::windows::parse_set_expr("floormod(0,2)").unwrap(),
            &w,
        )
        .unwrap();
        let config = PatternConfig::defaults(PatternKind::RestrictedPair, RingId::Rationals);
        let found = sumproduct_in_set(&bands, &config, 3, None).unwrap();
        assert!(found.count() >= 1, "search over Farey(30) should find some (x, n)");
        for wit in &found.witnesses {
            assert!(wit.y.is_integral(), "n must be an integer, got {}", wit.y);
            assert!(bands.contains(&wit.configuration[0]));
            assert!(bands.contains(&wit.configuration[1]));
        }
    }

    #[test]
    fn schur_forcing_window() {
        let config = PatternConfig::defaults(PatternKind::SchurTriple, RingId::Integers);
        // One color forces at n = 2 via {1, 1, 2}.
        let report = minimal_ramsey_window(&config, 1, 10, 1 << 20).unwrap();
        assert_eq!(
            report.outcome,
            RamseyOutcome::FoundAt {
                n: 2,
                evidence: vec![0]
            }
        );
        // Two colors force at n = 5 (the classical bound).
        let report = minimal_ramsey_window(&config, 2, 10, 1 << 20).unwrap();
        match &report.outcome {
            RamseyOutcome::FoundAt { n, evidence } => {
                assert_eq!(*n, 5);
                assert_eq!(evidence.len(), 4);
                assert!(coloring_is_pattern_free(&config, 2, evidence).unwrap());
            }
            other => panic!("expected FoundAt(5), got {other:?}"),
        }
    }

    #[test]
    fn ramsey_monotonicity_recheck() {
        // FoundAt(n) implies a pattern-free coloring of [1, n-1] exists and
        // none of length n exists; re-verify both via the oracle.
        let config = PatternConfig::defaults(PatternKind::SchurTriple, RingId::Integers);
        let report = minimal_ramsey_window(&config, 2, 6, 1 << 20).unwrap();
        if let RamseyOutcome::FoundAt { n, evidence } = &report.outcome {
            assert!(coloring_is_pattern_free(&config, 2, evidence).unwrap());
            assert_eq!(evidence.len() as u64, n - 1);
        } else {
            panic!("expected FoundAt");
        }
    }

    #[test]
    fn quad_search_exhausts_at_30() {
        let config = PatternConfig::defaults(PatternKind::SumProductQuad, RingId::Integers);
        let report = minimal_ramsey_window(&config, 2, 30, 1 << 22).unwrap();
        match &report.outcome {
            RamseyOutcome::ExhaustedAt { n, evidence } => {
                assert_eq!(*n, 30);
                assert!(coloring_is_pattern_free(&config, 2, evidence).unwrap());
            }
            other => panic!("expected ExhaustedAt(30), got {other:?}"),
        }
    }

    #[test]
    fn budget_trips() {
        let config = PatternConfig::defaults(PatternKind::SchurTriple, RingId::Integers);
        match minimal_ramsey_window(&config, 3, 14, 16) {
            Err(Error::BudgetExceeded(_)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn multsyndetic_check_examples() {
        // S = {n : v_2(n) even} on [1, 2^14], F = {1, 2}.
        let w = nat_window(1 << 14);
        let s = WindowSet::from_fn(w.clone(), |e| {
            let mut n = e.as_int().unwrap().clone();
            let mut v2 = 0u32;
            use num_integer::Integer;
            while n.is_even() {
                n /= 2;
                v2 += 1;
            }
            Ok(v2 % 2 == 0)
        })
        .unwrap();
        let probe = nat_window(1 << 13);
        let f = [
            RingElement::from_i64(RingId::Integers, 1),
            RingElement::from_i64(RingId::Integers, 2),
        ];
        let report = multsyndetic_pattern_check(&s, &f, &probe, 2, false).unwrap();
        assert!(!report.witnesses.is_empty());
        for wit in &report.witnesses {
            assert!(s.contains(&wit.pair[0]));
            assert!(s.contains(&wit.pair[1]));
            assert_eq!(wit.pair[0], wit.a.add(&wit.b.mul(&wit.n)));
            assert_eq!(wit.pair[1], wit.a.mul(&wit.b).mul(&wit.n));
        }

        // Full window, F = {1}: (1, 1, 1) admissible only when relaxed.
        let w2 = nat_window(50);
        let full = WindowSet::full(w2.clone());
        let f1 = [RingElement::from_i64(RingId::Integers, 1)];
        let relaxed = multsyndetic_pattern_check(&full, &f1, &w2, 1, true).unwrap();
        let first = &relaxed.witnesses[0];
        assert_eq!(
            (first.a.to_string(), first.b.to_string(), first.n.to_string()),
            ("1".into(), "1".into(), "1".into())
        );

        // Multiples of 3: 1 is uncovered, so the family fails the check.
        let thirds =
            WindowSet::from_expr(&crate::windows::parse_set_expr("mod(0,3)").unwrap(), &w2)
                .unwrap();
        match multsyndetic_pattern_check(&thirds, &f1, &w2, 1, false) {
            Err(Error::NotMultSyndeticOnWindow { .. }) => {}
            other => panic!("expected cover failure, got {other:?}"),
        }
    }

    #[test]
    fn partition_regularity_bookkeeping() {
        // Union of per-class sum-product witnesses equals the monochromatic
        // witnesses of the coloring.
        let c = parity_coloring(40);
        let config = PatternConfig::defaults(PatternKind::SumProductPair, RingId::Integers);
        let mono = find_monochromatic(&c, &config, usize::MAX).unwrap();
        let mut per_class: Vec<(String, String)> = Vec::new();
        for color in 0..2u8 {
            let class = c.class(color);
            let found = sumproduct_in_set(&class, &config, usize::MAX, None).unwrap();
            per_class.extend(
                found
                    .witnesses
                    .iter()
                    .map(|w| (w.x.to_string(), w.y.to_string())),
            );
        }
        let mut mono_pairs: Vec<(String, String)> = mono
            .witnesses
            .iter()
            .map(|w| (w.x.to_string(), w.y.to_string()))
            .collect();
        mono_pairs.sort();
        per_class.sort();
        assert_eq!(mono_pairs, per_class);
    }
}

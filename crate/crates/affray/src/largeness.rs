//! Window-verified largeness: syndeticity certificates, thickness
//! witnesses, Folner-style density sequences, and finite-sum sets.
//!
//! Every verdict here is relative to an explicit finite window and is
//! labeled window-verified; nothing in this module claims more than what it
//! scanned.

use crate::affine::{maps_up_to_height, AffineMap};
use crate::error::{Error, Result};
use crate::exec;
use crate::rings::{ensure_same_ring, RingElement, RingId};
use crate::windows::{ExprEvaluator, SetExpr, Shape, Window, WindowSet, WindowSpec};
use std::collections::HashSet;
use std::sync::Arc;

/// A family of maps together with how much of the probe window their
/// preimages of S cover.
#[derive(Clone, Debug)]
pub struct SyndeticCertificate {
    pub maps: Vec<AffineMap>,
    /// Exact coverage fraction: covered points over probe size.
    pub covered: u64,
    pub probe_size: u64,
    pub uncovered_sample: Vec<RingElement>,
    /// Map applications landing outside S's universe (counted as misses).
    pub out_of_window: u64,
}

impl SyndeticCertificate {
    pub fn full(&self) -> bool {
        self.covered == self.probe_size
    }
}

/// Set membership source for the largeness scans. The windowed form tests
/// against a materialized universe and tallies images that escape it; the
/// exact form resolves membership pointwise from a set expression, so no
/// truncation is possible.
#[derive(Clone, Copy)]
pub enum SetOracle<'a> {
    Windowed(&'a WindowSet),
    Exact(&'a ExprEvaluator),
}

impl<'a> SetOracle<'a> {
    pub fn ring(&self) -> RingId {
        match self {
            SetOracle::Windowed(s) => s.window().ring(),
            SetOracle::Exact(ev) => ev.ring(),
        }
    }

    /// (member, escaped-universe)
    fn probe(&self, e: &RingElement) -> Result<(bool, bool)> {
        match self {
            SetOracle::Windowed(s) => match s.window().index_of(e) {
                Some(j) => Ok((s.contains_index(j), false)),
                None => Ok((false, true)),
            },
            SetOracle::Exact(ev) => Ok((ev.contains(e)?, false)),
        }
    }
}

/// Exact coverage of the probe window by the preimages of S under the
/// family, with an independent pointwise re-verification when full.
pub fn check_syndetic_certificate(
    s: &WindowSet,
    maps: &[AffineMap],
    probe: &Arc<Window>,
) -> Result<SyndeticCertificate> {
    check_syndetic_certificate_oracle(SetOracle::Windowed(s), maps, probe)
}

/// Same check with membership decided exactly from a set expression.
pub fn check_syndetic_certificate_exact(
    ev: &ExprEvaluator,
    maps: &[AffineMap],
    probe: &Arc<Window>,
) -> Result<SyndeticCertificate> {
    check_syndetic_certificate_oracle(SetOracle::Exact(ev), maps, probe)
}

pub fn check_syndetic_certificate_oracle(
    s: SetOracle<'_>,
    maps: &[AffineMap],
    probe: &Arc<Window>,
) -> Result<SyndeticCertificate> {
    if maps.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for g in maps {
        ensure_same_ring(s.ring(), g.ring())?;
    }
    ensure_same_ring(s.ring(), probe.ring())?;
    let per_point = exec::try_map_indexed(probe.size(), |i| {
        let x = probe.element_at(i);
        let mut out_of_window = 0u64;
        let mut covered = false;
        for g in maps {
            let image = g.apply(&x)?;
            let (member, escaped) = s.probe(&image)?;
            if member {
                covered = true;
                break;
            }
            if escaped {
                out_of_window += 1;
            }
        }
        Ok((covered, out_of_window))
    })?;
    let covered = per_point.iter().filter(|(c, _)| *c).count() as u64;
    let out_of_window = per_point.iter().map(|(_, o)| o).sum();
    let uncovered_sample: Vec<RingElement> = per_point
        .iter()
        .enumerate()
        .filter(|(_, (c, _))| !c)
        .take(16)
        .map(|(i, _)| probe.element_at(i))
        .collect();
    let cert = SyndeticCertificate {
        maps: maps.to_vec(),
        covered,
        probe_size: probe.size() as u64,
        uncovered_sample,
        out_of_window,
    };
    if cert.full() {
        // Independent re-scan: every probe point must have a map landing in S.
        for x in probe.iter() {
            let mut hit = false;
            for g in maps {
                if s.probe(&g.apply(&x)?)?.0 {
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Err(Error::Invariant(format!(
                    "coverage recheck failed at probe point {x}"
                )));
            }
        }
    }
    Ok(cert)
}

#[derive(Clone, Debug)]
pub enum CertificateSearch {
    Found(SyndeticCertificate),
    /// No full certificate within the budget; carries the best attempt.
    Exhausted(SyndeticCertificate),
}

impl CertificateSearch {
    pub fn certificate(&self) -> &SyndeticCertificate {
        match self {
            CertificateSearch::Found(c) | CertificateSearch::Exhausted(c) => c,
        }
    }
}

/// Greedy set cover over all candidate maps of coefficient height at most
/// `height`, then an exact verification pass. Candidates are scored in
/// canonical order, so ties break deterministically.
pub fn find_syndetic_certificate(
    s: &WindowSet,
    probe: &Arc<Window>,
    height: u64,
    max_maps: usize,
) -> Result<CertificateSearch> {
    find_syndetic_certificate_oracle(SetOracle::Windowed(s), probe, height, max_maps)
}

/// Greedy search with exact expression membership.
pub fn find_syndetic_certificate_exact(
    ev: &ExprEvaluator,
    probe: &Arc<Window>,
    height: u64,
    max_maps: usize,
) -> Result<CertificateSearch> {
    find_syndetic_certificate_oracle(SetOracle::Exact(ev), probe, height, max_maps)
}

pub fn find_syndetic_certificate_oracle(
    s: SetOracle<'_>,
    probe: &Arc<Window>,
    height: u64,
    max_maps: usize,
) -> Result<CertificateSearch> {
    if height == 0 || max_maps == 0 {
        return Err(Error::Config("height and map budget must be positive".into()));
    }
    ensure_same_ring(s.ring(), probe.ring())?;
    let ring = probe.ring();
    let candidates = maps_up_to_height(ring, height);
    if candidates.is_empty() {
        return Err(Error::EmptyFamily);
    }
    // Preimage bitmaps per candidate, probe-indexed.
    let preimages: Vec<Vec<bool>> = exec::try_map_indexed(candidates.len(), |ci| {
        let g = &candidates[ci];
        let mut bits = vec![false; probe.size()];
        for (i, slot) in bits.iter_mut().enumerate() {
            let image = g.apply(&probe.element_at(i))?;
            *slot = s.probe(&image)?.0;
        }
        Ok(bits)
    })?;
    let mut chosen: Vec<usize> = Vec::new();
    let mut covered = vec![false; probe.size()];
    let mut covered_count = 0usize;
    while chosen.len() < max_maps && covered_count < probe.size() {
        let mut best: Option<(usize, usize)> = None; // (gain, index)
        for (ci, pre) in preimages.iter().enumerate() {
            if chosen.contains(&ci) {
                continue;
            }
            let gain = pre
                .iter()
                .zip(covered.iter())
                .filter(|(p, c)| **p && !**c)
                .count();
            if gain > 0 && best.map(|(g, _)| gain > g).unwrap_or(true) {
                best = Some((gain, ci));
            }
        }
        match best {
            Some((_, ci)) => {
                chosen.push(ci);
                for (slot, p) in covered.iter_mut().zip(preimages[ci].iter()) {
                    if *p && !*slot {
                        *slot = true;
                        covered_count += 1;
                    }
                }
            }
            None => break,
        }
    }
    let maps: Vec<AffineMap> = chosen.iter().map(|&ci| candidates[ci].clone()).collect();
    if maps.is_empty() {
        // Nothing gained anything; report the trivial identity attempt.
        let cert = check_syndetic_certificate_oracle(s, &[AffineMap::identity(ring)], probe)?;
        return Ok(CertificateSearch::Exhausted(cert));
    }
    let cert = check_syndetic_certificate_oracle(s, &maps, probe)?;
    if cert.full() {
        Ok(CertificateSearch::Found(cert))
    } else {
        Ok(CertificateSearch::Exhausted(cert))
    }
}

#[derive(Clone, Debug)]
pub enum ThickWitness {
    Found {
        point: RingElement,
        images: Vec<RingElement>,
    },
    /// No point in the probe window sends the whole family into T.
    Absent { probe: WindowSpec },
}

/// Least x in canonical order with g(x) in T for every g in the family,
/// all images inside T's window. The hit is re-verified by reapplying the
/// maps before it is returned.
pub fn find_thick_witness(
    t: &WindowSet,
    maps: &[AffineMap],
    probe: &Arc<Window>,
) -> Result<ThickWitness> {
    find_thick_witness_oracle(SetOracle::Windowed(t), maps, probe)
}

/// Witness search with exact expression membership.
pub fn find_thick_witness_exact(
    ev: &ExprEvaluator,
    maps: &[AffineMap],
    probe: &Arc<Window>,
) -> Result<ThickWitness> {
    find_thick_witness_oracle(SetOracle::Exact(ev), maps, probe)
}

pub fn find_thick_witness_oracle(
    t: SetOracle<'_>,
    maps: &[AffineMap],
    probe: &Arc<Window>,
) -> Result<ThickWitness> {
    if maps.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for g in maps {
        ensure_same_ring(t.ring(), g.ring())?;
    }
    ensure_same_ring(t.ring(), probe.ring())?;
    let hit = exec::find_map_first(probe.size(), |i| {
        let x = probe.element_at(i);
        let mut images = Vec::with_capacity(maps.len());
        for g in maps {
            match g.apply(&x) {
                Ok(img) if t.probe(&img).map(|(m, _)| m).unwrap_or(false) => images.push(img),
                _ => return None,
            }
        }
        Some((x, images))
    });
    match hit {
        Some((point, images)) => {
            for (g, img) in maps.iter().zip(images.iter()) {
                if g.apply(&point)? != *img || !t.probe(img)?.0 {
                    return Err(Error::Invariant(format!(
                        "thick witness {point} failed recheck"
                    )));
                }
            }
            Ok(ThickWitness::Found { point, images })
        }
        None => Ok(ThickWitness::Absent {
            probe: probe.spec(),
        }),
    }
}

/// Folner-style residence sequences for densities.
#[derive(Clone)]
pub enum FolnerSpec {
    /// F_N = [1, N] over the integers.
    AdditiveNat,
    /// F_N = [-N, N] over the integers.
    IntBoxes,
    /// F_N = the Farey window of height N over the rationals.
    FareyBoxes,
    /// F_N = the image of the least admissible point under all maps of
    /// height <= N, landing inside a thick set.
    FromThick {
        thick: Arc<WindowSet>,
        /// Probe window for the witness point search.
        probe: Arc<Window>,
    },
}

impl FolnerSpec {
    pub fn ring(&self) -> RingId {
        match self {
            FolnerSpec::AdditiveNat | FolnerSpec::IntBoxes => RingId::Integers,
            FolnerSpec::FareyBoxes => RingId::Rationals,
            FolnerSpec::FromThick { thick, .. } => thick.window().ring(),
        }
    }
}

/// The N-th set of the sequence as explicit elements.
pub fn folner_set(spec: &FolnerSpec, n: u64) -> Result<Vec<RingElement>> {
    if n == 0 {
        return Err(Error::Config("index must be at least 1".into()));
    }
    match spec {
        FolnerSpec::AdditiveNat => Ok((1..=n as i64)
            .map(|v| RingElement::from_i64(RingId::Integers, v))
            .collect()),
        FolnerSpec::IntBoxes => {
            let w = Window::new(WindowSpec::new(RingId::Integers, Shape::IntBox(n))?)?;
            Ok(w.iter().collect())
        }
        FolnerSpec::FareyBoxes => {
            let w = Window::new(WindowSpec::new(RingId::Rationals, Shape::Farey(n))?)?;
            Ok(w.iter().collect())
        }
        FolnerSpec::FromThick { thick, probe } => {
            let maps = maps_up_to_height(thick.window().ring(), n);
            from_thick_set(thick, &maps, probe)
        }
    }
}

/// theta_G(x) for the least x whose images all land in T and are pairwise
/// distinct. Distinctness can only fail at the finitely many points where
/// two maps agree, so admissible points are skipped, not searched around.
fn from_thick_set(
    t: &WindowSet,
    maps: &[AffineMap],
    probe: &Arc<Window>,
) -> Result<Vec<RingElement>> {
    if maps.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let hit = exec::find_map_first(probe.size(), |i| {
        let x = probe.element_at(i);
        let mut images: Vec<RingElement> = Vec::with_capacity(maps.len());
        for g in maps {
            match g.apply(&x) {
                Ok(img) if t.contains(&img) => images.push(img),
                _ => return None,
            }
        }
        let distinct: HashSet<&RingElement> = images.iter().collect();
        if distinct.len() != images.len() {
            return None;
        }
        Some(images)
    });
    hit.ok_or_else(|| {
        Error::WitnessNotFound(format!(
            "no point of {} sends all {} maps into the set with distinct images",
            probe.spec(),
            maps.len()
        ))
    })
}

/// Exact per-index densities |E and F_N| / |F_N|.
#[derive(Clone, Debug)]
pub struct DensityReport {
    /// (count, size) per index 1..=N.
    pub ratios: Vec<(u64, u64)>,
    /// Running max over the tail (indices > N * (1 - tail_fraction)).
    pub upper: (u64, u64),
    /// Running min over the same tail.
    pub lower: (u64, u64),
    pub tail_start: usize,
}

fn ratio_cmp(a: (u64, u64), b: (u64, u64)) -> std::cmp::Ordering {
    (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128))
}

impl DensityReport {
    pub fn final_ratio(&self) -> (u64, u64) {
        *self.ratios.last().expect("nonempty report")
    }

    fn from_ratios(ratios: Vec<(u64, u64)>) -> DensityReport {
        // Tail statistic over the last half of the indices.
        let tail_start = ratios.len() / 2;
        let tail = &ratios[tail_start..];
        let upper = *tail
            .iter()
            .max_by(|a, b| ratio_cmp(**a, **b))
            .expect("nonempty tail");
        let lower = *tail
            .iter()
            .min_by(|a, b| ratio_cmp(**a, **b))
            .expect("nonempty tail");
        DensityReport {
            ratios,
            upper,
            lower,
            tail_start,
        }
    }
}

/// Evaluates |E and F_n| / |F_n| for n = 1..=up_to, exactly.
///
/// The graded sequences (AdditiveNat, IntBoxes, FareyBoxes) are prefix
/// chains of one canonical enumeration, so a single linear scan with prefix
/// counts covers every index. FromThick recomputes its set per index.
pub fn density(expr: &SetExpr, spec: &FolnerSpec, up_to: u64) -> Result<DensityReport> {
    if up_to == 0 {
        return Err(Error::Config("index bound must be at least 1".into()));
    }
    let ring = spec.ring();
    let ev = ExprEvaluator::new(expr, ring)?;
    match spec {
        FolnerSpec::AdditiveNat | FolnerSpec::IntBoxes | FolnerSpec::FareyBoxes => {
            let shape = match spec {
                FolnerSpec::AdditiveNat => Shape::NatBox(up_to),
                FolnerSpec::IntBoxes => Shape::IntBox(up_to),
                _ => Shape::Farey(up_to),
            };
            let window = Window::new(WindowSpec::new(ring, shape)?)?;
            // Per-index sizes of the graded prefixes.
            let sizes: Vec<u64> = match spec {
                FolnerSpec::AdditiveNat => (1..=up_to).collect(),
                FolnerSpec::IntBoxes => (1..=up_to).map(|n| 2 * n + 1).collect(),
                _ => {
                    let mut sizes = Vec::with_capacity(up_to as usize);
                    let mut count = 0u64;
                    let mut h = 1u64;
                    for e in window.iter() {
                        while !e.height_le(h) {
                            sizes.push(count);
                            h += 1;
                        }
                        count += 1;
                    }
                    while sizes.len() < up_to as usize {
                        sizes.push(count);
                    }
                    sizes
                }
            };
            // Member prefix counts along the enumeration.
            let chunk = 1usize << 14;
            let size = window.size();
            let n_chunks = size.div_ceil(chunk);
            let chunk_counts: Vec<Result<Vec<u64>>> = exec::map_indexed(n_chunks, |c| {
                let start = c * chunk;
                let end = (start + chunk).min(size);
                let mut acc = 0u64;
                let mut counts = Vec::with_capacity(end - start);
                for i in start..end {
                    if ev.contains(&window.element_at(i))? {
                        acc += 1;
                    }
                    counts.push(acc);
                }
                Ok(counts)
            });
            let mut prefix = Vec::with_capacity(size);
            let mut base = 0u64;
            for counts in chunk_counts {
                let counts = counts?;
                let last = counts.last().copied().unwrap_or(0);
                prefix.extend(counts.into_iter().map(|c| c + base));
                base += last;
            }
            let ratios: Vec<(u64, u64)> = sizes
                .iter()
                .map(|&s| {
                    let count = if s == 0 { 0 } else { prefix[(s - 1) as usize] };
                    (count, s.max(1))
                })
                .collect();
            Ok(DensityReport::from_ratios(ratios))
        }
        FolnerSpec::FromThick { .. } => {
            let mut ratios = Vec::with_capacity(up_to as usize);
            for n in 1..=up_to {
                let f_n = folner_set(spec, n)?;
                let mut count = 0u64;
                for e in &f_n {
                    if ev.contains(e)? {
                        count += 1;
                    }
                }
                ratios.push((count, f_n.len() as u64));
            }
            Ok(DensityReport::from_ratios(ratios))
        }
    }
}

/// All nonempty subset sums, deduplicated and sorted by value.
pub fn finite_sums(z: &[RingElement]) -> Result<Vec<RingElement>> {
    const MAX_GENERATORS: usize = 24;
    if z.is_empty() {
        return Err(Error::Config("the generator list must be nonempty".into()));
    }
    if z.len() > MAX_GENERATORS {
        return Err(Error::SizeLimit {
            size: z.len(),
            limit: MAX_GENERATORS,
        });
    }
    let ring = z[0].ring();
    for e in z {
        ensure_same_ring(ring, e.ring())?;
    }
    let mut sums: HashSet<RingElement> = HashSet::new();
    for e in z {
        let mut next: Vec<RingElement> = sums.iter().map(|s| s.add(e)).collect();
        next.push(e.clone());
        sums.extend(next);
    }
    let mut out: Vec<RingElement> = sums.into_iter().collect();
    out.sort_by(|a, b| a.display_cmp(b));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::windows::parse_set_expr;
    use num_traits::ToPrimitive;

    fn z_window(shape: Shape) -> Arc<Window> {
        Window::new(WindowSpec::new(RingId::Integers, shape).unwrap()).unwrap()
    }

    fn set_on(w: &Arc<Window>, text: &str) -> WindowSet {
        WindowSet::from_expr(&parse_set_expr(text).unwrap(), w).unwrap()
    }

    #[test]
    fn odds_certificate_with_two_shifts() {
        let w = z_window(Shape::NatBox(1000));
        let odds = set_on(&w, "mod(1,2)");
        let maps = [
            AffineMap::from_i64(RingId::Integers, 1, 0).unwrap(),
            AffineMap::from_i64(RingId::Integers, 1, 1).unwrap(),
        ];
        // Probe a smaller box so x+1 never escapes the set's universe.
        let probe = z_window(Shape::NatBox(999));
        let cert = check_syndetic_certificate(&odds, &maps, &probe).unwrap();
        assert!(cert.full());
        assert_eq!(cert.out_of_window, 0);
    }

    #[test]
    fn greedy_search_finds_odds_certificate() {
        let w = z_window(Shape::NatBox(1000));
        let odds = set_on(&w, "mod(1,2)");
        let probe = z_window(Shape::NatBox(900));
        let found = find_syndetic_certificate(&odds, &probe, 1, 2).unwrap();
        match found {
            CertificateSearch::Found(cert) => {
                assert_eq!(cert.maps.len(), 2);
                assert!(cert.full());
            }
            CertificateSearch::Exhausted(c) => {
                panic!("expected a full certificate, got coverage {}/{}", c.covered, c.probe_size)
            }
        }
    }

    #[test]
    fn residue_class_certificate() {
        let w = z_window(Shape::NatBox(999));
        let thirds = set_on(&w, "mod(0,3)");
        let probe = z_window(Shape::NatBox(300));
        let found = find_syndetic_certificate(&thirds, &probe, 2, 3).unwrap();
        let cert = found.certificate();
        assert!(cert.full());
        assert!(cert.maps.len() <= 3);
    }

    #[test]
    fn sparse_set_exhausts() {
        let w = z_window(Shape::NatBox(10_000));
        let sparse = set_on(&w, "thickbad(3)");
        let probe = z_window(Shape::NatBox(2000));
        let found = find_syndetic_certificate(&sparse, &probe, 3, 8).unwrap();
        match found {
            CertificateSearch::Exhausted(cert) => {
                assert!(!cert.full());
                assert!(!cert.uncovered_sample.is_empty());
            }
            CertificateSearch::Found(_) => panic!("thickbad(3) must not be coverable at height 3"),
        }
    }

    #[test]
    fn thick_witness_on_full_window() {
        let w = z_window(Shape::NatBox(50));
        let full = WindowSet::full(w.clone());
        let maps = [
            AffineMap::from_i64(RingId::Integers, 1, 0).unwrap(),
            AffineMap::from_i64(RingId::Integers, 2, 1).unwrap(),
        ];
        match find_thick_witness(&full, &maps, &w).unwrap() {
            ThickWitness::Found { point, .. } => {
                assert_eq!(point.to_string(), "1");
            }
            ThickWitness::Absent { .. } => panic!("full window is thick"),
        }
    }

    #[test]
    fn mutual_exclusion_on_window() {
        // A full syndeticity certificate for S forbids a thickness witness
        // for the complement under the same family.
        let w = z_window(Shape::NatBox(500));
        let odds = set_on(&w, "mod(1,2)");
        let probe = z_window(Shape::NatBox(400));
        let maps = [
            AffineMap::from_i64(RingId::Integers, 1, 0).unwrap(),
            AffineMap::from_i64(RingId::Integers, 1, 1).unwrap(),
        ];
        let cert = check_syndetic_certificate(&odds, &maps, &probe).unwrap();
        assert!(cert.full());
        let evens = odds.complement();
        match find_thick_witness(&evens, &maps, &probe).unwrap() {
            ThickWitness::Absent { .. } => {}
            ThickWitness::Found { point, .. } => {
                panic!("complement cannot be thick for the certificate family, got {point}")
            }
        }
    }

    #[test]
    fn folner_sets_and_defect() {
        let f10 = folner_set(&FolnerSpec::AdditiveNat, 10).unwrap();
        assert_eq!(f10.len(), 10);
        assert_eq!(f10[0].to_string(), "1");
        assert_eq!(f10[9].to_string(), "10");
        // Shift defect: |F_N and (F_N + 1)| / |F_N| = (N-1)/N.
        let shifted: HashSet<String> = f10
            .iter()
            .map(|e| e.add(&RingElement::one(RingId::Integers)).to_string())
            .collect();
        let common = f10
            .iter()
            .filter(|e| shifted.contains(&e.to_string()))
            .count();
        assert_eq!(common, 9);
    }

    #[test]
    fn from_thick_full_window_picks_least_point() {
        let spec = WindowSpec::new(RingId::Rationals, Shape::Farey(30)).unwrap();
        let w = Window::new(spec).unwrap();
        let full = Arc::new(WindowSet::full(w.clone()));
        let spec = FolnerSpec::FromThick {
            thick: full,
            probe: w,
        };
        let f2 = folner_set(&spec, 2).unwrap();
        // Maps of height <= 2 over Q: u in Farey(2) nonzero, v in Farey(2);
        // all images must be distinct and inside the window.
        let maps = maps_up_to_height(RingId::Rationals, 2);
        assert_eq!(f2.len(), maps.len());
        let distinct: HashSet<String> = f2.iter().map(|e| e.to_string()).collect();
        assert_eq!(distinct.len(), f2.len());
    }

    #[test]
    fn density_of_evens_converges() {
        let expr = parse_set_expr("mod(0,2)").unwrap();
        let report = density(&expr, &FolnerSpec::AdditiveNat, 1000).unwrap();
        let (c, n) = report.final_ratio();
        assert_eq!((c, n), (500, 1000));
        // |est - 1/2| <= 1/1000 at the end.
        let diff = (2 * c as i128 - n as i128).abs();
        assert!(diff <= 2);
        assert!(ratio_cmp(report.upper, (0, 1)) == std::cmp::Ordering::Greater);
        assert!(ratio_cmp(report.lower, report.upper) != std::cmp::Ordering::Greater);
    }

    #[test]
    fn density_identities_exact() {
        // Window-level identities: image counting under an injective map,
        // union subadditivity, complement additivity.
        let w = z_window(Shape::IntBox(200));
        let e1 = set_on(&w, "mod(0,3)");
        let e2 = set_on(&w, "mod(1,4)");
        let f = set_on(&w, "interval(-50,50)");
        let g = AffineMap::from_i64(RingId::Integers, 3, 7).unwrap();
        // |theta_g E and theta_g F| = |E and F| via exact element images.
        let img = |s: &WindowSet| -> HashSet<String> {
            s.members().map(|x| g.apply(&x).unwrap().to_string()).collect()
        };
        let lhs = img(&e1).intersection(&img(&f)).count();
        let rhs = e1.intersection(&f).unwrap().card();
        assert_eq!(lhs, rhs);
        // Subadditivity, exact.
        let union = e1.union(&e2).unwrap();
        assert!(union.intersection(&f).unwrap().card()
            <= e1.intersection(&f).unwrap().card() + e2.intersection(&f).unwrap().card());
        // Complement additivity, exact.
        assert_eq!(
            e1.intersection(&f).unwrap().card() + e1.complement().intersection(&f).unwrap().card(),
            f.card()
        );
    }

    #[test]
    fn finite_sums_examples() {
        let z = |vals: &[i64]| -> Vec<RingElement> {
            vals.iter()
                .map(|&v| RingElement::from_i64(RingId::Integers, v))
                .collect()
        };
        let as_ints = |v: Vec<RingElement>| -> Vec<i64> {
            v.iter()
                .map(|e| e.as_int().unwrap().to_i64().unwrap())
                .collect()
        };
        assert_eq!(as_ints(finite_sums(&z(&[1, 2, 4])).unwrap()), vec![1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(as_ints(finite_sums(&z(&[1, 1])).unwrap()), vec![1, 2]);
        assert_eq!(
            as_ints(finite_sums(&z(&[3, 5, 7])).unwrap()),
            vec![3, 5, 7, 8, 10, 12, 15]
        );
        // Monotone in the generator set.
        let small = finite_sums(&z(&[2, 9])).unwrap();
        let large = finite_sums(&z(&[2, 9, 30])).unwrap();
        for s in &small {
            assert!(large.contains(s));
        }
        // Size limit.
        let too_many: Vec<RingElement> = (1..=25)
            .map(|v| RingElement::from_i64(RingId::Integers, v))
            .collect();
        assert!(matches!(
            finite_sums(&too_many),
            Err(Error::SizeLimit { .. })
        ));
    }
}

//! Run-configuration dispatch: every CLI subcommand is a serializable
//! `Command`, runs through one `run` entry point, and produces a
//! schema-versioned `RunReport` with exact rationals and big integers
//! rendered as decimal strings.
//!
//! A report is reproducible from its embedded config alone: all searches
//! are deterministic, merges are order-independent, and the thread count
//! affects wall time only. The `wall_ms` field is the single exception and
//! is excluded from any byte-comparison.

use crate::affine::AffineMap;
use crate::constructions::{build_example45, build_thickbad, Block, BlockSet};
use crate::error::{Error, Result};
use crate::finite_models::{
    build_add_semigroup, build_affine_semigroup, build_mul_semigroup, return_sets, Threshold,
};
use crate::largeness::{
    check_syndetic_certificate_exact, density, find_syndetic_certificate_exact,
    find_thick_witness_exact, finite_sums, CertificateSearch, DensityReport, FolnerSpec,
    SyndeticCertificate, ThickWitness,
};
use crate::patterns::{
    coloring_is_pattern_free, find_monochromatic_with_pool, minimal_ramsey_window,
    multsyndetic_pattern_check, sumproduct_in_set, Coloring, PatternConfig, PatternKind,
    RamseyOutcome, WitnessList,
};
use crate::rings::{ideal_index, lid_probe, non_amenability_witness, IndexResult, RingElement, RingId};
use crate::windows::{parse_set_expr, ExprEvaluator, Shape, Window, WindowSet, WindowSpec};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ColoringFile {
    pub ring: String,
    pub window: String,
    pub r: u8,
    pub colors: Vec<u8>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    RingInfo {
        ring: String,
    },
    RingIndex {
        ring: String,
        x: String,
    },
    RingWitness {
        ring: String,
        x: String,
        window: String,
    },
    RingProbe {
        ring: String,
        samples: Vec<String>,
        window: String,
    },
    Construct {
        name: String,
        blocks: u32,
    },
    VerifyPattern {
        name: String,
        blocks: u32,
        pattern: String,
        window: String,
        #[serde(default)]
        min_value: Option<i64>,
    },
    CertifySyndetic {
        ring: String,
        set: String,
        window: String,
        height: u64,
        max_maps: usize,
        /// When present, the family is checked instead of searched.
        #[serde(default)]
        maps: Option<Vec<String>>,
    },
    WitnessThick {
        ring: String,
        set: String,
        window: String,
        maps: Vec<String>,
    },
    Density {
        set: String,
        folner: String,
        up_to: u64,
        #[serde(default)]
        ring: Option<String>,
        #[serde(default)]
        thick_set: Option<String>,
        #[serde(default)]
        thick_window: Option<String>,
    },
    SearchPattern {
        pattern: String,
        #[serde(default)]
        ring: Option<String>,
        #[serde(default)]
        window: Option<String>,
        #[serde(default)]
        set: Option<String>,
        #[serde(default)]
        coloring: Option<ColoringFile>,
        #[serde(default)]
        subring_window: Option<String>,
        max_witnesses: usize,
        #[serde(default)]
        min_value: Option<i64>,
    },
    SearchMultSyndetic {
        ring: String,
        set: String,
        window: String,
        divisors: Vec<String>,
        probe_window: String,
        max_witnesses: usize,
        #[serde(default)]
        relaxed: bool,
    },
    RamseyMinimalN {
        pattern: String,
        colors: u8,
        max_n: u64,
    },
    SemigroupAnalyze {
        modulus: u64,
        /// affine | affine-units | mul | add
        which: String,
    },
    ReturnSets {
        modulus: u64,
        sets: Vec<Vec<u64>>,
        #[serde(default)]
        delta: Option<String>,
        #[serde(default)]
        epsilon: Option<String>,
    },
    FiniteSums {
        ring: String,
        elements: Vec<String>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    /// 0 means the library default worker pool.
    #[serde(default)]
    pub threads: usize,
    /// Reserved for randomized property sampling; echoed for repeatability.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub config: RunConfig,
    pub result: Value,
    pub counters: BTreeMap<String, u64>,
    pub wall_ms: u64,
}

impl RunReport {
    /// The report without its wall-time field, for byte comparisons.
    pub fn deterministic_view(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("wall_ms");
        v
    }
}

pub fn run(config: &RunConfig) -> Result<RunReport> {
    let started = std::time::Instant::now();
    #[cfg(feature = "parallel")]
    let (result, counters) = {
        if config.threads > 0 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(config.threads)
                .build()
                .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
            pool.install(|| dispatch(config))?
        } else {
            dispatch(config)?
        }
    };
    #[cfg(not(feature = "parallel"))]
    let (result, counters) = dispatch(config)?;
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        tool: "affray",
        tool_version: env!("CARGO_PKG_VERSION"),
        config: config.clone(),
        result,
        counters,
        wall_ms: started.elapsed().as_millis() as u64,
    })
}

type Outcome = (Value, BTreeMap<String, u64>);

fn parse_window(ring: RingId, text: &str) -> Result<Arc<Window>> {
    let shape: Shape = text.parse()?;
    Window::new(WindowSpec::new(ring, shape)?)
}

fn parse_maps(ring: RingId, maps: &[String]) -> Result<Vec<AffineMap>> {
    maps.iter().map(|m| AffineMap::parse(ring, m)).collect()
}

fn parse_fraction(text: &str) -> Result<(u64, u64)> {
    let bad = || Error::Config(format!("cannot parse {text:?} as a fraction"));
    if let Some((p, q)) = text.split_once('/') {
        return Ok((p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let digits = frac.len() as u32;
        if digits > 18 {
            return Err(bad());
        }
        let den = 10u64.pow(digits);
        let int_part: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac_part: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        return Ok((int_part * den + frac_part, den));
    }
    Ok((text.parse().map_err(|_| bad())?, 1))
}

fn elem_str(e: &RingElement) -> Value {
    Value::String(e.to_string())
}

fn ratio_str(num: u64, den: u64) -> String {
    let g = gcd(num, den);
    format!("{}/{}", num / g, den / g)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

fn certificate_json(c: &SyndeticCertificate) -> Value {
    json!({
        "maps": c.maps.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "coverage": ratio_str(c.covered, c.probe_size),
        "covered": c.covered,
        "probe_size": c.probe_size,
        "full": c.full(),
        "uncovered_sample": c.uncovered_sample.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "out_of_window": c.out_of_window,
        "verdict": if c.full() { "window-verified syndetic" } else { "not covered on this window" },
    })
}

fn witnesses_json(list: &WitnessList) -> Value {
    json!({
        "count": list.count(),
        "truncated": list.truncated,
        "skipped_out_of_window": list.skipped_out_of_window,
        "witnesses": list.witnesses.iter().map(|w| json!({
            "x": w.x.to_string(),
            "y": w.y.to_string(),
            "configuration": w.configuration.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "color": w.color,
            "route": w.route,
        })).collect::<Vec<_>>(),
    })
}

fn block_json(set: &BlockSet) -> Value {
    json!({
        "construction": set.name(),
        "ring": set.ring().to_string(),
        "blocks": set.blocks().iter().map(|b| {
            let body = match &b.block {
                Block::Ap { step, count } => json!({
                    "kind": "ap",
                    "step": step.to_string(),
                    "count": count,
                }),
                Block::Interval { lo, hi } => json!({
                    "kind": "interval",
                    "lo": lo.to_string(),
                    "hi": hi.to_string(),
                }),
                Block::Points { elements } => json!({
                    "kind": "points",
                    "elements": elements.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                }),
            };
            json!({
                "index": b.index,
                "label": b.label,
                "block": body,
                "min": b.min().to_string(),
                "max": b.max().to_string(),
            })
        }).collect::<Vec<_>>(),
    })
}

fn density_json(r: &DensityReport, up_to: u64) -> Value {
    // The full series can be huge; sample it deterministically for JSON.
    let stride = (r.ratios.len() / 1000).max(1);
    let series: Vec<Value> = r
        .ratios
        .iter()
        .enumerate()
        .filter(|(i, _)| (i + 1) % stride == 0 || *i + 1 == r.ratios.len())
        .map(|(i, (c, s))| json!({"n": i + 1, "count": c, "size": s, "ratio": ratio_str(*c, *s)}))
        .collect();
    let (fc, fs) = r.final_ratio();
    json!({
        "up_to": up_to,
        "final_ratio": ratio_str(fc, fs),
        "upper_tail": ratio_str(r.upper.0, r.upper.1),
        "lower_tail": ratio_str(r.lower.0, r.lower.1),
        "tail_start": r.tail_start + 1,
        "series_stride": stride,
        "series": series,
    })
}

fn pattern_config(
    pattern: &str,
    ring: RingId,
    min_value: Option<i64>,
) -> Result<PatternConfig> {
    let kind = PatternKind::parse_name(pattern)?;
    let mut config = PatternConfig::defaults(kind, ring);
    if let Some(v) = min_value {
        config = config.with_min_value(RingElement::from_i64(ring, v));
    }
    Ok(config)
}

fn dispatch(config: &RunConfig) -> Result<Outcome> {
    let budget = config.budget.unwrap_or(DEFAULT_BUDGET);
    let mut counters: BTreeMap<String, u64> = BTreeMap::new();
    let result = match &config.command {
        Command::RingInfo { ring } => {
            let ring: RingId = ring.parse()?;
            json!({
                "ring": ring.to_string(),
                "is_field": ring.is_field(),
                "is_lid": ring.is_lid(),
                "is_integral_domain": ring.is_integral_domain(),
                "is_finite": ring.is_finite(),
                "integral_subring": ring.integral_subring().map(|r| r.to_string()),
            })
        }
        Command::RingIndex { ring, x } => {
            let ring: RingId = ring.parse()?;
            let x = RingElement::parse(ring, x)?;
            match ideal_index(ring, &x)? {
                IndexResult::Finite { index, reps } => json!({
                    "x": x.to_string(),
                    "index": index.to_string(),
                    "reps": reps.map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
                }),
                IndexResult::Infinite { witness } => json!({
                    "x": x.to_string(),
                    "index": "infinite",
                    "witness": witness.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                }),
            }
        }
        Command::RingWitness { ring, x, window } => {
            let ring: RingId = ring.parse()?;
            let x = RingElement::parse(ring, x)?;
            let probe = parse_window(ring, window)?;
            let a = non_amenability_witness(ring, &x, &probe)?;
            counters.insert("probe_size".into(), probe.size() as u64);
            json!({
                "x": x.to_string(),
                "witness": a.to_string(),
                "meaning": format!("the shift by {a} of the ideal ({x}) is disjoint from it"),
            })
        }
        Command::RingProbe { ring, samples, window } => {
            let ring: RingId = ring.parse()?;
            let samples: Vec<RingElement> = samples
                .iter()
                .map(|s| RingElement::parse(ring, s))
                .collect::<Result<_>>()?;
            let probe = parse_window(ring, window)?;
            let report = lid_probe(ring, &samples, &probe)?;
            json!({
                "all_pass": report.all_pass(),
                "entries": report.entries.iter().map(|e| json!({
                    "sample": e.sample.to_string(),
                    "index": match &e.index {
                        IndexResult::Finite { index, .. } => index.to_string(),
                        IndexResult::Infinite { .. } => "infinite".to_string(),
                    },
                    "pass": e.pass,
                    "checked": e.checked,
                })).collect::<Vec<_>>(),
            })
        }
        Command::Construct { name, blocks } => {
            let set = build_named(name, *blocks)?;
            block_json(&set)
        }
        Command::VerifyPattern {
            name,
            blocks,
            pattern,
            window,
            min_value,
        } => {
            let set = build_named(name, *blocks)?;
            let window = parse_window(set.ring(), window)?;
            let config = pattern_config(pattern, set.ring(), *min_value)?;
            let report = crate::constructions::verify_no_pattern(&set, &config, &window)?;
            counters.insert("checked".into(), report.checked);
            match report.outcome {
                crate::constructions::VerifyOutcome::Ok => json!({
                    "verdict": "ok",
                    "pattern": pattern,
                    "window": window.spec().to_string(),
                }),
                crate::constructions::VerifyOutcome::Counterexample { x, y, configuration } => json!({
                    "verdict": "counterexample",
                    "x": x.to_string(),
                    "y": y.map(|e| e.to_string()),
                    "configuration": configuration.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                }),
            }
        }
        Command::CertifySyndetic {
            ring,
            set,
            window,
            height,
            max_maps,
            maps,
        } => {
            let ring: RingId = ring.parse()?;
            let expr = parse_set_expr(set)?;
            let ev = ExprEvaluator::new(&expr, ring)?;
            let probe = parse_window(ring, window)?;
            counters.insert("probe_size".into(), probe.size() as u64);
            match maps {
                Some(maps) => {
                    let maps = parse_maps(ring, maps)?;
                    let cert = check_syndetic_certificate_exact(&ev, &maps, &probe)?;
                    certificate_json(&cert)
                }
                None => {
                    let found = find_syndetic_certificate_exact(&ev, &probe, *height, *max_maps)?;
                    let mut v = certificate_json(found.certificate());
                    v.as_object_mut().unwrap().insert(
                        "search".into(),
                        Value::String(
                            match found {
                                CertificateSearch::Found(_) => "found",
                                CertificateSearch::Exhausted(_) => "exhausted",
                            }
                            .into(),
                        ),
                    );
                    v
                }
            }
        }
        Command::WitnessThick {
            ring,
            set,
            window,
            maps,
        } => {
            let ring: RingId = ring.parse()?;
            let expr = parse_set_expr(set)?;
            let ev = ExprEvaluator::new(&expr, ring)?;
            let probe = parse_window(ring, window)?;
            let maps = parse_maps(ring, maps)?;
            match find_thick_witness_exact(&ev, &maps, &probe)? {
                ThickWitness::Found { point, images } => json!({
                    "verdict": "found",
                    "point": point.to_string(),
                    "images": images.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                }),
                ThickWitness::Absent { probe } => json!({
                    "verdict": "absent",
                    "probe": probe.to_string(),
                }),
            }
        }
        Command::Density {
            set,
            folner,
            up_to,
            ring,
            thick_set,
            thick_window,
        } => {
            let expr = parse_set_expr(set)?;
            let spec = match folner.as_str() {
                "nat" => FolnerSpec::AdditiveNat,
                "intbox" => FolnerSpec::IntBoxes,
                "farey" => FolnerSpec::FareyBoxes,
                "fromthick" => {
                    let ring: RingId = ring
                        .as_deref()
                        .ok_or_else(|| Error::Config("fromthick needs a ring".into()))?
                        .parse()?;
                    let thick_expr = parse_set_expr(
                        thick_set
                            .as_deref()
                            .ok_or_else(|| Error::Config("fromthick needs --thick-set".into()))?,
                    )?;
                    let probe = parse_window(
                        ring,
                        thick_window
                            .as_deref()
                            .ok_or_else(|| Error::Config("fromthick needs --thick-window".into()))?,
                    )?;
                    let thick = Arc::new(WindowSet::from_expr(&thick_expr, &probe)?);
                    FolnerSpec::FromThick { thick, probe }
                }
                other => {
                    return Err(Error::Config(format!(
                        "unknown residence sequence {other:?} (nat, intbox, farey, fromthick)"
                    )))
                }
            };
            let report = density(&expr, &spec, *up_to)?;
            density_json(&report, *up_to)
        }
        Command::SearchPattern {
            pattern,
            ring,
            window,
            set,
            coloring,
            subring_window,
            max_witnesses,
            min_value,
        } => {
            let list = match (set, coloring) {
                (Some(set), None) => {
                    let ring: RingId = ring
                        .as_deref()
                        .ok_or_else(|| Error::Config("set search needs a ring".into()))?
                        .parse()?;
                    let w = parse_window(
                        ring,
                        window
                            .as_deref()
                            .ok_or_else(|| Error::Config("set search needs a window".into()))?,
                    )?;
                    let expr = parse_set_expr(set)?;
                    let s = WindowSet::from_expr(&expr, &w)?;
                    let config = pattern_config(pattern, ring, *min_value)?;
                    let pool = subring_pool_from(&config, subring_window.as_deref(), &w)?;
                    sumproduct_in_set(&s, &config, *max_witnesses, pool.as_deref())?
                }
                (None, Some(file)) => {
                    let ring: RingId = file.ring.parse()?;
                    let w = parse_window(ring, &file.window)?;
                    let c = Coloring::new(w.clone(), file.colors.clone(), file.r)?;
                    let config = pattern_config(pattern, ring, *min_value)?;
                    let pool = subring_pool_from(&config, subring_window.as_deref(), &w)?;
                    find_monochromatic_with_pool(&c, &config, *max_witnesses, pool.as_deref())?
                }
                _ => {
                    return Err(Error::Config(
                        "exactly one of --set and --coloring is required".into(),
                    ))
                }
            };
            counters.insert("witnesses".into(), list.count() as u64);
            counters.insert("skipped_out_of_window".into(), list.skipped_out_of_window);
            witnesses_json(&list)
        }
        Command::SearchMultSyndetic {
            ring,
            set,
            window,
            divisors,
            probe_window,
            max_witnesses,
            relaxed,
        } => {
            let ring: RingId = ring.parse()?;
            let w = parse_window(ring, window)?;
            let s = WindowSet::from_expr(&parse_set_expr(set)?, &w)?;
            let divisors: Vec<RingElement> = divisors
                .iter()
                .map(|d| RingElement::parse(ring, d))
                .collect::<Result<_>>()?;
            let probe = parse_window(ring, probe_window)?;
            let report = multsyndetic_pattern_check(&s, &divisors, &probe, *max_witnesses, *relaxed)?;
            json!({
                "cover": "verified",
                "truncated": report.truncated,
                "witnesses": report.witnesses.iter().map(|w| json!({
                    "a": w.a.to_string(),
                    "b": w.b.to_string(),
                    "n": w.n.to_string(),
                    "pair": [w.pair[0].to_string(), w.pair[1].to_string()],
                })).collect::<Vec<_>>(),
            })
        }
        Command::RamseyMinimalN {
            pattern,
            colors,
            max_n,
        } => {
            let config = pattern_config(pattern, RingId::Integers, None)?;
            let report = minimal_ramsey_window(&config, *colors, *max_n, budget)?;
            counters.insert("nodes".into(), report.nodes);
            match &report.outcome {
                RamseyOutcome::FoundAt { n, evidence } => {
                    let verified = coloring_is_pattern_free(&config, *colors, evidence)?;
                    json!({
                        "verdict": "found",
                        "n": n,
                        "evidence_window": n - 1,
                        "evidence": evidence,
                        "evidence_pattern_free": verified,
                    })
                }
                RamseyOutcome::ExhaustedAt { n, evidence } => json!({
                    "verdict": "exhausted",
                    "n": n,
                    "evidence": evidence,
                    "evidence_pattern_free": coloring_is_pattern_free(&config, *colors, evidence)?,
                }),
            }
        }
        Command::SemigroupAnalyze { modulus, which } => {
            let sg = match which.as_str() {
                "affine" => build_affine_semigroup(*modulus, false)?,
                "affine-units" => build_affine_semigroup(*modulus, true)?,
                "mul" => build_mul_semigroup(*modulus)?,
                "add" => build_add_semigroup(*modulus)?,
                other => {
                    return Err(Error::Config(format!(
                        "unknown semigroup {other:?} (affine, affine-units, mul, add)"
                    )))
                }
            };
            let idem = sg.idempotents();
            let ideals = sg.minimal_left_ideals();
            counters.insert("elements".into(), sg.len() as u64);
            json!({
                "modulus": modulus,
                "which": which,
                "elements": sg.len(),
                "group": sg.is_group(),
                "idempotents": idem.iter().map(|&i| sg.labels()[i].clone()).collect::<Vec<_>>(),
                "minimal_left_ideals": ideals.minimal_ideals.iter().map(|ideal| {
                    ideal.iter().map(|&i| sg.labels()[i].clone()).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
                "kernel": ideals.kernel.iter().map(|&i| sg.labels()[i].clone()).collect::<Vec<_>>(),
                "minimal_idempotents": ideals.minimal_idempotents.iter().map(|&i| sg.labels()[i].clone()).collect::<Vec<_>>(),
            })
        }
        Command::ReturnSets {
            modulus,
            sets,
            delta,
            epsilon,
        } => {
            let threshold = match (delta, epsilon) {
                (Some(d), None) => {
                    let (p, q) = parse_fraction(d)?;
                    Threshold::Relative(p, q)
                }
                (None, Some(e)) => {
                    let (p, q) = parse_fraction(e)?;
                    Threshold::Absolute(p, q)
                }
                _ => {
                    return Err(Error::Config(
                        "exactly one of --delta and --epsilon is required".into(),
                    ))
                }
            };
            let report = return_sets(*modulus, sets, threshold)?;
            json!({
                "modulus": report.modulus,
                "threshold": report.threshold,
                "composite_warning": report.composite_warning,
                "empty_sets": report.empty_sets,
                "per_set": report.per_set.iter().map(|sp| json!({
                    "set": sp.set,
                    "measure": ratio_str(sp.set.len() as u64, report.modulus),
                    "profile": sp.profile.iter().enumerate().map(|(ui, c)| json!({
                        "u": ui as u64 + 1,
                        "measure": ratio_str(*c, report.modulus),
                    })).collect::<Vec<_>>(),
                    "return_set": sp.return_set,
                })).collect::<Vec<_>>(),
                "intersection": report.intersection,
            })
        }
        Command::FiniteSums { ring, elements } => {
            let ring: RingId = ring.parse()?;
            let elements: Vec<RingElement> = elements
                .iter()
                .map(|s| RingElement::parse(ring, s))
                .collect::<Result<_>>()?;
            let sums = finite_sums(&elements)?;
            counters.insert("sums".into(), sums.len() as u64);
            json!({
                "generators": elements.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "sums": sums.iter().map(elem_str).collect::<Vec<_>>(),
            })
        }
    };
    Ok((result, counters))
}

fn build_named(name: &str, blocks: u32) -> Result<BlockSet> {
    match name {
        "thickbad" => build_thickbad(blocks),
        "example45" => build_example45(blocks),
        other => Err(Error::UnknownConstruction(other.to_string())),
    }
}

fn subring_pool_from(
    config: &PatternConfig,
    subring_window: Option<&str>,
    default_window: &Arc<Window>,
) -> Result<Option<Vec<RingElement>>> {
    if config.kind != PatternKind::RestrictedPair {
        return Ok(None);
    }
    let w = match subring_window {
        Some(text) => parse_window(config.ring, text)?,
        None => default_window.clone(),
    };
    Ok(Some(w.iter().filter(|e| e.is_integral()).collect()))
}

/// Tabular CSV export; defined for the density series and the return-set
/// measure profiles.
pub fn to_csv(report: &RunReport) -> Result<String> {
    match &report.config.command {
        Command::Density { .. } => {
            let mut out = String::from("n,count,size,ratio\n");
            let series = report.result["series"]
                .as_array()
                .ok_or_else(|| Error::Invariant("density report lacks a series".into()))?;
            for row in series {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    row["n"], row["count"], row["size"],
                    row["ratio"].as_str().unwrap_or_default(),
                ));
            }
            Ok(out)
        }
        Command::ReturnSets { .. } => {
            let mut out = String::from("set_index,u,measure\n");
            let per_set = report.result["per_set"]
                .as_array()
                .ok_or_else(|| Error::Invariant("return-set report lacks profiles".into()))?;
            for (si, sp) in per_set.iter().enumerate() {
                for row in sp["profile"].as_array().into_iter().flatten() {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        si, row["u"],
                        row["measure"].as_str().unwrap_or_default(),
                    ));
                }
            }
            Ok(out)
        }
        _ => Err(Error::Config(
            "csv export is defined only for density series and return-set profiles".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cmd(command: Command) -> RunReport {
        run(&RunConfig {
            command,
            threads: 1,
            seed: 0,
            budget: None,
        })
        .unwrap()
    }

    #[test]
    fn construct_thickbad_two_blocks() {
        let report = run_cmd(Command::Construct {
            name: "thickbad".into(),
            blocks: 2,
        });
        let blocks = report.result["blocks"].as_array().unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0]["block"]["kind"], "ap");
        assert_eq!(blocks[0]["block"]["step"], "5");
        assert_eq!(blocks[1]["block"]["kind"], "interval");
        assert_eq!(blocks[1]["block"]["lo"], "26");
        assert_eq!(blocks[1]["block"]["hi"], "47");
    }

    #[test]
    fn ramsey_schur_found_at_5() {
        let report = run_cmd(Command::RamseyMinimalN {
            pattern: "schur".into(),
            colors: 2,
            max_n: 10,
        });
        assert_eq!(report.result["verdict"], "found");
        assert_eq!(report.result["n"], 5);
        assert_eq!(report.result["evidence_pattern_free"], true);
    }

    #[test]
    fn density_of_evens_final_ratio() {
        let report = run_cmd(Command::Density {
            set: "mod(0,2)".into(),
            folner: "nat".into(),
            up_to: 1000,
            ring: None,
            thick_set: None,
            thick_window: None,
        });
        assert_eq!(report.result["final_ratio"], "1/2");
        let csv = to_csv(&report).unwrap();
        assert!(csv.starts_with("n,count,size,ratio\n"));
        assert!(csv.lines().last().unwrap().starts_with("1000,500,1000"));
    }

    #[test]
    fn identical_configs_reproduce_identical_payloads() {
        let config = RunConfig {
            command: Command::CertifySyndetic {
                ring: "z".into(),
                set: "mod(1,2)".into(),
                window: "natbox:400".into(),
                height: 1,
                max_maps: 2,
                maps: None,
            },
            threads: 1,
            seed: 7,
            budget: None,
        };
        let a = run(&config).unwrap();
        let b = run(&config).unwrap();
        assert_eq!(a.deterministic_view(), b.deterministic_view());
        let bytes_a = serde_json::to_vec(&a.deterministic_view()).unwrap();
        let bytes_b = serde_json::to_vec(&b.deterministic_view()).unwrap();
        assert_eq!(bytes_a, bytes_b);
    }

    #[test]
    fn config_roundtrips_through_json() {
        let config = RunConfig {
            command: Command::ReturnSets {
                modulus: 7,
                sets: vec![vec![0, 1, 2], vec![3, 4, 5]],
                delta: Some("1/2".into()),
                epsilon: None,
            },
            threads: 0,
            seed: 0,
            budget: None,
        };
        let text = serde_json::to_string(&config).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, config);
        let report = run(&back).unwrap();
        assert_eq!(report.result["modulus"], 7);
    }

    #[test]
    fn fraction_parsing() {
        assert_eq!(parse_fraction("1/2").unwrap(), (1, 2));
        assert_eq!(parse_fraction("0.5").unwrap(), (5, 10));
        assert_eq!(parse_fraction("2").unwrap(), (2, 1));
        assert_eq!(parse_fraction("0.25").unwrap(), (25, 100));
        assert!(parse_fraction("x").is_err());
    }

    #[test]
    fn thread_count_does_not_change_results() {
        for threads in [1usize, 4] {
            let report = run(&RunConfig {
                command: Command::WitnessThick {
                    ring: "z".into(),
                    set: "compl(thickbad(3))".into(),
                    window: "natbox:5000".into(),
                    maps: vec![
                        "(1)*x+(0)".into(),
                        "(1)*x+(1)".into(),
                        "(2)*x+(0)".into(),
                        "(3)*x+(5)".into(),
                    ],
                },
                threads,
                seed: 0,
                budget: None,
            })
            .unwrap();
            assert_eq!(report.result["verdict"], "found");
            assert_eq!(report.result["point"], "1");
        }
    }
}

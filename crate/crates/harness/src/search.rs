//! Exhaustive and seeded counterexample search.
//!
//! Work is split into fixed chunks of consecutive indices (enumeration
//! positions or trial numbers). Chunks may run on any number of threads;
//! their partial summaries are merged in index order, so the result does
//! not depend on scheduling.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use promrep_core::functors::to_representation;
use promrep_core::{FinSet, PowersetCap, Prom, Rel, Representation};
use rand::Rng;
use rayon::prelude::*;

use crate::check::{check_enumerated, check_law, Failure, Notes, Verdict};
use crate::enumerate::{
    all_preorders, all_prom_morphisms, all_proms, all_representations, enumerate_rep_morphisms, function_at, function_count,
    relation_count, shapes,
};
use crate::error::HarnessError;
use crate::gen::{self, carrier, child_seed, Rng64};
use crate::instance::Instance;
use crate::laws::{InstanceKind, LawId};
use crate::witness::{Exhaustive, Witness, WitnessSeed};

/// Largest exhaustive search space, counted in instances.
pub const MAX_EXHAUSTIVE_INSTANCES: u64 = 1 << 23;
/// Carrier bound per axis for seeded mode when none is given.
pub const SEEDED_DEFAULT_SIZE: usize = 3;
const CHUNK: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Seeded,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Seeded => "seeded",
        })
    }
}

impl FromStr for Mode {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "seeded" => Ok(Mode::Seeded),
            other => Err(HarnessError::Bounds(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub law: LawId,
    pub mode: Mode,
    /// Carrier bound per axis; a single value applies to every axis and an
    /// empty list selects the default.
    pub max_size: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub jobs: usize,
    pub cap: PowersetCap,
}

impl SearchConfig {
    pub fn new(law: LawId, mode: Mode) -> Self {
        SearchConfig {
            law,
            mode,
            max_size: Vec::new(),
            trials: 100,
            seed: 0,
            jobs: 1,
            cap: PowersetCap::DEFAULT,
        }
    }

    pub fn max_size(mut self, sizes: &[usize]) -> Self {
        self.max_size = sizes.to_vec();
        self
    }

    pub fn trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    /// The per-axis bounds this configuration resolves to.
    pub fn bounds(&self) -> Result<Vec<usize>, HarnessError> {
        let axes = self.law.info().axes;
        match self.max_size.as_slice() {
            [] => {
                let default = match self.mode {
                    Mode::Exhaustive => self.law.info().exhaustive_default,
                    Mode::Seeded => SEEDED_DEFAULT_SIZE,
                };
                Ok(vec![default; axes.len()])
            }
            [one] => Ok(vec![*one; axes.len()]),
            many if many.len() == axes.len() => Ok(many.to_vec()),
            many => Err(HarnessError::Bounds(format!(
                "`{}` takes {} sizes ({}), got {}",
                self.law,
                axes.len(),
                axes.join(","),
                many.len()
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Summary {
    pub law: LawId,
    pub mode: Mode,
    pub max_size: Vec<usize>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub space: Option<u64>,
    pub checked: u64,
    /// Instances whose every carrier has its maximal size.
    pub at_max_size: u64,
    pub notes: Notes,
    pub witnesses: u64,
    pub witness: Option<Witness>,
}

impl Summary {
    pub fn holds(&self) -> bool {
        self.witnesses == 0
    }

    fn fields(&self) -> Vec<(String, String)> {
        let sizes: Vec<String> = self.max_size.iter().map(usize::to_string).collect();
        let mut out = vec![
            ("law".to_string(), self.law.to_string()),
            ("mode".to_string(), self.mode.to_string()),
            ("max_size".to_string(), sizes.join(",")),
        ];
        if let Some(seed) = self.seed {
            out.push(("seed".into(), seed.to_string()));
        }
        if let Some(trials) = self.trials {
            out.push(("trials".into(), trials.to_string()));
        }
        if let Some(space) = self.space {
            out.push(("space".into(), space.to_string()));
        }
        out.push(("checked".into(), self.checked.to_string()));
        out.push(("at_max_size".into(), self.at_max_size.to_string()));
        for (key, value) in &self.notes {
            out.push((format!("note.{key}"), value.to_string()));
        }
        out.push(("witnesses".into(), self.witnesses.to_string()));
        out.push(("status".into(), if self.holds() { "holds" } else { "refuted" }.to_string()));
        out
    }

    /// One `key: value` line per field.
    pub fn render(&self) -> String {
        self.fields().into_iter().fold(String::new(), |mut s, (k, v)| {
            let _ = writeln!(s, "{k}: {v}");
            s
        })
    }

    /// The same fields as an aligned table.
    pub fn render_pretty(&self) -> String {
        let fields = self.fields();
        let width = fields.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let rule = format!("{}\n", "-".repeat(width + 2 + fields.iter().map(|(_, v)| v.len()).max().unwrap_or(0)));
        let mut s = rule.clone();
        for (k, v) in fields {
            let _ = writeln!(s, "{k:<width$}  {v}");
        }
        s.push_str(&rule);
        s
    }
}

struct Found {
    seed: WitnessSeed,
    instance: Instance,
    failure: Failure,
}

#[derive(Default)]
struct Partial {
    checked: u64,
    at_max: u64,
    notes: Notes,
    witnesses: u64,
    first: Option<Found>,
    error: Option<HarnessError>,
}

impl Partial {
    fn merge(mut self, later: Partial) -> Partial {
        self.checked += later.checked;
        self.at_max += later.at_max;
        for (k, v) in later.notes {
            *self.notes.entry(k).or_insert(0) += v;
        }
        self.witnesses += later.witnesses;
        if self.first.is_none() {
            self.first = later.first;
        }
        if self.error.is_none() {
            self.error = later.error;
        }
        self
    }
}

fn is_at_max(instance: &Instance, bounds: &[usize]) -> bool {
    instance.carrier_sizes().iter().zip(bounds.iter().cycle()).all(|(n, m)| n == m)
}

type Checker = fn(LawId, &Instance, PowersetCap) -> Result<Verdict, HarnessError>;

/// Runs `produce` on every index in `0..total`, merging in index order.
fn run<P>(config: &SearchConfig, bounds: &[usize], total: u64, check: Checker, produce: P) -> Result<Partial, HarnessError>
where
    P: Fn(u64) -> Result<(Instance, WitnessSeed), HarnessError> + Sync,
{
    let chunks = total.div_ceil(CHUNK);
    let law = config.law;
    let cap = config.cap;
    let evaluate_chunk = |c: u64| {
        let mut part = Partial::default();
        for index in c * CHUNK..((c + 1) * CHUNK).min(total) {
            let result = produce(index).and_then(|(instance, seed)| {
                let verdict = check(law, &instance, cap)?;
                Ok((instance, seed, verdict))
            });
            match result {
                Ok((instance, seed, verdict)) => {
                    part.checked += 1;
                    part.at_max += u64::from(is_at_max(&instance, bounds));
                    for (k, v) in verdict.notes {
                        *part.notes.entry(k).or_insert(0) += v;
                    }
                    if let Some(failure) = verdict.failure {
                        part.witnesses += 1;
                        if part.first.is_none() {
                            part.first = Some(Found {
                                seed,
                                instance,
                                failure,
                            });
                        }
                    }
                }
                Err(e) => {
                    part.error = Some(e);
                    break;
                }
            }
        }
        part
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Bounds(format!("cannot start worker pool: {e}")))?;
    let parts: Vec<Partial> = pool.install(|| (0..chunks).into_par_iter().map(evaluate_chunk).collect());
    let merged = parts.into_iter().fold(Partial::default(), Partial::merge);
    if let Some(e) = merged.error {
        return Err(e);
    }
    Ok(merged)
}

/// Runs a search and summarises it.
pub fn search(config: &SearchConfig) -> Result<Summary, HarnessError> {
    let bounds = config.bounds()?;
    let (space, partial) = match config.mode {
        Mode::Exhaustive => {
            let space = Space::build(config.law.kind(), &bounds)?;
            let partial = run(config, &bounds, space.total, check_enumerated, |i| Ok((space.get(i), WitnessSeed::Exhaustive(Exhaustive::Exhaustive))))?;
            (Some(space.total), partial)
        }
        Mode::Seeded => {
            let kind = config.law.kind();
            let partial = run(config, &bounds, config.trials, check_law, |i| {
                let seed = child_seed(config.seed, i);
                Ok((seeded_instance(kind, &mut gen::rng(seed), &bounds), WitnessSeed::Trial(seed)))
            })?;
            (None, partial)
        }
    };
    let witness = partial
        .first
        .map(|found| Witness::new(config.law, found.seed, found.failure, &found.instance))
        .transpose()?;
    Ok(Summary {
        law: config.law,
        mode: config.mode,
        max_size: bounds,
        seed: (config.mode == Mode::Seeded).then_some(config.seed),
        trials: (config.mode == Mode::Seeded).then_some(config.trials),
        space,
        checked: partial.checked,
        at_max_size: partial.at_max,
        notes: partial.notes,
        witnesses: partial.witnesses,
        witness,
    })
}

fn size(rng: &mut Rng64, bound: usize) -> usize {
    if bound == 0 {
        0
    } else {
        rng.random_range(1..=bound)
    }
}

/// Draws one instance of `kind` with carriers of size `1..=bound` per
/// axis.
pub fn seeded_instance(kind: InstanceKind, rng: &mut Rng64, bounds: &[usize]) -> Instance {
    let sizes: Vec<usize> = bounds.iter().map(|&b| size(rng, b)).collect();
    let set = |role: &str, k: usize| carrier(role, sizes[k]);
    let max = bounds.iter().copied().max().unwrap_or(0);
    match kind {
        InstanceKind::Triple => {
            let (a, b, c) = (set("A", 0), set("B", 1), set("C", 2));
            Instance::Triple {
                x: gen::random_rel(rng, &a, &b, 0.5),
                y: gen::random_rel(rng, &b, &c, 0.5),
                z: gen::random_rel(rng, &a, &c, 0.5),
            }
        }
        InstanceKind::Modular => {
            let (c, a, b, p, q) = (set("C", 0), set("A", 1), set("B", 2), set("P", 3), set("Q", 4));
            let (a, b) = (nonempty_for(&a, &p), nonempty_for(&b, &q));
            Instance::Modular {
                x: gen::random_rel(rng, &c, &a, 0.5),
                y: gen::random_rel(rng, &c, &b, 0.5),
                f: gen::random_fn(rng, &p, &a),
                g: gen::random_fn(rng, &q, &b),
            }
        }
        InstanceKind::Endorelation => {
            let a = set("A", 0);
            if rng.random_bool(0.5) {
                Instance::Endorelation(gen::random_rel(rng, &a, &a, 0.5))
            } else {
                Instance::Endorelation(gen::preorder_on(rng, &a).rel().clone())
            }
        }
        InstanceKind::Relation => Instance::Relation(gen::random_rel(rng, &set("A", 0), &set("B", 1), 0.5)),
        InstanceKind::Carrier => Instance::Carrier(set("M", 0)),
        InstanceKind::Prom => Instance::Prom(Arc::new(prom(rng, &sizes[..2], ["A", "B"]))),
        InstanceKind::PromMorphism => {
            let p = Arc::new(prom(rng, &sizes[..2], ["A", "B"]));
            let target_bound = bounds[2].max(bounds[3]);
            Instance::PromMorphism(gen::prom_morphism_from(rng, &p, ["C", "D"], target_bound))
        }
        InstanceKind::PromChain => {
            let p = Arc::new(prom(rng, &sizes, ["A", "B"]));
            let m1 = gen::prom_morphism_from(rng, &p, ["C", "D"], max);
            let m2 = gen::prom_morphism_from(rng, m1.dst(), ["E", "F"], max);
            Instance::PromChain(m1, m2)
        }
        InstanceKind::Representation => {
            Instance::Representation(Arc::new(gen::representation_on(rng, &set("M", 0), &set("S", 1))))
        }
        InstanceKind::RepMorphism => {
            let r = Arc::new(gen::representation_on(rng, &set("M", 0), &set("S", 1)));
            Instance::RepMorphism(gen::rep_morphism_from(rng, &r, ["N", "T"], bounds[2].max(bounds[3])))
        }
        InstanceKind::RepChain => {
            let r = Arc::new(gen::representation_on(rng, &set("M", 0), &set("S", 1)));
            let m1 = gen::rep_morphism_from(rng, &r, ["N", "T"], max);
            let m2 = gen::rep_morphism_from(rng, m1.dst(), ["K", "U"], max);
            Instance::RepChain(m1, m2)
        }
        InstanceKind::HomSets => {
            let p = Arc::new(prom(rng, &sizes[..2], ["A", "B"]));
            let r = if rng.random_bool(0.5) {
                Arc::new(gen::representation_on(rng, &set("M", 2), &set("S", 3)))
            } else {
                // A target reached from R(p) keeps the hom-set non-empty.
                let rp = Arc::new(to_representation(&p));
                gen::rep_morphism_from(rng, &rp, ["M", "S"], bounds[2].max(bounds[3])).dst().clone()
            };
            Instance::HomSets(p, r)
        }
        InstanceKind::Saturation => {
            let (m, b) = (set("M", 0), set("B", 1));
            Instance::Saturation {
                tau: gen::random_rel(rng, &m, &b, 0.5),
                y: gen::preorder_on(rng, &b),
            }
        }
        InstanceKind::Satisfaction => {
            let (m, s) = (set("M", 0), set("S", 1));
            let ord = if rng.random_bool(0.5) {
                gen::preorder_on(rng, &s).rel().clone()
            } else {
                gen::random_rel(rng, &s, &s, 0.5)
            };
            Instance::Satisfaction {
                sat: gen::random_rel(rng, &m, &s, 0.5),
                ord,
            }
        }
    }
}

fn nonempty_for(target: &Arc<FinSet>, source: &Arc<FinSet>) -> Arc<FinSet> {
    if target.is_empty() && !source.is_empty() {
        let name = target.name().trim_end_matches(char::is_numeric).to_string();
        carrier(&name, 1)
    } else {
        target.clone()
    }
}

fn prom(rng: &mut Rng64, sizes: &[usize], roles: [&str; 2]) -> Prom {
    let a = carrier(roles[0], sizes[0]);
    let b = carrier(roles[1], sizes[1]);
    gen::prom_on(rng, &a, &nonempty_for(&b, &a))
}

type Decoder = Arc<dyn Fn(u64) -> Instance + Send + Sync>;

struct Block {
    len: u64,
    decode: Decoder,
}

/// An indexed, size-ordered enumeration of instances.
pub struct Space {
    blocks: Vec<Block>,
    starts: Vec<u64>,
    pub total: u64,
}

fn too_large(total: u64) -> HarnessError {
    HarnessError::Bounds(format!(
        "exhaustive space has at least {total} instances, above the limit of {MAX_EXHAUSTIVE_INSTANCES}"
    ))
}

impl Space {
    fn push(&mut self, len: u64, decode: Decoder) -> Result<(), HarnessError> {
        if len == 0 {
            return Ok(());
        }
        self.starts.push(self.total);
        self.total = self.total.checked_add(len).ok_or_else(|| too_large(u64::MAX))?;
        if self.total > MAX_EXHAUSTIVE_INSTANCES {
            return Err(too_large(self.total));
        }
        self.blocks.push(Block { len, decode });
        Ok(())
    }

    fn push_list(&mut self, items: Vec<Instance>) -> Result<(), HarnessError> {
        let items = Arc::new(items);
        self.push(items.len() as u64, Arc::new(move |i| items[i as usize].clone()))
    }

    pub fn get(&self, index: u64) -> Instance {
        let b = self.starts.partition_point(|&s| s <= index) - 1;
        let block = &self.blocks[b];
        debug_assert!(index - self.starts[b] < block.len);
        (block.decode)(index - self.starts[b])
    }

    /// Enumerates every instance of `kind` with carriers within `bounds`.
    pub fn build(kind: InstanceKind, bounds: &[usize]) -> Result<Space, HarnessError> {
        let mut space = Space {
            blocks: Vec::new(),
            starts: Vec::new(),
            total: 0,
        };
        match kind {
            InstanceKind::Triple => {
                for s in shapes(bounds) {
                    let (a, b, c) = (carrier("A", s[0]), carrier("B", s[1]), carrier("C", s[2]));
                    let (nx, ny, nz) = (relation_count(&a, &b)?, relation_count(&b, &c)?, relation_count(&a, &c)?);
                    let len = nx.checked_mul(ny).and_then(|v| v.checked_mul(nz)).ok_or_else(|| too_large(u64::MAX))?;
                    if len > MAX_EXHAUSTIVE_INSTANCES {
                        return Err(too_large(len));
                    }
                    space.push(
                        len,
                        Arc::new(move |i| Instance::Triple {
                            x: Rel::from_mask(&a, &b, i % nx),
                            y: Rel::from_mask(&b, &c, i / nx % ny),
                            z: Rel::from_mask(&a, &c, i / nx / ny),
                        }),
                    )?;
                }
            }
            InstanceKind::Modular => {
                for s in shapes(bounds) {
                    let (c, a, b, p, q) = (carrier("C", s[0]), carrier("A", s[1]), carrier("B", s[2]), carrier("P", s[3]), carrier("Q", s[4]));
                    let (nx, ny) = (relation_count(&c, &a)?, relation_count(&c, &b)?);
                    let (nf, ng) = (function_count(&p, &a), function_count(&q, &b));
                    let len = [nx, ny, nf, ng].iter().try_fold(1u64, |acc, &n| acc.checked_mul(n)).ok_or_else(|| too_large(u64::MAX))?;
                    if len > MAX_EXHAUSTIVE_INSTANCES {
                        return Err(too_large(len));
                    }
                    space.push(
                        len,
                        Arc::new(move |i| Instance::Modular {
                            x: Rel::from_mask(&c, &a, i % nx),
                            y: Rel::from_mask(&c, &b, i / nx % ny),
                            f: function_at(&p, &a, i / nx / ny % nf),
                            g: function_at(&q, &b, i / nx / ny / nf),
                        }),
                    )?;
                }
            }
            InstanceKind::Endorelation => {
                for s in shapes(bounds) {
                    let a = carrier("A", s[0]);
                    space.push(relation_count(&a, &a)?, Arc::new(move |i| Instance::Endorelation(Rel::from_mask(&a, &a, i))))?;
                }
            }
            InstanceKind::Relation => {
                for s in shapes(bounds) {
                    let (a, b) = (carrier("A", s[0]), carrier("B", s[1]));
                    space.push(relation_count(&a, &b)?, Arc::new(move |i| Instance::Relation(Rel::from_mask(&a, &b, i))))?;
                }
            }
            InstanceKind::Carrier => {
                for s in shapes(bounds) {
                    space.push_list(vec![Instance::Carrier(carrier("M", s[0]))])?;
                }
            }
            InstanceKind::Prom => {
                for s in shapes(bounds) {
                    space.push_list(proms_of(&s, ["A", "B"])?.into_iter().map(Instance::Prom).collect())?;
                }
            }
            InstanceKind::Representation => {
                for s in shapes(bounds) {
                    space.push_list(reps_of(&s, ["M", "S"])?.into_iter().map(Instance::Representation).collect())?;
                }
            }
            InstanceKind::PromMorphism => {
                for s in shapes(bounds) {
                    let sources = proms_of(&s[..2], ["A", "B"])?;
                    let targets = proms_of(&s[2..], ["C", "D"])?;
                    guard(sources.len() * targets.len())?;
                    let mut items = Vec::new();
                    for p in &sources {
                        for q in &targets {
                            items.extend(all_prom_morphisms(p, q)?.into_iter().map(Instance::PromMorphism));
                        }
                    }
                    space.push_list(items)?;
                }
            }
            InstanceKind::RepMorphism => {
                for s in shapes(bounds) {
                    let sources = reps_of(&s[..2], ["M", "S"])?;
                    let targets = reps_of(&s[2..], ["N", "T"])?;
                    guard(sources.len() * targets.len())?;
                    let mut items = Vec::new();
                    for r in &sources {
                        for r2 in &targets {
                            items.extend(enumerate_rep_morphisms(r, r2)?.into_iter().map(Instance::RepMorphism));
                        }
                    }
                    space.push_list(items)?;
                }
            }
            InstanceKind::PromChain => {
                let layers = [["A", "B"], ["C", "D"], ["E", "F"]].map(|roles| all_shapes(bounds, |s| proms_of(s, roles)));
                let [l0, l1, l2] = layers;
                let (l0, l1, l2) = (l0?, l1?, l2?);
                guard(l1.len() * (l0.len() + l2.len()))?;
                let chains = chain_blocks(&l0, &l1, &l2, all_prom_morphisms)?;
                for (ins, outs) in chains {
                    push_chain(&mut space, ins, outs, Instance::PromChain)?;
                }
            }
            InstanceKind::RepChain => {
                let layers = [["M", "S"], ["N", "T"], ["K", "U"]].map(|roles| all_shapes(bounds, |s| reps_of(s, roles)));
                let [l0, l1, l2] = layers;
                let (l0, l1, l2) = (l0?, l1?, l2?);
                guard(l1.len() * (l0.len() + l2.len()))?;
                let chains = chain_blocks(&l0, &l1, &l2, enumerate_rep_morphisms)?;
                for (ins, outs) in chains {
                    push_chain(&mut space, ins, outs, Instance::RepChain)?;
                }
            }
            InstanceKind::HomSets => {
                for s in shapes(bounds) {
                    let ps = proms_of(&s[..2], ["A", "B"])?;
                    let rs = reps_of(&s[2..], ["M", "S"])?;
                    let n = rs.len() as u64;
                    let (ps, rs) = (Arc::new(ps), Arc::new(rs));
                    space.push(
                        ps.len() as u64 * n,
                        Arc::new(move |i| Instance::HomSets(ps[(i / n) as usize].clone(), rs[(i % n) as usize].clone())),
                    )?;
                }
            }
            InstanceKind::Saturation => {
                for s in shapes(bounds) {
                    let (m, b) = (carrier("M", s[0]), carrier("B", s[1]));
                    let ys = Arc::new(all_preorders(&b)?);
                    let nt = relation_count(&m, &b)?;
                    space.push(
                        nt * ys.len() as u64,
                        Arc::new(move |i| Instance::Saturation {
                            tau: Rel::from_mask(&m, &b, i % nt),
                            y: ys[(i / nt) as usize].clone(),
                        }),
                    )?;
                }
            }
            InstanceKind::Satisfaction => {
                for s in shapes(bounds) {
                    let (m, st) = (carrier("M", s[0]), carrier("S", s[1]));
                    let (ns, no) = (relation_count(&m, &st)?, relation_count(&st, &st)?);
                    space.push(
                        ns * no,
                        Arc::new(move |i| Instance::Satisfaction {
                            sat: Rel::from_mask(&m, &st, i % ns),
                            ord: Rel::from_mask(&st, &st, i / ns),
                        }),
                    )?;
                }
            }
        }
        Ok(space)
    }
}

/// Rejects morphism enumerations whose endpoint pairs alone would exceed
/// the instance limit.
fn guard(pairs: usize) -> Result<(), HarnessError> {
    if pairs as u64 > MAX_EXHAUSTIVE_INSTANCES {
        return Err(too_large(pairs as u64));
    }
    Ok(())
}

fn proms_of(sizes: &[usize], roles: [&str; 2]) -> Result<Vec<Arc<Prom>>, HarnessError> {
    all_proms(&carrier(roles[0], sizes[0]), &carrier(roles[1], sizes[1]))
}

fn reps_of(sizes: &[usize], roles: [&str; 2]) -> Result<Vec<Arc<Representation>>, HarnessError> {
    all_representations(&carrier(roles[0], sizes[0]), &carrier(roles[1], sizes[1]))
}

fn all_shapes<T>(bounds: &[usize], build: impl Fn(&[usize]) -> Result<Vec<T>, HarnessError>) -> Result<Vec<T>, HarnessError> {
    let mut out = Vec::new();
    for s in shapes(bounds) {
        out.extend(build(&s)?);
    }
    Ok(out)
}

type ChainBlocks<M> = Vec<(Vec<M>, Vec<M>)>;

/// Groups morphisms into the incoming and outgoing lists of each middle
/// object.
fn chain_blocks<T, M>(
    first: &[T],
    middle: &[T],
    last: &[T],
    hom: impl Fn(&T, &T) -> Result<Vec<M>, HarnessError>,
) -> Result<ChainBlocks<M>, HarnessError> {
    let mut out = Vec::with_capacity(middle.len());
    for mid in middle {
        let mut ins = Vec::new();
        for src in first {
            ins.extend(hom(src, mid)?);
        }
        let mut outs = Vec::new();
        for dst in last {
            outs.extend(hom(mid, dst)?);
        }
        out.push((ins, outs));
    }
    Ok(out)
}

fn push_chain<M: Clone + Send + Sync + 'static>(
    space: &mut Space,
    ins: Vec<M>,
    outs: Vec<M>,
    wrap: fn(M, M) -> Instance,
) -> Result<(), HarnessError> {
    let n = outs.len() as u64;
    let len = (ins.len() as u64).checked_mul(n).ok_or_else(|| too_large(u64::MAX))?;
    let (ins, outs) = (Arc::new(ins), Arc::new(outs));
    space.push(len, Arc::new(move |i| wrap(ins[(i / n) as usize].clone(), outs[(i % n) as usize].clone())))
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Space").field("blocks", &self.blocks.len()).field("total", &self.total).finish()
    }
}

/// Counts per note key, for callers that only need the totals.
pub fn note(summary: &Summary, key: &str) -> u64 {
    summary.notes.get(key).copied().unwrap_or(0)
}

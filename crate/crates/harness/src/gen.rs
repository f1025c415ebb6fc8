//! Seeded generators. Every output is valid by construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use promrep_core::exactness::pullback_order;
use promrep_core::structures::preorder_closure;
use promrep_core::{FinSet, FnMap, Preorder, Prom, PromMorphism, Rel, RepMorphism, Representation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng64 = ChaCha8Rng;

/// Independent probability of each edge in random relations that seed
/// orders and satisfaction.
pub const EDGE_PROBABILITY: f64 = 0.3;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under a run seed; independent of scheduling.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

/// A carrier named after its role and size, e.g. `B3 = {b0, b1, b2}`.
pub fn carrier(role: &str, size: usize) -> Arc<FinSet> {
    FinSet::indexed(format!("{role}{size}"), &role.to_lowercase(), size)
}

pub fn random_rel(rng: &mut Rng64, src: &Arc<FinSet>, dst: &Arc<FinSet>, p: f64) -> Rel {
    Rel::from_fn(src, dst, |_, _| rng.random_bool(p))
}

/// A uniformly random function; `dst` must be non-empty unless `src` is.
pub fn random_fn(rng: &mut Rng64, src: &Arc<FinSet>, dst: &Arc<FinSet>) -> FnMap {
    FnMap::from_fn(src, dst, |_| rng.random_range(0..dst.len())).expect("images are in range")
}

fn closure(r: &Rel) -> Preorder {
    preorder_closure(r).expect("closure of a square relation")
}

pub fn preorder_on(rng: &mut Rng64, set: &Arc<FinSet>) -> Preorder {
    closure(&random_rel(rng, set, set, EDGE_PROBABILITY))
}

/// A prom over the given carriers. Half of the time `x` is the pullback
/// of `y` along `f`; otherwise it is a closed random sub-relation of it.
pub fn prom_on(rng: &mut Rng64, a: &Arc<FinSet>, b: &Arc<FinSet>) -> Prom {
    let y = preorder_on(rng, b);
    let f = random_fn(rng, a, b);
    let skeleton = Prom::new_unchecked(Preorder::discrete(a), y.clone(), f.clone()).expect("shapes agree");
    let pullback = pullback_order(&skeleton);
    let x = if rng.random_bool(0.5) {
        Preorder::new(pullback).expect("pullbacks of preorders are preorders")
    } else {
        closure(&random_rel(rng, a, a, EDGE_PROBABILITY).intersection(&pullback).expect("square"))
    };
    Prom::new(x, y, f).expect("x is contained in the pullback")
}

/// A representation whose satisfaction is `sat0 ⨾ ord` for random `sat0`.
pub fn representation_on(rng: &mut Rng64, m: &Arc<FinSet>, s: &Arc<FinSet>) -> Representation {
    let ord = preorder_on(rng, s);
    let sat = random_rel(rng, m, s, EDGE_PROBABILITY).compose(ord.rel()).expect("shapes agree");
    Representation::new(sat, ord).expect("right-saturated satisfaction is sound")
}

pub fn gen_preorder(seed: u64, size: usize) -> Preorder {
    preorder_on(&mut rng(seed), &carrier("A", size))
}

/// `size_b` is raised to 1 when `size_a > 0`, since no map into an empty
/// target exists.
pub fn gen_prom(seed: u64, size_a: usize, size_b: usize) -> Prom {
    let size_b = if size_a > 0 { size_b.max(1) } else { size_b };
    prom_on(&mut rng(seed), &carrier("A", size_a), &carrier("B", size_b))
}

pub fn gen_representation(seed: u64, size_m: usize, size_s: usize) -> Representation {
    representation_on(&mut rng(seed), &carrier("M", size_m), &carrier("S", size_s))
}

/// A prom morphism with source and target carriers of size at most
/// `bound` (at least 1).
pub fn gen_prom_morphism(seed: u64, bound: usize) -> PromMorphism {
    let bound = bound.max(1);
    let mut rng = rng(seed);
    let (na, nb) = (rng.random_range(1..=bound), rng.random_range(1..=bound));
    let p = Arc::new(prom_on(&mut rng, &carrier("A", na), &carrier("B", nb)));
    prom_morphism_from(&mut rng, &p, ["C", "D"], bound)
}

pub fn gen_rep_morphism(seed: u64, bound: usize) -> RepMorphism {
    let bound = bound.max(1);
    let mut rng = rng(seed);
    let (nm, ns) = (rng.random_range(1..=bound), rng.random_range(1..=bound));
    let r = Arc::new(representation_on(&mut rng, &carrier("M", nm), &carrier("S", ns)));
    rep_morphism_from(&mut rng, &r, ["N", "T"], bound)
}

/// Assigns each distinct key its own slot in `0..slots`, at random.
fn spread<K: Ord + Copy>(rng: &mut Rng64, keys: &[K], slots: usize) -> Vec<usize> {
    let mut classes = BTreeMap::new();
    for &k in keys {
        let next = classes.len();
        classes.entry(k).or_insert(next);
    }
    let mut order: Vec<usize> = (0..slots).collect();
    order.shuffle(rng);
    keys.iter().map(|k| order[classes[k]]).collect()
}

fn distinct<K: Ord + Copy>(keys: &[K]) -> usize {
    let mut sorted = keys.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

/// Builds a target prom and a morphism out of `p` into it.
///
/// `ψ` is random; `φ` sends sources with equal `ψ ∘ f` value to one fresh
/// element, which fixes `f'` there. The target orders are closures of the
/// pushed-forward source orders, with random extra edges that keep `f'`
/// order preserving.
pub fn prom_morphism_from(rng: &mut Rng64, p: &Arc<Prom>, roles: [&str; 2], bound: usize) -> PromMorphism {
    let b2 = carrier(roles[1], rng.random_range(1..=bound.max(1)));
    let psi = random_fn(rng, p.target(), &b2);
    let values: Vec<usize> = (0..p.source().len()).map(|a| psi.apply(p.f().apply(a))).collect();
    let needed = distinct(&values);
    let a2 = carrier(roles[0], rng.random_range(needed.max(1)..=bound.max(needed).max(1)));
    let phi_image = spread(rng, &values, a2.len());
    let phi = FnMap::new(p.source(), &a2, phi_image.clone()).expect("slots are in range");

    let mut f2: Vec<Option<usize>> = vec![None; a2.len()];
    for (a, &slot) in phi_image.iter().enumerate() {
        f2[slot] = Some(values[a]);
    }
    let f2: Vec<usize> = f2.into_iter().map(|v| v.unwrap_or_else(|| rng.random_range(0..b2.len()))).collect();
    let f2 = FnMap::new(&a2, &b2, f2).expect("images are in range");

    let pushed_y = psi.inverse_graph().compose(p.y().rel()).and_then(|r| r.compose(&psi.graph())).expect("shapes agree");
    let y2 = closure(&pushed_y.union(&random_rel(rng, &b2, &b2, EDGE_PROBABILITY)).expect("square"));
    let skeleton = Prom::new_unchecked(Preorder::discrete(&a2), y2.clone(), f2.clone()).expect("shapes agree");
    let pullback = pullback_order(&skeleton);
    let pushed_x = phi.inverse_graph().compose(p.x().rel()).and_then(|r| r.compose(&phi.graph())).expect("shapes agree");
    let extra = random_rel(rng, &a2, &a2, EDGE_PROBABILITY).intersection(&pullback).expect("square");
    let x2 = closure(&pushed_x.union(&extra).expect("square"));

    let q = Arc::new(Prom::new(x2, y2, f2).expect("target orders respect f'"));
    PromMorphism::new(p.clone(), q, phi, psi).expect("constructed to commute")
}

/// Builds a target representation and a morphism out of `r` into it.
///
/// `τ` is random; statements of `r` whose `τ ⨾ ⊨` columns agree share one
/// target statement carrying that column, and the target order is the
/// closure of the pushed-forward order. Unused target statements get
/// random columns.
pub fn rep_morphism_from(rng: &mut Rng64, r: &Arc<Representation>, roles: [&str; 2], bound: usize) -> RepMorphism {
    let m2 = carrier(roles[0], rng.random_range(1..=bound.max(1)));
    let tau = random_rel(rng, &m2, r.models(), 0.4);
    let required = tau.compose(r.sat()).expect("shapes agree");
    let columns: Vec<Vec<bool>> = (0..r.statements().len())
        .map(|s| (0..m2.len()).map(|m| required.contains(m, s)).collect())
        .collect();
    let needed = distinct(&columns.iter().collect::<Vec<_>>());
    let s2 = carrier(roles[1], rng.random_range(needed.max(1)..=bound.max(needed).max(1)));
    let keys: Vec<&Vec<bool>> = columns.iter().collect();
    let phi_image = spread(rng, &keys, s2.len());
    let phi = FnMap::new(r.statements(), &s2, phi_image.clone()).expect("slots are in range");

    let mut target: Vec<Option<&Vec<bool>>> = vec![None; s2.len()];
    for (s, &slot) in phi_image.iter().enumerate() {
        target[slot] = Some(&columns[s]);
    }
    let free: Vec<Vec<bool>> = target
        .iter()
        .map(|c| if c.is_none() { (0..m2.len()).map(|_| rng.random_bool(0.5)).collect() } else { Vec::new() })
        .collect();
    let sat2 = Rel::from_fn(&m2, &s2, |m, t| match target[t] {
        Some(column) => column[m],
        None => free[t][m],
    });
    let pushed = phi.inverse_graph().compose(r.ord().rel()).and_then(|x| x.compose(&phi.graph())).expect("shapes agree");
    let ord2 = closure(&pushed);
    let r2 = Arc::new(Representation::new(sat2, ord2).expect("pushed-forward order is sound"));
    RepMorphism::new(r.clone(), r2, phi, tau).expect("constructed to commute")
}

//! Powerset carriers with their membership relation.
//!
//! Subsets are listed in ascending bitmask order over the base order, so the
//! carrier index of a subset *is* its bitmask. Labels are the brace-enclosed,
//! comma-joined member labels (`{}`, `{m0}`, `{m0,m1}`, ...).

use std::cell::RefCell;
use std::sync::Arc;

use crate::error::Error;
use crate::rel::{same_set, FinSet, FnMap, Rel};

/// Largest base set a powerset may be built over.
///
/// Functor images square the powerset carrier (`⊆` on `2^M` has
/// `4^|M|` cells), so the cap guards against accidental blowup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowersetCap(pub usize);

impl PowersetCap {
    pub const DEFAULT: PowersetCap = PowersetCap(12);

    pub fn check(self, base: &FinSet) -> Result<(), Error> {
        if base.len() > self.0 || base.len() >= usize::BITS as usize {
            return Err(Error::PowersetCap {
                set: base.name().to_string(),
                len: base.len(),
                cap: self.0,
            });
        }
        Ok(())
    }
}

impl Default for PowersetCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Name of the powerset carrier of `base`.
pub fn powerset_name(base: &FinSet) -> String {
    format!("2^{}", base.name())
}

/// Label of the subset of `base` encoded by `mask`.
pub fn subset_label(base: &FinSet, mask: usize) -> String {
    let members: Vec<&str> = (0..base.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| base.label(i))
        .collect();
    format!("{{{}}}", members.join(","))
}

/// A base set, the carrier of all its subsets, and membership `base ⇸ 2^base`.
#[derive(Debug, Clone)]
pub struct PowersetBundle(Arc<Bundle>);

#[derive(Debug)]
struct Bundle {
    base: Arc<FinSet>,
    carrier: Arc<FinSet>,
    mem: Rel,
    inclusion: Rel,
}

const CACHE_ENTRIES: usize = 16;

thread_local! {
    /// Recently built bundles; searches rebuild the same few powersets
    /// millions of times.
    static CACHE: RefCell<Vec<PowersetBundle>> = const { RefCell::new(Vec::new()) };
}

/// Builds the powerset bundle of `base`.
pub fn powerset(base: &Arc<FinSet>, cap: PowersetCap) -> Result<PowersetBundle, Error> {
    cap.check(base)?;
    let cached = CACHE.with_borrow(|cache| {
        let hit = cache.iter().find(|b| Arc::ptr_eq(&b.0.base, base));
        hit.or_else(|| cache.iter().find(|b| *b.0.base == **base)).cloned()
    });
    if let Some(bundle) = cached {
        return Ok(bundle);
    }
    let bundle = build(base);
    CACHE.with_borrow_mut(|cache| {
        if cache.len() == CACHE_ENTRIES {
            cache.remove(0);
        }
        cache.push(bundle.clone());
    });
    Ok(bundle)
}

fn build(base: &Arc<FinSet>) -> PowersetBundle {
    let count = 1usize << base.len();
    let carrier = FinSet::new(powerset_name(base), (0..count).map(|mask| subset_label(base, mask)))
        .expect("subset labels are distinct");
    let mem = Rel::from_fn(base, &carrier, |m, mask| mask >> m & 1 == 1);
    let inclusion = mem.left_residual(&mem).expect("membership shares its source");
    PowersetBundle(Arc::new(Bundle {
        base: base.clone(),
        carrier,
        mem,
        inclusion,
    }))
}

/// The map `a ↦ {a}` into the powerset of `base`.
pub fn singleton_map(base: &Arc<FinSet>, cap: PowersetCap) -> Result<FnMap, Error> {
    Ok(powerset(base, cap)?.singleton_map())
}

/// Equality of two functions into a powerset, decided by `∈ ⨾ f^* = ∈ ⨾ g^*`.
pub fn fn_eq_into_powerset(bundle: &PowersetBundle, f: &FnMap, g: &FnMap) -> Result<bool, Error> {
    bundle.fn_eq(f, g)
}

impl PowersetBundle {
    pub fn base(&self) -> &Arc<FinSet> {
        &self.0.base
    }

    pub fn carrier(&self) -> &Arc<FinSet> {
        &self.0.carrier
    }

    /// Membership `base ⇸ 2^base`.
    pub fn mem(&self) -> &Rel {
        &self.0.mem
    }

    pub fn singleton_map(&self) -> FnMap {
        FnMap::from_fn(&self.0.base, &self.0.carrier, |a| 1 << a).expect("singletons are subsets")
    }

    /// Membership residual `∈ \ ∈`, which is the inclusion order on subsets.
    pub fn inclusion(&self) -> Rel {
        self.0.inclusion.clone()
    }

    /// `∈ ⨾ f^*` for a function `f` into this powerset: the pairs
    /// `(m, a)` with `m ∈ f(a)`.
    pub fn membership_of(&self, f: &FnMap) -> Result<Rel, Error> {
        self.0.mem.compose(&f.inverse_graph())
    }

    pub fn fn_eq(&self, f: &FnMap, g: &FnMap) -> Result<bool, Error> {
        if !same_set(f.src(), g.src()) {
            return Err(Error::CarrierMismatch {
                op: "fn_eq_into_powerset",
                expected: f.src().name().to_string(),
                found: g.src().name().to_string(),
            });
        }
        self.membership_of(f)?.equals(&self.membership_of(g)?)
    }

    /// A function `src → 2^base` from subset masks.
    pub fn map_from_masks(&self, src: &Arc<FinSet>, masks: impl IntoIterator<Item = usize>) -> Result<FnMap, Error> {
        FnMap::collect(src, &self.0.carrier, masks)
    }
}

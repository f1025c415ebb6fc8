//! The passage from proms to representations and back.
//!
//! * [`to_representation`] sends `⟨A, B, x, y, f⟩` to `⟨B, A, y ⨾ f^*, x⟩`:
//!   targets become models, sources become statements. On morphisms it is
//!   only lax: identities and composites are preserved up to a 2-cell.
//! * [`to_prom`] sends `⟨M, S, ⊨, ≤⟩` to the prom
//!   `⟨S, 2^M, ≤, ⊆, s ↦ {m | m ⊨ s}⟩` and is strictly functorial, with
//!   [`direct_image`] acting on model relations.
//!
//! Neither function validates its input; the harness checks that valid
//! inputs produce valid outputs.

use std::cell::RefCell;
use std::sync::Arc;

use crate::error::Error;
use crate::powerset::{powerset, PowersetBundle, PowersetCap};
use crate::rel::{FnMap, Rel};
use crate::structures::{Preorder, Prom, PromMorphism, RepMorphism, Representation};

/// Satisfaction of the image representation, `y ⨾ f^*`: model `b`
/// satisfies statement `a` when `b ≤ f(a)`.
pub fn to_representation(p: &Prom) -> Representation {
    let sat = p
        .y()
        .rel()
        .compose(&p.f().inverse_graph())
        .expect("prom shapes are consistent");
    Representation::new_unchecked(sat, p.x().clone()).expect("statements carry x")
}

/// `(φ, ψ) ↦ (φ, y' ⨾ ψ^*)`.
pub fn to_rep_morphism(m: &PromMorphism) -> RepMorphism {
    let src = Arc::new(to_representation(m.src()));
    let dst = Arc::new(to_representation(m.dst()));
    let tau = m
        .dst()
        .y()
        .rel()
        .compose(&m.psi().inverse_graph())
        .expect("prom morphism shapes are consistent");
    RepMorphism::new_unchecked(src, dst, m.phi().clone(), tau).expect("image shapes follow the input")
}

/// The set `{i | (i, j) ∈ rel}` as a bitmask.
fn column_mask(rel: &Rel, j: usize) -> usize {
    (0..rel.src().len()).filter(|&i| rel.contains(i, j)).fold(0, |acc, i| acc | 1 << i)
}

/// The map `s ↦ {m | m ⊨ s}` into the powerset of models.
pub fn satisfaction_map(r: &Representation, bundle: &PowersetBundle) -> FnMap {
    let sat = r.sat();
    let masks = (0..r.statements().len()).map(|s| column_mask(sat, s));
    bundle
        .map_from_masks(r.statements(), masks)
        .expect("bundle is built over the models")
}

/// The prom `⟨S, 2^M, ≤, ⊆, s ↦ {m | m ⊨ s}⟩`.
///
/// The inclusion order is computed as the membership residual `∈ \ ∈`.
pub fn to_prom(r: &Representation, cap: PowersetCap) -> Result<Prom, Error> {
    let bundle = powerset(r.models(), cap)?;
    to_prom_with(r, &bundle)
}

pub(crate) fn to_prom_with(r: &Representation, bundle: &PowersetBundle) -> Result<Prom, Error> {
    let inclusion = Preorder::new_unchecked(bundle.inclusion())?;
    let f = satisfaction_map(r, bundle);
    Prom::new_unchecked(r.ord().clone(), inclusion, f)
}

const PROM_CACHE_ENTRIES: usize = 8;

thread_local! {
    /// Images of recently mapped representations, so morphisms sharing an
    /// endpoint share its image and compose without a deep comparison.
    static PROM_CACHE: RefCell<Vec<(Arc<Representation>, Arc<Prom>)>> = const { RefCell::new(Vec::new()) };
}

fn shared_prom(r: &Arc<Representation>, bundle: &PowersetBundle) -> Result<Arc<Prom>, Error> {
    let hit = PROM_CACHE.with_borrow(|cache| cache.iter().find(|(key, _)| Arc::ptr_eq(key, r)).map(|(_, p)| p.clone()));
    if let Some(p) = hit {
        return Ok(p);
    }
    let p = Arc::new(to_prom_with(r, bundle)?);
    PROM_CACHE.with_borrow_mut(|cache| {
        if cache.len() == PROM_CACHE_ENTRIES {
            cache.remove(0);
        }
        cache.push((r.clone(), p.clone()));
    });
    Ok(p)
}

/// Direct image along the converse of `tau : M' ⇸ M`:
/// `α ↦ {b ∈ M' | ∃a ∈ α. (b, a) ∈ τ}`, a function `2^M → 2^M'`.
pub fn direct_image(tau: &Rel, cap: PowersetCap) -> Result<FnMap, Error> {
    let domain = powerset(tau.dst(), cap)?;
    let codomain = powerset(tau.src(), cap)?;
    Ok(direct_image_with(tau, &domain, &codomain))
}

pub(crate) fn direct_image_with(tau: &Rel, domain: &PowersetBundle, codomain: &PowersetBundle) -> FnMap {
    let count = domain.carrier().len();
    let mut image = vec![0usize; count];
    for alpha in 1..count {
        let low = alpha.trailing_zeros() as usize;
        image[alpha] = image[alpha & (alpha - 1)] | column_mask(tau, low);
    }
    codomain
        .map_from_masks(domain.carrier(), image)
        .expect("images are subsets of the codomain base")
}

/// `(φ, τ) ↦ (φ, direct_image(τ))`.
pub fn to_prom_morphism(m: &RepMorphism, cap: PowersetCap) -> Result<PromMorphism, Error> {
    let domain = powerset(m.src().models(), cap)?;
    let codomain = powerset(m.dst().models(), cap)?;
    let src = shared_prom(m.src(), &domain)?;
    let dst = shared_prom(m.dst(), &codomain)?;
    let psi = direct_image_with(m.tau(), &domain, &codomain);
    PromMorphism::new_unchecked(src, dst, m.phi().clone(), psi)
}

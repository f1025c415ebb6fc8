//! Exact representations and order-reflecting proms.

use crate::error::Error;
use crate::rel::Rel;
use crate::structures::{Prom, Representation};

/// Semantic entailment `⊨ \ ⊨ : S ⇸ S`: `s` entails `t` when every model of
/// `s` is a model of `t`.
pub fn entailment(r: &Representation) -> Rel {
    r.sat().left_residual(r.sat()).expect("satisfaction shares its source")
}

/// The order pulled back along `f`: `f_* ⨾ y ⨾ f^*`.
pub fn pullback_order(p: &Prom) -> Rel {
    p.f()
        .graph()
        .compose(p.y().rel())
        .and_then(|r| r.compose(&p.f().inverse_graph()))
        .expect("prom shapes are consistent")
}

/// Entailment is contained in the statement order.
pub fn is_exact(r: &Representation) -> bool {
    entailment(r).leq(r.ord().rel()).expect("both live on the statements")
}

/// The pulled-back order is contained in the source order.
pub fn is_order_reflecting(p: &Prom) -> bool {
    pullback_order(p).leq(p.x().rel()).expect("both live on the source")
}

/// Soundness phrased as `≤ ⊆ ⊨ \ ⊨`; equivalent to `⊨ ⨾ ≤ ⊆ ⊨`.
pub fn sound_by_residual(sat: &Rel, ord: &Rel) -> Result<bool, Error> {
    ord.leq(&sat.left_residual(sat)?)
}

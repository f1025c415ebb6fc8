//! Unit, counit, the two triangle identities and the hom-set Galois
//! connection between prom morphisms `p → M(R)` and representation
//! morphisms `R(p) → R`.

use std::sync::Arc;

use crate::error::Error;
use crate::functors::{to_prom_with, to_rep_morphism, to_representation};
use crate::powerset::{powerset, PowersetBundle, PowersetCap};
use crate::rel::{same_set, FnMap, Rel};
use crate::structures::{Preorder, Prom, PromMorphism, RepMorphism, Representation};

fn column_masks(rel: &Rel) -> impl Iterator<Item = usize> + '_ {
    let columns = rel.converse();
    (0..rel.dst().len())
        .map(move |b| columns.row_ones(b).fold(0usize, |acc, a| acc | 1 << a))
        .collect::<Vec<_>>()
        .into_iter()
}

/// The unit at `p`: `(id_A, b ↦ {b' | b' ≤ b})`, a prom morphism
/// `p → M(R(p))`.
pub fn unit(p: &Arc<Prom>, cap: PowersetCap) -> Result<PromMorphism, Error> {
    let bundle = powerset(p.target(), cap)?;
    let image = to_prom_with(&to_representation(p), &bundle)?;
    let down_sets = bundle.map_from_masks(p.target(), column_masks(p.y().rel()))?;
    PromMorphism::new_unchecked(p.clone(), Arc::new(image), FnMap::identity(p.source()), down_sets)
}

/// The counit at `r`: `(id_S, ∈)`, a representation morphism
/// `R(M(r)) → r` whose source satisfaction is `∈ \ ⊨`.
pub fn counit(r: &Arc<Representation>, cap: PowersetCap) -> Result<RepMorphism, Error> {
    let bundle = powerset(r.models(), cap)?;
    let source = to_representation(&to_prom_with(r, &bundle)?);
    RepMorphism::new_unchecked(
        Arc::new(source),
        r.clone(),
        FnMap::identity(r.statements()),
        bundle.mem().clone(),
    )
}

/// `∈ ⨾ (∈ \ x)` for `x : A ⇸ B`, which always gives back `x`.
pub fn mem_residual_recover(x: &Rel, cap: PowersetCap) -> Result<Rel, Error> {
    let mem = powerset(x.src(), cap)?.mem().clone();
    mem.compose(&mem.left_residual(x)?)
}

/// The triangle in representations: `ε_{R(p)} ∘ R(η_p)`, compared with the
/// identity on `R(p)`.
#[derive(Debug, Clone)]
pub struct ReprTriangle {
    pub composite: RepMorphism,
    pub identity: RepMorphism,
    /// The composite is `(id_A, y)`.
    pub matches_order: bool,
    /// `identity ⩽ composite`.
    pub dominates_identity: bool,
    /// The composite is not the identity.
    pub strict: bool,
}

pub fn triangle_repr(p: &Arc<Prom>, cap: PowersetCap) -> Result<ReprTriangle, Error> {
    let lifted = to_rep_morphism(&unit(p, cap)?);
    let rep = Arc::new(to_representation(p));
    let composite = counit(&rep, cap)?.after(&lifted)?;
    let identity = RepMorphism::identity(&rep);
    let matches_order =
        composite.phi().pointwise_eq(identity.phi())? && composite.tau().equals(p.y().rel())?;
    let dominates_identity = identity.leq(&composite)?;
    let strict = !composite.tau().equals(identity.tau())?;
    Ok(ReprTriangle {
        composite,
        identity,
        matches_order,
        dominates_identity,
        strict,
    })
}

/// The triangle in proms: `M(ε_R) ∘ η_{M(R)}`, compared with the identity
/// on `M(R)`.
#[derive(Debug, Clone)]
pub struct PomTriangle {
    /// First component of the composite, a map `S → S`.
    pub statement_map: FnMap,
    /// Second component of the composite, a map `2^M → 2^M`.
    pub subset_map: FnMap,
    /// Equality with the identity decided through membership.
    pub holds_by_membership: bool,
    /// Equality with the identity decided pointwise.
    pub holds_pointwise: bool,
}

/// Evaluates the prom triangle without materialising `2^(2^M)`.
///
/// The unit of `M(R)` sends a subset `X` to the family `{Y | Y ⊆ X}`; such a
/// family is kept as a row of `⊆˘ : 2^M ⇸ 2^M`, and the direct image along
/// the counit's membership relation is applied to that row by composing with
/// `∈˘`.
pub fn triangle_pom(r: &Arc<Representation>, cap: PowersetCap) -> Result<PomTriangle, Error> {
    let bundle = powerset(r.models(), cap)?;
    let prom = to_prom_with(r, &bundle)?;
    let counit = counit(r, cap)?;

    let families = prom.y().rel().converse();
    let union_of_family = families.compose(&counit.tau().converse())?;
    let subset_map = bundle.map_from_masks(
        bundle.carrier(),
        (0..bundle.carrier().len()).map(|x| union_of_family.row_ones(x).fold(0usize, |acc, m| acc | 1 << m)),
    )?;
    let statement_map = counit.phi().after(&FnMap::identity(r.statements()))?;

    let identity = FnMap::identity(bundle.carrier());
    let holds_by_membership =
        bundle.fn_eq(&subset_map, &identity)? && statement_map.pointwise_eq(&FnMap::identity(r.statements()))?;
    let holds_pointwise = subset_map.pointwise_eq(&identity)? && statement_map.image().iter().enumerate().all(|(i, &j)| i == j);
    Ok(PomTriangle {
        statement_map,
        subset_map,
        holds_by_membership,
        holds_pointwise,
    })
}

/// Turns a model relation `τ : M ⇸ B` into the map
/// `b ↦ {m | ∃b'. (m, b') ∈ τ ∧ b' ≤ b}`, characterised by
/// `∈ ⨾ (result)^* = τ ⨾ y`.
pub fn psi(tau: &Rel, y: &Preorder, cap: PowersetCap) -> Result<FnMap, Error> {
    let bundle = powerset(tau.src(), cap)?;
    psi_with(tau, y, &bundle)
}

fn psi_with(tau: &Rel, y: &Preorder, bundle: &PowersetBundle) -> Result<FnMap, Error> {
    let saturated = tau.compose(y.rel())?;
    bundle.map_from_masks(y.carrier(), column_masks(&saturated))
}

/// Turns a map `ψ : B → 2^M` into the relation `∈ ⨾ ψ^* : M ⇸ B`.
pub fn tee(psi: &FnMap, models: &Arc<crate::rel::FinSet>, cap: PowersetCap) -> Result<Rel, Error> {
    let bundle = powerset(models, cap)?;
    tee_with(psi, &bundle)
}

fn tee_with(psi: &FnMap, bundle: &PowersetBundle) -> Result<Rel, Error> {
    if !same_set(psi.dst(), bundle.carrier()) {
        return Err(Error::CarrierMismatch {
            op: "tee",
            expected: bundle.carrier().name().to_string(),
            found: psi.dst().name().to_string(),
        });
    }
    bundle.membership_of(psi)
}

/// Sends a valid representation morphism `R(p) → r` to the prom morphism
/// `p → M(r)` with the same statement map.
pub fn galois_lift(p: &Arc<Prom>, m: &RepMorphism, cap: PowersetCap) -> Result<PromMorphism, Error> {
    if **m.src() != to_representation(p) {
        return Err(Error::EndpointMismatch { op: "galois lift" });
    }
    m.check().map_err(Error::Invalid)?;
    let bundle = powerset(m.dst().models(), cap)?;
    let dst = to_prom_with(m.dst(), &bundle)?;
    let psi = psi_with(m.tau(), p.y(), &bundle)?;
    PromMorphism::new_unchecked(p.clone(), Arc::new(dst), m.phi().clone(), psi)
}

/// Sends a valid prom morphism `p → M(r)` to the representation morphism
/// `R(p) → r` with the same statement map.
pub fn galois_lower(r: &Arc<Representation>, m: &PromMorphism, cap: PowersetCap) -> Result<RepMorphism, Error> {
    let bundle = powerset(r.models(), cap)?;
    if **m.dst() != to_prom_with(r, &bundle)? {
        return Err(Error::EndpointMismatch { op: "galois lower" });
    }
    m.check().map_err(Error::Invalid)?;
    let tau = tee_with(m.psi(), &bundle)?;
    RepMorphism::new_unchecked(Arc::new(to_representation(m.src())), r.clone(), m.phi().clone(), tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::to_prom;
    use crate::rel::FinSet;
    use crate::structures::is_preorder;

    const CAP: PowersetCap = PowersetCap::DEFAULT;

    fn chain2(name: &str, prefix: &str) -> Preorder {
        let s = FinSet::indexed(name, prefix, 2);
        Preorder::new(Rel::from_pairs(&s, &s, [(0, 0), (0, 1), (1, 1)]).unwrap()).unwrap()
    }

    fn chain_prom() -> Arc<Prom> {
        let a = FinSet::indexed("A", "a", 1);
        let y = chain2("B", "b");
        let f = FnMap::new(&a, y.carrier(), vec![1]).unwrap();
        Arc::new(Prom::new(Preorder::discrete(&a), y, f).unwrap())
    }

    fn preorders(n: usize) -> Vec<Preorder> {
        let s = FinSet::indexed("B", "b", n);
        (0..1u64 << (n * n))
            .map(|m| Rel::from_mask(&s, &s, m))
            .filter(|r| is_preorder(r).unwrap())
            .map(|r| Preorder::new(r).unwrap())
            .collect()
    }

    #[test]
    fn unit_on_discrete_order_is_the_singleton_map() {
        let a = FinSet::indexed("A", "a", 2);
        let b = FinSet::indexed("B", "b", 3);
        let p = Arc::new(
            Prom::new(Preorder::discrete(&a), Preorder::discrete(&b), FnMap::new(&a, &b, vec![2, 0]).unwrap()).unwrap(),
        );
        let eta = unit(&p, CAP).unwrap();
        assert_eq!(eta.psi().image(), [1, 2, 4]);
        assert!(eta.check().is_ok());
    }

    #[test]
    fn unit_on_a_chain_gives_down_sets() {
        let eta = unit(&chain_prom(), CAP).unwrap();
        let labels: Vec<&str> = (0..2).map(|b| eta.psi().dst().label(eta.psi().apply(b))).collect();
        assert_eq!(labels, ["{b0}", "{b0,b1}"]);
        assert!(eta.check().is_ok());
        assert_eq!(eta.phi(), &FnMap::identity(eta.src().source()));
    }

    #[test]
    fn counit_on_empty_satisfaction() {
        let m = FinSet::indexed("M", "m", 2);
        let s = FinSet::indexed("S", "s", 2);
        let r = Arc::new(Representation::new(Rel::empty(&m, &s), Preorder::discrete(&s)).unwrap());
        let eps = counit(&r, CAP).unwrap();
        // ∈ \ ∅ relates only the empty subset, to every statement.
        let sat = eps.src().sat();
        assert_eq!(sat.pairs().collect::<Vec<_>>(), vec![(0, 0), (0, 1)]);
        let lhs = eps.tau().compose(sat).unwrap();
        let rhs = r.sat().compose(&eps.phi().inverse_graph()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(eps.check().is_ok());
    }

    #[test]
    fn counit_source_on_single_model() {
        let m = FinSet::indexed("M", "m", 1);
        let s = FinSet::indexed("S", "s", 1);
        let r = Arc::new(Representation::new(Rel::full(&m, &s), Preorder::discrete(&s)).unwrap());
        let eps = counit(&r, CAP).unwrap();
        let sat = eps.src().sat();
        assert!(sat.contains(0, 0) && sat.contains(1, 0));
        assert!(eps.check().is_ok());
    }

    #[test]
    fn membership_residual_recovers_every_small_relation() {
        let a = FinSet::indexed("A", "a", 2);
        let b = FinSet::indexed("B", "b", 3);
        let mut seen = 0;
        for mask in 0..1u64 << 6 {
            let x = Rel::from_mask(&a, &b, mask);
            assert_eq!(mem_residual_recover(&x, CAP).unwrap(), x);
            seen += 1;
        }
        assert_eq!(seen, 64);
        assert!(mem_residual_recover(&Rel::empty(&a, &b), CAP).unwrap().is_empty());
        assert_eq!(mem_residual_recover(&Rel::full(&a, &b), CAP).unwrap(), Rel::full(&a, &b));
    }

    #[test]
    fn repr_triangle_on_discrete_and_chain_orders() {
        let a = FinSet::indexed("A", "a", 2);
        let b = FinSet::indexed("B", "b", 2);
        let discrete = Arc::new(Prom::new(Preorder::discrete(&a), Preorder::discrete(&b), FnMap::new(&a, &b, vec![0, 0]).unwrap()).unwrap());
        let t = triangle_repr(&discrete, CAP).unwrap();
        assert!(t.matches_order && t.dominates_identity && !t.strict);
        assert_eq!(t.composite, t.identity);

        let t = triangle_repr(&chain_prom(), CAP).unwrap();
        assert!(t.matches_order && t.dominates_identity && t.strict);
        assert_eq!(t.composite.tau().len(), 3);
    }

    #[test]
    fn pom_triangle_is_the_identity() {
        for n in 1..=3 {
            let m = FinSet::indexed("M", "m", n);
            let s = FinSet::indexed("S", "s", 1);
            let r = Arc::new(Representation::new(Rel::full(&m, &s), Preorder::discrete(&s)).unwrap());
            let t = triangle_pom(&r, CAP).unwrap();
            assert!(t.holds_by_membership && t.holds_pointwise, "|M| = {n}");
            assert_eq!(t.subset_map.src().len(), 1 << n);
        }
        let m = FinSet::indexed("M", "m", 2);
        let s = FinSet::indexed("S", "s", 2);
        for ord in [Preorder::discrete(&s), Preorder::chaotic(&s)] {
            let r = Arc::new(Representation::new(Rel::empty(&m, &s), ord).unwrap());
            assert!(triangle_pom(&r, CAP).unwrap().holds_pointwise);
        }
    }

    #[test]
    fn psi_examples() {
        let m = FinSet::indexed("M", "m", 1);
        let y = chain2("B", "b");
        let b = y.carrier().clone();

        let tau = Rel::from_pairs(&m, &b, [(0, 1)]).unwrap();
        let discrete = psi(&tau, &Preorder::discrete(&b), CAP).unwrap();
        assert_eq!(discrete.image(), [0, 1]);

        let empty = psi(&Rel::empty(&m, &b), &y, CAP).unwrap();
        assert_eq!(empty.image(), [0, 0]);

        let tau = Rel::from_pairs(&m, &b, [(0, 0)]).unwrap();
        let psi = psi(&tau, &y, CAP).unwrap();
        assert_eq!(psi.image(), [1, 1]);
        // ∈ ⨾ ψ^* = τ ⨾ y, and going back gives the saturation.
        let back = tee(&psi, &m, CAP).unwrap();
        assert_eq!(back, tau.compose(y.rel()).unwrap());
    }

    #[test]
    fn tee_examples() {
        let m = FinSet::indexed("M", "m", 2);
        let bundle = powerset(&m, CAP).unwrap();
        let constant = bundle.map_from_masks(&m, [0, 0]).unwrap();
        assert!(tee(&constant, &m, CAP).unwrap().is_empty());
        let single = bundle.singleton_map();
        assert_eq!(tee(&single, &m, CAP).unwrap(), Rel::identity(&m));
        let other = FinSet::indexed("N", "n", 2);
        assert!(matches!(tee(&single, &other, CAP), Err(Error::CarrierMismatch { .. })));
    }

    #[test]
    fn galois_round_trips() {
        let p = chain_prom();
        let m = FinSet::indexed("M", "m", 1);
        let s = FinSet::indexed("S", "s", 1);
        let r = Arc::new(Representation::new(Rel::full(&m, &s), Preorder::discrete(&s)).unwrap());
        let rp = Arc::new(to_representation(&p));
        let phi = FnMap::new(p.source(), &s, vec![0]).unwrap();

        // τ = {(m, b0)} is a morphism R(p) → r that is not y-saturated.
        let tau = Rel::from_pairs(&m, p.target(), [(0, 0)]).unwrap();
        let rm = RepMorphism::new(rp.clone(), r.clone(), phi.clone(), tau.clone()).unwrap();
        let lifted = galois_lift(&p, &rm, CAP).unwrap();
        assert!(lifted.check().is_ok());
        assert_eq!(lifted.phi(), rm.phi());
        let lowered = galois_lower(&r, &lifted, CAP).unwrap();
        assert!(lowered.check().is_ok());
        assert!(rm.leq(&lowered).unwrap());
        assert!(!lowered.leq(&rm).unwrap());
        assert_eq!(*lowered.tau(), Rel::full(&m, p.target()));

        // Lowering then lifting is exact.
        assert_eq!(galois_lift(&p, &lowered, CAP).unwrap(), lifted);

        // Endpoint and validity errors.
        assert!(matches!(galois_lower(&r, &PromMorphism::identity(&p), CAP), Err(Error::EndpointMismatch { .. })));
        let broken = RepMorphism::new_unchecked(rp, r.clone(), phi, Rel::empty(&m, p.target())).unwrap();
        assert!(matches!(galois_lift(&p, &broken, CAP), Err(Error::Invalid(_))));
        assert!(to_prom(&r, CAP).is_ok());
    }

    #[test]
    fn membership_residual_absorbs_transitive_orders() {
        // (∈ \ y) ⨾ y ⊆ ∈ \ y for every preorder y.
        for n in 0..=3 {
            for y in preorders(n) {
                let mem = powerset(y.carrier(), CAP).unwrap().mem().clone();
                let residual = mem.left_residual(y.rel()).unwrap();
                assert!(residual.compose(y.rel()).unwrap().leq(&residual).unwrap());
            }
        }
    }

    #[test]
    fn saturated_graphs_absorb_the_source_order() {
        // y' ⨾ ψ^* = y' ⨾ ψ^* ⨾ y whenever ψ is order preserving.
        for y in preorders(2) {
            for y2 in preorders(2) {
                let (b, b2) = (y.carrier().clone(), FinSet::indexed("C", "c", 2));
                let y2 = Preorder::new(Rel::from_fn(&b2, &b2, |i, j| y2.holds(i, j))).unwrap();
                for code in 0..4 {
                    let psi = FnMap::new(&b, &b2, vec![code % 2, code / 2]).unwrap();
                    if Prom::new(y.clone(), y2.clone(), psi.clone()).is_err() {
                        continue;
                    }
                    let lhs = y2.rel().compose(&psi.inverse_graph()).unwrap();
                    assert_eq!(lhs.compose(y.rel()).unwrap(), lhs);
                }
            }
        }
    }
}

//! Preorders, preorder morphisms ("proms"), representations and their
//! morphisms.
//!
//! Every structure has a checked constructor (`new`), which validates all
//! axioms, and a shape-only constructor (`new_unchecked`), which still
//! rejects mismatched carriers but lets axiom-violating values exist so that
//! [`Prom::check`] and friends can be exercised on negatives.
//!
//! Axiom checks evaluate the relational formulation (for instance
//! `f^* ⨾ x ⊆ y ⨾ f^*` for order preservation) and translate the first
//! offending pair back into element labels.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::rel::{same_set, FinSet, FnMap, Rel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Reflexivity,
    Transitivity,
    OrderPreservation,
    Commutation,
    Soundness,
}

impl Axiom {
    pub fn tag(self) -> &'static str {
        match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Transitivity => "transitivity",
            Axiom::OrderPreservation => "order preservation",
            Axiom::Commutation => "commutation",
            Axiom::Soundness => "soundness",
        }
    }
}

/// A violated axiom together with one witness pair of element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// Dotted path of the component the axiom was checked on, e.g. `src.x`.
    pub scope: String,
    pub pair: Option<(String, String)>,
}

impl Violation {
    fn at(axiom: Axiom, pair: (String, String)) -> Self {
        Violation {
            axiom,
            scope: String::new(),
            pair: Some(pair),
        }
    }

    fn within(mut self, scope: &str) -> Self {
        self.scope = qualify(scope, &self.scope);
        self
    }

    /// `scope.axiom`, or just the axiom tag at the top level.
    pub fn label(&self) -> String {
        qualify(&self.scope, self.axiom.tag())
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated", self.label())?;
        if let Some((a, b)) = &self.pair {
            write!(f, " at ({a}, {b})")?;
        }
        Ok(())
    }
}

fn qualify(scope: &str, name: &str) -> String {
    match (scope.is_empty(), name.is_empty()) {
        (true, _) => name.to_string(),
        (false, true) => scope.to_string(),
        (false, false) => format!("{scope}.{name}"),
    }
}

/// Outcome of one axiom in an audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: String,
    pub violation: Option<Violation>,
}

impl AxiomCheck {
    fn new(axiom: Axiom, violation: Option<Violation>) -> Self {
        AxiomCheck {
            name: axiom.tag().to_string(),
            violation,
        }
    }

    fn within(mut self, scope: &str) -> Self {
        self.name = qualify(scope, &self.name);
        self.violation = self.violation.map(|v| v.within(scope));
        self
    }

    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

fn fail(violation: Option<Violation>) -> Result<(), Violation> {
    violation.map_or(Ok(()), Err)
}

fn nested(scope: &str, checked: Result<(), Violation>) -> Result<(), Violation> {
    checked.map_err(|v| v.within(scope))
}

fn scoped(scope: &str, checks: Vec<AxiomCheck>) -> impl Iterator<Item = AxiomCheck> + '_ {
    checks.into_iter().map(move |c| c.within(scope))
}

fn mismatch(op: &'static str, expected: &Arc<FinSet>, found: &Arc<FinSet>) -> Error {
    Error::CarrierMismatch {
        op,
        expected: expected.name().to_string(),
        found: found.name().to_string(),
    }
}

fn expect_set(op: &'static str, expected: &Arc<FinSet>, found: &Arc<FinSet>) -> Result<(), Error> {
    if same_set(expected, found) {
        Ok(())
    } else {
        Err(mismatch(op, expected, found))
    }
}

// Shapes are validated at construction, so kernel calls on fields cannot fail.
const SHAPED: &str = "shape validated at construction";

/// A reflexive and transitive relation on a carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder {
    rel: Rel,
}

impl Preorder {
    pub fn new(rel: Rel) -> Result<Self, Error> {
        let p = Self::new_unchecked(rel)?;
        p.check().map_err(Error::Invalid)?;
        Ok(p)
    }

    pub fn new_unchecked(rel: Rel) -> Result<Self, Error> {
        if !rel.is_square() {
            return Err(Error::NotSquare {
                op: "preorder",
                src: rel.src().name().to_string(),
                dst: rel.dst().name().to_string(),
            });
        }
        Ok(Preorder { rel })
    }

    /// The identity order.
    pub fn discrete(set: &Arc<FinSet>) -> Self {
        Preorder { rel: Rel::identity(set) }
    }

    /// The full relation, in which every element is below every other.
    pub fn chaotic(set: &Arc<FinSet>) -> Self {
        Preorder { rel: Rel::full(set, set) }
    }

    pub fn carrier(&self) -> &Arc<FinSet> {
        self.rel.src()
    }

    pub fn rel(&self) -> &Rel {
        &self.rel
    }

    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.rel.contains(a, b)
    }

    pub fn is_discrete(&self) -> bool {
        self.rel == Rel::identity(self.carrier())
    }

    fn reflexivity(&self) -> Option<Violation> {
        let r = &self.rel;
        Rel::identity(self.carrier())
            .excess_over(r)
            .expect(SHAPED)
            .map(|p| Violation::at(Axiom::Reflexivity, r.label_pair(p)))
    }

    fn transitivity(&self) -> Option<Violation> {
        let r = &self.rel;
        r.compose(r)
            .expect(SHAPED)
            .excess_over(r)
            .expect(SHAPED)
            .map(|p| Violation::at(Axiom::Transitivity, r.label_pair(p)))
    }

    pub fn audit(&self) -> Vec<AxiomCheck> {
        vec![
            AxiomCheck::new(Axiom::Reflexivity, self.reflexivity()),
            AxiomCheck::new(Axiom::Transitivity, self.transitivity()),
        ]
    }

    /// The first violated axiom, in audit order.
    pub fn check(&self) -> Result<(), Violation> {
        fail(self.reflexivity().or_else(|| self.transitivity()))
    }
}

/// Whether a square relation is reflexive and transitive.
pub fn is_preorder(r: &Rel) -> Result<bool, Error> {
    Ok(Preorder::new_unchecked(r.clone())?.check().is_ok())
}

/// The least preorder containing `r`.
pub fn preorder_closure(r: &Rel) -> Result<Preorder, Error> {
    Ok(Preorder {
        rel: r.reflexive_transitive_closure()?,
    })
}

/// Order preservation of `f` from `(A, x)` to `(B, y)`: `f^* ⨾ x ⊆ y ⨾ f^*`.
///
/// The witness is the pair `(a, a')` of `x` whose images are unrelated in `y`.
fn order_preservation(f: &FnMap, x: &Preorder, y: &Preorder) -> Option<Violation> {
    let up = f.inverse_graph();
    let lhs = up.compose(x.rel()).expect(SHAPED);
    let rhs = y.rel().compose(&up).expect(SHAPED);
    lhs.excess_over(&rhs).expect(SHAPED).map(|(b, a2)| {
        let a1 = (0..f.src().len())
            .find(|&a| f.apply(a) == b && x.holds(a, a2))
            .expect("excess pair comes from some a with f(a) = b");
        Violation::at(Axiom::OrderPreservation, x.rel().label_pair((a1, a2)))
    })
}

fn commutation(lhs: &Rel, rhs: &Rel) -> Option<Violation> {
    lhs.first_difference(rhs)
        .expect(SHAPED)
        .map(|p| Violation::at(Axiom::Commutation, lhs.label_pair(p)))
}

/// A preorder morphism `⟨A, B, x, y, f⟩`: an order-preserving map between
/// preordered sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prom {
    x: Preorder,
    y: Preorder,
    f: FnMap,
}

impl Prom {
    pub fn new(x: Preorder, y: Preorder, f: FnMap) -> Result<Self, Error> {
        let p = Self::new_unchecked(x, y, f)?;
        p.check().map_err(Error::Invalid)?;
        Ok(p)
    }

    pub fn new_unchecked(x: Preorder, y: Preorder, f: FnMap) -> Result<Self, Error> {
        expect_set("prom", x.carrier(), f.src())?;
        expect_set("prom", y.carrier(), f.dst())?;
        Ok(Prom { x, y, f })
    }

    /// The source carrier `A`.
    pub fn source(&self) -> &Arc<FinSet> {
        self.x.carrier()
    }

    /// The target carrier `B`.
    pub fn target(&self) -> &Arc<FinSet> {
        self.y.carrier()
    }

    pub fn x(&self) -> &Preorder {
        &self.x
    }

    pub fn y(&self) -> &Preorder {
        &self.y
    }

    pub fn f(&self) -> &FnMap {
        &self.f
    }

    pub fn audit(&self) -> Vec<AxiomCheck> {
        scoped("x", self.x.audit())
            .chain(scoped("y", self.y.audit()))
            .chain([AxiomCheck::new(Axiom::OrderPreservation, order_preservation(&self.f, &self.x, &self.y))])
            .collect()
    }

    pub fn check(&self) -> Result<(), Violation> {
        nested("x", self.x.check())?;
        nested("y", self.y.check())?;
        fail(order_preservation(&self.f, &self.x, &self.y))
    }
}

/// A morphism `(φ, ψ)` between proms `⟨A,B,x,y,f⟩ → ⟨A',B',x',y',f'⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromMorphism {
    src: Arc<Prom>,
    dst: Arc<Prom>,
    phi: FnMap,
    psi: FnMap,
}

impl PromMorphism {
    pub fn new(src: Arc<Prom>, dst: Arc<Prom>, phi: FnMap, psi: FnMap) -> Result<Self, Error> {
        let m = Self::new_unchecked(src, dst, phi, psi)?;
        m.check().map_err(Error::Invalid)?;
        Ok(m)
    }

    pub fn new_unchecked(src: Arc<Prom>, dst: Arc<Prom>, phi: FnMap, psi: FnMap) -> Result<Self, Error> {
        expect_set("prom morphism", src.source(), phi.src())?;
        expect_set("prom morphism", dst.source(), phi.dst())?;
        expect_set("prom morphism", src.target(), psi.src())?;
        expect_set("prom morphism", dst.target(), psi.dst())?;
        Ok(PromMorphism { src, dst, phi, psi })
    }

    pub fn identity(p: &Arc<Prom>) -> Self {
        PromMorphism {
            src: p.clone(),
            dst: p.clone(),
            phi: FnMap::identity(p.source()),
            psi: FnMap::identity(p.target()),
        }
    }

    pub fn src(&self) -> &Arc<Prom> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<Prom> {
        &self.dst
    }

    pub fn phi(&self) -> &FnMap {
        &self.phi
    }

    pub fn psi(&self) -> &FnMap {
        &self.psi
    }

    /// `self ∘ first`, defined when `first.dst = self.src`.
    pub fn after(&self, first: &PromMorphism) -> Result<PromMorphism, Error> {
        if !(Arc::ptr_eq(&first.dst, &self.src) || first.dst == self.src) {
            return Err(Error::EndpointMismatch {
                op: "compose prom morphisms",
            });
        }
        Ok(PromMorphism {
            src: first.src.clone(),
            dst: self.dst.clone(),
            phi: self.phi.after(&first.phi)?,
            psi: self.psi.after(&first.psi)?,
        })
    }

    fn commutation(&self) -> Option<Violation> {
        let lhs = self.psi.inverse_graph().compose(&self.src.f.inverse_graph()).expect(SHAPED);
        let rhs = self.dst.f.inverse_graph().compose(&self.phi.inverse_graph()).expect(SHAPED);
        commutation(&lhs, &rhs)
    }

    pub fn audit(&self) -> Vec<AxiomCheck> {
        let (p, q) = (&*self.src, &*self.dst);
        scoped("src", p.audit())
            .chain(scoped("dst", q.audit()))
            .chain([
                AxiomCheck::new(Axiom::OrderPreservation, order_preservation(&self.phi, &p.x, &q.x)).within("phi"),
                AxiomCheck::new(Axiom::OrderPreservation, order_preservation(&self.psi, &p.y, &q.y)).within("psi"),
                AxiomCheck::new(Axiom::Commutation, self.commutation()),
            ])
            .collect()
    }

    pub fn check(&self) -> Result<(), Violation> {
        let (p, q) = (&*self.src, &*self.dst);
        nested("src", p.check())?;
        nested("dst", q.check())?;
        nested("phi", fail(order_preservation(&self.phi, &p.x, &q.x)))?;
        nested("psi", fail(order_preservation(&self.psi, &p.y, &q.y)))?;
        fail(self.commutation())
    }
}

/// A representation `⟨M, S, ⊨, ≤⟩` with sound satisfaction `⊨ ⨾ ≤ ⊆ ⊨`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    sat: Rel,
    ord: Preorder,
}

impl Representation {
    pub fn new(sat: Rel, ord: Preorder) -> Result<Self, Error> {
        let r = Self::new_unchecked(sat, ord)?;
        r.check().map_err(Error::Invalid)?;
        Ok(r)
    }

    pub fn new_unchecked(sat: Rel, ord: Preorder) -> Result<Self, Error> {
        expect_set("representation", ord.carrier(), sat.dst())?;
        Ok(Representation { sat, ord })
    }

    /// The carrier of models `M`.
    pub fn models(&self) -> &Arc<FinSet> {
        self.sat.src()
    }

    /// The carrier of statements `S`.
    pub fn statements(&self) -> &Arc<FinSet> {
        self.sat.dst()
    }

    /// Satisfaction `⊨ : M ⇸ S`.
    pub fn sat(&self) -> &Rel {
        &self.sat
    }

    pub fn ord(&self) -> &Preorder {
        &self.ord
    }

    fn soundness(&self) -> Option<Violation> {
        self.sat
            .compose(self.ord.rel())
            .expect(SHAPED)
            .excess_over(&self.sat)
            .expect(SHAPED)
            .map(|p| Violation::at(Axiom::Soundness, self.sat.label_pair(p)))
    }

    pub fn audit(&self) -> Vec<AxiomCheck> {
        scoped("ord", self.ord.audit())
            .chain([AxiomCheck::new(Axiom::Soundness, self.soundness())])
            .collect()
    }

    pub fn check(&self) -> Result<(), Violation> {
        nested("ord", self.ord.check())?;
        fail(self.soundness())
    }
}

/// A morphism `(φ, τ)` between representations `R → R'`, with
/// `φ : S → S'` and `τ : M' ⇸ M` (note the contravariant direction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMorphism {
    src: Arc<Representation>,
    dst: Arc<Representation>,
    phi: FnMap,
    tau: Rel,
}

impl RepMorphism {
    pub fn new(src: Arc<Representation>, dst: Arc<Representation>, phi: FnMap, tau: Rel) -> Result<Self, Error> {
        let m = Self::new_unchecked(src, dst, phi, tau)?;
        m.check().map_err(Error::Invalid)?;
        Ok(m)
    }

    pub fn new_unchecked(
        src: Arc<Representation>,
        dst: Arc<Representation>,
        phi: FnMap,
        tau: Rel,
    ) -> Result<Self, Error> {
        expect_set("rep morphism", src.statements(), phi.src())?;
        expect_set("rep morphism", dst.statements(), phi.dst())?;
        expect_set("rep morphism", dst.models(), tau.src())?;
        expect_set("rep morphism", src.models(), tau.dst())?;
        Ok(RepMorphism { src, dst, phi, tau })
    }

    /// The identity 1-cell `(id_S, 1_M)`.
    pub fn identity(r: &Arc<Representation>) -> Self {
        RepMorphism {
            src: r.clone(),
            dst: r.clone(),
            phi: FnMap::identity(r.statements()),
            tau: Rel::identity(r.models()),
        }
    }

    pub fn src(&self) -> &Arc<Representation> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<Representation> {
        &self.dst
    }

    pub fn phi(&self) -> &FnMap {
        &self.phi
    }

    pub fn tau(&self) -> &Rel {
        &self.tau
    }

    /// `self ∘ first`: statement maps compose, model relations compose as
    /// `τ_self ⨾ τ_first`.
    pub fn after(&self, first: &RepMorphism) -> Result<RepMorphism, Error> {
        if !(Arc::ptr_eq(&first.dst, &self.src) || first.dst == self.src) {
            return Err(Error::EndpointMismatch {
                op: "compose rep morphisms",
            });
        }
        Ok(RepMorphism {
            src: first.src.clone(),
            dst: self.dst.clone(),
            phi: self.phi.after(&first.phi)?,
            tau: self.tau.compose(&first.tau)?,
        })
    }

    /// The 2-cell order: equal statement maps and included model relations.
    ///
    /// Antisymmetric because equal `φ` plus mutual `τ` inclusion forces
    /// equal morphisms.
    pub fn leq(&self, other: &RepMorphism) -> Result<bool, Error> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::EndpointMismatch { op: "2-cell order" });
        }
        Ok(self.phi.pointwise_eq(&other.phi)? && self.tau.leq(&other.tau)?)
    }

    fn commutation(&self) -> Option<Violation> {
        let lhs = self.tau.compose(&self.src.sat).expect(SHAPED);
        let rhs = self.dst.sat.compose(&self.phi.inverse_graph()).expect(SHAPED);
        commutation(&lhs, &rhs)
    }

    pub fn audit(&self) -> Vec<AxiomCheck> {
        let (r, s) = (&*self.src, &*self.dst);
        scoped("src", r.audit())
            .chain(scoped("dst", s.audit()))
            .chain([
                AxiomCheck::new(Axiom::OrderPreservation, order_preservation(&self.phi, &r.ord, &s.ord)).within("phi"),
                AxiomCheck::new(Axiom::Commutation, self.commutation()),
            ])
            .collect()
    }

    pub fn check(&self) -> Result<(), Violation> {
        let (r, s) = (&*self.src, &*self.dst);
        nested("src", r.check())?;
        nested("dst", s.check())?;
        nested("phi", fail(order_preservation(&self.phi, &r.ord, &s.ord)))?;
        fail(self.commutation())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(name: &str, prefix: &str, n: usize) -> Arc<FinSet> {
        FinSet::indexed(name, prefix, n)
    }

    fn chain2(name: &str, prefix: &str) -> Preorder {
        let s = set(name, prefix, 2);
        Preorder::new(Rel::from_pairs(&s, &s, [(0, 0), (0, 1), (1, 1)]).unwrap()).unwrap()
    }

    #[test]
    fn preorder_examples() {
        let a = set("A", "a", 2);
        assert!(is_preorder(&Rel::identity(&a)).unwrap());
        let r = Rel::from_pairs(&a, &a, [(0, 1)]).unwrap();
        assert!(!is_preorder(&r).unwrap());
        let err = Preorder::new(r).unwrap_err();
        match err {
            Error::Invalid(v) => {
                assert_eq!(v.axiom, Axiom::Reflexivity);
                assert_eq!(v.pair, Some(("a0".into(), "a0".into())));
            }
            other => panic!("unexpected {other:?}"),
        }
        let b = set("B", "b", 2);
        assert!(matches!(is_preorder(&Rel::empty(&a, &b)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn preorders_on_two_points_are_the_residual_fixpoints() {
        let a = set("A", "a", 2);
        let mut count = 0;
        for mask in 0..16 {
            let r = Rel::from_mask(&a, &a, mask);
            let fixpoint = r.equals(&r.left_residual(&r).unwrap()).unwrap();
            assert_eq!(is_preorder(&r).unwrap(), fixpoint, "{r:?}");
            count += fixpoint as usize;
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn closure_examples() {
        let a = set("A", "a", 2);
        assert_eq!(preorder_closure(&Rel::empty(&a, &a)).unwrap(), Preorder::discrete(&a));
        let c = preorder_closure(&Rel::from_pairs(&a, &a, [(0, 1)]).unwrap()).unwrap();
        assert_eq!(c.rel().pairs().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 1)]);
        let a3 = set("A", "a", 3);
        let c = preorder_closure(&Rel::from_pairs(&a3, &a3, [(0, 1), (1, 2)]).unwrap()).unwrap();
        assert!(c.holds(0, 2));
        assert!(c.check().is_ok());
    }

    #[test]
    fn discrete_orders_accept_any_map() {
        let a = set("A", "a", 2);
        let b = set("B", "b", 2);
        for image in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let f = FnMap::new(&a, &b, image.to_vec()).unwrap();
            assert!(Prom::new(Preorder::discrete(&a), Preorder::discrete(&b), f).is_ok());
        }
    }

    #[test]
    fn order_preservation_witness() {
        let a = set("A", "a", 2);
        let y = chain2("B", "b");
        let f = FnMap::new(&a, y.carrier(), vec![1, 0]).unwrap();
        let ok = Prom::new_unchecked(Preorder::discrete(&a), y.clone(), f.clone()).unwrap();
        assert!(ok.check().is_ok());
        let bad = Prom::new_unchecked(Preorder::chaotic(&a), y, f).unwrap();
        let v = bad.check().unwrap_err();
        assert_eq!(v.axiom, Axiom::OrderPreservation);
        assert_eq!(v.pair, Some(("a0".into(), "a1".into())));
        assert_eq!(v.label(), "order preservation");
    }

    #[test]
    fn prom_rejects_mismatched_map() {
        let a = set("A", "a", 2);
        let b = set("B", "b", 2);
        let f = FnMap::identity(&a);
        assert!(matches!(
            Prom::new_unchecked(Preorder::discrete(&a), Preorder::discrete(&b), f),
            Err(Error::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn empty_satisfaction_is_always_sound() {
        let m = set("M", "m", 2);
        let s = set("S", "s", 2);
        for ord in [Preorder::discrete(&s), chain2("S", "s"), Preorder::chaotic(&s)] {
            assert!(Representation::new(Rel::empty(&m, &s), ord).is_ok());
        }
    }

    #[test]
    fn unsound_satisfaction_is_reported() {
        let m = set("M", "m", 1);
        let ord = chain2("S", "s");
        let sat = Rel::from_pairs(&m, ord.carrier(), [(0, 0)]).unwrap();
        let r = Representation::new_unchecked(sat, ord).unwrap();
        let v = r.check().unwrap_err();
        assert_eq!(v.axiom, Axiom::Soundness);
        assert_eq!(v.pair, Some(("m0".into(), "s1".into())));
    }

    fn rep(name_m: &str, name_s: &str, pairs: &[(usize, usize)]) -> Arc<Representation> {
        let m = set(name_m, "m", 2);
        let s = set(name_s, "s", 1);
        Arc::new(Representation::new(Rel::from_pairs(&m, &s, pairs.iter().copied()).unwrap(), Preorder::discrete(&s)).unwrap())
    }

    #[test]
    fn rep_morphism_order() {
        let r = rep("M", "S", &[(0, 0)]);
        let id = RepMorphism::identity(&r);
        assert!(id.check().is_ok());
        assert!(id.leq(&id).unwrap());
        // τ = {(m0, m0), (m1, m0)} is not a morphism, but the order only looks at components.
        let bigger = RepMorphism::new_unchecked(
            r.clone(),
            r.clone(),
            FnMap::identity(r.statements()),
            Rel::from_pairs(r.models(), r.models(), [(0, 0), (1, 1), (1, 0)]).unwrap(),
        )
        .unwrap();
        assert!(id.leq(&bigger).unwrap());
        assert!(!bigger.leq(&id).unwrap());

        let s2 = set("T", "t", 2);
        let r2 = Arc::new(Representation::new(Rel::empty(r.models(), &s2), Preorder::discrete(&s2)).unwrap());
        let phi1 = FnMap::new(r.statements(), &s2, vec![0]).unwrap();
        let phi2 = FnMap::new(r.statements(), &s2, vec![1]).unwrap();
        let m1 = RepMorphism::new_unchecked(r.clone(), r2.clone(), phi1, Rel::empty(r.models(), r.models())).unwrap();
        let m2 = RepMorphism::new_unchecked(r.clone(), r2.clone(), phi2, Rel::full(r.models(), r.models())).unwrap();
        assert!(!m1.leq(&m2).unwrap());
        assert!(matches!(m1.leq(&id), Err(Error::EndpointMismatch { .. })));
    }

    #[test]
    fn rep_morphism_composition_composes_tau() {
        let r0 = rep("M", "S", &[]);
        let r1 = rep("M1", "S", &[]);
        let r2 = rep("M2", "S", &[]);
        let phi = FnMap::identity(r0.statements());
        let tau1 = Rel::from_pairs(r1.models(), r0.models(), [(1, 0)]).unwrap();
        let tau2 = Rel::from_pairs(r2.models(), r1.models(), [(0, 1)]).unwrap();
        let m1 = RepMorphism::new(r0.clone(), r1.clone(), phi.clone(), tau1).unwrap();
        let m2 = RepMorphism::new(r1.clone(), r2.clone(), phi, tau2).unwrap();
        let c = m2.after(&m1).unwrap();
        assert_eq!(c.tau().pairs().collect::<Vec<_>>(), vec![(0, 0)]);
        assert!(c.check().is_ok());
        assert_eq!(RepMorphism::identity(&r1).after(&m1).unwrap(), m1);
        assert!(matches!(m1.after(&m2), Err(Error::EndpointMismatch { .. })));
    }

    #[test]
    fn prom_morphism_identity_and_commutation() {
        let a = set("A", "a", 2);
        let y = chain2("B", "b");
        let f = FnMap::new(&a, y.carrier(), vec![0, 1]).unwrap();
        let p = Arc::new(Prom::new(Preorder::discrete(&a), y.clone(), f).unwrap());
        let id = PromMorphism::identity(&p);
        assert!(id.check().is_ok());
        assert_eq!(id.after(&id).unwrap(), id);

        // Swapping φ breaks ψ ∘ f = f ∘ φ.
        let swap = FnMap::new(&a, &a, vec![1, 0]).unwrap();
        let bad = PromMorphism::new_unchecked(p.clone(), p.clone(), swap, FnMap::identity(y.carrier())).unwrap();
        let v = bad.check().unwrap_err();
        assert_eq!(v.axiom, Axiom::Commutation);
        assert!(PromMorphism::new(p.clone(), p, bad.phi().clone(), bad.psi().clone()).is_err());
    }

    #[test]
    fn audit_lists_every_axiom() {
        let a = set("A", "a", 1);
        let p = Prom::new(Preorder::discrete(&a), Preorder::discrete(&a), FnMap::identity(&a)).unwrap();
        let names: Vec<String> = p.audit().into_iter().map(|c| c.name).collect();
        assert_eq!(
            names,
            ["x.reflexivity", "x.transitivity", "y.reflexivity", "y.transitivity", "order preservation"]
        );
    }
}

//! Evaluation of a single law on a single instance.

use std::collections::BTreeMap;
use std::sync::Arc;

use promrep_core::adjunction::{counit, galois_lift, galois_lower, mem_residual_recover, psi, tee, triangle_pom, triangle_repr, unit};
use promrep_core::exactness::{is_exact, is_order_reflecting};
use promrep_core::functors::{to_prom, to_prom_morphism, to_rep_morphism, to_representation};
use promrep_core::powerset::powerset;
use promrep_core::structures::is_preorder;
use promrep_core::{FnMap, PowersetCap, Prom, PromMorphism, Rel, RepMorphism, Representation, Violation};
use serde::{Deserialize, Serialize};

use crate::enumerate::{all_prom_morphisms, enumerate_rep_morphisms};
use crate::error::HarnessError;
use crate::instance::Instance;
use crate::laws::LawId;

pub type Notes = BTreeMap<String, u64>;

/// A refuted law: a tag naming what failed and the offending pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub tag: String,
    pub pairs: Vec<[String; 2]>,
}

impl Failure {
    fn new(tag: impl Into<String>) -> Self {
        Failure {
            tag: tag.into(),
            pairs: Vec::new(),
        }
    }

    fn with_pair(mut self, pair: Option<(String, String)>) -> Self {
        self.pairs.extend(pair.map(|(a, b)| [a, b]));
        self
    }

    fn from_violation(v: Violation) -> Self {
        let pair = v.pair.clone();
        Failure::new(v.label()).with_pair(pair)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verdict {
    pub notes: Notes,
    pub failure: Option<Failure>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Default)]
struct Outcome {
    notes: Notes,
    failure: Option<Failure>,
}

impl Outcome {
    fn note(&mut self, key: impl Into<String>, condition: bool) {
        let counter = self.notes.entry(key.into()).or_insert(0);
        *counter += u64::from(condition);
    }

    fn fail(&mut self, failure: Failure) {
        self.failure.get_or_insert(failure);
    }

    fn fail_unless(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        if !ok {
            self.fail(failure());
        }
    }

    fn valid(&mut self, result: Result<(), Violation>) {
        if let Err(v) = result {
            self.fail(Failure::from_violation(v));
        }
    }

    /// Relation equality; the witness is the first differing pair.
    fn rel_eq(&mut self, tag: &str, lhs: &Rel, rhs: &Rel) -> Result<(), HarnessError> {
        if let Some(pair) = lhs.first_difference(rhs)? {
            self.fail(Failure::new(tag).with_pair(Some(lhs.label_pair(pair))));
        }
        Ok(())
    }

    /// Function equality; the witness pairs the first differing argument
    /// with each side's image.
    fn fn_eq(&mut self, tag: &str, lhs: &FnMap, rhs: &FnMap) -> Result<(), HarnessError> {
        if let Some(i) = lhs.first_difference(rhs)? {
            let arg = lhs.src().label(i).to_string();
            self.fail(Failure {
                tag: tag.to_string(),
                pairs: vec![
                    [arg.clone(), lhs.dst().label(lhs.apply(i)).to_string()],
                    [arg, rhs.dst().label(rhs.apply(i)).to_string()],
                ],
            });
        }
        Ok(())
    }

    fn into_verdict(self) -> Verdict {
        Verdict {
            notes: self.notes,
            failure: self.failure,
        }
    }
}

/// Input validation, skipped for inputs already known to be valid.
#[derive(Clone, Copy)]
struct Gate {
    law: LawId,
    validate: bool,
}

impl Gate {
    fn require(self, check: impl FnOnce() -> Result<(), Violation>) -> Result<(), HarnessError> {
        if !self.validate {
            return Ok(());
        }
        check().map_err(|violation| HarnessError::InvalidInstance {
            law: self.law.name(),
            violation,
        })
    }
}

fn require_prom_chain(gate: Gate, m1: &PromMorphism, m2: &PromMorphism) -> Result<(), HarnessError> {
    gate.require(|| m1.check())?;
    gate.require(|| m2.check())?;
    if m1.dst() != m2.src() {
        return Err(promrep_core::Error::EndpointMismatch { op: "prom chain" }.into());
    }
    Ok(())
}

fn require_rep_chain(gate: Gate, m1: &RepMorphism, m2: &RepMorphism) -> Result<(), HarnessError> {
    gate.require(|| m1.check())?;
    gate.require(|| m2.check())?;
    if m1.dst() != m2.src() {
        return Err(promrep_core::Error::EndpointMismatch { op: "representation chain" }.into());
    }
    Ok(())
}

/// Evaluates `law` on `instance`.
///
/// Structures in the instance must satisfy their own axioms; a malformed
/// input is reported as [`HarnessError::InvalidInstance`], never as a
/// refutation.
pub fn check_law(law: LawId, instance: &Instance, cap: PowersetCap) -> Result<Verdict, HarnessError> {
    evaluate(law, instance, cap, true)
}

/// [`check_law`] without input validation, for instances produced by the
/// enumerators, which emit valid structures only.
pub(crate) fn check_enumerated(law: LawId, instance: &Instance, cap: PowersetCap) -> Result<Verdict, HarnessError> {
    evaluate(law, instance, cap, false)
}

fn evaluate(law: LawId, instance: &Instance, cap: PowersetCap, validate: bool) -> Result<Verdict, HarnessError> {
    let gate = Gate { law, validate };
    if instance.kind() != law.kind() {
        return Err(HarnessError::ShapeMismatch {
            law: law.name(),
            expected: law.kind(),
            found: instance.kind(),
        });
    }
    let mut out = Outcome::default();
    match (law, instance) {
        (LawId::Eq1Galois, Instance::Triple { x, y, z }) => {
            let composed = x.compose(y)?.leq(z)?;
            let residual = x.left_residual(z)?;
            out.note("premise_holds", composed);
            if y.leq(&residual)? != composed {
                let witness = if composed { y.excess_over(&residual)? } else { x.compose(y)?.excess_over(z)? };
                out.fail(Failure::new("galois equivalence").with_pair(witness.map(|p| y.label_pair(p))));
            }
        }
        (LawId::DualGalois, Instance::Triple { x, y, z }) => {
            let composed = x.compose(y)?.leq(z)?;
            let residual = z.right_residual(y)?;
            out.note("premise_holds", composed);
            if x.leq(&residual)? != composed {
                let witness = if composed { x.excess_over(&residual)? } else { x.compose(y)?.excess_over(z)? };
                out.fail(Failure::new("dual galois equivalence").with_pair(witness.map(|p| x.label_pair(p))));
            }
        }
        (LawId::ModularTautology, Instance::Modular { x, y, f, g }) => {
            let lhs = f.graph().compose(&x.left_residual(y)?)?.compose(&g.inverse_graph())?;
            let rhs = x.compose(&f.inverse_graph())?.left_residual(&y.compose(&g.inverse_graph())?)?;
            out.rel_eq("modular tautology", &lhs, &rhs)?;
        }
        (LawId::PreorderSingleAxiom, Instance::Endorelation(r)) => {
            let n = r.src().len();
            let preorder = is_preorder(r)?;
            out.note(format!("relations.size{n}"), true);
            out.note(format!("preorders.size{n}"), preorder);
            let fixpoint = *r == r.left_residual(r)?;
            out.fail_unless(preorder == fixpoint, || Failure::new("single axiom"));
        }
        (LawId::MemResidualSubset, Instance::Carrier(m)) => {
            let bundle = powerset(m, cap)?;
            let subset = Rel::from_fn(bundle.carrier(), bundle.carrier(), |a, b| a & !b == 0);
            out.note("subsets", true);
            out.rel_eq("membership residual", &bundle.inclusion(), &subset)?;
        }
        (LawId::Lemma1, Instance::Prom(p)) => {
            gate.require(|| p.check())?;
            out.valid(to_representation(p).check());
        }
        (LawId::Lemma2, Instance::PromMorphism(m)) => {
            gate.require(|| m.check())?;
            out.valid(to_rep_morphism(m).check());
        }
        (LawId::Lemma3, Instance::PromChain(m1, m2)) => {
            require_prom_chain(gate, m1, m2)?;
            let p = m1.src();
            let image = to_rep_morphism(&PromMorphism::identity(p));
            let id = RepMorphism::identity(image.src());
            let lax = id.leq(&image)?;
            out.fail_unless(lax, || Failure::new("lax identity").with_pair(id.tau().excess_over(image.tau()).ok().flatten().map(|q| id.tau().label_pair(q))));
            out.note("strict_identity", lax && !image.leq(&id)?);

            let whole = to_rep_morphism(&m2.after(m1)?);
            let parts = to_rep_morphism(m2).after(&to_rep_morphism(m1))?;
            let below = whole.leq(&parts)?;
            out.fail_unless(below, || {
                Failure::new("lax composition").with_pair(whole.tau().excess_over(parts.tau()).ok().flatten().map(|q| whole.tau().label_pair(q)))
            });
            out.note("strict_composition", below && !parts.leq(&whole)?);
        }
        (LawId::Lemma4, Instance::Representation(r)) => {
            gate.require(|| r.check())?;
            out.valid(to_prom(r, cap)?.check());
        }
        (LawId::Lemma5, Instance::RepMorphism(m)) => {
            gate.require(|| m.check())?;
            out.valid(to_prom_morphism(m, cap)?.check());
        }
        (LawId::Lemma6, Instance::RepChain(m1, m2)) => {
            require_rep_chain(gate, m1, m2)?;
            let image = to_prom_morphism(&RepMorphism::identity(m1.src()), cap)?;
            let id = PromMorphism::identity(image.src());
            out.fn_eq("identity preservation", image.phi(), id.phi())?;
            out.fn_eq("identity preservation", image.psi(), id.psi())?;

            let whole = to_prom_morphism(&m2.after(m1)?, cap)?;
            let parts = to_prom_morphism(m2, cap)?.after(&to_prom_morphism(m1, cap)?)?;
            out.fn_eq("composition preservation", whole.phi(), parts.phi())?;
            out.fn_eq("composition preservation", whole.psi(), parts.psi())?;
            let bundle = powerset(m2.dst().models(), cap)?;
            out.fail_unless(bundle.fn_eq(whole.psi(), parts.psi())?, || Failure::new("composition preservation"));
        }
        (LawId::Lemma7, Instance::Relation(x)) => {
            out.rel_eq("residual recovery", &mem_residual_recover(x, cap)?, x)?;
        }
        (LawId::Lemma8, Instance::HomSets(p, r)) => {
            gate.require(|| p.check())?;
            gate.require(|| r.check())?;
            let rp = Arc::new(to_representation(p));
            for n in enumerate_rep_morphisms(&rp, r)? {
                out.note("rep_morphisms", true);
                out.valid(galois_lift(p, &n, cap)?.check());
            }
            for m in prom_morphisms_into_image(p, r, cap)? {
                out.note("prom_morphisms", true);
                out.valid(galois_lower(r, &m, cap)?.check());
            }
        }
        (LawId::Lemma9, Instance::HomSets(p, r)) => {
            gate.require(|| p.check())?;
            gate.require(|| r.check())?;
            let bundle = powerset(r.models(), cap)?;
            for m in prom_morphisms_into_image(p, r, cap)? {
                out.note("prom_morphisms", true);
                let round = galois_lift(p, &galois_lower(r, &m, cap)?, cap)?;
                out.fn_eq("lift after lower", round.phi(), m.phi())?;
                out.fn_eq("lift after lower", round.psi(), m.psi())?;
                out.fail_unless(bundle.fn_eq(round.psi(), m.psi())?, || Failure::new("lift after lower"));
            }
            let rp = Arc::new(to_representation(p));
            for n in enumerate_rep_morphisms(&rp, r)? {
                out.note("rep_morphisms", true);
                let round = galois_lower(r, &galois_lift(p, &n, cap)?, cap)?;
                let below = n.leq(&round)?;
                out.fail_unless(below, || {
                    Failure::new("lower after lift").with_pair(n.tau().excess_over(round.tau()).ok().flatten().map(|q| n.tau().label_pair(q)))
                });
                out.note("strict_lower_after_lift", below && !round.leq(&n)?);
            }
        }
        (LawId::Lemma10, Instance::Representation(r)) => {
            gate.require(|| r.check())?;
            let exact = is_exact(r);
            out.note("exact", exact);
            out.note("non_exact", !exact);
            out.fail_unless(exact == is_order_reflecting(&to_prom(r, cap)?), || Failure::new("exactness transfer"));
        }
        (LawId::Lemma11, Instance::Prom(p)) => {
            gate.require(|| p.check())?;
            let reflecting = is_order_reflecting(p);
            out.note("order_reflecting", reflecting);
            out.note("not_order_reflecting", !reflecting);
            out.fail_unless(reflecting == is_exact(&to_representation(p)), || Failure::new("reflection transfer"));
        }
        (LawId::TriangleRepr, Instance::Prom(p)) => {
            gate.require(|| p.check())?;
            let t = triangle_repr(p, cap)?;
            out.rel_eq("triangle composite", t.composite.tau(), p.y().rel())?;
            out.fn_eq("triangle composite", t.composite.phi(), t.identity.phi())?;
            out.fail_unless(t.dominates_identity, || Failure::new("triangle 2-cell"));
            out.fail_unless(t.strict != p.y().is_discrete(), || Failure::new("triangle strictness"));
            out.note("strict", t.strict);
        }
        (LawId::TrianglePom, Instance::Representation(r)) => {
            gate.require(|| r.check())?;
            let t = triangle_pom(r, cap)?;
            let id = FnMap::identity(t.subset_map.src());
            out.fn_eq("triangle identity", &t.subset_map, &id)?;
            out.fn_eq("triangle identity", &t.statement_map, &FnMap::identity(r.statements()))?;
            out.fail_unless(t.holds_by_membership && t.holds_pointwise, || Failure::new("triangle identity"));
        }
        (LawId::UnitNatural, Instance::PromMorphism(m)) => {
            gate.require(|| m.check())?;
            let (at_src, at_dst) = (unit(m.src(), cap)?, unit(m.dst(), cap)?);
            out.valid(at_src.check());
            out.valid(at_dst.check());
            let lhs = at_dst.after(m)?;
            let rhs = to_prom_morphism(&to_rep_morphism(m), cap)?.after(&at_src)?;
            out.fn_eq("unit naturality", lhs.phi(), rhs.phi())?;
            out.fn_eq("unit naturality", lhs.psi(), rhs.psi())?;
            let bundle = powerset(m.dst().target(), cap)?;
            out.fail_unless(bundle.fn_eq(lhs.psi(), rhs.psi())?, || Failure::new("unit naturality"));
        }
        (LawId::CounitNatural, Instance::RepMorphism(m)) => {
            gate.require(|| m.check())?;
            let lifted = to_rep_morphism(&to_prom_morphism(m, cap)?);
            let (at_src, at_dst) = (counit(m.src(), cap)?, counit(m.dst(), cap)?);
            out.valid(at_src.check());
            out.valid(at_dst.check());
            let lhs = at_dst.after(&lifted)?;
            let rhs = m.after(&at_src)?;
            out.fn_eq("counit naturality", lhs.phi(), rhs.phi())?;
            out.rel_eq("counit naturality", lhs.tau(), rhs.tau())?;
        }
        (LawId::PsiCharacterization, Instance::Saturation { tau, y }) => {
            gate.require(|| y.check())?;
            let map = psi(tau, y, cap)?;
            out.rel_eq("psi characterization", &tee(&map, tau.src(), cap)?, &tau.compose(y.rel())?)?;
        }
        (LawId::SoundnessResidualEquiv, Instance::Satisfaction { sat, ord }) => {
            let sound = sat.compose(ord)?.leq(sat)?;
            out.note("sound", sound);
            out.note("unsound", !sound);
            let by_residual = ord.leq(&sat.left_residual(sat)?)?;
            out.fail_unless(sound == by_residual, || Failure::new("soundness equivalence"));
        }
        _ => unreachable!("instance kinds are matched above"),
    }
    Ok(out.into_verdict())
}

/// Every prom morphism `p → M(r)`.
pub fn prom_morphisms_into_image(p: &Arc<Prom>, r: &Arc<Representation>, cap: PowersetCap) -> Result<Vec<PromMorphism>, HarnessError> {
    let image = Arc::new(to_prom(r, cap)?);
    all_prom_morphisms(p, &image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::carrier;
    use promrep_core::Preorder;

    const CAP: PowersetCap = PowersetCap::DEFAULT;

    fn chain_prom() -> Arc<Prom> {
        let a = carrier("A", 1);
        let b = carrier("B", 2);
        let y = Preorder::new(Rel::from_pairs(&b, &b, [(0, 0), (0, 1), (1, 1)]).unwrap()).unwrap();
        Arc::new(Prom::new(Preorder::discrete(&a), y, FnMap::new(&a, &b, vec![0]).unwrap()).unwrap())
    }

    #[test]
    fn galois_holds_on_a_tiny_triple() {
        let (a, b) = (carrier("A", 2), carrier("B", 1));
        let x = Rel::full(&a, &b);
        let y = Rel::identity(&b);
        let z = Rel::from_pairs(&a, &b, [(0, 0)]).unwrap();
        let v = check_law(LawId::Eq1Galois, &Instance::Triple { x, y, z }, CAP).unwrap();
        assert!(v.holds());
        assert_eq!(v.notes["premise_holds"], 0);
    }

    #[test]
    fn lemma3_reports_strict_identity_on_a_chain() {
        let p = chain_prom();
        let id = PromMorphism::identity(&p);
        let v = check_law(LawId::Lemma3, &Instance::PromChain(id.clone(), id), CAP).unwrap();
        assert!(v.holds());
        assert_eq!(v.notes["strict_identity"], 1);
        assert_eq!(v.notes["strict_composition"], 0);
    }

    #[test]
    fn unsound_input_is_rejected_before_checking() {
        let m = carrier("M", 1);
        let s = carrier("S", 2);
        let ord = Preorder::new(Rel::from_pairs(&s, &s, [(0, 0), (0, 1), (1, 1)]).unwrap()).unwrap();
        let sat = Rel::from_pairs(&m, &s, [(0, 0)]).unwrap();
        let r = Arc::new(Representation::new_unchecked(sat, ord).unwrap());
        let err = check_law(LawId::Lemma4, &Instance::Representation(r), CAP).unwrap_err();
        assert!(matches!(err, HarnessError::InvalidInstance { .. }));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let err = check_law(LawId::Lemma1, &Instance::Carrier(carrier("M", 1)), CAP).unwrap_err();
        assert!(matches!(err, HarnessError::ShapeMismatch { .. }));
    }

    #[test]
    fn lemma9_finds_the_strict_lower_after_lift() {
        // p: a ↦ b1 on the chain b0 ≤ b1; R has one model satisfying its
        // one statement. τ = {(m, b0)} is not saturated.
        let a = carrier("A", 1);
        let b = carrier("B", 2);
        let y = Preorder::new(Rel::from_pairs(&b, &b, [(0, 0), (0, 1), (1, 1)]).unwrap()).unwrap();
        let p = Arc::new(Prom::new(Preorder::discrete(&a), y, FnMap::new(&a, &b, vec![1]).unwrap()).unwrap());
        let (m, s) = (carrier("M", 1), carrier("S", 1));
        let r = Arc::new(Representation::new(Rel::full(&m, &s), Preorder::discrete(&s)).unwrap());
        let v = check_law(LawId::Lemma9, &Instance::HomSets(p.clone(), r.clone()), CAP).unwrap();
        assert!(v.holds());
        assert!(v.notes["strict_lower_after_lift"] >= 1);
        assert!(check_law(LawId::Lemma8, &Instance::HomSets(p, r), CAP).unwrap().holds());
    }

    #[test]
    fn a_wrong_claim_is_refuted_with_a_pair() {
        let mut out = Outcome::default();
        let a = carrier("A", 2);
        out.rel_eq("demo", &Rel::identity(&a), &Rel::full(&a, &a)).unwrap();
        let failure = out.failure.unwrap();
        assert_eq!(failure.pairs, vec![["a0".to_string(), "a1".to_string()]]);
    }
}

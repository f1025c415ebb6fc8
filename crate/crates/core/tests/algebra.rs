use std::sync::Arc;

use proptest::prelude::*;
use promrep_core::adjunction::{galois_lift, galois_lower, mem_residual_recover, psi, tee, triangle_repr, unit};
use promrep_core::exactness::{entailment, is_exact, is_order_reflecting, pullback_order};
use promrep_core::functors::{to_prom, to_representation};
use promrep_core::structures::{is_preorder, preorder_closure};
use promrep_core::workspace::Workspace;
use promrep_core::{FinSet, FnMap, PowersetCap, Preorder, Prom, RepMorphism, Rel, Representation};

fn set(name: &str, len: usize) -> Arc<FinSet> {
    FinSet::indexed(name, &name.to_lowercase(), len)
}

fn rel(src: &Arc<FinSet>, dst: &Arc<FinSet>, bits: &[bool]) -> Rel {
    Rel::from_fn(src, dst, |i, j| bits[i * dst.len() + j])
}

fn bits(len: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), len)
}

fn map(src: &Arc<FinSet>, dst: &Arc<FinSet>, raw: &[usize]) -> FnMap {
    FnMap::new(src, dst, raw.iter().take(src.len()).map(|v| v % dst.len()).collect()).unwrap()
}

/// A prom on carriers of the given sizes, with `x` the pullback order
/// intersected with a random preorder closure.
fn prom(na: usize, nb: usize, ybits: &[bool], xbits: &[bool], raw: &[usize]) -> Prom {
    let (a, b) = (set("A", na), set("B", nb));
    let y = preorder_closure(&rel(&b, &b, ybits)).unwrap();
    let f = map(&a, &b, raw);
    let base = Prom::new_unchecked(Preorder::discrete(&a), y.clone(), f.clone()).unwrap();
    let pull = pullback_order(&base);
    let x = preorder_closure(&rel(&a, &a, xbits).intersection(&pull).unwrap()).unwrap();
    Prom::new(x, y, f).unwrap()
}

proptest! {
    #[test]
    fn galois_and_dual_galois((n, m, k) in (0usize..5, 0usize..5, 0usize..5), seed in bits(75)) {
        let (a, b, c) = (set("A", n), set("B", m), set("C", k));
        let x = rel(&a, &b, &seed[..25]);
        let y = rel(&b, &c, &seed[25..50]);
        let z = rel(&a, &c, &seed[50..]);
        let composed = x.compose(&y).unwrap().leq(&z).unwrap();
        prop_assert_eq!(y.leq(&x.left_residual(&z).unwrap()).unwrap(), composed);
        prop_assert_eq!(x.leq(&z.right_residual(&y).unwrap()).unwrap(), composed);
    }

    #[test]
    fn composition_is_associative_and_reversed_by_converse(seed in bits(48), (n, m, k, l) in (0usize..5, 0usize..5, 0usize..5, 0usize..5)) {
        let (a, b, c, d) = (set("A", n), set("B", m), set("C", k), set("D", l));
        let x = rel(&a, &b, &seed[..16]);
        let y = rel(&b, &c, &seed[16..32]);
        let z = rel(&c, &d, &seed[32..]);
        prop_assert_eq!(x.compose(&y).unwrap().compose(&z).unwrap(), x.compose(&y.compose(&z).unwrap()).unwrap());
        prop_assert_eq!(x.compose(&y).unwrap().converse(), y.converse().compose(&x.converse()).unwrap());
        prop_assert_eq!(x.converse().converse(), x.clone());
        prop_assert_eq!(Rel::identity(&a).compose(&x).unwrap(), x);
    }

    #[test]
    fn modular_tautology(seed in bits(32), raw in prop::collection::vec(0usize..8, 8), (n, m, k, l, p) in (0usize..4, 1usize..4, 1usize..4, 0usize..4, 0usize..4)) {
        // x : C ⇸ A, y : C ⇸ B, f : A' → A, g : B' → B
        let (a, b, c, a2, b2) = (set("A", m), set("B", k), set("C", n), set("P", l), set("Q", p));
        let x = rel(&c, &a, &seed[..16]);
        let y = rel(&c, &b, &seed[16..]);
        let f = map(&a2, &a, &raw[..4]);
        let g = map(&b2, &b, &raw[4..]);
        let lhs = f.graph().compose(&x.left_residual(&y).unwrap()).unwrap().compose(&g.inverse_graph()).unwrap();
        let rhs = x.compose(&f.inverse_graph()).unwrap().left_residual(&y.compose(&g.inverse_graph()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn preorders_are_residual_fixpoints(n in 0usize..5, seed in bits(16)) {
        let a = set("A", n);
        let r = rel(&a, &a, &seed);
        prop_assert_eq!(is_preorder(&r).unwrap(), r == r.left_residual(&r).unwrap());
        let closed = preorder_closure(&r).unwrap();
        prop_assert!(r.leq(closed.rel()).unwrap());
        prop_assert_eq!(closed.rel().left_residual(closed.rel()).unwrap(), closed.rel().clone());
    }

    #[test]
    fn membership_residual_recovers(n in 0usize..5, m in 0usize..5, seed in bits(16)) {
        let (a, b) = (set("A", n), set("B", m));
        let x = rel(&a, &b, &seed);
        prop_assert_eq!(mem_residual_recover(&x, PowersetCap::DEFAULT).unwrap(), x);
    }

    #[test]
    fn functors_preserve_validity(na in 0usize..4, nb in 1usize..4, seed in bits(32), raw in prop::collection::vec(0usize..8, 4)) {
        let p = Arc::new(prom(na, nb, &seed[..16], &seed[16..], &raw));
        let r = to_representation(&p);
        prop_assert!(r.check().is_ok());
        let back = to_prom(&r, PowersetCap::DEFAULT).unwrap();
        prop_assert!(back.check().is_ok());
        prop_assert!(unit(&p, PowersetCap::DEFAULT).unwrap().check().is_ok());
        let t = triangle_repr(&p, PowersetCap::DEFAULT).unwrap();
        prop_assert!(t.matches_order && t.dominates_identity);
        prop_assert_eq!(t.strict, !p.y().is_discrete());
        prop_assert_eq!(is_order_reflecting(&p), is_exact(&r));
    }

    #[test]
    fn exact_representations_have_entailment_as_order(na in 0usize..4, nb in 1usize..4, seed in bits(32), raw in prop::collection::vec(0usize..8, 4)) {
        let p = prom(na, nb, &seed[..16], &seed[16..], &raw);
        let r = to_representation(&p);
        if is_exact(&r) {
            prop_assert_eq!(&entailment(&r), r.ord().rel());
        }
        if is_order_reflecting(&p) {
            prop_assert_eq!(&pullback_order(&p), p.x().rel());
        }
    }

    #[test]
    fn psi_and_tee(nm in 0usize..4, nb in 0usize..4, seed in bits(32)) {
        let (m, b) = (set("M", nm), set("B", nb));
        let y = preorder_closure(&rel(&b, &b, &seed[..16])).unwrap();
        let tau = rel(&m, &b, &seed[16..]);
        let lifted = psi(&tau, &y, PowersetCap::DEFAULT).unwrap();
        let saturated = tau.compose(y.rel()).unwrap();
        prop_assert_eq!(tee(&lifted, &m, PowersetCap::DEFAULT).unwrap(), saturated.clone());
        prop_assert!(tau.leq(&saturated).unwrap());
        prop_assert_eq!(psi(&saturated, &y, PowersetCap::DEFAULT).unwrap(), lifted);
    }

    #[test]
    fn check_reports_the_first_audited_violation(na in 0usize..4, nb in 1usize..4, seed in bits(64), raw in prop::collection::vec(0usize..8, 8)) {
        let (a, b, m) = (set("A", na), set("B", nb), set("M", 2));
        let x = Preorder::new_unchecked(rel(&a, &a, &seed[..16])).unwrap();
        let y = Preorder::new_unchecked(rel(&b, &b, &seed[16..32])).unwrap();
        let p = Prom::new_unchecked(x.clone(), y, map(&a, &b, &raw)).unwrap();
        let first = |audit: Vec<promrep_core::structures::AxiomCheck>| audit.into_iter().find_map(|c| c.violation);
        prop_assert_eq!(x.check().err(), first(x.audit()));
        prop_assert_eq!(p.check().err(), first(p.audit()));
        let r = Arc::new(Representation::new_unchecked(rel(&m, &a, &seed[32..48]), x).unwrap());
        let n = RepMorphism::new_unchecked(r.clone(), r.clone(), map(&a, &a, &raw[4..]), rel(&m, &m, &seed[48..52])).unwrap();
        prop_assert_eq!(r.check().err(), first(r.audit()));
        prop_assert_eq!(n.check().err(), first(n.audit()));
        let q = Arc::new(p);
        let pm = promrep_core::PromMorphism::new_unchecked(q.clone(), q, map(&a, &a, &raw[2..]), map(&b, &b, &raw[5..])).unwrap();
        prop_assert_eq!(pm.check().err(), first(pm.audit()));
    }

    #[test]
    fn workspace_round_trip(na in 0usize..4, nb in 1usize..4, seed in bits(32), raw in prop::collection::vec(0usize..8, 4)) {
        let p = Arc::new(prom(na, nb, &seed[..16], &seed[16..], &raw));
        let mut ws = Workspace::new();
        ws.insert_prom("p", &p).unwrap();
        ws.insert_representation("R(p)", &to_representation(&p)).unwrap();
        let text = ws.render();
        let again = Workspace::parse(&text).unwrap();
        prop_assert_eq!(again.render(), text);
        prop_assert_eq!(again.prom("p").unwrap(), p.clone());
        prop_assert_eq!(&*again.representation("R(p)").unwrap(), &to_representation(&p));
    }
}

#[test]
fn galois_lift_and_lower_are_inverse_up_to_saturation() {
    // Every representation morphism R(p) → R over tiny carriers.
    let cap = PowersetCap::DEFAULT;
    let b = set("B", 2);
    let a = set("A", 1);
    let y = Preorder::new(Rel::from_pairs(&b, &b, [(0, 0), (0, 1), (1, 1)]).unwrap()).unwrap();
    let p = Arc::new(Prom::new(Preorder::discrete(&a), y, FnMap::new(&a, &b, vec![1]).unwrap()).unwrap());
    let rp = Arc::new(to_representation(&p));
    let (m, s) = (set("M", 2), set("S", 1));
    let mut valid = 0;
    let mut strict = 0;
    for sat_mask in 0..4 {
        let r = Arc::new(promrep_core::Representation::new(Rel::from_mask(&m, &s, sat_mask), Preorder::discrete(&s)).unwrap());
        let phi = FnMap::new(&a, &s, vec![0]).unwrap();
        for tau_mask in 0..16 {
            let tau = Rel::from_mask(&m, &b, tau_mask);
            let Ok(rm) = RepMorphism::new(rp.clone(), r.clone(), phi.clone(), tau) else { continue };
            valid += 1;
            let lifted = galois_lift(&p, &rm, cap).unwrap();
            assert!(lifted.check().is_ok());
            let lowered = galois_lower(&r, &lifted, cap).unwrap();
            assert!(rm.leq(&lowered).unwrap());
            strict += usize::from(!lowered.leq(&rm).unwrap());
            assert_eq!(galois_lift(&p, &lowered, cap).unwrap(), lifted);
        }
    }
    assert!(valid > 0);
    assert!(strict > 0);
}

use std::collections::HashSet;

use promrep_core::workspace::WorkspaceFile;
use promrep_harness::check::{check_law, Failure};
use promrep_harness::gen::{gen_prom, rng};
use promrep_harness::search::{note, seeded_instance, Space};
use promrep_harness::{search, HarnessError, Instance, InstanceKind, LawId, Mode, SearchConfig, Witness, WitnessSeed, CATALOG};

fn exhaustive(law: LawId, sizes: &[usize]) -> promrep_harness::Summary {
    search(&SearchConfig::new(law, Mode::Exhaustive).max_size(sizes)).unwrap()
}

#[test]
fn seeded_summaries_do_not_depend_on_jobs() {
    for law in [LawId::Lemma1, LawId::Lemma3, LawId::CounitNatural, LawId::PsiCharacterization] {
        let base = SearchConfig::new(law, Mode::Seeded).trials(500).seed(0xC0FFEE);
        let serial = search(&base.clone().jobs(1)).unwrap().render();
        let parallel = search(&base.jobs(8)).unwrap().render();
        assert_eq!(serial, parallel, "{law}");
    }
}

#[test]
fn exhaustive_summaries_do_not_depend_on_jobs() {
    let base = SearchConfig::new(LawId::Lemma9, Mode::Exhaustive).max_size(&[1, 2, 2, 1]);
    assert_eq!(search(&base.clone().jobs(1)).unwrap().render(), search(&base.jobs(3)).unwrap().render());
}

#[test]
fn galois_at_size_two_checks_every_triple() {
    let s = exhaustive(LawId::Eq1Galois, &[2]);
    assert_eq!(s.at_max_size, 16 * 16 * 16);
    assert!(s.holds());
    assert!(note(&s, "premise_holds") > 0);
}

#[test]
fn galois_at_size_three_is_out_of_bounds() {
    let err = search(&SearchConfig::new(LawId::Eq1Galois, Mode::Exhaustive).max_size(&[3])).unwrap_err();
    assert!(matches!(err, HarnessError::Bounds(_)), "{err}");
}

#[test]
fn sound_representations_at_two_by_two() {
    let s = exhaustive(LawId::Lemma10, &[2]);
    assert!(s.holds());
    // Σ over preorders of the ≤-closed families of columns, per shape.
    assert_eq!(s.at_max_size, 38);
    assert!(note(&s, "exact") > 0 && note(&s, "non_exact") > 0);
}

#[test]
fn relation_space_visits_each_relation_once() {
    let space = Space::build(InstanceKind::Relation, &[2, 3]).unwrap();
    let expected: u64 = (0..=2).flat_map(|a| (0..=3).map(move |b| 1u64 << (a * b))).sum();
    assert_eq!(space.total, expected);
    let mut seen = HashSet::new();
    for i in 0..space.total {
        let Instance::Relation(x) = space.get(i) else { panic!("wrong kind") };
        let key = (x.src().len(), x.dst().len(), x.pairs().collect::<Vec<_>>());
        assert!(seen.insert(key), "index {i} repeats");
    }
}

#[test]
fn rep_chain_space_is_ordered_by_size() {
    let space = Space::build(InstanceKind::RepChain, &[1, 1]).unwrap();
    let totals: Vec<usize> = (0..space.total).map(|i| space.get(i).carrier_sizes().iter().sum()).collect();
    assert!(!totals.is_empty());
    let first_shapes: Vec<usize> = totals.iter().take(1).copied().collect();
    assert_eq!(first_shapes, [0]);
}

#[test]
fn every_law_holds_on_a_short_seeded_run() {
    for info in CATALOG {
        let s = search(&SearchConfig::new(info.id, Mode::Seeded).trials(40).seed(11)).unwrap();
        assert!(s.holds(), "{}: {:?}", info.name, s.witness);
        assert_eq!(s.checked, 40);
    }
}

#[test]
fn seeded_instances_fit_the_law_shape() {
    for info in CATALOG {
        let bounds = vec![2; info.axes.len()];
        for seed in 0..20 {
            let inst = seeded_instance(info.kind, &mut rng(seed), &bounds);
            assert_eq!(inst.kind(), info.kind);
            check_law(info.id, &inst, Default::default()).unwrap();
        }
    }
}

#[test]
fn witnesses_round_trip_and_replay() {
    let p = std::sync::Arc::new(gen_prom(5, 2, 2));
    let instance = Instance::Prom(p);
    let failure = Failure {
        tag: "triangle strictness".into(),
        pairs: vec![["b0".into(), "b1".into()]],
    };
    let w = Witness::new(LawId::TriangleRepr, WitnessSeed::Trial(5), failure, &instance).unwrap();
    let text = w.to_json();
    let back = Witness::parse(&text).unwrap();
    assert_eq!(back, w);
    assert_eq!(back.to_json(), text);
    let rebuilt = Witness::new(LawId::TriangleRepr, WitnessSeed::Trial(5), back.violation.clone(), &back.instance().unwrap()).unwrap();
    assert_eq!(rebuilt, w);
    // The law holds, so the recorded failure does not reproduce.
    assert_eq!(back.replay(Default::default()).unwrap(), None);
    assert!(WorkspaceFile::parse(&serde_json::to_string(&back.structures).unwrap()).is_ok());

    let exhaustive = Witness::new(LawId::TriangleRepr, WitnessSeed::Exhaustive(promrep_harness::witness::Exhaustive::Exhaustive), back.violation.clone(), &instance).unwrap();
    assert!(exhaustive.to_json().contains("\"seed\": \"exhaustive\""));
}

#[test]
fn malformed_witnesses_are_rejected() {
    assert!(matches!(Witness::parse("{\"law\": \"lemma1\"}"), Err(HarnessError::Witness(_))));
    let bad_law = r#"{"law": "lemma99", "seed": 1, "violation": {"tag": "x", "pairs": []}, "structures": {}}"#;
    assert!(matches!(Witness::parse(bad_law).unwrap().law(), Err(HarnessError::UnknownLaw(_))));
}

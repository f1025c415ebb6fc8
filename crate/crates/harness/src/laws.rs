//! The closed catalog of checkable laws.

use std::fmt;
use std::str::FromStr;

use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LawId {
    Eq1Galois,
    DualGalois,
    ModularTautology,
    PreorderSingleAxiom,
    MemResidualSubset,
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Lemma5,
    Lemma6,
    Lemma7,
    Lemma8,
    Lemma9,
    Lemma10,
    Lemma11,
    TriangleRepr,
    TrianglePom,
    UnitNatural,
    CounitNatural,
    PsiCharacterization,
    SoundnessResidualEquiv,
}

/// The shape of input a law is checked on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// `x : A ⇸ B`, `y : B ⇸ C`, `z : A ⇸ C`.
    Triple,
    /// `x : C ⇸ A`, `y : C ⇸ B`, `f : A' → A`, `g : B' → B`.
    Modular,
    /// A square relation.
    Endorelation,
    /// `x : A ⇸ B`.
    Relation,
    /// A bare carrier.
    Carrier,
    Prom,
    PromMorphism,
    /// Two composable prom morphisms.
    PromChain,
    Representation,
    RepMorphism,
    /// Two composable representation morphisms.
    RepChain,
    /// A prom `p` and a representation `R`, standing for the hom-sets
    /// `R(p) → R` and `p → M(R)`.
    HomSets,
    /// `τ : M ⇸ B` with a preorder on `B`.
    Saturation,
    /// `⊨ : M ⇸ S` with an arbitrary relation on `S`.
    Satisfaction,
}

pub struct LawInfo {
    pub id: LawId,
    pub name: &'static str,
    pub statement: &'static str,
    pub kind: InstanceKind,
    pub axes: &'static [&'static str],
    pub exhaustive_default: usize,
}

const AB: &[&str] = &["A", "B"];
const MS: &[&str] = &["M", "S"];

pub const CATALOG: &[LawInfo] = &[
    LawInfo {
        id: LawId::Eq1Galois,
        name: "eq1-galois",
        statement: "y ≤ x\\z ⇔ x⨾y ≤ z",
        kind: InstanceKind::Triple,
        axes: &["A", "B", "C"],
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::DualGalois,
        name: "dual-galois",
        statement: "x ≤ z/y ⇔ x⨾y ≤ z",
        kind: InstanceKind::Triple,
        axes: &["A", "B", "C"],
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::ModularTautology,
        name: "modular-tautology",
        statement: "f_*⨾(x\\y)⨾g^* = (x⨾f^*)\\(y⨾g^*)",
        kind: InstanceKind::Modular,
        axes: &["C", "A", "B", "A'", "B'"],
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::PreorderSingleAxiom,
        name: "preorder-single-axiom",
        statement: "r is a preorder ⇔ r = r\\r",
        kind: InstanceKind::Endorelation,
        axes: &["A"],
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::MemResidualSubset,
        name: "mem-residual-subset",
        statement: "∈\\∈ = ⊆",
        kind: InstanceKind::Carrier,
        axes: &["M"],
        exhaustive_default: 3,
    },
    LawInfo {
        id: LawId::Lemma1,
        name: "lemma1",
        statement: "R(p) is a representation",
        kind: InstanceKind::Prom,
        axes: AB,
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::Lemma2,
        name: "lemma2",
        statement: "R(φ,ψ) is a representation morphism",
        kind: InstanceKind::PromMorphism,
        axes: &["A", "B", "A'", "B'"],
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::Lemma3,
        name: "lemma3",
        statement: "(id,1) ⩽ R(id,id) and R((φ',ψ')∘(φ,ψ)) ⩽ R(φ',ψ')∘R(φ,ψ)",
        kind: InstanceKind::PromChain,
        axes: AB,
        exhaustive_default: 1,
    },
    LawInfo {
        id: LawId::Lemma4,
        name: "lemma4",
        statement: "M(R) is a prom",
        kind: InstanceKind::Representation,
        axes: MS,
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::Lemma5,
        name: "lemma5",
        statement: "M(φ,τ) is a prom morphism",
        kind: InstanceKind::RepMorphism,
        axes: &["M", "S", "M'", "S'"],
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::Lemma6,
        name: "lemma6",
        statement: "M(id,1) = (id,id) and M((φ',τ')∘(φ,τ)) = M(φ',τ')∘M(φ,τ)",
        kind: InstanceKind::RepChain,
        axes: MS,
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::Lemma7,
        name: "lemma7",
        statement: "x = ∈⨾(∈\\x)",
        kind: InstanceKind::Relation,
        axes: AB,
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::Lemma8,
        name: "lemma8",
        statement: "Ψ(φ,τ) and T(φ,ψ) are morphisms",
        kind: InstanceKind::HomSets,
        axes: &["A", "B", "M", "S"],
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::Lemma9,
        name: "lemma9",
        statement: "ΨT(φ,ψ) = (φ,ψ) and (φ,τ) ⩽ TΨ(φ,τ)",
        kind: InstanceKind::HomSets,
        axes: &["A", "B", "M", "S"],
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::Lemma10,
        name: "lemma10",
        statement: "R exact ⇔ M(R) order-reflecting",
        kind: InstanceKind::Representation,
        axes: MS,
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::Lemma11,
        name: "lemma11",
        statement: "p order-reflecting ⇔ R(p) exact",
        kind: InstanceKind::Prom,
        axes: AB,
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::TriangleRepr,
        name: "triangle-repr",
        statement: "ε∘R(η) = (id,y) ⩾ (id,1)",
        kind: InstanceKind::Prom,
        axes: AB,
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::TrianglePom,
        name: "triangle-pom",
        statement: "M(ε)∘η = id",
        kind: InstanceKind::Representation,
        axes: MS,
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::UnitNatural,
        name: "unit-natural",
        statement: "η∘(φ,ψ) = M(R(φ,ψ))∘η",
        kind: InstanceKind::PromMorphism,
        axes: &["A", "B", "A'", "B'"],
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::CounitNatural,
        name: "counit-natural",
        statement: "ε∘R(M(φ,τ)) = (φ,τ)∘ε",
        kind: InstanceKind::RepMorphism,
        axes: &["M", "S", "M'", "S'"],
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::PsiCharacterization,
        name: "psi-characterization",
        statement: "∈⨾(Ψτ)^* = τ⨾y",
        kind: InstanceKind::Saturation,
        axes: &["M", "B"],
        exhaustive_default: 2,
    },
    LawInfo {
        id: LawId::SoundnessResidualEquiv,
        name: "soundness-residual-equiv",
        statement: "⊨⨾≤ ≤ ⊨ ⇔ ≤ ≤ ⊨\\⊨",
        kind: InstanceKind::Satisfaction,
        axes: MS,
        exhaustive_default: 2,
    },
];

impl LawId {
    pub fn all() -> impl Iterator<Item = LawId> {
        CATALOG.iter().map(|info| info.id)
    }

    pub fn info(self) -> &'static LawInfo {
        CATALOG.iter().find(|info| info.id == self).expect("every law is catalogued")
    }

    pub fn name(self) -> &'static str {
        self.info().name
    }

    pub fn kind(self) -> InstanceKind {
        self.info().kind
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CATALOG
            .iter()
            .find(|info| info.name == s)
            .map(|info| info.id)
            .ok_or_else(|| HarnessError::UnknownLaw(s.to_string()))
    }
}

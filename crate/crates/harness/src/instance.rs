//! Law inputs and their workspace encoding.
//!
//! Every instance kind is stored under fixed names so that a witness file
//! can be replayed without extra metadata.

use std::sync::Arc;

use promrep_core::workspace::{FormatError, Workspace};
use promrep_core::{FinSet, FnMap, Preorder, Prom, PromMorphism, Rel, RepMorphism, Representation};

use crate::error::HarnessError;
use crate::laws::InstanceKind;

#[derive(Debug, Clone)]
pub enum Instance {
    Triple { x: Rel, y: Rel, z: Rel },
    Modular { x: Rel, y: Rel, f: FnMap, g: FnMap },
    Endorelation(Rel),
    Relation(Rel),
    Carrier(Arc<FinSet>),
    Prom(Arc<Prom>),
    PromMorphism(PromMorphism),
    PromChain(PromMorphism, PromMorphism),
    Representation(Arc<Representation>),
    RepMorphism(RepMorphism),
    RepChain(RepMorphism, RepMorphism),
    HomSets(Arc<Prom>, Arc<Representation>),
    Saturation { tau: Rel, y: Preorder },
    Satisfaction { sat: Rel, ord: Rel },
}

fn prom_sizes(p: &Prom) -> [usize; 2] {
    [p.source().len(), p.target().len()]
}

fn rep_sizes(r: &Representation) -> [usize; 2] {
    [r.models().len(), r.statements().len()]
}

impl Instance {
    pub fn kind(&self) -> InstanceKind {
        match self {
            Instance::Triple { .. } => InstanceKind::Triple,
            Instance::Modular { .. } => InstanceKind::Modular,
            Instance::Endorelation(_) => InstanceKind::Endorelation,
            Instance::Relation(_) => InstanceKind::Relation,
            Instance::Carrier(_) => InstanceKind::Carrier,
            Instance::Prom(_) => InstanceKind::Prom,
            Instance::PromMorphism(_) => InstanceKind::PromMorphism,
            Instance::PromChain(..) => InstanceKind::PromChain,
            Instance::Representation(_) => InstanceKind::Representation,
            Instance::RepMorphism(_) => InstanceKind::RepMorphism,
            Instance::RepChain(..) => InstanceKind::RepChain,
            Instance::HomSets(..) => InstanceKind::HomSets,
            Instance::Saturation { .. } => InstanceKind::Saturation,
            Instance::Satisfaction { .. } => InstanceKind::Satisfaction,
        }
    }

    /// Carrier sizes in the order of the law's axes; chains repeat the
    /// pattern once per structure.
    pub fn carrier_sizes(&self) -> Vec<usize> {
        match self {
            Instance::Triple { x, y, .. } => vec![x.src().len(), x.dst().len(), y.dst().len()],
            Instance::Modular { x, y, f, g } => {
                vec![x.src().len(), x.dst().len(), y.dst().len(), f.src().len(), g.src().len()]
            }
            Instance::Endorelation(r) => vec![r.src().len()],
            Instance::Relation(r) => vec![r.src().len(), r.dst().len()],
            Instance::Carrier(s) => vec![s.len()],
            Instance::Prom(p) => prom_sizes(p).to_vec(),
            Instance::PromMorphism(m) => [prom_sizes(m.src()), prom_sizes(m.dst())].concat(),
            Instance::PromChain(m1, m2) => [prom_sizes(m1.src()), prom_sizes(m1.dst()), prom_sizes(m2.dst())].concat(),
            Instance::Representation(r) => rep_sizes(r).to_vec(),
            Instance::RepMorphism(m) => [rep_sizes(m.src()), rep_sizes(m.dst())].concat(),
            Instance::RepChain(m1, m2) => [rep_sizes(m1.src()), rep_sizes(m1.dst()), rep_sizes(m2.dst())].concat(),
            Instance::HomSets(p, r) => [prom_sizes(p), rep_sizes(r)].concat(),
            Instance::Saturation { tau, .. } => vec![tau.src().len(), tau.dst().len()],
            Instance::Satisfaction { sat, .. } => vec![sat.src().len(), sat.dst().len()],
        }
    }

    pub fn to_workspace(&self) -> Result<Workspace, FormatError> {
        let mut ws = Workspace::new();
        match self {
            Instance::Triple { x, y, z } => {
                ws.insert_relation("x", x)?;
                ws.insert_relation("y", y)?;
                ws.insert_relation("z", z)?;
            }
            Instance::Modular { x, y, f, g } => {
                ws.insert_relation("x", x)?;
                ws.insert_relation("y", y)?;
                ws.insert_function("f", f)?;
                ws.insert_function("g", g)?;
            }
            Instance::Endorelation(r) => ws.insert_relation("r", r)?,
            Instance::Relation(x) => ws.insert_relation("x", x)?,
            Instance::Carrier(s) => ws.insert_set(s)?,
            Instance::Prom(p) => ws.insert_prom("p", p)?,
            Instance::PromMorphism(m) => ws.insert_prom_morphism("m", m, "p", "q")?,
            Instance::PromChain(m1, m2) => {
                ws.insert_prom_morphism("m1", m1, "p0", "p1")?;
                ws.insert_prom_morphism("m2", m2, "p1", "p2")?;
            }
            Instance::Representation(r) => ws.insert_representation("R", r)?,
            Instance::RepMorphism(m) => ws.insert_rep_morphism("m", m, "R", "R'")?,
            Instance::RepChain(m1, m2) => {
                ws.insert_rep_morphism("m1", m1, "R0", "R1")?;
                ws.insert_rep_morphism("m2", m2, "R1", "R2")?;
            }
            Instance::HomSets(p, r) => {
                ws.insert_prom("p", p)?;
                ws.insert_representation("R", r)?;
            }
            Instance::Saturation { tau, y } => {
                ws.insert_relation("tau", tau)?;
                ws.insert_preorder("y", y)?;
            }
            Instance::Satisfaction { sat, ord } => {
                ws.insert_relation("sat", sat)?;
                ws.insert_relation("ord", ord)?;
            }
        }
        Ok(ws)
    }

    /// Reads back an instance written by [`Instance::to_workspace`].
    pub fn from_workspace(kind: InstanceKind, ws: &Workspace) -> Result<Instance, HarnessError> {
        Ok(match kind {
            InstanceKind::Triple => Instance::Triple {
                x: ws.relation("x")?,
                y: ws.relation("y")?,
                z: ws.relation("z")?,
            },
            InstanceKind::Modular => Instance::Modular {
                x: ws.relation("x")?,
                y: ws.relation("y")?,
                f: ws.function("f")?,
                g: ws.function("g")?,
            },
            InstanceKind::Endorelation => Instance::Endorelation(ws.relation("r")?),
            InstanceKind::Relation => Instance::Relation(ws.relation("x")?),
            InstanceKind::Carrier => {
                let names: Vec<&String> = ws.file().sets.keys().collect();
                match names.as_slice() {
                    [name] => Instance::Carrier(ws.set(name)?.clone()),
                    _ => return Err(HarnessError::Witness("a carrier instance holds exactly one set".into())),
                }
            }
            InstanceKind::Prom => Instance::Prom(ws.prom("p")?),
            InstanceKind::PromMorphism => Instance::PromMorphism(ws.prom_morphism("m")?),
            InstanceKind::PromChain => Instance::PromChain(ws.prom_morphism("m1")?, ws.prom_morphism("m2")?),
            InstanceKind::Representation => Instance::Representation(ws.representation("R")?),
            InstanceKind::RepMorphism => Instance::RepMorphism(ws.rep_morphism("m")?),
            InstanceKind::RepChain => Instance::RepChain(ws.rep_morphism("m1")?, ws.rep_morphism("m2")?),
            InstanceKind::HomSets => Instance::HomSets(ws.prom("p")?, ws.representation("R")?),
            InstanceKind::Saturation => Instance::Saturation {
                tau: ws.relation("tau")?,
                y: ws.preorder("y")?,
            },
            InstanceKind::Satisfaction => Instance::Satisfaction {
                sat: ws.relation("sat")?,
                ord: ws.relation("ord")?,
            },
        })
    }
}

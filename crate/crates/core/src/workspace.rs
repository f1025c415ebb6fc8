//! The JSON workspace format: named sets, relations, functions and
//! structures that refer to them by name.
//!
//! ```json
//! {
//!   "sets": {"A": ["a"], "B": ["b0", "b1"]},
//!   "relations": {
//!     "x": {"from": "A", "to": "A", "pairs": [["a", "a"]]},
//!     ...
//!   },
//!   "functions": {"f": {"from": "A", "to": "B", "map": {"a": "b1"}}},
//!   "structures": {"p": {"kind": "prom", "x": "x", "y": "y", "f": "f"}}
//! }
//! ```
//!
//! Structures are resolved with shape checks only, so files describing
//! structures that violate their axioms still load and can be audited.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::error::Error;
use crate::rel::{FinSet, FnMap, Rel};
use crate::structures::{AxiomCheck, Preorder, Prom, PromMorphism, RepMorphism, Representation};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed workspace: {0}")]
    Syntax(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("`{name}` is a {found}, expected a {expected}")]
    WrongKind {
        name: String,
        expected: &'static str,
        found: &'static str,
    },

    #[error("name `{0}` is already bound to different content")]
    NameConflict(String),

    #[error("`{name}`: {source}")]
    Core {
        name: String,
        #[source]
        source: Error,
    },
}

fn core(name: &str) -> impl FnOnce(Error) -> FormatError + '_ {
    move |source| FormatError::Core {
        name: name.to_string(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationEntry {
    pub from: String,
    pub to: String,
    pub pairs: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionEntry {
    pub from: String,
    pub to: String,
    pub map: IndexMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StructureEntry {
    Preorder { rel: String },
    Prom { x: String, y: String, f: String },
    Representation { sat: String, ord: String },
    PromMorphism { src: String, dst: String, phi: String, psi: String },
    RepMorphism { src: String, dst: String, phi: String, tau: String },
}

impl StructureEntry {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureEntry::Preorder { .. } => "preorder",
            StructureEntry::Prom { .. } => "prom",
            StructureEntry::Representation { .. } => "representation",
            StructureEntry::PromMorphism { .. } => "prom_morphism",
            StructureEntry::RepMorphism { .. } => "rep_morphism",
        }
    }
}

/// The raw file contents, in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    #[serde(default)]
    pub sets: IndexMap<String, Vec<String>>,
    #[serde(default)]
    pub relations: IndexMap<String, RelationEntry>,
    #[serde(default)]
    pub functions: IndexMap<String, FunctionEntry>,
    #[serde(default)]
    pub structures: IndexMap<String, StructureEntry>,
}

impl WorkspaceFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))
    }

    /// Canonical text: two-space indentation, with arrays of scalars and
    /// objects of scalars kept on one line. Ends with a newline.
    pub fn render(&self) -> String {
        render_json(&serde_json::to_value(self).expect("workspace files serialize"))
    }
}

/// Renders any JSON value in the canonical workspace layout.
pub fn render_json(value: &Value) -> String {
    let mut out = String::new();
    render_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(is_scalar),
        Value::Object(fields) => fields.values().all(is_scalar),
        _ => true,
    }
}

fn render_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Array(items) if is_flat(v) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&item.to_string());
            }
            out.push(']');
        }
        Value::Object(fields) if is_flat(v) => {
            out.push('{');
            for (i, (key, item)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{}: {}", Value::from(key.as_str()), item);
            }
            out.push('}');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                render_value(item, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push(']');
        }
        Value::Object(fields) => {
            out.push_str("{\n");
            for (i, (key, item)) in fields.iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", Value::from(key.as_str()));
                render_value(item, depth + 1, out);
                out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// A resolved structure of any kind.
#[derive(Debug, Clone)]
pub enum Structure {
    Preorder(Preorder),
    Prom(Arc<Prom>),
    Representation(Arc<Representation>),
    PromMorphism(PromMorphism),
    RepMorphism(RepMorphism),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Preorder(_) => "preorder",
            Structure::Prom(_) => "prom",
            Structure::Representation(_) => "representation",
            Structure::PromMorphism(_) => "prom_morphism",
            Structure::RepMorphism(_) => "rep_morphism",
        }
    }

    pub fn audit(&self) -> Vec<AxiomCheck> {
        match self {
            Structure::Preorder(s) => s.audit(),
            Structure::Prom(s) => s.audit(),
            Structure::Representation(s) => s.audit(),
            Structure::PromMorphism(s) => s.audit(),
            Structure::RepMorphism(s) => s.audit(),
        }
    }
}

/// A workspace with its sets resolved; relations, functions and structures
/// are resolved on demand.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    file: WorkspaceFile,
    sets: HashMap<String, Arc<FinSet>>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Self::from_file(WorkspaceFile::parse(text)?)
    }

    pub fn from_file(file: WorkspaceFile) -> Result<Self, FormatError> {
        let mut sets = HashMap::new();
        for (name, labels) in &file.sets {
            sets.insert(name.clone(), FinSet::new(name.clone(), labels.iter().cloned()).map_err(core(name))?);
        }
        Ok(Workspace { file, sets })
    }

    pub fn file(&self) -> &WorkspaceFile {
        &self.file
    }

    pub fn into_file(self) -> WorkspaceFile {
        self.file
    }

    pub fn render(&self) -> String {
        self.file.render()
    }

    pub fn set(&self, name: &str) -> Result<&Arc<FinSet>, FormatError> {
        self.sets.get(name).ok_or_else(|| FormatError::Unknown {
            kind: "set",
            name: name.to_string(),
        })
    }

    pub fn relation(&self, name: &str) -> Result<Rel, FormatError> {
        let entry = self.file.relations.get(name).ok_or_else(|| FormatError::Unknown {
            kind: "relation",
            name: name.to_string(),
        })?;
        let (src, dst) = (self.set(&entry.from)?, self.set(&entry.to)?);
        Rel::from_label_pairs(src, dst, entry.pairs.iter().map(|[a, b]| (a.as_str(), b.as_str()))).map_err(core(name))
    }

    pub fn function(&self, name: &str) -> Result<FnMap, FormatError> {
        let entry = self.file.functions.get(name).ok_or_else(|| FormatError::Unknown {
            kind: "function",
            name: name.to_string(),
        })?;
        let (src, dst) = (self.set(&entry.from)?, self.set(&entry.to)?);
        FnMap::from_labels(src, dst, entry.map.iter().map(|(a, b)| (a.as_str(), b.as_str()))).map_err(core(name))
    }

    fn entry(&self, name: &str) -> Result<&StructureEntry, FormatError> {
        self.file.structures.get(name).ok_or_else(|| FormatError::Unknown {
            kind: "structure",
            name: name.to_string(),
        })
    }

    pub fn kind(&self, name: &str) -> Result<&'static str, FormatError> {
        Ok(self.entry(name)?.kind())
    }

    pub fn structure(&self, name: &str) -> Result<Structure, FormatError> {
        Ok(match self.entry(name)? {
            StructureEntry::Preorder { .. } => Structure::Preorder(self.preorder(name)?),
            StructureEntry::Prom { .. } => Structure::Prom(self.prom(name)?),
            StructureEntry::Representation { .. } => Structure::Representation(self.representation(name)?),
            StructureEntry::PromMorphism { .. } => Structure::PromMorphism(self.prom_morphism(name)?),
            StructureEntry::RepMorphism { .. } => Structure::RepMorphism(self.rep_morphism(name)?),
        })
    }

    fn wrong_kind(&self, name: &str, expected: &'static str) -> FormatError {
        FormatError::WrongKind {
            name: name.to_string(),
            expected,
            found: self.entry(name).map(StructureEntry::kind).unwrap_or("missing entry"),
        }
    }

    fn order(&self, name: &str) -> Result<Preorder, FormatError> {
        Preorder::new_unchecked(self.relation(name)?).map_err(core(name))
    }

    pub fn preorder(&self, name: &str) -> Result<Preorder, FormatError> {
        match self.entry(name)? {
            StructureEntry::Preorder { rel } => self.order(rel),
            _ => Err(self.wrong_kind(name, "preorder")),
        }
    }

    pub fn prom(&self, name: &str) -> Result<Arc<Prom>, FormatError> {
        match self.entry(name)? {
            StructureEntry::Prom { x, y, f } => {
                Prom::new_unchecked(self.order(x)?, self.order(y)?, self.function(f)?)
                    .map(Arc::new)
                    .map_err(core(name))
            }
            _ => Err(self.wrong_kind(name, "prom")),
        }
    }

    pub fn representation(&self, name: &str) -> Result<Arc<Representation>, FormatError> {
        match self.entry(name)? {
            StructureEntry::Representation { sat, ord } => Representation::new_unchecked(self.relation(sat)?, self.order(ord)?)
                .map(Arc::new)
                .map_err(core(name)),
            _ => Err(self.wrong_kind(name, "representation")),
        }
    }

    pub fn prom_morphism(&self, name: &str) -> Result<PromMorphism, FormatError> {
        match self.entry(name)? {
            StructureEntry::PromMorphism { src, dst, phi, psi } => PromMorphism::new_unchecked(
                self.prom(src)?,
                self.prom(dst)?,
                self.function(phi)?,
                self.function(psi)?,
            )
            .map_err(core(name)),
            _ => Err(self.wrong_kind(name, "prom_morphism")),
        }
    }

    pub fn rep_morphism(&self, name: &str) -> Result<RepMorphism, FormatError> {
        match self.entry(name)? {
            StructureEntry::RepMorphism { src, dst, phi, tau } => RepMorphism::new_unchecked(
                self.representation(src)?,
                self.representation(dst)?,
                self.function(phi)?,
                self.relation(tau)?,
            )
            .map_err(core(name)),
            _ => Err(self.wrong_kind(name, "rep_morphism")),
        }
    }

    fn bind<V: PartialEq>(
        map: &mut IndexMap<String, V>,
        name: &str,
        value: V,
    ) -> Result<(), FormatError> {
        match map.get(name) {
            Some(existing) if *existing == value => Ok(()),
            Some(_) => Err(FormatError::NameConflict(name.to_string())),
            None => {
                map.insert(name.to_string(), value);
                Ok(())
            }
        }
    }

    /// Adds a set under its own name. Re-adding identical content is a no-op.
    pub fn insert_set(&mut self, set: &Arc<FinSet>) -> Result<(), FormatError> {
        Self::bind(&mut self.file.sets, set.name(), set.labels().to_vec())?;
        self.sets.entry(set.name().to_string()).or_insert_with(|| set.clone());
        Ok(())
    }

    pub fn insert_relation(&mut self, name: &str, rel: &Rel) -> Result<(), FormatError> {
        self.insert_set(rel.src())?;
        self.insert_set(rel.dst())?;
        let entry = RelationEntry {
            from: rel.src().name().to_string(),
            to: rel.dst().name().to_string(),
            pairs: rel
                .pairs()
                .map(|p| {
                    let (a, b) = rel.label_pair(p);
                    [a, b]
                })
                .collect(),
        };
        Self::bind(&mut self.file.relations, name, entry)
    }

    pub fn insert_function(&mut self, name: &str, f: &FnMap) -> Result<(), FormatError> {
        self.insert_set(f.src())?;
        self.insert_set(f.dst())?;
        let entry = FunctionEntry {
            from: f.src().name().to_string(),
            to: f.dst().name().to_string(),
            map: (0..f.src().len())
                .map(|i| (f.src().label(i).to_string(), f.dst().label(f.apply(i)).to_string()))
                .collect(),
        };
        Self::bind(&mut self.file.functions, name, entry)
    }

    fn insert_entry(&mut self, name: &str, entry: StructureEntry) -> Result<(), FormatError> {
        Self::bind(&mut self.file.structures, name, entry)
    }

    /// Adds a preorder; its relation is stored as `<name>.rel`.
    pub fn insert_preorder(&mut self, name: &str, p: &Preorder) -> Result<(), FormatError> {
        let rel = format!("{name}.rel");
        self.insert_relation(&rel, p.rel())?;
        self.insert_entry(name, StructureEntry::Preorder { rel })
    }

    /// Adds a prom with components `<name>.x`, `<name>.y`, `<name>.f`.
    pub fn insert_prom(&mut self, name: &str, p: &Prom) -> Result<(), FormatError> {
        let (x, y, f) = (format!("{name}.x"), format!("{name}.y"), format!("{name}.f"));
        self.insert_relation(&x, p.x().rel())?;
        self.insert_relation(&y, p.y().rel())?;
        self.insert_function(&f, p.f())?;
        self.insert_entry(name, StructureEntry::Prom { x, y, f })
    }

    /// Adds a representation with components `<name>.sat`, `<name>.ord`.
    pub fn insert_representation(&mut self, name: &str, r: &Representation) -> Result<(), FormatError> {
        let (sat, ord) = (format!("{name}.sat"), format!("{name}.ord"));
        self.insert_relation(&sat, r.sat())?;
        self.insert_relation(&ord, r.ord().rel())?;
        self.insert_entry(name, StructureEntry::Representation { sat, ord })
    }

    /// Adds a prom morphism together with its endpoints under the given
    /// names.
    pub fn insert_prom_morphism(&mut self, name: &str, m: &PromMorphism, src: &str, dst: &str) -> Result<(), FormatError> {
        self.insert_prom(src, m.src())?;
        self.insert_prom(dst, m.dst())?;
        let (phi, psi) = (format!("{name}.phi"), format!("{name}.psi"));
        self.insert_function(&phi, m.phi())?;
        self.insert_function(&psi, m.psi())?;
        self.insert_entry(
            name,
            StructureEntry::PromMorphism {
                src: src.to_string(),
                dst: dst.to_string(),
                phi,
                psi,
            },
        )
    }

    /// Adds a representation morphism together with its endpoints under the
    /// given names.
    pub fn insert_rep_morphism(&mut self, name: &str, m: &RepMorphism, src: &str, dst: &str) -> Result<(), FormatError> {
        self.insert_representation(src, m.src())?;
        self.insert_representation(dst, m.dst())?;
        let (phi, tau) = (format!("{name}.phi"), format!("{name}.tau"));
        self.insert_function(&phi, m.phi())?;
        self.insert_relation(&tau, m.tau())?;
        self.insert_entry(
            name,
            StructureEntry::RepMorphism {
                src: src.to_string(),
                dst: dst.to_string(),
                phi,
                tau,
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = r#"{
      "sets": {"A": ["a"], "B": ["b0", "b1"]},
      "relations": {
        "x": {"from": "A", "to": "A", "pairs": [["a", "a"]]},
        "y": {"from": "B", "to": "B", "pairs": [["b0", "b0"], ["b0", "b1"], ["b1", "b1"]]}
      },
      "functions": {"f": {"from": "A", "to": "B", "map": {"a": "b1"}}},
      "structures": {"p": {"kind": "prom", "x": "x", "y": "y", "f": "f"}}
    }"#;

    #[test]
    fn parses_and_resolves_a_prom() {
        let ws = Workspace::parse(CHAIN).unwrap();
        let p = ws.prom("p").unwrap();
        assert!(p.check().is_ok());
        assert_eq!(p.f().image(), [1]);
        assert_eq!(ws.kind("p").unwrap(), "prom");
        assert!(matches!(ws.representation("p"), Err(FormatError::WrongKind { .. })));
        assert!(matches!(ws.prom("q"), Err(FormatError::Unknown { .. })));
    }

    #[test]
    fn render_is_stable_under_reparsing() {
        let ws = Workspace::parse(CHAIN).unwrap();
        let text = ws.render();
        let again = Workspace::parse(&text).unwrap();
        assert_eq!(again.file(), ws.file());
        assert_eq!(again.render(), text);
        assert!(text.contains(r#""map": {"a": "b1"}"#));
        assert!(text.contains(r#"    "y": {"#));
    }

    #[test]
    fn reference_errors() {
        let dangling = CHAIN.replace(r#""f": "f"}"#, r#""f": "g"}"#);
        let ws = Workspace::parse(&dangling).unwrap();
        assert!(matches!(ws.prom("p"), Err(FormatError::Unknown { kind: "function", .. })));

        let bad_label = CHAIN.replace(r#"["a", "a"]"#, r#"["a", "z"]"#);
        let ws = Workspace::parse(&bad_label).unwrap();
        assert!(matches!(ws.relation("x"), Err(FormatError::Core { .. })));

        let partial = CHAIN.replace(r#"{"a": "b1"}"#, "{}");
        let ws = Workspace::parse(&partial).unwrap();
        assert!(matches!(ws.function("f"), Err(FormatError::Core { source: Error::NotTotal { .. }, .. })));

        assert!(matches!(Workspace::parse("{"), Err(FormatError::Syntax(_))));
        assert!(matches!(Workspace::parse(r#"{"extra": {}}"#), Err(FormatError::Syntax(_))));
    }

    #[test]
    fn invalid_structures_still_load() {
        let broken = CHAIN.replace(r#""pairs": [["a", "a"]]"#, r#""pairs": []"#);
        let ws = Workspace::parse(&broken).unwrap();
        let audit = ws.structure("p").unwrap().audit();
        assert!(audit.iter().any(|c| !c.holds()));
    }

    #[test]
    fn insertion_round_trips_and_detects_conflicts() {
        let ws = Workspace::parse(CHAIN).unwrap();
        let p = ws.prom("p").unwrap();
        let mut out = Workspace::new();
        out.insert_prom("q", &p).unwrap();
        out.insert_prom("q", &p).unwrap();
        let reread = Workspace::parse(&out.render()).unwrap();
        assert_eq!(reread.prom("q").unwrap(), p);

        let other = FinSet::new("B", ["c"]).unwrap();
        assert!(matches!(out.insert_set(&other), Err(FormatError::NameConflict(_))));
    }
}

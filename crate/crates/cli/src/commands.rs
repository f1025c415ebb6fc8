use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use promrep_core::adjunction::{counit, galois_lift, galois_lower, unit};
use promrep_core::functors::{to_prom, to_prom_morphism, to_rep_morphism, to_representation};
use promrep_core::workspace::{StructureEntry, Workspace};
use promrep_core::{PowersetCap, Prom, PromMorphism, RepMorphism, Representation, Violation};
use promrep_harness::{search, SearchConfig, Witness, CATALOG};

use crate::Functor;

pub enum Outcome {
    Holds,
    Refuted,
}

/// A usage or input error; reported on stderr with exit code 2.
pub struct CmdError(pub String);

impl<E: Display> From<E> for CmdError {
    fn from(e: E) -> Self {
        CmdError(e.to_string())
    }
}

type CmdResult = Result<Outcome, CmdError>;

fn load(file: &Path) -> Result<Workspace, CmdError> {
    let text = fs::read_to_string(file).map_err(|e| CmdError(format!("{}: {e}", file.display())))?;
    Ok(Workspace::parse(&text)?)
}

pub fn check(file: &Path, name: &str) -> CmdResult {
    let ws = load(file)?;
    let structure = ws.structure(name)?;
    let mut ok = true;
    for axiom in structure.audit() {
        match &axiom.violation {
            None => println!("{}: ok", axiom.name),
            Some(Violation { pair: Some((a, b)), .. }) => {
                ok = false;
                println!("{}: violated ({a}, {b})", axiom.name);
            }
            Some(_) => {
                ok = false;
                println!("{}: violated", axiom.name);
            }
        }
    }
    println!("{name}: {} {}", structure.kind(), if ok { "ok" } else { "violated" });
    Ok(if ok { Outcome::Holds } else { Outcome::Refuted })
}

fn valid<T>(name: &str, kind: &str, checked: Result<(), Violation>, value: T) -> Result<T, CmdError> {
    checked.map_err(|v| CmdError(format!("`{name}` is not a valid {kind}: {v}")))?;
    Ok(value)
}

fn prom(ws: &Workspace, name: &str) -> Result<Arc<Prom>, CmdError> {
    let p = ws.prom(name)?;
    valid(name, "prom", p.check(), p)
}

fn representation(ws: &Workspace, name: &str) -> Result<Arc<Representation>, CmdError> {
    let r = ws.representation(name)?;
    valid(name, "representation", r.check(), r)
}

/// A morphism with the names of its endpoints in the input file.
struct Named<T> {
    value: T,
    src: String,
    dst: String,
}

fn prom_morphism(ws: &Workspace, name: &str) -> Result<Named<PromMorphism>, CmdError> {
    let m = ws.prom_morphism(name)?;
    let Some(StructureEntry::PromMorphism { src, dst, .. }) = ws.file().structures.get(name) else {
        unreachable!("resolved as a prom morphism");
    };
    let value = valid(name, "prom morphism", m.check(), m)?;
    Ok(Named {
        value,
        src: src.clone(),
        dst: dst.clone(),
    })
}

fn rep_morphism(ws: &Workspace, name: &str) -> Result<Named<RepMorphism>, CmdError> {
    let m = ws.rep_morphism(name)?;
    let Some(StructureEntry::RepMorphism { src, dst, .. }) = ws.file().structures.get(name) else {
        unreachable!("resolved as a representation morphism");
    };
    let value = valid(name, "representation morphism", m.check(), m)?;
    Ok(Named {
        value,
        src: src.clone(),
        dst: dst.clone(),
    })
}

fn label(functor: Functor) -> &'static str {
    match functor {
        Functor::R => "R",
        Functor::M => "M",
        Functor::Mr => "MR",
        Functor::Rm => "RM",
        Functor::Unit => "unit",
        Functor::Counit => "counit",
        Functor::Psi => "psi",
        Functor::Tee => "tee",
    }
}

fn wrong_kind(functor: Functor, name: &str, kind: &str, accepted: &str) -> CmdError {
    CmdError(format!("`{}` applies to {accepted}, but `{name}` is a {kind}", label(functor)))
}

pub fn apply(functor: Functor, file: &Path, name: &str, prom_name: Option<&str>, rep_name: Option<&str>, cap: PowersetCap) -> CmdResult {
    let ws = load(file)?;
    let kind = ws.kind(name)?;
    let out_name = format!("{}({name})", label(functor));
    let image = |f: &str, of: &str| format!("{f}({of})");
    let mut out = Workspace::new();
    match (functor, kind) {
        (Functor::R, "prom") => out.insert_representation(&out_name, &to_representation(&*prom(&ws, name)?))?,
        (Functor::M, "representation") => out.insert_prom(&out_name, &to_prom(&*representation(&ws, name)?, cap)?)?,
        (Functor::Mr, "prom") => out.insert_prom(&out_name, &to_prom(&to_representation(&*prom(&ws, name)?), cap)?)?,
        (Functor::Rm, "representation") => out.insert_representation(&out_name, &to_representation(&to_prom(&*representation(&ws, name)?, cap)?))?,
        (Functor::R, "prom_morphism") => {
            let m = prom_morphism(&ws, name)?;
            out.insert_rep_morphism(&out_name, &to_rep_morphism(&m.value), &image("R", &m.src), &image("R", &m.dst))?
        }
        (Functor::M, "rep_morphism") => {
            let m = rep_morphism(&ws, name)?;
            out.insert_prom_morphism(&out_name, &to_prom_morphism(&m.value, cap)?, &image("M", &m.src), &image("M", &m.dst))?
        }
        (Functor::Mr, "prom_morphism") => {
            let m = prom_morphism(&ws, name)?;
            let mr = to_prom_morphism(&to_rep_morphism(&m.value), cap)?;
            out.insert_prom_morphism(&out_name, &mr, &image("MR", &m.src), &image("MR", &m.dst))?
        }
        (Functor::Rm, "rep_morphism") => {
            let m = rep_morphism(&ws, name)?;
            let rm = to_rep_morphism(&to_prom_morphism(&m.value, cap)?);
            out.insert_rep_morphism(&out_name, &rm, &image("RM", &m.src), &image("RM", &m.dst))?
        }
        (Functor::Unit, "prom") => out.insert_prom_morphism(&out_name, &unit(&prom(&ws, name)?, cap)?, name, &image("MR", name))?,
        (Functor::Counit, "representation") => {
            out.insert_rep_morphism(&out_name, &counit(&representation(&ws, name)?, cap)?, &image("RM", name), name)?
        }
        (Functor::Psi, "rep_morphism") => {
            let p_name = prom_name.ok_or_else(|| CmdError("`psi` needs the source prom of the hom-set via --prom".into()))?;
            let p = prom(&ws, p_name)?;
            let m = rep_morphism(&ws, name)?;
            out.insert_prom_morphism(&out_name, &galois_lift(&p, &m.value, cap)?, p_name, &image("M", &m.dst))?
        }
        (Functor::Tee, "prom_morphism") => {
            let r_name = rep_name.ok_or_else(|| CmdError("`tee` needs the target representation of the hom-set via --rep".into()))?;
            let r = representation(&ws, r_name)?;
            let m = prom_morphism(&ws, name)?;
            out.insert_rep_morphism(&out_name, &galois_lower(&r, &m.value, cap)?, &image("R", &m.src), r_name)?
        }
        (Functor::R | Functor::Mr | Functor::Unit, _) => {
            let accepted = if matches!(functor, Functor::Unit) { "proms" } else { "proms and prom morphisms" };
            return Err(wrong_kind(functor, name, kind, accepted));
        }
        (Functor::M | Functor::Rm | Functor::Counit, _) => {
            let accepted = if matches!(functor, Functor::Counit) {
                "representations"
            } else {
                "representations and representation morphisms"
            };
            return Err(wrong_kind(functor, name, kind, accepted));
        }
        (Functor::Psi, _) => return Err(wrong_kind(functor, name, kind, "representation morphisms")),
        (Functor::Tee, _) => return Err(wrong_kind(functor, name, kind, "prom morphisms")),
    }
    print!("{}", out.render());
    Ok(Outcome::Holds)
}

pub fn verify(config: &SearchConfig, pretty: bool) -> CmdResult {
    let start = Instant::now();
    let summary = search(config)?;
    let elapsed = start.elapsed();
    if pretty {
        print!("{}", summary.render_pretty());
    } else {
        print!("{}", summary.render());
    }
    eprintln!("elapsed_ms: {}", elapsed.as_millis());
    match &summary.witness {
        None => Ok(Outcome::Holds),
        Some(witness) => {
            println!();
            print!("{}", witness.to_json());
            Ok(Outcome::Refuted)
        }
    }
}

pub fn replay(file: &Path, cap: PowersetCap) -> CmdResult {
    let text = fs::read_to_string(file).map_err(|e| CmdError(format!("{}: {e}", file.display())))?;
    let witness = Witness::parse(&text)?;
    match witness.replay(cap)? {
        Some(failure) => {
            println!("{}: reproduced ({})", witness.law, failure.tag);
            Ok(Outcome::Refuted)
        }
        None => {
            println!("{}: not reproduced", witness.law);
            Ok(Outcome::Holds)
        }
    }
}

pub fn laws() -> CmdResult {
    for info in CATALOG {
        println!("{}: {}", info.name, info.statement);
    }
    Ok(Outcome::Holds)
}

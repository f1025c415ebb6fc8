//! Exhaustive enumeration of small structures.
//!
//! Hard limits keep every enumeration desk-sized: a single relation has at
//! most [`MAX_RELATION_CELLS`] cells, representation-morphism relations at
//! most [`MAX_REP_MORPHISM_CELLS`], and prom-morphism candidate pairs are
//! bounded by [`MAX_PROM_MORPHISM_CANDIDATES`].

use std::sync::Arc;

use promrep_core::structures::is_preorder;
use promrep_core::{FinSet, FnMap, Preorder, Prom, PromMorphism, Rel, RepMorphism, Representation};

use crate::error::HarnessError;

pub const MAX_RELATION_CELLS: usize = 16;
pub const MAX_REP_MORPHISM_CELLS: usize = 9;
pub const MAX_PROM_MORPHISM_CANDIDATES: u64 = 1 << 16;

fn check_cells(src: &FinSet, dst: &FinSet, limit: usize) -> Result<usize, HarnessError> {
    let cells = src.len() * dst.len();
    if cells > limit {
        return Err(HarnessError::Bounds(format!(
            "relations {} ⇸ {} have {cells} cells, above the enumeration limit of {limit}",
            src.name(),
            dst.name()
        )));
    }
    Ok(cells)
}

/// Number of relations `src ⇸ dst`, after checking the cell limit.
pub fn relation_count(src: &FinSet, dst: &FinSet) -> Result<u64, HarnessError> {
    Ok(1u64 << check_cells(src, dst, MAX_RELATION_CELLS)?)
}

pub fn all_relations(src: &Arc<FinSet>, dst: &Arc<FinSet>) -> Result<Vec<Rel>, HarnessError> {
    let count = relation_count(src, dst)?;
    Ok((0..count).map(|mask| Rel::from_mask(src, dst, mask)).collect())
}

pub fn all_preorders(set: &Arc<FinSet>) -> Result<Vec<Preorder>, HarnessError> {
    Ok(all_relations(set, set)?
        .into_iter()
        .filter(|r| is_preorder(r).expect("square"))
        .map(|r| Preorder::new_unchecked(r).expect("square"))
        .collect())
}

/// Number of functions `src → dst`.
pub fn function_count(src: &FinSet, dst: &FinSet) -> u64 {
    (dst.len() as u64).saturating_pow(src.len() as u32)
}

/// Decodes function number `code` in mixed radix `|dst|`, first argument
/// least significant.
pub fn function_at(src: &Arc<FinSet>, dst: &Arc<FinSet>, mut code: u64) -> FnMap {
    let radix = dst.len() as u64;
    let image = (0..src.len())
        .map(|_| {
            let digit = code % radix;
            code /= radix;
            digit as usize
        })
        .collect();
    FnMap::new(src, dst, image).expect("digits are in range")
}

pub fn all_functions(src: &Arc<FinSet>, dst: &Arc<FinSet>) -> Vec<FnMap> {
    (0..function_count(src, dst)).map(|code| function_at(src, dst, code)).collect()
}

pub fn all_proms(a: &Arc<FinSet>, b: &Arc<FinSet>) -> Result<Vec<Arc<Prom>>, HarnessError> {
    let xs = all_preorders(a)?;
    let ys = all_preorders(b)?;
    let fs = all_functions(a, b);
    let mut out = Vec::new();
    for x in &xs {
        for y in &ys {
            for f in &fs {
                let p = Prom::new_unchecked(x.clone(), y.clone(), f.clone()).expect("shapes agree");
                if p.check().is_ok() {
                    out.push(Arc::new(p));
                }
            }
        }
    }
    Ok(out)
}

pub fn all_representations(m: &Arc<FinSet>, s: &Arc<FinSet>) -> Result<Vec<Arc<Representation>>, HarnessError> {
    let ords = all_preorders(s)?;
    let sats = all_relations(m, s)?;
    let mut out = Vec::new();
    for ord in &ords {
        for sat in &sats {
            if sat.compose(ord.rel()).expect("shapes agree").leq(sat).expect("same shape") {
                out.push(Arc::new(Representation::new_unchecked(sat.clone(), ord.clone()).expect("shapes agree")));
            }
        }
    }
    Ok(out)
}

/// Every prom morphism `p → q`, by filtering all pairs of maps.
pub fn all_prom_morphisms(p: &Arc<Prom>, q: &Arc<Prom>) -> Result<Vec<PromMorphism>, HarnessError> {
    let phis = function_count(p.source(), q.source());
    let psis = function_count(p.target(), q.target());
    if phis.saturating_mul(psis) > MAX_PROM_MORPHISM_CANDIDATES {
        return Err(HarnessError::Bounds(format!(
            "{} candidate prom morphisms, above the enumeration limit of {MAX_PROM_MORPHISM_CANDIDATES}",
            phis.saturating_mul(psis)
        )));
    }
    let mut out = Vec::new();
    // Commutation is cheap and most selective, so test it first.
    for psi in all_functions(p.target(), q.target()) {
        for phi in all_functions(p.source(), q.source()) {
            let commutes = (0..p.source().len()).all(|a| psi.apply(p.f().apply(a)) == q.f().apply(phi.apply(a)));
            if !commutes {
                continue;
            }
            let m = PromMorphism::new_unchecked(p.clone(), q.clone(), phi, psi.clone()).expect("shapes agree");
            if m.check().is_ok() {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Every representation morphism `r → r2`: all statement maps and all
/// model relations `M' ⇸ M`, filtered by the morphism equation.
pub fn enumerate_rep_morphisms(r: &Arc<Representation>, r2: &Arc<Representation>) -> Result<Vec<RepMorphism>, HarnessError> {
    check_cells(r2.models(), r.models(), MAX_REP_MORPHISM_CELLS)?;
    let taus = all_relations(r2.models(), r.models())?;
    let mut out = Vec::new();
    for phi in all_functions(r.statements(), r2.statements()) {
        let monotone = r
            .ord()
            .rel()
            .pairs()
            .all(|(s, t)| r2.ord().holds(phi.apply(s), phi.apply(t)));
        if !monotone {
            continue;
        }
        let rhs = r2.sat().compose(&phi.inverse_graph()).expect("shapes agree");
        for tau in &taus {
            if tau.compose(r.sat()).expect("shapes agree") == rhs {
                out.push(RepMorphism::new_unchecked(r.clone(), r2.clone(), phi.clone(), tau.clone()).expect("shapes agree"));
            }
        }
    }
    Ok(out)
}

/// All size vectors below `max`, ordered by total size and then
/// lexicographically.
pub fn shapes(max: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &m in max {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=m).map(move |n| {
                    let mut v = prefix.clone();
                    v.push(n);
                    v
                })
            })
            .collect();
    }
    out.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::carrier;

    #[test]
    fn counts_on_small_carriers() {
        let two = carrier("A", 2);
        assert_eq!(all_relations(&two, &two).unwrap().len(), 16);
        assert_eq!(all_preorders(&two).unwrap().len(), 4);
        assert_eq!(all_preorders(&carrier("A", 3)).unwrap().len(), 29);
        assert_eq!(all_functions(&carrier("A", 3), &two).len(), 8);
        assert_eq!(all_functions(&carrier("A", 0), &carrier("B", 0)).len(), 1);
        assert!(all_functions(&carrier("A", 1), &carrier("B", 0)).is_empty());
        assert!(all_relations(&carrier("A", 5), &carrier("B", 4)).is_err());
    }

    #[test]
    fn representation_count_on_two_by_two() {
        // 16 on the discrete order, 9 on each chain, 4 on the chaotic order.
        let reps = all_representations(&carrier("M", 2), &carrier("S", 2)).unwrap();
        assert_eq!(reps.len(), 38);
        assert!(reps.iter().all(|r| r.check().is_ok()));
    }

    #[test]
    fn rep_morphisms_contain_the_identity_and_are_valid() {
        let m = carrier("M", 2);
        let s = carrier("S", 1);
        for r in all_representations(&m, &s).unwrap() {
            let morphisms = enumerate_rep_morphisms(&r, &r).unwrap();
            assert!(morphisms.len() <= 16);
            assert!(morphisms.contains(&RepMorphism::identity(&r)));
            assert!(morphisms.iter().all(|n| n.check().is_ok()));
        }
        let big = Arc::new(Representation::new(Rel::empty(&carrier("M", 4), &s), Preorder::discrete(&s)).unwrap());
        let small = Arc::new(Representation::new(Rel::empty(&carrier("M", 3), &s), Preorder::discrete(&s)).unwrap());
        assert!(enumerate_rep_morphisms(&big, &small).is_err());
    }

    #[test]
    fn prom_morphisms_contain_the_identity() {
        for p in all_proms(&carrier("A", 2), &carrier("B", 2)).unwrap() {
            let ms = all_prom_morphisms(&p, &p).unwrap();
            assert!(ms.contains(&PromMorphism::identity(&p)));
            assert!(ms.iter().all(|m| m.check().is_ok()));
        }
    }

    #[test]
    fn shapes_are_size_ordered() {
        let s = shapes(&[1, 2]);
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], vec![0, 0]);
        assert_eq!(s.last().unwrap(), &vec![1, 2]);
        assert!(s.windows(2).all(|w| w[0].iter().sum::<usize>() <= w[1].iter().sum::<usize>()));
    }
}

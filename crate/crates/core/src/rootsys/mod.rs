//! Root systems of the four twisted affine families.
//!
//! Membership in `R`, `R_0(1)` and `R_0(2)` is decided by the clause lists in
//! [`tables`]. Dot roots and S-sets are obtained by projecting those clauses;
//! the independently stored per-dot-root tables are used only to cross-check.

pub mod checks;
pub mod params;
pub mod progression;
pub mod render;
pub mod tables;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::RootVector;
pub use params::{AffineFamily, AlgebraParams, Component};
pub use progression::ProgressionSet;
use tables::{Clause, Pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootClass {
    Real,
    Imaginary,
    Nonsingular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// Where a root sits relative to the even part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Placement {
    #[serde(rename = "in_r0_1")]
    InR0_1,
    #[serde(rename = "in_r0_2")]
    InR0_2,
    #[serde(rename = "odd_part")]
    OddPart,
    #[serde(rename = "imaginary_only")]
    ImaginaryOnly,
}

/// Classification of a nonzero root.
///
/// `parity` is `None` for imaginary roots: the even/odd split of imaginary
/// root spaces is not determined by the root data alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInfo {
    pub class: RootClass,
    pub parity: Option<Parity>,
    pub component: Placement,
}

fn matches_any(clauses: &[Clause], p: &AlgebraParams, v: &RootVector) -> bool {
    match Pattern::of(v) {
        Some(pat) => clauses.iter().any(|c| c.matches(p, pat, v.dc)),
        None => false,
    }
}

/// Membership in `R` (including `0` and `ℤδ`).
pub fn is_root(p: &AlgebraParams, v: &RootVector) -> Result<bool> {
    p.check_dims(v)?;
    Ok(matches_any(tables::root_clauses(p.family), p, v))
}

/// Membership in `R_0(i)`; always false for an absent component.
pub fn in_even(p: &AlgebraParams, comp: Component, v: &RootVector) -> Result<bool> {
    p.check_dims(v)?;
    Ok(p.has_component(comp) && matches_any(tables::even_clauses(p.family, comp), p, v))
}

/// Class read off from which table clause a root matches.
pub fn syntactic_class(v: &RootVector) -> Option<RootClass> {
    Pattern::of(v).map(|pat| match pat {
        Pattern::Zero => RootClass::Imaginary,
        Pattern::EpsDel => RootClass::Nonsingular,
        _ => RootClass::Real,
    })
}

/// Class read off from the form: nonisotropic is real, `ℤδ` is imaginary.
pub fn metric_class(v: &RootVector) -> RootClass {
    if !v.norm().is_zero() {
        RootClass::Real
    } else if v.is_dot_zero() {
        RootClass::Imaginary
    } else {
        RootClass::Nonsingular
    }
}

pub fn classify(p: &AlgebraParams, v: &RootVector) -> Result<RootInfo> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !is_root(p, v)? {
        return Err(Error::NotARoot(v.clone()));
    }
    let syntactic = syntactic_class(v).ok_or_else(|| Error::NotARoot(v.clone()))?;
    let metric = metric_class(v);
    if syntactic != metric {
        return Err(Error::ClassificationDisagreement {
            root: v.clone(),
            syntactic: format!("{syntactic:?}"),
            metric: format!("{metric:?}"),
        });
    }
    if syntactic == RootClass::Imaginary {
        return Ok(RootInfo {
            class: syntactic,
            parity: None,
            component: Placement::ImaginaryOnly,
        });
    }
    let component = if in_even(p, Component::One, v)? {
        Placement::InR0_1
    } else if in_even(p, Component::Two, v)? {
        Placement::InR0_2
    } else {
        Placement::OddPart
    };
    let parity = if component == Placement::OddPart {
        Parity::Odd
    } else {
        Parity::Even
    };
    Ok(RootInfo {
        class: syntactic,
        parity: Some(parity),
        component,
    })
}

/// All roots with `|dc| <= mmax`, sorted by `(dc, eps, del)`.
pub fn enumerate_window(p: &AlgebraParams, mmax: i64) -> Vec<RootVector> {
    let mut out = Vec::new();
    for alpha in dot_roots(p) {
        let s = s_set_any(p, &alpha);
        out.extend(s.members_in(-mmax, mmax).map(|n| alpha.with_dc(n)));
    }
    out.sort();
    out.dedup();
    out
}

fn project(p: &AlgebraParams, clauses: &[Clause]) -> Vec<RootVector> {
    let mut out: Vec<RootVector> = clauses
        .iter()
        .filter(|c| c.cond.holds(p.k, p.l))
        .flat_map(|c| c.pattern.expand(p.k, p.l))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `Ṙ`, sorted, including `0`.
pub fn dot_roots(p: &AlgebraParams) -> Vec<RootVector> {
    project(p, tables::root_clauses(p.family))
}

/// `Ṙ_0(i)`, sorted, including `0` when the component is present. Empty for
/// an absent component; check [`AlgebraParams::has_component`] to tell the
/// two apart.
pub fn dot_roots_0(p: &AlgebraParams, comp: Component) -> Vec<RootVector> {
    if !p.has_component(comp) {
        return Vec::new();
    }
    project(p, tables::even_clauses(p.family, comp))
}

/// `Ṙ` rebuilt from the stored dot-root table instead of the clause lists.
pub fn dot_roots_from_table(p: &AlgebraParams) -> Vec<RootVector> {
    expand_all(p, tables::dot_table(p.family))
}

/// `Ṙ_0(i)` rebuilt from the stored table.
pub fn dot_roots_0_from_table(p: &AlgebraParams, comp: Component) -> Vec<RootVector> {
    if !p.has_component(comp) {
        return Vec::new();
    }
    expand_all(p, tables::dot_even_table(p.family, comp))
}

fn expand_all(p: &AlgebraParams, pats: &[Pattern]) -> Vec<RootVector> {
    let mut out: Vec<RootVector> = pats.iter().flat_map(|pat| pat.expand(p.k, p.l)).collect();
    out.sort();
    out.dedup();
    out
}

fn s_from_clauses(p: &AlgebraParams, clauses: &[Clause], alpha: &RootVector) -> ProgressionSet {
    let Some(pat) = Pattern::of(alpha) else {
        return ProgressionSet::empty();
    };
    clauses
        .iter()
        .filter(|c| c.pattern == pat && c.cond.holds(p.k, p.l))
        .fold(ProgressionSet::empty(), |acc, c| {
            acc.union(&c.progression())
        })
}

/// `S_α̇` for any δ-free vector; empty off `Ṙ`.
pub(crate) fn s_set_any(p: &AlgebraParams, alpha: &RootVector) -> ProgressionSet {
    s_from_clauses(p, tables::root_clauses(p.family), alpha)
}

/// `S_α̇(i)` for any δ-free vector; empty off `Ṙ_0(i)`.
pub(crate) fn s_set_0_any(
    p: &AlgebraParams,
    comp: Component,
    alpha: &RootVector,
) -> ProgressionSet {
    if !p.has_component(comp) {
        return ProgressionSet::empty();
    }
    s_from_clauses(p, tables::even_clauses(p.family, comp), alpha)
}

/// `S_{α̇+β̇}` restricted to `R_0 = R_0(1) ∪ R_0(2)`.
pub(crate) fn s_set_even(p: &AlgebraParams, alpha: &RootVector) -> ProgressionSet {
    s_set_0_any(p, Component::One, alpha).union(&s_set_0_any(p, Component::Two, alpha))
}

fn require_dot(p: &AlgebraParams, alpha: &RootVector) -> Result<()> {
    p.check_dims(alpha)?;
    if alpha.dc != 0 || alpha.is_zero() {
        return Err(Error::NotADotRoot(alpha.clone()));
    }
    Ok(())
}

/// `S_α̇ = {σ | α̇ + σ ∈ R}` for `α̇ ∈ Ṙ∖{0}`.
pub fn s_set(p: &AlgebraParams, alpha: &RootVector) -> Result<ProgressionSet> {
    require_dot(p, alpha)?;
    let s = s_set_any(p, alpha);
    if s.is_empty() {
        return Err(Error::NotADotRoot(alpha.clone()));
    }
    Ok(s)
}

/// `S_α̇(i) = {σ | α̇ + σ ∈ R_0(i)}` for `α̇ ∈ Ṙ_0(i)`. `α̇ = 0` is allowed
/// and yields the imaginary part of `R_0(i)`.
pub fn s_set_0(p: &AlgebraParams, comp: Component, alpha: &RootVector) -> Result<ProgressionSet> {
    p.check_dims(alpha)?;
    if !p.has_component(comp) {
        return Err(Error::EmptyComponent(comp.index()));
    }
    if alpha.dc != 0 {
        return Err(Error::NotADotRoot(alpha.clone()));
    }
    let s = s_set_0_any(p, comp, alpha);
    if s.is_empty() {
        return Err(Error::NotInComponent {
            root: alpha.clone(),
            component: comp.index(),
        });
    }
    Ok(s)
}

/// Entry of the stored S-table for `α̇`, if its pattern has a row.
pub fn s_set_from_table(p: &AlgebraParams, alpha: &RootVector) -> Option<ProgressionSet> {
    let pat = Pattern::of(alpha)?;
    tables::s_table(p.family)
        .iter()
        .find(|(row, _)| *row == pat)
        .map(|(_, prog)| tables::row_progression(*prog))
}

/// Entry of the stored `S(i)`-table for `α̇`, if its pattern has a row.
pub fn s_set_0_from_table(
    p: &AlgebraParams,
    comp: Component,
    alpha: &RootVector,
) -> Option<ProgressionSet> {
    let pat = Pattern::of(alpha)?;
    tables::s_even_table(p.family, comp)
        .iter()
        .find(|(row, _)| *row == pat)
        .map(|(_, prog)| tables::row_progression(*prog))
}

/// Class of a nonzero dot root; every member of `α̇ + S_α̇` shares it.
pub fn dot_class(alpha: &RootVector) -> Option<RootClass> {
    if alpha.is_dot_zero() {
        return None;
    }
    syntactic_class(&alpha.dot_part())
}

/// `Ṙ_re∖{0}`, sorted.
pub fn real_dot_roots(p: &AlgebraParams) -> Vec<RootVector> {
    dot_roots(p)
        .into_iter()
        .filter(|a| dot_class(a) == Some(RootClass::Real))
        .collect()
}

/// `Ṙ_ns∖{0}`, sorted.
pub fn nonsingular_dot_roots(p: &AlgebraParams) -> Vec<RootVector> {
    dot_roots(p)
        .into_iter()
        .filter(|a| dot_class(a) == Some(RootClass::Nonsingular))
        .collect()
}

/// Minimal modulus and residues of one `S_α̇`, and the residues mod the
/// global `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct REntry {
    pub root: RootVector,
    pub r_alpha: u32,
    pub residues: Vec<u32>,
    pub residues_mod_r: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RInvariants {
    pub r: u32,
    pub entries: Vec<REntry>,
}

impl RInvariants {
    pub fn get(&self, alpha: &RootVector) -> Option<&REntry> {
        self.entries.iter().find(|e| &e.root == alpha)
    }
}

/// `r_α̇` for every `α̇ ∈ Ṙ∖{0}` and `r = max r_α̇`.
pub fn r_invariants(p: &AlgebraParams) -> RInvariants {
    let sets: BTreeMap<RootVector, ProgressionSet> = dot_roots(p)
        .into_iter()
        .filter(|a| !a.is_dot_zero())
        .map(|a| {
            let s = s_set_any(p, &a);
            (a, s)
        })
        .collect();
    let r = sets
        .values()
        .map(ProgressionSet::modulus)
        .max()
        .unwrap_or(1);
    let entries = sets
        .into_iter()
        .map(|(root, s)| REntry {
            r_alpha: s.modulus(),
            residues: s.residues().collect(),
            residues_mod_r: s.residues_mod(r),
            root,
        })
        .collect();
    RInvariants { r, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(f: AffineFamily, k: usize, l: usize) -> AlgebraParams {
        AlgebraParams::new(f, k, l).unwrap()
    }

    #[test]
    fn membership_examples() {
        let p = params(AffineFamily::AEven2, 1, 1);
        let v = &p.eps(1).scale(2) + &p.delta();
        assert!(is_root(&p, &v).unwrap());
        let w = &p.del(1).scale(2) + &p.delta();
        assert!(!is_root(&p, &w).unwrap());
        assert!(is_root(&p, &p.zero()).unwrap());
        assert!(is_root(&p, &RootVector::zero(2, 1)).is_err());
    }

    #[test]
    fn classify_examples() {
        let p = params(AffineFamily::AEven2, 1, 2);
        let im = classify(&p, &p.delta()).unwrap();
        assert_eq!(im.class, RootClass::Imaginary);
        assert_eq!(im.parity, None);

        let ns = classify(&p, &(&p.eps(1) + &p.del(1))).unwrap();
        assert_eq!(
            (ns.class, ns.parity),
            (RootClass::Nonsingular, Some(Parity::Odd))
        );

        let re = classify(&p, &p.del(1).scale(2)).unwrap();
        assert_eq!(re.class, RootClass::Real);
        assert_eq!(re.parity, Some(Parity::Even));
        assert_eq!(re.component, Placement::InR0_1);

        assert_eq!(classify(&p, &p.zero()), Err(Error::ZeroVector));
        assert!(matches!(
            classify(&p, &p.eps(1).scale(3)),
            Err(Error::NotARoot(_))
        ));
    }

    #[test]
    fn dot_root_examples() {
        let p = params(AffineFamily::AOdd2, 1, 2);
        let d = dot_roots(&p);
        // ±2ε_1, ±δ_1±δ_2 (4), ±2δ_1, ±2δ_2, ±ε_1±δ_{1,2} (8), 0
        assert_eq!(d.len(), 2 + 4 + 4 + 8 + 1);
        assert!(d.contains(&p.eps(1).scale(2)));
        assert!(!d.contains(&p.eps(1)));

        let p = params(AffineFamily::D2, 1, 1);
        let d = dot_roots(&p);
        assert!(d.contains(&p.del(1)));
        assert!(d.contains(&p.del(1).scale(-2)));
        assert_eq!(d.len(), 2 + 2 + 2 + 4 + 1);
    }

    #[test]
    fn even_dot_roots() {
        let p = params(AffineFamily::A4, 0, 1);
        let d = dot_roots_0(&p, Component::One);
        assert_eq!(
            d,
            vec![
                p.del(1).scale(-2),
                p.del(1).scale(-1),
                p.zero(),
                p.del(1),
                p.del(1).scale(2)
            ]
        );
        let p = params(AffineFamily::AEven2, 0, 2);
        assert!(dot_roots_0(&p, Component::Two).is_empty());
    }

    #[test]
    fn s_set_examples() {
        let p = params(AffineFamily::AEven2, 1, 1);
        assert_eq!(
            s_set(&p, &p.eps(1).scale(2)).unwrap(),
            ProgressionSet::single(2, 1)
        );
        let p = params(AffineFamily::A4, 1, 1);
        assert_eq!(
            s_set(&p, &(&p.eps(1) + &p.del(1))).unwrap(),
            ProgressionSet::single(2, 0)
        );
        assert_eq!(
            s_set_0(&p, Component::One, &p.del(1)).unwrap(),
            ProgressionSet::single(2, 1)
        );
        let p = params(AffineFamily::D2, 1, 1);
        assert_eq!(s_set(&p, &p.eps(1)).unwrap(), ProgressionSet::integers());
        assert_eq!(
            s_set_0(&p, Component::One, &p.del(1).scale(2)).unwrap(),
            ProgressionSet::single(2, 0)
        );
        assert!(s_set(&p, &p.eps(1).scale(2)).is_err());
        assert!(s_set(&p, &p.delta()).is_err());
    }

    #[test]
    fn r_values() {
        let r = |f, k, l| r_invariants(&params(f, k, l)).r;
        assert_eq!(r(AffineFamily::AEven2, 1, 1), 2);
        assert_eq!(r(AffineFamily::AOdd2, 1, 2), 2);
        assert_eq!(r(AffineFamily::A4, 1, 1), 4);
        assert_eq!(r(AffineFamily::D2, 1, 1), 2);

        let p = params(AffineFamily::AEven2, 1, 1);
        let inv = r_invariants(&p);
        let e = inv.get(&p.eps(1)).unwrap();
        assert_eq!((e.r_alpha, e.residues_mod_r.clone()), (1, vec![0, 1]));
    }

    #[test]
    fn window_size() {
        let p = params(AffineFamily::AEven2, 1, 1);
        assert_eq!(enumerate_window(&p, 1).len(), 33);
    }
}

//! Shadow configurations: one state per real dot-root class.
//!
//! A class is `α̇ + S_α̇`. Its state says whether all of it is locally
//! nilpotent, all of it injective, or whether it splits along the δ
//! direction. A hybrid split is shared by a `±` pair and is always read
//! relative to the dot-positive member of the pair (see
//! [`RootVector::is_dot_positive`]).

pub mod random;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::RootVector;
use crate::rootsys::checks::{Counterexample, Verdict};
use crate::rootsys::{
    self, dot_roots, dot_roots_0, real_dot_roots, s_set_0_any, s_set_any, AffineFamily,
    AlgebraParams, Component, Parity, RootClass,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HybridCase {
    III,
    IV,
}

/// Split point of a hybrid pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HybridProfile {
    pub case: HybridCase,
    pub m: i64,
    pub t: i64,
}

impl HybridProfile {
    pub fn new(case: HybridCase, m: i64, t: i64) -> Result<Self> {
        if !(-1..=1).contains(&t) {
            return Err(Error::Config(format!(
                "hybrid t must be -1, 0 or 1, got {t}"
            )));
        }
        Ok(HybridProfile { case, m, t })
    }

    /// Locally nilpotent verdict for `±β̇ + nδ`, where `β̇` is the anchor of
    /// the pair and `positive` says which side is asked about.
    pub fn is_ln(&self, positive: bool, n: i64) -> bool {
        let (m, t) = (self.m, self.t);
        match (self.case, positive) {
            (HybridCase::III, true) => n <= m,
            (HybridCase::III, false) => n < t - m,
            (HybridCase::IV, true) => n >= m,
            (HybridCase::IV, false) => n > -m - t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassState {
    #[serde(rename = "full_ln")]
    FullLN,
    #[serde(rename = "full_in")]
    FullIN,
    Hybrid(HybridProfile),
}

impl ClassState {
    pub fn is_hybrid(self) -> bool {
        matches!(self, ClassState::Hybrid(_))
    }
}

/// One listed class in the JSON config file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub root: RootVector,
    pub state: ClassState,
}

/// On-disk config. The parameters may be omitted and supplied separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<AffineFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    pub classes: Vec<ClassEntry>,
}

/// States for every class of `Ṙ_re∖{0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowConfig {
    params: AlgebraParams,
    states: BTreeMap<RootVector, ClassState>,
}

/// The dot-positive member of `{α̇, −α̇}`.
pub fn anchor(alpha: &RootVector) -> RootVector {
    if alpha.is_dot_positive() {
        alpha.clone()
    } else {
        alpha.negate()
    }
}

impl ShadowConfig {
    /// Requires a state for every real dot root and nothing else.
    pub fn from_states(
        params: AlgebraParams,
        states: BTreeMap<RootVector, ClassState>,
    ) -> Result<Self> {
        let real: BTreeSet<RootVector> = real_dot_roots(&params).into_iter().collect();
        for key in states.keys() {
            params.check_dims(key)?;
            if !real.contains(key) {
                return Err(Error::Config(format!(
                    "{key} is not a nonzero real dot root"
                )));
            }
        }
        if let Some(missing) = real.iter().find(|a| !states.contains_key(*a)) {
            return Err(Error::Config(format!("no state given for class {missing}")));
        }
        Ok(ShadowConfig { params, states })
    }

    /// Builds a config from listed entries. A missing class is filled in
    /// only when its negative is hybrid, since the profile is then forced.
    pub fn from_entries(params: AlgebraParams, entries: &[ClassEntry]) -> Result<Self> {
        let mut states = BTreeMap::new();
        for e in entries {
            params.check_dims(&e.root)?;
            if states.insert(e.root.clone(), e.state).is_some() {
                return Err(Error::Config(format!("class {} listed twice", e.root)));
            }
        }
        for a in real_dot_roots(&params) {
            if states.contains_key(&a) {
                continue;
            }
            match states.get(&a.negate()) {
                Some(s @ ClassState::Hybrid(_)) => {
                    let s = *s;
                    states.insert(a, s);
                }
                _ => return Err(Error::Config(format!("no state given for class {a}"))),
            }
        }
        Self::from_states(params, states)
    }

    /// Parses the JSON format. Parameters in the file, if any, must match.
    pub fn from_json(params: AlgebraParams, text: &str) -> Result<Self> {
        let file: ConfigFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mismatch = file.family.is_some_and(|f| f != params.family)
            || file.k.is_some_and(|k| k != params.k)
            || file.l.is_some_and(|l| l != params.l);
        if mismatch {
            return Err(Error::Config(format!(
                "config parameters do not match {params}"
            )));
        }
        Self::from_entries(params, &file.classes)
    }

    pub fn to_file(&self) -> ConfigFile {
        ConfigFile {
            family: Some(self.params.family),
            k: Some(self.params.k),
            l: Some(self.params.l),
            classes: self
                .states
                .iter()
                .map(|(root, state)| ClassEntry {
                    root: root.clone(),
                    state: *state,
                })
                .collect(),
        }
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn states(&self) -> &BTreeMap<RootVector, ClassState> {
        &self.states
    }

    /// State of the class of a real dot root.
    pub fn state(&self, alpha: &RootVector) -> Option<ClassState> {
        self.states.get(&alpha.dot_part()).copied()
    }

    pub fn with_state(&self, alpha: &RootVector, s: ClassState) -> ShadowConfig {
        let mut c = self.clone();
        c.states.insert(alpha.clone(), s);
        c
    }
}

/// Which validation rule failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    HybridSymmetry,
    Doubling,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    pub detail: Counterexample,
}

/// Whether some member of the class of `α̇` is an odd root.
pub fn class_has_odd(p: &AlgebraParams, alpha: &RootVector) -> bool {
    let s = s_set_any(p, alpha);
    let even = s_set_0_any(p, Component::One, alpha).union(&s_set_0_any(p, Component::Two, alpha));
    !s.is_subset(&even)
}

/// Hybrid pairs share one profile, and a full class with an odd member
/// forces the same full state on its double.
pub fn validate(cfg: &ShadowConfig) -> std::result::Result<(), Violation> {
    for (a, s) in &cfg.states {
        let neg = cfg.states.get(&a.negate());
        let ok = match (s, neg) {
            (ClassState::Hybrid(h), Some(ClassState::Hybrid(g))) => h == g,
            (ClassState::Hybrid(_), _) | (_, Some(ClassState::Hybrid(_))) => false,
            _ => true,
        };
        if !ok {
            return Err(Violation {
                rule: Rule::HybridSymmetry,
                detail: Counterexample::new(
                    "hybrid class whose negative does not share its profile",
                    vec![a.clone(), a.negate()],
                ),
            });
        }
    }
    let p = &cfg.params;
    for (a, s) in &cfg.states {
        let double = a.scale(2);
        let Some(ds) = cfg.states.get(&double) else {
            continue;
        };
        if !class_has_odd(p, a) {
            continue;
        }
        let ok = match s {
            ClassState::FullLN => *ds == ClassState::FullLN,
            ClassState::FullIN => *ds == ClassState::FullIN,
            ClassState::Hybrid(_) => true,
        };
        if !ok {
            return Err(Violation {
                rule: Rule::Doubling,
                detail: Counterexample::new(
                    format!("class is {s:?} but its double is {ds:?}"),
                    vec![a.clone(), double],
                ),
            });
        }
    }
    Ok(())
}

fn real_root_state(cfg: &ShadowConfig, v: &RootVector) -> Result<ClassState> {
    cfg.params.check_dims(v)?;
    let info = rootsys::classify(&cfg.params, v).map_err(|_| Error::NotReal(v.clone()))?;
    if info.class != RootClass::Real {
        return Err(Error::NotReal(v.clone()));
    }
    cfg.state(v).ok_or_else(|| Error::NotReal(v.clone()))
}

/// Locally nilpotent verdict of a real root under the config.
pub fn member_ln(cfg: &ShadowConfig, v: &RootVector) -> Result<bool> {
    let s = real_root_state(cfg, v)?;
    Ok(ln_of(s, v))
}

/// Injective verdict; the complement of [`member_ln`] on real roots.
pub fn member_in(cfg: &ShadowConfig, v: &RootVector) -> Result<bool> {
    member_ln(cfg, v).map(|b| !b)
}

fn ln_of(s: ClassState, v: &RootVector) -> bool {
    match s {
        ClassState::FullLN => true,
        ClassState::FullIN => false,
        ClassState::Hybrid(h) => h.is_ln(v.is_dot_positive(), v.dc),
    }
}

pub fn is_hybrid_module(cfg: &ShadowConfig) -> bool {
    cfg.states.values().all(|s| s.is_hybrid())
}

pub fn is_tight(cfg: &ShadowConfig) -> bool {
    !is_hybrid_module(cfg)
}

/// Locally nilpotent real roots meet each nonempty `R_0(i) ∩ R_re` in a
/// nonempty proper subset, scanned on a window.
pub fn hypothesis_main2(cfg: &ShadowConfig, mmax: i64) -> Verdict {
    let p = &cfg.params;
    let name = format!("main hypothesis {p} mmax={mmax}");
    let mut checked = 0;
    for comp in p.components() {
        let (mut ln, mut other) = (None, None);
        for a in dot_roots_0(p, comp)
            .into_iter()
            .filter(|a| !a.is_dot_zero())
        {
            let Some(s) = cfg.state(&a) else { continue };
            for n in s_set_0_any(p, comp, &a).members_in(-mmax, mmax) {
                checked += 1;
                let v = a.with_dc(n);
                if ln_of(s, &v) {
                    ln.get_or_insert(v);
                } else {
                    other.get_or_insert(v);
                }
            }
        }
        let msg = match (&ln, &other) {
            (None, _) => "no locally nilpotent root",
            (_, None) => "every real root is locally nilpotent",
            _ => continue,
        };
        return Verdict::fail(
            name,
            checked,
            Counterexample::new(
                format!("component {comp}: {msg}"),
                ln.or(other).into_iter().collect(),
            ),
        );
    }
    Verdict::pass(name, checked)
}

/// Membership in `P = R_f-ln ∪ −R_f-in ∪ R_hyb ∪ ℤδ` for a real or
/// imaginary root. Depends only on the dot part.
pub fn in_p(cfg: &ShadowConfig, v: &RootVector) -> bool {
    if v.is_dot_zero() {
        return true;
    }
    dot_in_p(cfg, &v.dot_part())
}

fn dot_in_p(cfg: &ShadowConfig, a: &RootVector) -> bool {
    match cfg.states.get(a) {
        Some(ClassState::FullLN) | Some(ClassState::Hybrid(_)) => true,
        _ => cfg.states.get(&a.negate()) == Some(&ClassState::FullIN),
    }
}

/// `Ṗ = {α̇ ∈ Ṙ_re ∪ {0} | α̇ + S_α̇ ⊆ P}`, sorted.
pub fn derive_p(cfg: &ShadowConfig) -> Vec<RootVector> {
    let mut out = vec![cfg.params.zero()];
    out.extend(cfg.states.keys().filter(|a| dot_in_p(cfg, a)).cloned());
    out.sort();
    out
}

/// `P ∪ −P` covers the real and imaginary roots and `P` is closed under
/// sums landing in the window.
pub fn check_p(cfg: &ShadowConfig, mmax: i64) -> Verdict {
    check_p_with(cfg, mmax, Exec::default())
}

pub fn check_p_with(cfg: &ShadowConfig, mmax: i64, exec: Exec) -> Verdict {
    let p = &cfg.params;
    let name = format!("P closed and covering {p} mmax={mmax}");
    let real: Vec<RootVector> = cfg.states.keys().cloned().collect();
    for a in &real {
        if !dot_in_p(cfg, a) && !dot_in_p(cfg, &a.negate()) {
            let n = s_set_any(p, a).smallest_member().unwrap_or(0);
            return Verdict::fail(
                name,
                0,
                Counterexample::new("root in neither P nor -P", vec![a.with_dc(n)]),
            );
        }
    }
    let in_p: Vec<&RootVector> = real.iter().filter(|a| dot_in_p(cfg, a)).collect();
    let windows: BTreeMap<&RootVector, Vec<i64>> = real
        .iter()
        .map(|a| (a, s_set_any(p, a).members_in(-mmax, mmax).collect()))
        .collect();
    let dots: BTreeSet<RootVector> = dot_roots(p).into_iter().collect();
    let results = exec.map(&in_p, |a| {
        let mut checked = 0usize;
        for b in &in_p {
            let s = *a + *b;
            if s.is_dot_zero() || !cfg.states.contains_key(&s) {
                // zero sums are imaginary, hence in P; other non-real sums are
                // not in R_re ∪ R_im
                continue;
            }
            debug_assert!(dots.contains(&s));
            let ss = s_set_any(p, &s);
            for &m in &windows[*a] {
                for &n in &windows[*b] {
                    let dc = m + n;
                    if dc.abs() > mmax || !ss.contains(dc) {
                        continue;
                    }
                    checked += 1;
                    if !dot_in_p(cfg, &s) {
                        return (
                            checked,
                            Some(Counterexample::new(
                                "sum of two elements of P is a root outside P",
                                vec![a.with_dc(m), b.with_dc(n), s.with_dc(dc)],
                            )),
                        );
                    }
                }
            }
        }
        (checked, None)
    });
    let checked = results.iter().map(|(c, _)| c).sum();
    let failure = results.into_iter().find_map(|(_, f)| f);
    Verdict::from_outcome(name, checked, failure)
}

/// Every odd real class of the config together with its double, when the
/// double is a root; used by generators to respect the doubling rule.
pub fn doubling_pairs(p: &AlgebraParams) -> Vec<(RootVector, RootVector)> {
    let real: BTreeSet<RootVector> = real_dot_roots(p).into_iter().collect();
    real.iter()
        .filter(|a| class_has_odd(p, a) && real.contains(&a.scale(2)))
        .map(|a| (a.clone(), a.scale(2)))
        .collect()
}

/// Parity of a real root's class member, used in tests and reports.
pub fn parity_of(p: &AlgebraParams, v: &RootVector) -> Option<Parity> {
    rootsys::classify(p, v).ok().and_then(|i| i.parity)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(f: AffineFamily, k: usize, l: usize) -> AlgebraParams {
        AlgebraParams::new(f, k, l).unwrap()
    }

    fn uniform(p: AlgebraParams, s: ClassState) -> ShadowConfig {
        let states = real_dot_roots(&p).into_iter().map(|a| (a, s)).collect();
        ShadowConfig::from_states(p, states).unwrap()
    }

    fn hyb(case: HybridCase, m: i64, t: i64) -> ClassState {
        ClassState::Hybrid(HybridProfile::new(case, m, t).unwrap())
    }

    #[test]
    fn hybrid_case_three_displays() {
        let p = params(AffineFamily::AEven2, 1, 1);
        let cfg = uniform(p, hyb(HybridCase::III, 0, 0));
        let b = p.eps(1);
        let ln = |v: RootVector| member_ln(&cfg, &v).unwrap();
        assert!(!ln(b.shift(1)));
        assert!(ln(b.clone()));
        assert!(!ln(b.negate()));
        assert!(ln(b.negate().shift(-1)));
    }

    #[test]
    fn hybrid_case_four_displays() {
        let p = params(AffineFamily::AEven2, 1, 1);
        let cfg = uniform(p, hyb(HybridCase::IV, 0, 1));
        let b = p.eps(1);
        let ln = |v: RootVector| member_ln(&cfg, &v).unwrap();
        assert!(!ln(b.shift(-1)));
        assert!(ln(b.clone()));
        assert!(ln(b.negate()));
        assert!(!ln(b.negate().shift(-1)));
    }

    #[test]
    fn validate_examples() {
        let p = params(AffineFamily::AEven2, 1, 1);
        assert!(validate(&uniform(p, ClassState::FullLN)).is_ok());

        let bad = uniform(p, ClassState::FullLN)
            .with_state(&p.del(1).scale(2), hyb(HybridCase::III, 0, 0));
        let bad = bad.with_state(&p.del(1).scale(-2), hyb(HybridCase::III, 0, 0));
        assert_eq!(validate(&bad).unwrap_err().rule, Rule::Doubling);

        let asym = uniform(p, ClassState::FullLN)
            .with_state(&p.eps(1), hyb(HybridCase::III, 0, 1))
            .with_state(&p.eps(1).negate(), ClassState::FullIN);
        assert_eq!(validate(&asym).unwrap_err().rule, Rule::HybridSymmetry);
    }

    #[test]
    fn tight_and_hybrid() {
        let p = params(AffineFamily::D2, 1, 1);
        let all_h = uniform(p, hyb(HybridCase::III, 0, 0));
        assert!(is_hybrid_module(&all_h));
        assert!(is_tight(&all_h.with_state(&p.eps(1), ClassState::FullLN)));
        assert!(is_tight(&uniform(p, ClassState::FullIN)));
    }

    #[test]
    fn hypothesis_examples() {
        let p = params(AffineFamily::AEven2, 1, 1);
        assert!(!hypothesis_main2(&uniform(p, ClassState::FullLN), 4).passed());
        assert!(hypothesis_main2(&uniform(p, hyb(HybridCase::III, 0, 0)), 4).passed());
        let p0 = params(AffineFamily::AEven2, 0, 2);
        assert!(hypothesis_main2(&uniform(p0, hyb(HybridCase::III, 0, 0)), 4).passed());
    }

    #[test]
    fn p_membership() {
        let p = params(AffineFamily::AEven2, 1, 1);
        let cfg = uniform(p, ClassState::FullIN).with_state(&p.eps(1), ClassState::FullLN);
        assert!(in_p(&cfg, &p.eps(1).shift(3)));
        // ε_1 is full-ln, so −ε_1 (full-in) is in P only through −(−ε_1) ∉ R_f-in
        assert!(!in_p(&cfg, &p.eps(1).negate()));
        assert!(in_p(&cfg, &p.del(1)));
        assert!(in_p(&cfg, &p.delta()) && in_p(&cfg, &p.delta().negate()));
        // ε_1 + (−2ε_1 + δ) = −ε_1 + δ leaves P
        assert!(!check_p(&cfg, 6).passed());
        assert!(check_p(&uniform(p, ClassState::FullLN), 6).passed());
    }

    #[test]
    fn closure_failure_reported() {
        let p = params(AffineFamily::AEven2, 1, 2);
        let a = &p.del(1) - &p.del(2);
        let b = &p.del(1) + &p.del(2);
        let s = &a + &b;
        let h = hyb(HybridCase::III, 0, 0);
        let cfg = uniform(p, ClassState::FullLN)
            .with_state(&b, h)
            .with_state(&b.negate(), h)
            .with_state(&s, ClassState::FullIN)
            .with_state(&s.negate(), ClassState::FullLN);
        let v = check_p(&cfg, 6);
        let cex = v.failure.expect("closure must fail");
        assert_eq!(cex.witnesses.len(), 3);
        assert_eq!(cex.witnesses[2].dot_part(), s);
    }

    #[test]
    fn json_round_trip_and_inference() {
        let p = params(AffineFamily::AEven2, 1, 1);
        let text = r#"{"classes": [
            {"root": {"eps":[1],"del":[0],"dc":0}, "state": {"hybrid": {"case":"III","m":0,"t":1}}},
            {"root": {"eps":[-1],"del":[0],"dc":0}, "state": "full_in"}
        ]}"#;
        // missing full classes are rejected
        assert!(matches!(
            ShadowConfig::from_json(p, text),
            Err(Error::Config(_))
        ));

        let cfg = uniform(p, ClassState::FullLN).with_state(&p.eps(1), hyb(HybridCase::III, 1, -1));
        let mut file = cfg.to_file();
        file.classes.retain(|e| e.root != p.eps(1).negate());
        let text = serde_json::to_string(&file).unwrap();
        let back = ShadowConfig::from_json(p, &text).unwrap();
        assert_eq!(
            back.state(&p.eps(1).negate()),
            Some(hyb(HybridCase::III, 1, -1))
        );

        let err = ShadowConfig::from_json(p, "{\"classes\": [").unwrap_err();
        assert!(matches!(err, Error::Parse(ref m) if m.contains("line")));
    }

    #[test]
    fn modes_agree() {
        let p = params(AffineFamily::A4, 2, 2);
        let cfg = uniform(p, hyb(HybridCase::IV, 1, -1));
        assert_eq!(
            check_p_with(&cfg, 8, Exec::Sequential),
            check_p_with(&cfg, 8, Exec::Parallel)
        );
    }
}

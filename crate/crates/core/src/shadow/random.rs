//! Seeded generators for shadow configs and their adversarial mutations.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{anchor, doubling_pairs, ClassState, HybridCase, HybridProfile, ShadowConfig};
use crate::lattice::RootVector;
use crate::rootsys::{real_dot_roots, s_set_any, AlgebraParams};

pub fn random_profile<R: Rng + ?Sized>(rng: &mut R, mmax: i64) -> HybridProfile {
    let half = mmax / 2;
    HybridProfile {
        case: if rng.random_bool(0.5) {
            HybridCase::III
        } else {
            HybridCase::IV
        },
        m: rng.random_range(-half..=half),
        t: rng.random_range(-1..=1),
    }
}

/// Builds a config that agrees with a sign pattern: positive classes are
/// full-ln, negative ones full-in. Each sign-zero `±` pair is hybrid with a
/// random profile, or full-ln on both sides, or full-in on both sides. The
/// doubling rule is then imposed by copying a full state onto the double.
pub fn config_from_signs<R, F>(p: &AlgebraParams, sign: F, rng: &mut R, mmax: i64) -> ShadowConfig
where
    R: Rng + ?Sized,
    F: Fn(&RootVector) -> Ordering,
{
    let mut states = BTreeMap::new();
    for a in real_dot_roots(p)
        .into_iter()
        .filter(|a| a.is_dot_positive())
    {
        let neg = a.negate();
        let (sa, sn) = match sign(&a) {
            Ordering::Greater => (ClassState::FullLN, ClassState::FullIN),
            Ordering::Less => (ClassState::FullIN, ClassState::FullLN),
            Ordering::Equal => {
                let s = match rng.random_range(0..3) {
                    0 => ClassState::Hybrid(random_profile(rng, mmax)),
                    1 => ClassState::FullLN,
                    _ => ClassState::FullIN,
                };
                (s, s)
            }
        };
        states.insert(a, sa);
        states.insert(neg, sn);
    }
    let mut pairs = doubling_pairs(p);
    pairs.sort_by_key(|(a, _)| a.norm().0.abs());
    for (half, double) in pairs {
        let s = states[&half];
        if !s.is_hybrid() {
            states.insert(double, s);
        }
    }
    ShadowConfig::from_states(*p, states).expect("generator covers every real class")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// A hybrid class whose negative is full.
    HybridSymmetry,
    /// A full odd class whose double is hybrid.
    Doubling,
    /// `α̇` full-ln, `β̇` hybrid, `α̇+β̇` full-in with full-ln negative.
    Closure,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [
        Mutation::HybridSymmetry,
        Mutation::Doubling,
        Mutation::Closure,
    ];
}

fn full<R: Rng + ?Sized>(rng: &mut R) -> ClassState {
    if rng.random_bool(0.5) {
        ClassState::FullLN
    } else {
        ClassState::FullIN
    }
}

/// Real triples `(α̇, β̇, α̇+β̇)` with `α̇ ≠ ±β̇` whose sum is realized by roots
/// inside the window.
pub fn closure_triples(p: &AlgebraParams, mmax: i64) -> Vec<(RootVector, RootVector, RootVector)> {
    let real = real_dot_roots(p);
    let mut out = Vec::new();
    for a in &real {
        for b in &real {
            if a == b || *a == b.negate() {
                continue;
            }
            let s = a + b;
            if real.binary_search(&s).is_err() {
                continue;
            }
            let (sa, sb, ss) = (s_set_any(p, a), s_set_any(p, b), s_set_any(p, &s));
            let realized = sa.members_in(-mmax, mmax).any(|m| {
                sb.members_in(-mmax, mmax)
                    .any(|n| (m + n).abs() <= mmax && ss.contains(m + n))
            });
            if realized {
                out.push((a.clone(), b.clone(), s));
            }
        }
    }
    out
}

/// Applies one mutation at a random site. `None` when the root system has
/// no site for it (e.g. no odd class with a double).
pub fn mutate<R: Rng + ?Sized>(
    cfg: &ShadowConfig,
    kind: Mutation,
    rng: &mut R,
    mmax: i64,
) -> Option<ShadowConfig> {
    let p = *cfg.params();
    match kind {
        Mutation::HybridSymmetry => {
            let real = real_dot_roots(&p);
            let a = real.choose(rng)?;
            let h = ClassState::Hybrid(random_profile(rng, mmax));
            Some(cfg.with_state(a, h).with_state(&a.negate(), full(rng)))
        }
        Mutation::Doubling => {
            let pairs = doubling_pairs(&p);
            let (half, double) = pairs.choose(rng)?;
            let s = full(rng);
            let h = ClassState::Hybrid(random_profile(rng, mmax));
            Some(
                cfg.with_state(half, s)
                    .with_state(&half.negate(), s)
                    .with_state(double, h)
                    .with_state(&double.negate(), h),
            )
        }
        Mutation::Closure => {
            let triples = closure_triples(&p, mmax);
            let (a, b, s) = triples.choose(rng)?;
            let h = ClassState::Hybrid(random_profile(rng, mmax));
            let mut out = cfg.with_state(b, h).with_state(&b.negate(), h);
            if out.state(&a.negate()).is_some_and(ClassState::is_hybrid) {
                out = out.with_state(&a.negate(), ClassState::FullLN);
            }
            out = out
                .with_state(a, ClassState::FullLN)
                .with_state(s, ClassState::FullIN)
                .with_state(&s.negate(), ClassState::FullLN);
            Some(out)
        }
    }
}

/// Canonical member of each `±` class pair, in sorted order.
pub fn anchors(p: &AlgebraParams) -> Vec<RootVector> {
    let mut out: Vec<RootVector> = real_dot_roots(p).iter().map(anchor).collect();
    out.sort();
    out.dedup();
    out
}

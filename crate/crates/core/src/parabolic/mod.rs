//! Linear functionals, triangular decompositions and parabolic subsets of
//! the finite root systems `Ṙ_0(i)`.

pub mod fm;
pub mod pi;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::RootVector;
use crate::rootsys::checks::{Counterexample, Verdict};
use crate::rootsys::{
    dot_roots_0, real_dot_roots, s_set_0_any, s_set_any, AlgebraParams, Component,
};
use crate::shadow::{self, ShadowConfig};
use fm::{int, Inequality, System};

pub use pi::{decompose_over_pi, phi_pi, verify_equal, PiSet};

/// Rational linear form on `span{ε_i, δ_j, δ}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Functional {
    pub eps: Vec<BigRational>,
    pub del: Vec<BigRational>,
    pub delta: BigRational,
}

#[derive(Serialize, Deserialize)]
struct RawFunctional {
    eps: Vec<String>,
    del: Vec<String>,
    delta: String,
}

fn fmt_q(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_q(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("'{s}' is not a rational of the form p/q"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl Serialize for Functional {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawFunctional {
            eps: self.eps.iter().map(fmt_q).collect(),
            del: self.del.iter().map(fmt_q).collect(),
            delta: fmt_q(&self.delta),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Functional {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawFunctional::deserialize(d)?;
        let conv = |v: &[String]| -> std::result::Result<Vec<BigRational>, D::Error> {
            v.iter()
                .map(|s| parse_q(s).map_err(serde::de::Error::custom))
                .collect()
        };
        Ok(Functional {
            eps: conv(&raw.eps)?,
            del: conv(&raw.del)?,
            delta: parse_q(&raw.delta).map_err(serde::de::Error::custom)?,
        })
    }
}

impl Functional {
    pub fn zero(k: usize, l: usize) -> Self {
        Functional {
            eps: vec![BigRational::zero(); k],
            del: vec![BigRational::zero(); l],
            delta: BigRational::zero(),
        }
    }

    pub fn from_ints(eps: &[i64], del: &[i64], delta: i64) -> Self {
        Functional {
            eps: eps.iter().map(|&c| int(c)).collect(),
            del: del.iter().map(|&c| int(c)).collect(),
            delta: int(delta),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.delta.is_zero() && self.eps.iter().chain(&self.del).all(Zero::is_zero)
    }

    pub fn eval(&self, v: &RootVector) -> BigRational {
        assert_eq!(
            (v.k(), v.l()),
            (self.eps.len(), self.del.len()),
            "ambient mismatch"
        );
        let mut acc = &self.delta * BigInt::from(v.dc);
        for (c, &x) in self
            .eps
            .iter()
            .zip(&v.eps)
            .chain(self.del.iter().zip(&v.del))
        {
            if x != 0 {
                acc += c * BigInt::from(x);
            }
        }
        acc
    }

    pub fn sign(&self, v: &RootVector) -> Ordering {
        self.eval(v).cmp(&BigRational::zero())
    }

    /// Random functional with `ζ(δ) = 0`: numerators in `-5..=5`,
    /// denominators in `1..=4`, each coefficient zero with probability 1/4.
    pub fn random<R: Rng + ?Sized>(k: usize, l: usize, rng: &mut R) -> Self {
        let mut coeff = || {
            if rng.random_range(0..4) == 0 {
                BigRational::zero()
            } else {
                BigRational::new(
                    rng.random_range(-5i64..=5).into(),
                    rng.random_range(1i64..=4).into(),
                )
            }
        };
        Functional {
            eps: (0..k).map(|_| coeff()).collect(),
            del: (0..l).map(|_| coeff()).collect(),
            delta: BigRational::zero(),
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.eps.iter().map(ToString::to_string).collect();
        let d: Vec<String> = self.del.iter().map(ToString::to_string).collect();
        write!(
            f,
            "ζ(ε)=[{}] ζ(δ_j)=[{}] ζ(δ)={}",
            e.join(", "),
            d.join(", "),
            self.delta
        )
    }
}

/// Sign partition of a root list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularDecomp {
    pub positive: Vec<RootVector>,
    pub zero: Vec<RootVector>,
    pub negative: Vec<RootVector>,
}

pub fn triangular(s: &[RootVector], zeta: &Functional) -> TriangularDecomp {
    let mut d = TriangularDecomp {
        positive: Vec::new(),
        zero: Vec::new(),
        negative: Vec::new(),
    };
    for v in s {
        match zeta.sign(v) {
            Ordering::Greater => d.positive.push(v.clone()),
            Ordering::Equal => d.zero.push(v.clone()),
            Ordering::Less => d.negative.push(v.clone()),
        }
    }
    d
}

/// A subset of `Ṙ_0(i)`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DotParabolic {
    pub component: Component,
    pub elements: Vec<RootVector>,
}

impl DotParabolic {
    pub fn new(component: Component, mut elements: Vec<RootVector>) -> Self {
        elements.sort();
        elements.dedup();
        DotParabolic {
            component,
            elements,
        }
    }

    pub fn contains(&self, v: &RootVector) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    /// `{α̇ ∈ Ṙ_0(i) | ζ(α̇) >= 0}`.
    pub fn from_functional(p: &AlgebraParams, comp: Component, zeta: &Functional) -> Self {
        let els = dot_roots_0(p, comp)
            .into_iter()
            .filter(|a| zeta.sign(a) != Ordering::Less)
            .collect();
        DotParabolic::new(comp, els)
    }

    pub fn is_proper(&self, p: &AlgebraParams) -> bool {
        self.elements.len() < dot_roots_0(p, self.component).len()
    }
}

/// Cover and closure checked exhaustively on `Ṙ_0(i)`.
pub fn is_parabolic(p: &AlgebraParams, dp: &DotParabolic) -> Verdict {
    let comp = dp.component;
    let name = format!("parabolic {p} component {comp}");
    let all = dot_roots_0(p, comp);
    if let Some(x) = dp.elements.iter().find(|a| all.binary_search(a).is_err()) {
        return Verdict::fail(
            name,
            0,
            Counterexample::new("element outside the component", vec![x.clone()]),
        );
    }
    let mut checked = 0;
    for a in &all {
        checked += 1;
        if !dp.contains(a) && !dp.contains(&a.negate()) {
            return Verdict::fail(
                name,
                checked,
                Counterexample::new("neither it nor its negative is in the set", vec![a.clone()]),
            );
        }
    }
    for a in &dp.elements {
        for b in &dp.elements {
            let s = a + b;
            if all.binary_search(&s).is_err() {
                continue;
            }
            checked += 1;
            if !dp.contains(&s) {
                return Verdict::fail(
                    name,
                    checked,
                    Counterexample::new("sum leaves the set", vec![a.clone(), b.clone(), s]),
                );
            }
        }
    }
    Verdict::pass(name, checked)
}

/// Coordinates a functional on `span Ṙ_0(i)` may use.
fn component_coords(p: &AlgebraParams, comp: Component) -> Vec<(bool, usize)> {
    match comp {
        Component::One => (0..p.l).map(|j| (false, j)).collect(),
        Component::Two => (0..p.k).map(|i| (true, i)).collect(),
    }
}

/// An exact `ζ_i` on `span Ṙ_0(i)` with `{ζ_i >= 0} = Ṗ`.
pub fn synthesize_functional(p: &AlgebraParams, dp: &DotParabolic) -> Result<Functional> {
    let comp = dp.component;
    if !p.has_component(comp) {
        return Err(Error::EmptyComponent(comp.index()));
    }
    let coords = component_coords(p, comp);
    let row = |a: &RootVector| -> Vec<i64> {
        coords
            .iter()
            .map(|&(is_eps, i)| if is_eps { a.eps[i] } else { a.del[i] })
            .collect()
    };
    let mut sys = System::new(coords.len());
    for a in dot_roots_0(p, comp).iter().filter(|a| !a.is_dot_zero()) {
        let r = row(a);
        if dp.contains(a) {
            if dp.contains(&a.negate()) {
                sys.push_eq(Inequality::from_ints(&r, 0));
            } else {
                sys.push(Inequality::from_ints(&r, 1));
            }
        } else {
            let neg: Vec<i64> = r.iter().map(|x| -x).collect();
            sys.push(Inequality::from_ints(&neg, 1));
        }
    }
    let x = sys.solve().ok_or_else(|| {
        Error::Infeasible(format!(
            "no half-space realizes the set in component {comp}"
        ))
    })?;
    let mut zeta = Functional::zero(p.k, p.l);
    for (&(is_eps, i), v) in coords.iter().zip(x) {
        if is_eps {
            zeta.eps[i] = v;
        } else {
            zeta.del[i] = v;
        }
    }
    if DotParabolic::from_functional(p, comp, &zeta) != *dp {
        return Err(Error::Infeasible(format!(
            "synthesized functional does not reproduce the set: {zeta}"
        )));
    }
    Ok(zeta)
}

/// `Ṗ_i = {α̇ ∈ Ṙ_0(i) | α̇ + σ ∈ P for some σ ∈ S_α̇(i)}`, with the identity
/// `(Ṗ_i + ℤδ) ∩ R_0(i) = P ∩ R_0(i)` asserted on the window.
pub fn dot_parabolic_from_p(
    cfg: &ShadowConfig,
    comp: Component,
    mmax: i64,
) -> Result<DotParabolic> {
    let p = cfg.params();
    if !p.has_component(comp) {
        return Err(Error::EmptyComponent(comp.index()));
    }
    let dots = dot_roots_0(p, comp);
    let mut els = Vec::new();
    for a in &dots {
        let s = s_set_0_any(p, comp, a);
        if s.members_in(-mmax, mmax)
            .any(|n| shadow::in_p(cfg, &a.with_dc(n)))
        {
            els.push(a.clone());
        }
    }
    let dp = DotParabolic::new(comp, els);
    for a in &dots {
        for n in s_set_0_any(p, comp, a).members_in(-mmax, mmax) {
            let v = a.with_dc(n);
            if shadow::in_p(cfg, &v) != dp.contains(a) {
                return Err(Error::Config(format!(
                    "P restricted to component {comp} is not a union of delta classes at {v}"
                )));
            }
        }
    }
    Ok(dp)
}

/// Both `Ṗ_i` are parabolic and at least one is proper.
pub fn check_parabolic_pair(cfg: &ShadowConfig, mmax: i64) -> Verdict {
    let p = cfg.params();
    let name = format!("parabolic pair {p}");
    let mut any_proper = false;
    let mut checked = 0;
    for comp in p.components() {
        let dp = match dot_parabolic_from_p(cfg, comp, mmax) {
            Ok(dp) => dp,
            Err(e) => {
                return Verdict::fail(name, checked, Counterexample::new(e.to_string(), vec![]))
            }
        };
        let v = is_parabolic(p, &dp);
        checked += v.checked;
        if let Some(f) = v.failure {
            return Verdict::fail(name, checked, f);
        }
        any_proper |= dp.is_proper(p);
    }
    if any_proper {
        Verdict::pass(name, checked)
    } else {
        Verdict::fail(
            name,
            checked,
            Counterexample::new("no component yields a proper parabolic set", vec![]),
        )
    }
}

/// Direct sum of the component functionals, with `ζ(δ) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedZeta {
    pub zeta: Functional,
    /// Set when the result is zero, which the nontriviality argument forbids.
    pub trivial: bool,
}

pub fn extend_zeta(
    p: &AlgebraParams,
    zeta1: &Functional,
    zeta2: Option<&Functional>,
) -> ExtendedZeta {
    let mut z = Functional::zero(p.k, p.l);
    z.del.clone_from(&zeta1.del);
    if let Some(z2) = zeta2 {
        z.eps.clone_from(&z2.eps);
    }
    ExtendedZeta {
        trivial: z.is_zero(),
        zeta: z,
    }
}

/// `ζ(α̇) > 0` iff `α̇ + S_α̇ ⊆ R^ln` and `−α̇ + S_{−α̇} ⊆ R^in`, for every real
/// dot root, with membership read on the window.
pub fn check_pos_criterion(cfg: &ShadowConfig, zeta: &Functional, mmax: i64) -> Verdict {
    let p = cfg.params();
    let name = format!("positivity criterion {p}");
    if !zeta.delta.is_zero() {
        return Verdict::fail(
            name,
            0,
            Counterexample::new("functional does not vanish on delta", vec![]),
        );
    }
    let real = real_dot_roots(p);
    for (i, a) in real.iter().enumerate() {
        let all = |b: &RootVector, want_ln: bool| {
            s_set_any(p, b)
                .members_in(-mmax, mmax)
                .all(|n| shadow::member_ln(cfg, &b.with_dc(n)).is_ok_and(|ln| ln == want_ln))
        };
        let lhs = zeta.eval(a).is_positive();
        let rhs = all(a, true) && all(&a.negate(), false);
        if lhs != rhs {
            let msg = if lhs {
                "positive root whose class is not fully locally nilpotent"
            } else {
                "class fully locally nilpotent with injective negative but not positive"
            };
            return Verdict::fail(name, i + 1, Counterexample::new(msg, vec![a.clone()]));
        }
    }
    Verdict::pass(name, real.len())
}

/// Elements of `Ṙ_0(i)` as a set, for callers comparing parabolic sets.
pub fn as_set(dp: &DotParabolic) -> BTreeSet<RootVector> {
    dp.elements.iter().cloned().collect()
}

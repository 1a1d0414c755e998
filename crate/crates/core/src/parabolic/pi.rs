//! The finite generating set `Φ̇` of `R^× = R ∖ R_im` modulo `rℤδ`, its
//! `ζ`-positive part and the indecomposable subset `Π`.

use std::collections::{BTreeSet, HashMap};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Functional;
use crate::error::{Error, Result};
use crate::lattice::RootVector;
use crate::rootsys::checks::{Counterexample, Verdict};
use crate::rootsys::{dot_class, enumerate_window, r_invariants, AlgebraParams, RootClass};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiSet {
    pub r: u32,
    /// `α̇ + kδ` over real dot roots.
    pub phi_real: Vec<RootVector>,
    /// `α̇ + kδ` over all nonzero dot roots.
    pub phi_full: Vec<RootVector>,
    /// Set when the two variants differ, i.e. whenever nonsingular dot roots
    /// exist.
    pub variants_differ: bool,
    pub phi_plus: Vec<RootVector>,
    pub pi: Vec<RootVector>,
}

pub fn phi_pi(p: &AlgebraParams, zeta: &Functional) -> Result<PiSet> {
    if !zeta.delta.is_zero() {
        return Err(Error::DeltaNotZero(zeta.delta.to_string()));
    }
    let inv = r_invariants(p);
    let mut phi_full = Vec::new();
    let mut phi_real = Vec::new();
    for e in &inv.entries {
        for &k in &e.residues_mod_r {
            let v = e.root.with_dc(k as i64);
            if dot_class(&e.root) == Some(RootClass::Real) {
                phi_real.push(v.clone());
            }
            phi_full.push(v);
        }
    }
    phi_full.sort();
    phi_real.sort();
    let phi_plus: Vec<RootVector> = phi_real
        .iter()
        .filter(|v| zeta.eval(v).is_positive())
        .cloned()
        .collect();
    let plus_set: BTreeSet<&RootVector> = phi_plus.iter().collect();
    let pi = phi_plus
        .iter()
        .filter(|b| !phi_plus.iter().any(|x| plus_set.contains(&(*b - x))))
        .cloned()
        .collect();
    Ok(PiSet {
        r: inv.r,
        variants_differ: phi_full != phi_real,
        phi_real,
        phi_full,
        phi_plus,
        pi,
    })
}

/// Nonnegative integer coefficients, aligned with `pi.pi`, summing to `β̇`.
///
/// An element outside `Π` splits as `x + (β̇ − x)` with both parts in `Φ̇⁺`;
/// both parts have smaller `ζ`, so the recursion terminates. Results are
/// memoized per element.
pub fn decompose_over_pi(beta: &RootVector, pi: &PiSet, zeta: &Functional) -> Result<Vec<u64>> {
    if pi.phi_plus.binary_search(beta).is_err() {
        return Err(Error::NoDecomposition(beta.clone()));
    }
    let mut memo = HashMap::new();
    split(beta, pi, zeta, &mut memo).ok_or_else(|| Error::NoDecomposition(beta.clone()))
}

fn split(
    b: &RootVector,
    pi: &PiSet,
    zeta: &Functional,
    memo: &mut HashMap<RootVector, Option<Vec<u64>>>,
) -> Option<Vec<u64>> {
    if let Some(hit) = memo.get(b) {
        return hit.clone();
    }
    let out = if let Some(i) = pi.pi.iter().position(|x| x == b) {
        let mut c = vec![0u64; pi.pi.len()];
        c[i] = 1;
        Some(c)
    } else {
        let zb = zeta.eval(b);
        pi.phi_plus.iter().find_map(|x| {
            let rest = b - x;
            if pi.phi_plus.binary_search(&rest).is_err() || zeta.eval(x) >= zb {
                return None;
            }
            let l = split(x, pi, zeta, memo)?;
            let r = split(&rest, pi, zeta, memo)?;
            Some(l.iter().zip(&r).map(|(a, c)| a + c).collect())
        })
    };
    memo.insert(b.clone(), out.clone());
    out
}

/// On the window, the nonzero non-imaginary roots are exactly the members
/// of `⋃ (φ + rℤδ)` over the full variant of `Φ̇`.
pub fn verify_equal(p: &AlgebraParams, pi: &PiSet, mmax: i64) -> Verdict {
    let name = format!("R^x equals union over phi {p} mmax={mmax}");
    let r = pi.r as i64;
    let lhs: BTreeSet<RootVector> = enumerate_window(p, mmax)
        .into_iter()
        .filter(|v| !v.is_dot_zero())
        .collect();
    let mut rhs = BTreeSet::new();
    for phi in &pi.phi_full {
        let mut n = phi.dc - r * ((phi.dc + mmax) / r + 1);
        while n <= mmax {
            if n >= -mmax {
                rhs.insert(phi.with_dc(n));
            }
            n += r;
        }
    }
    let checked = lhs.len().max(rhs.len());
    if let Some(v) = lhs.symmetric_difference(&rhs).next() {
        let msg = if lhs.contains(v) {
            "root missing from the union"
        } else {
            "union member is not a root"
        };
        return Verdict::fail(name, checked, Counterexample::new(msg, vec![v.clone()]));
    }
    Verdict::pass(name, checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::AffineFamily;

    fn setup() -> (AlgebraParams, Functional, PiSet) {
        let p = AlgebraParams::new(AffineFamily::AEven2, 1, 1).unwrap();
        let z = Functional::from_ints(&[2], &[1], 0);
        let pi = phi_pi(&p, &z).unwrap();
        (p, z, pi)
    }

    #[test]
    fn worked_example() {
        let (p, _, pi) = setup();
        let (e, d) = (p.eps(1), p.del(1));
        assert_eq!(pi.r, 2);
        let plus: BTreeSet<RootVector> = pi.phi_plus.iter().cloned().collect();
        let want: BTreeSet<RootVector> = [
            e.clone(),
            e.shift(1),
            e.scale(2).shift(1),
            d.clone(),
            d.shift(1),
            d.scale(2),
        ]
        .into();
        assert_eq!(plus, want);
        let got: BTreeSet<RootVector> = pi.pi.iter().cloned().collect();
        assert_eq!(got, [e.clone(), e.shift(1), d.clone(), d.shift(1)].into());
        assert!(pi.variants_differ);
    }

    #[test]
    fn decompositions() {
        let (p, z, pi) = setup();
        let idx = |v: &RootVector| pi.pi.iter().position(|x| x == v).unwrap();
        let t = decompose_over_pi(&p.del(1).scale(2), &pi, &z).unwrap();
        assert_eq!(t[idx(&p.del(1))], 2);
        assert_eq!(t.iter().sum::<u64>(), 2);
        let t = decompose_over_pi(&p.eps(1).scale(2).shift(1), &pi, &z).unwrap();
        assert_eq!((t[idx(&p.eps(1))], t[idx(&p.eps(1).shift(1))]), (1, 1));
        let t = decompose_over_pi(&p.eps(1), &pi, &z).unwrap();
        assert_eq!(t[idx(&p.eps(1))], 1);
        assert!(decompose_over_pi(&p.eps(1).negate(), &pi, &z).is_err());
    }

    #[test]
    fn vacuous_and_errors() {
        let p = AlgebraParams::new(AffineFamily::D2, 1, 1).unwrap();
        let pi = phi_pi(&p, &Functional::zero(1, 1)).unwrap();
        assert!(pi.phi_plus.is_empty() && pi.pi.is_empty());
        assert!(matches!(
            phi_pi(&p, &Functional::from_ints(&[0], &[0], 1)),
            Err(Error::DeltaNotZero(_))
        ));
    }

    #[test]
    fn equal_identity() {
        let (p, _, pi) = setup();
        assert!(verify_equal(&p, &pi, 8).passed());
    }
}

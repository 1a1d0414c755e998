//! Independent oracles, written from the closed-form root tables without
//! touching the library's clause data.
#![allow(dead_code)]

use superroots::rootsys::AffineFamily::{self, AEven2, AOdd2, A4, D2};
use superroots::{AlgebraParams, Component, ProgressionSet, RootVector};

/// Shape of a dot part, up to signs and indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Zero,
    Eps,
    Del,
    TwoEps,
    TwoDel,
    EpsEps,
    DelDel,
    EpsDel,
    Other,
}

pub fn shape(v: &RootVector) -> Shape {
    let nz = |xs: &[i64]| {
        xs.iter()
            .filter(|&&c| c != 0)
            .map(|c| c.abs())
            .collect::<Vec<_>>()
    };
    let (e, d) = (nz(&v.eps), nz(&v.del));
    match (e.as_slice(), d.as_slice()) {
        ([], []) => Shape::Zero,
        ([1], []) => Shape::Eps,
        ([], [1]) => Shape::Del,
        ([2], []) => Shape::TwoEps,
        ([], [2]) => Shape::TwoDel,
        ([1, 1], []) => Shape::EpsEps,
        ([], [1, 1]) => Shape::DelDel,
        ([1], [1]) => Shape::EpsDel,
        _ => Shape::Other,
    }
}

/// `S_α̇` as `(modulus, residue)`, `None` when empty.
pub fn oracle_s(f: AffineFamily, s: Shape) -> Option<(u32, u32)> {
    use Shape::*;
    match (f, s) {
        (_, Zero) => Some((1, 0)),
        (_, Other) => None,
        (AOdd2, Eps | Del) => None,
        (_, Eps | Del) => Some((1, 0)),
        (AEven2 | AOdd2, EpsEps | DelDel | EpsDel) => Some((1, 0)),
        (A4 | D2, EpsEps | DelDel | EpsDel) => Some((2, 0)),
        (AEven2 | AOdd2, TwoEps) => Some((2, 1)),
        (A4, TwoEps) => Some((4, 2)),
        (D2, TwoEps) => None,
        (AEven2 | AOdd2 | D2, TwoDel) => Some((2, 0)),
        (A4, TwoDel) => Some((4, 0)),
    }
}

/// `S_α̇(i)`, including the imaginary line `α̇ = 0`.
pub fn oracle_s0(p: &AlgebraParams, comp: Component, s: Shape) -> Option<(u32, u32)> {
    use Shape::*;
    let f = p.family;
    if comp == Component::Two && p.k == 0 {
        return None;
    }
    let delta_one = |n: usize| if n == 1 { (2, 0) } else { (1, 0) };
    match comp {
        Component::One => match (f, s) {
            (AEven2 | AOdd2, Zero) => Some(delta_one(p.l)),
            (A4 | D2, Zero) => Some((2, 0)),
            (A4, Del) => Some((2, 1)),
            (AEven2 | AOdd2, DelDel) => Some((1, 0)),
            (A4 | D2, DelDel) => Some((2, 0)),
            (AEven2 | AOdd2 | D2, TwoDel) => Some((2, 0)),
            (A4, TwoDel) => Some((4, 0)),
            _ => None,
        },
        Component::Two => match (f, s) {
            (AEven2 | D2, Zero) => Some((1, 0)),
            (AOdd2, Zero) => Some(delta_one(p.k)),
            (A4, Zero) => Some((2, 0)),
            (AEven2 | D2, Eps) => Some((1, 0)),
            (A4, Eps) => Some((2, 0)),
            (AEven2 | AOdd2, EpsEps) => Some((1, 0)),
            (A4 | D2, EpsEps) => Some((2, 0)),
            (AEven2 | AOdd2, TwoEps) => Some((2, 1)),
            (A4, TwoEps) => Some((4, 2)),
            _ => None,
        },
    }
}

pub fn as_progression(o: Option<(u32, u32)>) -> ProgressionSet {
    match o {
        Some((m, r)) => ProgressionSet::single(m, r),
        None => ProgressionSet::empty(),
    }
}

fn contains(o: Option<(u32, u32)>, n: i64) -> bool {
    o.is_some_and(|(m, r)| n.rem_euclid(m as i64) == r as i64)
}

pub fn oracle_is_root(f: AffineFamily, v: &RootVector) -> bool {
    contains(oracle_s(f, shape(v)), v.dc)
}

pub fn oracle_is_even(p: &AlgebraParams, comp: Component, v: &RootVector) -> bool {
    contains(oracle_s0(p, comp, shape(v)), v.dc)
}

/// Class by shape: `ε ± δ` lines are nonsingular, `ℤδ` imaginary, the rest real.
pub fn oracle_class(v: &RootVector) -> &'static str {
    match shape(v) {
        Shape::Zero => "imaginary",
        Shape::EpsDel => "nonsingular",
        _ => "real",
    }
}

/// Every integer vector with coordinates in `-c..=c` and `|dc| <= mmax`.
pub fn brute_force(p: &AlgebraParams, c: i64, mmax: i64) -> Vec<RootVector> {
    let dim = p.k + p.l;
    let side = (2 * c + 1) as usize;
    let total = side.pow(dim as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut x = code;
        let mut coords = Vec::with_capacity(dim);
        for _ in 0..dim {
            coords.push((x % side) as i64 - c);
            x /= side;
        }
        for dc in -mmax..=mmax {
            out.push(RootVector {
                eps: coords[..p.k].to_vec(),
                del: coords[p.k..].to_vec(),
                dc,
            });
        }
    }
    out
}

pub fn small_params() -> Vec<AlgebraParams> {
    AlgebraParams::grid(2, 2)
}

/// One representative parameter set per family, with both components present.
pub fn rep_params(f: AffineFamily) -> AlgebraParams {
    AlgebraParams::new(f, 2, 2).expect("(2, 2) is valid for every family")
}

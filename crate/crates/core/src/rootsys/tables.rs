//! Closed-form root data for the four families, stored as clause lists.
//!
//! A clause pairs a dot pattern (such as `±ε_i ± δ_j`) with an arithmetic
//! progression of δ coefficients. Every membership question about `R`,
//! `R_0(1)` and `R_0(2)` goes through [`Clause::matches`]; the per-dot-root
//! tables (`S_α̇`, `S_α̇(i)`, `Ṙ`, `Ṙ_0(i)`) are kept as separate data so they
//! can be checked against what the clause lists imply.

use serde::{Deserialize, Serialize};

use super::params::{AffineFamily, AlgebraParams, Component};
use super::progression::ProgressionSet;
use crate::lattice::RootVector;

/// Shape of a δ-free vector, up to index choice and signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    /// `0`
    Zero,
    /// `±ε_i`
    Eps,
    /// `±δ_j`
    Del,
    /// `±ε_i ± ε_r`, `i ≠ r`
    EpsEps,
    /// `±δ_j ± δ_s`, `j ≠ s`
    DelDel,
    /// `±2ε_i`
    TwoEps,
    /// `±2δ_j`
    TwoDel,
    /// `±ε_i ± δ_j`
    EpsDel,
}

impl Pattern {
    pub const ALL: [Pattern; 8] = [
        Pattern::Zero,
        Pattern::Eps,
        Pattern::Del,
        Pattern::EpsEps,
        Pattern::DelDel,
        Pattern::TwoEps,
        Pattern::TwoDel,
        Pattern::EpsDel,
    ];

    /// Pattern of the δ-free part of `v`, if it has one.
    pub fn of(v: &RootVector) -> Option<Pattern> {
        let mut eps_ones = 0;
        let mut eps_twos = 0;
        let mut del_ones = 0;
        let mut del_twos = 0;
        for &c in &v.eps {
            match c.abs() {
                0 => {}
                1 => eps_ones += 1,
                2 => eps_twos += 1,
                _ => return None,
            }
        }
        for &c in &v.del {
            match c.abs() {
                0 => {}
                1 => del_ones += 1,
                2 => del_twos += 1,
                _ => return None,
            }
        }
        match (eps_ones, eps_twos, del_ones, del_twos) {
            (0, 0, 0, 0) => Some(Pattern::Zero),
            (1, 0, 0, 0) => Some(Pattern::Eps),
            (0, 0, 1, 0) => Some(Pattern::Del),
            (2, 0, 0, 0) => Some(Pattern::EpsEps),
            (0, 0, 2, 0) => Some(Pattern::DelDel),
            (0, 1, 0, 0) => Some(Pattern::TwoEps),
            (0, 0, 0, 1) => Some(Pattern::TwoDel),
            (1, 0, 1, 0) => Some(Pattern::EpsDel),
            _ => None,
        }
    }

    /// All δ-free vectors of this pattern for the given ranks, both signs.
    pub fn expand(self, k: usize, l: usize) -> Vec<RootVector> {
        let z = RootVector::zero(k, l);
        let e = |i: usize, c: i64| {
            let mut v = z.clone();
            v.eps[i] = c;
            v
        };
        let d = |j: usize, c: i64| {
            let mut v = z.clone();
            v.del[j] = c;
            v
        };
        let mut out = Vec::new();
        match self {
            Pattern::Zero => out.push(z.clone()),
            Pattern::Eps => {
                for i in 0..k {
                    out.extend([e(i, 1), e(i, -1)]);
                }
            }
            Pattern::Del => {
                for j in 0..l {
                    out.extend([d(j, 1), d(j, -1)]);
                }
            }
            Pattern::TwoEps => {
                for i in 0..k {
                    out.extend([e(i, 2), e(i, -2)]);
                }
            }
            Pattern::TwoDel => {
                for j in 0..l {
                    out.extend([d(j, 2), d(j, -2)]);
                }
            }
            Pattern::EpsEps => {
                for i in 0..k {
                    for r in i + 1..k {
                        for (a, b) in SIGNS {
                            let mut v = e(i, a);
                            v.eps[r] = b;
                            out.push(v);
                        }
                    }
                }
            }
            Pattern::DelDel => {
                for j in 0..l {
                    for s in j + 1..l {
                        for (a, b) in SIGNS {
                            let mut v = d(j, a);
                            v.del[s] = b;
                            out.push(v);
                        }
                    }
                }
            }
            Pattern::EpsDel => {
                for i in 0..k {
                    for j in 0..l {
                        for (a, b) in SIGNS {
                            let mut v = e(i, a);
                            v.del[j] = b;
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn label(self) -> &'static str {
        match self {
            Pattern::Zero => "0",
            Pattern::Eps => "±ε_i",
            Pattern::Del => "±δ_j",
            Pattern::EpsEps => "±ε_i±ε_r",
            Pattern::DelDel => "±δ_j±δ_s",
            Pattern::TwoEps => "±2ε_i",
            Pattern::TwoDel => "±2δ_j",
            Pattern::EpsDel => "±ε_i±δ_j",
        }
    }

    pub fn tex(self) -> &'static str {
        match self {
            Pattern::Zero => "0",
            Pattern::Eps => "\\pm\\epsilon_i",
            Pattern::Del => "\\pm\\delta_j",
            Pattern::EpsEps => "\\pm\\epsilon_i\\pm\\epsilon_r",
            Pattern::DelDel => "\\pm\\delta_j\\pm\\delta_s",
            Pattern::TwoEps => "\\pm2\\epsilon_i",
            Pattern::TwoDel => "\\pm2\\delta_j",
            Pattern::EpsDel => "\\pm\\epsilon_i\\pm\\delta_j",
        }
    }
}

const SIGNS: [(i64, i64); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Rank conditions used by the Kronecker-delta entries of the even-part table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cond {
    Always,
    LIsOne,
    LNotOne,
    KIsOne,
    KNotOne,
}

impl Cond {
    pub fn holds(self, k: usize, l: usize) -> bool {
        match self {
            Cond::Always => true,
            Cond::LIsOne => l == 1,
            Cond::LNotOne => l != 1,
            Cond::KIsOne => k == 1,
            Cond::KNotOne => k != 1,
        }
    }
}

/// `pattern + (modulus ℤ + residue) δ`, active when `cond` holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clause {
    pub pattern: Pattern,
    pub modulus: u32,
    pub residue: u32,
    pub cond: Cond,
}

impl Clause {
    pub fn progression(&self) -> ProgressionSet {
        ProgressionSet::single(self.modulus, self.residue)
    }

    pub fn matches(&self, p: &AlgebraParams, pattern: Pattern, dc: i64) -> bool {
        self.pattern == pattern
            && self.cond.holds(p.k, p.l)
            && dc.rem_euclid(self.modulus as i64) == self.residue as i64
    }
}

const fn c(pattern: Pattern, modulus: u32, residue: u32) -> Clause {
    Clause {
        pattern,
        modulus,
        residue,
        cond: Cond::Always,
    }
}

const fn cc(pattern: Pattern, modulus: u32, residue: u32, cond: Cond) -> Clause {
    Clause {
        pattern,
        modulus,
        residue,
        cond,
    }
}

use Pattern::*;

const R_A_EVEN_2: &[Clause] = &[
    c(Zero, 1, 0),
    c(Eps, 1, 0),
    c(Del, 1, 0),
    c(EpsEps, 1, 0),
    c(DelDel, 1, 0),
    c(EpsDel, 1, 0),
    c(TwoEps, 2, 1),
    c(TwoDel, 2, 0),
];

const R_A_ODD_2: &[Clause] = &[
    c(Zero, 1, 0),
    c(EpsEps, 1, 0),
    c(DelDel, 1, 0),
    c(EpsDel, 1, 0),
    c(TwoEps, 2, 1),
    c(TwoDel, 2, 0),
];

const R_A_4: &[Clause] = &[
    c(Zero, 1, 0),
    c(Eps, 1, 0),
    c(Del, 1, 0),
    c(EpsEps, 2, 0),
    c(DelDel, 2, 0),
    c(EpsDel, 2, 0),
    c(TwoEps, 4, 2),
    c(TwoDel, 4, 0),
];

const R_D_2: &[Clause] = &[
    c(Zero, 1, 0),
    c(Eps, 1, 0),
    c(Del, 1, 0),
    c(TwoDel, 2, 0),
    c(EpsEps, 2, 0),
    c(DelDel, 2, 0),
    c(EpsDel, 2, 0),
];

/// Clause list for the full root system `R`.
pub fn root_clauses(f: AffineFamily) -> &'static [Clause] {
    match f {
        AffineFamily::AEven2 => R_A_EVEN_2,
        AffineFamily::AOdd2 => R_A_ODD_2,
        AffineFamily::A4 => R_A_4,
        AffineFamily::D2 => R_D_2,
    }
}

// (2δ_{l,1} + (1 - δ_{l,1})) ℤδ: 2ℤδ when l = 1, ℤδ otherwise.
const R0_1_A_2: &[Clause] = &[
    cc(Zero, 2, 0, Cond::LIsOne),
    cc(Zero, 1, 0, Cond::LNotOne),
    c(DelDel, 1, 0),
    c(TwoDel, 2, 0),
];

const R0_1_A_4: &[Clause] = &[
    c(Zero, 2, 0),
    c(Del, 2, 1),
    c(DelDel, 2, 0),
    c(TwoDel, 4, 0),
];

// δ_j ± δ_s with j = s allowed: contributes ±2δ_j and 0.
const R0_1_D_2: &[Clause] = &[c(Zero, 2, 0), c(DelDel, 2, 0), c(TwoDel, 2, 0)];

const R0_2_A_EVEN_2: &[Clause] = &[
    c(Zero, 1, 0),
    c(Eps, 1, 0),
    c(EpsEps, 1, 0),
    c(TwoEps, 2, 1),
];

const R0_2_A_ODD_2: &[Clause] = &[
    cc(Zero, 2, 0, Cond::KIsOne),
    cc(Zero, 1, 0, Cond::KNotOne),
    c(EpsEps, 1, 0),
    c(TwoEps, 2, 1),
];

const R0_2_A_4: &[Clause] = &[
    c(Zero, 2, 0),
    c(Eps, 2, 0),
    c(EpsEps, 2, 0),
    c(TwoEps, 4, 2),
];

const R0_2_D_2: &[Clause] = &[c(Zero, 1, 0), c(Eps, 1, 0), c(EpsEps, 2, 0)];

/// Clause list for `R_0(i)`. The second component is only meaningful for
/// `k ≠ 0`; callers gate on [`AlgebraParams::has_component`].
pub fn even_clauses(f: AffineFamily, comp: Component) -> &'static [Clause] {
    match (f, comp) {
        (AffineFamily::AEven2 | AffineFamily::AOdd2, Component::One) => R0_1_A_2,
        (AffineFamily::A4, Component::One) => R0_1_A_4,
        (AffineFamily::D2, Component::One) => R0_1_D_2,
        (AffineFamily::AEven2, Component::Two) => R0_2_A_EVEN_2,
        (AffineFamily::AOdd2, Component::Two) => R0_2_A_ODD_2,
        (AffineFamily::A4, Component::Two) => R0_2_A_4,
        (AffineFamily::D2, Component::Two) => R0_2_D_2,
    }
}

/// One row of a per-dot-root table: `None` stands for the empty set.
pub type SRow = (Pattern, Option<(u32, u32)>);

const Z: Option<(u32, u32)> = Some((1, 0));
const EVEN: Option<(u32, u32)> = Some((2, 0));
const ODD: Option<(u32, u32)> = Some((2, 1));

/// Table of `S_α̇` by pattern, rows in the order `±ε_i, ±ε_i±ε_j, ±2ε_i,
/// ±δ_j, ±δ_j±δ_q, ±2δ_j, ±ε_i±δ_j`.
pub fn s_table(f: AffineFamily) -> [SRow; 7] {
    let col: [Option<(u32, u32)>; 7] = match f {
        AffineFamily::AEven2 => [Z, Z, ODD, Z, Z, EVEN, Z],
        AffineFamily::AOdd2 => [None, Z, ODD, None, Z, EVEN, Z],
        AffineFamily::A4 => [Z, EVEN, Some((4, 2)), Z, EVEN, Some((4, 0)), EVEN],
        AffineFamily::D2 => [Z, EVEN, None, Z, EVEN, EVEN, EVEN],
    };
    let rows = [Eps, EpsEps, TwoEps, Del, DelDel, TwoDel, EpsDel];
    std::array::from_fn(|n| (rows[n], col[n]))
}

/// Table of `S_α̇(i)` by pattern.
pub fn s_even_table(f: AffineFamily, comp: Component) -> [SRow; 3] {
    match comp {
        Component::One => {
            let col = match f {
                AffineFamily::AEven2 | AffineFamily::AOdd2 => [None, Z, EVEN],
                AffineFamily::A4 => [ODD, EVEN, Some((4, 0))],
                AffineFamily::D2 => [None, EVEN, EVEN],
            };
            [(Del, col[0]), (DelDel, col[1]), (TwoDel, col[2])]
        }
        Component::Two => {
            let col = match f {
                AffineFamily::AEven2 => [Z, Z, ODD],
                AffineFamily::AOdd2 => [None, Z, ODD],
                AffineFamily::A4 => [EVEN, EVEN, Some((4, 2))],
                AffineFamily::D2 => [Z, EVEN, None],
            };
            [(Eps, col[0]), (EpsEps, col[1]), (TwoEps, col[2])]
        }
    }
}

/// Patterns making up `Ṙ`.
pub fn dot_table(f: AffineFamily) -> &'static [Pattern] {
    match f {
        AffineFamily::AEven2 | AffineFamily::A4 => {
            &[Zero, Eps, Del, EpsEps, DelDel, TwoEps, TwoDel, EpsDel]
        }
        AffineFamily::AOdd2 => &[Zero, EpsEps, DelDel, TwoEps, TwoDel, EpsDel],
        AffineFamily::D2 => &[Zero, Eps, Del, EpsEps, DelDel, TwoDel, EpsDel],
    }
}

/// Patterns making up `Ṙ_0(i)` when the component is present. `0` is listed
/// in every row since each `R_0(i)` contains a nonzero sublattice of `ℤδ`.
pub fn dot_even_table(f: AffineFamily, comp: Component) -> &'static [Pattern] {
    match (f, comp) {
        (AffineFamily::A4, Component::One) => &[Zero, Del, DelDel, TwoDel],
        (_, Component::One) => &[Zero, DelDel, TwoDel],
        (AffineFamily::AEven2 | AffineFamily::A4, Component::Two) => &[Zero, Eps, EpsEps, TwoEps],
        (AffineFamily::AOdd2, Component::Two) => &[Zero, EpsEps, TwoEps],
        (AffineFamily::D2, Component::Two) => &[Zero, Eps, EpsEps],
    }
}

pub fn row_progression(row: Option<(u32, u32)>) -> ProgressionSet {
    row.map_or_else(ProgressionSet::empty, |(m, r)| ProgressionSet::single(m, r))
}

//! Finite unions of arithmetic progressions `∪ (rℤ + c) δ` inside `ℤδ`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A periodic subset of `ℤ`, stored as a modulus and a set of residues.
///
/// Always kept in canonical form: the modulus is the minimal period of the
/// set, so two equal sets compare equal field by field. The empty set is
/// `(1, {})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawProgression", into = "RawProgression")]
pub struct ProgressionSet {
    modulus: u32,
    residues: BTreeSet<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawProgression {
    #[serde(rename = "mod")]
    modulus: u32,
    #[serde(rename = "res")]
    residues: Vec<u32>,
}

impl From<RawProgression> for ProgressionSet {
    fn from(raw: RawProgression) -> Self {
        ProgressionSet::new(raw.modulus.max(1), raw.residues)
    }
}

impl From<ProgressionSet> for RawProgression {
    fn from(p: ProgressionSet) -> Self {
        RawProgression {
            modulus: p.modulus,
            residues: p.residues.into_iter().collect(),
        }
    }
}

impl ProgressionSet {
    /// Residues are reduced mod `modulus`; panics on a zero modulus.
    pub fn new(modulus: u32, residues: impl IntoIterator<Item = u32>) -> Self {
        assert!(modulus > 0, "progression modulus must be positive");
        let residues = residues.into_iter().map(|c| c % modulus).collect();
        let mut p = ProgressionSet { modulus, residues };
        p.canonicalize();
        p
    }

    pub fn empty() -> Self {
        ProgressionSet {
            modulus: 1,
            residues: BTreeSet::new(),
        }
    }

    /// All of `ℤ`.
    pub fn integers() -> Self {
        Self::new(1, [0])
    }

    /// `rℤ + c`.
    pub fn single(modulus: u32, residue: u32) -> Self {
        Self::new(modulus, [residue])
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn residues(&self) -> impl Iterator<Item = u32> + '_ {
        self.residues.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// `Some((r, c))` when the set is a single progression `rℤ + c`.
    pub fn as_single(&self) -> Option<(u32, u32)> {
        if self.residues.len() == 1 {
            self.residues.first().map(|&c| (self.modulus, c))
        } else {
            None
        }
    }

    pub fn contains(&self, n: i64) -> bool {
        let c = n.rem_euclid(self.modulus as i64) as u32;
        self.residues.contains(&c)
    }

    /// Residues of the set modulo a multiple `m` of the modulus.
    pub fn residues_mod(&self, m: u32) -> Vec<u32> {
        assert!(
            m.is_multiple_of(self.modulus),
            "{m} is not a multiple of the modulus {}",
            self.modulus
        );
        (0..m)
            .filter(|&c| self.residues.contains(&(c % self.modulus)))
            .collect()
    }

    pub fn union(&self, other: &ProgressionSet) -> ProgressionSet {
        let m = self.modulus.lcm(&other.modulus);
        let mut res: BTreeSet<u32> = self.residues_mod(m).into_iter().collect();
        res.extend(other.residues_mod(m));
        ProgressionSet::new(m, res)
    }

    pub fn intersection(&self, other: &ProgressionSet) -> ProgressionSet {
        let m = self.modulus.lcm(&other.modulus);
        let b: BTreeSet<u32> = other.residues_mod(m).into_iter().collect();
        ProgressionSet::new(
            m,
            self.residues_mod(m).into_iter().filter(|c| b.contains(c)),
        )
    }

    /// Minkowski sum `{a + b}`.
    pub fn sum(&self, other: &ProgressionSet) -> ProgressionSet {
        if self.is_empty() || other.is_empty() {
            return ProgressionSet::empty();
        }
        let m = self.modulus.lcm(&other.modulus);
        let a = self.residues_mod(m);
        let b = other.residues_mod(m);
        let mut res = BTreeSet::new();
        for x in &a {
            for y in &b {
                res.insert((x + y) % m);
            }
        }
        ProgressionSet::new(m, res)
    }

    /// `{-a}`.
    pub fn negate(&self) -> ProgressionSet {
        let m = self.modulus;
        ProgressionSet::new(m, self.residues.iter().map(|&c| (m - c) % m))
    }

    /// `{a + n}`.
    pub fn shift(&self, n: i64) -> ProgressionSet {
        let m = self.modulus as i64;
        ProgressionSet::new(
            self.modulus,
            self.residues
                .iter()
                .map(|&c| (c as i64 + n).rem_euclid(m) as u32),
        )
    }

    pub fn is_subset(&self, other: &ProgressionSet) -> bool {
        let m = self.modulus.lcm(&other.modulus);
        let b: BTreeSet<u32> = other.residues_mod(m).into_iter().collect();
        self.residues_mod(m).iter().all(|c| b.contains(c))
    }

    /// Members in the closed interval `[lo, hi]`, ascending.
    pub fn members_in(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        (lo..=hi).filter(move |&n| self.contains(n))
    }

    /// Member of smallest absolute value, preferring the nonnegative one.
    pub fn smallest_member(&self) -> Option<i64> {
        let m = self.modulus as i64;
        self.residues
            .iter()
            .flat_map(|&c| [c as i64, c as i64 - m])
            .min_by_key(|&n| (n.abs(), n < 0))
    }

    fn canonicalize(&mut self) {
        if self.residues.is_empty() {
            self.modulus = 1;
            return;
        }
        let m = self.modulus;
        for d in 1..=m {
            if !m.is_multiple_of(d) {
                continue;
            }
            let periodic = self
                .residues
                .iter()
                .all(|&c| self.residues.contains(&((c + d) % m)));
            if periodic {
                self.residues.retain(|&c| c < d);
                self.modulus = d;
                return;
            }
        }
    }

    /// TeX rendering such as `(2\mathbb{Z}+1)\delta`.
    pub fn to_tex(&self) -> String {
        self.render("\\mathbb{Z}", "\\delta", "\\emptyset", " \\cup ")
    }

    fn render(&self, zz: &str, delta: &str, empty: &str, cup: &str) -> String {
        if self.is_empty() {
            return empty.to_string();
        }
        let parts: Vec<String> = self
            .residues
            .iter()
            .map(|&c| {
                let base = if self.modulus == 1 {
                    zz.to_string()
                } else {
                    format!("{}{zz}", self.modulus)
                };
                if c == 0 {
                    format!("{base}{delta}")
                } else {
                    format!("({base}+{c}){delta}")
                }
            })
            .collect();
        parts.join(cup)
    }
}

impl fmt::Display for ProgressionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("ℤ", "δ", "∅", " ∪ "))
    }
}

//! Integer vectors in the lattice spanned by `ε_1..ε_k`, `δ_1..δ_l` and the
//! null direction `δ`, with the invariant bilinear form.
//!
//! The form is normalized as `(ε_i, ε_i) = 1`, `(δ_j, δ_j) = -1`, all cross
//! terms zero, and `δ` isotropic and orthogonal to everything. Only vanishing
//! and ratios of form values carry meaning downstream.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A basis symbol of the ambient lattice. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisIndex {
    Eps(usize),
    Del(usize),
    DeltaIm,
}

/// Value of the bilinear form on a pair of lattice vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FormValue(pub i64);

impl FormValue {
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// `Σ eps[i] ε_i + Σ del[j] δ_j + dc δ`.
///
/// Serialized canonically as `{"eps": [...], "del": [...], "dc": n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootVector {
    pub eps: Vec<i64>,
    pub del: Vec<i64>,
    pub dc: i64,
}

impl RootVector {
    pub fn zero(k: usize, l: usize) -> Self {
        RootVector {
            eps: vec![0; k],
            del: vec![0; l],
            dc: 0,
        }
    }

    /// Unit vector for a basis symbol; panics on an out-of-range index.
    pub fn basis(k: usize, l: usize, idx: BasisIndex) -> Self {
        let mut v = Self::zero(k, l);
        match idx {
            BasisIndex::Eps(i) => {
                assert!((1..=k).contains(&i), "eps index {i} out of range 1..={k}");
                v.eps[i - 1] = 1;
            }
            BasisIndex::Del(j) => {
                assert!((1..=l).contains(&j), "del index {j} out of range 1..={l}");
                v.del[j - 1] = 1;
            }
            BasisIndex::DeltaIm => v.dc = 1,
        }
        v
    }

    pub fn eps_unit(k: usize, l: usize, i: usize) -> Self {
        Self::basis(k, l, BasisIndex::Eps(i))
    }

    pub fn del_unit(k: usize, l: usize, j: usize) -> Self {
        Self::basis(k, l, BasisIndex::Del(j))
    }

    pub fn delta(k: usize, l: usize) -> Self {
        Self::basis(k, l, BasisIndex::DeltaIm)
    }

    pub fn k(&self) -> usize {
        self.eps.len()
    }

    pub fn l(&self) -> usize {
        self.del.len()
    }

    pub fn coord(&self, idx: BasisIndex) -> i64 {
        match idx {
            BasisIndex::Eps(i) => self.eps[i - 1],
            BasisIndex::Del(j) => self.del[j - 1],
            BasisIndex::DeltaIm => self.dc,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dc == 0 && self.is_dot_zero()
    }

    /// True when the δ-free part vanishes, i.e. the vector lies in `ℤδ`.
    pub fn is_dot_zero(&self) -> bool {
        self.eps.iter().all(|&x| x == 0) && self.del.iter().all(|&x| x == 0)
    }

    pub fn check_ambient(&self, other: &RootVector) -> Result<()> {
        if self.k() == other.k() && self.l() == other.l() {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                expected_k: self.k(),
                expected_l: self.l(),
                found_k: other.k(),
                found_l: other.l(),
            })
        }
    }

    pub fn add(&self, other: &RootVector) -> Result<RootVector> {
        self.check_ambient(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &RootVector) -> RootVector {
        RootVector {
            eps: self
                .eps
                .iter()
                .zip(&other.eps)
                .map(|(a, b)| a + b)
                .collect(),
            del: self
                .del
                .iter()
                .zip(&other.del)
                .map(|(a, b)| a + b)
                .collect(),
            dc: self.dc + other.dc,
        }
    }

    pub fn negate(&self) -> RootVector {
        self.scale(-1)
    }

    pub fn scale(&self, c: i64) -> RootVector {
        RootVector {
            eps: self.eps.iter().map(|x| c * x).collect(),
            del: self.del.iter().map(|x| c * x).collect(),
            dc: c * self.dc,
        }
    }

    /// Copy with the δ coefficient cleared.
    pub fn dot_part(&self) -> RootVector {
        RootVector {
            eps: self.eps.clone(),
            del: self.del.clone(),
            dc: 0,
        }
    }

    /// Copy with the δ coefficient replaced.
    pub fn with_dc(&self, dc: i64) -> RootVector {
        RootVector {
            eps: self.eps.clone(),
            del: self.del.clone(),
            dc,
        }
    }

    /// `v + n δ`.
    pub fn shift(&self, n: i64) -> RootVector {
        self.with_dc(self.dc + n)
    }

    pub fn form(&self, other: &RootVector) -> Result<FormValue> {
        self.check_ambient(other)?;
        Ok(self.form_unchecked(other))
    }

    pub(crate) fn form_unchecked(&self, other: &RootVector) -> FormValue {
        let e: i64 = self.eps.iter().zip(&other.eps).map(|(a, b)| a * b).sum();
        let d: i64 = self.del.iter().zip(&other.del).map(|(a, b)| a * b).sum();
        FormValue(e - d)
    }

    /// `(v, v)`.
    pub fn norm(&self) -> FormValue {
        self.form_unchecked(self)
    }

    /// Lexicographically positive on the δ-free part: the first nonzero
    /// entry of `(eps, del)` is positive. Used to pick a canonical member of
    /// a `±` pair.
    pub fn is_dot_positive(&self) -> bool {
        self.eps
            .iter()
            .chain(&self.del)
            .find(|&&x| x != 0)
            .is_some_and(|&x| x > 0)
    }
}

// Operators panic on mismatched ambients; use the checked methods at API
// boundaries.
impl Add for &RootVector {
    type Output = RootVector;
    fn add(self, rhs: &RootVector) -> RootVector {
        assert_eq!((self.k(), self.l()), (rhs.k(), rhs.l()), "ambient mismatch");
        self.add_unchecked(rhs)
    }
}

impl Sub for &RootVector {
    type Output = RootVector;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: &RootVector) -> RootVector {
        self + &rhs.negate()
    }
}

impl Neg for &RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        self.negate()
    }
}

/// Total order on `(dc, eps, del)`.
impl Ord for RootVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dc
            .cmp(&other.dc)
            .then_with(|| self.eps.cmp(&other.eps))
            .then_with(|| self.del.cmp(&other.del))
    }
}

impl PartialOrd for RootVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl RootVector {
    /// LaTeX form, e.g. `\varepsilon_{1}-\delta_{1}+2\delta`.
    pub fn to_tex(&self) -> String {
        let mut out = String::new();
        let terms = self
            .eps
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, format!("\\varepsilon_{{{}}}", i + 1)))
            .chain(
                self.del
                    .iter()
                    .enumerate()
                    .map(|(j, &c)| (c, format!("\\delta_{{{}}}", j + 1))),
            )
            .chain(std::iter::once((self.dc, "\\delta".to_string())));
        for (c, sym) in terms.filter(|(c, _)| *c != 0) {
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&sym);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        let mut push = |c: i64, sym: String| {
            if c == 0 {
                return;
            }
            let mag = c.abs();
            let body = if mag == 1 { sym } else { format!("{mag}{sym}") };
            if terms.is_empty() {
                terms.push(if c < 0 { format!("-{body}") } else { body });
            } else {
                terms.push(format!("{} {body}", if c < 0 { '-' } else { '+' }));
            }
        };
        for (i, &c) in self.eps.iter().enumerate() {
            push(c, format!("e{}", i + 1));
        }
        for (j, &c) in self.del.iter().enumerate() {
            push(c, format!("d{}", j + 1));
        }
        push(self.dc, "δ".to_string());
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" "))
        }
    }
}

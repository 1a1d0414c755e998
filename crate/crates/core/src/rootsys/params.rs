use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::RootVector;

/// The four twisted affine families with nonzero odd part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffineFamily {
    /// `A(2k, 2l-1)^(2)`
    #[serde(rename = "a-even-2")]
    AEven2,
    /// `A(2k-1, 2l-1)^(2)`, `(k, l) != (1, 1)`
    #[serde(rename = "a-odd-2")]
    AOdd2,
    /// `A(2k, 2l)^(4)`
    #[serde(rename = "a-4")]
    A4,
    /// `D(k+1, l)^(2)`
    #[serde(rename = "d-2")]
    D2,
}

impl AffineFamily {
    pub const ALL: [AffineFamily; 4] = [
        AffineFamily::AEven2,
        AffineFamily::AOdd2,
        AffineFamily::A4,
        AffineFamily::D2,
    ];

    pub fn token(self) -> &'static str {
        match self {
            AffineFamily::AEven2 => "a-even-2",
            AffineFamily::AOdd2 => "a-odd-2",
            AffineFamily::A4 => "a-4",
            AffineFamily::D2 => "d-2",
        }
    }

    pub fn tex_name(self) -> &'static str {
        match self {
            AffineFamily::AEven2 => "A(2k,2\\ell-1)^{(2)}",
            AffineFamily::AOdd2 => "A(2k-1,2\\ell-1)^{(2)}",
            AffineFamily::A4 => "A(2k,2\\ell)^{(4)}",
            AffineFamily::D2 => "D(k+1,\\ell)^{(2)}",
        }
    }

    pub fn constraints(self) -> &'static str {
        match self {
            AffineFamily::AOdd2 => "k >= 1, l >= 1, (k, l) != (1, 1)",
            _ => "k >= 0, l >= 1",
        }
    }

    /// The three `A` families decompose nonsingular dot roots with a
    /// doubling factor of 2; `D` uses 1.
    pub fn is_type_a(self) -> bool {
        !matches!(self, AffineFamily::D2)
    }
}

impl fmt::Display for AffineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for AffineFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AffineFamily::ALL
            .into_iter()
            .find(|f| f.token() == s)
            .ok_or_else(|| {
                Error::InvalidParams(format!(
                    "unknown family '{s}' (expected one of a-even-2, a-odd-2, a-4, d-2)"
                ))
            })
    }
}

/// One of the two affine components of the even part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Component {
    One,
    Two,
}

impl Component {
    pub const BOTH: [Component; 2] = [Component::One, Component::Two];

    pub fn index(self) -> u8 {
        match self {
            Component::One => 1,
            Component::Two => 2,
        }
    }
}

impl From<Component> for u8 {
    fn from(c: Component) -> u8 {
        c.index()
    }
}

impl TryFrom<u8> for Component {
    type Error = String;
    fn try_from(i: u8) -> std::result::Result<Self, String> {
        match i {
            1 => Ok(Component::One),
            2 => Ok(Component::Two),
            _ => Err(format!("component must be 1 or 2, got {i}")),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A family together with its rank parameters `(k, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraParams {
    pub family: AffineFamily,
    pub k: usize,
    pub l: usize,
}

impl AlgebraParams {
    pub fn new(family: AffineFamily, k: usize, l: usize) -> Result<Self> {
        if l < 1 {
            return Err(Error::InvalidParams(format!(
                "{family}: l must be at least 1, got l={l}"
            )));
        }
        if family == AffineFamily::AOdd2 {
            if k < 1 {
                return Err(Error::InvalidParams(format!(
                    "{family}: k must be at least 1, got k={k}"
                )));
            }
            if (k, l) == (1, 1) {
                return Err(Error::InvalidParams(format!(
                    "{family}: (k, l) = (1, 1) is excluded"
                )));
            }
        }
        Ok(AlgebraParams { family, k, l })
    }

    /// Every valid parameter set with `k <= kmax`, `l <= lmax`.
    pub fn grid(kmax: usize, lmax: usize) -> Vec<AlgebraParams> {
        let mut out = Vec::new();
        for family in AffineFamily::ALL {
            for k in 0..=kmax {
                for l in 1..=lmax {
                    if let Ok(p) = AlgebraParams::new(family, k, l) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    pub fn zero(&self) -> RootVector {
        RootVector::zero(self.k, self.l)
    }

    pub fn eps(&self, i: usize) -> RootVector {
        RootVector::eps_unit(self.k, self.l, i)
    }

    pub fn del(&self, j: usize) -> RootVector {
        RootVector::del_unit(self.k, self.l, j)
    }

    pub fn delta(&self) -> RootVector {
        RootVector::delta(self.k, self.l)
    }

    /// Second component is absent when `k = 0`.
    pub fn has_component(&self, c: Component) -> bool {
        c == Component::One || self.k > 0
    }

    pub fn components(&self) -> Vec<Component> {
        Component::BOTH
            .into_iter()
            .filter(|&c| self.has_component(c))
            .collect()
    }

    pub fn check_dims(&self, v: &RootVector) -> Result<()> {
        if v.k() == self.k && v.l() == self.l {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                expected_k: self.k,
                expected_l: self.l,
                found_k: v.k(),
                found_l: v.l(),
            })
        }
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (k={}, l={})", self.family, self.k, self.l)
    }
}

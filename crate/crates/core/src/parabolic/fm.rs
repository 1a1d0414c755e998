//! Exact Fourier–Motzkin elimination over `ℚ`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `coeffs · x >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Inequality {
    pub fn new(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Inequality { coeffs, rhs }
    }

    pub fn from_ints(coeffs: &[i64], rhs: i64) -> Self {
        Inequality {
            coeffs: coeffs.iter().map(|&c| int(c)).collect(),
            rhs: int(rhs),
        }
    }

    fn negated(&self) -> Self {
        Inequality {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            rhs: -&self.rhs,
        }
    }

    /// Scales so the first nonzero coefficient has absolute value 1, which
    /// makes duplicate constraints compare equal.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c /= &lead;
            }
            self.rhs /= &lead;
        }
        self
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        lhs >= self.rhs
    }
}

pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A system of weak linear inequalities.
#[derive(Debug, Clone, Default)]
pub struct System {
    pub nvars: usize,
    pub rows: Vec<Inequality>,
}

impl System {
    pub fn new(nvars: usize) -> Self {
        System {
            nvars,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Inequality) {
        assert_eq!(row.coeffs.len(), self.nvars, "row has the wrong width");
        self.rows.push(row);
    }

    pub fn push_eq(&mut self, row: Inequality) {
        self.push(row.negated());
        self.push(row);
    }

    /// A feasible point, or `None`. Each coordinate is chosen, in order, as
    /// the value closest to 0 inside its admissible interval, preferring
    /// integers.
    pub fn solve(&self) -> Option<Vec<BigRational>> {
        let n = self.nvars;
        // stages[j] constrains x_0..x_{j-1} (trailing coefficients are zero).
        let mut stages: Vec<Vec<Inequality>> = vec![Vec::new(); n + 1];
        stages[n] = dedup(self.rows.clone());
        for j in (0..n).rev() {
            stages[j] = eliminate(&stages[j + 1], j);
        }
        if stages[0].iter().any(|r| r.rhs.is_positive()) {
            return None;
        }
        let mut x: Vec<BigRational> = vec![BigRational::zero(); n];
        for j in 0..n {
            let (mut lo, mut hi): (Option<BigRational>, Option<BigRational>) = (None, None);
            for row in &stages[j + 1] {
                let a = &row.coeffs[j];
                if a.is_zero() {
                    continue;
                }
                let rest: BigRational = (0..j).map(|i| &row.coeffs[i] * &x[i]).sum();
                let bound = (&row.rhs - rest) / a;
                if a.is_positive() {
                    lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
                } else {
                    hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
                }
            }
            x[j] = pick(lo, hi)?;
        }
        debug_assert!(self.rows.iter().all(|r| r.holds(&x)));
        Some(x)
    }
}

fn dedup(rows: Vec<Inequality>) -> Vec<Inequality> {
    let set: BTreeSet<Inequality> = rows.into_iter().map(Inequality::normalized).collect();
    set.into_iter().collect()
}

fn eliminate(rows: &[Inequality], j: usize) -> Vec<Inequality> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        let c = &r.coeffs[j];
        if c.is_positive() {
            pos.push(r);
        } else if c.is_negative() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    for p in &pos {
        for q in &neg {
            // p_j > 0 > q_j: (-q_j) p + p_j q cancels x_j.
            let (a, b) = (-&q.coeffs[j], p.coeffs[j].clone());
            let coeffs = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(x, y)| &a * x + &b * y)
                .collect();
            out.push(Inequality::new(coeffs, &a * &p.rhs + &b * &q.rhs));
        }
    }
    dedup(out)
}

fn pick(lo: Option<BigRational>, hi: Option<BigRational>) -> Option<BigRational> {
    let zero = BigRational::zero();
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    let ok_lo = lo.as_ref().is_none_or(|l| *l <= zero);
    let ok_hi = hi.as_ref().is_none_or(|h| *h >= zero);
    if ok_lo && ok_hi {
        return Some(zero);
    }
    if !ok_lo {
        let l = lo.unwrap_or_default();
        let c = l.ceil();
        return Some(if hi.as_ref().is_none_or(|h| c <= *h) {
            c
        } else {
            l
        });
    }
    let h = hi.unwrap_or_default();
    let f = h.floor();
    Some(if lo.as_ref().is_none_or(|l| f >= *l) {
        f
    } else {
        h
    })
}

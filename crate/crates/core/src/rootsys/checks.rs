//! Exhaustive checks of the structural facts about `R` and `R_0(i)`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::tables::{self, Pattern};
use super::{
    classify, dot_roots, dot_roots_0, dot_roots_0_from_table, dot_roots_from_table,
    enumerate_window, in_even, nonsingular_dot_roots, s_set_0_any, s_set_0_from_table, s_set_any,
    s_set_even, s_set_from_table, syntactic_class, AlgebraParams, Component, Parity, RootClass,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::RootVector;

/// A failed check, with the roots that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub message: String,
    pub witnesses: Vec<RootVector>,
}

impl Counterexample {
    pub fn new(message: impl Into<String>, witnesses: Vec<RootVector>) -> Self {
        Counterexample {
            message: message.into(),
            witnesses,
        }
    }
}

/// Outcome of one exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    /// Number of instances examined.
    pub checked: usize,
    /// Set when the check was vacuous because a component is absent.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub empty_component: bool,
    pub failure: Option<Counterexample>,
}

impl Verdict {
    pub fn pass(check: impl Into<String>, checked: usize) -> Self {
        Verdict {
            check: check.into(),
            checked,
            empty_component: false,
            failure: None,
        }
    }

    pub fn fail(check: impl Into<String>, checked: usize, cex: Counterexample) -> Self {
        Verdict {
            check: check.into(),
            checked,
            empty_component: false,
            failure: Some(cex),
        }
    }

    pub fn from_outcome(
        check: impl Into<String>,
        checked: usize,
        failure: Option<Counterexample>,
    ) -> Self {
        Verdict {
            check: check.into(),
            checked,
            empty_component: false,
            failure,
        }
    }

    fn vacuous(check: impl Into<String>) -> Self {
        Verdict {
            empty_component: true,
            ..Verdict::pass(check, 0)
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Length used for comparisons inside one component: `|(α̇, α̇)|`.
fn len2(v: &RootVector) -> i64 {
    v.norm().0.abs()
}

/// Clause-derived `Ṙ`, `S_α̇`, `Ṙ_0(i)` and `S_α̇(i)` against the stored tables.
pub fn check_tables(p: &AlgebraParams) -> Verdict {
    let name = format!("tables {p}");
    let mut checked = 0;
    let dots = dot_roots(p);
    if dots != dot_roots_from_table(p) {
        return Verdict::fail(
            name,
            1,
            Counterexample::new("dot roots differ from the stored table", dots),
        );
    }
    for a in dots.iter().filter(|a| !a.is_dot_zero()) {
        checked += 1;
        let computed = s_set_any(p, a);
        if s_set_from_table(p, a).as_ref() != Some(&computed) {
            return Verdict::fail(
                name,
                checked,
                Counterexample::new(
                    format!("S set {computed} differs from the table"),
                    vec![a.clone()],
                ),
            );
        }
    }
    for comp in p.components() {
        let dots0 = dot_roots_0(p, comp);
        if dots0 != dot_roots_0_from_table(p, comp) {
            return Verdict::fail(
                name,
                checked,
                Counterexample::new(format!("dot roots of component {comp} differ"), dots0),
            );
        }
        for a in dots0.iter().filter(|a| !a.is_dot_zero()) {
            checked += 1;
            let computed = s_set_0_any(p, comp, a);
            if s_set_0_from_table(p, comp, a).as_ref() != Some(&computed) {
                return Verdict::fail(
                    name,
                    checked,
                    Counterexample::new(
                        format!("S({comp}) set {computed} differs from the table"),
                        vec![a.clone()],
                    ),
                );
            }
        }
    }
    Verdict::pass(name, checked)
}

/// Syntactic and metric classes agree, parity placement is consistent, and
/// the two even components meet only in `ℤδ`.
pub fn check_classification(p: &AlgebraParams, mmax: i64) -> Verdict {
    let name = format!("classification {p} mmax={mmax}");
    let window = enumerate_window(p, mmax);
    let mut checked = 0;
    for v in window.iter().filter(|v| !v.is_zero()) {
        checked += 1;
        let info = match classify(p, v) {
            Ok(info) => info,
            Err(e) => {
                return Verdict::fail(
                    name,
                    checked,
                    Counterexample::new(e.to_string(), vec![v.clone()]),
                )
            }
        };
        if info.class == RootClass::Nonsingular && info.parity != Some(Parity::Odd) {
            return Verdict::fail(
                name,
                checked,
                Counterexample::new("nonsingular root placed in the even part", vec![v.clone()]),
            );
        }
        let one = in_even(p, Component::One, v).unwrap_or(false);
        let two = in_even(p, Component::Two, v).unwrap_or(false);
        if one && two && !v.is_dot_zero() {
            return Verdict::fail(
                name,
                checked,
                Counterexample::new("root lies in both even components", vec![v.clone()]),
            );
        }
    }
    // R_0(i) ⊆ R, scanned over the same window.
    for comp in p.components() {
        for a in dot_roots_0(p, comp) {
            for n in s_set_0_any(p, comp, &a).members_in(-mmax, mmax) {
                checked += 1;
                let v = a.with_dc(n);
                if window.binary_search(&v).is_err() {
                    return Verdict::fail(
                        name,
                        checked,
                        Counterexample::new(
                            format!("element of R_0({comp}) is not a root"),
                            vec![v],
                        ),
                    );
                }
            }
        }
    }
    Verdict::pass(name, checked)
}

/// Sums of two nonsingular roots that are roots are real or imaginary.
pub fn check_ns_sum(p: &AlgebraParams, mmax: i64) -> Verdict {
    check_ns_sum_with(p, mmax, Exec::default())
}

pub fn check_ns_sum_with(p: &AlgebraParams, mmax: i64, exec: Exec) -> Verdict {
    let name = format!("ns+ns {p} mmax={mmax}");
    let ns = nonsingular_dot_roots(p);
    let windows: Vec<Vec<i64>> = ns
        .iter()
        .map(|a| s_set_any(p, a).members_in(-mmax, mmax).collect())
        .collect();
    let root_clauses = tables::root_clauses(p.family);
    let per_a = exec.map(&(0..ns.len()).collect::<Vec<_>>(), |&ia| {
        let a = &ns[ia];
        let mut checked = 0usize;
        for (ib, b) in ns.iter().enumerate() {
            let s = a + b;
            let pat = Pattern::of(&s);
            for &m in &windows[ia] {
                for &n in &windows[ib] {
                    let dc = m + n;
                    if dc.abs() > mmax {
                        continue;
                    }
                    checked += 1;
                    let Some(pat) = pat else { continue };
                    if !root_clauses.iter().any(|c| c.matches(p, pat, dc)) {
                        continue;
                    }
                    if syntactic_class(&s) == Some(RootClass::Nonsingular) {
                        return (
                            checked,
                            Some(Counterexample::new(
                                "sum of nonsingular roots is nonsingular",
                                vec![a.with_dc(m), b.with_dc(n), s.with_dc(dc)],
                            )),
                        );
                    }
                }
            }
        }
        (checked, None)
    });
    let checked = per_a.iter().map(|(c, _)| c).sum();
    let failure = per_a.into_iter().find_map(|(_, f)| f);
    Verdict::from_outcome(name, checked, failure)
}

/// Ordered pairs of nonzero `Ṙ_0(i)` elements whose sum is nonzero in `Ṙ_0(i)`.
fn component_pairs(dots: &[RootVector]) -> Vec<(RootVector, RootVector, RootVector)> {
    let nonzero: Vec<&RootVector> = dots.iter().filter(|a| !a.is_dot_zero()).collect();
    let mut out = Vec::new();
    for a in &nonzero {
        for b in &nonzero {
            let s = *a + *b;
            if !s.is_dot_zero() && dots.binary_search(&s).is_ok() {
                out.push(((*a).clone(), (*b).clone(), s));
            }
        }
    }
    out
}

/// `S_{α̇+β̇}(i) ⊆ S_α̇(i) + S_β̇(i)` whenever `ℓ(α̇) = ℓ(β̇) ≤ ℓ(α̇+β̇)`.
pub fn check_sum_property(p: &AlgebraParams, comp: Component) -> Verdict {
    let name = format!("sum property {p} component {comp}");
    if !p.has_component(comp) {
        return Verdict::vacuous(name);
    }
    let mut checked = 0;
    for (a, b, s) in component_pairs(&dot_roots_0(p, comp)) {
        if len2(&a) != len2(&b) || len2(&a) > len2(&s) {
            continue;
        }
        checked += 1;
        let lhs = s_set_0_any(p, comp, &s);
        let rhs = s_set_0_any(p, comp, &a).sum(&s_set_0_any(p, comp, &b));
        if !lhs.is_subset(&rhs) {
            return Verdict::fail(
                name,
                checked,
                Counterexample::new(format!("{lhs} is not inside {rhs}"), vec![a, b, s]),
            );
        }
    }
    Verdict::pass(name, checked)
}

/// Which length pattern a summing pair follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LengthPattern {
    /// `ℓ(α) = ℓ(β) < ℓ(α+β)`
    A,
    /// the sum is as long as the shorter summand, the other is longer
    B,
    /// all three equal
    C,
}

pub fn length_pattern(a: &RootVector, b: &RootVector) -> Option<LengthPattern> {
    let s = a + b;
    let (la, lb, ls) = (len2(a), len2(b), len2(&s));
    let pa = la == lb && la < ls;
    let pb = (ls == la && la < lb) || (ls == lb && lb < la);
    let pc = la == lb && lb == ls;
    match (pa, pb, pc) {
        (true, false, false) => Some(LengthPattern::A),
        (false, true, false) => Some(LengthPattern::B),
        (false, false, true) => Some(LengthPattern::C),
        _ => None,
    }
}

/// Exactly one of the three length patterns holds for every summing pair.
pub fn check_fini(p: &AlgebraParams, comp: Component) -> Verdict {
    let name = format!("length trichotomy {p} component {comp}");
    if !p.has_component(comp) {
        return Verdict::vacuous(name);
    }
    let mut checked = 0;
    for (a, b, s) in component_pairs(&dot_roots_0(p, comp)) {
        checked += 1;
        if length_pattern(&a, &b).is_none() {
            return Verdict::fail(
                name,
                checked,
                Counterexample::new("no single length pattern applies", vec![a, b, s]),
            );
        }
    }
    Verdict::pass(name, checked)
}

/// Splitting of a nonsingular dot root used for the unboundedness argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsDecomposition {
    pub eta: RootVector,
    pub alpha: RootVector,
    pub beta: RootVector,
    pub kfactor: i64,
    pub r_eta: u32,
}

fn is_real_dot(p: &AlgebraParams, v: &RootVector) -> bool {
    !v.is_dot_zero() && syntactic_class(v) == Some(RootClass::Real) && !s_set_any(p, v).is_empty()
}

fn decomposition_holds(
    p: &AlgebraParams,
    eta: &RootVector,
    alpha: &RootVector,
    kf: i64,
    r: u32,
) -> bool {
    let beta = eta - alpha;
    let ka = alpha.scale(kf);
    let tb = beta.scale(2);
    let need_a = super::ProgressionSet::single(kf as u32 * r, 0);
    let need_b = super::ProgressionSet::single(2 * r, r);
    let dots = dot_roots(p);
    [ka.clone(), ka.negate()]
        .iter()
        .all(|x| is_real_dot(p, x) && need_a.is_subset(&s_set_even(p, x)))
        && [tb.clone(), tb.negate()]
            .iter()
            .all(|x| is_real_dot(p, x) && need_b.is_subset(&s_set_even(p, x)))
        && dots.binary_search(&(&ka + &tb)).is_err()
        && dots.binary_search(&(&ka - &tb)).is_err()
}

/// Finds `α̇, β̇` with `η̇ = α̇ + β̇` such that `±kα̇ + krℤδ` and
/// `±2β̇ ± rδ + 2rℤδ` lie in `R_0 ∩ R_re` and `kα̇ ± 2β̇ ∉ Ṙ`, where `k` is 2 for
/// the `A` families and 1 for `D`.
pub fn ns_decompose(p: &AlgebraParams, eta: &RootVector) -> Result<NsDecomposition> {
    p.check_dims(eta)?;
    if eta.dc != 0
        || syntactic_class(eta) != Some(RootClass::Nonsingular)
        || s_set_any(p, eta).is_empty()
    {
        return Err(Error::NotNonsingular(eta.clone()));
    }
    let r = s_set_any(p, eta).modulus();
    let kf = if p.family.is_type_a() { 2 } else { 1 };
    // α̇ need not lie in Ṙ: for a-odd-2 the split is along `±δ_j`, which is
    // not a dot root there. The coordinate parts of η̇ cover that case.
    let parts = (0..p.k)
        .filter(|&i| eta.eps[i] != 0)
        .map(|i| RootVector::eps_unit(p.k, p.l, i + 1).scale(eta.eps[i]))
        .chain(
            (0..p.l)
                .filter(|&j| eta.del[j] != 0)
                .map(|j| RootVector::del_unit(p.k, p.l, j + 1).scale(eta.del[j])),
        );
    for alpha in dot_roots(p).into_iter().chain(parts) {
        if alpha.is_dot_zero() || !decomposition_holds(p, eta, &alpha, kf, r) {
            continue;
        }
        let dec = NsDecomposition {
            eta: eta.clone(),
            beta: eta - &alpha,
            alpha,
            kfactor: kf,
            r_eta: r,
        };
        verify_decomposition_on_window(p, &dec, 4 * r as i64)?;
        return Ok(dec);
    }
    Err(Error::NoDecomposition(eta.clone()))
}

/// Re-checks the containments of a decomposition by direct membership.
fn verify_decomposition_on_window(p: &AlgebraParams, d: &NsDecomposition, span: i64) -> Result<()> {
    let r = d.r_eta as i64;
    let kf = d.kfactor;
    let even_real = |v: &RootVector| -> bool {
        let ok = classify(p, v)
            .is_ok_and(|i| i.class == RootClass::Real && i.parity == Some(Parity::Even));
        ok && (in_even(p, Component::One, v).unwrap_or(false)
            || in_even(p, Component::Two, v).unwrap_or(false))
    };
    for n in -span..=span {
        for sign in [1, -1] {
            let a = d.alpha.scale(sign * kf).with_dc(kf * r * n);
            let b = d.beta.scale(sign * 2).with_dc(2 * r * n + r);
            let b2 = d.beta.scale(sign * 2).with_dc(2 * r * n - r);
            for v in [a, b, b2] {
                if !even_real(&v) {
                    return Err(Error::NoDecomposition(d.eta.clone()));
                }
            }
        }
    }
    Ok(())
}

pub fn check_ns_decompositions(p: &AlgebraParams) -> Verdict {
    let name = format!("nonsingular decomposition {p}");
    let ns = nonsingular_dot_roots(p);
    for (i, eta) in ns.iter().enumerate() {
        if let Err(e) = ns_decompose(p, eta) {
            return Verdict::fail(
                name,
                i + 1,
                Counterexample::new(e.to_string(), vec![eta.clone()]),
            );
        }
    }
    Verdict::pass(name, ns.len())
}

/// Twice an odd real root is an even real root.
pub fn check_double_odd(p: &AlgebraParams, mmax: i64) -> Verdict {
    let name = format!("double odd {p} mmax={mmax}");
    let mut checked = 0;
    for v in enumerate_window(p, mmax / 2) {
        if v.is_zero() {
            continue;
        }
        let Ok(info) = classify(p, &v) else { continue };
        if info.class != RootClass::Real || info.parity != Some(Parity::Odd) {
            continue;
        }
        checked += 1;
        let w = v.scale(2);
        match classify(p, &w) {
            Ok(i) if i.class == RootClass::Real && i.parity == Some(Parity::Even) => {}
            _ => {
                return Verdict::fail(
                    name,
                    checked,
                    Counterexample::new("double of an odd real root is not even real", vec![v, w]),
                )
            }
        }
    }
    Verdict::pass(name, checked)
}

/// Rank of a list of integer vectors over `ℚ`.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = BigRational::one() / m[rank][col].clone();
        let pivot_row: Vec<BigRational> = m[rank].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

fn coords(v: &RootVector) -> Vec<i64> {
    v.eps.iter().chain(&v.del).copied().chain([v.dc]).collect()
}

/// The real span of `R_0` equals that of `R`, which is everything.
pub fn check_span(p: &AlgebraParams) -> Verdict {
    let name = format!("span {p}");
    let even: Vec<Vec<i64>> = p
        .components()
        .into_iter()
        .flat_map(|c| {
            dot_roots_0(p, c).into_iter().flat_map(move |a| {
                let s = s_set_0_any(p, c, &a);
                s.members_in(-4, 4)
                    .map(|n| coords(&a.with_dc(n)))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    let all: Vec<Vec<i64>> = enumerate_window(p, 4).iter().map(coords).collect();
    let (re, ra) = (rank(&even), rank(&all));
    let full = p.k + p.l + 1;
    if re == ra && ra == full {
        Verdict::pass(name, even.len() + all.len())
    } else {
        Verdict::fail(
            name,
            even.len() + all.len(),
            Counterexample::new(
                format!("rank R_0 = {re}, rank R = {ra}, expected {full}"),
                vec![],
            ),
        )
    }
}

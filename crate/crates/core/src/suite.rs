//! Batteries of checks grouped into reports, shared by the CLI and tests.

use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::parabolic::{
    check_parabolic_pair, check_pos_criterion, decompose_over_pi, dot_parabolic_from_p,
    extend_zeta, is_parabolic, phi_pi, synthesize_functional, verify_equal, DotParabolic,
    Functional,
};
use crate::rootsys::checks::{
    check_classification, check_double_odd, check_fini, check_ns_decompositions, check_ns_sum_with,
    check_span, check_sum_property, check_tables, Counterexample, Verdict,
};
use crate::rootsys::{AlgebraParams, Component};
use crate::shadow::random::{config_from_signs, mutate, Mutation};
use crate::shadow::{check_p_with, hypothesis_main2, is_tight, validate, ShadowConfig};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub witness: Counterexample,
}

/// Outcome of a suite. Wall time is kept out of the serialized form so
/// that reports are byte-identical across runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub suite: String,
    pub checks_run: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn new(suite: impl Into<String>) -> Self {
        RunReport {
            suite: suite.into(),
            checks_run: 0,
            failures: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn record(&mut self, v: Verdict) {
        self.checks_run += 1;
        if let Some(w) = v.failure {
            self.failures.push(Failure {
                check: v.check,
                witness: w,
            });
        }
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: Counterexample) {
        self.checks_run += 1;
        self.failures.push(Failure {
            check: check.into(),
            witness,
        });
    }

    pub fn merge(&mut self, other: RunReport) {
        self.checks_run += other.checks_run;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Table fidelity, classification, and the structural lemmas.
pub fn rootsys_suite(p: &AlgebraParams, mmax: i64, exec: Exec) -> RunReport {
    let mut r = RunReport::new(format!("rootsys {p}"));
    r.record(check_tables(p));
    r.record(check_classification(p, mmax));
    r.record(check_ns_sum_with(p, mmax, exec));
    for comp in Component::BOTH {
        r.record(check_sum_property(p, comp));
        r.record(check_fini(p, comp));
    }
    r.record(check_ns_decompositions(p));
    r.record(check_double_odd(p, mmax));
    r.record(check_span(p));
    r
}

/// Draws nonzero functionals until the induced config is valid, tight and
/// meets the main hypothesis. Returns the config with the functional it was
/// seeded from, or `None` after `tries` attempts.
///
/// The zero functional is skipped: it induces no triangular decomposition,
/// and a tight config built from it puts all of `R` in `P`.
pub fn random_tight_config(
    p: &AlgebraParams,
    rng: &mut ChaCha8Rng,
    mmax: i64,
    tries: usize,
) -> Option<(ShadowConfig, Functional)> {
    for _ in 0..tries {
        let zeta = Functional::random(p.k, p.l, rng);
        if zeta.is_zero() {
            continue;
        }
        let cfg = config_from_signs(p, |a| zeta.sign(a), rng, mmax);
        if validate(&cfg).is_ok() && is_tight(&cfg) && hypothesis_main2(&cfg, mmax).passed() {
            return Some((cfg, zeta));
        }
    }
    None
}

/// Every pipeline step on one validated tight config.
pub fn pipeline_checks(cfg: &ShadowConfig, zeta: &Functional, mmax: i64, exec: Exec) -> RunReport {
    let p = cfg.params();
    let mut r = RunReport::new(format!("pipeline {p}"));
    r.record(check_p_with(cfg, mmax, exec));
    r.record(check_parabolic_pair(cfg, mmax));
    let mut parts: Vec<Option<Functional>> = vec![None, None];
    for comp in p.components() {
        let name = format!("synthesis {p} component {comp}");
        let dp = match dot_parabolic_from_p(cfg, comp, mmax) {
            Ok(dp) => dp,
            Err(e) => {
                r.fail(name, Counterexample::new(e.to_string(), vec![]));
                continue;
            }
        };
        match synthesize_functional(p, &dp) {
            Ok(z) => {
                r.record(Verdict::pass(name, 1));
                parts[comp.index() as usize - 1] = Some(z);
            }
            Err(e) => r.fail(
                name,
                Counterexample::new(e.to_string(), dp.elements.clone()),
            ),
        }
    }
    if let Some(z1) = &parts[0] {
        let ext = extend_zeta(p, z1, parts[1].as_ref());
        if ext.trivial {
            r.fail(
                format!("extension {p}"),
                Counterexample::new("extended functional is zero", vec![]),
            );
        } else {
            r.record(Verdict::pass(format!("extension {p}"), 1));
        }
        let mut v = check_pos_criterion(cfg, &ext.zeta, mmax);
        v.check = format!("{} (synthesized)", v.check);
        r.record(v);
    }
    r.record(check_pos_criterion(cfg, zeta, mmax));
    r
}

/// Whether a mutated config is rejected, with the witness that rejects it.
pub fn rejection_witness(cfg: &ShadowConfig, mmax: i64, exec: Exec) -> Option<Counterexample> {
    if let Err(v) = validate(cfg) {
        return Some(v.detail);
    }
    check_p_with(cfg, mmax, exec).failure
}

pub struct ShadowSuiteOptions {
    pub configs: usize,
    pub mutations: usize,
    pub mmax: i64,
    pub seed: u64,
    pub exec: Exec,
}

/// Random tight configs through the whole pipeline, plus mutated configs
/// that must be rejected.
pub fn shadow_suite(p: &AlgebraParams, o: &ShadowSuiteOptions) -> RunReport {
    let mut r = RunReport::new(format!("shadow {p}"));
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut bases = Vec::new();
    for i in 0..o.configs {
        match random_tight_config(p, &mut rng, o.mmax, 200) {
            Some((cfg, zeta)) => {
                r.merge(pipeline_checks(&cfg, &zeta, o.mmax, o.exec));
                bases.push(cfg);
            }
            None => r.fail(
                format!("config generation {p} #{i}"),
                Counterexample::new("no tight config meeting the hypothesis found", vec![]),
            ),
        }
    }
    if bases.is_empty() {
        return r;
    }
    let mut made = 0;
    let mut attempts = 0;
    while made < o.mutations && attempts < o.mutations * 10 {
        let kind = Mutation::ALL[attempts % Mutation::ALL.len()];
        let base = &bases[attempts % bases.len()];
        attempts += 1;
        let Some(m) = mutate(base, kind, &mut rng, o.mmax) else {
            continue;
        };
        made += 1;
        let name = format!("mutation {kind:?} {p}");
        match rejection_witness(&m, o.mmax, o.exec) {
            Some(w) if !w.witnesses.is_empty() => r.record(Verdict::pass(name, 1)),
            _ => r.fail(
                name,
                Counterexample::new("mutated config was accepted", vec![]),
            ),
        }
    }
    if made < o.mutations {
        r.fail(
            format!("mutations {p}"),
            Counterexample::new(
                format!("only {made} of {} mutations applicable", o.mutations),
                vec![],
            ),
        );
    }
    r
}

/// Φ̇/Π decomposition and the window identity for random functionals.
pub fn pi_suite(p: &AlgebraParams, count: usize, mmax: i64, seed: u64) -> RunReport {
    let mut r = RunReport::new(format!("pi {p}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let zeta = Functional::random(p.k, p.l, &mut rng);
        let pi = match phi_pi(p, &zeta) {
            Ok(pi) => pi,
            Err(e) => {
                r.fail(
                    format!("phi/pi {p}"),
                    Counterexample::new(e.to_string(), vec![]),
                );
                continue;
            }
        };
        let mut bad = None;
        for b in &pi.phi_plus {
            match decompose_over_pi(b, &pi, &zeta) {
                Ok(t) => {
                    let sum = pi
                        .pi
                        .iter()
                        .zip(&t)
                        .fold(p.zero(), |acc, (a, &c)| &acc + &a.scale(c as i64));
                    if &sum != b {
                        bad = Some(Counterexample::new(
                            "coefficients do not reproduce the root",
                            vec![b.clone()],
                        ));
                    }
                }
                Err(e) => bad = Some(Counterexample::new(e.to_string(), vec![b.clone()])),
            }
            if bad.is_some() {
                break;
            }
        }
        r.record(Verdict::from_outcome(
            format!("decomposition over pi {p} ({zeta})"),
            pi.phi_plus.len(),
            bad,
        ));
        r.record(verify_equal(p, &pi, mmax));
    }
    r
}

/// `{ζ >= 0}` → synthesized `ζ'` → same set, for random `ζ`.
pub fn round_trip_suite(p: &AlgebraParams, count: usize, seed: u64) -> RunReport {
    let mut r = RunReport::new(format!("round trip {p}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for comp in p.components() {
        for _ in 0..count {
            let zeta = Functional::random(p.k, p.l, &mut rng);
            let dp = DotParabolic::from_functional(p, comp, &zeta);
            let name = format!("round trip {p} component {comp}");
            let v = is_parabolic(p, &dp);
            if !v.passed() {
                r.record(v);
                continue;
            }
            match synthesize_functional(p, &dp) {
                Ok(z) if DotParabolic::from_functional(p, comp, &z) == dp => {
                    r.record(Verdict::pass(name, 1))
                }
                Ok(z) => r.fail(
                    name,
                    Counterexample::new(format!("{z} changes the set"), dp.elements),
                ),
                Err(e) => r.fail(name, Counterexample::new(e.to_string(), dp.elements)),
            }
        }
    }
    r
}

/// Everything `verify` runs for one parameter set.
pub fn verify_all(p: &AlgebraParams, mmax: i64, seed: u64, exec: Exec) -> RunReport {
    let mut r = RunReport::new(format!("verify {p} mmax={mmax} seed={seed}"));
    r.merge(rootsys_suite(p, mmax, exec));
    r.merge(shadow_suite(
        p,
        &ShadowSuiteOptions {
            configs: 20,
            mutations: 12,
            mmax,
            seed,
            exec,
        },
    ));
    r.merge(pi_suite(p, 10, mmax, seed ^ 1));
    r.merge(round_trip_suite(p, 20, seed ^ 2));
    r
}

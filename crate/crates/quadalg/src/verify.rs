//! Check records and the symbolic / seeded-random identity harness.

use crate::field::{random_element_with, FieldCtx, FieldElem};
use crate::linalg::{vec_is_zero, Vector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    Symbolic,
    Random,
}

/// Verification parameters shared by every suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyOptions {
    pub mode: ModeKind,
    pub seed: u64,
    pub trials: u64,
    pub coeff_bound: i64,
    pub degree_bound: u32,
    pub search_bound: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: ModeKind::Random, seed: 1, trials: 100, coeff_bound: 10, degree_bound: 1, search_bound: 4 }
    }
}

impl VerifyOptions {
    pub fn symbolic() -> Self {
        VerifyOptions { mode: ModeKind::Symbolic, ..Default::default() }
    }
    pub fn random(seed: u64, trials: u64) -> Self {
        VerifyOptions { mode: ModeKind::Random, seed, trials, ..Default::default() }
    }
    pub fn with_mode(&self, mode: ModeKind) -> Self {
        VerifyOptions { mode, ..self.clone() }
    }
    pub fn with_trials(&self, trials: u64) -> Self {
        VerifyOptions { trials, ..self.clone() }
    }
    pub fn with_degree_bound(&self, degree_bound: u32) -> Self {
        VerifyOptions { degree_bound, ..self.clone() }
    }
    /// Deterministic generator for trial `t`, independent of evaluation order.
    pub fn trial_rng(&self, t: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(t))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

/// One verified statement. `mode` is `symbolic`, `random` or `exact` (finite exhaustive
/// evaluation such as basis grids or matrix identities).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub axiom: String,
    pub anchor: String,
    pub mode: String,
    pub trials: u64,
    pub seed: Option<u64>,
    pub status: Status,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
    pub fn exact(axiom: &str, anchor: &str, cases: u64, result: Result<(), String>, started: Instant) -> Self {
        let (status, witness) = match result {
            Ok(()) => (Status::Pass, None),
            Err(w) => (Status::Fail, Some(w)),
        };
        CheckRecord {
            axiom: axiom.into(),
            anchor: anchor.into(),
            mode: "exact".into(),
            trials: cases,
            seed: None,
            status,
            witness,
            detail: None,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }
    pub fn warn(axiom: &str, anchor: &str, detail: String) -> Self {
        CheckRecord {
            axiom: axiom.into(),
            anchor: anchor.into(),
            mode: "exact".into(),
            trials: 0,
            seed: None,
            status: Status::Warn,
            witness: None,
            detail: Some(detail),
            elapsed_ms: 0,
        }
    }
    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(CheckRecord::passed)
}

/// Outcome of evaluating an identity on one input tuple.
pub enum Eval {
    /// The difference of both sides; the identity holds iff it is zero.
    Residual(Vector),
    /// The input falls outside the identity's domain (e.g. an isotropic vector).
    Skip,
}

impl From<Vector> for Eval {
    fn from(v: Vector) -> Self {
        Eval::Residual(v)
    }
}

/// Random vector with coordinates drawn by `random_element`.
pub fn random_vec(ctx: &FieldCtx, rng: &mut ChaCha8Rng, n: usize, opts: &VerifyOptions) -> Vector {
    (0..n).map(|_| random_element_with(ctx, rng, opts.coeff_bound, opts.degree_bound)).collect()
}

/// Vectors of fresh indeterminates, numbered after the context variables.
pub fn indeterminate_args(ctx: &FieldCtx, arity: &[usize]) -> (FieldCtx, Vec<Vector>) {
    let letters = ["x", "y", "z", "w", "v", "u"];
    let mut names = Vec::new();
    let mut args = Vec::new();
    let mut next = ctx.num_vars();
    for (k, &n) in arity.iter().enumerate() {
        let letter = letters.get(k).map(|s| s.to_string()).unwrap_or_else(|| format!("a{k}_"));
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            names.push(format!("{letter}{i}"));
            v.push(FieldElem::indeterminate(next));
            next += 1;
        }
        args.push(v);
    }
    (ctx.extended(names), args)
}

fn format_vec(ctx: &FieldCtx, v: &[FieldElem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| ctx.format(x)).collect();
    format!("[{}]", parts.join(", "))
}

/// Verifies that `f` vanishes identically on inputs of the given shapes.
pub fn check_identity<F>(axiom: &str, anchor: &str, ctx: &FieldCtx, opts: &VerifyOptions, arity: &[usize], f: F) -> CheckRecord
where
    F: Fn(&[Vector]) -> Eval + Sync,
{
    let started = Instant::now();
    match opts.mode {
        ModeKind::Symbolic => {
            let (ext, args) = indeterminate_args(ctx, arity);
            let (status, witness) = match f(&args) {
                Eval::Residual(r) if vec_is_zero(&r) => (Status::Pass, None),
                Eval::Residual(r) => {
                    let i = r.iter().position(|x| !x.is_zero()).unwrap();
                    (Status::Fail, Some(format!("coordinate {i} of the residual is {}", ext.format(&r[i]))))
                }
                Eval::Skip => (Status::Fail, Some("generic input rejected".into())),
            };
            CheckRecord {
                axiom: axiom.into(),
                anchor: anchor.into(),
                mode: "symbolic".into(),
                trials: 1,
                seed: None,
                status,
                witness,
                detail: None,
                elapsed_ms: started.elapsed().as_millis() as u64,
            }
        }
        ModeKind::Random => {
            let outcomes: Vec<Option<Result<(), String>>> = (0..opts.trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = opts.trial_rng(t);
                    let args: Vec<Vector> = arity.iter().map(|&n| random_vec(ctx, &mut rng, n, opts)).collect();
                    match f(&args) {
                        Eval::Skip => None,
                        Eval::Residual(r) if vec_is_zero(&r) => Some(Ok(())),
                        Eval::Residual(_) => {
                            let shown: Vec<String> = args.iter().map(|a| format_vec(ctx, a)).collect();
                            Some(Err(format!("trial {t}: inputs {}", shown.join(" ; "))))
                        }
                    }
                })
                .collect();
            let skipped = outcomes.iter().filter(|o| o.is_none()).count() as u64;
            let failure = outcomes.into_iter().flatten().find_map(|o| o.err());
            CheckRecord {
                axiom: axiom.into(),
                anchor: anchor.into(),
                mode: "random".into(),
                trials: opts.trials - skipped,
                seed: Some(opts.seed),
                status: if failure.is_some() { Status::Fail } else { Status::Pass },
                witness: failure,
                detail: if skipped > 0 { Some(format!("{skipped} samples outside the domain were skipped")) } else { None },
                elapsed_ms: started.elapsed().as_millis() as u64,
            }
        }
    }
}

/// Runs `f` over every index tuple of the given ranges; `f` returns a witness on failure.
pub fn check_grid<F>(axiom: &str, anchor: &str, ranges: &[usize], f: F) -> CheckRecord
where
    F: Fn(&[usize]) -> Option<String> + Sync,
{
    let started = Instant::now();
    let total: usize = ranges.iter().product();
    let failure = (0..total).into_par_iter().find_map_first(|mut k| {
        let mut idx = vec![0; ranges.len()];
        for (slot, &r) in idx.iter_mut().zip(ranges).rev() {
            *slot = k % r;
            k /= r;
        }
        f(&idx).map(|w| format!("indices {idx:?}: {w}"))
    });
    CheckRecord::exact(axiom, anchor, total as u64, failure.map_or(Ok(()), Err), started)
}

//! Config ingestion, instance construction, verification and JSON reports for the binary.

pub mod config;

use crate::composition::CompositionAlgebra;
use crate::field::FieldCtx;
use crate::jmodule::SpecialJModule;
use crate::jordan::{JordanCtx, JordanKind};
use crate::linalg::{Matrix, Vector};
use crate::moufang::{Relation, RootSystem, Specialization};
use crate::quadform::{build_e6e7e8_data, PointedQuadSpace, QuadraticForm};
use crate::quadrangular::etype::ETypeConstruction;
use crate::quadrangular::pseudo::PseudoQuadraticSpace;
use crate::quadrangular::QuadrangularAlgebra;
use crate::tensoralg::TensorAlgebra;
use crate::verify::{indeterminate_args, random_vec, CheckRecord, ModeKind, Status, VerifyOptions};
use config::{scalar, scalars, ConstructionSpec, ETypeSpec, ModuleSource, PseudoSpec, RootTarget, RunConfig, SpinSpec};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}:{line}:{column}: {message}")]
    ConfigParse { origin: String, line: usize, column: usize, message: String },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("verification failed: {} of {} checks", .0.summary.fail, .0.records.len())]
    VerificationFailure(Box<Report>),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// Process exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailure(_) => 1,
            CliError::ConfigParse { .. } => 2,
            CliError::Construction(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

fn construction<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Construction(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Build,
    Construct,
    Verify,
    Rootgroups,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub warn: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub command: Command,
    pub construction: String,
    pub field: String,
    pub options: VerifyOptions,
    pub strict: bool,
    pub metadata: Value,
    pub records: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    pub summary: Summary,
    pub passed: bool,
}

impl Report {
    fn new(cfg: &RunConfig, command: Command, metadata: Value, records: Vec<CheckRecord>, data: Option<Value>) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        let summary = Summary { pass: count(Status::Pass), warn: count(Status::Warn), fail: count(Status::Fail) };
        let passed = summary.fail == 0 && (!cfg.strict || summary.warn == 0);
        Report {
            name: cfg.name.clone(),
            command,
            construction: cfg.construction.kind().into(),
            field: field_name(&cfg.field.ctx()),
            options: cfg.verify.clone(),
            strict: cfg.strict,
            metadata,
            records,
            data,
            summary,
            passed,
        }
    }

    /// The report with every timing field zeroed, for comparisons across runs.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.elapsed_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// One line per record.
    pub fn render_text(&self) -> String {
        let mut out = format!("{} [{}] over {}\n", self.name, self.construction, self.field);
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Warn => "WARN",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("  {status} {:<28} {:<9} n={:<6} {}\n", r.axiom, r.mode, r.trials, r.witness.as_deref().or(r.detail.as_deref()).unwrap_or("")));
        }
        out.push_str(&format!("  {} pass, {} warn, {} fail: {}\n", self.summary.pass, self.summary.warn, self.summary.fail, if self.passed { "PASSED" } else { "FAILED" }));
        out
    }
}

fn field_name(ctx: &FieldCtx) -> String {
    if ctx.is_rationals() {
        "Q".into()
    } else {
        format!("Q({})", ctx.variables().join(", "))
    }
}

/// Data for a root-group comparison, owned.
pub enum RootInput {
    QuadraticForm(PointedQuadSpace),
    Involutory(CompositionAlgebra),
    PseudoQuadratic(PseudoQuadraticSpace),
    Etype(Box<ETypeConstruction>),
}

impl RootInput {
    pub fn specialization(&self) -> Specialization<'_> {
        match self {
            RootInput::QuadraticForm(s) => Specialization::QuadraticForm(s),
            RootInput::Involutory(l) => Specialization::Involutory(l),
            RootInput::PseudoQuadratic(p) => Specialization::PseudoQuadratic(p),
            RootInput::Etype(c) => Specialization::Etype(c),
        }
    }
}

/// A constructed object.
pub enum Instance {
    Composition(CompositionAlgebra),
    Tensor(TensorAlgebra),
    Jordan(JordanCtx),
    Module(SpecialJModule),
    PseudoQuadratic(PseudoQuadraticSpace, QuadrangularAlgebra),
    Etype(Box<ETypeConstruction>),
    Rootgroups(RootInput, RootSystem),
}

fn spin(ctx: &FieldCtx, s: &SpinSpec) -> Result<PointedQuadSpace, CliError> {
    let form = QuadraticForm::new(ctx.clone(), scalars(ctx, &s.diag)?).map_err(construction)?;
    PointedQuadSpace::new(form, scalars(ctx, &s.base)?).map_err(construction)
}

fn composition(ctx: &FieldCtx, params: &[String]) -> Result<CompositionAlgebra, CliError> {
    CompositionAlgebra::new(ctx.clone(), scalars(ctx, params)?).map_err(construction)
}

fn pseudo(ctx: &FieldCtx, p: &PseudoSpec, bound: i64) -> Result<PseudoQuadraticSpace, CliError> {
    let gamma = p.gamma.iter().map(|g| scalars(ctx, g)).collect::<Result<Vec<_>, _>>()?;
    PseudoQuadraticSpace::new(composition(ctx, &p.l)?, gamma, bound).map_err(construction)
}

fn etype(ctx: &FieldCtx, e: &ETypeSpec, bound: i64) -> Result<ETypeConstruction, CliError> {
    let data = build_e6e7e8_data(ctx, e.etype, &scalar(ctx, &e.a)?, &scalars(ctx, &e.slots)?, bound).map_err(construction)?;
    let u = e.base_point.as_ref().map(|u| scalars(ctx, u)).transpose()?;
    ETypeConstruction::new(data, u, bound).map_err(construction)
}

pub fn build(cfg: &RunConfig) -> Result<Instance, CliError> {
    let ctx = cfg.field.ctx();
    let bound = cfg.verify.search_bound;
    Ok(match &cfg.construction {
        ConstructionSpec::Composition { params } => Instance::Composition(composition(&ctx, params)?),
        ConstructionSpec::Tensor { c1, c2 } => Instance::Tensor(TensorAlgebra::new(composition(&ctx, c1)?, composition(&ctx, c2)?).map_err(construction)?),
        ConstructionSpec::Spin(s) => Instance::Jordan(JordanCtx::reduced_spin(spin(&ctx, s)?)),
        ConstructionSpec::HermMat2 { l } => Instance::Jordan(JordanCtx::herm_mat2(composition(&ctx, l)?).map_err(construction)?),
        ConstructionSpec::Jmodule { of } => Instance::Module(match of {
            ModuleSource::PseudoQuadratic(p) => pseudo(&ctx, p, bound)?.module().map_err(construction)?,
            ModuleSource::Etype(e) => etype(&ctx, e, bound)?.module().clone(),
        }),
        ConstructionSpec::PseudoQuadratic(p) => {
            let space = pseudo(&ctx, p, bound)?;
            let qa = space.quadrangular(bound).map_err(construction)?;
            Instance::PseudoQuadratic(space, qa)
        }
        ConstructionSpec::Etype(e) => Instance::Etype(Box::new(etype(&ctx, e, bound)?)),
        ConstructionSpec::Rootgroups { target } => {
            let input = match target {
                RootTarget::QuadraticForm(s) => RootInput::QuadraticForm(spin(&ctx, s)?),
                RootTarget::Involutory { l } => RootInput::Involutory(composition(&ctx, l)?),
                RootTarget::PseudoQuadratic(p) => RootInput::PseudoQuadratic(pseudo(&ctx, p, bound)?),
                RootTarget::Etype(e) => RootInput::Etype(Box::new(etype(&ctx, e, bound)?)),
            };
            let rs = input.specialization().root_system().map_err(construction)?;
            Instance::Rootgroups(input, rs)
        }
    })
}

fn fmt_vec(ctx: &FieldCtx, v: &[crate::field::FieldElem]) -> Vec<String> {
    v.iter().map(|x| ctx.format(x)).collect()
}

fn fmt_matrix(ctx: &FieldCtx, m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| fmt_vec(ctx, m.row(i))).collect()
}

fn jordan_kind(j: &JordanCtx) -> &'static str {
    match j.kind() {
        JordanKind::ReducedSpin(_) => "reduced_spin",
        JordanKind::HermMat2(_) => "herm_mat2",
    }
}

impl Instance {
    pub fn ctx(&self) -> &FieldCtx {
        match self {
            Instance::Composition(c) => c.ctx(),
            Instance::Tensor(t) => t.ctx(),
            Instance::Jordan(j) => j.ctx(),
            Instance::Module(m) => m.ctx(),
            Instance::PseudoQuadratic(_, qa) => qa.ctx(),
            Instance::Etype(c) => c.quadrangular().ctx(),
            Instance::Rootgroups(_, rs) => rs.ctx(),
        }
    }

    /// Dimensions and anisotropy verdicts.
    pub fn metadata(&self) -> Value {
        match self {
            Instance::Composition(c) => json!({ "dim": c.dim(), "norm_form": c.norm_form().to_json(), "division": c.is_division(4) }),
            Instance::Tensor(t) => json!({ "dim": t.dim(), "skew_dim": t.skew_dim(), "albert_form": t.albert_form().to_json() }),
            Instance::Jordan(j) => json!({ "kind": jordan_kind(j), "dim": j.dim(), "half_dim": j.half_dim(), "half_form": j.half_form().to_json() }),
            Instance::Module(m) => json!({ "jordan": jordan_kind(m.jordan()), "jordan_dim": m.jordan().dim(), "dim": m.dim(), "skew_form": m.has_skew_form() }),
            Instance::PseudoQuadratic(p, qa) => json!({
                "rank": p.rank(), "l_dim": p.l().dim(), "v_dim": qa.v_dim(), "x0_dim": qa.x0_dim(),
                "provenance": qa.provenance(), "pi_verdict": p.verdict(), "q_verdict": qa.q_verdict(),
            }),
            Instance::Etype(c) => {
                let qa = c.quadrangular();
                let d = c.data();
                json!({
                    "etype": d.etype, "dims": [qa.v_dim(), qa.x0_dim()], "q": d.q.to_json(), "q_verdict": d.q_verdict,
                    "c1_params": fmt_vec(qa.ctx(), &d.c1_params), "c2_params": fmt_vec(qa.ctx(), &d.c2_params),
                })
            }
            Instance::Rootgroups(input, rs) => json!({
                "target": input.specialization().target(), "jordan": jordan_kind(rs.jordan()), "module_dim": rs.module().dim(),
                "w_dims": [rs.x0().dim(), rs.j0().dim()], "v_dim": rs.v_dim(),
            }),
        }
    }

    /// Structure constants.
    pub fn structure(&self) -> Value {
        let ctx = self.ctx();
        match self {
            Instance::Composition(c) => {
                let table: Vec<Vec<Vec<String>>> = (0..c.dim()).map(|p| (0..c.dim()).map(|q| fmt_vec(ctx, &c.mul(&c.basis(p), &c.basis(q)))).collect()).collect();
                json!({ "params": fmt_vec(ctx, c.params()), "labels": (0..c.dim()).map(|p| c.label(p)).collect::<Vec<_>>(), "products": table })
            }
            Instance::Tensor(t) => json!({ "c1": fmt_vec(ctx, t.c1().params()), "c2": fmt_vec(ctx, t.c2().params()), "albert_diag": fmt_vec(ctx, t.albert_form().diag()) }),
            Instance::Jordan(j) => {
                let n = j.dim();
                let table: Vec<Vec<Vec<String>>> = (0..n).map(|p| (0..n).map(|q| fmt_vec(ctx, &j.mul(&j.basis(p), &j.basis(q)))).collect()).collect();
                json!({ "products": table })
            }
            Instance::Module(m) => json!({
                "action": m.action_matrices().iter().map(|a| fmt_matrix(ctx, a)).collect::<Vec<_>>(),
                "skew": m.skew_matrices().map(|s| s.iter().map(|a| fmt_matrix(ctx, a)).collect::<Vec<_>>()),
            }),
            Instance::PseudoQuadratic(_, qa) => quad_structure(qa),
            Instance::Etype(c) => quad_structure(c.quadrangular()),
            Instance::Rootgroups(_, rs) => json!({ "u": fmt_vec(ctx, rs.u()), "x0_basis": rs.x0().basis().iter().map(|b| fmt_vec(ctx, b)).collect::<Vec<_>>() }),
        }
    }

    /// The verification suite of the construction.
    pub fn checks(&self, opts: &VerifyOptions) -> Result<Vec<CheckRecord>, CliError> {
        Ok(match self {
            Instance::Composition(c) => {
                let mut out = c.identity_suite(opts);
                out.push(c.check_inverse(opts));
                out
            }
            Instance::Tensor(t) => t.checks(opts),
            Instance::Jordan(j) => {
                let u = j.half_vec(j.half_space().base());
                let mut out = vec![j.check_commutative(opts), j.check_jordan_identity(opts)];
                out.extend(j.check_peirce_rules(&j.e1()).map_err(construction)?);
                out.extend(j.check_u_involution(&u, opts).map_err(construction)?);
                out.push(j.halfspace_invertibility_sample(opts));
                if matches!(j.kind(), JordanKind::HermMat2(_)) {
                    out.push(j.check_spin_identification());
                }
                out
            }
            Instance::Module(m) => {
                let j = m.jordan();
                let u = j.half_vec(j.half_space().base());
                let mut out = m.check_module(opts);
                out.push(m.check_skew_symmetric().map_err(construction)?);
                out.extend(m.check_skew_compat(opts).map_err(construction)?);
                out.extend(m.check_peirce_rules().map_err(construction)?);
                out.push(m.check_connecting(&u, opts).map_err(construction)?);
                out.push(m.check_half_action_nondegenerate(opts));
                out
            }
            Instance::PseudoQuadratic(p, qa) => {
                let mut out = QuadrangularAlgebra::check_hypotheses(&p.module().map_err(construction)?, opts).map_err(construction)?;
                out.extend(p.check_identification(qa));
                out.extend(qa.verify_axioms(opts));
                out
            }
            Instance::Etype(c) => c.checks(opts).map_err(construction)?,
            Instance::Rootgroups(input, rs) => {
                let mut out = rs.check_hypotheses(opts).map_err(construction)?;
                out.extend(rs.check_w_group(opts));
                out.extend(rs.check_word_group(opts));
                out.extend(input.specialization().specialize(rs, opts).map_err(construction)?.records);
                out
            }
        })
    }
}

fn quad_structure(qa: &QuadrangularAlgebra) -> Value {
    let ctx = qa.ctx();
    json!({
        "provenance": qa.provenance(),
        "q_diag": fmt_vec(ctx, qa.space().form().diag()),
        "base": fmt_vec(ctx, qa.base()),
        "action": qa.action_matrices().iter().map(|a| fmt_matrix(ctx, a)).collect::<Vec<_>>(),
        "h": qa.h_matrices().iter().map(|a| fmt_matrix(ctx, a)).collect::<Vec<_>>(),
    })
}

/// Per relation: output coordinates as expressions in the input coordinates (symbolic mode),
/// or on sampled inputs (random mode, at most 16 samples).
pub fn rootgroup_tables(rs: &RootSystem, opts: &VerifyOptions) -> Value {
    let ctx = rs.ctx();
    let mut tables = serde_json::Map::new();
    for rel in Relation::ALL {
        let arity = rs.relation_arity(rel);
        let entry = match opts.mode {
            ModeKind::Symbolic => {
                let (ext, args) = indeterminate_args(ctx, &arity);
                json!({
                    "inputs": [ext.variables()[ctx.num_vars()..ctx.num_vars() + arity[0]].to_vec(), ext.variables()[ctx.num_vars() + arity[0]..].to_vec()],
                    "outputs": fmt_vec(&ext, &rs.relation_coords(rel, &args[0], &args[1])),
                })
            }
            ModeKind::Random => {
                let samples: Vec<Value> = (0..opts.trials.min(16))
                    .map(|t| {
                        let mut rng = opts.trial_rng(t);
                        let p: Vector = random_vec(ctx, &mut rng, arity[0], opts);
                        let q: Vector = random_vec(ctx, &mut rng, arity[1], opts);
                        json!({ "inputs": [fmt_vec(ctx, &p), fmt_vec(ctx, &q)], "outputs": fmt_vec(ctx, &rs.relation_coords(rel, &p, &q)) })
                    })
                    .collect();
                json!({ "samples": samples })
            }
        };
        tables.insert(rel.name().into(), entry);
    }
    Value::Object(tables)
}

/// Runs one subcommand. A report is returned whether or not the checks pass.
pub fn run(cfg: &RunConfig, command: Command) -> Result<Report, CliError> {
    let inst = build(cfg)?;
    let meta = inst.metadata();
    Ok(match command {
        Command::Build => Report::new(cfg, command, meta, Vec::new(), None),
        Command::Construct => Report::new(cfg, command, meta, Vec::new(), Some(inst.structure())),
        Command::Verify => Report::new(cfg, command, meta, inst.checks(&cfg.verify)?, None),
        Command::Rootgroups => {
            let Instance::Rootgroups(input, rs) = &inst else {
                return Err(CliError::Construction(format!("rootgroups needs a rootgroups construction, got {}", cfg.construction.kind())));
            };
            let report = input.specialization().specialize(rs, &cfg.verify).map_err(construction)?;
            Report::new(cfg, command, meta, report.records, Some(rootgroup_tables(rs, &cfg.verify)))
        }
    })
}

/// `run`, with failing checks turned into an error.
pub fn run_checked(cfg: &RunConfig, command: Command) -> Result<Report, CliError> {
    let report = run(cfg, command)?;
    if report.passed {
        Ok(report)
    } else {
        Err(CliError::VerificationFailure(Box::new(report)))
    }
}

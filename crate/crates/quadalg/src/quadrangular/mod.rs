//! Quadrangular algebras in characteristic zero.
//!
//! An algebra is stored by tables: `A_k` is the matrix of `x -> x e_k` for the basis vector
//! `e_k` of `V`, and `H_k` gives coordinate `k` of `h(x, y) = x^T H_k y`.

pub mod etype;
pub mod jternary;
pub mod pseudo;

use crate::field::{FieldCtx, FieldElem};
use crate::jmodule::{JModuleError, SpecialJModule};
use crate::jordan::JordanError;
use crate::linalg::{dot, vec_add, vec_is_zero, vec_scale, vec_sub, zero_vec, Matrix, Subspace, Vector};
use crate::quadform::{anisotropy, default_order, AnisotropyVerdict, EType, PointedQuadSpace};
use crate::verify::{check_grid, check_identity, CheckRecord, Eval, ModeKind, VerifyOptions};
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

/// `X0` dimension up to which symbolic requests stay symbolic.
pub const SYMBOLIC_X0_DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("table shapes do not match dim V = {v_dim}, dim X0 = {x0_dim}")]
    ShapeMismatch { v_dim: usize, x0_dim: usize },
    #[error("module has no skew form")]
    NoSkewForm,
    #[error("the module's X0 is zero")]
    TrivialModule,
    #[error("h(x, y) has a component outside J_half: {0}")]
    NotHalfValued(String),
    #[error("hypothesis (v x, x) x = v(u((u x, x) x)) fails: {0}")]
    Hypothesis1Failed(String),
    #[error("(u x, x) = 0 for nonzero x: {0}")]
    Hypothesis2Witness(String),
    #[error("coordinate algebra must be associative of dimension 2 or 4, got dimension {0}")]
    NotQuadraticPair(usize),
    #[error("pseudo-quadratic form has a zero: {0}")]
    AnisotropyWitness(String),
    #[error("invalid pseudo-quadratic data: {0}")]
    InvalidPseudoQuadratic(String),
    #[error("invalid base point: {0}")]
    BadBasePoint(String),
    #[error(transparent)]
    Module(#[from] JModuleError),
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error(transparent)]
    EType(#[from] crate::quadform::ETypeError),
    #[error(transparent)]
    Tensor(#[from] crate::tensoralg::TensorError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    FromJModule,
    PseudoQuadratic,
    Etype(EType),
}

#[derive(Clone, Debug)]
pub struct QuadrangularAlgebra {
    space: PointedQuadSpace,
    x0_dim: usize,
    action: Vec<Matrix>,
    h: Vec<Matrix>,
    provenance: Provenance,
    q_verdict: AnisotropyVerdict,
    /// `X0` inside the module, when built from a module.
    module_x0: Option<Subspace>,
}

impl QuadrangularAlgebra {
    pub fn new(space: PointedQuadSpace, x0_dim: usize, action: Vec<Matrix>, h: Vec<Matrix>, provenance: Provenance, search_bound: i64) -> Result<Self, QuadError> {
        let v_dim = space.dim();
        let sq = |ms: &[Matrix]| ms.len() == v_dim && ms.iter().all(|m| m.rows() == x0_dim && m.cols() == x0_dim);
        if x0_dim == 0 {
            return Err(QuadError::TrivialModule);
        }
        if !sq(&action) || !sq(&h) {
            return Err(QuadError::ShapeMismatch { v_dim, x0_dim });
        }
        let form = space.form();
        let q_verdict = anisotropy(form, &default_order(form.ctx()), search_bound);
        Ok(QuadrangularAlgebra { space, x0_dim, action, h, provenance, q_verdict, module_x0: None })
    }

    /// `x v = v(u x)` and `h(x, y) = (u x, y)` on `X0`, with `u` the base point of the half space.
    pub fn from_jmodule(m: &SpecialJModule, provenance: Provenance, search_bound: i64) -> Result<Self, QuadError> {
        let skew = m.skew_matrices().ok_or(QuadError::NoSkewForm)?;
        let j = m.jordan();
        let mp = m.module_peirce()?;
        let b = mp.x0.basis_matrix();
        let p = mp.x0.coord_map();
        let u = j.half_vec(j.half_space().base());
        let au_b = m.act_matrix(&u).mul(b);
        let hd = j.half_dim();
        let unit = |k: usize| {
            let mut e = zero_vec(hd);
            e[k] = FieldElem::one();
            j.half_vec(&e)
        };
        let action = (0..hd).map(|k| p.mul(&m.act_matrix(&unit(k)).mul(&au_b))).collect();
        let gram = |s: &Matrix| au_b.transpose().mul(&s.mul(b));
        let last = j.dim() - 1;
        for (k, name) in [(0, "e0"), (last, "e1")] {
            if !gram(&skew[k]).is_zero() {
                return Err(QuadError::NotHalfValued(format!("{name} coordinate of (u x, y)")));
            }
        }
        let h = (1..=hd).map(|k| gram(&skew[k])).collect();
        let mut qa = Self::new(j.half_space().clone(), mp.x0.dim(), action, h, provenance, search_bound)?;
        qa.module_x0 = Some(mp.x0.clone());
        Ok(qa)
    }

    /// Checks both hypotheses of the construction from a module: the cubic identity
    /// `(v x, x) x = v(u((u x, x) x))` on `X0 x V` and `(u x, x) != 0` for sampled `x != 0`.
    pub fn check_hypotheses(m: &SpecialJModule, opts: &VerifyOptions) -> Result<Vec<CheckRecord>, QuadError> {
        if !m.has_skew_form() {
            return Err(QuadError::NoSkewForm);
        }
        let j = m.jordan();
        let mp = m.module_peirce()?;
        let opts = symbolic_cap(opts, mp.x0.dim());
        let u = j.half_vec(j.half_space().base());
        let ctx = m.ctx();
        let h1 = check_identity("hypothesis_1", "(v x, x) x = v(u((u x, x) x))", ctx, &opts, &[mp.x0.dim(), j.half_dim()], |a| {
            let x = mp.x0.embed(&a[0]);
            let v = j.half_vec(&a[1]);
            let lhs = m.act(&m.pair(&m.act(&v, &x), &x), &x);
            let inner = m.act(&m.pair(&m.act(&u, &x), &x), &x);
            Eval::Residual(vec_sub(&lhs, &m.act(&v, &m.act(&u, &inner))))
        });
        let h2 = check_identity("hypothesis_2", "(u x, x) != 0 for x != 0", ctx, &opts.with_mode(ModeKind::Random), &[mp.x0.dim()], |a| {
            if vec_is_zero(&a[0]) {
                return Eval::Skip;
            }
            let x = mp.x0.embed(&a[0]);
            Eval::Residual(vec![if vec_is_zero(&m.pair(&m.act(&u, &x), &x)) { FieldElem::one() } else { FieldElem::zero() }])
        });
        Ok(vec![h1, h2])
    }

    /// [`Self::from_jmodule`] after both hypotheses pass.
    pub fn from_jmodule_checked(m: &SpecialJModule, provenance: Provenance, opts: &VerifyOptions) -> Result<(Self, Vec<CheckRecord>), QuadError> {
        let recs = Self::check_hypotheses(m, opts)?;
        if let Some(w) = recs[0].witness.clone().filter(|_| !recs[0].passed()) {
            return Err(QuadError::Hypothesis1Failed(w));
        }
        if let Some(w) = recs[1].witness.clone().filter(|_| !recs[1].passed()) {
            return Err(QuadError::Hypothesis2Witness(w));
        }
        Ok((Self::from_jmodule(m, provenance, opts.search_bound)?, recs))
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.space.form().ctx()
    }
    pub fn space(&self) -> &PointedQuadSpace {
        &self.space
    }
    pub fn v_dim(&self) -> usize {
        self.space.dim()
    }
    pub fn x0_dim(&self) -> usize {
        self.x0_dim
    }
    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
    pub fn q_verdict(&self) -> &AnisotropyVerdict {
        &self.q_verdict
    }
    pub fn action_matrices(&self) -> &[Matrix] {
        &self.action
    }
    pub fn h_matrices(&self) -> &[Matrix] {
        &self.h
    }
    pub fn module_x0(&self) -> Option<&Subspace> {
        self.module_x0.as_ref()
    }
    pub fn base(&self) -> &[FieldElem] {
        self.space.base()
    }
    pub fn q(&self, v: &[FieldElem]) -> FieldElem {
        self.space.form().eval(v).expect("length")
    }
    pub fn f(&self, v: &[FieldElem], w: &[FieldElem]) -> FieldElem {
        self.space.form().polarize(v, w).expect("length")
    }

    /// Matrix of `x -> x v`.
    pub fn act_matrix(&self, v: &[FieldElem]) -> Matrix {
        let mut out = Matrix::zeros(self.x0_dim, self.x0_dim);
        for (c, a) in v.iter().zip(&self.action) {
            if !c.is_zero() {
                out = out.add(&a.scale(c));
            }
        }
        out
    }
    /// `x v`.
    pub fn act(&self, x: &[FieldElem], v: &[FieldElem]) -> Vector {
        let mut out = zero_vec(self.x0_dim);
        for (c, a) in v.iter().zip(&self.action) {
            if !c.is_zero() {
                crate::linalg::vec_axpy(&mut out, c, &a.mul_vec(x));
            }
        }
        out
    }
    pub fn h(&self, x: &[FieldElem], y: &[FieldElem]) -> Vector {
        self.h.iter().map(|m| dot(x, &m.mul_vec(y))).collect()
    }
    /// `h(x, x v) / 2`.
    pub fn theta(&self, x: &[FieldElem], v: &[FieldElem]) -> Vector {
        vec_scale(&self.h(x, &self.act(x, v)), &FieldElem::half())
    }
    pub fn pi(&self, x: &[FieldElem]) -> Vector {
        self.theta(x, self.base())
    }
    /// `f(h(x, y), 1) / 2`.
    pub fn g(&self, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
        &self.f(&self.h(x, y), self.base()) * &FieldElem::half()
    }

    /// Row vector `w` with `f(h, 1) = w . h`.
    fn base_functional(&self) -> Vector {
        let two = FieldElem::from_int(2);
        self.space.form().diag().iter().zip(self.base()).map(|(d, b)| &(d * b) * &two).collect()
    }

    /// Records for A1-A3, B1-B3, C, D1, D2 and anisotropy of `q`.
    pub fn verify_axioms(&self, opts: &VerifyOptions) -> Vec<CheckRecord> {
        let opts = symbolic_cap(opts, self.x0_dim);
        let (n, m) = (self.x0_dim, self.v_dim());
        let ctx = self.ctx();
        let mut out = Vec::new();
        let started = Instant::now();
        out.push(CheckRecord::exact("A1", "x v is bilinear", 1, Ok(()), started).with_detail("stored as one matrix per basis vector of V"));
        out.push(CheckRecord::exact("B1", "h is bilinear", 1, Ok(()), started).with_detail("stored as one matrix per coordinate of V"));

        let started = Instant::now();
        let a2 = if self.act_matrix(self.base()) == Matrix::identity(n) { Ok(()) } else { Err("x 1 != x".to_string()) };
        out.push(CheckRecord::exact("A2", "x 1 = x as a matrix identity", 1, a2, started));
        out.push(check_identity("A2", "x 1 = x", ctx, &opts, &[n], |a| Eval::Residual(vec_sub(&self.act(&a[0], self.base()), &a[0]))));

        // (x v) sigma(v) = q(v) x, polarized in v.
        let sig: Vec<Matrix> = (0..m).map(|k| self.act_matrix(&self.space.sigma(&crate::linalg::unit_vec(m, k)).unwrap())).collect();
        let gram = self.space.form().gram();
        out.push(check_grid("A3", "(x v) v^-1 = x polarized on basis pairs", &[m, m], |ix| {
            let (k, l) = (ix[0], ix[1]);
            let lhs = sig[k].mul(&self.action[l]).add(&sig[l].mul(&self.action[k]));
            (lhs != Matrix::identity(n).scale(gram.get(k, l))).then(|| "matrix identity fails".to_string())
        }));
        out.push(check_identity("A3", "(x v) v^-1 = x", ctx, &opts, &[n, m], |a| match self.space.pq_inverse(&a[1]) {
            Ok(vi) => Eval::Residual(vec_sub(&self.act(&self.act(&a[0], &a[1]), &vi), &a[0])),
            Err(_) => Eval::Skip,
        }));

        // B2 per (k, l): H_k A_l = (H_k A_l)^T + delta_kl G with G = sum_m w_m H_m.
        let w = self.base_functional();
        let g = self.h.iter().zip(&w).fold(Matrix::zeros(n, n), |acc, (hm, c)| acc.add(&hm.scale(c)));
        out.push(check_grid("B2", "h(x, y v) = h(y, x v) + f(h(x, y), 1) v on basis", &[m, m], |ix| {
            let (k, l) = (ix[0], ix[1]);
            let ha = self.h[k].mul(&self.action[l]);
            let mut rhs = ha.transpose();
            if k == l {
                rhs = rhs.add(&g);
            }
            (ha != rhs).then(|| "matrix identity fails".to_string())
        }));
        out.push(check_identity("B2", "h(x, y v) = h(y, x v) + f(h(x, y), 1) v", ctx, &opts, &[n, n, m], |a| {
            let (x, y, v) = (&a[0], &a[1], &a[2]);
            let lhs = self.h(x, &self.act(y, v));
            let rhs = vec_add(&self.h(y, &self.act(x, v)), &vec_scale(v, &self.f(&self.h(x, y), self.base())));
            Eval::Residual(vec_sub(&lhs, &rhs))
        }));
        let two = FieldElem::from_int(2);
        let diag = self.space.form().diag();
        out.push(check_grid("B3", "f(h(x v, y), 1) = f(h(x, y), v) on basis", &[m], |ix| {
            let l = ix[0];
            let lhs = self.action[l].transpose().mul(&g);
            let rhs = self.h[l].scale(&(&diag[l] * &two));
            (lhs != rhs).then(|| "matrix identity fails".to_string())
        }));
        out.push(check_identity("B3", "f(h(x v, y), 1) = f(h(x, y), v)", ctx, &opts, &[n, n, m], |a| {
            let (x, y, v) = (&a[0], &a[1], &a[2]);
            let lhs = self.f(&self.h(&self.act(x, v), y), self.base());
            Eval::Residual(vec![&lhs - &self.f(&self.h(x, y), v)])
        }));

        let started = Instant::now();
        let c = (0..n).try_for_each(|i| {
            let x = crate::linalg::unit_vec(n, i);
            let p = self.pi(&x);
            if p != vec_scale(&self.h(&x, &x), &FieldElem::half()) {
                return Err(format!("pi(x) != h(x, x)/2 for basis vector {i}"));
            }
            Ok(())
        });
        out.push(CheckRecord::exact("C", "theta(x, v) = h(x, x v)/2; pi(x) = theta(x, 1) = h(x, x)/2", n as u64, c, started));
        let started = Instant::now();
        let trace_free = if g.add(&g.transpose()).is_zero() { Ok(()) } else { Err("f(h(x, x), 1) != 0".into()) };
        out.push(CheckRecord::exact("h_trace_free", "f(h(x, x), 1) = 0", 1, trace_free, started));

        out.push(check_identity("D1", "x theta(x, v) = (x pi(x)) v", ctx, &opts, &[n, m], |a| {
            let (x, v) = (&a[0], &a[1]);
            Eval::Residual(vec_sub(&self.act(x, &self.theta(x, v)), &self.act(&self.act(x, &self.pi(x)), v)))
        }));
        let basis_opts = opts.with_trials((opts.trials / m as u64).max(1));
        for k in 0..m {
            let v = crate::linalg::unit_vec(m, k);
            let mut r = check_identity("D1", "x theta(x, v) = (x pi(x)) v for a basis vector v", ctx, &basis_opts, &[n], |a| {
                let x = &a[0];
                Eval::Residual(vec_sub(&self.act(x, &self.theta(x, &v)), &self.act(&self.act(x, &self.pi(x)), &v)))
            });
            r.detail = Some(format!("v = basis vector {k}"));
            out.push(r);
        }
        out.push(self.check_d2(&opts));
        out.push(verdict_record("q_anisotropic", &self.q_verdict));
        out
    }

    /// Randomized search for `pi(x) = 0` with `x != 0`.
    pub fn check_d2(&self, opts: &VerifyOptions) -> CheckRecord {
        check_identity("D2", "pi(x) != 0 for x != 0", self.ctx(), &opts.with_mode(ModeKind::Random), &[self.x0_dim], |a| {
            if vec_is_zero(&a[0]) {
                return Eval::Skip;
            }
            Eval::Residual(vec![if vec_is_zero(&self.pi(&a[0])) { FieldElem::one() } else { FieldElem::zero() }])
        })
    }
}

pub(crate) fn symbolic_cap(opts: &VerifyOptions, dim: usize) -> VerifyOptions {
    if opts.mode == ModeKind::Symbolic && dim > SYMBOLIC_X0_DIM {
        opts.with_mode(ModeKind::Random)
    } else {
        opts.clone()
    }
}

pub(crate) fn verdict_record(axiom: &str, v: &AnisotropyVerdict) -> CheckRecord {
    let detail = serde_json::to_string(v).unwrap_or_default();
    match v {
        AnisotropyVerdict::Anisotropic { .. } => CheckRecord::exact(axiom, "q is anisotropic", 1, Ok(()), Instant::now()).with_detail(detail),
        AnisotropyVerdict::Isotropic { witness } => CheckRecord::exact(axiom, "q is anisotropic", 1, Err(format!("zero at [{}]", witness.join(", "))), Instant::now()),
        AnisotropyVerdict::Unknown { .. } => CheckRecord::warn(axiom, "q is anisotropic", detail),
    }
}

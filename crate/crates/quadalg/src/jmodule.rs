//! Special modules over a Jordan algebra with supplementary idempotents, and skew forms
//! with values in the algebra.
//!
//! A module is stored as one action matrix per Jordan basis element. A skew form is stored
//! as one matrix per Jordan coordinate: coordinate `k` of `(x, y)` is `x^T S_k y`.

use crate::field::{FieldCtx, FieldElem, Rational};
use crate::jordan::{JordanCtx, JordanError, PeirceSpaces};
use crate::linalg::{dot, unit_vec, vec_axpy, vec_is_zero, vec_scale, vec_sub, zero_vec, Matrix, Subspace, Vector};
use crate::verify::{check_grid, check_identity, CheckRecord, Eval, ModeKind, VerifyOptions};
use std::sync::OnceLock;
use std::time::Instant;
use thiserror::Error;

/// Module dimension up to which `check_module` runs symbolically when asked to.
pub const SYMBOLIC_MODULE_DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JModuleError {
    #[error("expected {expected} matrices of size {size}x{size}")]
    ShapeMismatch { expected: usize, size: usize },
    #[error("the unit does not act as the identity")]
    NotUnital,
    #[error("module has no skew form")]
    NoSkewForm,
    #[error("eigenspaces of e0 span dimension {got} of {expected}")]
    DecompositionFailed { expected: usize, got: usize },
    #[error("element does not square to the unit")]
    NotConnecting,
    #[error("vector is not in X0")]
    NotInX0,
    #[error(transparent)]
    Jordan(#[from] JordanError),
}

#[derive(Clone, Debug)]
pub struct ModulePeirce {
    /// `{x : e0 x = x}`
    pub x0: Subspace,
    /// `{x : e0 x = 0}`
    pub x1: Subspace,
}

impl ModulePeirce {
    pub fn space(&self, i: usize) -> &Subspace {
        if i == 0 {
            &self.x0
        } else {
            &self.x1
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpecialJModule {
    jordan: JordanCtx,
    dim: usize,
    action: Vec<Matrix>,
    skew: Option<Vec<Matrix>>,
    peirce: OnceLock<Result<ModulePeirce, JModuleError>>,
}

impl SpecialJModule {
    pub fn from_matrices(jordan: JordanCtx, dim: usize, action: Vec<Matrix>, skew: Option<Vec<Matrix>>) -> Result<Self, JModuleError> {
        let nj = jordan.dim();
        let square = |ms: &[Matrix]| ms.len() == nj && ms.iter().all(|m| m.rows() == dim && m.cols() == dim);
        if !square(&action) || skew.as_deref().is_some_and(|s| !square(s)) {
            return Err(JModuleError::ShapeMismatch { expected: nj, size: dim });
        }
        let m = SpecialJModule { jordan, dim, action, skew, peirce: OnceLock::new() };
        if m.act_matrix(&m.jordan.unit()) != Matrix::identity(dim) {
            return Err(JModuleError::NotUnital);
        }
        Ok(m)
    }

    /// The zero module, with the zero skew form.
    pub fn zero(jordan: JordanCtx) -> Self {
        let nj = jordan.dim();
        Self::from_matrices(jordan, 0, vec![Matrix::zeros(0, 0); nj], Some(vec![Matrix::zeros(0, 0); nj])).expect("empty matrices are unital")
    }

    /// Builds the matrices from `act(i, x)` (basis element `i` on `x`) and `pair(x, y)`.
    pub fn from_maps<A, P>(jordan: JordanCtx, dim: usize, act: A, pair: Option<P>) -> Result<Self, JModuleError>
    where
        A: Fn(usize, &[FieldElem]) -> Vector,
        P: Fn(&[FieldElem], &[FieldElem]) -> Vector,
    {
        let nj = jordan.dim();
        let basis: Vec<Vector> = (0..dim).map(|i| unit_vec(dim, i)).collect();
        let action = (0..nj).map(|i| Matrix::from_cols(&basis.iter().map(|b| act(i, b)).collect::<Vec<_>>(), dim)).collect();
        let skew = pair.map(|p| {
            let mut ms = vec![Matrix::zeros(dim, dim); nj];
            for a in 0..dim {
                for b in 0..dim {
                    for (k, c) in p(&basis[a], &basis[b]).into_iter().enumerate() {
                        ms[k].set(a, b, c);
                    }
                }
            }
            ms
        });
        Self::from_matrices(jordan, dim, action, skew)
    }

    pub fn jordan(&self) -> &JordanCtx {
        &self.jordan
    }
    pub fn ctx(&self) -> &FieldCtx {
        self.jordan.ctx()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action_matrices(&self) -> &[Matrix] {
        &self.action
    }
    pub fn skew_matrices(&self) -> Option<&[Matrix]> {
        self.skew.as_deref()
    }
    pub fn has_skew_form(&self) -> bool {
        self.skew.is_some()
    }

    /// Matrix of `x -> j x`.
    pub fn act_matrix(&self, j: &[FieldElem]) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (c, a) in j.iter().zip(&self.action) {
            if !c.is_zero() {
                out = out.add(&a.scale(c));
            }
        }
        out
    }

    pub fn act(&self, j: &[FieldElem], x: &[FieldElem]) -> Vector {
        let mut out = zero_vec(self.dim);
        for (c, a) in j.iter().zip(&self.action) {
            if !c.is_zero() {
                crate::linalg::vec_axpy(&mut out, c, &a.mul_vec(x));
            }
        }
        out
    }

    /// The skew form; zero when the module carries none.
    pub fn pair(&self, x: &[FieldElem], y: &[FieldElem]) -> Vector {
        match &self.skew {
            None => self.jordan.zero(),
            Some(ms) => ms.iter().map(|s| dot(x, &s.mul_vec(y))).collect(),
        }
    }

    fn opts_for_dim(&self, opts: &VerifyOptions) -> VerifyOptions {
        if opts.mode == ModeKind::Symbolic && self.dim > SYMBOLIC_MODULE_DIM {
            opts.with_mode(ModeKind::Random)
        } else {
            opts.clone()
        }
    }

    /// Unit action, the product rule `(jj') x = (j(j'x) + j'(jx))/2` as a matrix identity on
    /// basis pairs, the U-rule `(U_j j') x = j(j'(jx))`, and its instance `j^2 x = j(jx)`.
    pub fn check_module(&self, opts: &VerifyOptions) -> Vec<CheckRecord> {
        let opts = self.opts_for_dim(opts);
        let started = Instant::now();
        let unit = CheckRecord::exact(
            "module_unit",
            "1 x = x",
            1,
            if self.act_matrix(&self.jordan.unit()) == Matrix::identity(self.dim) { Ok(()) } else { Err("unit acts nontrivially".into()) },
            started,
        );
        let nj = self.jordan.dim();
        let half = FieldElem::half();
        let product = check_grid("module_product_rule", "(jj') x = (j(j'x) + j'(jx))/2", &[nj, nj], |ix| {
            let (a, b) = (&self.action[ix[0]], &self.action[ix[1]]);
            let prod = self.jordan.mul(&self.jordan.basis(ix[0]), &self.jordan.basis(ix[1]));
            let rhs = a.mul(b).add(&b.mul(a)).scale(&half);
            (self.act_matrix(&prod) != rhs).then(|| "action matrices disagree".to_string())
        });
        let (n, d) = (nj, self.dim);
        let u_rule = check_identity("module_u_rule", "(U_j j') x = j(j'(jx))", self.ctx(), &opts, &[n, n, d], |a| {
            let (j, jp, x) = (&a[0], &a[1], &a[2]);
            let lhs = self.act(&self.jordan.u_op(j, jp), x);
            let rhs = self.act(j, &self.act(jp, &self.act(j, x)));
            Eval::Residual(vec_sub(&lhs, &rhs))
        });
        let square = check_identity("module_square", "j^2 x = j(jx)", self.ctx(), &opts, &[n, d], |a| {
            let lhs = self.act(&self.jordan.square(&a[0]), &a[1]);
            Eval::Residual(vec_sub(&lhs, &self.act(&a[0], &self.act(&a[0], &a[1]))))
        });
        vec![unit, product, u_rule, square]
    }

    /// Both sides of the skew-form compatibility: `U_j (x, y) = (jx, jy)` and
    /// `j (x, y) = ((jx, y) + (x, jy))/2`. The second is checked as a matrix identity per
    /// Jordan basis element and coordinate, and also by `opts`.
    pub fn check_skew_compat(&self, opts: &VerifyOptions) -> Result<Vec<CheckRecord>, JModuleError> {
        let skew = self.skew.as_ref().ok_or(JModuleError::NoSkewForm)?;
        let opts = self.opts_for_dim(opts);
        let (n, d) = (self.jordan.dim(), self.dim);
        let half = FieldElem::half();
        let lmul: Vec<Matrix> = (0..n).map(|i| self.jordan.lmul_matrix(&self.jordan.basis(i))).collect();
        let right_exact = check_grid("skew_compat_right", "j (x, y) = ((jx, y) + (x, jy))/2 on basis", &[n, n], |ix| {
            let (i, k) = (ix[0], ix[1]);
            let mut lhs = Matrix::zeros(d, d);
            for (m, s) in skew.iter().enumerate() {
                let c = lmul[i].get(k, m);
                if !c.is_zero() {
                    lhs = lhs.add(&s.scale(c));
                }
            }
            let a = &self.action[i];
            let rhs = a.transpose().mul(&skew[k]).add(&skew[k].mul(a)).scale(&half);
            (lhs != rhs).then(|| format!("coordinate {k}"))
        });
        let right = check_identity("skew_compat_right", "j (x, y) = ((jx, y) + (x, jy))/2", self.ctx(), &opts, &[n, d, d], |a| {
            let (j, x, y) = (&a[0], &a[1], &a[2]);
            let lhs = self.jordan.mul(j, &self.pair(x, y));
            let rhs = vec_scale(&crate::linalg::vec_add(&self.pair(&self.act(j, x), y), &self.pair(x, &self.act(j, y))), &half);
            Eval::Residual(vec_sub(&lhs, &rhs))
        });
        let left = check_identity("skew_compat_left", "U_j (x, y) = (jx, jy)", self.ctx(), &opts, &[n, d, d], |a| {
            let (j, x, y) = (&a[0], &a[1], &a[2]);
            let lhs = self.jordan.u_op(j, &self.pair(x, y));
            Eval::Residual(vec_sub(&lhs, &self.pair(&self.act(j, x), &self.act(j, y))))
        });
        let mut out = vec![right_exact, right, left];
        if skew.iter().all(Matrix::is_zero) {
            for r in &mut out {
                r.detail = Some("degenerate: the skew form is zero".into());
            }
        }
        Ok(out)
    }

    /// Skew in the sense `(x, y) = -(y, x)`, on basis pairs.
    pub fn check_skew_symmetric(&self) -> Result<CheckRecord, JModuleError> {
        let skew = self.skew.as_ref().ok_or(JModuleError::NoSkewForm)?;
        let started = Instant::now();
        let bad = skew.iter().position(|s| !s.add(&s.transpose()).is_zero());
        Ok(CheckRecord::exact("skew_symmetric", "(x, y) = -(y, x)", skew.len() as u64, bad.map_or(Ok(()), |k| Err(format!("coordinate {k}"))), started))
    }

    pub fn module_peirce(&self) -> Result<ModulePeirce, JModuleError> {
        self.peirce.get_or_init(|| self.compute_module_peirce()).clone()
    }

    fn compute_module_peirce(&self) -> Result<ModulePeirce, JModuleError> {
        let a0 = self.act_matrix(&self.jordan.e0());
        let x0 = Subspace::span(self.dim, &a0.sub(&Matrix::identity(self.dim)).nullspace());
        let x1 = Subspace::span(self.dim, &a0.nullspace());
        let got = x0.dim() + x1.dim();
        if got != self.dim {
            return Err(JModuleError::DecompositionFailed { expected: self.dim, got });
        }
        Ok(ModulePeirce { x0, x1 })
    }

    /// Action and skew-form containments between the Peirce spaces of `J` (for `e1`) and of
    /// the module, on basis pairs.
    pub fn check_peirce_rules(&self) -> Result<Vec<CheckRecord>, JModuleError> {
        let mp = self.module_peirce()?;
        let jp: PeirceSpaces = self.jordan.peirce_decompose(&self.jordan.e1())?;
        // Jordan Peirce index in halves: 0 -> J0 (contains e0), 1 -> J_half, 2 -> J1.
        let jflat: Vec<(usize, &Vector)> = (0..3).flat_map(|i| jp.space(i).basis().iter().map(move |b| (i, b))).collect();
        let xflat: Vec<(usize, &Vector)> = (0..2).flat_map(|i| mp.space(i).basis().iter().map(move |b| (i, b))).collect();
        let action = check_grid("module_peirce_action", "J_i X_i in X_i, J_i X_j = 0, J_half X_i in X_j", &[jflat.len(), xflat.len()], |ix| {
            let (ji, j) = jflat[ix[0]];
            let (xi, x) = xflat[ix[1]];
            let y = self.act(j, x);
            let ok = match ji {
                1 => mp.space(1 - xi).contains(&y),
                _ if ji / 2 == xi => mp.space(xi).contains(&y),
                _ => vec_is_zero(&y),
            };
            (!ok).then(|| format!("J Peirce {ji}/2 on X{xi}"))
        });
        let mut out = vec![action];
        if self.skew.is_some() {
            out.push(check_grid("module_peirce_skew", "(X_i, X_i) in J_i, (X_i, X_j) in J_half", &[xflat.len(), xflat.len()], |ix| {
                let (i, x) = xflat[ix[0]];
                let (j, y) = xflat[ix[1]];
                let p = self.pair(x, y);
                let target = if i == j { 2 * i } else { 1 };
                (!jp.space(target).contains(&p)).then(|| format!("(X{i}, X{j})"))
            }));
        }
        Ok(out)
    }

    fn require_connecting(&self, u: &[FieldElem]) -> Result<(), JModuleError> {
        if u.len() != self.jordan.dim() || self.jordan.square(u) != self.jordan.unit() {
            return Err(JModuleError::NotConnecting);
        }
        Ok(())
    }

    /// `x -> u x` for `u` with `u^2 = 1`.
    pub fn connecting(&self, u: &[FieldElem], x: &[FieldElem]) -> Result<Vector, JModuleError> {
        self.require_connecting(u)?;
        Ok(self.act(u, x))
    }

    pub fn check_connecting(&self, u: &[FieldElem], opts: &VerifyOptions) -> Result<CheckRecord, JModuleError> {
        self.require_connecting(u)?;
        Ok(check_identity("connecting_involution", "u(ux) = x", self.ctx(), opts, &[self.dim], |a| {
            Eval::Residual(vec_sub(&self.act(u, &self.act(u, &a[0])), &a[0]))
        }))
    }

    /// Samples `v x` for nonzero `v` in `J_half` and nonzero `x`; fails on a zero product.
    pub fn check_half_action_nondegenerate(&self, opts: &VerifyOptions) -> CheckRecord {
        let h = self.jordan.half_dim();
        check_identity("half_action_nondegenerate", "v x = 0 only for v = 0 or x = 0", self.ctx(), opts, &[h, self.dim], |a| {
            if vec_is_zero(&a[0]) || vec_is_zero(&a[1]) {
                return Eval::Skip;
            }
            let y = self.act(&self.jordan.half_vec(&a[0]), &a[1]);
            Eval::Residual(vec![if vec_is_zero(&y) { FieldElem::one() } else { FieldElem::zero() }])
        })
    }

    /// Dimension of the smallest subspace containing `x` and closed under `y -> w(uy)` for
    /// `w` in a basis of `J_half`.
    pub fn orbit_span(&self, u: &[FieldElem], x: &[FieldElem]) -> Result<usize, JModuleError> {
        self.require_connecting(u)?;
        let mp = self.module_peirce()?;
        if !mp.x0.contains(x) {
            return Err(JModuleError::NotInX0);
        }
        if vec_is_zero(x) {
            return Ok(0);
        }
        let n0 = mp.x0.dim();
        let au = self.act_matrix(u);
        let (cmap, emb) = (mp.x0.coord_map(), mp.x0.basis_matrix());
        let steps: Vec<Matrix> = (0..self.jordan.half_dim())
            .map(|i| cmap.mul(&self.act_matrix(&self.jordan.half_vec(&unit_vec(self.jordan.half_dim(), i))).mul(&au).mul(emb)))
            .collect();
        let start = mp.x0.coords(x);
        // Rank only drops under specialization, so a full orbit at a rational point is full.
        let nvars = self.ctx().num_vars();
        for attempt in 0..3i64 {
            if nvars == 0 {
                break;
            }
            let point: Vec<Rational> = (0..nvars as i64).map(|i| Rational::from_int(3 + 4 * i + 7 * attempt * (i + 1))).collect();
            let at = |v: &[FieldElem]| -> Option<Vector> { v.iter().map(|c| c.evaluate(&point).ok().map(FieldElem::Q)).collect() };
            let special: Option<Vec<Matrix>> = steps.iter().map(|m| (0..m.rows()).map(|i| at(m.row(i))).collect::<Option<Vec<_>>>().map(|rows| Matrix::from_rows(&rows))).collect();
            if let (Some(special), Some(x)) = (special, at(&start)) {
                if !vec_is_zero(&x) && orbit_rank(&special, x, n0) == n0 {
                    return Ok(n0);
                }
            }
        }
        Ok(orbit_rank(&steps, start, n0))
    }
}

fn orbit_rank(steps: &[Matrix], start: Vector, cap: usize) -> usize {
    let mut span = Echelon::default();
    span.insert(start.clone());
    let mut frontier = vec![start];
    while !frontier.is_empty() && span.rows.len() < cap {
        let mut fresh = Vec::new();
        for y in &frontier {
            for s in steps {
                let z = s.mul_vec(y);
                if span.insert(z.clone()) {
                    fresh.push(z);
                }
            }
        }
        frontier = fresh;
    }
    span.rows.len()
}

/// Fully reduced echelon rows with their pivot columns.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    /// Adds `v` when it is outside the span; returns whether it was added.
    fn insert(&mut self, mut v: Vector) -> bool {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let c = -&v[*p];
                vec_axpy(&mut v, &c, r);
            }
        }
        let Some(p) = v.iter().position(|c| !c.is_zero()) else { return false };
        let v = vec_scale(&v, &v[p].inv().expect("nonzero"));
        for (_, r) in &mut self.rows {
            if !r[p].is_zero() {
                let c = -&r[p];
                vec_axpy(r, &c, &v);
            }
        }
        self.rows.push((p, v));
        true
    }
}

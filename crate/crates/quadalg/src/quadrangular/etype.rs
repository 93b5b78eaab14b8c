//! Quadrangular algebras of type E6, E7, E8 from the tensor product of two composition
//! algebras.
//!
//! With `A = C1 ⊗ C2` and skew space `S`, put `e0 = i1⊗1 + 1⊗i2` and
//! `e1 = q_A(u)/(4a) (i1⊗1 - 1⊗i2)` for a base point `u` in `V = <e0, e1>^⊥`. `S` is the
//! reduced spin factor of `q_A|V / q_A(u)`, acting on `A` by `s x = s(r x)` with
//! `r = (e0 + e1)^-1`, and `(x, y) = x conj(y) - y conj(x)`.

use super::jternary::JTernary;
use super::{symbolic_cap, Provenance, QuadError, QuadrangularAlgebra};
use crate::composition::CompositionAlgebra;
use crate::field::FieldElem;
use crate::jmodule::SpecialJModule;
use crate::jordan::JordanCtx;
use crate::linalg::{unit_vec, vec_add, vec_is_zero, vec_scale, vec_sub, Matrix, Vector};
use crate::quadform::{orthogonalize, ETypeData, PointedQuadSpace, QuadraticForm};
use crate::tensoralg::{SkewElem, TensorAlgebra};
use crate::verify::{check_grid, check_identity, CheckRecord, Eval, ModeKind, VerifyOptions};
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct ETypeConstruction {
    data: ETypeData,
    tensor: TensorAlgebra,
    u: SkewElem,
    e0: SkewElem,
    e1: SkewElem,
    r: SkewElem,
    qa_u: FieldElem,
    /// `[e0, w_1 = u, w_2, ..., e1]` with `w` an orthogonal basis of `V`.
    j_basis: Vec<SkewElem>,
    /// Flat skew coordinates to Jordan coordinates.
    to_j: Matrix,
    jordan: JordanCtx,
    module: SpecialJModule,
    quad: QuadrangularAlgebra,
}

fn skew_lin(t: &TensorAlgebra, terms: &[(&FieldElem, &SkewElem)]) -> SkewElem {
    let mut c = vec![FieldElem::zero(); t.skew_dim()];
    for (k, s) in terms {
        c = vec_add(&c, &vec_scale(&t.skew_coords(s), k));
    }
    t.skew_from_coords(&c)
}

impl ETypeConstruction {
    /// `u` is given in flat skew coordinates; the default is the first basis vector of `V`.
    pub fn new(data: ETypeData, u: Option<Vector>, search_bound: i64) -> Result<Self, QuadError> {
        let t = TensorAlgebra::from_etype(&data);
        let sd = t.skew_dim();
        let k2 = t.c1().dim() - 1;
        let v_idx: Vec<usize> = (0..sd).filter(|&i| i != 0 && i != k2).collect();
        let u_coords = u.unwrap_or_else(|| unit_vec(sd, v_idx[0]));
        if u_coords.len() != sd {
            return Err(QuadError::BadBasePoint(format!("expected {sd} skew coordinates")));
        }
        if !u_coords[0].is_zero() || !u_coords[k2].is_zero() {
            return Err(QuadError::BadBasePoint("u is not orthogonal to i1⊗1 and 1⊗i2".into()));
        }
        let u = t.skew_from_coords(&u_coords);
        let qa_u = t.albert(&u);
        if qa_u.is_zero() {
            return Err(QuadError::BadBasePoint("q_A(u) = 0".into()));
        }
        let gram = t.albert_form().gram();
        let pivot = v_idx.iter().position(|&i| !u_coords[i].is_zero()).expect("u is nonzero");
        let mut spanning = vec![u_coords.clone()];
        spanning.extend(v_idx.iter().enumerate().filter(|(p, _)| *p != pivot).map(|(_, &i)| unit_vec(sd, i)));
        let w = orthogonalize(&gram, &spanning).map_err(|e| QuadError::BadBasePoint(e.to_string()))?;

        let a = data.a.clone();
        let i1 = t.skew_from_coords(&unit_vec(sd, 0));
        let i2 = t.skew_from_coords(&unit_vec(sd, k2));
        let one = FieldElem::one();
        let lambda = qa_u.div(&(&a * &FieldElem::from_int(4))).expect("a nonzero");
        let e0 = skew_lin(&t, &[(&one, &i1), (&one, &i2)]);
        let e1 = skew_lin(&t, &[(&lambda, &i1), (&-&lambda, &i2)]);
        let r = t.s_inverse(&skew_lin(&t, &[(&one, &e0), (&one, &e1)]))?;

        let qa_inv = qa_u.inv().expect("nonzero");
        let q_diag: Vec<FieldElem> = w.iter().map(|wk| &t.albert(&t.skew_from_coords(wk)) * &qa_inv).collect();
        let form = QuadraticForm::new(data.ctx.clone(), q_diag).map_err(|e| QuadError::BadBasePoint(e.to_string()))?;
        let space = PointedQuadSpace::new(form, unit_vec(w.len(), 0)).map_err(|e| QuadError::BadBasePoint(e.to_string()))?;
        let jordan = JordanCtx::reduced_spin(space);

        let mut j_basis = vec![e0.clone()];
        j_basis.extend(w.iter().map(|c| t.skew_from_coords(c)));
        j_basis.push(e1.clone());
        let cols: Vec<Vector> = j_basis.iter().map(|s| t.skew_coords(s)).collect();
        let to_j = Matrix::from_cols(&cols, sd).inverse().map_err(|_| QuadError::BadBasePoint("frame is degenerate".into()))?;

        let n = t.dim();
        let lr = t.lmul_matrix(&t.skew_to_tensor(&r));
        let action: Vec<Matrix> = j_basis.iter().map(|s| t.lmul_matrix(&t.skew_to_tensor(s)).mul(&lr)).collect();
        let mut skew = vec![Matrix::zeros(n, n); sd];
        for x in 0..n {
            for y in 0..n {
                let p = t.skew_pair(&unit_vec(n, x), &unit_vec(n, y))?;
                let pc = t.skew_coords(&p);
                if vec_is_zero(&pc) {
                    continue;
                }
                for (k, c) in to_j.mul_vec(&pc).into_iter().enumerate() {
                    skew[k].set(x, y, c);
                }
            }
        }
        let module = SpecialJModule::from_matrices(jordan.clone(), n, action, Some(skew))?;
        let quad = QuadrangularAlgebra::from_jmodule(&module, Provenance::Etype(data.etype), search_bound)?;
        Ok(ETypeConstruction { data, tensor: t, u, e0, e1, r, qa_u, j_basis, to_j, jordan, module, quad })
    }

    pub fn data(&self) -> &ETypeData {
        &self.data
    }
    pub fn tensor(&self) -> &TensorAlgebra {
        &self.tensor
    }
    pub fn jordan(&self) -> &JordanCtx {
        &self.jordan
    }
    pub fn module(&self) -> &SpecialJModule {
        &self.module
    }
    pub fn quadrangular(&self) -> &QuadrangularAlgebra {
        &self.quad
    }
    pub fn base_point(&self) -> &SkewElem {
        &self.u
    }
    pub fn e0(&self) -> &SkewElem {
        &self.e0
    }
    pub fn e1(&self) -> &SkewElem {
        &self.e1
    }
    pub fn r(&self) -> &SkewElem {
        &self.r
    }
    pub fn qa_u(&self) -> &FieldElem {
        &self.qa_u
    }

    /// The skew element with the given Jordan coordinates.
    pub fn to_skew(&self, j: &[FieldElem]) -> SkewElem {
        let terms: Vec<(&FieldElem, &SkewElem)> = j.iter().zip(&self.j_basis).collect();
        skew_lin(&self.tensor, &terms)
    }
    /// Jordan coordinates of a skew element.
    pub fn to_jordan(&self, s: &SkewElem) -> Vector {
        self.to_j.mul_vec(&self.tensor.skew_coords(s))
    }

    /// The `X0` element with the given coordinates, as a tensor.
    pub fn x0_tensor(&self, c: &[FieldElem]) -> Vector {
        self.quad.module_x0().expect("built from a module").embed(c)
    }

    /// `q_A(e0) = q_A(e1) = 0`, `f_A(e0, e1) = -q_A(u)`, `e0, e1 ⊥ V`, and `Q(u) = 1`.
    pub fn check_frame(&self) -> CheckRecord {
        let t = &self.tensor;
        let started = Instant::now();
        let m = self.j_basis.len();
        let res = (|| {
            if !t.albert(&self.e0).is_zero() || !t.albert(&self.e1).is_zero() {
                return Err("e0 or e1 is anisotropic".to_string());
            }
            if t.albert_bil(&self.e0, &self.e1) != -&self.qa_u {
                return Err("f_A(e0, e1) != -q_A(u)".into());
            }
            for w in &self.j_basis[1..m - 1] {
                if !t.albert_bil(&self.e0, w).is_zero() || !t.albert_bil(&self.e1, w).is_zero() {
                    return Err("V is not orthogonal to e0, e1".into());
                }
            }
            if !self.jordan.half_form().eval(self.jordan.half_space().base()).expect("len").is_one() {
                return Err("Q(u) != 1".into());
            }
            Ok(())
        })();
        CheckRecord::exact("etype_frame", "q_A(e0) = q_A(e1) = 0, f_A(e0, e1) = -q_A(u)", 4, res, started)
    }

    fn l_r(&self, s: &SkewElem) -> Matrix {
        let t = &self.tensor;
        t.lmul_matrix(&t.skew_to_tensor(s)).mul(&t.lmul_matrix(&t.skew_to_tensor(&self.r)))
    }

    /// `(L_s L_r L_t L_r + L_t L_r L_s L_r)/2 = L_{s.t} L_r` with `s.t` the Jordan product:
    /// exact on all Jordan basis pairs, then on sampled pairs.
    pub fn check_lj(&self, opts: &VerifyOptions) -> Vec<CheckRecord> {
        let nj = self.j_basis.len();
        let half = FieldElem::half();
        let ops: Vec<Matrix> = self.j_basis.iter().map(|s| self.l_r(s)).collect();
        let exact = check_grid("LJ", "(L_s L_r L_t L_r + L_t L_r L_s L_r)/2 = L_{s.t} L_r on basis pairs", &[nj, nj], |ix| {
            let (i, k) = (ix[0], ix[1]);
            let lhs = ops[i].mul(&ops[k]).add(&ops[k].mul(&ops[i])).scale(&half);
            let prod = self.jordan.mul(&self.jordan.basis(i), &self.jordan.basis(k));
            (lhs != self.l_r(&self.to_skew(&prod))).then(|| "operator identity fails".into())
        });
        let sd = self.tensor.skew_dim();
        let sampled = check_identity("LJ", "(L_s L_r L_t L_r + L_t L_r L_s L_r)/2 = L_{s.t} L_r", self.tensor.ctx(), &opts.with_mode(ModeKind::Random), &[sd, sd], |a| {
            let (s, tt) = (self.tensor.skew_from_coords(&a[0]), self.tensor.skew_from_coords(&a[1]));
            let (ls, lt) = (self.l_r(&s), self.l_r(&tt));
            let lhs = ls.mul(&lt).add(&lt.mul(&ls)).scale(&half);
            let prod = self.jordan.mul(&self.to_jordan(&s), &self.to_jordan(&tt));
            let rhs = self.l_r(&self.to_skew(&prod));
            Eval::Residual(vec![if lhs == rhs { FieldElem::zero() } else { FieldElem::one() }])
        });
        vec![exact, sampled]
    }

    /// `x v = v(r(u(r x)))` and `h(x, y) = (u(r x)) conj(y) - y((conj(x) r) u)` on basis elements.
    pub fn check_closed_forms(&self) -> Vec<CheckRecord> {
        let t = &self.tensor;
        let (n, m) = (self.quad.x0_dim(), self.quad.v_dim());
        let ten = |s: &SkewElem| t.skew_to_tensor(s);
        let (ut, rt) = (ten(&self.u), ten(&self.r));
        let act = check_grid("closed_form_action", "x v = v(r(u(r x)))", &[n, m], |ix| {
            let x = self.x0_tensor(&unit_vec(n, ix[0]));
            let v = ten(&self.j_basis[1 + ix[1]]);
            let closed = t.mul(&v, &t.mul(&rt, &t.mul(&ut, &t.mul(&rt, &x))));
            let table = self.x0_tensor(&self.quad.act(&unit_vec(n, ix[0]), &unit_vec(m, ix[1])));
            (closed != table).then(|| "action differs".into())
        });
        let h = check_grid("closed_form_h", "h(x, y) = (u(r x)) conj(y) - y((conj(x) r) u)", &[n, n], |ix| {
            let x = self.x0_tensor(&unit_vec(n, ix[0]));
            let y = self.x0_tensor(&unit_vec(n, ix[1]));
            let left = t.mul(&t.mul(&ut, &t.mul(&rt, &x)), &t.t_involution(&y));
            let right = t.mul(&y, &t.mul(&t.mul(&t.t_involution(&x), &rt), &ut));
            let closed = vec_sub(&left, &right);
            let hv = self.quad.h(&unit_vec(n, ix[0]), &unit_vec(n, ix[1]));
            let table = ten(&self.to_skew(&self.jordan.half_vec(&hv)));
            (closed != table).then(|| "h differs".into())
        });
        vec![act, h]
    }

    /// For `x = e0 (x1 ⊗ x2)` and `u = s1⊗1 + 1⊗s2`:
    /// `(x, u x) = (q2(x2) psi(s1 x1, i1 x1) ⊗ 1 + 1 ⊗ q1(x1) psi(s2 x2, i2 x2)) / (4a)`
    /// with `psi(x, y) = x conj(y) - y conj(x)`.
    pub fn check_d2_certificate(&self, opts: &VerifyOptions) -> CheckRecord {
        let t = &self.tensor;
        let (c1, c2) = (t.c1(), t.c2());
        let psi = |c: &CompositionAlgebra, x: &[FieldElem], y: &[FieldElem]| vec_sub(&c.mul(x, &c.conj(y)), &c.mul(y, &c.conj(x)));
        let coef = self.data.a.mul_inv4();
        let u_j = self.to_jordan(&self.u);
        check_identity("D2_certificate", "(x, u x) = (q2(x2) psi(s1 x1, i1 x1) ⊗ 1 + 1 ⊗ q1(x1) psi(s2 x2, i2 x2))/(4a)", t.ctx(), opts, &[c1.dim(), c2.dim()], |a| {
            let (x1, x2) = (&a[0], &a[1]);
            let x = self.module.act(&self.jordan.e0(), &t.pure(x1, x2));
            let lhs = t.skew_to_tensor(&self.to_skew(&self.module.pair(&x, &self.module.act(&u_j, &x))));
            let p1 = vec_scale(&psi(c1, &c1.mul(&self.u.s1, x1), &c1.mul(&c1.basis(1), x1)), &c2.norm(x2));
            let p2 = vec_scale(&psi(c2, &c2.mul(&self.u.s2, x2), &c2.mul(&c2.basis(1), x2)), &c1.norm(x1));
            let rhs = vec_scale(&vec_add(&t.pure(&p1, &c2.one()), &t.pure(&c1.one(), &p2)), &coef);
            Eval::Residual(vec_sub(&lhs, &rhs))
        })
    }

    /// `psi(s1 y, i1 y) != 0` for sampled nonzero `y` in `C1`.
    pub fn check_psi_nonvanishing(&self, opts: &VerifyOptions) -> CheckRecord {
        let c1 = self.tensor.c1();
        check_identity("psi_nonvanishing", "psi(s1 y, i1 y) != 0 for y != 0", c1.ctx(), &opts.with_mode(ModeKind::Random), &[c1.dim()], |a| {
            if vec_is_zero(&a[0]) {
                return Eval::Skip;
            }
            let (p, q) = (c1.mul(&self.u.s1, &a[0]), c1.mul(&c1.basis(1), &a[0]));
            let v = vec_sub(&c1.mul(&p, &c1.conj(&q)), &c1.mul(&q, &c1.conj(&p)));
            Eval::Residual(vec![if vec_is_zero(&v) { FieldElem::one() } else { FieldElem::zero() }])
        })
    }

    /// `g(y, x) e0 = (y, x)/2` on basis pairs of `X0`, that is `f(h(y, x), 1) e0 = (y, x)`.
    pub fn check_g_remark(&self) -> CheckRecord {
        let n = self.quad.x0_dim();
        check_grid("g_remark", "f(h(y, x), 1) e0 = (y, x)", &[n, n], |ix| {
            let (x, y) = (unit_vec(n, ix[0]), unit_vec(n, ix[1]));
            let lhs = vec_scale(&self.jordan.e0(), &self.quad.g(&y, &x));
            let rhs = vec_scale(&self.module.pair(&self.x0_tensor(&y), &self.x0_tensor(&x)), &FieldElem::half());
            (lhs != rhs).then(|| "g differs".into())
        })
    }

    /// Sampled nonzero `x` in `X0` generate `X0` under `y -> y v`.
    pub fn check_irreducible(&self, opts: &VerifyOptions) -> CheckRecord {
        let n = self.quad.x0_dim();
        let u_j = self.to_jordan(&self.u);
        check_identity("irreducible_orbit", "orbit_span(x) = dim X0", self.tensor.ctx(), &opts.with_mode(ModeKind::Random), &[n], |a| {
            if vec_is_zero(&a[0]) {
                return Eval::Skip;
            }
            let span = self.module.orbit_span(&u_j, &self.x0_tensor(&a[0])).expect("x in X0");
            Eval::Residual(vec![FieldElem::from_int((n - span) as i64)])
        })
    }

    /// The J-ternary structure with `(x, y, z) = (x(conj(y) r)) z + (z(conj(y) r)) x + (z conj(x))(r y)`.
    pub fn jternary(&self) -> JTernary<'_> {
        let t = &self.tensor;
        let rt = t.skew_to_tensor(&self.r);
        JTernary::new(&self.module, move |x, y, z| {
            let yr = t.mul(&t.t_involution(y), &rt);
            let a = t.mul(&t.mul(x, &yr), z);
            let b = t.mul(&t.mul(z, &yr), x);
            let c = t.mul(&t.mul(z, &t.t_involution(x)), &t.mul(&rt, y));
            vec_add(&vec_add(&a, &b), &c)
        })
    }

    /// Every check for this instance. Sampled checks use `opts`; symbolic requests fall back
    /// to sampling above the symbolic threshold.
    pub fn checks(&self, opts: &VerifyOptions) -> Result<Vec<CheckRecord>, QuadError> {
        let mut out = self.data.checks();
        out.push(self.check_frame());
        let lj_opts = opts.with_trials(opts.trials.min(20));
        out.extend(self.check_lj(&lj_opts));
        out.extend(self.module.check_module(opts));
        out.extend(self.module.check_skew_compat(opts)?);
        out.extend(self.module.check_peirce_rules()?);
        out.extend(QuadrangularAlgebra::check_hypotheses(&self.module, opts)?);
        out.extend(self.check_closed_forms());
        out.push(self.check_d2_certificate(&symbolic_cap(opts, self.tensor.c1().dim() * self.tensor.c2().dim() / 2)));
        out.push(self.check_psi_nonvanishing(opts));
        out.push(self.check_g_remark());
        out.push(self.check_irreducible(&opts.with_trials(opts.trials.min(3))));
        out.extend(self.quad.verify_axioms(opts));
        Ok(out)
    }
}

trait QuarterInverse {
    fn mul_inv4(&self) -> FieldElem;
}

impl QuarterInverse for FieldElem {
    /// `1 / (4 self)`.
    fn mul_inv4(&self) -> FieldElem {
        (self * &FieldElem::from_int(4)).inv().expect("nonzero")
    }
}

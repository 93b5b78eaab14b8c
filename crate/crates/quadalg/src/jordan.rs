//! Jordan algebras with a pair of supplementary idempotents `e0`, `e1`.
//!
//! Elements are coordinate vectors `[t0, half..., t1]`. For a reduced spin factor the
//! middle block is a vector of the underlying quadratic space; for the hermitian 2x2
//! matrices `[[a0, l^s], [l, a1]]` over a quadratic pair it is the coordinate vector of `l`.

use crate::composition::CompositionAlgebra;
use crate::field::{FieldCtx, FieldElem};
use crate::linalg::{unit_vec, vec_add, vec_is_zero, vec_scale, vec_sub, zero_vec, Matrix, Subspace, Vector};
use crate::quadform::{search_zero, PointedQuadSpace, QuadraticForm};
use crate::verify::{check_grid, check_identity, CheckRecord, Eval, VerifyOptions};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JordanError {
    #[error("element has length {got}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("algebras are defined over different fields")]
    CtxMismatch,
    #[error("coordinate algebra must be associative of dimension 2 or 4, got dimension {0}")]
    NotQuadraticPair(usize),
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("eigenspaces of the idempotent span dimension {got} of {expected}")]
    DecompositionFailed { expected: usize, got: usize },
    #[error("element does not square to the unit")]
    NotUnitSquare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JordanKind {
    ReducedSpin(PointedQuadSpace),
    HermMat2(CompositionAlgebra),
}

/// Peirce spaces with respect to an idempotent `e`: eigenvalues 0, 1/2, 1 of `x -> ex`.
#[derive(Clone, Debug)]
pub struct PeirceSpaces {
    pub zero: Subspace,
    pub half: Subspace,
    pub one: Subspace,
}

impl PeirceSpaces {
    pub fn space(&self, twice_index: usize) -> &Subspace {
        match twice_index {
            0 => &self.zero,
            1 => &self.half,
            _ => &self.one,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanCtx {
    kind: JordanKind,
    /// The half space with its quadratic form; for matrices, the norm form of `L` based at 1.
    half_space: PointedQuadSpace,
}

type LMat = [Vector; 4];

impl JordanCtx {
    pub fn reduced_spin(space: PointedQuadSpace) -> Self {
        JordanCtx { kind: JordanKind::ReducedSpin(space.clone()), half_space: space }
    }

    pub fn herm_mat2(l: CompositionAlgebra) -> Result<Self, JordanError> {
        if l.dim() != 2 && l.dim() != 4 {
            return Err(JordanError::NotQuadraticPair(l.dim()));
        }
        let half_space = PointedQuadSpace::new(l.norm_form(), l.one()).expect("norm of one is one");
        Ok(JordanCtx { kind: JordanKind::HermMat2(l), half_space })
    }

    pub fn kind(&self) -> &JordanKind {
        &self.kind
    }
    pub fn ctx(&self) -> &FieldCtx {
        self.half_space.form().ctx()
    }
    pub fn half_space(&self) -> &PointedQuadSpace {
        &self.half_space
    }
    pub fn half_form(&self) -> &QuadraticForm {
        self.half_space.form()
    }
    pub fn half_dim(&self) -> usize {
        self.half_space.dim()
    }
    pub fn dim(&self) -> usize {
        self.half_dim() + 2
    }

    /// The reduced spin factor of the half space; equal to `self` for a reduced spin factor.
    pub fn as_reduced_spin(&self) -> JordanCtx {
        JordanCtx::reduced_spin(self.half_space.clone())
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vec(self.dim(), i)
    }
    pub fn e0(&self) -> Vector {
        self.basis(0)
    }
    pub fn e1(&self) -> Vector {
        self.basis(self.dim() - 1)
    }
    pub fn unit(&self) -> Vector {
        vec_add(&self.e0(), &self.e1())
    }
    pub fn embed(&self, t0: &FieldElem, half: &[FieldElem], t1: &FieldElem) -> Vector {
        let mut out = Vec::with_capacity(self.dim());
        out.push(t0.clone());
        out.extend_from_slice(half);
        out.push(t1.clone());
        out
    }
    pub fn half_vec(&self, v: &[FieldElem]) -> Vector {
        self.embed(&FieldElem::zero(), v, &FieldElem::zero())
    }
    pub fn parts<'a>(&self, x: &'a [FieldElem]) -> (&'a FieldElem, &'a [FieldElem], &'a FieldElem) {
        let n = x.len();
        (&x[0], &x[1..n - 1], &x[n - 1])
    }

    fn check_len(&self, x: &[FieldElem]) -> Result<(), JordanError> {
        if x.len() != self.dim() {
            return Err(JordanError::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }

    pub fn jprod(&self, x: &[FieldElem], y: &[FieldElem]) -> Result<Vector, JordanError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    /// Jordan product without length checks.
    pub fn mul(&self, x: &[FieldElem], y: &[FieldElem]) -> Vector {
        match &self.kind {
            JordanKind::ReducedSpin(space) => spin_product(space.form(), x, y),
            JordanKind::HermMat2(l) => self.herm_product(l, x, y),
        }
    }

    fn to_lmat(&self, l: &CompositionAlgebra, x: &[FieldElem]) -> LMat {
        let (a0, v, a1) = self.parts(x);
        [vec_scale(&l.one(), a0), l.conj(v), v.to_vec(), vec_scale(&l.one(), a1)]
    }

    fn herm_product(&self, l: &CompositionAlgebra, x: &[FieldElem], y: &[FieldElem]) -> Vector {
        let m = self.to_lmat(l, x);
        let n = self.to_lmat(l, y);
        let mm = |a: &LMat, b: &LMat, i: usize, j: usize| vec_add(&l.mul(&a[2 * i], &b[j]), &l.mul(&a[2 * i + 1], &b[2 + j]));
        let sym = |i: usize, j: usize| vec_scale(&vec_add(&mm(&m, &n, i, j), &mm(&n, &m, i, j)), &FieldElem::half());
        let d0 = sym(0, 0);
        let off = sym(1, 0);
        let d1 = sym(1, 1);
        debug_assert!(d0[1..].iter().chain(&d1[1..]).all(FieldElem::is_zero));
        debug_assert_eq!(sym(0, 1), l.conj(&off));
        self.embed(&d0[0], &off, &d1[0])
    }

    pub fn square(&self, x: &[FieldElem]) -> Vector {
        self.mul(x, x)
    }

    /// `U_x y = 2 x(xy) - x^2 y`.
    pub fn u_op(&self, x: &[FieldElem], y: &[FieldElem]) -> Vector {
        let two = FieldElem::from_int(2);
        vec_sub(&vec_scale(&self.mul(x, &self.mul(x, y)), &two), &self.mul(&self.square(x), y))
    }

    /// `U_{x,z} y = U_{x+z} y - U_x y - U_z y`.
    pub fn u_lin(&self, x: &[FieldElem], z: &[FieldElem], y: &[FieldElem]) -> Vector {
        let s = vec_add(x, z);
        vec_sub(&vec_sub(&self.u_op(&s, y), &self.u_op(x, y)), &self.u_op(z, y))
    }

    /// Matrix of `y -> xy`.
    pub fn lmul_matrix(&self, x: &[FieldElem]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|i| self.mul(x, &self.basis(i))).collect();
        Matrix::from_cols(&cols, self.dim())
    }

    pub fn peirce_decompose(&self, e: &[FieldElem]) -> Result<PeirceSpaces, JordanError> {
        self.check_len(e)?;
        if self.square(e) != e {
            return Err(JordanError::NotIdempotent);
        }
        let le = self.lmul_matrix(e);
        let n = self.dim();
        let eigen = |lambda: FieldElem| {
            let shifted = le.sub(&Matrix::identity(n).scale(&lambda));
            Subspace::span(n, &shifted.nullspace())
        };
        let spaces = PeirceSpaces { zero: eigen(FieldElem::zero()), half: eigen(FieldElem::half()), one: eigen(FieldElem::one()) };
        let got = spaces.zero.dim() + spaces.half.dim() + spaces.one.dim();
        if got != n {
            return Err(JordanError::DecompositionFailed { expected: n, got });
        }
        Ok(spaces)
    }

    pub fn check_jordan_identity(&self, opts: &VerifyOptions) -> CheckRecord {
        let n = self.dim();
        check_identity("jordan_identity", "(x^2 y) x = x^2 (y x)", self.ctx(), opts, &[n, n], |a| {
            let (x, y) = (&a[0], &a[1]);
            let x2 = self.square(x);
            Eval::Residual(vec_sub(&self.mul(&self.mul(&x2, y), x), &self.mul(&x2, &self.mul(y, x))))
        })
    }

    pub fn check_commutative(&self, opts: &VerifyOptions) -> CheckRecord {
        let n = self.dim();
        check_identity("jordan_commutative", "xy = yx", self.ctx(), opts, &[n, n], |a| {
            Eval::Residual(vec_sub(&self.mul(&a[0], &a[1]), &self.mul(&a[1], &a[0])))
        })
    }

    /// Product and U-operator containments of the Peirce spaces of `e`, on basis elements.
    pub fn check_peirce_rules(&self, e: &[FieldElem]) -> Result<Vec<CheckRecord>, JordanError> {
        let ps = self.peirce_decompose(e)?;
        let bases: Vec<&[Vector]> = (0..3).map(|i| ps.space(i).basis()).collect();
        let flat: Vec<(usize, &Vector)> = (0..3).flat_map(|i| bases[i].iter().map(move |b| (i, b))).collect();
        let m = flat.len();
        let outer = Subspace::span(self.dim(), &[ps.zero.basis(), ps.one.basis()].concat());
        let products = check_grid("peirce_products", "J_i J_j per Peirce index", &[m, m], |ix| {
            let (i, x) = flat[ix[0]];
            let (j, y) = flat[ix[1]];
            let p = self.mul(x, y);
            let ok = match (i, j) {
                (0, 2) | (2, 0) => vec_is_zero(&p),
                (0, 0) | (2, 2) => ps.space(i).contains(&p),
                (1, 1) => outer.contains(&p),
                _ => ps.half.contains(&p),
            };
            (!ok).then(|| format!("product of Peirce {}/2 and {}/2 elements leaves its space", i, j))
        });
        let u_contain = check_grid("peirce_u_containment", "U_{J_m} J_l in J_{2m-l}", &[m, m], |ix| {
            let (i, x) = flat[ix[0]];
            let (j, y) = flat[ix[1]];
            let u = self.u_op(x, y);
            let target = 2 * i as i64 - j as i64;
            let ok = if (0..=2).contains(&target) { ps.space(target as usize).contains(&u) } else { vec_is_zero(&u) };
            (!ok).then(|| format!("U of a Peirce {}/2 element on a Peirce {}/2 element", i, j))
        });
        Ok(vec![products, u_contain])
    }

    /// `U_u` is an involutive automorphism when `u^2 = 1`.
    pub fn check_u_involution(&self, u: &[FieldElem], opts: &VerifyOptions) -> Result<Vec<CheckRecord>, JordanError> {
        self.check_len(u)?;
        if self.square(u) != self.unit() {
            return Err(JordanError::NotUnitSquare);
        }
        let n = self.dim();
        let inv = check_identity("u_involutive", "U_u U_u x = x", self.ctx(), opts, &[n], |a| {
            Eval::Residual(vec_sub(&self.u_op(u, &self.u_op(u, &a[0])), &a[0]))
        });
        let hom = check_identity("u_automorphism", "U_u(xy) = U_u(x) U_u(y)", self.ctx(), opts, &[n, n], |a| {
            let lhs = self.u_op(u, &self.mul(&a[0], &a[1]));
            let rhs = self.mul(&self.u_op(u, &a[0]), &self.u_op(u, &a[1]));
            Eval::Residual(vec_sub(&lhs, &rhs))
        });
        Ok(vec![inv, hom])
    }

    /// Whether nonzero half-space elements are invertible: sampled, plus a bounded integer
    /// search for a zero of the half-space form.
    pub fn halfspace_invertibility_sample(&self, opts: &VerifyOptions) -> CheckRecord {
        let form = self.half_form();
        let invertible = |v: &[FieldElem]| match &self.kind {
            JordanKind::ReducedSpin(_) => !form.eval(v).expect("length").is_zero(),
            JordanKind::HermMat2(l) => l.inverse(v).is_ok(),
        };
        let mut rec = check_identity("halfspace_invertible", "nonzero elements of J_half are invertible", self.ctx(), opts, &[self.half_dim()], |a| {
            if vec_is_zero(&a[0]) {
                Eval::Skip
            } else {
                Eval::Residual(vec![if invertible(&a[0]) { FieldElem::zero() } else { FieldElem::one() }])
            }
        });
        if rec.passed() {
            if let Some(z) = search_zero(form.diag(), opts.search_bound) {
                let shown: Vec<String> = z.iter().map(|c| self.ctx().format(c)).collect();
                rec.status = crate::verify::Status::Fail;
                rec.witness = Some(format!("search found [{}] with zero form value", shown.join(", ")));
            }
        }
        rec
    }

    /// Structure constants agree with those of the reduced spin factor of the half space.
    pub fn check_spin_identification(&self) -> CheckRecord {
        let spin = self.as_reduced_spin();
        let n = self.dim();
        check_grid("spin_identification", "hermitian matrices = reduced spin factor of the norm form", &[n, n], |ix| {
            let (x, y) = (self.basis(ix[0]), self.basis(ix[1]));
            (self.mul(&x, &y) != spin.mul(&x, &y)).then(|| "basis products differ".to_string())
        })
    }

    pub fn zero(&self) -> Vector {
        zero_vec(self.dim())
    }
}

fn spin_product(form: &QuadraticForm, x: &[FieldElem], y: &[FieldElem]) -> Vector {
    let n = x.len();
    let (t0, v, t1) = (&x[0], &x[1..n - 1], &x[n - 1]);
    let (s0, w, s1) = (&y[0], &y[1..n - 1], &y[n - 1]);
    let half = FieldElem::half();
    let hf = &form.polarize(v, w).expect("length") * &half;
    let mut out = Vec::with_capacity(n);
    out.push(&(t0 * s0) + &hf);
    let a = &(t0 + t1) * &half;
    let b = &(s0 + s1) * &half;
    out.extend(vec_add(&vec_scale(w, &a), &vec_scale(v, &b)));
    out.push(&(t1 * s1) + &hf);
    out
}

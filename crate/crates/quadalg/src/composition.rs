//! Composition algebras of dimension 1, 2, 4, 8 by iterated Cayley–Dickson doubling.
//!
//! Basis order is `1, i, j, ij, k, ik, jk, (ij)k`: bit `m` of a basis index records the
//! generator added at doubling step `m`. The doubling rule is
//! `(x1 + x2 k)(y1 + y2 k) = (x1 y1 + c conj(y2) x2) + (y2 x1 + x2 conj(y1)) k`.

use crate::field::{FieldCtx, FieldElem};
use crate::linalg::{unit_vec, vec_add, vec_scale, vec_sub, zero_vec, Vector};
use crate::quadform::{anisotropy, default_order, AnisotropyVerdict, QuadraticForm};
use crate::verify::{check_identity, CheckRecord, Eval, VerifyOptions};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompositionError {
    #[error("at most three doubling parameters are supported")]
    TooManyParams,
    #[error("doubling parameter is zero")]
    ZeroParam,
    #[error("element has norm zero")]
    NormZero,
    #[error("coordinate vector has length {got}, algebra has dimension {expected}")]
    AlgebraMismatch { expected: usize, got: usize },
}

pub const BASIS_LABELS: [&str; 8] = ["1", "i", "j", "ij", "k", "ik", "jk", "(ij)k"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionAlgebra {
    ctx: FieldCtx,
    params: Vec<FieldElem>,
    /// `table[p][q] = c` with `e_p e_q = c e_{p ^ q}`.
    table: Vec<Vec<FieldElem>>,
}

/// Reference product straight from the doubling rule.
fn doubling_product(params: &[FieldElem], x: &[FieldElem], y: &[FieldElem]) -> Vector {
    if params.is_empty() {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let inner = &params[..params.len() - 1];
    let c = &params[params.len() - 1];
    let (x1, x2) = x.split_at(h);
    let (y1, y2) = y.split_at(h);
    let conj = |v: &[FieldElem]| -> Vector {
        v.iter().enumerate().map(|(i, a)| if i == 0 { a.clone() } else { -a }).collect()
    };
    let first = vec_add(&doubling_product(inner, x1, y1), &vec_scale(&doubling_product(inner, &conj(y2), x2), c));
    let second = vec_add(&doubling_product(inner, y2, x1), &doubling_product(inner, x2, &conj(y1)));
    let mut out = first;
    out.extend(second);
    out
}

impl CompositionAlgebra {
    pub fn new(ctx: FieldCtx, params: Vec<FieldElem>) -> Result<Self, CompositionError> {
        if params.len() > 3 {
            return Err(CompositionError::TooManyParams);
        }
        if params.iter().any(FieldElem::is_zero) {
            return Err(CompositionError::ZeroParam);
        }
        let dim = 1 << params.len();
        let mut table = vec![vec![FieldElem::zero(); dim]; dim];
        for p in 0..dim {
            for q in 0..dim {
                let prod = doubling_product(&params, &unit_vec(dim, p), &unit_vec(dim, q));
                for (r, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        assert_eq!(r, p ^ q, "basis products are monomial");
                        table[p][q] = c.clone();
                    }
                }
            }
        }
        Ok(CompositionAlgebra { ctx, params, table })
    }
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn params(&self) -> &[FieldElem] {
        &self.params
    }
    pub fn dim(&self) -> usize {
        self.table.len()
    }
    pub fn label(&self, p: usize) -> &'static str {
        BASIS_LABELS[p]
    }
    pub fn one(&self) -> Vector {
        unit_vec(self.dim(), 0)
    }
    pub fn basis(&self, p: usize) -> Vector {
        unit_vec(self.dim(), p)
    }
    /// Structure constant of `e_p e_q`.
    pub fn structure_constant(&self, p: usize, q: usize) -> &FieldElem {
        &self.table[p][q]
    }
    fn check(&self, x: &[FieldElem]) -> Result<(), CompositionError> {
        if x.len() != self.dim() {
            return Err(CompositionError::AlgebraMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }
    pub fn multiply(&self, x: &[FieldElem], y: &[FieldElem]) -> Result<Vector, CompositionError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }
    pub fn mul(&self, x: &[FieldElem], y: &[FieldElem]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (p, xp) in x.iter().enumerate() {
            if xp.is_zero() {
                continue;
            }
            for (q, yq) in y.iter().enumerate() {
                if yq.is_zero() {
                    continue;
                }
                let t = &(xp * yq) * &self.table[p][q];
                out[p ^ q] = &out[p ^ q] + &t;
            }
        }
        out
    }
    pub fn conj(&self, x: &[FieldElem]) -> Vector {
        x.iter().enumerate().map(|(i, a)| if i == 0 { a.clone() } else { -a }).collect()
    }
    /// Diagonal of the norm form `<<-a,-b,-c>>`.
    pub fn norm_diag(&self) -> Vec<FieldElem> {
        (0..self.dim())
            .map(|p| {
                self.params.iter().enumerate().filter(|(i, _)| p >> i & 1 == 1).fold(FieldElem::one(), |acc, (_, a)| -&(&acc * a))
            })
            .collect()
    }
    pub fn norm_form(&self) -> QuadraticForm {
        QuadraticForm::new(self.ctx.clone(), self.norm_diag()).expect("nonzero params")
    }
    pub fn norm(&self, x: &[FieldElem]) -> FieldElem {
        self.norm_form().eval_unchecked(x)
    }
    pub fn bil(&self, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
        self.norm_form().polarize_unchecked(x, y)
    }
    /// `f(x, 1)`.
    pub fn trace(&self, x: &[FieldElem]) -> FieldElem {
        &x[0] + &x[0]
    }
    pub fn inverse(&self, x: &[FieldElem]) -> Result<Vector, CompositionError> {
        self.check(x)?;
        let n = self.norm(x);
        if n.is_zero() {
            return Err(CompositionError::NormZero);
        }
        Ok(vec_scale(&self.conj(x), &n.inv().unwrap()))
    }
    pub fn associator(&self, x: &[FieldElem], y: &[FieldElem], z: &[FieldElem]) -> Vector {
        vec_sub(&self.mul(&self.mul(x, y), z), &self.mul(x, &self.mul(y, z)))
    }
    /// Non-unit basis vectors.
    pub fn skew_basis(&self) -> Vec<Vector> {
        (1..self.dim()).map(|p| self.basis(p)).collect()
    }
    pub fn is_division(&self, search_bound: i64) -> AnisotropyVerdict {
        anisotropy(&self.norm_form(), &default_order(&self.ctx), search_bound)
    }
    /// Flips the sign of one structure constant. Used by negative controls.
    pub fn corrupt_sign(&mut self, p: usize, q: usize) {
        self.table[p][q] = -&self.table[p][q];
    }

    /// The multiplicative, alternative and Moufang identity families.
    pub fn identity_suite(&self, opts: &VerifyOptions) -> Vec<CheckRecord> {
        let n = self.dim();
        let ctx = &self.ctx;
        let one = self.one();
        let s = |a: FieldElem, v: &Vector| vec_scale(v, &a);
        let mut out = Vec::new();
        let mut run = |name: &str, anchor: &str, arity: usize, f: &(dyn Fn(&[Vector]) -> Vector + Sync)| {
            out.push(check_identity(name, anchor, ctx, opts, &vec![n; arity], |a| Eval::Residual(f(a))));
        };
        run("minimal_polynomial", "x^2 - f(x,1) x + q(x) 1 = 0", 1, &|a| {
            let x = &a[0];
            let x2 = self.mul(x, x);
            vec_add(&vec_sub(&x2, &s(self.trace(x), x)), &s(self.norm(x), &one))
        });
        run("norm_multiplicative", "q(xy) = q(x) q(y)", 2, &|a| {
            vec![&self.norm(&self.mul(&a[0], &a[1])) - &(&self.norm(&a[0]) * &self.norm(&a[1]))]
        });
        run("involution_anti_automorphism", "conj(xy) = conj(y) conj(x)", 2, &|a| {
            vec_sub(&self.conj(&self.mul(&a[0], &a[1])), &self.mul(&self.conj(&a[1]), &self.conj(&a[0])))
        });
        run("bil_shift_left", "f(xy, z) = f(y, conj(x) z)", 3, &|a| {
            let (x, y, z) = (&a[0], &a[1], &a[2]);
            vec![&self.bil(&self.mul(x, y), z) - &self.bil(y, &self.mul(&self.conj(x), z))]
        });
        run("bil_shift_right", "f(xy, z) = f(x, z conj(y))", 3, &|a| {
            let (x, y, z) = (&a[0], &a[1], &a[2]);
            vec![&self.bil(&self.mul(x, y), z) - &self.bil(x, &self.mul(z, &self.conj(y)))]
        });
        run("bil_shift_cyclic", "f(xy, z) = f(y conj(z), conj(x))", 3, &|a| {
            let (x, y, z) = (&a[0], &a[1], &a[2]);
            vec![&self.bil(&self.mul(x, y), z) - &self.bil(&self.mul(y, &self.conj(z)), &self.conj(x))]
        });
        run("left_alternative", "(x, x, y) = 0", 2, &|a| self.associator(&a[0], &a[0], &a[1]));
        run("right_alternative", "(y, x, x) = 0", 2, &|a| self.associator(&a[1], &a[0], &a[0]));
        run("two_generator_words", "(x, y, xy) = (xy, x, y) = (yx, x, y) = 0", 2, &|a| {
            let (x, y) = (&a[0], &a[1]);
            let xy = self.mul(x, y);
            let yx = self.mul(y, x);
            let mut r = self.associator(x, y, &xy);
            r.extend(self.associator(&xy, x, y));
            r.extend(self.associator(&yx, x, y));
            r
        });
        run("kirmse_left", "x(conj(x) y) = q(x) y", 2, &|a| {
            let (x, y) = (&a[0], &a[1]);
            vec_sub(&self.mul(x, &self.mul(&self.conj(x), y)), &s(self.norm(x), y))
        });
        run("kirmse_right", "(x conj(y)) y = q(y) x", 2, &|a| {
            let (x, y) = (&a[0], &a[1]);
            vec_sub(&self.mul(&self.mul(x, &self.conj(y)), y), &s(self.norm(y), x))
        });
        run("moufang_middle", "(zx)(yz) = z((xy)z)", 3, &|a| {
            let (x, y, z) = (&a[0], &a[1], &a[2]);
            vec_sub(&self.mul(&self.mul(z, x), &self.mul(y, z)), &self.mul(z, &self.mul(&self.mul(x, y), z)))
        });
        run("moufang_left", "z(x(zy)) = (z(xz))y", 3, &|a| {
            let (x, y, z) = (&a[0], &a[1], &a[2]);
            vec_sub(&self.mul(z, &self.mul(x, &self.mul(z, y))), &self.mul(&self.mul(z, &self.mul(x, z)), y))
        });
        run("moufang_right", "x(z(yz)) = ((xz)y)z", 3, &|a| {
            let (x, y, z) = (&a[0], &a[1], &a[2]);
            vec_sub(&self.mul(x, &self.mul(z, &self.mul(y, z))), &self.mul(&self.mul(&self.mul(x, z), y), z))
        });
        out
    }

    /// `x * inverse(x) = 1` on a random sample.
    pub fn check_inverse(&self, opts: &VerifyOptions) -> CheckRecord {
        let one = self.one();
        check_identity("inverse", "x x^{-1} = x^{-1} x = 1", &self.ctx, opts, &[self.dim()], |a| match self.inverse(&a[0]) {
            Err(_) => Eval::Skip,
            Ok(inv) => {
                let mut r = vec_sub(&self.mul(&a[0], &inv), &one);
                r.extend(vec_sub(&self.mul(&inv, &a[0]), &one));
                Eval::Residual(r)
            }
        })
    }
}

//! The algebra `C1 ⊗ C2` with involution `σ1 ⊗ σ2`, its skew elements and Albert form.
//!
//! A tensor element is a flat coordinate vector; entry `p * dim C2 + q` is the coefficient
//! of `e_p ⊗ f_q`.

use crate::composition::CompositionAlgebra;
use crate::field::{FieldCtx, FieldElem};
use crate::linalg::{vec_add, vec_scale, vec_sub, zero_vec, Matrix, Vector};
use crate::quadform::{ETypeData, QuadraticForm};
use crate::verify::{check_identity, CheckRecord, Eval, VerifyOptions};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("factors are defined over different fields")]
    CtxMismatch,
    #[error("coordinate vector has length {got}, expected {expected}")]
    AlgebraMismatch { expected: usize, got: usize },
    #[error("skew element is isotropic for the Albert form")]
    IsotropicSkew,
    #[error("skew pairing produced a non-skew element")]
    ResultNotSkew,
}

/// A skew element `s1 ⊗ 1 + 1 ⊗ s2`; both components have zero unit coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewElem {
    pub s1: Vector,
    pub s2: Vector,
}

#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    c1: CompositionAlgebra,
    c2: CompositionAlgebra,
    /// `coeff[p1][p2]` paired with `coeff[q1][q2]` gives `c1(p1,q1) c2(p2,q2)`; stored flat.
    table: Vec<FieldElem>,
}

impl TensorAlgebra {
    pub fn new(c1: CompositionAlgebra, c2: CompositionAlgebra) -> Result<Self, TensorError> {
        if c1.ctx() != c2.ctx() {
            return Err(TensorError::CtxMismatch);
        }
        let (d1, d2) = (c1.dim(), c2.dim());
        let n = d1 * d2;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (p1, p2) = (a / d2, a % d2);
                let (q1, q2) = (b / d2, b % d2);
                table.push(c1.structure_constant(p1, q1) * c2.structure_constant(p2, q2));
            }
        }
        Ok(TensorAlgebra { c1, c2, table })
    }
    /// The tensor product attached to E-type data.
    pub fn from_etype(data: &ETypeData) -> Self {
        let c1 = CompositionAlgebra::new(data.ctx.clone(), data.c1_params.clone()).expect("valid parameters");
        let c2 = CompositionAlgebra::new(data.ctx.clone(), data.c2_params.clone()).expect("valid parameters");
        Self::new(c1, c2).expect("shared context")
    }
    pub fn c1(&self) -> &CompositionAlgebra {
        &self.c1
    }
    pub fn c2(&self) -> &CompositionAlgebra {
        &self.c2
    }
    pub fn ctx(&self) -> &FieldCtx {
        self.c1.ctx()
    }
    pub fn dim(&self) -> usize {
        self.c1.dim() * self.c2.dim()
    }
    pub fn skew_dim(&self) -> usize {
        self.c1.dim() + self.c2.dim() - 2
    }
    fn target(&self, a: usize, b: usize) -> usize {
        let d2 = self.c2.dim();
        ((a / d2) ^ (b / d2)) * d2 + ((a % d2) ^ (b % d2))
    }
    pub fn pure(&self, x1: &[FieldElem], x2: &[FieldElem]) -> Vector {
        x1.iter().flat_map(|a| x2.iter().map(move |b| a * b)).collect()
    }
    pub fn one(&self) -> Vector {
        self.pure(&self.c1.one(), &self.c2.one())
    }
    pub fn t_multiply(&self, x: &[FieldElem], y: &[FieldElem]) -> Result<Vector, TensorError> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(TensorError::AlgebraMismatch { expected: self.dim(), got: v.len() });
            }
        }
        Ok(self.mul(x, y))
    }
    pub fn mul(&self, x: &[FieldElem], y: &[FieldElem]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let t = &(xa * yb) * &self.table[a * n + b];
                let r = self.target(a, b);
                out[r] = &out[r] + &t;
            }
        }
        out
    }
    pub fn t_involution(&self, x: &[FieldElem]) -> Vector {
        let d2 = self.c2.dim();
        x.iter()
            .enumerate()
            .map(|(a, v)| if (a / d2 == 0) == (a % d2 == 0) { v.clone() } else { -v })
            .collect()
    }
    /// Matrix of `x -> s x`.
    pub fn lmul_matrix(&self, s: &[FieldElem]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (a, sa) in s.iter().enumerate() {
            if sa.is_zero() {
                continue;
            }
            for b in 0..n {
                let r = self.target(a, b);
                let c = sa * &self.table[a * n + b];
                let cur = m.get(r, b).clone();
                m.set(r, b, &cur + &c);
            }
        }
        m
    }

    pub fn skew_to_tensor(&self, s: &SkewElem) -> Vector {
        vec_add(&self.pure(&s.s1, &self.c2.one()), &self.pure(&self.c1.one(), &s.s2))
    }
    /// Reads a tensor as a skew element; fails if it has other components.
    pub fn tensor_to_skew(&self, x: &[FieldElem]) -> Result<SkewElem, TensorError> {
        let (d1, d2) = (self.c1.dim(), self.c2.dim());
        let mut s1 = zero_vec(d1);
        let mut s2 = zero_vec(d2);
        for (a, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            match (a / d2, a % d2) {
                (p, 0) if p > 0 => s1[p] = v.clone(),
                (0, q) if q > 0 => s2[q] = v.clone(),
                _ => return Err(TensorError::ResultNotSkew),
            }
        }
        Ok(SkewElem { s1, s2 })
    }
    /// Flat skew coordinates `[s1_1..s1_{d1-1}, s2_1..s2_{d2-1}]`.
    pub fn skew_coords(&self, s: &SkewElem) -> Vector {
        s.s1[1..].iter().chain(s.s2[1..].iter()).cloned().collect()
    }
    pub fn skew_from_coords(&self, c: &[FieldElem]) -> SkewElem {
        let k = self.c1.dim() - 1;
        let mut s1 = vec![FieldElem::zero()];
        s1.extend_from_slice(&c[..k]);
        let mut s2 = vec![FieldElem::zero()];
        s2.extend_from_slice(&c[k..]);
        SkewElem { s1, s2 }
    }
    /// Standard basis of the skew space in flat-coordinate order.
    pub fn skew_basis(&self) -> Vec<SkewElem> {
        (0..self.skew_dim()).map(|i| self.skew_from_coords(&crate::linalg::unit_vec(self.skew_dim(), i))).collect()
    }
    /// `q_A(s1 ⊗ 1 + 1 ⊗ s2) = q1(s1) - q2(s2)`.
    pub fn albert(&self, s: &SkewElem) -> FieldElem {
        &self.c1.norm(&s.s1) - &self.c2.norm(&s.s2)
    }
    pub fn albert_bil(&self, s: &SkewElem, t: &SkewElem) -> FieldElem {
        &self.c1.bil(&s.s1, &t.s1) - &self.c2.bil(&s.s2, &t.s2)
    }
    /// The Albert form in flat skew coordinates.
    pub fn albert_form(&self) -> QuadraticForm {
        let d1 = self.c1.norm_diag();
        let d2 = self.c2.norm_diag();
        let diag = d1[1..].iter().cloned().chain(d2[1..].iter().map(|x| -x)).collect();
        QuadraticForm::new(self.ctx().clone(), diag).expect("nonzero entries")
    }
    pub fn sharp(&self, s: &SkewElem) -> SkewElem {
        SkewElem { s1: s.s1.clone(), s2: s.s2.iter().map(|x| -x).collect() }
    }
    /// `s^{-1} = -sharp(s) / q_A(s)`.
    pub fn s_inverse(&self, s: &SkewElem) -> Result<SkewElem, TensorError> {
        let q = self.albert(s);
        if q.is_zero() {
            return Err(TensorError::IsotropicSkew);
        }
        let c = -&q.inv().unwrap();
        let sh = self.sharp(s);
        Ok(SkewElem { s1: vec_scale(&sh.s1, &c), s2: vec_scale(&sh.s2, &c) })
    }
    /// `x conj(y) - y conj(x)` as a skew element.
    pub fn skew_pair(&self, x: &[FieldElem], y: &[FieldElem]) -> Result<SkewElem, TensorError> {
        let v = vec_sub(&self.mul(x, &self.t_involution(y)), &self.mul(y, &self.t_involution(x)));
        self.tensor_to_skew(&v)
    }
    /// Split `x = x0 + x1` with `x0 = (x + (1/a)(i1 ⊗ i2) x) / 2`.
    pub fn peirce_project(&self, a: &FieldElem, x: &[FieldElem]) -> (Vector, Vector) {
        let i1i2 = self.pure(&self.c1.basis(1), &self.c2.basis(1));
        let twisted = vec_scale(&self.mul(&i1i2, x), &a.inv().expect("a nonzero"));
        let x0 = vec_scale(&vec_add(x, &twisted), &FieldElem::half());
        let x1 = vec_sub(x, &x0);
        (x0, x1)
    }

    /// Involution reverses products, skew elements are flexible and cancel with their
    /// inverses, and the Albert form is `s sharp(s) = -q_A(s)`.
    pub fn checks(&self, opts: &VerifyOptions) -> Vec<CheckRecord> {
        let (n, sd) = (self.dim(), self.skew_dim());
        let skew = |c: &[FieldElem]| self.skew_to_tensor(&self.skew_from_coords(c));
        let anti = check_identity("involution_reverses", "conj(xy) = conj(y) conj(x)", self.ctx(), opts, &[n, n], |a| {
            let lhs = self.t_involution(&self.mul(&a[0], &a[1]));
            Eval::Residual(vec_sub(&lhs, &self.mul(&self.t_involution(&a[1]), &self.t_involution(&a[0]))))
        });
        let flex = check_identity("skew_flexible", "s1(s2 s1) = (s1 s2)s1", self.ctx(), opts, &[sd, sd], |a| {
            let (s1, s2) = (skew(&a[0]), skew(&a[1]));
            Eval::Residual(vec_sub(&self.mul(&s1, &self.mul(&s2, &s1)), &self.mul(&self.mul(&s1, &s2), &s1)))
        });
        let norm = check_identity("albert_norm", "s sharp(s) = -q_A(s)", self.ctx(), opts, &[sd], |a| {
            let s = self.skew_from_coords(&a[0]);
            let prod = self.mul(&self.skew_to_tensor(&s), &self.skew_to_tensor(&self.sharp(&s)));
            Eval::Residual(vec_add(&prod, &vec_scale(&self.one(), &self.albert(&s))))
        });
        let inv = check_identity("skew_inverse", "s(s^-1 x) = x", self.ctx(), opts, &[sd, n], |a| match self.s_inverse(&self.skew_from_coords(&a[0])) {
            Err(_) => Eval::Skip,
            Ok(i) => {
                let inner = self.mul(&self.skew_to_tensor(&i), &a[1]);
                Eval::Residual(vec_sub(&self.mul(&skew(&a[0]), &inner), &a[1]))
            }
        });
        vec![anti, flex, norm, inv]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn algebra() -> TensorAlgebra {
        let q = FieldCtx::Rationals;
        let c1 = CompositionAlgebra::new(q.clone(), vec![FieldElem::from_int(-1); 3]).unwrap();
        let c2 = CompositionAlgebra::new(q, vec![FieldElem::from_int(-1)]).unwrap();
        TensorAlgebra::new(c1, c2).unwrap()
    }

    #[test]
    fn unit_and_involution() {
        let t = algebra();
        let x: Vector = (0..16).map(|i| FieldElem::from_int(i as i64 - 5)).collect();
        assert_eq!(t.mul(&t.one(), &x), x);
        let i1 = t.pure(&t.c1().basis(1), &t.c2().one());
        assert_eq!(t.t_involution(&i1), vec_scale(&i1, &FieldElem::from_int(-1)));
        assert_eq!(t.lmul_matrix(&t.one()), Matrix::identity(16));
    }

    #[test]
    fn skew_space_dimension_and_pairing() {
        let t = algebra();
        assert_eq!(t.skew_dim(), 8);
        let i1 = t.pure(&t.c1().basis(1), &t.c2().one());
        let s = t.skew_pair(&t.one(), &i1).unwrap();
        assert_eq!(t.skew_to_tensor(&s), vec_scale(&i1, &FieldElem::from_int(-2)));
        assert_eq!(t.albert_form().dim(), 8);
    }

    #[test]
    fn sharp_and_albert_of_e0() {
        let t = algebra();
        let e0 = SkewElem { s1: t.c1().basis(1), s2: t.c2().basis(1) };
        assert!(t.albert(&e0).is_zero());
        assert_eq!(t.sharp(&t.sharp(&e0)), e0);
        assert_eq!(t.s_inverse(&e0), Err(TensorError::IsotropicSkew));
        let i1 = SkewElem { s1: t.c1().basis(1), s2: zero_vec(2) };
        assert_eq!(t.albert(&i1), FieldElem::from_int(1));
    }
}

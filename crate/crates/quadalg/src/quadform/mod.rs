//! Diagonal quadratic forms, pointed quadratic spaces and anisotropy certificates.

use crate::field::{FieldCtx, FieldElem, FieldError};
use crate::linalg::{dot, vec_scale, vec_sub, Matrix, Vector};
use serde::Serialize;
use thiserror::Error;

mod etype;
pub use etype::{albert_diag, build_e6e7e8_data, EType, ETypeData, ETypeError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormError {
    #[error("vector of length {got} for a form of dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero slot in a Pfister form or diagonal")]
    ZeroSlot,
    #[error("vector is isotropic")]
    IsotropicVector,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("base point has value {0}, expected 1")]
    BaseNotUnit(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A nondegenerate diagonal quadratic form `sum d_i x_i^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    ctx: FieldCtx,
    diag: Vec<FieldElem>,
}

impl QuadraticForm {
    pub fn new(ctx: FieldCtx, diag: Vec<FieldElem>) -> Result<Self, FormError> {
        if diag.is_empty() || diag.iter().any(FieldElem::is_zero) {
            return Err(FormError::ZeroSlot);
        }
        Ok(QuadraticForm { ctx, diag })
    }
    /// `<<a_1,...,a_n>>`: the entry for the subset encoded by the bits of an index is the
    /// product of the chosen `a_i`.
    pub fn pfister(ctx: FieldCtx, elems: &[FieldElem]) -> Result<Self, FormError> {
        if elems.iter().any(FieldElem::is_zero) {
            return Err(FormError::ZeroSlot);
        }
        let n = 1usize << elems.len();
        let diag = (0..n)
            .map(|s| {
                elems.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).fold(FieldElem::one(), |acc, (_, a)| &acc * a)
            })
            .collect();
        Self::new(ctx, diag)
    }
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn diag(&self) -> &[FieldElem] {
        &self.diag
    }
    pub fn dim(&self) -> usize {
        self.diag.len()
    }
    fn check_len(&self, v: &[FieldElem]) -> Result<(), FormError> {
        if v.len() != self.dim() {
            return Err(FormError::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }
    pub fn eval(&self, v: &[FieldElem]) -> Result<FieldElem, FormError> {
        self.check_len(v)?;
        Ok(self.eval_unchecked(v))
    }
    pub(crate) fn eval_unchecked(&self, v: &[FieldElem]) -> FieldElem {
        let mut acc = FieldElem::zero();
        for (d, x) in self.diag.iter().zip(v) {
            if !x.is_zero() {
                acc = &acc + &(d * &(x * x));
            }
        }
        acc
    }
    /// `f(v, w) = q(v + w) - q(v) - q(w)`.
    pub fn polarize(&self, v: &[FieldElem], w: &[FieldElem]) -> Result<FieldElem, FormError> {
        self.check_len(v)?;
        self.check_len(w)?;
        Ok(self.polarize_unchecked(v, w))
    }
    pub(crate) fn polarize_unchecked(&self, v: &[FieldElem], w: &[FieldElem]) -> FieldElem {
        let mut acc = FieldElem::zero();
        for ((d, x), y) in self.diag.iter().zip(v).zip(w) {
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &(d * &(x * y));
            }
        }
        &acc + &acc
    }
    pub fn gram(&self) -> Matrix {
        let n = self.dim();
        let mut g = Matrix::zeros(n, n);
        for (i, d) in self.diag.iter().enumerate() {
            g.set(i, i, d + d);
        }
        g
    }
    pub fn orthogonal_sum(&self, o: &QuadraticForm) -> QuadraticForm {
        let mut diag = self.diag.clone();
        diag.extend(o.diag.iter().cloned());
        QuadraticForm { ctx: self.ctx.clone(), diag }
    }
    pub fn tensor(&self, o: &QuadraticForm) -> QuadraticForm {
        let diag = self.diag.iter().flat_map(|a| o.diag.iter().map(move |b| a * b)).collect();
        QuadraticForm { ctx: self.ctx.clone(), diag }
    }
    pub fn scaled(&self, c: &FieldElem) -> Result<QuadraticForm, FormError> {
        if c.is_zero() {
            return Err(FormError::ZeroSlot);
        }
        Ok(QuadraticForm { ctx: self.ctx.clone(), diag: self.diag.iter().map(|d| d * c).collect() })
    }
    pub fn determinant(&self) -> FieldElem {
        self.diag.iter().fold(FieldElem::one(), |acc, d| &acc * d)
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "diag": self.diag.iter().map(|d| self.ctx.format(d)).collect::<Vec<_>>(),
            "ctx": self.ctx,
        })
    }
}

/// A quadratic space with a base point of value one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedQuadSpace {
    form: QuadraticForm,
    base: Vector,
}

impl PointedQuadSpace {
    pub fn new(form: QuadraticForm, base: Vector) -> Result<Self, FormError> {
        let v = form.eval(&base)?;
        if !v.is_one() {
            return Err(FormError::BaseNotUnit(form.ctx().format(&v)));
        }
        Ok(PointedQuadSpace { form, base })
    }
    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }
    pub fn base(&self) -> &[FieldElem] {
        &self.base
    }
    pub fn dim(&self) -> usize {
        self.form.dim()
    }
    /// `v -> f(base, v) base - v`.
    pub fn sigma(&self, v: &[FieldElem]) -> Result<Vector, FormError> {
        let f = self.form.polarize(&self.base, v)?;
        Ok(vec_sub(&vec_scale(&self.base, &f), v))
    }
    /// `sigma(v) / q(v)`.
    pub fn pq_inverse(&self, v: &[FieldElem]) -> Result<Vector, FormError> {
        let q = self.form.eval(v)?;
        if q.is_zero() {
            return Err(FormError::IsotropicVector);
        }
        Ok(vec_scale(&self.sigma(v)?, &q.inv()?))
    }
}

/// Basis of `{w : w^T gram s = 0 for all spanning s}`.
pub fn orthogonal_complement(gram: &Matrix, spanning: &[Vector]) -> Result<Vec<Vector>, FormError> {
    let n = gram.rows();
    if gram.rank() < n {
        return Err(FormError::DegenerateForm);
    }
    if spanning.is_empty() {
        return Ok((0..n).map(|i| crate::linalg::unit_vec(n, i)).collect());
    }
    let rows: Vec<Vector> = spanning.iter().map(|s| gram.mul_vec(s)).collect();
    Ok(Matrix::from_rows(&rows).nullspace())
}

/// Gram–Schmidt on the given basis with respect to a symmetric bilinear form; the first
/// vector is kept. Fails if an intermediate vector is isotropic.
pub fn orthogonalize(gram: &Matrix, basis: &[Vector]) -> Result<Vec<Vector>, FormError> {
    let bil = |a: &Vector, b: &Vector| dot(a, &gram.mul_vec(b));
    let mut out: Vec<(Vector, FieldElem)> = Vec::new();
    for b in basis {
        let mut w = b.clone();
        for (o, qo) in &out {
            let c = bil(b, o).div(qo)?;
            w = vec_sub(&w, &vec_scale(o, &c));
        }
        let qw = bil(&w, &w);
        if qw.is_zero() {
            return Err(FormError::IsotropicVector);
        }
        out.push((w, qw));
    }
    Ok(out.into_iter().map(|(w, _)| w).collect())
}

/// How anisotropy was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// All entries rational of one sign.
    Definite { sign: i32, diag: Vec<String> },
    /// Zero-dimensional residue form.
    Empty,
    /// Springer split in one variable: residue forms of even and odd valuation.
    Springer { variable: String, even: Box<Certificate>, odd: Box<Certificate> },
}

impl Certificate {
    /// All leaves are definite or empty.
    pub fn leaves_definite(&self) -> bool {
        match self {
            Certificate::Definite { .. } | Certificate::Empty => true,
            Certificate::Springer { even, odd, .. } => even.leaves_definite() && odd.leaves_definite(),
        }
    }
    pub fn depth(&self) -> usize {
        match self {
            Certificate::Springer { even, odd, .. } => 1 + even.depth().max(odd.depth()),
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AnisotropyVerdict {
    Anisotropic { certificate: Certificate },
    Isotropic { witness: Vec<String> },
    Unknown { reason: String },
}

impl AnisotropyVerdict {
    pub fn is_anisotropic(&self) -> bool {
        matches!(self, AnisotropyVerdict::Anisotropic { .. })
    }
    pub fn is_isotropic(&self) -> bool {
        matches!(self, AnisotropyVerdict::Isotropic { .. })
    }
}

enum Decision {
    Anisotropic(Certificate),
    Isotropic(Vector),
    Unknown(String),
}

/// Decides anisotropy at desk scale. Over the rationals: definite forms are anisotropic,
/// otherwise a bounded search looks for a zero. Over a function field the variables in
/// `variable_order` are eliminated one by one by Springer residue splitting.
pub fn anisotropy(q: &QuadraticForm, variable_order: &[usize], search_bound: i64) -> AnisotropyVerdict {
    let decision = decide(q.ctx(), q.diag(), variable_order, search_bound);
    match decision {
        Decision::Anisotropic(c) => AnisotropyVerdict::Anisotropic { certificate: c },
        Decision::Isotropic(w) => {
            assert!(q.eval_unchecked(&w).is_zero() && w.iter().any(|x| !x.is_zero()), "invalid isotropy witness");
            AnisotropyVerdict::Isotropic { witness: w.iter().map(|x| q.ctx().format(x)).collect() }
        }
        Decision::Unknown(r) => AnisotropyVerdict::Unknown { reason: r },
    }
}

/// Default elimination order: last context variable first.
pub fn default_order(ctx: &FieldCtx) -> Vec<usize> {
    (0..ctx.num_vars()).rev().collect()
}

fn decide(ctx: &FieldCtx, diag: &[FieldElem], order: &[usize], bound: i64) -> Decision {
    if diag.is_empty() {
        return Decision::Anisotropic(Certificate::Empty);
    }
    let remaining: Vec<usize> = order.iter().copied().filter(|&v| diag.iter().any(|d| d.contains_var(v))).collect();
    if remaining.is_empty() {
        if diag.iter().any(|d| !d.is_rational()) {
            return Decision::Unknown("entries involve variables outside the elimination order".into());
        }
        return decide_rational(ctx, diag, bound);
    }
    let v = remaining[0];
    let rest = &remaining[1..];
    let mut classes: [Vec<(usize, i64, FieldElem)>; 2] = [Vec::new(), Vec::new()];
    for (i, d) in diag.iter().enumerate() {
        let Some((k, r)) = d.split_monomial_in(v) else {
            return Decision::Unknown(format!("entry {} is not monomial in {}", ctx.format(d), ctx.var_name(v)));
        };
        classes[k.rem_euclid(2) as usize].push((i, k, r));
    }
    let mut certs = Vec::new();
    for (c, class) in classes.iter().enumerate() {
        let residue: Vec<FieldElem> = class.iter().map(|(_, _, r)| r.clone()).collect();
        match decide(ctx, &residue, rest, bound) {
            Decision::Anisotropic(cert) => certs.push(cert),
            Decision::Isotropic(w) => {
                let t = FieldElem::indeterminate(v);
                let mut lifted = vec![FieldElem::zero(); diag.len()];
                for ((i, k, _), wi) in class.iter().zip(&w) {
                    let e = -(k - c as i64) / 2;
                    let factor = if e >= 0 { t.pow(e as u32) } else { t.pow((-e) as u32).inv().unwrap() };
                    lifted[*i] = wi * &factor;
                }
                return Decision::Isotropic(lifted);
            }
            Decision::Unknown(r) => return Decision::Unknown(r),
        }
    }
    let odd = certs.pop().unwrap();
    let even = certs.pop().unwrap();
    Decision::Anisotropic(Certificate::Springer { variable: ctx.var_name(v), even: Box::new(even), odd: Box::new(odd) })
}

fn decide_rational(ctx: &FieldCtx, diag: &[FieldElem], bound: i64) -> Decision {
    let signs: Vec<i32> = diag.iter().map(|d| d.rational_sign().unwrap()).collect();
    if signs.iter().all(|&s| s == signs[0]) {
        return Decision::Anisotropic(Certificate::Definite { sign: signs[0], diag: diag.iter().map(|d| ctx.format(d)).collect() });
    }
    match search_zero(diag, bound) {
        Some(w) => Decision::Isotropic(w),
        None => Decision::Unknown(format!("indefinite form with no zero of height <= {bound}")),
    }
}

/// Searches integer vectors of height at most `bound` and support at most four.
pub fn search_zero(diag: &[FieldElem], bound: i64) -> Option<Vector> {
    let n = diag.len();
    let b = bound.max(1);
    let nonzero: Vec<i64> = (1..=b).flat_map(|x| [x, -x]).collect();
    let mut budget: i64 = 4_000_000;
    for support in 2..=n.min(4) {
        let mut subset: Vec<usize> = (0..support).collect();
        let combos = b * (2 * b).pow(support as u32 - 1);
        loop {
            for mut idx in 0..combos {
                budget -= 1;
                if budget <= 0 {
                    return None;
                }
                let mut vals = Vec::with_capacity(support);
                vals.push(idx % b + 1);
                idx /= b;
                for _ in 1..support {
                    vals.push(nonzero[(idx % (2 * b)) as usize]);
                    idx /= 2 * b;
                }
                let mut acc = FieldElem::zero();
                for (&i, &x) in subset.iter().zip(&vals) {
                    acc = &acc + &(&diag[i] * &FieldElem::from_int(x * x));
                }
                if acc.is_zero() {
                    let mut w = vec![FieldElem::zero(); n];
                    for (&i, &x) in subset.iter().zip(&vals) {
                        w[i] = FieldElem::from_int(x);
                    }
                    return Some(w);
                }
            }
            if !next_subset(&mut subset, n) {
                break;
            }
        }
    }
    None
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

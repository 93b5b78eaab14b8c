//! Quadratic forms of type E6, E7, E8 and the pair of composition algebras whose Albert
//! form carries them.

use super::{anisotropy, default_order, AnisotropyVerdict, QuadraticForm};
use crate::field::{FieldCtx, FieldElem, SquareTest};
use crate::verify::CheckRecord;
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EType {
    E6,
    E7,
    E8,
}

impl EType {
    /// Number of free slots `s_2, s_3, ...` in `<1, s_2, ...>`.
    pub fn num_slots(self) -> usize {
        match self {
            EType::E6 => 2,
            EType::E7 => 3,
            EType::E8 => 5,
        }
    }
    pub fn v_dim(self) -> usize {
        2 * (self.num_slots() + 1)
    }
    pub fn x0_dim(self) -> usize {
        match self {
            EType::E6 => 8,
            EType::E7 => 16,
            EType::E8 => 32,
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            EType::E6 => "E6",
            EType::E7 => "E7",
            EType::E8 => "E8",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ETypeError {
    #[error("a = {0} is a square")]
    SquareA(String),
    #[error("{etype:?} needs {expected} slot entries, got {got}")]
    SlotCount { etype: EType, expected: usize, got: usize },
    #[error("slot entries must be nonzero")]
    ZeroSlot,
    #[error("slot product is {0}, expected -1")]
    ProductConstraintViolated(String),
    #[error("{0} is isotropic")]
    NotAnisotropic(String),
}

/// Output of [`build_e6e7e8_data`].
#[derive(Clone, Debug)]
pub struct ETypeData {
    pub etype: EType,
    pub ctx: FieldCtx,
    pub a: FieldElem,
    pub slots: Vec<FieldElem>,
    pub c1_params: Vec<FieldElem>,
    pub c2_params: Vec<FieldElem>,
    /// `N ⊗ <1, s_2, ...>` with `N = <<-a>>`.
    pub q: QuadraticForm,
    pub q_verdict: AnisotropyVerdict,
    pub c1_norm_verdict: AnisotropyVerdict,
    pub c2_norm_verdict: AnisotropyVerdict,
}

/// Albert form `q_1|skew ⊥ -q_2|skew` of the tensor product of `(p1)` and `(p2)`.
pub fn albert_diag(ctx: &FieldCtx, p1: &[FieldElem], p2: &[FieldElem]) -> QuadraticForm {
    let neg = |ps: &[FieldElem]| ps.iter().map(|x| -x).collect::<Vec<_>>();
    let n1 = QuadraticForm::pfister(ctx.clone(), &neg(p1)).expect("nonzero params");
    let n2 = QuadraticForm::pfister(ctx.clone(), &neg(p2)).expect("nonzero params");
    let diag = n1.diag()[1..].iter().cloned().chain(n2.diag()[1..].iter().map(|x| -x)).collect();
    QuadraticForm::new(ctx.clone(), diag).expect("nonzero entries")
}

/// Builds `q` and the composition parameters for the given type; `slots` lists
/// `s_2, s_3, ...` (for E8 all five, with product -1).
pub fn build_e6e7e8_data(
    ctx: &FieldCtx,
    etype: EType,
    a: &FieldElem,
    slots: &[FieldElem],
    search_bound: i64,
) -> Result<ETypeData, ETypeError> {
    if slots.len() != etype.num_slots() {
        return Err(ETypeError::SlotCount { etype, expected: etype.num_slots(), got: slots.len() });
    }
    if slots.iter().any(FieldElem::is_zero) {
        return Err(ETypeError::ZeroSlot);
    }
    match a.is_square() {
        Ok(SquareTest::No) => {}
        _ => return Err(ETypeError::SquareA(ctx.format(a))),
    }
    let s = |i: usize| &slots[i - 2];
    let c1_params = vec![a.clone(), -s(2), -s(3)];
    let c2_params = match etype {
        EType::E6 => vec![a.clone()],
        EType::E7 => vec![a.clone(), &(s(2) * s(3)) * s(4)],
        EType::E8 => {
            let prod = slots.iter().fold(FieldElem::one(), |acc, x| &acc * x);
            if prod != FieldElem::from_int(-1) {
                return Err(ETypeError::ProductConstraintViolated(ctx.format(&prod)));
            }
            vec![a.clone(), -&(s(4) * s(6)), -&(s(5) * s(6))]
        }
    };
    let n = QuadraticForm::pfister(ctx.clone(), &[-a]).expect("a nonzero");
    let mut inner = vec![FieldElem::one()];
    inner.extend_from_slice(slots);
    let q = n.tensor(&QuadraticForm::new(ctx.clone(), inner).expect("nonzero slots"));
    let order = default_order(ctx);
    let q_verdict = anisotropy(&q, &order, search_bound);
    let norm = |ps: &[FieldElem]| QuadraticForm::pfister(ctx.clone(), &ps.iter().map(|x| -x).collect::<Vec<_>>()).unwrap();
    let c1_norm_verdict = anisotropy(&norm(&c1_params), &order, search_bound);
    let c2_norm_verdict = anisotropy(&norm(&c2_params), &order, search_bound);
    for (name, v) in [("q", &q_verdict), ("norm of C1", &c1_norm_verdict), ("norm of C2", &c2_norm_verdict)] {
        if v.is_isotropic() {
            return Err(ETypeError::NotAnisotropic(name.into()));
        }
    }
    Ok(ETypeData { etype, ctx: ctx.clone(), a: a.clone(), slots: slots.to_vec(), c1_params, c2_params, q, q_verdict, c1_norm_verdict, c2_norm_verdict })
}

impl ETypeData {
    pub fn albert(&self) -> QuadraticForm {
        albert_diag(&self.ctx, &self.c1_params, &self.c2_params)
    }

    /// `q ⊥ 2H ~ q_A ⊥ H` compared by dimension and discriminant.
    pub fn witt_chain(&self) -> Result<(), String> {
        let qa = self.albert();
        if self.q.dim() + 2 != qa.dim() {
            return Err(format!("dim q = {}, dim q_A = {}", self.q.dim(), qa.dim()));
        }
        let ratio = &self.q.determinant() * &(-&qa.determinant()).inv().map_err(|e| e.to_string())?;
        match ratio.is_square() {
            Ok(SquareTest::Yes(_)) => Ok(()),
            _ => Err(format!("det q / (-det q_A) = {} is not a square", self.ctx.format(&ratio))),
        }
    }

    /// Desk-scale checks: anisotropy verdicts and the Witt chain.
    pub fn checks(&self) -> Vec<CheckRecord> {
        let verdict_record = |axiom: &str, anchor: &str, v: &AnisotropyVerdict| {
            let started = Instant::now();
            match v {
                AnisotropyVerdict::Anisotropic { certificate } => {
                    let detail = serde_json::to_string(certificate).unwrap_or_default();
                    CheckRecord::exact(axiom, anchor, 1, Ok(()), started).with_detail(detail)
                }
                AnisotropyVerdict::Isotropic { witness } => {
                    CheckRecord::exact(axiom, anchor, 1, Err(format!("zero at [{}]", witness.join(", "))), started)
                }
                AnisotropyVerdict::Unknown { reason } => CheckRecord::warn(axiom, anchor, reason.clone()),
            }
        };
        let started = Instant::now();
        let mut out = vec![
            verdict_record("q_anisotropic", "q = <<-a>> ⊗ <1, s_2, ...> has no nonzero zero", &self.q_verdict),
            verdict_record("c1_division", "norm of C1 anisotropic", &self.c1_norm_verdict),
            verdict_record("c2_division", "norm of C2 anisotropic", &self.c2_norm_verdict),
        ];
        out.push(CheckRecord::exact("witt_chain", "q ⊥ 2H ~ q_A ⊥ H (dimension, discriminant)", 1, self.witt_chain(), started));
        out
    }
}

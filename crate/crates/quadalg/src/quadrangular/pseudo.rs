//! Standard pseudo-quadratic spaces over a quadratic pair and their quadrangular algebras,
//! built through the module of row vectors `[x1, x2]` acted on by hermitian 2x2 matrices.

use super::{verdict_record, Provenance, QuadError, QuadrangularAlgebra};
use crate::composition::CompositionAlgebra;
use crate::field::FieldElem;
use crate::jmodule::SpecialJModule;
use crate::jordan::JordanCtx;
use crate::linalg::{vec_add, vec_scale, vec_sub, zero_vec, Vector};
use crate::quadform::{anisotropy, default_order, AnisotropyVerdict, QuadraticForm};
use crate::verify::{check_grid, CheckRecord};

/// `X = L^n` as a right `L`-space with `h(x, y) = sum conj(x_i) g_i y_i`, `g_i` skew.
#[derive(Clone, Debug)]
pub struct PseudoQuadraticSpace {
    l: CompositionAlgebra,
    gamma: Vec<Vector>,
    verdict: AnisotropyVerdict,
}

impl PseudoQuadraticSpace {
    pub fn new(l: CompositionAlgebra, gamma: Vec<Vector>, search_bound: i64) -> Result<Self, QuadError> {
        let d = l.dim();
        if d != 2 && d != 4 {
            return Err(QuadError::NotQuadraticPair(d));
        }
        if gamma.is_empty() {
            return Err(QuadError::InvalidPseudoQuadratic("rank zero".into()));
        }
        for (i, g) in gamma.iter().enumerate() {
            if g.len() != d || !g[0].is_zero() || g.iter().all(FieldElem::is_zero) {
                return Err(QuadError::InvalidPseudoQuadratic(format!("coefficient {i} is not a nonzero skew element")));
            }
        }
        let verdict = pi_verdict(&l, &gamma, search_bound);
        if let AnisotropyVerdict::Isotropic { witness } = &verdict {
            return Err(QuadError::AnisotropyWitness(witness.join(", ")));
        }
        Ok(PseudoQuadraticSpace { l, gamma, verdict })
    }

    pub fn l(&self) -> &CompositionAlgebra {
        &self.l
    }
    pub fn rank(&self) -> usize {
        self.gamma.len()
    }
    /// Dimension of `X` over the ground field.
    pub fn dim(&self) -> usize {
        self.rank() * self.l.dim()
    }
    pub fn verdict(&self) -> &AnisotropyVerdict {
        &self.verdict
    }

    fn coord<'a>(&self, x: &'a [FieldElem], i: usize) -> &'a [FieldElem] {
        let d = self.l.dim();
        &x[i * d..(i + 1) * d]
    }

    pub fn h(&self, x: &[FieldElem], y: &[FieldElem]) -> Vector {
        let mut out = zero_vec(self.l.dim());
        for (i, g) in self.gamma.iter().enumerate() {
            let t = self.l.mul(&self.l.mul(&self.l.conj(self.coord(x, i)), g), self.coord(y, i));
            out = vec_add(&out, &t);
        }
        out
    }
    /// `h(x, x)/2`.
    pub fn pi(&self, x: &[FieldElem]) -> Vector {
        vec_scale(&self.h(x, x), &FieldElem::half())
    }
    /// `x l`, coordinatewise.
    pub fn scalar_mul(&self, x: &[FieldElem], l: &[FieldElem]) -> Vector {
        (0..self.rank()).flat_map(|i| self.l.mul(self.coord(x, i), l)).collect()
    }

    /// Row vectors `[x1, x2]` over `X` with `j x = x j` and
    /// `(x, y) = [h(x_i, y_j)] - [h(y_i, x_j)]`.
    pub fn module(&self) -> Result<SpecialJModule, QuadError> {
        let jordan = JordanCtx::herm_mat2(self.l.clone())?;
        let n = self.dim();
        let one = self.l.one();
        let act = |k: usize, x: &[FieldElem]| -> Vector {
            let j = jordan.basis(k);
            let (a0, l, a1) = jordan.parts(&j);
            let (x1, x2) = x.split_at(n);
            let first = vec_add(&self.scalar_mul(x1, &vec_scale(&one, a0)), &self.scalar_mul(x2, l));
            let second = vec_add(&self.scalar_mul(x1, &self.l.conj(l)), &self.scalar_mul(x2, &vec_scale(&one, a1)));
            [first, second].concat()
        };
        let pair = |x: &[FieldElem], y: &[FieldElem]| -> Vector {
            let (x1, x2) = x.split_at(n);
            let (y1, y2) = y.split_at(n);
            let d00 = vec_sub(&self.h(x1, y1), &self.h(y1, x1));
            let d10 = vec_sub(&self.h(x2, y1), &self.h(y2, x1));
            let d11 = vec_sub(&self.h(x2, y2), &self.h(y2, x2));
            jordan.embed(&d00[0], &d10, &d11[0])
        };
        Ok(SpecialJModule::from_maps(jordan.clone(), 2 * n, act, Some(pair))?)
    }

    pub fn quadrangular(&self, search_bound: i64) -> Result<QuadrangularAlgebra, QuadError> {
        QuadrangularAlgebra::from_jmodule(&self.module()?, Provenance::PseudoQuadratic, search_bound)
    }

    /// Under `[x, 0] <-> x` and the half space `<-> L`, the constructed algebra is scalar
    /// multiplication with `h`, on basis elements.
    pub fn check_identification(&self, qa: &QuadrangularAlgebra) -> Vec<CheckRecord> {
        let n = self.dim();
        let d = self.l.dim();
        let x0 = qa.module_x0().expect("built from a module");
        let lift = |x: &[FieldElem]| x0.coords(&[x.to_vec(), zero_vec(n)].concat());
        let act = check_grid("pseudo_quadratic_action", "[x, 0] v = [x l, 0]", &[n, d], |ix| {
            let x = crate::linalg::unit_vec(n, ix[0]);
            let l = crate::linalg::unit_vec(d, ix[1]);
            (qa.act(&lift(&x), &l) != lift(&self.scalar_mul(&x, &l))).then(|| "action differs".into())
        });
        let h = check_grid("pseudo_quadratic_h", "h([x, 0], [y, 0]) = h(x, y)", &[n, n], |ix| {
            let x = crate::linalg::unit_vec(n, ix[0]);
            let y = crate::linalg::unit_vec(n, ix[1]);
            (qa.h(&lift(&x), &lift(&y)) != self.h(&x, &y)).then(|| "h differs".into())
        });
        vec![act, h, verdict_record("pi_anisotropic", &self.verdict)]
    }
}

/// Over a quadratic extension with skew generator `w`, `h(x, x) = w sum c_i N(x_i)` when
/// `g_i = c_i w`; over quaternions of rank one, `pi` vanishes only at zero iff `L` is division.
fn pi_verdict(l: &CompositionAlgebra, gamma: &[Vector], search_bound: i64) -> AnisotropyVerdict {
    let ctx = l.ctx();
    if l.dim() == 2 {
        let diag: Vec<FieldElem> = gamma.iter().flat_map(|g| l.norm_diag().into_iter().map(move |nd| &nd * &g[1])).collect();
        let form = QuadraticForm::new(ctx.clone(), diag).expect("nonzero coefficients");
        return anisotropy(&form, &default_order(ctx), search_bound);
    }
    if gamma.len() == 1 {
        return l.is_division(search_bound);
    }
    AnisotropyVerdict::Unknown { reason: "quaternion pseudo-quadratic forms of rank > 1 are only sampled".into() }
}

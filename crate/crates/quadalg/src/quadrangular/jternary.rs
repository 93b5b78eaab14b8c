//! J-ternary algebras: a special module with a skew form and a trilinear product.

use super::symbolic_cap;
use crate::field::FieldElem;
use crate::jmodule::{JModuleError, SpecialJModule};
use crate::linalg::{vec_add, vec_is_zero, vec_scale, vec_sub, zero_vec, Vector};
use crate::verify::{check_identity, CheckRecord, Eval, ModeKind, Status, VerifyOptions};

type Triple<'a> = dyn Fn(&[FieldElem], &[FieldElem], &[FieldElem]) -> Vector + Sync + 'a;

pub struct JTernary<'a> {
    module: &'a SpecialJModule,
    triple: Box<Triple<'a>>,
}

impl<'a> JTernary<'a> {
    pub fn new(module: &'a SpecialJModule, triple: impl Fn(&[FieldElem], &[FieldElem], &[FieldElem]) -> Vector + Sync + 'a) -> Self {
        JTernary { module, triple: Box::new(triple) }
    }

    /// The zero trilinear product.
    pub fn zero(module: &'a SpecialJModule) -> Self {
        let n = module.dim();
        JTernary { module, triple: Box::new(move |_, _, _| zero_vec(n)) }
    }

    pub fn module(&self) -> &SpecialJModule {
        self.module
    }

    pub fn triple(&self, x: &[FieldElem], y: &[FieldElem], z: &[FieldElem]) -> Vector {
        (self.triple)(x, y, z)
    }

    /// JT1-JT6 on the whole module, the cubic identities for `x` in `X0`, and a sampled
    /// search for `(x, x, x) = 0` with `x` in `X0` nonzero (a warning, not a failure).
    pub fn verify(&self, opts: &VerifyOptions) -> Result<Vec<CheckRecord>, JModuleError> {
        let m = self.module;
        if !m.has_skew_form() {
            return Err(JModuleError::NoSkewForm);
        }
        let j = m.jordan();
        let (nj, d) = (j.dim(), m.dim());
        let ctx = m.ctx();
        let sym = symbolic_cap(opts, d);
        let rnd = opts.with_mode(ModeKind::Random);
        let t = |x: &[FieldElem], y: &[FieldElem], z: &[FieldElem]| self.triple(x, y, z);
        let half = FieldElem::half();
        let mut out = Vec::new();
        out.push(check_identity("JT1", "j(x, y) = ((j x, y) + (x, j y))/2", ctx, &sym, &[nj, d, d], |a| {
            let (jj, x, y) = (&a[0], &a[1], &a[2]);
            let rhs = vec_scale(&vec_add(&m.pair(&m.act(jj, x), y), &m.pair(x, &m.act(jj, y))), &half);
            Eval::Residual(vec_sub(&j.mul(jj, &m.pair(x, y)), &rhs))
        }));
        out.push(check_identity("JT2", "j(x, y, z) = (j x, y, z) - (x, j y, z) + (x, y, j z)", ctx, &rnd, &[nj, d, d, d], |a| {
            let (jj, x, y, z) = (&a[0], &a[1], &a[2], &a[3]);
            let rhs = vec_add(&vec_sub(&t(&m.act(jj, x), y, z), &t(x, &m.act(jj, y), z)), &t(x, y, &m.act(jj, z)));
            Eval::Residual(vec_sub(&m.act(jj, &t(x, y, z)), &rhs))
        }));
        out.push(check_identity("JT3", "(x, y, z) = (z, y, x) - (x, z) y", ctx, &rnd, &[d, d, d], |a| {
            let (x, y, z) = (&a[0], &a[1], &a[2]);
            let rhs = vec_sub(&t(z, y, x), &m.act(&m.pair(x, z), y));
            Eval::Residual(vec_sub(&t(x, y, z), &rhs))
        }));
        out.push(check_identity("JT4", "(x, y, z) = (y, x, z) + (x, y) z", ctx, &rnd, &[d, d, d], |a| {
            let (x, y, z) = (&a[0], &a[1], &a[2]);
            let rhs = vec_add(&t(y, x, z), &m.act(&m.pair(x, y), z));
            Eval::Residual(vec_sub(&t(x, y, z), &rhs))
        }));
        out.push(check_identity("JT5", "((x, y, z), w) + (z, (x, y, w)) = (x, (z, w) y)", ctx, &rnd, &[d, d, d, d], |a| {
            let (x, y, z, w) = (&a[0], &a[1], &a[2], &a[3]);
            let lhs = vec_add(&m.pair(&t(x, y, z), w), &m.pair(z, &t(x, y, w)));
            Eval::Residual(vec_sub(&lhs, &m.pair(x, &m.act(&m.pair(z, w), y))))
        }));
        out.push(check_identity("JT6", "(x, y, (z, w, v)) = ((x, y, z), w, v) + (z, (y, x, w), v) + (z, w, (x, y, v))", ctx, &rnd, &[d, d, d, d, d], |a| {
            let (x, y, z, w, v) = (&a[0], &a[1], &a[2], &a[3], &a[4]);
            let rhs = vec_add(&vec_add(&t(&t(x, y, z), w, v), &t(z, &t(y, x, w), v)), &t(z, w, &t(x, y, v)));
            Eval::Residual(vec_sub(&t(x, y, &t(z, w, v)), &rhs))
        }));

        let mp = m.module_peirce()?;
        let three = FieldElem::from_int(3);
        let x0_sym = symbolic_cap(opts, mp.x0.dim());
        out.push(check_identity(
            "jternary_cubic",
            "v(x, x, x) = 3 (v x, x) x = 3 (v x, x, x) = (3/2)(x, x, v x) for x in X0",
            ctx,
            &x0_sym,
            &[mp.x0.dim(), j.half_dim()],
            |a| {
                let x = mp.x0.embed(&a[0]);
                let v = j.half_vec(&a[1]);
                let vx = m.act(&v, &x);
                let a1 = m.act(&v, &t(&x, &x, &x));
                let a2 = vec_scale(&m.act(&m.pair(&vx, &x), &x), &three);
                let a3 = vec_scale(&t(&vx, &x, &x), &three);
                let a4 = vec_scale(&t(&x, &x, &vx), &FieldElem::ratio(3, 2));
                Eval::Residual([vec_sub(&a1, &a2), vec_sub(&a1, &a3), vec_sub(&a1, &a4)].concat())
            },
        ));
        let mut nondeg = check_identity("jternary_nondegenerate", "(x, x, x) != 0 for x in X0 nonzero", ctx, &rnd, &[mp.x0.dim()], |a| {
            if vec_is_zero(&a[0]) {
                return Eval::Skip;
            }
            let x = mp.x0.embed(&a[0]);
            Eval::Residual(vec![if vec_is_zero(&t(&x, &x, &x)) { FieldElem::one() } else { FieldElem::zero() }])
        });
        if nondeg.status == Status::Fail {
            nondeg.status = Status::Warn;
            nondeg.detail = Some("degenerate: (x, x, x) vanishes on a nonzero element of X0".into());
        }
        out.push(nondeg);
        Ok(out)
    }
}

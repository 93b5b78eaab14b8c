//! Root groups `U1, ..., U4` of a Moufang quadrangle built from a Jordan algebra `J` with
//! supplementary idempotents `e0`, `e1`, an element `u` of `J_half` with `u^2 = 1`, and a
//! special `J`-module `X` with a skew form (possibly the zero module).
//!
//! `U2 = U4 = (J_half, +)` and `U1 = U3 = W = X0 x J0` with
//! `[a1, t1] + [a2, t2] = [a1 + a2, t1 + t2 + (a2, a1)/2]` and `-[a, t] = [-a, -t]`.
//!
//! # Collection
//!
//! Words are rewritten into the normal form `x1(w1) x2(v2) x3(w3) x4(v4)`. The commutator is
//! `[g, h] = g^-1 h^-1 g h`, so a relation `[g, y^-1] = c` reads `g^-1 y g y^-1 = c`, that is
//! `y g = g c y`. The stored transposition rules are therefore
//!
//! ```text
//! x3(b)  x1(a)  = x1(a)  x2(comm13(a, b))  x3(b)
//! x4(v2) x2(v1) = x2(v1) x3(comm24(v1, v2)) x4(v2)
//! x4(v)  x1(w)  = x1(w)  x2(c2) x3(c3) x4(v),   (c2, c3) = comm14(w, v)
//! ```
//!
//! and `x_{i+1} x_i = x_i x_{i+1}`. Adjacent letters of the same group are merged with the
//! group law. Every rewrite moves a letter of larger index to the right and only inserts
//! letters of strictly intermediate index, so collection terminates.

use crate::composition::CompositionAlgebra;
use crate::field::{FieldCtx, FieldElem};
use crate::jmodule::{JModuleError, SpecialJModule};
use crate::jordan::{JordanCtx, JordanError};
use crate::linalg::{unit_vec, vec_add, vec_is_zero, vec_neg, vec_scale, vec_sub, zero_vec, Subspace, Vector};
use crate::quadform::PointedQuadSpace;
use crate::quadrangular::etype::ETypeConstruction;
use crate::quadrangular::pseudo::PseudoQuadraticSpace;
use crate::quadrangular::{symbolic_cap, QuadError};
use crate::verify::{check_grid, check_identity, random_vec, CheckRecord, Eval, Status, VerifyOptions};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MoufangError {
    #[error("argument does not belong to this root system: {0}")]
    CtxMismatch(String),
    #[error("u must lie in J_half and square to the unit")]
    BadConnectingElement,
    #[error("module has no skew form")]
    NoSkewForm,
    #[error("{relation} differs from the closed form at {args}")]
    MismatchAgainstExample { relation: String, args: String },
    #[error(transparent)]
    Module(#[from] JModuleError),
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// An element `[a, t]` of `W`: `a` in `X0` (module coordinates), `t` in `J0` (Jordan coordinates).
#[derive(Clone, Debug, PartialEq)]
pub struct WElem {
    pub a: Vector,
    pub t: Vector,
}

impl WElem {
    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.a) && vec_is_zero(&self.t)
    }
}

/// The normal form `x1(w1) x2(v2) x3(w3) x4(v4)`; `v2`, `v4` in Jordan coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct RootWord {
    pub w1: WElem,
    pub v2: Vector,
    pub w3: WElem,
    pub v4: Vector,
}

/// A single root-group generator.
#[derive(Clone, Debug, PartialEq)]
pub enum Letter {
    X1(WElem),
    X2(Vector),
    X3(WElem),
    X4(Vector),
}

impl Letter {
    pub fn index(&self) -> usize {
        match self {
            Letter::X1(_) => 1,
            Letter::X2(_) => 2,
            Letter::X3(_) => 3,
            Letter::X4(_) => 4,
        }
    }
    fn is_trivial(&self) -> bool {
        match self {
            Letter::X1(w) | Letter::X3(w) => w.is_zero(),
            Letter::X2(v) | Letter::X4(v) => vec_is_zero(v),
        }
    }
}

/// Coefficients of the relations. The defaults are the construction's; other values exist
/// to exercise the checks with deliberately wrong data.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationCoefficients {
    /// `(a2, a1)` in the group law of `W`.
    pub w_correction: FieldElem,
    /// `(u a1, a2)` in `[U1, U3]`.
    pub comm13: FieldElem,
    /// `(v1 v2) e0` in `[U2, U4]`.
    pub comm24: FieldElem,
    /// `(u a, v(u a))` in the `U2` part of `[U1, U4]`.
    pub comm14_theta: FieldElem,
    /// `(U_u t) v` in the `U2` part of `[U1, U4]`.
    pub comm14_linear: FieldElem,
    /// `v(u a)` in the `U3` part of `[U1, U4]`.
    pub comm14_x0: FieldElem,
    /// `U_v U_u t` in the `U3` part of `[U1, U4]`.
    pub comm14_j0: FieldElem,
}

impl Default for RelationCoefficients {
    fn default() -> Self {
        RelationCoefficients {
            w_correction: FieldElem::half(),
            comm13: FieldElem::one(),
            comm24: FieldElem::from_int(2),
            comm14_theta: FieldElem::half(),
            comm14_linear: FieldElem::from_int(2),
            comm14_x0: FieldElem::one(),
            comm14_j0: FieldElem::one(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    module: SpecialJModule,
    u: Vector,
    x0: Subspace,
    j0: Subspace,
    coeffs: RelationCoefficients,
}

impl RootSystem {
    pub fn new(module: SpecialJModule, u: Vector) -> Result<Self, MoufangError> {
        if !module.has_skew_form() {
            return Err(MoufangError::NoSkewForm);
        }
        let j = module.jordan();
        let jp = j.peirce_decompose(&j.e1())?;
        if u.len() != j.dim() || !jp.half.contains(&u) || j.square(&u) != j.unit() {
            return Err(MoufangError::BadConnectingElement);
        }
        let x0 = module.module_peirce()?.x0;
        Ok(RootSystem { module, u, x0, j0: jp.zero, coeffs: RelationCoefficients::default() })
    }

    /// Uses the base point of the half space as `u`.
    pub fn with_base_point(module: SpecialJModule) -> Result<Self, MoufangError> {
        let j = module.jordan();
        let u = j.half_vec(j.half_space().base());
        Self::new(module, u)
    }

    /// `X = 0`; `W` reduces to `J0`.
    pub fn with_zero_module(jordan: JordanCtx) -> Result<Self, MoufangError> {
        Self::with_base_point(SpecialJModule::zero(jordan))
    }

    pub fn with_coefficients(mut self, coeffs: RelationCoefficients) -> Self {
        self.coeffs = coeffs;
        self
    }

    pub fn coefficients(&self) -> &RelationCoefficients {
        &self.coeffs
    }
    pub fn module(&self) -> &SpecialJModule {
        &self.module
    }
    pub fn jordan(&self) -> &JordanCtx {
        self.module.jordan()
    }
    pub fn ctx(&self) -> &FieldCtx {
        self.module.ctx()
    }
    pub fn u(&self) -> &[FieldElem] {
        &self.u
    }
    pub fn x0(&self) -> &Subspace {
        &self.x0
    }
    pub fn j0(&self) -> &Subspace {
        &self.j0
    }
    pub fn v_dim(&self) -> usize {
        self.jordan().half_dim()
    }

    /// `u^2 = 1`, invertibility of nonzero half-space elements, and the Peirce rules of the module.
    pub fn check_hypotheses(&self, opts: &VerifyOptions) -> Result<Vec<CheckRecord>, MoufangError> {
        let j = self.jordan();
        let started = Instant::now();
        let sq = if j.square(&self.u) == j.unit() { Ok(()) } else { Err("u^2 differs from the unit".to_string()) };
        let mut out = vec![CheckRecord::exact("u_square", "u^2 = 1", 1, sq, started), j.halfspace_invertibility_sample(opts)];
        if self.module.dim() > 0 {
            out.extend(self.module.check_peirce_rules()?);
        }
        Ok(out)
    }

    fn check_w(&self, w: &WElem) -> Result<(), MoufangError> {
        if w.a.len() != self.module.dim() || w.t.len() != self.jordan().dim() {
            return Err(MoufangError::CtxMismatch(format!("W element of shape ({}, {})", w.a.len(), w.t.len())));
        }
        Ok(())
    }
    fn check_v(&self, v: &[FieldElem]) -> Result<(), MoufangError> {
        if v.len() != self.jordan().dim() {
            return Err(MoufangError::CtxMismatch(format!("V element of length {}", v.len())));
        }
        Ok(())
    }

    /// Whether `w` lies in `X0 x J0`.
    pub fn contains_w(&self, w: &WElem) -> bool {
        self.check_w(w).is_ok() && self.x0.contains(&w.a) && self.j0.contains(&w.t)
    }
    /// Whether `v` lies in `J_half`.
    pub fn contains_v(&self, v: &[FieldElem]) -> bool {
        let j = self.jordan();
        self.check_v(v).is_ok() && v[0].is_zero() && v[v.len() - 1].is_zero() && j.mul(&j.e1(), v) == vec_scale(v, &FieldElem::half())
    }

    pub fn w_zero(&self) -> WElem {
        WElem { a: zero_vec(self.module.dim()), t: self.jordan().zero() }
    }
    pub fn v_zero(&self) -> Vector {
        self.jordan().zero()
    }
    /// `[a, t]` from `X0` and `J0` coordinates.
    pub fn w_from_coords(&self, a: &[FieldElem], t: &[FieldElem]) -> WElem {
        WElem { a: self.x0.embed(a), t: self.j0.embed(t) }
    }
    pub fn v_from_coords(&self, v: &[FieldElem]) -> Vector {
        self.jordan().half_vec(v)
    }
    pub fn w_coords(&self, w: &WElem) -> (Vector, Vector) {
        (self.x0.coords(&w.a), self.j0.coords(&w.t))
    }
    pub fn v_coords(&self, v: &[FieldElem]) -> Vector {
        self.jordan().parts(v).1.to_vec()
    }

    pub fn w_add(&self, w1: &WElem, w2: &WElem) -> Result<WElem, MoufangError> {
        self.check_w(w1)?;
        self.check_w(w2)?;
        Ok(self.add_w(w1, w2))
    }
    pub fn w_neg(&self, w: &WElem) -> Result<WElem, MoufangError> {
        self.check_w(w)?;
        Ok(neg_w(w))
    }
    /// `(-w1) + (-w2) + w1 + w2`.
    pub fn w_commutator(&self, w1: &WElem, w2: &WElem) -> Result<WElem, MoufangError> {
        self.check_w(w1)?;
        self.check_w(w2)?;
        Ok(self.add_w(&self.add_w(&self.add_w(&neg_w(w1), &neg_w(w2)), w1), w2))
    }

    fn add_w(&self, w1: &WElem, w2: &WElem) -> WElem {
        let corr = vec_scale(&self.module.pair(&w2.a, &w1.a), &self.coeffs.w_correction);
        WElem { a: vec_add(&w1.a, &w2.a), t: vec_add(&vec_add(&w1.t, &w2.t), &corr) }
    }

    /// `[x1(w1), x3(w2)^-1] = x2(comm13(w1, w2))`.
    pub fn comm13(&self, w1: &WElem, w2: &WElem) -> Result<Vector, MoufangError> {
        self.check_w(w1)?;
        self.check_w(w2)?;
        Ok(self.c13(w1, w2))
    }
    /// `[x2(v1), x4(v2)^-1] = x3(comm24(v1, v2))`.
    pub fn comm24(&self, v1: &[FieldElem], v2: &[FieldElem]) -> Result<WElem, MoufangError> {
        self.check_v(v1)?;
        self.check_v(v2)?;
        Ok(self.c24(v1, v2))
    }
    /// `[x1(w), x4(v)^-1] = x2(c2) x3(c3)`.
    pub fn comm14(&self, w: &WElem, v: &[FieldElem]) -> Result<(Vector, WElem), MoufangError> {
        self.check_w(w)?;
        self.check_v(v)?;
        Ok(self.c14(w, v))
    }

    fn c13(&self, w1: &WElem, w2: &WElem) -> Vector {
        let ua = self.module.act(&self.u, &w1.a);
        vec_scale(&self.module.pair(&ua, &w2.a), &self.coeffs.comm13)
    }

    fn c24(&self, v1: &[FieldElem], v2: &[FieldElem]) -> WElem {
        let j = self.jordan();
        let t = j.mul(&j.mul(v1, v2), &j.e0());
        WElem { a: zero_vec(self.module.dim()), t: vec_scale(&t, &self.coeffs.comm24) }
    }

    fn c14(&self, w: &WElem, v: &[FieldElem]) -> (Vector, WElem) {
        let j = self.jordan();
        let c = &self.coeffs;
        let ua = self.module.act(&self.u, &w.a);
        let vua = self.module.act(v, &ua);
        let uut = j.u_op(&self.u, &w.t);
        let v2 = vec_add(&vec_scale(&self.module.pair(&ua, &vua), &c.comm14_theta), &vec_scale(&j.mul(&uut, v), &c.comm14_linear));
        let w3 = WElem { a: vec_scale(&vua, &c.comm14_x0), t: vec_scale(&j.u_op(v, &uut), &c.comm14_j0) };
        (v2, w3)
    }

    pub fn identity(&self) -> RootWord {
        RootWord { w1: self.w_zero(), v2: self.v_zero(), w3: self.w_zero(), v4: self.v_zero() }
    }

    pub fn word_letters(&self, g: &RootWord) -> Vec<Letter> {
        vec![Letter::X1(g.w1.clone()), Letter::X2(g.v2.clone()), Letter::X3(g.w3.clone()), Letter::X4(g.v4.clone())]
    }

    fn check_word(&self, g: &RootWord) -> Result<(), MoufangError> {
        self.check_w(&g.w1)?;
        self.check_w(&g.w3)?;
        self.check_v(&g.v2)?;
        self.check_v(&g.v4)
    }

    fn check_letter(&self, l: &Letter) -> Result<(), MoufangError> {
        match l {
            Letter::X1(w) | Letter::X3(w) => self.check_w(w),
            Letter::X2(v) | Letter::X4(v) => self.check_v(v),
        }
    }

    pub fn word_mul(&self, g: &RootWord, h: &RootWord) -> Result<RootWord, MoufangError> {
        self.check_word(g)?;
        self.check_word(h)?;
        let mut letters = self.word_letters(g);
        letters.extend(self.word_letters(h));
        Ok(self.collect_unchecked(letters))
    }

    /// Collects `x4(-v4) x3(-w3) x2(-v2) x1(-w1)`.
    pub fn word_inv(&self, g: &RootWord) -> Result<RootWord, MoufangError> {
        self.check_word(g)?;
        Ok(self.collect_unchecked(vec![
            Letter::X4(vec_neg(&g.v4)),
            Letter::X3(neg_w(&g.w3)),
            Letter::X2(vec_neg(&g.v2)),
            Letter::X1(neg_w(&g.w1)),
        ]))
    }

    /// Normal form of an arbitrary product of generators.
    pub fn collect(&self, letters: Vec<Letter>) -> Result<RootWord, MoufangError> {
        for l in &letters {
            self.check_letter(l)?;
        }
        Ok(self.collect_unchecked(letters))
    }

    fn collect_unchecked(&self, mut word: Vec<Letter>) -> RootWord {
        word.retain(|l| !l.is_trivial());
        let mut i = 0;
        while i + 1 < word.len() {
            if word[i].index() < word[i + 1].index() {
                i += 1;
                continue;
            }
            let right = word.remove(i + 1);
            let left = word.remove(i);
            let mut repl = self.rewrite(left, right);
            repl.retain(|l| !l.is_trivial());
            word.splice(i..i, repl);
            i = i.saturating_sub(1);
        }
        let mut out = self.identity();
        for l in word {
            match l {
                Letter::X1(w) => out.w1 = w,
                Letter::X2(v) => out.v2 = v,
                Letter::X3(w) => out.w3 = w,
                Letter::X4(v) => out.v4 = v,
            }
        }
        out
    }

    /// Rewrites `left right` where `left.index() >= right.index()`.
    fn rewrite(&self, left: Letter, right: Letter) -> Vec<Letter> {
        use Letter::*;
        match (left, right) {
            (X1(p), X1(q)) => vec![X1(self.add_w(&p, &q))],
            (X3(p), X3(q)) => vec![X3(self.add_w(&p, &q))],
            (X2(p), X2(q)) => vec![X2(vec_add(&p, &q))],
            (X4(p), X4(q)) => vec![X4(vec_add(&p, &q))],
            (X3(b), X1(a)) => {
                let c = self.c13(&a, &b);
                vec![X1(a), X2(c), X3(b)]
            }
            (X4(v2), X2(v1)) => {
                let c = self.c24(&v1, &v2);
                vec![X2(v1), X3(c), X4(v2)]
            }
            (X4(v), X1(w)) => {
                let (c2, c3) = self.c14(&w, &v);
                vec![X1(w), X2(c2), X3(c3), X4(v)]
            }
            (l, r) => vec![r, l],
        }
    }

    pub fn random_w(&self, rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> WElem {
        let a = random_vec(self.ctx(), rng, self.x0.dim(), opts);
        let t = random_vec(self.ctx(), rng, self.j0.dim(), opts);
        self.w_from_coords(&a, &t)
    }
    pub fn random_v(&self, rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vector {
        self.v_from_coords(&random_vec(self.ctx(), rng, self.v_dim(), opts))
    }
    pub fn random_word(&self, rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> RootWord {
        RootWord { w1: self.random_w(rng, opts), v2: self.random_v(rng, opts), w3: self.random_w(rng, opts), v4: self.random_v(rng, opts) }
    }

    fn w_arity(&self) -> [usize; 2] {
        [self.x0.dim(), self.j0.dim()]
    }
    fn word_arity(&self) -> Vec<usize> {
        let [x, t] = self.w_arity();
        vec![x, t, self.v_dim(), x, t, self.v_dim()]
    }
    fn word_from_args(&self, a: &[Vector]) -> RootWord {
        RootWord {
            w1: self.w_from_coords(&a[0], &a[1]),
            v2: self.v_from_coords(&a[2]),
            w3: self.w_from_coords(&a[3], &a[4]),
            v4: self.v_from_coords(&a[5]),
        }
    }

    /// Group axioms for `W`, and centrality of commutators: they lie in `{0} x J0`.
    pub fn check_w_group(&self, opts: &VerifyOptions) -> Vec<CheckRecord> {
        let [x, t] = self.w_arity();
        let ctx = self.ctx();
        let w = |a: &[Vector], k: usize| self.w_from_coords(&a[2 * k], &a[2 * k + 1]);
        let diff = |p: &WElem, q: &WElem| [vec_sub(&p.a, &q.a), vec_sub(&p.t, &q.t)].concat();
        let assoc = check_identity("w_associative", "(w1 + w2) + w3 = w1 + (w2 + w3)", ctx, opts, &[x, t, x, t, x, t], |a| {
            let (p, q, r) = (w(a, 0), w(a, 1), w(a, 2));
            Eval::Residual(diff(&self.add_w(&self.add_w(&p, &q), &r), &self.add_w(&p, &self.add_w(&q, &r))))
        });
        let ident = check_identity("w_identity", "[0, 0] + w = w + [0, 0] = w", ctx, opts, &[x, t], |a| {
            let p = w(a, 0);
            let z = self.w_zero();
            Eval::Residual([diff(&self.add_w(&z, &p), &p), diff(&self.add_w(&p, &z), &p)].concat())
        });
        let inv = check_identity("w_inverse", "w + [-a, -t] = [-a, -t] + w = [0, 0]", ctx, opts, &[x, t], |a| {
            let p = w(a, 0);
            let z = self.w_zero();
            Eval::Residual([diff(&self.add_w(&p, &neg_w(&p)), &z), diff(&self.add_w(&neg_w(&p), &p), &z)].concat())
        });
        let j0 = &self.j0;
        let central = check_identity("w_commutator_central", "commutators of W lie in {0} x J0 and commute with W", ctx, opts, &[x, t, x, t, x, t], |a| {
            let (p, q, r) = (w(a, 0), w(a, 1), w(a, 2));
            let c = self.add_w(&self.add_w(&self.add_w(&neg_w(&p), &neg_w(&q)), &p), &q);
            let outside = if j0.contains(&c.t) { FieldElem::zero() } else { FieldElem::one() };
            let mut res = c.a.clone();
            res.push(outside);
            res.extend(diff(&self.add_w(&c, &r), &self.add_w(&r, &c)));
            Eval::Residual(res)
        });
        vec![assoc, ident, inv, central]
    }

    /// Identity, inverses and associativity of `word_mul` on normal forms. Symbolic mode
    /// falls back to sampling for modules of dimension above 8.
    pub fn check_word_group(&self, opts: &VerifyOptions) -> Vec<CheckRecord> {
        let opts = &symbolic_cap(opts, self.module.dim());
        let ar = self.word_arity();
        let ctx = self.ctx();
        let triple: Vec<usize> = ar.iter().chain(&ar).chain(&ar).copied().collect();
        let e = self.identity();
        let ident = check_identity("word_identity", "1 g = g 1 = g", ctx, opts, &ar, |a| {
            let g = self.word_from_args(a);
            let l = self.word_mul(&e, &g).expect("shapes");
            let r = self.word_mul(&g, &e).expect("shapes");
            Eval::Residual([word_diff(&l, &g), word_diff(&r, &g)].concat())
        });
        let inv = check_identity("word_inverse", "g g^-1 = g^-1 g = 1", ctx, opts, &ar, |a| {
            let g = self.word_from_args(a);
            let gi = self.word_inv(&g).expect("shapes");
            let l = self.word_mul(&g, &gi).expect("shapes");
            let r = self.word_mul(&gi, &g).expect("shapes");
            Eval::Residual([word_diff(&l, &e), word_diff(&r, &e)].concat())
        });
        let assoc = check_identity("word_associative", "(g h) k = g (h k)", ctx, opts, &triple, |a| {
            let (g, h, k) = (self.word_from_args(&a[0..6]), self.word_from_args(&a[6..12]), self.word_from_args(&a[12..18]));
            let l = self.word_mul(&self.word_mul(&g, &h).expect("shapes"), &k).expect("shapes");
            let r = self.word_mul(&g, &self.word_mul(&h, &k).expect("shapes")).expect("shapes");
            Eval::Residual(word_diff(&l, &r))
        });
        vec![ident, inv, assoc]
    }

    /// Input sizes of a relation in coordinates: `W` as `X0` then `J0` coordinates, `V` as
    /// half-space coordinates.
    pub fn relation_arity(&self, rel: Relation) -> [usize; 2] {
        let (w, v) = (self.w_param_dim(), self.v_dim());
        match rel {
            Relation::WAdd | Relation::Comm13 => [w, w],
            Relation::Comm24 => [v, v],
            Relation::Comm14 => [w, v],
        }
    }

    /// Output coordinates of a relation; `comm14` lists the `V` part, then the `W` part.
    pub fn relation_coords(&self, rel: Relation, p: &[FieldElem], q: &[FieldElem]) -> Vector {
        let k = self.x0.dim();
        let w = |c: &[FieldElem]| self.w_from_coords(&c[..k], &c[k..]);
        match rel {
            Relation::WAdd => self.w_param(&self.add_w(&w(p), &w(q))),
            Relation::Comm13 => self.v_coords(&self.c13(&w(p), &w(q))),
            Relation::Comm24 => self.w_param(&self.c24(&self.v_from_coords(p), &self.v_from_coords(q))),
            Relation::Comm14 => {
                let (c2, c3) = self.c14(&w(p), &self.v_from_coords(q));
                [self.v_coords(&c2), self.w_param(&c3)].concat()
            }
        }
    }

    /// `X0` coordinates followed by `J0` coordinates.
    pub fn w_param(&self, w: &WElem) -> Vector {
        let (a, t) = self.w_coords(w);
        [a, t].concat()
    }
    pub fn w_param_dim(&self) -> usize {
        self.x0.dim() + self.j0.dim()
    }
}

fn neg_w(w: &WElem) -> WElem {
    WElem { a: vec_neg(&w.a), t: vec_neg(&w.t) }
}

fn word_diff(g: &RootWord, h: &RootWord) -> Vector {
    [vec_sub(&g.w1.a, &h.w1.a), vec_sub(&g.w1.t, &h.w1.t), vec_sub(&g.v2, &h.v2), vec_sub(&g.w3.a, &h.w3.a), vec_sub(&g.w3.t, &h.w3.t), vec_sub(&g.v4, &h.v4)].concat()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    WAdd,
    Comm13,
    Comm24,
    Comm14,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::WAdd, Relation::Comm13, Relation::Comm24, Relation::Comm14];
    pub fn name(self) -> &'static str {
        match self {
            Relation::WAdd => "w_add",
            Relation::Comm13 => "comm13",
            Relation::Comm24 => "comm24",
            Relation::Comm14 => "comm14",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    QuadraticForm,
    Involutory,
    PseudoQuadratic,
    Etype,
}

/// A classical description of the root groups, to be compared with the construction.
#[derive(Clone, Copy, Debug)]
pub enum Specialization<'a> {
    /// `J` the reduced spin factor of a pointed quadratic space, `X = 0`; `W = k`, `V` the space.
    QuadraticForm(&'a PointedQuadSpace),
    /// `J` the hermitian 2x2 matrices over a quadratic pair `(L, conj)`, `X = 0`; `W = k`, `V = L`.
    Involutory(&'a CompositionAlgebra),
    /// The module of a pseudo-quadratic space. `W` is compared through
    /// `T = {(a, t) : t - pi(a) in k}` with `(a, t)(b, s) = (a + b, t + s + h(b, a))` and the
    /// bijection `(a, t) -> [a, t - pi(a)]`.
    PseudoQuadratic(&'a PseudoQuadraticSpace),
    /// A quadrangular algebra of type E6, E7 or E8; `W = X0 x k`.
    Etype(&'a ETypeConstruction),
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecializationReport {
    pub target: Target,
    pub records: Vec<CheckRecord>,
}

impl SpecializationReport {
    pub fn is_empty_diff(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }
    /// The first mismatch as an error.
    pub fn into_result(self) -> Result<Self, MoufangError> {
        match self.records.iter().find(|r| r.status != Status::Pass) {
            Some(r) => Err(MoufangError::MismatchAgainstExample { relation: r.axiom.clone(), args: r.witness.clone().unwrap_or_default() }),
            None => Ok(self),
        }
    }
}

type Map1<'a> = Box<dyn Fn(&[FieldElem]) -> Option<Vector> + Sync + 'a>;
type Map2<'a> = Box<dyn Fn(&[FieldElem], &[FieldElem]) -> Vector + Sync + 'a>;
type WEmbed<'a> = Box<dyn Fn(&[FieldElem]) -> Option<WElem> + Sync + 'a>;
type SplitMap2<'a> = Box<dyn Fn(&[FieldElem], &[FieldElem]) -> (Vector, Vector) + Sync + 'a>;

/// Closed forms in a native representation, with embeddings into the construction.
struct Model<'a> {
    /// Sample dimension for `W` and `V`.
    w_dim: usize,
    v_dim: usize,
    /// Sample to native `W` element.
    w_sample: Map1<'a>,
    /// Native `W` element to `X` and `J` vectors; `None` when outside the carrier.
    w_embed: WEmbed<'a>,
    v_embed: Map1<'a>,
    add: Map2<'a>,
    c13: Map2<'a>,
    c24: Map2<'a>,
    /// Native `V` part followed by native `W` part.
    c14: SplitMap2<'a>,
}

impl<'a> Specialization<'a> {
    pub fn target(&self) -> Target {
        match self {
            Specialization::QuadraticForm(_) => Target::QuadraticForm,
            Specialization::Involutory(_) => Target::Involutory,
            Specialization::PseudoQuadratic(_) => Target::PseudoQuadratic,
            Specialization::Etype(_) => Target::Etype,
        }
    }

    /// The root system of the construction for this input.
    pub fn root_system(&self) -> Result<RootSystem, MoufangError> {
        match self {
            Specialization::QuadraticForm(s) => RootSystem::with_zero_module(JordanCtx::reduced_spin((*s).clone())),
            Specialization::Involutory(l) => RootSystem::with_zero_module(JordanCtx::herm_mat2((*l).clone())?),
            Specialization::PseudoQuadratic(p) => RootSystem::with_base_point(p.module()?),
            Specialization::Etype(c) => RootSystem::with_base_point(c.module().clone()),
        }
    }

    fn model<'b>(&self, rs: &'b RootSystem) -> Model<'b>
    where
        'a: 'b,
    {
        let j = rs.jordan();
        let scalar_w = |t: &FieldElem| WElem { a: rs.w_zero().a, t: j.embed(t, &zero_vec(j.half_dim()), &FieldElem::zero()) };
        match *self {
            Specialization::QuadraticForm(s) => {
                let q = move |v: &[FieldElem]| s.form().eval(v).expect("length");
                let f = move |v: &[FieldElem], w: &[FieldElem]| s.form().polarize(v, w).expect("length");
                Model {
                    w_dim: 1,
                    v_dim: s.dim(),
                    w_sample: Box::new(|p| Some(p.to_vec())),
                    w_embed: Box::new(move |t| Some(scalar_w(&t[0]))),
                    v_embed: Box::new(move |v| Some(j.half_vec(v))),
                    add: Box::new(|a, b| vec![&a[0] + &b[0]]),
                    c13: Box::new(move |_, _| zero_vec(s.dim())),
                    c24: Box::new(move |v1, v2| vec![f(v1, v2)]),
                    c14: Box::new(move |t, v| (vec_scale(v, &t[0]), vec![&q(v) * &t[0]])),
                }
            }
            Specialization::Involutory(l) => {
                let d = l.dim();
                let scalar = move |x: &[FieldElem]| x[1..].iter().all(FieldElem::is_zero).then(|| x[0].clone());
                Model {
                    w_dim: 1,
                    v_dim: d,
                    w_sample: Box::new(move |p| Some(vec_scale(&l.one(), &p[0]))),
                    w_embed: Box::new(move |t| scalar(t).map(|s| scalar_w(&s))),
                    v_embed: Box::new(move |v| Some(j.half_vec(v))),
                    add: Box::new(vec_add),
                    c13: Box::new(move |_, _| zero_vec(d)),
                    c24: Box::new(move |l1, l2| vec_add(&l.mul(&l.conj(l1), l2), &l.mul(&l.conj(l2), l1))),
                    c14: Box::new(move |a, lv| (l.mul(a, lv), l.mul(&l.mul(&l.conj(lv), a), lv))),
                }
            }
            Specialization::PseudoQuadratic(p) => {
                let l = p.l();
                let (n, d) = (p.dim(), l.dim());
                let split = move |w: &[FieldElem]| (w[..n].to_vec(), w[n..].to_vec());
                Model {
                    w_dim: n + 1,
                    v_dim: d,
                    w_sample: Box::new(move |s| Some([s[..n].to_vec(), vec_add(&p.pi(&s[..n]), &vec_scale(&l.one(), &s[n]))].concat())),
                    w_embed: Box::new(move |w| {
                        let (a, t) = split(w);
                        let s = vec_sub(&t, &p.pi(&a));
                        if !s[1..].iter().all(FieldElem::is_zero) {
                            return None;
                        }
                        Some(WElem { a: [a, zero_vec(n)].concat(), t: j.embed(&s[0], &zero_vec(j.half_dim()), &FieldElem::zero()) })
                    }),
                    v_embed: Box::new(move |v| Some(j.half_vec(v))),
                    add: Box::new(move |w1, w2| {
                        let ((a, t), (b, s)) = (split(w1), split(w2));
                        [vec_add(&a, &b), vec_add(&vec_add(&t, &s), &p.h(&b, &a))].concat()
                    }),
                    c13: Box::new(move |w1, w2| p.h(&w1[..n], &w2[..n])),
                    c24: Box::new(move |l1, l2| [zero_vec(n), vec_add(&l.mul(&l.conj(l1), l2), &l.mul(&l.conj(l2), l1))].concat()),
                    c14: Box::new(move |w, lv| {
                        let (a, t) = split(w);
                        (l.mul(&t, lv), [p.scalar_mul(&a, lv), l.mul(&l.mul(&l.conj(lv), &t), lv)].concat())
                    }),
                }
            }
            Specialization::Etype(c) => {
                let qa = c.quadrangular();
                let x0 = qa.module_x0().expect("built from a module").clone();
                let n = qa.x0_dim();
                Model {
                    w_dim: n + 1,
                    v_dim: qa.v_dim(),
                    w_sample: Box::new(|p| Some(p.to_vec())),
                    w_embed: Box::new(move |w| Some(WElem { a: x0.embed(&w[..n]), t: j.embed(&w[n], &zero_vec(j.half_dim()), &FieldElem::zero()) })),
                    v_embed: Box::new(move |v| Some(j.half_vec(v))),
                    // `g` of the remark is `f(h(a2, a1), 1)/2` in the argument order used here
                    add: Box::new(move |w1, w2| {
                        let mut out = vec_add(&w1[..n], &w2[..n]);
                        out.push(&(&w1[n] + &w2[n]) + &qa.g(&w2[..n], &w1[..n]));
                        out
                    }),
                    c13: Box::new(move |w1, w2| qa.h(&w1[..n], &w2[..n])),
                    c24: Box::new(move |v1, v2| {
                        let mut out = zero_vec(n);
                        out.push(qa.f(v1, v2));
                        out
                    }),
                    c14: Box::new(move |w, v| {
                        let (a, t) = (&w[..n], &w[n]);
                        let v2 = vec_add(&qa.theta(a, v), &vec_scale(v, t));
                        let mut w3 = qa.act(a, v);
                        w3.push(&qa.q(v) * t);
                        (v2, w3)
                    }),
                }
            }
        }
    }

    /// Compares `rs` with the closed forms on all pairs of basis arguments and on seeded
    /// random (or symbolic) arguments.
    pub fn specialize(&self, rs: &RootSystem, opts: &VerifyOptions) -> Result<SpecializationReport, MoufangError> {
        let reference = self.root_system()?;
        if rs.module().dim() != reference.module().dim() || rs.jordan().dim() != reference.jordan().dim() || rs.module().ctx() != reference.module().ctx() {
            return Err(MoufangError::CtxMismatch(format!("root system does not match the {:?} input", self.target())));
        }
        let m = self.model(rs);
        let (wd, vd) = (m.w_dim, m.v_dim);
        let ctx = rs.ctx();
        let w_of = |p: &[FieldElem]| (m.w_sample)(p).expect("sample");
        let w_eq = |w: &WElem, native: &[FieldElem]| (m.w_embed)(native).is_some_and(|e| &e == w);
        let v_eq = |v: &[FieldElem], native: &[FieldElem]| (m.v_embed)(native).is_some_and(|e| e == v);
        let emb_w = |native: &[FieldElem]| (m.w_embed)(native).expect("sampled W element in the carrier");
        let emb_v = |native: &[FieldElem]| (m.v_embed)(native).expect("V element");

        let eval = |rel: Relation, p: &[FieldElem], q: &[FieldElem]| -> bool {
            match rel {
                Relation::WAdd => {
                    let (a, b) = (w_of(p), w_of(q));
                    w_eq(&rs.add_w(&emb_w(&a), &emb_w(&b)), &(m.add)(&a, &b))
                }
                Relation::Comm13 => {
                    let (a, b) = (w_of(p), w_of(q));
                    v_eq(&rs.c13(&emb_w(&a), &emb_w(&b)), &(m.c13)(&a, &b))
                }
                Relation::Comm24 => w_eq(&rs.c24(&emb_v(p), &emb_v(q)), &(m.c24)(p, q)),
                Relation::Comm14 => {
                    let a = w_of(p);
                    let (c2, c3) = rs.c14(&emb_w(&a), &emb_v(q));
                    let (e2, e3) = (m.c14)(&a, q);
                    v_eq(&c2, &e2) && w_eq(&c3, &e3)
                }
            }
        };
        let arity = |rel: Relation| match rel {
            Relation::WAdd | Relation::Comm13 => [wd, wd],
            Relation::Comm24 => [vd, vd],
            Relation::Comm14 => [wd, vd],
        };
        let mut records = Vec::new();
        for rel in Relation::ALL {
            let [r0, r1] = arity(rel);
            let anchor = anchor(self.target(), rel);
            records.push(check_grid(&format!("{}_basis", rel.name()), anchor, &[r0, r1], |ix| {
                (!eval(rel, &unit_vec(r0, ix[0]), &unit_vec(r1, ix[1]))).then(|| "differs from the closed form".into())
            }));
            records.push(check_identity(rel.name(), anchor, ctx, opts, &[r0, r1], |a| {
                Eval::Residual(vec![if eval(rel, &a[0], &a[1]) { FieldElem::zero() } else { FieldElem::one() }])
            }));
        }
        Ok(SpecializationReport { target: self.target(), records })
    }
}

fn anchor(target: Target, rel: Relation) -> &'static str {
    use Relation::*;
    use Target::*;
    match (target, rel) {
        (QuadraticForm, WAdd) => "t1 + t2",
        (QuadraticForm, Comm13) => "[x1(t1), x3(t2)^-1] = 1",
        (QuadraticForm, Comm24) => "[x2(v1), x4(v2)^-1] = x3(f(v1, v2))",
        (QuadraticForm, Comm14) => "[x1(t), x4(v)^-1] = x2(t v) x3(q(v) t)",
        (Involutory, WAdd) => "a1 + a2",
        (Involutory, Comm13) => "[x1(a1), x3(a2)^-1] = 1",
        (Involutory, Comm24) => "[x2(l1), x4(l2)^-1] = x3(conj(l1) l2 + conj(l2) l1)",
        (Involutory, Comm14) => "[x1(a), x4(l)^-1] = x2(a l) x3(conj(l) a l)",
        (PseudoQuadratic, WAdd) => "(a, t)(b, s) = (a + b, t + s + h(b, a))",
        (PseudoQuadratic, Comm13) => "[x1(a1, t1), x3(a2, t2)^-1] = x2(h(a1, a2))",
        (PseudoQuadratic, Comm24) => "[x2(l1), x4(l2)^-1] = x3(0, conj(l1) l2 + conj(l2) l1)",
        (PseudoQuadratic, Comm14) => "[x1(a, t), x4(l)^-1] = x2(t l) x3(a l, conj(l) t l)",
        (Etype, WAdd) => "[a1 + a2, t1 + t2 + f(h(a2, a1), 1)/2]",
        (Etype, Comm13) => "[x1(a1, t1), x3(a2, t2)^-1] = x2(h(a1, a2))",
        (Etype, Comm24) => "[x2(v1), x4(v2)^-1] = x3(0, f(v1, v2))",
        (Etype, Comm14) => "[x1(a, t), x4(v)^-1] = x2(theta(a, v) + t v) x3(a v, q(v) t)",
    }
}

/// `specialize` with the root system built from the same input.
pub fn specialize(spec: &Specialization<'_>, opts: &VerifyOptions) -> Result<SpecializationReport, MoufangError> {
    let rs = spec.root_system()?;
    spec.specialize(&rs, opts)
}

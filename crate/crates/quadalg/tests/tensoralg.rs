use quadalg::composition::CompositionAlgebra;
use quadalg::field::{FieldCtx, FieldElem};
use quadalg::linalg::{unit_vec, vec_add, vec_scale, vec_sub, Matrix, Subspace, Vector};
use quadalg::quadform::{build_e6e7e8_data, orthogonal_complement, EType, QuadraticForm};
use quadalg::tensoralg::{SkewElem, TensorAlgebra, TensorError};
use quadalg::verify::{check_identity, Eval, Status, VerifyOptions};

fn rationals(c1: &[i64], c2: &[i64]) -> TensorAlgebra {
    let q = FieldCtx::Rationals;
    let p = |xs: &[i64]| xs.iter().map(|&x| FieldElem::from_int(x)).collect::<Vec<_>>();
    TensorAlgebra::new(CompositionAlgebra::new(q.clone(), p(c1)).unwrap(), CompositionAlgebra::new(q, p(c2)).unwrap()).unwrap()
}

fn e6() -> TensorAlgebra {
    rationals(&[-1, -1, -1], &[-1])
}
fn e7() -> TensorAlgebra {
    rationals(&[-1, -1, -1], &[-1, 3])
}
fn e8() -> TensorAlgebra {
    rationals(&[-1, -2, -3], &[-1, 5, -7])
}

fn e8_function_field() -> TensorAlgebra {
    let ctx = FieldCtx::function_field(["s2", "s3", "s4", "s5"]);
    let s: Vec<FieldElem> = (0..4).map(|i| ctx.var(i)).collect();
    let prod = s.iter().fold(FieldElem::one(), |a, x| &a * x);
    let mut slots = s;
    slots.push(-&prod.inv().unwrap());
    let data = build_e6e7e8_data(&ctx, EType::E8, &FieldElem::from_int(-1), &slots, 4).unwrap();
    TensorAlgebra::from_etype(&data)
}

/// Product computed from pure tensors with the factors' own multiplications.
fn oracle_mul(t: &TensorAlgebra, x: &[FieldElem], y: &[FieldElem]) -> Vector {
    let (d1, d2) = (t.c1().dim(), t.c2().dim());
    let mut out = vec![FieldElem::zero(); d1 * d2];
    for a in 0..d1 * d2 {
        for b in 0..d1 * d2 {
            if x[a].is_zero() || y[b].is_zero() {
                continue;
            }
            let left = t.c1().mul(&t.c1().basis(a / d2), &t.c1().basis(b / d2));
            let right = t.c2().mul(&t.c2().basis(a % d2), &t.c2().basis(b % d2));
            let coeff = &x[a] * &y[b];
            out = vec_add(&out, &vec_scale(&t.pure(&left, &right), &coeff));
        }
    }
    out
}

fn record_ok(r: quadalg::verify::CheckRecord) {
    assert_eq!(r.status, Status::Pass, "{}: {:?}", r.axiom, r.witness);
}

#[test]
fn skew_dimensions() {
    for (t, d) in [(e6(), 8), (e7(), 10), (e8(), 14)] {
        assert_eq!(t.skew_dim(), d);
        assert_eq!(t.skew_dim(), t.c1().dim() + t.c2().dim() - 2);
        assert_eq!(t.skew_basis().len(), d);
    }
}

#[test]
fn product_matches_pure_tensor_oracle_and_involution_reverses() {
    let opts = VerifyOptions::random(7, 500);
    for t in [e6(), e7()] {
        record_ok(check_identity("oracle", "product", t.ctx(), &opts, &[t.dim(), t.dim()], |a| {
            Eval::Residual(vec_sub(&t.mul(&a[0], &a[1]), &oracle_mul(&t, &a[0], &a[1])))
        }));
        record_ok(check_identity("anti", "involution", t.ctx(), &opts, &[t.dim(), t.dim()], |a| {
            let lhs = t.t_involution(&t.mul(&a[0], &a[1]));
            let rhs = t.mul(&t.t_involution(&a[1]), &t.t_involution(&a[0]));
            Eval::Residual(vec_sub(&lhs, &rhs))
        }));
    }
    let t = e6();
    assert_eq!(t.t_multiply(&t.one(), &[FieldElem::one()]), Err(TensorError::AlgebraMismatch { expected: 16, got: 1 }));
}

#[test]
fn albert_values_with_symbolic_a() {
    let ctx = FieldCtx::function_field(["a"]);
    let a = ctx.var(0);
    let c1 = CompositionAlgebra::new(ctx.clone(), vec![a.clone(), FieldElem::from_int(-1), FieldElem::from_int(-1)]).unwrap();
    let c2 = CompositionAlgebra::new(ctx.clone(), vec![a.clone()]).unwrap();
    let t = TensorAlgebra::new(c1, c2).unwrap();
    let e0 = SkewElem { s1: t.c1().basis(1), s2: t.c2().basis(1) };
    assert!(t.albert(&e0).is_zero());
    let i1 = SkewElem { s1: t.c1().basis(1), s2: vec![FieldElem::zero(); 2] };
    assert_eq!(t.albert(&i1), -&a);
    assert_eq!(t.sharp(&e0), SkewElem { s1: t.c1().basis(1), s2: vec_scale(&t.c2().basis(1), &FieldElem::from_int(-1)) });
    assert_eq!(t.sharp(&t.sharp(&e0)), e0);
}

#[test]
fn albert_form_restricted_to_v_is_definite_in_e6() {
    let t = e6();
    let form = t.albert_form();
    let basis = t.skew_basis();
    let coords: Vec<Vector> = basis.iter().map(|s| t.skew_coords(s)).collect();
    let i1 = coords[0].clone();
    let i2 = coords[7].clone();
    let v = orthogonal_complement(&form.gram(), &[i1, i2]).unwrap();
    assert_eq!(v.len(), 6);
    let rows: Vec<Vector> =
        v.iter().map(|x| v.iter().map(|y| t.albert_bil(&t.skew_from_coords(x), &t.skew_from_coords(y))).collect()).collect();
    let gram = Matrix::from_rows(&rows);
    let diag = quadalg::quadform::orthogonalize(&gram, &(0..6).map(|i| unit_vec(6, i)).collect::<Vec<_>>()).unwrap();
    let values: Vec<FieldElem> = diag.iter().map(|w| &quadalg::linalg::dot(w, &gram.mul_vec(w)) * &FieldElem::half()).collect();
    assert!(values.iter().all(|x| x.rational_sign() == Some(1)));
    assert!(QuadraticForm::new(FieldCtx::Rationals, values).is_ok());
}

#[test]
fn inverse_cancels() {
    let opts = VerifyOptions::random(11, 500);
    for t in [e6(), e7(), e8()] {
        record_ok(check_identity("inverse", "s(s^-1 x) = x", t.ctx(), &opts, &[t.skew_dim(), t.dim()], |a| {
            let s = t.skew_from_coords(&a[0]);
            match t.s_inverse(&s) {
                Err(_) => Eval::Skip,
                Ok(inv) => {
                    let inner = t.mul(&t.skew_to_tensor(&inv), &a[1]);
                    Eval::Residual(vec_sub(&t.mul(&t.skew_to_tensor(&s), &inner), &a[1]))
                }
            }
        }));
    }
    let t = e6();
    let e0 = SkewElem { s1: t.c1().basis(1), s2: t.c2().basis(1) };
    assert_eq!(t.s_inverse(&e0), Err(TensorError::IsotropicSkew));
}

#[test]
fn left_multiplication_matrices() {
    let t = e7();
    assert_eq!(t.lmul_matrix(&t.one()), Matrix::identity(t.dim()));
    let opts = VerifyOptions::random(3, 100);
    record_ok(check_identity("lmul", "L_s x = s x", t.ctx(), &opts, &[t.dim(), t.dim()], |a| {
        Eval::Residual(vec_sub(&t.lmul_matrix(&a[0]).mul_vec(&a[1]), &t.mul(&a[0], &a[1])))
    }));
    for t in [e6(), e7(), e8()] {
        record_ok(check_identity("lmul_sandwich", "L_{s1 s2 s1} = L_s1 L_s2 L_s1", t.ctx(), &opts, &[t.skew_dim(), t.skew_dim()], |a| {
            let s1 = t.skew_to_tensor(&t.skew_from_coords(&a[0]));
            let s2 = t.skew_to_tensor(&t.skew_from_coords(&a[1]));
            let prod = t.mul(&t.mul(&s1, &s2), &s1);
            let (l1, l2) = (t.lmul_matrix(&s1), t.lmul_matrix(&s2));
            let diff = t.lmul_matrix(&prod).sub(&l1.mul(&l2).mul(&l1));
            Eval::Residual(diff.columns().concat())
        }));
    }
}

fn flexible(t: &TensorAlgebra, opts: &VerifyOptions) -> quadalg::verify::CheckRecord {
    check_identity("skew_flexible", "s1(s2 s1) = (s1 s2)s1", t.ctx(), opts, &[t.skew_dim(), t.skew_dim()], |a| {
        let s1 = t.skew_to_tensor(&t.skew_from_coords(&a[0]));
        let s2 = t.skew_to_tensor(&t.skew_from_coords(&a[1]));
        Eval::Residual(vec_sub(&t.mul(&s1, &t.mul(&s2, &s1)), &t.mul(&t.mul(&s1, &s2), &s1)))
    })
}

#[test]
fn skew_flexibility() {
    record_ok(flexible(&e6(), &VerifyOptions::symbolic()));
    let opts = VerifyOptions::random(5, 1000);
    record_ok(flexible(&e7(), &opts));
    record_ok(flexible(&e8(), &opts));
    record_ok(flexible(&e8_function_field(), &VerifyOptions::random(5, 50).with_degree_bound(0)));
}

#[test]
fn skew_pair_values() {
    let t = e6();
    let i1 = t.pure(&t.c1().basis(1), &t.c2().one());
    // 1·conj(i1) - i1·conj(1) = -i1 - i1.
    let s = t.skew_pair(&t.one(), &i1).unwrap();
    assert_eq!(t.skew_to_tensor(&s), vec_scale(&i1, &FieldElem::from_int(-2)));
    let opts = VerifyOptions::random(9, 200);
    for t in [e6(), e7(), e8()] {
        record_ok(check_identity("pair_alternating", "(x, x) = 0", t.ctx(), &opts, &[t.dim()], |a| {
            Eval::Residual(t.skew_coords(&t.skew_pair(&a[0], &a[0]).unwrap()))
        }));
        record_ok(check_identity("pair_antisymmetric", "(x, y) = -(y, x)", t.ctx(), &opts, &[t.dim(), t.dim()], |a| {
            let p = t.skew_coords(&t.skew_pair(&a[0], &a[1]).unwrap());
            let q = t.skew_coords(&t.skew_pair(&a[1], &a[0]).unwrap());
            Eval::Residual(vec_add(&p, &q))
        }));
    }
}

/// `psi(x, y) = x conj(y) - y conj(x)` in one factor.
fn psi(c: &CompositionAlgebra, x: &[FieldElem], y: &[FieldElem]) -> Vector {
    vec_sub(&c.mul(x, &c.conj(y)), &c.mul(y, &c.conj(x)))
}

fn pure_pair_residual(t: &TensorAlgebra, a: &[Vector], scale: FieldElem) -> Vector {
    let (x1, x2, y1, y2) = (&a[0], &a[1], &a[2], &a[3]);
    let lhs = t.skew_to_tensor(&t.skew_pair(&t.pure(x1, x2), &t.pure(y1, y2)).unwrap());
    let first = t.pure(&vec_scale(&psi(t.c1(), x1, y1), &t.c2().bil(x2, y2)), &t.c2().one());
    let second = t.pure(&t.c1().one(), &vec_scale(&psi(t.c2(), x2, y2), &t.c1().bil(x1, y1)));
    vec_sub(&lhs, &vec_scale(&vec_add(&first, &second), &scale))
}

#[test]
fn skew_pair_on_pure_tensors() {
    for t in [e6(), e7()] {
        let shape = [t.c1().dim(), t.c2().dim(), t.c1().dim(), t.c2().dim()];
        record_ok(check_identity("pair_pure", "(x1⊗x2, y1⊗y2) = ½(f2 psi1 ⊗ 1 + 1 ⊗ f1 psi2)", t.ctx(), &VerifyOptions::symbolic(), &shape, |a| {
            Eval::Residual(pure_pair_residual(&t, a, FieldElem::half()))
        }));
        let printed = check_identity("pair_pure_printed", "without the factor ½", t.ctx(), &VerifyOptions::symbolic(), &shape, |a| {
            Eval::Residual(pure_pair_residual(&t, a, FieldElem::one()))
        });
        assert_eq!(printed.status, Status::Fail);
    }
}

#[test]
fn peirce_projection() {
    let t = e6();
    let a = FieldElem::from_int(-1);
    let i1i2 = t.pure(&t.c1().basis(1), &t.c2().basis(1));
    let (x0, _) = t.peirce_project(&a, &t.one());
    let expected = vec_scale(&vec_add(&t.one(), &vec_scale(&i1i2, &a.inv().unwrap())), &FieldElem::half());
    assert_eq!(x0, expected);
    let opts = VerifyOptions::random(2, 100);
    record_ok(check_identity("peirce_complete", "x0 + x1 = x", t.ctx(), &opts, &[t.dim()], |v| {
        let (x0, x1) = t.peirce_project(&a, &v[0]);
        Eval::Residual(vec_sub(&vec_add(&x0, &x1), &v[0]))
    }));
    for (t, d) in [(e6(), 8), (e7(), 16), (e8(), 32)] {
        let images: Vec<Vector> = (0..t.dim()).map(|i| t.peirce_project(&a, &unit_vec(t.dim(), i)).0).collect();
        assert_eq!(Subspace::span(t.dim(), &images).dim(), d);
    }
}

#[test]
fn witt_index_one_frame() {
    for t in [e6(), e7(), e8(), e8_function_field()] {
        let a = t.c1().params()[0].clone();
        assert_eq!(t.c2().params()[0], a);
        let form = t.albert_form();
        let n1 = t.c1().dim() - 1;
        let i1 = unit_vec(t.skew_dim(), 0);
        let i2 = unit_vec(t.skew_dim(), n1);
        let v = orthogonal_complement(&form.gram(), &[i1.clone(), i2.clone()]).unwrap();
        assert_eq!(v.len(), t.skew_dim() - 2);
        let u = t.skew_from_coords(&v[0]);
        let qu = t.albert(&u);
        assert!(!qu.is_zero());
        let e0 = t.skew_from_coords(&vec_add(&i1, &i2));
        let e1 = t.skew_from_coords(&vec_scale(&vec_sub(&i1, &i2), &(&qu * &(&FieldElem::from_int(4) * &a).inv().unwrap())));
        assert!(t.albert(&e0).is_zero());
        assert!(t.albert(&e1).is_zero());
        assert_eq!(t.albert_bil(&e0, &e1), -&qu);
        for w in &v {
            let w = t.skew_from_coords(w);
            assert!(t.albert_bil(&e0, &w).is_zero());
            assert!(t.albert_bil(&e1, &w).is_zero());
        }
    }
}

#[test]
fn bundled_checks_pass() {
    for t in [e6(), e7()] {
        let recs = t.checks(&VerifyOptions::random(2, 200));
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().all(|r| r.passed()), "{recs:?}");
    }
    let recs = e6().checks(&VerifyOptions::symbolic());
    assert!(recs.iter().all(|r| r.passed() && r.mode == "symbolic"), "{recs:?}");
}

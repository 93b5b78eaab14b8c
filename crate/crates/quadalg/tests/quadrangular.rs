use quadalg::composition::CompositionAlgebra;
use quadalg::field::{FieldCtx, FieldElem};
use quadalg::jmodule::SpecialJModule;
use quadalg::linalg::{unit_vec, vec_add, vec_scale, vec_sub, zero_vec, Matrix, Vector};
use quadalg::quadform::{build_e6e7e8_data, EType};
use quadalg::quadrangular::etype::ETypeConstruction;
use quadalg::quadrangular::jternary::JTernary;
use quadalg::quadrangular::pseudo::PseudoQuadraticSpace;
use quadalg::quadrangular::{Provenance, QuadError, QuadrangularAlgebra};
use quadalg::verify::{all_pass, random_vec, CheckRecord, Status, VerifyOptions};

fn ints(v: &[i64]) -> Vec<FieldElem> {
    v.iter().map(|&i| FieldElem::from_int(i)).collect()
}

fn failures(recs: &[CheckRecord]) -> Vec<&CheckRecord> {
    recs.iter().filter(|r| r.status == Status::Fail).collect()
}

fn gaussian() -> CompositionAlgebra {
    CompositionAlgebra::new(FieldCtx::Rationals, ints(&[-1])).unwrap()
}

fn etype(et: EType, slots: &[i64]) -> ETypeConstruction {
    let data = build_e6e7e8_data(&FieldCtx::Rationals, et, &FieldElem::from_int(-1), &ints(slots), 4).unwrap();
    ETypeConstruction::new(data, None, 4).unwrap()
}

fn e8() -> ETypeConstruction {
    let ctx = FieldCtx::function_field(["s2", "s3", "s4", "s5"]);
    let mut slots: Vec<FieldElem> = (0..4).map(|i| ctx.var(i)).collect();
    let prod = slots.iter().fold(FieldElem::one(), |a, b| &a * b);
    slots.push(-&prod.inv().unwrap());
    let data = build_e6e7e8_data(&ctx, EType::E8, &FieldElem::from_int(-1), &slots, 4).unwrap();
    ETypeConstruction::new(data, None, 4).unwrap()
}

#[test]
fn pseudo_quadratic_gaussian_rank_one() {
    let p = PseudoQuadraticSpace::new(gaussian(), vec![ints(&[0, 1])], 4).unwrap();
    let m = p.module().unwrap();
    let hyp = QuadrangularAlgebra::check_hypotheses(&m, &VerifyOptions::symbolic()).unwrap();
    assert!(all_pass(&hyp), "{hyp:?}");
    let qa = p.quadrangular(4).unwrap();
    assert_eq!((qa.v_dim(), qa.x0_dim()), (2, 2));
    assert_eq!(qa.provenance(), Provenance::PseudoQuadratic);
    let ident = p.check_identification(&qa);
    assert!(all_pass(&ident), "{ident:?}");
    let ax = qa.verify_axioms(&VerifyOptions::symbolic());
    assert!(all_pass(&ax), "{:?}", failures(&ax));
    // h(x, y) = conj(x) w y, so h(1, 1) = w and pi(1) = w/2
    let one = unit_vec(2, 0);
    let x0 = qa.module_x0().unwrap();
    let lift = x0.coords(&[one.clone(), zero_vec(2)].concat());
    assert_eq!(qa.h(&lift, &lift), ints(&[0, 1]));
    assert_eq!(qa.pi(&lift), vec![FieldElem::zero(), FieldElem::half()]);
}

#[test]
fn pseudo_quadratic_gaussian_rank_two() {
    let p = PseudoQuadraticSpace::new(gaussian(), vec![ints(&[0, 1]), ints(&[0, 2])], 4).unwrap();
    assert!(p.verdict().is_anisotropic());
    let qa = p.quadrangular(4).unwrap();
    assert_eq!((qa.v_dim(), qa.x0_dim()), (2, 4));
    assert!(all_pass(&p.check_identification(&qa)));
    let ax = qa.verify_axioms(&VerifyOptions::symbolic());
    assert!(all_pass(&ax), "{:?}", failures(&ax));
}

#[test]
fn pseudo_quadratic_other_pairs() {
    let ctx = FieldCtx::function_field(["t"]);
    let l = CompositionAlgebra::new(ctx.clone(), vec![ctx.var(0)]).unwrap();
    let p = PseudoQuadraticSpace::new(l, vec![vec![FieldElem::zero(), FieldElem::one()]], 4).unwrap();
    assert!(p.verdict().is_anisotropic());
    let qa = p.quadrangular(4).unwrap();
    assert!(all_pass(&p.check_identification(&qa)));
    assert!(all_pass(&qa.verify_axioms(&VerifyOptions::symbolic())));

    let h = CompositionAlgebra::new(FieldCtx::Rationals, ints(&[-1, -1])).unwrap();
    let p = PseudoQuadraticSpace::new(h, vec![ints(&[0, 1, 0, 0])], 4).unwrap();
    assert!(p.verdict().is_anisotropic());
    let qa = p.quadrangular(4).unwrap();
    assert_eq!((qa.v_dim(), qa.x0_dim()), (4, 4));
    assert!(all_pass(&p.check_identification(&qa)));
    let ax = qa.verify_axioms(&VerifyOptions::random(11, 100));
    assert!(all_pass(&ax), "{:?}", failures(&ax));
}

#[test]
fn pseudo_quadratic_rejections() {
    let err = PseudoQuadraticSpace::new(gaussian(), vec![ints(&[0, 1]), ints(&[0, -1])], 4).unwrap_err();
    assert!(matches!(err, QuadError::AnisotropyWitness(_)), "{err:?}");
    let split = CompositionAlgebra::new(FieldCtx::Rationals, ints(&[1, -1])).unwrap();
    let err = PseudoQuadraticSpace::new(split, vec![ints(&[0, 1, 0, 0])], 4).unwrap_err();
    assert!(matches!(err, QuadError::AnisotropyWitness(_)), "{err:?}");
    let oct = CompositionAlgebra::new(FieldCtx::Rationals, ints(&[-1, -1, -1])).unwrap();
    assert_eq!(PseudoQuadraticSpace::new(oct, vec![unit_vec(8, 1)], 4).unwrap_err(), QuadError::NotQuadraticPair(8));
    let err = PseudoQuadraticSpace::new(gaussian(), vec![ints(&[1, 0])], 4).unwrap_err();
    assert!(matches!(err, QuadError::InvalidPseudoQuadratic(_)));
}

#[test]
fn pseudo_quadratic_identification_places_products_in_first_slot() {
    let p = PseudoQuadraticSpace::new(gaussian(), vec![ints(&[0, 1])], 4).unwrap();
    let qa = p.quadrangular(4).unwrap();
    let x0 = qa.module_x0().unwrap();
    let x = ints(&[2, -3]);
    let l = ints(&[1, 5]);
    let xt = x0.coords(&[x.clone(), zero_vec(2)].concat());
    let moved = x0.embed(&qa.act(&xt, &l));
    assert_eq!(moved, [p.scalar_mul(&x, &l), zero_vec(2)].concat());
    // the second-slot reading [0, x l] does not hold
    assert_ne!(moved, [zero_vec(2), p.scalar_mul(&x, &l)].concat());
}

#[test]
fn pseudo_quadratic_hypothesis_chain() {
    // (v x, x) x = [0, -x h(x, x) conj(l)] for x = [x, 0] and v the half-space element l
    let p = PseudoQuadraticSpace::new(gaussian(), vec![ints(&[0, 1])], 4).unwrap();
    let m = p.module().unwrap();
    let j = m.jordan();
    let l_alg = p.l();
    let opts = VerifyOptions::random(21, 30);
    for t in 0..30 {
        let mut rng = opts.trial_rng(t);
        let x = random_vec(m.ctx(), &mut rng, 2, &opts);
        let l = random_vec(m.ctx(), &mut rng, 2, &opts);
        let xt = [x.clone(), zero_vec(2)].concat();
        let v = j.half_vec(&l);
        let lhs = m.act(&m.pair(&m.act(&v, &xt), &xt), &xt);
        let inner = p.scalar_mul(&x, &p.h(&x, &x));
        let rhs = [zero_vec(2), vec_scale(&p.scalar_mul(&inner, &l_alg.conj(&l)), &FieldElem::from_int(-1))].concat();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn e6_symbolic() {
    let c = etype(EType::E6, &[1, 1]);
    let qa = c.quadrangular();
    assert_eq!((qa.v_dim(), qa.x0_dim()), (6, 8));
    assert_eq!(qa.provenance(), Provenance::Etype(EType::E6));
    let recs = c.checks(&VerifyOptions::symbolic()).unwrap();
    assert!(all_pass(&recs), "{:?}", failures(&recs));
    for axiom in ["A2", "A3", "B2", "B3", "D1", "hypothesis_1", "D2_certificate"] {
        assert!(recs.iter().any(|r| r.axiom == axiom && r.mode == "symbolic"), "{axiom} not symbolic");
    }
    assert!(recs.iter().all(|r| r.status == Status::Pass), "{:?}", recs.iter().filter(|r| r.status != Status::Pass).collect::<Vec<_>>());
}

#[test]
fn e7_random() {
    let c = etype(EType::E7, &[1, 1, 3]);
    let qa = c.quadrangular();
    assert_eq!((qa.v_dim(), qa.x0_dim()), (8, 16));
    let recs = c.checks(&VerifyOptions::random(7, 60)).unwrap();
    assert!(all_pass(&recs), "{:?}", failures(&recs));
    // the indefinite norm of (-1, 3) is only searched, not decided
    let warns: Vec<&str> = recs.iter().filter(|r| r.status == Status::Warn).map(|r| r.axiom.as_str()).collect();
    assert_eq!(warns, ["c2_division"]);
}

#[test]
fn e8_function_field() {
    let c = e8();
    let qa = c.quadrangular();
    assert_eq!((qa.v_dim(), qa.x0_dim()), (12, 32));
    assert!(qa.q_verdict().is_anisotropic());
    let recs = c.checks(&VerifyOptions::random(3, 6).with_degree_bound(0)).unwrap();
    assert!(all_pass(&recs), "{:?}", failures(&recs));
}

#[test]
fn frame_and_closed_forms() {
    let c = etype(EType::E7, &[1, 1, 3]);
    assert_eq!(c.check_frame().status, Status::Pass);
    let t = c.tensor();
    assert!(t.albert(c.e0()).is_zero() && t.albert(c.e1()).is_zero());
    assert_eq!(t.albert_bil(c.e0(), c.e1()), -c.qa_u());
    // r (e0 + e1) = 1
    let s = t.skew_to_tensor(&t.skew_from_coords(&vec_add(&t.skew_coords(c.e0()), &t.skew_coords(c.e1()))));
    assert_eq!(t.mul(&t.skew_to_tensor(c.r()), &s), t.one());
    assert!(all_pass(&c.check_closed_forms()));
    assert!(all_pass(&c.check_lj(&VerifyOptions::random(2, 10))));
}

#[test]
fn e0_projection_formula() {
    // e0 (x1 ⊗ x2) = (x + (1/a) i1 x1 ⊗ i2 x2)/2, independent of u
    let c = etype(EType::E6, &[1, 1]);
    let t = c.tensor();
    let (c1, c2) = (t.c1(), t.c2());
    let a_inv = c.data().a.inv().unwrap();
    let opts = VerifyOptions::random(8, 20);
    for k in 0..20 {
        let mut rng = opts.trial_rng(k);
        let x1 = random_vec(t.ctx(), &mut rng, c1.dim(), &opts);
        let x2 = random_vec(t.ctx(), &mut rng, c2.dim(), &opts);
        let x = t.pure(&x1, &x2);
        let lhs = c.module().act(&c.jordan().e0(), &x);
        let twist = t.pure(&c1.mul(&c1.basis(1), &x1), &c2.mul(&c2.basis(1), &x2));
        let rhs = vec_scale(&vec_add(&x, &vec_scale(&twist, &a_inv)), &FieldElem::half());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn custom_base_point() {
    let data = build_e6e7e8_data(&FieldCtx::Rationals, EType::E6, &FieldElem::from_int(-1), &ints(&[1, 1]), 4).unwrap();
    let mut u = vec![FieldElem::zero(); 8];
    u[1] = FieldElem::one();
    u[2] = FieldElem::from_int(2);
    u[5] = FieldElem::from_int(-1);
    let c = ETypeConstruction::new(data.clone(), Some(u), 4).unwrap();
    let recs = c.checks(&VerifyOptions::random(5, 30)).unwrap();
    assert!(all_pass(&recs), "{:?}", failures(&recs));

    let mut bad = vec![FieldElem::zero(); 8];
    bad[0] = FieldElem::one();
    assert!(matches!(ETypeConstruction::new(data.clone(), Some(bad), 4), Err(QuadError::BadBasePoint(_))));
    assert!(matches!(ETypeConstruction::new(data, Some(vec![FieldElem::one(); 3]), 4), Err(QuadError::BadBasePoint(_))));
}

/// `psi(x, y) = x conj(y) - y conj(x)` in a composition algebra.
fn psi(c: &CompositionAlgebra, x: &[FieldElem], y: &[FieldElem]) -> Vector {
    vec_sub(&c.mul(x, &c.conj(y)), &c.mul(y, &c.conj(x)))
}

#[test]
fn d2_certificate_sign() {
    let c = etype(EType::E6, &[1, 1]);
    assert_eq!(c.check_d2_certificate(&VerifyOptions::symbolic()).status, Status::Pass);
    // with the arguments of the pairing in the order (u x, x) the right side changes sign
    let t = c.tensor();
    let (c1, c2) = (t.c1(), t.c2());
    let u = c.base_point();
    let u_j = c.to_jordan(u);
    let coef = (&c.data().a * &FieldElem::from_int(4)).inv().unwrap();
    let (x1, x2) = (ints(&[1, 2, 0, -1, 0, 0, 3, 1]), ints(&[2, 1]));
    let x = c.module().act(&c.jordan().e0(), &t.pure(&x1, &x2));
    let lhs = t.skew_to_tensor(&c.to_skew(&c.module().pair(&c.module().act(&u_j, &x), &x)));
    let p1 = vec_scale(&psi(c1, &c1.mul(&u.s1, &x1), &c1.mul(&c1.basis(1), &x1)), &c2.norm(&x2));
    let p2 = vec_scale(&psi(c2, &c2.mul(&u.s2, &x2), &c2.mul(&c2.basis(1), &x2)), &c1.norm(&x1));
    let rhs = vec_scale(&vec_add(&t.pure(&p1, &c2.one()), &t.pure(&c1.one(), &p2)), &coef);
    assert_ne!(lhs, rhs);
    assert_eq!(lhs, vec_scale(&rhs, &FieldElem::from_int(-1)));
    assert_eq!(c.check_psi_nonvanishing(&VerifyOptions::random(3, 200)).status, Status::Pass);
}

#[test]
fn g_remark_argument_order() {
    let c = etype(EType::E6, &[1, 1]);
    assert_eq!(c.check_g_remark().status, Status::Pass);
    let qa = c.quadrangular();
    // g(x, y) = f(h(x, y), 1)/2 is skew, so g(x, y) e0 = (x, y)/2
    let (mut some_nonzero, n) = (false, qa.x0_dim());
    for i in 0..n {
        for k in 0..n {
            let (x, y) = (unit_vec(n, i), unit_vec(n, k));
            assert_eq!(qa.g(&x, &y), -&qa.g(&y, &x));
            let pair = c.module().pair(&c.x0_tensor(&x), &c.x0_tensor(&y));
            assert_eq!(vec_scale(&c.jordan().e0(), &qa.g(&x, &y)), vec_scale(&pair, &FieldElem::half()));
            some_nonzero |= !qa.g(&x, &y).is_zero();
        }
    }
    assert!(some_nonzero);
}

#[test]
fn irreducibility_orbits() {
    for (c, dim) in [(etype(EType::E6, &[1, 1]), 8), (etype(EType::E7, &[1, 1, 3]), 16)] {
        let rec = c.check_irreducible(&VerifyOptions::random(13, 20));
        assert_eq!(rec.status, Status::Pass);
        assert_eq!(rec.trials, 20);
        let u_j = c.to_jordan(c.base_point());
        assert_eq!(c.module().orbit_span(&u_j, &c.x0_tensor(&unit_vec(dim, 0))).unwrap(), dim);
    }
}

#[test]
fn jternary_on_e6() {
    let c = etype(EType::E6, &[1, 1]);
    let jt = c.jternary();
    let recs = jt.verify(&VerifyOptions::random(17, 25)).unwrap();
    assert!(recs.iter().all(|r| r.status == Status::Pass), "{recs:?}");
    let names: Vec<&str> = recs.iter().map(|r| r.axiom.as_str()).collect();
    assert_eq!(names, ["JT1", "JT2", "JT3", "JT4", "JT5", "JT6", "jternary_cubic", "jternary_nondegenerate"]);

    let doubled = JTernary::new(c.module(), |x, y, z| vec_scale(&jt.triple(x, y, z), &FieldElem::from_int(2)));
    let bad = doubled.verify(&VerifyOptions::random(17, 10)).unwrap();
    let failed: Vec<&str> = bad.iter().filter(|r| r.status == Status::Fail).map(|r| r.axiom.as_str()).collect();
    assert!(failed.contains(&"JT4") && failed.contains(&"jternary_cubic"), "{failed:?}");
}

#[test]
fn zero_form_jternary_is_degenerate() {
    let p = PseudoQuadraticSpace::new(gaussian(), vec![ints(&[0, 1])], 4).unwrap();
    let m = p.module().unwrap();
    let zero = vec![Matrix::zeros(m.dim(), m.dim()); m.jordan().dim()];
    let z = SpecialJModule::from_matrices(m.jordan().clone(), m.dim(), m.action_matrices().to_vec(), Some(zero)).unwrap();
    let recs = JTernary::zero(&z).verify(&VerifyOptions::random(2, 20)).unwrap();
    assert!(all_pass(&recs), "{recs:?}");
    let last = recs.last().unwrap();
    assert_eq!(last.status, Status::Warn);
    assert!(last.detail.as_deref().unwrap().contains("degenerate"));
    let err = QuadrangularAlgebra::from_jmodule_checked(&z, Provenance::FromJModule, &VerifyOptions::random(2, 20)).unwrap_err();
    assert!(matches!(err, QuadError::Hypothesis2Witness(_)), "{err:?}");
}

#[test]
fn corrupted_action_fails_axioms() {
    let c = etype(EType::E6, &[1, 1]);
    let qa = c.quadrangular();
    let mut action = qa.action_matrices().to_vec();
    let (i, k) = (0..8).flat_map(|i| (0..8).map(move |k| (i, k))).find(|&(i, k)| !action[2].get(i, k).is_zero()).unwrap();
    let flipped = -action[2].get(i, k);
    action[2].set(i, k, flipped);
    let bad = QuadrangularAlgebra::new(qa.space().clone(), 8, action, qa.h_matrices().to_vec(), Provenance::FromJModule, 4).unwrap();
    let recs = bad.verify_axioms(&VerifyOptions::symbolic());
    let failed = failures(&recs);
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|r| r.witness.is_some()));
    assert!(failed.iter().any(|r| r.axiom == "A3"));
}

#[test]
fn shape_and_module_errors() {
    let c = etype(EType::E6, &[1, 1]);
    let qa = c.quadrangular();
    let err = QuadrangularAlgebra::new(qa.space().clone(), 8, qa.action_matrices()[..3].to_vec(), qa.h_matrices().to_vec(), Provenance::FromJModule, 4).unwrap_err();
    assert!(matches!(err, QuadError::ShapeMismatch { .. }), "{err:?}");
    let plain = SpecialJModule::from_matrices(c.jordan().clone(), 16, c.module().action_matrices().to_vec(), None).unwrap();
    assert_eq!(QuadrangularAlgebra::from_jmodule(&plain, Provenance::FromJModule, 4).unwrap_err(), QuadError::NoSkewForm);
}

use proptest::prelude::*;
use quadalg::composition::CompositionAlgebra;
use quadalg::field::{FieldCtx, FieldElem};
use quadalg::jordan::JordanCtx;
use quadalg::linalg::{unit_vec, vec_scale, zero_vec, Vector};
use quadalg::moufang::{specialize, Letter, MoufangError, RelationCoefficients, RootSystem, RootWord, Specialization, Target, WElem};
use quadalg::quadform::{build_e6e7e8_data, EType, PointedQuadSpace, QuadraticForm};
use quadalg::quadrangular::etype::ETypeConstruction;
use quadalg::quadrangular::pseudo::PseudoQuadraticSpace;
use quadalg::verify::{all_pass, CheckRecord, Status, VerifyOptions};

fn ints(v: &[i64]) -> Vec<FieldElem> {
    v.iter().map(|&i| FieldElem::from_int(i)).collect()
}

fn failures(recs: &[CheckRecord]) -> Vec<&CheckRecord> {
    recs.iter().filter(|r| r.status == Status::Fail).collect()
}

fn space() -> PointedQuadSpace {
    PointedQuadSpace::new(QuadraticForm::new(FieldCtx::Rationals, ints(&[1, 2, 3])).unwrap(), ints(&[1, 0, 0])).unwrap()
}

fn gaussian() -> CompositionAlgebra {
    CompositionAlgebra::new(FieldCtx::Rationals, ints(&[-1])).unwrap()
}

fn quaternions() -> CompositionAlgebra {
    CompositionAlgebra::new(FieldCtx::Rationals, ints(&[-1, -1])).unwrap()
}

fn pseudo() -> PseudoQuadraticSpace {
    PseudoQuadraticSpace::new(gaussian(), vec![ints(&[0, 1])], 4).unwrap()
}

fn pseudo_quaternion() -> PseudoQuadraticSpace {
    PseudoQuadraticSpace::new(quaternions(), vec![ints(&[0, 1, 0, 0])], 4).unwrap()
}

fn etype(et: EType, slots: &[i64]) -> ETypeConstruction {
    let data = build_e6e7e8_data(&FieldCtx::Rationals, et, &FieldElem::from_int(-1), &ints(slots), 4).unwrap();
    ETypeConstruction::new(data, None, 4).unwrap()
}

fn scalar_w(rs: &RootSystem, t: i64) -> WElem {
    rs.w_from_coords(&zero_vec(rs.x0().dim()), &ints(&[t]))
}

#[test]
fn zero_module_is_first_class() {
    let rs = RootSystem::with_zero_module(JordanCtx::reduced_spin(space())).unwrap();
    assert_eq!(rs.module().dim(), 0);
    assert_eq!((rs.x0().dim(), rs.j0().dim(), rs.v_dim()), (0, 1, 3));
    let hyp = rs.check_hypotheses(&VerifyOptions::random(1, 50)).unwrap();
    assert!(all_pass(&hyp), "{hyp:?}");
}

#[test]
fn w_addition_of_pure_j0_elements() {
    let c = etype(EType::E6, &[1, 1]);
    let rs = RootSystem::with_base_point(c.module().clone()).unwrap();
    let (p, q) = (scalar_w(&rs, 3), scalar_w(&rs, -7));
    assert_eq!(rs.w_add(&p, &q).unwrap(), scalar_w(&rs, -4));
    assert_eq!(rs.w_add(&p, &rs.w_neg(&p).unwrap()).unwrap(), rs.w_zero());
}

#[test]
fn w_group_laws() {
    let c = etype(EType::E6, &[1, 1]);
    let e6 = RootSystem::with_base_point(c.module().clone()).unwrap();
    let pq = RootSystem::with_base_point(pseudo().module().unwrap()).unwrap();
    for rs in [&e6, &pq] {
        let recs = rs.check_w_group(&VerifyOptions::random(7, 500));
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().all(|r| r.status == Status::Pass && r.trials == 500), "{recs:?}");
        let sym = rs.check_w_group(&VerifyOptions::symbolic());
        assert!(all_pass(&sym), "{:?}", failures(&sym));
    }
}

#[test]
fn w_commutator_is_nontrivial_and_central() {
    // [a, 0] and [b, 0] with (a, b) != 0 have commutator [0, (b, a)]
    let rs = RootSystem::with_base_point(pseudo().module().unwrap()).unwrap();
    let a = rs.w_from_coords(&ints(&[1, 0]), &ints(&[0]));
    let b = rs.w_from_coords(&ints(&[0, 1]), &ints(&[0]));
    let c = rs.w_commutator(&a, &b).unwrap();
    assert!(c.a.iter().all(FieldElem::is_zero));
    assert!(rs.j0().contains(&c.t));
    assert_eq!(c.t, rs.module().pair(&b.a, &a.a));
    assert!(!c.is_zero());
}

#[test]
fn comm13_with_zero_first_argument_is_trivial() {
    let c = etype(EType::E6, &[1, 1]);
    let rs = RootSystem::with_base_point(c.module().clone()).unwrap();
    let mut rng = VerifyOptions::default().trial_rng(3);
    let w = rs.random_w(&mut rng, &VerifyOptions::default());
    assert_eq!(rs.comm13(&scalar_w(&rs, 5), &w).unwrap(), rs.v_zero());
}

#[test]
fn comm14_on_quadratic_form_context() {
    let s = space();
    let rs = RootSystem::with_zero_module(JordanCtx::reduced_spin(s.clone())).unwrap();
    let j = rs.jordan();
    let v = ints(&[2, -1, 5]);
    let q = s.form().eval(&v).unwrap();
    assert_eq!(q, FieldElem::from_int(4 + 2 + 75));
    let (c2, c3) = rs.comm14(&scalar_w(&rs, 3), &j.half_vec(&v)).unwrap();
    assert_eq!(c2, j.half_vec(&ints(&[6, -3, 15])));
    assert_eq!(c3, scalar_w(&rs, 3 * 81));
    // [x2(v1), x4(v2)^-1] = x3(f(v1, v2))
    let w = ints(&[1, 1, 1]);
    assert_eq!(rs.comm24(&j.half_vec(&v), &j.half_vec(&w)).unwrap(), scalar_w(&rs, 2 * 3 * 5));
}

#[test]
fn comm14_on_involutory_context() {
    let l = quaternions();
    let rs = RootSystem::with_zero_module(JordanCtx::herm_mat2(l.clone()).unwrap()).unwrap();
    let j = rs.jordan();
    let ell = ints(&[1, 2, 0, -1]);
    let (c2, c3) = rs.comm14(&scalar_w(&rs, 3), &j.half_vec(&ell)).unwrap();
    assert_eq!(c2, j.half_vec(&ints(&[3, 6, 0, -3])));
    // conj(l) 3 l = 3 N(l) with N(l) = 1 + 4 + 1
    assert_eq!(c3, scalar_w(&rs, 18));
    assert_eq!(rs.comm13(&scalar_w(&rs, 2), &scalar_w(&rs, 9)).unwrap(), rs.v_zero());
}

#[test]
fn transposition_of_x4_past_x1_inserts_comm14() {
    let s = space();
    let rs = RootSystem::with_zero_module(JordanCtx::reduced_spin(s)).unwrap();
    let j = rs.jordan().clone();
    let v = j.half_vec(&ints(&[1, 1, 0]));
    let w = scalar_w(&rs, 2);
    let g = rs.collect(vec![Letter::X4(v.clone()), Letter::X1(w.clone())]).unwrap();
    // x4(v) x1(t) = x1(t) x2(t v) x3(q(v) t) x4(v) with q(v) = 3
    let expected = RootWord { w1: w.clone(), v2: vec_scale(&v, &FieldElem::from_int(2)), w3: scalar_w(&rs, 6), v4: v.clone() };
    assert_eq!(g, expected);
    let x4 = RootWord { v4: v.clone(), ..rs.identity() };
    let x1 = RootWord { w1: w.clone(), ..rs.identity() };
    assert_eq!(rs.word_mul(&x4, &x1).unwrap(), expected);
    // and in the other order nothing is inserted
    assert_eq!(rs.word_mul(&x1, &x4).unwrap(), RootWord { w1: w, v4: v, ..rs.identity() });
}

#[test]
fn transposition_of_x3_past_x1_on_pseudo_quadratic() {
    let p = pseudo();
    let rs = RootSystem::with_base_point(p.module().unwrap()).unwrap();
    let a = rs.w_from_coords(&ints(&[1, 0]), &ints(&[0]));
    let b = rs.w_from_coords(&ints(&[0, 1]), &ints(&[0]));
    let g = rs.collect(vec![Letter::X3(b.clone()), Letter::X1(a.clone())]).unwrap();
    // h(1, i) = conj(1) i i = -1
    assert_eq!(g.v2, rs.jordan().half_vec(&ints(&[-1, 0])));
    assert_eq!((g.w1, g.w3), (a, b));
}

#[test]
fn word_identity_and_inverse() {
    let c = etype(EType::E6, &[1, 1]);
    let rs = RootSystem::with_base_point(c.module().clone()).unwrap();
    let opts = VerifyOptions::default();
    let g = rs.random_word(&mut opts.trial_rng(11), &opts);
    assert_eq!(rs.word_mul(&rs.identity(), &g).unwrap(), g);
    assert_eq!(rs.word_mul(&g, &rs.word_inv(&g).unwrap()).unwrap(), rs.identity());
}

#[test]
fn word_group_on_every_context() {
    let c = etype(EType::E6, &[1, 1]);
    let contexts = [
        RootSystem::with_zero_module(JordanCtx::reduced_spin(space())).unwrap(),
        RootSystem::with_zero_module(JordanCtx::herm_mat2(quaternions()).unwrap()).unwrap(),
        RootSystem::with_base_point(pseudo().module().unwrap()).unwrap(),
        RootSystem::with_base_point(pseudo_quaternion().module().unwrap()).unwrap(),
        RootSystem::with_base_point(c.module().clone()).unwrap(),
    ];
    for rs in &contexts {
        let recs = rs.check_word_group(&VerifyOptions::random(5, 500));
        assert!(recs.iter().all(|r| r.status == Status::Pass && r.trials == 500), "{:?}", failures(&recs));
    }
}

#[test]
fn word_group_symbolic_on_small_contexts() {
    for rs in [
        RootSystem::with_zero_module(JordanCtx::reduced_spin(space())).unwrap(),
        RootSystem::with_base_point(pseudo().module().unwrap()).unwrap(),
    ] {
        let recs = rs.check_word_group(&VerifyOptions::symbolic());
        assert!(recs.iter().all(|r| r.status == Status::Pass && r.mode == "symbolic"), "{:?}", failures(&recs));
    }
}

#[test]
fn specializations_have_empty_diff() {
    let s = space();
    let (g, h) = (gaussian(), quaternions());
    let (p, pq) = (pseudo(), pseudo_quaternion());
    let c = etype(EType::E6, &[1, 1]);
    let specs = [
        Specialization::QuadraticForm(&s),
        Specialization::Involutory(&g),
        Specialization::Involutory(&h),
        Specialization::PseudoQuadratic(&p),
        Specialization::PseudoQuadratic(&pq),
        Specialization::Etype(&c),
    ];
    for spec in &specs {
        let report = specialize(spec, &VerifyOptions::random(3, 200)).unwrap();
        assert!(report.is_empty_diff(), "{:?}: {:?}", report.target, failures(&report.records));
        assert_eq!(report.records.len(), 8);
        let sym = specialize(spec, &VerifyOptions::symbolic()).unwrap();
        assert!(sym.is_empty_diff(), "{:?}: {:?}", sym.target, failures(&sym.records));
    }
}

#[test]
fn specialization_e7() {
    let c = etype(EType::E7, &[1, 1, 3]);
    let report = specialize(&Specialization::Etype(&c), &VerifyOptions::random(9, 50)).unwrap();
    assert_eq!(report.target, Target::Etype);
    assert!(report.is_empty_diff(), "{:?}", failures(&report.records));
}

fn perturbed(f: impl Fn(&mut RelationCoefficients)) -> RelationCoefficients {
    let mut c = RelationCoefficients::default();
    f(&mut c);
    c
}

#[test]
fn wrong_coefficients_are_detected() {
    let c = etype(EType::E6, &[1, 1]);
    let spec = Specialization::Etype(&c);
    let opts = VerifyOptions::random(4, 40);
    let cases: [(&str, RelationCoefficients); 7] = [
        ("w_add", perturbed(|c| c.w_correction = FieldElem::one())),
        ("comm13", perturbed(|c| c.comm13 = FieldElem::from_int(-1))),
        ("comm24", perturbed(|c| c.comm24 = FieldElem::one())),
        ("comm14", perturbed(|c| c.comm14_theta = FieldElem::one())),
        ("comm14", perturbed(|c| c.comm14_linear = FieldElem::one())),
        ("comm14", perturbed(|c| c.comm14_x0 = FieldElem::from_int(-1))),
        ("comm14", perturbed(|c| c.comm14_j0 = FieldElem::from_int(2))),
    ];
    for (rel, coeffs) in cases {
        let rs = spec.root_system().unwrap().with_coefficients(coeffs);
        let report = spec.specialize(&rs, &opts).unwrap();
        let bad: Vec<String> = failures(&report.records).iter().map(|r| r.axiom.clone()).collect();
        assert!(bad.iter().any(|b| b.starts_with(rel)), "{rel}: {bad:?}");
        match report.into_result() {
            Err(MoufangError::MismatchAgainstExample { relation, args }) => {
                assert!(bad.contains(&relation));
                assert!(!args.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn inconsistent_relations_break_associativity() {
    let rs = RootSystem::with_base_point(pseudo().module().unwrap()).unwrap();
    let opts = VerifyOptions::random(2, 200);
    for coeffs in [perturbed(|c| c.comm24 = FieldElem::one()), perturbed(|c| c.comm14_j0 = FieldElem::from_int(2)), perturbed(|c| c.comm13 = FieldElem::from_int(2))] {
        let recs = rs.clone().with_coefficients(coeffs.clone()).check_word_group(&opts);
        let assoc = recs.iter().find(|r| r.axiom == "word_associative").unwrap();
        assert_eq!(assoc.status, Status::Fail, "{coeffs:?}");
        assert!(assoc.witness.is_some());
    }
}

#[test]
fn shape_and_construction_errors() {
    let rs = RootSystem::with_zero_module(JordanCtx::reduced_spin(space())).unwrap();
    let bad = WElem { a: vec![FieldElem::one()], t: rs.jordan().zero() };
    assert!(matches!(rs.w_add(&bad, &rs.w_zero()), Err(MoufangError::CtxMismatch(_))));
    assert!(matches!(rs.comm24(&ints(&[1]), &rs.v_zero()), Err(MoufangError::CtxMismatch(_))));
    assert!(matches!(rs.collect(vec![Letter::X2(ints(&[1, 2]))]), Err(MoufangError::CtxMismatch(_))));
    // u = 2 v does not square to the unit; u = e0 is not in J_half
    let j = JordanCtx::reduced_spin(space());
    let m = quadalg::jmodule::SpecialJModule::zero(j.clone());
    assert_eq!(RootSystem::new(m.clone(), j.half_vec(&ints(&[2, 0, 0]))).unwrap_err(), MoufangError::BadConnectingElement);
    assert_eq!(RootSystem::new(m, j.e0()).unwrap_err(), MoufangError::BadConnectingElement);
    // a root system from another input is rejected by specialize
    let s = space();
    let g = gaussian();
    let other = Specialization::Involutory(&g).root_system().unwrap();
    assert!(matches!(Specialization::QuadraticForm(&s).specialize(&other, &VerifyOptions::random(1, 5)), Err(MoufangError::CtxMismatch(_))));
}

#[test]
fn other_base_point_in_spin_context() {
    // q(v) = 1 for v = (1, 1, ...) under <1, 3, -3>
    let form = QuadraticForm::new(FieldCtx::Rationals, ints(&[1, 3, -3])).unwrap();
    let s = PointedQuadSpace::new(form, ints(&[1, 0, 0])).unwrap();
    let j = JordanCtx::reduced_spin(s);
    let u = j.half_vec(&ints(&[1, 1, 1]));
    let rs = RootSystem::new(quadalg::jmodule::SpecialJModule::zero(j), u).unwrap();
    let recs = rs.check_word_group(&VerifyOptions::random(8, 100));
    assert!(all_pass(&recs), "{:?}", failures(&recs));
}

fn quadratic_ctx() -> RootSystem {
    RootSystem::with_zero_module(JordanCtx::herm_mat2(gaussian()).unwrap()).unwrap()
}

fn word_from(rs: &RootSystem, c: &[i64]) -> RootWord {
    let j = rs.jordan();
    RootWord {
        w1: scalar_w(rs, c[0]),
        v2: j.half_vec(&ints(&c[1..3])),
        w3: scalar_w(rs, c[3]),
        v4: j.half_vec(&ints(&c[4..6])),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn word_mul_is_associative_on_integer_words(a in prop::collection::vec(-20i64..20, 6), b in prop::collection::vec(-20i64..20, 6), c in prop::collection::vec(-20i64..20, 6)) {
        let rs = quadratic_ctx();
        let (g, h, k) = (word_from(&rs, &a), word_from(&rs, &b), word_from(&rs, &c));
        let l = rs.word_mul(&rs.word_mul(&g, &h).unwrap(), &k).unwrap();
        let r = rs.word_mul(&g, &rs.word_mul(&h, &k).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(rs.word_mul(&g, &rs.word_inv(&g).unwrap()).unwrap(), rs.identity());
    }

    #[test]
    fn collection_of_generator_sequences_is_a_homomorphism(seq in prop::collection::vec((0usize..4, -9i64..9, -9i64..9), 0..10)) {
        let rs = quadratic_ctx();
        let j = rs.jordan().clone();
        let letter = |&(i, x, y): &(usize, i64, i64)| match i {
            0 => Letter::X1(scalar_w(&rs, x)),
            1 => Letter::X2(j.half_vec(&ints(&[x, y]))),
            2 => Letter::X3(scalar_w(&rs, x)),
            _ => Letter::X4(j.half_vec(&ints(&[x, y]))),
        };
        let letters: Vec<Letter> = seq.iter().map(letter).collect();
        let whole = rs.collect(letters.clone()).unwrap();
        let stepwise = letters.into_iter().fold(rs.identity(), |acc, l| {
            let g = rs.collect(vec![l]).unwrap();
            rs.word_mul(&acc, &g).unwrap()
        });
        prop_assert_eq!(whole, stepwise);
    }
}

#[test]
fn half_vec_coordinates_round_trip() {
    let rs = quadratic_ctx();
    let v: Vector = ints(&[3, -4]);
    assert_eq!(rs.v_coords(&rs.v_from_coords(&v)), v);
    assert!(rs.contains_v(&rs.v_from_coords(&v)));
    assert!(!rs.contains_v(&rs.jordan().e0()));
    assert!(rs.contains_w(&scalar_w(&rs, 4)));
    assert!(!rs.contains_w(&WElem { a: vec![], t: unit_vec(rs.jordan().dim(), 1) }));
}

use super::*;
use crate::abgroup::FinAbGroup;
use crate::action::WeakAction;
use crate::algebra::Algebra;
use crate::corpus;
use crate::equivariant::{default_equivariant_probes, hom_equivariant_direct};
use proptest::prelude::*;

fn fp(p: u64) -> FieldSpec {
    FieldSpec::Prime(p)
}

fn sv(field: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| Scalar::from_i64(field, x)).collect()
}

fn s1(field: FieldSpec) -> ModuleRep {
    ModuleRep { dim: 1, action: vec![Matrix::identity(field, 1), Matrix::zero(field, 1, 1)] }
}

fn s2(field: FieldSpec) -> ModuleRep {
    ModuleRep { dim: 1, action: vec![Matrix::zero(field, 1, 1), Matrix::identity(field, 1)] }
}

fn swap_object(field: FieldSpec) -> EquivariantModule {
    EquivariantModule {
        base: s1(field).direct_sum(&s2(field)),
        alpha: vec![Matrix::identity(field, 2), Matrix::from_ints(field, &[&[0, 1], &[1, 0]])],
    }
}

fn kc2_character(field: FieldSpec, s: i64, a: i64) -> EquivariantModule {
    EquivariantModule {
        base: ModuleRep { dim: 1, action: vec![Matrix::identity(field, 1), Matrix::from_ints(field, &[&[s]])] },
        alpha: vec![Matrix::identity(field, 1), Matrix::from_ints(field, &[&[a]])],
    }
}

fn gauged_c3() -> ModuleCategoryAction {
    let field = fp(7);
    let m2 = Algebra::matrix_algebra(field, 2);
    let tau = AlgebraMap::conjugation(&m2, &sv(field, &[0, 1, 1, 0])).unwrap();
    let base = WeakAction::strict(FinAbGroup::cyclic(2), m2.clone(), vec![AlgebraMap::identity(&m2), tau]).unwrap();
    let delta = vec![sv(field, &[1, 2, 0, 1]), sv(field, &[3, 0, 1, 1])];
    ModuleCategoryAction::new(base.gauge(&delta).unwrap()).unwrap()
}

fn actions() -> Vec<ModuleCategoryAction> {
    let mut v: Vec<_> = [corpus::swap_c2(13), corpus::trivial_kc2(5), corpus::c3_permutation(13), corpus::klein_regular(5)]
        .into_iter()
        .map(|w| ModuleCategoryAction::new(w).unwrap())
        .collect();
    v.push(gauged_c3());
    v
}

fn probes(act: &ModuleCategoryAction) -> (Vec<ModuleRep>, Vec<EquivariantModule>) {
    let cfg = SearchConfig::default();
    let xs = act.default_probes(&cfg);
    let es = default_equivariant_probes(act, &xs, &cfg);
    (xs, es)
}

#[test]
fn dual_twist_examples() {
    let field = fp(5);
    let act = ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    assert_eq!(dual.order(), 2);
    let e = kc2_character(field, 1, 1);
    assert_eq!(dual_twist(&act, &dual, 0, &e), e);
    assert_eq!(dual_twist(&act, &dual, 1, &e), kc2_character(field, 1, 4));
    assert!(validate_equivariant(&act, &dual_twist(&act, &dual, 1, &e)).is_valid());

    let act = ModuleCategoryAction::new(corpus::swap_c2(5)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let e = swap_object(field);
    let t = dual_twist(&act, &dual, 1, &e);
    assert_eq!(t.alpha[1], e.alpha[1].scale(&Scalar::from_i64(field, -1)));
    // diag(1, -1) intertwines the two structures, so they are isomorphic.
    let homs = hom_equivariant(&act, &e, &t).unwrap();
    assert_eq!(homs.len(), 1);
    assert!(homs[0].is_invertible());
}

#[test]
fn dual_action_is_strict() {
    for act in actions() {
        let dual = DualGroup::new(&act).unwrap();
        let (_, es) = probes(&act);
        for e in &es {
            for a in 0..dual.order() {
                for b in 0..dual.order() {
                    let lhs = dual_twist(&act, &dual, a, &dual_twist(&act, &dual, b, e));
                    assert_eq!(lhs, dual_twist(&act, &dual, dual.mul(a, b), e));
                }
            }
        }
    }
}

#[test]
fn non_split_group_is_rejected() {
    let act = ModuleCategoryAction::new(corpus::c3_permutation(5)).unwrap();
    assert_eq!(DualGroup::new(&act), Err(DualityError::NotSplit));
}

#[test]
fn theta_objects_are_doubly_equivariant() {
    let field = fp(13);
    let act = ModuleCategoryAction::new(corpus::swap_c2(13)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let t = theta(&act, &dual, &s1(field));
    assert_eq!(t.inner.base, s1(field).direct_sum(&s2(field)));
    assert_eq!(t.beta[1], Matrix::from_ints(field, &[&[1, 0], &[0, -1]]));
    for act in actions() {
        let dual = DualGroup::new(&act).unwrap();
        let (xs, es) = probes(&act);
        for x in &xs {
            assert!(validate_doubly(&act, &dual, &theta(&act, &dual, x)).is_empty());
        }
        for e in &es {
            assert!(validate_doubly(&act, &dual, &hat_induction(&act, &dual, e)).is_empty());
        }
        assert!(verify_double_dual(&act, &dual, &xs).is_empty());
    }
}

#[test]
fn trivial_group_theta_is_identity() {
    let field = fp(5);
    let act = ModuleCategoryAction::new(WeakAction::trivial(FinAbGroup::cyclic(1), Algebra::cyclic_group_algebra(field, 2))).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let x = ModuleRep::regular(act.algebra());
    let t = theta(&act, &dual, &x);
    assert_eq!(t.inner.base, x);
    assert!(t.beta[0].is_identity());
    let (f, finv) = monad_isomorphism(&act, &dual, &induction(&act, &x)).unwrap();
    assert!(f.is_identity() && finv.is_identity());
}

#[test]
fn monad_isomorphism_on_probes() {
    let field = fp(13);
    let act = ModuleCategoryAction::new(corpus::swap_c2(13)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let (f, finv) = monad_isomorphism(&act, &dual, &swap_object(field)).unwrap();
    assert_eq!((f.rows(), f.cols()), (4, 4));
    assert_eq!(f.inverse().unwrap(), finv);
    for act in actions() {
        let dual = DualGroup::new(&act).unwrap();
        let (_, es) = probes(&act);
        let fails = verify_monad_isomorphism(&act, &dual, &es).unwrap();
        assert!(fails.is_empty(), "{fails:?}");
    }
}

#[test]
fn theta_equivalence_examples() {
    let field = fp(13);
    let act = ModuleCategoryAction::new(corpus::swap_c2(13)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let p = vec![s1(field), s2(field), s1(field).direct_sum(&s2(field))];
    let rep = verify_theta_equivalence(&act, &dual, &p, &[swap_object(field)]);
    assert!(rep.passed(), "{:?}", rep.failures);
    assert_eq!(rep.hom_pairs, 9);

    let act = ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let f5 = fp(5);
    let simples: Vec<ModuleRep> = [1, -1].iter().map(|&s| kc2_character(f5, s, 1).base).collect();
    let rep = verify_theta_equivalence(&act, &dual, &simples, &[]);
    assert!(rep.passed(), "{:?}", rep.failures);
    assert_eq!(rep.density_objects, 4);

    for act in actions() {
        let dual = DualGroup::new(&act).unwrap();
        let (xs, es) = probes(&act);
        let rep = verify_theta_equivalence(&act, &dual, &xs, &es);
        assert!(rep.passed(), "{:?}", rep.failures);
    }
}

#[test]
fn density_rejects_objects_outside_the_family() {
    let act = ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let field = fp(5);
    let plus = theta(&act, &dual, &kc2_character(field, 1, 1).base).as_rep(field);
    let minus = theta(&act, &dual, &kc2_character(field, -1, 1).base).as_rep(field);
    assert!(in_additive_closure(&plus, std::slice::from_ref(&plus)));
    assert!(!in_additive_closure(&minus, &[plus]));
}

#[test]
fn equivariantized_functors() {
    for act in actions() {
        let dual = DualGroup::new(&act).unwrap();
        let (xs, es) = probes(&act);
        let id = EquivariantFunctor::identity(&act);
        assert!(verify_equivariantized(&act, &dual, &id, &xs, &es).unwrap().is_empty());
        for e in &es {
            assert_eq!(&id.equivariantize(&act, e), e);
        }
        for chi in 0..dual.order() {
            let fc = EquivariantFunctor::character(&act, &dual, chi);
            assert!(verify_equivariantized(&act, &dual, &fc, &xs, &es).unwrap().is_empty());
            for e in &es {
                assert_eq!(fc.equivariantize(&act, e), dual_twist(&act, &dual, chi, e));
            }
        }
        for a in 0..act.order() {
            let fa = EquivariantFunctor::twist(&act, a);
            assert!(verify_equivariantized(&act, &dual, &fa, &xs, &es).unwrap().is_empty());
            for e in &es {
                assert!(twist_functor_psi_ok(&act, a, e));
                // ψ commutes with F_χ exactly when χ(a) = 1.
                for chi in 0..dual.order() {
                    let te = dual_twist(&act, &dual, chi, e);
                    assert_eq!(te.alpha[a] == e.alpha[a], dual.value(chi, a).is_one());
                }
            }
        }
    }
}

#[test]
fn incoherent_delta_is_rejected() {
    let field = fp(5);
    let act = ModuleCategoryAction::new(corpus::swap_c2(5)).unwrap();
    let mut bad = EquivariantFunctor::identity(&act);
    bad.delta[1] = act.algebra().scalar_vector(&Scalar::from_i64(field, 2));
    let probes = act.default_probes(&SearchConfig::default());
    assert_eq!(bad.validate(&act, &probes).unwrap(), vec![(1, 1)]);
}

#[test]
fn iota_examples() {
    let cfg = SearchConfig::default();
    let field = fp(13);
    let act = ModuleCategoryAction::new(corpus::swap_c2(13)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let io = iota(&act, &dual, &s1(field).direct_sum(&s2(field)), &cfg).unwrap();
    assert_eq!((io.ind_summands, io.classes, io.object.dim()), (2, 1, 2));
    assert!(io.hat_stable);
    let cp = crossed_product(act.weak()).unwrap();
    let m = crate::equivariant::to_crossed_module(&act, &io.object);
    assert_eq!(m.hom(&cp.algebra, &m).len(), 1);
    assert_eq!(iota(&act, &dual, &s1(field), &cfg), Err(DualityError::NotStable(1)));

    let f5 = fp(5);
    let act = ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let io = iota(&act, &dual, &ModuleRep::regular(act.algebra()), &cfg).unwrap();
    assert_eq!((io.ind_summands, io.classes, io.object.dim()), (4, 4, 4));
    assert!(io.hat_stable);
    let doubled = ModuleRep::regular(act.algebra()).direct_sum(&kc2_character(f5, 1, 1).base);
    assert_eq!(iota(&act, &dual, &doubled, &cfg), Err(DualityError::NotBasic));

    let one = ModuleCategoryAction::new(WeakAction::trivial(FinAbGroup::cyclic(1), Algebra::product_of_fields(f5, 2))).unwrap();
    let dual = DualGroup::new(&one).unwrap();
    let m = ModuleRep::regular(one.algebra());
    let io = iota(&one, &dual, &m, &cfg).unwrap();
    assert_eq!((io.object.dim(), io.ind_summands, io.classes), (2, 2, 2));
}

#[test]
fn orbit_census_examples() {
    let cfg = SearchConfig::default();
    let field = fp(13);
    let act = ModuleCategoryAction::new(corpus::swap_c2(13)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let c = orbit_census(&act, &dual, &[s1(field), s2(field)], &cfg).unwrap();
    assert_eq!((c.orbits, c.dual_orbits), (1, 1));
    assert!(c.counts_match());

    let f5 = fp(5);
    let act = ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let simples: Vec<ModuleRep> = [1, -1].iter().map(|&s| kc2_character(f5, s, 1).base).collect();
    let c = orbit_census(&act, &dual, &simples, &cfg).unwrap();
    assert_eq!((c.orbits, c.equivariant_classes, c.dual_orbits), (2, 4, 2));
    assert!(c.counts_match());

    // Not closed under the twist.
    let act = ModuleCategoryAction::new(corpus::swap_c2(13)).unwrap();
    let dual = DualGroup::new(&act).unwrap();
    let c = orbit_census(&act, &dual, &[s1(field)], &cfg).unwrap();
    assert!(!c.twist_closed && !c.counts_match());

    let c3 = ModuleCategoryAction::new(corpus::c3_permutation(13)).unwrap();
    let dual = DualGroup::new(&c3).unwrap();
    let simples = crate::algebra::k0_basis(c3.algebra(), &cfg).unwrap().simples;
    let c = orbit_census(&c3, &dual, &simples, &cfg).unwrap();
    assert_eq!((c.orbits, c.dual_orbits), (1, 1));
    assert!(c.counts_match());
}

#[test]
fn end_of_induced_is_the_crossed_product() {
    let field = fp(13);
    let act = ModuleCategoryAction::new(corpus::swap_c2(13)).unwrap();
    let m = s1(field).direct_sum(&s2(field));
    let alpha = swap_object(field).alpha;
    let rep = end_ind_check(&act, &m, &alpha).unwrap();
    assert_eq!((rep.end_ind_dim, rep.crossed_dim), (4, 4));
    assert!(rep.passed(), "{rep:?}");

    let f5 = fp(5);
    let act = ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap();
    let reg = ModuleRep::regular(act.algebra());
    let rep = end_ind_check(&act, &reg, &[Matrix::identity(f5, 2), Matrix::identity(f5, 2)]).unwrap();
    assert_eq!(rep.crossed_dim, 4);
    assert!(rep.passed(), "{rep:?}");

    let act = gauged_c3();
    let reg = ModuleRep::regular(act.algebra());
    let isos = crate::action::find_stable_isos(&act, &reg, &SearchConfig::default()).unwrap().found().unwrap();
    let mut alpha = isos;
    alpha[0] = act.unit_component(&reg).inverse().unwrap();
    let rep = end_ind_check(&act, &reg, &alpha).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(hom_equivariant_direct(&act, &induction(&act, &reg), &induction(&act, &reg)).len(), rep.crossed_dim);
}

fn unit_2x2(field: FieldSpec) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(0i64..7, 4)
        .prop_map(move |v| sv(field, &v))
        .prop_filter("invertible", move |v| Matrix::from_fn(field, 2, 2, |i, j| v[2 * i + j].clone()).is_invertible())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Θ, ∂ and the monad isomorphism survive any gauge of a C3 action on M2(F_7).
    #[test]
    fn duality_is_gauge_invariant(d in proptest::collection::vec(unit_2x2(FieldSpec::Prime(7)), 3)) {
        let field = fp(7);
        let m2 = Algebra::matrix_algebra(field, 2);
        let u = sv(field, &[0, 1, 6, 1]);
        let s = AlgebraMap::conjugation(&m2, &u).unwrap();
        prop_assume!(s.pow(3) == AlgebraMap::identity(&m2));
        let base = WeakAction::strict(FinAbGroup::cyclic(3), m2.clone(), vec![AlgebraMap::identity(&m2), s.clone(), s.pow(2)]).unwrap();
        let act = ModuleCategoryAction::new(base.gauge(&d).unwrap()).unwrap();
        let dual = DualGroup::new(&act).unwrap();
        let xs = vec![ModuleRep::regular(&m2)];
        let es: Vec<EquivariantModule> = xs.iter().map(|x| induction(&act, x)).collect();
        prop_assert!(verify_double_dual(&act, &dual, &xs).is_empty());
        prop_assert!(verify_monad_isomorphism(&act, &dual, &es).unwrap().is_empty());
        for a in 0..3 {
            let fa = EquivariantFunctor::twist(&act, a);
            prop_assert!(fa.validate(&act, &xs).unwrap().is_empty());
        }
    }
}

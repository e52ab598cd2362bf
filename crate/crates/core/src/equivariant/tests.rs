use super::*;
use crate::abgroup::FinAbGroup;
use crate::action::WeakAction;
use crate::algebra::Algebra;
use crate::corpus;
use crate::search::SearchConfig;
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

fn swap_object(field: FieldSpec, g: Matrix) -> EquivariantModule {
    EquivariantModule { base: s1(field).direct_sum(&s2(field)), alpha: vec![Matrix::identity(field, 2), g] }
}

fn gauged_klein() -> ModuleCategoryAction {
    let field = fp(7);
    let base = WeakAction::trivial(FinAbGroup::new(vec![2, 2]).unwrap(), Algebra::matrix_algebra(field, 2));
    let delta = vec![sv(field, &[2, 0, 0, 1]), sv(field, &[1, 1, 0, 1]), sv(field, &[0, 1, 1, 0]), sv(field, &[1, 0, 3, 1])];
    ModuleCategoryAction::new(base.gauge(&delta).unwrap()).unwrap()
}

fn actions() -> Vec<ModuleCategoryAction> {
    let mut v: Vec<_> = [corpus::swap_c2(5), corpus::twisted_c2_f5(), corpus::c3_permutation(7), corpus::trivial_kc2(5)]
        .into_iter()
        .map(|w| ModuleCategoryAction::new(w).unwrap())
        .collect();
    v.push(gauged_klein());
    v
}

#[test]
fn trivial_structure_is_valid() {
    let act = ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap();
    let x = ModuleRep::regular(act.algebra());
    let e = EquivariantModule { base: x.clone(), alpha: vec![Matrix::identity(fp(5), 2); 2] };
    assert!(validate_equivariant(&act, &e).is_valid());
    let end = hom_equivariant(&act, &e, &e).unwrap();
    assert_eq!(end.len(), x.hom(act.algebra(), &x).len());
}

#[test]
fn swap_structure_and_its_sign_twist() {
    let field = fp(5);
    let act = ModuleCategoryAction::new(corpus::swap_c2(5)).unwrap();
    let good = swap_object(field, Matrix::from_ints(field, &[&[0, 1], &[1, 0]]));
    assert!(validate_equivariant(&act, &good).is_valid());
    let bad = swap_object(field, Matrix::from_ints(field, &[&[0, -1], &[1, 0]]));
    let rep = validate_equivariant(&act, &bad);
    assert!(!rep.is_valid());
    assert!(rep.non_isomorphisms.is_empty());
    assert_eq!(rep.relation_failures, vec![(1, 1)]);

    // Brute force over all 625 matrices: the equivariant endomorphisms are scalars.
    let fixed = (0..625u64)
        .filter(|code| {
            let f = Matrix::from_fn(field, 2, 2, |i, j| Scalar::from_u64(field, code / 5u64.pow((2 * i + j) as u32) % 5));
            is_equivariant_hom(&good, &good, &f)
        })
        .count();
    assert_eq!(fixed, 5);
    assert_eq!(hom_equivariant(&act, &good, &good).unwrap().len(), 1);
    let cp = crossed_product(act.weak()).unwrap();
    let m = to_crossed_module(&act, &good);
    assert!(m.validate(&cp.algebra).is_valid());
    assert_eq!(m.dim, 2);
    assert_eq!(m.hom(&cp.algebra, &m).len(), 1);
    assert_eq!(from_crossed_module(&act, &cp, &m).unwrap(), good);
}

#[test]
fn characters_of_kc2_have_no_equivariant_homs() {
    let field = fp(5);
    let act = ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap();
    let chi = |s: i64| EquivariantModule {
        base: ModuleRep { dim: 1, action: vec![Matrix::identity(field, 1), Matrix::from_ints(field, &[&[s]])] },
        alpha: vec![Matrix::identity(field, 1); 2],
    };
    assert!(validate_equivariant(&act, &chi(-1)).is_valid());
    assert!(hom_equivariant(&act, &chi(1), &chi(-1)).unwrap().is_empty());
    assert_eq!(hom_equivariant(&act, &chi(1), &chi(1)).unwrap().len(), 1);
}

#[test]
fn projector_requires_invertible_order() {
    let act = ModuleCategoryAction::new(corpus::trivial_kc2(2)).unwrap();
    let e = induction(&act, &ModuleRep::regular(act.algebra()));
    assert_eq!(hom_equivariant(&act, &e, &e), Err(EquivariantError::GroupOrderNotInvertible));
    assert!(!hom_equivariant_direct(&act, &e, &e).is_empty());
}

#[test]
fn induction_examples() {
    let field = fp(5);
    let act = ModuleCategoryAction::new(corpus::swap_c2(5)).unwrap();
    let ind = induction(&act, &s1(field));
    assert!(validate_equivariant(&act, &ind).is_valid());
    assert_eq!(ind.base, s1(field).direct_sum(&s2(field)));
    let reg = induction(&act, &ModuleRep::regular(act.algebra()));
    assert_eq!(reg.dim(), 4);

    let one = ModuleCategoryAction::new(WeakAction::trivial(FinAbGroup::cyclic(1), Algebra::cyclic_group_algebra(field, 3))).unwrap();
    let x = ModuleRep::regular(one.algebra());
    let ind = induction(&one, &x);
    assert_eq!(ind.base, x);
    assert!(ind.alpha[0].is_identity());
    let rep = verify_adjunctions(&one, std::slice::from_ref(&x), std::slice::from_ref(&ind)).unwrap();
    assert!(rep.passed());
    assert!(mu(&one, &x).is_identity() && eta(&one, &x).is_identity());
}

#[test]
fn induced_objects_are_valid_everywhere() {
    let cfg = SearchConfig::default();
    for act in actions() {
        for x in act.default_probes(&cfg) {
            let ind = induction(&act, &x);
            assert_eq!(ind.dim(), act.order() * x.dim);
            assert!(validate_equivariant(&act, &ind).is_valid());
        }
    }
}

#[test]
fn swap_adjunction_on_s1() {
    let field = fp(5);
    let act = ModuleCategoryAction::new(corpus::swap_c2(5)).unwrap();
    let x = s1(field);
    let e = induction(&act, &x);
    assert_eq!(hom_equivariant(&act, &e, &e).unwrap().len(), 1);
    assert_eq!(x.hom(act.algebra(), &e.base).len(), 1);
    assert!(verify_adjunctions(&act, &[x], &[e]).unwrap().passed());
}

#[test]
fn adjunctions_and_monads_on_default_probes() {
    let cfg = SearchConfig::default();
    for act in actions() {
        let xs = act.default_probes(&cfg);
        let es = default_equivariant_probes(&act, &xs, &cfg);
        for e in &es {
            assert!(validate_equivariant(&act, e).is_valid());
        }
        let adj = verify_adjunctions(&act, &xs, &es).unwrap();
        assert!(adj.passed(), "{:?}", adj.failures);
        assert_eq!(adj.probe_pairs, xs.len() * es.len());
        let mon = verify_monad_laws(&act, &xs, &es);
        assert!(mon.passed(), "{:?}", mon.failures);
        for e in &es {
            assert!(comparison_module_ok(&act, e));
        }
        for x in &xs {
            assert!(comparison_prime_module_ok(&act, x));
            let (l, r) = end_ind_dimensions(&act, x);
            assert_eq!(l, r);
        }
    }
}

#[test]
fn trivial_kc2_adjunction_dimensions() {
    let act = ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap();
    let x = ModuleRep::regular(act.algebra());
    let ind = induction(&act, &x);
    // Both sides of the first adjunction at (A, Ind A).
    assert_eq!(hom_equivariant(&act, &ind, &ind).unwrap().len(), 4);
    assert_eq!(x.hom(act.algebra(), &ind.base).len(), 2 * 2);
}

#[test]
fn crossed_transport_round_trips_and_preserves_homs() {
    let cfg = SearchConfig::default();
    for act in actions() {
        let cp = crossed_product(act.weak()).unwrap();
        let xs = act.default_probes(&cfg);
        let es = default_equivariant_probes(&act, &xs, &cfg);
        for e in &es {
            let m = to_crossed_module(&act, e);
            assert!(m.validate(&cp.algebra).is_valid());
            assert_eq!(&from_crossed_module(&act, &cp, &m).unwrap(), e);
        }
        for e1 in &es {
            for e2 in &es {
                assert!(crossed_hom_transport_ok(&act, &cp, e1, e2));
            }
        }
    }
}

#[test]
fn projector_agrees_with_direct_solve() {
    let cfg = SearchConfig::default();
    for act in actions() {
        let xs = act.default_probes(&cfg);
        let es = default_equivariant_probes(&act, &xs, &cfg);
        for e1 in &es {
            for e2 in &es {
                let a = hom_equivariant(&act, e1, e2).unwrap();
                let b = hom_equivariant_direct(&act, e1, e2);
                assert_eq!(a.len(), b.len());
                assert!(a.iter().all(|f| is_equivariant_hom(e1, e2, f)));
            }
        }
    }
}

#[test]
fn swap_end_of_induced_sum() {
    let field = fp(13);
    let act = ModuleCategoryAction::new(corpus::swap_c2(13)).unwrap();
    let m = s1(field).direct_sum(&s2(field));
    assert_eq!(end_ind_dimensions(&act, &m), (4, 4));
}

#[test]
fn comparison_separates_structures() {
    let field = fp(5);
    let act = ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap();
    let x = ModuleRep::regular(act.algebra());
    let plus = EquivariantModule { base: x.clone(), alpha: vec![Matrix::identity(field, 2); 2] };
    let minus = EquivariantModule { base: x, alpha: vec![Matrix::identity(field, 2), Matrix::scalar(field, 2, &Scalar::from_i64(field, -1))] };
    assert!(validate_equivariant(&act, &minus).is_valid());
    assert!(comparison_module_ok(&act, &minus));
    assert!(comparison_separates(&plus, &minus));
    assert_ne!(counit(&plus), counit(&minus));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// `f ↦ ε_E ∘ Ind(f)` inverts the first adjunction map.
    #[test]
    fn first_adjunction_mate_round_trips(which in 0usize..5, coeffs in proptest::collection::vec(0i64..5, 16)) {
        let act = &actions()[which];
        let field = act.algebra().field();
        let cfg = SearchConfig::default();
        let xs = act.default_probes(&cfg);
        let es = default_equivariant_probes(act, &xs, &cfg);
        let x = &xs[coeffs[0] as usize % xs.len()];
        let e = &es[coeffs[1] as usize % es.len()];
        let basis = x.hom(act.algebra(), &e.base);
        let f = basis.iter().zip(&coeffs[2..]).fold(Matrix::zero(field, e.dim(), x.dim), |acc, (b, &c)| {
            acc.add(&b.scale(&Scalar::from_i64(field, c)))
        });
        let n = act.order();
        let theta = counit(e).mul(&sum_over_group(n, &f));
        let ind = induction(act, x);
        prop_assert!(is_equivariant_hom(&ind, e, &theta));
        let uinv = act.unit_component(x).inverse().unwrap();
        prop_assert_eq!(theta.submatrix(0, 0, e.dim(), x.dim).mul(&uinv), f);
    }
}

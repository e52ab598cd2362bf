use super::*;
use crate::algebra::{center, k0_basis};
use crate::corpus;
use crate::scalar::FieldSpec;
use proptest::prelude::*;

fn f(p: u64) -> FieldSpec {
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

fn corpus_actions() -> Vec<WeakAction> {
    vec![
        corpus::swap_c2(13),
        corpus::twisted_c2_f5(),
        corpus::c3_permutation(13),
        corpus::trivial_kc2(5),
        corpus::klein_regular(5),
        corpus::sign_dual_numbers(7),
    ]
}

/// Every automorphism of a small algebra, by enumerating all matrices.
fn all_automorphisms(a: &Algebra) -> Vec<AlgebraMap> {
    let q = a.field().size().unwrap();
    let n = a.dim();
    let cells = n * n;
    let mut out = Vec::new();
    for code in 0..q.pow(cells as u32) {
        let digits: Vec<u64> = (0..cells).map(|i| code / q.pow(i as u32) % q).collect();
        let m = Matrix::from_fn(a.field(), n, n, |i, j| Scalar::from_u64(a.field(), digits[i * n + j]));
        let map = AlgebraMap::new(m);
        if map.is_automorphism(a) {
            out.push(map);
        }
    }
    out
}

#[test]
fn corpus_validates() {
    for w in corpus_actions() {
        assert!(validate_weak_action(&w).is_valid(), "{:?}", validate_weak_action(&w));
    }
}

#[test]
fn tampered_cocycle_is_reported() {
    let mut w = corpus::swap_c2(5);
    w.c[3] = sv(f(5), &[2, 1]);
    let rep = validate_weak_action(&w);
    assert!(!rep.wa2.is_empty());
    assert!(!rep.is_valid());
    // A non-central c(g,g) on k×k with swap still satisfies WA1, so only WA2 fails.
    assert!(rep.wa1.is_empty());
}

#[test]
fn derived_identities_on_a_gauged_action() {
    let field = f(5);
    let m2 = Algebra::matrix_algebra(field, 2);
    let base = WeakAction::trivial(FinAbGroup::cyclic(2), m2);
    let delta = vec![sv(field, &[1, 1, 0, 1]), sv(field, &[0, 1, 1, 1])];
    let w = base.gauge(&delta).unwrap();
    assert!(validate_weak_action(&w).is_valid());
    assert_ne!(w.c(0, 0), w.algebra.unit());
    assert!(crossed_systems_equivalent(&base, &w, &AlgebraMap::identity(&w.algebra), &delta).unwrap());
}

#[test]
fn identity_suite_on_corpus() {
    let cfg = SearchConfig::default();
    for w in corpus_actions() {
        let act = ModuleCategoryAction::new(w).unwrap();
        let probes = act.default_probes(&cfg);
        let rep = act.appendix_a_suite(&probes, &cfg).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.families.iter().all(|(p, t)| p == t && *t > 0));
    }
}

#[test]
fn identity_suite_on_weak_cocycle() {
    let field = f(7);
    let m2 = Algebra::matrix_algebra(field, 2);
    let group = FinAbGroup::new(vec![2, 2]).unwrap();
    let base = WeakAction::trivial(group, m2);
    let delta = vec![
        sv(field, &[2, 0, 0, 1]),
        sv(field, &[1, 1, 0, 1]),
        sv(field, &[0, 1, 1, 0]),
        sv(field, &[1, 0, 3, 1]),
    ];
    let act = ModuleCategoryAction::new(base.gauge(&delta).unwrap()).unwrap();
    let cfg = SearchConfig::default();
    let probes = act.default_probes(&cfg);
    assert!(act.appendix_a_suite(&probes, &cfg).unwrap().passed());
}

#[test]
fn unnatural_components_are_rejected() {
    let field = f(5);
    let act = ModuleCategoryAction::new(corpus::swap_c2(5)).unwrap();
    let bogus = nat::Nat::Elem { src: vec![1], tgt: vec![], unit: sv(field, &[1, 1]) };
    assert!(matches!(act.calculus().eval(&bogus, &s1(field)), Err(NatError::NotNatural(_))));
    let ill = nat::Nat::comp(act.eps_nat(1, 1), act.eps_nat(1, 1));
    assert!(act.calculus().typecheck(&ill).is_err());
}

/// The component of `Elem` whiskered by `w`, computed by twisting the
/// module letter by letter and checking the module map directly.
fn component_by_twisting(calc: &TwistCalculus, n: &Nat, w: &[usize], m: &ModuleRep) -> Option<Matrix> {
    let Nat::Elem { src, tgt, unit } = n else { unreachable!() };
    let base = calc.apply_word(w, m).unwrap();
    let mat = base.act(&calc.algebra, unit);
    let s = calc.apply_word(src, &base).unwrap();
    let t = calc.apply_word(tgt, &base).unwrap();
    s.is_hom(&t, &mat).then_some(mat)
}

#[test]
fn evaluation_matches_module_twisting() {
    let cfg = SearchConfig::default();
    for w in corpus_actions() {
        let act = ModuleCategoryAction::new(w).unwrap();
        let calc = act.calculus();
        let mut probes = act.default_probes(&cfg);
        probes.push(ModuleRep::regular(act.algebra()));
        let n = act.order();
        for g in 0..n {
            for h in 0..n {
                let e = act.eps_nat(g, h);
                for word in [vec![], vec![h], vec![g, h], vec![(g + 1) % n, h, g]] {
                    for m in &probes {
                        let fast = calc.eval(&Nat::right(e.clone(), word.clone()), m).unwrap();
                        assert_eq!(Some(fast), component_by_twisting(calc, &e, &word, m));
                    }
                }
            }
        }
    }
}

#[test]
fn naturality_matches_the_regular_module() {
    let field = f(3);
    let a = Algebra::product_of_fields(field, 2);
    let auts = all_automorphisms(&a);
    let calc = TwistCalculus::new(a.clone(), auts.clone());
    let reg = ModuleRep::regular(&a);
    for s in 0..auts.len() {
        for t in 0..auts.len() {
            for u in [[1, 1], [1, 2], [2, 1]] {
                let e = Nat::Elem { src: vec![s], tgt: vec![t], unit: sv(field, &u) };
                let natural = calc.is_natural(&[s], &[t], &sv(field, &u)).unwrap();
                assert_eq!(natural, component_by_twisting(&calc, &e, &[], &reg).is_some());
            }
        }
    }
    // Noncommutative: M2(F3) with inner letters and every unit.
    let m2 = Algebra::matrix_algebra(field, 2);
    let all: Vec<Vec<Scalar>> =
        (0..81).map(|c| (0..4).map(|i| Scalar::from_u64(field, c / 3u64.pow(i) % 3)).collect()).collect();
    let units: Vec<Vec<Scalar>> = all.into_iter().filter(|u| m2.is_unit(u)).collect();
    assert_eq!(units.len(), 48);
    let letters = [1, 5, 17].iter().map(|&k| AlgebraMap::conjugation(&m2, &units[k]).unwrap()).collect();
    let calc = TwistCalculus::new(m2.clone(), letters);
    let reg = ModuleRep::regular(&m2);
    let mut counts = [0, 0];
    for u in &units {
        for (s, t) in [(vec![0], vec![]), (vec![0, 1], vec![2]), (vec![1], vec![1]), (vec![2, 2], vec![0])] {
            let e = Nat::Elem { src: s.clone(), tgt: t.clone(), unit: u.clone() };
            let natural = calc.is_natural(&s, &t, u).unwrap();
            assert_eq!(natural, component_by_twisting(&calc, &e, &[], &reg).is_some());
            counts[natural as usize] += 1;
        }
    }
    assert!(counts[0] > 0 && counts[1] > 0, "{counts:?}");
}

#[test]
fn epsilon_components_are_module_isomorphisms() {
    let act = ModuleCategoryAction::new(corpus::twisted_c2_f5()).unwrap();
    let reg = ModuleRep::regular(act.algebra());
    let e = act.epsilon(1, 1, &reg);
    assert_eq!(e, Matrix::from_ints(f(5), &[&[2]]));
    assert!(act.unit_component(&reg).is_identity());
}

#[test]
fn crossed_product_dimension_and_trivial_case() {
    let w = corpus::trivial_kc2(5);
    let cp = crossed_product(&w).unwrap();
    assert_eq!(cp.algebra.dim(), 4);
    // Group algebra of C2 × C2 is commutative.
    assert_eq!(center(&cp.algebra).len(), 4);
}

#[test]
fn swap_crossed_product_is_a_matrix_algebra() {
    let cp = crossed_product(&corpus::swap_c2(13)).unwrap();
    assert_eq!(cp.algebra.dim(), 4);
    assert_eq!(center(&cp.algebra).len(), 1);
    let k0 = k0_basis(&cp.algebra, &SearchConfig::default()).unwrap();
    assert_eq!(k0.simples.len(), 1);
    assert_eq!(k0.simples[0].dim, 2);
}

#[test]
fn twisted_group_algebra_is_a_field() {
    let cp = crossed_product(&corpus::twisted_c2_f5()).unwrap();
    let a = &cp.algebra;
    assert_eq!(a.dim(), 2);
    for x in 0..5 {
        for y in 0..5 {
            if x == 0 && y == 0 {
                continue;
            }
            assert!(a.is_unit(&sv(f(5), &[x, y])), "({x},{y})");
        }
    }
    // t = ḡ satisfies t² = 2.
    let t = a.basis_vector(1);
    assert_eq!(a.mul(&t, &t), a.scale(a.unit(), &Scalar::from_u64(f(5), 2)));
}

#[test]
fn crossed_product_unit_uses_inverse_of_c_ee() {
    let field = f(5);
    let base = WeakAction::trivial(FinAbGroup::cyclic(2), Algebra::product_of_fields(field, 2));
    let w = base.gauge(&[sv(field, &[2, 3]), sv(field, &[1, 4])]).unwrap();
    assert_ne!(w.c(0, 0), w.algebra.unit());
    let cp = crossed_product(&w).unwrap();
    let cinv = w.algebra.invert_element(w.c(0, 0)).unwrap();
    assert_eq!(&cp.algebra.unit()[..2], cinv.as_slice());
}

#[test]
fn equivalence_examples() {
    let w = corpus::swap_c2(5);
    let a = w.algebra.clone();
    let ones = vec![a.unit().to_vec(); 2];
    assert!(crossed_systems_equivalent(&w, &w, &AlgebraMap::identity(&a), &ones).unwrap());
    let swap = AlgebraMap::permutation(&a, &[1, 0]);
    let pushed = w.push_forward(&swap, &a).unwrap();
    assert!(crossed_systems_equivalent(&w, &pushed, &swap, &ones).unwrap());
    let autos = all_automorphisms(&a);
    assert_eq!(autos.len(), 2);
    let triv = corpus::trivial_kk_c2(5);
    assert_eq!(search_equivalence(&w, &triv, &autos, &SearchConfig::default()), Search::Absent);
    assert!(matches!(search_equivalence(&w, &pushed, &autos, &SearchConfig::default()), Search::Found(_)));
    let bad = AlgebraMap::new(Matrix::from_ints(f(5), &[&[1, 1], &[0, 1]]));
    assert_eq!(crossed_systems_equivalent(&w, &w, &bad, &ones), Err(ActionError::NotMultiplicative));
}

#[test]
fn induced_cyclic_examples() {
    let field = f(5);
    let a = Algebra::product_of_fields(field, 2);
    let triv = induced_cyclic_action(&a, &CompatiblePair { sigma: AlgebraMap::identity(&a), a: a.unit().to_vec(), d: 2 }).unwrap();
    assert_eq!(*triv.weak(), corpus::trivial_kk_c2(5));
    let swap = AlgebraMap::permutation(&a, &[1, 0]);
    let sw = induced_cyclic_action(&a, &CompatiblePair { sigma: swap, a: a.unit().to_vec(), d: 2 }).unwrap();
    assert_eq!(*sw.weak(), corpus::swap_c2(5));
    let field = f(7);
    let dual = Algebra::truncated_polynomial(field, 2);
    let lam = AlgebraMap::new(Matrix::from_ints(field, &[&[1, 0], &[0, 2]]));
    let act = induced_cyclic_action(&dual, &CompatiblePair { sigma: lam.clone(), a: dual.unit().to_vec(), d: 3 }).unwrap();
    let cfg = SearchConfig::default();
    assert!(act.appendix_a_suite(&act.default_probes(&cfg), &cfg).unwrap().passed());
    assert!(matches!(
        induced_cyclic_action(&dual, &CompatiblePair { sigma: lam, a: dual.unit().to_vec(), d: 2 }),
        Err(ActionError::NotCompatible(_))
    ));
}

#[test]
fn compatible_pairs_from_actions() {
    let cfg = SearchConfig::default();
    let cases = [
        (corpus::trivial_kk_c2(5), vec![1, 1], false),
        (corpus::swap_c2(5), vec![1, 1], true),
        (corpus::twisted_c2_f5(), vec![2], false),
    ];
    for (w, a, swapped) in cases {
        let act = ModuleCategoryAction::new(w).unwrap();
        let rep = compatible_pair_from_action(&act, &act.default_probes(&cfg)).unwrap();
        assert_eq!(rep.pair.a, sv(act.algebra().field(), &a));
        assert_eq!(rep.pair.sigma.matrix.is_identity(), !swapped);
        assert!(rep.commutes && rep.round_trip);
    }
}

#[test]
fn c3_pair_round_trip() {
    let cfg = SearchConfig::default();
    let act = ModuleCategoryAction::new(corpus::c3_permutation(13)).unwrap();
    let rep = compatible_pair_from_action(&act, &act.default_probes(&cfg)).unwrap();
    assert!(rep.commutes && rep.round_trip);
    let again = induced_cyclic_action(act.algebra(), &rep.pair).unwrap();
    let rep2 = compatible_pair_from_action(&again, &again.default_probes(&cfg)).unwrap();
    assert_eq!(rep2.pair, rep.pair);
}

#[test]
fn pair_round_trip_on_a_gauged_cyclic_action() {
    let field = f(7);
    let m2 = Algebra::matrix_algebra(field, 2);
    let base = WeakAction::trivial(FinAbGroup::cyclic(3), m2);
    let delta = vec![sv(field, &[1, 0, 0, 1]), sv(field, &[1, 2, 0, 1]), sv(field, &[3, 0, 1, 1])];
    let act = ModuleCategoryAction::new(base.gauge(&delta).unwrap()).unwrap();
    let cfg = SearchConfig::default();
    let rep = compatible_pair_from_action(&act, &act.default_probes(&cfg)).unwrap();
    assert!(rep.commutes && rep.round_trip);
    assert!(rep.pair.check(act.algebra()).is_ok());
}

#[test]
fn scalar_rescaled_pairs_are_isomorphic() {
    let field = f(5);
    let a = Algebra::product_of_fields(field, 1);
    let p1 = CompatiblePair { sigma: AlgebraMap::identity(&a), a: sv(field, &[2]), d: 2 };
    // c = c' ∘ μ^d with μ = 2 gives a' = a / 4.
    let p2 = CompatiblePair { sigma: AlgebraMap::identity(&a), a: sv(field, &[3]), d: 2 };
    let probes = vec![ModuleRep::regular(&a)];
    assert!(pairs_isomorphic_via(&a, &p1, &p2, &sv(field, &[2]), &probes).unwrap());
    assert!(!pairs_isomorphic_via(&a, &p1, &p2, &sv(field, &[1]), &probes).unwrap());
}

#[test]
fn d_compatibility() {
    let cfg = SearchConfig::default();
    let field = f(5);
    let kk = Algebra::product_of_fields(field, 2);
    assert_eq!(is_d_compatible(&kk, &AlgebraMap::identity(&kk), 3, &cfg), UnitSearch::Witness(sv(field, &[1, 1])));
    let swap = AlgebraMap::permutation(&kk, &[1, 0]);
    assert_eq!(is_d_compatible(&kk, &swap, 2, &cfg), UnitSearch::Witness(sv(field, &[1, 1])));
    let dual = Algebra::truncated_polynomial(field, 2);
    let lam = AlgebraMap::new(Matrix::from_ints(field, &[&[1, 0], &[0, 2]]));
    assert_eq!(is_d_compatible(&dual, &lam, 2, &cfg), UnitSearch::NoUnit);
    assert!(matches!(is_d_compatible(&dual, &lam, 4, &cfg), UnitSearch::Witness(_)));
    // Inner σ on M2: σ = conj(u) is 1-compatible with witness u up to scalars.
    let m2 = Algebra::matrix_algebra(f(7), 2);
    let u = sv(f(7), &[1, 1, 0, 1]);
    let sigma = AlgebraMap::conjugation(&m2, &u).unwrap();
    match is_d_compatible(&m2, &sigma, 7, &cfg) {
        UnitSearch::Witness(w) => {
            let pair = CompatiblePair::from_compatibility_witness(&m2, sigma, &w, 7).unwrap();
            assert!(pair.check(&m2).is_ok());
        }
        other => panic!("{other:?}"),
    }
}

use crate::algebra::UnitSearch;

#[test]
fn stable_module_crossed_systems() {
    let field = f(13);
    let act = ModuleCategoryAction::new(corpus::swap_c2(13)).unwrap();
    let t = s1(field).direct_sum(&s2(field));
    let id = Matrix::identity(field, 2);
    let sw = Matrix::from_ints(field, &[&[0, 1], &[1, 0]]);
    let sys = crossed_system_from_stable_module(&act, &t, &[id.clone(), sw.clone()]).unwrap();
    assert_eq!(sys.weak.algebra.dim(), 2);
    assert!(sys.weak.c.iter().all(|c| c.as_slice() == sys.weak.algebra.unit()));
    assert!(!sys.weak.rho[1].matrix.is_identity());
    assert_eq!(sys.weak.rho[1].pow(2), AlgebraMap::identity(&sys.weak.algebra));
    // Product on End(T) is composition.
    for i in 0..2 {
        for j in 0..2 {
            let prod = sys.weak.algebra.mul(&sys.weak.algebra.basis_vector(i), &sys.weak.algebra.basis_vector(j));
            assert_eq!(sys.matrix_of(&prod), sys.end_basis[i].mul(&sys.end_basis[j]));
        }
    }
    let lam = Matrix::from_ints(field, &[&[1, 0], &[0, 5]]);
    let alpha2 = [id.clone(), sw.mul(&lam)];
    let sys2 = crossed_system_from_stable_module(&act, &t, &alpha2).unwrap();
    assert_ne!(sys2.weak.c, sys.weak.c);
    let delta = canonical_delta(&sys, &[id.clone(), sw.clone()], &alpha2).unwrap();
    let idmap = AlgebraMap::identity(&sys.weak.algebra);
    assert!(crossed_systems_equivalent(&sys.weak, &sys2.weak, &idmap, &delta).unwrap());
    assert!(matches!(
        crossed_system_from_stable_module(&act, &t, &[id.clone(), id.clone()]),
        Err(ActionError::NotIsomorphism(_))
    ));
    assert_eq!(find_stable_isos(&act, &s1(field), &SearchConfig::default()), Err(ActionError::NotStable(1)));
}

#[test]
fn stable_crossed_system_for_trivial_action() {
    let field = f(5);
    let act = ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap();
    let t = ModuleRep::regular(act.algebra());
    let id = Matrix::identity(field, 2);
    let sys = crossed_system_from_stable_module(&act, &t, &[id.clone(), id]).unwrap();
    assert_eq!(sys.weak, WeakAction::trivial(act.group().clone(), sys.weak.algebra.clone()));
}

#[test]
fn stable_crossed_system_with_nontrivial_cocycle() {
    // Regular module of the twisted datum, with α from the search.
    let act = ModuleCategoryAction::new(corpus::klein_regular(5)).unwrap();
    let t = ModuleRep::regular(act.algebra());
    let cfg = SearchConfig::default();
    let alpha = find_stable_isos(&act, &t, &cfg).unwrap().found().unwrap();
    let sys = crossed_system_from_stable_module(&act, &t, &alpha).unwrap();
    assert_eq!(sys.weak.algebra.dim(), 4);
    let cp = crossed_product(&sys.weak).unwrap();
    assert_eq!(cp.algebra.dim(), 16);
}

#[test]
fn k0_actions() {
    let cfg = SearchConfig::default();
    let triv = k0_action(&ModuleCategoryAction::new(corpus::trivial_kk_c2(5)).unwrap(), &cfg).unwrap();
    assert!(triv.is_trivial());
    let sw = k0_action(&ModuleCategoryAction::new(corpus::swap_c2(5)).unwrap(), &cfg).unwrap();
    assert_eq!(sw.perms, vec![vec![1, 0]]);
    assert_eq!(sw.matrix(0), vec![vec![0, 1], vec![1, 0]]);
    let kc2 = k0_action(&ModuleCategoryAction::new(corpus::trivial_kc2(5)).unwrap(), &cfg).unwrap();
    assert_eq!(kc2.perms, vec![vec![0, 1]]);
    let kl = k0_action(&ModuleCategoryAction::new(corpus::klein_regular(5)).unwrap(), &cfg).unwrap();
    assert_eq!(kl.perms.len(), 2);
    assert!(kl.perms.iter().all(|p| p.iter().enumerate().all(|(i, &j)| i != j)));
}

fn unit_2x2(field: FieldSpec) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(0i64..7, 4)
        .prop_map(move |v| sv(field, &v))
        .prop_filter("invertible", move |v| Matrix::from_fn(field, 2, 2, |i, j| v[2 * i + j].clone()).is_invertible())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gauging_preserves_validity_and_the_identity_suite(
        d in proptest::collection::vec(unit_2x2(FieldSpec::Prime(7)), 3)
    ) {
        let field = f(7);
        let m2 = Algebra::matrix_algebra(field, 2);
        let tau = AlgebraMap::conjugation(&m2, &sv(field, &[0, 1, 1, 0])).unwrap();
        let base = WeakAction::strict(
            FinAbGroup::cyclic(3),
            m2.clone(),
            vec![AlgebraMap::identity(&m2), AlgebraMap::identity(&m2), AlgebraMap::identity(&m2)],
        ).unwrap();
        let w = base.gauge(&d).unwrap();
        prop_assert!(validate_weak_action(&w).is_valid());
        prop_assert!(crossed_systems_equivalent(&base, &w, &AlgebraMap::identity(&m2), &d).unwrap());
        let pushed = w.push_forward(&tau, &m2).unwrap();
        prop_assert!(validate_weak_action(&pushed).is_valid());
        let act = ModuleCategoryAction::new(w).unwrap();
        let probes = vec![ModuleRep::regular(&m2)];
        let cfg = SearchConfig::default();
        prop_assert!(act.appendix_a_suite(&probes, &cfg).unwrap().passed());
        let cp = crossed_product(act.weak()).unwrap();
        prop_assert_eq!(cp.algebra.dim(), 12);
    }
}

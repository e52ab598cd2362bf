use super::*;
use crate::action::validate_weak_action;
use alloc::collections::BTreeSet;
use proptest::prelude::*;

const F13: FieldSpec = FieldSpec::Prime(13);

fn all_types(field: FieldSpec) -> Vec<GradedPresentation> {
    let lambda = Scalar::from_i64(field, 2);
    [TubularType::T2222(lambda), TubularType::T333, TubularType::T442, TubularType::T632]
        .into_iter()
        .map(|k| GradedPresentation::new(k, field).unwrap())
        .collect()
}

#[test]
fn dualizing_element_orders() {
    for (w, ord) in [(vec![2, 2, 2, 2], 2), (vec![3, 3, 3], 3), (vec![4, 4, 2], 4), (vec![6, 3, 2], 6)] {
        let l = GradingGroup::new(&w).unwrap();
        assert_eq!(l.order(&l.omega()), Some(ord), "{w:?}");
        assert_eq!(l.order(&l.c()), None);
        assert_eq!(l.free_rank(), 1);
        for i in 0..w.len() {
            assert_eq!(l.scale(w[i] as i128, &l.x(i)), l.c());
        }
    }
    let l = GradingGroup::new(&[2, 2, 2, 2]).unwrap();
    assert_eq!(l.scale(2, &l.x(0)), l.scale(2, &l.x(1)));
    assert_ne!(l.x(0), l.x(1));
    assert_eq!(GradingGroup::new(&[]), Err(TubularError::BadWeights));
    assert_eq!(GradingGroup::new(&[2, 0]), Err(TubularError::BadWeights));
    let z = GradingGroup::new(&[5]).unwrap();
    assert_eq!((z.free_rank(), z.torsion()), (1, vec![]));
}

#[test]
fn torsion_matches_enumeration() {
    for w in [vec![2u64, 2, 2, 2], vec![3, 3, 3], vec![4, 4, 2], vec![6, 3, 2], vec![2, 3]] {
        let l = GradingGroup::new(&w).unwrap();
        let t = w.len();
        // Oracle: distinct classes of degree-zero vectors in a box.
        let bound = *w.iter().max().unwrap() as i128;
        let mut seen = BTreeSet::new();
        let mut v = vec![-bound; t];
        loop {
            if l.total_degree(&v) == 0 {
                seen.insert(l.normal_form(&v));
            }
            let mut k = 0;
            while k < t {
                v[k] += 1;
                if v[k] <= bound {
                    break;
                }
                v[k] = -bound;
                k += 1;
            }
            if k == t {
                break;
            }
        }
        let tors: i128 = l.torsion().iter().product();
        assert_eq!(seen.len() as i128, tors, "{w:?}");
    }
}

#[test]
fn rewriting_examples() {
    let p = GradedPresentation::new(TubularType::T2222(Scalar::from_i64(F13, 3)), F13).unwrap();
    let x3sq = Poly::term(vec![0, 0, 2, 0], F13.one());
    let mut want = Poly::term(vec![0, 2, 0, 0], F13.one());
    want.add_term(vec![2, 0, 0, 0], F13.one().neg());
    assert_eq!(p.reduce(&x3sq), want);
    for pres in all_types(F13) {
        assert!(pres.confluence_failures().is_empty());
        assert!(pres.inhomogeneous_rules().is_empty());
        let tr = pres.truncation(8);
        let comps = tr.components(&pres);
        assert_eq!(comps[&pres.group.zero()], 1);
        assert_eq!(comps[&pres.group.c()], 2, "{}", pres.kind.name());
    }
    for bad in [F13.zero(), F13.one()] {
        assert!(matches!(GradedPresentation::new(TubularType::T2222(bad), F13), Err(TubularError::BadParameter(_))));
    }
}

/// Raw monomials of each degree minus the rank of the relation ideal in
/// that degree.
fn oracle_components(pres: &GradedPresentation, bound: u64) -> BTreeMap<LElem, usize> {
    let n = pres.ngens();
    let mut raw: Vec<Mono> = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(p: &GradedPresentation, i: usize, cur: &mut Mono, left: i128, out: &mut Vec<Mono>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let step = p.total_degree(&unit_mono(cur.len(), i, 1));
        let mut e = 0;
        while step * e as i128 <= left {
            cur[i] = e;
            rec(p, i + 1, cur, left - step * e as i128, out);
            e += 1;
        }
        cur[i] = 0;
    }
    rec(pres, 0, &mut cur, bound as i128, &mut raw);
    let mut by_deg: BTreeMap<LElem, Vec<Mono>> = BTreeMap::new();
    for m in &raw {
        by_deg.entry(pres.degree(m)).or_default().push(m.clone());
    }
    let mut out = BTreeMap::new();
    for (deg, monos) in &by_deg {
        let mut rows = Vec::new();
        for k in 0..pres.rules.len() {
            let rel = pres.relation(k);
            let rd = pres.degree(&unit_mono(n, pres.rules[k].var, pres.rules[k].power));
            for m in &raw {
                if pres.group.add(&pres.degree(m), &rd) == *deg {
                    let prod = rel.mul(&Poly::term(m.clone(), pres.field.one()));
                    rows.push(monos.iter().map(|mm| prod.terms().find(|(x, _)| *x == mm).map_or(pres.field.zero(), |(_, s)| s.clone())).collect::<Vec<_>>());
                }
            }
        }
        let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(pres.field, rows).unwrap().rank() };
        out.insert(deg.clone(), monos.len() - rank);
    }
    out
}

#[test]
fn graded_dimensions_match_the_oracle() {
    for pres in all_types(F13) {
        let bound = 6;
        assert_eq!(pres.truncation(bound).components(&pres), oracle_components(&pres, bound), "{}", pres.kind.name());
    }
    // Hilbert function 4n of S(2,2,2,2).
    let pres = &all_types(F13)[0];
    let tr = pres.truncation(8);
    for d in 1..=8i128 {
        assert_eq!(tr.basis.iter().filter(|m| pres.total_degree(m) == d).count() as i128, 4 * d);
    }
}

#[test]
fn truncations_are_consistent() {
    for pres in all_types(F13) {
        let rep = pres.truncation(8).check(&pres);
        assert!(rep.passed(), "{} {rep:?}", pres.kind.name());
        assert!(rep.overflow_products > 0);
    }
}

#[test]
fn standard_automorphisms_validate() {
    let (i, eps) = field_constants(F13).unwrap();
    assert_eq!((i.residue(), eps.residue()), (Some(5), Some(4)));
    for e in standard_automorphisms(F13).unwrap() {
        let rep = validate_graded_automorphism(&e.g, &e.presentation, 8);
        assert!(rep.passed(), "{} {rep:?}", e.name);
    }
}

#[test]
fn wrong_parameters_fail_validation() {
    let rows = standard_automorphisms(F13).unwrap();
    let (_, eps) = field_constants(F13).unwrap();
    // g₁ needs λ = −1.
    let wrong = GradedPresentation::new(TubularType::T2222(eps), F13).unwrap();
    let rep = validate_graded_automorphism(&rows[0].g, &wrong, 4);
    assert!(!rep.relations_preserved && rep.multiplicative_failures > 0);
    // Swapping generators of different weight does not descend to L.
    let p442 = GradedPresentation::new(TubularType::T442, F13).unwrap();
    let one = F13.one();
    let swap = GradedAutomorphism { images: vec![(2, one.clone()), (1, one.clone()), (0, one.clone())] };
    let rep = validate_graded_automorphism(&swap, &p442, 4);
    assert!(!rep.psi_well_defined && !rep.passed());
    let not_bij = GradedAutomorphism { images: vec![(0, one.clone()), (0, one.clone()), (2, one)] };
    assert!(!validate_graded_automorphism(&not_bij, &p442, 4).bijective);
}

#[test]
fn powers_are_scalings() {
    let (i, eps) = field_constants(F13).unwrap();
    let one = F13.one();
    let rows = standard_automorphisms(F13).unwrap();
    let expected = [
        (2, vec![one.neg(), one.clone(), one.clone(), one.clone()], 2),
        (3, vec![i.clone(); 4], 4),
        (2, vec![one.clone(), one.clone(), eps.mul(&eps)], 3),
    ];
    for (e, (m, gamma, ord)) in rows.iter().zip(expected) {
        let sp = scaling_power(&e.presentation, &e.g, 12).unwrap();
        assert_eq!((sp.m, &sp.gamma, sp.gamma_order), (m, &gamma, ord), "{}", e.name);
        assert!(sp.well_defined);
    }
    // γ(x⃗₁) = −1 with the others trivial is not a character of L(3,3,3)-style
    // relations when the exponents disagree.
    let p333 = GradedPresentation::new(TubularType::T333, F13).unwrap();
    assert!(!character_well_defined(&p333, &[i.clone(), one.clone(), one.clone()]));
    assert!(character_well_defined(&p333, &[eps.mul(&eps), one.clone(), one]));
}

#[test]
fn realized_cyclic_actions_are_valid() {
    let dims = [(13, 2), (13, 4), (19, 3)];
    for (e, (n, r)) in standard_automorphisms(F13).unwrap().iter().zip(dims) {
        let sp = scaling_power(&e.presentation, &e.g, 12).unwrap();
        let bound = e.presentation.total_degree(&unit_mono(e.presentation.ngens(), 0, e.presentation.group.weights[0] as u32));
        let real = smash_realization(&e.presentation, &e.g, &sp, bound as u64).unwrap();
        assert_eq!((real.truncation_dim, real.quotient_order), (n, r), "{}", e.name);
        assert_eq!(real.algebra.dim() as u64, n as u64 * r);
        assert!(crate::algebra::validate_algebra(&real.algebra).is_valid());
        let act = realized_action(&real).unwrap();
        assert!(validate_weak_action(act.weak()).is_valid(), "{}", e.name);
        assert_eq!(act.order() as u64, sp.m);
    }
}

#[test]
fn field_requirements() {
    assert_eq!(field_constants(FieldSpec::Prime(7)), Err(TubularError::MissingConstant("√−1")));
    assert_eq!(field_constants(FieldSpec::Prime(5)), Err(TubularError::MissingConstant("ε")));
    assert!(matches!(field_constants(FieldSpec::Prime(3)), Err(TubularError::BadParameter(_))));
    let q = FieldSpec::Cyclotomic(12);
    let (i, eps) = field_constants(q).unwrap();
    assert!(i.mul(&i).add(&q.one()).is_zero());
    assert!(eps.mul(&eps).sub(&eps).add(&q.one()).is_zero());
    for e in standard_automorphisms(q).unwrap() {
        assert!(validate_graded_automorphism(&e.g, &e.presentation, 3).passed(), "{}", e.name);
        assert!(scaling_power(&e.presentation, &e.g, 12).unwrap().well_defined);
    }
}

proptest! {
    #[test]
    fn normal_forms_respect_the_presentation(
        w in proptest::sample::select(vec![vec![2u64, 2, 2, 2], vec![3, 3, 3], vec![4, 4, 2], vec![6, 3, 2]]),
        a in proptest::collection::vec(-20i128..20, 4),
        b in proptest::collection::vec(-20i128..20, 4),
        k in -5i128..5,
    ) {
        let l = GradingGroup::new(&w).unwrap();
        let t = w.len();
        let (a, b) = (&a[..t], &b[..t]);
        let sum: Vec<i128> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(l.normal_form(&sum), l.add(&l.normal_form(a), &l.normal_form(b)));
        for r in l.relations() {
            let shifted: Vec<i128> = a.iter().zip(&r).map(|(x, y)| x + k * y).collect();
            prop_assert_eq!(l.normal_form(&shifted), l.normal_form(a));
        }
    }
}

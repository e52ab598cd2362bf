//! Small worked actions used by tests, the acceptance suite and the CLI.

use alloc::vec;
use alloc::vec::Vec;

use crate::abgroup::FinAbGroup;
use crate::action::WeakAction;
use crate::algebra::{Algebra, AlgebraMap};
use crate::scalar::{FieldSpec, Scalar};

fn fp(p: u64) -> FieldSpec {
    FieldSpec::Prime(p)
}

/// C2 swapping the factors of k×k.
pub fn swap_c2(p: u64) -> WeakAction {
    let a = Algebra::product_of_fields(fp(p), 2);
    let rho = vec![AlgebraMap::identity(&a), AlgebraMap::permutation(&a, &[1, 0])];
    WeakAction::strict(FinAbGroup::cyclic(2), a, rho).expect("shapes")
}

/// C2 acting trivially on k×k.
pub fn trivial_kk_c2(p: u64) -> WeakAction {
    WeakAction::trivial(FinAbGroup::cyclic(2), Algebra::product_of_fields(fp(p), 2))
}

/// C2 on F_5 with trivial ρ and `c(g,g) = 2`.
pub fn twisted_c2_f5() -> WeakAction {
    let f = fp(5);
    let a = Algebra::product_of_fields(f, 1);
    let one = vec![f.one()];
    let two = vec![Scalar::from_u64(f, 2)];
    let c = vec![one.clone(), one.clone(), one, two];
    WeakAction::new(FinAbGroup::cyclic(2), a.clone(), vec![AlgebraMap::identity(&a); 2], c).expect("shapes")
}

/// C3 cyclically permuting the factors of k×k×k.
pub fn c3_permutation(p: u64) -> WeakAction {
    let a = Algebra::product_of_fields(fp(p), 3);
    let s = AlgebraMap::permutation(&a, &[1, 2, 0]);
    let rho = vec![AlgebraMap::identity(&a), s.clone(), s.pow(2)];
    WeakAction::strict(FinAbGroup::cyclic(3), a, rho).expect("shapes")
}

/// C2 acting trivially on the group algebra kC2.
pub fn trivial_kc2(p: u64) -> WeakAction {
    WeakAction::trivial(FinAbGroup::cyclic(2), Algebra::cyclic_group_algebra(fp(p), 2))
}

/// C2 × C2 permuting the four factors of k⁴ regularly.
pub fn klein_regular(p: u64) -> WeakAction {
    let a = Algebra::product_of_fields(fp(p), 4);
    let group = FinAbGroup::new(vec![2, 2]).expect("orders");
    // Factor i is labelled by the element with index i; g moves i to g + i.
    let rho = (0..4).map(|g| AlgebraMap::permutation(&a, &(0..4).map(|i| group.mul_index(g, i)).collect::<Vec<_>>())).collect();
    WeakAction::strict(group, a, rho).expect("shapes")
}

/// C2 on k[x]/(x²) by `x ↦ -x`.
pub fn sign_dual_numbers(p: u64) -> WeakAction {
    let f = fp(p);
    let a = Algebra::truncated_polynomial(f, 2);
    let m = crate::scalar::Matrix::from_ints(f, &[&[1, 0], &[0, -1]]);
    WeakAction::strict(FinAbGroup::cyclic(2), a, vec![AlgebraMap::identity(&Algebra::truncated_polynomial(f, 2)), AlgebraMap::new(m)])
        .expect("shapes")
}

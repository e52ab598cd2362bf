//! Cyclic actions and compatible pairs.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::nat::{Nat, TwistCalculus, Word};
use super::{ActionError, ModuleCategoryAction, WeakAction};
use crate::abgroup::FinAbGroup;
use crate::algebra::{find_unit_in_solution_space, Algebra, AlgebraMap, ModuleRep, UnitSearch};
use crate::scalar::{Matrix, Scalar};
use crate::search::SearchConfig;

/// A twist `^σ(-)` together with `c: F^d → Id`, stored as the unit `a`
/// with `c_M = R_M(a)`. Naturality of c means `σ^d(x) = a x a⁻¹`, and
/// `Fc = cF` means `σ(a) = a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatiblePair {
    pub sigma: AlgebraMap,
    pub a: Vec<Scalar>,
    pub d: u64,
}

impl CompatiblePair {
    /// Checks both identities exactly on the basis.
    pub fn check(&self, alg: &Algebra) -> Result<(), ActionError> {
        if !self.sigma.is_automorphism(alg) {
            return Err(ActionError::NotCompatible("σ is not an automorphism".into()));
        }
        let ainv = alg
            .invert_element(&self.a)
            .ok_or_else(|| ActionError::NotCompatible("a is not a unit".into()))?;
        if self.sigma.apply(&self.a) != self.a {
            return Err(ActionError::NotCompatible("σ(a) ≠ a".into()));
        }
        let sd = self.sigma.pow(self.d);
        for x in 0..alg.dim() {
            let bx = alg.basis_vector(x);
            if sd.apply(&bx) != alg.mul3(&self.a, &bx, &ainv) {
                return Err(ActionError::NotCompatible(format!("σ^d ≠ a(-)a⁻¹ on basis element {x}")));
            }
        }
        Ok(())
    }

    /// From an element `w` with `σ(w) = w` and `σ^d(x) = w⁻¹ x w`.
    pub fn from_compatibility_witness(alg: &Algebra, sigma: AlgebraMap, w: &[Scalar], d: u64) -> Option<CompatiblePair> {
        Some(CompatiblePair { sigma, a: alg.invert_element(w)?, d })
    }

    /// The element `w = a⁻¹` with `σ^d(x) = w⁻¹ x w`.
    pub fn compatibility_witness(&self, alg: &Algebra) -> Vec<Scalar> {
        alg.invert_element(&self.a).expect("checked unit")
    }
}

/// The `C_d`-action induced by a compatible pair: `F_{g^i} = ^{σ^i}(-)`,
/// `ε_{g^i,g^j}` the identity when `i + j < d` and `F^{i+j-d}c` otherwise.
/// As a weak action, `ρ(g^j) = σ^{d-j}` and `c(g^p, g^q) = a` exactly when
/// `p, q ≥ 1` and `p + q ≤ d`.
pub fn induced_cyclic_action(alg: &Algebra, pair: &CompatiblePair) -> Result<ModuleCategoryAction, ActionError> {
    pair.check(alg)?;
    let d = pair.d as usize;
    if d == 0 {
        return Err(ActionError::NotCompatible("order must be positive".into()));
    }
    let group = FinAbGroup::cyclic(pair.d);
    let rho: Vec<AlgebraMap> =
        (0..d).map(|j| if j == 0 { AlgebraMap::identity(alg) } else { pair.sigma.pow((d - j) as u64) }).collect();
    let mut c = Vec::with_capacity(d * d);
    for p in 0..d {
        for q in 0..d {
            let hit = p >= 1 && q >= 1 && p + q <= d;
            c.push(if hit { pair.a.clone() } else { alg.unit().to_vec() });
        }
    }
    ModuleCategoryAction::new(WeakAction::new(group, alg.clone(), rho, c)?)
}

/// Outcome of [`compatible_pair_from_action`].
#[derive(Clone, Debug)]
pub struct CyclicReport {
    pub pair: CompatiblePair,
    /// `Fc = cF` on the probes.
    pub commutes: bool,
    /// The input action is isomorphic to the induced one via `δ_i = ε^{(i)}`.
    pub round_trip: bool,
}

fn cyclic_order(act: &ModuleCategoryAction) -> Result<usize, ActionError> {
    match act.group().cyclic_orders() {
        [d] if *d >= 2 => Ok(*d as usize),
        _ => Err(ActionError::Shape("expected a cyclic group of order at least 2".into())),
    }
}

/// `F = F_g`, `c = u ∘ ε^{(d)}`, read off on the regular module, with
/// `ε^{(i+1)} = ε_{g^i,g} ∘ ε^{(i)}F`.
pub fn compatible_pair_from_action(
    act: &ModuleCategoryAction,
    probes: &[ModuleRep],
) -> Result<CyclicReport, ActionError> {
    let d = cyclic_order(act)?;
    let alg = act.algebra();
    let g = 1usize;
    let calc = act.calculus();
    let c_nat = Nat::comp(act.unit_nat(), act.power_eps(g, d));
    let reg = ModuleRep::regular(alg);
    let c_reg = calc.eval(&c_nat, &reg)?;
    let a = c_reg.apply(alg.unit());
    let pair = CompatiblePair { sigma: act.functor_map(g).clone(), a, d: d as u64 };
    // Reconstruct c from a and compare with the evaluated composite.
    let rebuilt = Nat::Elem { src: vec![g; d], tgt: vec![], unit: pair.a.clone() };
    let mut all = probes.to_vec();
    all.push(reg);
    if !calc.equal_on(&c_nat, &rebuilt, &all)? {
        return Err(ActionError::Invalid("c is not right multiplication by c_R(1)".into()));
    }
    let commutes = calc.equal_on(&Nat::left(vec![g], c_nat.clone()), &Nat::right(c_nat, vec![g]), &all)?;
    let round_trip = round_trip(act, &pair, &all)?;
    Ok(CyclicReport { pair, commutes, round_trip })
}

/// Checks `δ_{[i+j]} ∘ ε̄_{g^i,g^j} = ε_{g^i,g^j} ∘ (F_{g^i}δ_j ∘ δ_i F̄_{g^j})`
/// for all `0 ≤ i, j < d`, where barred data comes from the induced
/// action and `δ_i = ε^{(i)}` composed with the identification
/// `F̄_{g^i} = F^i`.
fn round_trip(act: &ModuleCategoryAction, pair: &CompatiblePair, probes: &[ModuleRep]) -> Result<bool, ActionError> {
    let d = pair.d as usize;
    let alg = act.algebra();
    let induced = match induced_cyclic_action(alg, pair) {
        Ok(i) => i,
        Err(ActionError::NotCompatible(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let mut letters = act.calculus().letters.clone();
    letters.extend(induced.calculus().letters.iter().cloned());
    let calc = TwistCalculus::new(alg.clone(), letters);
    let g = 1usize;
    let delta = |i: usize| -> Nat {
        let coerce = Nat::Elem { src: vec![d + i], tgt: vec![g; i], unit: alg.unit().to_vec() };
        Nat::comp(act.power_eps(g, i), coerce)
    };
    for i in 0..d {
        for j in 0..d {
            let lhs = Nat::comp(delta((i + j) % d), induced.eps_nat(i, j).shifted(d));
            let rhs = Nat::comp(
                act.eps_nat(i, j),
                Nat::comp(Nat::left(vec![i], delta(j)), Nat::right(delta(i), vec![d + j])),
            );
            if !calc.equal_on(&lhs, &rhs, probes)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that `b` (a unit with `σ₁(x) b = b σ₂(x)`) is an isomorphism
/// of compatible pairs: `c₁ = c₂ ∘ b^d` on the probes.
pub fn pairs_isomorphic_via(
    alg: &Algebra,
    p1: &CompatiblePair,
    p2: &CompatiblePair,
    b: &[Scalar],
    probes: &[ModuleRep],
) -> Result<bool, ActionError> {
    if p1.d != p2.d {
        return Ok(false);
    }
    let d = p1.d as usize;
    let calc = TwistCalculus::new(alg.clone(), vec![p1.sigma.clone(), p2.sigma.clone()]);
    let bn = Nat::Elem { src: vec![0], tgt: vec![1], unit: b.to_vec() };
    let mut pow = bn.clone();
    for i in 1..d {
        // b^{i+1} = bF'^i ∘ F b^i
        pow = Nat::comp(Nat::right(bn.clone(), vec![1; i]), Nat::left(vec![0], pow));
    }
    let c1 = Nat::Elem { src: vec![0; d], tgt: Word::new(), unit: p1.a.clone() };
    let c2 = Nat::Elem { src: vec![1; d], tgt: Word::new(), unit: p2.a.clone() };
    match calc.equal_on(&c1, &Nat::comp(c2, pow), probes) {
        Ok(v) => Ok(v),
        Err(super::nat::NatError::NotNatural(_)) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

/// Searches `w` with `σ(w) = w` and `σ^d(x) = w⁻¹ x w` for all x.
pub fn is_d_compatible(alg: &Algebra, sigma: &AlgebraMap, d: u64, cfg: &SearchConfig) -> UnitSearch {
    let sd = sigma.pow(d);
    let n = alg.dim();
    let mut conds: Vec<Matrix> = (0..n)
        .map(|x| {
            let bx = alg.basis_vector(x);
            alg.right_mult_matrix(&sd.apply(&bx)).sub(&alg.left_mult_matrix(&bx))
        })
        .collect();
    conds.push(sigma.matrix.sub(&Matrix::identity(alg.field(), n)));
    let res = find_unit_in_solution_space(alg, &conds, cfg);
    if let UnitSearch::Witness(w) = &res {
        debug_assert_eq!(AlgebraMap::conjugation(alg, w).as_ref(), Some(&sd));
    }
    res
}

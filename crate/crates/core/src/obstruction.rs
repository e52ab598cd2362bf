//! The obstruction 2-cocycle of an autoequivalence commuting with a group
//! action, its cohomology class, and isomorphisms of equivariant functors.
//!
//! A datum is an [`EquivariantFunctor`] whose `δ_g` are only required to
//! be natural isomorphisms `FF_g → F_gF`; the coherence identity may fail
//! by a scalar, which is the cocycle.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abgroup::{is_2cocycle, is_coboundary, AbGroupError, CoboundaryResult, Cocycle2};
use crate::action::nat::{Nat, NatError};
use crate::action::ModuleCategoryAction;
use crate::algebra::{find_unit_in_solution_space, AlgebraMap, ModuleRep, UnitSearch};
use crate::duality::{DualGroup, EquivariantFunctor};
use crate::scalar::Scalar;
use crate::search::SearchConfig;

pub type CommutingFunctorDatum = EquivariantFunctor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionError {
    Invalid(String),
    /// The two sides at `(g, h)` are not proportional by one scalar.
    CenterTooLarge { g: usize, h: usize },
    NoProbes,
    Nat(NatError),
    Group(AbGroupError),
}

impl fmt::Display for ObstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionError::Invalid(s) => write!(f, "invalid datum: {s}"),
            ObstructionError::CenterTooLarge { g, h } => {
                write!(f, "center larger than k; obstruction undefined (at g={g}, h={h})")
            }
            ObstructionError::NoProbes => write!(f, "no nonzero probe modules"),
            ObstructionError::Nat(e) => write!(f, "{e}"),
            ObstructionError::Group(e) => write!(f, "{e:?}"),
        }
    }
}

impl From<NatError> for ObstructionError {
    fn from(e: NatError) -> Self {
        ObstructionError::Nat(e)
    }
}

impl From<AbGroupError> for ObstructionError {
    fn from(e: AbGroupError) -> Self {
        ObstructionError::Group(e)
    }
}

/// Shapes, invertibility of every `δ_g`, and naturality of every `δ_g`
/// (checked on the regular module, which is faithful).
pub fn check_datum(act: &ModuleCategoryAction, d: &CommutingFunctorDatum) -> Result<(), ObstructionError> {
    let a = act.algebra();
    if d.delta.len() != act.order() || d.delta.iter().any(|x| x.len() != a.dim()) {
        return Err(ObstructionError::Invalid("δ has the wrong shape".into()));
    }
    if !d.sigma.is_automorphism(a) {
        return Err(ObstructionError::Invalid("F is not twisting by an automorphism".into()));
    }
    if let Some(g) = d.delta.iter().position(|x| !a.is_unit(x)) {
        return Err(ObstructionError::Invalid(format!("δ_{g} is not invertible")));
    }
    let (calc, f) = d.calculus(act);
    let reg = ModuleRep::regular(a);
    for g in 0..act.order() {
        calc.eval(&d.delta_nat(f, g), &reg)?;
    }
    Ok(())
}

fn cocycle_from_table(act: &ModuleCategoryAction, table: &[Scalar]) -> Cocycle2 {
    let grp = act.group();
    let n = act.order();
    Cocycle2::from_fn(grp, act.algebra().field(), |g, h| table[grp.index_of(g) * n + grp.index_of(h)].clone())
}

/// `σ_F(g, h)` with `δ_{gh} ∘ Fε_{g,h} = σ_F(g,h) · ε_{g,h}F ∘ F_gδ_h ∘ δ_gF_h`
/// on every probe. Disagreement between probes is an error.
pub fn obstruction_cocycle(
    act: &ModuleCategoryAction,
    d: &CommutingFunctorDatum,
    probes: &[ModuleRep],
) -> Result<Cocycle2, ObstructionError> {
    check_datum(act, d)?;
    if probes.iter().all(|m| m.dim == 0) {
        return Err(ObstructionError::NoProbes);
    }
    let (calc, f) = d.calculus(act);
    let n = act.order();
    let mut table = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let (lhs, rhs) = d.coherence_sides(act, f, g, h);
            match calc.ratio_on(&lhs, &rhs, probes)? {
                Some(s) => table.push(s),
                None => return Err(ObstructionError::CenterTooLarge { g, h }),
            }
        }
    }
    Ok(cocycle_from_table(act, &table))
}

/// `σ` of the datum rescaled by `λ` must equal `σ · ∂λ`.
pub fn gauge_covariant(
    act: &ModuleCategoryAction,
    d: &CommutingFunctorDatum,
    lambda: &[Scalar],
    probes: &[ModuleRep],
) -> Result<bool, ObstructionError> {
    let s = obstruction_cocycle(act, d, probes)?;
    let s2 = obstruction_cocycle(act, &d.rescaled(act, lambda), probes)?;
    let db = Cocycle2::coboundary(act.group(), act.algebra().field(), lambda);
    Ok(s2 == s.mul(&db))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionClass {
    /// `σ = ∂λ`, and `(F, λ(g)⁻¹δ_g)` is a verified equivariant functor.
    Trivial { lambda: Vec<Scalar>, lift: EquivariantFunctor },
    Nontrivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub cocycle: Cocycle2,
    pub is_cocycle: bool,
    pub class: ObstructionClass,
}

pub fn obstruction_class(
    act: &ModuleCategoryAction,
    d: &CommutingFunctorDatum,
    probes: &[ModuleRep],
) -> Result<ObstructionReport, ObstructionError> {
    let cocycle = obstruction_cocycle(act, d, probes)?;
    let is_cocycle = is_2cocycle(&cocycle);
    let class = match is_coboundary(&cocycle)? {
        CoboundaryResult::NontrivialClass => ObstructionClass::Nontrivial,
        CoboundaryResult::Witness(lambda) => {
            let inv: Vec<Scalar> = lambda.iter().map(|l| l.inv().expect("unit")).collect();
            let lift = d.rescaled(act, &inv);
            let bad = lift.validate(act, probes).map_err(|e| ObstructionError::Invalid(format!("{e:?}")))?;
            if !bad.is_empty() {
                return Err(ObstructionError::Invalid(format!("corrected δ still fails coherence at {bad:?}")));
            }
            ObstructionClass::Trivial { lambda, lift }
        }
    };
    Ok(ObstructionReport { cocycle, is_cocycle, class })
}

/// Every `λ: G → k*` over a prime field, with the number tried and the
/// first `λ` whose coboundary is `σ`.
pub fn exhaustive_coboundary_search(s: &Cocycle2) -> Option<(usize, Option<Vec<Scalar>>)> {
    let units: Vec<Scalar> = s.field.elements()?.into_iter().filter(|x| !x.is_zero()).collect();
    let n = s.group.order();
    let mut idx = vec![0usize; n];
    let mut tried = 0;
    let mut hit = None;
    loop {
        let lambda: Vec<Scalar> = idx.iter().map(|&i| units[i].clone()).collect();
        tried += 1;
        if hit.is_none() && &Cocycle2::coboundary(&s.group, s.field, &lambda) == s {
            hit = Some(lambda);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Some((tried, hit));
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < units.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// `F₁F₂` with `δ_g = δ¹_gF₂ ∘ F₁δ²_g`.
pub fn compose(act: &ModuleCategoryAction, d1: &CommutingFunctorDatum, d2: &CommutingFunctorDatum) -> CommutingFunctorDatum {
    let a = act.algebra();
    let delta = d1.delta.iter().zip(&d2.delta).map(|(x1, x2)| a.mul(x2, &d2.sigma.apply(x1))).collect();
    EquivariantFunctor { sigma: d2.sigma.compose(&d1.sigma), delta }
}

/// `σ_{F₁F₂} / (σ_{F₁} σ_{F₂})` is a coboundary.
pub fn multiplicative_on(
    act: &ModuleCategoryAction,
    d1: &CommutingFunctorDatum,
    d2: &CommutingFunctorDatum,
    probes: &[ModuleRep],
) -> Result<bool, ObstructionError> {
    let s1 = obstruction_cocycle(act, d1, probes)?;
    let s2 = obstruction_cocycle(act, d2, probes)?;
    let s12 = obstruction_cocycle(act, &compose(act, d1, d2), probes)?;
    let q = s12.mul(&s1.mul(&s2).inv());
    Ok(matches!(is_coboundary(&q)?, CoboundaryResult::Witness(_)))
}

/// A unit `z` with `φ = R(z): F₁ → F₂` natural and compatible with the
/// `δ`s: `F_gφ ∘ δ¹_g = δ²_g ∘ φF_g`. Solved exactly over the algebra,
/// then cross-checked on the probes.
pub fn functor_isomorphism(
    act: &ModuleCategoryAction,
    d1: &EquivariantFunctor,
    d2: &EquivariantFunctor,
    probes: &[ModuleRep],
    cfg: &SearchConfig,
) -> Result<UnitSearch, ObstructionError> {
    check_datum(act, d1)?;
    check_datum(act, d2)?;
    let a = act.algebra();
    let mut conds = Vec::new();
    // R(z): ^σ₁M → ^σ₂M is a module map iff σ₁(b)z = zσ₂(b).
    for i in 0..a.dim() {
        let b = a.basis_vector(i);
        conds.push(a.left_mult_matrix(&d1.sigma.apply(&b)).sub(&a.right_mult_matrix(&d2.sigma.apply(&b))));
    }
    // δ¹_g z = ρ_g(z) δ²_g, where F_g twists by ρ_g.
    for g in 0..act.order() {
        let tau: &AlgebraMap = act.functor_map(g);
        conds.push(a.left_mult_matrix(&d1.delta[g]).sub(&a.right_mult_matrix(&d2.delta[g]).mul(&tau.matrix)));
    }
    let found = find_unit_in_solution_space(a, &conds, cfg);
    if let UnitSearch::Witness(z) = &found {
        let mut calc = act.calculus().clone();
        let f1 = calc.push_letter(d1.sigma.clone());
        let f2 = calc.push_letter(d2.sigma.clone());
        let phi = |w: usize| Nat::right(Nat::Elem { src: vec![f1], tgt: vec![f2], unit: z.clone() }, vec![w]);
        for g in 0..act.order() {
            let lhs = Nat::comp(Nat::left(vec![g], Nat::Elem { src: vec![f1], tgt: vec![f2], unit: z.clone() }), d1.delta_nat(f1, g));
            let rhs = Nat::comp(d2.delta_nat(f2, g), phi(g));
            if !calc.equal_on(&lhs, &rhs, probes)? {
                return Err(ObstructionError::Invalid(format!("solved isomorphism fails on probes at g={g}")));
            }
        }
    }
    Ok(found)
}

/// `(Id, χ(g)·1)`.
pub fn character_datum(act: &ModuleCategoryAction, dual: &DualGroup, chi: usize) -> EquivariantFunctor {
    let a = act.algebra();
    EquivariantFunctor {
        sigma: AlgebraMap::identity(a),
        delta: (0..act.order()).map(|g| a.scalar_vector(dual.value(chi, g))).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    /// Pairs of distinct characters whose data are isomorphic.
    pub isomorphic_pairs: Vec<(usize, usize)>,
    /// Pairs the unit search could not decide.
    pub undetermined_pairs: Vec<(usize, usize)>,
    pub characters: usize,
}

impl KernelReport {
    /// `χ ↦ (Id, χ)` is injective on isomorphism classes.
    pub fn injective(&self) -> bool {
        self.isomorphic_pairs.is_empty() && self.undetermined_pairs.is_empty()
    }
}

pub fn kernel_check(
    act: &ModuleCategoryAction,
    dual: &DualGroup,
    probes: &[ModuleRep],
    cfg: &SearchConfig,
) -> Result<KernelReport, ObstructionError> {
    let data: Vec<_> = (0..dual.order()).map(|c| character_datum(act, dual, c)).collect();
    let mut rep = KernelReport { isomorphic_pairs: Vec::new(), undetermined_pairs: Vec::new(), characters: data.len() };
    for i in 0..data.len() {
        for j in i + 1..data.len() {
            match functor_isomorphism(act, &data[i], &data[j], probes, cfg)? {
                UnitSearch::Witness(_) => rep.isomorphic_pairs.push((i, j)),
                UnitSearch::NoUnit => {}
                UnitSearch::Undetermined => rep.undetermined_pairs.push((i, j)),
            }
        }
    }
    Ok(rep)
}

/// Characters whose datum is isomorphic to `d`; `d` must have `F = Id`.
pub fn match_character(
    act: &ModuleCategoryAction,
    dual: &DualGroup,
    d: &EquivariantFunctor,
    probes: &[ModuleRep],
    cfg: &SearchConfig,
) -> Result<Vec<usize>, ObstructionError> {
    if d.sigma != AlgebraMap::identity(act.algebra()) {
        return Err(ObstructionError::Invalid("underlying functor is not the identity".into()));
    }
    let mut out = Vec::new();
    for c in 0..dual.order() {
        if let UnitSearch::Witness(_) = functor_isomorphism(act, d, &character_datum(act, dual, c), probes, cfg)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// `(^σ(-), δ)` with `δ_e = 1` and `δ_g = u` for every `g ≠ e`.
pub fn projective_datum(act: &ModuleCategoryAction, sigma: AlgebraMap, u: Vec<Scalar>) -> EquivariantFunctor {
    let a = act.algebra();
    let mut delta = vec![a.unit().to_vec(); act.order()];
    for d in delta.iter_mut().skip(1) {
        *d = u.clone();
    }
    EquivariantFunctor { sigma, delta }
}

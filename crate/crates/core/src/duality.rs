//! The dual action of the character group on equivariant modules, the
//! double dual, the functor Θ and the monad isomorphism behind it,
//! equivariantized functors, and the bijection on stable objects.
//!
//! Objects of `(C^G)^Ĝ` are nested: an equivariant module together with
//! maps `β_χ` indexed by character. Characters are indexed in the order of
//! [`character_group`], so index 0 is the trivial character.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abgroup::{character_group, Character};
use crate::action::{crossed_product, crossed_system_from_stable_module, ActionError, ModuleCategoryAction};
use crate::action::nat::{Nat, TwistCalculus};
use crate::algebra::{twisted_module, AlgebraError, AlgebraMap, ModuleRep, Rep};
use crate::equivariant::{
    counit, eta_prime, hom_equivariant, induction, is_equivariant_hom, mu_prime, sum_over_group, EquivariantError,
    EquivariantModule, validate_equivariant,
};
use crate::scalar::{Echelon, FieldSpec, Matrix, Scalar};
use crate::search::{Search, SearchConfig};
use crate::action::find_stable_isos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualityError {
    /// The group does not split over the field.
    NotSplit,
    NotStable(usize),
    NotBasic,
    Inconclusive(String),
    Invalid(String),
    Equivariant(EquivariantError),
    Action(ActionError),
    Algebra(AlgebraError),
}

impl fmt::Display for DualityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualityError::NotSplit => write!(f, "the group does not split over the field"),
            DualityError::NotStable(g) => write!(f, "module is not stable under group element #{g}"),
            DualityError::NotBasic => write!(f, "module is not basic"),
            DualityError::Inconclusive(s) => write!(f, "inconclusive: {s}"),
            DualityError::Invalid(s) => write!(f, "invalid input: {s}"),
            DualityError::Equivariant(e) => write!(f, "{e}"),
            DualityError::Action(e) => write!(f, "{e}"),
            DualityError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl From<EquivariantError> for DualityError {
    fn from(e: EquivariantError) -> Self {
        DualityError::Equivariant(e)
    }
}

impl From<ActionError> for DualityError {
    fn from(e: ActionError) -> Self {
        DualityError::Action(e)
    }
}

impl From<AlgebraError> for DualityError {
    fn from(e: AlgebraError) -> Self {
        DualityError::Algebra(e)
    }
}

/// Character table of the acting group: `values[χ][g] = χ(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGroup {
    pub characters: Vec<Character>,
    pub values: Vec<Vec<Scalar>>,
    mul: Vec<Vec<usize>>,
}

impl DualGroup {
    pub fn new(act: &ModuleCategoryAction) -> Result<DualGroup, DualityError> {
        let group = act.group();
        let characters = character_group(group, act.algebra().field()).map_err(|_| DualityError::NotSplit)?;
        let values: Vec<Vec<Scalar>> =
            characters.iter().map(|c| (0..group.order()).map(|g| c.eval(&group.element_at(g))).collect()).collect();
        let m = values.len();
        let mul = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        let prod: Vec<Scalar> = values[a].iter().zip(&values[b]).map(|(x, y)| x.mul(y)).collect();
                        values.iter().position(|v| *v == prod).expect("characters form a group")
                    })
                    .collect()
            })
            .collect();
        Ok(DualGroup { characters, values, mul })
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, chi: usize, g: usize) -> &Scalar {
        &self.values[chi][g]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }
}

/// `F_χ(X, α) = (X, χ⊗α)` with `(χ⊗α)_g = χ(g⁻¹) α_g`.
pub fn dual_twist(act: &ModuleCategoryAction, dual: &DualGroup, chi: usize, e: &EquivariantModule) -> EquivariantModule {
    EquivariantModule {
        base: e.base.clone(),
        alpha: e.alpha.iter().enumerate().map(|(g, a)| a.scale(dual.value(chi, act.weak().inv(g)))).collect(),
    }
}

/// An object of `(C^G)^Ĝ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublyEquivariant {
    pub inner: EquivariantModule,
    pub beta: Vec<Matrix>,
}

impl DoublyEquivariant {
    pub fn as_rep(&self, field: FieldSpec) -> Rep {
        let mut r = self.inner.as_rep(field);
        r.mats.extend(self.beta.iter().cloned());
        r
    }
}

/// Failures of the Ĝ-equivariance relation for a nested object.
pub fn validate_doubly(act: &ModuleCategoryAction, dual: &DualGroup, d: &DoublyEquivariant) -> Vec<String> {
    let mut out = Vec::new();
    if !validate_equivariant(act, &d.inner).is_valid() {
        out.push("inner object is not equivariant".into());
        return out;
    }
    if d.beta.len() != dual.order() {
        out.push(format!("expected {} character maps, got {}", dual.order(), d.beta.len()));
        return out;
    }
    for (chi, b) in d.beta.iter().enumerate() {
        let tw = dual_twist(act, dual, chi, &d.inner);
        if !b.is_invertible() || !is_equivariant_hom(&d.inner, &tw, b) {
            out.push(format!("β for character {chi} is not an isomorphism in C^G"));
        }
    }
    if !out.is_empty() {
        return out;
    }
    if !d.beta[0].is_identity() {
        out.push("β at the trivial character is not the identity".into());
    }
    for a in 0..dual.order() {
        for b in 0..dual.order() {
            if d.beta[dual.mul(a, b)] != d.beta[b].mul(&d.beta[a]) {
                out.push(format!("relation fails for characters ({a}, {b})"));
            }
        }
    }
    out
}

/// `Θ(X) = (Ind X, can(X))`, `can(X)_χ = ⊕_h χ(h)`.
pub fn theta(act: &ModuleCategoryAction, dual: &DualGroup, x: &ModuleRep) -> DoublyEquivariant {
    let field = act.algebra().field();
    let inner = induction(act, x);
    let beta = (0..dual.order())
        .map(|chi| {
            let blocks: Vec<Matrix> =
                (0..act.order()).map(|h| Matrix::scalar(field, x.dim, dual.value(chi, h))).collect();
            Matrix::block_diag(field, &blocks)
        })
        .collect();
    DoublyEquivariant { inner, beta }
}

/// `F̂_g(A, β) = (A, ev(g)⊗β)`, `(ev(g)⊗β)_χ = χ(g⁻¹) β_χ`.
pub fn double_dual_twist(act: &ModuleCategoryAction, dual: &DualGroup, g: usize, d: &DoublyEquivariant) -> DoublyEquivariant {
    let gi = act.weak().inv(g);
    DoublyEquivariant {
        inner: d.inner.clone(),
        beta: d.beta.iter().enumerate().map(|(chi, b)| b.scale(dual.value(chi, gi))).collect(),
    }
}

/// `(∂_g)_X: Ind F_g X → Ind X`, sending the summand `F_hF_gX` to
/// `F_{hg}X` by `(ε_{h,g})_X`.
pub fn partial(act: &ModuleCategoryAction, g: usize, x: &ModuleRep) -> Matrix {
    let n = act.order();
    let d = x.dim;
    let mut m = Matrix::zero(act.algebra().field(), n * d, n * d);
    for h in 0..n {
        m.set_block(act.weak().mul(h, g) * d, h * d, &act.epsilon(h, g, x));
    }
    m
}

/// Checks that every `∂_g` is an isomorphism `ΘF_g X → F̂_gΘX`, natural on
/// probe morphisms, and that `∂_{gh}∘Θε_{g,h} = F̂_g∂_h∘∂_gF_h`.
pub fn verify_double_dual(act: &ModuleCategoryAction, dual: &DualGroup, probes: &[ModuleRep]) -> Vec<String> {
    let field = act.algebra().field();
    let n = act.order();
    let mut out = Vec::new();
    for (i, x) in probes.iter().enumerate() {
        let tx = theta(act, dual, x);
        for g in 0..n {
            let src = theta(act, dual, &act.apply(g, x)).as_rep(field);
            let tgt = double_dual_twist(act, dual, g, &tx).as_rep(field);
            let p = partial(act, g, x);
            if !p.is_invertible() || !src.is_hom(&tgt, &p) {
                out.push(format!("∂ for element {g} is not an isomorphism at probe {i}"));
            }
            for h in 0..n {
                let lhs = partial(act, act.weak().mul(g, h), x).mul(&sum_over_group(n, &act.epsilon(g, h, x)));
                let rhs = partial(act, h, x).mul(&partial(act, g, &act.apply(h, x)));
                if lhs != rhs {
                    out.push(format!("∂ identity fails for ({g}, {h}) at probe {i}"));
                }
            }
        }
        for (j, y) in probes.iter().enumerate() {
            for f in x.hom(act.algebra(), y) {
                let fi = sum_over_group(n, &f);
                for g in 0..n {
                    if partial(act, g, y).mul(&fi) != fi.mul(&partial(act, g, x)) {
                        out.push(format!("∂ for element {g} is not natural on probes ({i}, {j})"));
                    }
                }
            }
        }
    }
    out
}

/// Induction for the dual action: `(⊕_χ F_χ E, β)` where `β_ψ` sends the
/// summand `ψχ` identically onto the summand `χ`.
pub fn hat_induction(act: &ModuleCategoryAction, dual: &DualGroup, e: &EquivariantModule) -> DoublyEquivariant {
    let field = act.algebra().field();
    let m = dual.order();
    let d = e.dim();
    let twists: Vec<EquivariantModule> = (0..m).map(|chi| dual_twist(act, dual, chi, e)).collect();
    let inner = twists[1..].iter().fold(twists[0].clone(), |acc, t| acc.direct_sum(t));
    let beta = (0..m)
        .map(|psi| {
            let mut b = Matrix::zero(field, m * d, m * d);
            for chi in 0..m {
                b.set_block(chi * d, dual.mul(psi, chi) * d, &Matrix::identity(field, d));
            }
            b
        })
        .collect();
    DoublyEquivariant { inner, beta }
}

/// `f: M̂(X, α) → N(X, α)` with `χ`-column `(χ(h⁻¹) α_h)_h`, and its
/// inverse with `χ`-row `(1/|G|) Σ_h χ(h) α_h⁻¹`.
pub fn monad_isomorphism(
    act: &ModuleCategoryAction,
    dual: &DualGroup,
    e: &EquivariantModule,
) -> Result<(Matrix, Matrix), DualityError> {
    let field = act.algebra().field();
    let n = act.order();
    let m = dual.order();
    let d = e.dim();
    let inv_n = Scalar::from_u64(field, n as u64).inv().ok_or(DualityError::NotSplit)?;
    let mut f = Matrix::zero(field, n * d, m * d);
    let mut finv = Matrix::zero(field, m * d, n * d);
    for h in 0..n {
        let ainv = e.alpha[h].inverse().ok_or_else(|| DualityError::Invalid("structure map is singular".into()))?;
        for chi in 0..m {
            f.set_block(h * d, chi * d, &e.alpha[h].scale(dual.value(chi, act.weak().inv(h))));
            finv.set_block(chi * d, h * d, &ainv.scale(&dual.value(chi, h).mul(&inv_n)));
        }
    }
    Ok((f, finv))
}

/// Multiplication of `M̂` at E: the summand `(ψ, χ)` of `M̂²E` goes
/// identically to the summand `ψχ`.
pub fn hat_mu(dual: &DualGroup, e: &EquivariantModule) -> Matrix {
    let field = e.alpha[0].field();
    let m = dual.order();
    let d = e.dim();
    let mut out = Matrix::zero(field, m * d, m * m * d);
    for psi in 0..m {
        for chi in 0..m {
            out.set_block(dual.mul(psi, chi) * d, (psi * m + chi) * d, &Matrix::identity(field, d));
        }
    }
    out
}

/// Inverse pair, equivariance, naturality on probe morphisms, and
/// compatibility with units and multiplications.
pub fn verify_monad_isomorphism(
    act: &ModuleCategoryAction,
    dual: &DualGroup,
    es: &[EquivariantModule],
) -> Result<Vec<String>, DualityError> {
    let field = act.algebra().field();
    let n = act.order();
    let m = dual.order();
    let mut out = Vec::new();
    for (i, e) in es.iter().enumerate() {
        let d = e.dim();
        let (f, finv) = monad_isomorphism(act, dual, e)?;
        if !f.mul(&finv).is_identity() || !finv.mul(&f).is_identity() {
            out.push(format!("f and its stated inverse disagree at probe {i}"));
        }
        let hat = hat_induction(act, dual, e).inner;
        let ind = induction(act, &e.base);
        if !is_equivariant_hom(&hat, &ind, &f) {
            out.push(format!("f is not a morphism in C^G at probe {i}"));
        }
        let mut hat_eta = Matrix::zero(field, m * d, d);
        hat_eta.set_block(0, 0, &Matrix::identity(field, d));
        if f.mul(&hat_eta) != eta_prime(e) {
            out.push(format!("f does not preserve units at probe {i}"));
        }
        let (f_hat, _) = monad_isomorphism(act, dual, &hat)?;
        let lhs = f.mul(&hat_mu(dual, e));
        let rhs = mu_prime(act, &e.base).mul(&sum_over_group(n, &f)).mul(&f_hat);
        if lhs != rhs {
            out.push(format!("f does not preserve multiplications at probe {i}"));
        }
        for (j, e2) in es.iter().enumerate() {
            let (f2, _) = monad_isomorphism(act, dual, e2)?;
            for phi in hom_equivariant(act, e, e2)? {
                if f2.mul(&sum_over_group(m, &phi)) != sum_over_group(n, &phi).mul(&f) {
                    out.push(format!("f is not natural on probes ({i}, {j})"));
                }
            }
        }
    }
    Ok(out)
}

fn hom_rep(a: &Rep, b: &Rep) -> Vec<Matrix> {
    a.hom(b)
}

/// Report of [`verify_theta_equivalence`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaReport {
    pub hom_pairs: usize,
    pub double_dual_checks: usize,
    /// Objects of `(C^G)^Ĝ` tested for membership in `add Θ(P)`.
    pub density_objects: usize,
    pub density_certified: usize,
    pub failures: Vec<String>,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.density_certified == self.density_objects
    }
}

/// Θ on probes: fully faithful on every pair of `probes`, the ∂ identities,
/// and density relative to the family generated by `probes` and the
/// underlying modules of `es`.
///
/// Density of `D` is certified by `id_D ∈ Σ_T span{φ∘ψ | ψ: D → ΘT, φ: ΘT → D}`,
/// which holds exactly when `D` is a summand of a sum of copies of `ΘT`s.
pub fn verify_theta_equivalence(
    act: &ModuleCategoryAction,
    dual: &DualGroup,
    probes: &[ModuleRep],
    es: &[EquivariantModule],
) -> ThetaReport {
    let field = act.algebra().field();
    let n = act.order();
    let mut rep = ThetaReport::default();
    let thetas: Vec<Rep> = probes.iter().map(|x| theta(act, dual, x).as_rep(field)).collect();
    for (i, x) in probes.iter().enumerate() {
        for (j, y) in probes.iter().enumerate() {
            rep.hom_pairs += 1;
            let homs = x.hom(act.algebra(), y);
            let target = hom_rep(&thetas[i], &thetas[j]);
            let images: Vec<Vec<Scalar>> = homs.iter().map(|f| sum_over_group(n, f).entries().to_vec()).collect();
            let mut ech = Echelon::new(field, n * n * x.dim * y.dim);
            let independent = images.iter().all(|v| ech.insert(v.clone()));
            let all_homs = homs.iter().all(|f| thetas[i].is_hom(&thetas[j], &sum_over_group(n, f)));
            if homs.len() != target.len() || !independent || !all_homs {
                rep.failures.push(format!(
                    "Θ is not bijective on homs for probes ({i}, {j}): {} vs {}",
                    homs.len(),
                    target.len()
                ));
            }
        }
    }
    rep.double_dual_checks = probes.len() * n * (n + 1);
    rep.failures.extend(verify_double_dual(act, dual, probes));

    let mut gens: Vec<Rep> = thetas.clone();
    gens.extend(es.iter().map(|e| theta(act, dual, &e.base).as_rep(field)));
    let mut family: Vec<Rep> = thetas.clone();
    for x in probes {
        let tx = theta(act, dual, x);
        for g in 1..n {
            family.push(double_dual_twist(act, dual, g, &tx).as_rep(field));
        }
    }
    family.extend(es.iter().map(|e| hat_induction(act, dual, e).as_rep(field)));
    for (k, d) in family.iter().enumerate() {
        rep.density_objects += 1;
        if in_additive_closure(d, &gens) {
            rep.density_certified += 1;
        } else {
            rep.failures.push(format!("object {k} of the density family is not in add Θ(P)"));
        }
    }
    rep
}

/// `id_D` lies in the trace of the generators.
pub fn in_additive_closure(d: &Rep, gens: &[Rep]) -> bool {
    if d.dim == 0 {
        return true;
    }
    let mut ech = Echelon::new(d.field, d.dim * d.dim);
    let id = Matrix::identity(d.field, d.dim);
    for t in gens {
        let into = d.hom(t);
        let back = t.hom(d);
        for phi in &back {
            for psi in &into {
                ech.insert(phi.mul(psi).entries().to_vec());
            }
        }
        if ech.contains(id.entries()) {
            return true;
        }
    }
    false
}

/// An endofunctor `F = ^σ(-)` with `δ_g: FF_g → F_gF` given by unit
/// elements, `(δ_g)_M = R_M(delta[g])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantFunctor {
    pub sigma: AlgebraMap,
    pub delta: Vec<Vec<Scalar>>,
}

impl EquivariantFunctor {
    /// `(Id, 1)`.
    pub fn identity(act: &ModuleCategoryAction) -> EquivariantFunctor {
        let a = act.algebra();
        EquivariantFunctor { sigma: AlgebraMap::identity(a), delta: vec![a.unit().to_vec(); act.order()] }
    }

    /// `(Id, χ(g)⁻¹)`, whose equivariantization is `F_χ`.
    pub fn character(act: &ModuleCategoryAction, dual: &DualGroup, chi: usize) -> EquivariantFunctor {
        let a = act.algebra();
        let delta =
            (0..act.order()).map(|g| a.scalar_vector(&dual.value(chi, g).inv().expect("nonzero"))).collect();
        EquivariantFunctor { sigma: AlgebraMap::identity(a), delta }
    }

    /// `(F_a, c_a)` with `(c_a)_g = ε_{g,a}⁻¹ ∘ ε_{a,g}`.
    pub fn twist(act: &ModuleCategoryAction, a: usize) -> EquivariantFunctor {
        let w = act.weak();
        let alg = act.algebra();
        let ai = w.inv(a);
        let delta = (0..act.order())
            .map(|g| {
                let gi = w.inv(g);
                let inv = alg.invert_element(w.c(ai, gi)).expect("cocycle values are units");
                alg.mul(w.c(gi, ai), &inv)
            })
            .collect();
        EquivariantFunctor { sigma: act.functor_map(a).clone(), delta }
    }

    /// `(F, λ(g)δ_g)`.
    pub fn rescaled(&self, act: &ModuleCategoryAction, lambda: &[Scalar]) -> EquivariantFunctor {
        let a = act.algebra();
        EquivariantFunctor {
            sigma: self.sigma.clone(),
            delta: self.delta.iter().zip(lambda).map(|(d, l)| a.scale(d, l)).collect(),
        }
    }

    /// The calculus of `act` with F appended as the last letter.
    pub fn calculus(&self, act: &ModuleCategoryAction) -> (TwistCalculus, usize) {
        let mut calc = act.calculus().clone();
        let f = calc.push_letter(self.sigma.clone());
        (calc, f)
    }

    pub fn delta_nat(&self, f: usize, g: usize) -> Nat {
        Nat::Elem { src: vec![f, g], tgt: vec![g, f], unit: self.delta[g].clone() }
    }

    /// `δ_{gh} ∘ Fε_{g,h}` and `ε_{g,h}F ∘ F_gδ_h ∘ δ_gF_h`.
    pub fn coherence_sides(&self, act: &ModuleCategoryAction, f: usize, g: usize, h: usize) -> (Nat, Nat) {
        let gh = act.weak().mul(g, h);
        let lhs = Nat::comp(self.delta_nat(f, gh), Nat::left(vec![f], act.eps_nat(g, h)));
        let rhs = Nat::chain(vec![
            Nat::right(act.eps_nat(g, h), vec![f]),
            Nat::left(vec![g], self.delta_nat(f, h)),
            Nat::right(self.delta_nat(f, g), vec![h]),
        ]);
        (lhs, rhs)
    }

    /// Pairs `(g, h)` where the coherence identity fails on the probes.
    pub fn validate(&self, act: &ModuleCategoryAction, probes: &[ModuleRep]) -> Result<Vec<(usize, usize)>, DualityError> {
        let a = act.algebra();
        if self.delta.len() != act.order() || self.delta.iter().any(|d| d.len() != a.dim()) {
            return Err(DualityError::Invalid("δ has the wrong shape".into()));
        }
        if !self.sigma.is_automorphism(a) {
            return Err(DualityError::Invalid("F is not twisting by an automorphism".into()));
        }
        if self.delta.iter().any(|d| !a.is_unit(d)) {
            return Err(DualityError::Invalid("some δ_g is not invertible".into()));
        }
        let (calc, f) = self.calculus(act);
        let mut bad = Vec::new();
        for g in 0..act.order() {
            for h in 0..act.order() {
                let (l, r) = self.coherence_sides(act, f, g, h);
                if !calc.equal_on(&l, &r, probes).map_err(|e| DualityError::Action(e.into()))? {
                    bad.push((g, h));
                }
            }
        }
        Ok(bad)
    }

    pub fn apply_module(&self, act: &ModuleCategoryAction, x: &ModuleRep) -> ModuleRep {
        twisted_module(act.algebra(), &self.sigma, x).expect("module over the acted algebra")
    }

    /// `(F, δ)^G(X, α) = (FX, (δ_g)_X ∘ F(α_g))`.
    pub fn equivariantize(&self, act: &ModuleCategoryAction, e: &EquivariantModule) -> EquivariantModule {
        let a = act.algebra();
        EquivariantModule {
            base: self.apply_module(act, &e.base),
            alpha: e.alpha.iter().zip(&self.delta).map(|(al, d)| e.base.act(a, d).mul(al)).collect(),
        }
    }

    /// `ξ_X = ⊕_h (δ_h)_X: (F, δ)^G Ind X → Ind FX`.
    pub fn xi(&self, act: &ModuleCategoryAction, x: &ModuleRep) -> Matrix {
        let blocks: Vec<Matrix> = self.delta.iter().map(|d| x.act(act.algebra(), d)).collect();
        Matrix::block_diag(act.algebra().field(), &blocks)
    }
}

/// The equivariantized functor on probes: validity of images, strict
/// commutation with every `F_χ`, and `ξ` as a natural isomorphism.
pub fn verify_equivariantized(
    act: &ModuleCategoryAction,
    dual: &DualGroup,
    func: &EquivariantFunctor,
    xs: &[ModuleRep],
    es: &[EquivariantModule],
) -> Result<Vec<String>, DualityError> {
    let mut out = Vec::new();
    let bad = func.validate(act, xs)?;
    if !bad.is_empty() {
        return Err(DualityError::Invalid(format!("coherence fails at {bad:?}")));
    }
    let n = act.order();
    for (i, e) in es.iter().enumerate() {
        let img = func.equivariantize(act, e);
        if !validate_equivariant(act, &img).is_valid() {
            out.push(format!("image of probe {i} is not equivariant"));
        }
        for chi in 0..dual.order() {
            if func.equivariantize(act, &dual_twist(act, dual, chi, e)) != dual_twist(act, dual, chi, &img) {
                out.push(format!("does not commute with character {chi} at probe {i}"));
            }
        }
        for (j, e2) in es.iter().enumerate() {
            let img2 = func.equivariantize(act, e2);
            for phi in hom_equivariant(act, e, e2)? {
                if !is_equivariant_hom(&img, &img2, &phi) {
                    out.push(format!("image of a morphism ({i}, {j}) is not equivariant"));
                }
            }
        }
    }
    for (i, x) in xs.iter().enumerate() {
        let src = func.equivariantize(act, &induction(act, x));
        let tgt = induction(act, &func.apply_module(act, x));
        let xi = func.xi(act, x);
        if !xi.is_invertible() || !is_equivariant_hom(&src, &tgt, &xi) {
            out.push(format!("ξ is not an isomorphism in C^G at probe {i}"));
        }
        for (j, y) in xs.iter().enumerate() {
            let xi_y = func.xi(act, y);
            for f in x.hom(act.algebra(), y) {
                let fi = sum_over_group(n, &f);
                if xi_y.mul(&fi) != fi.mul(&xi) {
                    out.push(format!("ξ is not natural on probes ({i}, {j})"));
                }
            }
        }
    }
    Ok(out)
}

/// `ψ_{(X,α)} = α_a` as a morphism `(X, α) → (F_a, c_a)^G(X, α)`.
pub fn twist_functor_psi_ok(act: &ModuleCategoryAction, a: usize, e: &EquivariantModule) -> bool {
    let img = EquivariantFunctor::twist(act, a).equivariantize(act, e);
    e.alpha[a].is_invertible() && is_equivariant_hom(e, &img, &e.alpha[a])
}

/// Result of [`iota`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iota {
    pub object: EquivariantModule,
    /// Indecomposable summands of `Ind M`, with multiplicity.
    pub ind_summands: usize,
    /// Isomorphism classes among them; each occurs once in `object`.
    pub classes: usize,
    pub hat_stable: bool,
}

fn iso_classes(reps: &[Rep]) -> (Vec<usize>, Vec<usize>) {
    let mut reps_of_class: Vec<usize> = Vec::new();
    let mut class_of = Vec::with_capacity(reps.len());
    for (i, r) in reps.iter().enumerate() {
        match reps_of_class.iter().position(|&k| reps[k].local_iso(r).is_some()) {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(reps_of_class.len());
                reps_of_class.push(i);
            }
        }
    }
    (class_of, reps_of_class)
}

fn equivariant_summands(act: &ModuleCategoryAction, e: &EquivariantModule, cfg: &SearchConfig) -> Result<Vec<EquivariantModule>, DualityError> {
    let dim_r = act.algebra().dim();
    Ok(e.as_rep(act.algebra().field())
        .decompose(cfg)?
        .into_iter()
        .map(|s| EquivariantModule::from_rep(&s.rep, dim_r))
        .collect())
}

/// The basic object `ι(M)` with `add ι(M) = add Ind(M)`.
pub fn iota(act: &ModuleCategoryAction, dual: &DualGroup, m: &ModuleRep, cfg: &SearchConfig) -> Result<Iota, DualityError> {
    let field = act.algebra().field();
    match find_stable_isos(act, m, cfg) {
        Ok(Search::Found(_)) => {}
        Ok(_) => return Err(DualityError::Inconclusive("stability".into())),
        Err(ActionError::NotStable(g)) => return Err(DualityError::NotStable(g)),
        Err(e) => return Err(e.into()),
    }
    let parts = m.as_rep(field).decompose(cfg)?;
    let part_reps: Vec<Rep> = parts.into_iter().map(|s| s.rep).collect();
    let (_, classes) = iso_classes(&part_reps);
    if classes.len() != part_reps.len() {
        return Err(DualityError::NotBasic);
    }
    let summands = equivariant_summands(act, &induction(act, m), cfg)?;
    let reps: Vec<Rep> = summands.iter().map(|s| s.as_rep(field)).collect();
    let (_, firsts) = iso_classes(&reps);
    let mut chosen = firsts.iter().map(|&k| summands[k].clone());
    let first = chosen.next().ok_or_else(|| DualityError::Invalid("zero module".into()))?;
    let object = chosen.fold(first, |acc, s| acc.direct_sum(&s));
    let r = object.as_rep(field);
    let hat_stable = (0..dual.order()).all(|chi| dual_twist(act, dual, chi, &object).as_rep(field).is_isomorphic(&r, cfg).is_iso());
    Ok(Iota { object, ind_summands: summands.len(), classes: firsts.len(), hat_stable })
}

/// Orbit counts on both sides, restricted to the probes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCensus {
    pub classes: usize,
    pub orbits: usize,
    pub twist_closed: bool,
    pub equivariant_classes: usize,
    pub dual_orbits: usize,
    pub dual_twist_closed: bool,
    /// For each G-orbit, the Ĝ-orbits met by the summands of `Ind` of it.
    pub pairing: Vec<Vec<usize>>,
}

impl OrbitCensus {
    pub fn counts_match(&self) -> bool {
        let mut seen = vec![false; self.dual_orbits];
        for p in &self.pairing {
            if p.len() != 1 || seen[p[0]] {
                return false;
            }
            seen[p[0]] = true;
        }
        self.twist_closed && self.dual_twist_closed && self.orbits == self.dual_orbits
    }
}

fn orbits_of(classes: usize, moves: &[Vec<Option<usize>>]) -> (Vec<usize>, usize) {
    let mut orbit = vec![usize::MAX; classes];
    let mut count = 0;
    for start in 0..classes {
        if orbit[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        orbit[start] = count;
        while let Some(c) = stack.pop() {
            for mv in moves {
                if let Some(d) = mv[c] {
                    if orbit[d] == usize::MAX {
                        orbit[d] = count;
                        stack.push(d);
                    }
                }
            }
        }
        count += 1;
    }
    (orbit, count)
}

/// Counts `|ind C / G|` and `|ind C^G / Ĝ|` on the given indecomposable
/// probes, the latter over the summands of their induced objects.
pub fn orbit_census(
    act: &ModuleCategoryAction,
    dual: &DualGroup,
    probes: &[ModuleRep],
    cfg: &SearchConfig,
) -> Result<OrbitCensus, DualityError> {
    let field = act.algebra().field();
    let n = act.order();
    for (i, p) in probes.iter().enumerate() {
        if !p.as_rep(field).is_indecomposable(cfg)? {
            return Err(DualityError::Invalid(format!("probe {i} is not indecomposable")));
        }
    }
    let reps: Vec<Rep> = probes.iter().map(|p| p.as_rep(field)).collect();
    let (_, firsts) = iso_classes(&reps);
    let class_reps: Vec<Rep> = firsts.iter().map(|&k| reps[k].clone()).collect();
    let find = |pool: &[Rep], r: &Rep| pool.iter().position(|c| c.local_iso(r).is_some());
    let moves: Vec<Vec<Option<usize>>> = (0..n)
        .map(|g| firsts.iter().map(|&k| find(&class_reps, &act.apply(g, &probes[k]).as_rep(field))).collect())
        .collect();
    let twist_closed = moves.iter().all(|mv| mv.iter().all(|x| x.is_some()));
    let (orbit, orbits) = orbits_of(firsts.len(), &moves);

    let mut eq_reps: Vec<Rep> = Vec::new();
    let mut eq_objs: Vec<EquivariantModule> = Vec::new();
    let mut summand_classes: Vec<Vec<usize>> = Vec::new();
    for &k in &firsts {
        let mut here = Vec::new();
        for s in equivariant_summands(act, &induction(act, &probes[k]), cfg)? {
            let r = s.as_rep(field);
            let c = match find(&eq_reps, &r) {
                Some(c) => c,
                None => {
                    eq_reps.push(r);
                    eq_objs.push(s);
                    eq_reps.len() - 1
                }
            };
            here.push(c);
        }
        summand_classes.push(here);
    }
    let dual_moves: Vec<Vec<Option<usize>>> = (0..dual.order())
        .map(|chi| eq_objs.iter().map(|e| find(&eq_reps, &dual_twist(act, dual, chi, e).as_rep(field))).collect())
        .collect();
    let dual_twist_closed = dual_moves.iter().all(|mv| mv.iter().all(|x| x.is_some()));
    let (dual_orbit, dual_orbits) = orbits_of(eq_objs.len(), &dual_moves);
    let mut pairing = vec![Vec::new(); orbits];
    for (ci, here) in summand_classes.iter().enumerate() {
        for &c in here {
            let o = dual_orbit[c];
            if !pairing[orbit[ci]].contains(&o) {
                pairing[orbit[ci]].push(o);
            }
        }
    }
    Ok(OrbitCensus {
        classes: firsts.len(),
        orbits,
        twist_closed,
        equivariant_classes: eq_objs.len(),
        dual_orbits,
        dual_twist_closed,
        pairing,
    })
}

/// Result of [`end_ind_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndIndReport {
    pub end_ind_dim: usize,
    pub crossed_dim: usize,
    pub bijective: bool,
    pub multiplicative: bool,
    pub unital: bool,
}

impl EndIndReport {
    pub fn passed(&self) -> bool {
        self.end_ind_dim == self.crossed_dim && self.bijective && self.multiplicative && self.unital
    }
}

/// The map `End(M)∗G → End_{C^G}(Ind M)` sending `a ḡ` to the mate of
/// `inc_{g⁻¹} ∘ F_{g⁻¹}(a) ∘ α_{g⁻¹}`, checked to be an algebra isomorphism.
pub fn end_ind_check(act: &ModuleCategoryAction, m: &ModuleRep, alpha: &[Matrix]) -> Result<EndIndReport, DualityError> {
    let field = act.algebra().field();
    let n = act.order();
    let d = m.dim;
    let sys = crossed_system_from_stable_module(act, m, alpha)?;
    let cp = crossed_product(&sys.weak)?;
    let r = sys.end_basis.len();
    let ind = induction(act, m);
    let eps = counit(&ind);
    let phi: Vec<Matrix> = (0..n * r)
        .map(|k| {
            let (g, i) = (k / r, k % r);
            let gi = act.weak().inv(g);
            let mut f = Matrix::zero(field, n * d, d);
            f.set_block(gi * d, 0, &sys.end_basis[i].mul(&alpha[gi]));
            eps.mul(&sum_over_group(n, &f))
        })
        .collect();
    let end_ind = crate::equivariant::hom_equivariant_direct(act, &ind, &ind);
    let mut ech = Echelon::new(field, n * n * d * d);
    let independent = phi.iter().all(|p| ech.insert(p.entries().to_vec()));
    let bijective = independent && phi.iter().all(|p| is_equivariant_hom(&ind, &ind, p)) && end_ind.len() == phi.len();
    let lin = |v: &[Scalar]| {
        v.iter().zip(&phi).fold(Matrix::zero(field, n * d, n * d), |acc, (c, p)| if c.is_zero() { acc } else { acc.add(&p.scale(c)) })
    };
    let b = &cp.algebra;
    let mut multiplicative = true;
    'outer: for x in 0..b.dim() {
        for y in 0..b.dim() {
            if lin(&b.mul(&b.basis_vector(x), &b.basis_vector(y))) != phi[x].mul(&phi[y]) {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    let unital = lin(b.unit()).is_identity();
    Ok(EndIndReport { end_ind_dim: end_ind.len(), crossed_dim: b.dim(), bijective, multiplicative, unital })
}

#[cfg(test)]
mod tests;

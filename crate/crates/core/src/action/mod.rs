//! Weak group actions on algebras and the induced actions on module
//! categories.
//!
//! A weak action `(ρ, c)` of G on R acts on right R-modules by
//! `F_g = ^{ρ(g⁻¹)}(-)` with `(ε_{g,h})_M = R_M(c(h⁻¹, g⁻¹))` and unit
//! `u_M = R_M(c(e,e))`. Group elements are referred to by their index in
//! [`FinAbGroup::elements`].

mod cyclic;
pub mod nat;
mod stable;

pub use cyclic::{
    compatible_pair_from_action, induced_cyclic_action, is_d_compatible, pairs_isomorphic_via,
    CompatiblePair, CyclicReport,
};
pub use stable::{
    canonical_delta, crossed_system_from_stable_module, find_stable_isos, k0_action, K0Action,
    StableCrossedSystem,
};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abgroup::FinAbGroup;
use crate::algebra::{
    k0_basis, twisted_module, validate_algebra, Algebra, AlgebraError, AlgebraMap, ModuleRep,
};
use crate::scalar::{Echelon, Matrix, Scalar};
use crate::search::{search_span, Search, SearchConfig};
use nat::{Nat, NatError, TwistCalculus, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionError {
    Shape(String),
    Invalid(String),
    NotMultiplicative,
    NotCompatible(String),
    NotIsomorphism(String),
    NotStable(usize),
    Algebra(AlgebraError),
    Nat(NatError),
}

impl fmt::Display for ActionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionError::Shape(s) => write!(f, "bad shape: {s}"),
            ActionError::Invalid(s) => write!(f, "invalid weak action: {s}"),
            ActionError::NotMultiplicative => write!(f, "map is not a multiplicative isomorphism"),
            ActionError::NotCompatible(s) => write!(f, "not a compatible pair: {s}"),
            ActionError::NotIsomorphism(s) => write!(f, "not an isomorphism: {s}"),
            ActionError::NotStable(g) => write!(f, "module is not stable under group element #{g}"),
            ActionError::Algebra(e) => write!(f, "{e}"),
            ActionError::Nat(e) => write!(f, "{e}"),
        }
    }
}

impl From<AlgebraError> for ActionError {
    fn from(e: AlgebraError) -> Self {
        ActionError::Algebra(e)
    }
}

impl From<NatError> for ActionError {
    fn from(e: NatError) -> Self {
        ActionError::Nat(e)
    }
}

/// Weak action: `rho[g]` and `c[g * |G| + h]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakAction {
    pub group: FinAbGroup,
    pub algebra: Algebra,
    pub rho: Vec<AlgebraMap>,
    pub c: Vec<Vec<Scalar>>,
}

impl WeakAction {
    pub fn new(
        group: FinAbGroup,
        algebra: Algebra,
        rho: Vec<AlgebraMap>,
        c: Vec<Vec<Scalar>>,
    ) -> Result<WeakAction, ActionError> {
        let n = group.order();
        let d = algebra.dim();
        if rho.len() != n {
            return Err(ActionError::Shape(format!("expected {n} automorphisms, got {}", rho.len())));
        }
        if c.len() != n * n {
            return Err(ActionError::Shape(format!("expected {} cocycle values, got {}", n * n, c.len())));
        }
        if rho.iter().any(|r| r.matrix.rows() != d || r.matrix.cols() != d) {
            return Err(ActionError::Shape("automorphism matrix has the wrong size".into()));
        }
        if c.iter().any(|v| v.len() != d) {
            return Err(ActionError::Shape("cocycle value has the wrong length".into()));
        }
        Ok(WeakAction { group, algebra, rho, c })
    }

    /// `ρ ≡ id`, `c ≡ 1`.
    pub fn trivial(group: FinAbGroup, algebra: Algebra) -> WeakAction {
        let n = group.order();
        WeakAction {
            rho: vec![AlgebraMap::identity(&algebra); n],
            c: vec![algebra.unit().to_vec(); n * n],
            group,
            algebra,
        }
    }

    /// A strict action from automorphisms, `c ≡ 1`.
    pub fn strict(group: FinAbGroup, algebra: Algebra, rho: Vec<AlgebraMap>) -> Result<WeakAction, ActionError> {
        let n = group.order();
        let c = vec![algebra.unit().to_vec(); n * n];
        WeakAction::new(group, algebra, rho, c)
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.group.mul_index(g, h)
    }

    pub fn inv(&self, g: usize) -> usize {
        self.group.inv_index(g)
    }

    pub fn rho(&self, g: usize) -> &AlgebraMap {
        &self.rho[g]
    }

    pub fn c(&self, g: usize, h: usize) -> &[Scalar] {
        &self.c[g * self.order() + h]
    }

    /// `f_*(ρ, c) = (f ρ f⁻¹, f ∘ c)` on the target algebra.
    pub fn push_forward(&self, f: &AlgebraMap, target: &Algebra) -> Result<WeakAction, ActionError> {
        let finv = f.inverse().ok_or(ActionError::NotMultiplicative)?;
        if !f.is_homomorphism(&self.algebra, target) {
            return Err(ActionError::NotMultiplicative);
        }
        let rho = self.rho.iter().map(|r| f.compose(r).compose(&finv)).collect();
        let c = self.c.iter().map(|v| f.apply(v)).collect();
        WeakAction::new(self.group.clone(), target.clone(), rho, c)
    }

    /// The isomorphic weak action determined by `δ: G → R^×`:
    /// `ρ'(g)(x) = δ(g)⁻¹ρ(g)(x)δ(g)`,
    /// `c'(g,h) = δ(g)⁻¹ ρ(g)(δ(h))⁻¹ c(g,h) δ(gh)`.
    pub fn gauge(&self, delta: &[Vec<Scalar>]) -> Result<WeakAction, ActionError> {
        let a = &self.algebra;
        let n = self.order();
        let inv: Vec<Vec<Scalar>> = delta
            .iter()
            .map(|d| a.invert_element(d).ok_or(ActionError::NotIsomorphism("δ value is not a unit".into())))
            .collect::<Result<_, _>>()?;
        let mut rho = Vec::with_capacity(n);
        for g in 0..n {
            let conj = AlgebraMap::conjugation(a, &delta[g]).expect("unit");
            rho.push(conj.compose(&self.rho[g]));
        }
        let mut c = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                let t = a
                    .invert_element(&self.rho[g].apply(&delta[h]))
                    .ok_or(ActionError::NotIsomorphism("ρ(g)(δ(h)) is not a unit".into()))?;
                let v = a.mul(&a.mul3(&inv[g], &t, self.c(g, h)), &delta[self.mul(g, h)]);
                c.push(v);
            }
        }
        WeakAction::new(self.group.clone(), a.clone(), rho, c)
    }
}

/// Violations found by [`validate_weak_action`]; indices are group
/// element indices and basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeakActionReport {
    pub non_automorphisms: Vec<usize>,
    pub non_units: Vec<(usize, usize)>,
    /// `(g, h, x)` with `ρ(gh)(b_x) ≠ c(g,h)⁻¹ρ(g)ρ(h)(b_x)c(g,h)`.
    pub wa1: Vec<(usize, usize, usize)>,
    /// `(g, h, k)` with `c(g,h)c(gh,k) ≠ ρ(g)(c(h,k))c(g,hk)`.
    pub wa2: Vec<(usize, usize, usize)>,
    pub derived: Vec<String>,
}

impl WeakActionReport {
    pub fn is_valid(&self) -> bool {
        self.non_automorphisms.is_empty()
            && self.non_units.is_empty()
            && self.wa1.is_empty()
            && self.wa2.is_empty()
            && self.derived.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "non-automorphisms {}, non-units {}, WA1 violations {}, WA2 violations {}, derived failures {}",
            self.non_automorphisms.len(),
            self.non_units.len(),
            self.wa1.len(),
            self.wa2.len(),
            self.derived.len()
        )
    }
}

pub fn validate_weak_action(w: &WeakAction) -> WeakActionReport {
    let a = &w.algebra;
    let n = w.order();
    let mut rep = WeakActionReport::default();
    for g in 0..n {
        if !w.rho[g].is_automorphism(a) {
            rep.non_automorphisms.push(g);
        }
    }
    let mut cinv = vec![None; n * n];
    for g in 0..n {
        for h in 0..n {
            match a.invert_element(w.c(g, h)) {
                Some(i) => cinv[g * n + h] = Some(i),
                None => rep.non_units.push((g, h)),
            }
        }
    }
    if !rep.non_automorphisms.is_empty() || !rep.non_units.is_empty() {
        return rep;
    }
    let cinv: Vec<Vec<Scalar>> = cinv.into_iter().map(|x| x.unwrap()).collect();
    for g in 0..n {
        for h in 0..n {
            let gh = w.mul(g, h);
            for x in 0..a.dim() {
                let bx = a.basis_vector(x);
                let lhs = w.rho[gh].apply(&bx);
                let inner = w.rho[g].apply(&w.rho[h].apply(&bx));
                let rhs = a.mul3(&cinv[g * n + h], &inner, w.c(g, h));
                if lhs != rhs {
                    rep.wa1.push((g, h, x));
                }
            }
            for k in 0..n {
                let lhs = a.mul(w.c(g, h), w.c(gh, k));
                let rhs = a.mul(&w.rho[g].apply(w.c(h, k)), w.c(g, w.mul(h, k)));
                if lhs != rhs {
                    rep.wa2.push((g, h, k));
                }
            }
        }
    }
    let e = w.identity_index();
    let cee = w.c(e, e);
    for x in 0..a.dim() {
        let bx = a.basis_vector(x);
        if w.rho[e].apply(&bx) != a.mul3(cee, &bx, &cinv[0]) {
            rep.derived.push(format!("ρ(e) is not conjugation by c(e,e) on basis element {x}"));
        }
    }
    for k in 0..n {
        if w.c(e, k) != cee {
            rep.derived.push(format!("c(e,{k}) differs from c(e,e)"));
        }
        if w.c(k, e) != w.rho[k].apply(cee).as_slice() {
            rep.derived.push(format!("c({k},e) differs from ρ({k})(c(e,e))"));
        }
    }
    rep
}

/// Checks that `w2` is isomorphic to `f_*(w1)` via `δ`.
pub fn crossed_systems_equivalent(
    w1: &WeakAction,
    w2: &WeakAction,
    f: &AlgebraMap,
    delta: &[Vec<Scalar>],
) -> Result<bool, ActionError> {
    if w1.group != w2.group || delta.len() != w1.order() {
        return Ok(false);
    }
    let pushed = w1.push_forward(f, &w2.algebra)?;
    if delta.iter().any(|d| !w2.algebra.is_unit(d)) {
        return Ok(false);
    }
    Ok(pushed.gauge(delta)? == *w2)
}

/// Searches `δ` with `w2 = gauge(f_*(w1), δ)` for each candidate `f`.
/// For each g the conjugation condition is linear in `δ(g)`, so units
/// are enumerated inside those solution spaces only.
pub fn search_equivalence(
    w1: &WeakAction,
    w2: &WeakAction,
    candidates: &[AlgebraMap],
    cfg: &SearchConfig,
) -> Search<(AlgebraMap, Vec<Vec<Scalar>>)> {
    let mut undetermined = false;
    let a = &w2.algebra;
    let n = w1.order();
    for f in candidates {
        let pushed = match w1.push_forward(f, a) {
            Ok(p) => p,
            Err(_) => continue,
        };
        // δ ρ'(g)(x) = ρ(g)(x) δ for all basis x.
        let mut unit_lists: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(n);
        for g in 0..n {
            let mut ech = Echelon::new(a.field(), a.dim());
            for x in 0..a.dim() {
                let bx = a.basis_vector(x);
                let m = a
                    .right_mult_matrix(&w2.rho[g].apply(&bx))
                    .sub(&a.left_mult_matrix(&pushed.rho[g].apply(&bx)));
                for r in 0..m.rows() {
                    ech.insert(m.row(r).to_vec());
                }
            }
            let space = ech.kernel();
            let mut units = Vec::new();
            let res = search_span(a.field(), &space, cfg, |v| {
                if a.is_unit(v) {
                    units.push(v.to_vec());
                }
                false
            });
            if res == Search::Undetermined {
                undetermined = true;
            }
            unit_lists.push(units);
        }
        if unit_lists.iter().any(|u| u.is_empty()) {
            continue;
        }
        let total: u128 = unit_lists.iter().map(|u| u.len() as u128).product();
        if total > cfg.exhaustive_bound as u128 {
            undetermined = true;
            continue;
        }
        let mut idx = vec![0usize; n];
        loop {
            let delta: Vec<Vec<Scalar>> = (0..n).map(|g| unit_lists[g][idx[g]].clone()).collect();
            if let Ok(g) = pushed.gauge(&delta) {
                if g == *w2 {
                    return Search::Found((f.clone(), delta));
                }
            }
            let mut k = n;
            let mut done = true;
            while k > 0 {
                k -= 1;
                idx[k] += 1;
                if idx[k] < unit_lists[k].len() {
                    done = false;
                    break;
                }
                idx[k] = 0;
            }
            if done {
                break;
            }
        }
    }
    if undetermined {
        Search::Undetermined
    } else {
        Search::Absent
    }
}

/// `R ∗ G` with basis `b_i ḡ` at index `g * dim R + i`.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    pub algebra: Algebra,
    pub base_dim: usize,
    pub group_order: usize,
    /// `r ↦ (r c(e,e)⁻¹) ē`.
    pub embedding: AlgebraMap,
}

pub fn crossed_product(w: &WeakAction) -> Result<CrossedProduct, ActionError> {
    let rep = validate_weak_action(w);
    if !rep.is_valid() {
        return Err(ActionError::Invalid(rep.summary()));
    }
    let r = &w.algebra;
    let m = r.dim();
    let n = w.order();
    let field = r.field();
    let names: Vec<String> = (0..n)
        .flat_map(|g| {
            let ge = w.group.element_at(g);
            r.basis_names().iter().map(move |b| format!("{b}*g{ge}")).collect::<Vec<_>>()
        })
        .collect();
    let mut consts = Vec::new();
    for g in 0..n {
        for h in 0..n {
            let gh = w.mul(g, h);
            for i in 0..m {
                let bi = r.basis_vector(i);
                for j in 0..m {
                    let img = w.rho[g].apply(&r.basis_vector(j));
                    let prod = r.mul3(&bi, &img, w.c(g, h));
                    for (k, v) in prod.into_iter().enumerate() {
                        if !v.is_zero() {
                            consts.push((g * m + i, h * m + j, gh * m + k, v));
                        }
                    }
                }
            }
        }
    }
    let cinv = r.invert_element(w.c(0, 0)).expect("validated");
    let mut unit = vec![field.zero(); n * m];
    unit[..m].clone_from_slice(&cinv);
    let algebra = Algebra::new(field, names, &consts, unit)?;
    let emb = Matrix::from_fn(field, n * m, m, |row, col| {
        if row < m {
            r.mul(&r.basis_vector(col), &cinv)[row].clone()
        } else {
            field.zero()
        }
    });
    let embedding = AlgebraMap::new(emb);
    if !validate_algebra(&algebra).is_valid() {
        return Err(ActionError::Invalid("crossed product fails associativity".into()));
    }
    if !embedding.is_homomorphism(r, &algebra) {
        return Err(ActionError::Invalid("embedding of the base is not multiplicative".into()));
    }
    Ok(CrossedProduct { algebra, base_dim: m, group_order: n, embedding })
}

/// The action of G on right modules induced by a validated weak action.
#[derive(Clone, Debug)]
pub struct ModuleCategoryAction {
    weak: WeakAction,
    calculus: TwistCalculus,
}

impl ModuleCategoryAction {
    pub fn new(weak: WeakAction) -> Result<ModuleCategoryAction, ActionError> {
        let rep = validate_weak_action(&weak);
        if !rep.is_valid() {
            return Err(ActionError::Invalid(rep.summary()));
        }
        let letters = (0..weak.order()).map(|g| weak.rho[weak.inv(g)].clone()).collect();
        let calculus = TwistCalculus::new(weak.algebra.clone(), letters);
        Ok(ModuleCategoryAction { weak, calculus })
    }

    pub fn weak(&self) -> &WeakAction {
        &self.weak
    }

    pub fn algebra(&self) -> &Algebra {
        &self.weak.algebra
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.weak.group
    }

    pub fn order(&self) -> usize {
        self.weak.order()
    }

    /// Letters `0..|G|` are the functors `F_g`.
    pub fn calculus(&self) -> &TwistCalculus {
        &self.calculus
    }

    /// The automorphism `ρ(g⁻¹)` with `F_g = ^{ρ(g⁻¹)}(-)`.
    pub fn functor_map(&self, g: usize) -> &AlgebraMap {
        &self.calculus.letters[g]
    }

    pub fn apply(&self, g: usize, m: &ModuleRep) -> ModuleRep {
        twisted_module(self.algebra(), self.functor_map(g), m).expect("module over the acted algebra")
    }

    /// `(ε_{g,h})_M: F_gF_h M → F_{gh} M`.
    pub fn epsilon(&self, g: usize, h: usize, m: &ModuleRep) -> Matrix {
        let w = &self.weak;
        m.act(&w.algebra, w.c(w.inv(h), w.inv(g)))
    }

    /// `u_M: F_e M → M`.
    pub fn unit_component(&self, m: &ModuleRep) -> Matrix {
        m.act(&self.weak.algebra, self.weak.c(0, 0))
    }

    pub fn eps_nat(&self, g: usize, h: usize) -> Nat {
        let w = &self.weak;
        Nat::Elem { src: vec![g, h], tgt: vec![w.mul(g, h)], unit: w.c(w.inv(h), w.inv(g)).to_vec() }
    }

    pub fn unit_nat(&self) -> Nat {
        Nat::Elem { src: vec![0], tgt: vec![], unit: self.weak.c(0, 0).to_vec() }
    }

    pub fn unit_inv_nat(&self) -> Nat {
        Nat::inv(self.unit_nat())
    }

    /// `ε_{g_1,…,g_n}: F_{g_1}⋯F_{g_n} → F_{g_1⋯g_n}` for n ≥ 1.
    pub fn gen_eps(&self, gs: &[usize]) -> Nat {
        match gs.len() {
            0 => panic!("empty product"),
            1 => Nat::Id(vec![gs[0]]),
            2 => self.eps_nat(gs[0], gs[1]),
            n => {
                let head = self.product(&gs[..n - 1]);
                Nat::comp(
                    self.eps_nat(head, gs[n - 1]),
                    Nat::right(self.gen_eps(&gs[..n - 1]), vec![gs[n - 1]]),
                )
            }
        }
    }

    /// `ε_g^{(n)}: F_g^n → F_{g^n}`, with `ε^{(0)} = u⁻¹`.
    pub fn power_eps(&self, g: usize, n: usize) -> Nat {
        if n == 0 {
            self.unit_inv_nat()
        } else {
            self.gen_eps(&vec![g; n])
        }
    }

    pub fn product(&self, gs: &[usize]) -> usize {
        gs.iter().fold(0, |acc, &g| self.weak.mul(acc, g))
    }

    pub fn power(&self, g: usize, n: usize) -> usize {
        self.product(&vec![g; n])
    }

    /// Simple modules and the regular module, closed under all `F_g`.
    /// Falls back to the regular module when the algebra cannot be
    /// decomposed.
    pub fn default_probes(&self, cfg: &SearchConfig) -> Vec<ModuleRep> {
        let a = self.algebra();
        let mut base = vec![ModuleRep::regular(a)];
        if let Ok(k0) = k0_basis(a, cfg) {
            base.extend(k0.simples);
        }
        let mut out: Vec<ModuleRep> = Vec::new();
        for m in &base {
            for g in 0..self.order() {
                let t = self.apply(g, m);
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// The 2-cocycle condition for every triple, on the probes.
    pub fn check_cocycle(&self, probes: &[ModuleRep]) -> Result<Vec<(usize, usize, usize)>, ActionError> {
        let n = self.order();
        let mut bad = Vec::new();
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let lhs = Nat::comp(self.eps_nat(self.weak.mul(g, h), k), Nat::right(self.eps_nat(g, h), vec![k]));
                    let rhs = Nat::comp(self.eps_nat(g, self.weak.mul(h, k)), Nat::left(vec![g], self.eps_nat(h, k)));
                    if !self.calculus.equal_on(&lhs, &rhs, probes)? {
                        bad.push((g, h, k));
                    }
                }
            }
        }
        Ok(bad)
    }

    /// The weak-action identity suite: the 2-cocycle condition, the three
    /// unit identities, generalized associativity for n ≤ 4 and both
    /// power identities.
    pub fn appendix_a_suite(&self, probes: &[ModuleRep], cfg: &SearchConfig) -> Result<AppendixReport, ActionError> {
        let n = self.order();
        let w = &self.weak;
        let calc = &self.calculus;
        let mut rep = AppendixReport::default();
        let record = |fam: usize, name: String, ok: bool, rep: &mut AppendixReport| {
            rep.families[fam].1 += 1;
            if ok {
                rep.families[fam].0 += 1;
            } else {
                rep.failures.push(name);
            }
        };
        rep.families = vec![(0, 0); 4];
        for (g, h, k) in triples(n) {
            let lhs = Nat::comp(self.eps_nat(w.mul(g, h), k), Nat::right(self.eps_nat(g, h), vec![k]));
            let rhs = Nat::comp(self.eps_nat(g, w.mul(h, k)), Nat::left(vec![g], self.eps_nat(h, k)));
            let ok = calc.equal_on(&lhs, &rhs, probes)?;
            record(0, format!("2-cocycle at ({g},{h},{k})"), ok, &mut rep);
        }
        let u = self.unit_nat();
        for g in 0..n {
            for k in 0..n {
                let ok = calc.equal_on(&Nat::right(self.eps_nat(g, 0), vec![k]), &Nat::left(vec![g], self.eps_nat(0, k)), probes)?;
                record(1, format!("ε(g,e)F_k = F_g ε(e,k) at ({g},{k})"), ok, &mut rep);
            }
            let ok = calc.equal_on(&self.eps_nat(0, g), &Nat::right(u.clone(), vec![g]), probes)?;
            record(1, format!("ε(e,k) = uF_k at {g}"), ok, &mut rep);
            let ok = calc.equal_on(&self.eps_nat(g, 0), &Nat::left(vec![g], u.clone()), probes)?;
            record(1, format!("ε(g,e) = F_g u at {g}"), ok, &mut rep);
        }
        for len in 3..=4usize {
            for gs in tuples(n, len, cfg) {
                let lhs = self.gen_eps(&gs);
                for m in 1..len {
                    for i in 2..=len - m {
                        let mut merged: Vec<usize> = gs[..m].to_vec();
                        merged.push(self.product(&gs[m..m + i]));
                        merged.extend_from_slice(&gs[m + i..]);
                        let inner = Nat::right(Nat::left(gs[..m].to_vec(), self.gen_eps(&gs[m..m + i])), gs[m + i..].to_vec());
                        let rhs = Nat::comp(self.gen_eps(&merged), inner);
                        let ok = calc.equal_on(&lhs, &rhs, probes)?;
                        record(2, format!("generalized associativity {gs:?} m={m} i={i}"), ok, &mut rep);
                    }
                }
            }
        }
        for g in 0..n {
            let d = element_order(self, g);
            for i in 0..=d {
                for j in 0..=d {
                    let rhs = self.power_rhs(g, i, j);
                    let ok = calc.equal_on(&self.power_eps(g, i + j), &rhs, probes)?;
                    record(3, format!("power identity (1) g={g} i={i} j={j}"), ok, &mut rep);
                    if i + j >= d {
                        let r = i + j - d;
                        let gw: Word = vec![g; r];
                        let lhs = Nat::chain(vec![
                            self.power_eps(g, r),
                            Nat::left(gw.clone(), u.clone()),
                            Nat::left(gw, self.power_eps(g, d)),
                        ]);
                        let ok = calc.equal_on(&lhs, &rhs, probes)?;
                        record(3, format!("power identity (2) g={g} i={i} j={j} d={d}"), ok, &mut rep);
                    }
                }
            }
        }
        Ok(rep)
    }

    /// `ε_{g^i,g^j} ∘ F_{g^i}ε^{(j)} ∘ ε^{(i)}F_g^j`.
    pub fn power_rhs(&self, g: usize, i: usize, j: usize) -> Nat {
        let gi = self.power(g, i);
        let gj = self.power(g, j);
        Nat::chain(vec![
            self.eps_nat(gi, gj),
            Nat::left(vec![gi], self.power_eps(g, j)),
            Nat::right(self.power_eps(g, i), vec![g; j]),
        ])
    }
}

fn element_order(act: &ModuleCategoryAction, g: usize) -> usize {
    let mut d = 1;
    let mut x = g;
    while x != 0 {
        x = act.weak.mul(x, g);
        d += 1;
    }
    d
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(n * n * n);
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                out.push((g, h, k));
            }
        }
    }
    out
}

/// All tuples when few enough, otherwise a seeded sample.
fn tuples(n: usize, len: usize, cfg: &SearchConfig) -> Vec<Vec<usize>> {
    let total = (n as u64).checked_pow(len as u32).unwrap_or(u64::MAX);
    if total <= 1296 {
        (0..total as usize)
            .map(|mut x| {
                let mut t = vec![0; len];
                for s in t.iter_mut().rev() {
                    *s = x % n;
                    x /= n;
                }
                t
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..256).map(|_| (0..len).map(|_| rng.gen_range(0..n)).collect()).collect()
    }
}

/// Pass counts per identity family: 2-cocycle, unit identities,
/// generalized associativity, power identities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AppendixReport {
    pub families: Vec<(usize, usize)>,
    pub failures: Vec<String>,
}

impl AppendixReport {
    pub const NAMES: [&'static str; 4] =
        ["2-cocycle", "unit identities", "generalized associativity", "power identities"];

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests;

//! Crossed systems on endomorphism algebras of stable modules, and the
//! induced action on K0.

use alloc::format;
use alloc::vec::Vec;

use super::{validate_weak_action, ActionError, ModuleCategoryAction, WeakAction};
use crate::algebra::{k0_basis, AlgebraMap, ModuleRep};
use crate::scalar::{Matrix, Scalar};
use crate::search::{Search, SearchConfig};

/// `R = End(T)` with the weak action defined by a choice of `α_g: T → F_g T`.
#[derive(Clone, Debug)]
pub struct StableCrossedSystem {
    pub weak: WeakAction,
    /// Basis of `End(T)` as matrices; the product is composition.
    pub end_basis: Vec<Matrix>,
}

impl StableCrossedSystem {
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        coords_in(&self.end_basis, m)
    }

    pub fn matrix_of(&self, v: &[Scalar]) -> Matrix {
        let field = self.weak.algebra.field();
        let n = self.end_basis.first().map_or(0, |b| b.rows());
        v.iter().zip(&self.end_basis).fold(Matrix::zero(field, n, n), |acc, (c, b)| acc.add(&b.scale(c)))
    }
}

fn coords_in(basis: &[Matrix], m: &Matrix) -> Option<Vec<Scalar>> {
    let field = m.field();
    let cells = m.rows() * m.cols();
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let a = Matrix::from_fn(field, cells, basis.len(), |i, j| cols[j][i].clone());
    a.solve(m.entries()).ok().flatten()
}

/// `ρ(g)(b) = α_{g⁻¹} b α_{g⁻¹}⁻¹` and
/// `c(g,h) = (ε_{h⁻¹,g⁻¹})_T α_{g⁻¹} α_{h⁻¹} α_{(gh)⁻¹}⁻¹`.
pub fn crossed_system_from_stable_module(
    act: &ModuleCategoryAction,
    t: &ModuleRep,
    alpha: &[Matrix],
) -> Result<StableCrossedSystem, ActionError> {
    let n = act.order();
    let alg = act.algebra();
    let field = alg.field();
    if alpha.len() != n {
        return Err(ActionError::Shape(format!("expected {n} isomorphisms, got {}", alpha.len())));
    }
    let mut alpha_inv = Vec::with_capacity(n);
    for (g, a) in alpha.iter().enumerate() {
        let inv = a.inverse().ok_or_else(|| ActionError::NotIsomorphism(format!("α for element #{g}")))?;
        if !t.is_hom(&act.apply(g, t), a) {
            return Err(ActionError::NotIsomorphism(format!("α for element #{g} is not a module map")));
        }
        alpha_inv.push(inv);
    }
    let (r, basis) = t.as_rep(field).end_algebra();
    let coords = |m: &Matrix| coords_in(&basis, m).expect("module endomorphism");
    let w = act.weak();
    let mut rho = Vec::with_capacity(n);
    for g in 0..n {
        let gi = w.inv(g);
        let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| coords(&alpha[gi].mul(b).mul(&alpha_inv[gi]))).collect();
        let m = Matrix::from_fn(field, r.dim(), r.dim(), |i, j| cols[j][i].clone());
        rho.push(AlgebraMap::new(m));
    }
    let mut c = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let e = act.epsilon(w.inv(h), w.inv(g), t);
            let m = e.mul(&alpha[w.inv(g)]).mul(&alpha[w.inv(h)]).mul(&alpha_inv[w.inv(w.mul(g, h))]);
            c.push(coords(&m));
        }
    }
    let weak = WeakAction::new(w.group.clone(), r, rho, c)?;
    let rep = validate_weak_action(&weak);
    if !rep.is_valid() {
        return Err(ActionError::Invalid(rep.summary()));
    }
    Ok(StableCrossedSystem { weak, end_basis: basis })
}

/// For `α'_g = α_g t_g`, the witness `δ(g) = ρ(g)(t_{g⁻¹}⁻¹)` relating the
/// crossed system of `α` to that of `α'`.
pub fn canonical_delta(
    sys: &StableCrossedSystem,
    alpha: &[Matrix],
    alpha2: &[Matrix],
) -> Result<Vec<Vec<Scalar>>, ActionError> {
    let w = &sys.weak;
    let mut out = Vec::with_capacity(w.order());
    for g in 0..w.order() {
        let gi = w.inv(g);
        let t = alpha[gi]
            .inverse()
            .ok_or_else(|| ActionError::NotIsomorphism("α".into()))?
            .mul(&alpha2[gi]);
        let tinv = t.inverse().ok_or_else(|| ActionError::NotIsomorphism("α'".into()))?;
        let v = sys.coordinates(&tinv).ok_or_else(|| ActionError::NotIsomorphism("t is not an endomorphism".into()))?;
        out.push(w.rho[g].apply(&v));
    }
    Ok(out)
}

/// Isomorphisms `T → F_g T` for every g, or `Absent` with the offending
/// element when T is not stable.
pub fn find_stable_isos(
    act: &ModuleCategoryAction,
    t: &ModuleRep,
    cfg: &SearchConfig,
) -> Result<Search<Vec<Matrix>>, ActionError> {
    let field = act.algebra().field();
    let mut out = Vec::with_capacity(act.order());
    for g in 0..act.order() {
        let ft = act.apply(g, t);
        match t.as_rep(field).is_isomorphic(&ft.as_rep(field), cfg) {
            crate::algebra::IsoResult::Isomorphic(m) => out.push(m),
            crate::algebra::IsoResult::NotIsomorphic => return Err(ActionError::NotStable(g)),
            crate::algebra::IsoResult::Undetermined => return Ok(Search::Undetermined),
        }
    }
    Ok(Search::Found(out))
}

/// Permutation of the indecomposable projectives induced by
/// `[P] ↦ [F_g P]`, one per group generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Action {
    pub generators: Vec<usize>,
    pub perms: Vec<Vec<usize>>,
    pub projective_dims: Vec<usize>,
}

impl K0Action {
    pub fn matrix(&self, k: usize) -> Vec<Vec<i64>> {
        let n = self.projective_dims.len();
        let mut m = alloc::vec![alloc::vec![0i64; n]; n];
        for (i, &j) in self.perms[k].iter().enumerate() {
            m[j][i] = 1;
        }
        m
    }

    pub fn is_trivial(&self) -> bool {
        self.perms.iter().all(|p| p.iter().enumerate().all(|(i, &j)| i == j))
    }
}

pub fn k0_action(act: &ModuleCategoryAction, cfg: &SearchConfig) -> Result<K0Action, ActionError> {
    let alg = act.algebra();
    let field = alg.field();
    let k0 = k0_basis(alg, cfg)?;
    let reps: Vec<_> = k0.projectives.iter().map(|p| p.as_rep(field)).collect();
    let group = act.group();
    let generators: Vec<usize> = group.generators().iter().map(|g| group.index_of(g)).collect();
    let mut perms = Vec::with_capacity(generators.len());
    for &g in &generators {
        let mut perm = Vec::with_capacity(reps.len());
        for (i, p) in k0.projectives.iter().enumerate() {
            let tw = act.apply(g, p).as_rep(field);
            let hits: Vec<usize> = (0..reps.len()).filter(|&j| reps[j].local_iso(&tw).is_some()).collect();
            if hits.len() != 1 {
                return Err(ActionError::Invalid(format!(
                    "projective {i} twisted by generator #{g} matches classes {hits:?}"
                )));
            }
            perm.push(hits[0]);
        }
        perms.push(perm);
    }
    Ok(K0Action { generators, perms, projective_dims: k0.projectives.iter().map(|p| p.dim).collect() })
}

//! Equivariant modules, their morphisms, induction, the two adjunctions
//! with the forgetful functor and the associated monads.
//!
//! All functorial statements are checked as matrix identities on probe
//! objects. Direct sums over G are ordered by element index, and an
//! iterated sum `⊕_h F_h(⊕_g F_g X)` puts `h` outermost.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::action::{crossed_product, ActionError, CrossedProduct, ModuleCategoryAction};
use crate::algebra::{ModuleRep, Rep};
use crate::scalar::{Echelon, FieldSpec, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivariantError {
    Shape(String),
    GroupOrderNotInvertible,
    Action(ActionError),
}

impl fmt::Display for EquivariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivariantError::Shape(s) => write!(f, "bad shape: {s}"),
            EquivariantError::GroupOrderNotInvertible => write!(f, "the group order is zero in the field"),
            EquivariantError::Action(e) => write!(f, "{e}"),
        }
    }
}

impl From<ActionError> for EquivariantError {
    fn from(e: ActionError) -> Self {
        EquivariantError::Action(e)
    }
}

/// `(X, α)` with `α_g: X → F_g X`, indexed by group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantModule {
    pub base: ModuleRep,
    pub alpha: Vec<Matrix>,
}

impl EquivariantModule {
    pub fn dim(&self) -> usize {
        self.base.dim
    }

    /// The module operators followed by the structure maps; intertwiners
    /// of this representation are exactly the equivariant homs.
    pub fn as_rep(&self, field: FieldSpec) -> Rep {
        let mut mats = self.base.action.clone();
        mats.extend(self.alpha.iter().cloned());
        Rep::new(field, self.dim(), mats)
    }

    /// Inverse of [`as_rep`](Self::as_rep) for an algebra of dimension `dim_r`.
    pub fn from_rep(rep: &Rep, dim_r: usize) -> EquivariantModule {
        EquivariantModule {
            base: ModuleRep { dim: rep.dim, action: rep.mats[..dim_r].to_vec() },
            alpha: rep.mats[dim_r..].to_vec(),
        }
    }

    pub fn direct_sum(&self, other: &EquivariantModule) -> EquivariantModule {
        let field = self.alpha[0].field();
        EquivariantModule {
            base: self.base.direct_sum(&other.base),
            alpha: self
                .alpha
                .iter()
                .zip(&other.alpha)
                .map(|(a, b)| Matrix::block_diag(field, &[a.clone(), b.clone()]))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EquivariantReport {
    pub shape_errors: Vec<String>,
    /// Elements g whose `α_g` is not a module isomorphism `X → F_g X`.
    pub non_isomorphisms: Vec<usize>,
    /// Pairs `(g, h)` with `α_{gh} ≠ (ε_{g,h})_X F_g(α_h) α_g`.
    pub relation_failures: Vec<(usize, usize)>,
    pub alpha_e_is_unit_inverse: bool,
}

impl EquivariantReport {
    pub fn is_valid(&self) -> bool {
        self.shape_errors.is_empty()
            && self.non_isomorphisms.is_empty()
            && self.relation_failures.is_empty()
            && self.alpha_e_is_unit_inverse
    }
}

pub fn validate_equivariant(act: &ModuleCategoryAction, e: &EquivariantModule) -> EquivariantReport {
    let mut rep = EquivariantReport::default();
    let n = act.order();
    let x = &e.base;
    if e.alpha.len() != n {
        rep.shape_errors.push(format!("expected {n} structure maps, got {}", e.alpha.len()));
        return rep;
    }
    if !x.validate(act.algebra()).is_valid() {
        rep.shape_errors.push("underlying module fails the module axioms".into());
        return rep;
    }
    for (g, a) in e.alpha.iter().enumerate() {
        if a.rows() != x.dim || a.cols() != x.dim {
            rep.shape_errors.push(format!("structure map {g} has the wrong size"));
        } else if !a.is_invertible() || !x.is_hom(&act.apply(g, x), a) {
            rep.non_isomorphisms.push(g);
        }
    }
    if !rep.shape_errors.is_empty() {
        return rep;
    }
    for g in 0..n {
        for h in 0..n {
            let gh = act.weak().mul(g, h);
            let rhs = act.epsilon(g, h, x).mul(&e.alpha[h]).mul(&e.alpha[g]);
            if e.alpha[gh] != rhs {
                rep.relation_failures.push((g, h));
            }
        }
    }
    rep.alpha_e_is_unit_inverse = act.unit_component(x).mul(&e.alpha[0]).is_identity();
    rep
}

/// `β_g ∘ f = F_g(f) ∘ α_g` for every g.
pub fn is_equivariant_hom(e1: &EquivariantModule, e2: &EquivariantModule, f: &Matrix) -> bool {
    f.rows() == e2.dim()
        && f.cols() == e1.dim()
        && e1.base.is_hom(&e2.base, f)
        && e1.alpha.iter().zip(&e2.alpha).all(|(a, b)| b.mul(f) == f.mul(a))
}

fn span_basis(mats: &[Matrix]) -> Vec<Matrix> {
    let Some(first) = mats.first() else { return Vec::new() };
    let (r, c) = (first.rows(), first.cols());
    let field = first.field();
    let mut ech = Echelon::new(field, r * c);
    for m in mats {
        ech.insert(m.entries().to_vec());
    }
    ech.basis()
        .into_iter()
        .map(|v| Matrix::from_fn(field, r, c, |i, j| v[i * c + j].clone()))
        .collect()
}

fn group_order_inverse(act: &ModuleCategoryAction) -> Result<Scalar, EquivariantError> {
    Scalar::from_u64(act.algebra().field(), act.order() as u64).inv().ok_or(EquivariantError::GroupOrderNotInvertible)
}

/// Basis of `Hom_{C^G}(E1, E2)`, as the image of the averaging projector
/// `f ↦ (1/|G|) Σ_g β_g⁻¹ F_g(f) α_g` on `Hom_C(X, Y)`.
pub fn hom_equivariant(
    act: &ModuleCategoryAction,
    e1: &EquivariantModule,
    e2: &EquivariantModule,
) -> Result<Vec<Matrix>, EquivariantError> {
    let inv_n = group_order_inverse(act)?;
    let binv: Vec<Matrix> = e2.alpha.iter().map(|b| b.inverse().expect("structure maps are invertible")).collect();
    let field = act.algebra().field();
    let images: Vec<Matrix> = e1
        .base
        .hom(act.algebra(), &e2.base)
        .iter()
        .map(|f| {
            let mut acc = Matrix::zero(field, f.rows(), f.cols());
            for (a, bi) in e1.alpha.iter().zip(&binv) {
                acc = acc.add(&bi.mul(f).mul(a));
            }
            acc.scale(&inv_n)
        })
        .collect();
    Ok(span_basis(&images))
}

/// Basis of `Hom_{C^G}(E1, E2)` by solving `β_g f = f α_g` directly; valid
/// in every characteristic.
pub fn hom_equivariant_direct(act: &ModuleCategoryAction, e1: &EquivariantModule, e2: &EquivariantModule) -> Vec<Matrix> {
    let homs = e1.base.hom(act.algebra(), &e2.base);
    if homs.is_empty() {
        return homs;
    }
    let field = act.algebra().field();
    let cells = e2.dim() * e1.dim();
    let mut ech = Echelon::new(field, homs.len());
    for (a, b) in e1.alpha.iter().zip(&e2.alpha) {
        let defects: Vec<Matrix> = homs.iter().map(|f| b.mul(f).sub(&f.mul(a))).collect();
        for cell in 0..cells {
            ech.insert(defects.iter().map(|d| d.entries()[cell].clone()).collect());
        }
    }
    ech.kernel()
        .into_iter()
        .map(|coeffs| {
            coeffs
                .iter()
                .zip(&homs)
                .fold(Matrix::zero(field, e2.dim(), e1.dim()), |acc, (c, f)| acc.add(&f.scale(c)))
        })
        .collect()
}

/// `m.(r ḡ) = α_{g⁻¹}⁻¹(m.r)`, basis element `b_i ḡ` at `g * dim R + i`.
pub fn to_crossed_module(act: &ModuleCategoryAction, e: &EquivariantModule) -> ModuleRep {
    let w = act.weak();
    let a = act.algebra();
    let mut action = Vec::with_capacity(act.order() * a.dim());
    for g in 0..act.order() {
        let ainv = e.alpha[w.inv(g)].inverse().expect("structure maps are invertible");
        for i in 0..a.dim() {
            action.push(ainv.mul(&e.base.action[i]));
        }
    }
    ModuleRep { dim: e.dim(), action }
}

/// `x.r = x.(r c(e,e)⁻¹ ē)` and `β_g = (x ↦ x.\overline{g⁻¹})⁻¹`.
pub fn from_crossed_module(
    act: &ModuleCategoryAction,
    cp: &CrossedProduct,
    m: &ModuleRep,
) -> Result<EquivariantModule, EquivariantError> {
    let a = act.algebra();
    let w = act.weak();
    let dim_r = a.dim();
    if m.action.len() != cp.algebra.dim() {
        return Err(EquivariantError::Shape("module is not over the crossed product".into()));
    }
    let action = (0..dim_r).map(|i| m.act(&cp.algebra, &cp.embedding.apply(&a.basis_vector(i)))).collect();
    let base = ModuleRep { dim: m.dim, action };
    let mut alpha = Vec::with_capacity(act.order());
    for g in 0..act.order() {
        let mut v = vec![a.field().zero(); cp.algebra.dim()];
        let gi = w.inv(g);
        v[gi * dim_r..(gi + 1) * dim_r].clone_from_slice(a.unit());
        let op = m.act(&cp.algebra, &v);
        alpha.push(op.inverse().ok_or_else(|| EquivariantError::Shape(format!("ḡ acts singularly for #{g}")))?);
    }
    Ok(EquivariantModule { base, alpha })
}

/// `Ind X = (⊕_h F_h X, ε(X))`, where `ε(X)_g` sends the summand `F_{gh}X`
/// to `F_gF_hX` by `(ε_{g,h})_X⁻¹`.
pub fn induction(act: &ModuleCategoryAction, x: &ModuleRep) -> EquivariantModule {
    let n = act.order();
    let d = x.dim;
    let field = act.algebra().field();
    let summands: Vec<ModuleRep> = (0..n).map(|h| act.apply(h, x)).collect();
    let base = ModuleRep::direct_sum_all(act.algebra(), &summands);
    let mut alpha = Vec::with_capacity(n);
    for g in 0..n {
        let mut m = Matrix::zero(field, n * d, n * d);
        for h in 0..n {
            let gh = act.weak().mul(g, h);
            let blk = act.epsilon(g, h, x).inverse().expect("ε is invertible");
            m.set_block(h * d, gh * d, &blk);
        }
        alpha.push(m);
    }
    EquivariantModule { base, alpha }
}

/// `⊕_h F_h(f)`: every twist is the identity on morphisms.
pub fn sum_over_group(n: usize, f: &Matrix) -> Matrix {
    Matrix::block_diag(f.field(), &vec![f.clone(); n])
}

/// Unit of `(Ind, U)`: `η_X = (u_X⁻¹, 0, …, 0)^t`.
pub fn eta(act: &ModuleCategoryAction, x: &ModuleRep) -> Matrix {
    let n = act.order();
    let mut m = Matrix::zero(act.algebra().field(), n * x.dim, x.dim);
    m.set_block(0, 0, &act.unit_component(x).inverse().expect("u is invertible"));
    m
}

/// Counit of `(Ind, U)`: `ε_{(Y,β)} = Σ_h β_h⁻¹`.
pub fn counit(e: &EquivariantModule) -> Matrix {
    let d = e.dim();
    let n = e.alpha.len();
    let mut m = Matrix::zero(e.alpha[0].field(), d, n * d);
    for (h, b) in e.alpha.iter().enumerate() {
        m.set_block(0, h * d, &b.inverse().expect("structure maps are invertible"));
    }
    m
}

/// Unit of `(U, Ind)`: `η'_{(Y,β)} = (β_h)_h`.
pub fn eta_prime(e: &EquivariantModule) -> Matrix {
    let d = e.dim();
    let n = e.alpha.len();
    let mut m = Matrix::zero(e.alpha[0].field(), n * d, d);
    for (h, b) in e.alpha.iter().enumerate() {
        m.set_block(h * d, 0, b);
    }
    m
}

/// Counit of `(U, Ind)`: `ε'_X = (u_X, 0, …, 0)`.
pub fn counit_prime(act: &ModuleCategoryAction, x: &ModuleRep) -> Matrix {
    let n = act.order();
    let mut m = Matrix::zero(act.algebra().field(), x.dim, n * x.dim);
    m.set_block(0, 0, &act.unit_component(x));
    m
}

/// Multiplication of `M = U Ind` from the closed formula: the entry
/// `F_hF_gX → F_{h'}X` is `δ_{hg,h'} (ε_{h,g})_X`.
pub fn mu(act: &ModuleCategoryAction, x: &ModuleRep) -> Matrix {
    let n = act.order();
    let d = x.dim;
    let mut m = Matrix::zero(act.algebra().field(), n * d, n * n * d);
    for h in 0..n {
        for g in 0..n {
            let hg = act.weak().mul(h, g);
            m.set_block(hg * d, (h * n + g) * d, &act.epsilon(h, g, x));
        }
    }
    m
}

/// Multiplication of `N = Ind U` from the closed formula: the entry
/// `F_gF_hY → F_{h'}Y` is `δ_{g,h'} δ_{h,e} F_g(u_Y)`.
pub fn mu_prime(act: &ModuleCategoryAction, y: &ModuleRep) -> Matrix {
    let n = act.order();
    let d = y.dim;
    let u = act.unit_component(y);
    let mut m = Matrix::zero(act.algebra().field(), n * d, n * n * d);
    for g in 0..n {
        m.set_block(g * d, g * n * d, &u);
    }
    m
}

fn stack_rows(mats: &[Matrix], field: FieldSpec, cols: usize) -> Matrix {
    let rows: Vec<Vec<Scalar>> = mats.iter().map(|m| m.entries().to_vec()).collect();
    if rows.is_empty() {
        return Matrix::zero(field, 0, cols);
    }
    Matrix::from_rows(field, rows).expect("uniform")
}

/// Results of [`verify_adjunctions`], with the number of probe pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub probe_pairs: usize,
    pub failures: Vec<String>,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks both hom bijections on every pair `(X, E)`, the four triangle
/// identities and the split (co)unit maps.
pub fn verify_adjunctions(
    act: &ModuleCategoryAction,
    xs: &[ModuleRep],
    es: &[EquivariantModule],
) -> Result<AdjunctionReport, EquivariantError> {
    let inv_n = group_order_inverse(act)?;
    let n = act.order();
    let field = act.algebra().field();
    let mut rep = AdjunctionReport::default();
    for (xi, x) in xs.iter().enumerate() {
        let ind = induction(act, x);
        let d = x.dim;
        for (ei, e) in es.iter().enumerate() {
            rep.probe_pairs += 1;
            let y = &e.base;
            // Hom_{C^G}(Ind X, E) → Hom_C(X, Y), θ ↦ θ_e u_X⁻¹.
            let uinv = act.unit_component(x).inverse().expect("u is invertible");
            let left = hom_equivariant_direct(act, &ind, e);
            let right = x.hom(act.algebra(), y);
            let images: Vec<Matrix> = left.iter().map(|t| t.submatrix(0, 0, y.dim, d).mul(&uinv)).collect();
            let ok1 = left.len() == right.len()
                && stack_rows(&images, field, y.dim * d).rank() == left.len()
                && images.iter().all(|f| x.is_hom(y, f));
            if !ok1 {
                rep.failures.push(format!("first adjunction fails on probe pair ({xi}, {ei})"));
            }
            // The explicit morphism condition on each θ.
            for t in &left {
                for g in 0..n {
                    for h in 0..n {
                        let gh = act.weak().mul(g, h);
                        let lhs = t.submatrix(0, h * d, y.dim, d);
                        let rhs = e.alpha[g].mul(&t.submatrix(0, gh * d, y.dim, d)).mul(&act.epsilon(g, h, x));
                        if lhs != rhs {
                            rep.failures.push(format!("θ condition fails at ({g},{h}) on pair ({xi}, {ei})"));
                        }
                    }
                }
            }
            // Hom_C(Y, X) → Hom_{C^G}(E, Ind X), f ↦ (F_h(f) β_h)_h.
            let homs = y.hom(act.algebra(), x);
            let images: Vec<Matrix> = homs
                .iter()
                .map(|f| {
                    let mut m = Matrix::zero(field, n * d, y.dim);
                    for h in 0..n {
                        m.set_block(h * d, 0, &f.mul(&e.alpha[h]));
                    }
                    m
                })
                .collect();
            let target = hom_equivariant_direct(act, e, &ind);
            let ok2 = homs.len() == target.len()
                && images.iter().all(|m| is_equivariant_hom(e, &ind, m))
                && stack_rows(&images, field, n * d * y.dim).rank() == homs.len();
            if !ok2 {
                rep.failures.push(format!("second adjunction fails on probe pair ({xi}, {ei})"));
            }
        }
        // εInd ∘ Ind η = Id and Ind ε' ∘ η'Ind = Id at X.
        let t1 = counit(&ind).mul(&sum_over_group(n, &eta(act, x)));
        if !t1.is_identity() {
            rep.failures.push(format!("triangle εInd∘Indη fails at probe {xi}"));
        }
        let t2 = sum_over_group(n, &counit_prime(act, x)).mul(&eta_prime(&ind));
        if !t2.is_identity() {
            rep.failures.push(format!("triangle Indε'∘η'Ind fails at probe {xi}"));
        }
    }
    for (ei, e) in es.iter().enumerate() {
        let y = &e.base;
        // Uε ∘ ηU = Id and ε'U ∘ Uη' = Id at E.
        if !counit(e).mul(&eta(act, y)).is_identity() {
            rep.failures.push(format!("triangle Uε∘ηU fails at probe {ei}"));
        }
        if !counit_prime(act, y).mul(&eta_prime(e)).is_identity() {
            rep.failures.push(format!("triangle ε'U∘Uη' fails at probe {ei}"));
        }
        let ind_y = induction(act, y);
        if !is_equivariant_hom(&ind_y, e, &counit(e)) {
            rep.failures.push(format!("counit is not equivariant at probe {ei}"));
        }
        if !is_equivariant_hom(e, &ind_y, &eta_prime(e)) {
            rep.failures.push(format!("η' is not equivariant at probe {ei}"));
        }
        let section = eta_prime(e).scale(&inv_n);
        if !counit(e).mul(&section).is_identity() || !is_equivariant_hom(e, &ind_y, &section) {
            rep.failures.push(format!("split section of the counit fails at probe {ei}"));
        }
        let retraction = counit(e).scale(&inv_n);
        if !retraction.mul(&eta_prime(e)).is_identity() || !is_equivariant_hom(&ind_y, e, &retraction) {
            rep.failures.push(format!("split retraction of η' fails at probe {ei}"));
        }
    }
    Ok(rep)
}

/// Results of [`verify_monad_laws`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonadReport {
    pub m_probes: usize,
    pub n_probes: usize,
    pub failures: Vec<String>,
}

impl MonadReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Both monad laws for `M` on the module probes and for `N` on the
/// equivariant probes, plus agreement of the closed formulas for μ and μ'
/// with `UεInd` and `Indε'U`.
pub fn verify_monad_laws(
    act: &ModuleCategoryAction,
    xs: &[ModuleRep],
    es: &[EquivariantModule],
) -> MonadReport {
    let n = act.order();
    let mut rep = MonadReport { m_probes: xs.len(), n_probes: es.len(), failures: Vec::new() };
    for (i, x) in xs.iter().enumerate() {
        let mx = induction(act, x).base;
        let mu_x = mu(act, x);
        if mu_x != counit(&induction(act, x)) {
            rep.failures.push(format!("μ differs from UεInd at probe {i}"));
        }
        let mmx = induction(act, &mx).base;
        if !mmx.is_hom(&mx, &mu_x) {
            rep.failures.push(format!("μ is not a module map at probe {i}"));
        }
        let assoc_l = mu_x.mul(&sum_over_group(n, &mu_x));
        let assoc_r = mu_x.mul(&mu(act, &mx));
        if assoc_l != assoc_r {
            rep.failures.push(format!("M associativity fails at probe {i}"));
        }
        if !mu_x.mul(&sum_over_group(n, &eta(act, x))).is_identity() {
            rep.failures.push(format!("μ∘Mη ≠ Id at probe {i}"));
        }
        if !mu_x.mul(&eta(act, &mx)).is_identity() {
            rep.failures.push(format!("μ∘ηM ≠ Id at probe {i}"));
        }
    }
    for (i, e) in es.iter().enumerate() {
        let y = &e.base;
        let ne = induction(act, y);
        let nne = induction(act, &ne.base);
        let mu_y = mu_prime(act, y);
        if mu_y != sum_over_group(n, &counit_prime(act, y)) {
            rep.failures.push(format!("μ' differs from Indε'U at probe {i}"));
        }
        if !is_equivariant_hom(&nne, &ne, &mu_y) {
            rep.failures.push(format!("μ' is not equivariant at probe {i}"));
        }
        let assoc_l = mu_y.mul(&sum_over_group(n, &mu_y));
        let assoc_r = mu_y.mul(&mu_prime(act, &ne.base));
        if assoc_l != assoc_r {
            rep.failures.push(format!("N associativity fails at probe {i}"));
        }
        if !mu_y.mul(&sum_over_group(n, &eta_prime(e))).is_identity() {
            rep.failures.push(format!("μ'∘Nη' ≠ Id at probe {i}"));
        }
        if !mu_y.mul(&eta_prime(&ne)).is_identity() {
            rep.failures.push(format!("μ'∘η'N ≠ Id at probe {i}"));
        }
    }
    rep
}

/// `K(X, α) = (X, Σ_h α_h⁻¹)`; checks the M-module axioms.
pub fn comparison_module_ok(act: &ModuleCategoryAction, e: &EquivariantModule) -> bool {
    let n = act.order();
    let x = &e.base;
    let lambda = counit(e);
    lambda.mul(&sum_over_group(n, &lambda)) == lambda.mul(&mu(act, x)) && lambda.mul(&eta(act, x)).is_identity()
}

/// Distinct structures on the same carrier give distinct M-module maps.
pub fn comparison_separates(e1: &EquivariantModule, e2: &EquivariantModule) -> bool {
    (e1.alpha == e2.alpha) == (counit(e1) == counit(e2))
}

/// Every equivariant hom is a crossed-product hom between the transported
/// modules, and the two hom spaces have the same dimension.
pub fn crossed_hom_transport_ok(
    act: &ModuleCategoryAction,
    cp: &CrossedProduct,
    e1: &EquivariantModule,
    e2: &EquivariantModule,
) -> bool {
    let (m1, m2) = (to_crossed_module(act, e1), to_crossed_module(act, e2));
    let ours = hom_equivariant_direct(act, e1, e2);
    let theirs = m1.hom(&cp.algebra, &m2);
    ours.len() == theirs.len() && ours.iter().all(|f| m1.is_hom(&m2, f))
}

/// `K'(X) = (Ind X, Ind ε'_X)`; checks the N-module axioms.
pub fn comparison_prime_module_ok(act: &ModuleCategoryAction, x: &ModuleRep) -> bool {
    let n = act.order();
    let ind = induction(act, x);
    let lambda = sum_over_group(n, &counit_prime(act, x));
    lambda.mul(&sum_over_group(n, &lambda)) == lambda.mul(&mu_prime(act, &ind.base))
        && lambda.mul(&eta_prime(&ind)).is_identity()
        && is_equivariant_hom(&induction(act, &ind.base), &ind, &lambda)
}

/// `(dim End_{C^G}(Ind M), Σ_g dim Hom_C(M, F_g M))`.
pub fn end_ind_dimensions(act: &ModuleCategoryAction, m: &ModuleRep) -> (usize, usize) {
    let ind = induction(act, m);
    let lhs = hom_equivariant_direct(act, &ind, &ind).len();
    let rhs = (0..act.order()).map(|g| m.hom(act.algebra(), &act.apply(g, m)).len()).sum();
    (lhs, rhs)
}

/// Induced modules of the module probes together with the equivariant
/// modules coming from the simple modules of the crossed product.
pub fn default_equivariant_probes(
    act: &ModuleCategoryAction,
    xs: &[ModuleRep],
    cfg: &crate::search::SearchConfig,
) -> Vec<EquivariantModule> {
    let mut out: Vec<EquivariantModule> = xs.iter().map(|x| induction(act, x)).collect();
    if let Ok(cp) = crossed_product(act.weak()) {
        if let Ok(k0) = crate::algebra::k0_basis(&cp.algebra, cfg) {
            for s in &k0.simples {
                if let Ok(e) = from_crossed_module(act, &cp, s) {
                    out.push(e);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;

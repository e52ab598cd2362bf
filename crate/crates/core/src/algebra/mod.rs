//! Finite-dimensional unital associative algebras given by structure
//! constants, algebra maps, right modules and twisting.
//!
//! Module convention: elements are column vectors and `action[i]` is the
//! matrix of `m ↦ m.b_i`, so `action(ab) = action(b)·action(a)`.

mod idempotents;
mod rep;

pub use idempotents::{
    k0_basis, primitive_idempotents, projective_cover_of_idempotent, radical, Decomposition,
    K0Basis,
};
pub use rep::{IsoResult, Rep, Subquotient};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::{Echelon, FieldSpec, Matrix, Scalar};
use crate::search::{search_span, Search, SearchConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    BadShape(String),
    MixedFields,
    NotMultiplicative,
    NotInvertible,
    MismatchedAlgebra,
    Inconclusive(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::BadShape(s) => write!(f, "bad shape: {s}"),
            AlgebraError::MixedFields => write!(f, "mixed fields"),
            AlgebraError::NotMultiplicative => write!(f, "map is not multiplicative"),
            AlgebraError::NotInvertible => write!(f, "not invertible"),
            AlgebraError::MismatchedAlgebra => write!(f, "mismatched algebra"),
            AlgebraError::Inconclusive(s) => write!(f, "inconclusive decomposition: {s}"),
        }
    }
}

/// Structure-constant algebra: `b_i · b_j = Σ_k c_ijk b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    basis_names: Vec<String>,
    /// Sparse products, indexed by `i * dim + j`.
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Vec<Scalar>,
}

impl Algebra {
    /// Builds from `(i, j, k, c)` entries; repeated entries accumulate.
    pub fn new(
        field: FieldSpec,
        basis_names: Vec<String>,
        mul: &[(usize, usize, usize, Scalar)],
        unit: Vec<Scalar>,
    ) -> Result<Algebra, AlgebraError> {
        let n = basis_names.len();
        if unit.len() != n {
            return Err(AlgebraError::BadShape(format!("unit has {} coefficients", unit.len())));
        }
        let mut dense = vec![vec![field.zero(); n]; n * n];
        for (i, j, k, c) in mul {
            if *i >= n || *j >= n || *k >= n {
                return Err(AlgebraError::BadShape(format!("index ({i},{j},{k}) out of range")));
            }
            if c.field() != field {
                return Err(AlgebraError::MixedFields);
            }
            dense[i * n + j][*k] = dense[i * n + j][*k].add(c);
        }
        if unit.iter().any(|u| u.field() != field) {
            return Err(AlgebraError::MixedFields);
        }
        Ok(Algebra::from_dense(field, basis_names, dense, unit))
    }

    fn from_dense(
        field: FieldSpec,
        basis_names: Vec<String>,
        dense: Vec<Vec<Scalar>>,
        unit: Vec<Scalar>,
    ) -> Algebra {
        let table = dense
            .into_iter()
            .map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        Algebra { field, basis_names, table, unit }
    }

    /// Builds from a product rule on basis indices.
    pub fn from_fn(
        field: FieldSpec,
        basis_names: Vec<String>,
        unit: Vec<Scalar>,
        f: impl Fn(usize, usize) -> Vec<Scalar>,
    ) -> Algebra {
        let n = basis_names.len();
        let mut dense = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                dense.push(f(i, j));
            }
        }
        Algebra::from_dense(field, basis_names, dense, unit)
    }

    /// k × … × k with `n` factors.
    pub fn product_of_fields(field: FieldSpec, n: usize) -> Algebra {
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        let unit = vec![field.one(); n];
        Algebra::from_fn(field, names, unit, |i, j| {
            let mut v = vec![field.zero(); n];
            if i == j {
                v[i] = field.one();
            }
            v
        })
    }

    /// Group algebra k[C_n] with basis 1, s, …, s^{n-1}.
    pub fn cyclic_group_algebra(field: FieldSpec, n: usize) -> Algebra {
        let names = (0..n).map(|i| if i == 0 { "1".into() } else { format!("s{i}") }).collect();
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Algebra::from_fn(field, names, unit, |i, j| {
            let mut v = vec![field.zero(); n];
            v[(i + j) % n] = field.one();
            v
        })
    }

    /// k[x]/(x^n).
    pub fn truncated_polynomial(field: FieldSpec, n: usize) -> Algebra {
        let names = (0..n).map(|i| format!("x{i}")).collect();
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Algebra::from_fn(field, names, unit, |i, j| {
            let mut v = vec![field.zero(); n];
            if i + j < n {
                v[i + j] = field.one();
            }
            v
        })
    }

    /// Full matrix algebra M_n(k) on matrix units E_ij (index i*n + j).
    pub fn matrix_algebra(field: FieldSpec, n: usize) -> Algebra {
        let d = n * n;
        let names = (0..d).map(|t| format!("E{}{}", t / n + 1, t % n + 1)).collect();
        let mut unit = vec![field.zero(); d];
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        Algebra::from_fn(field, names, unit, |a, b| {
            let mut v = vec![field.zero(); d];
            if a % n == b / n {
                v[(a / n) * n + b % n] = field.one();
            }
            v
        })
    }

    /// Upper triangular n × n matrices.
    pub fn upper_triangular(field: FieldSpec, n: usize) -> Algebra {
        let idx: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let names = idx.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
        let unit = idx.iter().map(|(i, j)| if i == j { field.one() } else { field.zero() }).collect();
        let pos = |p: (usize, usize)| idx.iter().position(|&q| q == p).unwrap();
        Algebra::from_fn(field, names, unit, |a, b| {
            let mut v = vec![field.zero(); idx.len()];
            let ((i, j), (k, l)) = (idx[a], idx[b]);
            if j == k {
                v[pos((i, l))] = field.one();
            }
            v
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn scalar_vector(&self, s: &Scalar) -> Vec<Scalar> {
        self.unit.iter().map(|u| u.mul(s)).collect()
    }

    /// Nonzero structure constants of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    /// All nonzero structure constants as (i, j, k, c).
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.basis_product(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.zero_vector();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul(y);
                for (k, c) in &self.table[i * n + j] {
                    out[*k] = out[*k].add(&xy.mul(c));
                }
            }
        }
        out
    }

    pub fn mul3(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
        self.mul(&self.mul(a, b), c)
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }

    pub fn sub(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
    }

    pub fn scale(&self, a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
        a.iter().map(|x| x.mul(s)).collect()
    }

    pub fn pow(&self, a: &[Scalar], e: u64) -> Vec<Scalar> {
        let mut r = self.unit.clone();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(self.field, n, n);
        for j in 0..n {
            let col = self.mul(a, &self.basis_vector(j));
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(self.field, n, n);
        for j in 0..n {
            let col = self.mul(&self.basis_vector(j), a);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn is_unit(&self, a: &[Scalar]) -> bool {
        self.left_mult_matrix(a).is_invertible()
    }

    /// Two-sided inverse, or `None` if `a` is not a unit.
    pub fn invert_element(&self, a: &[Scalar]) -> Option<Vec<Scalar>> {
        let x = self.left_mult_matrix(a).solve(&self.unit).ok()??;
        if self.mul(&x, a) == self.unit {
            Some(x)
        } else {
            None
        }
    }

    /// `λ` with `a = λ·b`, if any.
    pub fn elements_equal_up_to_scalar(&self, a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
        Matrix::column(self.field, a).scalar_ratio(&Matrix::column(self.field, b))
    }

    /// Trace of left multiplication.
    pub fn trace(&self, a: &[Scalar]) -> Scalar {
        let m = self.left_mult_matrix(a);
        (0..self.dim()).fold(self.field.zero(), |acc, i| acc.add(m.get(i, i)))
    }
}

/// Result of [`validate_algebra`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraReport {
    pub associativity_violations: Vec<(usize, usize, usize)>,
    pub unit_violations: Vec<usize>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.associativity_violations.is_empty() && self.unit_violations.is_empty()
    }
}

/// Checks associativity on all basis triples and the unit on all basis vectors.
pub fn validate_algebra(a: &Algebra) -> AlgebraReport {
    let n = a.dim();
    let mut rep = AlgebraReport::default();
    let basis: Vec<Vec<Scalar>> = (0..n).map(|i| a.basis_vector(i)).collect();
    let prods: Vec<Vec<Scalar>> =
        (0..n * n).map(|t| a.mul(&basis[t / n], &basis[t % n])).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = a.mul(&prods[i * n + j], &basis[k]);
                let rhs = a.mul(&basis[i], &prods[j * n + k]);
                if lhs != rhs {
                    rep.associativity_violations.push((i, j, k));
                }
            }
        }
    }
    for (i, b) in basis.iter().enumerate() {
        if &a.mul(&a.unit, b) != b || &a.mul(b, &a.unit) != b {
            rep.unit_violations.push(i);
        }
    }
    rep
}

/// Basis of the center, in reduced echelon form.
pub fn center(a: &Algebra) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let mut ech = Echelon::new(a.field, n);
    for i in 0..n {
        let b = a.basis_vector(i);
        let m = a.right_mult_matrix(&b).sub(&a.left_mult_matrix(&b));
        for r in 0..n {
            ech.insert(m.row(r).to_vec());
        }
    }
    ech.kernel()
}

/// Linear map between algebras; column i is the image of `b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraMap {
    pub matrix: Matrix,
}

impl AlgebraMap {
    pub fn new(matrix: Matrix) -> AlgebraMap {
        AlgebraMap { matrix }
    }

    pub fn identity(a: &Algebra) -> AlgebraMap {
        AlgebraMap { matrix: Matrix::identity(a.field, a.dim()) }
    }

    /// Map sending `b_i ↦ b_{perm[i]}`.
    pub fn permutation(a: &Algebra, perm: &[usize]) -> AlgebraMap {
        let n = a.dim();
        let f = a.field;
        AlgebraMap {
            matrix: Matrix::from_fn(f, n, n, |i, j| if perm[j] == i { f.one() } else { f.zero() }),
        }
    }

    /// Inner automorphism `x ↦ u⁻¹ x u`.
    pub fn conjugation(a: &Algebra, u: &[Scalar]) -> Option<AlgebraMap> {
        let ui = a.invert_element(u)?;
        let n = a.dim();
        let mut m = Matrix::zero(a.field, n, n);
        for j in 0..n {
            let img = a.mul3(&ui, &a.basis_vector(j), u);
            for (i, v) in img.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Some(AlgebraMap { matrix: m })
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMap) -> AlgebraMap {
        AlgebraMap { matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn inverse(&self) -> Option<AlgebraMap> {
        self.matrix.inverse().map(|m| AlgebraMap { matrix: m })
    }

    pub fn pow(&self, e: u64) -> AlgebraMap {
        AlgebraMap { matrix: self.matrix.pow(e) }
    }

    /// Multiplicative and unital from `src` to `dst`.
    pub fn is_homomorphism(&self, src: &Algebra, dst: &Algebra) -> bool {
        if self.matrix.cols() != src.dim() || self.matrix.rows() != dst.dim() {
            return false;
        }
        if self.apply(src.unit()) != dst.unit() {
            return false;
        }
        let imgs: Vec<Vec<Scalar>> = (0..src.dim()).map(|i| self.matrix.col(i)).collect();
        for i in 0..src.dim() {
            for j in 0..src.dim() {
                let prod = src.mul(&src.basis_vector(i), &src.basis_vector(j));
                if self.apply(&prod) != dst.mul(&imgs[i], &imgs[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_automorphism(&self, a: &Algebra) -> bool {
        self.matrix.is_square() && self.matrix.is_invertible() && self.is_homomorphism(a, a)
    }
}

/// Outcome of [`is_inner`] and similar unit searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitSearch {
    Witness(Vec<Scalar>),
    NoUnit,
    Undetermined,
}

/// Units in the common kernel of the given linear conditions on `a`.
pub fn find_unit_in_solution_space(
    a: &Algebra,
    conditions: &[Matrix],
    cfg: &SearchConfig,
) -> UnitSearch {
    let n = a.dim();
    let mut ech = Echelon::new(a.field, n);
    for m in conditions {
        for r in 0..m.rows() {
            ech.insert(m.row(r).to_vec());
        }
    }
    let space = ech.kernel();
    match search_span(a.field, &space, cfg, |v| a.is_unit(v)) {
        Search::Found(v) => UnitSearch::Witness(v),
        Search::Absent => UnitSearch::NoUnit,
        Search::Undetermined => UnitSearch::Undetermined,
    }
}

/// Searches a unit `a` with `σ(x) = a⁻¹ x a` for all x.
pub fn is_inner(a: &Algebra, sigma: &AlgebraMap, cfg: &SearchConfig) -> UnitSearch {
    // a·σ(b_k) − b_k·a = 0, linear in a.
    let conds: Vec<Matrix> = (0..a.dim())
        .map(|k| {
            let sb = sigma.apply(&a.basis_vector(k));
            a.right_mult_matrix(&sb).sub(&a.left_mult_matrix(&a.basis_vector(k)))
        })
        .collect();
    let res = find_unit_in_solution_space(a, &conds, cfg);
    if let UnitSearch::Witness(w) = &res {
        let conj = AlgebraMap::conjugation(a, w).expect("witness is a unit");
        debug_assert_eq!(conj, *sigma);
    }
    res
}

/// Right module over a structure-constant algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleRep {
    pub dim: usize,
    pub action: Vec<Matrix>,
}

/// Result of [`ModuleRep::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModuleReport {
    pub shape_errors: Vec<String>,
    pub product_violations: Vec<(usize, usize)>,
    pub unit_ok: bool,
}

impl ModuleReport {
    pub fn is_valid(&self) -> bool {
        self.shape_errors.is_empty() && self.product_violations.is_empty() && self.unit_ok
    }
}

impl ModuleRep {
    pub fn regular(a: &Algebra) -> ModuleRep {
        ModuleRep {
            dim: a.dim(),
            action: (0..a.dim()).map(|i| a.right_mult_matrix(&a.basis_vector(i))).collect(),
        }
    }

    pub fn zero(a: &Algebra) -> ModuleRep {
        ModuleRep { dim: 0, action: vec![Matrix::zero(a.field, 0, 0); a.dim()] }
    }

    /// Matrix of `m ↦ m.r`.
    pub fn act(&self, a: &Algebra, r: &[Scalar]) -> Matrix {
        let mut m = Matrix::zero(a.field, self.dim, self.dim);
        for (c, x) in r.iter().zip(&self.action) {
            if !c.is_zero() {
                m.add_scaled(c, x);
            }
        }
        m
    }

    pub fn validate(&self, a: &Algebra) -> ModuleReport {
        let mut rep = ModuleReport::default();
        if self.action.len() != a.dim() {
            rep.shape_errors.push(format!(
                "expected {} action matrices, got {}",
                a.dim(),
                self.action.len()
            ));
            return rep;
        }
        for (i, m) in self.action.iter().enumerate() {
            if m.rows() != self.dim || m.cols() != self.dim || m.field() != a.field {
                rep.shape_errors.push(format!("action matrix {i} has the wrong shape or field"));
            }
        }
        if !rep.shape_errors.is_empty() {
            return rep;
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let prod = a.mul(&a.basis_vector(i), &a.basis_vector(j));
                if self.act(a, &prod) != self.action[j].mul(&self.action[i]) {
                    rep.product_violations.push((i, j));
                }
            }
        }
        rep.unit_ok = self.act(a, a.unit()).is_identity();
        rep
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> ModuleRep {
        let field = self.action.first().or(other.action.first()).map(|m| m.field());
        ModuleRep {
            dim: self.dim + other.dim,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(x, y)| Matrix::block_diag(field.unwrap(), &[x.clone(), y.clone()]))
                .collect(),
        }
    }

    pub fn direct_sum_all(a: &Algebra, mods: &[ModuleRep]) -> ModuleRep {
        mods.iter().fold(ModuleRep::zero(a), |acc, m| acc.direct_sum(m))
    }

    pub fn as_rep(&self, field: FieldSpec) -> Rep {
        Rep::new(field, self.dim, self.action.clone())
    }

    /// Module homomorphisms `self → other`, as matrices.
    pub fn hom(&self, a: &Algebra, other: &ModuleRep) -> Vec<Matrix> {
        self.as_rep(a.field).hom(&other.as_rep(a.field))
    }

    /// True if `f` is a module map `self → other`.
    pub fn is_hom(&self, other: &ModuleRep, f: &Matrix) -> bool {
        f.rows() == other.dim
            && f.cols() == self.dim
            && self.action.iter().zip(&other.action).all(|(x, y)| f.mul(x) == y.mul(f))
    }
}

/// `^σM`: same carrier, `m∘r = m.σ(r)`.
pub fn twisted_module(
    a: &Algebra,
    sigma: &AlgebraMap,
    m: &ModuleRep,
) -> Result<ModuleRep, AlgebraError> {
    if m.action.len() != a.dim() || sigma.matrix.rows() != a.dim() {
        return Err(AlgebraError::MismatchedAlgebra);
    }
    Ok(ModuleRep {
        dim: m.dim,
        action: (0..a.dim()).map(|i| m.act(a, &sigma.matrix.col(i))).collect(),
    })
}

//! Finite-dimensional representations of a finitely presented structure:
//! a vector space with a list of operators. Morphisms are intertwiners.
//! Modules, equivariant modules and their doubly equivariant versions all
//! reduce to this once the structure maps are appended as operators.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{primitive_idempotents, Algebra, AlgebraError};
use crate::scalar::{Echelon, FieldSpec, Matrix, Scalar};
use crate::search::{search_span, Search, SearchConfig};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rep {
    pub field: FieldSpec,
    pub dim: usize,
    pub mats: Vec<Matrix>,
}

/// A direct summand with split inclusion and projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    pub rep: Rep,
    pub inclusion: Matrix,
    pub projection: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    /// An invertible intertwiner `self → other`.
    Isomorphic(Matrix),
    NotIsomorphic,
    Undetermined,
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

fn unflatten(field: FieldSpec, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_fn(field, rows, cols, |i, j| v[i * cols + j].clone())
}

fn columns_to_matrix(field: FieldSpec, dim: usize, cols: &[Vec<Scalar>]) -> Matrix {
    Matrix::from_fn(field, dim, cols.len(), |i, j| cols[j][i].clone())
}

/// Left inverse of a matrix with independent columns.
pub(crate) fn left_inverse(w: &Matrix) -> Option<Matrix> {
    let field = w.field();
    let (_, piv) = w.transpose().rref();
    if piv.len() != w.cols() {
        return None;
    }
    let sel = Matrix::from_fn(field, piv.len(), w.rows(), |i, j| {
        if piv[i] == j {
            field.one()
        } else {
            field.zero()
        }
    });
    let square = sel.mul(w).inverse()?;
    Some(square.mul(&sel))
}

impl Rep {
    pub fn new(field: FieldSpec, dim: usize, mats: Vec<Matrix>) -> Rep {
        Rep { field, dim, mats }
    }

    pub fn zero(field: FieldSpec, operators: usize) -> Rep {
        Rep { field, dim: 0, mats: vec![Matrix::zero(field, 0, 0); operators] }
    }

    /// Basis of intertwiners `F: self → other`, i.e. `F·P_i = Q_i·F`.
    pub fn hom(&self, other: &Rep) -> Vec<Matrix> {
        let (r, c) = (other.dim, self.dim);
        let nv = r * c;
        if nv == 0 {
            return Vec::new();
        }
        let mut ech = Echelon::new(self.field, nv);
        for (p, q) in self.mats.iter().zip(&other.mats) {
            for a in 0..r {
                for b in 0..c {
                    let mut row = vec![self.field.zero(); nv];
                    for k in 0..c {
                        let x = p.get(k, b);
                        if !x.is_zero() {
                            row[a * c + k] = row[a * c + k].add(x);
                        }
                    }
                    for k in 0..r {
                        let x = q.get(a, k);
                        if !x.is_zero() {
                            row[k * c + b] = row[k * c + b].sub(x);
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        ech.insert(row);
                        if ech.rank() == nv {
                            return Vec::new();
                        }
                    }
                }
            }
        }
        ech.kernel().into_iter().map(|v| unflatten(self.field, r, c, &v)).collect()
    }

    pub fn is_hom(&self, other: &Rep, f: &Matrix) -> bool {
        f.rows() == other.dim
            && f.cols() == self.dim
            && self.mats.len() == other.mats.len()
            && self.mats.iter().zip(&other.mats).all(|(p, q)| f.mul(p) == q.mul(f))
    }

    pub fn end(&self) -> Vec<Matrix> {
        self.hom(self)
    }

    /// The endomorphism algebra with product `b_i b_j = B_i·B_j`, together
    /// with the basis matrices.
    pub fn end_algebra(&self) -> (Algebra, Vec<Matrix>) {
        let basis = self.end();
        let mut ech = Echelon::new(self.field, self.dim * self.dim);
        for b in &basis {
            ech.insert(flatten(b));
        }
        let coords = |m: &Matrix| ech.coordinates(&flatten(m)).expect("closed under composition");
        let names = (0..basis.len()).map(|i| format!("f{}", i + 1)).collect();
        let unit = coords(&Matrix::identity(self.field, self.dim));
        let alg = Algebra::from_fn(self.field, names, unit, |i, j| coords(&basis[i].mul(&basis[j])));
        (alg, basis)
    }

    /// Restriction to an invariant subspace spanned by `cols`.
    pub fn sub_rep(&self, cols: &[Vec<Scalar>]) -> Option<Subquotient> {
        let w = columns_to_matrix(self.field, self.dim, cols);
        let l = left_inverse(&w)?;
        let mut mats = Vec::with_capacity(self.mats.len());
        for q in &self.mats {
            let img = q.mul(&w);
            let x = l.mul(&img);
            if w.mul(&x) != img {
                return None;
            }
            mats.push(x);
        }
        Some(Subquotient {
            rep: Rep::new(self.field, cols.len(), mats),
            inclusion: w,
            projection: l,
        })
    }

    /// `W/U` for invariant subspaces `U ⊆ W`. The inclusion is a section
    /// of the quotient map on `W`, not a module map in general.
    pub fn subquotient(&self, w: &[Vec<Scalar>], u: &[Vec<Scalar>]) -> Option<Subquotient> {
        let mut ech = Echelon::new(self.field, self.dim);
        let mut full: Vec<Vec<Scalar>> = Vec::new();
        for v in u {
            if !ech.insert(v.clone()) {
                return None;
            }
            full.push(v.clone());
        }
        let nu = full.len();
        for v in w {
            if ech.insert(v.clone()) {
                full.push(v.clone());
            }
        }
        let m = columns_to_matrix(self.field, self.dim, &full);
        let l = left_inverse(&m)?;
        let nc = full.len() - nu;
        let cpart = m.submatrix(0, nu, self.dim, nc);
        let mut mats = Vec::with_capacity(self.mats.len());
        for q in &self.mats {
            let img = q.mul(&cpart);
            let x = l.mul(&img);
            if m.mul(&x) != img {
                return None;
            }
            if !l.mul(&q.mul(&m.submatrix(0, 0, self.dim, nu))).submatrix(nu, 0, nc, nu).is_zero()
            {
                return None;
            }
            mats.push(x.submatrix(nu, 0, nc, nc));
        }
        Some(Subquotient {
            rep: Rep::new(self.field, nc, mats),
            inclusion: cpart,
            projection: l.submatrix(nu, 0, nc, self.dim),
        })
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        Rep {
            field: self.field,
            dim: self.dim + other.dim,
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(x, y)| Matrix::block_diag(self.field, &[x.clone(), y.clone()]))
                .collect(),
        }
    }

    pub fn direct_sum_all(field: FieldSpec, operators: usize, reps: &[Rep]) -> Rep {
        reps.iter().fold(Rep::zero(field, operators), |acc, r| acc.direct_sum(r))
    }

    /// Splits into indecomposable summands via primitive idempotents of the
    /// endomorphism algebra.
    pub fn decompose(&self, cfg: &SearchConfig) -> Result<Vec<Subquotient>, AlgebraError> {
        if self.dim == 0 {
            return Ok(Vec::new());
        }
        let (alg, basis) = self.end_algebra();
        let dec = primitive_idempotents(&alg, cfg)?;
        let mut out = Vec::new();
        for e in &dec.idempotents {
            let em = basis
                .iter()
                .zip(e)
                .fold(Matrix::zero(self.field, self.dim, self.dim), |acc, (b, c)| {
                    if c.is_zero() {
                        acc
                    } else {
                        acc.add(&b.scale(c))
                    }
                });
            let (r, piv) = em.transpose().rref();
            let cols: Vec<Vec<Scalar>> = (0..piv.len()).map(|i| r.row(i).to_vec()).collect();
            let mut s = self.sub_rep(&cols).ok_or_else(|| {
                AlgebraError::Inconclusive("image of an idempotent is not invariant".into())
            })?;
            // Projection along the complementary summands.
            s.projection = s.projection.mul(&em);
            out.push(s);
        }
        Ok(out)
    }

    pub fn is_indecomposable(&self, cfg: &SearchConfig) -> Result<bool, AlgebraError> {
        if self.dim == 0 {
            return Ok(false);
        }
        let (alg, _) = self.end_algebra();
        Ok(primitive_idempotents(&alg, cfg)?.idempotents.len() == 1)
    }

    /// Iso test between objects whose endomorphism rings are local. Sound
    /// for any pair: a witness is always a genuine isomorphism.
    pub fn local_iso(&self, other: &Rep) -> Option<Matrix> {
        if self.dim != other.dim || self.mats.len() != other.mats.len() {
            return None;
        }
        if self.dim == 0 {
            return Some(Matrix::zero(self.field, 0, 0));
        }
        let fs = self.hom(other);
        if fs.is_empty() {
            return None;
        }
        let gs = other.hom(self);
        for f in &fs {
            if f.is_invertible() {
                return Some(f.clone());
            }
        }
        for f in &fs {
            for g in &gs {
                if g.mul(f).is_invertible() {
                    return Some(f.clone());
                }
            }
        }
        None
    }

    pub fn is_isomorphic(&self, other: &Rep, cfg: &SearchConfig) -> IsoResult {
        if self.dim != other.dim || self.mats.len() != other.mats.len() {
            return IsoResult::NotIsomorphic;
        }
        if self.dim == 0 {
            return IsoResult::Isomorphic(Matrix::zero(self.field, 0, 0));
        }
        let hxy = self.hom(other);
        let hyx = other.hom(self);
        let ex = self.end();
        if hxy.len() != ex.len() || hyx.len() != ex.len() || other.end().len() != ex.len() {
            return IsoResult::NotIsomorphic;
        }
        let flat: Vec<Vec<Scalar>> = hxy.iter().map(flatten).collect();
        let (r, c) = (other.dim, self.dim);
        let probe = SearchConfig { samples: cfg.samples.min(200), ..*cfg };
        match search_span(self.field, &flat, &probe, |v| unflatten(self.field, r, c, v).is_invertible()) {
            Search::Found(v) => return IsoResult::Isomorphic(unflatten(self.field, r, c, &v)),
            Search::Absent => return IsoResult::NotIsomorphic,
            Search::Undetermined => {}
        }
        let (Ok(xs), Ok(ys)) = (self.decompose(cfg), other.decompose(cfg)) else {
            return IsoResult::Undetermined;
        };
        if xs.len() != ys.len() {
            return IsoResult::NotIsomorphic;
        }
        let mut used = vec![false; ys.len()];
        let mut iso = Matrix::zero(self.field, other.dim, self.dim);
        for x in &xs {
            let hit = ys.iter().enumerate().find_map(|(j, y)| {
                if used[j] {
                    return None;
                }
                x.rep.local_iso(&y.rep).map(|f| (j, f))
            });
            let Some((j, f)) = hit else {
                return IsoResult::NotIsomorphic;
            };
            used[j] = true;
            iso = iso.add(&ys[j].inclusion.mul(&f).mul(&x.projection));
        }
        debug_assert!(self.is_hom(other, &iso) && iso.is_invertible());
        IsoResult::Isomorphic(iso)
    }
}

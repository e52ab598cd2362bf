//! Jacobson radical, complete sets of primitive orthogonal idempotents and
//! the induced basis of the Grothendieck group of projectives.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Algebra, AlgebraError, ModuleRep, Rep};
use crate::scalar::{Echelon, FieldSpec, Matrix, Scalar};
use crate::search::{combine, SearchConfig};

/// Basis (reduced echelon form) of the Jacobson radical.
pub fn radical(a: &Algebra) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let field = a.field();
    let basis: Vec<Vec<Scalar>> = (0..n).map(|i| a.basis_vector(i)).collect();
    match field {
        FieldSpec::Cyclotomic(_) => {
            // Characteristic zero: the radical of the trace form.
            let mut ech = Echelon::new(field, n);
            for k in 0..n {
                let row = (0..n).map(|j| a.trace(&a.mul(&basis[j], &basis[k]))).collect();
                ech.insert(row);
            }
            ech.kernel()
        }
        FieldSpec::Prime(p) => {
            // Successive trace-of-p-power functionals on integer lifts.
            let mut space = basis.clone();
            let mut l = 0u32;
            while (p as u128).pow(l + 1) <= n as u128 {
                l += 1;
            }
            for i in 0..=l {
                if space.is_empty() {
                    break;
                }
                let mut ech = Echelon::new(field, space.len());
                for b in &basis {
                    let row = space.iter().map(|v| lifted_trace_functional(a, &a.mul(v, b), p, i)).collect();
                    ech.insert(row);
                }
                space = ech.kernel().iter().map(|c| combine(field, &space, c)).collect();
            }
            let mut ech = Echelon::new(field, n);
            for v in space {
                ech.insert(v);
            }
            ech.basis()
        }
    }
}

fn lifted_trace_functional(a: &Algebra, y: &[Scalar], p: u64, i: u32) -> Scalar {
    let field = a.field();
    let n = a.dim();
    let pi = (p as i128).pow(i);
    let modulus = pi * p as i128;
    let l = a.left_mult_matrix(y);
    let lift: Vec<i128> = l.entries().iter().map(|x| x.residue().unwrap() as i128).collect();
    let mul = |x: &[i128], y: &[i128]| -> Vec<i128> {
        let mut out = vec![0i128; n * n];
        for r in 0..n {
            for k in 0..n {
                let xv = x[r * n + k];
                if xv == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] = (out[r * n + c] + xv * y[k * n + c]) % modulus;
                }
            }
        }
        out
    };
    let mut result: Vec<i128> =
        (0..n * n).map(|t| if t / n == t % n { 1 } else { 0 }).collect();
    let mut base = lift;
    let mut e = pi;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    let tr = (0..n).map(|d| result[d * n + d]).sum::<i128>().rem_euclid(modulus);
    debug_assert_eq!(tr % pi, 0);
    Scalar::from_i64(field, ((tr / pi) % p as i128) as i64)
}

/// Primitive orthogonal idempotents summing to 1, plus the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub idempotents: Vec<Vec<Scalar>>,
    pub radical: Vec<Vec<Scalar>>,
}

type Poly = Vec<Scalar>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn deg(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

fn poly_eval(p: &Poly, x: &Scalar) -> Scalar {
    p.iter().rev().fold(x.field().zero(), |acc, c| acc.mul(x).add(c))
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let f = a[0].field();
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let f = a[0].field();
    let n = a.len().max(b.len());
    let get = |p: &Poly, i: usize| p.get(i).cloned().unwrap_or_else(|| f.zero());
    trim((0..n).map(|i| get(a, i).sub(&get(b, i))).collect())
}

fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let f = a[0].field();
    let b = trim(b.clone());
    let lead_inv = b.last().unwrap().inv().expect("nonzero divisor");
    let mut r = trim(a.clone());
    if deg(&r) < deg(&b) || (r.len() == 1 && r[0].is_zero()) {
        return (vec![f.zero()], r);
    }
    let mut q = vec![f.zero(); deg(&r) - deg(&b) + 1];
    while !(r.len() == 1 && r[0].is_zero()) && deg(&r) >= deg(&b) {
        let shift = deg(&r) - deg(&b);
        let c = r.last().unwrap().mul(&lead_inv);
        for (i, x) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&c.mul(x));
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
        if r.is_empty() {
            r.push(f.zero());
        }
    }
    (trim(q), r)
}

/// Returns `(s, t)` with `s·a + t·b = 1` when `a`, `b` are coprime.
fn bezout(a: &Poly, b: &Poly) -> Option<(Poly, Poly)> {
    let f = a[0].field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![f.one()], vec![f.zero()]);
    let (mut t0, mut t1) = (vec![f.zero()], vec![f.one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if deg(&r0) != 0 {
        return None;
    }
    let inv = r0[0].inv()?;
    Some((s0.iter().map(|c| c.mul(&inv)).collect(), t0.iter().map(|c| c.mul(&inv)).collect()))
}

/// Arithmetic inside a corner `eAe`, whose unit is `e`.
struct Corner<'a> {
    a: &'a Algebra,
    e: Vec<Scalar>,
}

impl Corner<'_> {
    fn eval(&self, p: &Poly, x: &[Scalar]) -> Vec<Scalar> {
        let mut acc = self.a.zero_vector();
        for c in p.iter().rev() {
            acc = self.a.add(&self.a.mul(&acc, x), &self.a.scale(&self.e, c));
        }
        acc
    }

    /// Minimal polynomial of `x` relative to the unit `e`.
    fn minpoly(&self, x: &[Scalar]) -> Poly {
        let field = self.a.field();
        let mut powers = vec![self.e.clone()];
        loop {
            let next = self.a.mul(powers.last().unwrap(), x);
            let m = Matrix::from_fn(field, self.a.dim(), powers.len(), |i, j| powers[j][i].clone());
            if let Ok(Some(c)) = m.solve(&next) {
                let mut p: Poly = c.iter().map(|v| v.neg()).collect();
                p.push(field.one());
                return p;
            }
            powers.push(next);
        }
    }

    fn basis(&self) -> Vec<Vec<Scalar>> {
        let mut ech = Echelon::new(self.a.field(), self.a.dim());
        for i in 0..self.a.dim() {
            ech.insert(self.a.mul3(&self.e, &self.a.basis_vector(i), &self.e));
        }
        ech.basis()
    }

    fn is_commutative(&self, basis: &[Vec<Scalar>]) -> bool {
        basis.iter().enumerate().all(|(i, x)| {
            basis[i + 1..].iter().all(|y| self.a.mul(x, y) == self.a.mul(y, x))
        })
    }

    /// Splits `e = f + (e - f)` using the primary decomposition of `x`.
    fn split_with_root(&self, x: &[Scalar], roots: &[Scalar]) -> Option<Vec<Scalar>> {
        let m = self.minpoly(x);
        if deg(&m) < 2 {
            return None;
        }
        let field = self.a.field();
        let lambda = roots.iter().find(|r| poly_eval(&m, r).is_zero())?;
        let lin = vec![lambda.neg(), field.one()];
        let mut q = m.clone();
        let mut pa = vec![field.one()];
        loop {
            let (qq, r) = poly_divrem(&q, &lin);
            if !(r.len() == 1 && r[0].is_zero()) {
                break;
            }
            q = qq;
            pa = poly_mul(&pa, &lin);
        }
        if deg(&q) == 0 {
            return None;
        }
        let (_, t) = bezout(&pa, &q)?;
        let f = self.eval(&poly_mul(&t, &q), x);
        let ok = self.a.mul(&f, &f) == f && f != self.e && f.iter().any(|c| !c.is_zero());
        ok.then_some(f)
    }

    /// Finite fields: a non-scalar solution of `y^p = y` in a commutative
    /// subspace splits over the prime field.
    fn split_berlekamp(&self, space: &[Vec<Scalar>], p: u64) -> Option<Vec<Scalar>> {
        let field = self.a.field();
        let mut ech = Echelon::new(field, self.a.dim());
        for v in space {
            ech.insert(v.clone());
        }
        let sb = ech.basis();
        let cols: Vec<Vec<Scalar>> = sb
            .iter()
            .map(|y| {
                let fy = self.a.sub(&self.a.pow_from(&self.e, y, p), y);
                ech.coordinates(&fy).expect("Frobenius preserves the subalgebra")
            })
            .collect();
        let m = Matrix::from_fn(field, sb.len(), sb.len(), |i, j| cols[j][i].clone());
        let ker = m.kernel();
        if ker.len() < 2 {
            return None;
        }
        let roots = field.elements().unwrap();
        for c in &ker {
            let y = combine(field, &sb, c);
            if let Some(f) = self.split_with_root(&y, &roots) {
                return Some(f);
            }
        }
        None
    }
}

impl Algebra {
    /// `x^e` computed with unit `one`.
    pub(crate) fn pow_from(&self, one: &[Scalar], x: &[Scalar], e: u64) -> Vec<Scalar> {
        let mut r = one.to_vec();
        let mut b = x.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }
}

/// Eigenvalue candidates over a cyclotomic field: roots of unity times
/// small rationals.
fn cyclotomic_candidates(field: FieldSpec) -> Vec<Scalar> {
    let n = field.torsion_order();
    let zeta = crate::scalar::primitive_root_of_unity(field, n).expect("torsion generator");
    let mut out = vec![field.zero()];
    let rats: [(i64, i64); 9] = [(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (1, 2), (1, 3), (1, 4), (3, 2)];
    for (num, den) in rats {
        let r = Scalar::from_i64(field, num).div(&Scalar::from_i64(field, den)).unwrap();
        let mut z = field.one();
        for _ in 0..n {
            out.push(r.mul(&z));
            z = z.mul(&zeta);
        }
    }
    out
}

fn root_candidates(field: FieldSpec) -> Vec<Scalar> {
    match field {
        FieldSpec::Prime(_) => field.elements().unwrap(),
        FieldSpec::Cyclotomic(_) => cyclotomic_candidates(field),
    }
}

/// Quotient by the radical, realized on the non-pivot coordinates of its
/// echelon basis.
struct SemisimpleQuotient {
    b: Algebra,
    free: Vec<usize>,
}

fn semisimple_quotient(a: &Algebra, rad: &[Vec<Scalar>]) -> SemisimpleQuotient {
    let field = a.field();
    let n = a.dim();
    let mut ech = Echelon::new(field, n);
    for v in rad {
        ech.insert(v.clone());
    }
    let pivots: Vec<usize> =
        ech.basis().iter().map(|v| v.iter().position(|x| !x.is_zero()).unwrap()).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let project = |v: Vec<Scalar>| -> Vec<Scalar> {
        let r = ech.reduce(v);
        free.iter().map(|&c| r[c].clone()).collect()
    };
    let names = free.iter().map(|&c| a.basis_names()[c].clone()).collect();
    let unit = project(a.unit().to_vec());
    let b = Algebra::from_fn(field, names, unit, |i, j| {
        project(a.mul(&a.basis_vector(free[i]), &a.basis_vector(free[j])))
    });
    SemisimpleQuotient { b, free }
}

/// Splits `1` of a semisimple algebra into primitive orthogonal idempotents.
fn semisimple_idempotents(b: &Algebra, cfg: &SearchConfig) -> Result<Vec<Vec<Scalar>>, AlgebraError> {
    let field = b.field();
    if b.dim() == 0 {
        return Ok(Vec::new());
    }
    let roots = root_candidates(field);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let budget = cfg.samples.clamp(16, 400);

    // Central blocks first: the center is commutative, so it splits
    // completely over finite fields.
    let z = super::center(b);
    let mut blocks = vec![b.unit().to_vec()];
    let mut central = Vec::new();
    while let Some(e) = blocks.pop() {
        let corner = Corner { a: b, e: e.clone() };
        let ze: Vec<Vec<Scalar>> = {
            let mut ech = Echelon::new(field, b.dim());
            for v in &z {
                ech.insert(b.mul(&e, v));
            }
            ech.basis()
        };
        if ze.len() == 1 {
            central.push(e);
            continue;
        }
        let mut split = ze.iter().find_map(|x| corner.split_with_root(x, &roots));
        if split.is_none() {
            if let FieldSpec::Prime(p) = field {
                split = corner.split_berlekamp(&ze, p);
            }
        }
        if split.is_none() {
            for _ in 0..budget {
                let c: Vec<Scalar> = ze.iter().map(|_| field.sample(&mut rng)).collect();
                if let Some(f) = corner.split_with_root(&combine(field, &ze, &c), &roots) {
                    split = Some(f);
                    break;
                }
            }
        }
        match split {
            Some(f) => {
                blocks.push(b.sub(&e, &f));
                blocks.push(f);
            }
            None if matches!(field, FieldSpec::Prime(_)) => central.push(e),
            None => {
                return Err(AlgebraError::Inconclusive(format!(
                    "could not split a central block of dimension {}",
                    ze.len()
                )))
            }
        }
    }

    // Inside a simple block, a commutative corner is a field.
    let mut out = Vec::new();
    let mut queue = central;
    queue.reverse();
    while let Some(e) = queue.pop() {
        let corner = Corner { a: b, e: e.clone() };
        let cb = corner.basis();
        if cb.len() == 1 || corner.is_commutative(&cb) {
            out.push(e);
            continue;
        }
        let mut split = cb.iter().find_map(|x| corner.split_with_root(x, &roots));
        let mut tries = 0;
        while split.is_none() && tries < budget {
            tries += 1;
            let c: Vec<Scalar> = cb.iter().map(|_| field.sample(&mut rng)).collect();
            let x = combine(field, &cb, &c);
            split = corner.split_with_root(&x, &roots);
            if split.is_none() {
                if let FieldSpec::Prime(p) = field {
                    let deg_x = deg(&corner.minpoly(&x));
                    let powers: Vec<Vec<Scalar>> =
                        (0..deg_x).map(|k| b.pow_from(&e, &x, k as u64)).collect();
                    split = corner.split_berlekamp(&powers, p);
                }
            }
        }
        match split {
            Some(f) => {
                queue.push(b.sub(&e, &f));
                queue.push(f);
            }
            None => {
                return Err(AlgebraError::Inconclusive(format!(
                    "could not split a corner of dimension {}",
                    cb.len()
                )))
            }
        }
    }
    Ok(out)
}

/// Complete set of primitive orthogonal idempotents, lifted from the
/// semisimple quotient.
pub fn primitive_idempotents(a: &Algebra, cfg: &SearchConfig) -> Result<Decomposition, AlgebraError> {
    let rad = radical(a);
    let q = semisimple_quotient(a, &rad);
    let bar = semisimple_idempotents(&q.b, cfg)?;
    let lift = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = a.zero_vector();
        for (c, &i) in v.iter().zip(&q.free) {
            out[i] = c.clone();
        }
        out
    };
    let mut f = a.unit().to_vec();
    let mut idems = Vec::new();
    for (k, eb) in bar.iter().enumerate() {
        if k + 1 == bar.len() {
            idems.push(f.clone());
            break;
        }
        let mut x = a.mul3(&f, &lift(eb), &f);
        let three = Scalar::from_i64(a.field(), 3);
        let two = Scalar::from_i64(a.field(), 2);
        let mut steps = 0;
        while a.mul(&x, &x) != x {
            let x2 = a.mul(&x, &x);
            let x3 = a.mul(&x2, &x);
            x = a.sub(&a.scale(&x2, &three), &a.scale(&x3, &two));
            steps += 1;
            if steps > 64 {
                return Err(AlgebraError::Inconclusive("idempotent lifting did not converge".into()));
            }
        }
        f = a.sub(&f, &x);
        idems.push(x);
    }
    Ok(Decomposition { idempotents: idems, radical: rad })
}

/// Indecomposable projectives `e_i A` up to isomorphism, with their tops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Basis {
    pub decomposition: Decomposition,
    /// Class of each idempotent.
    pub class_of: Vec<usize>,
    /// One projective per class, as a right module.
    pub projectives: Vec<ModuleRep>,
    /// Simple top of each projective.
    pub simples: Vec<ModuleRep>,
    /// Multiplicity of each projective in the regular module.
    pub multiplicities: Vec<usize>,
}

fn span_of(a: &Algebra, vs: impl Iterator<Item = Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon::new(a.field(), a.dim());
    for v in vs {
        ech.insert(v);
    }
    ech.basis()
}

/// The projective `eA` as a right module.
pub fn projective_cover_of_idempotent(a: &Algebra, e: &[Scalar]) -> ModuleRep {
    let reg = ModuleRep::regular(a).as_rep(a.field());
    let cols = span_of(a, (0..a.dim()).map(|j| a.mul(e, &a.basis_vector(j))));
    let s = reg.sub_rep(&cols).expect("eA is a right ideal");
    ModuleRep { dim: s.rep.dim, action: s.rep.mats }
}

pub fn k0_basis(a: &Algebra, cfg: &SearchConfig) -> Result<K0Basis, AlgebraError> {
    let dec = primitive_idempotents(a, cfg)?;
    let field = a.field();
    let reg = ModuleRep::regular(a).as_rep(field);
    let mut class_of = Vec::new();
    let mut projectives: Vec<ModuleRep> = Vec::new();
    let mut reps: Vec<Rep> = Vec::new();
    let mut simples = Vec::new();
    let mut multiplicities = Vec::new();
    for e in &dec.idempotents {
        let p = projective_cover_of_idempotent(a, e);
        let pr = p.as_rep(field);
        if let Some(k) = reps.iter().position(|r| r.local_iso(&pr).is_some()) {
            class_of.push(k);
            multiplicities[k] += 1;
            continue;
        }
        let ea = span_of(a, (0..a.dim()).map(|j| a.mul(e, &a.basis_vector(j))));
        let ej = span_of(a, dec.radical.iter().map(|r| a.mul(e, r)));
        let top = reg
            .subquotient(&ea, &ej)
            .ok_or_else(|| AlgebraError::Inconclusive("eJ is not a submodule of eA".into()))?;
        simples.push(ModuleRep { dim: top.rep.dim, action: top.rep.mats });
        class_of.push(reps.len());
        multiplicities.push(1);
        reps.push(pr);
        projectives.push(p);
    }
    Ok(K0Basis { decomposition: dec, class_of, projectives, simples, multiplicities })
}

impl K0Basis {
    /// Class of an indecomposable projective module.
    pub fn class_of_projective(&self, field: FieldSpec, m: &ModuleRep) -> Option<usize> {
        let r = m.as_rep(field);
        self.projectives.iter().position(|p| p.as_rep(field).local_iso(&r).is_some())
    }

    /// Class of a simple module.
    pub fn class_of_simple(&self, field: FieldSpec, m: &ModuleRep) -> Option<usize> {
        let r = m.as_rep(field);
        self.simples.iter().position(|s| s.as_rep(field).local_iso(&r).is_some())
    }
}

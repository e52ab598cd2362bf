//! Grading groups `L(p₁,…,p_t)`, the coordinate algebras of the four
//! tubular weight types, and the graded automorphisms relating them.
//!
//! Algebras are commutative polynomial rings modulo rewrite rules of the
//! form `X^p → f`. Identities are checked on the finite set of monomials
//! of bounded total degree. The cyclic actions of the graded
//! automorphisms are realized on the smash product of a truncation with
//! the dual of the finite grading quotient on which the scaling
//! character lives.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abgroup::smith_normal_form;
use crate::action::{induced_cyclic_action, ActionError, CompatiblePair, ModuleCategoryAction};
use crate::algebra::{Algebra, AlgebraMap};
use crate::scalar::{primitive_root_of_unity, FieldSpec, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TubularError {
    BadWeights,
    BadParameter(String),
    MissingConstant(&'static str),
    NonConfluent(Vec<(usize, usize)>),
    NotScaling,
    Action(ActionError),
}

impl fmt::Display for TubularError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TubularError::BadWeights => write!(f, "weights must be positive and non-empty"),
            TubularError::BadParameter(s) => write!(f, "bad parameter: {s}"),
            TubularError::MissingConstant(c) => write!(f, "the field does not contain {c}"),
            TubularError::NonConfluent(p) => write!(f, "rewrite system is not confluent at {p:?}"),
            TubularError::NotScaling => write!(f, "no power of the automorphism is a scaling"),
            TubularError::Action(e) => write!(f, "{e}"),
        }
    }
}

impl From<ActionError> for TubularError {
    fn from(e: ActionError) -> Self {
        TubularError::Action(e)
    }
}

/// Canonical coordinates of an element of a grading group: torsion
/// coordinates reduced modulo their orders, then free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LElem(pub Vec<i128>);

/// `Z^t` modulo `p_i x⃗_i = p_j x⃗_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingGroup {
    pub weights: Vec<u64>,
    /// Change of coordinates from `Z^t`: row vector `v` goes to `v·V`.
    v: Vec<Vec<i128>>,
    /// Elementary divisors per canonical coordinate; 0 means free.
    divisors: Vec<i128>,
}

impl GradingGroup {
    pub fn new(weights: &[u64]) -> Result<GradingGroup, TubularError> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(TubularError::BadWeights);
        }
        let t = weights.len();
        let mut rows: Vec<Vec<i128>> = (0..t.saturating_sub(1))
            .map(|i| {
                let mut r = vec![0i128; t];
                r[i] = weights[i] as i128;
                r[i + 1] = -(weights[i + 1] as i128);
                r
            })
            .collect();
        if rows.is_empty() {
            rows.push(vec![0; t]);
        }
        let (d, _, v) = smith_normal_form(&rows);
        let divisors = (0..t).map(|j| if j < d.len() { d[j][j].abs() } else { 0 }).collect();
        Ok(GradingGroup { weights: weights.to_vec(), v, divisors })
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    /// Orders of the nontrivial torsion coordinates.
    pub fn torsion(&self) -> Vec<i128> {
        self.divisors.iter().copied().filter(|&d| d > 1).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.divisors.iter().filter(|&&d| d == 0).count()
    }

    /// Class of `Σ v_i x⃗_i`.
    pub fn normal_form(&self, v: &[i128]) -> LElem {
        let t = self.rank();
        let w = (0..t).map(|j| {
            let x: i128 = (0..t).map(|i| v[i] * self.v[i][j]).sum();
            match self.divisors[j] {
                0 => x,
                d => x.rem_euclid(d),
            }
        });
        LElem(w.collect())
    }

    pub fn x(&self, i: usize) -> LElem {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        self.normal_form(&v)
    }

    pub fn zero(&self) -> LElem {
        self.normal_form(&vec![0; self.rank()])
    }

    /// `c⃗ = p_1 x⃗_1`.
    pub fn c(&self) -> LElem {
        let mut v = vec![0; self.rank()];
        v[0] = self.weights[0] as i128;
        self.normal_form(&v)
    }

    /// `ω⃗ = (t − 2)c⃗ − Σ x⃗_i`.
    pub fn omega(&self) -> LElem {
        let t = self.rank();
        let mut v = vec![-1i128; t];
        v[0] += (t as i128 - 2) * self.weights[0] as i128;
        self.normal_form(&v)
    }

    pub fn add(&self, a: &LElem, b: &LElem) -> LElem {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn scale(&self, k: i128, a: &LElem) -> LElem {
        self.reduce(a.0.iter().map(|x| k * x).collect())
    }

    fn reduce(&self, w: Vec<i128>) -> LElem {
        LElem(w.into_iter().zip(&self.divisors).map(|(x, &d)| if d == 0 { x } else { x.rem_euclid(d) }).collect())
    }

    /// `None` for elements of infinite order.
    pub fn order(&self, a: &LElem) -> Option<u64> {
        let mut ord = 1i128;
        for (&x, &d) in a.0.iter().zip(&self.divisors) {
            if d == 0 {
                if x != 0 {
                    return None;
                }
                continue;
            }
            let k = d / gcd(x, d);
            ord = ord / gcd(ord, k) * k;
        }
        Some(ord as u64)
    }

    /// Rows `p_i e_i − p_{i+1} e_{i+1}` generating the relation lattice.
    pub fn relations(&self) -> Vec<Vec<i128>> {
        let t = self.rank();
        (0..t.saturating_sub(1))
            .map(|i| {
                let mut r = vec![0i128; t];
                r[i] = self.weights[i] as i128;
                r[i + 1] = -(self.weights[i + 1] as i128);
                r
            })
            .collect()
    }

    /// `δ: L → Z` with `δ(x⃗_i) = lcm(p)/p_i`.
    pub fn total_degree(&self, v: &[i128]) -> i128 {
        let l = self.weights.iter().fold(1i128, |acc, &p| acc / gcd(acc, p as i128) * p as i128);
        v.iter().zip(&self.weights).map(|(x, &p)| x * (l / p as i128)).sum()
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub type Mono = Vec<u32>;

/// Sparse commutative polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Scalar>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn term(m: Mono, s: Scalar) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, s);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                *c = c.add(&s);
                if c.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, s);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, s) in &o.terms {
            out.add_term(m.clone(), s.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, s) in &o.terms {
            out.add_term(m.clone(), s.neg());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(s));
        }
        out
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(mono_mul(m1, m2), c1.mul(c2));
            }
        }
        out
    }
}

fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn unit_mono(n: usize, i: usize, e: u32) -> Mono {
    let mut m = vec![0; n];
    m[i] = e;
    m
}

/// `X_var^power → rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub var: usize,
    pub power: u32,
    pub rhs: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TubularType {
    T2222(Scalar),
    T333,
    T442,
    T632,
}

impl TubularType {
    pub fn weights(&self) -> Vec<u64> {
        match self {
            TubularType::T2222(_) => vec![2, 2, 2, 2],
            TubularType::T333 => vec![3, 3, 3],
            TubularType::T442 => vec![4, 4, 2],
            TubularType::T632 => vec![6, 3, 2],
        }
    }

    pub fn name(&self) -> String {
        match self {
            TubularType::T2222(l) => format!("S(2,2,2,2;{l})"),
            TubularType::T333 => "S(3,3,3)".into(),
            TubularType::T442 => "S(4,4,2)".into(),
            TubularType::T632 => "S(6,3,2)".into(),
        }
    }
}

/// A graded commutative algebra given by generators of degrees `x⃗_i`
/// and rewrite rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    pub field: FieldSpec,
    pub kind: TubularType,
    pub names: Vec<String>,
    pub group: GradingGroup,
    pub rules: Vec<Rule>,
}

impl GradedPresentation {
    pub fn new(kind: TubularType, field: FieldSpec) -> Result<GradedPresentation, TubularError> {
        let one = field.one();
        let n = kind.weights().len();
        let m = |i: usize, e: u32| unit_mono(n, i, e);
        let diff = |a: Mono, b: Mono, lb: Scalar| {
            // a − lb·b
            let mut p = Poly::term(a, one.clone());
            p.add_term(b, lb.neg());
            p
        };
        let (letter, rules) = match &kind {
            TubularType::T2222(lambda) => {
                if lambda.is_zero() || lambda.is_one() {
                    return Err(TubularError::BadParameter("λ must differ from 0 and 1".into()));
                }
                let r3 = Rule { var: 2, power: 2, rhs: diff(m(1, 2), m(0, 2), one.clone()) };
                let r4 = Rule { var: 3, power: 2, rhs: diff(m(1, 2), m(0, 2), lambda.clone()) };
                ('x', vec![r3, r4])
            }
            TubularType::T333 => ('y', vec![Rule { var: 2, power: 3, rhs: diff(m(1, 3), m(0, 3), one.clone()) }]),
            TubularType::T442 => ('z', vec![Rule { var: 2, power: 2, rhs: diff(m(1, 4), m(0, 4), one.clone()) }]),
            TubularType::T632 => ('u', vec![Rule { var: 2, power: 2, rhs: diff(m(1, 3), m(0, 6), one.clone()) }]),
        };
        let group = GradingGroup::new(&kind.weights())?;
        let names = (1..=n).map(|i| format!("{letter}{i}")).collect();
        Ok(GradedPresentation { field, kind, names, group, rules })
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn degree(&self, m: &[u32]) -> LElem {
        let v: Vec<i128> = m.iter().map(|&e| e as i128).collect();
        self.group.normal_form(&v)
    }

    pub fn total_degree(&self, m: &[u32]) -> i128 {
        let v: Vec<i128> = m.iter().map(|&e| e as i128).collect();
        self.group.total_degree(&v)
    }

    pub fn is_normal(&self, m: &[u32]) -> bool {
        self.rules.iter().all(|r| m[r.var] < r.power)
    }

    /// Rewrites until every monomial is normal.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut work: Vec<(Mono, Scalar)> = p.terms().map(|(m, s)| (m.clone(), s.clone())).collect();
        while let Some((m, s)) = work.pop() {
            match self.rules.iter().find(|r| m[r.var] >= r.power) {
                Some(r) => {
                    let mut base = m.clone();
                    base[r.var] -= r.power;
                    for (rm, rs) in r.rhs.terms() {
                        work.push((mono_mul(&base, rm), s.mul(rs)));
                    }
                }
                None => out.add_term(m, s),
            }
        }
        out
    }

    /// One rewrite step with rule `k` at the given monomial.
    fn step(&self, k: usize, m: &[u32]) -> Poly {
        let r = &self.rules[k];
        let mut base = m.to_vec();
        base[r.var] -= r.power;
        let mut out = Poly::zero();
        for (rm, rs) in r.rhs.terms() {
            out.add_term(mono_mul(&base, rm), rs.clone());
        }
        out
    }

    /// `lhs − rhs` of rule `k`.
    pub fn relation(&self, k: usize) -> Poly {
        let r = &self.rules[k];
        Poly::term(unit_mono(self.ngens(), r.var, r.power), self.field.one()).sub(&r.rhs)
    }

    /// Pairs of rules whose overlap reduces to different normal forms.
    pub fn confluence_failures(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.rules.len() {
            for j in i..self.rules.len() {
                let (ri, rj) = (&self.rules[i], &self.rules[j]);
                let mut lcm = vec![0u32; self.ngens()];
                lcm[ri.var] = ri.power;
                lcm[rj.var] = lcm[rj.var].max(rj.power);
                if i == j {
                    // Self-overlap of X^p inside X^{p+1} from both ends.
                    lcm[ri.var] += 1;
                }
                let a = self.reduce(&self.step(i, &lcm));
                let b = self.reduce(&self.step(j, &lcm));
                if a != b {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Rules whose two sides have different degrees in L.
    pub fn inhomogeneous_rules(&self) -> Vec<usize> {
        (0..self.rules.len())
            .filter(|&k| {
                let r = &self.rules[k];
                let d = self.degree(&unit_mono(self.ngens(), r.var, r.power));
                r.rhs.terms().any(|(m, _)| self.degree(m) != d)
            })
            .collect()
    }

    /// Normal monomials of total degree at most `bound`, ordered by total
    /// degree and then lexicographically.
    pub fn truncation(&self, bound: u64) -> Truncation {
        let n = self.ngens();
        let mut basis = Vec::new();
        let mut cur = vec![0u32; n];
        self.enumerate(0, &mut cur, bound as i128, &mut basis);
        basis.sort_by(|a, b| self.total_degree(a).cmp(&self.total_degree(b)).then(a.cmp(b)));
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Truncation { bound, basis, index }
    }

    fn enumerate(&self, i: usize, cur: &mut Mono, left: i128, out: &mut Vec<Mono>) {
        if i == cur.len() {
            if self.is_normal(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let step = self.group.total_degree(&unit_mono(cur.len(), i, 1).iter().map(|&e| e as i128).collect::<Vec<_>>());
        let mut e = 0;
        while step * e as i128 <= left {
            cur[i] = e;
            self.enumerate(i + 1, cur, left - step * e as i128, out);
            e += 1;
        }
        cur[i] = 0;
    }
}

/// A finite downward-closed set of normal monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub bound: u64,
    pub basis: Vec<Mono>,
    index: BTreeMap<Mono, usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TruncationReport {
    pub products_checked: usize,
    /// Products landing above the bound; still checked in full.
    pub overflow_products: usize,
    pub degree_additivity_failures: usize,
    pub associativity_failures: usize,
}

impl TruncationReport {
    pub fn passed(&self) -> bool {
        self.degree_additivity_failures == 0 && self.associativity_failures == 0
    }
}

impl Truncation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a normal-form polynomial, and the part above the bound.
    pub fn coords(&self, field: FieldSpec, p: &Poly) -> (Vec<Scalar>, Poly) {
        let mut v = vec![field.zero(); self.dim()];
        let mut over = Poly::zero();
        for (m, s) in p.terms() {
            match self.index.get(m) {
                Some(&i) => v[i] = v[i].add(s),
                None => over.add_term(m.clone(), s.clone()),
            }
        }
        (v, over)
    }

    /// Dimensions of the graded pieces.
    pub fn components(&self, pres: &GradedPresentation) -> BTreeMap<LElem, usize> {
        let mut out = BTreeMap::new();
        for m in &self.basis {
            *out.entry(pres.degree(m)).or_insert(0) += 1;
        }
        out
    }

    /// Degree additivity and homogeneity of every basis product, plus
    /// associativity on all basis triples with product inside the bound.
    pub fn check(&self, pres: &GradedPresentation) -> TruncationReport {
        let one = pres.field.one();
        let mut rep = TruncationReport::default();
        let nf: Vec<Poly> = self.basis.iter().map(|m| Poly::term(m.clone(), one.clone())).collect();
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                rep.products_checked += 1;
                let prod = pres.reduce(&nf[i].mul(&nf[j]));
                let want = pres.group.add(&pres.degree(a), &pres.degree(b));
                if prod.terms().any(|(m, _)| pres.degree(m) != want) {
                    rep.degree_additivity_failures += 1;
                }
                if prod.terms().any(|(m, _)| !self.index.contains_key(m)) {
                    rep.overflow_products += 1;
                }
            }
        }
        // Triples among generators and low-degree monomials.
        let small: Vec<usize> = (0..self.dim()).filter(|&i| 2 * pres.total_degree(&self.basis[i]) <= self.bound as i128).collect();
        for &i in &small {
            for &j in &small {
                for &k in &small {
                    let l = pres.reduce(&pres.reduce(&nf[i].mul(&nf[j])).mul(&nf[k]));
                    let r = pres.reduce(&nf[i].mul(&pres.reduce(&nf[j].mul(&nf[k]))));
                    if l != r {
                        rep.associativity_failures += 1;
                    }
                }
            }
        }
        rep
    }

    /// `R / R_{>bound}` as a finite-dimensional algebra.
    pub fn algebra(&self, pres: &GradedPresentation) -> Algebra {
        let one = pres.field.one();
        let names = self.basis.iter().map(|m| mono_name(pres, m)).collect();
        let mut unit = vec![pres.field.zero(); self.dim()];
        unit[self.index[&vec![0u32; pres.ngens()]]] = one.clone();
        Algebra::from_fn(pres.field, names, unit, |i, j| {
            let prod = pres.reduce(&Poly::term(mono_mul(&self.basis[i], &self.basis[j]), one.clone()));
            self.coords(pres.field, &prod).0
        })
    }
}

fn mono_name(pres: &GradedPresentation, m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { pres.names[i].clone() } else { format!("{}^{e}", pres.names[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Generator `i ↦ images[i].1 · x_{images[i].0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAutomorphism {
    pub images: Vec<(usize, Scalar)>,
}

impl GradedAutomorphism {
    pub fn identity(field: FieldSpec, n: usize) -> GradedAutomorphism {
        GradedAutomorphism { images: (0..n).map(|i| (i, field.one())).collect() }
    }

    pub fn apply_mono(&self, m: &[u32]) -> Poly {
        let n = m.len();
        let mut out = vec![0u32; n];
        let mut s = self.images[0].1.field().one();
        for (i, &e) in m.iter().enumerate() {
            let (j, c) = &self.images[i];
            out[*j] += e;
            s = s.mul(&c.pow(e as u64));
        }
        Poly::term(out, s)
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, s) in p.terms() {
            out = out.add(&self.apply_mono(m).scale(s));
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedAutomorphism) -> GradedAutomorphism {
        GradedAutomorphism {
            images: other.images.iter().map(|(j, s)| (self.images[*j].0, s.mul(&self.images[*j].1))).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> GradedAutomorphism {
        let field = self.images[0].1.field();
        (0..e).fold(GradedAutomorphism::identity(field, self.images.len()), |acc, _| self.compose(&acc))
    }

    /// The scalars when every generator is fixed up to a scalar.
    pub fn scaling(&self) -> Option<Vec<Scalar>> {
        self.images.iter().enumerate().map(|(i, (j, s))| (i == *j).then(|| s.clone())).collect()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        for (j, s) in &self.images {
            if *j >= seen.len() || seen[*j] || s.is_zero() {
                return false;
            }
            seen[*j] = true;
        }
        true
    }

    /// `ψ` on `Z^t`: `x⃗_i ↦ x⃗_{images[i].0}`.
    pub fn psi(&self, v: &[i128]) -> Vec<i128> {
        let mut out = vec![0; v.len()];
        for (i, (j, _)) in self.images.iter().enumerate() {
            out[*j] += v[i];
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AutomorphismReport {
    pub bijective: bool,
    pub psi_well_defined: bool,
    pub relations_preserved: bool,
    pub bound: u64,
    pub degree_failures: usize,
    pub products_checked: usize,
    pub multiplicative_failures: usize,
}

impl AutomorphismReport {
    pub fn passed(&self) -> bool {
        self.bijective
            && self.psi_well_defined
            && self.relations_preserved
            && self.degree_failures == 0
            && self.multiplicative_failures == 0
    }
}

/// Degree compatibility, relation preservation and invertibility, plus
/// `g(ab) = g(a)g(b)` on all pairs of monomials up to `bound`.
pub fn validate_graded_automorphism(g: &GradedAutomorphism, pres: &GradedPresentation, bound: u64) -> AutomorphismReport {
    let mut rep = AutomorphismReport { bound, ..Default::default() };
    if g.images.len() != pres.ngens() {
        return rep;
    }
    rep.bijective = g.is_bijective();
    if !rep.bijective {
        return rep;
    }
    let grp = &pres.group;
    rep.psi_well_defined = grp.relations().iter().all(|r| grp.normal_form(&g.psi(r)) == grp.zero());
    rep.relations_preserved = (0..pres.rules.len()).all(|k| pres.reduce(&g.apply(&pres.relation(k))).is_zero());
    let tr = pres.truncation(bound);
    let one = pres.field.one();
    let images: Vec<Poly> = tr.basis.iter().map(|m| pres.reduce(&g.apply_mono(m))).collect();
    for (m, img) in tr.basis.iter().zip(&images) {
        let v: Vec<i128> = m.iter().map(|&e| e as i128).collect();
        let want = grp.normal_form(&g.psi(&v));
        if img.terms().any(|(mm, _)| pres.degree(mm) != want) {
            rep.degree_failures += 1;
        }
    }
    for i in 0..tr.dim() {
        for j in i..tr.dim() {
            rep.products_checked += 1;
            let prod = pres.reduce(&Poly::term(mono_mul(&tr.basis[i], &tr.basis[j]), one.clone()));
            let lhs = pres.reduce(&g.apply(&prod));
            let rhs = pres.reduce(&images[i].mul(&images[j]));
            if lhs != rhs {
                rep.multiplicative_failures += 1;
            }
        }
    }
    rep
}

/// `√−1` and `ε` with `ε² − ε + 1 = 0`, as the smallest primitive 4th and
/// 6th roots of unity.
pub fn field_constants(field: FieldSpec) -> Result<(Scalar, Scalar), TubularError> {
    if matches!(field.characteristic(), 2 | 3) {
        return Err(TubularError::BadParameter("characteristic must differ from 2 and 3".into()));
    }
    let i = primitive_root_of_unity(field, 4).map_err(|_| TubularError::MissingConstant("√−1"))?;
    let eps = primitive_root_of_unity(field, 6).map_err(|_| TubularError::MissingConstant("ε"))?;
    debug_assert!(i.mul(&i).add(&field.one()).is_zero());
    debug_assert!(eps.mul(&eps).sub(&eps).add(&field.one()).is_zero());
    Ok((i, eps))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismEntry {
    pub name: &'static str,
    pub presentation: GradedPresentation,
    pub g: GradedAutomorphism,
}

/// The three graded automorphisms `g₁, g₂, g₃`.
pub fn standard_automorphisms(field: FieldSpec) -> Result<Vec<AutomorphismEntry>, TubularError> {
    let (i, eps) = field_constants(field)?;
    let one = field.one();
    let g1 = GradedAutomorphism { images: vec![(0, i.clone()), (1, one.clone()), (3, one.clone()), (2, one.clone())] };
    let g2 = GradedAutomorphism { images: vec![(1, one.clone()), (2, one.clone()), (0, i.clone()), (3, i.mul(&eps))] };
    let g3 = GradedAutomorphism { images: vec![(1, one.clone()), (0, one.clone()), (2, eps.clone())] };
    Ok(vec![
        AutomorphismEntry { name: "g1", presentation: GradedPresentation::new(TubularType::T2222(one.neg()), field)?, g: g1 },
        AutomorphismEntry { name: "g2", presentation: GradedPresentation::new(TubularType::T2222(eps), field)?, g: g2 },
        AutomorphismEntry { name: "g3", presentation: GradedPresentation::new(TubularType::T333, field)?, g: g3 },
    ])
}

/// `γ` on generators extends to a homomorphism `L → k*`.
pub fn character_well_defined(pres: &GradedPresentation, gamma: &[Scalar]) -> bool {
    let one = pres.field.one();
    pres.group.relations().iter().all(|r| {
        let v = r.iter().zip(gamma).fold(one.clone(), |acc, (&e, g)| acc.mul(&g.powi(e as i64)));
        v.is_one()
    })
}

pub fn character_value(gamma: &[Scalar], m: &[u32]) -> Scalar {
    let one = gamma[0].field().one();
    m.iter().zip(gamma).fold(one, |acc, (&e, g)| acc.mul(&g.pow(e as u64)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingPower {
    /// Smallest `m ≥ 1` with `g^m` a scaling.
    pub m: u64,
    pub gamma: Vec<Scalar>,
    pub well_defined: bool,
    /// Order of `γ` as a character.
    pub gamma_order: u64,
}

pub fn scaling_power(pres: &GradedPresentation, g: &GradedAutomorphism, max: u64) -> Result<ScalingPower, TubularError> {
    for m in 1..=max {
        if let Some(gamma) = g.pow(m).scaling() {
            let well_defined = character_well_defined(pres, &gamma);
            let gamma_order = gamma
                .iter()
                .map(|s| s.root_of_unity_order().unwrap_or(0))
                .fold(1u64, |acc, o| if o == 0 || acc == 0 { 0 } else { acc / gcd(acc as i128, o as i128) as u64 * o });
            return Ok(ScalingPower { m, gamma, well_defined, gamma_order });
        }
    }
    Err(TubularError::NotScaling)
}

/// The smash product `B = A # k^Q` of the truncation `A` with the dual of
/// the cyclic group `Q = L / ker γ`, with the automorphism induced by `g`
/// and the unit `a` with `σ^m = a(-)a⁻¹`. Right B-modules are Q-graded
/// A-modules and `a⁻¹` scales the piece of degree `q` by `γ(q)`.
#[derive(Clone, Debug)]
pub struct SmashRealization {
    pub truncation_dim: usize,
    pub quotient_order: u64,
    pub algebra: Algebra,
    pub pair: CompatiblePair,
}

pub fn smash_realization(
    pres: &GradedPresentation,
    g: &GradedAutomorphism,
    sp: &ScalingPower,
    bound: u64,
) -> Result<SmashRealization, TubularError> {
    if !sp.well_defined || sp.gamma_order == 0 {
        return Err(TubularError::NotScaling);
    }
    let field = pres.field;
    let r = sp.gamma_order;
    let zeta = primitive_root_of_unity(field, r).map_err(|_| TubularError::MissingConstant("roots of unity"))?;
    let powers: Vec<Scalar> = (0..r).map(|k| zeta.pow(k)).collect();
    let tr = pres.truncation(bound);
    let a = tr.algebra(pres);
    let n = tr.dim();
    let q_of: Vec<usize> = tr
        .basis
        .iter()
        .map(|m| {
            let v = character_value(&sp.gamma, m);
            powers.iter().position(|p| *p == v).expect("γ takes values in ⟨ζ⟩")
        })
        .collect();
    let r = r as usize;
    let idx = |q: usize, i: usize| q * n + i;
    let names = (0..r).flat_map(|q| a.basis_names().iter().map(move |s| format!("p{q}*{s}"))).collect();
    let mut unit = vec![field.zero(); r * n];
    let one_idx = tr.index_of(&vec![0; pres.ngens()]).expect("1 is in every truncation");
    for q in 0..r {
        unit[idx(q, one_idx)] = field.one();
    }
    // (p_q a)(p_s b) = [s = q + deg a] p_q ab
    let b = Algebra::from_fn(field, names, unit, |x, y| {
        let (q, i) = (x / n, x % n);
        let (s, j) = (y / n, y % n);
        let mut out = vec![field.zero(); r * n];
        if s == (q + q_of[i]) % r {
            let prod = a.mul(&a.basis_vector(i), &a.basis_vector(j));
            for (k, c) in prod.into_iter().enumerate() {
                out[idx(q, k)] = c;
            }
        }
        out
    });
    let mut sigma = Matrix::zero(field, r * n, r * n);
    for i in 0..n {
        let (img, over) = tr.coords(field, &pres.reduce(&g.apply_mono(&tr.basis[i])));
        debug_assert!(over.is_zero());
        for q in 0..r {
            for (k, c) in img.iter().enumerate() {
                sigma.set(idx(q, k), idx(q, i), c.clone());
            }
        }
    }
    // a = Σ_q γ(q)⁻¹ p_q.
    let mut unit_a = vec![field.zero(); r * n];
    for q in 0..r {
        unit_a[idx(q, one_idx)] = powers[q].inv().expect("root of unity");
    }
    let pair = CompatiblePair { sigma: AlgebraMap::new(sigma), a: unit_a, d: sp.m };
    Ok(SmashRealization { truncation_dim: n, quotient_order: r as u64, algebra: b, pair })
}

/// The cyclic action induced by the realized compatible pair.
pub fn realized_action(real: &SmashRealization) -> Result<ModuleCategoryAction, TubularError> {
    Ok(induced_cyclic_action(&real.algebra, &real.pair)?)
}

#[cfg(test)]
mod tests;

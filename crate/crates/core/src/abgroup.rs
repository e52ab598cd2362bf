//! Finite abelian groups, character groups, and 2-cocycles with
//! root-of-unity values.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::{primitive_root_of_unity, FieldSpec, Scalar, ScalarError};

/// Product of cyclic groups C_{d_1} × … × C_{d_r}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    orders: Vec<u64>,
}

/// Element of a [`FinAbGroup`] as a coordinate tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbGroupError {
    BadOrder,
    MismatchedGroup,
    NotSplit,
    NotRootOfUnity,
}

impl fmt::Display for AbGroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbGroupError::BadOrder => write!(f, "cyclic orders must be positive"),
            AbGroupError::MismatchedGroup => write!(f, "mismatched group"),
            AbGroupError::NotSplit => write!(f, "group does not split over field"),
            AbGroupError::NotRootOfUnity => {
                write!(f, "undecidable over infinite coefficient group")
            }
        }
    }
}

impl From<ScalarError> for AbGroupError {
    fn from(_: ScalarError) -> Self {
        AbGroupError::NotSplit
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FinAbGroup {
    pub fn new(orders: Vec<u64>) -> Result<FinAbGroup, AbGroupError> {
        if orders.contains(&0) {
            return Err(AbGroupError::BadOrder);
        }
        Ok(FinAbGroup { orders })
    }

    pub fn cyclic(d: u64) -> FinAbGroup {
        FinAbGroup::new(vec![d]).expect("positive order")
    }

    pub fn trivial() -> FinAbGroup {
        FinAbGroup { orders: vec![] }
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &d| acc / gcd(acc, d) * d)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        g.0.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.orders.len() && g.0.iter().zip(&self.orders).all(|(x, d)| x < d)
    }

    /// All elements, lexicographic in coordinates; the identity comes first.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for (i, &d) in self.orders.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for g in &out {
                for k in 0..d {
                    let mut h = g.clone();
                    h.0[i] = k;
                    next.push(h);
                }
            }
            out = next;
        }
        out
    }

    /// Position of `g` in [`elements`](Self::elements).
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter().zip(&self.orders).fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0u64; self.orders.len()];
        for (i, &d) in self.orders.iter().enumerate().rev() {
            coords[i] = (idx % d as usize) as u64;
            idx /= d as usize;
        }
        GroupElement(coords)
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter().zip(&h.0).zip(&self.orders).map(|((a, b), d)| (a + b) % d).collect(),
        )
    }

    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        GroupElement(g.0.iter().zip(&self.orders).map(|(a, d)| (d - a) % d).collect())
    }

    pub fn pow(&self, g: &GroupElement, k: u64) -> GroupElement {
        GroupElement(g.0.iter().zip(&self.orders).map(|(a, d)| (a * (k % d)) % d).collect())
    }

    /// Unit vectors, one per cyclic factor.
    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.orders.len())
            .map(|i| {
                let mut v = vec![0; self.orders.len()];
                v[i] = 1 % self.orders[i];
                GroupElement(v)
            })
            .collect()
    }

    /// Multiplication table on element indices.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.mul(&self.element_at(a), &self.element_at(b)))
    }

    pub fn inv_index(&self, a: usize) -> usize {
        self.index_of(&self.inv(&self.element_at(a)))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Homomorphism G → k*, stored by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub group: FinAbGroup,
    pub field: FieldSpec,
    pub values: Vec<Scalar>,
}

impl Character {
    pub fn trivial(group: &FinAbGroup, field: FieldSpec) -> Character {
        Character {
            group: group.clone(),
            field,
            values: vec![field.one(); group.cyclic_orders().len()],
        }
    }

    pub fn eval(&self, g: &GroupElement) -> Scalar {
        self.values.iter().zip(&g.0).fold(self.field.one(), |acc, (v, &k)| acc.mul(&v.pow(k)))
    }

    pub fn mul(&self, o: &Character) -> Character {
        Character {
            group: self.group.clone(),
            field: self.field,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn inv(&self) -> Character {
        Character {
            group: self.group.clone(),
            field: self.field,
            values: self.values.iter().map(|a| a.inv().unwrap()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    /// Checks χ(gh) = χ(g)χ(h) over all pairs.
    pub fn is_homomorphism(&self) -> bool {
        let els = self.group.elements();
        self.values.iter().zip(self.group.cyclic_orders()).all(|(v, &d)| v.pow(d).is_one())
            && els.iter().all(|g| {
                els.iter().all(|h| {
                    self.eval(&self.group.mul(g, h)) == self.eval(g).mul(&self.eval(h))
                })
            })
    }
}

/// All characters, lexicographic in generator exponents, trivial first.
pub fn character_group(g: &FinAbGroup, field: FieldSpec) -> Result<Vec<Character>, AbGroupError> {
    if !field.splits(g.exponent()) {
        return Err(AbGroupError::NotSplit);
    }
    let roots: Vec<Scalar> = g
        .cyclic_orders()
        .iter()
        .map(|&d| primitive_root_of_unity(field, d))
        .collect::<Result<_, _>>()?;
    Ok(g
        .elements()
        .into_iter()
        .map(|exps| Character {
            group: g.clone(),
            field,
            values: roots.iter().zip(&exps.0).map(|(z, &k)| z.pow(k)).collect(),
        })
        .collect())
}

/// χ(g).
pub fn evaluation_pairing(g: &GroupElement, chi: &Character) -> Result<Scalar, AbGroupError> {
    if !chi.group.contains(g) {
        return Err(AbGroupError::MismatchedGroup);
    }
    Ok(chi.eval(g))
}

/// Function G × G → k*, indexed by element positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    pub group: FinAbGroup,
    pub field: FieldSpec,
    table: Vec<Scalar>,
}

impl Cocycle2 {
    pub fn from_fn(
        group: &FinAbGroup,
        field: FieldSpec,
        f: impl Fn(&GroupElement, &GroupElement) -> Scalar,
    ) -> Cocycle2 {
        let els = group.elements();
        let mut table = Vec::with_capacity(els.len() * els.len());
        for g in &els {
            for h in &els {
                table.push(f(g, h));
            }
        }
        Cocycle2 { group: group.clone(), field, table }
    }

    pub fn constant_one(group: &FinAbGroup, field: FieldSpec) -> Cocycle2 {
        Cocycle2::from_fn(group, field, |_, _| field.one())
    }

    pub fn get(&self, g: &GroupElement, h: &GroupElement) -> &Scalar {
        let n = self.group.order();
        &self.table[self.group.index_of(g) * n + self.group.index_of(h)]
    }

    pub fn set(&mut self, g: &GroupElement, h: &GroupElement, v: Scalar) {
        let n = self.group.order();
        let i = self.group.index_of(g) * n + self.group.index_of(h);
        self.table[i] = v;
    }

    /// Entries as (g, h, σ(g,h)) in element order.
    pub fn entries(&self) -> Vec<(GroupElement, GroupElement, Scalar)> {
        let els = self.group.elements();
        let mut out = Vec::new();
        for g in &els {
            for h in &els {
                out.push((g.clone(), h.clone(), self.get(g, h).clone()));
            }
        }
        out
    }

    /// Coboundary ∂λ(g,h) = λ(gh)λ(g)⁻¹λ(h)⁻¹ for λ indexed by element position.
    pub fn coboundary(group: &FinAbGroup, field: FieldSpec, lambda: &[Scalar]) -> Cocycle2 {
        Cocycle2::from_fn(group, field, |g, h| {
            let gh = group.mul(g, h);
            lambda[group.index_of(&gh)]
                .mul(&lambda[group.index_of(g)].inv().unwrap())
                .mul(&lambda[group.index_of(h)].inv().unwrap())
        })
    }

    /// Pointwise product.
    pub fn mul(&self, o: &Cocycle2) -> Cocycle2 {
        Cocycle2 {
            group: self.group.clone(),
            field: self.field,
            table: self.table.iter().zip(&o.table).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn inv(&self) -> Cocycle2 {
        Cocycle2 {
            group: self.group.clone(),
            field: self.field,
            table: self.table.iter().map(|a| a.inv().unwrap()).collect(),
        }
    }
}

pub fn is_2cocycle(s: &Cocycle2) -> bool {
    let g = &s.group;
    let els = g.elements();
    for a in &els {
        for b in &els {
            for c in &els {
                let lhs = s.get(&g.mul(a, b), c).mul(s.get(a, b));
                let rhs = s.get(a, &g.mul(b, c)).mul(s.get(b, c));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoboundaryResult {
    /// λ indexed by element position, with λ(e) = σ(e,e)⁻¹.
    Witness(Vec<Scalar>),
    NontrivialClass,
}

/// Integer Smith normal form: returns (D, U, V) with U·A·V = D.
pub fn smith_normal_form(a: &[Vec<i128>]) -> (Vec<Vec<i128>>, Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let r = a.len();
    let c = if r == 0 { 0 } else { a[0].len() };
    let mut d: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..r).map(|i| (0..r).map(|j| (i == j) as i128).collect()).collect();
    let mut v: Vec<Vec<i128>> = (0..c).map(|i| (0..c).map(|j| (i == j) as i128).collect()).collect();
    let mut t = 0;
    while t < r.min(c) {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap(t, bi);
        u.swap(t, bi);
        for row in d.iter_mut() {
            row.swap(t, bj);
        }
        for row in v.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..r {
            let q = d[i][t].div_euclid(d[t][t]);
            if q != 0 {
                for j in 0..c {
                    d[i][j] -= q * d[t][j];
                }
                for j in 0..r {
                    u[i][j] -= q * u[t][j];
                }
            }
            if d[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..c {
            let q = d[t][j].div_euclid(d[t][t]);
            if q != 0 {
                for i in 0..r {
                    d[i][j] -= q * d[i][t];
                }
                for i in 0..c {
                    v[i][j] -= q * v[i][t];
                }
            }
            if d[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Divisibility: fold an offending row into row t and retry.
        let mut offender = None;
        'outer: for i in t + 1..r {
            for j in t + 1..c {
                if d[i][j] % d[t][t] != 0 {
                    offender = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = offender {
            for j in 0..c {
                d[t][j] += d[i][j];
            }
            for j in 0..r {
                u[t][j] += u[i][j];
            }
            continue;
        }
        if d[t][t] < 0 {
            for j in 0..c {
                d[t][j] = -d[t][j];
            }
            for j in 0..r {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    (d, u, v)
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Solves A·x ≡ b (mod m) through the Smith normal form of A.
pub fn solve_mod(a: &[Vec<i128>], b: &[i128], m: i128) -> Option<Vec<i128>> {
    let r = a.len();
    let c = if r == 0 { 0 } else { a[0].len() };
    let (d, u, v) = smith_normal_form(a);
    let ub: Vec<i128> =
        (0..r).map(|i| (0..r).map(|j| u[i][j] * b[j]).sum::<i128>().rem_euclid(m)).collect();
    let mut z = vec![0i128; c];
    for i in 0..r {
        let di = if i < c { d[i][i] } else { 0 };
        let (g, x, _) = egcd(di.rem_euclid(m), m);
        if ub[i] % g != 0 {
            return None;
        }
        if i < c && g != 0 {
            let mg = m / g;
            z[i] = ((ub[i] / g) * x).rem_euclid(mg);
        }
    }
    Some((0..c).map(|i| (0..c).map(|j| v[i][j] * z[j]).sum::<i128>().rem_euclid(m)).collect())
}

/// Decides whether σ is a coboundary, valued in the roots of unity of the
/// field. Since ∂λ(e,e) = λ(e)⁻¹ the witness has λ(e) = σ(e,e)⁻¹. The
/// decision runs through discrete logarithms and a linear system over Z/m;
/// when the search space is small the smallest witness in canonical order
/// is returned.
pub fn is_coboundary(s: &Cocycle2) -> Result<CoboundaryResult, AbGroupError> {
    let field = s.field;
    let e = s.group.identity();
    if s.table.iter().any(|v| v.root_of_unity_order().is_none()) {
        return Err(AbGroupError::NotRootOfUnity);
    }
    let see = s.get(&e, &e).clone();
    if !see.is_one() {
        // σ/σ(e,e) is normalized, and a constant c has ∂c = c⁻¹.
        let c = see.inv().unwrap();
        let normalized = Cocycle2 { group: s.group.clone(), field, table: s.table.iter().map(|v| v.mul(&c)).collect() };
        return Ok(match is_coboundary(&normalized)? {
            CoboundaryResult::Witness(l) => CoboundaryResult::Witness(l.iter().map(|x| x.mul(&c)).collect()),
            CoboundaryResult::NontrivialClass => CoboundaryResult::NontrivialClass,
        });
    }
    if s.table.iter().any(|v| v.root_of_unity_order().is_none()) {
        return Err(AbGroupError::NotRootOfUnity);
    }
    let m = field.torsion_order();
    let zeta = primitive_root_of_unity(field, m)?;
    let powers: Vec<Scalar> = (0..m).map(|k| zeta.pow(k)).collect();
    let log = |x: &Scalar| powers.iter().position(|p| p == x).unwrap() as i128;
    let g = &s.group;
    let n = g.order();
    // Unknowns: logs of λ on non-identity elements.
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul_index(a, b);
            let mut row = vec![0i128; n - 1];
            for (idx, coef) in [(ab, 1i128), (a, -1), (b, -1)] {
                if idx > 0 {
                    row[idx - 1] += coef;
                }
            }
            rows.push(row);
            rhs.push(log(s.get(&g.element_at(a), &g.element_at(b))));
        }
    }
    if n == 1 {
        return Ok(if s.table[0].is_one() {
            CoboundaryResult::Witness(vec![field.one()])
        } else {
            CoboundaryResult::NontrivialClass
        });
    }
    let Some(x) = solve_mod(&rows, &rhs, m as i128) else {
        return Ok(CoboundaryResult::NontrivialClass);
    };
    let mut lambda = vec![field.one()];
    lambda.extend(x.iter().map(|&k| powers[k as usize].clone()));
    debug_assert_eq!(&Cocycle2::coboundary(g, field, &lambda), s);
    if (m as u128).checked_pow(n as u32 - 1).is_some_and(|v| v <= 200_000) {
        if let Some(best) = smallest_witness(s, &powers) {
            lambda = best;
        }
    }
    Ok(CoboundaryResult::Witness(lambda))
}

fn smallest_witness(s: &Cocycle2, values: &[Scalar]) -> Option<Vec<Scalar>> {
    let g = &s.group;
    let n = g.order();
    let mut sorted = values.to_vec();
    sorted.sort();
    let mut idx = vec![0usize; n - 1];
    loop {
        let mut lambda = vec![s.field.one()];
        lambda.extend(idx.iter().map(|&i| sorted[i].clone()));
        if &Cocycle2::coboundary(g, s.field, &lambda) == s {
            return Some(lambda);
        }
        // Lexicographic odometer, first coordinate most significant.
        let mut k = n - 1;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sorted.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::Prime(p)
    }

    #[test]
    fn characters_of_small_groups() {
        let c2 = FinAbGroup::cyclic(2);
        let chars = character_group(&c2, f(5)).unwrap();
        let vals: Vec<u64> = chars.iter().map(|c| c.values[0].residue().unwrap()).collect();
        assert_eq!(vals, vec![1, 4]);
        assert_eq!(character_group(&FinAbGroup::trivial(), f(7)).unwrap().len(), 1);
        let klein = FinAbGroup::new(vec![2, 2]).unwrap();
        let chars = character_group(&klein, f(13)).unwrap();
        assert_eq!(chars.len(), 4);
        assert!(chars[0].is_trivial());
        for c in &chars {
            for g in klein.elements() {
                let v = c.eval(&g).residue().unwrap();
                assert!(v == 1 || v == 12);
            }
        }
        assert_eq!(character_group(&FinAbGroup::cyclic(3), f(5)), Err(AbGroupError::NotSplit));
    }

    #[test]
    fn pairing_and_orthogonality() {
        let c2 = FinAbGroup::cyclic(2);
        let chars = character_group(&c2, f(5)).unwrap();
        let g = GroupElement(vec![1]);
        assert_eq!(evaluation_pairing(&g, &chars[1]).unwrap().residue(), Some(4));
        assert!(evaluation_pairing(&c2.identity(), &chars[1]).unwrap().is_one());
        assert_eq!(
            evaluation_pairing(&GroupElement(vec![1, 0]), &chars[1]),
            Err(AbGroupError::MismatchedGroup)
        );
        let c3 = FinAbGroup::cyclic(3);
        for chi in character_group(&c3, f(13)).unwrap() {
            let s = c3.elements().iter().fold(f(13).zero(), |acc, h| acc.add(&chi.eval(h)));
            if chi.is_trivial() {
                assert_eq!(s.residue(), Some(3));
            } else {
                assert!(s.is_zero());
            }
        }
    }

    fn c2_table(p: u64, gg: i64, ge: i64) -> Cocycle2 {
        let c2 = FinAbGroup::cyclic(2);
        Cocycle2::from_fn(&c2, f(p), |a, b| match (a.0[0], b.0[0]) {
            (1, 1) => Scalar::from_i64(f(p), gg),
            (1, 0) => Scalar::from_i64(f(p), ge),
            _ => f(p).one(),
        })
    }

    #[test]
    fn cocycle_identity_examples() {
        assert!(is_2cocycle(&Cocycle2::constant_one(&FinAbGroup::cyclic(3), f(7))));
        assert!(is_2cocycle(&c2_table(5, 2, 1)));
        assert!(!is_2cocycle(&c2_table(5, 1, 2)));
    }

    /// Oracle: scan every λ: G → k* with λ(e) = 1.
    fn brute_force_coboundary(s: &Cocycle2) -> Option<Vec<Scalar>> {
        let units: Vec<Scalar> = s.field.elements().unwrap().into_iter().skip(1).collect();
        smallest_witness(s, &units)
    }

    #[test]
    fn coboundary_examples() {
        let one = Cocycle2::constant_one(&FinAbGroup::cyclic(2), f(5));
        assert_eq!(is_coboundary(&one).unwrap(), CoboundaryResult::Witness(vec![f(5).one(); 2]));
        assert_eq!(is_coboundary(&c2_table(5, 2, 1)).unwrap(), CoboundaryResult::NontrivialClass);
        assert_eq!(brute_force_coboundary(&c2_table(5, 2, 1)), None);
        let s = c2_table(13, 12, 1);
        let w = is_coboundary(&s).unwrap();
        assert_eq!(
            w,
            CoboundaryResult::Witness(vec![f(13).one(), Scalar::from_i64(f(13), 5)])
        );
        assert_eq!(brute_force_coboundary(&s).unwrap()[1].residue(), Some(5));
        let q = FieldSpec::Cyclotomic(4);
        let bad = Cocycle2::from_fn(&FinAbGroup::cyclic(2), q, |_, _| Scalar::from_i64(q, 2));
        assert_eq!(is_coboundary(&bad), Err(AbGroupError::NotRootOfUnity));
    }

    #[test]
    fn smith_form_is_diagonal() {
        let a = vec![vec![2i128, -2, 0], vec![2, 0, -4]];
        let (d, u, v) = smith_normal_form(&a);
        let mul = |x: &Vec<Vec<i128>>, y: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
            (0..x.len())
                .map(|i| (0..y[0].len()).map(|j| (0..y.len()).map(|k| x[i][k] * y[k][j]).sum()).collect())
                .collect()
        };
        assert_eq!(mul(&mul(&u, &a), &v), d);
        assert_eq!(d[0][0], 2);
        assert_eq!(d[1][1], 2);
    }

    proptest! {
        #[test]
        fn coboundaries_are_recognised(l1 in 1i64..13, l2 in 1i64..13, l3 in 1i64..13) {
            let g = FinAbGroup::new(vec![2, 2]).unwrap();
            let field = f(13);
            let lambda: Vec<Scalar> = [1, l1, l2, l3].iter().map(|&x| Scalar::from_i64(field, x)).collect();
            let s = Cocycle2::coboundary(&g, field, &lambda);
            prop_assert!(is_2cocycle(&s));
            match is_coboundary(&s).unwrap() {
                CoboundaryResult::Witness(w) => prop_assert_eq!(Cocycle2::coboundary(&g, field, &w), s),
                CoboundaryResult::NontrivialClass => prop_assert!(false),
            }
        }

        #[test]
        fn unnormalized_coboundaries(l0 in 1i64..13, l1 in 1i64..13) {
            let g = FinAbGroup::cyclic(2);
            let field = f(13);
            let lambda: Vec<Scalar> = [l0, l1].iter().map(|&x| Scalar::from_i64(field, x)).collect();
            let s = Cocycle2::coboundary(&g, field, &lambda);
            match is_coboundary(&s).unwrap() {
                CoboundaryResult::Witness(w) => prop_assert_eq!(Cocycle2::coboundary(&g, field, &w), s),
                CoboundaryResult::NontrivialClass => prop_assert!(false),
            }
        }

        #[test]
        fn decision_matches_brute_force(a in 1i64..7, b in 1i64..7) {
            // Normalised C3 cocycles over F_7, built from a coboundary times a twist.
            let g = FinAbGroup::cyclic(3);
            let field = f(7);
            let lambda: Vec<Scalar> = [1, a, b].iter().map(|&x| Scalar::from_i64(field, x)).collect();
            let base = Cocycle2::coboundary(&g, field, &lambda);
            let twist = Cocycle2::from_fn(&g, field, |x, y| {
                if x.0[0] + y.0[0] >= 3 { Scalar::from_i64(field, 2) } else { field.one() }
            });
            let s = base.mul(&twist);
            prop_assert!(is_2cocycle(&s));
            let fast = matches!(is_coboundary(&s).unwrap(), CoboundaryResult::Witness(_));
            prop_assert_eq!(fast, brute_force_coboundary(&s).is_some());
        }

        #[test]
        fn characters_form_a_group(p in prop::sample::select(vec![7u64, 13])) {
            let g = FinAbGroup::new(vec![2, 3]).unwrap();
            let chars = character_group(&g, f(p)).unwrap();
            prop_assert_eq!(chars.len(), g.order());
            for a in &chars {
                prop_assert!(a.is_homomorphism());
                for b in &chars {
                    prop_assert!(chars.contains(&a.mul(b)));
                }
            }
            for i in 0..chars.len() {
                for j in i + 1..chars.len() {
                    prop_assert_ne!(&chars[i], &chars[j]);
                }
            }
        }
    }
}

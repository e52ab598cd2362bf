//! Exact scalars over prime fields and cyclotomic fields, dense matrices,
//! and exact linear solving.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Ground field: `Prime(p)` is F_p, `Cyclotomic(n)` is Q(ζ_n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u64),
    Cyclotomic(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarError {
    NotPrime(u64),
    BadCyclotomicIndex,
    ShapeMismatch,
    MixedFields,
    NotSplit,
    ZeroArgument,
    NotInvertible,
    Undetermined,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::NotPrime(p) => write!(f, "{p} is not prime"),
            ScalarError::BadCyclotomicIndex => write!(f, "cyclotomic index must be positive"),
            ScalarError::ShapeMismatch => write!(f, "shape mismatch"),
            ScalarError::MixedFields => write!(f, "mixed fields"),
            ScalarError::NotSplit => write!(f, "group does not split over field"),
            ScalarError::ZeroArgument => write!(f, "zero argument"),
            ScalarError::NotInvertible => write!(f, "not invertible"),
            ScalarError::Undetermined => write!(f, "undetermined"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = rem.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for i in (0..=dq).rev() {
        let t = rem[i + db];
        q[i] = t;
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] -= t * bj;
        }
    }
    q
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn cyclotomic(n: u64) -> Result<Self, ScalarError> {
        if n == 0 {
            Err(ScalarError::BadCyclotomicIndex)
        } else {
            Ok(FieldSpec::Cyclotomic(n))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Prime(p) => p,
            FieldSpec::Cyclotomic(_) => 0,
        }
    }

    /// Number of elements, if finite.
    pub fn size(&self) -> Option<u64> {
        match *self {
            FieldSpec::Prime(p) => Some(p),
            FieldSpec::Cyclotomic(_) => None,
        }
    }

    /// Dimension over the prime field (1 for F_p, φ(n) for Q(ζ_n)).
    pub fn degree(&self) -> usize {
        match *self {
            FieldSpec::Prime(_) => 1,
            FieldSpec::Cyclotomic(n) => euler_phi(n) as usize,
        }
    }

    /// Order of the group of roots of unity in the field.
    pub fn torsion_order(&self) -> u64 {
        match *self {
            FieldSpec::Prime(p) => p - 1,
            FieldSpec::Cyclotomic(n) => {
                if n % 2 == 0 {
                    n
                } else {
                    2 * n
                }
            }
        }
    }

    /// True when a group of the given exponent splits over the field.
    pub fn splits(&self, exponent: u64) -> bool {
        exponent > 0 && self.torsion_order().is_multiple_of(exponent)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_i64(*self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_i64(*self, 1)
    }

    /// All elements of a finite field in canonical order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            FieldSpec::Prime(p) => Some((0..p).map(|v| Scalar::from_u64(*self, v)).collect()),
            FieldSpec::Cyclotomic(_) => None,
        }
    }

    /// Uniform element for finite fields; small integer coefficients otherwise.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => Scalar::from_u64(*self, rng.gen_range(0..p)),
            FieldSpec::Cyclotomic(_) => {
                let coeffs = (0..self.degree())
                    .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
                    .collect();
                Scalar::from_rational_coeffs(*self, coeffs)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "prime:{p}"),
            FieldSpec::Cyclotomic(n) => write!(f, "cyclotomic:{n}"),
        }
    }
}

impl core::str::FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, num) = s.split_once(':').ok_or_else(|| alloc::format!("bad field '{s}'"))?;
        let n: u64 = num.trim().parse().map_err(|_| alloc::format!("bad field '{s}'"))?;
        match kind.trim() {
            "prime" => FieldSpec::prime(n).map_err(|e| alloc::format!("{e}")),
            "cyclotomic" => FieldSpec::cyclotomic(n).map_err(|e| alloc::format!("{e}")),
            _ => Err(alloc::format!("bad field '{s}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Mod(u64),
    Poly(Vec<BigRational>),
}

/// A field element in canonical form; equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    repr: Repr,
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn reduce_poly(mut v: Vec<BigRational>, phi: &[i64]) -> Vec<BigRational> {
    let d = phi.len() - 1;
    if v.len() > d {
        for i in (d..v.len()).rev() {
            let t = core::mem::replace(&mut v[i], BigRational::zero());
            if t.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate().take(d) {
                if pj != 0 {
                    v[i - d + j] -= &t * BigRational::from_integer(BigInt::from(pj));
                }
            }
        }
    }
    v.resize(d, BigRational::zero());
    v
}

impl Scalar {
    pub fn from_i64(field: FieldSpec, v: i64) -> Scalar {
        match field {
            FieldSpec::Prime(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                Scalar { field, repr: Repr::Mod(r) }
            }
            FieldSpec::Cyclotomic(_) => {
                let mut c = vec![BigRational::zero(); field.degree()];
                c[0] = BigRational::from_integer(BigInt::from(v));
                Scalar { field, repr: Repr::Poly(c) }
            }
        }
    }

    pub fn from_u64(field: FieldSpec, v: u64) -> Scalar {
        match field {
            FieldSpec::Prime(p) => Scalar { field, repr: Repr::Mod(v % p) },
            FieldSpec::Cyclotomic(_) => Scalar::from_i64(field, v as i64),
        }
    }

    /// Builds a cyclotomic element from polynomial coefficients in ζ (any length).
    pub fn from_rational_coeffs(field: FieldSpec, coeffs: Vec<BigRational>) -> Scalar {
        match field {
            FieldSpec::Prime(_) => panic!("rational coefficients need a cyclotomic field"),
            FieldSpec::Cyclotomic(n) => {
                let phi = cyclotomic_polynomial(n);
                Scalar { field, repr: Repr::Poly(reduce_poly(coeffs, &phi)) }
            }
        }
    }

    /// The generator ζ_n of a cyclotomic field.
    pub fn zeta(field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Prime(_) => panic!("zeta needs a cyclotomic field"),
            FieldSpec::Cyclotomic(_) => {
                let c = vec![BigRational::zero(), BigRational::one()];
                Scalar::from_rational_coeffs(field, c)
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Residue in `0..p` for prime fields.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Mod(v) => Some(*v),
            Repr::Poly(_) => None,
        }
    }

    /// Coefficients in the power basis of ζ_n for cyclotomic fields.
    pub fn coeffs(&self) -> Option<&[BigRational]> {
        match &self.repr {
            Repr::Mod(_) => None,
            Repr::Poly(c) => Some(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Mod(v) => *v == 0,
            Repr::Poly(c) => c.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Mod(v) => *v == 1,
            Repr::Poly(c) => c[0].is_one() && c[1..].iter().all(|x| x.is_zero()),
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.field, other.field, "scalar field mismatch");
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        self.check(o);
        match (&self.repr, &o.repr, self.field) {
            (Repr::Mod(a), Repr::Mod(b), FieldSpec::Prime(p)) => {
                Scalar { field: self.field, repr: Repr::Mod((a + b) % p) }
            }
            (Repr::Poly(a), Repr::Poly(b), _) => Scalar {
                field: self.field,
                repr: Repr::Poly(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            },
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match (&self.repr, self.field) {
            (Repr::Mod(a), FieldSpec::Prime(p)) => {
                Scalar { field: self.field, repr: Repr::Mod((p - a) % p) }
            }
            (Repr::Poly(a), _) => {
                Scalar { field: self.field, repr: Repr::Poly(a.iter().map(|x| -x).collect()) }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        self.check(o);
        match (&self.repr, &o.repr, self.field) {
            (Repr::Mod(a), Repr::Mod(b), FieldSpec::Prime(p)) => Scalar {
                field: self.field,
                repr: Repr::Mod(((*a as u128 * *b as u128) % p as u128) as u64),
            },
            (Repr::Poly(a), Repr::Poly(b), FieldSpec::Cyclotomic(n)) => {
                let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] += x * y;
                        }
                    }
                }
                let phi = cyclotomic_polynomial(n);
                Scalar { field: self.field, repr: Repr::Poly(reduce_poly(prod, &phi)) }
            }
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match (&self.repr, self.field) {
            (Repr::Mod(a), FieldSpec::Prime(p)) => {
                Some(Scalar { field: self.field, repr: Repr::Mod(mod_pow(*a, p - 2, p)) })
            }
            (Repr::Poly(a), _) => {
                let d = a.len();
                if d == 1 {
                    return Some(Scalar { field: self.field, repr: Repr::Poly(vec![a[0].recip()]) });
                }
                // Solve (multiplication by self) · y = 1 over Q.
                let q = FieldSpec::Cyclotomic(1);
                let mut m = Matrix::zero(q, d, d);
                let mut basis = self.field.one();
                let zeta = Scalar::zeta(self.field);
                for j in 0..d {
                    let col = self.mul(&basis);
                    for (i, c) in col.coeffs().unwrap().iter().enumerate() {
                        m.set(i, j, Scalar::from_rational(q, c.clone()));
                    }
                    basis = basis.mul(&zeta);
                }
                let mut rhs = vec![q.zero(); d];
                rhs[0] = q.one();
                let sol = m.solve(&rhs).ok()??;
                let coeffs = sol.iter().map(|s| s.coeffs().unwrap()[0].clone()).collect();
                Some(Scalar { field: self.field, repr: Repr::Poly(coeffs) })
            }
            _ => unreachable!(),
        }
    }

    fn from_rational(field: FieldSpec, r: BigRational) -> Scalar {
        let mut c = vec![BigRational::zero(); field.degree()];
        c[0] = r;
        Scalar { field, repr: Repr::Poly(c) }
    }

    pub fn div(&self, o: &Scalar) -> Option<Scalar> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut r = self.field.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Power with a signed exponent; panics on a negative power of zero.
    pub fn powi(&self, e: i64) -> Scalar {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().expect("negative power of zero").pow(e.unsigned_abs())
        }
    }

    /// Multiplicative order if the element is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let t = self.field.torsion_order();
        let mut best = None;
        for m in 1..=t {
            if t.is_multiple_of(m) && self.pow(m).is_one() {
                best = Some(m);
                break;
            }
        }
        best
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field.cmp(&other.field).then_with(|| match (&self.repr, &other.repr) {
            (Repr::Mod(a), Repr::Mod(b)) => a.cmp(b),
            (Repr::Poly(a), Repr::Poly(b)) => a.cmp(b),
            (Repr::Mod(_), Repr::Poly(_)) => Ordering::Less,
            (Repr::Poly(_), Repr::Mod(_)) => Ordering::Greater,
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Mod(v) => write!(f, "{v}"),
            Repr::Poly(c) => {
                write!(f, "[")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                Scalar::$m(self, o)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}


/// Smallest primitive d-th root of unity. For cyclotomic fields the order
/// is by exponent of ζ, so `(Q(ζ_4), 4)` returns ζ itself.
pub fn primitive_root_of_unity(field: FieldSpec, d: u64) -> Result<Scalar, ScalarError> {
    if d == 0 || !field.splits(d) {
        return Err(ScalarError::NotSplit);
    }
    let is_primitive = |z: &Scalar| (1..d).all(|m| !z.pow(m).is_one()) && z.pow(d).is_one();
    match field {
        FieldSpec::Prime(p) => (1..p)
            .map(|v| Scalar::from_u64(field, v))
            .find(is_primitive)
            .ok_or(ScalarError::NotSplit),
        FieldSpec::Cyclotomic(_) => {
            let t = field.torsion_order();
            let gen = if field.degree() > 0 && t.is_multiple_of(2) && Scalar::zeta(field).pow(t / 2).is_one() {
                Scalar::zeta(field).neg()
            } else {
                Scalar::zeta(field)
            };
            (1..=t)
                .map(|k| gen.pow(k))
                .find(is_primitive)
                .ok_or(ScalarError::NotSplit)
        }
    }
}

/// Smallest y with y^d = x, or `None` when the field has no such root.
///
/// Over cyclotomic fields only roots of unity and rational d-th powers are
/// searched; anything else is `Undetermined`.
pub fn nth_root(x: &Scalar, d: u64) -> Result<Option<Scalar>, ScalarError> {
    if d == 0 {
        return Err(ScalarError::ZeroArgument);
    }
    if x.is_zero() {
        return Ok(Some(x.clone()));
    }
    let field = x.field();
    match field {
        FieldSpec::Prime(p) => {
            Ok((1..p).map(|v| Scalar::from_u64(field, v)).find(|y| &y.pow(d) == x))
        }
        FieldSpec::Cyclotomic(_) => {
            if x.root_of_unity_order().is_some() {
                let t = field.torsion_order();
                let gen = primitive_root_of_unity(field, t)?;
                let mut roots: Vec<Scalar> =
                    (0..t).map(|k| gen.pow(k)).filter(|y| &y.pow(d) == x).collect();
                roots.sort();
                return Ok(roots.into_iter().next());
            }
            let c = x.coeffs().unwrap();
            if c[1..].iter().all(|v| v.is_zero()) {
                let r = &c[0];
                let num = int_root(r.numer(), d);
                let den = int_root(r.denom(), d);
                return Ok(match (num, den) {
                    (Some(a), Some(b)) => {
                        let mut cands = vec![BigRational::new(a.clone(), b.clone())];
                        if d.is_multiple_of(2) {
                            cands.push(-BigRational::new(a, b));
                        }
                        let mut roots: Vec<Scalar> = cands
                            .into_iter()
                            .map(|q| Scalar::from_rational(field, q))
                            .filter(|y| &y.pow(d) == x)
                            .collect();
                        roots.sort();
                        roots.into_iter().next()
                    }
                    _ => None,
                });
            }
            Err(ScalarError::Undetermined)
        }
    }
}

fn int_root(n: &BigInt, d: u64) -> Option<BigInt> {
    let neg = n.is_negative();
    if neg && d.is_multiple_of(2) {
        return None;
    }
    let a = n.abs();
    let approx = a.to_f64().map(|f| libm_root(f, d)).unwrap_or(0.0) as i64;
    for c in (approx - 2).max(0)..=approx + 2 {
        let cb = BigInt::from(c);
        if num_traits::pow(cb.clone(), d as usize) == a {
            return Some(if neg { -cb } else { cb });
        }
    }
    None
}

fn libm_root(f: f64, d: u64) -> f64 {
    // Bisection keeps this free of std float intrinsics.
    let (mut lo, mut hi) = (0.0f64, if f > 1.0 { f } else { 1.0 });
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        let mut p = 1.0;
        for _ in 0..d {
            p *= mid;
        }
        if p < f {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo + 0.5
}

/// Dense matrix, row-major. Linear maps act on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Affine solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Affine { particular: Vec<Scalar>, kernel: Vec<Vec<Scalar>> },
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar(field: FieldSpec, n: usize, s: &Scalar) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Matrix, ScalarError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(ScalarError::ShapeMismatch);
            }
            for s in row {
                if s.field() != field {
                    return Err(ScalarError::MixedFields);
                }
                data.push(s);
            }
        }
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    pub fn from_ints(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_i64(field, x)).collect())
            .collect();
        Matrix::from_rows(field, v).expect("ragged integer matrix")
    }

    /// Column matrix from a vector.
    pub fn column(field: FieldSpec, v: &[Scalar]) -> Matrix {
        Matrix { field, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        assert_eq!(self.field, o.field, "matrix field mismatch");
        let mut out = Matrix::zero(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix, ScalarError> {
        if self.field != o.field {
            return Err(ScalarError::MixedFields);
        }
        if self.cols != o.rows {
            return Err(ScalarError::ShapeMismatch);
        }
        Ok(self.mul(o))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// `self += s·o` in place.
    pub fn add_scaled(&mut self, s: &Scalar, o: &Matrix) {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a = a.add(&b.mul(s));
            }
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// If `self = s · other` for one scalar s, returns s.
    pub fn scalar_ratio(&self, other: &Matrix) -> Option<Scalar> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let mut ratio: Option<Scalar> = None;
        for (a, b) in self.data.iter().zip(&other.data) {
            if b.is_zero() {
                if !a.is_zero() {
                    return None;
                }
                continue;
            }
            let r = a.div(b).unwrap();
            match &ratio {
                None => ratio = Some(r),
                Some(x) if *x != r => return None,
                _ => {}
            }
        }
        ratio
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block_diag(field: FieldSpec, blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zero(field, r, c);
        let (mut ri, mut ci) = (0, 0);
        for b in blocks {
            m.set_block(ri, ci, b);
            ri += b.rows;
            ci += b.cols;
        }
        m
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c).clone();
                    if !f.is_zero() {
                        for j in c..m.cols {
                            let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                            m.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    pub fn pow(&self, e: u64) -> Matrix {
        let mut r = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Kernel basis in reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, piv) = self.rref();
        kernel_from_rref(&r, &piv, self.cols)
    }

    /// Solves `self · x = b`; `Ok(None)` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, ScalarError> {
        match exact_linear_solve(self, &Matrix::column(self.field, b))? {
            Solution::Inconsistent => Ok(None),
            Solution::Affine { particular, .. } => Ok(Some(particular)),
        }
    }
}

fn kernel_from_rref(r: &Matrix, piv: &[usize], ncols: usize) -> Vec<Vec<Scalar>> {
    let field = r.field;
    let mut is_piv = vec![false; ncols];
    for &p in piv {
        is_piv[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|&c| !is_piv[c]) {
        let mut v = vec![field.zero(); ncols];
        v[f] = field.one();
        for (i, &p) in piv.iter().enumerate() {
            v[p] = r.get(i, f).neg();
        }
        basis.push(v);
    }
    if basis.is_empty() {
        return basis;
    }
    let m = Matrix::from_rows(field, basis).unwrap();
    let (k, kp) = m.rref();
    (0..kp.len()).map(|i| k.row(i).to_vec()).collect()
}

/// Exact affine solution space of `A x = b` for a column `b`.
pub fn exact_linear_solve(a: &Matrix, b: &Matrix) -> Result<Solution, ScalarError> {
    if a.field != b.field {
        return Err(ScalarError::MixedFields);
    }
    if b.cols != 1 || b.rows != a.rows {
        return Err(ScalarError::ShapeMismatch);
    }
    let n = a.cols;
    let aug = a.hstack(b);
    let (r, piv) = aug.rref();
    if piv.last() == Some(&n) {
        return Ok(Solution::Inconsistent);
    }
    let mut particular = vec![a.field.zero(); n];
    for (i, &p) in piv.iter().enumerate() {
        particular[p] = r.get(i, n).clone();
    }
    let coeff = r.submatrix(0, 0, r.rows, n);
    Ok(Solution::Affine { particular, kernel: kernel_from_rref(&coeff, &piv, n) })
}

/// Incremental row reduction for tall homogeneous systems: rows are reduced
/// on insertion, so memory stays at rank × columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    pivots: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(field: FieldSpec, ncols: usize) -> Echelon {
        Echelon { field, ncols, pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots; returns the residue.
    pub fn reduce(&self, mut row: Vec<Scalar>) -> Vec<Scalar> {
        for (c, v) in &self.pivots {
            let f = row[*c].clone();
            if !f.is_zero() {
                for (x, y) in row.iter_mut().zip(v) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        row
    }

    /// Inserts a row; returns true if the rank grew.
    pub fn insert(&mut self, row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.ncols);
        let mut row = self.reduce(row);
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[c].inv().unwrap();
        for x in row.iter_mut() {
            *x = x.mul(&inv);
        }
        for (_, v) in self.pivots.iter_mut() {
            let f = v[c].clone();
            if !f.is_zero() {
                for (x, y) in v.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        self.pivots.push((c, row));
        true
    }

    pub fn contains(&self, row: &[Scalar]) -> bool {
        self.reduce(row.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Basis of the null space of the inserted rows, in reduced echelon form.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut sorted = self.pivots.clone();
        sorted.sort_by_key(|(c, _)| *c);
        let piv: Vec<usize> = sorted.iter().map(|(c, _)| *c).collect();
        if sorted.is_empty() {
            let m = Matrix::zero(self.field, 0, self.ncols);
            return kernel_from_rref(&m, &piv, self.ncols);
        }
        let m = Matrix::from_rows(self.field, sorted.into_iter().map(|(_, v)| v).collect())
            .unwrap();
        kernel_from_rref(&m, &piv, self.ncols)
    }

    /// Row space basis in reduced echelon form.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        let mut sorted = self.pivots.clone();
        sorted.sort_by_key(|(c, _)| *c);
        sorted.into_iter().map(|(_, v)| v).collect()
    }

    /// Coordinates of `row` in terms of `basis()`, if it lies in the span.
    pub fn coordinates(&self, row: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut sorted = self.pivots.clone();
        sorted.sort_by_key(|(c, _)| *c);
        let coords: Vec<Scalar> = sorted.iter().map(|(c, _)| row[*c].clone()).collect();
        let mut acc = vec![self.field.zero(); self.ncols];
        for ((_, v), k) in sorted.iter().zip(&coords) {
            for (a, b) in acc.iter_mut().zip(v) {
                *a = a.add(&k.mul(b));
            }
        }
        if acc.as_slice() == row {
            Some(coords)
        } else {
            None
        }
    }
}

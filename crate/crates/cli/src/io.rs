//! JSON encodings of the core types.
//!
//! Scalars over `F_p` are integers (any representative is accepted, the
//! canonical one in `0..p` is written). Scalars over `Q(ζ_n)` are
//! coefficient arrays of length `deg Φ_n` whose entries are integers or
//! `"p/q"` strings. Group elements are written as comma-joined exponent
//! vectors, so `"1"` in `C2` and `"1,0"` in `C2 × C2`.

use std::fmt;
use std::str::FromStr;

use equiv_core::abgroup::{Cocycle2, FinAbGroup, GroupElement};
use equiv_core::action::WeakAction;
use equiv_core::algebra::{Algebra, AlgebraMap, ModuleRep};
use equiv_core::duality::EquivariantFunctor;
use equiv_core::equivariant::EquivariantModule;
use equiv_core::scalar::{FieldSpec, Matrix, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

/// Malformed input; the CLI exits with status 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub type Res<T> = Result<T, InputError>;

fn err<T>(msg: impl Into<String>) -> Res<T> {
    Err(InputError(msg.into()))
}

fn get<'a>(v: &'a Value, key: &str) -> Res<&'a Value> {
    v.get(key).ok_or_else(|| InputError(format!("missing key \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Res<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| InputError(format!("{what} must be an array")))
}

fn uint(v: &Value, what: &str) -> Res<u64> {
    v.as_u64().ok_or_else(|| InputError(format!("{what} must be a non-negative integer")))
}

pub fn parse_field(v: &Value) -> Res<FieldSpec> {
    let spec = if let Some(p) = v.get("prime") {
        FieldSpec::prime(uint(p, "prime")?)
    } else if let Some(n) = v.get("cyclotomic") {
        FieldSpec::cyclotomic(uint(n, "cyclotomic")?)
    } else {
        return err("field must be {\"prime\": p} or {\"cyclotomic\": n}");
    };
    spec.map_err(|e| InputError(format!("field: {e}")))
}

/// `prime:13` or `cyclotomic:12`.
pub fn parse_field_flag(s: &str) -> Res<FieldSpec> {
    let (kind, n) = s.split_once(':').ok_or_else(|| InputError(format!("bad field \"{s}\"; use prime:p or cyclotomic:n")))?;
    let n: u64 = n.parse().map_err(|_| InputError(format!("bad field size in \"{s}\"")))?;
    let spec = match kind {
        "prime" => FieldSpec::prime(n),
        "cyclotomic" => FieldSpec::cyclotomic(n),
        _ => return err(format!("bad field kind \"{kind}\"")),
    };
    spec.map_err(|e| InputError(format!("field: {e}")))
}

pub fn field_json(f: FieldSpec) -> Value {
    match f {
        FieldSpec::Prime(p) => json!({ "prime": p }),
        FieldSpec::Cyclotomic(n) => json!({ "cyclotomic": n }),
    }
}

fn rational(v: &Value) -> Res<BigRational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigRational::from_integer(BigInt::from(i))),
            None => err(format!("coefficient {n} is not an integer")),
        },
        Value::String(s) => BigRational::from_str(s).map_err(|_| InputError(format!("bad rational \"{s}\""))),
        _ => err("coefficients must be integers or \"p/q\" strings"),
    }
}

pub fn scalar(f: FieldSpec, v: &Value) -> Res<Scalar> {
    match f {
        FieldSpec::Prime(_) => match v.as_i64() {
            Some(i) => Ok(Scalar::from_i64(f, i)),
            None => err(format!("scalar over {f} must be an integer, got {v}")),
        },
        FieldSpec::Cyclotomic(_) => {
            let coeffs = array(v, "cyclotomic scalar")?;
            if coeffs.len() != f.degree() {
                return err(format!("scalar over {f} needs {} coefficients, got {}", f.degree(), coeffs.len()));
            }
            Ok(Scalar::from_rational_coeffs(f, coeffs.iter().map(rational).collect::<Res<_>>()?))
        }
    }
}

fn rational_json(q: &BigRational) -> Value {
    if q.denom().is_one() {
        if let Some(i) = q.numer().to_i64() {
            return json!(i);
        }
    }
    json!(q.to_string())
}

pub fn scalar_json(s: &Scalar) -> Value {
    match s.residue() {
        Some(r) => json!(r),
        None => Value::Array(s.coeffs().unwrap_or(&[]).iter().map(rational_json).collect()),
    }
}

pub fn vector(f: FieldSpec, v: &Value, len: Option<usize>) -> Res<Vec<Scalar>> {
    let items = array(v, "vector")?;
    if let Some(n) = len {
        if items.len() != n {
            return err(format!("vector has {} entries, expected {n}", items.len()));
        }
    }
    items.iter().map(|x| scalar(f, x)).collect()
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn matrix(f: FieldSpec, v: &Value, rows: usize, cols: usize) -> Res<Matrix> {
    let rs = array(v, "matrix")?;
    if rs.len() != rows {
        return err(format!("matrix has {} rows, expected {rows}", rs.len()));
    }
    let rows: Vec<Vec<Scalar>> = rs.iter().map(|r| vector(f, r, Some(cols))).collect::<Res<_>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zero(f, 0, cols));
    }
    Matrix::from_rows(f, rows).map_err(|e| InputError(format!("matrix: {e}")))
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_json(r)).collect())
}

pub fn parse_group(v: &Value) -> Res<FinAbGroup> {
    let orders = array(get(v, "cyclic_orders")?, "cyclic_orders")?
        .iter()
        .map(|o| uint(o, "cyclic order"))
        .collect::<Res<Vec<_>>>()?;
    FinAbGroup::new(orders).map_err(|e| InputError(format!("group: {e}")))
}

pub fn group_json(g: &FinAbGroup) -> Value {
    json!({ "cyclic_orders": g.cyclic_orders() })
}

pub fn elem_key(g: &FinAbGroup, idx: usize) -> String {
    g.element_at(idx).0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// Element index from `"1,0"`, `[1, 0]` or a bare integer in a cyclic group.
pub fn parse_elem(g: &FinAbGroup, v: &Value) -> Res<usize> {
    let coords: Vec<u64> = match v {
        Value::String(s) => s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| InputError(format!("bad group element \"{s}\""))))
            .collect::<Res<_>>()?,
        Value::Array(a) => a.iter().map(|x| uint(x, "group coordinate")).collect::<Res<_>>()?,
        Value::Number(_) => vec![uint(v, "group element")?],
        _ => return err(format!("bad group element {v}")),
    };
    let e = GroupElement(coords);
    if !g.contains(&e) {
        return err(format!("{v} is not an element of the group"));
    }
    Ok(g.index_of(&e))
}

fn parse_elem_key(g: &FinAbGroup, k: &str) -> Res<usize> {
    parse_elem(g, &Value::String(k.to_string()))
}

/// `{"field"?, "dim"?, "basis", "mul": [[i,j,k,s]], "unit"}`. The field
/// may be inherited from an enclosing object.
pub fn parse_algebra(v: &Value, inherited: Option<FieldSpec>) -> Res<Algebra> {
    let f = match v.get("field") {
        Some(fv) => parse_field(fv)?,
        None => inherited.ok_or_else(|| InputError("missing key \"field\"".into()))?,
    };
    let basis: Vec<String> = array(get(v, "basis")?, "basis")?
        .iter()
        .map(|b| b.as_str().map(str::to_string).ok_or_else(|| InputError("basis names must be strings".into())))
        .collect::<Res<_>>()?;
    let n = basis.len();
    if let Some(d) = v.get("dim") {
        if uint(d, "dim")? as usize != n {
            return err(format!("dim is {d} but the basis has {n} names"));
        }
    }
    let mut mul = Vec::new();
    for e in array(get(v, "mul")?, "mul")? {
        let t = array(e, "mul entry")?;
        if t.len() != 4 {
            return err("mul entries are [i, j, k, scalar]");
        }
        let idx = |x: &Value| -> Res<usize> { Ok(uint(x, "mul index")? as usize) };
        mul.push((idx(&t[0])?, idx(&t[1])?, idx(&t[2])?, scalar(f, &t[3])?));
    }
    let unit = vector(f, get(v, "unit")?, Some(n))?;
    Algebra::new(f, basis, &mul, unit).map_err(|e| InputError(format!("algebra: {e}")))
}

pub fn algebra_json(a: &Algebra) -> Value {
    let mul: Vec<Value> = a
        .structure_constants()
        .iter()
        .map(|(i, j, k, c)| json!([i, j, k, scalar_json(c)]))
        .collect();
    json!({
        "field": field_json(a.field()),
        "dim": a.dim(),
        "basis": a.basis_names(),
        "mul": mul,
        "unit": vector_json(a.unit()),
    })
}

fn square(a: &Algebra, v: &Value) -> Res<AlgebraMap> {
    Ok(AlgebraMap::new(matrix(a.field(), v, a.dim(), a.dim())?))
}

/// `{"field", "group", "algebra", "rho": {g: matrix}, "c": [[g, h, unit]]}`.
/// Missing `ρ(g)` are errors; missing `c(g,h)` default to 1.
pub fn parse_weak_action(v: &Value) -> Res<WeakAction> {
    let f = parse_field(get(v, "field")?)?;
    let group = parse_group(get(v, "group")?)?;
    let alg = parse_algebra(get(v, "algebra")?, Some(f))?;
    let n = group.order();
    let rho_obj = get(v, "rho")?.as_object().ok_or_else(|| InputError("rho must be an object".into()))?;
    let mut rho: Vec<Option<AlgebraMap>> = vec![None; n];
    for (k, m) in rho_obj {
        let g = parse_elem_key(&group, k)?;
        rho[g] = Some(square(&alg, m)?);
    }
    let rho = rho
        .into_iter()
        .enumerate()
        .map(|(g, r)| r.ok_or_else(|| InputError(format!("rho is missing element \"{}\"", elem_key(&group, g)))))
        .collect::<Res<Vec<_>>>()?;
    let mut c = vec![alg.unit().to_vec(); n * n];
    if let Some(cv) = v.get("c") {
        for e in array(cv, "c")? {
            let t = array(e, "c entry")?;
            if t.len() != 3 {
                return err("c entries are [g, h, unit]");
            }
            let (g, h) = (parse_elem(&group, &t[0])?, parse_elem(&group, &t[1])?);
            c[g * n + h] = vector(f, &t[2], Some(alg.dim()))?;
        }
    }
    WeakAction::new(group, alg, rho, c).map_err(|e| InputError(format!("weak action: {e}")))
}

/// Writes every `ρ(g)` and the `c(g,h)` that differ from 1.
pub fn weak_action_json(w: &WeakAction) -> Value {
    let n = w.order();
    let mut rho = Map::new();
    for g in 0..n {
        rho.insert(elem_key(&w.group, g), matrix_json(&w.rho(g).matrix));
    }
    let mut c = Vec::new();
    for g in 0..n {
        for h in 0..n {
            if w.c(g, h) != w.algebra.unit() {
                c.push(json!([elem_key(&w.group, g), elem_key(&w.group, h), vector_json(w.c(g, h))]));
            }
        }
    }
    let mut alg = algebra_json(&w.algebra);
    alg.as_object_mut().expect("object").remove("field");
    json!({
        "field": field_json(w.algebra.field()),
        "group": group_json(&w.group),
        "algebra": alg,
        "rho": rho,
        "c": c,
    })
}

/// `{"dim", "action": [matrix per basis element]}`.
pub fn parse_module(a: &Algebra, v: &Value) -> Res<ModuleRep> {
    let d = uint(get(v, "dim")?, "dim")? as usize;
    let mats = array(get(v, "action")?, "action")?;
    if mats.len() != a.dim() {
        return err(format!("module has {} action matrices, the algebra has dimension {}", mats.len(), a.dim()));
    }
    let action = mats.iter().map(|m| matrix(a.field(), m, d, d)).collect::<Res<Vec<_>>>()?;
    let m = ModuleRep { dim: d, action };
    let rep = m.validate(a);
    if !rep.is_valid() {
        return err(format!("not a module: {rep:?}"));
    }
    Ok(m)
}

pub fn module_json(m: &ModuleRep) -> Value {
    json!({ "dim": m.dim, "action": m.action.iter().map(matrix_json).collect::<Vec<_>>() })
}

pub fn equivariant_json(g: &FinAbGroup, e: &EquivariantModule) -> Value {
    let mut alpha = Map::new();
    for (i, m) in e.alpha.iter().enumerate() {
        alpha.insert(elem_key(g, i), matrix_json(m));
    }
    json!({ "module": module_json(&e.base), "alpha": alpha })
}

/// `{"action": weak-action, "F": matrix, "delta": {g: unit}}`.
pub fn parse_functor(v: &Value) -> Res<(WeakAction, EquivariantFunctor)> {
    let w = parse_weak_action(get(v, "action")?)?;
    let sigma = square(&w.algebra, get(v, "F")?)?;
    let n = w.order();
    let obj = get(v, "delta")?.as_object().ok_or_else(|| InputError("delta must be an object".into()))?;
    let mut delta: Vec<Option<Vec<Scalar>>> = vec![None; n];
    for (k, d) in obj {
        let g = parse_elem_key(&w.group, k)?;
        delta[g] = Some(vector(w.algebra.field(), d, Some(w.algebra.dim()))?);
    }
    let delta = delta
        .into_iter()
        .enumerate()
        .map(|(g, d)| d.ok_or_else(|| InputError(format!("delta is missing element \"{}\"", elem_key(&w.group, g)))))
        .collect::<Res<Vec<_>>>()?;
    Ok((w, EquivariantFunctor { sigma, delta }))
}

pub fn functor_json(w: &WeakAction, d: &EquivariantFunctor) -> Value {
    json!({
        "action": weak_action_json(w),
        "F": matrix_json(&d.sigma.matrix),
        "delta": delta_json(&w.group, &d.delta),
    })
}

pub fn delta_json(g: &FinAbGroup, delta: &[Vec<Scalar>]) -> Value {
    let mut out = Map::new();
    for (i, d) in delta.iter().enumerate() {
        out.insert(elem_key(g, i), vector_json(d));
    }
    Value::Object(out)
}

/// `{"field"?, "algebra", "sigma": matrix, "d"}`.
pub fn parse_sigma_datum(v: &Value) -> Res<(Algebra, AlgebraMap, Option<u64>)> {
    let inherited = v.get("field").map(parse_field).transpose()?;
    let alg = parse_algebra(get(v, "algebra")?, inherited)?;
    let sigma = square(&alg, get(v, "sigma")?)?;
    let d = v.get("d").map(|d| uint(d, "d")).transpose()?;
    Ok((alg, sigma, d))
}

pub fn cocycle_json(s: &Cocycle2) -> Value {
    let g = &s.group;
    Value::Array(
        s.entries()
            .iter()
            .map(|(a, b, v)| json!([elem_key(g, g.index_of(a)), elem_key(g, g.index_of(b)), scalar_json(v)]))
            .collect(),
    )
}

/// A module list, either `[module, ...]` or `{"modules": [...]}`.
pub fn parse_modules(a: &Algebra, v: &Value) -> Res<Vec<ModuleRep>> {
    let list = match v.get("modules") {
        Some(m) => m,
        None => v,
    };
    array(list, "module list")?.iter().map(|m| parse_module(a, m)).collect()
}

use std::fs;
use std::path::Path;

use equiv_core::abgroup::FinAbGroup;
use equiv_core::action::{
    compatible_pair_from_action, crossed_product, find_stable_isos, induced_cyclic_action, is_d_compatible,
    k0_action, validate_weak_action, CompatiblePair, ModuleCategoryAction, WeakAction,
};
use equiv_core::algebra::{center, k0_basis, validate_algebra, Algebra, ModuleRep, UnitSearch};
use equiv_core::duality::{
    dual_twist, end_ind_check, orbit_census, theta, validate_doubly, verify_double_dual, verify_equivariantized,
    verify_monad_isomorphism, verify_theta_equivalence, DualGroup,
};
use equiv_core::equivariant::{
    default_equivariant_probes, from_crossed_module, hom_equivariant_direct, to_crossed_module, validate_equivariant,
    verify_adjunctions, verify_monad_laws,
};
use equiv_core::obstruction::{
    check_datum, exhaustive_coboundary_search, gauge_covariant, obstruction_class, ObstructionClass, ObstructionError,
};
use equiv_core::scalar::{FieldSpec, Scalar};
use equiv_core::search::SearchConfig;
use equiv_core::tubular::{
    realized_action, scaling_power, smash_realization, standard_automorphisms, validate_graded_automorphism, GradedPresentation,
    TubularType,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::io;
use crate::report::Report;
use crate::{Cli, Cmd, Common, UsageError};

type Res<T> = Result<T, UsageError>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(UsageError(msg.into()))
}

pub fn run(cli: &Cli) -> Res<Report> {
    let c = &cli.common;
    match &cli.cmd {
        Cmd::ValidateAlgebra => validate_algebra_cmd(c),
        Cmd::ValidateAction => validate_action_cmd(c),
        Cmd::CrossedProduct => crossed_product_cmd(c),
        Cmd::Equivariantize { functor } => match functor {
            Some(p) => equivariantize_functor_cmd(c, p),
            None => equivariantize_cmd(c),
        },
        Cmd::Dualize => dualize_cmd(c),
        Cmd::VerifyDuality => verify_duality_cmd(c),
        Cmd::CyclicClassify => cyclic_classify_cmd(c),
        Cmd::DCompatible { order } => d_compatible_cmd(c, *order),
        Cmd::Obstruction => obstruction_cmd(c),
        Cmd::K0Action => k0_action_cmd(c),
        Cmd::OrbitCensus => orbit_census_cmd(c),
        Cmd::Tubular { kind, lambda, check_table1 } => tubular_cmd(c, kind.as_deref(), lambda.as_deref(), *check_table1),
        Cmd::AppendixASuite => appendix_cmd(c),
    }
}

fn cfg(c: &Common) -> SearchConfig {
    SearchConfig { seed: c.seed, ..SearchConfig::default() }
}

/// Reads a file, falling back to the bundled corpus by file name.
fn read_source(path: &Path) -> Res<(String, String)> {
    match fs::read_to_string(path) {
        Ok(s) => Ok((path.display().to_string(), s)),
        Err(e) => {
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
            match crate::corpus::lookup(name) {
                Some(s) if path.components().count() == 1 => Ok((format!("corpus:{name}"), s.to_string())),
                _ => usage(format!("cannot read {}: {e}", path.display())),
            }
        }
    }
}

fn read_json(rep: &mut Report, path: &Path) -> Res<Value> {
    let (label, text) = read_source(path)?;
    rep.input(&label, text.as_bytes());
    serde_json::from_str(&text).map_err(|e| UsageError(format!("{label}: malformed JSON: {e}")))
}

fn input_json(rep: &mut Report, c: &Common) -> Res<Value> {
    match &c.input {
        Some(p) => read_json(rep, p),
        None => usage(format!("{} needs --in FILE", rep.command)),
    }
}

fn write_json(path: &Path, v: &Value) -> Res<()> {
    fs::write(path, crate::corpus::render(v)).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

fn load_action(rep: &mut Report, c: &Common) -> Res<ModuleCategoryAction> {
    let v = input_json(rep, c)?;
    let w = io::parse_weak_action(&v)?;
    let vr = validate_weak_action(&w);
    if !vr.is_valid() {
        return usage(format!("input is not a weak action: {}", vr.summary()));
    }
    ModuleCategoryAction::new(w).map_err(|e| UsageError(e.to_string()))
}

fn probes(rep: &mut Report, c: &Common, act: &ModuleCategoryAction, default: &str) -> Res<Vec<ModuleRep>> {
    let sel = c.probe_set.as_deref().unwrap_or(default);
    let cfg = cfg(c);
    let out = match sel {
        "default" => act.default_probes(&cfg),
        "regular" => vec![ModuleRep::regular(act.algebra())],
        "simples" => k0_basis(act.algebra(), &cfg).map_err(|e| UsageError(format!("simples: {e}")))?.simples,
        path => {
            let v = read_json(rep, Path::new(path))?;
            io::parse_modules(act.algebra(), &v)?
        }
    };
    rep.set("probe_set", json!({ "name": sel, "dims": out.iter().map(|m| m.dim).collect::<Vec<_>>() }));
    Ok(out)
}

fn names(g: &FinAbGroup, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| io::elem_key(g, i)).collect()
}

fn first<T: Clone>(v: &[T], n: usize) -> Vec<T> {
    v.iter().take(n).cloned().collect()
}

fn validate_algebra_cmd(c: &Common) -> Res<Report> {
    let mut rep = Report::new("validate-algebra");
    let v = input_json(&mut rep, c)?;
    let v = v.get("algebra").cloned().unwrap_or(v);
    let inherited = None;
    let a = io::parse_algebra(&v, inherited)?;
    algebra_checks(&mut rep, &a);
    rep.set("dim", json!(a.dim()));
    rep.set("center_dim", json!(center(&a).len()));
    Ok(rep)
}

fn algebra_checks(rep: &mut Report, a: &Algebra) -> bool {
    let r = validate_algebra(a);
    let bn = a.basis_names();
    let assoc: Vec<Value> = first(&r.associativity_violations, 10)
        .iter()
        .map(|(i, j, k)| json!([bn[*i], bn[*j], bn[*k]]))
        .collect();
    let unit: Vec<&String> = r.unit_violations.iter().take(10).map(|&i| &bn[i]).collect();
    let ok1 = rep.check(
        "associativity on all basis triples",
        r.associativity_violations.is_empty(),
        if assoc.is_empty() { json!({ "triples": a.dim().pow(3) }) } else { json!(assoc) },
    );
    let ok2 = rep.check("unit", r.unit_violations.is_empty(), if unit.is_empty() { Value::Null } else { json!(unit) });
    ok1 && ok2
}

fn weak_action_checks(rep: &mut Report, w: &WeakAction) -> bool {
    let r = validate_weak_action(w);
    let g = &w.group;
    let triples = |v: &[(usize, usize, usize)]| -> Value {
        json!(v.iter().take(10).map(|(a, b, x)| json!([io::elem_key(g, *a), io::elem_key(g, *b), x])).collect::<Vec<_>>())
    };
    rep.check("ρ(g) are automorphisms", r.non_automorphisms.is_empty(), if r.non_automorphisms.is_empty() { Value::Null } else { json!(names(g, &r.non_automorphisms)) });
    rep.check(
        "c(g,h) are units",
        r.non_units.is_empty(),
        if r.non_units.is_empty() { Value::Null } else { json!(r.non_units.iter().map(|(a, b)| names(g, &[*a, *b])).collect::<Vec<_>>()) },
    );
    rep.check("ρ(gh) = c(g,h)⁻¹ρ(g)ρ(h)(-)c(g,h)", r.wa1.is_empty(), if r.wa1.is_empty() { Value::Null } else { triples(&r.wa1) });
    rep.check("c(g,h)c(gh,k) = ρ(g)(c(h,k))c(g,hk)", r.wa2.is_empty(), if r.wa2.is_empty() { Value::Null } else { triples(&r.wa2) });
    rep.check("derived identities", r.derived.is_empty(), if r.derived.is_empty() { Value::Null } else { json!(first(&r.derived, 10)) });
    r.is_valid()
}

fn validate_action_cmd(c: &Common) -> Res<Report> {
    let mut rep = Report::new("validate-action");
    let v = input_json(&mut rep, c)?;
    let w = io::parse_weak_action(&v)?;
    rep.set("group_order", json!(w.order()));
    rep.set("algebra_dim", json!(w.algebra.dim()));
    if !weak_action_checks(&mut rep, &w) {
        return Ok(rep);
    }
    let act = ModuleCategoryAction::new(w).map_err(|e| UsageError(e.to_string()))?;
    let ps = probes(&mut rep, c, &act, "default")?;
    match act.check_cocycle(&ps) {
        Ok(bad) => {
            let g = act.group();
            let detail = if bad.is_empty() {
                json!({ "triples": act.order().pow(3), "probes": ps.len() })
            } else {
                json!(bad.iter().take(10).map(|(a, b, x)| names(g, &[*a, *b, *x])).collect::<Vec<_>>())
            };
            rep.check("ε satisfies the 2-cocycle identity on probes", bad.is_empty(), detail);
        }
        Err(e) => {
            rep.check("ε satisfies the 2-cocycle identity on probes", false, json!(e.to_string()));
        }
    }
    Ok(rep)
}

fn crossed_product_cmd(c: &Common) -> Res<Report> {
    let mut rep = Report::new("crossed-product");
    let act = load_action(&mut rep, c)?;
    let w = act.weak();
    let cp = crossed_product(w).map_err(|e| UsageError(e.to_string()))?;
    let a = &cp.algebra;
    let n = w.algebra.dim();
    rep.check(
        "dim(R∗G) = |G|·dim R",
        a.dim() == w.order() * n,
        json!({ "dim": a.dim(), "group_order": w.order(), "base_dim": n }),
    );
    algebra_checks(&mut rep, a);
    let e = w.identity_index();
    let cinv = w.algebra.invert_element(w.c(e, e)).expect("valid action");
    let mut expected = a.zero_vector();
    for (i, x) in cinv.iter().enumerate() {
        expected[e * n + i] = x.clone();
    }
    rep.check("identity is c(e,e)⁻¹ē", a.unit() == expected.as_slice(), json!({ "unit": io::vector_json(a.unit()) }));
    rep.set("dim", json!(a.dim()));
    rep.set("center_dim", json!(center(a).len()));
    match k0_basis(a, &cfg(c)) {
        Ok(k0) => rep.set("simple_dims", json!(k0.simples.iter().map(|s| s.dim).collect::<Vec<_>>())),
        Err(e) => rep.set("simple_dims", json!(format!("undetermined: {e}"))),
    }
    if let Some(out) = &c.out {
        write_json(out, &io::algebra_json(a))?;
        rep.set("written", json!(out.display().to_string()));
    }
    Ok(rep)
}

fn equivariantize_cmd(c: &Common) -> Res<Report> {
    let mut rep = Report::new("equivariantize");
    let act = load_action(&mut rep, c)?;
    let cfg = cfg(c);
    let xs = probes(&mut rep, c, &act, "default")?;
    let es = default_equivariant_probes(&act, &xs, &cfg);
    rep.set("equivariant_probe_dims", json!(es.iter().map(|e| e.dim()).collect::<Vec<_>>()));
    let bad: Vec<usize> = es.iter().enumerate().filter(|(_, e)| !validate_equivariant(&act, e).is_valid()).map(|(i, _)| i).collect();
    rep.check("equivariant probes are valid", bad.is_empty(), if bad.is_empty() { Value::Null } else { json!(bad) });

    let cp = crossed_product(act.weak()).map_err(|e| UsageError(e.to_string()))?;
    let cms: Vec<ModuleRep> = es.iter().map(|e| to_crossed_module(&act, e)).collect();
    let mut trip = Vec::new();
    for (i, (e, m)) in es.iter().zip(&cms).enumerate() {
        let back = from_crossed_module(&act, &cp, m);
        if !m.validate(&cp.algebra).is_valid() || back.as_ref() != Ok(e) {
            trip.push(i);
        }
    }
    rep.check("crossed-product modules round-trip exactly", trip.is_empty(), if trip.is_empty() { json!({ "objects": es.len() }) } else { json!(trip) });
    let mut dims = Vec::new();
    let mut mismatch = Vec::new();
    for i in 0..es.len() {
        for j in 0..es.len() {
            let d1 = hom_equivariant_direct(&act, &es[i], &es[j]).len();
            let d2 = cms[i].hom(&cp.algebra, &cms[j]).len();
            if d1 != d2 {
                mismatch.push(json!({ "pair": [i, j], "equivariant": d1, "crossed": d2 }));
            }
            dims.push(d1);
        }
    }
    rep.check("hom dimensions agree on every probe pair", mismatch.is_empty(), if mismatch.is_empty() { json!({ "pairs": dims.len() }) } else { json!(mismatch) });
    rep.set("hom_dims", json!(dims));

    match verify_adjunctions(&act, &xs, &es) {
        Ok(a) => {
            rep.check("adjunctions, triangle identities, split counit", a.passed(), if a.passed() { json!({ "probe_pairs": a.probe_pairs }) } else { json!(first(&a.failures, 10)) });
        }
        Err(e) => {
            rep.check("adjunctions, triangle identities, split counit", false, json!(e.to_string()));
        }
    }
    let m = verify_monad_laws(&act, &xs, &es);
    rep.check("monad laws", m.passed(), if m.passed() { json!({ "m_probes": m.m_probes, "n_probes": m.n_probes }) } else { json!(first(&m.failures, 10)) });
    Ok(rep)
}

fn equivariantize_functor_cmd(c: &Common, path: &Path) -> Res<Report> {
    let mut rep = Report::new("equivariantize");
    let v = read_json(&mut rep, path)?;
    let (w, f) = io::parse_functor(&v)?;
    let act = ModuleCategoryAction::new(w).map_err(|e| UsageError(e.to_string()))?;
    let cfg = cfg(c);
    let xs = probes(&mut rep, c, &act, "default")?;
    let es = default_equivariant_probes(&act, &xs, &cfg);
    match f.validate(&act, &xs) {
        Ok(bad) => {
            let g = act.group();
            rep.check("δ is coherent", bad.is_empty(), if bad.is_empty() { Value::Null } else { json!(bad.iter().map(|(a, b)| names(g, &[*a, *b])).collect::<Vec<_>>()) });
        }
        Err(e) => {
            rep.check("δ is coherent", false, json!(e.to_string()));
            return Ok(rep);
        }
    }
    let dual = match DualGroup::new(&act) {
        Ok(d) => d,
        Err(e) => {
            rep.check("group splits over the field", false, json!(e.to_string()));
            return Ok(rep);
        }
    };
    match verify_equivariantized(&act, &dual, &f, &xs, &es) {
        Ok(bad) => {
            rep.check("equivariantized functor and ξ", bad.is_empty(), if bad.is_empty() { json!({ "objects": es.len() }) } else { json!(first(&bad, 10)) });
        }
        Err(e) => {
            rep.check("equivariantized functor and ξ", false, json!(e.to_string()));
        }
    }
    let images: Vec<Value> = es.iter().take(4).map(|e| io::equivariant_json(act.group(), &f.equivariantize(&act, e))).collect();
    rep.set("images", json!(images));
    Ok(rep)
}

fn dual_group(rep: &mut Report, act: &ModuleCategoryAction) -> Option<DualGroup> {
    match DualGroup::new(act) {
        Ok(d) => {
            rep.check("group splits over the field", true, Value::Null);
            Some(d)
        }
        Err(e) => {
            rep.check("group splits over the field", false, json!(e.to_string()));
            None
        }
    }
}

fn dualize_cmd(c: &Common) -> Res<Report> {
    let mut rep = Report::new("dualize");
    let act = load_action(&mut rep, c)?;
    let Some(dual) = dual_group(&mut rep, &act) else { return Ok(rep) };
    let g = act.group();
    let table: Vec<Value> = dual
        .values
        .iter()
        .map(|row| {
            let mut o = serde_json::Map::new();
            for (i, s) in row.iter().enumerate() {
                o.insert(io::elem_key(g, i), io::scalar_json(s));
            }
            Value::Object(o)
        })
        .collect();
    rep.set("characters", json!(table));
    rep.check("|Ĝ| = |G|", dual.order() == act.order(), json!({ "characters": dual.order() }));
    let cfg = cfg(c);
    let xs = probes(&mut rep, c, &act, "default")?;
    let es = default_equivariant_probes(&act, &xs, &cfg);
    let mut bad = Vec::new();
    for (i, e) in es.iter().enumerate() {
        for chi in 0..dual.order() {
            if !validate_equivariant(&act, &dual_twist(&act, &dual, chi, e)).is_valid() {
                bad.push(json!([i, chi]));
            }
        }
    }
    rep.check("dual twists are equivariant modules", bad.is_empty(), if bad.is_empty() { json!({ "objects": es.len() * dual.order() }) } else { json!(bad) });
    let mut bad = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        for msg in validate_doubly(&act, &dual, &theta(&act, &dual, x)) {
            bad.push(format!("probe {i}: {msg}"));
        }
    }
    rep.check("Θ(X) is Ĝ-equivariant", bad.is_empty(), if bad.is_empty() { Value::Null } else { json!(first(&bad, 10)) });
    let dd = verify_double_dual(&act, &dual, &xs);
    rep.check("double dual action and ∂_g", dd.is_empty(), if dd.is_empty() { Value::Null } else { json!(first(&dd, 10)) });
    Ok(rep)
}

fn verify_duality_cmd(c: &Common) -> Res<Report> {
    let mut rep = Report::new("verify-duality");
    let act = load_action(&mut rep, c)?;
    let Some(dual) = dual_group(&mut rep, &act) else { return Ok(rep) };
    let cfg = cfg(c);
    let xs = probes(&mut rep, c, &act, "default")?;
    let es = default_equivariant_probes(&act, &xs, &cfg);
    match verify_monad_isomorphism(&act, &dual, &es) {
        Ok(bad) => {
            rep.check("monad isomorphism f∘f⁻¹ = f⁻¹∘f = id", bad.is_empty(), if bad.is_empty() { json!({ "objects": es.len() }) } else { json!(first(&bad, 10)) });
        }
        Err(e) => {
            rep.check("monad isomorphism f∘f⁻¹ = f⁻¹∘f = id", false, json!(e.to_string()));
        }
    }
    let t = verify_theta_equivalence(&act, &dual, &xs, &es);
    rep.check("Θ preserves hom dimensions, ∂_g equivariance, density", t.passed(), if t.passed() { Value::Null } else { json!(first(&t.failures, 10)) });
    rep.set(
        "theta",
        json!({
            "hom_pairs": t.hom_pairs,
            "double_dual_checks": t.double_dual_checks,
            "density_objects": t.density_objects,
            "density_certified": t.density_certified,
        }),
    );
    Ok(rep)
}

fn pair_json(p: &CompatiblePair) -> Value {
    json!({ "sigma": io::matrix_json(&p.sigma.matrix), "a": io::vector_json(&p.a), "d": p.d })
}

fn cyclic_classify_cmd(c: &Common) -> Res<Report> {
    let mut rep = Report::new("cyclic-classify");
    let act = load_action(&mut rep, c)?;
    let xs = probes(&mut rep, c, &act, "default")?;
    let r = match compatible_pair_from_action(&act, &xs) {
        Ok(r) => r,
        Err(e) => {
            rep.check("compatible pair extracted", false, json!(e.to_string()));
            return Ok(rep);
        }
    };
    rep.set("pair", pair_json(&r.pair));
    let alg = act.algebra();
    let chk = r.pair.check(alg);
    rep.check("σ^d = a(-)a⁻¹ and σ(a) = a", chk.is_ok(), chk.err().map_or(Value::Null, |e| json!(e.to_string())));
    rep.check("Fc = cF on probes", r.commutes, Value::Null);
    rep.check("induced action is isomorphic to the input", r.round_trip, Value::Null);
    if let Some(out) = &c.out {
        let induced = induced_cyclic_action(alg, &r.pair).map_err(|e| UsageError(e.to_string()))?;
        write_json(out, &io::weak_action_json(induced.weak()))?;
        rep.set("written", json!(out.display().to_string()));
    }
    Ok(rep)
}

fn d_compatible_cmd(c: &Common, order: Option<u64>) -> Res<Report> {
    let mut rep = Report::new("d-compatible");
    let v = input_json(&mut rep, c)?;
    let (alg, sigma, d) = io::parse_sigma_datum(&v)?;
    let Some(d) = order.or(d) else { return usage("no order: give \"d\" in the file or --order") };
    if d == 0 {
        return usage("order must be positive");
    }
    if !sigma.is_automorphism(&alg) {
        rep.check("σ is an automorphism", false, Value::Null);
        return Ok(rep);
    }
    rep.set("d", json!(d));
    match is_d_compatible(&alg, &sigma, d, &cfg(c)) {
        UnitSearch::Witness(w) => {
            rep.set("verdict", json!("d-compatible"));
            rep.set("witness", io::vector_json(&w));
            let pair = CompatiblePair::from_compatibility_witness(&alg, sigma, &w, d).expect("unit");
            let act = induced_cyclic_action(&alg, &pair);
            let ok = act.as_ref().map(|a| validate_weak_action(a.weak()).is_valid()).unwrap_or(false);
            rep.check("witness induces a valid cyclic action", ok, act.as_ref().err().map_or(Value::Null, |e| json!(e.to_string())));
            if let (Some(out), Ok(a)) = (&c.out, &act) {
                write_json(out, &io::weak_action_json(a.weak()))?;
                rep.set("written", json!(out.display().to_string()));
            }
        }
        UnitSearch::NoUnit => {
            rep.set("verdict", json!("not d-compatible"));
            rep.check("search conclusive", true, Value::Null);
        }
        UnitSearch::Undetermined => {
            rep.set("verdict", json!("undetermined"));
            rep.check("search conclusive", false, json!("unit search exhausted its sample budget"));
        }
    }
    Ok(rep)
}

fn random_units(field: FieldSpec, n: usize, seed: u64) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let s = field.sample(&mut rng);
            if !s.is_zero() {
                break s;
            }
        })
        .collect()
}

fn obstruction_cmd(c: &Common) -> Res<Report> {
    let mut rep = Report::new("obstruction");
    let v = input_json(&mut rep, c)?;
    let (w, d) = io::parse_functor(&v)?;
    let vr = validate_weak_action(&w);
    if !vr.is_valid() {
        return usage(format!("input is not a weak action: {}", vr.summary()));
    }
    let act = ModuleCategoryAction::new(w).map_err(|e| UsageError(e.to_string()))?;
    let g = act.group().clone();
    if let Err(e) = check_datum(&act, &d) {
        rep.check("datum is a commuting functor", false, json!(e.to_string()));
        return Ok(rep);
    }
    rep.check("datum is a commuting functor", true, Value::Null);
    let xs = probes(&mut rep, c, &act, "default")?;
    let r = match obstruction_class(&act, &d, &xs) {
        Ok(r) => r,
        Err(e @ ObstructionError::CenterTooLarge { .. }) => {
            rep.check("scalar extraction", false, json!(e.to_string()));
            return Ok(rep);
        }
        Err(e) => {
            rep.check("obstruction computed", false, json!(e.to_string()));
            return Ok(rep);
        }
    };
    rep.check("scalar extraction", true, Value::Null);
    rep.set("cocycle", io::cocycle_json(&r.cocycle));
    rep.check("σ is a 2-cocycle", r.is_cocycle, Value::Null);
    let field = act.algebra().field();
    let lambda = random_units(field, act.order(), c.seed);
    match gauge_covariant(&act, &d, &lambda, &xs) {
        Ok(ok) => {
            rep.check("gauge covariance under δ ↦ λδ", ok, json!({ "lambda": io::vector_json(&lambda) }));
        }
        Err(e) => {
            rep.check("gauge covariance under δ ↦ λδ", false, json!(e.to_string()));
        }
    }
    let trivial = matches!(r.class, ObstructionClass::Trivial { .. });
    match &r.class {
        ObstructionClass::Trivial { lambda, lift } => {
            rep.set("class", json!("trivial class"));
            rep.set("lambda", io::vector_json(lambda));
            rep.set("lift_delta", io::delta_json(&g, &lift.delta));
            rep.check("lift δ′ = λ⁻¹δ is coherent", true, Value::Null);
        }
        ObstructionClass::Nontrivial => rep.set("class", json!("nontrivial class")),
    }
    if let Some((tried, found)) = exhaustive_coboundary_search(&r.cocycle) {
        rep.check(
            "exhaustive coboundary search agrees",
            found.is_some() == trivial,
            json!({ "candidates": tried, "coboundary_found": found.is_some() }),
        );
    }
    Ok(rep)
}

fn k0_action_cmd(c: &Common) -> Res<Report> {
    let mut rep = Report::new("k0-action");
    let act = load_action(&mut rep, c)?;
    let k = match k0_action(&act, &cfg(c)) {
        Ok(k) => k,
        Err(e) => {
            rep.check("projective classes determined", false, json!(e.to_string()));
            return Ok(rep);
        }
    };
    let g = act.group();
    let mut gens = Vec::new();
    let mut dims_ok = true;
    let mut order_ok = true;
    for (i, (&gen, perm)) in k.generators.iter().zip(&k.perms).enumerate() {
        dims_ok &= perm.iter().enumerate().all(|(a, &b)| k.projective_dims[a] == k.projective_dims[b]);
        let ord = g.cyclic_orders()[i];
        order_ok &= (0..perm.len()).all(|a| {
            let mut x = a;
            for _ in 0..ord {
                x = perm[x];
            }
            x == a
        });
        gens.push(json!({ "generator": io::elem_key(g, gen), "permutation": perm, "matrix": k.matrix(i) }));
    }
    rep.check("classes keep their dimension", dims_ok, Value::Null);
    rep.check("generator of order d acts with order dividing d", order_ok, Value::Null);
    rep.set("generators", json!(gens));
    rep.set("projective_dims", json!(k.projective_dims));
    rep.set("trivial", json!(k.is_trivial()));
    Ok(rep)
}

fn orbit_census_cmd(c: &Common) -> Res<Report> {
    let mut rep = Report::new("orbit-census");
    let act = load_action(&mut rep, c)?;
    let Some(dual) = dual_group(&mut rep, &act) else { return Ok(rep) };
    let cfg = cfg(c);
    let xs = probes(&mut rep, c, &act, "simples")?;
    match orbit_census(&act, &dual, &xs, &cfg) {
        Ok(o) => {
            rep.set(
                "census",
                json!({
                    "classes": o.classes,
                    "orbits": o.orbits,
                    "equivariant_classes": o.equivariant_classes,
                    "dual_orbits": o.dual_orbits,
                    "pairing": o.pairing,
                }),
            );
            rep.check("probes closed under F_g", o.twist_closed, Value::Null);
            rep.check("equivariant summands closed under F_χ", o.dual_twist_closed, Value::Null);
            rep.check("|ind C / G| = |ind C^G / Ĝ|", o.counts_match(), json!([o.orbits, o.dual_orbits]));
        }
        Err(e) => {
            rep.check("orbit census", false, json!(e.to_string()));
            return Ok(rep);
        }
    }
    let Some(m) = xs.iter().cloned().reduce(|a, b| a.direct_sum(&b)) else { return Ok(rep) };
    match find_stable_isos(&act, &m, &cfg) {
        Ok(s) => match s.found() {
            Some(mut alpha) => {
                alpha[act.weak().identity_index()] = act.unit_component(&m).inverse().expect("unit");
                match end_ind_check(&act, &m, &alpha) {
                    Ok(e) => {
                        rep.check(
                            "End(Ind M) ≅ End(M)∗G as algebras",
                            e.passed(),
                            json!({ "end_ind_dim": e.end_ind_dim, "crossed_dim": e.crossed_dim, "bijective": e.bijective, "multiplicative": e.multiplicative, "unital": e.unital }),
                        );
                    }
                    Err(e) => {
                        rep.check("End(Ind M) ≅ End(M)∗G as algebras", false, json!(e.to_string()));
                    }
                }
            }
            None => rep.set("end_ind", json!("stability undetermined")),
        },
        Err(e) => rep.set("end_ind", json!(format!("skipped: {e}"))),
    }
    Ok(rep)
}

fn tubular_field(c: &Common) -> Res<FieldSpec> {
    match &c.field {
        Some(s) => Ok(io::parse_field_flag(s)?),
        None => Ok(FieldSpec::Prime(13)),
    }
}

fn parse_type(kind: &str, lambda: Option<&str>, field: FieldSpec) -> Res<TubularType> {
    let w: Vec<&str> = kind.split(',').map(str::trim).collect();
    let t = match w.as_slice() {
        ["2", "2", "2", "2"] => {
            let Some(l) = lambda else { return usage("type 2,2,2,2 needs --lambda") };
            let v: Value = serde_json::from_str(l).map_err(|_| UsageError(format!("bad λ \"{l}\"")))?;
            TubularType::T2222(io::scalar(field, &v)?)
        }
        ["3", "3", "3"] => TubularType::T333,
        ["4", "4", "2"] => TubularType::T442,
        ["6", "3", "2"] => TubularType::T632,
        _ => return usage(format!("unknown weight type \"{kind}\"")),
    };
    if lambda.is_some() && !matches!(t, TubularType::T2222(_)) {
        return usage("--lambda only applies to type 2,2,2,2");
    }
    Ok(t)
}

fn tubular_cmd(c: &Common, kind: Option<&str>, lambda: Option<&str>, table: bool) -> Res<Report> {
    let mut rep = Report::new("tubular");
    let field = tubular_field(c)?;
    let bound = c.bound.unwrap_or(8);
    rep.set("field", io::field_json(field));
    rep.set("bound", json!(bound));
    if table {
        return automorphisms_cmd(c, &mut rep, kind, field, bound).map(|_| rep);
    }
    let Some(kind) = kind else { return usage("tubular needs --type or --check-table1") };
    let pres = GradedPresentation::new(parse_type(kind, lambda, field)?, field).map_err(|e| UsageError(e.to_string()))?;
    let l = &pres.group;
    rep.set("presentation", json!(pres.kind.name()));
    rep.set(
        "grading_group",
        json!({
            "free_rank": l.free_rank(),
            "torsion": l.torsion(),
            "omega_order": l.order(&l.omega()),
        }),
    );
    let conf = pres.confluence_failures();
    rep.check("rewrite rules are confluent", conf.is_empty(), if conf.is_empty() { Value::Null } else { json!(conf) });
    let inh = pres.inhomogeneous_rules();
    rep.check("relations are homogeneous", inh.is_empty(), if inh.is_empty() { Value::Null } else { json!(inh) });
    let tr = pres.truncation(bound);
    let tc = tr.check(&pres);
    rep.check(
        "truncated multiplication is graded and associative",
        tc.passed(),
        json!({
            "products": tc.products_checked,
            "degree_failures": tc.degree_additivity_failures,
            "associativity_failures": tc.associativity_failures,
        }),
    );
    let hilbert: Vec<usize> = (0..=bound as i128).map(|d| tr.basis.iter().filter(|m| pres.total_degree(m) == d).count()).collect();
    rep.set("dim", json!(tr.dim()));
    rep.set("hilbert_function", json!(hilbert));
    let comps = tr.components(&pres);
    rep.set("dim_R_c", json!(comps.get(&l.c()).copied().unwrap_or(0)));
    Ok(rep)
}

fn automorphisms_cmd(c: &Common, rep: &mut Report, kind: Option<&str>, field: FieldSpec, bound: u64) -> Res<()> {
    let entries = standard_automorphisms(field).map_err(|e| UsageError(e.to_string()))?;
    let keep: Vec<_> = entries
        .into_iter()
        .filter(|e| match kind {
            None => true,
            Some(k) => e.presentation.kind.weights() == k.split(',').map(|x| x.trim().parse::<u64>().unwrap_or(0)).collect::<Vec<_>>(),
        })
        .collect();
    if keep.is_empty() {
        return usage(format!("no automorphism of the table has type {}", kind.unwrap_or("")));
    }
    if let Some(dir) = &c.out {
        fs::create_dir_all(dir).map_err(|e| UsageError(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut rows = Vec::new();
    for e in &keep {
        let pres = &e.presentation;
        let v = validate_graded_automorphism(&e.g, pres, bound);
        rep.check(
            format!("{} is a graded automorphism of {}", e.name, pres.kind.name()),
            v.passed(),
            json!({
                "bijective": v.bijective,
                "psi_well_defined": v.psi_well_defined,
                "relations_preserved": v.relations_preserved,
                "degree_failures": v.degree_failures,
                "products_checked": v.products_checked,
                "multiplicative_failures": v.multiplicative_failures,
            }),
        );
        let sp = match scaling_power(pres, &e.g, 12) {
            Ok(sp) => sp,
            Err(err) => {
                rep.check(format!("{} has a power that is a scaling", e.name), false, json!(err.to_string()));
                continue;
            }
        };
        rep.check(format!("{}^{} scaling character is well defined on L", e.name, sp.m), sp.well_defined, Value::Null);
        let mut row = json!({
            "name": e.name,
            "presentation": pres.kind.name(),
            "images": e.g.images.iter().map(|(i, s)| json!([pres.names[*i], io::scalar_json(s)])).collect::<Vec<_>>(),
            "m": sp.m,
            "gamma": io::vector_json(&sp.gamma),
            "gamma_order": sp.gamma_order,
        });
        let weights = pres.group.weights.clone();
        let mut cm = vec![0u32; pres.ngens()];
        cm[0] = weights[0] as u32;
        let rb = pres.total_degree(&cm) as u64;
        let act = smash_realization(pres, &e.g, &sp, rb).and_then(|r| {
            row["realization"] = json!({ "truncation_bound": rb, "truncation_dim": r.truncation_dim, "quotient_order": r.quotient_order, "dim": r.algebra.dim() });
            realized_action(&r)
        });
        match act {
            Ok(act) => {
                let vr = validate_weak_action(act.weak());
                rep.check(format!("{} induces a valid C{} action", e.name, sp.m), vr.is_valid(), json!(vr.summary()));
                if let Some(dir) = &c.out {
                    let path = dir.join(format!("{}_action.json", e.name));
                    write_json(&path, &io::weak_action_json(act.weak()))?;
                    row["written"] = json!(path.display().to_string());
                }
            }
            Err(err) => {
                rep.check(format!("{} induces a valid cyclic action", e.name), false, json!(err.to_string()));
            }
        }
        rows.push(row);
    }
    rep.set("automorphisms", json!(rows));
    Ok(())
}

fn appendix_cmd(c: &Common) -> Res<Report> {
    let mut rep = Report::new("appendix-a-suite");
    let actions: Vec<(String, ModuleCategoryAction)> = match &c.input {
        Some(p) => vec![(p.display().to_string(), load_action(&mut rep, c)?)],
        None => ["swap_c2.json", "twisted_c2_f5.json", "c3_perm_f13.json"]
            .iter()
            .map(|n| -> Res<_> {
                let v = read_json(&mut rep, Path::new(n))?;
                let w = io::parse_weak_action(&v)?;
                Ok((n.to_string(), ModuleCategoryAction::new(w).map_err(|e| UsageError(e.to_string()))?))
            })
            .collect::<Res<_>>()?,
    };
    let cfg = cfg(c);
    let mut results = Vec::new();
    for (name, act) in &actions {
        let xs = probes(&mut rep, c, act, "default")?;
        match act.appendix_a_suite(&xs, &cfg) {
            Ok(a) => {
                let fams: Vec<Value> = a
                    .families
                    .iter()
                    .zip(equiv_core::action::AppendixReport::NAMES)
                    .map(|((p, t), n)| json!({ "family": n, "passed": p, "checked": t }))
                    .collect();
                rep.check(format!("weak-action identities on {name}"), a.passed(), if a.passed() { Value::Null } else { json!(first(&a.failures, 10)) });
                results.push(json!({ "action": name, "probes": xs.len(), "families": fams }));
            }
            Err(e) => {
                rep.check(format!("weak-action identities on {name}"), false, json!(e.to_string()));
            }
        }
    }
    rep.result.remove("probe_set");
    rep.set("actions", json!(results));
    Ok(rep)
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use equiv_cli::dispatch;
use equiv_core::abgroup::is_2cocycle;
use equiv_core::action::{crossed_product, find_stable_isos, k0_action, validate_weak_action, ModuleCategoryAction, WeakAction};
use equiv_core::algebra::{center, k0_basis, validate_algebra, ModuleRep};
use equiv_core::corpus;
use equiv_core::duality::{
    end_ind_check, orbit_census, verify_monad_isomorphism, verify_theta_equivalence, DualGroup, EquivariantFunctor,
};
use equiv_core::equivariant::{
    default_equivariant_probes, from_crossed_module, hom_equivariant_direct, to_crossed_module, verify_adjunctions,
    verify_monad_laws,
};
use equiv_core::obstruction::{
    exhaustive_coboundary_search, gauge_covariant, obstruction_class, obstruction_cocycle, projective_datum,
    ObstructionClass,
};
use equiv_core::scalar::{FieldSpec, Scalar};
use equiv_core::search::SearchConfig;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn act(w: WeakAction) -> ModuleCategoryAction {
    ModuleCategoryAction::new(w).expect("bundled actions are valid")
}

fn sv(f: FieldSpec, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_i64(f, x)).collect()
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn bundled() -> Vec<(&'static str, ModuleCategoryAction)> {
    vec![
        ("swap C2 on k×k over F13", act(corpus::swap_c2(13))),
        ("twisted C2 over F5", act(corpus::twisted_c2_f5())),
        ("C3 on k×k×k over F13", act(corpus::c3_permutation(13))),
    ]
}

fn two_actions() -> Vec<(&'static str, ModuleCategoryAction)> {
    vec![("swap C2 on k×k over F13", act(corpus::swap_c2(13))), ("trivial C2 on kC2 over F5", act(corpus::trivial_kc2(5)))]
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, format!("{what} took {e:?}, limit {limit:?}"))
}

fn c1_identities() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for (name, a) in bundled() {
        let probes = a.default_probes(&cfg());
        let r = a.appendix_a_suite(&probes, &cfg()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.passed(), format!("{name}: {:?}", r.failures.first()))?;
        ensure(r.families.iter().all(|(p, n)| p == n && *n > 0), format!("{name}: empty family {:?}", r.families))?;
        checked += r.families.iter().map(|f| f.1).sum::<usize>();
    }
    within(t, Duration::from_secs(10), "identity suite")?;
    Ok(format!("{checked} identities on 3 actions"))
}

fn c2_crossed_products() -> Outcome {
    let mut actions = bundled();
    actions.push(("trivial C2 on kC2 over F5", act(corpus::trivial_kc2(5))));
    actions.push(("C2×C2 on k⁴ over F5", act(corpus::klein_regular(5))));
    for (name, a) in &actions {
        let t = Instant::now();
        let w = a.weak();
        let cp = crossed_product(w).map_err(|e| format!("{name}: {e}"))?;
        let n = w.algebra.dim();
        ensure(cp.algebra.dim() == w.order() * n, format!("{name}: dimension"))?;
        ensure(validate_algebra(&cp.algebra).is_valid(), format!("{name}: associativity"))?;
        let e = w.identity_index();
        let cinv = w.algebra.invert_element(w.c(e, e)).unwrap();
        let mut unit = cp.algebra.zero_vector();
        unit[e * n..(e + 1) * n].clone_from_slice(&cinv);
        ensure(cp.algebra.unit() == unit.as_slice(), format!("{name}: identity element"))?;
        within(t, Duration::from_secs(1), name)?;
    }
    let cp = crossed_product(&corpus::swap_c2(13)).unwrap();
    let zdim = center(&cp.algebra).len();
    let simples: Vec<usize> = k0_basis(&cp.algebra, &cfg()).map_err(|e| e.to_string())?.simples.iter().map(|s| s.dim).collect();
    ensure(zdim == 1 && simples == [2], format!("swap: center {zdim}, simples {simples:?}"))?;
    Ok(format!("{} crossed products; swap: center dim 1, simple dims [2]", actions.len()))
}

fn c3_realization() -> Outcome {
    let mut pairs = 0;
    for (name, a) in two_actions() {
        let xs = a.default_probes(&cfg());
        let es = default_equivariant_probes(&a, &xs, &cfg());
        let cp = crossed_product(a.weak()).unwrap();
        let cms: Vec<ModuleRep> = es.iter().map(|e| to_crossed_module(&a, e)).collect();
        for (e, m) in es.iter().zip(&cms) {
            ensure(from_crossed_module(&a, &cp, m).as_ref() == Ok(e), format!("{name}: round trip"))?;
        }
        for i in 0..es.len() {
            for j in 0..es.len() {
                let d1 = hom_equivariant_direct(&a, &es[i], &es[j]).len();
                let d2 = cms[i].hom(&cp.algebra, &cms[j]).len();
                ensure(d1 == d2, format!("{name}: hom dims differ on ({i},{j}): {d1} vs {d2}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("round trips exact; {pairs} hom pairs agree"))
}

fn c4_monads() -> Outcome {
    let mut n = 0;
    for (name, a) in two_actions().into_iter().chain(bundled()) {
        let xs = a.default_probes(&cfg());
        let es = default_equivariant_probes(&a, &xs, &cfg());
        let adj = verify_adjunctions(&a, &xs, &es).map_err(|e| format!("{name}: {e}"))?;
        ensure(adj.passed(), format!("{name}: {:?}", adj.failures.first()))?;
        let m = verify_monad_laws(&a, &xs, &es);
        ensure(m.passed(), format!("{name}: {:?}", m.failures.first()))?;
        let dual = DualGroup::new(&a).map_err(|e| format!("{name}: {e}"))?;
        let iso = verify_monad_isomorphism(&a, &dual, &es).map_err(|e| format!("{name}: {e}"))?;
        ensure(iso.is_empty(), format!("{name}: {:?}", iso.first()))?;
        n += 1;
    }
    Ok(format!("{n} actions: adjunctions, split counit, monad laws, monad isomorphism"))
}

fn c5_theta() -> Outcome {
    let mut parts = Vec::new();
    for (name, a) in two_actions() {
        let dual = DualGroup::new(&a).map_err(|e| e.to_string())?;
        let xs = a.default_probes(&cfg());
        let es = default_equivariant_probes(&a, &xs, &cfg());
        let r = verify_theta_equivalence(&a, &dual, &xs, &es);
        ensure(r.passed(), format!("{name}: {:?}", r.failures.first()))?;
        ensure(r.hom_pairs == xs.len() * xs.len() && r.double_dual_checks > 0, format!("{name}: coverage"))?;
        ensure(r.density_objects > 0 && r.density_certified == r.density_objects, format!("{name}: density"))?;
        parts.push(format!("{} pairs/{} dense", r.hom_pairs, r.density_certified));
    }
    Ok(parts.join(", "))
}

fn c6_orbits() -> Outcome {
    let mut counts = Vec::new();
    for (name, a) in two_actions() {
        let dual = DualGroup::new(&a).map_err(|e| e.to_string())?;
        let simples = k0_basis(a.algebra(), &cfg()).map_err(|e| e.to_string())?.simples;
        let c = orbit_census(&a, &dual, &simples, &cfg()).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.counts_match(), format!("{name}: {} vs {}", c.orbits, c.dual_orbits))?;
        counts.push((c.orbits, c.dual_orbits));
    }
    ensure(counts == [(1, 1), (2, 2)], format!("counts {counts:?}"))?;
    let a = act(corpus::swap_c2(13));
    let simples = k0_basis(a.algebra(), &cfg()).map_err(|e| e.to_string())?.simples;
    let m = simples[0].direct_sum(&simples[1]);
    let mut alpha = find_stable_isos(&a, &m, &cfg()).map_err(|e| e.to_string())?.found().ok_or("stability undetermined")?;
    alpha[0] = a.unit_component(&m).inverse().unwrap();
    let r = end_ind_check(&a, &m, &alpha).map_err(|e| e.to_string())?;
    ensure(r.passed() && (r.end_ind_dim, r.crossed_dim) == (4, 4), format!("{r:?}"))?;
    Ok("swap 1 = 1, kC2 2 = 2, End(Ind(S1⊕S2)) ≅ End(S1⊕S2)∗C2 (dim 4)".into())
}

fn c7_obstruction() -> Outcome {
    let f5 = FieldSpec::Prime(5);
    let mut data = Vec::new();
    for (name, a) in bundled() {
        data.push((name, EquivariantFunctor::identity(&a), a.clone()));
        for g in 0..a.order() {
            data.push((name, EquivariantFunctor::twist(&a, g), a.clone()));
        }
    }
    let swap5 = act(corpus::swap_c2(5));
    let proj = projective_datum(&swap5, swap5.functor_map(1).clone(), sv(f5, &[1, 2]));
    data.push(("projective swap over F5", proj.clone(), swap5.clone()));
    for (name, d, a) in &data {
        let probes = a.default_probes(&cfg());
        let s = obstruction_cocycle(a, d, &probes).map_err(|e| format!("{name}: {e}"))?;
        ensure(is_2cocycle(&s), format!("{name}: not a cocycle"))?;
        let field = a.algebra().field();
        let lambda: Vec<Scalar> = (0..a.order()).map(|i| Scalar::from_i64(field, 2 + i as i64)).collect();
        ensure(gauge_covariant(a, d, &lambda, &probes).map_err(|e| e.to_string())?, format!("{name}: gauge"))?;
    }
    // Twist functors have trivial class and a verified lift.
    for (name, a) in bundled() {
        let probes = a.default_probes(&cfg());
        for g in 0..a.order() {
            let r = obstruction_class(&a, &EquivariantFunctor::twist(&a, g), &probes).map_err(|e| format!("{name}: {e}"))?;
            match r.class {
                ObstructionClass::Trivial { lift, .. } => {
                    ensure(lift.validate(&a, &probes).map_err(|e| e.to_string())?.is_empty(), format!("{name}: lift"))?;
                }
                ObstructionClass::Nontrivial => return Err(format!("{name}: twist by {g} is nontrivial")),
            }
        }
    }
    let probes = swap5.default_probes(&cfg());
    let r = obstruction_class(&swap5, &proj, &probes).map_err(|e| e.to_string())?;
    ensure(r.class == ObstructionClass::Nontrivial, "projective case is trivial")?;
    let (tried, found) = exhaustive_coboundary_search(&r.cocycle).ok_or("no exhaustive search")?;
    ensure(tried == 16 && found.is_none(), format!("exhaustive search: {tried} tried, found {}", found.is_some()))?;
    let out = dispatch(["equiv-alg", "obstruction", "--in", "proj_comm_f5.json"]);
    ensure(out.code == 0 && out.stdout.contains("nontrivial class"), "CLI report")?;
    Ok(format!("{} data cocycle + gauge; twists lift; F5 case nontrivial, 16/16 candidates fail", data.len()))
}

fn c8_tubular() -> Outcome {
    let t = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out_dir = dir.path().to_str().unwrap().to_string();
    let out = dispatch(["equiv-alg", "tubular", "--check-table1", "--field", "prime:13", "--bound", "8", "--out", &out_dir]);
    ensure(out.code == 0, format!("tubular exit {}: {}", out.code, out.stderr))?;
    let rep: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let rows = rep["result"]["automorphisms"].as_array().ok_or("no rows")?;
    // F13: √−1 = 5, ε = 4, ε² = 3, −1 = 12.
    let expected = [("g1", 2, vec![12, 1, 1, 1]), ("g2", 3, vec![5, 5, 5, 5]), ("g3", 2, vec![1, 1, 3])];
    ensure(rows.len() == 3, "three automorphisms")?;
    for (row, (name, m, gamma)) in rows.iter().zip(&expected) {
        ensure(row["name"] == *name && row["m"] == *m, format!("{name}: m = {}", row["m"]))?;
        ensure(row["gamma"] == serde_json::json!(gamma), format!("{name}: γ = {}", row["gamma"]))?;
        let file = row["written"].as_str().ok_or("no file")?;
        let v = dispatch(["equiv-alg", "validate-action", "--in", file]);
        ensure(v.code == 0, format!("{file} does not validate"))?;
    }
    for c in rep["checks"].as_array().unwrap() {
        ensure(c["pass"] == true, format!("{}", c["name"]))?;
    }
    within(t, Duration::from_secs(30), "tubular check")?;
    Ok("g1²=γ(−1,1,1,1), g2³=√−1, g3²=(1,1,ε²); 3 weak-action files validate".into())
}

fn c9_k0() -> Outcome {
    let swap = k0_action(&act(corpus::swap_c2(13)), &cfg()).map_err(|e| e.to_string())?;
    ensure(swap.perms == [vec![1, 0]], format!("swap permutation {:?}", swap.perms))?;
    let triv = k0_action(&act(corpus::trivial_kk_c2(13)), &cfg()).map_err(|e| e.to_string())?;
    ensure(triv.is_trivial() && triv.perms.len() == 1, format!("trivial permutation {:?}", triv.perms))?;
    ensure(validate_weak_action(&corpus::trivial_kk_c2(13)).is_valid(), "trivial action")?;
    Ok("swap: transposition of [P1],[P2]; trivial: identity".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("weak-action identity suite", c1_identities),
        ("crossed products", c2_crossed_products),
        ("crossed-product realization", c3_realization),
        ("monad machinery", c4_monads),
        ("duality on probes", c5_theta),
        ("orbit counts and End(Ind M)", c6_orbits),
        ("obstruction cocycle", c7_obstruction),
        ("tubular automorphisms", c8_tubular),
        ("K0 action", c9_k0),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match r {
            Ok(msg) => println!("criterion {}: PASS  {name} ({ms} ms): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({ms} ms): {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! The bundled example files, embedded so `--in swap_c2.json` works from
//! any directory.

use equiv_core::action::{crossed_product, ModuleCategoryAction};
use equiv_core::algebra::{Algebra, AlgebraMap};
use equiv_core::corpus as lib;
use equiv_core::duality::EquivariantFunctor;
use equiv_core::obstruction::projective_datum;
use equiv_core::scalar::{FieldSpec, Scalar};
use serde_json::{json, Value};

use crate::io;

pub const FILES: &[(&str, &str)] = &[
    ("swap_c2.json", include_str!("../corpus/swap_c2.json")),
    ("twisted_c2_f5.json", include_str!("../corpus/twisted_c2_f5.json")),
    ("c3_perm_f13.json", include_str!("../corpus/c3_perm_f13.json")),
    ("trivial_kc2_f5.json", include_str!("../corpus/trivial_kc2_f5.json")),
    ("klein_f5.json", include_str!("../corpus/klein_f5.json")),
    ("kk_f13.json", include_str!("../corpus/kk_f13.json")),
    ("m2.json", include_str!("../corpus/m2.json")),
    ("proj_comm_f5.json", include_str!("../corpus/proj_comm_f5.json")),
    ("twist_c3_f13.json", include_str!("../corpus/twist_c3_f13.json")),
    ("sigma_swap_f13.json", include_str!("../corpus/sigma_swap_f13.json")),
];

pub fn lookup(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// The corpus regenerated from the library constructors.
pub fn generate() -> Vec<(&'static str, Value)> {
    let f13 = FieldSpec::Prime(13);
    let swap = lib::swap_c2(13);
    let m2 = crossed_product(&swap).expect("valid").algebra;

    let swap5 = ModuleCategoryAction::new(lib::swap_c2(5)).expect("valid");
    let sigma = swap5.functor_map(1).clone();
    let u = vec![Scalar::from_i64(FieldSpec::Prime(5), 1), Scalar::from_i64(FieldSpec::Prime(5), 2)];
    let proj = projective_datum(&swap5, sigma, u);

    let c3 = ModuleCategoryAction::new(lib::c3_permutation(13)).expect("valid");
    let twist = EquivariantFunctor::twist(&c3, 1);

    let kk = Algebra::product_of_fields(f13, 2);
    let swap_map = AlgebraMap::permutation(&kk, &[1, 0]);
    vec![
        ("swap_c2.json", io::weak_action_json(&swap)),
        ("twisted_c2_f5.json", io::weak_action_json(&lib::twisted_c2_f5())),
        ("c3_perm_f13.json", io::weak_action_json(&lib::c3_permutation(13))),
        ("trivial_kc2_f5.json", io::weak_action_json(&lib::trivial_kc2(5))),
        ("klein_f5.json", io::weak_action_json(&lib::klein_regular(5))),
        ("kk_f13.json", io::algebra_json(&kk)),
        ("m2.json", io::algebra_json(&m2)),
        ("proj_comm_f5.json", io::functor_json(swap5.weak(), &proj)),
        ("twist_c3_f13.json", io::functor_json(c3.weak(), &twist)),
        (
            "sigma_swap_f13.json",
            json!({
                "field": io::field_json(f13),
                "algebra": io::algebra_json(&kk),
                "sigma": io::matrix_json(&swap_map.matrix),
                "d": 2,
            }),
        ),
    ]
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

//! Text and JSON forms round-trip exactly.

use nivat_core::sft::{decide, Budget, Decision, SftSpec};
use nivat_core::{CoefficientDomain, Exp, LaurentPoly, Patch, Shape, Source, TorusConfig};
use proptest::prelude::*;

fn domain() -> impl Strategy<Value = CoefficientDomain> {
    prop_oneof![
        Just(CoefficientDomain::Integers),
        Just(CoefficientDomain::Rationals),
        Just(CoefficientDomain::PrimeField(2)),
        Just(CoefficientDomain::PrimeField(5)),
    ]
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (domain(), prop::collection::vec(((-3i64..=3, -3i64..=3), -9i64..=9), 0..6))
        .prop_map(|(d, terms)| LaurentPoly::from_int_terms(d, terms))
}

proptest! {
    #[test]
    fn poly_json_round_trip(f in poly()) {
        let text = serde_json::to_string(&f).unwrap();
        let back: LaurentPoly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn poly_text_round_trip(f in poly()) {
        let back = LaurentPoly::parse(&f.to_string(), f.domain()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn source_json_round_trip(
        rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..4),
        ox in -3i64..=3,
        oy in -3i64..=3,
        torus in any::<bool>(),
    ) {
        let s = if torus {
            Source::Torus(TorusConfig::from_rows(&rows, None).unwrap())
        } else {
            Source::Patch(Patch::from_rows(Exp::new(ox, oy), &rows, None).unwrap())
        };
        let text = serde_json::to_string(&s).unwrap();
        let back: Source = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn rational_coefficients_keep_their_form() {
    let q = CoefficientDomain::Rationals;
    let f = LaurentPoly::parse("1/2*x^-1 - 3/4*y + 2", q).unwrap();
    let v = serde_json::to_value(&f).unwrap();
    assert_eq!(v["domain"], "Q");
    assert_eq!(v["terms"][0], serde_json::json!([-1, 0, "1/2"]));
    let back: LaurentPoly = serde_json::from_value(v).unwrap();
    assert_eq!(back, f);
}

#[test]
fn spec_and_decision_round_trip() {
    let spec = SftSpec::new(Shape::rect(2, 1).unwrap(), [0, 1], [vec![0, 1], vec![1, 0]]).unwrap();
    let text = serde_json::to_string(&spec).unwrap();
    assert!(text.contains("\"low_complexity\":true"));
    let back: SftSpec = serde_json::from_str(&text).unwrap();
    assert_eq!(back, spec);

    let out = decide(&spec, Budget::default());
    let Decision::Nonempty { witness } = &out.decision else { panic!("{:?}", out.decision) };
    assert!(spec.accepts(witness));
    let text = serde_json::to_string(&out).unwrap();
    let back: nivat_core::sft::DecideOutcome = serde_json::from_str(&text).unwrap();
    assert_eq!(back, out);
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(serde_json::from_str::<Shape>("[]").is_err());
    assert!(serde_json::from_str::<TorusConfig>(r#"{"kind":"torus","rows":[[0,1],[0]]}"#).is_err());
    assert!(serde_json::from_str::<TorusConfig>(r#"{"kind":"patch","rows":[[0]]}"#).is_err());
    assert!(serde_json::from_str::<LaurentPoly>(r#"{"domain":"F4","terms":[]}"#).is_err());
    assert!(serde_json::from_str::<SftSpec>(r#"{"shape":[[0,0]],"alphabet":[0],"allowed":[[0,0]]}"#).is_err());
}

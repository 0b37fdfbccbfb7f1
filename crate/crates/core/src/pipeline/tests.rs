use serde_json::json;

use super::*;
use crate::burnside::{subgroup_of_index, BurnsideElement, ExtBurnsideElement};
use crate::lattice::FiniteDiagonalGroup;
use crate::qhpoly::ExtendedGroup;

fn problem_json(value: serde_json::Value) -> String {
    value.to_string()
}

fn cusp(group: &str) -> String {
    problem_json(json!({
        "variables": ["x", "y"],
        "terms": [{"exps": [2, 0], "coeff": "1"}, {"exps": [0, 3], "coeff": 1}],
        "group": {"kind": group},
    }))
}

fn analysis_of(text: &str) -> Analysis {
    let problem = ProblemSpec::from_json(text).unwrap().resolve().unwrap();
    analyze(problem, &Config::default()).unwrap()
}

#[test]
fn e8_analysis() {
    let text = problem_json(json!({
        "variables": ["x", "y", "z"],
        "terms": [{"exps": [2, 0, 0]}, {"exps": [0, 3, 0]}, {"exps": [0, 0, 5]}],
    }));
    let out = run(Command::Analyze, &text, &Config::default());
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(out.json["weights"]["q"], json!([15, 10, 6]));
    assert_eq!(out.json["weights"]["d"], json!(30));
    assert_eq!(
        out.json["groups"]["symmetry"]["subgroup"]["order"],
        json!(30)
    );
    assert_eq!(
        out.json["groups"]["monodromy"],
        json!(["1/2", "1/3", "1/5"])
    );
    assert_eq!(out.json["strata"]["milnor_fibre_chi"], json!(9));
}

#[test]
fn power_analysis() {
    let out = run(
        Command::Analyze,
        &problem_json(json!({"variables": ["x"], "terms": [{"exps": [5]}]})),
        &Config::default(),
    );
    assert_eq!(
        out.json["weights"],
        json!({"q": [1], "d": 5, "primitive": true})
    );
    assert_eq!(
        out.json["groups"]["symmetry"]["subgroup"]["order"],
        json!(5)
    );
    assert_eq!(
        out.json["poincare"]["specialized"],
        json!([1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0])
    );
}

#[test]
fn exit_codes() {
    let degenerate =
        problem_json(json!({"variables": ["x"], "terms": [{"exps": [3]}, {"exps": [2]}]}));
    assert_eq!(
        run(Command::Analyze, &degenerate, &Config::default()).exit_code,
        EXIT_UNSUPPORTED
    );
    assert_eq!(
        run(Command::Analyze, "{not json", &Config::default()).exit_code,
        EXIT_PARSE
    );
    let bad_arity = problem_json(json!({"variables": ["x", "y"], "terms": [{"exps": [3]}]}));
    assert_eq!(
        run(Command::Analyze, &bad_arity, &Config::default()).exit_code,
        EXIT_PARSE
    );
    let bad_coeff =
        problem_json(json!({"variables": ["x"], "terms": [{"exps": [3], "coeff": "1/0"}]}));
    assert_eq!(
        run(Command::Analyze, &bad_coeff, &Config::default()).exit_code,
        EXIT_PARSE
    );
    let unknown = problem_json(json!({"variables": ["x"], "terms": [{"exps": [3]}], "colour": 1}));
    assert_eq!(
        run(Command::Analyze, &unknown, &Config::default()).exit_code,
        EXIT_PARSE
    );
    let out = run(
        Command::Classical,
        &cusp("full-symmetry"),
        &Config::default(),
    );
    assert_eq!(out.exit_code, EXIT_OK, "G_f = <h> for the cusp");
    let fermat = problem_json(
        json!({"variables": ["x", "y"], "terms": [{"exps": [3, 0]}, {"exps": [0, 3]}]}),
    );
    assert_eq!(
        run(Command::Classical, &fermat, &Config::default()).exit_code,
        EXIT_UNSUPPORTED
    );
}

#[test]
fn generator_groups() {
    let with = |gens: serde_json::Value| {
        problem_json(json!({
            "variables": ["x", "y"],
            "terms": [{"exps": [3, 0]}, {"exps": [0, 3]}],
            "group": {"kind": "generators", "generators": gens},
        }))
    };
    let ok = run(
        Command::Verify,
        &with(json!([["1/3", "1/3"], ["1/3", "0"]])),
        &Config::default(),
    );
    assert_eq!(ok.exit_code, EXIT_OK);
    assert_eq!(ok.json["groups"]["selected"]["subgroup"]["order"], json!(9));
    // not a symmetry of f
    let bad = run(
        Command::Verify,
        &with(json!([["1/2", "0"]])),
        &Config::default(),
    );
    assert_eq!(bad.exit_code, EXIT_UNSUPPORTED);
    // misses the monodromy
    let small = run(
        Command::Verify,
        &with(json!([["1/3", "0"]])),
        &Config::default(),
    );
    assert_eq!(small.exit_code, EXIT_UNSUPPORTED);
}

#[test]
fn cusp_verification_by_hand() {
    let a = analysis_of(&cusp("monodromy-cyclic"));
    let ext = ExtendedGroup::torus(a.problem.poly.weights().clone());
    let g = ext.finite_part().clone();
    let mu = |m: i64| {
        FiniteDiagonalGroup::generated_by(
            2,
            &[a.problem
                .poly
                .weights()
                .line_point(&crate::arith::rat(1, m))],
        )
        .unwrap()
    };
    let tau_log = [(mu(3), 1), (mu(2), 1), (mu(6), -1)]
        .into_iter()
        .try_fold(ExtBurnsideElement::zero(&ext), |acc, (h, c)| {
            acc.with_term(h, c)
        })
        .unwrap();
    assert_eq!(a.tau_log, tau_log);
    let or = ExtBurnsideElement::orbit(&ext, &FiniteDiagonalGroup::trivial(2)).unwrap();
    assert_eq!(a.orbit, or);
    let zeta = BurnsideElement::from_terms(
        &g,
        [
            (subgroup_of_index(&g, 2).unwrap(), 1),
            (subgroup_of_index(&g, 3).unwrap(), 1),
            (FiniteDiagonalGroup::trivial(2), -1),
        ],
    )
    .unwrap();
    assert_eq!(a.zeta.as_ref().unwrap(), &zeta);
    let v = a.verify().unwrap();
    assert_eq!(v.lhs, tau_log.sub(&or).unwrap());
    assert!(v.ok && v.secondary_ok && v.independent);
    let c = a.classical().unwrap();
    assert_eq!(c.zeta.to_string(), "(1-t^2)(1-t^3)/(1-t^6)");
    assert_eq!(c.orbit_series.to_string(), "(1-t)");
}

#[test]
fn power_verification_by_hand() {
    for d in [2, 5] {
        let a = analysis_of(&problem_json(
            json!({"variables": ["x"], "terms": [{"exps": [d]}], "group": {"kind": "monodromy-cyclic"}}),
        ));
        let ext = a.problem.ext.clone();
        let expected = ExtBurnsideElement::orbit(&ext, &FiniteDiagonalGroup::trivial(1))
            .unwrap()
            .sub(&ExtBurnsideElement::orbit(&ext, a.problem.group()).unwrap())
            .unwrap();
        assert_eq!(a.tau_log, expected);
        assert!(a.orbit.is_zero());
        let v = a.verify().unwrap();
        assert_eq!(v.rhs.unwrap(), expected);
        let c = a.classical().unwrap();
        assert_eq!(c.zeta.to_string(), format!("(1-t^{d})"));
        assert_eq!(c.zeta_reduced.to_string(), format!("(1-t^{d})/(1-t)"));
    }
}

#[test]
fn corrupted_override_breaks_identity() {
    let text = problem_json(json!({
        "variables": ["x", "y"],
        "terms": [{"exps": [2, 0]}, {"exps": [0, 3]}],
        "group": {"kind": "monodromy-cyclic"},
        "overrides": {"chi_y": [{"set": [1, 2], "value": 2}]},
    }));
    let out = run(Command::Verify, &text, &Config::default());
    assert_eq!(out.exit_code, EXIT_IDENTITY_VIOLATED);
    assert_eq!(out.json["verification"]["independent"], json!(false));

    let honest = text.replace("\"value\":2", "\"value\":1");
    let out = run(Command::Verify, &honest, &Config::default());
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(out.json["verification"]["independent"], json!(false));

    let non_integral = text
        .replace("chi_y", "chi_v")
        .replace("\"value\":2", "\"value\":-5");
    let out = run(Command::Verify, &non_integral, &Config::default());
    assert_eq!(out.exit_code, EXIT_IDENTITY_VIOLATED);
    assert!(out.json["verification"]["failure"]
        .as_str()
        .unwrap()
        .contains("non-integral"));
}

#[test]
fn truncation_override_and_resource_limit() {
    let mut config = Config {
        truncation: Some(4),
        ..Config::default()
    };
    let out = run(Command::Analyze, &cusp("full-symmetry"), &config);
    assert_eq!(out.json["poincare"]["truncation"], json!(4));
    assert_eq!(out.json["poincare"]["log_check_complete"], json!(false));
    config.truncation = None;
    config.monomial_limit = 3;
    assert_eq!(
        run(Command::Analyze, &cusp("full-symmetry"), &config).exit_code,
        EXIT_UNSUPPORTED
    );
}

#[test]
fn output_is_deterministic() {
    let a = run(Command::Verify, &cusp("full-symmetry"), &Config::default());
    let b = run(Command::Verify, &cusp("full-symmetry"), &Config::default());
    let (sa, sb) = (
        serde_json::to_string(&a.json).unwrap(),
        serde_json::to_string(&b.json).unwrap(),
    );
    assert_eq!(sa, sb);
    let keys: Vec<&String> = a.json.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn corpus_passes() {
    let out = run_corpus(&Config::default());
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.text);
    assert_eq!(
        out.json["entries"].as_array().unwrap().len(),
        2 * corpus().len()
    );
}

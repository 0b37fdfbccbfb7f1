//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use equizeta_core::arith::rat;
use equizeta_core::burnside::{
    subgroup_of_index, to_cyclotomic, BurnsideElement, CyclotomicFunction, ExtBurnsideElement,
};
use equizeta_core::lattice::{FiniteDiagonalGroup, TorsionVector};
use equizeta_core::pipeline::report::ext_burnside;
use equizeta_core::pipeline::{
    analyze, corpus, run, Command, Config, GroupSpec, ProblemSpec, EXIT_IDENTITY_VIOLATED, EXIT_OK,
};
use equizeta_core::qhpoly::{ExtendedGroup, QuasiPolynomial};
use equizeta_core::repr::{
    exp_map, log_map, log_poincare, poincare_closed, poincare_counted, CharacterGroup,
    ExtCharacter, NegSeries, PoincareSpace,
};
use equizeta_core::strata::milnor::{
    milnor_algebra_dimension, milnor_number, MilnorAlgebra, DEFAULT_MONOMIAL_LIMIT,
};
use equizeta_core::strata::{ChiOverrides, StrataChi};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn poly(n: usize, support: &[Vec<u32>]) -> QuasiPolynomial {
    QuasiPolynomial::from_support(n, support).unwrap()
}

fn corpus_polys() -> Vec<(String, QuasiPolynomial)> {
    corpus()
        .into_iter()
        .map(|s| {
            let p = s.resolve().unwrap().poly;
            (s.name.unwrap(), p)
        })
        .collect()
}

fn both_groups(p: &QuasiPolynomial) -> Vec<ExtendedGroup> {
    vec![
        ExtendedGroup::new(p.weights().clone(), p.symmetry_group().unwrap()).unwrap(),
        ExtendedGroup::torus(p.weights().clone()),
    ]
}

fn with_group(spec: &ProblemSpec, group: GroupSpec) -> ProblemSpec {
    ProblemSpec {
        group,
        ..spec.clone()
    }
}

fn main_identity() -> Check {
    let start = Instant::now();
    let mut runs = 0;
    for spec in corpus() {
        for group in [GroupSpec::FullSymmetry, GroupSpec::MonodromyCyclic] {
            let s = with_group(&spec, group);
            let a = analyze(s.resolve().map_err(|e| e.to_string())?, &Config::default())
                .map_err(|e| e.to_string())?;
            let v = a.verify().map_err(|e| e.to_string())?;
            let rhs = v
                .rhs
                .as_ref()
                .ok_or_else(|| format!("{:?}: no zeta", s.name))?;
            let (l, r) = (
                ext_burnside(&v.lhs).to_string(),
                ext_burnside(rhs).to_string(),
            );
            ensure(
                l == r,
                format!("{:?} {}: {l} != {r}", s.name, s.group.label()),
            )?;
            ensure(
                v.residual.as_ref().is_some_and(|x| x.is_zero()),
                "non-zero residual",
            )?;
            runs += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, format!("corpus took {secs:.2} s"))?;
    Ok(format!("{runs} runs, residual 0, {secs:.2} s"))
}

fn cusp_by_hand() -> Check {
    let p = poly(2, &[vec![2, 0], vec![0, 3]]);
    let spec = ProblemSpec::from_json(
        &json!({"variables": ["x", "y"], "terms": [{"exps": [2, 0]}, {"exps": [0, 3]}], "group": {"kind": "monodromy-cyclic"}})
            .to_string(),
    )
    .unwrap();
    let a = analyze(spec.resolve().unwrap(), &Config::default()).unwrap();
    let ext = ExtendedGroup::torus(p.weights().clone());
    let g = ext.finite_part().clone();
    let e = FiniteDiagonalGroup::trivial(2);
    // μ_m ⊂ C* is generated by q/m
    let mu = |m: i64| {
        FiniteDiagonalGroup::generated_by(2, &[p.weights().line_point(&rat(1, m))]).unwrap()
    };
    let z3 =
        FiniteDiagonalGroup::generated_by(2, &[TorsionVector::from_fractions(&[(0, 1), (1, 3)])])
            .unwrap();
    let z2 =
        FiniteDiagonalGroup::generated_by(2, &[TorsionVector::from_fractions(&[(1, 2), (0, 1)])])
            .unwrap();
    ensure(
        z3 == subgroup_of_index(&g, 2).unwrap() && z2 == subgroup_of_index(&g, 3).unwrap(),
        "subgroup setup",
    )?;
    let zeta = BurnsideElement::from_terms(&g, [(z3, 1), (z2, 1), (e.clone(), -1)]).unwrap();
    ensure(
        a.zeta.as_ref().ok() == Some(&zeta),
        format!("zeta^G = {:?}", a.zeta),
    )?;
    ensure(
        a.orbit == ExtBurnsideElement::orbit(&ext, &e).unwrap(),
        format!("Or = {}", a.orbit),
    )?;
    let tau = ExtBurnsideElement::zero(&ext)
        .with_term(mu(3), 1)
        .and_then(|x| x.with_term(mu(2), 1))
        .and_then(|x| x.with_term(mu(6), -1))
        .unwrap();
    ensure(a.tau_log == tau, format!("Tau(Log P) = {}", a.tau_log))?;
    let cf = to_cyclotomic(&zeta).unwrap();
    ensure(
        cf == CyclotomicFunction::new(6, [(2, 1), (3, 1), (6, -1)]).unwrap(),
        cf.to_string(),
    )?;
    ensure(a.verify().unwrap().ok, "identity")?;
    Ok(format!(
        "zeta^G = {zeta}, Or = [C*/{{e}}], zeta_f(t) = {cf}"
    ))
}

fn power_family() -> Check {
    for d in [1u32, 2, 5] {
        let text = json!({"variables": ["x"], "terms": [{"exps": [d]}], "group": {"kind": "monodromy-cyclic"}}).to_string();
        let out = run(Command::Verify, &text, &Config::default());
        ensure(
            out.exit_code == EXIT_OK,
            format!("x^{d}: exit {}", out.exit_code),
        )?;
        let expected: Vec<i64> = (0..=12).map(|k| i64::from(k < d)).collect();
        ensure(
            out.json["poincare"]["specialized"] == json!(expected),
            format!("x^{d}: P_X"),
        )?;
        ensure(out.json["orbit"] == json!([]), format!("x^{d}: Or"))?;
        let zeta = if d == 1 {
            "(1-t)".to_string()
        } else {
            format!("(1-t^{d})")
        };
        ensure(
            out.json["zeta"]["cyclotomic"]["text"] == json!(zeta),
            format!("x^{d}: zeta"),
        )?;
        ensure(
            out.json["verification"]["residual"] == json!([]),
            format!("x^{d}: residual"),
        )?;
    }
    Ok("d = 1, 2, 5".into())
}

fn route_independence() -> Check {
    let mut compared = 0;
    for (name, p) in corpus_polys() {
        for ext in both_groups(&p) {
            let strata =
                StrataChi::compute(&p, &ext, &ChiOverrides::default(), DEFAULT_MONOMIAL_LIMIT)
                    .unwrap();
            for s in strata.iter() {
                if let (Some(a), Some(b)) = (s.chi_v_milnor, s.chi_v_polytope) {
                    ensure(a == b, format!("{name} {:?}: {a} vs {b}", s.coords))?;
                    compared += 1;
                }
            }
        }
    }
    let cusp = poly(2, &[vec![2, 0], vec![0, 3]]);
    let strata = StrataChi::compute(
        &cusp,
        &both_groups(&cusp)[1],
        &ChiOverrides::default(),
        DEFAULT_MONOMIAL_LIMIT,
    )
    .unwrap();
    let big = strata.get(&[0, 1]).unwrap();
    ensure(
        big.chi_v_milnor == Some(-6) && big.chi_v_polytope == Some(-6),
        "cusp big torus",
    )?;
    let cases = [
        (poly(3, &[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]), 8),
        (cusp, 2),
        (poly(2, &[vec![2, 1], vec![0, 2]]), 3),
    ];
    for (p, mu) in cases {
        ensure(
            milnor_number(&p) == rat(mu, 1),
            format!("weight formula for {p}"),
        )?;
        ensure(
            milnor_algebra_dimension(&p, DEFAULT_MONOMIAL_LIMIT).unwrap()
                == MilnorAlgebra::Finite(mu as u64),
            format!("Milnor algebra of {p}"),
        )?;
    }
    Ok(format!("{compared} strata agree; mu = 8, 2, 3"))
}

fn all_subgroups(g: &FiniteDiagonalGroup) -> Vec<FiniteDiagonalGroup> {
    let elems = g.elements();
    let mut out = BTreeSet::new();
    for a in &elems {
        for b in &elems {
            out.insert(
                FiniteDiagonalGroup::generated_by(g.dim(), &[a.clone(), b.clone()]).unwrap(),
            );
        }
    }
    out.into_iter().collect()
}

fn coset(x: &TorsionVector, h: &FiniteDiagonalGroup) -> TorsionVector {
    h.elements()
        .iter()
        .map(|y| x.add(y).unwrap())
        .min()
        .unwrap()
}

/// `[G/H]·[G/K]` by listing the orbits of `G` on `G/H × G/K`.
fn product_by_enumeration(
    g: &FiniteDiagonalGroup,
    h: &FiniteDiagonalGroup,
    k: &FiniteDiagonalGroup,
) -> BurnsideElement {
    let elems = g.elements();
    let ch: BTreeSet<_> = elems.iter().map(|x| coset(x, h)).collect();
    let ck: BTreeSet<_> = elems.iter().map(|x| coset(x, k)).collect();
    let act = |(a, b): &(TorsionVector, TorsionVector), x: &TorsionVector| {
        (coset(&a.add(x).unwrap(), h), coset(&b.add(x).unwrap(), k))
    };
    let mut seen = BTreeSet::new();
    let mut census: BTreeMap<FiniteDiagonalGroup, i64> = BTreeMap::new();
    for a in &ch {
        for b in &ck {
            let pt = (a.clone(), b.clone());
            if seen.contains(&pt) {
                continue;
            }
            for x in &elems {
                seen.insert(act(&pt, x));
            }
            let stab: Vec<_> = elems
                .iter()
                .filter(|x| act(&pt, x) == pt)
                .cloned()
                .collect();
            *census
                .entry(FiniteDiagonalGroup::generated_by(g.dim(), &stab).unwrap())
                .or_insert(0) += 1;
        }
    }
    BurnsideElement::from_terms(g, census).unwrap()
}

fn random_burnside(
    g: &FiniteDiagonalGroup,
    subs: &[FiniteDiagonalGroup],
    rng: &mut StdRng,
) -> BurnsideElement {
    let terms: Vec<_> = (0..rng.gen_range(1..5))
        .map(|_| {
            (
                subs[rng.gen_range(0..subs.len())].clone(),
                rng.gen_range(-4..=4),
            )
        })
        .collect();
    BurnsideElement::from_terms(g, terms).unwrap()
}

fn random_series(group: &CharacterGroup, rng: &mut StdRng) -> NegSeries {
    let all = group.ext().finite_part().characters();
    let terms: Vec<(ExtCharacter, i64)> = (0..rng.gen_range(1..6))
        .filter_map(|_| {
            let k = -rng.gen_range(1..=12);
            let options: Vec<_> = all
                .iter()
                .filter_map(|chi| group.character(k, chi.clone()).ok())
                .collect();
            (!options.is_empty()).then(|| {
                (
                    options[rng.gen_range(0..options.len())].clone(),
                    rng.gen_range(-3..=3),
                )
            })
        })
        .collect();
    NegSeries::from_terms(12, terms).unwrap()
}

fn char_product(
    g: &FiniteDiagonalGroup,
    a: &BTreeMap<Vec<BigInt>, i64>,
    b: &BTreeMap<Vec<BigInt>, i64>,
) -> BTreeMap<Vec<BigInt>, i64> {
    let mut out = BTreeMap::new();
    for (x, m) in a {
        for (y, n) in b {
            let z: Vec<BigInt> = x
                .iter()
                .zip(y)
                .zip(g.invariant_factors())
                .map(|((p, q), f)| (p + q) % f)
                .collect();
            *out.entry(z).or_insert(0) += m * n;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn algebraic_laws() -> Check {
    let mut rng = StdRng::seed_from_u64(2024);
    let e8 = poly(3, &[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]);
    let fermat = poly(2, &[vec![3, 0], vec![0, 3]]);
    let char_groups: Vec<CharacterGroup> = both_groups(&e8)
        .iter()
        .chain(both_groups(&fermat).iter())
        .map(CharacterGroup::new)
        .collect();
    for i in 0..100 {
        let g = &char_groups[i % char_groups.len()];
        let s = random_series(g, &mut rng);
        let e = exp_map(&s, g).map_err(|e| e.to_string())?;
        ensure(
            log_map(&e, g).map_err(|e| e.to_string())? == s,
            "Log(Exp s) != s",
        )?;
        ensure(
            exp_map(&log_map(&e, g).unwrap(), g).unwrap() == e,
            "Exp(Log p) != p",
        )?;
    }

    let ext = both_groups(&fermat)[0].clone();
    let gf = ext.finite_part().clone();
    let subs = all_subgroups(&gf);
    for _ in 0..100 {
        let x = random_burnside(&gf, &subs, &mut rng);
        ensure(
            x.ind_ext(&ext).unwrap().red().unwrap() == x,
            "red . ind_ext != id",
        )?;
    }

    let cyclic = |d: i64| {
        FiniteDiagonalGroup::generated_by(1, &[TorsionVector::from_fractions(&[(1, d)])]).unwrap()
    };
    let z2z4 = FiniteDiagonalGroup::generated_by(
        2,
        &[
            TorsionVector::from_fractions(&[(1, 2), (0, 1)]),
            TorsionVector::from_fractions(&[(0, 1), (1, 4)]),
        ],
    )
    .unwrap();
    let mut products = 0;
    for g in [cyclic(6), z2z4.clone(), cyclic(30)] {
        let subs = all_subgroups(&g);
        for h in &subs {
            for k in &subs {
                let lhs = BurnsideElement::orbit(&g, h)
                    .unwrap()
                    .multiply(&BurnsideElement::orbit(&g, k).unwrap())
                    .unwrap();
                ensure(
                    lhs == product_by_enumeration(&g, h, k),
                    format!("[{g}/{h}]*[{g}/{k}]"),
                )?;
                products += 1;
            }
        }
    }

    for i in 0..50 {
        let g = if i % 2 == 0 { z2z4.clone() } else { cyclic(30) };
        let subs = all_subgroups(&g);
        let a = random_burnside(&g, &subs, &mut rng);
        let b = random_burnside(&g, &subs, &mut rng);
        let lhs = a.multiply(&b).unwrap().to_repr_ring();
        ensure(
            lhs == char_product(&g, &a.to_repr_ring(), &b.to_repr_ring()),
            "to_repr_ring not multiplicative",
        )?;
    }
    Ok(format!(
        "100 Exp/Log, 100 red/ind, {products} products, 50 repr pairs"
    ))
}

fn proposition() -> Check {
    let mut runs = 0;
    for (name, p) in corpus_polys() {
        for ext in both_groups(&p) {
            let g = CharacterGroup::new(&ext);
            let counted = poincare_counted(
                PoincareSpace::Hypersurface,
                &p,
                &g,
                12,
                DEFAULT_MONOMIAL_LIMIT,
            )
            .unwrap();
            ensure(
                poincare_closed(&p, &g).expand(&g, 12) == counted,
                format!("{name}: closed form"),
            )?;
            let log = log_map(&counted, &g).unwrap();
            ensure(
                log == log_poincare(&p, &g).to_series(12).unwrap(),
                format!("{name}: Log P"),
            )?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs at D = 12"))
}

fn classical_consistency() -> Check {
    let mut e8_sum = None;
    for (name, p) in corpus_polys() {
        let MilnorAlgebra::Finite(mu) =
            milnor_algebra_dimension(&p, DEFAULT_MONOMIAL_LIMIT).unwrap()
        else {
            continue;
        };
        ensure(
            milnor_number(&p) == rat(mu as i64, 1),
            format!("{name}: mu"),
        )?;
        let ext = ExtendedGroup::torus(p.weights().clone());
        let strata =
            StrataChi::compute(&p, &ext, &ChiOverrides::default(), DEFAULT_MONOMIAL_LIMIT).unwrap();
        let zeta = equizeta_core::burnside::zeta_equivariant(
            &strata,
            ext.finite_part(),
            &p.monodromy_element(),
        )
        .map_err(|e| format!("{name}: {e}"))?;
        let cf = to_cyclotomic(&zeta).unwrap();
        let n = p.dim() as i64;
        let chi = 1 + if n % 2 == 1 { mu as i64 } else { -(mu as i64) };
        ensure(
            cf.degree() == chi,
            format!("{name}: sum m s_m = {} != {chi}", cf.degree()),
        )?;
        let d = p.weights().d();
        ensure(
            cf.exponents().keys().all(|m| d % m == 0),
            format!("{name}: index"),
        )?;
        if name == "x^2+y^3+z^5" {
            e8_sum = Some(cf.degree());
        }
    }
    ensure(e8_sum == Some(9), format!("E8 sum {e8_sum:?}"))?;
    Ok("sum m*s_m = chi(V_f) corpus-wide, E8: 9".into())
}

fn classical_relation() -> Check {
    let calibration = ["x^2+y^3", "x^2y+y^2"];
    let mut others = Vec::new();
    for spec in corpus() {
        let name = spec.name.clone().unwrap();
        let s = with_group(&spec, GroupSpec::MonodromyCyclic);
        let a = analyze(s.resolve().unwrap(), &Config::default()).unwrap();
        let c = a.classical().map_err(|e| e.to_string())?;
        let residual_zero = c.residual.iter().all(Zero::is_zero);
        if calibration.contains(&name.as_str()) {
            ensure(
                residual_zero,
                format!("calibration entry {name}: {:?}", c.residual),
            )?;
        } else if residual_zero {
            others.push(name);
        }
    }
    ensure(
        others.len() >= 2,
        format!("only {} other entries", others.len()),
    )?;
    Ok(format!(
        "calibration set plus {} further entries, degree 12",
        others.len()
    ))
}

fn negative_control() -> Check {
    let mut flips = 0;
    for (name, vars, support) in [
        ("x^2+y^3", vec!["x", "y"], vec![vec![2, 0], vec![0, 3]]),
        (
            "x^2+y^3+z^5",
            vec!["x", "y", "z"],
            vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]],
        ),
    ] {
        let terms: Vec<_> = support.iter().map(|e| json!({"exps": e})).collect();
        let base = json!({"variables": vars, "terms": terms, "group": {"kind": "full-symmetry"}});
        let a = analyze(
            ProblemSpec::from_json(&base.to_string())
                .unwrap()
                .resolve()
                .unwrap(),
            &Config::default(),
        )
        .unwrap();
        let entries: Vec<(String, Vec<usize>, i64)> = a
            .strata
            .iter()
            .flat_map(|s| {
                let set: Vec<usize> = s.coords.iter().map(|i| i + 1).collect();
                let mut v = vec![("chi_v".to_string(), set.clone(), s.chi_v)];
                if !set.is_empty() {
                    v.push(("chi_y".to_string(), set, s.chi_y));
                }
                v
            })
            .collect();
        let with_overrides = |bump: Option<usize>| {
            let mut chi_v = Vec::new();
            let mut chi_y = Vec::new();
            for (i, (kind, set, value)) in entries.iter().enumerate() {
                let value = if bump == Some(i) { value + 1 } else { *value };
                let e = json!({"set": set, "value": value});
                if kind == "chi_v" {
                    chi_v.push(e)
                } else {
                    chi_y.push(e)
                }
            }
            let mut spec = base.clone();
            spec["overrides"] = json!({"chi_v": chi_v, "chi_y": chi_y});
            run(Command::Verify, &spec.to_string(), &Config::default())
        };
        let honest = with_overrides(None);
        ensure(
            honest.exit_code == EXIT_OK,
            format!("{name}: honest overrides exit {}", honest.exit_code),
        )?;
        for (i, entry) in entries.iter().enumerate() {
            let out = with_overrides(Some(i));
            ensure(
                out.exit_code == EXIT_IDENTITY_VIOLATED,
                format!("{name}: corrupting {entry:?} gave exit {}", out.exit_code),
            )?;
            flips += 1;
        }
    }
    Ok(format!("{flips} single corruptions all exit 2"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("main identity over the corpus", main_identity),
        ("hand-computed cusp", cusp_by_hand),
        ("one-variable family x^d", power_family),
        (
            "independent Euler characteristic routes",
            route_independence,
        ),
        ("algebraic laws", algebraic_laws),
        ("Poincare series closed form and Log", proposition),
        ("classical degree consistency", classical_consistency),
        ("classical relation with Saito dual", classical_relation),
        ("negative control", negative_control),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {}: PASS  {label} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {label} ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! JSON and plain-text renderings. JSON objects use sorted keys, so output is
//! byte-for-byte reproducible.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::burnside::{BurnsideElement, CyclotomicFunction, ExtBurnsideElement};
use crate::lattice::{FiniteDiagonalGroup, TorsionVector};
use crate::repr::{ExtCharacter, FiniteRepElement, NegSeries};
use crate::strata::to_one_based;

use super::analysis::{Analysis, ClassicalReport, VerificationReport};
use super::problem::Problem;

fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn element(x: &TorsionVector) -> Value {
    Value::Array(
        x.coords()
            .iter()
            .map(|c| json!(crate::arith::format_rational(c)))
            .collect(),
    )
}

pub fn subgroup(h: &FiniteDiagonalGroup) -> Value {
    json!({
        "N": big(h.modulus()),
        "basis": h.basis().iter().map(|row| row.iter().map(big).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "label": h.label(),
        "order": big(h.order()),
    })
}

fn group_summary(g: &FiniteDiagonalGroup) -> Value {
    json!({
        "generators": g.generators().iter().map(element).collect::<Vec<_>>(),
        "invariant_factors": g.invariant_factors().iter().map(big).collect::<Vec<_>>(),
        "subgroup": subgroup(g),
    })
}

pub fn burnside(a: &BurnsideElement) -> Value {
    Value::Array(
        a.terms()
            .map(|(h, c)| json!({ "coeff": c, "subgroup": subgroup(h) }))
            .collect(),
    )
}

pub fn ext_burnside(a: &ExtBurnsideElement) -> Value {
    Value::Array(
        a.terms()
            .map(|(h, c)| json!({ "coeff": c, "subgroup": subgroup(h) }))
            .collect(),
    )
}

fn character(a: &ExtCharacter) -> Value {
    json!({ "k": a.degree(), "chi": a.chi().iter().map(big).collect::<Vec<_>>() })
}

fn rep_terms<'a>(terms: impl Iterator<Item = (&'a ExtCharacter, i64)>) -> Value {
    Value::Array(
        terms
            .map(|(a, c)| json!({ "character": character(a), "coeff": c }))
            .collect(),
    )
}

fn series(s: &NegSeries) -> Value {
    rep_terms(s.terms())
}

fn rep(a: &FiniteRepElement) -> Value {
    rep_terms(a.terms())
}

fn cyclotomic(c: &CyclotomicFunction) -> Value {
    json!({
        "d": c.modulus(),
        "exponents": c.exponents().iter().map(|(m, s)| json!({ "m": m, "s": s })).collect::<Vec<_>>(),
        "text": c.to_string(),
    })
}

/// The sections shared by all single-problem commands.
pub fn analysis_json(a: &Analysis) -> Value {
    let p = &a.problem;
    let w = p.poly.weights();
    let strata: Vec<Value> = a
        .strata
        .iter()
        .map(|s| {
            let isotropy = p.group().coordinate_kernel(&s.coords).ok();
            let ext_isotropy = if s.coords.is_empty() {
                None
            } else {
                p.ext.coordinate_isotropy(&s.coords).ok()
            };
            json!({
                "set": to_one_based(&s.coords),
                "chi_v": s.chi_v,
                "chi_v_source": s.chi_v_source.to_string(),
                "chi_v_milnor": s.chi_v_milnor,
                "chi_v_polytope": s.chi_v_polytope,
                "chi_y": s.chi_y,
                "chi_y_source": s.chi_y_source.to_string(),
                "isotropy": isotropy.as_ref().map(subgroup),
                "ext_isotropy": ext_isotropy.as_ref().map(subgroup),
            })
        })
        .collect();
    let zeta = match &a.zeta {
        Ok(z) => json!({
            "equivariant": burnside(z),
            "reduced": burnside(&crate::burnside::reduced(z)),
            "cyclotomic": crate::burnside::to_cyclotomic(z).ok().map(|c| cyclotomic(&c)),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    json!({
        "problem": {
            "name": p.name,
            "polynomial": p.poly.format_with(&p.variables),
            "variables": p.variables,
            "group": p.group.label(),
        },
        "weights": {
            "q": w.q(),
            "d": w.d(),
            "primitive": w.is_primitive(),
        },
        "groups": {
            "symmetry": group_summary(&p.symmetry),
            "selected": group_summary(p.group()),
            "monodromy": element(&p.poly.monodromy_element()),
            "line_intersection": subgroup(&p.ext.line_intersection()),
        },
        "strata": {
            "entries": strata,
            "milnor_fibre_chi": a.strata.milnor_fibre_chi(),
            "routes_agree": a.strata.routes_agree(),
        },
        "poincare": {
            "truncation": a.depth,
            "counted": series(&a.poincare),
            "specialized": a.poincare.specialize(),
            "closed": {
                "numerator": a.closed.numerator.iter().map(character).collect::<Vec<_>>(),
                "denominator": a.closed.denominator.iter().map(character).collect::<Vec<_>>(),
            },
            "closed_matches_counted": a.closed_matches(),
            "log": rep(&a.log),
            "log_of_counted": series(&a.log_counted),
            "log_matches": a.corollary_holds(),
            "log_check_complete": a.corollary_complete(),
            "tau_log": ext_burnside(&a.tau_log),
        },
        "zeta": zeta,
        "orbit": ext_burnside(&a.orbit),
    })
}

pub fn verification_json(v: &VerificationReport) -> Value {
    json!({
        "lhs": ext_burnside(&v.lhs),
        "rhs": v.rhs.as_ref().map(ext_burnside),
        "residual": v.residual.as_ref().map(ext_burnside),
        "ok": v.ok,
        "secondary_ok": v.secondary_ok,
        "independent": v.independent,
        "provenance": v.provenance,
        "failure": v.failure,
    })
}

pub fn classical_json(c: &ClassicalReport) -> Value {
    json!({
        "d": c.d,
        "poincare": c.poincare,
        "poincare_closed": c.poincare_closed,
        "zeta": cyclotomic(&c.zeta),
        "zeta_reduced": cyclotomic(&c.zeta_reduced),
        "saito_dual": cyclotomic(&c.saito_dual),
        "orbit_series": cyclotomic(&c.orbit_series),
        "residual": c.residual,
        "ok": c.ok,
        "degree_sum": c.degree_sum,
        "milnor_fibre_chi": c.milnor_fibre_chi,
        "degree_ok": c.degree_ok(),
    })
}

/// `C*` when `Ḡ` is just the torus.
pub fn ambient_label(p: &Problem) -> &'static str {
    if p.is_monodromy_cyclic() {
        "C*"
    } else {
        "Ḡ"
    }
}

fn ext_text(a: &ExtBurnsideElement, ambient: &str) -> String {
    a.to_string().replace("Ḡ", ambient)
}

pub fn analysis_text(a: &Analysis) -> String {
    let p = &a.problem;
    let mut out = String::new();
    let ambient = ambient_label(p);
    let polynomial = p.poly.format_with(&p.variables);
    if p.name != polynomial {
        let _ = writeln!(out, "problem      {}", p.name);
    }
    let _ = writeln!(out, "polynomial   {polynomial}");
    let _ = writeln!(out, "weights      {}", p.poly.weights());
    let _ = writeln!(out, "monodromy    {}", p.poly.monodromy_element());
    let _ = writeln!(
        out,
        "G_f          {} (order {})",
        p.symmetry.label(),
        p.symmetry.order()
    );
    let _ = writeln!(
        out,
        "G            {} ({})",
        p.group().label(),
        p.group.label()
    );
    let _ = writeln!(
        out,
        "strata       {:<10} {:>6}  {:<18} {:>6}  source",
        "J", "chi_V", "source", "chi_Y"
    );
    let mut rows: Vec<_> = a.strata.iter().collect();
    rows.sort_by_key(|s| (s.coords.len(), s.coords.clone()));
    for s in rows {
        let set: Vec<String> = to_one_based(&s.coords)
            .iter()
            .map(ToString::to_string)
            .collect();
        let _ = writeln!(
            out,
            "             {:<10} {:>6}  {:<18} {:>6}  {}",
            format!("{{{}}}", set.join(",")),
            s.chi_v,
            s.chi_v_source.to_string(),
            s.chi_y,
            s.chi_y_source
        );
    }
    let _ = writeln!(
        out,
        "P_X(t)       {:?} (depth {})",
        a.poincare.specialize(),
        a.depth
    );
    let log: Vec<String> = a.log.terms().map(|(x, c)| format!("{c:+}[{x}]")).collect();
    let _ = writeln!(
        out,
        "Log P_X      {}",
        if log.is_empty() {
            "0".to_string()
        } else {
            log.join(" ")
        }
    );
    let _ = writeln!(out, "Tau(Log P)   {}", ext_text(&a.tau_log, ambient));
    match &a.zeta {
        Ok(z) => {
            let _ = writeln!(out, "zeta^G       {z}");
        }
        Err(e) => {
            let _ = writeln!(out, "zeta^G       unavailable: {e}");
        }
    }
    let _ = writeln!(out, "Or_X         {}", ext_text(&a.orbit, ambient));
    let _ = writeln!(
        out,
        "checks       closed form {}, Log P {}",
        pass(a.closed_matches()),
        pass(a.corollary_holds())
    );
    out
}

pub fn verification_text(v: &VerificationReport, ambient: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lhs          {}", ext_text(&v.lhs, ambient));
    if let Some(rhs) = &v.rhs {
        let _ = writeln!(out, "rhs          {}", ext_text(rhs, ambient));
    }
    if let Some(r) = &v.residual {
        let _ = writeln!(out, "residual     {}", ext_text(r, ambient));
    }
    let _ = writeln!(out, "identity     {}", pass(v.ok));
    let _ = writeln!(out, "in K(G)      {}", pass(v.secondary_ok));
    let _ = writeln!(
        out,
        "independent  {}",
        if v.independent {
            "yes"
        } else {
            "no (overrides in use)"
        }
    );
    if let Some(f) = &v.failure {
        let _ = writeln!(out, "failure      {f}");
    }
    out
}

pub fn classical_text(c: &ClassicalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "P_X(t)       {} = {:?}", c.poincare_closed, c.poincare);
    let _ = writeln!(out, "zeta_f(t)    {}", c.zeta);
    let _ = writeln!(out, "reduced      {}", c.zeta_reduced);
    let _ = writeln!(out, "Saito dual   {}", c.saito_dual);
    let _ = writeln!(out, "Or_X(t)      {}", c.orbit_series);
    let _ = writeln!(out, "residual     {:?}", c.residual);
    let _ = writeln!(out, "relation     {}", pass(c.ok));
    let _ = writeln!(
        out,
        "sum m*s_m    {} (chi of Milnor fibre {}) {}",
        c.degree_sum,
        c.milnor_fibre_chi,
        pass(c.degree_ok())
    );
    out
}

pub(crate) fn pass(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

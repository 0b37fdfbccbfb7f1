//! The full computation for one problem, and the checks built on it.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::burnside::{
    orbit_invariant, reduced, to_cyclotomic, zeta_equivariant, BurnsideElement, CyclotomicFunction,
    ExtBurnsideElement,
};
use crate::error::{Error, Result};
use crate::repr::{
    log_map, log_poincare, poincare_closed, poincare_counted, tau, CharacterGroup, ClosedPoincare,
    FiniteRepElement, NegSeries, PoincareSpace,
};
use crate::strata::milnor::DEFAULT_MONOMIAL_LIMIT;
use crate::strata::StrataChi;

use super::problem::Problem;

pub const RESOURCE_LIMIT_VAR: &str = "EQUIZETA_RESOURCE_LIMIT";

/// Runtime knobs shared by every command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Bound on monomials enumerated per Milnor-algebra degree and per
    /// Poincaré series.
    pub monomial_limit: usize,
    /// Replaces the truncation given in the problem.
    pub truncation: Option<u32>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            monomial_limit: DEFAULT_MONOMIAL_LIMIT,
            truncation: None,
        }
    }
}

impl Config {
    /// Defaults, with the monomial bound taken from `EQUIZETA_RESOURCE_LIMIT`
    /// when set.
    pub fn from_env() -> Result<Self> {
        let mut config = Config::default();
        if let Ok(raw) = std::env::var(RESOURCE_LIMIT_VAR) {
            config.monomial_limit = raw
                .trim()
                .parse()
                .ok()
                .filter(|&v: &usize| v > 0)
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "{RESOURCE_LIMIT_VAR}={raw:?} is not a positive integer"
                    ))
                })?;
        }
        Ok(config)
    }
}

/// Every invariant of one problem.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub problem: Problem,
    pub depth: u32,
    pub chars: CharacterGroup,
    pub strata: StrataChi,
    /// Fails only when the strata data give a non-integral coefficient.
    pub zeta: std::result::Result<BurnsideElement, Error>,
    pub orbit: ExtBurnsideElement,
    pub poincare: NegSeries,
    pub closed: ClosedPoincare,
    pub log: FiniteRepElement,
    pub tau_log: ExtBurnsideElement,
    pub log_counted: NegSeries,
}

pub fn analyze(problem: Problem, config: &Config) -> Result<Analysis> {
    let depth = config.truncation.unwrap_or(problem.truncation);
    let p = &problem.poly;
    let chars = CharacterGroup::new(&problem.ext);
    let strata = StrataChi::compute(p, &problem.ext, &problem.overrides, config.monomial_limit)?;
    let zeta = match zeta_equivariant(&strata, problem.group(), &p.monodromy_element()) {
        Err(e @ Error::NonIntegralCoefficient { .. }) => Err(e),
        other => Ok(other?),
    };
    let orbit = orbit_invariant(&strata, &problem.ext)?;
    let poincare = poincare_counted(
        PoincareSpace::Hypersurface,
        p,
        &chars,
        depth,
        config.monomial_limit,
    )?;
    let closed = poincare_closed(p, &chars);
    let log = log_poincare(p, &chars);
    let tau_log = tau(&log, &chars)?;
    let log_counted = log_map(&poincare, &chars)?;
    Ok(Analysis {
        problem,
        depth,
        chars,
        strata,
        zeta,
        orbit,
        poincare,
        closed,
        log,
        tau_log,
        log_counted,
    })
}

impl Analysis {
    /// Expansion of the closed form agrees with the counted series.
    pub fn closed_matches(&self) -> bool {
        self.closed.expand(&self.chars, self.depth) == self.poincare
    }

    /// `Log` of the counted series agrees with the exact `Log P_X` up to the
    /// truncation.
    pub fn corollary_holds(&self) -> bool {
        self.log
            .to_series(self.depth)
            .is_ok_and(|s| s == self.log_counted)
    }

    /// Whether the truncation reaches every degree of `Log P_X`.
    pub fn corollary_complete(&self) -> bool {
        -self.log.min_degree() <= i64::from(self.depth)
    }

    pub fn verify(&self) -> Result<VerificationReport> {
        let lhs = self.tau_log.sub(&self.orbit)?;
        let mut provenance: BTreeMap<String, usize> = BTreeMap::new();
        for s in self.strata.iter() {
            *provenance
                .entry(format!("chi_v:{}", s.chi_v_source))
                .or_insert(0) += 1;
            if !s.coords.is_empty() {
                *provenance
                    .entry(format!("chi_y:{}", s.chi_y_source))
                    .or_insert(0) += 1;
            }
        }
        let independent = !self.strata.uses_overrides();
        let zeta = match &self.zeta {
            Ok(z) => z,
            Err(e) => {
                return Ok(VerificationReport {
                    lhs,
                    rhs: None,
                    residual: None,
                    ok: false,
                    secondary_ok: false,
                    independent,
                    provenance,
                    failure: Some(e.to_string()),
                })
            }
        };
        let zeta_reduced = reduced(zeta);
        let rhs = zeta_reduced.ind_ext(&self.problem.ext)?;
        let residual = lhs.sub(&rhs)?;
        let ok = residual.is_zero();
        let secondary_ok = lhs.red()? == zeta_reduced;
        Ok(VerificationReport {
            failure: (!ok).then(|| "residual is non-zero".to_string()),
            lhs,
            rhs: Some(rhs),
            residual: Some(residual),
            ok,
            secondary_ok,
            independent,
            provenance,
        })
    }

    /// The classical relation between `P_X(t)`, `Or_X(t)` and the Saito dual
    /// of the reduced zeta function. Needs `G = <h>`.
    pub fn classical(&self) -> Result<ClassicalReport> {
        if !self.problem.is_monodromy_cyclic() {
            return Err(Error::Unsupported(
                "the classical relation needs the group generated by the monodromy".into(),
            ));
        }
        let zeta_g = self.zeta.clone()?;
        let zeta = to_cyclotomic(&zeta_g)?;
        let zeta_reduced = zeta.reduced();
        let saito_dual = zeta_reduced.saito_dual();
        let d = self.problem.poly.weights().d();

        let mut orbit_modulus = d;
        let mut orbit_factors = Vec::new();
        for (h, c) in self.orbit.terms() {
            let m = h
                .order()
                .to_u64()
                .ok_or_else(|| Error::ResourceLimit("isotropy order".into()))?;
            orbit_modulus = orbit_modulus.lcm(&m);
            orbit_factors.push((m, c));
        }
        let orbit_series = CyclotomicFunction::new(orbit_modulus, orbit_factors)?;

        let depth = self.depth as usize;
        let poincare = self.poincare.specialize();
        let or = orbit_series.expand(depth);
        let dual = saito_dual.expand(depth);
        let residual: Vec<i64> = (0..=depth)
            .map(|k| (0..=k).map(|i| poincare[i] * or[k - i]).sum::<i64>() - dual[k])
            .collect();
        let q: Vec<u64> = self.problem.poly.weights().q().to_vec();
        let denominator: String = q
            .iter()
            .map(|&w| {
                if w == 1 {
                    "(1-t)".to_string()
                } else {
                    format!("(1-t^{w})")
                }
            })
            .collect();
        let numerator = if d == 1 {
            "(1-t)".to_string()
        } else {
            format!("(1-t^{d})")
        };
        let poincare_closed = if q.len() == 1 {
            format!("{numerator}/{denominator}")
        } else {
            format!("{numerator}/({denominator})")
        };
        Ok(ClassicalReport {
            d,
            poincare,
            poincare_closed,
            ok: residual.iter().all(|&c| c == 0),
            residual,
            degree_sum: zeta.degree(),
            milnor_fibre_chi: self.strata.milnor_fibre_chi(),
            zeta,
            zeta_reduced,
            saito_dual,
            orbit_series,
        })
    }
}

/// Outcome of checking `Tau(Log P_X) − Or_X = Ind ζ̃_f`.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// `Tau(Log P_X) − Or_X`.
    pub lhs: ExtBurnsideElement,
    /// `Ind ζ̃_f`; absent when the zeta function could not be formed.
    pub rhs: Option<ExtBurnsideElement>,
    pub residual: Option<ExtBurnsideElement>,
    pub ok: bool,
    /// `Red(lhs) = ζ̃_f` in the Burnside ring of `G`.
    pub secondary_ok: bool,
    /// No Euler characteristic was supplied by hand.
    pub independent: bool,
    pub provenance: BTreeMap<String, usize>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ClassicalReport {
    pub d: u64,
    /// `P_X(t)` up to the truncation.
    pub poincare: Vec<i64>,
    pub poincare_closed: String,
    pub zeta: CyclotomicFunction,
    pub zeta_reduced: CyclotomicFunction,
    pub saito_dual: CyclotomicFunction,
    /// `Or_X(t) = Π (1 − t^{|H|})^{χ_H}`.
    pub orbit_series: CyclotomicFunction,
    /// `P_X(t)·Or_X(t) − ζ̃*(t)` up to the truncation.
    pub residual: Vec<i64>,
    pub ok: bool,
    /// `Σ m·s_m`.
    pub degree_sum: i64,
    pub milnor_fibre_chi: i64,
}

impl ClassicalReport {
    pub fn degree_ok(&self) -> bool {
        self.degree_sum == self.milnor_fibre_chi
    }
}

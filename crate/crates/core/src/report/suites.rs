use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::choice::axioms::AXIOM_PROFILE_LIMIT;
use crate::choice::{AxiomChecker, RuleSpec, ScfKind, SocialChoiceFunction};
use crate::homology::{homology_summary, simplex_boundary, SimplicialComplex};
use crate::pipeline::{
    arrangement_survey, basis_check, check_homology_envelope, enumerate::ENUMERATION_PROFILE_LIMIT,
    enumerate_monotonic_unanimous, generator_test, nerve_na, nerve_nm, nerve_nprofiles, PairingContext,
    ValidationLevel, DEFAULT_NODE_BUDGET, NERVE_PROFILE_LIMIT,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Axioms,
    Nerves,
    Homology,
    Generators,
    Basis,
    Pairing,
    Arrangement,
    Enumerate,
    Equivalence,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Axioms,
        Suite::Nerves,
        Suite::Homology,
        Suite::Generators,
        Suite::Basis,
        Suite::Pairing,
        Suite::Arrangement,
        Suite::Enumerate,
        Suite::Equivalence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Nerves => "nerves",
            Suite::Homology => "homology",
            Suite::Generators => "generators",
            Suite::Basis => "basis",
            Suite::Pairing => "pairing",
            Suite::Arrangement => "arrangement",
            Suite::Enumerate => "enumerate",
            Suite::Equivalence => "equivalence",
        }
    }

    /// Fails fast when `(n, N)` is outside what the suite can compute.
    pub fn check_envelope(self, n: usize, voters: usize) -> Result<()> {
        let profiles = crate::choice::ProfileSpace::new(n, voters)?.len();
        let over = |limit: usize| {
            if profiles > limit {
                Err(Error::Envelope {
                    n,
                    voters,
                    reason: format!("suite `{self}` supports at most {limit} profiles, got {profiles}"),
                })
            } else {
                Ok(())
            }
        };
        match self {
            Suite::Axioms | Suite::Equivalence => over(AXIOM_PROFILE_LIMIT),
            Suite::Nerves => {
                if n < 2 {
                    return Err(Error::Envelope { n, voters, reason: "need n >= 2".into() });
                }
                over(NERVE_PROFILE_LIMIT)
            }
            Suite::Homology | Suite::Basis | Suite::Pairing => check_homology_envelope(n, voters),
            Suite::Generators => check_homology_envelope(n, 1),
            Suite::Enumerate => over(ENUMERATION_PROFILE_LIMIT),
            Suite::Arrangement => {
                let pairs = (n * n.saturating_sub(1) / 2) as u32;
                match (voters as u64).checked_pow(pairs) {
                    Some(c) if c <= crate::pipeline::arrangement::SURVEY_LIMIT && n >= 2 => Ok(()),
                    _ => Err(Error::Envelope { n, voters, reason: "too many colorings to survey".into() }),
                }
            }
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub n: usize,
    #[serde(rename = "N")]
    pub voters: usize,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub validation_level: ValidationLevel,
    pub random_tables: usize,
    pub node_budget: u64,
}

impl SuiteConfig {
    pub fn new(n: usize, voters: usize) -> Self {
        Self {
            n,
            voters,
            suites: Suite::ALL.to_vec(),
            seed: 0,
            validation_level: crate::choice::ProfileSpace::new(n, voters)
                .map_or(ValidationLevel::ProbeOnly, |s| ValidationLevel::default_for(s.len())),
            random_tables: 1000,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn with_suites(mut self, suites: Vec<Suite>) -> Self {
        self.suites = suites;
        self
    }

    pub fn check_envelope(&self) -> Result<()> {
        self.suites.iter().try_for_each(|s| s.check_envelope(self.n, self.voters))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: bool,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Runs one suite. Computational failures become a failed outcome carrying
/// the error message.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> SuiteOutcome {
    let result = match suite {
        Suite::Axioms => axioms_suite(config),
        Suite::Nerves => nerves_suite(config),
        Suite::Homology => homology_suite(config),
        Suite::Generators => generator_test(config.n).and_then(|r| Ok((r.passed, serde_json::to_value(&r)?))),
        Suite::Basis => basis_check(config.n, config.voters).and_then(|r| Ok((r.passed, serde_json::to_value(&r)?))),
        Suite::Pairing => pairing_suite(config),
        Suite::Arrangement => {
            arrangement_survey(config.n, config.voters).and_then(|r| Ok((r.passed, serde_json::to_value(&r)?)))
        }
        Suite::Enumerate => enumerate_suite(config),
        Suite::Equivalence => equivalence_suite(config),
    };
    match result {
        Ok((passed, details)) => SuiteOutcome { suite, passed, details, error: None },
        Err(e) => SuiteOutcome { suite, passed: false, details: Value::Null, error: Some(e.to_string()) },
    }
}

/// Named rules exercised by the axiom suites.
pub fn fixture_rules(n: usize, voters: usize) -> Result<Vec<(String, SocialChoiceFunction)>> {
    let mut specs: Vec<RuleSpec> = (0..voters).map(RuleSpec::Dictatorship).collect();
    specs.extend((0..n).map(RuleSpec::Constant));
    specs.extend([RuleSpec::PluralityLex, RuleSpec::BordaLex]);
    specs.into_iter().map(|s| Ok((s.to_string(), s.build(n, voters)?))).collect()
}

fn axioms_suite(config: &SuiteConfig) -> Result<(bool, Value)> {
    let mut passed = true;
    let mut rules = Vec::new();
    for (name, f) in fixture_rules(config.n, config.voters)? {
        let report = AxiomChecker::new(&f)?.report();
        let s = report.summary();
        let witnesses_ok = report.monotonic.witness().map_or(Ok(true), |w| w.revalidate(&f))?
            && report.strategy_proof.witness().map_or(Ok(true), |w| w.revalidate(&f))?;
        let expected_ok = match f.kind() {
            ScfKind::Dictatorship(_) => {
                s.monotonic && s.unanimous && s.surjective && s.strategy_proof && report.dictator.is_some()
            }
            ScfKind::Constant(_) => {
                s.monotonic && s.strategy_proof && (config.n == 1 || (!s.unanimous && !s.surjective))
            }
            _ => true,
        };
        passed &= witnesses_ok && expected_ok;
        rules.push(json!({ "rule": name, "report": report, "witnesses_revalidated": witnesses_ok }));
    }
    Ok((passed, json!({ "rules": rules })))
}

fn equivalence_suite(config: &SuiteConfig) -> Result<(bool, Value)> {
    let mut rules = fixture_rules(config.n, config.voters)?;
    let random = SocialChoiceFunction::seeded_tables(config.n, config.voters, config.seed, config.random_tables)?;
    rules.extend(random.into_iter().enumerate().map(|(i, f)| (format!("random#{i}"), f)));
    let mut exceptions = Vec::new();
    let mut monotonic_unanimous = 0usize;
    for (name, f) in &rules {
        let s = AxiomChecker::new(f)?.summary();
        monotonic_unanimous += usize::from(s.monotonic && s.unanimous);
        if !s.equivalence_holds() {
            exceptions.push(json!({ "rule": name, "summary": s }));
        }
    }
    Ok((
        exceptions.is_empty(),
        json!({
            "rules_checked": rules.len(),
            "random_tables": config.random_tables,
            "seed": config.seed,
            "monotonic_and_unanimous": monotonic_unanimous,
            "exceptions": exceptions,
        }),
    ))
}

fn nerves_suite(config: &SuiteConfig) -> Result<(bool, Value)> {
    let (n, voters) = (config.n, config.voters);
    let witness = nerve_nprofiles(n, voters)?;
    let cones = nerve_nm(n, voters)?;
    let na = nerve_na(n)?;
    let equal = witness == cones;
    let na_is_sphere = na == simplex_boundary(n - 1);
    Ok((
        equal && na_is_sphere,
        json!({
            "profile_nerve_faces": witness.face_counts(),
            "cone_nerve_faces": cones.face_counts(),
            "identical": equal,
            "na_faces": na.face_counts(),
            "na_is_simplex_boundary": na_is_sphere,
        }),
    ))
}

/// Betti numbers and torsion of one complex, with `∂∂ = 0` and the Euler
/// characteristic cross-check.
pub fn complex_homology(cx: &SimplicialComplex) -> Result<Value> {
    let boundary_squares_to_zero = boundary_squares_to_zero(cx)?;
    let summary = homology_summary(cx)?;
    let euler_faces = cx.euler_characteristic();
    let euler_betti = crate::homology::betti_euler_characteristic(&summary);
    Ok(json!({
        "face_counts": cx.face_counts(),
        "betti": summary.iter().map(|g| g.betti).collect::<Vec<_>>(),
        "torsion": summary.iter().map(|g| g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "boundary_squares_to_zero": boundary_squares_to_zero,
        "euler_from_faces": euler_faces,
        "euler_from_betti": euler_betti,
    }))
}

pub fn boundary_squares_to_zero(cx: &SimplicialComplex) -> Result<bool> {
    for k in 2..=cx.dimension().max(0) as usize {
        if !cx.boundary_matrix(k - 1)?.mul(&cx.boundary_matrix(k)?)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn homology_suite(config: &SuiteConfig) -> Result<(bool, Value)> {
    let (n, voters) = (config.n, config.voters);
    let profile_nerve = nerve_nprofiles(n, voters)?;
    let na = nerve_na(n)?;
    let p = complex_homology(&profile_nerve)?;
    let a = complex_homology(&na)?;
    let kernel_ok =
        |v: &Value| v["boundary_squares_to_zero"] == json!(true) && v["euler_from_faces"] == v["euler_from_betti"];
    let no_torsion = |v: &Value, k: usize| v["torsion"][k].as_array().is_some_and(Vec::is_empty);
    let betti = |v: &Value, k: usize| v["betti"][k].as_u64();

    let top = n - 2;
    let profile_ok = (1..top).all(|k| betti(&p, k) == Some(0) && no_torsion(&p, k))
        && betti(&p, top) == Some(voters as u64)
        && no_torsion(&p, top);
    let sphere_ok = (0..n - 1).all(|k| betti(&a, k) == Some(u64::from(k == 0 || k == top)) && no_torsion(&a, k));
    Ok((
        profile_ok && sphere_ok && kernel_ok(&p) && kernel_ok(&a),
        json!({ "profile_nerve": p, "na": a, "degree": top }),
    ))
}

fn pairing_suite(config: &SuiteConfig) -> Result<(bool, Value)> {
    let (n, voters) = (config.n, config.voters);
    let cx = PairingContext::new(n, voters)?;
    let mut passed = true;
    let mut runs = Vec::new();
    for l in 0..voters {
        let f = SocialChoiceFunction::dictatorship(n, voters, l)?;
        let analysis = cx.analyze(&f, config.validation_level)?;
        let expected: Vec<i64> = (0..voters).map(|k| i64::from(k == l)).collect();
        passed &= analysis.pairing_vector == expected && analysis.dictator == l;
        runs.push(json!({ "rule": format!("dictatorship:{l}"), "analysis": analysis }));
    }
    Ok((passed, json!({ "runs": runs })))
}

fn enumerate_suite(config: &SuiteConfig) -> Result<(bool, Value)> {
    let e = enumerate_monotonic_unanimous(config.n, config.voters, config.node_budget)?;
    let mut dictators: Vec<Option<usize>> = e.dictators.clone();
    dictators.sort_unstable();
    // every dictatorship appears, and nothing else, once n >= 3
    let expected: Vec<Option<usize>> = (0..config.voters).map(Some).collect();
    let passed = e.all_dictatorial() && (config.n < 3 || dictators == expected);
    Ok((
        passed,
        json!({ "count": e.tables.len(), "dictators": e.dictators, "nodes": e.nodes, "all_dictatorial": e.all_dictatorial() }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn envelope_rejects_large_instances() {
        assert!(Suite::Homology.check_envelope(4, 3).is_err());
        assert!(Suite::Homology.check_envelope(4, 2).is_ok());
        assert!(Suite::Generators.check_envelope(6, 1).is_err());
        assert!(Suite::Nerves.check_envelope(4, 3).is_ok());
    }

    #[test]
    fn small_suites_pass() {
        let config = SuiteConfig::new(3, 2);
        for suite in Suite::ALL {
            let outcome = run_suite(suite, &config);
            assert!(outcome.passed, "{suite}: {outcome:?}");
        }
    }
}

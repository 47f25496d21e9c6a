use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::document::{timed, ReportDocument};
use super::suites::{complex_homology, run_suite, SuiteConfig};
use crate::choice::{AxiomChecker, SocialChoiceFunction};
use crate::homology::{HomologyBasis, SimplicialComplex};
use crate::pipeline::{
    arrangement_survey, check_homology_envelope, enumerate_monotonic_unanimous, nerve_na, nerve_np, nerve_nprofiles,
    PairingContext, ValidationLevel,
};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeConfig {
    pub source: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub voters: usize,
    pub validation_level: ValidationLevel,
}

/// Axiom report for `f`; when `f` is monotonic and unanimous, also the
/// induced map, the pairing vector and the dictator it identifies.
pub fn cmd_analyze(
    f: &SocialChoiceFunction,
    source: &str,
    validation: Option<ValidationLevel>,
) -> Result<ReportDocument> {
    let (n, voters) = (f.alternatives(), f.voters());
    let checker = AxiomChecker::new(f)?;
    let validation = validation.unwrap_or_else(|| ValidationLevel::default_for(checker.space().len()));
    let config = AnalyzeConfig { source: source.to_string(), n, voters, validation_level: validation };
    let mut doc = ReportDocument::new("analyze", &config)?;
    let axioms = timed(&mut doc.timing, "axioms", || checker.report());
    let summary = axioms.summary();

    let (pipeline, skipped) = if !(summary.monotonic && summary.unanimous) {
        (Value::Null, Some("rule is not both monotonic and unanimous".to_string()))
    } else if let Err(e) = check_homology_envelope(n, voters) {
        (Value::Null, Some(e.to_string()))
    } else {
        let analysis = timed(&mut doc.timing, "pipeline", || {
            PairingContext::new(n, voters).and_then(|cx| cx.analyze(f, validation))
        })?;
        (serde_json::to_value(analysis)?, None)
    };
    doc.passed = summary.equivalence_holds();
    doc.results = json!({
        "axioms": axioms,
        "summary": summary,
        "equivalence_holds": summary.equivalence_holds(),
        "dictator": axioms.dictator,
        "pipeline": pipeline,
        "pipeline_skipped": skipped,
    });
    Ok(doc)
}

/// Runs every configured suite; `passed` iff all pass.
pub fn cmd_verify(config: &SuiteConfig) -> Result<ReportDocument> {
    config.check_envelope()?;
    let mut doc = ReportDocument::new("verify", config)?;
    let mut outcomes = Vec::new();
    for &suite in &config.suites {
        let outcome = timed(&mut doc.timing, suite.name(), || run_suite(suite, config));
        doc.passed &= outcome.passed;
        outcomes.push(outcome);
    }
    doc.results = json!({ "suites": outcomes });
    Ok(doc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomologyTarget {
    #[serde(rename = "NA")]
    Na,
    #[serde(rename = "NP")]
    Np,
    #[serde(rename = "NProfiles")]
    NProfiles,
}

impl FromStr for HomologyTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "na" => Ok(HomologyTarget::Na),
            "np" => Ok(HomologyTarget::Np),
            "nprofiles" => Ok(HomologyTarget::NProfiles),
            _ => Err(Error::Precondition(format!("unknown target `{s}`, expected NA, NP or NProfiles"))),
        }
    }
}

impl fmt::Display for HomologyTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HomologyTarget::Na => "NA",
            HomologyTarget::Np => "NP",
            HomologyTarget::NProfiles => "NProfiles",
        })
    }
}

/// Largest `n` for which `N_A` is built.
pub const NA_MAX_ALTERNATIVES: usize = 12;

#[derive(Clone, Debug, Serialize)]
struct HomologyConfig {
    target: HomologyTarget,
    n: usize,
    #[serde(rename = "N")]
    voters: usize,
    degree: Option<usize>,
}

/// Builds the requested complex, for reporting and for the optional dump.
pub fn build_target(target: HomologyTarget, n: usize, voters: usize) -> Result<SimplicialComplex> {
    match target {
        HomologyTarget::Na => {
            if !(2..=NA_MAX_ALTERNATIVES).contains(&n) {
                return Err(Error::Envelope {
                    n,
                    voters: 0,
                    reason: format!("N_A needs 2 <= n <= {NA_MAX_ALTERNATIVES}"),
                });
            }
            nerve_na(n)
        }
        HomologyTarget::Np => {
            check_homology_envelope(n, 1)?;
            nerve_np(n)
        }
        HomologyTarget::NProfiles => {
            check_homology_envelope(n, voters)?;
            nerve_nprofiles(n, voters)
        }
    }
}

/// Betti numbers and torsion of a target complex, in one degree or all.
pub fn cmd_homology(
    target: HomologyTarget,
    n: usize,
    voters: usize,
    degree: Option<usize>,
) -> Result<(ReportDocument, SimplicialComplex)> {
    let voters = if target == HomologyTarget::NProfiles { voters } else { 1 };
    let config = HomologyConfig { target, n, voters, degree };
    let mut doc = ReportDocument::new("homology", &config)?;
    let cx = timed(&mut doc.timing, "build", || build_target(target, n, voters))?;
    doc.results = match degree {
        Some(k) => {
            let basis = timed(&mut doc.timing, "homology", || HomologyBasis::compute(&cx, k))?;
            json!({
                "face_counts": cx.face_counts(),
                "degree": k,
                "betti": basis.betti(),
                "torsion": basis.torsion().iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        }
        None => timed(&mut doc.timing, "homology", || complex_homology(&cx))?,
    };
    Ok((doc, cx))
}

#[derive(Clone, Debug, Serialize)]
struct EnumerateConfig {
    n: usize,
    #[serde(rename = "N")]
    voters: usize,
    node_budget: u64,
}

/// All monotonic and unanimous tables; passes iff every one is dictatorial.
pub fn cmd_enumerate(n: usize, voters: usize, node_budget: u64) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("enumerate-scf", EnumerateConfig { n, voters, node_budget })?;
    let e = timed(&mut doc.timing, "search", || enumerate_monotonic_unanimous(n, voters, node_budget))?;
    doc.passed = e.all_dictatorial();
    doc.results = json!({
        "count": e.tables.len(),
        "nodes": e.nodes,
        "dictators": e.dictators,
        "tables": e.tables,
    });
    Ok(doc)
}

#[derive(Clone, Debug, Serialize)]
struct ArrangementConfig {
    n: usize,
    #[serde(rename = "N")]
    voters: usize,
}

pub fn cmd_arrangement(n: usize, voters: usize) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("arrangement", ArrangementConfig { n, voters })?;
    let survey = timed(&mut doc.timing, "survey", || arrangement_survey(n, voters))?;
    doc.passed = survey.passed;
    doc.results = serde_json::to_value(&survey)?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::suites::Suite;

    #[test]
    fn analyze_dictatorship() {
        let f = SocialChoiceFunction::dictatorship(3, 2, 1).unwrap();
        let doc = cmd_analyze(&f, "dictatorship:1", None).unwrap();
        assert!(doc.passed);
        assert_eq!(doc.results["pipeline"]["pairing_vector"], json!([0, 1]));
        assert_eq!(doc.results["pipeline"]["dictator"], json!(1));
    }

    #[test]
    fn analyze_plurality_reports_manipulation() {
        let f = SocialChoiceFunction::plurality_lex(3, 2).unwrap();
        let doc = cmd_analyze(&f, "plurality_lex", None).unwrap();
        assert_eq!(doc.results["axioms"]["strategy_proof"]["status"], json!("fails"));
        assert!(doc.results["pipeline"].is_null());
    }

    #[test]
    fn homology_targets() {
        let (doc, _) = cmd_homology(HomologyTarget::Na, 5, 1, None).unwrap();
        assert_eq!(doc.results["betti"], json!([1, 0, 0, 1]));
        let (doc, _) = cmd_homology(HomologyTarget::NProfiles, 3, 3, Some(1)).unwrap();
        assert_eq!(doc.results["betti"], json!(3));
        let (doc, _) = cmd_homology(HomologyTarget::Np, 4, 1, Some(1)).unwrap();
        assert_eq!(doc.results["betti"], json!(0));
        assert!(cmd_homology(HomologyTarget::Na, 4, 1, Some(5)).is_err());
    }

    #[test]
    fn verify_is_deterministic() {
        let config = SuiteConfig::new(3, 2).with_suites(vec![Suite::Homology, Suite::Equivalence]);
        let a = cmd_verify(&config).unwrap();
        let b = cmd_verify(&config).unwrap();
        assert!(a.passed);
        assert_eq!(a.without_timing().unwrap(), b.without_timing().unwrap());
    }
}

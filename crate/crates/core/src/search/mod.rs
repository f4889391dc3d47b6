//! Seeded counterexample hunting and the built-in verification suite.
//!
//! A hunt draws candidate `i` from a generator keyed by `(seed, i)`, checks
//! it, and stops at the lowest-index counterexample. Candidates are checked
//! in parallel chunks and scanned in index order, so the result does not
//! depend on the number of workers.
//!
//! ```
//! use domclose::search::{hunt, SearchConfig};
//!
//! let config = SearchConfig::new("eq1-eq2-agreement", 3, 4, 200);
//! let result = hunt(&config, 1).unwrap();
//! assert_eq!(result.verdict(), "no-counterexample-found");
//! assert_eq!(result.candidates_tested, 200);
//! assert_eq!(result, hunt(&config, 4).unwrap());
//! ```

pub mod claims;
pub mod random;
mod suite;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::{self, SetSystem};

pub use claims::{find_claim, Claim, ClaimKind, Outcome, Shape, CLAIMS};
pub use random::{candidate_rng, random_dominating, DominatingOptions, RANDOM_MAX};
pub use suite::{verify_paper, SuiteEntry, SuiteOptions, SuiteReport};

/// Candidates checked per parallel round.
const CHUNK: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    /// Size of the primary ground set.
    pub n: usize,
    /// Maximum number of candidates.
    pub budget: u64,
    pub claim: String,
}

impl SearchConfig {
    pub fn new(claim: impl Into<String>, seed: u64, n: usize, budget: u64) -> Self {
        SearchConfig {
            seed,
            n,
            budget,
            claim: claim.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    /// Position in the candidate stream.
    pub index: u64,
    pub witness: String,
    pub detail: String,
    /// The instance as a loadable system document.
    pub instance: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClaimResult {
    pub claim: String,
    pub kind: ClaimKind,
    pub statement: String,
    pub n: usize,
    pub seed: u64,
    pub budget: u64,
    pub candidates_tested: u64,
    /// Candidates on which the hypothesis held.
    pub applicable: u64,
    pub counterexample: Option<Counterexample>,
}

impl ClaimResult {
    pub fn verdict(&self) -> &'static str {
        if self.counterexample.is_some() {
            "counterexample"
        } else {
            "no-counterexample-found"
        }
    }

    /// A counterexample to a proposition, as opposed to a conjecture.
    pub fn refutes(&self) -> bool {
        self.kind == ClaimKind::Proposition && self.counterexample.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "claim": self.claim,
            "kind": self.kind.as_str(),
            "statement": self.statement,
            "n": self.n,
            "seed": self.seed,
            "budget": self.budget,
            "candidates_tested": self.candidates_tested,
            "applicable": self.applicable,
            "verdict": self.verdict(),
            "counterexample": self.counterexample.as_ref().map(|c| json!({
                "index": c.index,
                "witness": c.witness,
                "detail": c.detail,
                "instance": c.instance,
            })),
        })
    }

    /// Reloads the stored instance and checks that it still refutes the claim.
    pub fn revalidate(&self) -> Result<bool> {
        let Some(c) = &self.counterexample else {
            return Ok(false);
        };
        let system = io::parse_system(&c.instance.to_string())?;
        Ok(find_claim(&self.claim)?.check(&system)?.is_failure())
    }
}

/// Runs `config.claim` over its candidate stream on `workers` threads
/// (`0` picks the rayon default).
pub fn hunt(config: &SearchConfig, workers: usize) -> Result<ClaimResult> {
    let claim = find_claim(&config.claim)?;
    if config.n == 0 || config.n > claim.max_n {
        return Err(Error::Capacity {
            n: config.n,
            max: claim.max_n,
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid("workers", e.to_string()))?;
    let candidate = |i: u64| -> Result<(Outcome, Option<SetSystem>)> {
        let mut rng = candidate_rng(config.seed, i);
        let system = claim.generate(&mut rng, config.n)?;
        let outcome = claim.check(&system)?;
        let keep = outcome.is_failure().then_some(system);
        Ok((outcome, keep))
    };

    let mut applicable = 0;
    let mut start = 0;
    while start < config.budget {
        let end = (start + CHUNK).min(config.budget);
        let round: Vec<Result<(Outcome, Option<SetSystem>)>> =
            pool.install(|| (start..end).into_par_iter().map(candidate).collect());
        for (i, r) in (start..end).zip(round) {
            let (outcome, system) = r?;
            match outcome {
                Outcome::Vacuous => {}
                Outcome::Holds => applicable += 1,
                Outcome::Fails { witness, detail } => {
                    return Ok(result(claim, config, i + 1, applicable + 1, Some(Counterexample {
                        index: i,
                        witness,
                        detail,
                        instance: system.expect("failures keep their instance").to_json(),
                    })));
                }
            }
        }
        start = end;
    }
    Ok(result(claim, config, config.budget, applicable, None))
}

fn result(
    claim: &Claim,
    config: &SearchConfig,
    tested: u64,
    applicable: u64,
    counterexample: Option<Counterexample>,
) -> ClaimResult {
    ClaimResult {
        claim: claim.id.to_string(),
        kind: claim.kind,
        statement: claim.statement.to_string(),
        n: config.n,
        seed: config.seed,
        budget: config.budget,
        candidates_tested: tested,
        applicable,
        counterexample,
    }
}

/// Checks `claim` on each system in order; returns the number of applicable
/// instances and the first failure.
pub fn check_each<'a>(
    claim: &Claim,
    systems: impl IntoIterator<Item = &'a SetSystem>,
) -> Result<(u64, Option<(&'a SetSystem, Outcome)>)> {
    let mut applicable = 0;
    for system in systems {
        match claim.check(system)? {
            Outcome::Vacuous => {}
            Outcome::Holds => applicable += 1,
            failure => return Ok((applicable + 1, Some((system, failure)))),
        }
    }
    Ok((applicable, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worker_count_does_not_change_the_result() {
        let config = SearchConfig::new("p.CLO.REG", 7, 5, 1000);
        let one = hunt(&config, 1).unwrap();
        let eight = hunt(&config, 8).unwrap();
        assert_eq!(one, eight);
        assert_eq!(one.to_json().to_string(), eight.to_json().to_string());
    }

    #[test]
    fn counterexamples_revalidate() {
        let result = hunt(&SearchConfig::new("p.CLO.REG", 0, 4, 5000), 0).unwrap();
        assert_eq!(result.verdict(), "counterexample");
        assert!(result.refutes());
        assert!(result.revalidate().unwrap());
        let c = result.counterexample.as_ref().unwrap();
        assert_eq!(result.candidates_tested, c.index + 1);
    }

    #[test]
    fn restricted_variant_holds() {
        let result = hunt(&SearchConfig::new("p.CLO.REG/extended", 0, 5, 2000), 0).unwrap();
        assert_eq!(result.verdict(), "no-counterexample-found");
        assert_eq!(result.applicable, 2000);
        assert!(!result.revalidate().unwrap());
    }

    #[test]
    fn unknown_claim_and_capacity() {
        assert!(matches!(
            hunt(&SearchConfig::new("nope", 0, 3, 1), 1),
            Err(Error::UnknownClaim(_))
        ));
        assert!(matches!(
            hunt(&SearchConfig::new("p.GC2", 0, 4, 1), 1),
            Err(Error::Capacity { n: 4, max: 3 })
        ));
    }

    #[test]
    fn conjectures_do_not_refute() {
        let result = hunt(&SearchConfig::new("matroid-pushout", 0, 3, 500), 0).unwrap();
        assert_eq!(result.kind, ClaimKind::Conjecture);
        assert!(!result.refutes());
    }
}

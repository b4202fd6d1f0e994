use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use super::{Verdict, WitnessKind};
use crate::arithdata::Fixture;
use crate::groups::members;

pub const REPORT_SCHEMA: &str = "skvreport/1";

/// Screening of one prime against the three exceptional conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExceptionalPrime {
    pub p: u64,
    pub is_two: bool,
    /// Wildly ramified places above p whose decomposition group misses j.
    pub not_almost_tame: Vec<String>,
    /// Fixture-declared L^cl ⊂ (L^cl)^+(ζ_p).
    pub zeta_p_declared: bool,
    pub exceptional: bool,
}

/// Candidates are 2, the residue characteristics of ramified places and the declared primes.
/// Condition (iii) cannot be computed from the fixture and is read from zetaPCondition.
pub fn exceptional_primes(fix: &Fixture) -> Vec<ExceptionalPrime> {
    let mut cands: BTreeSet<u64> = BTreeSet::from([2]);
    cands.extend(
        fix.places
            .iter()
            .filter(|p| !p.infinite && p.ramified)
            .map(|p| p.q),
    );
    cands.extend(fix.zeta_p_condition.iter().copied());
    cands
        .into_iter()
        .map(|p| {
            let not_almost_tame: Vec<String> = match fix.j {
                Some(j) => fix
                    .places
                    .iter()
                    .filter(|pl| {
                        !pl.infinite
                            && pl.q == p
                            && pl.wild
                            && !members(pl.decomposition).contains(&j)
                    })
                    .map(|pl| pl.label.clone())
                    .collect(),
                None => Vec::new(),
            };
            let zeta_p_declared = fix.zeta_p_condition.contains(&p);
            ExceptionalPrime {
                p,
                is_two: p == 2,
                exceptional: p == 2 || !not_almost_tame.is_empty() || zeta_p_declared,
                not_almost_tame,
                zeta_p_declared,
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Report {
    pub fixture: String,
    pub digest: String,
    pub seed: u64,
    pub exceptional: Vec<ExceptionalPrime>,
    pub verdicts: Vec<Verdict>,
    /// Milliseconds per check; absent unless requested, which keeps reports byte-identical.
    pub timings: Option<Vec<(String, u128)>>,
}

impl Report {
    pub fn new(fix: &Fixture, seed: u64, verdicts: Vec<Verdict>) -> Self {
        Report {
            fixture: fix.name.clone(),
            digest: fix.digest(),
            seed,
            exceptional: exceptional_primes(fix),
            verdicts,
            timings: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        super::exit_code(&self.verdicts)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "version": REPORT_SCHEMA,
            "fixture": self.fixture,
            "fixtureDigest": self.digest,
            "seed": self.seed,
            "exceptionalPrimes": self.exceptional,
            "exceptionalNote": "condition (iii) on the normal closure is read from the fixture field zetaPCondition, not computed",
            "verdicts": self.verdicts,
            "timings": self.timings.as_ref().map(|t| {
                t.iter().map(|(id, ms)| json!({"checkId": id, "ms": ms})).collect::<Vec<_>>()
            }),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{REPORT_SCHEMA} fixture {} sha256 {} seed {}",
            self.fixture, self.digest, self.seed
        );
        let exc: Vec<String> = self
            .exceptional
            .iter()
            .filter(|e| e.exceptional)
            .map(|e| e.p.to_string())
            .collect();
        let _ = writeln!(
            out,
            "exceptional primes: {}",
            if exc.is_empty() {
                "none".into()
            } else {
                exc.join(", ")
            }
        );
        for v in &self.verdicts {
            let _ = writeln!(out, "\n[{}] {}", v.status.tag(), v.check_id);
            if let Some(r) = &v.reason {
                let _ = writeln!(out, "  reason: {r}");
            }
            for w in &v.witnesses {
                let mark = match w.kind {
                    WitnessKind::Failure => "FAIL",
                    WitnessKind::Confirmation => "ok",
                };
                let chi = w
                    .character
                    .as_ref()
                    .map(|c| format!(" at {c}"))
                    .unwrap_or_default();
                let _ = writeln!(out, "  {mark} {}{chi}: {}", w.context, w.value);
            }
            for n in &v.notes {
                let _ = writeln!(out, "  note: {n}");
            }
            for p in &v.provenance {
                let _ = writeln!(out, "  from: {p}");
            }
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(out);
            for (id, ms) in t {
                let _ = writeln!(out, "time {id}: {ms} ms");
            }
        }
        out
    }
}

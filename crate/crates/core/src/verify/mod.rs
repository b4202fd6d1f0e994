//! Verdict engines for the integrality theorems and annihilation conjectures, and the report format.

mod checks;
mod report;

use serde::Serialize;

pub use checks::{
    check_brumer, check_brumer_stark_necessary, check_negative_r, check_theorem_sku_maxord,
    check_theorem_stickelberger_int, default_s, integral_sets,
};
pub use report::{exceptional_primes, ExceptionalPrime, Report, REPORT_SCHEMA};

use crate::arith::{qf, Cyc};
use crate::arithdata::{Fixture, DEFAULT_BOUND};
use crate::center::{CentralElement, MembershipWitness};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Inconclusive,
    Falsified,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Inconclusive => "inconclusive",
            Status::Falsified => "falsified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Failure,
    Confirmation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub context: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdict {
    pub check_id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    pub provenance: Vec<String>,
}

impl Verdict {
    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses
            .iter()
            .filter(|w| w.kind == WitnessKind::Failure)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    StickelbergerInt,
    SkuMaxord,
    Brumer,
    BrumerStark,
    NegativeR,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::StickelbergerInt,
        Check::SkuMaxord,
        Check::Brumer,
        Check::BrumerStark,
        Check::NegativeR,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::StickelbergerInt => "stickelberger_int",
            Check::SkuMaxord => "sku_maxord",
            Check::Brumer => "brumer",
            Check::BrumerStark => "brumer_stark_necessary",
            Check::NegativeR => "negative_r",
        }
    }

    pub fn parse(id: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.id() == id)
    }

    pub fn run(self, fix: &Fixture, opts: &CheckOptions) -> Result<Verdict> {
        match self {
            Check::StickelbergerInt => check_theorem_stickelberger_int(fix, opts),
            Check::SkuMaxord => check_theorem_sku_maxord(fix, opts),
            Check::Brumer => check_brumer(fix, opts),
            Check::BrumerStark => check_brumer_stark_necessary(fix, opts),
            Check::NegativeR => check_negative_r(fix, opts),
        }
    }
}

/// Explicit (S, T, r) replacing the fixture's `sets`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetChoice {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub r: i64,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub sets: Option<SetChoice>,
    pub p: Option<u64>,
    /// Largest |T| in the truncated 𝔄_S.
    pub bound: usize,
    pub seed: u64,
    /// Matrices tried when searching for an explicit 𝓘(G) certificate.
    pub i_budget: usize,
    /// Random star adjoints used to screen fixture-declared 𝓗 candidates.
    pub h_trials: usize,
    pub fault: Option<Fault>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            sets: None,
            p: None,
            bound: DEFAULT_BOUND,
            seed: 0,
            i_budget: 2000,
            h_trials: 500,
            fault: None,
        }
    }
}

/// Adds numerator/denominator to the identity coefficient of the first element a check tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fault {
    pub numerator: i64,
    pub denominator: u64,
}

impl Default for Fault {
    fn default() -> Self {
        Fault {
            numerator: 1,
            denominator: 7,
        }
    }
}

impl Fault {
    /// p itself for p-local checks, else the least prime ≥ 7 dividing neither |G| nor w_L,
    /// so that no scalar a check multiplies by can clear the denominator.
    pub fn for_fixture(fix: &Fixture, p: Option<u64>) -> Self {
        if let Some(p) = p {
            return Fault {
                numerator: 1,
                denominator: p,
            };
        }
        let n = fix.group.order() as u64 * fix.mu.w;
        let denominator = (7..)
            .find(|&q| crate::lvalues::is_prime(q) && !n.is_multiple_of(q))
            .expect("primes are unbounded");
        Fault {
            numerator: 1,
            denominator,
        }
    }
}

/// Run several checks; the order of verdicts follows the order of `checks`.
pub fn run_checks(fix: &Fixture, checks: &[Check], opts: &CheckOptions) -> Result<Vec<Verdict>> {
    checks.iter().map(|c| c.run(fix, opts)).collect()
}

/// 0 all verified, 1 any falsified, 2 otherwise.
pub fn exit_code(verdicts: &[Verdict]) -> i32 {
    match verdicts.iter().map(|v| v.status).max() {
        Some(Status::Falsified) => 1,
        Some(Status::Inconclusive) => 2,
        _ => 0,
    }
}

/// Accumulates witnesses while a check runs.
pub(crate) struct Tally {
    check: Check,
    fault: Option<Fault>,
    failures: Vec<Witness>,
    confirmations: Vec<Witness>,
    reasons: Vec<String>,
    notes: Vec<String>,
    provenance: Vec<String>,
}

impl Tally {
    pub(crate) fn new(check: Check, fix: &Fixture, opts: &CheckOptions) -> Self {
        let mut provenance = vec![format!("fixture {}: {}", fix.name, fix.provenance)];
        if let Some(f) = opts.fault {
            provenance.push(format!(
                "fault injected: {}/{} added to the identity coefficient of the first tested element",
                f.numerator, f.denominator
            ));
        }
        Tally {
            check,
            fault: opts.fault,
            failures: Vec::new(),
            confirmations: Vec::new(),
            reasons: Vec::new(),
            notes: Vec::new(),
            provenance,
        }
    }

    /// Perturbs the first element passed through when a fault is requested.
    pub(crate) fn input(&mut self, x: CentralElement) -> Result<CentralElement> {
        match self.fault.take() {
            Some(f) => {
                let d = i64::try_from(f.denominator)
                    .map_err(|_| Error::invalid("fault denominator too large"))?;
                x.add(&CentralElement::scalar(
                    x.table(),
                    Cyc::from_rational(qf(f.numerator, d)),
                ))
            }
            None => Ok(x),
        }
    }

    pub(crate) fn fail(
        &mut self,
        context: impl Into<String>,
        character: Option<String>,
        value: impl Into<String>,
    ) {
        self.failures.push(Witness {
            kind: WitnessKind::Failure,
            context: context.into(),
            character,
            value: value.into(),
        });
    }

    pub(crate) fn fail_membership(&mut self, context: impl Into<String>, w: MembershipWitness) {
        let value = match &w.element {
            Some(c) => format!("coefficient at {c}: {}", w.value),
            None => w.value.to_string(),
        };
        self.fail(context, Some(w.character), value);
    }

    pub(crate) fn confirm(&mut self, context: impl Into<String>, value: impl Into<String>) {
        self.confirmations.push(Witness {
            kind: WitnessKind::Confirmation,
            context: context.into(),
            character: None,
            value: value.into(),
        });
    }

    pub(crate) fn inconclusive(&mut self, reason: impl Into<String>) {
        self.reasons.push(reason.into());
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub(crate) fn provenance(&mut self, p: impl Into<String>) {
        let p = p.into();
        if !self.provenance.contains(&p) {
            self.provenance.push(p);
        }
    }

    pub(crate) fn finish(self) -> Verdict {
        let (status, reason) = if !self.failures.is_empty() {
            (Status::Falsified, None)
        } else if !self.reasons.is_empty() {
            (Status::Inconclusive, Some(self.reasons.join("; ")))
        } else if self.confirmations.is_empty() {
            (Status::Inconclusive, Some("nothing was tested".to_string()))
        } else {
            (Status::Verified, None)
        };
        let mut witnesses = self.failures;
        witnesses.extend(self.confirmations);
        Verdict {
            check_id: self.check.id().into(),
            status,
            reason,
            witnesses,
            notes: self.notes,
            provenance: self.provenance,
        }
    }
}

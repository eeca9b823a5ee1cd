//! The decision engine.
//!
//! [`classify`] applies the elementary triage for `d <= c`, reduces to
//! `a' <= b' <= c' <= d/2` with [`normalize`], then walks the known case
//! list. [`decide`] adds the Koszul margin, the rank oracle and the two
//! propagation rules in degree. Every rule that fires leaves a [`Step`] in
//! the certificate, and [`Step::replay`] re-derives its numbers.
//!
//! Non-existence bullets of the case list are only reported as `NotExists`
//! when the Koszul margin at the cell is negative. Outside CI(7,7,7) and
//! CI(7,7,8) the two always agree; for those two triples the rank oracle
//! certifies existence in every degree the bullet covers, so the engine
//! answers `Unknown` from the case list and leaves the verdict to [`decide`].

use std::fmt;

use crate::error::{Error, Result};
use crate::hilbert::nonexistence_margin;
use crate::oracle::{ci_witness, OracleConfig, WitnessReport};
use crate::linalg::PrimeField;
use crate::query::CIQuery;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Exists,
    NotExists,
    Unknown,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Exists => "Exists",
            Verdict::NotExists => "NotExists",
            Verdict::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a rule is able to conclude.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    Existence,
    NonExistence,
    /// Rewrites the query without deciding it.
    Reduction,
    /// Records data; decides nothing on its own.
    Evidence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    SurfaceIsGenerator,
    BelowSmallestDegree,
    IrreducibleSurface,
    LowDegreeSurfaceCurves,
    NoCurvesOnGenericSurface,
    Switch,
    SmallFirstDegree,
    FiveSmall,
    FiveTwelveTwelve,
    FiveTwelveLarge,
    FiveLarge,
    SixSmall,
    SixEightSmall,
    SixEightLarge,
    SixLarge,
    LargeDegrees,
    OpenRegion,
    KoszulMargin,
    RankWitness,
    ExistencePropagation,
    NonexistencePropagation,
}

impl Rule {
    pub const ALL: [Rule; 21] = [
        Rule::SurfaceIsGenerator,
        Rule::BelowSmallestDegree,
        Rule::IrreducibleSurface,
        Rule::LowDegreeSurfaceCurves,
        Rule::NoCurvesOnGenericSurface,
        Rule::Switch,
        Rule::SmallFirstDegree,
        Rule::FiveSmall,
        Rule::FiveTwelveTwelve,
        Rule::FiveTwelveLarge,
        Rule::FiveLarge,
        Rule::SixSmall,
        Rule::SixEightSmall,
        Rule::SixEightLarge,
        Rule::SixLarge,
        Rule::LargeDegrees,
        Rule::OpenRegion,
        Rule::KoszulMargin,
        Rule::RankWitness,
        Rule::ExistencePropagation,
        Rule::NonexistencePropagation,
    ];

    /// Stable identifier used in records.
    pub fn name(self) -> &'static str {
        match self {
            Rule::SurfaceIsGenerator => "surface-is-generator",
            Rule::BelowSmallestDegree => "below-smallest-degree",
            Rule::IrreducibleSurface => "irreducible-surface",
            Rule::LowDegreeSurfaceCurves => "low-degree-surface-curves",
            Rule::NoCurvesOnGenericSurface => "no-curves-on-generic-surface",
            Rule::Switch => "switch",
            Rule::SmallFirstDegree => "a-at-most-4",
            Rule::FiveSmall => "a5-b-at-most-11",
            Rule::FiveTwelveTwelve => "a5-b12-c12",
            Rule::FiveTwelveLarge => "a5-b12-c-at-least-13",
            Rule::FiveLarge => "a5-b-at-least-13",
            Rule::SixSmall => "a6-b-at-most-7",
            Rule::SixEightSmall => "a6-b8-c-8-or-9",
            Rule::SixEightLarge => "a6-b8-c-at-least-10",
            Rule::SixLarge => "a6-b-at-least-9",
            Rule::LargeDegrees => "a-at-least-7",
            Rule::OpenRegion => "open-region",
            Rule::KoszulMargin => "koszul-margin",
            Rule::RankWitness => "rank-witness",
            Rule::ExistencePropagation => "existence-propagation",
            Rule::NonexistencePropagation => "nonexistence-propagation",
        }
    }

    /// The statement the rule relies on, in one line.
    pub fn anchor(self) -> &'static str {
        match self {
            Rule::SurfaceIsGenerator => {
                "d in {a,b,c}: the surface is one generator and the other two cut a complete intersection curve on it"
            }
            Rule::BelowSmallestDegree => "d < a: the surface equation cannot lie in an ideal generated in degrees >= a",
            Rule::IrreducibleSurface => {
                "a < d < b: a generic form is irreducible, so it is not a combination of the generator of degree a alone"
            }
            Rule::LowDegreeSurfaceCurves => {
                "b < d < c, d <= 3: a surface of degree at most 3 contains complete intersection curves of every type below d"
            }
            Rule::NoCurvesOnGenericSurface => {
                "b < d < c, d >= 4: the generic surface of degree >= 4 contains no complete intersection curve of type (a,b) with a,b < d"
            }
            Rule::Switch => "x and d-x are interchangeable via linkage by the surface equation; replace x by min(x, d-x)",
            Rule::SmallFirstDegree => "a <= 4: the generic surface contains a CI(a,b,c)",
            Rule::FiveSmall => "a = 5, b <= 11: the generic surface contains a CI(5,b,c)",
            Rule::FiveTwelveTwelve => "a = 5, b = c = 12: the generic surface contains a CI(5,12,12)",
            Rule::FiveTwelveLarge => "a = 5, b = 12, c >= 13: no CI(5,12,c) on the generic surface of degree d >= 2c+15",
            Rule::FiveLarge => "a = 5, b >= 13: no CI(5,b,c) on the generic surface of degree d >= b+c+2",
            Rule::SixSmall => "a = 6, b <= 7: the generic surface contains a CI(6,b,c)",
            Rule::SixEightSmall => "a = 6, b = 8, c in {8,9}: the generic surface contains a CI(6,8,c)",
            Rule::SixEightLarge => "a = 6, b = 8, c >= 10: no CI(6,8,c) on the generic surface of degree d >= 2c+12",
            Rule::SixLarge => "a = 6, b >= 9: no CI(6,b,c) on the generic surface of degree d >= b+c+3",
            Rule::LargeDegrees => "a >= 7: no CI(a,b,c) on the generic surface of degree d >= a+b+c-3",
            Rule::OpenRegion => "no case of the classification settles this cell",
            Rule::KoszulMargin => {
                "H(W,a)+H(W,b)-H(W,d) < 0 for W of type (a,b,c,d-c) rules out the complete intersection"
            }
            Rule::RankWitness => {
                "a specialization over GF(p) whose quotient vanishes in degree d certifies the generic case by semicontinuity"
            }
            Rule::ExistencePropagation => {
                "existence on the generic surface of degree d0 >= a+b+c-3 implies existence in every degree above d0"
            }
            Rule::NonexistencePropagation => {
                "non-existence on the generic surface of degree d0 > 2c+b+a-3 implies non-existence in every degree above d0"
            }
        }
    }

    /// Which part of the engine the rule belongs to: `triage`, `switch`,
    /// `classification`, `margin`, `oracle` or `propagation`.
    pub fn source(self) -> &'static str {
        match self {
            Rule::SurfaceIsGenerator
            | Rule::BelowSmallestDegree
            | Rule::IrreducibleSurface
            | Rule::LowDegreeSurfaceCurves
            | Rule::NoCurvesOnGenericSurface => "triage",
            Rule::Switch => "switch",
            Rule::KoszulMargin => "margin",
            Rule::RankWitness => "oracle",
            Rule::ExistencePropagation | Rule::NonexistencePropagation => "propagation",
            _ => "classification",
        }
    }

    pub fn kind(self) -> RuleKind {
        match self {
            Rule::SurfaceIsGenerator
            | Rule::LowDegreeSurfaceCurves
            | Rule::SmallFirstDegree
            | Rule::FiveSmall
            | Rule::FiveTwelveTwelve
            | Rule::SixSmall
            | Rule::SixEightSmall
            | Rule::RankWitness
            | Rule::ExistencePropagation => RuleKind::Existence,
            Rule::BelowSmallestDegree
            | Rule::IrreducibleSurface
            | Rule::NoCurvesOnGenericSurface
            | Rule::FiveTwelveLarge
            | Rule::FiveLarge
            | Rule::SixEightLarge
            | Rule::SixLarge
            | Rule::LargeDegrees
            | Rule::KoszulMargin
            | Rule::NonexistencePropagation => RuleKind::NonExistence,
            Rule::Switch => RuleKind::Reduction,
            Rule::OpenRegion => RuleKind::Evidence,
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == name)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Numbers attached to a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    None,
    /// The query before the switch; the step's query is the result.
    Switched { from: CIQuery },
    Margin(i128),
    Witness(WitnessReport),
    /// The oracle was not run because the assembled matrix exceeds the cap.
    Capped { requested: u128, cap: u64 },
    /// The verdict at `from` carried up to the step's query.
    Propagated { from: CIQuery },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    /// The query the rule was applied to.
    pub query: CIQuery,
    pub evidence: Evidence,
    /// Whether this step settles the query on its own.
    pub conclusive: bool,
}

impl Step {
    fn new(rule: Rule, query: CIQuery, evidence: Evidence, conclusive: bool) -> Self {
        Self {
            rule,
            query,
            evidence,
            conclusive,
        }
    }

    /// The verdict this step supports, if it is conclusive.
    pub fn verdict(&self) -> Option<Verdict> {
        if !self.conclusive {
            return None;
        }
        match self.rule.kind() {
            RuleKind::Existence => Some(Verdict::Exists),
            RuleKind::NonExistence => Some(Verdict::NotExists),
            _ => None,
        }
    }

    /// The margin or Hilbert value carried by the step, if any.
    pub fn numeric(&self) -> Option<i128> {
        match &self.evidence {
            Evidence::Margin(m) => Some(*m),
            Evidence::Witness(w) => w.best_value().map(i128::from),
            _ => None,
        }
    }

    /// Recompute the step from its rule and query and compare.
    ///
    /// Witness steps rerun the oracle with the recorded prime, seed and trial
    /// count, so replaying them costs as much as the original run.
    pub fn replay(&self) -> Result<bool> {
        let q = self.query;
        Ok(match (&self.evidence, self.rule) {
            (Evidence::Switched { from }, Rule::Switch) => is_single_switch(from, &q),
            (Evidence::Margin(m), Rule::KoszulMargin) => {
                let now = margin_of(&q)?;
                now == *m && (now < 0) == self.conclusive
            }
            (Evidence::Margin(m), rule) => {
                case_rule(&q) == Some(CaseOutcome::Threshold(rule))
                    && margin_of(&q)? == *m
                    && (*m < 0) == self.conclusive
            }
            (Evidence::Witness(report), Rule::RankWitness) => {
                report.query == q
                    && ci_witness(&q, &replay_config(report)?)? == *report
                    && report.certified() == self.conclusive
            }
            (Evidence::Capped { requested, cap }, Rule::RankWitness) => {
                let cfg = OracleConfig {
                    resource_cap: *cap,
                    ..OracleConfig::default()
                };
                matches!(ci_witness(&q, &cfg),
                    Err(Error::ResourceCap { requested: r, .. }) if r == *requested)
            }
            (Evidence::Propagated { from }, Rule::ExistencePropagation) => {
                from.abc() == q.abc() && from.d() < q.d() && from.d() + 3 >= from.a() + from.b() + from.c()
            }
            (Evidence::Propagated { from }, Rule::NonexistencePropagation) => {
                from.abc() == q.abc() && from.d() < q.d() && from.d() + 3 > 2 * from.c() + from.b() + from.a()
            }
            (Evidence::None, rule) => match triage(&q) {
                Some(step) => step.rule == rule,
                None => match case_rule(&normalize(&q).0) {
                    Some(CaseOutcome::Decided(r)) => r == rule,
                    Some(CaseOutcome::Threshold(_)) => false,
                    None => rule == Rule::OpenRegion,
                },
            },
            _ => false,
        })
    }
}

/// `to` is `from` with one degree `x > d/2` replaced by `d - x`.
fn is_single_switch(from: &CIQuery, to: &CIQuery) -> bool {
    let d = from.d();
    to.d() == d
        && from.abc().iter().any(|&x| {
            if 2 * x <= d || x >= d {
                return false;
            }
            let mut before = from.abc().to_vec();
            let slot = before.iter().position(|&y| y == x).expect("degree present");
            before[slot] = d - x;
            before.sort_unstable();
            before == to.abc()
        })
}

fn replay_config(report: &WitnessReport) -> Result<OracleConfig> {
    let second = report
        .outcomes
        .iter()
        .map(|o| o.prime)
        .find(|&p| p != report.prime)
        .map(PrimeField::new)
        .transpose()?;
    Ok(OracleConfig {
        prime: PrimeField::new(report.prime)?,
        seed: report.seed,
        trials: report.trials,
        resource_cap: u64::MAX,
        second_prime: second,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub query: CIQuery,
    pub verdict: Verdict,
    pub certificate: Vec<Step>,
    /// The oracle run that certified existence, if any.
    pub witness: Option<WitnessReport>,
}

impl Decision {
    fn settled(query: CIQuery, certificate: Vec<Step>, witness: Option<WitnessReport>) -> Self {
        let verdict = certificate
            .last()
            .and_then(Step::verdict)
            .unwrap_or(Verdict::Unknown);
        Self {
            query,
            verdict,
            certificate,
            witness,
        }
    }

    /// The last step, which carries the verdict when there is one.
    pub fn terminal(&self) -> Option<&Step> {
        self.certificate.last()
    }

    /// The rule that settled the query, or the last one consulted.
    pub fn rule(&self) -> Option<Rule> {
        self.terminal().map(|s| s.rule)
    }

    /// The most recent Koszul margin in the certificate.
    pub fn margin(&self) -> Option<i128> {
        self.certificate.iter().rev().find_map(|s| match s.evidence {
            Evidence::Margin(m) => Some(m),
            _ => None,
        })
    }

    /// Witness reports gathered along the way, certifying or not.
    pub fn witness_reports(&self) -> impl Iterator<Item = &WitnessReport> {
        self.certificate.iter().filter_map(|s| match &s.evidence {
            Evidence::Witness(w) => Some(w),
            _ => None,
        })
    }
}

/// Replace each of `a, b, c` by `min(x, d - x)` and re-sort.
///
/// Returns the reduced query and one [`Step`] per replaced degree. Queries
/// with `d <= c` come back unchanged.
pub fn normalize(q: &CIQuery) -> (CIQuery, Vec<Step>) {
    if !q.is_canonical() {
        return (*q, Vec::new());
    }
    let d = q.d();
    let mut current = *q;
    let mut trace = Vec::new();
    for x in q.abc() {
        if d - x < x {
            let mut abc = current.abc();
            let slot = abc.iter().rposition(|&y| y == x).expect("degree present");
            abc[slot] = d - x;
            let next = CIQuery::new(abc[0], abc[1], abc[2], d).expect("degrees stay in range");
            trace.push(Step::new(Rule::Switch, next, Evidence::Switched { from: current }, false));
            current = next;
        }
    }
    (current, trace)
}

/// Answers that need no reduction: `d <= c` and its sub-cases.
fn triage(q: &CIQuery) -> Option<Step> {
    let [a, b, c] = q.abc();
    let d = q.d();
    let rule = if d == a || d == b || d == c {
        Rule::SurfaceIsGenerator
    } else if d < a {
        Rule::BelowSmallestDegree
    } else if d < b {
        Rule::IrreducibleSurface
    } else if d < c {
        if d <= 3 {
            Rule::LowDegreeSurfaceCurves
        } else {
            Rule::NoCurvesOnGenericSurface
        }
    } else {
        return None;
    };
    Some(Step::new(rule, *q, Evidence::None, true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CaseOutcome {
    Decided(Rule),
    /// A non-existence bullet whose degree threshold is met.
    Threshold(Rule),
}

/// The case list on a normalized query. `None` means below threshold.
fn case_rule(q: &CIQuery) -> Option<CaseOutcome> {
    use CaseOutcome::*;
    let [a, b, c] = q.abc();
    let d = q.d();
    match (a, b, c) {
        (..=4, _, _) => Some(Decided(Rule::SmallFirstDegree)),
        (5, ..=11, _) => Some(Decided(Rule::FiveSmall)),
        (5, 12, 12) => Some(Decided(Rule::FiveTwelveTwelve)),
        (5, 12, _) => (d >= 2 * c + 15).then_some(Threshold(Rule::FiveTwelveLarge)),
        (5, _, _) => (d >= b + c + 2).then_some(Threshold(Rule::FiveLarge)),
        (6, ..=7, _) => Some(Decided(Rule::SixSmall)),
        (6, 8, 8 | 9) => Some(Decided(Rule::SixEightSmall)),
        (6, 8, _) => (d >= 2 * c + 12).then_some(Threshold(Rule::SixEightLarge)),
        (6, _, _) => (d >= b + c + 3).then_some(Threshold(Rule::SixLarge)),
        _ => (d + 3 >= a + b + c).then_some(Threshold(Rule::LargeDegrees)),
    }
}

fn margin_of(q: &CIQuery) -> Result<i128> {
    let (a, b, c, d) = q.signed();
    nonexistence_margin(a, b, c, d)
}

/// Decide from the case list alone, without the oracle.
pub fn classify(q: &CIQuery) -> Decision {
    classify_with(q, true)
}

fn classify_with(q: &CIQuery, use_cases: bool) -> Decision {
    if let Some(step) = triage(q) {
        return Decision::settled(*q, vec![step], None);
    }
    let (n, mut steps) = normalize(q);
    if !use_cases {
        return Decision::settled(*q, steps, None);
    }
    match case_rule(&n) {
        Some(CaseOutcome::Decided(rule)) => steps.push(Step::new(rule, n, Evidence::None, true)),
        Some(CaseOutcome::Threshold(rule)) => {
            let margin = margin_of(&n).expect("normalized query has a < b+... < d");
            steps.push(Step::new(rule, n, Evidence::Margin(margin), margin < 0));
        }
        None => steps.push(Step::new(Rule::OpenRegion, n, Evidence::None, false)),
    }
    Decision::settled(*q, steps, None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Oracle settings; `None` turns the oracle off.
    pub oracle: Option<OracleConfig>,
    pub propagation: bool,
    /// Consult the case list. Triage and the switch always run.
    pub classification: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self {
            oracle: None,
            propagation: true,
            classification: true,
        }
    }
}

impl DecideOptions {
    pub fn with_oracle(cfg: OracleConfig) -> Self {
        Self {
            oracle: Some(cfg),
            ..Self::default()
        }
    }
}

/// How far below `d` the non-existence propagation looks for a negative
/// margin.
const PROPAGATION_WINDOW: u64 = 4096;

/// Step recording one oracle run, or the cap that prevented it.
fn witness_step(q: &CIQuery, cfg: &OracleConfig) -> Result<Step> {
    match ci_witness(q, cfg) {
        Ok(report) => {
            let certified = report.certified();
            Ok(Step::new(Rule::RankWitness, *q, Evidence::Witness(report), certified))
        }
        Err(Error::ResourceCap { requested, cap }) => {
            Ok(Step::new(Rule::RankWitness, *q, Evidence::Capped { requested, cap }, false))
        }
        Err(e) => Err(e),
    }
}

/// [`classify`], then the margin, the oracle and propagation for whatever
/// the case list leaves open.
///
/// A resource cap hit is recorded in the certificate and never changes the
/// verdict; other oracle errors (an invalid configuration) are returned.
pub fn decide(q: &CIQuery, opts: &DecideOptions) -> Result<Decision> {
    let first = classify_with(q, opts.classification);
    if first.verdict != Verdict::Unknown {
        return Ok(first);
    }
    let mut steps = first.certificate;
    let n = normalize(q).0;

    let margin = margin_of(&n)?;
    steps.push(Step::new(Rule::KoszulMargin, n, Evidence::Margin(margin), margin < 0));
    if margin < 0 {
        return Ok(Decision::settled(*q, steps, None));
    }

    if let Some(cfg) = &opts.oracle {
        let step = witness_step(&n, cfg)?;
        let done = step.conclusive;
        steps.push(step);
        if done {
            let witness = steps.last().and_then(|s| match &s.evidence {
                Evidence::Witness(w) => Some(w.clone()),
                _ => None,
            });
            return Ok(Decision::settled(*q, steps, witness));
        }
    }

    if opts.propagation {
        let [a, b, c] = n.abc();
        let d = n.d();
        if let Some(cfg) = &opts.oracle {
            let base = (a + b + c).saturating_sub(3).max(c + 1);
            if base < d {
                let from = n.with_d(base)?;
                let step = witness_step(&from, cfg)?;
                let certified = step.conclusive;
                let witness = match &step.evidence {
                    Evidence::Witness(w) if certified => Some(w.clone()),
                    _ => None,
                };
                steps.push(step);
                if certified {
                    steps.push(Step::new(
                        Rule::ExistencePropagation,
                        n,
                        Evidence::Propagated { from },
                        true,
                    ));
                    return Ok(Decision::settled(*q, steps, witness));
                }
            }
        }
        let lowest = (2 * c + b + a).saturating_sub(2).max(c + 1).max(d.saturating_sub(PROPAGATION_WINDOW));
        for d0 in lowest..d {
            let from = n.with_d(d0)?;
            let m = margin_of(&from)?;
            if m < 0 {
                steps.push(Step::new(Rule::KoszulMargin, from, Evidence::Margin(m), true));
                steps.push(Step::new(
                    Rule::NonexistencePropagation,
                    n,
                    Evidence::Propagated { from },
                    true,
                ));
                return Ok(Decision::settled(*q, steps, None));
            }
        }
    }

    Ok(Decision::settled(*q, steps, None))
}

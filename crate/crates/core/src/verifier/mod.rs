//! Grid verification of the monotonicity, convexity, Turán-type and bound
//! inequalities satisfied by `V_q`.
//!
//! Each suite produces a [`VerificationReport`]. Asserting checks decide
//! `pass`; observation tracks are tallied separately and never affect it.

mod convexity;
mod grid;
mod suites;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::TolerancePolicy;

pub use convexity::{power_mean, ConvexitySpec, Direction, Region};
pub use grid::{Grid, DEFAULT_Q, PAIR_POINTS};
pub use suites::{
    check_bounds_suite, check_logconvexity_in_q, check_monotonicity_suite, check_power_mean,
    check_simon, check_turan, turan_point, TuranPoint,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Monotonicity,
    Convexity,
    Turan,
    Logconvexity,
    Simon,
    Bounds,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Monotonicity,
        Suite::Convexity,
        Suite::Turan,
        Suite::Logconvexity,
        Suite::Simon,
        Suite::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Monotonicity => "monotonicity",
            Suite::Convexity => "convexity",
            Suite::Turan => "turan",
            Suite::Logconvexity => "logconvexity",
            Suite::Simon => "simon",
            Suite::Bounds => "bounds",
        }
    }

    /// Parses a list of suite names; `all` selects every suite.
    pub fn parse_list<S: AsRef<str>>(names: &[S]) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for n in names {
            if n.as_ref() == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(n.as_ref().parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::Usage("no suite selected".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite '{s}' (expected one of monotonicity, convexity, turan, logconvexity, simon, bounds, all)")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The comparison a check asserts between its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn holds(self, tol: &TolerancePolicy, lhs: f64, rhs: f64) -> bool {
        match self {
            Relation::Lt => tol.strict_lt(lhs, rhs),
            Relation::Le => tol.le(lhs, rhs),
            Relation::Eq => (lhs - rhs).abs() <= tol.slack(rhs),
        }
    }

    pub fn margin(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            Relation::Eq => -(rhs - lhs).abs(),
            _ => rhs - lhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Track {
    Assert,
    Observe,
}

/// A single evaluated comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub check: String,
    pub track: Track,
    pub relation: Relation,
    pub q: f64,
    pub x: f64,
    pub y: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub suite: Suite,
    pub check: String,
    pub q: f64,
    pub x: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// A point where a value needed by a check could not be computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalFailure {
    pub suite: Suite,
    pub check: String,
    pub q: f64,
    pub x: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub suite: Suite,
    pub check: String,
    pub relation: Relation,
    pub checked: usize,
    pub violations: usize,
    /// Smallest `rhs - lhs` seen.
    pub min_margin: f64,
    /// Smallest `(rhs - lhs)/|rhs|` seen.
    pub min_rel_margin: f64,
}

impl CheckSummary {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservationSummary {
    #[serde(flatten)]
    pub summary: CheckSummary,
    /// Up to a few points where the observed relation fails.
    pub counterexamples: Vec<ViolationRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub description: String,
    pub q: Vec<f64>,
    pub x: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: Vec<Suite>,
    pub grid: GridInfo,
    pub tolerance: TolerancePolicy,
    pub pass: bool,
    pub checks: Vec<CheckSummary>,
    pub violations: Vec<ViolationRecord>,
    pub observations: Vec<ObservationSummary>,
    pub failures: Vec<EvalFailure>,
}

const MAX_COUNTEREXAMPLES: usize = 5;

impl VerificationReport {
    pub(crate) fn assemble(
        parts: Vec<(Suite, Vec<Outcome>, Vec<EvalFailure>)>,
        grid: &Grid,
        tol: TolerancePolicy,
    ) -> Self {
        let mut checks: Vec<CheckSummary> = Vec::new();
        let mut observations: Vec<ObservationSummary> = Vec::new();
        let mut violations = Vec::new();
        let mut failures = Vec::new();
        let mut suites = Vec::new();
        for (suite, outcomes, fails) in parts {
            suites.push(suite);
            failures.extend(fails);
            let mut suite_violations = Vec::new();
            for o in outcomes {
                let ok = o.relation.holds(&tol, o.lhs, o.rhs);
                let margin = o.relation.margin(o.lhs, o.rhs);
                let rel = if o.rhs != 0.0 {
                    margin / o.rhs.abs()
                } else {
                    margin
                };
                let record = || ViolationRecord {
                    suite,
                    check: o.check.clone(),
                    q: o.q,
                    x: o.x,
                    y: o.y,
                    lhs: o.lhs,
                    rhs: o.rhs,
                    margin,
                };
                let summary = match o.track {
                    Track::Assert => {
                        if !ok {
                            suite_violations.push(record());
                        }
                        find_or_insert(&mut checks, suite, &o)
                    }
                    Track::Observe => {
                        let pos = observations
                            .iter()
                            .position(|s| s.summary.suite == suite && s.summary.check == o.check)
                            .unwrap_or_else(|| {
                                observations.push(ObservationSummary {
                                    summary: empty_summary(suite, &o),
                                    counterexamples: Vec::new(),
                                });
                                observations.len() - 1
                            });
                        let obs = &mut observations[pos];
                        if !ok && obs.counterexamples.len() < MAX_COUNTEREXAMPLES {
                            obs.counterexamples.push(record());
                        }
                        &mut obs.summary
                    }
                };
                summary.checked += 1;
                if !ok {
                    summary.violations += 1;
                }
                summary.min_margin = summary.min_margin.min(margin);
                summary.min_rel_margin = summary.min_rel_margin.min(rel);
            }
            suite_violations.sort_by(|a, b| {
                a.q.total_cmp(&b.q)
                    .then(a.x.total_cmp(&b.x))
                    .then(a.y.unwrap_or(0.0).total_cmp(&b.y.unwrap_or(0.0)))
            });
            violations.extend(suite_violations);
        }
        Self {
            suite: suites,
            grid: GridInfo {
                description: grid.description.clone(),
                q: grid.q_values.clone(),
                x: grid.x_values.clone(),
            },
            tolerance: tol,
            pass: violations.is_empty(),
            checks,
            violations,
            observations,
            failures,
        }
    }

    /// Merges reports of disjoint suites computed on the same grid.
    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.suite.extend(other.suite);
        self.checks.extend(other.checks);
        self.violations.extend(other.violations);
        self.observations.extend(other.observations);
        self.failures.extend(other.failures);
        self.pass = self.violations.is_empty();
        self
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn observation(&self, name: &str) -> Option<&ObservationSummary> {
        self.observations.iter().find(|c| c.summary.check == name)
    }
}

fn empty_summary(suite: Suite, o: &Outcome) -> CheckSummary {
    CheckSummary {
        suite,
        check: o.check.clone(),
        relation: o.relation,
        checked: 0,
        violations: 0,
        min_margin: f64::INFINITY,
        min_rel_margin: f64::INFINITY,
    }
}

fn find_or_insert<'a>(
    checks: &'a mut Vec<CheckSummary>,
    suite: Suite,
    o: &Outcome,
) -> &'a mut CheckSummary {
    match checks
        .iter()
        .position(|c| c.suite == suite && c.check == o.check)
    {
        Some(i) => &mut checks[i],
        None => {
            checks.push(empty_summary(suite, o));
            checks.last_mut().unwrap()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    pub grid: Grid,
    pub tolerance: TolerancePolicy,
    pub parallel: bool,
}

impl RunConfig {
    pub fn new(suites: Vec<Suite>, grid: Grid) -> Self {
        Self {
            suites,
            grid,
            tolerance: TolerancePolicy::default(),
            parallel: true,
        }
    }
}

/// Runs the selected suites. The report lists suites in canonical order and
/// is identical whether or not evaluation runs in parallel.
pub fn run_suite(config: &RunConfig) -> Result<VerificationReport> {
    if config.suites.is_empty() {
        return Err(Error::Usage("no suite selected".into()));
    }
    let g = Grid::new(
        config.grid.q_values.clone(),
        config.grid.x_values.clone(),
        config.grid.description.clone(),
    )?;
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    let ctx = suites::Ctx {
        parallel: config.parallel,
    };
    let parts = suites
        .iter()
        .map(|&s| (s, suites::run_one(s, &g, &ctx)))
        .map(|(s, (o, f))| (s, o, f))
        .collect();
    Ok(VerificationReport::assemble(parts, &g, config.tolerance))
}

/// Maps `f` over `items`, in parallel when asked, keeping input order.
pub(crate) fn ordered_map<T, R, F>(parallel: bool, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse_list(&["all"]).unwrap().len(), 6);
        assert_eq!(
            Suite::parse_list(&["turan", "bounds", "turan"]).unwrap(),
            vec![Suite::Turan, Suite::Bounds]
        );
        assert!(matches!(
            Suite::parse_list(&["nosuch"]),
            Err(Error::Usage(_))
        ));
        assert!(Suite::parse_list::<&str>(&[]).is_err());
    }

    #[test]
    fn inverted_inequality_is_one_violation() {
        let grid = Grid::single(0.0, 1.0).unwrap();
        let o = |lhs, rhs| Outcome {
            check: "fixture".into(),
            track: Track::Assert,
            relation: Relation::Lt,
            q: 0.0,
            x: 1.0,
            y: None,
            lhs,
            rhs,
        };
        let r = VerificationReport::assemble(
            vec![(Suite::Turan, vec![o(1.0, 2.0), o(2.0, 1.0)], vec![])],
            &grid,
            TolerancePolicy::default(),
        );
        assert!(!r.pass);
        assert_eq!(r.violations.len(), 1);
        assert!(r.violations[0].margin < 0.0);
        assert_eq!(r.checks[0].checked, 2);
    }

    #[test]
    fn observations_do_not_fail() {
        let grid = Grid::single(0.0, 1.0).unwrap();
        let o = Outcome {
            check: "obs".into(),
            track: Track::Observe,
            relation: Relation::Le,
            q: 0.0,
            x: 1.0,
            y: None,
            lhs: 3.0,
            rhs: 1.0,
        };
        let r = VerificationReport::assemble(
            vec![(Suite::Simon, vec![o], vec![])],
            &grid,
            TolerancePolicy::default(),
        );
        assert!(r.pass);
        assert_eq!(r.observations[0].summary.violations, 1);
        assert_eq!(r.observations[0].counterexamples.len(), 1);
    }

    #[test]
    fn empty_grid_is_usage_error() {
        let cfg = RunConfig::new(
            vec![Suite::Turan],
            Grid {
                q_values: vec![],
                x_values: vec![1.0],
                description: String::new(),
            },
        );
        assert!(matches!(run_suite(&cfg), Err(Error::Usage(_))));
    }
}

//! Scenario files, check execution, and reporting.
//!
//! A scenario declares objects (lattices, surfaces, intersection rings,
//! blow-ups, exact sequences, dimension facts) and a list of checks to run
//! against them. [`parse_scenario`] validates the JSON — including that
//! every reference resolves — and [`run_suite`] executes the checks into a
//! deterministic [`Report`]. [`paper_suite`] generates and runs the
//! built-in verification battery.

mod env;
mod report;
mod scenario;
mod suite;

pub use env::Env;
pub use report::{CheckResult, Report, Status, Summary, REPORT_SCHEMA};
pub use scenario::{
    CheckDecl, CheckOp, ClassExpr, CurveDecl, ExpectedHirzebruch, ExpectedSolve, NormalSource,
    ObjectDecl, ParseError, RingRef, Scenario, ScopeRef, ZariskiExpect, SCENARIO_SCHEMA,
};
pub use suite::{paper_suite, paper_suite_scenario, paper_suite_text};

/// Parse and validate a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    let scenario = Scenario::parse(text)?;
    // Building the environment validates object parameters and resolves
    // every reference; the built objects are discarded here.
    Env::build(&scenario)?;
    Ok(scenario)
}

/// Execute every check of a scenario, in declaration order.
pub fn run_suite(scenario: &Scenario) -> Result<Report, ParseError> {
    let env = Env::build(scenario)?;
    let checks = scenario
        .checks
        .iter()
        .enumerate()
        .map(|(i, c)| env.run_check(i, c))
        .collect();
    Ok(Report::new(checks))
}

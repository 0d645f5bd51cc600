//! Regenerate the shipped verification-suite fixture.
//!
//! ```text
//! cargo run -p divisor-workbench --example emit_paper_scenario > scenarios/paper_suite.json
//! ```

use divisor_workbench::workbench::paper_suite_text;

fn main() {
    print!("{}", paper_suite_text(5, 12).expect("default range is valid"));
}

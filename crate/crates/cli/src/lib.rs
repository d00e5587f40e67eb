//! Scenario-driven front end for `weylkit`: parse a scenario, run a task, emit a report.

pub mod run;
pub mod scenario;

pub use run::{error_exit_code, run, Options, Report};
pub use scenario::{Scenario, Task, WindowSpec};

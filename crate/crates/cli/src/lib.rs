//! Command-line front end: session specs, word expressions, evaluation under
//! each product model, convergence tables and seeded verification.

pub mod error;
pub mod models;
pub mod report;
pub mod session;
pub mod verify;
pub mod word;

pub use error::{CliError, Result};
pub use models::{cmd_converge, cmd_eval, Convergence, Family, Model, ResultRow, Session};
pub use report::Format;
pub use session::SessionSpec;
pub use verify::{cmd_verify, Bounds, Suite, VerifyReport};

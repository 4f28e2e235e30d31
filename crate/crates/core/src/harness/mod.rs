//! File format, instance generators, verification reports and the checks
//! behind the command-line front end.

pub mod checks;
pub mod generate;
pub mod io;
pub mod report;

pub use io::{emit_graph, parse_graph, read_graph_file};
pub use report::{CheckRecord, FuzzReport, InstanceDescriptor, VerificationReport};

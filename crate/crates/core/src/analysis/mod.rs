//! Longest induced paths of blow-up graphs and the bookkeeping that confines
//! them: exact and heuristic search, traces, sampled structure checks and the
//! bound report.

pub mod report;
pub mod sampler;
pub mod solver;
pub mod structure;
pub mod trace;

pub use report::{bound_report, BoundReport, Constants};
pub use sampler::{sample_induced_path, trim_to_convention};
pub use solver::{lip_exact, lip_heuristic, InducedPathResult};
pub use structure::{check_structure_lemmas, StructureContext, StructureReport, STATEMENTS};
pub use trace::{analyze_path, trace_of, TraceAnalysis, TriangleVisit};

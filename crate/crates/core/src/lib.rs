//! SINR link scheduling with the mean power assignment.
//!
//! Links are scheduled by coloring a conflict graph, splitting each color
//! class by length and merging the pieces into slots that meet the SINR
//! condition under `P_v = c * l_v^(alpha/2)`. Exhaustive oracles give ground
//! truth on small instances.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coloring;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod geometry;
pub mod independence;
pub mod interference;
pub mod oracle;
pub mod refinement;
pub mod report;
pub mod scheduler;

pub use coloring::{hochbaum_color, is_proper, Coloring, Graph};
pub use error::{Error, Result};
pub use experiment::{bench, write_csv, BenchOptions, BenchRow};
pub use generate::{generate, GeneratorSpec, LengthDist};
pub use geometry::{Link, LinkId, LinkInstance, ModelKind, Point, Violation};
pub use independence::{boundedness, build_conflict_graph, is_q_independent_set, ConflictGraph, Criterion};
pub use interference::{Interference, PowerAssignment, PowerKind, SignalReport};
pub use oracle::{chromatic_exact, optimal_schedule_fixed, optimal_schedule_pc, pc_feasible};
pub use refinement::{refine, Schedule, ScheduleFile};
pub use report::{verify, ScheduleReport};
pub use scheduler::{noise_lift, schedule, schedule_independent, schedule_pc, IndependentTrace, PcTrace};

//! The condition `C_i`, the schedule, and suitability checking.

pub mod axioms;
pub mod check;
pub mod report;
pub mod schedule;
pub mod stage;

pub use axioms::check_axioms;
pub use check::{check_condition, check_suitable, clause7, find_simple_root_in, root_table, tuple_index};
pub use report::{AxiomRecord, AxiomReport, ClauseRecord, VerificationReport};
pub use schedule::{pair, schedule_at, schedule_index, schedule_prefix, unpair, Rule, SCHEDULE_ID};
pub use stage::{FiniteStage, StageSequence};

//! IO companion to `ebcm-core`: the schedule DSL, bit-exact run-record
//! serialization, and the engine behind the `ebcm` command line tool.

pub mod parse;
pub mod record;

pub use parse::{parse_schedule, serialize_schedule, ParseError, ScheduleDoc};
pub use record::{
    emit_run_record, emit_sweep_csv, parse_record_json, z_display, Format, RunRecordDoc, SweepRow,
};

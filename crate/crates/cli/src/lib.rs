//! Configuration, figure presets and CSV sweeps behind the `sagin-outage`
//! command.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod oracle;
pub mod preset;
pub mod sweep;

pub use config::{load_config, parse_config, ConfigError, Point, ScenarioConfig, Sweep};
pub use preset::Preset;
pub use sweep::{format_float, run_sweep, Row, SweepResult, Values};

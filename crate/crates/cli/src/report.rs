//! JSON report documents. Floats are written with 17 significant digits
//! so every value round-trips exactly.

use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;
use strichartz_core::{RatioReport, Verdict};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One run's output document.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config_echo: RunConfig,
    pub value: Option<f64>,
    pub stderr: Option<f64>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub ratio: Option<f64>,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub verdict: Verdict,
    /// Command-specific payload (tables, traces, scans, checks).
    pub details: Value,
    pub wall_time_seconds: f64,
    pub artifact_version: &'static str,
}

/// The numerical part of a report without the config echo or timing.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Outcome {
    pub value: Option<f64>,
    pub stderr: Option<f64>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub ratio: Option<f64>,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub details: Value,
}

impl Outcome {
    /// value = ratio and stderr = its propagated error.
    pub fn from_ratio(r: &RatioReport) -> Self {
        Self {
            value: r.ratio,
            stderr: Some(r.ratio_error()).filter(|e| e.is_finite()),
            lhs: Some(r.lhs),
            rhs: Some(r.rhs),
            ratio: r.ratio,
            expected: Some(r.expected),
            tolerance: Some(r.tolerance),
            details: Value::Null,
        }
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }
}

impl Report {
    pub fn new(config: RunConfig, outcome: Outcome, verdict: Verdict, wall_time_seconds: f64) -> Self {
        let command = serde_json::to_value(config.command).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            config_echo: config,
            value: outcome.value,
            stderr: outcome.stderr,
            lhs: outcome.lhs,
            rhs: outcome.rhs,
            ratio: outcome.ratio,
            expected: outcome.expected,
            tolerance: outcome.tolerance,
            verdict,
            details: outcome.details,
            wall_time_seconds,
            artifact_version: ARTIFACT_VERSION,
        }
    }

    pub fn to_json(&self) -> Vec<u8> {
        to_json_bytes(self)
    }
}

/// Pretty JSON where every f64 is printed as `d.dddddddddddddddde±x`.
#[derive(Debug, Default)]
pub struct RoundTripFormatter {
    inner: PrettyFormatter<'static>,
}

macro_rules! forward {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(
            fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.inner.$name(w $(, $arg)*)
            }
        )*
    };
}

impl Formatter for RoundTripFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    forward! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }
}

pub fn to_json_bytes<S: Serialize + ?Sized>(value: &S) -> Vec<u8> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, RoundTripFormatter::default());
    value.serialize(&mut ser).expect("reports serialize infallibly");
    out.push(b'\n');
    out
}

/// Writes via a temporary sibling and a rename, so `path` never holds a
/// partial document.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    let result = std::fs::write(&tmp, bytes).and_then(|()| std::fs::rename(&tmp, path));
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result
}

use thiserror::Error;

use crate::catalog::ValidationReport;
use crate::scalar::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
  #[error("division by zero")]
  DivisionByZero,

  #[error("cannot parse {what} from {input:?}")]
  Parse { what: &'static str, input: String },

  #[error("spec file line {line}: {field}: {message}")]
  SpecFile { line: usize, field: String, message: String },

  #[error("unknown surface {0:?} (expected one of hopf, inoue_sm, inoue_spm, kodaira_primary, kodaira_secondary)")]
  UnknownSurface(String),

  #[error("surface {surface} requires parameter {param:?}")]
  MissingParam { surface: &'static str, param: &'static str },

  #[error("invalid parameter {param}: {reason}")]
  InvalidParam { param: String, reason: String },

  #[error("structure constants failed validation: {0}")]
  Validation(Box<ValidationReport>),

  #[error("conflicting structure constant c_{{{i}{h}}}^{{{k}}}: {first} vs {second}")]
  ConflictingConstant { i: String, h: String, k: String, first: String, second: String },

  #[error("differential does not split into bidegrees (1,0)+(0,1): {0}")]
  NonIntegrable(String),

  #[error("invalid metric: {0}")]
  InvalidMetric(String),

  #[error("time {t} is outside the existence interval [0, {t_max})")]
  OutOfInterval { t: Rational, t_max: String },

  #[error("Ricci form is not a real (1,1)-form: {0}")]
  NonRealRicci(String),

  #[error("i/o: {0}")]
  Io(String),

  #[error("singular linear system")]
  Singular,
}

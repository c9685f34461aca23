//! Chern-Ricci flow of invariant metrics. The Ricci form does not depend on the
//! metric, so `2ω(t) = 2ω₀ − t·2Ric` and every coefficient is affine in `t`.

use std::cmp::Ordering;
use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::catalog::AlgebraSpec;
use crate::curvature::{chern_ricci_form, RicciForm};
use crate::error::{Error, Result};
use crate::hodge::{Metric, MetricRecord};
use crate::scalar::{rational_to_f64, Rational};

/// `a + b√d` with `d > 0` not a rational square, or a plain rational when `b = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Surd {
  a: Rational,
  b: Rational,
  d: Rational,
}

fn exact_sqrt(q: &Rational) -> Option<Rational> {
  if q.is_negative() {
    return None;
  }
  let root = |n: &BigInt| {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
  };
  Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

/// Sign of `a + b√d`, `d ≥ 0`.
fn sign_of(a: &Rational, b: &Rational, d: &Rational) -> Ordering {
  let zero = Rational::zero();
  let sa = a.cmp(&zero);
  let sb = if d.is_zero() { Ordering::Equal } else { b.cmp(&zero) };
  match (sa, sb) {
    (x, Ordering::Equal) => x,
    (Ordering::Equal, y) => y,
    (x, y) if x == y => x,
    // Opposite signs: compare a² with b²d.
    (x, _) => match (a * a).cmp(&(b * b * d)) {
      Ordering::Greater => x,
      Ordering::Less => x.reverse(),
      Ordering::Equal => Ordering::Equal,
    },
  }
}

impl Surd {
  pub fn rational(q: Rational) -> Self { Self { a: q, b: Rational::zero(), d: Rational::zero() } }

  pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
    assert!(!d.is_negative(), "negative radicand");
    match exact_sqrt(&d) {
      Some(r) => Self::rational(a + b * r),
      None if b.is_zero() => Self::rational(a),
      None => Self { a, b, d },
    }
  }

  pub fn as_rational(&self) -> Option<&Rational> { self.b.is_zero().then_some(&self.a) }

  pub fn cmp_rational(&self, q: &Rational) -> Ordering { sign_of(&(&self.a - q), &self.b, &self.d) }

  /// Comparison, defined when both share the radicand or one is rational.
  pub fn cmp_surd(&self, other: &Surd) -> Ordering {
    if let Some(q) = other.as_rational() {
      return self.cmp_rational(q);
    }
    if let Some(q) = self.as_rational() {
      return other.cmp_rational(q).reverse();
    }
    assert_eq!(self.d, other.d, "surds with different radicands");
    sign_of(&(&self.a - &other.a), &(&self.b - &other.b), &self.d)
  }

  pub fn to_f64(&self) -> f64 { rational_to_f64(&self.a) + rational_to_f64(&self.b) * rational_to_f64(&self.d).sqrt() }

  pub fn scale(&self, k: &Rational) -> Surd { Surd { a: &self.a * k, b: &self.b * k, d: self.d.clone() } }
}

impl fmt::Display for Surd {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.b.is_zero() {
      return write!(f, "{}", self.a);
    }
    if !self.a.is_zero() {
      write!(f, "{} ", self.a)?;
      f.write_str(if self.b.is_negative() { "- " } else { "+ " })?;
    } else if self.b.is_negative() {
      f.write_str("-")?;
    }
    write!(f, "{}*sqrt({})", self.b.abs(), self.d)
  }
}

/// Supremum of the existence interval.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TMax {
  Infinite,
  Finite(Surd),
}

impl TMax {
  pub fn is_infinite(&self) -> bool { matches!(self, TMax::Infinite) }

  /// `t < t_max`.
  pub fn exceeds(&self, t: &Rational) -> bool {
    match self {
      TMax::Infinite => true,
      TMax::Finite(s) => s.cmp_rational(t) == Ordering::Greater,
    }
  }

  pub fn to_f64(&self) -> f64 {
    match self {
      TMax::Infinite => f64::INFINITY,
      TMax::Finite(s) => s.to_f64(),
    }
  }
}

impl fmt::Display for TMax {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      TMax::Infinite => f.write_str("inf"),
      TMax::Finite(s) => write!(f, "{s}"),
    }
  }
}

impl Serialize for TMax {
  fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> { s.collect_str(self) }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlowSolution {
  pub initial: Metric,
  pub rho: RicciForm,
  pub t_max: TMax,
}

/// `V(t) = A t² + B t + C`.
pub fn volume_polynomial(m0: &Metric, rho: &RicciForm) -> [Rational; 3] {
  let (r0, s0, u0) = (m0.r2(), m0.s2(), m0.u());
  let a = &rho.rho_r * &rho.rho_s - rho.rho_u.norm_sqr();
  let cross = (u0 * &rho.rho_u.conj()).re().clone();
  let b = -(r0 * &rho.rho_s + s0 * &rho.rho_r) + cross * Rational::from_integer(2.into());
  [a, b, m0.v()]
}

fn least_positive(candidates: Vec<Surd>) -> TMax {
  let zero = Rational::zero();
  candidates
    .into_iter()
    .filter(|s| s.cmp_rational(&zero) == Ordering::Greater)
    .min_by(|x, y| x.cmp_surd(y))
    .map_or(TMax::Infinite, TMax::Finite)
}

pub fn solve_flow(spec: &AlgebraSpec, m0: &Metric) -> Result<FlowSolution> { Ok(flow_from_rho(m0.clone(), chern_ricci_form(spec, m0)?)) }

pub fn flow_from_rho(initial: Metric, rho: RicciForm) -> FlowSolution {
  let mut candidates = Vec::new();
  for (x0, rate) in [(initial.r2(), &rho.rho_r), (initial.s2(), &rho.rho_s)] {
    if !rate.is_zero() {
      candidates.push(Surd::rational(x0 / rate));
    }
  }
  let [a, b, c] = volume_polynomial(&initial, &rho);
  if a.is_zero() {
    if !b.is_zero() {
      candidates.push(Surd::rational(-c / b));
    }
  } else {
    let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
    if !disc.is_negative() {
      let two_a = &a * Rational::from_integer(2.into());
      let center = -&b / &two_a;
      let half_width = two_a.recip();
      candidates.push(Surd::new(center.clone(), half_width.clone(), disc.clone()));
      candidates.push(Surd::new(center, -half_width, disc));
    }
  }
  let t_max = least_positive(candidates);
  FlowSolution { initial, rho, t_max }
}

impl FlowSolution {
  pub fn metric_at(&self, t: &Rational) -> Result<Metric> {
    if t.is_negative() || !self.t_max.exceeds(t) {
      return Err(Error::OutOfInterval { t: t.clone(), t_max: self.t_max.to_string() });
    }
    let m = &self.initial;
    Metric::new(m.r2() - t * &self.rho.rho_r, m.s2() - t * &self.rho.rho_s, m.u() - &self.rho.rho_u.scale(t))
  }

  pub fn sample_trajectory(&self, times: &[Rational]) -> Result<Vec<(Rational, Metric)>> {
    times.iter().map(|t| Ok((t.clone(), self.metric_at(t)?))).collect()
  }

  pub fn is_stationary(&self) -> bool { self.rho.is_zero() }

  pub fn record(&self) -> FlowRecord {
    FlowRecord { initial: MetricRecord::from(&self.initial), rho: self.rho.clone(), t_max: self.t_max.clone() }
  }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowRecord {
  pub initial: MetricRecord,
  pub rho: RicciForm,
  pub t_max: TMax,
}

#[derive(Serialize)]
struct CsvRow {
  t: String,
  r2: String,
  s2: String,
  #[serde(rename = "Re(u)")]
  re_u: String,
  #[serde(rename = "Im(u)")]
  im_u: String,
  #[serde(rename = "V")]
  v: String,
}

/// Columns `t,r2,s2,Re(u),Im(u),V`, exact rational text.
pub fn write_csv<W: Write>(out: W, samples: &[(Rational, Metric)]) -> Result<()> {
  let mut w = csv::Writer::from_writer(out);
  let io = |e: csv::Error| Error::Io(e.to_string());
  for (t, m) in samples {
    w.serialize(CsvRow {
      t: t.to_string(),
      r2: m.r2().to_string(),
      s2: m.s2().to_string(),
      re_u: m.u().re().to_string(),
      im_u: m.u().im().to_string(),
      v: m.v().to_string(),
    })
    .map_err(io)?;
  }
  if samples.is_empty() {
    w.write_record(["t", "r2", "s2", "Re(u)", "Im(u)", "V"]).map_err(io)?;
  }
  w.flush().map_err(|e| Error::Io(e.to_string()))
}

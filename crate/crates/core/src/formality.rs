//! Closure of harmonic spaces under the wedge product, and the summary table.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::catalog::{load_surface, AlgebraSpec, Surface};
use crate::error::Result;
use crate::flow::solve_flow;
use crate::forms::{Form, Grading};
use crate::harmonic::{HarmonicBasis, Kind};
use crate::hodge::{HermitianSurface, Metric, MetricRecord};
use crate::scalar::Rational;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
  Kotschick,
  Dolbeault,
  BottChern,
  AeppliAlgebra,
  AeppliBcModule,
}

impl Property {
  pub const ALL: [Property; 5] =
    [Property::Kotschick, Property::Dolbeault, Property::BottChern, Property::AeppliAlgebra, Property::AeppliBcModule];

  pub fn label(self) -> &'static str {
    match self {
      Property::Kotschick => "Kotschick",
      Property::Dolbeault => "Dolbeault",
      Property::BottChern => "Bott-Chern",
      Property::AeppliAlgebra => "Aeppli algebra",
      Property::AeppliBcModule => "Aeppli BC-module",
    }
  }

  /// Kinds of the left factor, the right factor and the product.
  fn kinds(self) -> (Kind, Kind) {
    match self {
      Property::Kotschick => (Kind::DeRham, Kind::DeRham),
      Property::Dolbeault => (Kind::Dolbeault, Kind::Dolbeault),
      Property::BottChern => (Kind::BottChern, Kind::BottChern),
      Property::AeppliAlgebra => (Kind::Aeppli, Kind::Aeppli),
      Property::AeppliBcModule => (Kind::BottChern, Kind::Aeppli),
    }
  }
}

impl fmt::Display for Property {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.write_str(self.label()) }
}

/// Two harmonic forms whose product is not harmonic.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
  pub left: Form,
  pub right: Form,
  pub product: Form,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Closure {
  pub holds: bool,
  pub witness: Option<Witness>,
}

fn spaces(hs: &HermitianSurface, kind: Kind) -> BTreeMap<Grading, HarmonicBasis> {
  hs.harmonic_spaces(kind).into_iter().map(|b| (b.grading, b)).collect()
}

/// Products of basis pairs (left of `property`'s first kind, right of the second) that
/// fall outside the harmonic space of the second kind. Zero products count as harmonic.
fn find_failure(hs: &HermitianSurface, property: Property) -> Option<Witness> {
  let (left_kind, right_kind) = property.kinds();
  find_failure_kinds(hs, left_kind, right_kind)
}

fn find_failure_kinds(hs: &HermitianSurface, left_kind: Kind, right_kind: Kind) -> Option<Witness> {
  let targets = spaces(hs, right_kind);
  let left = if left_kind == right_kind { targets.clone() } else { spaces(hs, left_kind) };
  for (gl, bl) in &left {
    for (gr, br) in &targets {
      let Some(target) = Kind::product_grading(*gl, *gr) else { continue };
      for a in &bl.basis {
        for b in &br.basis {
          let product = a.wedge(b);
          if !product.is_zero() && !targets[&target].contains(&product) {
            return Some(Witness { left: a.clone(), right: b.clone(), product });
          }
        }
      }
    }
  }
  None
}

pub fn check_property(hs: &HermitianSurface, property: Property) -> Closure {
  let witness = find_failure(hs, property);
  Closure { holds: witness.is_none(), witness }
}

/// Kotschick, Dolbeault or Bott-Chern closure; Aeppli for the algebra question.
pub fn check_closure(hs: &HermitianSurface, kind: Kind) -> Closure {
  let property = match kind {
    Kind::DeRham => Property::Kotschick,
    Kind::Dolbeault => Property::Dolbeault,
    Kind::BottChern => Property::BottChern,
    Kind::Aeppli => Property::AeppliAlgebra,
    Kind::ConjugateDolbeault => {
      let witness = find_failure_kinds(hs, kind, kind);
      return Closure { holds: witness.is_none(), witness };
    }
  };
  check_property(hs, property)
}

pub fn check_aeppli_algebra(hs: &HermitianSurface) -> Closure { check_property(hs, Property::AeppliAlgebra) }

pub fn check_aeppli_module(hs: &HermitianSurface) -> Closure { check_property(hs, Property::AeppliBcModule) }

/// Whether `a ∧ b` is a nonzero non-harmonic form for the product kind of `property`.
pub fn is_witness(hs: &HermitianSurface, property: Property, a: &Form, b: &Form) -> bool {
  let (left_kind, right_kind) = property.kinds();
  let product = a.wedge(b);
  hs.is_harmonic(left_kind, a) && hs.is_harmonic(right_kind, b) && !product.is_zero() && !hs.is_harmonic(right_kind, &product)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FormalityVerdict {
  pub kotschick: bool,
  pub dolbeault: bool,
  pub bott_chern: bool,
  pub aeppli_algebra: bool,
  pub aeppli_bc_module: bool,
  pub witnesses: BTreeMap<Property, Witness>,
}

impl FormalityVerdict {
  pub fn get(&self, p: Property) -> bool {
    match p {
      Property::Kotschick => self.kotschick,
      Property::Dolbeault => self.dolbeault,
      Property::BottChern => self.bott_chern,
      Property::AeppliAlgebra => self.aeppli_algebra,
      Property::AeppliBcModule => self.aeppli_bc_module,
    }
  }

  pub fn flags(&self) -> [bool; 5] { Property::ALL.map(|p| self.get(p)) }

  /// `(T,T,T,F,T)`.
  pub fn short(&self) -> String {
    let cells: Vec<&str> = self.flags().iter().map(|&b| if b { "T" } else { "F" }).collect();
    format!("({})", cells.join(","))
  }
}

pub fn verdict(hs: &HermitianSurface) -> FormalityVerdict {
  let mut witnesses = BTreeMap::new();
  let mut flags = [false; 5];
  for (slot, p) in Property::ALL.into_iter().enumerate() {
    let c = check_property(hs, p);
    flags[slot] = c.holds;
    if let Some(w) = c.witness {
      witnesses.insert(p, w);
    }
  }
  let [kotschick, dolbeault, bott_chern, aeppli_algebra, aeppli_bc_module] = flags;
  FormalityVerdict { kotschick, dolbeault, bott_chern, aeppli_algebra, aeppli_bc_module, witnesses }
}

pub fn verdict_for(spec: &AlgebraSpec, m: &Metric) -> Result<FormalityVerdict> {
  Ok(verdict(&HermitianSurface::new(spec.clone(), m.clone())?))
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowVerdict {
  #[serde(serialize_with = "ser_display")]
  pub t: Rational,
  pub metric: MetricRecord,
  pub verdict: FormalityVerdict,
}

fn ser_display<S: serde::Serializer, T: fmt::Display>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> { s.collect_str(x) }

#[derive(Clone, Debug, Serialize)]
pub struct FlowVerdicts {
  pub samples: Vec<FlowVerdict>,
  /// Every verdict component is the same at all sampled times.
  pub preserved: bool,
}

pub fn verdict_along_flow(spec: &AlgebraSpec, m0: &Metric, times: &[Rational]) -> Result<FlowVerdicts> {
  let sol = solve_flow(spec, m0)?;
  let mut samples = Vec::new();
  for (t, m) in sol.sample_trajectory(times)? {
    let verdict = verdict_for(spec, &m)?;
    samples.push(FlowVerdict { t, metric: MetricRecord::from(&m), verdict });
  }
  let preserved = samples.windows(2).all(|w| w[0].verdict.flags() == w[1].verdict.flags());
  Ok(FlowVerdicts { samples, preserved })
}

/// Which metrics a table is computed over.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricChoice {
  Diagonal,
  Generic,
}

/// A cell of the summary table, aggregated over sampled metrics.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cell {
  Always,
  Never,
  /// True for some sampled metrics and false for others.
  Mixed,
  /// Not computed.
  Unknown,
}

impl Cell {
  pub fn from_samples(values: &[bool]) -> Cell {
    match (values.iter().all(|&b| b), values.iter().all(|&b| !b)) {
      (true, _) => Cell::Always,
      (_, true) => Cell::Never,
      _ => Cell::Mixed,
    }
  }

  pub fn label(self) -> &'static str {
    match self {
      Cell::Always => "always",
      Cell::Never => "never",
      Cell::Mixed => "depends",
      Cell::Unknown => "?",
    }
  }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
  pub surface: String,
  pub computed: bool,
  pub cells: [Cell; 5],
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1 {
  pub choice: MetricChoice,
  pub seed: u64,
  pub metrics_per_surface: usize,
  pub rows: Vec<TableRow>,
}

/// Row for class VII surfaces with `b₂ > 0`: the Kotschick obstruction is topological;
/// nothing else is known. Not computed.
pub fn class_vii_row() -> TableRow {
  TableRow {
    surface: "class VII, b2 > 0".into(),
    computed: false,
    cells: [Cell::Never, Cell::Unknown, Cell::Unknown, Cell::Unknown, Cell::Unknown],
  }
}

pub fn table_row(surface: Surface, metrics: &[Metric]) -> Result<TableRow> {
  let spec = load_surface(surface.name(), &surface.default_params())?;
  let verdicts = metrics.iter().map(|m| verdict_for(&spec, m)).collect::<Result<Vec<_>>>()?;
  let cells = Property::ALL.map(|p| Cell::from_samples(&verdicts.iter().map(|v| v.get(p)).collect::<Vec<_>>()));
  Ok(TableRow { surface: surface.title().into(), computed: true, cells })
}

pub fn table1(choice: MetricChoice, seed: u64, n: usize) -> Result<Table1> {
  let metrics = Metric::sample(seed, n, choice == MetricChoice::Diagonal);
  let mut rows = vec![class_vii_row()];
  for s in Surface::ALL {
    rows.push(table_row(s, &metrics)?);
  }
  Ok(Table1 { choice, seed, metrics_per_surface: n, rows })
}

impl fmt::Display for Table1 {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let choice = match self.choice {
      MetricChoice::Diagonal => "diagonal",
      MetricChoice::Generic => "generic (u != 0)",
    };
    writeln!(f, "# {choice} metrics, {} per surface, seed {}", self.metrics_per_surface, self.seed)?;
    write!(f, "{:<20}", "surface")?;
    for p in Property::ALL {
      write!(f, " | {:<16}", p.label())?;
    }
    writeln!(f)?;
    for row in &self.rows {
      let name = if row.computed { row.surface.clone() } else { format!("{} *", row.surface) };
      write!(f, "{name:<20}")?;
      for c in row.cells {
        write!(f, " | {:<16}", c.label())?;
      }
      writeln!(f)?;
    }
    write!(f, "* not computed: Kotschick obstruction from b1 = 1, b2 > 0; other columns open")
  }
}

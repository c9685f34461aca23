//! Lie algebras with complex structure: the built-in surface families and
//! user-supplied structure-constant tables.
//!
//! Structure constants follow `[φ_I, φ_H] = c_{IH}^K φ_K`, dually
//! `dφ^K = −Σ_{I<H} c_{IH}^K φ^I∧φ^H`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabet::{pairs, triples, Idx, Tensor3};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational, Scalar};

/// Catalog families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Surface {
  Hopf,
  InoueSM,
  InoueSpm,
  KodairaPrimary,
  KodairaSecondary,
}

impl Surface {
  pub const ALL: [Surface; 5] =
    [Surface::Hopf, Surface::InoueSM, Surface::InoueSpm, Surface::KodairaPrimary, Surface::KodairaSecondary];

  pub fn name(self) -> &'static str {
    match self {
      Surface::Hopf => "hopf",
      Surface::InoueSM => "inoue_sm",
      Surface::InoueSpm => "inoue_spm",
      Surface::KodairaPrimary => "kodaira_primary",
      Surface::KodairaSecondary => "kodaira_secondary",
    }
  }

  /// Human-readable row label.
  pub fn title(self) -> &'static str {
    match self {
      Surface::Hopf => "Hopf",
      Surface::InoueSM => "Inoue S_M",
      Surface::InoueSpm => "Inoue S±",
      Surface::KodairaPrimary => "primary Kodaira",
      Surface::KodairaSecondary => "secondary Kodaira",
    }
  }

  pub fn params(self) -> &'static [&'static str] {
    match self {
      Surface::InoueSM => &["alpha", "beta"],
      Surface::InoueSpm => &["q"],
      _ => &[],
    }
  }

  /// A fixed admissible parameter choice, used by sweeps and the CLI defaults.
  pub fn default_params(self) -> BTreeMap<String, Rational> {
    let mut p = BTreeMap::new();
    match self {
      Surface::InoueSM => {
        p.insert("alpha".into(), Rational::one());
        p.insert("beta".into(), Rational::zero());
      }
      Surface::InoueSpm => {
        p.insert("q".into(), Rational::zero());
      }
      _ => {}
    }
    p
  }

  pub fn from_name(name: &str) -> Result<Surface> {
    Surface::ALL.into_iter().find(|s| s.name() == name).ok_or_else(|| Error::UnknownSurface(name.to_string()))
  }
}

impl fmt::Display for Surface {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.write_str(self.name()) }
}

/// Structure constants of a 4-dimensional real Lie algebra with complex structure,
/// written in a complex coframe `(φ¹, φ², φ̄¹, φ̄²)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraSpec {
  name: String,
  params: BTreeMap<String, Rational>,
  c: Tensor3<Scalar>,
}

impl AlgebraSpec {
  /// A spec with the given raw table; no completion or validation.
  pub fn from_table(name: impl Into<String>, params: BTreeMap<String, Rational>, c: Tensor3<Scalar>) -> Self {
    Self { name: name.into(), params, c }
  }

  pub fn abelian() -> Self { Self::from_table("abelian", BTreeMap::new(), Tensor3::filled(Scalar::zero())) }

  /// Builds the full table from one representative per antisymmetric/conjugate orbit.
  /// Repeated entries must agree with what completion already produced.
  pub fn complete(
    name: impl Into<String>,
    params: BTreeMap<String, Rational>,
    entries: &[(Idx, Idx, Idx, Scalar)],
  ) -> Result<Self> {
    let mut c = Tensor3::filled(Scalar::zero());
    let mut seen = Tensor3::filled(false);
    for (i, h, k, v) in entries {
      let orbit = [
        (*i, *h, *k, v.clone()),
        (*h, *i, *k, -v),
        (i.bar(), h.bar(), k.bar(), v.conj()),
        (h.bar(), i.bar(), k.bar(), -v.conj()),
      ];
      for (a, b, d, value) in orbit {
        let current = c.get(a, b, d);
        if *seen.get(a, b, d) && *current != value {
          return Err(Error::ConflictingConstant {
            i: a.to_string(),
            h: b.to_string(),
            k: d.to_string(),
            first: current.to_string(),
            second: value.to_string(),
          });
        }
        c.set(a, b, d, value);
        seen.set(a, b, d, true);
      }
    }
    Ok(Self { name: name.into(), params, c })
  }

  /// Builds a spec from `dφ¹`, `dφ²` given as lists of `(I, H, coeff)` meaning `coeff·φ^I∧φ^H`.
  pub fn from_differentials(
    name: impl Into<String>,
    params: BTreeMap<String, Rational>,
    dphi: [&[(Idx, Idx, Scalar)]; 2],
  ) -> Result<Self> {
    let mut entries = Vec::new();
    for (k, terms) in Idx::HOLOMORPHIC.into_iter().zip(dphi) {
      let mut coeff: BTreeMap<(Idx, Idx), Scalar> = BTreeMap::new();
      for (a, b, v) in terms {
        assert_ne!(a, b, "φ^I∧φ^I vanishes");
        let (lo, hi, v) = if a < b { (*a, *b, v.clone()) } else { (*b, *a, -v) };
        *coeff.entry((lo, hi)).or_insert_with(Scalar::zero) += v;
      }
      for ((i, h), v) in coeff {
        entries.push((i, h, k, -v));
      }
    }
    Self::complete(name, params, &entries)
  }

  pub fn name(&self) -> &str { &self.name }

  pub fn params(&self) -> &BTreeMap<String, Rational> { &self.params }

  pub fn c(&self, i: Idx, h: Idx, k: Idx) -> &Scalar { self.c.get(i, h, k) }

  pub fn table(&self) -> &Tensor3<Scalar> { &self.c }

  /// Copy with a single entry overwritten (no completion).
  pub fn with_constant(&self, i: Idx, h: Idx, k: Idx, value: Scalar) -> Self {
    let mut out = self.clone();
    out.c.set(i, h, k, value);
    out
  }

  /// Nonzero entries in lexicographic order.
  pub fn nonzero(&self) -> Vec<((Idx, Idx, Idx), Scalar)> {
    self.c.entries().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k, v.clone())).collect()
  }

  pub fn is_abelian(&self) -> bool { self.c.entries().all(|(_, v)| v.is_zero()) }

  /// Coefficient of `φ^I∧φ^H` (I < H) in `dφ^K`, over all pairs.
  pub fn dphi_terms(&self, k: Idx) -> Vec<(Idx, Idx, Scalar)> {
    pairs()
      .filter(|(i, h)| i < h)
      .filter_map(|(i, h)| {
        let v = self.c(i, h, k);
        (!v.is_zero()).then(|| (i, h, -v))
      })
      .collect()
  }

  /// `tr ad_X = Σ_H c_{XH}^H`.
  pub fn trace_ad(&self, x: Idx) -> Scalar { Idx::ALL.iter().map(|&h| self.c(x, h, h).clone()).sum() }

  pub fn to_spec_file(&self, full: bool) -> SpecFile {
    let mut constants = Vec::new();
    let mut covered = Tensor3::filled(false);
    for ((i, h, k), v) in self.nonzero() {
      if !full && *covered.get(i, h, k) {
        continue;
      }
      for (a, b, d) in [(i, h, k), (h, i, k), (i.bar(), h.bar(), k.bar()), (h.bar(), i.bar(), k.bar())] {
        covered.set(a, b, d, true);
      }
      constants.push(ConstantEntry { i, h, k, value: v });
    }
    SpecFile {
      name: self.name.clone(),
      params: self.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
      constants,
    }
  }
}

fn i_half() -> Scalar { Scalar::new(Rational::zero(), crate::scalar::rat(1, 2)) }

fn param(surface: Surface, params: &BTreeMap<String, Rational>, key: &'static str) -> Result<Rational> {
  params.get(key).cloned().ok_or(Error::MissingParam { surface: surface.name(), param: key })
}

/// Built-in surface family with the given parameters.
pub fn load_surface(name: &str, params: &BTreeMap<String, Rational>) -> Result<AlgebraSpec> {
  let surface = Surface::from_name(name)?;
  for key in params.keys() {
    if !surface.params().contains(&key.as_str()) {
      return Err(Error::InvalidParam { param: key.clone(), reason: format!("not a parameter of {name}") });
    }
  }
  let (one, two, one_b, two_b) = (Idx::One, Idx::Two, Idx::OneBar, Idx::TwoBar);
  let i = Scalar::i();
  let kept: BTreeMap<String, Rational> = params.clone();
  match surface {
    Surface::Hopf => AlgebraSpec::from_differentials(
      name,
      kept,
      [&[(one, two, i.clone()), (one, two_b, i.clone())], &[(one, one_b, -&i)]],
    ),
    Surface::InoueSM => {
      let alpha = param(surface, params, "alpha")?;
      let beta = param(surface, params, "beta")?;
      if alpha.is_zero() {
        return Err(Error::InvalidParam { param: "alpha".into(), reason: "must be nonzero".into() });
      }
      let two_i = Scalar::imag(Rational::from_integer(2.into()));
      let k = &Scalar::new(alpha.clone(), -beta) / &two_i;
      let a = Scalar::real(alpha);
      AlgebraSpec::from_differentials(
        name,
        kept,
        [&[(one, two, k.clone()), (one, two_b, -&k)], &[(two, two_b, -(&i * &a))]],
      )
    }
    Surface::InoueSpm => {
      let q = param(surface, params, "q")?;
      let half_over_i = -i_half();
      let qi_half = i_half().scale(&q);
      AlgebraSpec::from_differentials(
        name,
        kept,
        [
          &[(one, two, half_over_i.clone()), (two, one_b, half_over_i.clone()), (two, two_b, qi_half)],
          &[(two, two_b, half_over_i)],
        ],
      )
    }
    Surface::KodairaPrimary => AlgebraSpec::from_differentials(name, kept, [&[], &[(one, one_b, i_half())]]),
    Surface::KodairaSecondary => {
      let half = Scalar::ratio(1, 2);
      AlgebraSpec::from_differentials(
        name,
        kept,
        [&[(one, two, -&half), (one, two_b, half)], &[(one, one_b, i_half())]],
      )
    }
  }
}

/// Outcome of one invariant check.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Check {
  pub passed: bool,
  /// First violating index tuple, in alphabet labels.
  pub violation: Option<Vec<Idx>>,
}

impl Check {
  fn from_violation(violation: Option<Vec<Idx>>) -> Self { Self { passed: violation.is_none(), violation } }
}

impl fmt::Display for Check {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match &self.violation {
      None => f.write_str("pass"),
      Some(ix) => {
        let labels: Vec<&str> = ix.iter().map(|i| i.label()).collect();
        write!(f, "FAIL at ({})", labels.join(","))
      }
    }
  }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ValidationReport {
  pub antisymmetry: Check,
  pub reality: Check,
  pub jacobi: Check,
  pub integrability: Check,
  /// `tr ad = 0`; informational only. Codifferentials built from the Hodge star
  /// are genuine adjoints exactly when this holds.
  pub unimodular: Check,
}

impl ValidationReport {
  pub fn passed(&self) -> bool {
    self.antisymmetry.passed && self.reality.passed && self.jacobi.passed && self.integrability.passed
  }
}

impl fmt::Display for ValidationReport {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(
      f,
      "antisymmetry {}; reality {}; jacobi {}; integrability {}; unimodular {}",
      self.antisymmetry, self.reality, self.jacobi, self.integrability, self.unimodular
    )
  }
}

pub fn validate(spec: &AlgebraSpec) -> ValidationReport {
  let antisymmetry = triples().find(|&(i, h, k)| *spec.c(i, h, k) != -spec.c(h, i, k)).map(|(i, h, k)| vec![i, h, k]);
  let reality =
    triples().find(|&(i, h, k)| *spec.c(i.bar(), h.bar(), k.bar()) != spec.c(i, h, k).conj()).map(|(i, h, k)| vec![i, h, k]);
  let jacobi = triples()
    .flat_map(|(i, h, l)| Idx::ALL.into_iter().map(move |m| (i, h, l, m)))
    .find(|&(i, h, l, m)| {
      let total: Scalar = Idx::ALL
        .iter()
        .map(|&k| {
          spec.c(i, h, k) * spec.c(k, l, m) + spec.c(h, l, k) * spec.c(k, i, m) + spec.c(l, i, k) * spec.c(k, h, m)
        })
        .sum();
      !total.is_zero()
    })
    .map(|(i, h, l, m)| vec![i, h, l, m]);
  let integrability = Idx::HOLOMORPHIC
    .into_iter()
    .find(|&k| !spec.c(Idx::OneBar, Idx::TwoBar, k).is_zero() || !spec.c(Idx::TwoBar, Idx::OneBar, k).is_zero())
    .map(|k| vec![Idx::OneBar, Idx::TwoBar, k]);
  let unimodular = Idx::ALL.into_iter().find(|&x| !spec.trace_ad(x).is_zero()).map(|x| vec![x]);
  ValidationReport {
    antisymmetry: Check::from_violation(antisymmetry),
    reality: Check::from_violation(reality),
    jacobi: Check::from_violation(jacobi),
    integrability: Check::from_violation(integrability),
    unimodular: Check::from_violation(unimodular),
  }
}

/// Errors unless all four structural checks pass.
pub fn ensure_valid(spec: &AlgebraSpec) -> Result<()> {
  let report = validate(spec);
  if report.passed() {
    Ok(())
  } else {
    Err(Error::Validation(Box::new(report)))
  }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
  pub i: Idx,
  pub h: Idx,
  pub k: Idx,
  pub value: Scalar,
}

/// On-disk spec format.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
  pub name: String,
  #[serde(default)]
  pub params: BTreeMap<String, String>,
  #[serde(default)]
  pub constants: Vec<ConstantEntry>,
}

impl SpecFile {
  pub fn parse(text: &str) -> Result<SpecFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|err| {
      let field = err.path().to_string();
      let inner = err.into_inner();
      Error::SpecFile { line: inner.line(), field, message: inner.to_string() }
    })
  }

  pub fn into_spec(self) -> Result<AlgebraSpec> {
    let mut params = BTreeMap::new();
    for (k, v) in self.params {
      let value = parse_rational(&v).map_err(|e| Error::SpecFile {
        line: 0,
        field: format!("params.{k}"),
        message: e.to_string(),
      })?;
      params.insert(k, value);
    }
    let entries: Vec<_> = self.constants.into_iter().map(|e| (e.i, e.h, e.k, e.value)).collect();
    let spec = AlgebraSpec::complete(self.name, params, &entries)?;
    ensure_valid(&spec)?;
    Ok(spec)
  }

  pub fn to_json(&self) -> String { serde_json::to_string_pretty(self).expect("spec file serializes") }
}

/// Reads, completes and validates a spec file.
pub fn ingest_spec_file(path: &Path) -> Result<AlgebraSpec> {
  let text = std::fs::read_to_string(path).map_err(|e| Error::SpecFile {
    line: 0,
    field: path.display().to_string(),
    message: e.to_string(),
  })?;
  ingest_spec_str(&text)
}

pub fn ingest_spec_str(text: &str) -> Result<AlgebraSpec> { SpecFile::parse(text)?.into_spec() }

impl Serialize for Idx {
  fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> { s.serialize_str(self.label()) }
}

impl<'de> Deserialize<'de> for Idx {
  fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
    let text = String::deserialize(d)?;
    text.parse().map_err(serde::de::Error::custom)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn s(text: &str) -> Scalar { text.parse().unwrap() }

  fn sm(alpha: i64, beta: i64) -> BTreeMap<String, Rational> {
    [("alpha".to_string(), Rational::from_integer(alpha.into())), ("beta".to_string(), Rational::from_integer(beta.into()))]
      .into_iter()
      .collect()
  }

  #[test]
  fn hopf_constants() {
    let spec = load_surface("hopf", &BTreeMap::new()).unwrap();
    use Idx::*;
    assert_eq!(*spec.c(One, Two, One), s("-i"));
    assert_eq!(*spec.c(One, OneBar, Two), s("i"));
    assert_eq!(*spec.c(One, TwoBar, One), s("-i"));
    assert_eq!(*spec.c(OneBar, TwoBar, OneBar), s("i"));
    assert_eq!(spec.nonzero().len(), 12);
  }

  #[test]
  fn primary_kodaira_has_one_orbit() {
    let spec = load_surface("kodaira_primary", &BTreeMap::new()).unwrap();
    use Idx::*;
    assert_eq!(*spec.c(One, OneBar, Two), s("-1/2 i"));
    assert!(spec.nonzero().iter().all(|((i, h, _), _)| [i, h].iter().all(|x| matches!(x, One | OneBar))));
    assert_eq!(spec.nonzero().len(), 4);
  }

  #[test]
  fn catalog_validates() {
    for surface in Surface::ALL {
      let spec = load_surface(surface.name(), &surface.default_params()).unwrap();
      let report = validate(&spec);
      assert!(report.passed(), "{surface}: {report}");
    }
    let spec = load_surface("inoue_sm", &sm(3, -2)).unwrap();
    assert!(validate(&spec).passed());
  }

  #[test]
  fn parameter_errors() {
    assert!(matches!(load_surface("inoue_sm", &sm(0, 1)), Err(Error::InvalidParam { .. })));
    assert!(matches!(load_surface("inoue_sm", &BTreeMap::new()), Err(Error::MissingParam { param: "alpha", .. })));
    assert!(matches!(load_surface("torus", &BTreeMap::new()), Err(Error::UnknownSurface(_))));
    assert!(matches!(load_surface("hopf", &sm(1, 0)), Err(Error::InvalidParam { .. })));
  }

  #[test]
  fn single_sided_flip_breaks_antisymmetry() {
    use Idx::*;
    let spec = load_surface("hopf", &BTreeMap::new()).unwrap();
    let broken = spec.with_constant(One, Two, One, s("i"));
    let report = validate(&broken);
    assert!(!report.antisymmetry.passed);
    assert_eq!(report.antisymmetry.violation, Some(vec![One, Two, One]));
  }

  #[test]
  fn antiholomorphic_term_breaks_integrability() {
    use Idx::*;
    let dphi1 = [(OneBar, TwoBar, Scalar::one())];
    let spec = AlgebraSpec::from_differentials("bad", BTreeMap::new(), [&dphi1, &[]]).unwrap();
    let report = validate(&spec);
    assert!(!report.integrability.passed);
    assert_eq!(report.integrability.violation, Some(vec![OneBar, TwoBar, One]));
  }

  #[test]
  fn hopf_is_unimodular() {
    for surface in Surface::ALL {
      let spec = load_surface(surface.name(), &surface.default_params()).unwrap();
      assert!(validate(&spec).unimodular.passed, "{surface}");
    }
  }

  #[test]
  fn spec_file_completion() {
    let text = r#"{
      "name": "hopf-from-file",
      "constants": [
        {"i": "1", "h": "2", "k": "1", "value": "-i"},
        {"i": "1", "h": "1b", "k": "2", "value": "i"},
        {"i": "1", "h": "2b", "k": "1", "value": "-i"},
        {"i": "1", "h": "1b", "k": "2b", "value": "i"}
      ]
    }"#;
    let spec = ingest_spec_str(text).unwrap();
    let hopf = load_surface("hopf", &BTreeMap::new()).unwrap();
    assert_eq!(spec.table(), hopf.table());
  }

  #[test]
  fn completion_is_idempotent() {
    for surface in Surface::ALL {
      let spec = load_surface(surface.name(), &surface.default_params()).unwrap();
      for full in [false, true] {
        let again = ingest_spec_str(&spec.to_spec_file(full).to_json()).unwrap();
        assert_eq!(again, spec);
      }
    }
  }

  #[test]
  fn empty_constants_give_abelian() {
    let spec = ingest_spec_str(r#"{"name": "flat", "constants": []}"#).unwrap();
    assert!(spec.is_abelian());
  }

  #[test]
  fn malformed_scalar_reports_field() {
    let text = "{\n \"name\": \"x\",\n \"constants\": [\n  {\"i\": \"1\", \"h\": \"2\", \"k\": \"1\", \"value\": \"1//2\"}\n ]\n}";
    match ingest_spec_str(text) {
      Err(Error::SpecFile { line, field, .. }) => {
        assert_eq!(line, 4);
        assert_eq!(field, "constants[0].value");
      }
      other => panic!("unexpected {other:?}"),
    }
  }

  #[test]
  fn conflicting_entries_rejected() {
    let text = r#"{"name": "x", "constants": [
      {"i": "1", "h": "2", "k": "1", "value": "1"},
      {"i": "2", "h": "1", "k": "1", "value": "1"}]}"#;
    assert!(matches!(ingest_spec_str(text), Err(Error::ConflictingConstant { .. })));
  }

  #[test]
  fn invalid_file_embeds_report() {
    let text = r#"{"name": "x", "constants": [{"i": "1b", "h": "2b", "k": "1", "value": "1"}]}"#;
    match ingest_spec_str(text) {
      Err(Error::Validation(report)) => assert!(!report.integrability.passed),
      other => panic!("unexpected {other:?}"),
    }
  }
}

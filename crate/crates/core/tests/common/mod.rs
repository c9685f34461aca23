//! Shared fixtures for the integration tests: printed closed-form tables evaluated at
//! a metric, seeded metric samples and small constructors.
#![allow(dead_code)]

use std::collections::BTreeMap;

use invariant_hodge::forms::Form;
use invariant_hodge::hodge::{HermitianSurface, Metric};
use invariant_hodge::{load_surface, AlgebraSpec, Idx, Rational, Scalar, Surface};

/// Metric entries as complex scalars.
pub struct Sym {
  pub r2: Scalar,
  pub s2: Scalar,
  pub u: Scalar,
  pub ub: Scalar,
  /// `|u|²`
  pub nu: Scalar,
  pub v: Scalar,
  pub vi: Scalar,
}

impl Sym {
  pub fn of(m: &Metric) -> Sym {
    let v = Scalar::real(m.v());
    Sym {
      r2: Scalar::real(m.r2().clone()),
      s2: Scalar::real(m.s2().clone()),
      u: m.u().clone(),
      ub: m.u().conj(),
      nu: Scalar::real(m.u().norm_sqr()),
      vi: v.inv().unwrap(),
      v,
    }
  }
}

pub fn i() -> Scalar { Scalar::i() }

pub fn q(n: i64, d: i64) -> Scalar { Scalar::ratio(n, d) }

/// `c · Π factors`.
pub fn t(c: Scalar, factors: &[&Scalar]) -> Scalar { factors.iter().fold(c, |acc, f| &acc * *f) }

pub fn form(terms: Vec<(Scalar, &str)>) -> Form { Form::from_terms(terms).unwrap() }

pub fn mono(text: &str) -> Form { Form::monomial(text).unwrap() }

pub fn ix(s: &str) -> Idx { s.parse().unwrap() }

pub fn params(pairs: &[(&str, &str)]) -> BTreeMap<String, Rational> {
  pairs.iter().map(|(k, v)| (k.to_string(), v.parse().unwrap())).collect()
}

pub fn spec(name: &str, pairs: &[(&str, &str)]) -> AlgebraSpec { load_surface(name, &params(pairs)).unwrap() }

pub fn default_spec(s: Surface) -> AlgebraSpec { load_surface(s.name(), &s.default_params()).unwrap() }

pub fn surface(spec: &AlgebraSpec, m: &Metric) -> HermitianSurface { HermitianSurface::new(spec.clone(), m.clone()).unwrap() }

/// Catalog specs at several parameter values, labelled.
pub fn catalog_variants() -> Vec<(String, AlgebraSpec)> {
  let mut out = Vec::new();
  out.push(("hopf".to_string(), spec("hopf", &[])));
  for (a, b) in [("1", "0"), ("2", "1/3"), ("-3/2", "-2")] {
    out.push((format!("inoue_sm(alpha={a},beta={b})"), spec("inoue_sm", &[("alpha", a), ("beta", b)])));
  }
  for qv in ["0", "1", "-5/2"] {
    out.push((format!("inoue_spm(q={qv})"), spec("inoue_spm", &[("q", qv)])));
  }
  out.push(("kodaira_primary".to_string(), spec("kodaira_primary", &[])));
  out.push(("kodaira_secondary".to_string(), spec("kodaira_secondary", &[])));
  out
}

/// Generic seeded metrics (u ≠ 0) followed by nothing else.
pub fn metrics(seed: u64, n: usize) -> Vec<Metric> { Metric::sample(seed, n, false) }

/// Printed Hodge-star identities: `(input, k, expected)` meaning `k · ⋆input = expected`.
pub fn star_table(m: &Metric) -> Vec<(&'static str, Scalar, Form)> {
  let Sym { r2, s2, u, ub, nu, v, .. } = Sym::of(m);
  let one = Scalar::from_int(1);
  let h = q(1, 2);
  let ih = t(h.clone(), &[&i()]);
  vec![
    ("1", one.clone(), form(vec![(t(ih.clone(), &[&ub]), "121b"), (t(h.clone(), &[&s2]), "122b")])),
    ("2", one.clone(), form(vec![(t(-&h, &[&r2]), "121b"), (t(ih.clone(), &[&u]), "122b")])),
    ("1b", one.clone(), form(vec![(t(-&ih, &[&u]), "11b2b"), (t(h.clone(), &[&s2]), "21b2b")])),
    ("2b", one.clone(), form(vec![(t(-&h, &[&r2]), "11b2b"), (t(-&ih, &[&ub]), "21b2b")])),
    ("12", one.clone(), mono("12")),
    ("1b2b", one.clone(), mono("1b2b")),
    (
      "11b",
      v.clone(),
      form(vec![
        (nu.clone(), "11b"),
        (t(-i(), &[&u, &s2]), "12b"),
        (t(i(), &[&ub, &s2]), "21b"),
        (t(one.clone(), &[&s2, &s2]), "22b"),
      ]),
    ),
    (
      "12b",
      v.clone(),
      form(vec![
        (t(-i(), &[&ub, &r2]), "11b"),
        (t(-&one, &[&r2, &s2]), "12b"),
        (t(one.clone(), &[&ub, &ub]), "21b"),
        (t(-i(), &[&ub, &s2]), "22b"),
      ]),
    ),
    (
      "21b",
      v.clone(),
      form(vec![
        (t(i(), &[&u, &r2]), "11b"),
        (t(one.clone(), &[&u, &u]), "12b"),
        (t(-&one, &[&r2, &s2]), "21b"),
        (t(i(), &[&u, &s2]), "22b"),
      ]),
    ),
    (
      "22b",
      v.clone(),
      form(vec![
        (t(one.clone(), &[&r2, &r2]), "11b"),
        (t(-i(), &[&u, &r2]), "12b"),
        (t(i(), &[&ub, &r2]), "21b"),
        (nu.clone(), "22b"),
      ]),
    ),
    ("121b", v.clone(), form(vec![(t(q(-2, 1), &[&i(), &u]), "1"), (t(q(2, 1), &[&s2]), "2")])),
    ("122b", v.clone(), form(vec![(t(q(-2, 1), &[&r2]), "1"), (t(q(-2, 1), &[&i(), &ub]), "2")])),
    ("11b2b", v.clone(), form(vec![(t(q(2, 1), &[&i(), &ub]), "1b"), (t(q(2, 1), &[&s2]), "2b")])),
    ("21b2b", v.clone(), form(vec![(t(q(-2, 1), &[&r2]), "1b"), (t(q(2, 1), &[&i(), &u]), "2b")])),
  ]
}

/// Printed Hopf Levi-Civita symbols `Γ_{IH}^K`, nonzero ones up to conjugation.
pub fn hopf_levi_civita(m: &Metric) -> Vec<([&'static str; 3], Scalar)> {
  let Sym { r2, s2, u, ub, nu, vi, .. } = Sym::of(m);
  let h = q(1, 2);
  let ih = t(h.clone(), &[&i()]);
  let one = Scalar::from_int(1);
  let s4 = &s2 * &s2;
  let r2s2 = &r2 * &s2;
  let r2_s2 = &r2 - &s2;
  vec![
    (["1", "1", "1"], t(-&one, &[&s2, &u, &vi])),
    (["1", "1", "2"], t(-i(), &[&u, &u, &vi])),
    (["1", "2", "1"], t(h.clone(), &[&(&t(-i(), &[&s4]) + &t(i(), &[&nu])), &vi])),
    (["1", "2", "2"], t(-&h, &[&r2_s2, &u, &vi])),
    (["1", "1b", "1"], t(h.clone(), &[&s2, &ub, &vi])),
    (["1", "1b", "2"], t(ih.clone(), &[&r2s2, &vi])),
    (["1", "1b", "1b"], t(h.clone(), &[&s2, &u, &vi])),
    (["1", "1b", "2b"], t(h.clone(), &[&(&t(i(), &[&r2s2]) - &t(q(2, 1), &[&i(), &nu])), &vi])),
    (["1", "2b", "1"], t(-&ih, &[&s4, &vi])),
    (["1", "2b", "2"], t(h.clone(), &[&s2, &u, &vi])),
    (["1", "2b", "1b"], t(ih.clone(), &[&u, &u, &vi])),
    (["1", "2b", "2b"], t(h.clone(), &[&r2, &u, &vi])),
    (
      ["2", "1", "1"],
      t(h.clone(), &[&(&(&t(q(2, 1), &[&i(), &r2s2]) - &t(i(), &[&s4])) - &t(i(), &[&nu])), &vi]),
    ),
    (["2", "1", "2"], t(-&h, &[&r2_s2, &u, &vi])),
    (["2", "2", "1"], t(-&one, &[&s2, &ub, &vi])),
    (["2", "2", "2"], t(-i(), &[&nu, &vi])),
    (["2", "1b", "1"], t(-&ih, &[&ub, &ub, &vi])),
    (["2", "1b", "2"], t(h.clone(), &[&r2, &ub, &vi])),
    (
      ["2", "1b", "1b"],
      t(h.clone(), &[&(&(&t(q(-2, 1), &[&i(), &r2s2]) + &t(i(), &[&s4])) + &t(q(2, 1), &[&i(), &nu])), &vi]),
    ),
    (["2", "1b", "2b"], t(h.clone(), &[&s2, &ub, &vi])),
    (["2", "2b", "1"], t(-&h, &[&s2, &ub, &vi])),
    (["2", "2b", "2"], t(-&ih, &[&nu, &vi])),
    (["2", "2b", "1b"], t(-&h, &[&s2, &u, &vi])),
    (["2", "2b", "2b"], t(ih.clone(), &[&nu, &vi])),
  ]
}

/// Printed Hopf Chern symbols (the six listed entries).
pub fn hopf_chern(m: &Metric) -> Vec<([&'static str; 3], Scalar)> {
  let Sym { r2, s2, u, vi, .. } = Sym::of(m);
  let s4 = &s2 * &s2;
  vec![
    (["2", "1", "2"], t(Scalar::from_int(-1), &[&r2, &u, &vi])),
    (["2", "1", "1"], t(i(), &[&r2, &s2, &vi])),
    (["1", "1b", "2b"], i()),
    (["2", "1b", "1b"], -i()),
    (["1", "2", "1"], t(-i(), &[&s4, &vi])),
    (["1", "2", "2"], t(Scalar::from_int(1), &[&s2, &u, &vi])),
  ]
}

/// A printed Hopf Chern curvature component. `printed` is the index tuple as typeset;
/// `index` differs from it where the typeset indices are wrong.
pub struct CurvatureEntry {
  pub printed: [&'static str; 4],
  pub index: [&'static str; 4],
  pub value: Scalar,
}

impl CurvatureEntry {
  pub fn is_typo(&self) -> bool { self.printed != self.index }
}

pub fn hopf_curvature(m: &Metric) -> Vec<CurvatureEntry> {
  let Sym { r2, s2, u, ub, nu, vi, .. } = Sym::of(m);
  let h = q(1, 2);
  let ih = t(h.clone(), &[&i()]);
  let s4 = &s2 * &s2;
  let r2s2 = &r2 * &s2;
  let e = |printed: [&'static str; 4], index: [&'static str; 4], value: Scalar| CurvatureEntry { printed, index, value };
  let same = |index: [&'static str; 4], value: Scalar| CurvatureEntry { printed: index, index, value };
  let first = &(&t(q(2, 1), &[&r2, &r2, &s2]) - &t(Scalar::from_int(1), &[&r2, &s4])) - &t(q(2, 1), &[&(&r2 - &s2), &nu]);
  let w = &t(-i(), &[&r2s2]) - &t(i(), &[&s4]);
  vec![
    same(["1", "1b", "1", "1b"], t(h.clone(), &[&first, &vi])),
    same(["1", "1b", "1", "2b"], t(h.clone(), &[&(&t(i(), &[&nu, &u]) + &t(Scalar::from_int(1), &[&w, &u])), &vi])),
    same(["1", "1b", "2", "1b"], t(h.clone(), &[&(&t(-i(), &[&nu, &ub]) - &t(Scalar::from_int(1), &[&w, &ub])), &vi])),
    same(["1", "1b", "2", "2b"], t(h.clone(), &[&s4, &s2, &vi])),
    same(["1", "2b", "1", "1b"], t(h.clone(), &[&(&t(-i(), &[&r2s2, &u]) + &t(q(2, 1), &[&i(), &nu, &u])), &vi])),
    same(["1", "2b", "1", "2b"], t(h.clone(), &[&s2, &u, &u, &vi])),
    e(["1", "1b", "2", "1b"], ["1", "2b", "2", "1b"], t(-&h, &[&s2, &nu, &vi])),
    same(["1", "2b", "2", "2b"], t(ih.clone(), &[&s4, &u, &vi])),
    same(["2", "1b", "1", "1b"], t(h.clone(), &[&(&t(i(), &[&r2s2, &ub]) - &t(q(2, 1), &[&i(), &nu, &ub])), &vi])),
    same(["2", "1b", "1", "2b"], t(-&h, &[&s2, &nu, &vi])),
    same(["2", "1b", "2", "1b"], t(h.clone(), &[&s2, &ub, &ub, &vi])),
    same(["2", "1b", "2", "2b"], t(-&ih, &[&s4, &ub, &vi])),
    same(["2", "2b", "1", "1b"], t(h.clone(), &[&r2, &nu, &vi])),
    same(["2", "2b", "1", "2b"], t(-&ih, &[&r2s2, &u, &vi])),
    same(["2", "2b", "2", "1b"], t(ih.clone(), &[&r2s2, &ub, &vi])),
    same(["2", "2b", "2", "2b"], t(h.clone(), &[&s2, &nu, &vi])),
  ]
}

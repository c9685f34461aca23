//! Randomized invariants over scalars, forms, metrics and the derived operators.

mod common;

use common::*;
use invariant_hodge::catalog::ingest_spec_str;
use invariant_hodge::flow::{solve_flow, TMax};
use invariant_hodge::forms::{basis, Form, Grading};
use invariant_hodge::harmonic::Kind;
use invariant_hodge::hodge::Metric;
use invariant_hodge::{Rational, Scalar, Surface};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
  (-30i64..=30, 1i64..=7).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn positive() -> impl Strategy<Value = Rational> {
  (1i64..=30, 1i64..=7).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn scalar() -> impl Strategy<Value = Scalar> { (rational(), rational()).prop_map(|(a, b)| Scalar::new(a, b)) }

fn metric() -> impl Strategy<Value = Metric> {
  (positive(), positive(), scalar()).prop_filter_map("V > 0", |(r2, s2, u)| Metric::new(r2, s2, u).ok())
}

fn form() -> impl Strategy<Value = Form> {
  prop::collection::vec((0usize..16, scalar()), 0..5).prop_map(|terms| {
    let mut f = Form::zero();
    for (k, c) in terms {
      f.add_term(c, basis()[k]);
    }
    f
  })
}

fn catalog() -> impl Strategy<Value = Surface> { prop::sample::select(Surface::ALL.to_vec()) }

proptest! {
  #![proptest_config(ProptestConfig::with_cases(64))]

  #[test]
  fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    prop_assert_eq!((&a * &b).norm_sqr(), a.norm_sqr() * b.norm_sqr());
    if !a.is_zero() {
      prop_assert!((&a * &a.inv().unwrap()).is_one());
    }
  }

  #[test]
  fn scalar_text_round_trip(a in scalar()) {
    prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
  }

  #[test]
  fn metric_text_round_trip(m in metric()) {
    prop_assert_eq!(m.to_string().parse::<Metric>().unwrap(), m);
  }

  #[test]
  fn wedge_associative(a in form(), b in form(), c in form()) {
    prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
  }

  #[test]
  fn wedge_graded_commutative(j in 0usize..=4, k in 0usize..=4, a in form(), b in form()) {
    let (a, b) = (a.component(Grading::Degree(j)), b.component(Grading::Degree(k)));
    let sign = if (j * k) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign));
  }

  #[test]
  fn form_serialization_round_trip(f in form()) {
    prop_assert_eq!(Form::from_serialized(&f.to_terms()).unwrap(), f.clone());
    prop_assert_eq!(f.conj().conj(), f);
  }
}

proptest! {
  #![proptest_config(ProptestConfig::with_cases(24))]

  #[test]
  fn star_is_an_isometry_pairing(s in catalog(), m in metric(), a in form(), b in form()) {
    let hs = surface(&default_spec(s), &m);
    // top part of a ∧ ⋆ b̄ is ⟨a, b⟩ vol; ⟨a, b⟩ = conj ⟨b, a⟩; ⟨a, a⟩ > 0.
    prop_assert_eq!(a.wedge(&hs.star().apply(&b.conj())).component(Grading::Degree(4)), hs.volume_form().scale(&hs.inner(&a, &b)));
    prop_assert_eq!(hs.inner(&a, &b), hs.inner(&b, &a).conj());
    let n = hs.inner(&a, &a);
    prop_assert!(n.is_real());
    prop_assert_eq!(a.is_zero(), n.is_zero());
    prop_assert!(*n.re() >= Rational::zero());
  }

  #[test]
  fn star_star_sign(m in metric(), k in 0usize..=4, f in form()) {
    let hs = surface(&default_spec(Surface::Hopf), &m);
    let f = f.component(Grading::Degree(k));
    let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    prop_assert_eq!(hs.star().apply(&hs.star().apply(&f)), f.scale(&sign));
  }

  #[test]
  fn d_is_a_derivation(s in catalog(), j in 0usize..=4, a in form(), b in form()) {
    let hs = surface(&default_spec(s), &Metric::standard());
    let a = a.component(Grading::Degree(j));
    let sign = if j % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    let d = hs.d();
    let lhs = d.apply(&a.wedge(&b));
    let rhs = &d.apply(&a).wedge(&b) + &a.wedge(&d.apply(&b)).scale(&sign);
    prop_assert_eq!(lhs, rhs);
  }

  #[test]
  fn harmonic_spaces_scale_invariant(s in catalog(), m in metric(), lambda in positive()) {
    let spec = default_spec(s);
    let (a, b) = (surface(&spec, &m), surface(&spec, &m.scaled(&lambda).unwrap()));
    for kind in Kind::MAIN {
      for g in kind.gradings() {
        prop_assert!(a.harmonic_basis(kind, g).spans_same(&b.harmonic_basis(kind, g).basis), "{} {}", kind, g);
      }
    }
  }

  #[test]
  fn harmonic_forms_are_closed_and_coclosed(s in catalog(), m in metric()) {
    let hs = surface(&default_spec(s), &m);
    for space in hs.harmonic_spaces(Kind::DeRham) {
      for f in &space.basis {
        prop_assert!(hs.d().apply(f).is_zero());
        prop_assert!(hs.codifferential(invariant_hodge::hodge::DiffKind::D).apply(f).is_zero());
      }
    }
    let dims = hs.cohomology_dims();
    prop_assert_eq!(dims, surface(&default_spec(s), &Metric::standard()).cohomology_dims());
  }

  #[test]
  fn flow_semigroup(s in catalog(), m in metric(), a in 1i64..=9, b in 1i64..=9) {
    let spec = default_spec(s);
    let sol = solve_flow(&spec, &m).unwrap();
    // Fractions of t_max keep both times inside the interval.
    let (t1, t2) = match &sol.t_max {
      TMax::Infinite => (Rational::new(a.into(), 3.into()), Rational::new(b.into(), 5.into())),
      TMax::Finite(tm) => {
        let tm = tm.as_rational().unwrap().clone();
        (&tm * Rational::new(a.into(), 20.into()), &tm * Rational::new(b.into(), 20.into()))
      }
    };
    let mid = sol.metric_at(&t1).unwrap();
    let restarted = solve_flow(&spec, &mid).unwrap();
    prop_assert_eq!(restarted.metric_at(&t2).unwrap(), sol.metric_at(&(&t1 + &t2)).unwrap());
    prop_assert_eq!(&restarted.rho, &sol.rho);
  }
}

#[test]
fn spec_files_round_trip() {
  for (name, spec) in catalog_variants() {
    for full in [false, true] {
      let text = spec.to_spec_file(full).to_json();
      assert_eq!(ingest_spec_str(&text).unwrap(), spec, "{name} full={full}");
    }
  }
}

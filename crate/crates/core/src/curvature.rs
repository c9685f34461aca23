//! Connections on the frame `φ_1, φ_2, φ_1̄, φ_2̄`, Chern curvature and the Chern-Ricci form.
//!
//! `Γ_{IH}^K` is the `φ_K` component of `∇_{φ_I} φ_H`. All contractions run over the
//! full four-letter alphabet with the symmetric bilinear extension of `g`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::alphabet::{triples, Idx, Tensor3, DIM};
use crate::catalog::AlgebraSpec;
use crate::error::{Error, Result};
use crate::forms::{exterior_d, Form, Monomial};
use crate::hodge::Metric;
use crate::linalg::Matrix;
use crate::scalar::{rat, Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Connection {
  gamma: Tensor3<Scalar>,
}

impl Connection {
  pub fn from_table(gamma: Tensor3<Scalar>) -> Self { Self { gamma } }

  pub fn gamma(&self, i: Idx, h: Idx, k: Idx) -> &Scalar { self.gamma.get(i, h, k) }

  pub fn table(&self) -> &Tensor3<Scalar> { &self.gamma }

  /// `Γ_{ĪH̄}^{K̄} = conj Γ_{IH}^K` for all indices.
  pub fn is_conjugation_symmetric(&self) -> bool {
    triples().all(|(i, h, k)| *self.gamma(i.bar(), h.bar(), k.bar()) == self.gamma(i, h, k).conj())
  }

  pub fn nonzero(&self) -> Vec<((Idx, Idx, Idx), Scalar)> {
    self.gamma.entries().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k, v.clone())).collect()
  }
}

fn at(m: &Matrix, a: Idx, b: Idx) -> &Scalar { &m[(a.pos(), b.pos())] }

/// `J` on the frame: `+√−1` on `φ_1, φ_2`, `−√−1` on the conjugates.
fn j(i: Idx) -> Scalar {
  if i.is_barred() {
    -Scalar::i()
  } else {
    Scalar::i()
  }
}

/// Value of a 3-form on `(φ_a, φ_b, φ_c)`.
fn eval3(f: &Form, a: Idx, b: Idx, c: Idx) -> Scalar {
  match Monomial::from_letters(&[a, b, c]) {
    Some((sign, m)) => f.coeff(m).scale(&Rational::from_integer(sign.into())),
    None => Scalar::zero(),
  }
}

pub fn levi_civita(spec: &AlgebraSpec, m: &Metric) -> Connection {
  let (g, gi) = (m.g(), m.g_inv());
  let half = rat(1, 2);
  Connection::from_table(Tensor3::from_fn(|i, h, k| {
    let mut acc = spec.c(i, h, k).clone();
    for a in Idx::ALL {
      let gka = at(&gi, k, a);
      if gka.is_zero() {
        continue;
      }
      for b in Idx::ALL {
        let t = &(at(&g, b, i) * spec.c(h, a, b)) + &(at(&g, b, h) * spec.c(i, a, b));
        acc = &acc - &(gka * &t);
      }
    }
    acc.scale(&half)
  }))
}

/// `dΩ` with `Ω(X, Y) = g(X, JY)`, the 3-form entering the torsion terms.
pub fn torsion_form(spec: &AlgebraSpec, m: &Metric) -> Form { exterior_d(spec).apply(&-m.fundamental_form()) }

/// `Γ^{LC} + ε g^{KL} T_{IHL} + ρ g^{KL} C_{IHL}` with
/// `T_{IHL} = −dΩ(Jφ_I, Jφ_H, Jφ_L)` and `C_{IHL} = dΩ(Jφ_I, φ_H, φ_L)`.
pub fn gauduchon_connection(spec: &AlgebraSpec, m: &Metric, eps: &Rational, rho: &Rational) -> Connection {
  let lc = levi_civita(spec, m);
  if eps.is_zero() && rho.is_zero() {
    return lc;
  }
  let gi = m.g_inv();
  let dw = torsion_form(spec, m);
  Connection::from_table(Tensor3::from_fn(|i, h, k| {
    let mut acc = lc.gamma(i, h, k).clone();
    for l in Idx::ALL {
      let gkl = at(&gi, k, l);
      if gkl.is_zero() {
        continue;
      }
      let w = eval3(&dw, i, h, l);
      let t = -(&(&(&j(i) * &j(h)) * &j(l)) * &w);
      let c = &j(i) * &w;
      let extra = &t.scale(eps) + &c.scale(rho);
      acc = &acc + &(gkl * &extra);
    }
    acc
  }))
}

/// The Chern connection as the unique solution of: `∇` preserves type, `∇g = 0`,
/// and the torsion has no `(1,1)` component.
pub fn chern_connection(spec: &AlgebraSpec, m: &Metric) -> Result<Connection> {
  let g = m.g();
  let var = |i: Idx, h: Idx, k: Idx| (i.pos() * DIM + h.pos()) * DIM + k.pos();
  let n = DIM * DIM * DIM;
  let mut rows: Vec<Vec<Scalar>> = Vec::new();
  let mut rhs: Vec<Scalar> = Vec::new();
  let mut push = |row: Vec<Scalar>, b: Scalar| {
    rows.push(row);
    rhs.push(b);
  };
  for (i, h, k) in triples() {
    if h.is_barred() != k.is_barred() {
      let mut row = vec![Scalar::zero(); n];
      row[var(i, h, k)] = Scalar::one();
      push(row, Scalar::zero());
    }
  }
  for (i, h, l) in triples() {
    let mut row = vec![Scalar::zero(); n];
    for a in Idx::ALL {
      row[var(i, h, a)] = &row[var(i, h, a)] + at(&g, a, l);
      row[var(i, l, a)] = &row[var(i, l, a)] + at(&g, h, a);
    }
    push(row, Scalar::zero());
  }
  for i in Idx::HOLOMORPHIC {
    for jb in Idx::ANTIHOLOMORPHIC {
      for k in Idx::ALL {
        let mut row = vec![Scalar::zero(); n];
        row[var(i, jb, k)] = Scalar::one();
        row[var(jb, i, k)] = -Scalar::one();
        push(row, spec.c(i, jb, k).clone());
      }
    }
  }
  let system = Matrix::from_rows(rows);
  if system.rank() != n {
    return Err(Error::Singular);
  }
  let x = system.solve(&rhs).ok_or(Error::Singular)?;
  Ok(Connection::from_table(Tensor3::from_fn(|i, h, k| x[var(i, h, k)].clone())))
}

/// `R_{IHKL}` over the full alphabet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurvatureTensor {
  data: Vec<Scalar>,
}

impl CurvatureTensor {
  fn offset(i: Idx, h: Idx, k: Idx, l: Idx) -> usize { ((i.pos() * DIM + h.pos()) * DIM + k.pos()) * DIM + l.pos() }

  pub fn from_fn(mut f: impl FnMut(Idx, Idx, Idx, Idx) -> Scalar) -> Self {
    let mut data = vec![Scalar::zero(); DIM.pow(4)];
    for (i, h, k) in triples() {
      for l in Idx::ALL {
        data[Self::offset(i, h, k, l)] = f(i, h, k, l);
      }
    }
    Self { data }
  }

  pub fn get(&self, i: Idx, h: Idx, k: Idx, l: Idx) -> &Scalar { &self.data[Self::offset(i, h, k, l)] }

  pub fn is_zero(&self) -> bool { self.data.iter().all(Scalar::is_zero) }

  pub fn nonzero(&self) -> Vec<([Idx; 4], Scalar)> {
    let mut out = Vec::new();
    for (i, h, k) in triples() {
      for l in Idx::ALL {
        let v = self.get(i, h, k, l);
        if !v.is_zero() {
          out.push(([i, h, k, l], v.clone()));
        }
      }
    }
    out
  }

  /// `R_{IHKL} = −R_{HIKL} = −R_{IHLK}`.
  pub fn is_antisymmetric(&self) -> bool {
    triples().all(|(i, h, k)| {
      Idx::ALL.into_iter().all(|l| {
        let v = self.get(i, h, k, l);
        *v == -self.get(h, i, k, l) && *v == -self.get(i, h, l, k)
      })
    })
  }

  /// `R_{ĪH̄K̄L̄} = conj R_{IHKL}`.
  pub fn is_conjugation_symmetric(&self) -> bool {
    triples().all(|(i, h, k)| Idx::ALL.into_iter().all(|l| *self.get(i.bar(), h.bar(), k.bar(), l.bar()) == self.get(i, h, k, l).conj()))
  }
}

/// `R_{IHKL} = g_{AL} Γ_{HK}^B Γ_{IB}^A − g_{AL} Γ_{IK}^B Γ_{HB}^A − g_{AL} c_{IH}^B Γ_{BK}^A`.
pub fn curvature_tensor(spec: &AlgebraSpec, m: &Metric, conn: &Connection) -> CurvatureTensor {
  let g = m.g();
  // ∇_I ∇_H φ_K − ∇_H ∇_I φ_K − ∇_{[I,H]} φ_K, as components along φ_A.
  let mut inner = Tensor3::filled(Vec::<Scalar>::new());
  for (i, h, k) in triples() {
    let mut comp = vec![Scalar::zero(); DIM];
    for b in Idx::ALL {
      let (hk, ik, c) = (conn.gamma(h, k, b), conn.gamma(i, k, b), spec.c(i, h, b));
      for a in Idx::ALL {
        let mut t = Scalar::zero();
        if !hk.is_zero() {
          t = &t + &(hk * conn.gamma(i, b, a));
        }
        if !ik.is_zero() {
          t = &t - &(ik * conn.gamma(h, b, a));
        }
        if !c.is_zero() {
          t = &t - &(c * conn.gamma(b, k, a));
        }
        comp[a.pos()] = &comp[a.pos()] + &t;
      }
    }
    inner.set(i, h, k, comp);
  }
  CurvatureTensor::from_fn(|i, h, k, l| {
    let comp = inner.get(i, h, k);
    Idx::ALL.into_iter().fold(Scalar::zero(), |acc, a| &acc + &(at(&g, a, l) * &comp[a.pos()]))
  })
}

/// `Ricci_{IH} = g^{kl̄} R_{IHkl̄}`, `k` holomorphic and `l̄` antiholomorphic.
pub fn ricci_tensor(m: &Metric, r: &CurvatureTensor) -> Matrix {
  let gi = m.g_inv();
  let mut out = Matrix::zeros(DIM, DIM);
  for i in Idx::ALL {
    for h in Idx::ALL {
      let mut acc = Scalar::zero();
      for k in Idx::HOLOMORPHIC {
        for l in Idx::ANTIHOLOMORPHIC {
          acc = &acc + &(at(&gi, k, l) * r.get(i, h, k, l));
        }
      }
      out[(i.pos(), h.pos())] = acc;
    }
  }
  out
}

/// Coefficients of `2Ric = √−1ρ_r φ^{11̄} + √−1ρ_s φ^{22̄} + ρ_u φ^{12̄} − ρ̄_u φ^{21̄}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RicciForm {
  #[serde(serialize_with = "ser_rational")]
  pub rho_r: Rational,
  #[serde(serialize_with = "ser_rational")]
  pub rho_s: Rational,
  pub rho_u: Scalar,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> { s.collect_str(q) }

impl RicciForm {
  pub fn zero() -> Self { Self { rho_r: Rational::zero(), rho_s: Rational::zero(), rho_u: Scalar::zero() } }

  /// From the form `Ric = √−1 Ricci_{ih̄} φ^i ∧ φ^{h̄}`.
  pub fn from_ricci(ricci: &Matrix) -> Result<Self> {
    let mut two_ric = Form::zero();
    for i in Idx::HOLOMORPHIC {
      for h in Idx::ANTIHOLOMORPHIC {
        let (sign, m) = Monomial::from_letters(&[i, h]).expect("distinct letters");
        let c = ricci[(i.pos(), h.pos())].mul_i().scale(&Rational::from_integer((2 * sign).into()));
        two_ric.add_term(c, m);
      }
    }
    Self::from_two_ric(&two_ric)
  }

  /// Reads the coefficients off `2Ric`, which must be a real `(1,1)`-form.
  pub fn from_two_ric(f: &Form) -> Result<Self> {
    if !f.is_real() {
      return Err(Error::NonRealRicci(f.to_string()));
    }
    if f.bidegree().is_some_and(|b| b != (1, 1)) {
      return Err(Error::NonRealRicci(f.to_string()));
    }
    let coeff = |s: &str| f.coeff(s.parse().expect("valid monomial"));
    Ok(Self { rho_r: coeff("11b").im().clone(), rho_s: coeff("22b").im().clone(), rho_u: coeff("12b") })
  }

  pub fn two_ric(&self) -> Form {
    let i = Scalar::i();
    let mut f = Form::zero();
    for (c, m) in [
      (&i * &Scalar::real(self.rho_r.clone()), "11b"),
      (&i * &Scalar::real(self.rho_s.clone()), "22b"),
      (self.rho_u.clone(), "12b"),
      (-self.rho_u.conj(), "21b"),
    ] {
      f.add_term(c, m.parse().expect("valid monomial"));
    }
    f
  }

  /// `Ric` itself.
  pub fn form(&self) -> Form { self.two_ric().scale(&Scalar::ratio(1, 2)) }

  pub fn is_zero(&self) -> bool { self.rho_r.is_zero() && self.rho_s.is_zero() && self.rho_u.is_zero() }
}

impl fmt::Display for RicciForm {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "rho_r = {}, rho_s = {}, rho_u = {}", self.rho_r, self.rho_s, self.rho_u)
  }
}

/// Chern connection, curvature and Ricci data of one metric.
#[derive(Clone, Debug)]
pub struct ChernData {
  pub connection: Connection,
  pub curvature: CurvatureTensor,
  pub ricci: Matrix,
  pub form: RicciForm,
}

pub fn chern_data(spec: &AlgebraSpec, m: &Metric) -> Result<ChernData> {
  let connection = chern_connection(spec, m)?;
  let curvature = curvature_tensor(spec, m, &connection);
  let ricci = ricci_tensor(m, &curvature);
  let form = RicciForm::from_ricci(&ricci)?;
  Ok(ChernData { connection, curvature, ricci, form })
}

pub fn chern_ricci_form(spec: &AlgebraSpec, m: &Metric) -> Result<RicciForm> { Ok(chern_data(spec, m)?.form) }

#[cfg(test)]
mod tests {
  use std::collections::BTreeMap;

  use super::*;
  use crate::catalog::{load_surface, Surface};
  use crate::forms::DoubleComplex;

  use Idx::{One as I1, OneBar as B1, Two as I2, TwoBar as B2};

  fn spec(name: &str) -> AlgebraSpec { load_surface(name, &Surface::from_name(name).unwrap().default_params()).unwrap() }

  fn metric(text: &str) -> Metric { text.parse().unwrap() }

  /// `r², s², u, ū, V⁻¹, √−1` as scalars.
  struct Vals {
    r2: Scalar,
    s2: Scalar,
    u: Scalar,
    ub: Scalar,
    vi: Scalar,
    i: Scalar,
  }

  fn vals(m: &Metric) -> Vals {
    Vals {
      r2: Scalar::real(m.r2().clone()),
      s2: Scalar::real(m.s2().clone()),
      u: m.u().clone(),
      ub: m.u().conj(),
      vi: Scalar::real(m.v()).inv().unwrap(),
      i: Scalar::i(),
    }
  }

  const METRICS: [&str; 3] = ["1,1,0", "3,2,1/2-1/3 i", "5/2,7,-2+1/4 i"];

  #[test]
  fn abelian_is_flat() {
    let a = AlgebraSpec::abelian();
    let m = metric("3,2,1/2-1/3 i");
    assert!(levi_civita(&a, &m).nonzero().is_empty());
    assert_eq!(gauduchon_connection(&a, &m, &rat(1, 3), &rat(1, 2)), levi_civita(&a, &m));
    assert!(chern_connection(&a, &m).unwrap().nonzero().is_empty());
    assert!(chern_ricci_form(&a, &m).unwrap().is_zero());
  }

  #[test]
  fn hopf_levi_civita_samples() {
    let hopf = spec("hopf");
    for text in METRICS {
      let m = metric(text);
      let v = vals(&m);
      let lc = levi_civita(&hopf, &m);
      assert_eq!(*lc.gamma(I1, I1, I1), -(&(&v.s2 * &v.u) * &v.vi));
      let expected = &(&(&v.i * &v.r2) * &v.s2) * &v.vi;
      assert_eq!(*lc.gamma(I1, B1, I2), expected.scale(&rat(1, 2)));
      let expected = -(&(&v.i * &(&v.s2 * &v.s2)) * &v.vi);
      assert_eq!(*lc.gamma(I1, B2, I1), expected.scale(&rat(1, 2)));
      assert!(lc.is_conjugation_symmetric());
    }
  }

  #[test]
  fn hopf_chern_samples() {
    let hopf = spec("hopf");
    for text in METRICS {
      let m = metric(text);
      let v = vals(&m);
      let ch = chern_connection(&hopf, &m).unwrap();
      assert_eq!(*ch.gamma(I1, I2, I1), -(&(&v.i * &(&v.s2 * &v.s2)) * &v.vi));
      assert_eq!(*ch.gamma(I2, I1, I1), &(&(&v.i * &v.r2) * &v.s2) * &v.vi);
      assert_eq!(*ch.gamma(I1, B1, B2), v.i);
      assert_eq!(*ch.gamma(I2, B1, B1), -v.i.clone());
      assert_eq!(*ch.gamma(I1, I2, I2), &(&v.s2 * &v.u) * &v.vi);
      assert_eq!(*ch.gamma(I2, I1, I2), -(&(&v.r2 * &v.u) * &v.vi));
    }
  }

  #[test]
  fn two_chern_routes_agree() {
    let half = rat(1, 2);
    let zero = rat(0, 1);
    for s in Surface::ALL {
      let sp = spec(s.name());
      for text in METRICS {
        let m = metric(text);
        let direct = chern_connection(&sp, &m).unwrap();
        assert_eq!(direct, gauduchon_connection(&sp, &m, &zero, &half), "{s} {text}");
        assert!(direct.is_conjugation_symmetric());
      }
    }
  }

  #[test]
  fn hopf_curvature_samples() {
    let hopf = spec("hopf");
    for text in METRICS {
      let m = metric(text);
      let v = vals(&m);
      let r = chern_data(&hopf, &m).unwrap().curvature;
      let s6 = &(&v.s2 * &v.s2) * &v.s2;
      assert_eq!(*r.get(I1, B1, I2, B2), (&s6 * &v.vi).scale(&rat(1, 2)));
      let uu = &v.u * &v.ub;
      let two = Scalar::from_int(2);
      let num = &(&(&(&two * &v.r2) * &v.r2) * &v.s2) - &(&(&v.r2 * &v.s2) * &v.s2);
      let num = &num - &(&(&two * &(&v.r2 - &v.s2)) * &uu);
      assert_eq!(*r.get(I1, B1, I1, B1), (&num * &v.vi).scale(&rat(1, 2)));
      assert!(r.is_antisymmetric());
      assert!(r.is_conjugation_symmetric());
    }
  }

  #[test]
  fn hopf_ricci_entry_is_two() {
    let hopf = spec("hopf");
    for text in METRICS {
      let data = chern_data(&hopf, &metric(text)).unwrap();
      assert_eq!(data.ricci[(0, 2)], Scalar::from_int(2));
      assert_eq!(data.form, RicciForm { rho_r: rat(4, 1), rho_s: rat(0, 1), rho_u: Scalar::zero() });
    }
  }

  #[test]
  fn ricci_forms_metric_independent_and_closed() {
    for s in Surface::ALL {
      let sp = spec(s.name());
      let dc = DoubleComplex::new(&sp).unwrap();
      let reference = chern_ricci_form(&sp, &Metric::standard()).unwrap();
      for text in METRICS {
        let rho = chern_ricci_form(&sp, &metric(text)).unwrap();
        assert_eq!(rho, reference, "{s}");
        let f = rho.form();
        assert!(f.is_real());
        assert!(dc.del.apply(&f).is_zero() && dc.delbar.apply(&f).is_zero() && dc.d.apply(&f).is_zero());
      }
    }
  }

  #[test]
  fn inoue_ricci_forms() {
    let params = |a: i64, b: i64| BTreeMap::from([("alpha".to_string(), rat(a, 1)), ("beta".to_string(), rat(b, 1))]);
    for (a, b) in [(1, 0), (2, 3), (-3, 1)] {
      let sp = load_surface("inoue_sm", &params(a, b)).unwrap();
      let rho = chern_ricci_form(&sp, &metric("3,2,1/2-1/3 i")).unwrap();
      assert!(rho.rho_r.is_zero() && rho.rho_u.is_zero());
      assert!(rho.rho_s < rat(0, 1), "{rho}");
    }
    for s in [Surface::KodairaPrimary, Surface::KodairaSecondary] {
      assert!(chern_ricci_form(&spec(s.name()), &metric("3,2,1/2-1/3 i")).unwrap().is_zero());
    }
  }

  #[test]
  fn ricci_form_round_trip() {
    let rho = RicciForm { rho_r: rat(3, 2), rho_s: rat(-1, 5), rho_u: "1/2-2 i".parse().unwrap() };
    assert!(rho.two_ric().is_real());
    assert_eq!(RicciForm::from_two_ric(&rho.two_ric()).unwrap(), rho);
    let bad = Form::monomial("11b").unwrap();
    assert!(matches!(RicciForm::from_two_ric(&bad), Err(Error::NonRealRicci(_))));
  }
}

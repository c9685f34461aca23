//! Invariant Hermitian metrics, the Hodge star, the `L²` inner product and codifferentials.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alphabet::DIM;
use crate::catalog::AlgebraSpec;
use crate::error::{Error, Result};
use crate::forms::{basis, DoubleComplex, Form, Monomial, Operator, RANK};
use crate::linalg::Matrix;
use crate::scalar::{parse_rational, rat, Rational, Scalar};

/// `2ω = √−1 r² φ^{11̄} + √−1 s² φ^{22̄} + u φ^{12̄} − ū φ^{21̄}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Metric {
  r2: Rational,
  s2: Rational,
  u: Scalar,
}

impl Metric {
  pub fn new(r2: Rational, s2: Rational, u: Scalar) -> Result<Self> {
    if !r2.is_positive() {
      return Err(Error::InvalidMetric(format!("r2 <= 0 (r2 = {r2})")));
    }
    if !s2.is_positive() {
      return Err(Error::InvalidMetric(format!("s2 <= 0 (s2 = {s2})")));
    }
    let m = Self { r2, s2, u };
    if !m.v().is_positive() {
      return Err(Error::InvalidMetric(format!("V <= 0 (V = r2*s2 - |u|^2 = {})", m.v())));
    }
    Ok(m)
  }

  /// The standard metric `(1, 1, 0)`.
  pub fn standard() -> Self { Self::new(Rational::one(), Rational::one(), Scalar::zero()).expect("valid") }

  /// A random valid metric with small-height rational entries; `u = 0` iff `diagonal`.
  pub fn random<R: Rng + ?Sized>(rng: &mut R, diagonal: bool) -> Self {
    let positive = |rng: &mut R| rat(rng.gen_range(1..=12), rng.gen_range(1..=5));
    loop {
      let (r2, s2) = (positive(rng), positive(rng));
      if diagonal {
        return Self::new(r2, s2, Scalar::zero()).expect("positive diagonal metric");
      }
      let u = Scalar::new(rat(rng.gen_range(-6..=6), rng.gen_range(1..=6)), rat(rng.gen_range(-6..=6), rng.gen_range(1..=6)));
      if u.is_zero() {
        continue;
      }
      if let Ok(m) = Self::new(r2, s2, u) {
        return m;
      }
    }
  }

  /// `n` metrics from a seeded generator.
  pub fn sample(seed: u64, n: usize, diagonal: bool) -> Vec<Metric> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Self::random(&mut rng, diagonal)).collect()
  }

  pub fn r2(&self) -> &Rational { &self.r2 }

  pub fn s2(&self) -> &Rational { &self.s2 }

  pub fn u(&self) -> &Scalar { &self.u }

  /// `V = r²s² − |u|²`.
  pub fn v(&self) -> Rational { &self.r2 * &self.s2 - self.u.norm_sqr() }

  pub fn is_diagonal(&self) -> bool { self.u.is_zero() }

  /// `λ·g`.
  pub fn scaled(&self, lambda: &Rational) -> Result<Metric> {
    Metric::new(&self.r2 * lambda, &self.s2 * lambda, self.u.scale(lambda))
  }

  /// `g_{AB}` on the full alphabet; zero on same-type pairs.
  pub fn g(&self) -> Matrix {
    let half = rat(1, 2);
    let big = [
      [Scalar::real(self.r2.clone()), -self.u.mul_i()],
      [self.u.conj().mul_i(), Scalar::real(self.s2.clone())],
    ];
    let mut g = Matrix::zeros(DIM, DIM);
    for k in 0..2 {
      for l in 0..2 {
        let v = big[k][l].scale(&half);
        g[(k, l + 2)] = v.clone();
        g[(l + 2, k)] = v;
      }
    }
    g
  }

  /// `g^{AB}`.
  pub fn g_inv(&self) -> Matrix { self.g().inverse().expect("positive-definite metric is invertible") }

  pub fn fundamental_form(&self) -> Form {
    let half = Scalar::ratio(1, 2);
    let i = Scalar::i();
    let terms = [
      (&i * &Scalar::real(self.r2.clone()), "11b"),
      (&i * &Scalar::real(self.s2.clone()), "22b"),
      (self.u.clone(), "12b"),
      (-self.u.conj(), "21b"),
    ];
    let two_omega = Form::from_terms(terms.iter().map(|(c, m)| (c.clone(), *m))).expect("valid monomials");
    two_omega.scale(&half)
  }

  /// `ω²/2 = (V/4) φ^{121̄2̄}`.
  pub fn volume_form(&self) -> Form {
    let omega = self.fundamental_form();
    omega.wedge(&omega).scale(&Scalar::ratio(1, 2))
  }

  /// Symmetric bilinear extension of `g^{-1}` to `φ^a, φ^b`: `det[g^{a_i b_j}]`.
  pub fn pairing(&self, a: Monomial, b: Monomial) -> Scalar { pairing_with(&self.g_inv(), a, b) }
}

fn pairing_with(ginv: &Matrix, a: Monomial, b: Monomial) -> Scalar {
  if a.degree() != b.degree() {
    return Scalar::zero();
  }
  let rows: Vec<usize> = a.letters().iter().map(|i| i.pos()).collect();
  let cols: Vec<usize> = b.letters().iter().map(|i| i.pos()).collect();
  det(&ginv.select(&rows, &cols))
}

/// Laplace expansion; only ever applied to matrices of size ≤ 4.
fn det(m: &Matrix) -> Scalar {
  let n = m.rows();
  if n == 0 {
    return Scalar::one();
  }
  let rest: Vec<usize> = (1..n).collect();
  let mut total = Scalar::zero();
  for j in 0..n {
    if m[(0, j)].is_zero() {
      continue;
    }
    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
    let minor = det(&m.select(&rest, &cols));
    let term = &m[(0, j)] * &minor;
    total = if j % 2 == 0 { total + term } else { total - term };
  }
  total
}

impl fmt::Display for Metric {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { write!(f, "{},{},{}", self.r2, self.s2, self.u) }
}

impl FromStr for Metric {
  type Err = Error;

  /// `"r2,s2,u"`, e.g. `"1,1,1/2-i"`.
  fn from_str(text: &str) -> Result<Metric> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
      return Err(Error::Parse { what: "metric r2,s2,u", input: text.to_string() });
    }
    Metric::new(parse_rational(parts[0])?, parse_rational(parts[1])?, parts[2].parse()?)
  }
}

/// Serialized metric.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MetricRecord {
  pub r2: String,
  pub s2: String,
  pub u: Scalar,
  #[serde(rename = "V")]
  pub v: String,
}

impl From<&Metric> for MetricRecord {
  fn from(m: &Metric) -> Self { Self { r2: m.r2.to_string(), s2: m.s2.to_string(), u: m.u.clone(), v: m.v().to_string() } }
}

impl TryFrom<&MetricRecord> for Metric {
  type Error = Error;

  fn try_from(r: &MetricRecord) -> Result<Metric> { Metric::new(parse_rational(&r.r2)?, parse_rational(&r.s2)?, r.u.clone()) }
}

/// The Hodge star as an operator: `a ∧ ⋆c = B(a, c)·vol` with `B` the bilinear pairing.
pub fn hodge_star(m: &Metric) -> Operator {
  let ginv = m.g_inv();
  let vol_coeff = Scalar::real(m.v() * rat(1, 4));
  let mut s = Matrix::zeros(RANK, RANK);
  for &c in basis() {
    for &a in basis() {
      if a.degree() != c.degree() {
        continue;
      }
      let b = pairing_with(&ginv, a, c);
      if b.is_zero() {
        continue;
      }
      let comp = a.complement();
      let (sign, _) = a.wedge(comp).expect("complementary");
      let value = &b * &vol_coeff;
      s[(comp.index(), c.index())] = if sign < 0 { -value } else { value };
    }
  }
  Operator::from_matrix(s)
}

/// Gram matrix `H[a][b] = ⟨φ^a, φ^b⟩ = B(φ^a, conj φ^b)`.
pub fn gram(m: &Metric) -> Matrix {
  let ginv = m.g_inv();
  let mut h = Matrix::zeros(RANK, RANK);
  for &a in basis() {
    for &b in basis() {
      if a.degree() != b.degree() {
        continue;
      }
      let (sign, bb) = b.bar();
      let v = pairing_with(&ginv, a, bb);
      h[(a.index(), b.index())] = if sign < 0 { -v } else { v };
    }
  }
  h
}

/// `⟨a, b⟩`, conjugate-linear in `b`.
pub fn inner_product(m: &Metric, a: &Form, b: &Form) -> Scalar { inner_with(&gram(m), a, b) }

pub(crate) fn inner_with(h: &Matrix, a: &Form, b: &Form) -> Scalar {
  let mut total = Scalar::zero();
  for (ma, ca) in a.terms() {
    for (mb, cb) in b.terms() {
      let entry = &h[(ma.index(), mb.index())];
      if !entry.is_zero() {
        total += ca * &cb.conj() * entry;
      }
    }
  }
  total
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DiffKind {
  D,
  Del,
  Delbar,
}

/// A valid spec together with a metric, with the derived operators cached.
pub struct HermitianSurface {
  spec: AlgebraSpec,
  metric: Metric,
  complex: DoubleComplex,
  star: Operator,
  gram: Matrix,
  codiff: [Operator; 3],
  pub(crate) laplacians: [OnceLock<Operator>; 5],
}

impl HermitianSurface {
  pub fn new(spec: AlgebraSpec, metric: Metric) -> Result<Self> {
    crate::catalog::ensure_valid(&spec)?;
    let complex = DoubleComplex::new(&spec)?;
    let star = hodge_star(&metric);
    let adj = |x: &Operator| -&star.compose(x).compose(&star);
    let codiff = [adj(&complex.d), adj(&complex.delbar), adj(&complex.del)];
    let gram = gram(&metric);
    Ok(Self { spec, metric, complex, star, gram, codiff, laplacians: Default::default() })
  }

  pub fn spec(&self) -> &AlgebraSpec { &self.spec }

  pub fn metric(&self) -> &Metric { &self.metric }

  pub fn complex(&self) -> &DoubleComplex { &self.complex }

  pub fn d(&self) -> &Operator { &self.complex.d }

  pub fn del(&self) -> &Operator { &self.complex.del }

  pub fn delbar(&self) -> &Operator { &self.complex.delbar }

  pub fn star(&self) -> &Operator { &self.star }

  pub fn gram(&self) -> &Matrix { &self.gram }

  /// `d* = −⋆d⋆`, `∂* = −⋆∂̄⋆`, `∂̄* = −⋆∂⋆`.
  pub fn codifferential(&self, kind: DiffKind) -> &Operator {
    match kind {
      DiffKind::D => &self.codiff[0],
      DiffKind::Del => &self.codiff[1],
      DiffKind::Delbar => &self.codiff[2],
    }
  }

  pub fn differential(&self, kind: DiffKind) -> &Operator {
    match kind {
      DiffKind::D => &self.complex.d,
      DiffKind::Del => &self.complex.del,
      DiffKind::Delbar => &self.complex.delbar,
    }
  }

  pub fn inner(&self, a: &Form, b: &Form) -> Scalar { inner_with(&self.gram, a, b) }

  /// Adjoint of `op` computed from the Gram matrix, independent of the star.
  pub fn gram_adjoint(&self, op: &Operator) -> Operator {
    let m = self.gram.transpose();
    let m_inv = m.inverse().expect("Gram matrix is positive-definite");
    Operator::from_matrix(&(&m_inv * &op.matrix().adjoint()) * &m)
  }

  pub fn volume_form(&self) -> Form { self.metric.volume_form() }
}

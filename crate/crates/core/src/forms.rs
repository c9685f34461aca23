//! The 16-dimensional exterior algebra of invariant forms, with `d`, `∂`, `∂̄`
//! as dense operator matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::LazyLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabet::Idx;
use crate::catalog::AlgebraSpec;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Number of basis monomials.
pub const RANK: usize = 16;

/// A canonical monomial `φ^{I₁…I_k}`, stored as a bit set over the alphabet.
/// Letters are ordered `1 < 2 < 1̄ < 2̄`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(u8);

impl Monomial {
  pub const ONE: Monomial = Monomial(0);
  pub const TOP: Monomial = Monomial(0b1111);

  pub fn from_mask(mask: u8) -> Self {
    assert!(mask < 16);
    Monomial(mask)
  }

  pub fn mask(self) -> u8 { self.0 }

  pub fn letter(i: Idx) -> Self { Monomial(1 << i.pos()) }

  /// Canonicalizes a sequence of letters: the sign of the sorting permutation,
  /// or `None` when a letter repeats.
  pub fn from_letters(letters: &[Idx]) -> Option<(i8, Monomial)> {
    let mut mask = 0u8;
    let mut inversions = 0usize;
    for (n, a) in letters.iter().enumerate() {
      if mask & (1 << a.pos()) != 0 {
        return None;
      }
      mask |= 1 << a.pos();
      inversions += letters[..n].iter().filter(|b| b.pos() > a.pos()).count();
    }
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, Monomial(mask)))
  }

  pub fn letters(self) -> Vec<Idx> { Idx::ALL.into_iter().filter(|i| self.0 & (1 << i.pos()) != 0).collect() }

  pub fn degree(self) -> usize { self.0.count_ones() as usize }

  pub fn bidegree(self) -> (usize, usize) { ((self.0 & 0b0011).count_ones() as usize, (self.0 & 0b1100).count_ones() as usize) }

  /// Conjugate monomial with the sign from reordering.
  pub fn bar(self) -> (i8, Monomial) {
    let barred: Vec<Idx> = self.letters().into_iter().map(Idx::bar).collect();
    Monomial::from_letters(&barred).expect("bar is injective")
  }

  /// `self ∧ other` as a signed monomial, `None` if they share a letter.
  pub fn wedge(self, other: Monomial) -> Option<(i8, Monomial)> {
    if self.0 & other.0 != 0 {
      return None;
    }
    let mut inversions = 0;
    for a in self.letters() {
      inversions += other.letters().iter().filter(|b| b.pos() < a.pos()).count();
    }
    Some((if inversions % 2 == 0 { 1 } else { -1 }, Monomial(self.0 | other.0)))
  }

  /// Complement `c` with `self ∧ c = ±φ^{121̄2̄}`.
  pub fn complement(self) -> Monomial { Monomial(!self.0 & 0b1111) }

  /// Position in [`basis`].
  pub fn index(self) -> usize { INDEX[self.0 as usize] }

  fn sort_key(self) -> (usize, Vec<usize>) { (self.degree(), self.letters().iter().map(|i| i.pos()).collect()) }
}

impl PartialOrd for Monomial {
  fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> { Some(self.cmp(other)) }
}

impl Ord for Monomial {
  fn cmp(&self, other: &Self) -> std::cmp::Ordering { self.sort_key().cmp(&other.sort_key()) }
}

impl fmt::Display for Monomial {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for i in self.letters() {
      f.write_str(i.label())?;
    }
    Ok(())
  }
}

/// Splits `"121b2b"` into letters.
fn parse_letters(text: &str) -> Result<Vec<Idx>> {
  let bad = || Error::Parse { what: "monomial", input: text.to_string() };
  let bytes = text.trim().as_bytes();
  let mut out = Vec::new();
  let mut n = 0;
  while n < bytes.len() {
    let digit = match bytes[n] {
      b'1' => 0,
      b'2' => 1,
      _ => return Err(bad()),
    };
    let barred = bytes.get(n + 1) == Some(&b'b');
    out.push(Idx::from_usize(digit + if barred { 2 } else { 0 }));
    n += if barred { 2 } else { 1 };
  }
  Ok(out)
}

/// Parses a letter string in any order, returning the sign relative to the canonical monomial.
pub fn parse_signed_monomial(text: &str) -> Result<(i8, Monomial)> {
  let letters = parse_letters(text)?;
  Monomial::from_letters(&letters).ok_or_else(|| Error::Parse { what: "monomial (repeated letter)", input: text.to_string() })
}

impl FromStr for Monomial {
  type Err = Error;

  /// Accepts canonical strings only.
  fn from_str(s: &str) -> Result<Monomial> {
    match parse_signed_monomial(s)? {
      (_, m) if m.to_string() == s.trim() => Ok(m),
      _ => Err(Error::Parse { what: "canonical monomial", input: s.to_string() }),
    }
  }
}

static BASIS: LazyLock<Vec<Monomial>> = LazyLock::new(|| {
  let mut all: Vec<Monomial> = (0..16u8).map(Monomial).collect();
  all.sort();
  all
});

static INDEX: LazyLock<[usize; 16]> = LazyLock::new(|| {
  let mut idx = [0; 16];
  for (n, m) in BASIS.iter().enumerate() {
    idx[m.0 as usize] = n;
  }
  idx
});

/// All monomials ordered by degree, then lexicographically.
pub fn basis() -> &'static [Monomial] { &BASIS }

/// A graded piece of the exterior algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Grading {
  Degree(usize),
  Bidegree(usize, usize),
}

impl Grading {
  pub fn contains(self, m: Monomial) -> bool {
    match self {
      Grading::Degree(k) => m.degree() == k,
      Grading::Bidegree(p, q) => m.bidegree() == (p, q),
    }
  }

  pub fn monomials(self) -> Vec<Monomial> { basis().iter().copied().filter(|m| self.contains(*m)).collect() }

  pub fn indices(self) -> Vec<usize> { self.monomials().iter().map(|m| m.index()).collect() }

  pub fn degrees() -> Vec<Grading> { (0..=4).map(Grading::Degree).collect() }

  pub fn bidegrees() -> Vec<Grading> { (0..=2).flat_map(|p| (0..=2).map(move |q| Grading::Bidegree(p, q))).collect() }

  pub fn total_degree(self) -> usize {
    match self {
      Grading::Degree(k) => k,
      Grading::Bidegree(p, q) => p + q,
    }
  }
}

impl fmt::Display for Grading {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      Grading::Degree(k) => write!(f, "{k}"),
      Grading::Bidegree(p, q) => write!(f, "({p},{q})"),
    }
  }
}

/// An invariant form: canonical monomials with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Form {
  coeffs: BTreeMap<Monomial, Scalar>,
}

impl Form {
  pub fn zero() -> Self { Self::default() }

  pub fn one() -> Self { Self::term(Scalar::one(), Monomial::ONE) }

  pub fn phi(i: Idx) -> Self { Self::term(Scalar::one(), Monomial::letter(i)) }

  pub fn term(c: Scalar, m: Monomial) -> Self {
    let mut f = Self::zero();
    f.add_term(c, m);
    f
  }

  /// `φ^{…}` from a letter string such as `"12b"`; non-canonical order picks up the permutation sign.
  pub fn monomial(text: &str) -> Result<Self> {
    let (sign, m) = parse_signed_monomial(text)?;
    Ok(Self::term(Scalar::from_int(sign as i64), m))
  }

  pub fn from_terms<'a>(terms: impl IntoIterator<Item = (Scalar, &'a str)>) -> Result<Self> {
    let mut f = Self::zero();
    for (c, text) in terms {
      f = f + Form::monomial(text)? * &c;
    }
    Ok(f)
  }

  pub fn add_term(&mut self, c: Scalar, m: Monomial) {
    if c.is_zero() {
      return;
    }
    let entry = self.coeffs.entry(m).or_insert_with(Scalar::zero);
    *entry += c;
    if entry.is_zero() {
      self.coeffs.remove(&m);
    }
  }

  pub fn coeff(&self, m: Monomial) -> Scalar { self.coeffs.get(&m).cloned().unwrap_or_else(Scalar::zero) }

  pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> { self.coeffs.iter() }

  pub fn is_zero(&self) -> bool { self.coeffs.is_empty() }

  /// Degree if homogeneous.
  pub fn degree(&self) -> Option<usize> {
    let mut degrees = self.coeffs.keys().map(|m| m.degree());
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
  }

  pub fn bidegree(&self) -> Option<(usize, usize)> {
    let mut b = self.coeffs.keys().map(|m| m.bidegree());
    let first = b.next()?;
    b.all(|d| d == first).then_some(first)
  }

  pub fn component(&self, g: Grading) -> Form {
    Form { coeffs: self.coeffs.iter().filter(|(m, _)| g.contains(**m)).map(|(m, c)| (*m, c.clone())).collect() }
  }

  pub fn scale(&self, k: &Scalar) -> Form {
    let mut out = Form::zero();
    for (m, c) in &self.coeffs {
      out.add_term(c * k, *m);
    }
    out
  }

  pub fn wedge(&self, other: &Form) -> Form {
    let mut out = Form::zero();
    for (a, ca) in &self.coeffs {
      for (b, cb) in &other.coeffs {
        if let Some((sign, m)) = a.wedge(*b) {
          let c = ca * cb;
          out.add_term(if sign < 0 { -c } else { c }, m);
        }
      }
    }
    out
  }

  /// Complex conjugate: bars every letter and conjugates coefficients.
  pub fn conj(&self) -> Form {
    let mut out = Form::zero();
    for (m, c) in &self.coeffs {
      let (sign, mb) = m.bar();
      out.add_term(if sign < 0 { -c.conj() } else { c.conj() }, mb);
    }
    out
  }

  pub fn is_real(&self) -> bool { *self == self.conj() }

  pub fn to_vector(&self) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); RANK];
    for (m, c) in &self.coeffs {
      v[m.index()] = c.clone();
    }
    v
  }

  pub fn from_vector(v: &[Scalar]) -> Form {
    assert_eq!(v.len(), RANK);
    let mut out = Form::zero();
    for (m, c) in basis().iter().zip(v) {
      out.add_term(c.clone(), *m);
    }
    out
  }

  /// Coordinates on the monomials of `g`.
  pub fn coords(&self, g: Grading) -> Vec<Scalar> { g.monomials().into_iter().map(|m| self.coeff(m)).collect() }

  pub fn from_coords(g: Grading, coords: &[Scalar]) -> Form {
    let mut out = Form::zero();
    for (m, c) in g.monomials().into_iter().zip(coords) {
      out.add_term(c.clone(), m);
    }
    out
  }

  pub fn to_terms(&self) -> Vec<FormTerm> {
    self.coeffs.iter().map(|(m, c)| FormTerm { monomial: m.to_string(), coeff: c.clone() }).collect()
  }

  pub fn from_serialized(terms: &[FormTerm]) -> Result<Form> {
    let mut out = Form::zero();
    for t in terms {
      let (sign, m) = parse_signed_monomial(&t.monomial)?;
      out.add_term(if sign < 0 { -t.coeff.clone() } else { t.coeff.clone() }, m);
    }
    Ok(out)
  }
}

/// Serialized form entry.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FormTerm {
  pub monomial: String,
  pub coeff: Scalar,
}

impl Serialize for Form {
  fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> { self.to_terms().serialize(s) }
}

impl<'de> Deserialize<'de> for Form {
  fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
    let terms = Vec::<FormTerm>::deserialize(d)?;
    Form::from_serialized(&terms).map_err(serde::de::Error::custom)
  }
}

impl fmt::Display for Form {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.is_zero() {
      return f.write_str("0");
    }
    for (n, (m, c)) in self.coeffs.iter().enumerate() {
      if n > 0 {
        f.write_str(" + ")?;
      }
      if *m == Monomial::ONE {
        write!(f, "({c})")?;
      } else {
        write!(f, "({c}) φ^{{{m}}}")?;
      }
    }
    Ok(())
  }
}

impl fmt::Debug for Form {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { fmt::Display::fmt(self, f) }
}

impl Add for Form {
  type Output = Form;

  fn add(mut self, rhs: Form) -> Form {
    for (m, c) in rhs.coeffs {
      self.add_term(c, m);
    }
    self
  }
}

impl Add<&Form> for &Form {
  type Output = Form;

  fn add(self, rhs: &Form) -> Form { self.clone() + rhs.clone() }
}

impl Sub for Form {
  type Output = Form;

  fn sub(self, rhs: Form) -> Form { self + (-rhs) }
}

impl Sub<&Form> for &Form {
  type Output = Form;

  fn sub(self, rhs: &Form) -> Form { self.clone() - rhs.clone() }
}

impl Neg for Form {
  type Output = Form;

  fn neg(self) -> Form { Form { coeffs: self.coeffs.into_iter().map(|(m, c)| (m, -c)).collect() } }
}

impl Mul<&Scalar> for Form {
  type Output = Form;

  fn mul(self, k: &Scalar) -> Form { self.scale(k) }
}

/// A linear endomorphism of the exterior algebra in the monomial basis
/// (column `j` is the image of `basis()[j]`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Operator {
  matrix: Matrix,
}

impl Operator {
  pub fn zero() -> Self { Self { matrix: Matrix::zeros(RANK, RANK) } }

  pub fn identity() -> Self { Self { matrix: Matrix::identity(RANK) } }

  pub fn from_matrix(matrix: Matrix) -> Self {
    assert_eq!((matrix.rows(), matrix.cols()), (RANK, RANK));
    Self { matrix }
  }

  /// Operator with the given image of every basis monomial.
  pub fn from_images(mut image: impl FnMut(Monomial) -> Form) -> Self {
    let columns: Vec<Vec<Scalar>> = basis().iter().map(|m| image(*m).to_vector()).collect();
    Self { matrix: Matrix::from_columns(RANK, &columns) }
  }

  pub fn matrix(&self) -> &Matrix { &self.matrix }

  pub fn apply(&self, f: &Form) -> Form { Form::from_vector(&self.matrix.mul_vec(&f.to_vector())) }

  /// `self ∘ other`.
  pub fn compose(&self, other: &Operator) -> Operator { Operator { matrix: &self.matrix * &other.matrix } }

  pub fn is_zero(&self) -> bool { self.matrix.is_zero() }

  pub fn scale(&self, k: &Scalar) -> Operator { Operator { matrix: self.matrix.scale(k) } }

  /// Restriction to `domain`, as a full-height matrix (rows = all monomials).
  pub fn restrict(&self, domain: Grading) -> Matrix {
    let rows: Vec<usize> = (0..RANK).collect();
    self.matrix.select(&rows, &domain.indices())
  }

  /// The block `codomain ← domain`.
  pub fn block(&self, domain: Grading, codomain: Grading) -> Matrix { self.matrix.select(&codomain.indices(), &domain.indices()) }

  /// Maps each monomial of `g` only into monomials satisfying `target`.
  pub fn maps_into(&self, g: Grading, target: impl Fn(Monomial) -> bool) -> bool {
    g.monomials().into_iter().all(|m| self.apply(&Form::term(Scalar::one(), m)).terms().all(|(n, _)| target(*n)))
  }
}

impl Add<&Operator> for &Operator {
  type Output = Operator;

  fn add(self, rhs: &Operator) -> Operator { Operator { matrix: &self.matrix + &rhs.matrix } }
}

impl Sub<&Operator> for &Operator {
  type Output = Operator;

  fn sub(self, rhs: &Operator) -> Operator { Operator { matrix: &self.matrix - &rhs.matrix } }
}

impl Neg for &Operator {
  type Output = Operator;

  fn neg(self) -> Operator { Operator { matrix: -&self.matrix } }
}

impl Mul<&Operator> for &Operator {
  type Output = Operator;

  fn mul(self, rhs: &Operator) -> Operator { self.compose(rhs) }
}

/// `dφ^K` as a 2-form.
pub fn d_generator(spec: &AlgebraSpec, k: Idx) -> Form {
  let mut out = Form::zero();
  for (i, h, c) in spec.dphi_terms(k) {
    let (sign, m) = Monomial::letter(i).wedge(Monomial::letter(h)).expect("distinct letters");
    out.add_term(if sign < 0 { -c } else { c }, m);
  }
  out
}

/// The exterior differential as a degree +1 derivation.
pub fn exterior_d(spec: &AlgebraSpec) -> Operator {
  let generators: Vec<Form> = Idx::ALL.iter().map(|&k| d_generator(spec, k)).collect();
  Operator::from_images(|m| {
    let letters = m.letters();
    let mut out = Form::zero();
    for (j, &l) in letters.iter().enumerate() {
      let before = Form::from_letters(&letters[..j]);
      let after = Form::from_letters(&letters[j + 1..]);
      let term = before.wedge(&generators[l.pos()]).wedge(&after);
      out = if j % 2 == 0 { out + term } else { out - term };
    }
    out
  })
}

impl Form {
  fn from_letters(letters: &[Idx]) -> Form {
    match Monomial::from_letters(letters) {
      Some((sign, m)) => Form::term(Scalar::from_int(sign as i64), m),
      None => Form::zero(),
    }
  }
}

/// `(∂, ∂̄)` from `d`; fails unless `d` splits into bidegrees `(1,0) + (0,1)`.
pub fn split_bidegree(d: &Operator) -> Result<(Operator, Operator)> {
  let mut del_cols = Vec::with_capacity(RANK);
  let mut delbar_cols = Vec::with_capacity(RANK);
  for &m in basis() {
    let (p, q) = m.bidegree();
    let image = d.apply(&Form::term(Scalar::one(), m));
    let mut del = Form::zero();
    let mut delbar = Form::zero();
    for (n, c) in image.terms() {
      match n.bidegree() {
        b if b == (p + 1, q) => del.add_term(c.clone(), *n),
        b if b == (p, q + 1) => delbar.add_term(c.clone(), *n),
        b => {
          return Err(Error::NonIntegrable(format!("d φ^{{{m}}} has a component in bidegree {b:?}")));
        }
      }
    }
    del_cols.push(del.to_vector());
    delbar_cols.push(delbar.to_vector());
  }
  Ok((
    Operator::from_matrix(Matrix::from_columns(RANK, &del_cols)),
    Operator::from_matrix(Matrix::from_columns(RANK, &delbar_cols)),
  ))
}

/// `d`, `∂`, `∂̄` of a spec.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
  pub d: Operator,
  pub del: Operator,
  pub delbar: Operator,
}

impl DoubleComplex {
  pub fn new(spec: &AlgebraSpec) -> Result<Self> {
    let d = exterior_d(spec);
    let (del, delbar) = split_bidegree(&d)?;
    Ok(Self { d, del, delbar })
  }
}

/// Left multiplication `x ↦ a ∧ x`.
pub fn wedge_operator(a: &Form) -> Operator { Operator::from_images(|m| a.wedge(&Form::term(Scalar::one(), m))) }

/// Complex conjugation (conjugate-linear).
pub fn conjugate_form(a: &Form) -> Form { a.conj() }

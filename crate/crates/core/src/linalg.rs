//! Dense matrices over the Gaussian rationals with exact Gauss-Jordan elimination.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
  rows: usize,
  cols: usize,
  data: Vec<Scalar>,
}

impl Matrix {
  pub fn zeros(rows: usize, cols: usize) -> Self { Self { rows, cols, data: vec![Scalar::zero(); rows * cols] } }

  pub fn identity(n: usize) -> Self {
    let mut m = Self::zeros(n, n);
    for k in 0..n {
      m[(k, k)] = Scalar::one();
    }
    m
  }

  pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
    Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
  }

  /// Matrix whose columns are the given vectors.
  pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
    let mut m = Self::zeros(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
      assert_eq!(col.len(), rows);
      for (i, v) in col.iter().enumerate() {
        m[(i, j)] = v.clone();
      }
    }
    m
  }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.cols }

  pub fn row(&self, i: usize) -> &[Scalar] { &self.data[i * self.cols..(i + 1) * self.cols] }

  pub fn column(&self, j: usize) -> Vec<Scalar> { (0..self.rows).map(|i| self[(i, j)].clone()).collect() }

  pub fn is_zero(&self) -> bool { self.data.iter().all(Scalar::is_zero) }

  pub fn transpose(&self) -> Self {
    let mut t = Self::zeros(self.cols, self.rows);
    for i in 0..self.rows {
      for j in 0..self.cols {
        t[(j, i)] = self[(i, j)].clone();
      }
    }
    t
  }

  /// Conjugate transpose.
  pub fn adjoint(&self) -> Self {
    let mut t = Self::zeros(self.cols, self.rows);
    for i in 0..self.rows {
      for j in 0..self.cols {
        t[(j, i)] = self[(i, j)].conj();
      }
    }
    t
  }

  pub fn conj(&self) -> Self { Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() } }

  pub fn scale(&self, k: &Scalar) -> Self {
    Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
  }

  pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(v.len(), self.cols);
    (0..self.rows)
      .map(|i| {
        self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
      })
      .collect()
  }

  /// Sub-matrix on the given row and column index sets.
  pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
    let mut m = Self::zeros(rows.len(), cols.len());
    for (a, &i) in rows.iter().enumerate() {
      for (b, &j) in cols.iter().enumerate() {
        m[(a, b)] = self[(i, j)].clone();
      }
    }
    m
  }

  /// Stacks `other` below `self`.
  pub fn vstack(&self, other: &Matrix) -> Self {
    assert_eq!(self.cols, other.cols);
    let mut data = self.data.clone();
    data.extend(other.data.iter().cloned());
    Self { rows: self.rows + other.rows, cols: self.cols, data }
  }

  /// Reduced row echelon form and pivot columns.
  pub fn rref(&self) -> (Matrix, Vec<usize>) {
    let mut m = self.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
      if r == m.rows {
        break;
      }
      let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
        continue;
      };
      m.swap_rows(r, p);
      let inv = m[(r, c)].inv().expect("nonzero pivot");
      for j in c..m.cols {
        if !m[(r, j)].is_zero() {
          m[(r, j)] = &m[(r, j)] * &inv;
        }
      }
      let pivot_row: Vec<Scalar> = m.row(r).to_vec();
      for i in 0..m.rows {
        if i == r || m[(i, c)].is_zero() {
          continue;
        }
        let factor = m[(i, c)].clone();
        for j in c..m.cols {
          if !pivot_row[j].is_zero() {
            let delta = &factor * &pivot_row[j];
            m[(i, j)] -= &delta;
          }
        }
      }
      pivots.push(c);
      r += 1;
    }
    (m, pivots)
  }

  pub fn rank(&self) -> usize { self.rref().1.len() }

  /// Basis of the right null space, one vector per free column, in reduced form:
  /// each vector has a 1 at its free column and zeros at the other free columns.
  pub fn kernel(&self) -> Vec<Vec<Scalar>> {
    let (r, pivots) = self.rref();
    let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
    free
      .iter()
      .map(|&f| {
        let mut v = vec![Scalar::zero(); self.cols];
        v[f] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
          v[p] = -&r[(row, f)];
        }
        v
      })
      .collect()
  }

  /// Some solution of `self · x = rhs`, or `None` if the system is inconsistent.
  pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(rhs.len(), self.rows);
    let mut aug = Matrix::zeros(self.rows, self.cols + 1);
    for i in 0..self.rows {
      for j in 0..self.cols {
        aug[(i, j)] = self[(i, j)].clone();
      }
      aug[(i, self.cols)] = rhs[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&self.cols) {
      return None;
    }
    let mut x = vec![Scalar::zero(); self.cols];
    for (row, &p) in pivots.iter().enumerate() {
      x[p] = r[(row, self.cols)].clone();
    }
    Some(x)
  }

  pub fn inverse(&self) -> Result<Matrix> {
    assert_eq!(self.rows, self.cols);
    let n = self.rows;
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
      for j in 0..n {
        aug[(i, j)] = self[(i, j)].clone();
      }
      aug[(i, n + i)] = Scalar::one();
    }
    let (r, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] != n - 1 {
      return Err(Error::Singular);
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Ok(r.select(&rows, &cols))
  }

  fn swap_rows(&mut self, a: usize, b: usize) {
    if a == b {
      return;
    }
    for j in 0..self.cols {
      self.data.swap(a * self.cols + j, b * self.cols + j);
    }
  }
}

impl Index<(usize, usize)> for Matrix {
  type Output = Scalar;

  fn index(&self, (i, j): (usize, usize)) -> &Scalar { &self.data[i * self.cols + j] }
}

impl IndexMut<(usize, usize)> for Matrix {
  fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar { &mut self.data[i * self.cols + j] }
}

impl Mul<&Matrix> for &Matrix {
  type Output = Matrix;

  fn mul(self, rhs: &Matrix) -> Matrix {
    assert_eq!(self.cols, rhs.rows, "dimension mismatch");
    let mut out = Matrix::zeros(self.rows, rhs.cols);
    for i in 0..self.rows {
      for k in 0..self.cols {
        let a = &self[(i, k)];
        if a.is_zero() {
          continue;
        }
        for j in 0..rhs.cols {
          let b = &rhs[(k, j)];
          if !b.is_zero() {
            out[(i, j)] += a * b;
          }
        }
      }
    }
    out
  }
}

impl Add<&Matrix> for &Matrix {
  type Output = Matrix;

  fn add(self, rhs: &Matrix) -> Matrix {
    assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
    Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
  }
}

impl Sub<&Matrix> for &Matrix {
  type Output = Matrix;

  fn sub(self, rhs: &Matrix) -> Matrix {
    assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
    Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
  }
}

impl Neg for &Matrix {
  type Output = Matrix;

  fn neg(self) -> Matrix { Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() } }
}

impl fmt::Debug for Matrix {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
    for i in 0..self.rows {
      let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
      writeln!(f, "  [{}]", row.join(", "))?;
    }
    write!(f, "]")
  }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Scalar>]) -> usize {
  if vectors.is_empty() {
    return 0;
  }
  Matrix::from_rows(vectors.to_vec()).rank()
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
  let ra = rank_of(a);
  let rb = rank_of(b);
  if ra != rb {
    return false;
  }
  let joint: Vec<Vec<Scalar>> = a.iter().chain(b).cloned().collect();
  rank_of(&joint) == ra
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(v: &[Scalar], basis: &[Vec<Scalar>]) -> bool {
  let mut joint = basis.to_vec();
  joint.push(v.to_vec());
  rank_of(&joint) == rank_of(basis)
}

/// Scales a vector so that its entries are Gaussian integers with trivial
/// content and the first nonzero entry has positive real part (or is a
/// positive imaginary multiple when its real part vanishes).
pub fn primitive(v: &[Scalar]) -> Vec<Scalar> {
  let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
    return v.to_vec();
  };
  let inv = lead.inv().expect("nonzero");
  let monic: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
  let lcm = monic.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
  let scaled: Vec<Scalar> = monic.iter().map(|x| x.scale(&Rational::from_integer(lcm.clone()))).collect();
  let gcd = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x.re().numer()).gcd(x.im().numer()));
  if gcd.is_zero() {
    return scaled;
  }
  let k = Rational::new(BigInt::one(), gcd.abs());
  scaled.iter().map(|x| x.scale(&k)).collect()
}

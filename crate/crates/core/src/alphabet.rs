//! The index alphabet `(1, 2, 1̄, 2̄)` of a complex surface coframe.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of real dimensions, equivalently the size of the alphabet.
pub const DIM: usize = 4;

/// One letter of the alphabet; `1b`/`2b` are the barred (conjugate) letters.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Idx {
  One = 0,
  Two = 1,
  OneBar = 2,
  TwoBar = 3,
}

impl Idx {
  pub const ALL: [Idx; DIM] = [Idx::One, Idx::Two, Idx::OneBar, Idx::TwoBar];
  pub const HOLOMORPHIC: [Idx; 2] = [Idx::One, Idx::Two];
  pub const ANTIHOLOMORPHIC: [Idx; 2] = [Idx::OneBar, Idx::TwoBar];

  pub fn from_usize(k: usize) -> Idx { Self::ALL[k] }

  pub fn pos(self) -> usize { self as usize }

  pub fn bar(self) -> Idx {
    match self {
      Idx::One => Idx::OneBar,
      Idx::Two => Idx::TwoBar,
      Idx::OneBar => Idx::One,
      Idx::TwoBar => Idx::Two,
    }
  }

  pub fn is_barred(self) -> bool { matches!(self, Idx::OneBar | Idx::TwoBar) }

  pub fn label(self) -> &'static str {
    match self {
      Idx::One => "1",
      Idx::Two => "2",
      Idx::OneBar => "1b",
      Idx::TwoBar => "2b",
    }
  }
}

impl fmt::Display for Idx {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.write_str(self.label()) }
}

impl FromStr for Idx {
  type Err = Error;

  fn from_str(s: &str) -> Result<Idx> {
    match s.trim() {
      "1" => Ok(Idx::One),
      "2" => Ok(Idx::Two),
      "1b" => Ok(Idx::OneBar),
      "2b" => Ok(Idx::TwoBar),
      other => Err(Error::Parse { what: "index", input: other.to_string() }),
    }
  }
}

/// Dense `4×4×4` table indexed by alphabet letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor3<T> {
  data: Vec<T>,
}

impl<T: Clone> Tensor3<T> {
  pub fn filled(value: T) -> Self { Self { data: vec![value; DIM * DIM * DIM] } }

  pub fn from_fn(mut f: impl FnMut(Idx, Idx, Idx) -> T) -> Self {
    let mut data = Vec::with_capacity(DIM * DIM * DIM);
    for a in Idx::ALL {
      for b in Idx::ALL {
        for c in Idx::ALL {
          data.push(f(a, b, c));
        }
      }
    }
    Self { data }
  }
}

impl<T> Tensor3<T> {
  fn offset(a: Idx, b: Idx, c: Idx) -> usize { (a.pos() * DIM + b.pos()) * DIM + c.pos() }

  pub fn get(&self, a: Idx, b: Idx, c: Idx) -> &T { &self.data[Self::offset(a, b, c)] }

  pub fn set(&mut self, a: Idx, b: Idx, c: Idx, value: T) { self.data[Self::offset(a, b, c)] = value; }

  /// Entries in lexicographic index order.
  pub fn entries(&self) -> impl Iterator<Item = ((Idx, Idx, Idx), &T)> {
    Idx::ALL
      .into_iter()
      .flat_map(|a| Idx::ALL.into_iter().flat_map(move |b| Idx::ALL.into_iter().map(move |c| (a, b, c))))
      .zip(self.data.iter())
  }
}

/// Iterator over all ordered pairs of letters.
pub fn pairs() -> impl Iterator<Item = (Idx, Idx)> { Idx::ALL.into_iter().flat_map(|a| Idx::ALL.into_iter().map(move |b| (a, b))) }

/// Iterator over all ordered triples of letters.
pub fn triples() -> impl Iterator<Item = (Idx, Idx, Idx)> {
  pairs().flat_map(|(a, b)| Idx::ALL.into_iter().map(move |c| (a, b, c)))
}

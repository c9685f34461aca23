//! Laplacians, harmonic spaces, cohomology dimensions and Hodge-star dualities.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{Form, Grading, Operator};
use crate::hodge::{DiffKind, HermitianSurface};
use crate::linalg::{in_span, primitive, rank_of, same_span, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum Kind {
  DeRham,
  Dolbeault,
  /// `Δ_∂`, the conjugate Dolbeault Laplacian.
  ConjugateDolbeault,
  BottChern,
  Aeppli,
}

impl Kind {
  pub const ALL: [Kind; 5] = [Kind::DeRham, Kind::Dolbeault, Kind::ConjugateDolbeault, Kind::BottChern, Kind::Aeppli];

  /// The four kinds reported by the tool.
  pub const MAIN: [Kind; 4] = [Kind::DeRham, Kind::Dolbeault, Kind::BottChern, Kind::Aeppli];

  fn slot(self) -> usize { self as usize }

  pub fn gradings(self) -> Vec<Grading> {
    match self {
      Kind::DeRham => Grading::degrees(),
      _ => Grading::bidegrees(),
    }
  }

  /// Grading of `a ∧ b` for `a ∈ g`, `b ∈ h`, if any forms live there.
  pub fn product_grading(g: Grading, h: Grading) -> Option<Grading> {
    match (g, h) {
      (Grading::Degree(a), Grading::Degree(b)) if a + b <= 4 => Some(Grading::Degree(a + b)),
      (Grading::Bidegree(p, q), Grading::Bidegree(r, s)) if p + r <= 2 && q + s <= 2 => Some(Grading::Bidegree(p + r, q + s)),
      _ => None,
    }
  }

  /// `⋆` maps `kind`-harmonic forms in `g` onto `dual().0`-harmonic forms in `dual().1`.
  pub fn dual(self, g: Grading) -> (Kind, Grading) {
    let target = match g {
      Grading::Degree(k) => Grading::Degree(4 - k),
      Grading::Bidegree(p, q) => Grading::Bidegree(2 - q, 2 - p),
    };
    let kind = match self {
      Kind::DeRham => Kind::DeRham,
      Kind::Dolbeault => Kind::ConjugateDolbeault,
      Kind::ConjugateDolbeault => Kind::Dolbeault,
      Kind::BottChern => Kind::Aeppli,
      Kind::Aeppli => Kind::BottChern,
    };
    (kind, target)
  }

  pub fn name(self) -> &'static str {
    match self {
      Kind::DeRham => "de Rham",
      Kind::Dolbeault => "Dolbeault",
      Kind::ConjugateDolbeault => "conjugate Dolbeault",
      Kind::BottChern => "Bott-Chern",
      Kind::Aeppli => "Aeppli",
    }
  }
}

impl fmt::Display for Kind {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.write_str(self.name()) }
}

/// Basis of a harmonic space in one grading.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HarmonicBasis {
  pub kind: Kind,
  pub grading: Grading,
  pub basis: Vec<Form>,
}

impl HarmonicBasis {
  pub fn dim(&self) -> usize { self.basis.len() }

  pub fn coords(&self) -> Vec<Vec<Scalar>> { self.basis.iter().map(|f| f.coords(self.grading)).collect() }

  pub fn spans_same(&self, other: &[Form]) -> bool {
    let theirs: Vec<Vec<Scalar>> = other.iter().map(|f| f.coords(self.grading)).collect();
    same_span(&self.coords(), &theirs)
  }

  pub fn contains(&self, f: &Form) -> bool {
    f.component(self.grading) == *f && in_span(&f.coords(self.grading), &self.coords())
  }
}

/// Row-reduces a spanning set and clears denominators.
pub fn normalize(grading: Grading, vectors: Vec<Vec<Scalar>>) -> Vec<Form> {
  if vectors.is_empty() {
    return Vec::new();
  }
  let (r, pivots) = Matrix::from_rows(vectors).rref();
  (0..pivots.len()).map(|i| Form::from_coords(grading, &primitive(r.row(i)))).collect()
}

fn kernel_on(ops: &[&Operator], grading: Grading) -> Vec<Vec<Scalar>> {
  let n = grading.monomials().len();
  if n == 0 {
    return Vec::new();
  }
  let mut stacked: Option<Matrix> = None;
  for op in ops {
    let block = op.restrict(grading);
    stacked = Some(match stacked {
      None => block,
      Some(m) => m.vstack(&block),
    });
  }
  stacked.expect("at least one operator").kernel()
}

impl HermitianSurface {
  fn op(&self, kind: DiffKind) -> &Operator { self.differential(kind) }

  fn adj(&self, kind: DiffKind) -> &Operator { self.codifferential(kind) }

  /// The Laplacian of the given kind, cached.
  pub fn laplacian(&self, kind: Kind) -> &Operator {
    self.laplacians[kind.slot()].get_or_init(|| self.build_laplacian(kind))
  }

  fn build_laplacian(&self, kind: Kind) -> Operator {
    use DiffKind::*;
    let (d, ds) = (self.op(D), self.adj(D));
    let (a, as_) = (self.op(Del), self.adj(Del));
    let (b, bs) = (self.op(Delbar), self.adj(Delbar));
    let chain = |ops: &[&Operator]| ops.iter().skip(1).fold(ops[0].clone(), |acc, x| acc.compose(x));
    let sum = |terms: Vec<Operator>| terms.iter().skip(1).fold(terms[0].clone(), |acc, x| &acc + x);
    match kind {
      Kind::DeRham => sum(vec![chain(&[d, ds]), chain(&[ds, d])]),
      Kind::Dolbeault => sum(vec![chain(&[b, bs]), chain(&[bs, b])]),
      Kind::ConjugateDolbeault => sum(vec![chain(&[a, as_]), chain(&[as_, a])]),
      Kind::BottChern => sum(vec![
        chain(&[a, b, bs, as_]),
        chain(&[bs, as_, a, b]),
        chain(&[bs, a, as_, b]),
        chain(&[as_, b, bs, a]),
        chain(&[bs, b]),
        chain(&[as_, a]),
      ]),
      Kind::Aeppli => sum(vec![
        chain(&[a, as_]),
        chain(&[b, bs]),
        chain(&[bs, as_, a, b]),
        chain(&[a, b, bs, as_]),
        chain(&[a, bs, b, as_]),
        chain(&[b, as_, a, bs]),
      ]),
    }
  }

  pub fn harmonic_basis(&self, kind: Kind, grading: Grading) -> HarmonicBasis {
    let kernel = kernel_on(&[self.laplacian(kind)], grading);
    HarmonicBasis { kind, grading, basis: normalize(grading, kernel) }
  }

  /// Harmonic bases in every grading of the kind.
  pub fn harmonic_spaces(&self, kind: Kind) -> Vec<HarmonicBasis> {
    kind.gradings().into_iter().map(|g| self.harmonic_basis(kind, g)).collect()
  }

  pub fn is_harmonic(&self, kind: Kind, f: &Form) -> bool { self.laplacian(kind).apply(f).is_zero() }

  /// Harmonic space via the first-order conditions:
  /// Bott-Chern `∂h = ∂̄h = ∂∂̄⋆h = 0`, Aeppli `∂∂̄h = ∂⋆h = ∂̄⋆h = 0`.
  pub fn kernel_characterization(&self, kind: Kind, grading: Grading) -> Result<HarmonicBasis> {
    let (a, b, star) = (self.del(), self.delbar(), self.star());
    let ops: Vec<Operator> = match kind {
      Kind::BottChern => vec![a.clone(), b.clone(), a.compose(b).compose(star)],
      Kind::Aeppli => vec![a.compose(b), a.compose(star), b.compose(star)],
      other => return Err(Error::InvalidParam { param: "kind".into(), reason: format!("no first-order characterization for {other}") }),
    };
    let refs: Vec<&Operator> = ops.iter().collect();
    Ok(HarmonicBasis { kind, grading, basis: normalize(grading, kernel_on(&refs, grading)) })
  }

  /// Images whose span is quotiented out by the cohomology of `kind` in `grading`.
  pub fn exact_forms(&self, kind: Kind, grading: Grading) -> Vec<Form> {
    let sources: Vec<(Grading, Operator)> = match (kind, grading) {
      (Kind::DeRham, Grading::Degree(k)) if k > 0 => vec![(Grading::Degree(k - 1), self.d().clone())],
      (Kind::Dolbeault, Grading::Bidegree(p, q)) if q > 0 => vec![(Grading::Bidegree(p, q - 1), self.delbar().clone())],
      (Kind::ConjugateDolbeault, Grading::Bidegree(p, q)) if p > 0 => vec![(Grading::Bidegree(p - 1, q), self.del().clone())],
      (Kind::BottChern, Grading::Bidegree(p, q)) if p > 0 && q > 0 => {
        vec![(Grading::Bidegree(p - 1, q - 1), self.del().compose(self.delbar()))]
      }
      (Kind::Aeppli, Grading::Bidegree(p, q)) => {
        let mut v = Vec::new();
        if p > 0 {
          v.push((Grading::Bidegree(p - 1, q), self.del().clone()));
        }
        if q > 0 {
          v.push((Grading::Bidegree(p, q - 1), self.delbar().clone()));
        }
        v
      }
      _ => Vec::new(),
    };
    sources
      .into_iter()
      .flat_map(|(src, op)| src.monomials().into_iter().map(move |m| op.apply(&Form::term(Scalar::from_int(1), m))))
      .filter(|f| !f.is_zero())
      .collect()
  }

  /// The unique harmonic form in `rep + exact`, or an error if there is none or it is not unique.
  pub fn harmonic_representative(&self, kind: Kind, rep: &Form) -> Result<Form> {
    let grading = match (kind, rep.bidegree(), rep.degree()) {
      (Kind::DeRham, _, Some(k)) => Grading::Degree(k),
      (_, Some((p, q)), _) if kind != Kind::DeRham => Grading::Bidegree(p, q),
      _ => return Err(Error::InvalidParam { param: "representative".into(), reason: "not homogeneous".into() }),
    };
    let harmonic = self.harmonic_basis(kind, grading);
    let exact = self.exact_forms(kind, grading);
    // Solve rep = Σ x_i h_i + Σ y_j e_j.
    let columns: Vec<Vec<Scalar>> = harmonic.basis.iter().chain(exact.iter()).map(|f| f.coords(grading)).collect();
    if columns.is_empty() {
      return Err(Error::Singular);
    }
    let rows = grading.monomials().len();
    let m = Matrix::from_columns(rows, &columns);
    let exact_rank = rank_of(&exact.iter().map(|f| f.coords(grading)).collect::<Vec<_>>());
    if m.rank() != harmonic.dim() + exact_rank {
      return Err(Error::Singular);
    }
    let x = m.solve(&rep.coords(grading)).ok_or(Error::Singular)?;
    let mut h = Form::zero();
    for (coef, basis) in x.iter().zip(&harmonic.basis) {
      h = h + basis.scale(coef);
    }
    Ok(h)
  }

  pub fn cohomology_dims(&self) -> DimTable {
    let bidegree_table = |kind: Kind| {
      std::array::from_fn(|p| std::array::from_fn(|q| self.harmonic_basis(kind, Grading::Bidegree(p, q)).dim()))
    };
    let mut betti = [0usize; 5];
    for (k, b) in betti.iter_mut().enumerate() {
      *b = self.harmonic_basis(Kind::DeRham, Grading::Degree(k)).dim();
    }
    DimTable {
      betti,
      dolbeault: bidegree_table(Kind::Dolbeault),
      bott_chern: bidegree_table(Kind::BottChern),
      aeppli: bidegree_table(Kind::Aeppli),
    }
  }

  /// Checks that `⋆` maps each harmonic space bijectively onto its dual.
  pub fn duality_check(&self) -> DualityReport {
    let mut entries = Vec::new();
    for kind in [Kind::DeRham, Kind::Dolbeault, Kind::BottChern] {
      for g in kind.gradings() {
        let source = self.harmonic_basis(kind, g);
        let (dual_kind, dual_grading) = kind.dual(g);
        let target = self.harmonic_basis(dual_kind, dual_grading);
        let images: Vec<Form> = source.basis.iter().map(|f| self.star().apply(f)).collect();
        let ok = source.dim() == target.dim() && target.spans_same(&images);
        entries.push(DualityEntry { from: kind, grading: g, to: dual_kind, dual_grading, dim: source.dim(), ok });
      }
    }
    DualityReport { entries }
  }
}

/// A linear system `M λ = b` over ℚ(i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearSystem {
  pub matrix: Matrix,
  pub rhs: Vec<Scalar>,
}

impl LinearSystem {
  pub fn rank(&self) -> usize { self.matrix.rank() }

  pub fn particular(&self) -> Option<Vec<Scalar>> { self.matrix.solve(&self.rhs) }

  pub fn kernel(&self) -> Vec<Vec<Scalar>> { self.matrix.kernel() }

  pub fn is_solution(&self, x: &[Scalar]) -> bool { self.matrix.mul_vec(x) == self.rhs }

  /// Same (nonempty) affine solution set.
  pub fn same_solutions(&self, other: &LinearSystem) -> bool {
    match (self.particular(), other.particular()) {
      (Some(x), Some(_)) => other.is_solution(&x) && same_span(&self.kernel(), &other.kernel()),
      _ => false,
    }
  }
}

/// The Aeppli conditions `∂⋆h = ∂̄⋆h = 0` on `h = base + Σ λ_j ∂a_j + Σ λ_{n+j} ∂̄b_j`,
/// as a system in the `λ`. Zero rows are dropped.
pub fn aeppli_perturbation_system(hs: &HermitianSurface, base: &Form, del_sources: &[Form], delbar_sources: &[Form]) -> LinearSystem {
  let perturbations: Vec<Form> = del_sources
    .iter()
    .map(|a| hs.del().apply(a))
    .chain(delbar_sources.iter().map(|b| hs.delbar().apply(b)))
    .collect();
  let conditions = [hs.del().compose(hs.star()), hs.delbar().compose(hs.star())];
  let mut rows = Vec::new();
  let mut rhs = Vec::new();
  for op in &conditions {
    let images: Vec<Vec<Scalar>> = perturbations.iter().map(|p| op.apply(p).to_vector()).collect();
    let constant = op.apply(base).to_vector();
    for (r, c) in constant.iter().enumerate() {
      let row: Vec<Scalar> = images.iter().map(|v| v[r].clone()).collect();
      if row.iter().any(|x| !x.is_zero()) || !c.is_zero() {
        rows.push(row);
        rhs.push(-c);
      }
    }
  }
  LinearSystem { matrix: Matrix::from_rows(rows), rhs }
}

/// Cohomology dimensions of one Hermitian surface.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DimTable {
  pub betti: [usize; 5],
  /// Indexed `[p][q]`.
  pub dolbeault: [[usize; 3]; 3],
  pub bott_chern: [[usize; 3]; 3],
  pub aeppli: [[usize; 3]; 3],
}

impl DimTable {
  /// Nonzero `(p, q)` entries of a bidegree table, in order.
  pub fn support(table: &[[usize; 3]; 3]) -> Vec<((usize, usize), usize)> {
    let mut out = Vec::new();
    for (p, row) in table.iter().enumerate() {
      for (q, &d) in row.iter().enumerate() {
        if d > 0 {
          out.push(((p, q), d));
        }
      }
    }
    out
  }

  /// `Σ_{p+q=k} h^{p,q}_∂̄`.
  pub fn frolicher_sums(&self) -> [usize; 5] {
    let mut s = [0; 5];
    for p in 0..3 {
      for q in 0..3 {
        s[p + q] += self.dolbeault[p][q];
      }
    }
    s
  }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DualityEntry {
  pub from: Kind,
  pub grading: Grading,
  pub to: Kind,
  pub dual_grading: Grading,
  pub dim: usize,
  pub ok: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DualityReport {
  pub entries: Vec<DualityEntry>,
}

impl DualityReport {
  pub fn all_ok(&self) -> bool { self.entries.iter().all(|e| e.ok) }
}

impl Serialize for Grading {
  fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> { s.collect_str(self) }
}

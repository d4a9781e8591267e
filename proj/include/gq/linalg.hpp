#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gq/error.hpp"
#include "gq/field.hpp"
#include "gq/scalar.hpp"

namespace gq {

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

// Matrices fabricated inside the library take the ambient field explicitly, so F_p
// entries are born carrying their modulus (Eigen's Scalar(0)/Scalar(1) literals do not).
template <class K>
Mat<K> zeros(const Field& field, Index rows, Index cols) {
  return Mat<K>::Constant(rows, cols, make_scalar<K>(field, 0));
}

template <class K>
Mat<K> ident(const Field& field, Index n) {
  Mat<K> m = zeros<K>(field, n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = make_scalar<K>(field, 1);
  return m;
}

template <class K>
bool is_zero(const Mat<K>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != K(0)) return false;
  return true;
}

template <class K>
bool is_identity(const Mat<K>& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? K(1) : K(0))) return false;
  return true;
}

template <class K>
bool matrix_eq(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <class K>
struct RrefResult {
  Mat<K> reduced;
  std::vector<Index> pivot_cols;
  Index rank() const { return static_cast<Index>(pivot_cols.size()); }
};

// Reduced row echelon form with leftmost-pivot selection: scanning columns left to
// right, the first row with a nonzero entry becomes the pivot row. Deterministic,
// so every downstream basis is reproducible bit for bit.
template <class K>
RrefResult<K> rref(Mat<K> m) {
  RrefResult<K> out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = -1;
    for (Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != K(0)) { pivot = r; break; }
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    K inv = scalar_inverse(m(row, col));
    for (Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == K(0)) continue;
      K factor = m(r, col);
      for (Index j = col; j < m.cols(); ++j) m(r, j) = m(r, j) - factor * m(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class K>
Index rank_of(const Mat<K>& m) {
  return rref(m).rank();
}

// Canonical reduced-echelon kernel basis: one column per free column of m, carrying 1
// at its own free position. Invariant under row scaling of the input.
template <class K>
Mat<K> kernel_basis(const Mat<K>& m, const Field& field) {
  RrefResult<K> r = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (Index c : r.pivot_cols) is_pivot[static_cast<size_t>(c)] = 1;
  std::vector<Index> free_cols;
  for (Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
  Mat<K> basis = zeros<K>(field, m.cols(), static_cast<Index>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    Index fc = free_cols[k];
    basis(fc, static_cast<Index>(k)) = make_scalar<K>(field, 1);
    for (size_t i = 0; i < r.pivot_cols.size(); ++i)
      basis(r.pivot_cols[i], static_cast<Index>(k)) = -r.reduced(static_cast<Index>(i), fc);
  }
  return basis;
}

template <class K>
struct QuotientBasis {
  Mat<K> projection;  // ambient -> quotient
  Mat<K> section;     // quotient -> ambient, projection * section = identity
};

// Quotient of k^ambient_dim by the column span of `subspace`. Pivot columns of
// [subspace | I] pick the basis; standard vectors completing the span become the
// section, and the last rows of the inverse change of basis give the projection.
template <class K>
QuotientBasis<K> quotient_basis(Index ambient_dim, const Mat<K>& subspace, const Field& field) {
  if (subspace.rows() != ambient_dim)
    fail(ErrorCode::DimensionMismatch, "subspace rows != ambient dimension");
  Mat<K> aug = zeros<K>(field, ambient_dim, subspace.cols() + ambient_dim);
  aug.block(0, 0, ambient_dim, subspace.cols()) = subspace;
  aug.block(0, subspace.cols(), ambient_dim, ambient_dim) = ident<K>(field, ambient_dim);
  RrefResult<K> r = rref(aug);

  std::vector<Index> span_cols, complement_cols;
  for (Index c : r.pivot_cols) {
    if (c < subspace.cols()) span_cols.push_back(c);
    else complement_cols.push_back(c - subspace.cols());
  }
  Index rank = static_cast<Index>(span_cols.size());
  Index quot_dim = ambient_dim - rank;

  Mat<K> basis = zeros<K>(field, ambient_dim, ambient_dim);
  for (Index i = 0; i < rank; ++i) basis.col(i) = subspace.col(span_cols[static_cast<size_t>(i)]);
  for (Index i = 0; i < quot_dim; ++i)
    basis(complement_cols[static_cast<size_t>(i)], rank + i) = make_scalar<K>(field, 1);

  Mat<K> basis_inv = inverse(basis, field);
  QuotientBasis<K> out;
  out.projection = basis_inv.block(rank, 0, quot_dim, ambient_dim);
  out.section = basis.block(0, rank, ambient_dim, quot_dim);
  return out;
}

template <class K>
Mat<K> inverse(const Mat<K>& m, const Field& field) {
  if (m.rows() != m.cols()) fail(ErrorCode::NonInvertibleMatrix, "inverse of non-square matrix");
  Index n = m.rows();
  Mat<K> aug = zeros<K>(field, n, 2 * n);
  aug.block(0, 0, n, n) = m;
  aug.block(0, n, n, n) = ident<K>(field, n);
  RrefResult<K> r = rref(aug);
  if (r.rank() != n || (n > 0 && r.pivot_cols.back() >= n))
    fail(ErrorCode::NonInvertibleMatrix, "matrix is singular");
  return r.reduced.block(0, n, n, n);
}

template <class K>
bool is_invertible(const Mat<K>& m) {
  return m.rows() == m.cols() && rank_of(m) == m.rows();
}

// Plain triple loop with zero skipping. The canonical-basis matrices of this library
// are block permutations, mostly zero; Eigen's generic product cannot exploit that
// for a custom scalar, so composition goes through this.
template <class K>
Mat<K> mat_mul(const Mat<K>& a, const Mat<K>& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::DimensionMismatch, "product shape mismatch");
  Mat<K> out = Mat<K>::Constant(a.rows(), b.cols(), K(0));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      const K& av = a(i, k);
      if (av == K(0)) continue;
      for (Index j = 0; j < b.cols(); ++j) {
        const K& bv = b(k, j);
        if (bv == K(0)) continue;
        out(i, j) += av * bv;
      }
    }
  return out;
}

// Kronecker product in lexicographic basis order, a-index major.
template <class K>
Mat<K> kron(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index p = 0; p < b.rows(); ++p)
        for (Index q = 0; q < b.cols(); ++q)
          out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return out;
}

// Permutation matrix for the braiding k^d1 (x) k^d2 -> k^d2 (x) k^d1.
template <class K>
Mat<K> braid_matrix(const Field& field, Index d1, Index d2) {
  Mat<K> out = zeros<K>(field, d1 * d2, d1 * d2);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d2; ++j)
      out(j * d1 + i, i * d2 + j) = make_scalar<K>(field, 1);
  return out;
}

template <class K>
Mat<K> hstack(const std::vector<Mat<K>>& parts, const Field& field, Index rows) {
  Index cols = 0;
  for (const auto& p : parts) cols += p.cols();
  Mat<K> out = zeros<K>(field, rows, cols);
  Index at = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) fail(ErrorCode::DimensionMismatch, "hstack row mismatch");
    out.block(0, at, rows, p.cols()) = p;
    at += p.cols();
  }
  return out;
}

template <class K>
Mat<K> vstack(const std::vector<Mat<K>>& parts, const Field& field, Index cols) {
  Index rows = 0;
  for (const auto& p : parts) rows += p.rows();
  Mat<K> out = zeros<K>(field, rows, cols);
  Index at = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) fail(ErrorCode::DimensionMismatch, "vstack column mismatch");
    out.block(at, 0, p.rows(), cols) = p;
    at += p.rows();
  }
  return out;
}

// Coordinates of the columns of v in the column space of the reduced-echelon kernel
// basis `basis` (which is the identity on its free rows): select those rows, then
// check the section reproduces v exactly.
template <class K>
Mat<K> coordinates_in_kernel_basis(const Mat<K>& basis, const Mat<K>& v, const Field& field) {
  Index q = basis.cols();
  Mat<K> coords = zeros<K>(field, q, v.cols());
  std::vector<Index> unit_rows(static_cast<size_t>(q), -1);
  for (Index c = 0; c < q; ++c) {
    for (Index r = 0; r < basis.rows(); ++r) {
      if (basis(r, c) == K(0)) continue;
      bool unit_row = basis(r, c) == K(1);
      for (Index c2 = 0; unit_row && c2 < q; ++c2)
        if (c2 != c && basis(r, c2) != K(0)) unit_row = false;
      if (unit_row) { unit_rows[static_cast<size_t>(c)] = r; break; }
    }
    if (unit_rows[static_cast<size_t>(c)] < 0) fail(ErrorCode::DimensionMismatch, "basis is not in reduced kernel form");
    coords.row(c) = v.row(unit_rows[static_cast<size_t>(c)]);
  }
  Mat<K> check = basis * coords;
  if (!matrix_eq(check, v)) fail(ErrorCode::DimensionMismatch, "vector does not lie in the subspace");
  return coords;
}

}  // namespace gq

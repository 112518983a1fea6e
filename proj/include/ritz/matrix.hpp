// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ritz {

using Vector = std::vector<double>;

/// Dense real symmetric matrix with value semantics.
///
/// Symmetry is enforced by construction: `set(i, j, v)` writes both
/// triangles, and `from_rows` rejects asymmetric input. Entries must be
/// finite. Indices are 0-based.
class SymMatrix {
 public:
  explicit SymMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("SymMatrix: dim must be >= 1");
    entries_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  }

  /// Builds from a full square array; rejects asymmetric or non-finite input.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    SymMatrix a(n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n)
        throw std::invalid_argument("SymMatrix::from_rows: input is not square");
    }
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        if (rows[i][j] != rows[j][i])
          throw std::invalid_argument("SymMatrix::from_rows: input is not symmetric");
        a.set(i, j, rows[i][j]);
      }
    return a;
  }

  int dim() const noexcept { return dim_; }

  double operator()(int i, int j) const noexcept {
    assert(i >= 0 && i < dim_ && j >= 0 && j < dim_);
    return entries_[static_cast<std::size_t>(i) * dim_ + j];
  }

  /// Writes entry (i, j) and its mirror (j, i).
  void set(int i, int j, double value) {
    assert(i >= 0 && i < dim_ && j >= 0 && j < dim_);
    if (!std::isfinite(value))
      throw std::invalid_argument("SymMatrix: entries must be finite");
    entries_[static_cast<std::size_t>(i) * dim_ + j] = value;
    entries_[static_cast<std::size_t>(j) * dim_ + i] = value;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, std::fabs(v));
    return m;
  }

  /// Frobenius norm, evaluated in max-abs-scaled units so that matrices with
  /// entries near the overflow threshold still give a finite result.
  double frobenius_norm() const noexcept {
    const double s = max_abs();
    if (s == 0.0) return 0.0;
    double acc = 0.0;
    for (double v : entries_) {
      const double t = v / s;
      acc += t * t;
    }
    return s * std::sqrt(acc);
  }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) noexcept {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  int dim_;
  std::vector<double> entries_;  // row-major, both triangles kept in sync
};

inline double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm(const Vector& v) { return std::sqrt(dot(v, v)); }

inline Vector operator*(const SymMatrix& a, const Vector& v) {
  if (static_cast<std::size_t>(a.dim()) != v.size())
    throw std::invalid_argument("SymMatrix * Vector: size mismatch");
  Vector out(v.size(), 0.0);
  for (int i = 0; i < a.dim(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < a.dim(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

/// Rayleigh quotient v'Av / v'v.
inline double rayleigh_quotient(const SymMatrix& a, const Vector& v) {
  if (static_cast<std::size_t>(a.dim()) != v.size())
    throw std::invalid_argument("rayleigh_quotient: dimension mismatch");
  for (double x : v)
    if (!std::isfinite(x))
      throw std::invalid_argument("rayleigh_quotient: vector entries must be finite");
  const double vv = dot(v, v);
  if (vv == 0.0)
    throw std::invalid_argument("undefined Rayleigh quotient for the zero vector");
  return dot(v, a * v) / vv;
}

/// Matrix of the rank-`rank` orthogonal projector onto the span of the first
/// basis vectors: diag(1, ..., 1, 0, ..., 0). Hermitian and idempotent.
inline SymMatrix projector(int full_dim, int rank) {
  if (full_dim < 1) throw std::invalid_argument("projector: full_dim must be >= 1");
  if (rank < 1 || rank > full_dim)
    throw std::invalid_argument("projector: rank out of range [1, full_dim]");
  SymMatrix p(full_dim);
  for (int i = 0; i < rank; ++i) p.set(i, i, 1.0);
  return p;
}

/// Leading n-by-n principal submatrix: the projected operator restricted to
/// the span of the first n basis vectors.
inline SymMatrix project_leading(const SymMatrix& a, int n) {
  if (n < 1 || n > a.dim())
    throw std::invalid_argument("project_leading: n out of range [1, dim]");
  SymMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.set(i, j, a(i, j));
  return out;
}

}  // namespace ritz

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ritz/matrix.hpp"

namespace ritz {

/// Solved symmetric eigenproblem.
///
/// `values` are ascending (stable under ties); `vectors[j]` is the unit
/// eigenvector of `values[j]`, sign-fixed so that its largest-magnitude entry
/// is positive (ties broken by lowest index).
struct EigenDecomposition {
  std::vector<double> values;
  std::vector<Vector> vectors;
};

/// Thrown when the rotation sweeps fail to reach the convergence threshold.
class EigensolveError : public std::runtime_error {
 public:
  EigensolveError(const std::string& message, double off_diagonal_norm,
                  int truncation = 0)
      : std::runtime_error(message),
        off_diagonal_norm_(off_diagonal_norm),
        truncation_(truncation) {}

  /// Off-diagonal Frobenius norm reached when the sweep cap was hit.
  double off_diagonal_norm() const noexcept { return off_diagonal_norm_; }

  /// Basis-truncation size the failure occurred at, 0 when not applicable.
  int truncation() const noexcept { return truncation_; }

 private:
  double off_diagonal_norm_;
  int truncation_;
};

namespace detail {

// Off-diagonal Frobenius norm in units of `scale`.
inline double off_norm_scaled(const std::vector<double>& m, int n, double scale) {
  double acc = 0.0;
  for (int p = 0; p < n - 1; ++p)
    for (int q = p + 1; q < n; ++q) {
      const double t = m[static_cast<std::size_t>(p) * n + q] / scale;
      acc += 2.0 * t * t;
    }
  return std::sqrt(acc);
}

}  // namespace detail

/// Full eigendecomposition by the cyclic-by-row Jacobi rotation method.
///
/// Sweep order is p = 1..n-1, q = p+1..n; a rotation is applied whenever
/// |a_pq| > 1e-300. Convergence: off-diagonal Frobenius norm <= 1e-14 times
/// the Frobenius norm of the input. Throws EigensolveError after 100 sweeps
/// without convergence, carrying the off-diagonal norm reached.
inline EigenDecomposition eigensolve(const SymMatrix& a) {
  constexpr int kMaxSweeps = 100;
  constexpr double kRotationGate = 1e-300;
  constexpr double kRelTol = 1e-14;

  const int n = a.dim();
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = a(i, j);
  std::vector<double> vecs(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) vecs[static_cast<std::size_t>(i) * n + i] = 1.0;

  // All norms are evaluated in max-abs-scaled units so the threshold stays
  // meaningful for matrices whose Frobenius norm would overflow.
  const double scale = a.max_abs();
  const double fro_scaled = (scale == 0.0) ? 0.0 : [&] {
    double acc = 0.0;
    for (double v : m) {
      const double t = v / scale;
      acc += t * t;
    }
    return std::sqrt(acc);
  }();

  auto entry = [&](int i, int j) -> double& {
    return m[static_cast<std::size_t>(i) * n + j];
  };

  bool converged = false;
  double off_scaled = 0.0;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    off_scaled = (scale == 0.0) ? 0.0 : detail::off_norm_scaled(m, n, scale);
    if (off_scaled <= kRelTol * fro_scaled) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = entry(p, q);
        if (std::fabs(apq) <= kRotationGate) continue;
        const double tau = (entry(q, q) - entry(p, p)) / (2.0 * apq);
        if (!std::isfinite(tau)) continue;  // overflow: no reliable rotation
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const double app = entry(p, p);
        const double aqq = entry(q, q);
        entry(p, p) = app - t * apq;
        entry(q, q) = aqq + t * apq;
        entry(p, q) = 0.0;
        entry(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = entry(i, p);
          const double aiq = entry(i, q);
          entry(i, p) = c * aip - s * aiq;
          entry(p, i) = entry(i, p);
          entry(i, q) = s * aip + c * aiq;
          entry(q, i) = entry(i, q);
        }
        for (int i = 0; i < n; ++i) {
          const std::size_t ip = static_cast<std::size_t>(i) * n + p;
          const std::size_t iq = static_cast<std::size_t>(i) * n + q;
          const double vip = vecs[ip];
          const double viq = vecs[iq];
          vecs[ip] = c * vip - s * viq;
          vecs[iq] = s * vip + c * viq;
        }
      }
    }
  }
  if (!converged) {
    throw EigensolveError("eigensolver did not converge within the sweep cap",
                          off_scaled * scale);
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return entry(lhs, lhs) < entry(rhs, rhs);
  });

  EigenDecomposition out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (int k = 0; k < n; ++k) {
    const int col = order[k];
    out.values.push_back(entry(col, col));
    Vector v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = vecs[static_cast<std::size_t>(i) * n + col];
    int arg = 0;
    for (int i = 1; i < n; ++i)
      if (std::fabs(v[i]) > std::fabs(v[arg])) arg = i;
    if (v[arg] < 0.0)
      for (double& x : v) x = -x;
    out.vectors.push_back(std::move(v));
  }
  return out;
}

/// Smallest absolute eigenvalue of (A - eI): a robust proxy for the secular
/// determinant |A - eI| vanishing at e.
inline double secular_residual(const SymMatrix& a, double e) {
  if (!std::isfinite(e))
    throw std::invalid_argument("secular_residual: shift must be finite");
  SymMatrix shifted = a;
  for (int i = 0; i < a.dim(); ++i) shifted.set(i, i, a(i, i) - e);
  const EigenDecomposition decomp = eigensolve(shifted);
  double best = std::numeric_limits<double>::infinity();
  for (double v : decomp.values) best = std::min(best, std::fabs(v));
  return best;
}

}  // namespace ritz

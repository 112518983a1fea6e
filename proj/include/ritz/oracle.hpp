// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ritz/engine.hpp"

namespace ritz {

/// Central-difference discretization of the tilted box on a uniform interior
/// grid: -(1/2) d^2/dz^2 + lambda z on (0, 1) with Dirichlet ends.
struct FdSpec {
  double lambda = 1.0;
  int grid_points = 2000;  // interior points M; h = 1/(M+1)
  int levels = 4;

  void validate() const {
    if (!std::isfinite(lambda))
      throw std::invalid_argument("FdSpec: lambda must be finite");
    if (grid_points < 16)
      throw std::invalid_argument("FdSpec: grid_points must be >= 16");
    if (levels < 1 || levels > std::min(grid_points, 16))
      throw std::invalid_argument("FdSpec: levels must be in [1, min(M, 16)]");
  }
};

/// Grid-limit eigenvalue estimates with per-level absolute error bars.
struct OracleEstimate {
  std::vector<double> values;
  std::vector<double> error_bar;
};

namespace detail {

// Number of eigenvalues of the symmetric tridiagonal (d, e) strictly below x,
// by the Sturm sequence of the shifted LDL^T pivots.
inline int sturm_count_below(const std::vector<double>& diag,
                             const std::vector<double>& off, double x,
                             double pivmin) {
  int count = 0;
  double q = diag[0] - x;
  if (std::fabs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    q = diag[i] - x - off[i - 1] * off[i - 1] / q;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// j-th smallest eigenvalue (1-based) by bisection on the Sturm count.
inline double tridiag_eigenvalue(const std::vector<double>& diag,
                                 const std::vector<double>& off, int j,
                                 double lo, double hi, double pivmin) {
  for (int iter = 0; iter < 200; ++iter) {
    const double width = hi - lo;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() *
                     std::max(std::fabs(lo), std::fabs(hi)))
      break;
    const double mid = lo + 0.5 * width;
    if (mid <= lo || mid >= hi) break;
    if (sturm_count_below(diag, off, mid, pivmin) >= j)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Lowest `spec.levels` eigenvalues of the discretized operator, ascending.
/// Solved by Sturm-sequence bisection, sharing nothing with the Jacobi path.
inline std::vector<double> fd_eigenvalues(const FdSpec& spec) {
  spec.validate();
  const int m = spec.grid_points;
  const double h = 1.0 / (m + 1);
  const double kinetic = 1.0 / (h * h);
  std::vector<double> diag(static_cast<std::size_t>(m));
  std::vector<double> off(static_cast<std::size_t>(m - 1), -0.5 / (h * h));
  for (int i = 1; i <= m; ++i)
    diag[static_cast<std::size_t>(i - 1)] = kinetic + spec.lambda * (i * h);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double max_off2 = 0.0;
  for (int i = 0; i < m; ++i) {
    const double left = (i > 0) ? std::fabs(off[i - 1]) : 0.0;
    const double right = (i + 1 < m) ? std::fabs(off[i]) : 0.0;
    lo = std::min(lo, diag[i] - left - right);
    hi = std::max(hi, diag[i] + left + right);
  }
  for (double e : off) max_off2 = std::max(max_off2, e * e);
  const double pivmin =
      std::numeric_limits<double>::min() * std::max(1.0, max_off2);
  lo -= 1.0;
  hi += 1.0;

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(spec.levels));
  for (int j = 1; j <= spec.levels; ++j)
    out.push_back(detail::tridiag_eigenvalue(diag, off, j, lo, hi, pivmin));
  return out;
}

/// Richardson step eliminating the O(h^2) error: combines eigenvalues from a
/// coarse grid and a grid of twice the interior resolution into
/// (4 fine - coarse) / 3, with error bar |fine - extrapolated|.
inline OracleEstimate richardson(const std::vector<double>& coarse,
                                 const std::vector<double>& fine) {
  if (coarse.size() != fine.size())
    throw std::invalid_argument("richardson: level-count mismatch");
  if (coarse.empty()) throw std::invalid_argument("richardson: empty input");
  OracleEstimate est;
  est.values.reserve(coarse.size());
  est.error_bar.reserve(coarse.size());
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const double v = (4.0 * fine[k] - coarse[k]) / 3.0;
    est.values.push_back(v);
    est.error_bar.push_back(std::fabs(fine[k] - v));
  }
  for (std::size_t k = 1; k < est.values.size(); ++k)
    if (est.values[k] < est.values[k - 1])
      throw std::runtime_error("richardson: extrapolated values not ascending");
  return est;
}

/// Checks the lower-bound half of the bound chain: every tabulated E_K^(N)
/// must sit above the oracle band, E_K^(N) >= values[K] - error_bar[K] - slack.
inline BoundReport cross_validate(const RitzSequence& seq,
                                  const OracleEstimate& est, double slack) {
  if (!(slack >= 0.0))
    throw std::invalid_argument("cross_validate: slack must be >= 0");
  std::size_t needed = 0;
  for (const auto& row : seq.values) needed = std::max(needed, row.size());
  if (est.values.size() < needed || est.error_bar.size() < needed)
    throw std::invalid_argument(
        "cross_validate: oracle estimate covers fewer levels than the sequence");

  BoundReport report;
  report.worst_slack = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < seq.n_values.size(); ++t)
    for (std::size_t k = 0; k < seq.values[t].size(); ++k)
      detail::check(report, BoundKind::lower_bound, static_cast<int>(k + 1),
                    seq.n_values[t], est.values[k] - est.error_bar[k],
                    seq.values[t][k], slack);
  return report;
}

}  // namespace ritz

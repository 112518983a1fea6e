// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ritz/jacobi.hpp"
#include "ritz/matrix.hpp"
#include "ritz/models.hpp"

namespace ritz {

/// Truncation schedule for the nested solves.
struct ConvergencePolicy {
  double tol = 5e-10;  // successive-difference threshold for converged_levels
  int n_max = 14;
  int n_step = 2;

  void validate() const {
    if (!(tol > 0.0) || !std::isfinite(tol))
      throw std::invalid_argument("ConvergencePolicy: tol must be > 0");
    if (n_max < 2) throw std::invalid_argument("ConvergencePolicy: n_max must be >= 2");
    if (n_step < 1) throw std::invalid_argument("ConvergencePolicy: n_step must be >= 1");
  }
};

/// Variational eigenvalue table E_K^(N) over a nested family of truncations,
/// with the eigenvector coefficients of each solve.
///
/// `values[t][k]` is the (k+1)-th lowest eigenvalue at truncation
/// `n_values[t]`; `coefficients[t][k]` is its unit coefficient column in the
/// model basis. Per truncation, the lowest min(levels, N) pairs are kept.
struct RitzSequence {
  std::shared_ptr<const OperatorModel> model;
  int levels = 0;
  std::vector<int> n_values;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<Vector>> coefficients;

  int index_of(int n) const {
    for (std::size_t t = 0; t < n_values.size(); ++t)
      if (n_values[t] == n) return static_cast<int>(t);
    throw std::invalid_argument("RitzSequence: truncation " + std::to_string(n) +
                                " is not in the sequence");
  }
};

enum class BoundKind { monotonicity, interlacing, lower_bound };

inline const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::monotonicity: return "monotonicity";
    case BoundKind::interlacing: return "interlacing";
    case BoundKind::lower_bound: return "lower_bound";
  }
  return "unknown";
}

/// One failed comparison `lhs <= rhs + slack`. `slack` records the
/// exceedance lhs - rhs; `level` is the 1-based eigenvalue index K and `n`
/// the truncation whose pair failed.
struct BoundViolation {
  BoundKind kind;
  int level;
  int n;
  double lhs;
  double rhs;
  double slack;
};

/// Outcome of a bound-hierarchy verification. `worst_slack` is the largest
/// lhs - rhs margin seen over all comparisons, violating or not.
struct BoundReport {
  bool monotonicity_ok = true;
  bool interlacing_ok = true;
  std::vector<BoundViolation> violations;
  double worst_slack = 0.0;

  bool all_ok() const noexcept { return violations.empty(); }
};

inline BoundReport merge_reports(BoundReport a, const BoundReport& b) {
  a.monotonicity_ok = a.monotonicity_ok && b.monotonicity_ok;
  a.interlacing_ok = a.interlacing_ok && b.interlacing_ok;
  a.worst_slack = std::max(a.worst_slack, b.worst_slack);
  a.violations.insert(a.violations.end(), b.violations.begin(), b.violations.end());
  return a;
}

/// Assembles and solves the projected operator at every truncation
/// N in {2, 2 + step, ...} up to n_max, recording the lowest
/// min(levels, N) eigenpairs per truncation.
inline RitzSequence run(std::shared_ptr<const OperatorModel> model,
                        const ConvergencePolicy& policy, int levels) {
  if (!model) throw std::invalid_argument("run: model must not be null");
  policy.validate();
  if (levels < 1) throw std::invalid_argument("run: levels must be >= 1");

  RitzSequence seq;
  seq.model = model;
  seq.levels = levels;
  for (int n = 2; n <= policy.n_max; n += policy.n_step) {
    const SymMatrix h = assemble(*model, n);
    EigenDecomposition decomp;
    try {
      decomp = eigensolve(h);
    } catch (const EigensolveError& e) {
      throw EigensolveError(std::string(e.what()) + " at truncation N=" +
                                std::to_string(n),
                            e.off_diagonal_norm(), n);
    }
    const int kept = std::min(levels, n);
    seq.n_values.push_back(n);
    seq.values.emplace_back(decomp.values.begin(), decomp.values.begin() + kept);
    std::vector<Vector> cols(decomp.vectors.begin(), decomp.vectors.begin() + kept);
    seq.coefficients.push_back(std::move(cols));
  }
  return seq;
}

namespace detail {

inline void require_verifiable(const RitzSequence& seq, double slack) {
  if (seq.n_values.size() < 2)
    throw std::invalid_argument("bound verification needs at least two truncations");
  if (!(slack >= 0.0))
    throw std::invalid_argument("bound verification: slack must be >= 0");
}

inline void check(BoundReport& report, BoundKind kind, int level, int n,
                  double lhs, double rhs, double slack) {
  const double margin = lhs - rhs;
  report.worst_slack = std::max(report.worst_slack, margin);
  if (margin > slack) {
    report.violations.push_back({kind, level, n, lhs, rhs, margin});
    if (kind == BoundKind::monotonicity) report.monotonicity_ok = false;
    if (kind == BoundKind::interlacing) report.interlacing_ok = false;
  }
}

}  // namespace detail

/// Checks the monotone upper-bound property E_K^(N) <= E_K^(N') + slack for
/// every consecutive truncation pair N' < N and shared level K.
inline BoundReport verify_monotonicity(const RitzSequence& seq, double slack) {
  detail::require_verifiable(seq, slack);
  BoundReport report;
  report.worst_slack = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t < seq.n_values.size(); ++t) {
    const auto& prev = seq.values[t - 1];
    const auto& cur = seq.values[t];
    const std::size_t shared = std::min(prev.size(), cur.size());
    for (std::size_t k = 0; k < shared; ++k)
      detail::check(report, BoundKind::monotonicity, static_cast<int>(k + 1),
                    seq.n_values[t], cur[k], prev[k], slack);
  }
  return report;
}

/// Checks Cauchy interlacing across consecutive truncations. For stride-1
/// pairs both families are checked:
///   E_K^(N) <= E_K^(N-1) + slack   and   E_K^(N-1) <= E_{K+1}^(N) + slack.
/// For larger strides only the transitive chain E_K^(N) <= E_K^(N-s) applies.
inline BoundReport verify_interlacing(const RitzSequence& seq, double slack) {
  detail::require_verifiable(seq, slack);
  BoundReport report;
  report.worst_slack = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t < seq.n_values.size(); ++t) {
    const auto& prev = seq.values[t - 1];
    const auto& cur = seq.values[t];
    const int stride = seq.n_values[t] - seq.n_values[t - 1];
    const std::size_t shared = std::min(prev.size(), cur.size());
    for (std::size_t k = 0; k < shared; ++k) {
      detail::check(report, BoundKind::interlacing, static_cast<int>(k + 1),
                    seq.n_values[t], cur[k], prev[k], slack);
      if (stride == 1 && k + 1 < cur.size())
        detail::check(report, BoundKind::interlacing, static_cast<int>(k + 1),
                      seq.n_values[t], prev[k], cur[k + 1], slack);
    }
  }
  return report;
}

struct ConvergedLevel {
  int level;     // K, 1-based
  int n;         // first truncation where the successive difference <= tol
  double value;  // eigenvalue at that truncation
};

/// First truncation at which each level's successive difference drops to
/// `tol`; levels that never converge within the sequence are omitted.
/// tol = 0 demands bit-identical consecutive values.
inline std::vector<ConvergedLevel> converged_levels(const RitzSequence& seq,
                                                    double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol))
    throw std::invalid_argument("converged_levels: tol must be >= 0");
  std::vector<ConvergedLevel> out;
  for (int level = 1; level <= seq.levels; ++level) {
    for (std::size_t t = 1; t < seq.n_values.size(); ++t) {
      const std::size_t k = static_cast<std::size_t>(level - 1);
      if (k >= seq.values[t - 1].size() || k >= seq.values[t].size()) continue;
      if (std::fabs(seq.values[t][k] - seq.values[t - 1][k]) <= tol) {
        out.push_back({level, seq.n_values[t], seq.values[t][k]});
        break;
      }
    }
  }
  return out;
}

/// Coefficient column of the j-th Ritz vector at truncation n (unit norm,
/// sign-fixed). j is 1-based.
inline Vector ritz_vector(const RitzSequence& seq, int n, int j) {
  const int t = seq.index_of(n);
  const auto& cols = seq.coefficients[static_cast<std::size_t>(t)];
  if (j < 1 || static_cast<std::size_t>(j) > cols.size())
    throw std::invalid_argument("ritz_vector: level out of range");
  return cols[static_cast<std::size_t>(j - 1)];
}

/// Minimum Rayleigh quotient over random trial vectors drawn from the span of
/// the first k Ritz vectors at truncation n, each orthogonalized against the
/// first k-1 of them. The surviving direction is the k-th Ritz vector, so the
/// result reproduces E_k^(n) up to roundoff.
inline double constrained_quotient_bound(const RitzSequence& seq, int n, int k,
                                         int trials, std::uint64_t seed = 0) {
  const int t = seq.index_of(n);
  const auto& cols = seq.coefficients[static_cast<std::size_t>(t)];
  if (k < 1 || static_cast<std::size_t>(k) > cols.size())
    throw std::invalid_argument("constrained_quotient_bound: k out of range");
  if (trials < 1)
    throw std::invalid_argument("constrained_quotient_bound: trials must be >= 1");
  if (!seq.model)
    throw std::invalid_argument("constrained_quotient_bound: sequence has no model");

  const SymMatrix h = assemble(*seq.model, n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);

  double best = std::numeric_limits<double>::infinity();
  int failures = 0;
  for (int trial = 0; trial < trials; ++trial) {
    Vector v;
    while (true) {
      v.assign(static_cast<std::size_t>(n), 0.0);
      for (int j = 0; j < k; ++j) {
        const double a = coeff(rng);
        for (int i = 0; i < n; ++i) v[i] += a * cols[j][i];
      }
      const double before = norm(v);
      // two Gram-Schmidt passes against the first k-1 Ritz vectors
      for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j + 1 < k; ++j) {
          const double overlap = dot(v, cols[j]);
          for (int i = 0; i < n; ++i) v[i] -= overlap * cols[j][i];
        }
      if (before > 0.0 && norm(v) > 1e-12 * before) break;
      if (++failures >= 100)
        throw std::runtime_error(
            "constrained_quotient_bound: degenerate trial span after 100 retries");
    }
    best = std::min(best, rayleigh_quotient(h, v));
  }
  return best;
}

}  // namespace ritz

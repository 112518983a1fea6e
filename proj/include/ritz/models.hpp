// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "ritz/matrix.hpp"

namespace ritz {

/// A Hermitian operator presented through its matrix elements in an
/// orthonormal basis. Indices are 1-based throughout this interface.
class OperatorModel {
 public:
  virtual ~OperatorModel() = default;

  virtual std::string name() const = 0;
  virtual std::string description() const = 0;

  /// Matrix element <i|H|j>, 1-based, symmetric in (i, j).
  virtual double element(int i, int j) const = 0;

  /// Closed-form eigenvalue of the full operator, when one is known.
  virtual std::optional<double> exact_eigenvalue(int /*level*/) const {
    return std::nullopt;
  }

  /// Dimensionless field strength, for models parameterized by one.
  virtual std::optional<double> field_strength() const { return std::nullopt; }
};

/// Exact eigenvalue pi^2 n^2 / 2 of the unit box without a field.
inline double free_box_exact(int n) {
  if (n < 1) throw std::invalid_argument("free_box_exact: n must be >= 1");
  const double pi = std::numbers::pi;
  return pi * pi * static_cast<double>(n) * static_cast<double>(n) / 2.0;
}

/// Particle in a unit box tilted by a linear potential of dimensionless
/// strength lambda, expressed in the sine basis sqrt(2) sin(j pi z).
///
/// Elements are analytic:
///   H_ii = pi^2 i^2 / 2 + lambda / 2
///   H_ij = 4 i j [(-1)^(i+j) - 1] lambda / (pi^2 (i^2 - j^2)^2),  i != j
/// so entries with even i + j vanish identically.
class TiltedBoxModel final : public OperatorModel {
 public:
  explicit TiltedBoxModel(double lambda) : lambda_(lambda) {
    if (!std::isfinite(lambda))
      throw std::invalid_argument("TiltedBoxModel: lambda must be finite");
  }

  double lambda() const noexcept { return lambda_; }

  std::string name() const override { return "tilted-box"; }
  std::string description() const override {
    return "infinite square well with a linear potential, sine basis";
  }

  double element(int i, int j) const override {
    if (i < 1 || j < 1)
      throw std::invalid_argument("TiltedBoxModel::element: indices are 1-based");
    const double pi = std::numbers::pi;
    if (i == j) {
      const double di = static_cast<double>(i);
      return pi * pi * di * di / 2.0 + lambda_ / 2.0;
    }
    if ((i + j) % 2 == 0) return 0.0;
    const double di = static_cast<double>(i);
    const double dj = static_cast<double>(j);
    const double gap = di * di - dj * dj;
    return -8.0 * di * dj * lambda_ / (pi * pi * gap * gap);
  }

  std::optional<double> exact_eigenvalue(int level) const override {
    if (lambda_ == 0.0) return free_box_exact(level);
    return std::nullopt;
  }

  std::optional<double> field_strength() const override { return lambda_; }

 private:
  double lambda_;
};

/// The field-free box: the basis already diagonalizes the operator.
class FreeBoxModel final : public OperatorModel {
 public:
  std::string name() const override { return "free-box"; }
  std::string description() const override {
    return "infinite square well, sine basis (exactly diagonal)";
  }

  double element(int i, int j) const override {
    if (i < 1 || j < 1)
      throw std::invalid_argument("FreeBoxModel::element: indices are 1-based");
    return (i == j) ? free_box_exact(i) : 0.0;
  }

  std::optional<double> exact_eigenvalue(int level) const override {
    return free_box_exact(level);
  }

  std::optional<double> field_strength() const override { return 0.0; }
};

/// Dimensionful parameters of the tilted box.
struct PhysicalParams {
  double mass = 1.0;    // effective mass m*
  double charge = 1.0;  // |e|
  double field = 1.0;   // electric field F
  double length = 1.0;  // well width L
  double hbar = 1.0;

  void validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(mass) || !positive(charge) || !positive(field) ||
        !positive(length) || !positive(hbar))
      throw std::invalid_argument(
          "PhysicalParams: all parameters must be finite and > 0");
  }
};

/// lambda = m* |e| F L^3 / hbar^2.
inline double lambda_from_physical(const PhysicalParams& p) {
  p.validate();
  return p.mass * p.charge * p.field * p.length * p.length * p.length /
         (p.hbar * p.hbar);
}

/// Recovers the dimensionful energy E = hbar^2 E~ / (m* L^2).
inline double physical_energy(double e_tilde, const PhysicalParams& p) {
  p.validate();
  if (!std::isfinite(e_tilde))
    throw std::invalid_argument("physical_energy: e_tilde must be finite");
  return p.hbar * p.hbar * e_tilde / (p.mass * p.length * p.length);
}

/// n-by-n matrix of the model in its basis, exactly symmetric: only i <= j is
/// evaluated and mirrored.
inline SymMatrix assemble(const OperatorModel& model, int n) {
  if (n < 1) throw std::invalid_argument("assemble: n must be >= 1");
  SymMatrix a(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) a.set(i - 1, j - 1, model.element(i, j));
  return a;
}

}  // namespace ritz

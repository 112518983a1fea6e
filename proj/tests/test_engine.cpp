// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "ritz/engine.hpp"
#include "ritz/matrix_model.hpp"
#include "ritz/models.hpp"

using Catch::Matchers::WithinAbs;
using ritz::BoundKind;
using ritz::BoundReport;
using ritz::ConvergencePolicy;
using ritz::RitzSequence;
using ritz::SymMatrix;
using ritz::Vector;

namespace {

// Lowest four eigenvalues per truncation for lambda = 1, frozen from a
// 50-digit eigensolve of the assembled matrices.
struct GoldenRow {
  int n;
  std::vector<double> values;
};
const std::vector<GoldenRow> kGolden = {
    {2, {5.4326109089475, 20.241400093776}},
    {4, {5.4326079576558, 20.239866466764, 44.913612862868, 79.457978729053}},
    {6, {5.4326078657531, 20.239863205632, 44.913609843197, 79.457076844967}},
    {8, {5.4326078571382, 20.239863064204, 44.913609690756, 79.457074177421}},
    {10, {5.4326078557349, 20.239863048267, 44.913609671551, 79.457074028702}},
    {12, {5.4326078554137, 20.239863045328, 44.913609667703, 79.457074008505}},
};

RitzSequence golden_run(int n_max = 12, int levels = 4) {
  return ritz::run(std::make_shared<ritz::TiltedBoxModel>(1.0),
                   {5e-10, n_max, 2}, levels);
}

std::shared_ptr<ritz::MatrixModel> wrap(const SymMatrix& a) {
  return std::make_shared<ritz::MatrixModel>(a);
}

SymMatrix random_symmetric(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymMatrix a(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) a.set(i, j, u(rng));
  return a;
}

}  // namespace

TEST_CASE("run reproduces the lambda=1 convergence table") {
  const RitzSequence seq = golden_run();
  REQUIRE(seq.n_values == std::vector<int>{2, 4, 6, 8, 10, 12});
  for (std::size_t t = 0; t < kGolden.size(); ++t) {
    REQUIRE(seq.values[t].size() == kGolden[t].values.size());
    for (std::size_t k = 0; k < kGolden[t].values.size(); ++k)
      CHECK_THAT(seq.values[t][k], WithinAbs(kGolden[t].values[k], 1e-10));
  }
}

TEST_CASE("run on the free box returns the exact spectrum at every N") {
  const RitzSequence seq = ritz::run(std::make_shared<ritz::FreeBoxModel>(),
                                     {1e-9, 7, 1}, 3);
  REQUIRE(seq.n_values == std::vector<int>{2, 3, 4, 5, 6, 7});
  for (std::size_t t = 0; t < seq.n_values.size(); ++t) {
    REQUIRE(static_cast<int>(seq.values[t].size()) ==
            std::min(3, seq.n_values[t]));
    for (std::size_t k = 0; k < seq.values[t].size(); ++k)
      CHECK(seq.values[t][k] ==
            ritz::free_box_exact(static_cast<int>(k) + 1));
  }
}

TEST_CASE("run validates its inputs") {
  auto model = std::make_shared<ritz::TiltedBoxModel>(1.0);
  CHECK_THROWS_AS(ritz::run(model, {5e-10, 14, 2}, 0), std::invalid_argument);
  CHECK_THROWS_AS(ritz::run(model, {5e-10, 1, 2}, 4), std::invalid_argument);
  CHECK_THROWS_AS(ritz::run(model, {5e-10, 14, 0}, 4), std::invalid_argument);
  CHECK_THROWS_AS(ritz::run(model, {0.0, 14, 2}, 4), std::invalid_argument);
  CHECK_THROWS_AS(ritz::run(nullptr, {5e-10, 14, 2}, 4), std::invalid_argument);
}

TEST_CASE("run attaches the truncation size to eigensolver failures") {
  SymMatrix stuck(2);
  stuck.set(0, 0, 1e308);
  stuck.set(0, 1, 1e308);
  stuck.set(1, 1, -1e308);
  try {
    ritz::run(wrap(stuck), {5e-10, 2, 1}, 2);
    FAIL("expected EigensolveError");
  } catch (const ritz::EigensolveError& e) {
    CHECK(e.truncation() == 2);
    CHECK(std::string(e.what()).find("N=2") != std::string::npos);
  }
}

TEST_CASE("verify_monotonicity accepts the golden sequence") {
  const BoundReport report = ritz::verify_monotonicity(golden_run(), 1e-10);
  CHECK(report.monotonicity_ok);
  CHECK(report.violations.empty());
  CHECK(report.worst_slack < 0.0);  // the table strictly decreases
}

TEST_CASE("verify_monotonicity of the free box has zero worst slack") {
  const RitzSequence seq = ritz::run(std::make_shared<ritz::FreeBoxModel>(),
                                     {1e-9, 10, 2}, 3);
  const BoundReport report = ritz::verify_monotonicity(seq, 1e-10);
  CHECK(report.monotonicity_ok);
  CHECK(report.worst_slack == 0.0);
}

TEST_CASE("verify_monotonicity flags a perturbed level") {
  RitzSequence seq = golden_run();
  seq.values[2][0] += 1e-3;  // raise E_1 at N=6
  const BoundReport report = ritz::verify_monotonicity(seq, 1e-10);
  CHECK_FALSE(report.monotonicity_ok);
  REQUIRE(report.violations.size() == 1);
  const ritz::BoundViolation& v = report.violations[0];
  CHECK(v.kind == BoundKind::monotonicity);
  CHECK(v.level == 1);
  CHECK(v.n == 6);
  CHECK(v.lhs > v.rhs);
  CHECK_THAT(v.slack, WithinAbs(1e-3, 1e-5));
}

TEST_CASE("verify_* preconditions") {
  const RitzSequence seq = golden_run();
  CHECK_THROWS_AS(ritz::verify_monotonicity(seq, -1.0), std::invalid_argument);
  RitzSequence single = seq;
  single.n_values.resize(1);
  single.values.resize(1);
  single.coefficients.resize(1);
  CHECK_THROWS_AS(ritz::verify_monotonicity(single, 1e-10),
                  std::invalid_argument);
  CHECK_THROWS_AS(ritz::verify_interlacing(single, 1e-10),
                  std::invalid_argument);
}

TEST_CASE("interlacing holds for the tilted box at stride 1") {
  const RitzSequence seq = ritz::run(std::make_shared<ritz::TiltedBoxModel>(1.0),
                                     {5e-10, 6, 1}, 6);
  const BoundReport report = ritz::verify_interlacing(seq, 1e-10);
  CHECK(report.interlacing_ok);

  // Brute force: eigensolve each leading submatrix and compare directly.
  const SymMatrix h6 = ritz::assemble(ritz::TiltedBoxModel(1.0), 6);
  std::vector<std::vector<double>> spectra;
  for (int n = 2; n <= 6; ++n)
    spectra.push_back(ritz::eigensolve(ritz::project_leading(h6, n)).values);
  for (std::size_t t = 1; t < spectra.size(); ++t) {
    const auto& prev = spectra[t - 1];
    const auto& cur = spectra[t];
    for (std::size_t k = 0; k < prev.size(); ++k) {
      CHECK(cur[k] <= prev[k] + 1e-10);
      CHECK(prev[k] <= cur[k + 1] + 1e-10);
    }
  }
}

TEST_CASE("interlacing is exact for nested diagonal matrices") {
  SymMatrix d(3);
  d.set(0, 0, 1.0);
  d.set(1, 1, 2.0);
  d.set(2, 2, 3.0);
  const RitzSequence seq = ritz::run(wrap(d), {1e-9, 3, 1}, 3);
  const BoundReport report = ritz::verify_interlacing(seq, 0.0);
  CHECK(report.interlacing_ok);
  CHECK(report.worst_slack == 0.0);
}

TEST_CASE("interlacing property over random symmetric matrices") {
  std::mt19937_64 rng(0);
  for (int seed = 0; seed < 100; ++seed) {
    const SymMatrix a = random_symmetric(rng, 8);
    const RitzSequence seq = ritz::run(wrap(a), {1e-9, 8, 1}, 8);
    const BoundReport inter = ritz::verify_interlacing(seq, 1e-10);
    const BoundReport mono = ritz::verify_monotonicity(seq, 1e-10);
    CHECK(inter.interlacing_ok);
    CHECK(mono.monotonicity_ok);
  }
}

TEST_CASE("interlacing at stride 2 checks the transitive chain") {
  RitzSequence seq = golden_run();
  const BoundReport report = ritz::verify_interlacing(seq, 1e-10);
  CHECK(report.interlacing_ok);
  seq.values[3][1] += 1.0;  // break E_2 at N=8
  const BoundReport broken = ritz::verify_interlacing(seq, 1e-10);
  CHECK_FALSE(broken.interlacing_ok);
}

TEST_CASE("monotone bound holds across field strengths") {
  for (double lambda : {0.0, 1.0, -1.0, 5.0, -5.0, 10.0, -10.0}) {
    const RitzSequence seq = ritz::run(
        std::make_shared<ritz::TiltedBoxModel>(lambda), {5e-10, 12, 1}, 12);
    CHECK(ritz::verify_monotonicity(seq, 1e-10).monotonicity_ok);
  }
}

TEST_CASE("converged_levels finds the settling truncations") {
  const RitzSequence seq = golden_run();
  const auto converged = ritz::converged_levels(seq, 5e-10);
  REQUIRE_FALSE(converged.empty());
  CHECK(converged[0].level == 1);
  CHECK(converged[0].n == 12);
  CHECK_THAT(converged[0].value, WithinAbs(5.432607855, 5e-9));
}

TEST_CASE("converged_levels on the free box settles at the second appearance") {
  const RitzSequence seq = ritz::run(std::make_shared<ritz::FreeBoxModel>(),
                                     {1e-9, 6, 1}, 3);
  const auto converged = ritz::converged_levels(seq, 1e-12);
  REQUIRE(converged.size() == 3);
  CHECK(converged[0].level == 1);
  CHECK(converged[0].n == 3);
  CHECK(converged[1].n == 3);
  CHECK(converged[2].n == 4);  // level 3 first appears at N=3
}

TEST_CASE("converged_levels at tol=0 needs bit-identical values") {
  const auto strict = ritz::converged_levels(golden_run(), 0.0);
  CHECK(strict.empty());  // the table strictly decreases at every step
  const RitzSequence free_seq = ritz::run(std::make_shared<ritz::FreeBoxModel>(),
                                          {1e-9, 6, 1}, 2);
  CHECK(ritz::converged_levels(free_seq, 0.0).size() == 2);
  CHECK_THROWS_AS(ritz::converged_levels(free_seq, -1e-3), std::invalid_argument);
}

TEST_CASE("ritz_vector returns unit sign-fixed coefficient columns") {
  const RitzSequence free_seq = ritz::run(std::make_shared<ritz::FreeBoxModel>(),
                                          {1e-9, 5, 1}, 5);
  const Vector v = ritz::ritz_vector(free_seq, 4, 2);
  CHECK(v == Vector{0.0, 1.0, 0.0, 0.0});

  const RitzSequence seq = golden_run();
  const Vector ground = ritz::ritz_vector(seq, 2, 1);
  CHECK_THAT(ritz::norm(ground), WithinAbs(1.0, 1e-13));
  const SymMatrix h2 = ritz::assemble(*seq.model, 2);
  CHECK_THAT(ritz::rayleigh_quotient(h2, ground),
             WithinAbs(5.4326109089475, 1e-10));

  CHECK_THROWS_AS(ritz::ritz_vector(seq, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(ritz::ritz_vector(seq, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(ritz::ritz_vector(seq, 2, 0), std::invalid_argument);
}

TEST_CASE("every Ritz vector reproduces its eigenvalue as a quotient") {
  const RitzSequence seq = golden_run();
  for (std::size_t t = 0; t < seq.n_values.size(); ++t) {
    const SymMatrix h = ritz::assemble(*seq.model, seq.n_values[t]);
    for (std::size_t k = 0; k < seq.values[t].size(); ++k) {
      const Vector v =
          ritz::ritz_vector(seq, seq.n_values[t], static_cast<int>(k) + 1);
      CHECK_THAT(ritz::rayleigh_quotient(h, v),
                 WithinAbs(seq.values[t][k], 1e-10));
    }
  }
}

TEST_CASE("secular residual is small at every tabulated eigenvalue") {
  const RitzSequence seq = golden_run();
  for (std::size_t t = 0; t < seq.n_values.size(); ++t) {
    const SymMatrix h = ritz::assemble(*seq.model, seq.n_values[t]);
    const double scale = std::max(1.0, h.frobenius_norm());
    for (double e : seq.values[t])
      CHECK(ritz::secular_residual(h, e) <= 1e-9 * scale);
  }
}

TEST_CASE("projected-then-solved eigenvalues match direct assembly") {
  const ritz::TiltedBoxModel box(1.0);
  const SymMatrix big = ritz::assemble(box, 16);
  for (int n : {2, 5, 8, 13, 16}) {
    const auto via_projection =
        ritz::eigensolve(ritz::project_leading(big, n)).values;
    const auto direct = ritz::eigensolve(ritz::assemble(box, n)).values;
    for (std::size_t k = 0; k < via_projection.size(); ++k)
      CHECK_THAT(via_projection[k], WithinAbs(direct[k], 1e-12));
  }
}

TEST_CASE("constrained_quotient_bound reproduces the k-th Ritz value") {
  const RitzSequence free_seq = ritz::run(std::make_shared<ritz::FreeBoxModel>(),
                                          {1e-9, 6, 1}, 6);
  CHECK_THAT(ritz::constrained_quotient_bound(free_seq, 4, 2, 25),
             WithinAbs(2.0 * std::numbers::pi * std::numbers::pi, 1e-10));

  const RitzSequence seq = ritz::run(std::make_shared<ritz::TiltedBoxModel>(1.0),
                                     {5e-10, 6, 2}, 6);
  CHECK_THAT(ritz::constrained_quotient_bound(seq, 2, 2, 25),
             WithinAbs(20.24140009, 1e-8));
  CHECK_THAT(ritz::constrained_quotient_bound(seq, 6, 3, 25),
             WithinAbs(44.91360984, 1e-8));
  // The bound never dips below the Ritz value it reproduces.
  for (int k = 1; k <= 6; ++k) {
    const double bound = ritz::constrained_quotient_bound(seq, 6, k, 50, 3);
    CHECK(bound >= seq.values[2][static_cast<std::size_t>(k - 1)] - 1e-10);
    CHECK(bound <= seq.values[2][static_cast<std::size_t>(k - 1)] + 1e-10);
  }
}

TEST_CASE("constrained_quotient_bound is deterministic per seed") {
  const RitzSequence seq = golden_run();
  const double a = ritz::constrained_quotient_bound(seq, 6, 2, 10, 42);
  const double b = ritz::constrained_quotient_bound(seq, 6, 2, 10, 42);
  CHECK(a == b);
  CHECK_THROWS_AS(ritz::constrained_quotient_bound(seq, 6, 0, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(ritz::constrained_quotient_bound(seq, 6, 7, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(ritz::constrained_quotient_bound(seq, 6, 2, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ritz::constrained_quotient_bound(seq, 5, 2, 10),
                  std::invalid_argument);
}

TEST_CASE("Ritz-vector residuals against the doubled space tend to shrink") {
  // No failure on violation: the residual trend is observed, not guaranteed.
  const auto model = std::make_shared<ritz::TiltedBoxModel>(1.0);
  for (int j = 1; j <= 2; ++j) {
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (int n = 2; n <= 10; n += 2) {
      const RitzSequence seq = ritz::run(model, {5e-10, n, 2}, j);
      const Vector v = ritz::ritz_vector(seq, n, j);
      const double e = seq.values.back()[static_cast<std::size_t>(j - 1)];
      const SymMatrix big = ritz::assemble(*model, 2 * n);
      Vector padded(static_cast<std::size_t>(2 * n), 0.0);
      for (int i = 0; i < n; ++i) padded[i] = v[i];
      Vector residual = big * padded;
      for (int i = 0; i < 2 * n; ++i) residual[i] -= e * padded[i];
      const double r = ritz::norm(residual);
      if (r > prev + 1e-12) monotone = false;
      prev = r;
    }
    CHECK_NOFAIL(monotone);
  }
}

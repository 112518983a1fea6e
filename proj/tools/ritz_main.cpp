// SPDX-License-Identifier: Apache-2.0
//
// ritz: variational eigenvalue tables for Hermitian operators, with
// monotone-bound verification and an independent finite-difference oracle.
//
// Exit codes: 0 success, 1 usage error, 2 bound violation, 3 numerical
// failure.

#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ritz/ritz.hpp"

namespace {

struct Options {
  double lambda = 1.0;
  int n_max = 14;
  int n_step = 2;
  int levels = 4;
  double tol = 5e-10;
  std::string format = "table";
  std::uint64_t seed = 0;
  std::string model = "tilted-box";
  std::string matrix_path;
  ritz::PhysicalParams physical;

  bool lambda_given = false;
  bool n_max_given = false;
  bool physical_given = false;
};

void add_schedule_flags(CLI::App* sub, Options& o) {
  sub->add_option("--n-max", o.n_max, "largest truncation size N")
      ->capture_default_str();
  sub->add_option("--n-step", o.n_step, "stride between truncation sizes")
      ->capture_default_str();
  sub->add_option("--tol", o.tol, "successive-difference convergence threshold")
      ->capture_default_str();
  sub->add_option("--seed", o.seed,
                  "seed for randomized diagnostics (reserved; output is "
                  "deterministic)")
      ->capture_default_str();
}

void add_model_flags(CLI::App* sub, Options& o) {
  sub->add_option("--lambda", o.lambda, "dimensionless field strength")
      ->capture_default_str();
  sub->add_option("--levels", o.levels, "number of eigenvalues to track")
      ->capture_default_str();
  sub->add_option("--model", o.model, "operator model")
      ->check(CLI::IsMember({"tilted-box", "free-box", "matrix-file"}))
      ->capture_default_str();
  sub->add_option("--matrix", o.matrix_path,
                  "element table for --model matrix-file");
}

void add_physical_flags(CLI::App* sub, Options& o) {
  sub->add_option("--mass", o.physical.mass, "effective mass m*")
      ->capture_default_str();
  sub->add_option("--charge", o.physical.charge, "charge magnitude |e|")
      ->capture_default_str();
  sub->add_option("--field", o.physical.field, "electric field F")
      ->capture_default_str();
  sub->add_option("--length", o.physical.length, "well width L")
      ->capture_default_str();
  sub->add_option("--hbar", o.physical.hbar, "reduced Planck constant")
      ->capture_default_str();
}

void collect_given(const CLI::App* sub, Options& o) {
  o.lambda_given = sub->count("--lambda") > 0;
  o.n_max_given = sub->get_option_no_throw("--n-max") != nullptr &&
                  sub->count("--n-max") > 0;
  o.physical_given = false;
  for (const char* f : {"--mass", "--charge", "--field", "--length", "--hbar"})
    if (sub->get_option_no_throw(f) != nullptr && sub->count(f) > 0)
      o.physical_given = true;
}

[[noreturn]] void usage_error(const std::string& what) {
  throw std::invalid_argument(what);
}

void validate_common(const Options& o) {
  if (o.levels < 1) usage_error("--levels must be >= 1");
  if (o.n_max < 2) usage_error("--n-max must be >= 2");
  if (o.n_step < 1) usage_error("--n-step must be >= 1");
  if (!(o.tol > 0.0)) usage_error("--tol must be > 0");
  if (o.lambda_given && o.physical_given)
    usage_error("--lambda conflicts with physical parameters; give one or the other");
}

// Effective field strength and the model to run; caps n_max for file-backed
// models whose table is smaller than the default schedule.
std::shared_ptr<const ritz::OperatorModel> build_model(Options& o) {
  if (o.model == "matrix-file") {
    if (o.lambda_given || o.physical_given)
      usage_error("--lambda and physical parameters do not apply to matrix-file models");
    if (o.matrix_path.empty()) usage_error("--model matrix-file requires --matrix");
    auto loaded = std::make_shared<ritz::MatrixModel>(
        ritz::load_matrix_model_file(o.matrix_path));
    if (loaded->max_index() < 2)
      usage_error("matrix-file model needs dimension >= 2");
    if (o.n_max_given && o.n_max > loaded->max_index())
      usage_error("--n-max exceeds the matrix dimension " +
                  std::to_string(loaded->max_index()));
    if (!o.n_max_given) o.n_max = std::min(o.n_max, loaded->max_index());
    return loaded;
  }
  if (o.model == "free-box") {
    if (o.lambda_given) usage_error("--lambda does not apply to the free box");
    if (o.physical_given)
      usage_error("physical parameters describe the tilted box, not the free box");
    return std::make_shared<ritz::FreeBoxModel>();
  }
  if (o.physical_given) o.lambda = ritz::lambda_from_physical(o.physical);
  return std::make_shared<ritz::TiltedBoxModel>(o.lambda);
}

ritz::RitzSequence run_sequence(Options& o) {
  auto model = build_model(o);
  ritz::ConvergencePolicy policy{o.tol, o.n_max, o.n_step};
  return ritz::run(model, policy, o.levels);
}

ritz::RitzSequence scaled_copy(const ritz::RitzSequence& seq, double scale) {
  ritz::RitzSequence out = seq;
  for (auto& row : out.values)
    for (double& v : row) v *= scale;
  return out;
}

// Inserts a "physical" object before the closing brace of a document
// produced by emit_json (which always ends with "}\n").
std::string splice_physical_json(std::string json, const ritz::PhysicalParams& p,
                                 double scale, const ritz::RitzSequence& physical) {
  json.erase(json.size() - 2);
  json += ",\"physical\":{";
  json += "\"mass\":" + ritz::format_shortest(p.mass);
  json += ",\"charge\":" + ritz::format_shortest(p.charge);
  json += ",\"field\":" + ritz::format_shortest(p.field);
  json += ",\"length\":" + ritz::format_shortest(p.length);
  json += ",\"hbar\":" + ritz::format_shortest(p.hbar);
  json += ",\"energy_scale\":" + ritz::format_shortest(scale);
  json += ",\"rows\":[";
  for (std::size_t t = 0; t < physical.n_values.size(); ++t) {
    if (t > 0) json.push_back(',');
    json += "{\"n\":" + std::to_string(physical.n_values[t]) + ",\"values\":[";
    for (std::size_t k = 0; k < physical.values[t].size(); ++k) {
      if (k > 0) json.push_back(',');
      json += ritz::format_shortest(physical.values[t][k]);
    }
    json += "]}";
  }
  json += "]}}\n";
  return json;
}

std::string physical_csv(const ritz::RitzSequence& physical) {
  std::string out = "N";
  for (int k = 1; k <= physical.levels; ++k)
    out += ",E" + std::to_string(k) + "_physical";
  out.push_back('\n');
  for (std::size_t t = 0; t < physical.n_values.size(); ++t) {
    out += std::to_string(physical.n_values[t]);
    for (int k = 0; k < physical.levels; ++k) {
      out.push_back(',');
      if (static_cast<std::size_t>(k) < physical.values[t].size())
        out += ritz::format_shortest(physical.values[t][k]);
    }
    out.push_back('\n');
  }
  return out;
}

int cmd_solve(Options o) {
  validate_common(o);
  if (o.format != "table" && o.format != "csv" && o.format != "json")
    usage_error("--format must be table, csv, or json");
  const ritz::RitzSequence seq = run_sequence(o);

  std::optional<double> scale;
  if (o.physical_given) {
    const ritz::PhysicalParams& p = o.physical;
    scale = p.hbar * p.hbar / (p.mass * p.length * p.length);
  }

  if (o.format == "table") {
    ritz::TableLayout layout;
    if (scale) {
      std::cout << "# lambda = " << ritz::format_shortest(o.lambda) << "\n"
                << "# energy scale hbar^2/(m* L^2) = "
                << ritz::format_shortest(*scale) << "\n";
    }
    std::cout << ritz::emit_table(seq, layout);
    if (scale) {
      std::cout << "\n# physical energies E = hbar^2 E~/(m* L^2)\n"
                << ritz::emit_table(scaled_copy(seq, *scale), layout);
    }
  } else if (o.format == "csv") {
    std::cout << ritz::emit_csv(seq);
    if (scale) std::cout << "\n" << physical_csv(scaled_copy(seq, *scale));
  } else {
    std::string json = ritz::emit_json(seq);
    if (scale)
      json = splice_physical_json(std::move(json), o.physical, *scale,
                                  scaled_copy(seq, *scale));
    std::cout << json;
  }
  return 0;
}

int cmd_verify(Options o) {
  validate_common(o);
  const ritz::RitzSequence seq = run_sequence(o);
  constexpr double kSlack = 1e-10;

  ritz::BoundReport report =
      ritz::merge_reports(ritz::verify_monotonicity(seq, kSlack),
                          ritz::verify_interlacing(seq, kSlack));

  const bool box_model = o.model == "tilted-box" || o.model == "free-box";
  const int recorded = std::min(o.levels, o.n_max);
  if (box_model && recorded <= 16) {
    const double lambda = o.model == "free-box" ? 0.0 : o.lambda;
    const ritz::OracleEstimate est = ritz::richardson(
        ritz::fd_eigenvalues({lambda, 2000, recorded}),
        ritz::fd_eigenvalues({lambda, 4000, recorded}));
    report = ritz::merge_reports(report, ritz::cross_validate(seq, est, kSlack));
  } else if (box_model) {
    std::cerr << "note: oracle cross-validation skipped (more than 16 levels)\n";
  }

  std::cout << ritz::emit_json(seq, &report);
  return report.all_ok() ? 0 : 2;
}

int cmd_oracle(const Options& o) {
  if (o.model == "matrix-file")
    usage_error("oracle unavailable for user matrices");
  if (o.levels < 1 || o.levels > 16)
    usage_error("oracle supports 1..16 levels");
  if (o.model == "free-box" && o.lambda_given)
    usage_error("--lambda does not apply to the free box");
  const double lambda = o.model == "free-box" ? 0.0 : o.lambda;

  const ritz::OracleEstimate est =
      ritz::richardson(ritz::fd_eigenvalues({lambda, 2000, o.levels}),
                       ritz::fd_eigenvalues({lambda, 4000, o.levels}));

  std::string out = "{\"model\":\"" + o.model + "\"";
  out += ",\"lambda\":" + ritz::format_shortest(lambda);
  out += ",\"grids\":[2000,4000],\"values\":[";
  for (std::size_t k = 0; k < est.values.size(); ++k) {
    if (k > 0) out.push_back(',');
    out += ritz::format_shortest(est.values[k]);
  }
  out += "],\"error_bar\":[";
  for (std::size_t k = 0; k < est.error_bar.size(); ++k) {
    if (k > 0) out.push_back(',');
    out += ritz::format_shortest(est.error_bar[k]);
  }
  out += "]}\n";
  std::cout << out;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rayleigh-Ritz variational eigenvalue tables with verified "
               "monotone bounds"};
  app.require_subcommand(1);

  Options o;
  CLI::App* solve = app.add_subcommand(
      "solve", "compute the eigenvalue table for a nested truncation family");
  add_model_flags(solve, o);
  add_schedule_flags(solve, o);
  add_physical_flags(solve, o);
  solve->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();

  CLI::App* verify = app.add_subcommand(
      "verify",
      "check monotone upper bounds, interlacing, and the oracle lower band");
  add_model_flags(verify, o);
  add_schedule_flags(verify, o);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "independent finite-difference eigenvalues with error bars");
  add_model_flags(oracle, o);

  CLI::App* reproduce = app.add_subcommand(
      "reproduce-table", "print the convergence table for the default run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) {
      collect_given(solve, o);
      return cmd_solve(o);
    }
    if (verify->parsed()) {
      collect_given(verify, o);
      return cmd_verify(o);
    }
    if (oracle->parsed()) {
      collect_given(oracle, o);
      return cmd_oracle(o);
    }
    if (reproduce->parsed()) return cmd_solve(Options{});
  } catch (const ritz::EigensolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

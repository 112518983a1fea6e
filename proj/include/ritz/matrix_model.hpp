// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "ritz/matrix.hpp"
#include "ritz/models.hpp"

namespace ritz {

/// Operator backed by an explicit dense symmetric element table. Queries
/// beyond the declared maximum index are errors.
class MatrixModel final : public OperatorModel {
 public:
  explicit MatrixModel(SymMatrix table, std::string description = "user matrix")
      : table_(std::move(table)), description_(std::move(description)) {}

  int max_index() const noexcept { return table_.dim(); }

  std::string name() const override { return "matrix-file"; }
  std::string description() const override { return description_; }

  double element(int i, int j) const override {
    if (i < 1 || j < 1)
      throw std::invalid_argument("MatrixModel::element: indices are 1-based");
    if (i > table_.dim() || j > table_.dim())
      throw std::out_of_range(
          "MatrixModel::element: index beyond the declared maximum " +
          std::to_string(table_.dim()));
    return table_(i - 1, j - 1);
  }

 private:
  SymMatrix table_;
  std::string description_;
};

/// Parses the matrix-file format:
///   dim <n>
///   i j value        (1 <= i <= j <= n, one triple per line)
/// Unspecified pairs are zero; duplicate pairs are an error. Blank lines are
/// ignored.
inline MatrixModel load_matrix_model(std::istream& in,
                                     const std::string& origin = "matrix file") {
  auto fail = [&](int line_no, const std::string& what) {
    throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": " + what);
  };

  std::string line;
  int line_no = 0;
  int dim = 0;
  bool have_dim = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string head;
    if (!(row >> head)) continue;  // blank line
    if (head != "dim") fail(line_no, "expected header line \"dim <n>\"");
    if (!(row >> dim) || dim < 1) fail(line_no, "invalid dimension");
    std::string extra;
    if (row >> extra) fail(line_no, "trailing tokens after dimension");
    have_dim = true;
    break;
  }
  if (!have_dim) throw std::invalid_argument(origin + ": missing \"dim <n>\" header");

  SymMatrix table(dim);
  std::set<std::pair<int, int>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream probe(line);
    std::string tok;
    if (!(probe >> tok)) continue;  // blank line
    std::istringstream row(line);
    int i = 0;
    int j = 0;
    double value = 0.0;
    if (!(row >> i >> j >> value)) fail(line_no, "expected \"i j value\"");
    std::string extra;
    if (row >> extra) fail(line_no, "trailing tokens after value");
    if (i < 1 || j < i || j > dim)
      fail(line_no, "indices must satisfy 1 <= i <= j <= " + std::to_string(dim));
    if (!std::isfinite(value)) fail(line_no, "value must be finite");
    if (!seen.insert({i, j}).second)
      fail(line_no, "duplicate entry (" + std::to_string(i) + ", " +
                        std::to_string(j) + ")");
    table.set(i - 1, j - 1, value);
  }
  return MatrixModel(table, origin);
}

inline MatrixModel load_matrix_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
  return load_matrix_model(in, path);
}

}  // namespace ritz

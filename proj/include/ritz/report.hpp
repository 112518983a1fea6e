// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ritz/engine.hpp"

namespace ritz {

/// Table presentation options. Dashes mark absent entries (K > N); under
/// `absent_and_converged` a cell is also dashed once the two preceding rows
/// printed identically at this precision, i.e. the level has stopped moving
/// at print resolution.
struct TableLayout {
  enum class DashPolicy { absent_only, absent_and_converged };

  int sig_figs = 10;
  DashPolicy dash_policy = DashPolicy::absent_and_converged;
  std::vector<std::string> column_labels;  // defaults to N, E1, ..., EK

  void validate() const {
    if (sig_figs < 4 || sig_figs > 17)
      throw std::invalid_argument("TableLayout: sig_figs must be in [4, 17]");
  }
};

namespace detail {

// Decimal digits of |v| truncated (not rounded) to `sig` significant figures,
// plus the decimal exponent of the leading digit. 40 digits from printf are
// exact far beyond any 9-run a binary64 can produce, so string truncation
// here equals true truncation toward zero.
inline void significant_digits(double v, int sig, std::string& digits,
                               int& exponent, bool& negative) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.40e", v);
  const char* p = buf;
  negative = (*p == '-');
  if (negative) ++p;
  digits.clear();
  digits.push_back(*p);  // leading digit
  p += 2;                // skip the decimal point
  while (*p && *p != 'e') digits.push_back(*p++);
  exponent = std::atoi(p + 1);
  digits.resize(static_cast<std::size_t>(sig));
}

}  // namespace detail

/// Formats v truncated toward zero at `sig` significant figures, keeping
/// trailing zeros. Fixed notation within a reasonable exponent window,
/// scientific outside it.
inline std::string format_significant(double v, int sig) {
  if (sig < 1 || sig > 30)
    throw std::invalid_argument("format_significant: sig out of range");
  if (v == 0.0) {
    std::string s = "0.";
    s.append(static_cast<std::size_t>(sig - 1), '0');
    return sig == 1 ? "0" : s;
  }
  std::string digits;
  int exponent = 0;
  bool negative = false;
  detail::significant_digits(v, sig, digits, exponent, negative);

  std::string out;
  if (negative) out.push_back('-');
  if (exponent >= 0 && exponent < sig) {
    out.append(digits, 0, static_cast<std::size_t>(exponent + 1));
    if (exponent + 1 < sig) {
      out.push_back('.');
      out.append(digits, static_cast<std::size_t>(exponent + 1), std::string::npos);
    }
  } else if (exponent < 0 && exponent >= -4) {
    out.append("0.");
    out.append(static_cast<std::size_t>(-exponent - 1), '0');
    out.append(digits);
  } else {
    out.push_back(digits[0]);
    if (sig > 1) {
      out.push_back('.');
      out.append(digits, 1, std::string::npos);
    }
    out.push_back('e');
    out.append(std::to_string(exponent));
  }
  return out;
}

/// Shortest decimal that round-trips to exactly this binary64 value.
inline std::string format_shortest(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof(esc), "\\u%04x", c);
          out += esc;
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

inline void require_rows(const RitzSequence& seq) {
  if (seq.n_values.empty())
    throw std::invalid_argument("report: sequence has no rows");
}

}  // namespace detail

/// Plain-text eigenvalue table, one row per truncation N, one column per
/// level, values truncated to `layout.sig_figs` significant figures.
inline std::string emit_table(const RitzSequence& seq, const TableLayout& layout) {
  detail::require_rows(seq);
  layout.validate();

  std::vector<std::string> labels = layout.column_labels;
  if (labels.empty()) {
    labels.push_back("N");
    for (int k = 1; k <= seq.levels; ++k) labels.push_back("E" + std::to_string(k));
  }
  if (static_cast<int>(labels.size()) != seq.levels + 1)
    throw std::invalid_argument("emit_table: need one label per column");

  const std::size_t rows = seq.n_values.size();
  std::vector<std::vector<std::string>> cells(rows);
  // printed[k] tracks the formatted history of level k across rows,
  // independent of whether a dash replaced the print.
  std::vector<std::vector<std::string>> printed(static_cast<std::size_t>(seq.levels));
  for (std::size_t t = 0; t < rows; ++t) {
    cells[t].push_back(std::to_string(seq.n_values[t]));
    for (int k = 0; k < seq.levels; ++k) {
      if (static_cast<std::size_t>(k) >= seq.values[t].size()) {
        cells[t].push_back("-");
        continue;
      }
      const std::string text =
          format_significant(seq.values[t][static_cast<std::size_t>(k)],
                             layout.sig_figs);
      auto& history = printed[static_cast<std::size_t>(k)];
      const bool settled =
          layout.dash_policy == TableLayout::DashPolicy::absent_and_converged &&
          history.size() >= 2 && history[history.size() - 1] == history[history.size() - 2];
      history.push_back(text);
      cells[t].push_back(settled ? "-" : text);
    }
  }

  std::vector<std::size_t> width(labels.size());
  for (std::size_t c = 0; c < labels.size(); ++c) {
    width[c] = labels[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  auto append_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out.append("  ");
      out.append(width[c] - row[c].size(), ' ');
      out.append(row[c]);
    }
    out.push_back('\n');
  };
  append_row(labels);
  for (const auto& row : cells) append_row(row);
  return out;
}

/// CSV document: header "N,E1,...,EK", one row per truncation, absent entries
/// empty, values in shortest round-trip decimal, LF line endings.
inline std::string emit_csv(const RitzSequence& seq) {
  detail::require_rows(seq);
  std::string out = "N";
  for (int k = 1; k <= seq.levels; ++k) out += ",E" + std::to_string(k);
  out.push_back('\n');
  for (std::size_t t = 0; t < seq.n_values.size(); ++t) {
    out += std::to_string(seq.n_values[t]);
    for (int k = 0; k < seq.levels; ++k) {
      out.push_back(',');
      if (static_cast<std::size_t>(k) < seq.values[t].size())
        out += format_shortest(seq.values[t][static_cast<std::size_t>(k)]);
    }
    out.push_back('\n');
  }
  return out;
}

/// JSON document with fixed key order:
///   {"model", "lambda", "levels", "rows": [{"n", "values"}...],
///    "bounds": {"monotonic", "violations"}}
/// "bounds" is present only when a report is supplied; "lambda" is null for
/// models without a field strength.
inline std::string emit_json(const RitzSequence& seq,
                             const BoundReport* report = nullptr) {
  detail::require_rows(seq);
  std::string out = "{\"model\":\"";
  out += detail::json_escape(seq.model ? seq.model->name() : "");
  out += "\",\"lambda\":";
  const std::optional<double> lambda =
      seq.model ? seq.model->field_strength() : std::nullopt;
  out += lambda ? format_shortest(*lambda) : "null";
  out += ",\"levels\":" + std::to_string(seq.levels);
  out += ",\"rows\":[";
  for (std::size_t t = 0; t < seq.n_values.size(); ++t) {
    if (t > 0) out.push_back(',');
    out += "{\"n\":" + std::to_string(seq.n_values[t]) + ",\"values\":[";
    for (std::size_t k = 0; k < seq.values[t].size(); ++k) {
      if (k > 0) out.push_back(',');
      out += format_shortest(seq.values[t][k]);
    }
    out += "]}";
  }
  out.push_back(']');
  if (report != nullptr) {
    out += ",\"bounds\":{\"monotonic\":";
    out += report->monotonicity_ok ? "true" : "false";
    out += ",\"violations\":[";
    for (std::size_t i = 0; i < report->violations.size(); ++i) {
      const BoundViolation& v = report->violations[i];
      if (i > 0) out.push_back(',');
      out += "{\"kind\":\"";
      out += to_string(v.kind);
      out += "\",\"k\":" + std::to_string(v.level);
      out += ",\"n\":" + std::to_string(v.n);
      out += ",\"lhs\":" + format_shortest(v.lhs);
      out += ",\"rhs\":" + format_shortest(v.rhs);
      out += ",\"slack\":" + format_shortest(v.slack);
      out += "}";
    }
    out += "]}";
  }
  out += "}\n";
  return out;
}

}  // namespace ritz

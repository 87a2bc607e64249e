#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "duelbench/error.hpp"
#include "duelbench/square_array.hpp"
#include "duelbench/text_util.hpp"

namespace duelbench {

inline constexpr double kValidationTol = 1e-9;

/// Ground-truth duel probabilities: entry (i, j) is the probability that arm i
/// beats arm j. Construction goes through validate_matrix, which enforces the
/// 0.5 diagonal and complementary off-diagonal pairs; after validation the
/// lower triangle is rewritten as 1 - upper, so p(i,j) + p(j,i) == 1 exactly.
class PreferenceMatrix {
 public:
  int k() const noexcept { return p_.k(); }
  double operator()(int i, int j) const { return p_(i, j); }

  double at(int i, int j) const {
    require(i >= 0 && i < k() && j >= 0 && j < k(), ErrorCode::OutOfRange,
            "arm index out of range");
    return p_(i, j);
  }

  const SquareArray<double>& raw() const noexcept { return p_; }

  friend bool operator==(const PreferenceMatrix& a, const PreferenceMatrix& b) {
    return a.p_ == b.p_;
  }

  friend PreferenceMatrix validate_matrix(SquareArray<double> p);

 private:
  PreferenceMatrix() = default;
  SquareArray<double> p_;
};

inline PreferenceMatrix validate_matrix(SquareArray<double> p) {
  const int k = p.k();
  require(k >= 2, ErrorCode::BadParams, "preference matrix needs k >= 2");
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double v = p(i, j);
      require(std::isfinite(v) && v >= 0.0 && v <= 1.0, ErrorCode::OutOfRange,
              "entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside [0,1]");
    }
  }
  for (int i = 0; i < k; ++i) {
    require(std::abs(p(i, i) - 0.5) <= kValidationTol, ErrorCode::BadDiagonal,
            "diagonal entry " + std::to_string(i) + " is not 0.5");
    p(i, i) = 0.5;
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      require(std::abs(p(i, j) + p(j, i) - 1.0) <= kValidationTol,
              ErrorCode::AsymmetryViolation,
              "p(" + std::to_string(i) + "," + std::to_string(j) + ") + transpose != 1");
      p(j, i) = 1.0 - p(i, j);  // upper triangle is authoritative
    }
  }
  PreferenceMatrix out;
  out.p_ = std::move(p);
  return out;
}

inline PreferenceMatrix validate_matrix(const std::vector<std::vector<double>>& rows) {
  return validate_matrix(SquareArray<double>::from_rows(rows));
}

// ---- CSV format: k rows of k comma-separated decimals. -------------------

inline std::string matrix_to_csv(const PreferenceMatrix& m) {
  std::string out;
  for (int i = 0; i < m.k(); ++i) {
    for (int j = 0; j < m.k(); ++j) {
      if (j > 0) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

inline PreferenceMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    for (std::string_view cell : split(line, ',')) row.push_back(parse_double(cell));
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), ErrorCode::ParseError, "empty matrix CSV");
  return validate_matrix(rows);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::IoError, "cannot write '" + path + "'");
  out << content;
  require(out.good(), ErrorCode::IoError, "write failed for '" + path + "'");
}

}  // namespace duelbench

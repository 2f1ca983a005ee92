#pragma once

// JSON matrix files: {"n": <int>, "matrix": [[[re, im], ...], ...]}.

#include <json.hpp>

#include <string>
#include <string_view>

#include "qdecomp/matcore.hpp"

namespace qdecomp {

inline std::string save_matrix(const UnitaryMatrix& m) {
  nlohmann::ordered_json doc;
  doc["n"] = m.n();
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const Complex z = m(i, j);
      row.push_back({z.real(), z.imag()});
    }
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  return doc.dump() + "\n";
}

namespace detail {

// nlohmann reports byte offsets; translate to line/column for messages.
inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline double as_real(const nlohmann::json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace detail

/// Parses a complex matrix without checking unitarity.
inline CMatrix parse_matrix(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(std::string("malformed matrix JSON: ") + e.what(), line, column);
  }
  if (!doc.is_object() || !doc.contains("matrix") || !doc.contains("n")) {
    throw ParseError("matrix file must be an object with \"n\" and \"matrix\" fields");
  }
  const auto& rows = doc["matrix"];
  if (!rows.is_array() || rows.empty()) throw ParseError("\"matrix\" must be a non-empty array");
  const std::size_t dim = rows.size();
  CMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != dim) {
      throw DimensionError("row " + std::to_string(i) + " does not have " + std::to_string(dim) +
                           " entries; matrix must be square");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const auto& z = row[j];
      if (!z.is_array() || z.size() != 2) {
        throw ParseError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") must be a [re, im] pair");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          Complex(detail::as_real(z[0], "real part"), detail::as_real(z[1], "imaginary part"));
    }
  }
  const int n = qubit_count_for_dim(dim);
  const auto& nv = doc["n"];
  if (!nv.is_number_integer()) throw ParseError("\"n\" must be an integer");
  if (nv.get<long long>() != n) {
    throw DimensionError("\"n\" = " + nv.dump() + " does not match matrix dimension " +
                         std::to_string(dim));
  }
  return m;
}

/// Parses and validates a unitary matrix. tol < 0 selects the default tolerance.
inline UnitaryMatrix load_matrix(std::string_view text, double tol = -1.0) {
  return UnitaryMatrix(parse_matrix(text), tol);
}

}  // namespace qdecomp

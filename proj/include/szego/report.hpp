#pragma once

// Tabular reports and their CSV / JSON serialisations. Output is a pure
// function of the report: columns keep insertion order and every float is
// printed with 17 significant digits.
//
// Complex cells become a pair of columns re_<name>, im_<name> in CSV and a
// [re, im] array in JSON. Complex-vector cells (coefficient lists) become
// columns re_0, im_0, re_1, im_1, ... in CSV and an array of [re, im] in
// JSON.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "szego/error.hpp"
#include "szego/types.hpp"

namespace szego {

using Cell = std::variant<double, long long, std::string, cplx, CVector>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::string command;
  std::vector<Table> tables;
};

enum class Format { csv, json };

namespace detail {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string json_double(double v) {
  return std::isfinite(v) ? format_double(v) : std::string("null");
}

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Width of a vector column = longest vector seen in that column.
inline std::vector<Index> vector_widths(const Table& t) {
  std::vector<Index> w(t.columns.size(), -1);
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size() && c < w.size(); ++c) {
      if (const auto* v = std::get_if<CVector>(&row[c])) w[c] = std::max(w[c], v->size());
    }
  }
  return w;
}

inline bool is_complex_column(const Table& t, std::size_t c) {
  for (const auto& row : t.rows) {
    if (c < row.size() && std::holds_alternative<cplx>(row[c])) return true;
  }
  return false;
}

}  // namespace detail

inline std::string to_csv(const Report& report) {
  std::ostringstream os;
  const bool named = report.tables.size() > 1;
  for (std::size_t ti = 0; ti < report.tables.size(); ++ti) {
    const Table& t = report.tables[ti];
    if (ti > 0) os << '\n';
    if (named) os << "# " << t.name << '\n';
    const auto widths = detail::vector_widths(t);
    std::vector<std::string> header;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (widths[c] >= 0) {
        for (Index k = 0; k < widths[c]; ++k) {
          header.push_back("re_" + std::to_string(k));
          header.push_back("im_" + std::to_string(k));
        }
      } else if (detail::is_complex_column(t, c)) {
        header.push_back("re_" + t.columns[c]);
        header.push_back("im_" + t.columns[c]);
      } else {
        header.push_back(t.columns[c]);
      }
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
      os << (i ? "," : "") << detail::csv_field(header[i]);
    }
    os << '\n';
    for (const auto& row : t.rows) {
      std::vector<std::string> fields;
      for (std::size_t c = 0; c < row.size(); ++c) {
        std::visit(
            [&](const auto& v) {
              using V = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<V, double>) {
                fields.push_back(detail::format_double(v));
              } else if constexpr (std::is_same_v<V, long long>) {
                fields.push_back(std::to_string(v));
              } else if constexpr (std::is_same_v<V, std::string>) {
                fields.push_back(detail::csv_field(v));
              } else if constexpr (std::is_same_v<V, cplx>) {
                fields.push_back(detail::format_double(v.real()));
                fields.push_back(detail::format_double(v.imag()));
              } else {
                for (Index k = 0; k < widths[c]; ++k) {
                  const cplx z = k < v.size() ? v[k] : cplx{};
                  fields.push_back(detail::format_double(z.real()));
                  fields.push_back(detail::format_double(z.imag()));
                }
              }
            },
            row[c]);
      }
      for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i];
      os << '\n';
    }
  }
  return os.str();
}

inline std::string to_json(const Report& report) {
  std::ostringstream os;
  auto pair = [](cplx z) {
    return "[" + detail::json_double(z.real()) + ", " + detail::json_double(z.imag()) + "]";
  };
  os << "{\n  \"command\": " << detail::json_string(report.command) << ",\n  \"tables\": [";
  for (std::size_t ti = 0; ti < report.tables.size(); ++ti) {
    const Table& t = report.tables[ti];
    os << (ti ? "," : "") << "\n    {\n      \"name\": " << detail::json_string(t.name)
       << ",\n      \"rows\": [";
    for (std::size_t ri = 0; ri < t.rows.size(); ++ri) {
      const auto& row = t.rows[ri];
      os << (ri ? "," : "") << "\n        {";
      for (std::size_t c = 0; c < row.size() && c < t.columns.size(); ++c) {
        os << (c ? ", " : "") << detail::json_string(t.columns[c]) << ": ";
        std::visit(
            [&](const auto& v) {
              using V = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<V, double>) {
                os << detail::json_double(v);
              } else if constexpr (std::is_same_v<V, long long>) {
                os << v;
              } else if constexpr (std::is_same_v<V, std::string>) {
                os << detail::json_string(v);
              } else if constexpr (std::is_same_v<V, cplx>) {
                os << pair(v);
              } else {
                os << "[";
                for (Index k = 0; k < v.size(); ++k) os << (k ? ", " : "") << pair(v[k]);
                os << "]";
              }
            },
            row[c]);
      }
      os << "}";
    }
    os << (t.rows.empty() ? "]" : "\n      ]") << "\n    }";
  }
  os << (report.tables.empty() ? "]" : "\n  ]") << "\n}\n";
  return os.str();
}

inline std::string serialize(const Report& report, Format format) {
  return format == Format::csv ? to_csv(report) : to_json(report);
}

// Writes to path, or to stdout when path is empty or "-".
inline void emit(const Report& report, Format format, const std::string& path) {
  const std::string text = serialize(report, format);
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw NumericalError("emit: write to standard output failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericalError("emit: cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw NumericalError("emit: write to " + path + " failed");
}

}  // namespace szego

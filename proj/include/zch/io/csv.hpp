#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zch::io {

// Deterministic shortest-round-trip formatting ('.' decimal, no locale).
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  double parsed = 0.0;
  // prefer the shortest representation that round-trips
  for (int prec = 1; prec <= 16; ++prec) {
    char cand[40];
    std::snprintf(cand, sizeof(cand), "%.*g", prec, x);
    std::sscanf(cand, "%lf", &parsed);
    if (parsed == x) return cand;
  }
  return buf;
}

// Minimal CSV writer: ',' separator, LF endings, header mandatory.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary), width_(header.size()) {
    if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
    write_cells(header);
  }

  void row(const std::vector<double>& values) {
    if (values.size() != width_) throw std::invalid_argument("csv row width mismatch");
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    write_cells(cells);
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::invalid_argument("csv row width mismatch");
    write_cells(cells);
  }

 private:
  void write_cells(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ofstream out_;
  std::size_t width_;
};

}  // namespace zch::io

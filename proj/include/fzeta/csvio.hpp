#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fzeta/errors.hpp"

namespace fzeta {

// Deterministic CSV with a fixed header; numbers round-trip exactly
// through %.17g.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      out += header[i];
      out += (i + 1 < header.size()) ? ',' : '\n';
    }
    char buf[40];
    for (const auto& row : rows) {
      if (row.size() != header.size())
        throw UsageError("bad-csv", "row width does not match header");
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", row[i]);
        out += buf;
        out += (i + 1 < row.size()) ? ',' : '\n';
      }
    }
    return out;
  }
};

inline CsvTable csv_parse(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw UsageError("bad-csv", "empty csv");
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw UsageError("bad-csv", "non-numeric cell '" + cell + "'");
      }
    }
    if (row.size() != t.header.size())
      throw UsageError("bad-csv", "row width does not match header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline CsvTable csv_read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("io-error", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return csv_parse(ss.str());
}

}  // namespace fzeta

// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "oscmult/grid.hpp"

namespace oscmult {

// shortest stable decimal form used everywhere text output must be
// reproducible byte for byte
std::string format_double(double v);

// small deterministic CSV builder; cells are quoted only when they contain
// a delimiter, a quote, or a newline
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& cells);
  std::size_t rows() const { return rows_; }
  const std::string& str() const { return text_; }

 private:
  void emit(const std::vector<std::string>& cells);
  std::size_t width_;
  std::size_t rows_ = 0;
  std::string text_;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// flat binary layout: int64 dim, then per axis int64 n and float64 extent,
// then interleaved re/im float64 payload; everything little endian
void dump_function(const SampledFunction& f, const std::string& path);
SampledFunction load_function(const std::string& path);

}  // namespace oscmult

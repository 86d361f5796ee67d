// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace oscmult {

namespace {

bool needs_quotes(const std::string& cell) {
  return cell.find_first_of(",\"\n\r") != std::string::npos;
}

void append_cell(std::string& out, const std::string& cell) {
  if (!needs_quotes(cell)) {
    out += cell;
    return;
  }
  out += '"';
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

template <typename T>
void put_le(std::string& out, T v) {
  static_assert(sizeof(T) == 8);
  unsigned char bytes[8];
  std::memcpy(bytes, &v, 8);
  // host is little endian on every supported target; keep the copy explicit
  out.append(reinterpret_cast<const char*>(bytes), 8);
}

template <typename T>
T get_le(const std::string& in, std::size_t& off) {
  if (off + 8 > in.size()) throw std::runtime_error("kernel dump: truncated file");
  T v;
  std::memcpy(&v, in.data() + off, 8);
  off += 8;
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) {
  if (width_ == 0) throw std::invalid_argument("CsvTable: empty header");
  emit(header);
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::invalid_argument("CsvTable: row width mismatch");
  emit(cells);
  ++rows_;
}

void CsvTable::emit(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    append_cell(text_, cells[i]);
  }
  text_ += '\n';
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write: " + path);
}

void dump_function(const SampledFunction& f, const std::string& path) {
  std::string blob;
  const UniformGrid& g = f.grid();
  blob.reserve(8 + 16 * static_cast<std::size_t>(g.dim()) + 16 * f.values().size());
  put_le<std::int64_t>(blob, g.dim());
  for (int a = 0; a < g.dim(); ++a) {
    put_le<std::int64_t>(blob, static_cast<std::int64_t>(g.axis(a).n));
    put_le<double>(blob, g.axis(a).extent);
  }
  for (const cdouble& v : f.values()) {
    put_le<double>(blob, v.real());
    put_le<double>(blob, v.imag());
  }
  write_text_file(path, blob);
}

SampledFunction load_function(const std::string& path) {
  const std::string blob = read_text_file(path);
  std::size_t off = 0;
  const auto dim = get_le<std::int64_t>(blob, off);
  if (dim < 1 || dim > 3) throw std::runtime_error("kernel dump: dimension out of range");
  std::vector<Axis> axes;
  for (std::int64_t a = 0; a < dim; ++a) {
    Axis ax;
    ax.n = static_cast<std::size_t>(get_le<std::int64_t>(blob, off));
    ax.extent = get_le<double>(blob, off);
    axes.push_back(ax);
  }
  const UniformGrid grid(axes);
  std::vector<cdouble> values(grid.size());
  for (cdouble& v : values) {
    const double re = get_le<double>(blob, off);
    const double im = get_le<double>(blob, off);
    v = cdouble(re, im);
  }
  if (off != blob.size()) throw std::runtime_error("kernel dump: trailing bytes");
  return SampledFunction(grid, std::move(values));
}

}  // namespace oscmult

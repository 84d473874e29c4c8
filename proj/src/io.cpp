#include "spca/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <vector>

namespace spca {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_cell(std::string_view cell, double& out) {
  cell = trim(cell);
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = first + cell.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw IoError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

Matrix parse_matrix_csv(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw IoError("empty input, expected at least one data row");

  std::vector<std::vector<double>> rows;
  Index cols = -1;

  // Line 1 is either the first data row or a header; a header only fixes
  // the expected column count.
  {
    const auto cells = split_cells(lines[0]);
    std::vector<double> row(cells.size());
    bool numeric = true;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (!parse_cell(cells[j], row[j])) {
        numeric = false;
        break;
      }
    }
    cols = static_cast<Index>(cells.size());
    if (numeric) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (!std::isfinite(row[j])) {
          parse_fail(1, "column " + std::to_string(j + 1) + ": non-finite value");
        }
      }
      rows.push_back(std::move(row));
    }
  }

  for (std::size_t i = 2; i <= lines.size(); ++i) {
    const auto cells = split_cells(lines[i - 1]);
    if (static_cast<Index>(cells.size()) != cols) {
      parse_fail(i, "row has " + std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(cols));
    }
    std::vector<double> row(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (!parse_cell(cells[j], row[j])) {
        parse_fail(i, "column " + std::to_string(j + 1) + ": cannot parse '" +
                          std::string(trim(cells[j])) + "' as a number");
      }
      if (!std::isfinite(row[j])) {
        parse_fail(i, "column " + std::to_string(j + 1) + ": non-finite value");
      }
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) throw IoError("header only, expected at least one data row");

  Matrix m(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Index j = 0; j < cols; ++j) m(static_cast<Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
  }
  return m;
}

Matrix read_matrix(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_matrix_csv(text);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ostringstream out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError(path.string() + ": read failed");
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace spca

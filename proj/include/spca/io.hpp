#pragma once

#include <filesystem>
#include <string>

#include "spca/types.hpp"

namespace spca {

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double x);

// Parses comma-separated numeric rows. A single leading header row is
// detected by a non-numeric first line and skipped; it fixes the expected
// column count. Throws IoError naming line and column for ragged rows,
// unparsable or non-finite cells, and for input with no data rows.
Matrix parse_matrix_csv(const std::string& text);

// parse_matrix_csv over the file's contents; errors carry the path.
Matrix read_matrix(const std::filesystem::path& path);

// One row per line, cells in shortest round-trip form, no header. Reading
// the file back reproduces the matrix bit for bit.
void write_matrix(const std::filesystem::path& path, const Matrix& m);

// Whole-file helpers with IoError on failure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace spca

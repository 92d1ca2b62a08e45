#pragma once

#include <string>
#include <vector>

#include "shssa/types.hpp"

namespace shssa::io {

/// Named numeric columns; missing entries are NaN. Columns may differ in length.
struct SeriesTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
};

/// CSV with a header row. Cells equal to `missing` (or empty) become NaN.
SeriesTable read_csv_series(const std::string& path, const std::string& missing = "NA");
SeriesTable parse_csv_series(const std::string& text, const std::string& missing = "NA");
/// Shorter columns are padded with the missing token.
std::string format_csv_series(const SeriesTable& t, const std::string& missing = "NA");

/// Headerless numeric CSV matrix; row i of the file is grid row x = i + 1.
RMatrix read_csv_matrix(const std::string& path, const std::string& missing = "NA");
std::string format_csv_matrix(const RMatrix& m, const std::string& missing = "NA");

/// PGM P2 (ASCII) or P5 (binary, maxval up to 65535), values as stored.
RMatrix read_pgm(const std::string& path);
/// Linearly maps [min, max] of the finite values onto [0, maxval]; NaN cells
/// are written as 0.
std::string format_pgm(const RMatrix& m, bool binary = false, int maxval = 255);

/// PGM if the file starts with P2/P5, CSV matrix otherwise.
RMatrix read_grid(const std::string& path, const std::string& missing = "NA");

/// Mask file: PGM (nonzero = inside) or ASCII rows of 0/1 characters,
/// optionally separated by spaces or commas. Row i is x = i + 1.
BoolGrid read_mask(const std::string& path);
BoolGrid parse_mask(const std::string& text);
std::string format_mask(const BoolGrid& m);

std::string read_file(const std::string& path);
/// Writes to a temporary sibling then renames over the target.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace shssa::io

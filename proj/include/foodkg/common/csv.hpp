// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace foodkg {

struct CsvRow {
    /// 1-based line number in the source text where the row starts.
    std::size_t line = 0;
    std::vector<std::string> cells;
};

struct CsvTable {
    char delimiter = ',';
    /// Header cells, trimmed and lowercased.
    std::vector<std::string> header;
    std::vector<CsvRow> rows;

    /// Index of a header column, or npos.
    std::size_t column(std::string_view name) const;
};

/// Parses delimited text with a header row. The delimiter is ';' when the
/// header line contains one, otherwise ','. Double quotes protect delimiters
/// and newlines; "" inside quotes is a literal quote. Blank lines are
/// ignored and a leading UTF-8 BOM is dropped. Cells are trimmed.
/// Throws ParseError on an empty input or an unterminated quote.
CsvTable parse_csv(std::string_view text);

} // namespace foodkg

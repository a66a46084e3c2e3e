// SPDX-License-Identifier: Apache-2.0

#include "foodkg/common/csv.hpp"

#include "foodkg/common/error.hpp"
#include "foodkg/common/text.hpp"

namespace foodkg {

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    return std::string_view::npos;
}

namespace {

bool blank(const std::vector<std::string>& cells)
{
    for (const auto& c : cells)
        if (!c.empty())
            return false;
    return true;
}

} // namespace

CsvTable parse_csv(std::string_view text)
{
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);
    const auto first_line_end = text.find('\n');
    const std::string_view first_line = text.substr(0, first_line_end);
    CsvTable table;
    table.delimiter = first_line.find(';') != std::string_view::npos ? ';' : ',';

    std::vector<CsvRow> records;
    CsvRow current;
    std::string cell;
    bool quoted = false;
    bool cell_was_quoted = false;
    std::size_t line = 1;
    current.line = 1;
    const auto finish_cell = [&] {
        current.cells.push_back(cell_was_quoted ? cell : text::trim(cell));
        cell.clear();
        cell_was_quoted = false;
    };
    const auto finish_row = [&] {
        finish_cell();
        if (!blank(current.cells))
            records.push_back(std::move(current));
        current = CsvRow{};
        current.line = line;
    };
    std::size_t quote_line = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n')
                    ++line;
                cell += c;
            }
            continue;
        }
        if (c == '"' && text::trim(cell).empty()) {
            cell.clear();
            quoted = true;
            cell_was_quoted = true;
            quote_line = line;
        } else if (c == table.delimiter) {
            finish_cell();
        } else if (c == '\n') {
            ++line;
            finish_row();
        } else if (c != '\r') {
            cell += c;
        }
    }
    if (quoted)
        throw ParseError("unterminated quote starting on line " + std::to_string(quote_line));
    finish_row();

    if (records.empty())
        throw ParseError("delimited table has no header row");
    for (auto& h : records.front().cells)
        table.header.push_back(text::to_lower(text::trim(h)));
    table.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
    return table;
}

} // namespace foodkg

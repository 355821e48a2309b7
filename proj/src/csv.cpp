#include "dqml/csv.hpp"

#include <cstdio>

#include "dqml/error.hpp"

namespace dqml::csv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Writer::Writer(std::vector<std::string> header) : n_cols_(header.size()) {
    rows_.push_back(std::move(header));
}

void Writer::add_row(std::vector<std::string> cells) {
    require(cells.size() == n_cols_, "csv: row width differs from header");
    rows_.push_back(std::move(cells));
}

std::string Writer::str() const {
    std::string out;
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

Table read_csv(const std::string& text, bool expect_header) {
    Table t;
    std::vector<std::string> row;
    std::string cell;
    bool first_line = true;
    auto flush_row = [&] {
        row.push_back(cell);
        cell.clear();
        if (row.size() == 1 && row[0].empty()) {
            row.clear();
            return;  // blank line
        }
        if (first_line && expect_header)
            t.header = std::move(row);
        else
            t.rows.push_back(std::move(row));
        first_line = false;
        row.clear();
    };
    for (char c : text) {
        if (c == ',') {
            row.push_back(cell);
            cell.clear();
        } else if (c == '\n') {
            flush_row();
        } else if (c != '\r') {
            cell += c;
        }
    }
    if (!cell.empty() || !row.empty())
        flush_row();
    return t;
}

}  // namespace dqml::csv

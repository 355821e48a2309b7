#pragma once

#include <string>
#include <vector>

// Deterministic CSV formatting (doubles as shortest round-trip %.17g) and
// a small reader for dataset ingestion.

namespace dqml::csv {

std::string format_double(double v);

class Writer {
  public:
    explicit Writer(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    std::string cell(double v) const { return format_double(v); }

    /// Full document, '\n' line endings, header first.
    std::string str() const;

  private:
    std::size_t n_cols_;
    std::vector<std::vector<std::string>> rows_;
};

struct Table {
    std::vector<std::string> header;  // empty when has_header = false
    std::vector<std::vector<std::string>> rows;
};

/// Split a CSV document into cells. No quoting support; fields must not
/// contain commas. `expect_header` controls whether the first line is
/// treated as column names.
Table read_csv(const std::string& text, bool expect_header);

}  // namespace dqml::csv

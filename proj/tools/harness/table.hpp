#pragma once

#include <string>
#include <vector>

namespace lmmroot::harness {

enum class OutputFormat { csv, markdown };

/// Rectangular string table; rendering is locale-independent.
struct Table {
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

/// RFC 4180 style: fields with a comma, quote or newline are quoted.
std::string render_csv(const Table& table);
std::string render_markdown(const Table& table);
std::string render(const Table& table, OutputFormat format);

/// Several tables. CSV output concatenates them with a blank line between.
std::string render(const std::vector<Table>& tables, OutputFormat format);

}  // namespace lmmroot::harness

#include "harness/table.hpp"

#include <algorithm>

namespace lmmroot::harness {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
    return out;
}

std::string md_cell(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string render_csv(const Table& table) {
    std::string out = csv_line(table.headers);
    for (const auto& row : table.rows) out += csv_line(row);
    return out;
}

std::string render_markdown(const Table& table) {
    std::vector<std::size_t> width(table.headers.size(), 3);
    for (std::size_t c = 0; c < table.headers.size(); ++c) width[c] = std::max(width[c], table.headers[c].size());
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], md_cell(row[c]).size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string out = "|";
        for (std::size_t c = 0; c < width.size(); ++c) {
            std::string cell = c < cells.size() ? md_cell(cells[c]) : std::string();
            cell.resize(width[c], ' ');
            out += ' ' + cell + " |";
        }
        return out + '\n';
    };
    std::string out;
    if (!table.title.empty()) out += "### " + table.title + "\n\n";
    out += line(table.headers);
    out += '|';
    for (std::size_t w : width) out += ' ' + std::string(w, '-') + " |";
    out += '\n';
    for (const auto& row : table.rows) out += line(row);
    return out;
}

std::string render(const Table& table, OutputFormat format) {
    return format == OutputFormat::csv ? render_csv(table) : render_markdown(table);
}

std::string render(const std::vector<Table>& tables, OutputFormat format) {
    std::string out;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) out += '\n';
        out += render(tables[i], format);
    }
    return out;
}

}  // namespace lmmroot::harness

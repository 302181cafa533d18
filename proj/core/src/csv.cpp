#include "egret/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "egret/errors.hpp"

namespace egret {

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw ConfigError("CsvTable: header must not be empty");
}

void CsvTable::add_comment(std::string line) { comments_.push_back(std::move(line)); }

void CsvTable::add_row(std::vector<double> row) {
    if (row.size() != header_.size())
        throw ConfigError("CsvTable: row width does not match the header");
    for (double v : row)
        if (!std::isfinite(v)) throw DomainError("CsvTable: non-finite cell");
    rows_.push_back(std::move(row));
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return i;
    throw ConfigError("CsvTable: unknown column " + name);
}

void CsvTable::write(std::ostream& out) const {
    for (const std::string& c : comments_) out << "# " << c << "\n";
    for (std::size_t i = 0; i < header_.size(); ++i)
        out << (i ? "," : "") << header_[i];
    out << "\n";
    char buf[64];
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << "\n";
    }
}

void CsvTable::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);  // keep LF endings everywhere
    if (!out) throw IoError("cannot open output file: " + path);
    write(out);
    if (!out) throw IoError("failed writing: " + path);
}

std::string CsvTable::to_string() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

}  // namespace egret

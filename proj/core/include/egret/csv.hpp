#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace egret {

// Rectangular numeric table with named columns. Rows must be finite; writers
// report domain failures separately instead of emitting non-finite cells.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_comment(std::string line);       // emitted as "# ..." above the header
    void add_row(std::vector<double> row);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    std::size_t row_count() const { return rows_.size(); }

    // Column index by name; throws on unknown columns.
    std::size_t column(const std::string& name) const;

    // Comma separators, '.' decimals, LF line endings, full-precision reals.
    void write(std::ostream& out) const;
    void write_file(const std::string& path) const;
    std::string to_string() const;

    bool operator==(const CsvTable&) const = default;

private:
    std::vector<std::string> comments_;
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

}  // namespace egret

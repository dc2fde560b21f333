#pragma once

#include <string>
#include <vector>

namespace hmfa {

/// Number with 17 significant digits ("%.17g"); round-trips doubles exactly.
std::string format_number(double v);

/// Minimal CSV table writer: header row plus numeric or preformatted rows.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells);
    std::size_t columns() const noexcept { return header_.size(); }

    /// `comment` lines are emitted first, each prefixed by "# ".
    std::string str(const std::string& comment = {}) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes `text` to `path`, throwing std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace hmfa

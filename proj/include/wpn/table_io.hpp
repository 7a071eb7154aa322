#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace wpn {

// One output cell: monostate renders as an empty CSV field / JSON null.
using Field = std::variant<std::monostate, double, std::int64_t, std::uint64_t, std::string>;

struct Table {
    std::vector<std::string> comments; // CSV '#' header lines (not in JSON)
    std::vector<std::string> columns;
    std::vector<std::vector<Field>> rows;
};

// Shortest round-trip decimal rendering (std::to_chars); deterministic.
std::string format_double(double v);

// RFC-4180: quote fields containing comma, quote, CR or LF; double quotes.
std::string csv_escape(const std::string& s);

void write_csv(std::ostream& os, const Table& t);
// JSON: array of objects keyed by column name, field order preserved.
void write_json(std::ostream& os, const Table& t);

// Serialize through a temporary file in the target directory, then rename:
// a failed run never leaves a truncated file at `path`.
void atomic_write_file(const std::string& path, const std::string& payload);

} // namespace wpn

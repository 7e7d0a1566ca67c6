#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace pcstore {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column; throws std::out_of_range if absent.
    [[nodiscard]] std::size_t column(std::string_view name) const;
};

/// Shortest decimal that round-trips to the same double ("0.5", "0.037037037037037035").
/// NaN and infinities become the empty string.
[[nodiscard]] std::string format_number(double value);
[[nodiscard]] std::string format_number(std::uint64_t value);

/// RFC 4180: fields containing a comma, quote, CR or LF are quoted with inner
/// quotes doubled. Rows end in "\n".
void write_csv(std::ostream& out, const CsvTable& table);
[[nodiscard]] std::string to_csv(const CsvTable& table);

/// Inverse of write_csv, for tests and tooling that re-read emitted tables.
[[nodiscard]] CsvTable parse_csv(std::string_view text);

}  // namespace pcstore

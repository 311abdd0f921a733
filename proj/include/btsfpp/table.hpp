#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace btsfpp {

/// Rectangular numeric table. CSV output uses a header row, '.' decimal
/// separator, newline-terminated rows and 17 significant digits, so emitted
/// files reparse to the same doubles and re-emit byte-for-byte.
struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void append_row(std::vector<double> row);
    void write_csv(std::ostream& os) const;
    std::string to_csv() const;
    nlohmann::json to_json() const;

    static OutputTable from_csv(std::istream& is);
};

/// Shortest representation that round-trips a double (up to 17 significant digits).
std::string format_double(double v);

} // namespace btsfpp

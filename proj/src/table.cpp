#include "btsfpp/table.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace btsfpp {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void OutputTable::append_row(std::vector<double> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("OutputTable: row width does not match the header");
    rows.push_back(std::move(row));
}

void OutputTable::write_csv(std::ostream& os) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c > 0)
            os << ',';
        os << columns[c];
    }
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0)
                os << ',';
            os << format_double(row[c]);
        }
        os << '\n';
    }
}

std::string OutputTable::to_csv() const {
    std::ostringstream os;
    write_csv(os);
    return os.str();
}

nlohmann::json OutputTable::to_json() const {
    nlohmann::json j;
    j["columns"] = columns;
    j["rows"] = rows;
    return j;
}

OutputTable OutputTable::from_csv(std::istream& is) {
    OutputTable table;
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("OutputTable: empty CSV input");
    std::istringstream header(line);
    std::string field;
    while (std::getline(header, field, ','))
        table.columns.push_back(field);
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream row_stream(line);
        std::vector<double> row;
        while (std::getline(row_stream, field, ','))
            row.push_back(std::stod(field));
        table.append_row(std::move(row));
    }
    return table;
}

} // namespace btsfpp

#include "psnads/csv.hpp"

#include <cstdio>

namespace psnads {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out += ',';
        out += cells[k];
    }
    out += '\n';
    return out;
}

std::string csv_row_numeric(const std::vector<double>& cells) {
    std::string out;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out += ',';
        out += format_double(cells[k]);
    }
    out += '\n';
    return out;
}

}  // namespace psnads

#include "disclab/csv_io.hpp"

#include "disclab/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace disclab {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Header {
    std::size_t d;
    std::size_t n;
};

std::optional<std::size_t> parse_size(std::string_view s) {
    std::size_t value = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return value;
}

Header parse_header(std::string_view line, std::size_t row) {
    // "# d=<d> n=<N>"
    std::optional<std::size_t> d;
    std::optional<std::size_t> n;
    std::string_view rest = trim(line.substr(1));
    while (!rest.empty()) {
        const auto space = rest.find_first_of(" \t");
        const std::string_view token = rest.substr(0, space);
        rest = space == std::string_view::npos ? std::string_view{} : trim(rest.substr(space));
        if (token.starts_with("d=")) {
            d = parse_size(token.substr(2));
        } else if (token.starts_with("n=")) {
            n = parse_size(token.substr(2));
        } else {
            throw ParseError(row, "unrecognised header token '" + std::string(token) + "'");
        }
    }
    if (!d || !n || *d == 0) {
        throw ParseError(row, "header must read '# d=<d> n=<N>' with d >= 1");
    }
    return {*d, *n};
}

double parse_coordinate(std::string_view field, std::size_t row, std::size_t column) {
    field = trim(field);
    double value = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw ParseError(row, "column " + std::to_string(column + 1) + ": cannot parse '" + std::string(field) +
                                  "' as a real number");
    }
    if (!(value >= 0.0 && value < 1.0)) {
        throw ParseError(row, "column " + std::to_string(column + 1) + ": coordinate " + std::string(field) +
                                  " is outside [0,1)");
    }
    return value;
}

} // namespace

PointSet read_points_csv(std::istream& in) {
    std::optional<Header> header;
    std::optional<std::size_t> dim;
    std::vector<double> coords;
    std::string line;
    std::size_t row = 0;
    std::size_t points = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string_view text = trim(line);
        if (text.empty()) {
            continue;
        }
        if (text.front() == '#') {
            if (header || points > 0) {
                throw ParseError(row, "header is only allowed before the first point");
            }
            header = parse_header(text, row);
            dim = header->d;
            continue;
        }
        std::size_t column = 0;
        std::string_view rest = text;
        while (true) {
            const auto comma = rest.find(',');
            coords.push_back(parse_coordinate(rest.substr(0, comma), row, column));
            ++column;
            if (comma == std::string_view::npos) {
                break;
            }
            rest = rest.substr(comma + 1);
        }
        if (!dim) {
            dim = column;
        } else if (column != *dim) {
            throw ParseError(row, "expected " + std::to_string(*dim) + " columns, found " + std::to_string(column));
        }
        ++points;
    }
    if (!dim) {
        throw ParseError(row, "no header and no points: dimension unknown");
    }
    if (header && header->n != points) {
        throw ParseError(row, "header declares n=" + std::to_string(header->n) + " but file has " +
                                  std::to_string(points) + " points");
    }
    return PointSet(*dim, std::move(coords));
}

PointSet read_points_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open point file '" + path + "'");
    }
    return read_points_csv(in);
}

std::string format_double(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

void write_points_csv(std::ostream& out, const PointSet& points) {
    out << "# d=" << points.dim() << " n=" << points.size() << '\n';
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto p = points.point(k);
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_double(p[j]);
        }
        out << '\n';
    }
}

} // namespace disclab

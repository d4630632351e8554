#pragma once

#include "disclab/point_set.hpp"

#include <iosfwd>
#include <string>

namespace disclab {

/// Reads the point file format: one row per point, comma separated decimal
/// coordinates in [0,1), optional leading header `# d=<d> n=<N>`. Blank lines
/// are skipped. When the header is present its d and n must match the data.
/// Throws ParseError naming the offending row.
PointSet read_points_csv(std::istream& in);
PointSet read_points_csv_file(const std::string& path);

/// Writes the header followed by one row per point, 17 significant digits.
void write_points_csv(std::ostream& out, const PointSet& points);

/// `%.17g` formatting used for every floating-point value the tools print.
std::string format_double(double x);

} // namespace disclab

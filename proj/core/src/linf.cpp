#include "disclab/errors.hpp"
#include "disclab/lp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace disclab {

namespace {

std::vector<double> sorted_1d(const PointSet& points) {
    if (points.dim() != 1) {
        throw DimensionMismatch("this routine needs d = 1, got d=" + std::to_string(points.dim()));
    }
    points.require_nonempty();
    std::vector<double> sorted(points.coords().begin(), points.coords().end());
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

// Sorted distinct values of {0, 1} and coordinate j, plus each point's rank.
struct AxisGrid {
    std::vector<double> values;
    std::vector<std::size_t> rank;
};

AxisGrid axis_grid(const PointSet& points, std::size_t j) {
    AxisGrid grid;
    grid.values = {0.0, 1.0};
    for (std::size_t k = 0; k < points.size(); ++k) {
        grid.values.push_back(points(k, j));
    }
    std::sort(grid.values.begin(), grid.values.end());
    grid.values.erase(std::unique(grid.values.begin(), grid.values.end()), grid.values.end());
    grid.rank.resize(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        grid.rank[k] = static_cast<std::size_t>(
            std::lower_bound(grid.values.begin(), grid.values.end(), points(k, j)) - grid.values.begin());
    }
    return grid;
}

// Rank range [lo, hi) selected by a face pair. A closed lower face keeps
// coordinate == u, an open one drops it; same for the upper face and v.
struct RankRange {
    std::size_t lo;
    std::size_t hi;
};

RankRange rank_range(std::size_t lower, std::size_t upper, bool closed, bool anchored) {
    const std::size_t lo = anchored ? 0 : (closed ? lower : lower + 1);
    const std::size_t hi = closed ? upper + 1 : upper;
    return {lo, std::max(lo, hi)};
}

} // namespace

double linf_star_1d(const PointSet& points) {
    const std::vector<double> sorted = sorted_1d(points);
    const double count_n = static_cast<double>(sorted.size());
    double sup = 0.0;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        const double scaled = count_n * sorted[i - 1];
        sup = std::max({sup, scaled - static_cast<double>(i - 1), static_cast<double>(i) - scaled});
    }
    return sup;
}

double linf_extreme_1d(const PointSet& points) {
    const std::vector<double> sorted = sorted_1d(points);
    const double count_n = static_cast<double>(sorted.size());
    // D(0) = 0, then D(x-) and D(x+) at each point in order, then D(1) = 0.
    double running_min = 0.0;
    double running_max = 0.0;
    double sup = 0.0;
    auto visit = [&](double value) {
        sup = std::max({sup, value - running_min, running_max - value});
        running_min = std::min(running_min, value);
        running_max = std::max(running_max, value);
    };
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double scaled = count_n * sorted[i];
        visit(static_cast<double>(i) - scaled);
        visit(static_cast<double>(i + 1) - scaled);
    }
    visit(0.0);
    return sup;
}

double linf_exact_small(const PointSet& points, Kind kind) {
    points.require_nonempty();
    const std::size_t d = points.dim();
    const std::size_t n = points.size();
    if (d > linf_enum_max_dim || n > linf_enum_max_points) {
        throw InvalidArgument("linf_exact_small needs d <= " + std::to_string(linf_enum_max_dim) + " and N <= " +
                              std::to_string(linf_enum_max_points) + ", got d=" + std::to_string(d) +
                              " N=" + std::to_string(n));
    }
    if (kind != Kind::star && kind != Kind::extreme) {
        throw InvalidArgument("linf_exact_small handles star and extreme only");
    }
    const bool anchored = kind == Kind::star;
    const double count_n = static_cast<double>(n);

    const AxisGrid gx = axis_grid(points, 0);
    const AxisGrid gy = d == 2 ? axis_grid(points, 1) : AxisGrid{{0.0, 1.0}, std::vector<std::size_t>(n, 0)};
    const std::size_t mx = gx.values.size();
    const std::size_t my = d == 2 ? gy.values.size() : 1;

    // prefix[a][b] = #points with rank_x < a and rank_y < b
    std::vector<std::size_t> prefix((mx + 1) * (my + 1), 0);
    auto at = [&](std::size_t a, std::size_t b) -> std::size_t& { return prefix[a * (my + 1) + b]; };
    for (std::size_t k = 0; k < n; ++k) {
        ++at(gx.rank[k] + 1, gy.rank[k] + 1);
    }
    for (std::size_t a = 1; a <= mx; ++a) {
        for (std::size_t b = 1; b <= my; ++b) {
            at(a, b) += at(a - 1, b) + at(a, b - 1) - at(a - 1, b - 1);
        }
    }
    auto count_in = [&](RankRange rx, RankRange ry) {
        return at(rx.hi, ry.hi) - at(rx.lo, ry.hi) - at(rx.hi, ry.lo) + at(rx.lo, ry.lo);
    };

    // Over-counting favours closed faces, under-counting open ones; mixed
    // face choices are never extremal.
    double sup = 0.0;
    const std::size_t first_x = 0;
    const std::size_t last_x_lower = anchored ? 1 : mx;
    const std::size_t last_y_lower = d == 2 ? (anchored ? 1 : my) : 1;
    for (std::size_t ux = first_x; ux < last_x_lower; ++ux) {
        for (std::size_t vx = ux; vx < mx; ++vx) {
            const double width = gx.values[vx] - gx.values[ux];
            for (std::size_t uy = 0; uy < last_y_lower; ++uy) {
                for (std::size_t vy = (d == 2 ? uy : 0); vy < my; ++vy) {
                    const double height = d == 2 ? gy.values[vy] - gy.values[uy] : 1.0;
                    const double expected = count_n * (width * height);
                    for (const bool closed : {true, false}) {
                        const RankRange rx = rank_range(ux, vx, closed, anchored);
                        const RankRange ry = d == 2 ? rank_range(uy, vy, closed, anchored) : RankRange{0, 1};
                        const double count = static_cast<double>(count_in(rx, ry));
                        sup = std::max(sup, std::fabs(count - expected));
                    }
                }
            }
        }
    }
    return sup;
}

double linf_discrepancy(const PointSet& points, Kind kind) {
    if (kind != Kind::star && kind != Kind::extreme) {
        throw InvalidArgument("L_inf is defined here for star and extreme only");
    }
    if (points.dim() == 1) {
        return kind == Kind::star ? linf_star_1d(points) : linf_extreme_1d(points);
    }
    return linf_exact_small(points, kind);
}

} // namespace disclab

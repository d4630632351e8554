#pragma once

#include "disclab/estimate.hpp"
#include "disclab/point_set.hpp"

#include <cstddef>
#include <cstdint>

namespace disclab {

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    Kind kind = Kind::star;
    double p = 2.0;
};

/// Monte Carlo estimate of the star, extreme or periodic L_p discrepancy,
/// 1 <= p < inf, straight from the definition.
///
/// star:     t ~ U[0,1]^d, mean of |Delta([0,t))|^p.
/// extreme:  a, b ~ U[0,1]^d, u = min(a,b), v = max(a,b). This pushes the
///           uniform measure onto {u <= v} with density 2^d, so the integral
///           is 2^-d times the mean of |Delta([u,v))|^p.
/// periodic: u, v ~ U[0,1]^d, wraparound boxes, no ordering.
/// The result is (integral)^(1/p); the standard error of the p-th power mean
/// is carried through the 1/p power by the delta method.
///
/// Sample i consumes draws [i * 2d, (i + 1) * 2d) of CounterRng(seed) (star
/// uses the first d of them). Requires samples >= 100.
Estimate mc_lp(const PointSet& points, const McConfig& config);

/// Exact star or extreme L_p discrepancy of a one-dimensional set for any
/// real p >= 1, by closed-form integration of |Delta|^p over the cells of the
/// sorted points. The extreme case is O(N^2).
double exact_lp_1d(const PointSet& points, Kind kind, double p);

/// sup_t |A([0,t)) - N t| for d = 1, O(N log N).
double linf_star_1d(const PointSet& points);

/// sup_{u <= v} |Delta([u,v))| for d = 1, O(N log N).
double linf_extreme_1d(const PointSet& points);

inline constexpr std::size_t linf_enum_max_dim = 2;
inline constexpr std::size_t linf_enum_max_points = 64;

/// Exact L_inf star or extreme discrepancy for d <= 2 and N <= 64 by
/// enumerating every box whose faces lie on {0, 1} or a point coordinate,
/// with each face either including or excluding the points on it. This is
/// the supremum over the closure of the half-open boxes.
double linf_exact_small(const PointSet& points, Kind kind);

/// Exact L_inf dispatch: the O(N log N) routines for d = 1, enumeration for
/// small d = 2 sets.
double linf_discrepancy(const PointSet& points, Kind kind);

} // namespace disclab

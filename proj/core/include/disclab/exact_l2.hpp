#pragma once

#include "disclab/estimate.hpp"
#include "disclab/point_set.hpp"

#include <cstddef>
#include <vector>

namespace disclab {

// Closed-form L2 discrepancies, O(N^2 d). All pair sums run through
// KernelAccumulator and are reduced in a fixed block order, so results are
// bitwise independent of thread_cap().
//
// Kernels, per coordinate, with B2(t) = t^2 - t + 1/6:
//   star      sum_{k,l} prod (1 - max) - 2N sum_k prod (1 - x^2)/2 + N^2 3^-d
//   extreme   sum_{k,l} prod (min - xy) - 2N sum_k prod x(1 - x)/2 + N^2 12^-d
//   periodic  sum_{k,l} prod (1/3 + B2({x - y})) - N^2 3^-d
//   diaphony  N^-2 sum_{k,l} prod (1 + 2 pi^2 B2({x - y})) - 1   (h != 0)

double star_l2(const PointSet& points);
double extreme_l2(const PointSet& points);
double periodic_l2(const PointSet& points);
/// Diaphony F_N, summing over h != 0.
double diaphony(const PointSet& points);

/// Squared value before the square root. May be a tiny negative number when
/// the true value is zero; the functions above clamp it.
double l2_squared(const PointSet& points, Kind kind);
double l2_discrepancy(const PointSet& points, Kind kind);

/// Values for every prefix: result[n - 1] is the discrepancy of the first n
/// points. One O(N^2 d) pass instead of N separate evaluations.
std::vector<double> prefix_l2_values(const PointSet& points, Kind kind);

struct TruncatedDiaphony {
    /// Fourier sum of F_N^2 over 0 < max_j |h_j| <= cutoff.
    double sum_squared;
    /// sqrt(sum_squared)
    double value;
    /// sum_squared <= F_N^2 <= sum_squared + tail_bound
    double tail_bound;
};

/// Diaphony from its defining Fourier series, truncated to |h_j| <= cutoff.
/// Costs (2 cutoff + 1)^d N d, so keep cutoff^d moderate.
TruncatedDiaphony diaphony_truncated(const PointSet& points, std::size_t cutoff);

} // namespace disclab

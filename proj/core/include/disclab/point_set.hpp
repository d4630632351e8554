#pragma once

#include <cstddef>
#include <initializer_list>
#include <cmath>
#include <span>
#include <vector>

namespace disclab {

/// Fractional part {t} = t - floor(t), forced into [0,1).
inline double frac(double t) noexcept {
    const double f = t - std::floor(t);
    return f >= 1.0 ? 0.0 : f;
}

/// A finite, ordered multiset of N points in [0,1)^d, stored row-major.
///
/// Point order is significant: prefixes and the lifting construction depend
/// on it. N = 0 is allowed so that sets can be built incrementally or read
/// from empty files, but every discrepancy routine rejects it.
class PointSet {
public:
    explicit PointSet(std::size_t dim);
    PointSet(std::size_t dim, std::vector<double> coords);

    /// Convenience for one-dimensional sets.
    static PointSet from_1d(std::span<const double> xs);
    static PointSet from_1d(std::initializer_list<double> xs);
    /// Row list constructor; every row must have the same length.
    static PointSet from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const noexcept { return coords_.empty(); }

    std::span<const double> point(std::size_t k) const noexcept {
        return {coords_.data() + k * dim_, dim_};
    }
    double operator()(std::size_t k, std::size_t j) const noexcept { return coords_[k * dim_ + j]; }

    std::span<const double> coords() const noexcept { return coords_; }

    void push_back(std::span<const double> p);

    /// The first n points, order preserved.
    PointSet prefix(std::size_t n) const;

    /// Throws EmptyPointSet when N = 0.
    void require_nonempty() const;

    bool operator==(const PointSet&) const = default;

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

/// Axis-parallel half-open box [u, v) with u <= v componentwise and both
/// corners inside [0,1]^d.
class Box {
public:
    Box(std::vector<double> lower, std::vector<double> upper);

    /// [0, t)
    static Box anchored(std::vector<double> upper);

    std::size_t dim() const noexcept { return lower_.size(); }
    std::span<const double> lower() const noexcept { return lower_; }
    std::span<const double> upper() const noexcept { return upper_; }

    double volume() const noexcept;
    bool contains(std::span<const double> x) const noexcept;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

/// Box modulo one. Per coordinate the test set is [u_j, v_j) when
/// u_j <= v_j and [0, v_j) U [u_j, 1) otherwise; x is inside iff
/// {x_j - u_j} < {v_j - u_j} for every j.
class PeriodicBox {
public:
    PeriodicBox(std::vector<double> lower, std::vector<double> upper);

    std::size_t dim() const noexcept { return lower_.size(); }
    std::span<const double> lower() const noexcept { return lower_; }
    std::span<const double> upper() const noexcept { return upper_; }

    double volume() const noexcept;
    bool contains(std::span<const double> x) const noexcept;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

/// A_N(B, P): number of points of P inside B.
std::size_t count_points(const PointSet& points, const Box& box);
std::size_t count_points(const PointSet& points, const PeriodicBox& box);

/// Delta_N(B, P) = A_N(B, P) - N * volume(B).
double local_discrepancy(const PointSet& points, const Box& box);
double local_discrepancy(const PointSet& points, const PeriodicBox& box);

} // namespace disclab

#include "disclab/point_set.hpp"

#include "disclab/errors.hpp"

#include <cmath>
#include <string>

namespace disclab {

namespace {

void check_coordinate(double c, std::size_t index) {
    if (!(c >= 0.0 && c < 1.0)) {
        throw InvalidArgument("coordinate " + std::to_string(c) + " at index " + std::to_string(index) +
                              " is outside [0,1)");
    }
}

void check_corners(std::span<const double> lower, std::span<const double> upper, bool ordered) {
    if (lower.size() != upper.size()) {
        throw DimensionMismatch("box corners have different dimensions");
    }
    if (lower.empty()) {
        throw InvalidArgument("box dimension must be >= 1");
    }
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] >= 0.0 && lower[j] <= 1.0 && upper[j] >= 0.0 && upper[j] <= 1.0)) {
            throw InvalidArgument("box corner outside [0,1] in coordinate " + std::to_string(j));
        }
        if (ordered && lower[j] > upper[j]) {
            throw InvalidArgument("box lower corner exceeds upper corner in coordinate " + std::to_string(j));
        }
    }
}

template <class B>
std::size_t count_in(const PointSet& points, const B& box) {
    if (points.dim() != box.dim()) {
        throw DimensionMismatch("point set has d=" + std::to_string(points.dim()) + " but box has d=" +
                                std::to_string(box.dim()));
    }
    std::size_t count = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (box.contains(points.point(k))) {
            ++count;
        }
    }
    return count;
}

} // namespace

PointSet::PointSet(std::size_t dim) : dim_(dim) {
    if (dim == 0) {
        throw InvalidArgument("dimension must be >= 1");
    }
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : PointSet(dim) {
    if (coords.size() % dim != 0) {
        throw DimensionMismatch("coordinate count " + std::to_string(coords.size()) +
                                " is not a multiple of d=" + std::to_string(dim));
    }
    for (std::size_t i = 0; i < coords.size(); ++i) {
        check_coordinate(coords[i], i);
    }
    coords_ = std::move(coords);
}

PointSet PointSet::from_1d(std::span<const double> xs) { return PointSet(1, {xs.begin(), xs.end()}); }

PointSet PointSet::from_1d(std::initializer_list<double> xs) { return PointSet(1, std::vector<double>(xs)); }

PointSet PointSet::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    if (rows.size() == 0) {
        throw InvalidArgument("from_rows needs at least one row to infer d");
    }
    PointSet out(rows.begin()->size());
    for (const auto& row : rows) {
        out.push_back(std::vector<double>(row));
    }
    return out;
}

void PointSet::push_back(std::span<const double> p) {
    if (p.size() != dim_) {
        throw DimensionMismatch("point has " + std::to_string(p.size()) + " coordinates, expected " +
                                std::to_string(dim_));
    }
    for (std::size_t j = 0; j < p.size(); ++j) {
        check_coordinate(p[j], coords_.size() + j);
    }
    coords_.insert(coords_.end(), p.begin(), p.end());
}

PointSet PointSet::prefix(std::size_t n) const {
    if (n > size()) {
        throw InvalidArgument("prefix length " + std::to_string(n) + " exceeds N=" + std::to_string(size()));
    }
    PointSet out(dim_);
    out.coords_.assign(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(n * dim_));
    return out;
}

void PointSet::require_nonempty() const {
    if (empty()) {
        throw EmptyPointSet();
    }
}

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    check_corners(lower_, upper_, true);
}

Box Box::anchored(std::vector<double> upper) {
    std::vector<double> lower(upper.size(), 0.0);
    return Box(std::move(lower), std::move(upper));
}

double Box::volume() const noexcept {
    double vol = 1.0;
    for (std::size_t j = 0; j < lower_.size(); ++j) {
        vol *= upper_[j] - lower_[j];
    }
    return vol;
}

bool Box::contains(std::span<const double> x) const noexcept {
    for (std::size_t j = 0; j < lower_.size(); ++j) {
        if (!(lower_[j] <= x[j] && x[j] < upper_[j])) {
            return false;
        }
    }
    return true;
}

PeriodicBox::PeriodicBox(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    check_corners(lower_, upper_, false);
}

double PeriodicBox::volume() const noexcept {
    double vol = 1.0;
    for (std::size_t j = 0; j < lower_.size(); ++j) {
        vol *= frac(upper_[j] - lower_[j]);
    }
    return vol;
}

bool PeriodicBox::contains(std::span<const double> x) const noexcept {
    for (std::size_t j = 0; j < lower_.size(); ++j) {
        if (!(frac(x[j] - lower_[j]) < frac(upper_[j] - lower_[j]))) {
            return false;
        }
    }
    return true;
}

std::size_t count_points(const PointSet& points, const Box& box) { return count_in(points, box); }

std::size_t count_points(const PointSet& points, const PeriodicBox& box) { return count_in(points, box); }

double local_discrepancy(const PointSet& points, const Box& box) {
    const auto count = static_cast<double>(count_points(points, box));
    return count - static_cast<double>(points.size()) * box.volume();
}

double local_discrepancy(const PointSet& points, const PeriodicBox& box) {
    const auto count = static_cast<double>(count_points(points, box));
    return count - static_cast<double>(points.size()) * box.volume();
}

} // namespace disclab

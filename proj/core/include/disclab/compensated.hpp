#pragma once

#include <cmath>

namespace disclab {

/// Error-free transformations. `two_sum` returns s = fl(a + b) and the exact
/// rounding error e, so that a + b == s + e holds in real arithmetic.
struct TwoTerm {
    double hi;
    double lo;
};

inline TwoTerm two_sum(double a, double b) noexcept {
    const double s = a + b;
    const double bb = s - a;
    const double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

inline TwoTerm two_product(double a, double b) noexcept {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

/// Compensated accumulator used for every kernel pair sum.
///
/// Each addition is split by two_sum and the rounding errors are collected in
/// a second accumulator, so the result is as accurate as if the sum were
/// carried in twice the working precision and then rounded once. Merging two
/// accumulators is error-free in the same sense, which lets parallel blocks
/// combine in a fixed order.
class KernelAccumulator {
public:
    KernelAccumulator() = default;
    explicit KernelAccumulator(double x) noexcept : sum_(x) {}

    void add(double x) noexcept {
        const TwoTerm t = two_sum(sum_, x);
        sum_ = t.hi;
        compensation_ += t.lo;
    }

    /// Adds a * b without rounding the product first.
    void add_product(double a, double b) noexcept {
        const TwoTerm p = two_product(a, b);
        add(p.hi);
        add(p.lo);
    }

    void merge(const KernelAccumulator& other) noexcept {
        add(other.sum_);
        add(other.compensation_);
    }

    KernelAccumulator& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

    /// Multiplies the represented value by an integer-valued factor exactly
    /// representable in double (used for 2x the upper triangle).
    void scale(double factor) noexcept {
        const TwoTerm hi = two_product(sum_, factor);
        const TwoTerm lo = two_product(compensation_, factor);
        sum_ = 0.0;
        compensation_ = 0.0;
        add(hi.hi);
        add(hi.lo);
        add(lo.hi);
        add(lo.lo);
    }

    double value() const noexcept { return sum_ + compensation_; }
    double sum() const noexcept { return sum_; }
    double compensation() const noexcept { return compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

} // namespace disclab

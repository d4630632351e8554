#include "disclab/exact_l2.hpp"

#include "disclab/compensated.hpp"
#include "disclab/errors.hpp"
#include "disclab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace disclab {

namespace {

constexpr std::size_t block_rows = 64;
constexpr double two_pi_squared = 2.0 * std::numbers::pi * std::numbers::pi;
constexpr double diaphony_diagonal = 1.0 + std::numbers::pi * std::numbers::pi / 3.0;

// 1 / base^d as an unevaluated sum hi + lo. base^d is exact for every d the
// tools accept with base 3 and for d <= 14 with base 12.
TwoTerm inverse_power(double base, std::size_t d) {
    double power = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
        power *= base;
    }
    const double hi = 1.0 / power;
    return {hi, std::fma(-hi, power, 1.0) / power};
}

struct StarKernel {
    static constexpr bool has_cross = true;
    static constexpr double base = 3.0;

    static double pair(const double* x, const double* y, std::size_t d) noexcept {
        double r = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            r *= 1.0 - std::max(x[j], y[j]);
        }
        return r;
    }
    static double diag(const double* x, std::size_t d) noexcept {
        double r = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            r *= 1.0 - x[j];
        }
        return r;
    }
    static double cross(const double* x, std::size_t d) noexcept {
        double r = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            r *= 0.5 * std::fma(-x[j], x[j], 1.0);
        }
        return r;
    }
};

struct ExtremeKernel {
    static constexpr bool has_cross = true;
    static constexpr double base = 12.0;

    static double pair(const double* x, const double* y, std::size_t d) noexcept {
        double r = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            r *= std::fma(-x[j], y[j], std::min(x[j], y[j]));
        }
        return r;
    }
    static double diag(const double* x, std::size_t d) noexcept {
        double r = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            r *= std::fma(-x[j], x[j], x[j]);
        }
        return r;
    }
    static double cross(const double* x, std::size_t d) noexcept {
        double r = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            r *= 0.5 * std::fma(-x[j], x[j], x[j]);
        }
        return r;
    }
};

// 1/3 + B2(t) = 1/2 - t(1 - t)
struct PeriodicKernel {
    static constexpr bool has_cross = false;
    static constexpr double base = 3.0;

    static double pair(const double* x, const double* y, std::size_t d) noexcept {
        double r = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double t = frac(x[j] - y[j]);
            r *= std::fma(-t, 1.0 - t, 0.5);
        }
        return r;
    }
    static double diag(const double*, std::size_t d) noexcept { return std::ldexp(1.0, -static_cast<int>(d)); }
    static double cross(const double*, std::size_t) noexcept { return 0.0; }
};

// 1 + 2 pi^2 B2(t) = 1 + pi^2/3 - 2 pi^2 t(1 - t)
struct DiaphonyKernel {
    static constexpr bool has_cross = false;
    static constexpr double base = 1.0;

    static double pair(const double* x, const double* y, std::size_t d) noexcept {
        double r = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double t = frac(x[j] - y[j]);
            r *= std::fma(-two_pi_squared, t * (1.0 - t), diaphony_diagonal);
        }
        return r;
    }
    static double diag(const double*, std::size_t d) noexcept {
        double r = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            r *= diaphony_diagonal;
        }
        return r;
    }
    static double cross(const double*, std::size_t) noexcept { return 0.0; }
};

struct PairSums {
    KernelAccumulator pair;
    KernelAccumulator cross;
};

// Squared discrepancy from the full pair sum and the cross sum over n points.
template <class K>
double assemble(const PairSums& sums, std::size_t n, std::size_t d) {
    const double count = static_cast<double>(n);
    const double count_sq = count * count;
    KernelAccumulator acc = sums.pair;
    if constexpr (std::is_same_v<K, DiaphonyKernel>) {
        acc.add(-count_sq);
        return acc.value() / count_sq;
    } else {
        if constexpr (K::has_cross) {
            acc.add_product(-2.0 * count, sums.cross.sum());
            acc.add_product(-2.0 * count, sums.cross.compensation());
        }
        const TwoTerm c = inverse_power(K::base, d);
        // star and extreme add N^2 c, periodic subtracts it
        const double sign = K::has_cross ? 1.0 : -1.0;
        acc.add_product(sign * count_sq, c.hi);
        acc.add_product(sign * count_sq, c.lo);
        return acc.value();
    }
}

template <class K>
PairSums pair_sums(const PointSet& points) {
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    const double* data = points.coords().data();
    const std::size_t blocks = (n + block_rows - 1) / block_rows;

    std::vector<KernelAccumulator> off(blocks);
    std::vector<KernelAccumulator> diag(blocks);
    std::vector<KernelAccumulator> cross(blocks);
    parallel_for_blocks(blocks, [&](std::size_t b) {
        const std::size_t end = std::min(n, (b + 1) * block_rows);
        for (std::size_t k = b * block_rows; k < end; ++k) {
            const double* x = data + k * d;
            for (std::size_t l = k + 1; l < n; ++l) {
                off[b].add(K::pair(x, data + l * d, d));
            }
            diag[b].add(K::diag(x, d));
            if constexpr (K::has_cross) {
                cross[b].add(K::cross(x, d));
            }
        }
    });

    PairSums sums;
    KernelAccumulator upper;
    for (std::size_t b = 0; b < blocks; ++b) {
        upper.merge(off[b]);
    }
    upper.scale(2.0);
    sums.pair = upper;
    for (std::size_t b = 0; b < blocks; ++b) {
        sums.pair.merge(diag[b]);
        sums.cross.merge(cross[b]);
    }
    return sums;
}

template <class K>
double squared(const PointSet& points) {
    points.require_nonempty();
    return assemble<K>(pair_sums<K>(points), points.size(), points.dim());
}

template <class K>
std::vector<double> prefix_values(const PointSet& points) {
    points.require_nonempty();
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    const double* data = points.coords().data();
    const std::size_t blocks = (n + block_rows - 1) / block_rows;

    // increment[m] = sum_{k < m} K(x_k, x_m); independent across m.
    std::vector<KernelAccumulator> increment(n);
    parallel_for_blocks(blocks, [&](std::size_t b) {
        const std::size_t end = std::min(n, (b + 1) * block_rows);
        for (std::size_t m = b * block_rows; m < end; ++m) {
            const double* x = data + m * d;
            for (std::size_t k = 0; k < m; ++k) {
                increment[m].add(K::pair(data + k * d, x, d));
            }
        }
    });

    std::vector<double> values(n);
    PairSums sums;
    for (std::size_t m = 0; m < n; ++m) {
        const double* x = data + m * d;
        sums.pair.add(2.0 * increment[m].sum());
        sums.pair.add(2.0 * increment[m].compensation());
        sums.pair.add(K::diag(x, d));
        if constexpr (K::has_cross) {
            sums.cross.add(K::cross(x, d));
        }
        values[m] = std::sqrt(std::max(0.0, assemble<K>(sums, m + 1, d)));
    }
    return values;
}

} // namespace

double l2_squared(const PointSet& points, Kind kind) {
    switch (kind) {
    case Kind::star:
        return squared<StarKernel>(points);
    case Kind::extreme:
        return squared<ExtremeKernel>(points);
    case Kind::periodic:
        return squared<PeriodicKernel>(points);
    case Kind::diaphony:
        return squared<DiaphonyKernel>(points);
    }
    throw InvalidArgument("unknown discrepancy kind");
}

double l2_discrepancy(const PointSet& points, Kind kind) { return std::sqrt(std::max(0.0, l2_squared(points, kind))); }

double star_l2(const PointSet& points) { return l2_discrepancy(points, Kind::star); }
double extreme_l2(const PointSet& points) { return l2_discrepancy(points, Kind::extreme); }
double periodic_l2(const PointSet& points) { return l2_discrepancy(points, Kind::periodic); }
double diaphony(const PointSet& points) { return l2_discrepancy(points, Kind::diaphony); }

std::vector<double> prefix_l2_values(const PointSet& points, Kind kind) {
    switch (kind) {
    case Kind::star:
        return prefix_values<StarKernel>(points);
    case Kind::extreme:
        return prefix_values<ExtremeKernel>(points);
    case Kind::periodic:
        return prefix_values<PeriodicKernel>(points);
    case Kind::diaphony:
        return prefix_values<DiaphonyKernel>(points);
    }
    throw InvalidArgument("unknown discrepancy kind");
}

TruncatedDiaphony diaphony_truncated(const PointSet& points, std::size_t cutoff) {
    points.require_nonempty();
    if (cutoff < 1) {
        throw InvalidArgument("diaphony cutoff must be >= 1");
    }
    using complex = std::complex<double>;
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    const std::size_t width = cutoff + 1;

    // phase[(j * n + k) * width + h] = exp(2 pi i h x_{k,j}), h = 0..cutoff
    std::vector<complex> phase(d * n * width);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const double x = points(k, j);
            complex* row = phase.data() + (j * n + k) * width;
            for (std::size_t h = 0; h < width; ++h) {
                const double angle = 2.0 * std::numbers::pi * frac(static_cast<double>(h) * x);
                row[h] = {std::cos(angle), std::sin(angle)};
            }
        }
    }
    auto factor = [&](std::size_t j, std::size_t k, long h) {
        const complex e = phase[(j * n + k) * width + static_cast<std::size_t>(h < 0 ? -h : h)];
        return h < 0 ? std::conj(e) : e;
    };

    // S(-h) is the conjugate of S(h): sum only over h whose first nonzero
    // component is positive and double. Work unit = (leading axis, value).
    const long span = static_cast<long>(cutoff);
    const std::size_t units = d * cutoff;
    std::vector<KernelAccumulator> partial(units);
    parallel_for_blocks(units, [&](std::size_t unit) {
        const std::size_t lead = unit / cutoff;
        const long lead_value = static_cast<long>(unit % cutoff) + 1;
        const std::size_t tail = d - lead - 1;
        std::vector<long> h(d, 0);
        h[lead] = lead_value;
        for (std::size_t j = lead + 1; j < d; ++j) {
            h[j] = -span;
        }
        while (true) {
            double weight = 1.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double a = static_cast<double>(std::max(1L, h[j] < 0 ? -h[j] : h[j]));
                weight /= a * a;
            }
            complex total{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                complex term{1.0, 0.0};
                for (std::size_t j = lead; j < d; ++j) {
                    term *= factor(j, k, h[j]);
                }
                total += term;
            }
            partial[unit].add(2.0 * weight * std::norm(total));

            std::size_t axis = 0;
            for (; axis < tail; ++axis) {
                long& c = h[d - 1 - axis];
                if (c < span) {
                    ++c;
                    break;
                }
                c = -span;
            }
            if (axis == tail) {
                break;
            }
        }
    });

    KernelAccumulator acc;
    for (const auto& p : partial) {
        acc.merge(p);
    }
    const double count = static_cast<double>(n);
    const double sum_squared = acc.value() / (count * count);

    // sum_{|h| > H} 1/h^2 <= 2/H over both signs
    KernelAccumulator inner;
    for (std::size_t h = cutoff; h >= 1; --h) {
        const double a = static_cast<double>(h);
        inner.add(2.0 / (a * a));
    }
    const double truncated_weight = 1.0 + inner.value();
    const double tail_weight = 2.0 / static_cast<double>(cutoff);
    const double bound = std::pow(truncated_weight + tail_weight, static_cast<double>(d)) -
                         std::pow(truncated_weight, static_cast<double>(d));
    return {sum_squared, std::sqrt(sum_squared), bound};
}

} // namespace disclab

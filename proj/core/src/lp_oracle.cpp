#include "disclab/lp_oracle.hpp"

#include "disclab/compensated.hpp"
#include "disclab/errors.hpp"
#include "disclab/parallel.hpp"
#include "disclab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace disclab {

PointSet random_point_set(std::size_t n, std::size_t d, std::uint64_t seed) {
    const CounterRng rng(seed);
    std::vector<double> coords(n * d);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        coords[i] = rng.uniform(i);
    }
    return PointSet(d, std::move(coords));
}

namespace {

constexpr std::uint64_t mc_block = 8192;

// Welford running moments; blocks are combined with Chan's update.
struct Moments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double y) noexcept {
        count += 1.0;
        const double delta = y - mean;
        mean += delta / count;
        m2 += delta * (y - mean);
    }

    void merge(const Moments& other) noexcept {
        if (other.count == 0.0) {
            return;
        }
        const double total = count + other.count;
        const double delta = other.mean - mean;
        mean += delta * other.count / total;
        m2 += other.m2 + delta * delta * count * other.count / total;
        count = total;
    }
};

double power_abs(double x, double p) noexcept {
    const double a = std::fabs(x);
    if (p == 1.0) {
        return a;
    }
    if (p == 2.0) {
        return a * a;
    }
    return std::pow(a, p);
}

void check_p(double p) {
    if (!(p >= 1.0)) {
        throw InvalidArgument("p must be >= 1");
    }
}

} // namespace

Estimate mc_lp(const PointSet& points, const McConfig& config) {
    points.require_nonempty();
    check_p(config.p);
    if (std::isinf(config.p)) {
        throw InvalidArgument("mc_lp does not handle p = inf; use the exact L_inf routines");
    }
    if (config.kind == Kind::diaphony) {
        throw InvalidArgument("mc_lp estimates star, extreme or periodic discrepancies only");
    }
    if (config.samples < 100) {
        throw InvalidArgument("mc_lp needs at least 100 samples");
    }

    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    const double count_n = static_cast<double>(n);
    // Coordinate-major copy so the membership test runs over contiguous data.
    std::vector<double> columns(n * d);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < d; ++j) {
            columns[j * n + k] = points(k, j);
        }
    }
    const CounterRng rng(config.seed);
    const std::uint64_t blocks = (config.samples + mc_block - 1) / mc_block;
    std::vector<Moments> moments(blocks);

    parallel_for_blocks(blocks, [&](std::size_t b) {
        std::vector<double> lower(d);
        std::vector<double> upper(d);
        std::vector<std::uint8_t> mask(n);
        const std::uint64_t end = std::min<std::uint64_t>(config.samples, (b + 1) * mc_block);
        for (std::uint64_t i = b * mc_block; i < end; ++i) {
            const std::uint64_t draw = i * 2 * d;
            double volume = 1.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double a = rng.uniform(draw + j);
                const double c = rng.uniform(draw + d + j);
                switch (config.kind) {
                case Kind::star:
                    lower[j] = 0.0;
                    upper[j] = a;
                    volume *= a;
                    break;
                case Kind::extreme:
                    lower[j] = std::min(a, c);
                    upper[j] = std::max(a, c);
                    volume *= upper[j] - lower[j];
                    break;
                default:
                    // periodic: upper[] holds the wrapped length {v - u}
                    lower[j] = a;
                    upper[j] = frac(c - a);
                    volume *= upper[j];
                    break;
                }
            }
            std::fill(mask.begin(), mask.end(), std::uint8_t{1});
            for (std::size_t j = 0; j < d; ++j) {
                const double* x = columns.data() + j * n;
                const double lo = lower[j];
                const double up = upper[j];
                if (config.kind == Kind::periodic) {
                    for (std::size_t k = 0; k < n; ++k) {
                        mask[k] &= static_cast<std::uint8_t>(frac(x[k] - lo) < up);
                    }
                } else {
                    for (std::size_t k = 0; k < n; ++k) {
                        mask[k] &= static_cast<std::uint8_t>((lo <= x[k]) & (x[k] < up));
                    }
                }
            }
            std::size_t inside = 0;
            for (std::size_t k = 0; k < n; ++k) {
                inside += mask[k];
            }
            moments[b].add(power_abs(static_cast<double>(inside) - count_n * volume, config.p));
        }
    });

    Moments total;
    for (const auto& m : moments) {
        total.merge(m);
    }
    const double samples = static_cast<double>(config.samples);
    const double variance = total.m2 / (samples - 1.0);
    const double factor = config.kind == Kind::extreme ? std::ldexp(1.0, -static_cast<int>(d)) : 1.0;
    const double integral = factor * total.mean;
    const double integral_se = factor * std::sqrt(variance / samples);
    const double inv_p = 1.0 / config.p;
    const double value = std::pow(integral, inv_p);
    const double se = integral > 0.0 ? inv_p * std::pow(integral, inv_p - 1.0) * integral_se : 0.0;

    Estimate est;
    est.kind = config.kind;
    est.p = config.p;
    est.value = value;
    est.method = Method::monte_carlo;
    est.mc = McInfo{se, config.samples, config.seed, std::string(CounterRng::name)};
    return est;
}

namespace {

// Cells of the one-dimensional local discrepancy D(t) = A([0,t)) - N t.
// Cell i covers (a_i, b_i] with count i; only cells of positive length kept.
struct Cell {
    double top;    // D at the left end, i - N a_i
    double bottom; // D at the right end, i - N b_i
    double length;
};

std::vector<Cell> cells_1d(const PointSet& points) {
    if (points.dim() != 1) {
        throw DimensionMismatch("this routine needs d = 1, got d=" + std::to_string(points.dim()));
    }
    points.require_nonempty();
    std::vector<double> sorted(points.coords().begin(), points.coords().end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double count_n = static_cast<double>(n);
    std::vector<Cell> cells;
    cells.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double a = i == 0 ? 0.0 : sorted[i - 1];
        const double b = i == n ? 1.0 : sorted[i];
        if (b > a) {
            const double count = static_cast<double>(i);
            cells.push_back({std::fma(-count_n, a, count), std::fma(-count_n, b, count), b - a});
        }
    }
    return cells;
}

} // namespace

double exact_lp_1d(const PointSet& points, Kind kind, double p) {
    check_p(p);
    if (std::isinf(p)) {
        throw InvalidArgument("exact_lp_1d needs finite p; use linf_star_1d / linf_extreme_1d");
    }
    if (kind != Kind::star && kind != Kind::extreme) {
        throw InvalidArgument("exact_lp_1d handles star and extreme only");
    }
    const std::vector<Cell> cells = cells_1d(points);
    const double count_n = static_cast<double>(points.size());

    // First and second antiderivatives of |c|^p.
    const bool small_int = p == std::floor(p) && p <= 8.0;
    auto power = [&](double a, double e) {
        if (small_int) {
            double r = 1.0;
            for (int i = 0; i < static_cast<int>(e); ++i) {
                r *= a;
            }
            return r;
        }
        return std::pow(a, e);
    };
    auto first = [&](double c) { return std::copysign(power(std::fabs(c), p + 1.0), c) / (p + 1.0); };
    auto second = [&](double c) { return power(std::fabs(c), p + 2.0) / ((p + 1.0) * (p + 2.0)); };

    if (kind == Kind::star) {
        KernelAccumulator acc;
        for (const Cell& cell : cells) {
            acc.add(first(cell.top) - first(cell.bottom));
        }
        return std::pow(std::max(0.0, acc.value() / count_n), 1.0 / p);
    }

    // For u in cell i and v in cell j > i, D(v) - D(u) is linear in both, so
    // the double integral is a second difference of the second antiderivative
    // over the four corners. Within one cell (u <= v) only the diagonal
    // corner survives.
    const std::size_t m = cells.size();
    const std::size_t blocks = (m + 63) / 64;
    std::vector<KernelAccumulator> partial(blocks);
    parallel_for_blocks(blocks, [&](std::size_t b) {
        const std::size_t end = std::min(m, (b + 1) * 64);
        for (std::size_t i = b * 64; i < end; ++i) {
            const Cell& ci = cells[i];
            partial[b].add(second(count_n * ci.length));
            for (std::size_t j = i + 1; j < m; ++j) {
                const Cell& cj = cells[j];
                const double corners = second(cj.bottom - ci.bottom) - second(cj.bottom - ci.top) -
                                       second(cj.top - ci.bottom) + second(cj.top - ci.top);
                partial[b].add(-corners);
            }
        }
    });
    KernelAccumulator acc;
    for (const auto& part : partial) {
        acc.merge(part);
    }
    return std::pow(std::max(0.0, acc.value() / (count_n * count_n)), 1.0 / p);
}

} // namespace disclab

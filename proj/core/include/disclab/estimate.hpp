#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace disclab {

enum class Kind { star, extreme, periodic, diaphony };

enum class Method { exact_closed_form, exact_piecewise, monte_carlo, grid_enum };

std::string_view to_string(Kind kind) noexcept;
std::string_view to_string(Method method) noexcept;

/// Parses "star", "extreme" (or "extr"), "periodic", "diaphony".
/// Throws InvalidArgument otherwise.
Kind parse_kind(std::string_view text);

inline constexpr double p_infinity = std::numeric_limits<double>::infinity();

/// Monte Carlo provenance attached to an Estimate.
struct McInfo {
    double stderr_value = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string rng;
};

/// A discrepancy value with the method that produced it.
///
/// `mc` is engaged iff `method == Method::monte_carlo`.
struct Estimate {
    Kind kind = Kind::star;
    double p = 2.0;
    double value = 0.0;
    Method method = Method::exact_closed_form;
    std::optional<McInfo> mc;
};

} // namespace disclab

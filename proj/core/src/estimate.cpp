#include "disclab/estimate.hpp"

#include "disclab/errors.hpp"

#include <string>

namespace disclab {

std::string_view to_string(Kind kind) noexcept {
    switch (kind) {
    case Kind::star:
        return "star";
    case Kind::extreme:
        return "extreme";
    case Kind::periodic:
        return "periodic";
    case Kind::diaphony:
        return "diaphony";
    }
    return "unknown";
}

std::string_view to_string(Method method) noexcept {
    switch (method) {
    case Method::exact_closed_form:
        return "exact-closed-form";
    case Method::exact_piecewise:
        return "exact-piecewise";
    case Method::monte_carlo:
        return "monte-carlo";
    case Method::grid_enum:
        return "grid-enum";
    }
    return "unknown";
}

Kind parse_kind(std::string_view text) {
    if (text == "star") {
        return Kind::star;
    }
    if (text == "extreme" || text == "extr") {
        return Kind::extreme;
    }
    if (text == "periodic" || text == "per") {
        return Kind::periodic;
    }
    if (text == "diaphony") {
        return Kind::diaphony;
    }
    throw InvalidArgument("unknown discrepancy kind '" + std::string(text) + "'");
}

} // namespace disclab

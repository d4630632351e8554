#include "disclab/experiments.hpp"

#include "disclab/errors.hpp"
#include "disclab/exact_l2.hpp"
#include "disclab/lp_oracle.hpp"
#include "disclab/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string_view>

namespace disclab {

bool VerdictReport::pass() const { return failures() == 0; }

std::size_t VerdictReport::failures() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return !c.pass; }));
}

double VerdictReport::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : cases) {
        m = std::min(m, c.margin);
    }
    return m;
}

VerdictCase make_case(std::string label, double lhs, double rhs) {
    VerdictCase c;
    c.label = std::move(label);
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = lhs - rhs;
    c.pass = c.margin >= -verdict_tolerance * std::max(1.0, std::fabs(rhs));
    return c;
}

VerdictReport inequality_suite(std::size_t trials, std::span<const std::size_t> dims, std::size_t n,
                               std::uint64_t seed) {
    if (trials < 1) {
        throw InvalidArgument("inequality_suite needs trials >= 1");
    }
    VerdictReport report;
    report.claim = "inequalities";
    for (const std::size_t d : dims) {
        const bool with_linf = d <= linf_enum_max_dim && n <= linf_enum_max_points;
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t trial_seed = seed + 1000003ULL * d + t;
            const PointSet points = random_point_set(n, d, trial_seed);
            auto push = [&](std::string label, double lhs, double rhs, double p) {
                VerdictCase c = make_case(std::move(label), lhs, rhs);
                c.p = p;
                c.d = d;
                c.n = n;
                c.seed = trial_seed;
                report.cases.push_back(std::move(c));
            };
            const double star = star_l2(points);
            const double extreme = extreme_l2(points);
            const double periodic = periodic_l2(points);
            push("extreme_l2 <= star_l2", star, extreme, 2.0);
            push("extreme_l2 <= periodic_l2", periodic, extreme, 2.0);
            if (with_linf) {
                const double ls = linf_discrepancy(points, Kind::star);
                const double le = linf_discrepancy(points, Kind::extreme);
                push("linf_star <= linf_extreme", le, ls, p_infinity);
                push("linf_extreme <= 2^d linf_star", std::ldexp(ls, static_cast<int>(d)), le, p_infinity);
            }
        }
    }
    return report;
}

VerdictReport lemma1_verify(const SequenceGen& seq, std::span<const std::size_t> ns) {
    VerdictReport report;
    report.claim = "lemma1";
    if (ns.empty()) {
        return report;
    }
    const std::size_t max_n = *std::max_element(ns.begin(), ns.end());
    if (max_n < 1 || *std::min_element(ns.begin(), ns.end()) < 1) {
        throw InvalidArgument("lemma1_verify needs N >= 1");
    }
    const PointSet head = prefix(seq, max_n);
    const std::vector<double> values = prefix_l2_values(head, Kind::extreme);
    const double d = static_cast<double>(seq.dim());
    for (const std::size_t n : ns) {
        const auto best = std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n));
        const double lhs = *best;
        const double rhs = std::pow(2.0, 0.5 - 1.0) * extreme_l2(lift(head, n)) - std::pow(2.0, -d / 2.0);
        VerdictCase c = make_case("N=" + std::to_string(n), lhs, rhs);
        c.d = seq.dim();
        c.n = n;
        c.witness = static_cast<std::size_t>(best - values.begin()) + 1;
        report.cases.push_back(std::move(c));
    }
    return report;
}

VerdictReport lemma1_verify(const SequenceGen& seq, std::size_t n) {
    const std::size_t ns[] = {n};
    return lemma1_verify(seq, ns);
}

VerdictReport lemma1_verify_mc(const SequenceGen& seq, std::size_t n, double p, std::uint64_t samples,
                               std::uint64_t seed) {
    if (n < 1) {
        throw InvalidArgument("lemma1_verify_mc needs N >= 1");
    }
    const PointSet head = prefix(seq, n);
    const std::size_t d = seq.dim();
    double lhs = 0.0;
    std::size_t witness = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        const PointSet part = head.prefix(m);
        double upper = 0.0;
        if (d == 1) {
            upper = exact_lp_1d(part, Kind::extreme, p);
        } else {
            const Estimate e = mc_lp(part, {samples, seed + m, Kind::extreme, p});
            upper = e.value + 3.0 * e.mc->stderr_value;
        }
        if (upper > lhs) {
            lhs = upper;
            witness = m;
        }
    }
    const Estimate lifted = mc_lp(lift(head, n), {samples, seed, Kind::extreme, p});
    const double lifted_low = std::max(0.0, lifted.value - 3.0 * lifted.mc->stderr_value);
    const double rhs = std::pow(2.0, 1.0 / p - 1.0) * lifted_low - std::pow(2.0, -static_cast<double>(d) / p);

    VerdictReport report;
    report.claim = "lemma1-mc";
    VerdictCase c = make_case("N=" + std::to_string(n), lhs, rhs);
    c.p = p;
    c.d = d;
    c.n = n;
    c.seed = seed;
    c.witness = witness;
    report.cases.push_back(std::move(c));
    return report;
}

double reference_rate(Kind kind, std::size_t n, std::size_t d) {
    const double rate = std::pow(std::log(static_cast<double>(n)), static_cast<double>(d) / 2.0);
    return kind == Kind::diaphony ? rate / static_cast<double>(n) : rate;
}

ScanResult growth_scan(const SequenceGen& seq, Kind kind, double p, std::span<const std::size_t> ns,
                       const ScanOptions& options) {
    if (ns.empty()) {
        throw InvalidArgument("growth_scan needs at least one N");
    }
    std::vector<std::size_t> grid(ns.begin(), ns.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.front() < 2) {
        throw InvalidArgument("growth_scan needs N >= 2 so that log N > 0");
    }
    const std::size_t d = seq.dim();
    const PointSet head = prefix(seq, grid.back());

    ScanResult result;
    result.kind = kind;
    result.dim = d;
    result.generic = d >= 2;
    std::vector<double> values(grid.size());
    std::vector<double> envelopes(grid.size());

    if (kind == Kind::diaphony || p == 2.0) {
        result.method = Method::exact_closed_form;
        const std::vector<double> all = prefix_l2_values(head, kind);
        double running = 0.0;
        std::size_t next = 0;
        for (std::size_t m = 1; m <= grid.back(); ++m) {
            // the diaphony envelope tracks N F_N, the quantity with a growth rate
            const double tracked = kind == Kind::diaphony ? static_cast<double>(m) * all[m - 1] : all[m - 1];
            running = std::max(running, tracked);
            if (m == grid[next]) {
                values[next] = all[m - 1];
                envelopes[next] = running;
                ++next;
            }
        }
    } else {
        double running = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const PointSet part = head.prefix(grid[i]);
            if (std::isinf(p)) {
                result.method = d == 1 ? Method::exact_piecewise : Method::grid_enum;
                values[i] = linf_discrepancy(part, kind);
            } else if (d == 1 && (kind == Kind::star || kind == Kind::extreme)) {
                result.method = Method::exact_piecewise;
                values[i] = exact_lp_1d(part, kind, p);
            } else {
                result.method = Method::monte_carlo;
                values[i] = mc_lp(part, {options.samples, options.seed + grid[i], kind, p}).value;
            }
            running = std::max(running, values[i]);
            envelopes[i] = running;
        }
    }

    result.running_max_ratio = 0.0;
    result.running_min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ScanRow row;
        row.n = grid[i];
        row.value = values[i];
        row.rate = reference_rate(kind, grid[i], d);
        row.ratio = row.value / row.rate;
        row.envelope = envelopes[i];
        result.running_max_ratio = std::max(result.running_max_ratio, row.ratio);
        result.running_min_ratio = std::min(result.running_min_ratio, row.ratio);
        result.rows.push_back(row);
    }
    return result;
}

ScanResult diaphony_scan(const SequenceGen& seq, std::span<const std::size_t> ns) {
    return growth_scan(seq, Kind::diaphony, 2.0, ns);
}

std::vector<ScanRow> envelope_rows(const ScanResult& scan) {
    std::vector<ScanRow> out = scan.rows;
    for (auto& row : out) {
        row.value = row.envelope;
        row.rate = reference_rate(scan.kind == Kind::diaphony ? Kind::star : scan.kind, row.n, scan.dim);
        row.ratio = row.value / row.rate;
    }
    return out;
}

LogFit fit_log_exponent(std::span<const ScanRow> rows) {
    if (rows.size() < 3) {
        throw InvalidArgument("fit_log_exponent needs at least 3 rows");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : rows) {
        if (row.n < 3) {
            throw InvalidArgument("fit_log_exponent needs N >= 3 so that log log N > 0");
        }
        if (!(row.value > 0.0)) {
            throw InvalidArgument("fit_log_exponent needs positive values");
        }
        xs.push_back(std::log(std::log(static_cast<double>(row.n))));
        ys.push_back(std::log(row.value));
    }
    const double count = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw InvalidArgument("fit_log_exponent: all N are equal (degenerate design)");
    }
    LogFit fit;
    fit.alpha = sxy / sxx;
    fit.intercept = my - fit.alpha * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.alpha * xs[i] + fit.intercept);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / count);
    return fit;
}

VdcConstantReport vdc_star_constant(std::size_t max_n) {
    if (max_n < 16) {
        throw InvalidArgument("vdc_star_constant needs max_n >= 16");
    }
    const PointSet head = prefix(SequenceGen::van_der_corput(2), max_n);
    const std::vector<double> values = prefix_l2_values(head, Kind::star);

    VdcConstantReport report;
    report.max_n = max_n;
    report.target = 1.0 / (6.0 * std::numbers::ln2);
    double sup = 0.0;
    std::size_t argmax = 2;
    std::size_t checkpoint = 16;
    for (std::size_t n = 2; n <= max_n; ++n) {
        const double ratio = values[n - 1] / std::log(static_cast<double>(n));
        if (ratio > sup) {
            sup = ratio;
            argmax = n;
        }
        if (n == checkpoint || n == max_n) {
            report.checkpoints.push_back({n, sup, argmax});
            if (n == checkpoint) {
                checkpoint *= 2;
            }
        }
    }
    report.sup_ratio = sup;
    report.argmax_n = argmax;
    report.within_bound = sup <= report.target + 0.005;

    // maxima of L_N over complete dyadic blocks [2^k, 2^(k+1)), 2^k >= 16
    std::vector<std::pair<std::size_t, double>> block_max;
    for (std::size_t lo = 16; 2 * lo - 1 <= max_n; lo *= 2) {
        const auto first = values.begin() + static_cast<std::ptrdiff_t>(lo - 1);
        const auto best = std::max_element(first, first + static_cast<std::ptrdiff_t>(lo));
        block_max.emplace_back(static_cast<std::size_t>(best - values.begin()) + 1, *best);
    }
    if (block_max.size() >= 2) {
        const auto [n0, l0] = block_max[block_max.size() - 2];
        const auto [n1, l1] = block_max.back();
        report.envelope_slope =
            (l1 - l0) / (std::log(static_cast<double>(n1)) - std::log(static_cast<double>(n0)));
    } else {
        report.envelope_slope = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

namespace {

std::size_t parse_count(std::string_view text, const std::string& spec) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidArgument("cannot parse '" + std::string(text) + "' in N grid '" + spec + "'");
    }
    return value;
}

double parse_real(std::string_view text, const std::string& spec) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidArgument("cannot parse '" + std::string(text) + "' in N grid '" + spec + "'");
    }
    return value;
}

} // namespace

std::vector<std::size_t> parse_n_grid(const std::string& spec) {
    const std::string_view text = spec;
    std::vector<std::size_t> out;
    const auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        std::string_view rest = text;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            out.push_back(parse_count(rest.substr(0, comma), spec));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        if (out.empty()) {
            throw InvalidArgument("empty N grid");
        }
        return out;
    }
    const auto colon = text.find(':', dots);
    const std::size_t lo = parse_count(text.substr(0, dots), spec);
    const std::size_t hi = parse_count(text.substr(dots + 2, colon == std::string_view::npos ? colon : colon - dots - 2),
                                       spec);
    if (lo < 1 || hi < lo) {
        throw InvalidArgument("N grid '" + spec + "' needs 1 <= a <= b");
    }
    std::string_view mode = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    std::string_view param;
    if (const auto eq = mode.find('='); eq != std::string_view::npos) {
        param = mode.substr(eq + 1);
        mode = mode.substr(0, eq);
    }
    if (mode.empty()) {
        for (std::size_t n = lo; n <= hi; ++n) {
            out.push_back(n);
        }
    } else if (mode == "geometric") {
        const double factor = param.empty() ? 2.0 : parse_real(param, spec);
        if (!(factor > 1.0)) {
            throw InvalidArgument("geometric factor must exceed 1");
        }
        for (double x = static_cast<double>(lo); x <= static_cast<double>(hi) + 0.5; x *= factor) {
            const auto n = static_cast<std::size_t>(std::llround(x));
            if (n <= hi && (out.empty() || out.back() != n)) {
                out.push_back(n);
            }
        }
    } else if (mode == "linear") {
        const std::size_t step = param.empty() ? 1 : parse_count(param, spec);
        if (step == 0) {
            throw InvalidArgument("linear step must be >= 1");
        }
        for (std::size_t n = lo; n <= hi; n += step) {
            out.push_back(n);
        }
    } else {
        throw InvalidArgument("unknown N grid mode '" + std::string(mode) + "'");
    }
    return out;
}

} // namespace disclab

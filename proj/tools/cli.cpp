#include "cli.hpp"

#include "disclab/csv_io.hpp"
#include "disclab/errors.hpp"
#include "disclab/exact_l2.hpp"
#include "disclab/experiments.hpp"
#include "disclab/lp_oracle.hpp"
#include "disclab/rng.hpp"
#include "disclab/sequences.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace disclab::cli {

namespace {

using json = nlohmann::ordered_json;

/// Flag combinations CLI11 cannot express; mapped to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// nlohmann prints the shortest round-trip form; every float here is
// printed with 17 significant digits instead.
void dump(const json& j, std::ostream& os, int indent, int depth) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    const char* sep = indent > 0 ? ": " : ":";
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << '{' << nl;
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) {
                os << ',' << nl;
            }
            first = false;
            os << pad << json(key).dump() << sep;
            dump(value, os, indent, depth + 1);
        }
        os << nl << close_pad << '}';
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        os << '[' << nl;
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i > 0) {
                os << ',' << nl;
            }
            os << pad;
            dump(j[i], os, indent, depth + 1);
        }
        os << nl << close_pad << ']';
        return;
    }
    case json::value_t::number_float: {
        const double x = j.get<double>();
        if (std::isfinite(x)) {
            os << format_double(x);
        } else {
            os << "null";
        }
        return;
    }
    default:
        os << j.dump();
    }
}

void write_json(const json& j, std::ostream& os, int indent) {
    dump(j, os, indent, 0);
    os << '\n';
}

json p_to_json(double p) { return std::isinf(p) ? json("inf") : json(p); }

double parse_p(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf") {
        return p_infinity;
    }
    double p = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
    if (ec != std::errc() || ptr != text.data() + text.size() || !(p >= 1.0)) {
        throw UsageError("--p must be a real >= 1 or 'inf', got '" + text + "'");
    }
    return p;
}

std::vector<std::uint32_t> parse_bases(const std::string& text) {
    std::vector<std::uint32_t> bases;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view field = rest.substr(0, comma);
        std::uint32_t b = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), b);
        if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
            throw UsageError("--bases expects a comma separated list of integers, got '" + text + "'");
        }
        bases.push_back(b);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return bases;
}

/// Generator spec shared by gen / lift / compute / oracle / scan / verify.
struct GeneratorSpec {
    std::string seq;
    std::uint32_t base = 2;
    std::string bases;

    SequenceGen make() const {
        if (seq == "vdc") {
            return SequenceGen::van_der_corput(base);
        }
        if (seq == "halton") {
            if (bases.empty()) {
                throw UsageError("--bases is required for halton");
            }
            return SequenceGen::halton(parse_bases(bases));
        }
        throw UsageError("unknown sequence '" + seq + "' (expected vdc or halton)");
    }
};

/// Exactly one of --in or a generator spec (--seq with --n).
struct InputSpec {
    std::string path;
    GeneratorSpec gen;
    std::size_t n = 0;

    PointSet load() const {
        const bool from_file = !path.empty();
        const bool from_gen = !gen.seq.empty();
        if (from_file == from_gen) {
            throw UsageError("give exactly one input: --in <file> or --seq <vdc|halton> --n <N>");
        }
        if (from_file) {
            return read_points_csv_file(path);
        }
        if (n < 1) {
            throw UsageError("--n >= 1 is required with --seq");
        }
        return prefix(gen.make(), n);
    }
};

void add_generator_flags(CLI::App* app, GeneratorSpec& gen, const std::string& kind_flag) {
    app->add_option(kind_flag, gen.seq, "sequence: vdc or halton")->check(CLI::IsMember({"vdc", "halton"}));
    app->add_option("--base", gen.base, "van der Corput base")->check(CLI::Range(2u, 1u << 20));
    app->add_option("--bases", gen.bases, "halton bases, e.g. 2,3");
}

/// Output sink: --out file or the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw Error("cannot open output file '" + path + "'");
            }
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

json estimate_json(const Estimate& e, const PointSet& points) {
    json j;
    j["kind"] = std::string(to_string(e.kind));
    j["p"] = p_to_json(e.p);
    j["method"] = std::string(to_string(e.method));
    j["value"] = e.value;
    if (e.mc) {
        j["stderr"] = e.mc->stderr_value;
        j["samples"] = e.mc->samples;
        j["seed"] = e.mc->seed;
        j["rng"] = e.mc->rng;
    }
    j["n"] = points.size();
    j["d"] = points.dim();
    return j;
}

void write_estimate(const Estimate& e, const PointSet& points, const std::string& format, std::ostream& os) {
    if (format == "json") {
        write_json(estimate_json(e, points), os, 0);
        return;
    }
    os << "kind,p,method,value,stderr,samples,seed,n,d\n";
    os << to_string(e.kind) << ',' << (std::isinf(e.p) ? "inf" : format_double(e.p)) << ',' << to_string(e.method)
       << ',' << format_double(e.value) << ',';
    if (e.mc) {
        os << format_double(e.mc->stderr_value) << ',' << e.mc->samples << ',' << e.mc->seed;
    } else {
        os << ",,";
    }
    os << ',' << points.size() << ',' << points.dim() << '\n';
}

Estimate compute_exact(const PointSet& points, Kind kind, double p) {
    Estimate e;
    e.kind = kind;
    e.p = p;
    if (kind == Kind::diaphony || p == 2.0) {
        e.method = Method::exact_closed_form;
        e.value = l2_discrepancy(points, kind);
        if (kind == Kind::diaphony) {
            e.p = 2.0;
        }
    } else if (std::isinf(p)) {
        e.method = points.dim() == 1 ? Method::exact_piecewise : Method::grid_enum;
        e.value = linf_discrepancy(points, kind);
    } else if (points.dim() == 1 && (kind == Kind::star || kind == Kind::extreme)) {
        e.method = Method::exact_piecewise;
        e.value = exact_lp_1d(points, kind, p);
    } else {
        throw InvalidArgument("no exact method for kind=" + std::string(to_string(kind)) + " p=" + format_double(p) +
                              " d=" + std::to_string(points.dim()) + "; use `disclab oracle`");
    }
    return e;
}

json verdict_json(const VerdictReport& report) {
    json j;
    j["claim"] = report.claim;
    j["pass"] = report.pass();
    j["failures"] = report.failures();
    j["cases_checked"] = report.cases.size();
    j["min_margin"] = report.min_margin();
    json cases = json::array();
    for (const auto& c : report.cases) {
        json row;
        row["label"] = c.label;
        row["lhs"] = c.lhs;
        row["rhs"] = c.rhs;
        row["margin"] = c.margin;
        row["pass"] = c.pass;
        row["p"] = p_to_json(c.p);
        row["d"] = c.d;
        row["n"] = c.n;
        row["seed"] = c.seed;
        if (c.witness) {
            row["witness_n"] = *c.witness;
        }
        cases.push_back(std::move(row));
    }
    j["cases"] = std::move(cases);
    return j;
}

json scan_json(const ScanResult& scan, const std::string& label, double p) {
    json j;
    j["sequence"] = label;
    j["kind"] = std::string(to_string(scan.kind));
    j["p"] = p_to_json(p);
    j["method"] = std::string(to_string(scan.method));
    j["generic"] = scan.generic;
    j["running_max_ratio"] = scan.running_max_ratio;
    j["running_min_ratio"] = scan.running_min_ratio;
    json rows = json::array();
    for (const auto& r : scan.rows) {
        rows.push_back({{"n", r.n}, {"value", r.value}, {"rate", r.rate}, {"ratio", r.ratio}, {"envelope", r.envelope}});
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string sequence_label(const SequenceGen& gen) {
    if (gen.is_van_der_corput()) {
        return "vdc(" + std::to_string(gen.bases()[0]) + ")";
    }
    std::string label = "halton(";
    for (std::size_t j = 0; j < gen.dim(); ++j) {
        label += (j ? "," : "") + std::to_string(gen.bases()[j]);
    }
    return label + ")";
}

// Bracket check lo <= value <= hi as two verdict cases.
void add_bracket(VerdictReport& report, const std::string& name, double value, double lo, double hi) {
    char bounds[2][32];
    std::snprintf(bounds[0], sizeof bounds[0], "%g", lo);
    std::snprintf(bounds[1], sizeof bounds[1], "%g", hi);
    report.cases.push_back(make_case(name + " >= " + bounds[0], value, lo));
    report.cases.push_back(make_case(name + " <= " + bounds[1], hi, value));
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"disclab: star, extreme, periodic L_p discrepancies and diaphony of point sets"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // gen
    GeneratorSpec gen_spec{"vdc"};
    std::size_t gen_n = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "emit a sequence prefix as CSV");
    add_generator_flags(gen, gen_spec, "--kind");
    gen->add_option("--n", gen_n, "number of terms")->required()->check(CLI::PositiveNumber);
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // lift
    InputSpec lift_in;
    lift_in.gen.seq = "";
    std::string lift_out;
    auto* lift_cmd = app.add_subcommand("lift", "emit the (d+1)-dimensional lifted set {(y_k, k/N)}");
    add_generator_flags(lift_cmd, lift_in.gen, "--kind");
    lift_cmd->add_option("--in", lift_in.path, "explicit sequence prefix (CSV)");
    lift_cmd->add_option("--n", lift_in.n, "N")->required()->check(CLI::PositiveNumber);
    lift_cmd->add_option("--out", lift_out, "output file (default stdout)");

    // compute
    InputSpec compute_in;
    std::string compute_kind;
    std::string compute_p = "2";
    std::string compute_format = "json";
    std::string compute_out;
    auto* compute = app.add_subcommand("compute", "exact discrepancy (closed form, piecewise or enumeration)");
    compute->add_option("--kind", compute_kind, "star|extreme|periodic|diaphony")
        ->required()
        ->check(CLI::IsMember({"star", "extreme", "periodic", "diaphony"}));
    compute->add_option("--p", compute_p, "2, inf, or any p >= 1 for d = 1 star/extreme");
    compute->add_option("--in", compute_in.path, "point file (CSV)");
    add_generator_flags(compute, compute_in.gen, "--seq");
    compute->add_option("--n", compute_in.n, "prefix length with --seq");
    compute->add_option("--format", compute_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    compute->add_option("--out", compute_out, "output file (default stdout)");

    // oracle
    InputSpec oracle_in;
    std::string oracle_kind;
    std::string oracle_p;
    std::uint64_t oracle_samples = 1'000'000;
    std::uint64_t oracle_seed = default_seed;
    std::string oracle_format = "json";
    std::string oracle_out;
    auto* oracle = app.add_subcommand("oracle", "Monte Carlo estimate from the definition");
    oracle->add_option("--kind", oracle_kind, "star|extreme|periodic")
        ->required()
        ->check(CLI::IsMember({"star", "extreme", "periodic"}));
    oracle->add_option("--p", oracle_p, "1 <= p < inf")->required();
    oracle->add_option("--samples", oracle_samples, "sample count (>= 100)");
    oracle->add_option("--seed", oracle_seed, "PRNG seed");
    oracle->add_option("--in", oracle_in.path, "point file (CSV)");
    add_generator_flags(oracle, oracle_in.gen, "--seq");
    oracle->add_option("--n", oracle_in.n, "prefix length with --seq");
    oracle->add_option("--format", oracle_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    oracle->add_option("--out", oracle_out, "output file (default stdout)");

    // scan
    GeneratorSpec scan_gen{"vdc"};
    std::string scan_kind = "extreme";
    std::string scan_p = "2";
    std::string scan_ns;
    std::string scan_format = "csv";
    std::string scan_out;
    std::string scan_plot;
    bool scan_envelope = false;
    std::uint64_t scan_samples = 100'000;
    std::uint64_t scan_seed = default_seed;
    auto* scan = app.add_subcommand("scan", "discrepancy of sequence prefixes over a grid of N");
    add_generator_flags(scan, scan_gen, "--seq");
    scan->add_option("--kind", scan_kind, "star|extreme|periodic|diaphony")
        ->check(CLI::IsMember({"star", "extreme", "periodic", "diaphony"}));
    scan->add_option("--p", scan_p, "2, inf, or p >= 1");
    scan->add_option("--ns", scan_ns, "N grid, e.g. 16..65536:geometric")->required();
    scan->add_option("--format", scan_format, "csv|json")->check(CLI::IsMember({"json", "csv"}));
    scan->add_option("--out", scan_out, "output file (default stdout)");
    scan->add_option("--plot-data", scan_plot, "write reference curves CSV to this file");
    scan->add_flag("--envelope", scan_envelope, "append the running-maximum column");
    scan->add_option("--samples", scan_samples, "Monte Carlo samples for p != 2, inf in d >= 2");
    scan->add_option("--seed", scan_seed, "PRNG seed");

    // verify
    std::string suite;
    std::string verify_out;
    GeneratorSpec verify_gen{"vdc"};
    std::size_t verify_n = 0;
    std::size_t verify_trials = 1000;
    std::size_t verify_points = 32;
    std::string verify_dims = "1,2";
    std::string verify_p = "2";
    std::string verify_ns;
    std::uint64_t verify_samples = 100'000;
    std::uint64_t verify_seed = default_seed;
    auto* verify = app.add_subcommand("verify", "check inequalities and growth claims, exit 3 on failure");
    verify->add_option("--suite", suite, "inequalities|lemma1|vdc-constant|growth|diaphony")
        ->required()
        ->check(CLI::IsMember({"inequalities", "lemma1", "vdc-constant", "growth", "diaphony"}));
    verify->add_option("--out", verify_out, "report file (default stdout)");
    add_generator_flags(verify, verify_gen, "--seq");
    verify->add_option("--n", verify_n, "lemma1: largest N; vdc-constant: max N");
    verify->add_option("--trials", verify_trials, "inequalities: trials per dimension");
    verify->add_option("--points", verify_points, "inequalities: points per set");
    verify->add_option("--dims", verify_dims, "inequalities: dimensions, e.g. 1,2");
    verify->add_option("--p", verify_p, "lemma1: p (p != 2 uses Monte Carlo)");
    verify->add_option("--ns", verify_ns, "growth/diaphony: N grid");
    verify->add_option("--samples", verify_samples, "Monte Carlo samples");
    verify->add_option("--seed", verify_seed, "PRNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage_error;
    }

    try {
        if (gen->parsed()) {
            const PointSet points = prefix(gen_spec.make(), gen_n);
            Sink sink(gen_out, out);
            write_points_csv(sink.get(), points);
            return exit_ok;
        }
        if (lift_cmd->parsed()) {
            PointSet lifted(1);
            if (lift_in.path.empty()) {
                if (lift_in.gen.seq.empty()) {
                    lift_in.gen.seq = "vdc";
                }
                lifted = lift(lift_in.gen.make(), lift_in.n);
            } else {
                if (!lift_in.gen.seq.empty()) {
                    throw UsageError("give either --in or --kind for lift, not both");
                }
                lifted = lift(read_points_csv_file(lift_in.path), lift_in.n);
            }
            Sink sink(lift_out, out);
            write_points_csv(sink.get(), lifted);
            return exit_ok;
        }
        if (compute->parsed()) {
            const PointSet points = compute_in.load();
            points.require_nonempty();
            const Estimate e = compute_exact(points, parse_kind(compute_kind), parse_p(compute_p));
            Sink sink(compute_out, out);
            write_estimate(e, points, compute_format, sink.get());
            return exit_ok;
        }
        if (oracle->parsed()) {
            const PointSet points = oracle_in.load();
            const double p = parse_p(oracle_p);
            if (std::isinf(p)) {
                throw UsageError("oracle needs finite p; use `compute --p inf`");
            }
            const Estimate e = mc_lp(points, {oracle_samples, oracle_seed, parse_kind(oracle_kind), p});
            Sink sink(oracle_out, out);
            write_estimate(e, points, oracle_format, sink.get());
            return exit_ok;
        }
        if (scan->parsed()) {
            const SequenceGen seq = scan_gen.make();
            const double p = parse_p(scan_p);
            const ScanResult result =
                growth_scan(seq, parse_kind(scan_kind), p, parse_n_grid(scan_ns), {scan_samples, scan_seed});
            Sink sink(scan_out, out);
            if (scan_format == "json") {
                write_json(scan_json(result, sequence_label(seq), p), sink.get(), 2);
            } else {
                std::ostream& os = sink.get();
                os << "N,value,rate,ratio" << (scan_envelope ? ",envelope" : "") << '\n';
                for (const auto& r : result.rows) {
                    os << r.n << ',' << format_double(r.value) << ',' << format_double(r.rate) << ','
                       << format_double(r.ratio);
                    if (scan_envelope) {
                        os << ',' << format_double(r.envelope);
                    }
                    os << '\n';
                }
            }
            if (!scan_plot.empty()) {
                std::ofstream plot(scan_plot);
                if (!plot) {
                    throw Error("cannot open plot data file '" + scan_plot + "'");
                }
                plot << "N,log_n_pow_half_d,log_n,sqrt_log_n\n";
                for (const auto& r : result.rows) {
                    const double ln = std::log(static_cast<double>(r.n));
                    plot << r.n << ',' << format_double(std::pow(ln, static_cast<double>(seq.dim()) / 2.0)) << ','
                         << format_double(ln) << ',' << format_double(std::sqrt(ln)) << '\n';
                }
            }
            return exit_ok;
        }
        if (verify->parsed()) {
            json report;
            report["suite"] = suite;
            VerdictReport verdict;
            if (suite == "inequalities") {
                std::vector<std::size_t> dims;
                for (const auto b : parse_bases(verify_dims)) {
                    dims.push_back(b);
                }
                verdict = inequality_suite(verify_trials, dims, verify_points, verify_seed);
            } else if (suite == "lemma1") {
                const SequenceGen seq = verify_gen.make();
                const std::size_t n = verify_n == 0 ? 256 : verify_n;
                const double p = parse_p(verify_p);
                report["sequence"] = sequence_label(seq);
                if (p == 2.0) {
                    std::vector<std::size_t> ns(n);
                    for (std::size_t i = 0; i < n; ++i) {
                        ns[i] = i + 1;
                    }
                    verdict = lemma1_verify(seq, ns);
                } else {
                    if (std::isinf(p)) {
                        throw UsageError("lemma1 supports finite p only");
                    }
                    verdict = lemma1_verify_mc(seq, n, p, verify_samples, verify_seed);
                }
            } else if (suite == "vdc-constant") {
                const std::size_t n = verify_n == 0 ? 16384 : verify_n;
                const VdcConstantReport vdc = vdc_star_constant(n);
                verdict.claim = "vdc-constant";
                VerdictCase upper = make_case("sup L/log N <= 1/(6 log 2) + 0.005", vdc.target + 0.005, vdc.sup_ratio);
                verdict.cases.push_back(upper);
                if (vdc.checkpoints.size() >= 2) {
                    verdict.cases.push_back(make_case("running sup is nondecreasing", vdc.checkpoints.back().sup_ratio,
                                                      vdc.checkpoints.front().sup_ratio));
                }
                report["max_n"] = vdc.max_n;
                report["sup_ratio"] = vdc.sup_ratio;
                report["argmax_n"] = vdc.argmax_n;
                report["target"] = vdc.target;
                report["envelope_slope"] = vdc.envelope_slope;
                json cps = json::array();
                for (const auto& c : vdc.checkpoints) {
                    cps.push_back({{"max_n", c.max_n}, {"sup_ratio", c.sup_ratio}, {"argmax_n", c.argmax_n}});
                }
                report["checkpoints"] = std::move(cps);
            } else {
                const SequenceGen seq = verify_gen.make();
                const bool dia = suite == "diaphony";
                const std::string grid = !verify_ns.empty() ? verify_ns : (dia ? "16..16384:geometric" : "64..65536:geometric");
                const auto ns = parse_n_grid(grid);
                report["sequence"] = sequence_label(seq);
                verdict.claim = suite;
                json fits;
                const std::vector<Kind> kinds = dia ? std::vector<Kind>{Kind::diaphony}
                                                    : std::vector<Kind>{Kind::extreme, Kind::star, Kind::diaphony};
                for (const Kind kind : kinds) {
                    const ScanResult result = growth_scan(seq, kind, 2.0, ns);
                    const LogFit fit = fit_log_exponent(envelope_rows(result));
                    const std::string name = kind == Kind::diaphony ? "N F_N" : std::string(to_string(kind)) + "_l2";
                    fits[name] = {{"alpha", fit.alpha}, {"intercept", fit.intercept}, {"residual", fit.residual},
                                  {"running_max_ratio", result.running_max_ratio}};
                    const bool star = kind == Kind::star;
                    add_bracket(verdict, name + " envelope exponent", fit.alpha, star ? 0.9 : 0.4, star ? 1.1 : 0.6);
                    verdict.cases.push_back(make_case(name + " running max ratio > 0", result.running_max_ratio, 0.0));
                    verdict.cases.back().pass = result.running_max_ratio > 0.0;
                }
                report["fits"] = std::move(fits);
            }
            report["pass"] = verdict.pass();
            report["verdict"] = verdict_json(verdict);
            Sink sink(verify_out, out);
            write_json(report, sink.get(), 2);
            return verdict.pass() ? exit_ok : exit_verdict_failed;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_domain_error;
    }
    return exit_usage_error;
}

} // namespace disclab::cli

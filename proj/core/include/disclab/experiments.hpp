#pragma once

#include "disclab/estimate.hpp"
#include "disclab/sequences.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace disclab {

/// One checked inequality lhs >= rhs - tolerance.
struct VerdictCase {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    /// lhs - rhs
    double margin = 0.0;
    bool pass = false;
    double p = 2.0;
    std::size_t d = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    /// Prefix length realising the maximum in the lifting check.
    std::optional<std::size_t> witness;
};

struct VerdictReport {
    std::string claim;
    std::vector<VerdictCase> cases;

    bool pass() const;
    std::size_t failures() const;
    /// Smallest margin over all cases (+inf when empty).
    double min_margin() const;
};

/// Relative tolerance of every inequality check: pass iff
/// lhs >= rhs - 1e-9 * max(1, |rhs|).
inline constexpr double verdict_tolerance = 1e-9;

VerdictCase make_case(std::string label, double lhs, double rhs);

/// Draws `trials` seeded-uniform N-point sets for each dimension in `dims`
/// and checks extreme_l2 <= star_l2, extreme_l2 <= periodic_l2 and, for
/// d <= 2 and N <= 64, linf_star <= linf_extreme <= 2^d linf_star.
/// Trial t in dimension d uses seed `seed + 1000003 * d + t`.
VerdictReport inequality_suite(std::size_t trials, std::span<const std::size_t> dims,
                               std::size_t n, std::uint64_t seed);

/// Transference check at p = 2 for each N in `ns`:
///   lhs = max_{n <= N} extreme_l2(prefix(S, n))
///   rhs = 2^(1/2 - 1) extreme_l2(lift(S, N)) - 2^(-d/2)
/// Both sides are exact closed forms.
VerdictReport lemma1_verify(const SequenceGen& seq, std::span<const std::size_t> ns);
VerdictReport lemma1_verify(const SequenceGen& seq, std::size_t n);

/// Monte Carlo variant for p != 2. Each side is widened by three standard
/// errors in its own favour: pass iff lhs + 3 se >= rhs - 3 se.
VerdictReport lemma1_verify_mc(const SequenceGen& seq, std::size_t n, double p,
                               std::uint64_t samples, std::uint64_t seed);

struct ScanRow {
    std::size_t n = 0;
    double value = 0.0;
    /// (log N)^(d/2), divided by N for the diaphony.
    double rate = 0.0;
    double ratio = 0.0;
    /// Running maximum over every evaluated prefix length n' <= n (for p = 2
    /// that is all n' in [1, n]) of value, or of n' F_n' for the diaphony.
    double envelope = 0.0;
};

struct ScanOptions {
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 0;
};

struct ScanResult {
    Kind kind = Kind::star;
    std::size_t dim = 1;
    std::vector<ScanRow> rows;
    Method method = Method::exact_closed_form;
    double running_max_ratio = 0.0;
    double running_min_ratio = 0.0;
    /// Halton in d >= 2 carries no optimality claim.
    bool generic = false;
};

double reference_rate(Kind kind, std::size_t n, std::size_t d);

/// Discrepancy of the prefixes of `seq` at every N in `ns` (all N >= 2).
/// p = 2 uses the exact closed forms (one pass for all prefixes), p = inf the
/// exact L_inf routines, other p exact_lp_1d in d = 1 and mc_lp otherwise.
/// Kind::diaphony ignores p.
ScanResult growth_scan(const SequenceGen& seq, Kind kind, double p,
                       std::span<const std::size_t> ns, const ScanOptions& options = {});

ScanResult diaphony_scan(const SequenceGen& seq, std::span<const std::size_t> ns);

/// Rows whose value is the envelope column and whose rate is (log N)^(d/2),
/// ready for fit_log_exponent.
std::vector<ScanRow> envelope_rows(const ScanResult& scan);

struct LogFit {
    double alpha = 0.0;
    double intercept = 0.0;
    /// RMS residual in log-value space.
    double residual = 0.0;
};

/// Least squares fit of log(value) = alpha * log(log N) + c. Needs >= 3 rows,
/// N >= 3, value > 0 and at least two distinct N.
LogFit fit_log_exponent(std::span<const ScanRow> rows);

struct VdcCheckpoint {
    std::size_t max_n = 0;
    double sup_ratio = 0.0;
    std::size_t argmax_n = 0;
};

struct VdcConstantReport {
    std::size_t max_n = 0;
    /// sup over 2 <= N <= max_n of star_l2 / log N
    double sup_ratio = 0.0;
    std::size_t argmax_n = 0;
    /// 1 / (6 log 2)
    double target = 0.0;
    /// Slope of L_N against log N between the maxima of L_N over the last two
    /// dyadic blocks [2^k, 2^(k+1)); an estimate of the limsup that does not
    /// see the additive constant in L_N.
    double envelope_slope = 0.0;
    /// Running sup at max_n and at every power of two >= 16 below it.
    std::vector<VdcCheckpoint> checkpoints;
    /// sup_ratio <= target + 0.005
    bool within_bound = false;
};

/// Star L2 discrepancy of every van der Corput (base 2) prefix up to max_n,
/// O(max_n^2) through incremental pair updates. max_n >= 16.
VdcConstantReport vdc_star_constant(std::size_t max_n);

/// `a..b:geometric` (factor 2), `a..b:geometric=<factor>`, `a..b:linear=<step>`,
/// `a..b` (every integer) or a comma separated list.
std::vector<std::size_t> parse_n_grid(const std::string& spec);

} // namespace disclab

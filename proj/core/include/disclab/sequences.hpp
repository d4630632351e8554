#pragma once

#include "disclab/point_set.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace disclab {

/// Largest admissible sequence index (exclusive); keeps radical inverse
/// digits exact in double precision.
inline constexpr std::uint64_t max_sequence_index = std::uint64_t{1} << 53;

/// Base-b radical inverse: for k = sum a_i b^i returns sum a_i b^(-i-1).
/// Exact when b is a power of two.
double radical_inverse(std::uint64_t k, std::uint32_t base);

/// Deterministic infinite sequence in [0,1)^d. Van der Corput is the
/// one-dimensional Halton sequence, so both share this type.
class SequenceGen {
public:
    static SequenceGen van_der_corput(std::uint32_t base = 2);
    /// Bases must be >= 2 and pairwise coprime.
    static SequenceGen halton(std::vector<std::uint32_t> bases);

    std::size_t dim() const noexcept { return bases_.size(); }
    std::span<const std::uint32_t> bases() const noexcept { return bases_; }
    bool is_van_der_corput() const noexcept { return vdc_; }

    /// Writes y_k into out (size dim()).
    void term(std::uint64_t k, std::span<double> out) const;
    std::vector<double> term(std::uint64_t k) const;

private:
    SequenceGen(std::vector<std::uint32_t> bases, bool vdc);

    std::vector<std::uint32_t> bases_;
    bool vdc_;
};

/// First n terms {y_0, ..., y_{n-1}} in generator order.
PointSet prefix(const SequenceGen& gen, std::size_t n);

/// The (d+1)-dimensional set {(y_k, k/n) : 0 <= k < n}.
PointSet lift(const SequenceGen& gen, std::size_t n);

/// Same construction from an explicit sequence prefix; uses its first n
/// points, so `sequence.size() >= n` is required.
PointSet lift(const PointSet& sequence, std::size_t n);

} // namespace disclab

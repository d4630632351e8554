#include "disclab/sequences.hpp"

#include "disclab/errors.hpp"

#include <numeric>
#include <string>

namespace disclab {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t reverse_bits(std::uint64_t x) noexcept {
    x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1);
    x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
    x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
    return __builtin_bswap64(x);
}

void check_index(std::uint64_t k) {
    if (k >= max_sequence_index) {
        throw InvalidArgument("sequence index " + std::to_string(k) + " exceeds 2^53");
    }
}

} // namespace

double radical_inverse(std::uint64_t k, std::uint32_t base) {
    if (base < 2) {
        throw InvalidArgument("radical inverse base must be >= 2");
    }
    check_index(k);
    if (base == 2) {
        // k < 2^53, so the low 11 bits of the reversal are zero.
        return static_cast<double>(reverse_bits(k) >> 11) * 0x1.0p-53;
    }
    // Reversed digits over b^m; b^m <= b * k < 2^85 fits in 128 bits.
    u128 reversed = 0;
    u128 scale = 1;
    while (k > 0) {
        reversed = reversed * base + k % base;
        scale *= base;
        k /= base;
    }
    return static_cast<double>(reversed) / static_cast<double>(scale);
}

SequenceGen::SequenceGen(std::vector<std::uint32_t> bases, bool vdc) : bases_(std::move(bases)), vdc_(vdc) {}

SequenceGen SequenceGen::van_der_corput(std::uint32_t base) {
    if (base < 2) {
        throw InvalidArgument("van der Corput base must be >= 2");
    }
    return SequenceGen({base}, true);
}

SequenceGen SequenceGen::halton(std::vector<std::uint32_t> bases) {
    if (bases.empty()) {
        throw InvalidArgument("halton needs at least one base");
    }
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (bases[i] < 2) {
            throw InvalidArgument("halton base " + std::to_string(bases[i]) + " must be >= 2");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (std::gcd(bases[i], bases[j]) != 1) {
                throw InvalidArgument("halton bases " + std::to_string(bases[j]) + " and " +
                                      std::to_string(bases[i]) + " are not coprime");
            }
        }
    }
    return SequenceGen(std::move(bases), false);
}

void SequenceGen::term(std::uint64_t k, std::span<double> out) const {
    if (out.size() != bases_.size()) {
        throw DimensionMismatch("term buffer has wrong dimension");
    }
    for (std::size_t j = 0; j < bases_.size(); ++j) {
        out[j] = radical_inverse(k, bases_[j]);
    }
}

std::vector<double> SequenceGen::term(std::uint64_t k) const {
    std::vector<double> out(bases_.size());
    term(k, out);
    return out;
}

PointSet prefix(const SequenceGen& gen, std::size_t n) {
    PointSet out(gen.dim());
    std::vector<double> y(gen.dim());
    for (std::size_t k = 0; k < n; ++k) {
        gen.term(k, y);
        out.push_back(y);
    }
    return out;
}

PointSet lift(const PointSet& sequence, std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("lift needs N >= 1");
    }
    if (sequence.size() < n) {
        throw InvalidArgument("lift needs " + std::to_string(n) + " sequence terms, got " +
                              std::to_string(sequence.size()));
    }
    const std::size_t d = sequence.dim();
    PointSet out(d + 1);
    std::vector<double> x(d + 1);
    for (std::size_t k = 0; k < n; ++k) {
        const auto y = sequence.point(k);
        std::copy(y.begin(), y.end(), x.begin());
        x[d] = static_cast<double>(k) / static_cast<double>(n);
        out.push_back(x);
    }
    return out;
}

PointSet lift(const SequenceGen& gen, std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("lift needs N >= 1");
    }
    return lift(prefix(gen, n), n);
}

} // namespace disclab

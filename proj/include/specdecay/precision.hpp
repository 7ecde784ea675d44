#ifndef SPECDECAY_PRECISION_HPP
#define SPECDECAY_PRECISION_HPP

#include "specdecay/real.hpp"

#include <cstdint>
#include <stdexcept>

namespace specdecay {

// Shared context for all computations: binary working precision and the seed
// feeding every stochastic routine. Error bounds reported by an operation are
// expressed relative to this context.
struct PrecisionContext {
    unsigned bits = 256;
    std::uint64_t seed = 1;

    PrecisionContext() = default;
    PrecisionContext(unsigned bits_, std::uint64_t seed_) : bits(bits_), seed(seed_) {
        if (bits < 64) throw std::invalid_argument("PrecisionContext: bits must be >= 64");
    }

    mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(bits); }

    Real real(double x = 0.0) const { return Real(x, prec()); }
    Real real(long x) const { return Real(x, prec()); }

    // 2^(-bits/k) at low precision, for tolerance thresholds.
    Real eps_pow(int denom) const { return Real::two_pow(-static_cast<long>(bits) / denom, 64); }

    // Number of decimal digits that round-trip the working precision.
    int out_digits() const { return static_cast<int>(bits * 0.302) + 1; }
};

// Precision used for error-bound bookkeeping: bounds need range, not digits.
inline constexpr mpfr_prec_t kBoundPrec = 64;

inline Real bound(double x = 0.0) { return Real(x, kBoundPrec); }

}  // namespace specdecay

#endif

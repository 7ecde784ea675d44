#ifndef SPECDECAY_RNG_HPP
#define SPECDECAY_RNG_HPP

#include "specdecay/cplx.hpp"
#include "specdecay/precision.hpp"

#include <cstdint>
#include <optional>

namespace specdecay {

// Counter-based generator: value i of stream `seed` is splitmix64 applied to
// seed + i*gamma. Stateless in spirit, so draws are reproducible across
// implementations and independent of evaluation order.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + counter * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(splitmix64_at(seed, stream * 0x632BE59BD9B4E019ULL + 1)) {}

    std::uint64_t next_u64() { return splitmix64_at(seed_, counter_++); }

    // Uniform in [0,1) with the full precision's worth of random bits.
    Real uniform(mpfr_prec_t prec) {
        long words = (prec + 63) / 64;
        Real x(0.0, prec);
        for (long w = 0; w < words; ++w) {
            Real part(prec);
            mpfr_set_uj(part.raw(), next_u64(), MPFR_RNDN);
            part.mul_2si(-64 * (w + 1));
            x += part;
        }
        return x;
    }

    // Standard normal via Box-Muller (the fixed published transform).
    Real gaussian(mpfr_prec_t prec) {
        if (have_spare_) {
            have_spare_ = false;
            Real g = *spare_;
            spare_.reset();
            return g;
        }
        Real u1 = uniform(prec);
        Real u2 = uniform(prec);
        // Guard against u1 == 0: shift by one ulp-scale amount.
        if (u1.is_zero()) u1 = Real::two_pow(-static_cast<long>(prec), prec);
        Real m = sqrt(Real(-2L, prec) * log(u1));
        Real ang = Real::pi(prec) * 2L * u2;
        Real s(prec), c(prec);
        sin_cos(s, c, ang);
        spare_.emplace(m * s);
        have_spare_ = true;
        return m * c;
    }

    Cplx gaussian_cplx(mpfr_prec_t prec) {
        Real re = gaussian(prec);
        Real im = gaussian(prec);
        return {std::move(re), std::move(im)};
    }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    std::optional<Real> spare_;
};

}  // namespace specdecay

#endif

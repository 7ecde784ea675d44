#ifndef SPECDECAY_SYMBOLS_HPP
#define SPECDECAY_SYMBOLS_HPP

#include "specdecay/series.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace specdecay {

// Analytic self-map of the disk with evaluator, analytic derivative and
// metadata. Immutable after construction; evaluation is pure.
struct Symbol {
    std::string name;
    Evaluator eval;
    Evaluator deriv;
    bool fixes_origin = false;
    bool univalent = false;      // asserted, not proven
    bool sup_norm_lt_one = false;

    Cplx operator()(const Cplx& z) const { return eval(z); }
};

// Cusp map: conformal onto a region with an exponentially thin cusp at 1.
// Chain: half-disk map chi0, then log, affine, reciprocal, reflection; the
// normalizing constant a = 1 - (2/pi) log(sqrt(2)-1) makes chi(0) = 0.
Symbol cusp(const PrecisionContext& ctx);

// Lens map ((1+z)^t - (1-z)^t) / ((1+z)^t + (1-z)^t), 0 < t < 1.
Symbol lens(double theta, const PrecisionContext& ctx);

// Disk automorphism (a - z)/(1 - conj(a) z).
Symbol automorphism(const Cplx& a, const PrecisionContext& ctx);

// The hyperbolic automorphism (2z+1)/(z+2) fixing -1 and 1.
Symbol half_plane_auto(const PrecisionContext& ctx);

enum class ShapiroTaylorVariant { LogLog, Power };

struct ShapiroTaylorParams {
    ShapiroTaylorVariant variant = ShapiroTaylorVariant::LogLog;
    double p = 2.0;   // Power variant exponent
    double s = 1.0;   // Power variant log-log exponent, needs s > 1/p
    double eps = 0.01;
};

// exp(-f(g(z))) with f(w) = w log(-log w) or w (-log w)^(2/p) (log(-log w))^s
// and g the conformal map onto {Re > 0, |w| < eps} with g(1) = 0. Re f > 0 is
// validated on a polar grid of the target region at construction.
Symbol shapiro_taylor(const ShapiroTaylorParams& params, const PrecisionContext& ctx);

// The half-plane-to-V_eps chain used by the Shapiro-Taylor maps, exposed for
// direct checks: g(1) = 0, g'(1) = -eps/4.
Cplx shapiro_taylor_g(const Cplx& z, double eps, const PrecisionContext& ctx);

Symbol scale_map(double r, const PrecisionContext& ctx);      // z -> r z, r in (0,1]
Symbol monomial_map(long m, const PrecisionContext& ctx);     // z -> z^m, m >= 1
Symbol blaschke(const std::vector<Cplx>& zeros, const PrecisionContext& ctx);

// phi_{phi(0)} composed with s: fixes the origin; spectra of the original and
// normalized operators differ at most by the norm of the automorphism factor.
Symbol normalize(const Symbol& s, const PrecisionContext& ctx);

// Taylor coefficients through Cauchy quadrature with B = 1. For origin-fixing
// symbols the constant term is pinned to an exact zero and its computed
// magnitude folded into the certificate, preserving exact triangularity
// downstream.
PowerSeries taylor(const Symbol& s, std::size_t n, const PrecisionContext& ctx,
                   long target_log2_eps = 0);

// Cusp coefficients by the explicit series chain (sqrt/log/divide
// recurrences); an oracle independent of the quadrature route.
PowerSeries cusp_series_via_chain(std::size_t n, const PrecisionContext& ctx);

// |phi| < 1 sampled on a 256-point interior grid; throws on violation.
void validate_self_map(const Symbol& s, const PrecisionContext& ctx);

}  // namespace specdecay

#endif

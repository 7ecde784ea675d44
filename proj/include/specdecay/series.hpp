#ifndef SPECDECAY_SERIES_HPP
#define SPECDECAY_SERIES_HPP

#include "specdecay/cplx.hpp"
#include "specdecay/precision.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace specdecay {

// Truncated power series c_0..c_N with a uniform per-coefficient error bound.
// Exact zeros are stored as true zeros; arithmetic preserves them, which keeps
// operator matrices built from origin-fixing symbols exactly triangular.
struct PowerSeries {
    std::vector<Cplx> coeffs;
    Real coeff_error = bound(0.0);

    std::size_t trunc_order() const { return coeffs.size() - 1; }
    mpfr_prec_t prec() const { return coeffs.empty() ? 64 : coeffs[0].prec(); }

    std::size_t lead() const {  // index of first non-exact-zero coefficient
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            if (!coeffs[k].is_zero()) return k;
        return coeffs.size();
    }

    Cplx eval(const Cplx& z) const;

    static PowerSeries zero(std::size_t n, mpfr_prec_t prec);
    static PowerSeries constant(const Cplx& c, std::size_t n);
    static PowerSeries identity(std::size_t n, mpfr_prec_t prec);  // z
};

using Evaluator = std::function<Cplx(const Cplx&)>;

// Quadrature schedule for Taylor extraction: radius r = 7/8 and enough points
// to push the aliasing certificate below 2^(target_log2_eps).
struct QuadSpec {
    double r = 0.875;
    long points = 0;
};
QuadSpec default_quad(std::size_t n, long target_log2_eps);

// c_k = r^{-k} (1/M) sum_j f(r w^j) w^{-jk}. The aliasing identity gives the
// certificate B * r^(M-N) / (1 - r^M) when |f| <= B on the closed disk.
PowerSeries coeffs_via_cauchy(const Evaluator& f, std::size_t n, double r, long m,
                              const PrecisionContext& ctx, double sup_bound = 1.0);

PowerSeries series_multiply(const PowerSeries& a, const PowerSeries& b, std::size_t n);
PowerSeries series_power(const PowerSeries& a, std::size_t j, std::size_t n);

// Square-and-multiply variant for a single large power.
PowerSeries series_power_binary(const PowerSeries& a, std::size_t j, std::size_t n);

// All powers a^0..a^jmax at truncation n, sharing the incremental chain.
std::vector<PowerSeries> series_power_table(const PowerSeries& a, std::size_t jmax, std::size_t n);

// Horner composition outer(inner). The outer polynomial stands for a function
// analytic on |w| < outer_radius; an inner constant term at or beyond that
// radius is a domain error.
PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner, std::size_t n,
                           double outer_radius = 1.0);

// Elementary series transforms via exact coefficient recurrences.
PowerSeries series_add(const PowerSeries& a, const PowerSeries& b, std::size_t n);
PowerSeries series_scale(const PowerSeries& a, const Cplx& s);
PowerSeries series_shift_const(const PowerSeries& a, const Cplx& c);  // a + c
PowerSeries series_divide(const PowerSeries& num, const PowerSeries& den, std::size_t n);
PowerSeries series_log(const PowerSeries& a, std::size_t n);   // principal branch at c_0
PowerSeries series_sqrt(const PowerSeries& a, std::size_t n);  // principal branch at c_0
PowerSeries series_derivative(const PowerSeries& a);

}  // namespace specdecay

#endif

#include "specdecay/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specdecay {

namespace {

Real bump(Real b) {  // safety factor absorbing the bound arithmetic's own rounding
    b *= 1.000000001;
    return b;
}

}  // namespace

// Upward-rounded |z| at bound precision (local helper, matrix.hpp has its own).
static Real abs_up(const Cplx& z) {
    Real r(kBoundPrec);
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDU);
    return r;
}

Cplx PowerSeries::eval(const Cplx& z) const {
    Cplx acc(prec());
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * z;
        acc += coeffs[k];
    }
    return acc;
}

PowerSeries PowerSeries::zero(std::size_t n, mpfr_prec_t prec) {
    PowerSeries s;
    s.coeffs.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) s.coeffs.emplace_back(prec);
    return s;
}

PowerSeries PowerSeries::constant(const Cplx& c, std::size_t n) {
    PowerSeries s = zero(n, c.prec());
    s.coeffs[0] = c;
    return s;
}

PowerSeries PowerSeries::identity(std::size_t n, mpfr_prec_t prec) {
    PowerSeries s = zero(n, prec);
    if (n >= 1) s.coeffs[1] = Cplx(1.0, 0.0, prec);
    return s;
}

QuadSpec default_quad(std::size_t n, long target_log2_eps) {
    QuadSpec q;
    double ln_inv_r = -std::log(q.r);
    double need = (static_cast<double>(n) * ln_inv_r - static_cast<double>(target_log2_eps) * std::log(2.0)) / ln_inv_r;
    q.points = std::max<long>(4 * static_cast<long>(n) + 4, static_cast<long>(std::ceil(need)) + 1);
    return q;
}

PowerSeries coeffs_via_cauchy(const Evaluator& f, std::size_t n, double r, long m,
                              const PrecisionContext& ctx, double sup_bound) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("coeffs_via_cauchy: r outside (0,1)");
    if (m <= static_cast<long>(n)) throw std::invalid_argument("coeffs_via_cauchy: need M > N");
    const mpfr_prec_t prec = ctx.prec();
    const Real rr(r, prec);

    // sample points r*w^j and values
    std::vector<Cplx> roots, vals;
    roots.reserve(m);
    for (long j = 0; j < m; ++j) roots.push_back(unit_root(j, m, prec));
    vals.reserve(m);
    for (long j = 0; j < m; ++j) vals.emplace_back(prec);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long j = 0; j < m; ++j) vals[j] = f(roots[j] * rr);

    PowerSeries out = PowerSeries::zero(n, prec);
    const long nn = static_cast<long>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long k = 0; k <= nn; ++k) {
        Cplx acc(prec);
        for (long j = 0; j < m; ++j) {
            long idx = static_cast<long>((static_cast<unsigned long long>(j) * k) % static_cast<unsigned long long>(m));
            // accumulate conj(w^{jk}) * f_j
            acc.re.add_prod(roots[idx].re, vals[j].re);
            acc.re.add_prod(roots[idx].im, vals[j].im);
            acc.im.add_prod(roots[idx].re, vals[j].im);
            acc.im.sub_prod(roots[idx].im, vals[j].re);
        }
        Real scale = pow(rr, -k) / m;
        out.coeffs[k] = acc * scale;
    }

    // aliasing certificate + DFT rounding
    Real rb = bound(r);
    Real rm = pow(rb, m);
    Real alias = bound(sup_bound) * pow(rb, m - static_cast<long>(n)) / (bound(1.0) - rm);
    Real rounding = bound(static_cast<double>(m) * sup_bound) * pow(rb, -static_cast<long>(n)) *
                    Real::two_pow(-static_cast<long>(prec) + 4, kBoundPrec);
    out.coeff_error = bump(alias + rounding);
    return out;
}

PowerSeries series_add(const PowerSeries& a, const PowerSeries& b, std::size_t n) {
    PowerSeries out = PowerSeries::zero(n, std::max(a.prec(), b.prec()));
    for (std::size_t k = 0; k <= n; ++k) {
        if (k < a.coeffs.size()) out.coeffs[k] += a.coeffs[k];
        if (k < b.coeffs.size()) out.coeffs[k] += b.coeffs[k];
    }
    out.coeff_error = bump(a.coeff_error + b.coeff_error);
    return out;
}

PowerSeries series_scale(const PowerSeries& a, const Cplx& s) {
    PowerSeries out = a;
    for (auto& c : out.coeffs) c = c * s;
    out.coeff_error = bump(a.coeff_error * abs_up(s));
    return out;
}

PowerSeries series_shift_const(const PowerSeries& a, const Cplx& c) {
    PowerSeries out = a;
    out.coeffs[0] += c;
    return out;
}

PowerSeries series_multiply(const PowerSeries& a, const PowerSeries& b, std::size_t n) {
    const mpfr_prec_t prec = std::max(a.prec(), b.prec());
    PowerSeries out = PowerSeries::zero(n, prec);
    const std::size_t la = a.lead(), lb = b.lead();
    Real t(prec);
    if (la + lb <= n) {
        for (std::size_t k = la + lb; k <= n; ++k) {
            Cplx& acc = out.coeffs[k];
            std::size_t i0 = std::max(la, k >= (b.coeffs.size() - 1) ? k - (b.coeffs.size() - 1) : 0);
            std::size_t i1 = std::min(k - lb, a.coeffs.size() - 1);
            for (std::size_t i = i0; i <= i1 && i <= k; ++i) acc.add_prod(a.coeffs[i], b.coeffs[k - i], t);
        }
    }
    // l1 norms for the propagation rule
    Real na = bound(0.0), nb = bound(0.0);
    for (const auto& c : a.coeffs) na += abs_up(c);
    for (const auto& c : b.coeffs) nb += abs_up(c);
    Real cross = bound(static_cast<double>(n + 1)) * a.coeff_error * b.coeff_error;
    Real rounding = na * nb * Real::two_pow(-static_cast<long>(prec) + 4, kBoundPrec);
    out.coeff_error = bump(na * b.coeff_error + nb * a.coeff_error + cross + rounding);
    return out;
}

PowerSeries series_power(const PowerSeries& a, std::size_t j, std::size_t n) {
    PowerSeries acc = PowerSeries::constant(Cplx(1.0, 0.0, a.prec()), n);
    for (std::size_t i = 0; i < j; ++i) acc = series_multiply(acc, a, n);
    return acc;
}

PowerSeries series_power_binary(const PowerSeries& a, std::size_t j, std::size_t n) {
    PowerSeries acc = PowerSeries::constant(Cplx(1.0, 0.0, a.prec()), n);
    PowerSeries base = a;
    while (j > 0) {
        if (j & 1) acc = series_multiply(acc, base, n);
        j >>= 1;
        if (j > 0) base = series_multiply(base, base, n);
    }
    return acc;
}

std::vector<PowerSeries> series_power_table(const PowerSeries& a, std::size_t jmax, std::size_t n) {
    std::vector<PowerSeries> table;
    table.reserve(jmax + 1);
    table.push_back(PowerSeries::constant(Cplx(1.0, 0.0, a.prec()), n));
    for (std::size_t j = 1; j <= jmax; ++j) table.push_back(series_multiply(table.back(), a, n));
    return table;
}

PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner, std::size_t n,
                           double outer_radius) {
    if (!(abs_up(inner.coeffs[0]) < outer_radius))
        throw std::domain_error("series_compose: inner constant term outside outer domain");
    const mpfr_prec_t prec = std::max(outer.prec(), inner.prec());
    PowerSeries acc = PowerSeries::zero(n, prec);
    for (std::size_t k = outer.coeffs.size(); k-- > 0;) {
        acc = series_multiply(acc, inner, n);
        acc.coeffs[0] += outer.coeffs[k];
        acc.coeff_error = bump(acc.coeff_error + outer.coeff_error);
    }
    return acc;
}

PowerSeries series_derivative(const PowerSeries& a) {
    const std::size_t n = a.trunc_order();
    PowerSeries out = PowerSeries::zero(n == 0 ? 0 : n - 1, a.prec());
    for (std::size_t k = 1; k <= n; ++k) out.coeffs[k - 1] = a.coeffs[k] * Real(static_cast<long>(k), a.prec());
    out.coeff_error = bump(a.coeff_error * static_cast<double>(n));
    return out;
}

// Division, log and sqrt run coefficient recurrences and propagate
// per-coefficient error bounds alongside, collapsing to the uniform bound at
// the end. The bounds are first-order, evaluated with upward-rounded moduli.
PowerSeries series_divide(const PowerSeries& num, const PowerSeries& den, std::size_t n) {
    if (den.coeffs[0].is_zero()) throw std::domain_error("series_divide: denominator vanishes at 0");
    const mpfr_prec_t prec = std::max(num.prec(), den.prec());
    PowerSeries q = PowerSeries::zero(n, prec);
    const Real b0_abs = abs_up(den.coeffs[0]);
    std::vector<Real> qerr(n + 1, bound(0.0));
    Real t(prec);
    for (std::size_t k = 0; k <= n; ++k) {
        Cplx acc = k < num.coeffs.size() ? num.coeffs[k] : Cplx(prec);
        Real eacc = num.coeff_error;
        for (std::size_t m = 0; m < k; ++m) {
            std::size_t d = k - m;
            if (d < den.coeffs.size()) {
                Cplx prod = q.coeffs[m] * den.coeffs[d];
                acc -= prod;
                eacc += qerr[m] * abs_up(den.coeffs[d]) + abs_up(q.coeffs[m]) * den.coeff_error;
            } else {
                eacc += abs_up(q.coeffs[m]) * den.coeff_error;
            }
        }
        q.coeffs[k] = acc / den.coeffs[0];
        qerr[k] = bump((eacc + abs_up(q.coeffs[k]) * den.coeff_error +
                        abs_up(acc) * Real::two_pow(-static_cast<long>(prec) + 6, kBoundPrec)) /
                       b0_abs);
    }
    Real worst = bound(0.0);
    for (const auto& e : qerr) worst = max(worst, e);
    q.coeff_error = worst;
    return q;
}

PowerSeries series_log(const PowerSeries& a, std::size_t n) {
    if (a.coeffs[0].is_zero()) throw std::domain_error("series_log: vanishing constant term");
    const mpfr_prec_t prec = a.prec();
    // l' * a = a'  =>  a_0 (k) l_k = k a_k - sum_{m=1}^{k-1} m l_m a_{k-m}
    PowerSeries l = PowerSeries::zero(n, prec);
    l.coeffs[0] = log(a.coeffs[0]);
    const Real a0_abs = abs_up(a.coeffs[0]);
    std::vector<Real> lerr(n + 1, bound(0.0));
    lerr[0] = bump(a.coeff_error / a0_abs);  // first-order sensitivity of log at c_0
    for (std::size_t k = 1; k <= n; ++k) {
        Cplx acc = k < a.coeffs.size() ? a.coeffs[k] * Real(static_cast<long>(k), prec) : Cplx(prec);
        Real eacc = a.coeff_error * static_cast<double>(k);
        for (std::size_t m = 1; m < k; ++m) {
            std::size_t d = k - m;
            if (d < a.coeffs.size()) {
                Cplx prod = l.coeffs[m] * a.coeffs[d] * Real(static_cast<long>(m), prec);
                acc -= prod;
                eacc += static_cast<double>(m) * (lerr[m] * abs_up(a.coeffs[d]) + abs_up(l.coeffs[m]) * a.coeff_error);
            }
        }
        Real kk(static_cast<long>(k), prec);
        l.coeffs[k] = acc / (a.coeffs[0] * kk);
        lerr[k] = bump((eacc / static_cast<double>(k) +
                        abs_up(acc) * Real::two_pow(-static_cast<long>(prec) + 6, kBoundPrec)) /
                       a0_abs);
    }
    Real worst = bound(0.0);
    for (const auto& e : lerr) worst = max(worst, e);
    l.coeff_error = worst;
    return l;
}

PowerSeries series_sqrt(const PowerSeries& a, std::size_t n) {
    if (a.coeffs[0].is_zero()) throw std::domain_error("series_sqrt: vanishing constant term");
    const mpfr_prec_t prec = a.prec();
    // s*s = a: 2 s_0 s_k = a_k - sum_{m=1}^{k-1} s_m s_{k-m}
    PowerSeries s = PowerSeries::zero(n, prec);
    s.coeffs[0] = sqrt(a.coeffs[0]);
    Real s0_abs2 = bump(abs_up(s.coeffs[0]) * 2.0);
    std::vector<Real> serr(n + 1, bound(0.0));
    serr[0] = bump(a.coeff_error / s0_abs2);
    for (std::size_t k = 1; k <= n; ++k) {
        Cplx acc = k < a.coeffs.size() ? a.coeffs[k] : Cplx(prec);
        Real eacc = a.coeff_error;
        for (std::size_t m = 1; m < k; ++m) {
            Cplx prod = s.coeffs[m] * s.coeffs[k - m];
            acc -= prod;
            eacc += 2.0 * serr[m] * abs_up(s.coeffs[k - m]);
        }
        Cplx den = s.coeffs[0] * Real(2L, prec);
        s.coeffs[k] = acc / den;
        serr[k] = bump((eacc + abs_up(acc) * Real::two_pow(-static_cast<long>(prec) + 6, kBoundPrec)) / s0_abs2);
    }
    Real worst = bound(0.0);
    for (const auto& e : serr) worst = max(worst, e);
    s.coeff_error = worst;
    return s;
}

}  // namespace specdecay

#include "specdecay/spaces.hpp"

#include <cmath>
#include <stdexcept>

namespace specdecay {

namespace {

// Gamma-ratio through log-Gamma so k ~ 4000 stays in range.
Real gamma_ratio(const Real& num_arg, const Real& den_arg) {
    return exp(lgamma_pos(num_arg) - lgamma_pos(den_arg));
}

}  // namespace

WeightFamily WeightFamily::hardy() {
    WeightFamily f;
    f.kind_ = Kind::Hardy;
    f.name_ = "hardy";
    return f;
}

WeightFamily WeightFamily::bergman(double gamma) {
    if (gamma <= -1.0) throw std::invalid_argument("WeightFamily: bergman needs gamma > -1");
    WeightFamily f;
    f.kind_ = Kind::Bergman;
    f.param_ = gamma;
    f.name_ = "bergman:" + std::to_string(gamma);
    return f;
}

WeightFamily WeightFamily::dirichlet(double alpha) {
    if (alpha <= -1.0) throw std::invalid_argument("WeightFamily: dirichlet needs alpha > -1");
    WeightFamily f;
    f.kind_ = Kind::Dirichlet;
    f.param_ = alpha;
    f.name_ = "dirichlet:" + std::to_string(alpha);
    return f;
}

WeightFamily WeightFamily::custom(std::string name, std::function<Real(long, mpfr_prec_t)> w) {
    WeightFamily f;
    f.kind_ = Kind::Custom;
    f.name_ = std::move(name);
    f.custom_ = std::move(w);
    // liminf beta_k^(1/k) >= 1 is sampled, not proven; a drift below 1 gets a warning flag.
    PrecisionContext probe(128, 1);
    for (long k : {64L, 256L, 1024L}) {
        Real b = f.custom_(k, probe.prec());
        if (!(b > 0))
            throw std::invalid_argument("WeightFamily: custom weight must be positive");
        Real root = exp(log(b) / k);
        if (root < 0.9) f.liminf_warning_ = true;
    }
    return f;
}

Real WeightFamily::weight(long k, const PrecisionContext& ctx) const {
    if (k < 0) throw std::invalid_argument("weight: k >= 0 required");
    const mpfr_prec_t prec = ctx.prec();
    switch (kind_) {
        case Kind::Hardy:
            return Real(1L, prec);
        case Kind::Bergman: {
            // k! G(g+2) / G(k+g+2)
            Real lg = lgamma_pos(Real(static_cast<long>(k + 1), prec)) +
                      lgamma_pos(Real(param_ + 2.0, prec)) -
                      lgamma_pos(Real(param_ + 2.0, prec) + Real(k, prec));
            return exp(lg);
        }
        case Kind::Dirichlet: {
            if (k == 0) return Real(1L, prec);
            Real lg = lgamma_pos(Real(k + 1, prec)) + lgamma_pos(Real(param_ + 2.0, prec)) -
                      lgamma_pos(Real(param_ + 1.0, prec) + Real(k, prec));
            return Real(k, prec) * exp(lg);
        }
        case Kind::Custom:
            return custom_(k, prec);
    }
    throw std::logic_error("weight: unreachable");
}

std::vector<Real> WeightFamily::weights_upto(long n, const PrecisionContext& ctx) const {
    std::vector<Real> w;
    w.reserve(n + 1);
    for (long k = 0; k <= n; ++k) w.push_back(weight(k, ctx));
    return w;
}

Real dirichlet_tilde_weight(double alpha, long k, const PrecisionContext& ctx) {
    if (alpha < 0.0) throw std::invalid_argument("dirichlet_tilde_weight: alpha >= 0");
    if (k < 0) throw std::invalid_argument("dirichlet_tilde_weight: k >= 0");
    const mpfr_prec_t prec = ctx.prec();
    Real lg = lgamma_pos(Real(k + 2, prec)) + lgamma_pos(Real(alpha + 2.0, prec)) -
              lgamma_pos(Real(alpha + 1.0, prec) + Real(k, prec));
    return exp(lg);
}

KernelValue kernel_norm_sq(const Cplx& a, const WeightFamily& family, const Real& tol,
                           const PrecisionContext& ctx) {
    Real mod2 = norm_sq(a);
    if (!(mod2 < 1.0)) throw std::invalid_argument("kernel_norm_sq: |a| < 1 required");
    const mpfr_prec_t prec = ctx.prec();
    Real sum(prec);
    Real apow(1.0, prec);  // |a|^(2n)
    Real prev_beta = family.weight(0, ctx);
    long n = 0;
    const long hard_cap = 100000000;
    while (true) {
        sum += apow / prev_beta;
        Real next_beta = family.weight(n + 1, ctx);
        apow *= mod2;
        // Tail majorant: q = |a|^2 * beta_n/beta_{n+1}; the builtin families
        // and any eventually log-concave custom weight have this ratio
        // decreasing toward 1, so the geometric bound is valid once q < 1.
        // The Gamma-ratio families have beta_n/beta_{n+1} monotone toward 1
        // (from above or below), so the sup over the tail is max(q_n, |a|^2).
        Real q = max(mod2 * prev_beta / next_beta, mod2);
        if (q < 1.0 && n >= 8) {
            Real tail = (apow / next_beta) / (Real(1.0, prec) - q);
            if (tail < tol) {
                KernelValue kv{sum, bound(0.0)};
                mpfr_set(kv.tail_bound.raw(), tail.raw(), MPFR_RNDU);
                return kv;
            }
        }
        prev_beta = next_beta;
        if (++n > hard_cap) throw std::runtime_error("kernel_norm_sq: no convergence under tolerance");
    }
}

namespace {

// (1-x)^(-al) via principal branch, with a series fallback for tiny |x| where
// the closed form loses all its digits to cancellation.
Cplx kernel_core(const Cplx& x, double alpha, const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.prec();
    const Real al(alpha, prec);
    Real cutoff = Real::two_pow(-static_cast<long>(ctx.bits) / 4, prec);
    if (abs(x) < cutoff) {
        // K = sum_{n>=0} x^n G(n+al+1) / ((n+1)! G(al+2)); few terms suffice.
        Cplx acc(prec), xp(1.0, 0.0, prec);
        for (long n = 0; n < 12; ++n) {
            Real coef = exp(lgamma_pos(al + Real(n + 1.0, prec)) - lgamma_pos(Real(n + 2, prec)) -
                            lgamma_pos(al + Real(2.0, prec)));
            Cplx term = xp * coef;
            acc += term;
            xp = xp * x;
        }
        return acc;
    }
    Cplx one(1.0, 0.0, prec);
    if (alpha == 0.0) {
        Cplx lg = log(one / (one - x));
        return lg / x;
    }
    Cplx p = exp(Cplx(-al, Real(prec)) * log(one - x));
    return (p - one) / (x * (al * (al + Real(1.0, prec))));
}

}  // namespace

Cplx kernel_closed_form(const Cplx& a, const Cplx& z, double alpha, const PrecisionContext& ctx) {
    if (alpha < 0.0) throw std::invalid_argument("kernel_closed_form: alpha >= 0 required");
    if (!(abs(a) < 1.0) || !(abs(z) < 1.0))
        throw std::invalid_argument("kernel_closed_form: points must lie in the open disk");
    Cplx x = conj(a) * z;
    return kernel_core(x, alpha, ctx);
}

Cplx kernel_series(const Cplx& a, const Cplx& z, double alpha, const Real& tol,
                   const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.prec();
    Cplx x = conj(a) * z;
    Real xm = abs(x);
    Cplx acc(prec), xp(1.0, 0.0, prec);
    long n = 0;
    while (true) {
        Real beta = dirichlet_tilde_weight(alpha, n, ctx);
        Cplx term = xp / beta;
        acc += term;
        // successive term magnitudes shrink by at most
        // q = |x| * beta~_n/beta~_{n+1} = |x| (n+al+1)/(n+2), monotone toward
        // |x|; the sup over the tail is max(q_n, |x|).
        Real mag = abs(term);
        Real q = max(xm * Real((static_cast<double>(n) + alpha + 1.0) / (static_cast<double>(n) + 2.0), prec), xm);
        if (n > 4 && q < 1.0 && mag * q / (Real(1.0, prec) - q) < tol) return acc;
        xp = xp * x;
        ++n;
        if (n > 2000000) throw std::runtime_error("kernel_series: no convergence");
    }
}

DominationReport check_weight_domination(const WeightFamily& beta, const WeightFamily& gamma,
                                         long n, const PrecisionContext& ctx) {
    DominationReport rep;
    rep.holds = true;
    Real slack = ctx.eps_pow(2);  // tolerate Gamma-evaluation rounding
    Real prev = beta.weight(0, ctx) / gamma.weight(0, ctx);
    for (long k = 1; k <= n; ++k) {
        Real cur = beta.weight(k, ctx) / gamma.weight(k, ctx);
        if (cur < prev * (Real(1.0, ctx.prec()) - slack)) {
            rep.holds = false;
            rep.first_violation = k;
            return rep;
        }
        prev = cur;
    }
    return rep;
}

}  // namespace specdecay

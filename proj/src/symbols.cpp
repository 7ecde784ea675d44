#include "specdecay/symbols.hpp"

#include <cmath>
#include <stdexcept>

namespace specdecay {

namespace {

Real abs_upper(const Cplx& z) {
    Real r(kBoundPrec);
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDU);
    return r;
}

void check_interior(const Cplx& z, const char* who) {
    if (!(abs(z) < 1.0)) throw std::domain_error(std::string(who) + ": evaluation outside the open disk");
}

// chi0 = (s - i)/(-i s + 1) with s = sqrt((z - i)/(iz - 1)); maps the disk
// onto the right half-disk, chi0(0) = sqrt(2) - 1.
Cplx cusp_chi0(const Cplx& z, mpfr_prec_t prec) {
    Cplx i(0.0, 1.0, prec);
    Cplx one(1.0, 0.0, prec);
    Cplx w = (z - i) / (i * z - one);
    Cplx s = sqrt(w);
    return (s - i) / (one - i * s);
}

}  // namespace

Symbol cusp(const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.prec();
    Symbol sym;
    sym.name = "cusp";
    sym.fixes_origin = true;
    sym.univalent = true;
    auto a_const = [prec]() {
        Real sqrt2 = sqrt(Real(2L, prec));
        return Real(1L, prec) - (Real(2L, prec) / Real::pi(prec)) * log(sqrt2 - Real(1L, prec));
    };
    sym.eval = [prec, a_const](const Cplx& z) {
        check_interior(z, "cusp");
        Cplx chi0 = cusp_chi0(z, prec);
        Cplx chi1 = log(chi0);
        Cplx chi2 = chi1 * (Real(-2L, prec) / Real::pi(prec));
        chi2.re += Real(1L, prec);
        Cplx chi3 = Cplx(a_const(), Real(prec)) / chi2;
        return Cplx(Real(1L, prec) - chi3.re, -chi3.im);
    };
    sym.deriv = [prec, a_const](const Cplx& z) {
        check_interior(z, "cusp");
        Cplx one(1.0, 0.0, prec);
        Cplx chi0 = cusp_chi0(z, prec);
        // chi0' = -(1 + chi0^2) / (2 (1 + z^2))
        Cplx dchi0 = -(one + chi0 * chi0) / ((one + z * z) * Real(2L, prec));
        Cplx chi2 = log(chi0) * (Real(-2L, prec) / Real::pi(prec));
        chi2.re += Real(1L, prec);
        Cplx dchi2 = dchi0 / chi0 * (Real(-2L, prec) / Real::pi(prec));
        // chi' = -chi3' = a chi2' / chi2^2
        return Cplx(a_const(), Real(prec)) * dchi2 / (chi2 * chi2);
    };
    return sym;
}

Symbol lens(double theta, const PrecisionContext& ctx) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("lens: theta in (0,1) required");
    const mpfr_prec_t prec = ctx.prec();
    Symbol sym;
    sym.name = "lens:" + std::to_string(theta);
    sym.fixes_origin = true;
    sym.univalent = true;
    Real th(theta, prec);
    sym.eval = [prec, th](const Cplx& z) {
        check_interior(z, "lens");
        Cplx one(1.0, 0.0, prec);
        Cplx u = pow(one + z, th);
        Cplx v = pow(one - z, th);
        return (u - v) / (u + v);
    };
    sym.deriv = [prec, th](const Cplx& z) {
        check_interior(z, "lens");
        Cplx one(1.0, 0.0, prec);
        Cplx u = pow(one + z, th);
        Cplx v = pow(one - z, th);
        Cplx den = (u + v) * (u + v);
        // 4 theta (1 - z^2)^(theta - 1) / ((1+z)^theta + (1-z)^theta)^2
        Cplx base = pow(one - z * z, th - Real(1L, prec));
        return base * (Real(4L, prec) * th) / den;
    };
    return sym;
}

Symbol automorphism(const Cplx& a, const PrecisionContext& ctx) {
    if (!(abs(a) < 1.0)) throw std::invalid_argument("automorphism: |a| < 1 required");
    const mpfr_prec_t prec = ctx.prec();
    Symbol sym;
    sym.name = "auto";
    sym.univalent = true;
    sym.fixes_origin = a.is_zero();
    Cplx ac = a;
    sym.eval = [prec, ac](const Cplx& z) {
        Cplx one(1.0, 0.0, prec);
        return (ac - z) / (one - conj(ac) * z);
    };
    sym.deriv = [prec, ac](const Cplx& z) {
        Cplx one(1.0, 0.0, prec);
        Cplx den = one - conj(ac) * z;
        // (|a|^2 - 1) / (1 - conj(a) z)^2
        Cplx num(norm_sq(ac) - Real(1L, prec), Real(prec));
        return num / (den * den);
    };
    return sym;
}

Symbol half_plane_auto(const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.prec();
    Symbol sym;
    sym.name = "halfplane-auto";
    sym.univalent = true;
    sym.eval = [prec](const Cplx& z) {
        Cplx one(1.0, 0.0, prec), two(2.0, 0.0, prec);
        return (two * z + one) / (z + two);
    };
    sym.deriv = [prec](const Cplx& z) {
        Cplx two(2.0, 0.0, prec);
        Cplx den = z + two;
        return Cplx(3.0, 0.0, prec) / (den * den);
    };
    return sym;
}

Cplx shapiro_taylor_g(const Cplx& z, double eps, const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.prec();
    Cplx i(0.0, 1.0, prec), one(1.0, 0.0, prec);
    Cplx sig = -z;
    Cplx up = (sig + i) / (one + i * sig);  // upper half-plane
    Cplx q = sqrt(up);                      // first quadrant
    Cplx v = (q - i) / (one - i * q);       // right half-disk
    return v * Real(eps, prec);
}

namespace {

Cplx shapiro_taylor_g_deriv(const Cplx& z, double eps, const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.prec();
    Cplx i(0.0, 1.0, prec), one(1.0, 0.0, prec), two(2.0, 0.0, prec);
    Cplx sig = -z;
    Cplx up = (sig + i) / (one + i * sig);
    Cplx q = sqrt(up);
    Cplx d_gamma = two / ((one + i * sig) * (one + i * sig));  // d(up)/d(sig)
    Cplx d_sqrt = one / (two * q);
    Cplx d_gamma_inv = two / ((one - i * q) * (one - i * q));  // d(v)/d(q)
    return d_gamma_inv * d_sqrt * d_gamma * Cplx(-eps, 0.0, prec);
}

// f and f' for the two Shapiro-Taylor variants on V_eps.
Cplx st_f(const Cplx& w, const ShapiroTaylorParams& p, mpfr_prec_t prec) {
    Cplx lw = -log(w);            // -log w, Re > 0 on V_eps
    Cplx llw = log(lw);           // log(-log w)
    if (p.variant == ShapiroTaylorVariant::LogLog) return w * llw;
    Cplx lp = exp(Cplx(Real(2.0 / p.p, prec), Real(prec)) * log(lw));
    Cplx ls = exp(Cplx(Real(p.s, prec), Real(prec)) * log(llw));
    return w * lp * ls;
}

Cplx st_f_deriv(const Cplx& w, const ShapiroTaylorParams& p, mpfr_prec_t prec) {
    Cplx one(1.0, 0.0, prec);
    Cplx lw = -log(w);
    Cplx llw = log(lw);
    if (p.variant == ShapiroTaylorVariant::LogLog) {
        // d/dw [w log(-log w)] = log(-log w) - 1/log w = llw + 1/lw
        return llw + one / lw;
    }
    Cplx lp = exp(Cplx(Real(2.0 / p.p, prec), Real(prec)) * log(lw));
    Cplx ls = exp(Cplx(Real(p.s, prec), Real(prec)) * log(llw));
    Cplx t1 = lp * ls;
    Cplx t2 = lp / lw * ls * Real(2.0 / p.p, prec);
    Cplx t3 = lp / lw * exp(Cplx(Real(p.s - 1.0, prec), Real(prec)) * log(llw)) * Real(p.s, prec);
    return t1 - t2 - t3;
}

}  // namespace

Symbol shapiro_taylor(const ShapiroTaylorParams& params, const PrecisionContext& ctx) {
    if (params.variant == ShapiroTaylorVariant::Power && !(params.s > 1.0 / params.p))
        throw std::invalid_argument("shapiro_taylor: power variant needs s > 1/p");
    if (!(params.eps > 0.0 && params.eps < 0.5))
        throw std::invalid_argument("shapiro_taylor: eps in (0, 0.5) required");
    const mpfr_prec_t prec = ctx.prec();

    // Re f > 0 on a polar grid of V_eps; a violation reports the sample.
    {
        PrecisionContext probe(128, ctx.seed);
        for (int ir = 1; ir <= 100; ++ir)
            for (int ia = 0; ia < 100; ++ia) {
                double r = params.eps * ir / 101.0;
                double ang = -1.55 + 3.10 * ia / 99.0;  // just inside (-pi/2, pi/2)
                Cplx w(r * std::cos(ang), r * std::sin(ang), probe.prec());
                Cplx fv = st_f(w, params, probe.prec());
                if (!(fv.re > 0))
                    throw std::runtime_error("shapiro_taylor: Re f <= 0 at sample r=" + std::to_string(r) +
                                             " ang=" + std::to_string(ang));
            }
    }

    Symbol sym;
    sym.name = params.variant == ShapiroTaylorVariant::LogLog
                   ? "st-log:" + std::to_string(params.eps)
                   : "st-pow:" + std::to_string(params.p) + "," + std::to_string(params.s) + "," +
                         std::to_string(params.eps);
    sym.univalent = true;
    sym.fixes_origin = false;
    ShapiroTaylorParams p = params;
    sym.eval = [prec, p, ctx](const Cplx& z) {
        check_interior(z, "shapiro_taylor");
        Cplx w = shapiro_taylor_g(z, p.eps, ctx);
        return exp(-st_f(w, p, prec));
    };
    sym.deriv = [prec, p, ctx](const Cplx& z) {
        check_interior(z, "shapiro_taylor");
        Cplx w = shapiro_taylor_g(z, p.eps, ctx);
        Cplx phi = exp(-st_f(w, p, prec));
        Cplx dg = shapiro_taylor_g_deriv(z, p.eps, ctx);
        return -(phi * st_f_deriv(w, p, prec) * dg);
    };
    return sym;
}

Symbol scale_map(double r, const PrecisionContext& ctx) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("scale_map: r in (0,1] required");
    const mpfr_prec_t prec = ctx.prec();
    Symbol sym;
    sym.name = "scale:" + std::to_string(r);
    sym.fixes_origin = true;
    sym.univalent = true;
    sym.sup_norm_lt_one = r < 1.0;
    Real rr(r, prec);
    sym.eval = [rr](const Cplx& z) { return z * rr; };
    sym.deriv = [rr, prec](const Cplx&) { return Cplx(rr, Real(prec)); };
    return sym;
}

Symbol monomial_map(long m, const PrecisionContext& ctx) {
    if (m < 1) throw std::invalid_argument("monomial_map: m >= 1 required");
    const mpfr_prec_t prec = ctx.prec();
    Symbol sym;
    sym.name = "monomial:" + std::to_string(m);
    sym.fixes_origin = true;
    sym.univalent = m == 1;
    sym.eval = [m, prec](const Cplx& z) {
        Cplx acc(1.0, 0.0, prec);
        for (long i = 0; i < m; ++i) acc = acc * z;
        return acc;
    };
    sym.deriv = [m, prec](const Cplx& z) {
        Cplx acc(static_cast<double>(m), 0.0, prec);
        for (long i = 0; i < m - 1; ++i) acc = acc * z;
        return acc;
    };
    return sym;
}

Symbol blaschke(const std::vector<Cplx>& zeros, const PrecisionContext& ctx) {
    if (zeros.empty()) throw std::invalid_argument("blaschke: at least one zero");
    for (const auto& z : zeros)
        if (!(abs(z) < 1.0)) throw std::invalid_argument("blaschke: zeros must lie in the disk");
    const mpfr_prec_t prec = ctx.prec();
    Symbol sym;
    sym.name = "blaschke";
    std::vector<Cplx> zs = zeros;
    bool at0 = false;
    for (const auto& z : zs) at0 = at0 || z.is_zero();
    sym.fixes_origin = at0;
    sym.eval = [zs, prec](const Cplx& z) {
        Cplx one(1.0, 0.0, prec);
        Cplx acc(1.0, 0.0, prec);
        for (const auto& w : zs) acc = acc * ((w - z) / (one - conj(w) * z));
        return acc;
    };
    sym.deriv = [zs, prec](const Cplx& z) {
        // product rule, stated without the logarithmic shortcut so zeros of B
        // are fine: B' = sum_j factor_j' prod_{k != j} factor_k
        Cplx one(1.0, 0.0, prec);
        Cplx total(prec);
        for (std::size_t j = 0; j < zs.size(); ++j) {
            Cplx den = one - conj(zs[j]) * z;
            Cplx term = Cplx(norm_sq(zs[j]) - Real(1L, prec), Real(prec)) / (den * den);
            for (std::size_t k = 0; k < zs.size(); ++k) {
                if (k == j) continue;
                Cplx dk = one - conj(zs[k]) * z;
                term = term * ((zs[k] - z) / dk);
            }
            total += term;
        }
        return total;
    };
    return sym;
}

Symbol normalize(const Symbol& s, const PrecisionContext& ctx) {
    Cplx a = s.eval(Cplx(ctx.prec()));
    if (a.is_zero()) return s;
    Symbol aut = automorphism(a, ctx);
    Symbol sym;
    sym.name = "normalized(" + s.name + ")";
    sym.fixes_origin = true;
    sym.univalent = s.univalent;
    sym.sup_norm_lt_one = s.sup_norm_lt_one;
    Evaluator se = s.eval, sd = s.deriv, ae = aut.eval, ad = aut.deriv;
    sym.eval = [se, ae](const Cplx& z) { return ae(se(z)); };
    sym.deriv = [se, sd, ad](const Cplx& z) { return ad(se(z)) * sd(z); };
    return sym;
}

PowerSeries taylor(const Symbol& s, std::size_t n, const PrecisionContext& ctx,
                   long target_log2_eps) {
    if (target_log2_eps == 0)
        target_log2_eps = -(3 * static_cast<long>(ctx.bits)) / 4;
    QuadSpec q = default_quad(n, target_log2_eps);
    PowerSeries ps = coeffs_via_cauchy(s.eval, n, q.r, q.points, ctx, 1.0);
    if (s.fixes_origin && !ps.coeffs[0].is_zero()) {
        // pin c_0 to an exact zero; its computed size joins the certificate
        Real c0 = abs_upper(ps.coeffs[0]);
        ps.coeffs[0].set_zero();
        ps.coeff_error += c0;
    }
    return ps;
}

PowerSeries cusp_series_via_chain(std::size_t n, const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.prec();
    // w = (z - i)/(iz - 1) has exact rational coefficients:
    // 1/(iz-1) = -sum (iz)^k, so w = (z - i) * (-sum i^k z^k).
    PowerSeries w = PowerSeries::zero(n, prec);
    {
        Cplx ipow(1.0, 0.0, prec);  // i^k
        Cplx i(0.0, 1.0, prec);
        for (std::size_t k = 0; k <= n; ++k) {
            // coefficient of z^k in -(z-i) * i^k-geometric: -(prev term) + i*(this term)
            // w_k = -[z^{k-1} coefficient pull] + i * i^k; assemble directly:
            // w = -(z - i) * sum_k i^k z^k = sum_k (i^{k+1} z^k - i^k z^{k+1})
            Cplx t = ipow * i;
            w.coeffs[k] += t;
            if (k + 1 <= n) {
                Cplx t2 = -ipow;
                w.coeffs[k + 1] += t2;
            }
            ipow = ipow * i;
        }
    }
    PowerSeries s = series_sqrt(w, n);
    // chi0 = (s - i)/(1 - i s)
    PowerSeries num = s;
    num.coeffs[0] -= Cplx(0.0, 1.0, prec);
    PowerSeries den = series_scale(s, Cplx(0.0, -1.0, prec));
    den.coeffs[0] += Cplx(1.0, 0.0, prec);
    PowerSeries chi0 = series_divide(num, den, n);
    PowerSeries chi1 = series_log(chi0, n);
    Real pi = Real::pi(prec);
    PowerSeries chi2 = series_scale(chi1, Cplx(Real(-2L, prec) / pi, Real(prec)));
    chi2.coeffs[0] += Cplx(1.0, 0.0, prec);
    Real a = Real(1L, prec) - (Real(2L, prec) / pi) * log(sqrt(Real(2L, prec)) - Real(1L, prec));
    PowerSeries chi3 = series_divide(PowerSeries::constant(Cplx(a, Real(prec)), n), chi2, n);
    PowerSeries chi = series_scale(chi3, Cplx(-1.0, 0.0, prec));
    chi.coeffs[0] += Cplx(1.0, 0.0, prec);
    return chi;
}

void validate_self_map(const Symbol& s, const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.prec();
    for (int ir = 1; ir <= 16; ++ir)
        for (int ia = 0; ia < 16; ++ia) {
            double r = ir / 17.0;
            double ang = 2.0 * 3.14159265358979 * ia / 16.0;
            Cplx z(r * std::cos(ang), r * std::sin(ang), prec);
            Cplx v = s.eval(z);
            if (!(abs(v) < 1.0))
                throw std::runtime_error("validate_self_map: |" + s.name + "(z)| >= 1 at grid sample");
        }
    if (s.fixes_origin) {
        Cplx v = s.eval(Cplx(prec));
        Real thirty = Real("1e-30", kBoundPrec);
        if (!(abs(v) < thirty))
            throw std::runtime_error("validate_self_map: " + s.name + " claims to fix 0 but does not");
    }
}

}  // namespace specdecay

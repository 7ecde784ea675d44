#include "specdecay/verify.hpp"

#include "specdecay/geometry.hpp"
#include "specdecay/rng.hpp"
#include "specdecay/subordination.hpp"

#include <cmath>
#include <functional>

namespace specdecay {

namespace {

using Checker = std::function<std::string()>;  // empty string = pass, else failure detail

void run_check(std::vector<CheckResult>& out, const std::string& name, const Checker& fn) {
    CheckResult r;
    r.name = name;
    try {
        r.detail = fn();
        r.pass = r.detail.empty();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
}

std::string expect(bool cond, const std::string& msg) { return cond ? "" : msg; }

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, const PrecisionContext& ctx,
                            std::uint64_t stream, bool lower_triangular = false) {
    CounterRng rng(ctx.seed, stream);
    ComplexMatrix m(rows, cols, ctx.prec());
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) {
            Cplx g = rng.gaussian_cplx(ctx.prec());
            if (!lower_triangular || i >= j) m.at(i, j) = g;
        }
    return m;
}

Real spectrum_product(const SingularSpectrum& sp, std::size_t n) {
    Real p(1L, static_cast<mpfr_prec_t>(sp.source_bits));
    for (std::size_t k = 0; k < n; ++k) p *= sp.values[k];
    return p;
}

}  // namespace

std::vector<CheckResult> verify_numerics(const PrecisionContext& ctx) {
    std::vector<CheckResult> out;

    run_check(out, "svd diagonal and nilpotent sections", [&] {
        auto id = ComplexMatrix::identity(3, ctx.prec());
        auto s = svd_singular_values(id, ctx);
        if (!(abs(s.values[0] - 1.0) < 1e-70 && abs(s.values[2] - 1.0) < 1e-70))
            return std::string("identity section not flat");
        ComplexMatrix d(3, 3, ctx.prec());
        d.at(0, 0).re = Real(3L, ctx.prec());
        d.at(1, 1).re = Real(1L, ctx.prec());
        d.at(2, 2).re = Real(2L, ctx.prec());
        auto s2 = svd_singular_values(d, ctx);
        if (!(s2.values[0] == Real(3L, ctx.prec()) && s2.values[1] == Real(2L, ctx.prec())))
            return std::string("diagonal moduli not sorted");
        ComplexMatrix nil(2, 2, ctx.prec());
        nil.at(0, 1).re = Real(1L, ctx.prec());
        auto s3 = svd_singular_values(nil, ctx);
        return expect(s3.values[0] == Real(1L, ctx.prec()) && s3.values[1].is_zero(),
                      "nilpotent spectrum wrong");
    });

    run_check(out, "compound norm equals singular-value products", [&] {
        for (std::size_t dim : {4UL, 6UL, 8UL}) {
            auto m = random_matrix(dim, dim, ctx, 100 + dim);
            auto sp = svd_singular_values(m, ctx);
            for (std::size_t n = 1; n <= 3 && n <= dim; ++n) {
                auto cm = compound_matrix(m, n);
                auto cs = svd_singular_values(cm, ctx);
                Real prod = spectrum_product(sp, n);
                Real gap = abs(cs.values[0] - prod) / prod;
                if (!(gap < ctx.eps_pow(4)))
                    return "gap " + gap.str(3) + " at dim " + std::to_string(dim) + " n " +
                           std::to_string(n);
            }
        }
        return std::string();
    });

    run_check(out, "gram determinant never exceeds the product bound", [&] {
        auto m = random_matrix(5, 5, ctx, 7);
        SvdOptions o;
        o.want_vectors = true;
        auto svd = svd_jacobi(m, ctx, o);
        Real prod = spectrum_product(svd.spectrum, 3);
        for (std::size_t t = 0; t < 200; ++t) {
            auto f = random_orthonormal_system(5, 3, ctx, 2 * t);
            auto g = random_orthonormal_system(5, 3, ctx, 2 * t + 1);
            Real dv = abs(det_gram(m, f, g));
            if (dv > prod * (Real(1.0, ctx.prec()) + ctx.eps_pow(4)))
                return std::string("exceedance at trial ") + std::to_string(t);
        }
        std::vector<std::vector<Cplx>> f0(svd.right.begin(), svd.right.begin() + 3);
        std::vector<std::vector<Cplx>> g0(svd.left.begin(), svd.left.begin() + 3);
        Real at = abs(det_gram(m, f0, g0));
        return expect(abs(at - prod) / prod < ctx.eps_pow(4), "singular vectors do not attain");
    });

    run_check(out, "orthonormal systems: gram identity and determinism", [&] {
        auto f = random_orthonormal_system(5, 3, ctx, 0);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                Cplx ip = dot_conj(f[i].data(), f[j].data(), 5);
                Real want = i == j ? Real(1L, ctx.prec()) : Real(0L, ctx.prec());
                if (!(abs(ip.re - want) < ctx.eps_pow(2) && abs(ip.im) < ctx.eps_pow(2)))
                    return std::string("gram entry off");
            }
        auto g = random_orthonormal_system(5, 3, ctx, 0);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < 5; ++k)
                if (!(f[i][k].re == g[i][k].re && f[i][k].im == g[i][k].im))
                    return std::string("same seed produced different systems");
        auto h = random_orthonormal_system(1, 1, ctx, 3);
        return expect(abs(abs(h[0][0]) - 1.0) < ctx.eps_pow(2), "dim-1 system not unit");
    });

    run_check(out, "unitary invariance of the spectrum", [&] {
        auto m = random_matrix(6, 6, ctx, 21);
        auto u = random_orthonormal_system(6, 6, ctx, 22);
        auto v = random_orthonormal_system(6, 6, ctx, 23);
        ComplexMatrix um(6, 6, ctx.prec()), umv(6, 6, ctx.prec());
        // U M, columns of U as rows times M
        for (std::size_t j = 0; j < 6; ++j)
            for (std::size_t i = 0; i < 6; ++i) {
                Cplx acc(ctx.prec());
                Real t(ctx.prec());
                for (std::size_t k = 0; k < 6; ++k) acc.add_prod(u[k][i], m.at(k, j), t);
                um.at(i, j) = acc;
            }
        for (std::size_t j = 0; j < 6; ++j)
            for (std::size_t i = 0; i < 6; ++i) {
                Cplx acc(ctx.prec());
                Real t(ctx.prec());
                for (std::size_t k = 0; k < 6; ++k) acc.add_prod(um.at(i, k), v[j][k], t);
                umv.at(i, j) = acc;
            }
        auto s1 = svd_singular_values(m, ctx);
        auto s2 = svd_singular_values(umv, ctx);
        for (std::size_t k = 0; k < 6; ++k) {
            Real d = abs(s1.values[k] - s2.values[k]);
            if (!(d <= s1.error_bounds[k] + s2.error_bounds[k] + s1.values[k] * ctx.eps_pow(2)))
                return std::string("spectrum moved under unitaries");
        }
        return std::string();
    });

    run_check(out, "serial and tournament sweeps agree within bounds", [&] {
        auto m = random_matrix(20, 20, ctx, 31, true);
        SvdOptions ser, par;
        ser.mode = ExecMode::Serial;
        par.mode = ExecMode::Parallel;
        auto a = svd_singular_values(m, ctx, ser);
        auto b = svd_singular_values(m, ctx, par);
        for (std::size_t k = 0; k < a.values.size(); ++k)
            if (!(abs(a.values[k] - b.values[k]) <= a.error_bounds[k] + b.error_bounds[k]))
                return std::string("mode disagreement at k=") + std::to_string(k);
        return std::string();
    });

    return out;
}

std::vector<CheckResult> verify_series(const PrecisionContext& ctx) {
    std::vector<CheckResult> out;
    const mpfr_prec_t prec = ctx.prec();

    run_check(out, "cauchy coefficients: monomial and geometric", [&] {
        auto f = [prec](const Cplx& z) { return z * z; };
        auto ps = coeffs_via_cauchy(f, 4, 0.5, 32, ctx, 0.25);
        for (std::size_t k = 0; k <= 4; ++k) {
            double want = k == 2 ? 1.0 : 0.0;
            if (!(abs(ps.coeffs[k] - Cplx(want, 0.0, prec)) < ps.coeff_error + Real(1e-40, prec)))
                return std::string("z^2 coefficient off at k=") + std::to_string(k);
        }
        auto g = [prec](const Cplx& z) {
            Cplx one(1.0, 0.0, prec);
            return one / (one - z * 0.5);
        };
        auto gs = coeffs_via_cauchy(g, 8, 0.9, 64, ctx, 1.0 / (1.0 - 0.45));
        for (std::size_t k = 0; k <= 8; ++k) {
            Real want = Real::two_pow(-static_cast<long>(k), prec);
            if (!(abs(gs.coeffs[k].re - want) < gs.coeff_error + Real(1e-30, prec)))
                return std::string("geometric coefficient off");
        }
        return std::string();
    });

    run_check(out, "aliasing certificate survives doubling the nodes", [&] {
        Symbol chi = cusp(ctx);
        auto a = coeffs_via_cauchy(chi.eval, 24, 0.875, 128, ctx, 1.0);
        auto b = coeffs_via_cauchy(chi.eval, 24, 0.875, 256, ctx, 1.0);
        for (std::size_t k = 0; k <= 24; ++k)
            if (!(abs(a.coeffs[k] - b.coeffs[k]) < a.coeff_error))
                return std::string("doubling m moved a coefficient past the certificate");
        return std::string();
    });

    run_check(out, "multiply identities", [&] {
        PowerSeries one_plus = PowerSeries::zero(2, prec), one_minus = PowerSeries::zero(2, prec);
        one_plus.coeffs[0] = Cplx(1.0, 0.0, prec);
        one_plus.coeffs[1] = Cplx(1.0, 0.0, prec);
        one_minus.coeffs[0] = Cplx(1.0, 0.0, prec);
        one_minus.coeffs[1] = Cplx(-1.0, 0.0, prec);
        auto prod = series_multiply(one_plus, one_minus, 2);
        if (!(prod.coeffs[0].re == Real(1L, prec) && prod.coeffs[1].is_zero() &&
              prod.coeffs[2].re == Real(-1L, prec)))
            return std::string("(1+z)(1-z) != 1-z^2");
        auto zero = PowerSeries::zero(2, prec);
        auto z2 = series_multiply(one_plus, zero, 2);
        for (auto& c : z2.coeffs)
            if (!c.is_zero()) return std::string("a*0 != 0");
        PowerSeries geo = PowerSeries::zero(10, prec);
        for (auto& c : geo.coeffs) c = Cplx(1.0, 0.0, prec);
        auto tele = series_multiply(geo, one_minus, 10);
        for (std::size_t k = 1; k <= 10; ++k)
            if (!tele.coeffs[k].is_zero()) return std::string("telescoping failed");
        return std::string();
    });

    run_check(out, "powers: monomial, zeroth, lens square", [&] {
        auto z = PowerSeries::identity(8, prec);
        auto z5 = series_power(z, 5, 8);
        if (!(z5.coeffs[5].re == Real(1L, prec) && z5.lead() == 5))
            return std::string("z^5 wrong");
        auto p0 = series_power(z5, 0, 8);
        if (!(p0.coeffs[0].re == Real(1L, prec))) return std::string("a^0 wrong");
        Symbol l = lens(0.5, ctx);
        auto ls = taylor(l, 8, ctx);
        auto sq = series_power(ls, 2, 8);
        Real want(0.25, prec);
        return expect(abs(sq.coeffs[2].re - want) < sq.coeff_error * 4.0 + Real(1e-40, prec),
                      "c_2(lens^2) != c_1(lens)^2");
    });

    run_check(out, "power consistency and self-map parseval", [&] {
        Symbol l = lens(0.5, ctx);
        auto ls = taylor(l, 32, ctx);
        auto p3 = series_power(ls, 3, 32);
        auto p2 = series_power(ls, 2, 32);
        auto p3b = series_multiply(p2, ls, 32);
        for (std::size_t k = 0; k <= 32; ++k)
            if (!(abs(p3.coeffs[k] - p3b.coeffs[k]) < p3.coeff_error + p3b.coeff_error +
                                                          Real(1e-60, prec)))
                return std::string("a^3 != a^2*a within certificates");
        Real sum(prec);
        for (auto& c : ls.coeffs) sum += norm_sq(c);
        return expect(sum < Real(1.0, prec) + ls.coeff_error * 66.0 + Real(1e-30, prec),
                      "self-map coefficient mass exceeds 1");
    });

    run_check(out, "compose: geometric outer, identity outer, cusp chain", [&] {
        PowerSeries geo = PowerSeries::zero(4, prec);
        for (auto& c : geo.coeffs) c = Cplx(1.0, 0.0, prec);
        PowerSeries half = PowerSeries::zero(4, prec);
        half.coeffs[1] = Cplx(0.5, 0.0, prec);
        auto comp = series_compose(geo, half, 4);
        for (std::size_t k = 0; k <= 4; ++k) {
            Real want = Real::two_pow(-static_cast<long>(k), prec);
            if (!(abs(comp.coeffs[k].re - want) < Real(1e-40, prec)))
                return std::string("geometric composed with z/2 off");
        }
        auto ido = PowerSeries::identity(4, prec);
        auto comp2 = series_compose(ido, half, 4);
        if (!(comp2.coeffs[1].re == Real(0.5, prec))) return std::string("identity outer broken");
        auto chain = cusp_series_via_chain(64, ctx);
        auto quad = taylor(cusp(ctx), 64, ctx);
        for (std::size_t k = 1; k <= 64; ++k)
            if (!(abs(chain.coeffs[k] - quad.coeffs[k]) < chain.coeff_error + quad.coeff_error))
                return std::string("cusp chain and quadrature disagree at k=") + std::to_string(k);
        return std::string();
    });

    return out;
}

std::vector<CheckResult> verify_spaces(const PrecisionContext& ctx) {
    std::vector<CheckResult> out;
    const mpfr_prec_t prec = ctx.prec();

    run_check(out, "weight formulas", [&] {
        if (!(WeightFamily::hardy().weight(17, ctx) == Real(1L, prec)))
            return std::string("hardy weight != 1");
        Real b5 = WeightFamily::bergman(0).weight(5, ctx);
        if (!(abs(b5 - Real(1.0 / 6.0, prec)) < ctx.eps_pow(2)))
            return std::string("bergman(0) weight k=5 != 1/6");
        // Dirichlet(1) weight k=5 equals the Gamma-ratio value 2k/(k+1)
        Real d5 = WeightFamily::dirichlet(1).weight(5, ctx);
        if (!(abs(d5 - Real(10.0 / 6.0, prec)) < ctx.eps_pow(2)))
            return std::string("dirichlet(1) weight k=5 != 5/3");
        Real d0 = WeightFamily::dirichlet(0.3).weight(0, ctx);
        return expect(d0 == Real(1L, prec), "dirichlet weight k=0 != 1");
    });

    run_check(out, "kernel norms: hardy and bergman closed forms", [&] {
        Cplx a(0.3, 0.4, prec);
        Real tol = Real::two_pow(-200, kBoundPrec);
        auto kv = kernel_norm_sq(a, WeightFamily::hardy(), tol, ctx);
        Real want = Real(1L, prec) / (Real(1L, prec) - norm_sq(a));
        if (!(abs(kv.value - want) < Real(1e-50, prec))) return std::string("hardy kernel norm off");
        auto kb = kernel_norm_sq(a, WeightFamily::bergman(0.7), tol, ctx);
        Real wantb = exp(Real(-2.7, prec) * log(Real(1L, prec) - norm_sq(a)));
        return expect(abs(kb.value - wantb) / wantb < Real(1e-50, prec),
                      "bergman kernel norm off");
    });

    run_check(out, "kernel closed form matches the weight series", [&] {
        CounterRng rng(ctx.seed, 77);
        Real tol = Real::two_pow(-static_cast<long>(ctx.bits) + 40, kBoundPrec);
        for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
            for (int t = 0; t < 25; ++t) {
                Real ar = rng.uniform(prec) * 0.9, aa = rng.uniform(prec) * 6.28;
                Real zr = rng.uniform(prec) * 0.9, za = rng.uniform(prec) * 6.28;
                Real s1(prec), c1(prec), s2(prec), c2(prec);
                sin_cos(s1, c1, aa);
                sin_cos(s2, c2, za);
                Cplx a(ar * c1, ar * s1);
                Cplx z(zr * c2, zr * s2);
                Cplx cf = kernel_closed_form(a, z, alpha, ctx);
                Cplx sr = kernel_series(a, z, alpha, tol, ctx);
                Real rel = abs(cf - sr) / abs(sr);
                if (!(rel < tol * 10.0 + Real(1e-40, prec)))
                    return "closed form vs series mismatch, alpha=" + std::to_string(alpha);
            }
        }
        return std::string();
    });

    run_check(out, "kernel constants and continuity in alpha", [&] {
        Cplx z0(prec);
        Cplx z(0.5, 0.0, prec);
        if (!(kernel_closed_form(z0, z, 0.0, ctx).re == Real(1L, prec)))
            return std::string("K_0^0 != 1");
        Cplx k0a = kernel_closed_form(z0, z, 1.5, ctx);
        if (!(abs(k0a.re - Real(0.4, prec)) < Real(1e-60, prec)))
            return std::string("K_0^alpha != 1/(alpha+1)");
        Cplx a(0.5, 0.0, prec);
        Real prev(1e9, prec);
        for (double al : {0.08, 0.04, 0.02, 0.01}) {
            Real d = abs(kernel_closed_form(a, z, al, ctx) - kernel_closed_form(a, z, 0.0, ctx));
            if (!(d < prev)) return std::string("no monotone approach to the log kernel");
            prev = d;
        }
        return std::string();
    });

    run_check(out, "kernel symmetry and boundary growth", [&] {
        Cplx a(0.3, -0.25, prec), z(0.1, 0.6, prec);
        Cplx k1 = kernel_closed_form(a, z, 0.8, ctx);
        Cplx k2 = kernel_closed_form(z, a, 0.8, ctx);
        if (!(abs(k1 - conj(k2)) < Real(1e-60, prec))) return std::string("symmetry broken");
        Real tol = Real::two_pow(-120, kBoundPrec);
        for (const WeightFamily& fam :
             {WeightFamily::hardy(), WeightFamily::bergman(0), WeightFamily::dirichlet(0.5)}) {
            Real prev(0L, prec);
            for (double r : {0.9, 0.99, 0.999}) {
                Cplx p(r, 0.0, prec);
                Real cur = kernel_norm_sq(p, fam, tol, ctx).value;
                if (!(cur > prev)) return std::string("kernel norm not growing toward the boundary");
                prev = cur;
            }
        }
        return std::string();
    });

    run_check(out, "weight domination", [&] {
        auto r1 = check_weight_domination(WeightFamily::dirichlet(0.5), WeightFamily::dirichlet(1.5),
                                          2000, ctx);
        if (!r1.holds) return std::string("dirichlet 0.5 vs 1.5 should dominate");
        auto r2 = check_weight_domination(WeightFamily::hardy(), WeightFamily::bergman(0), 2000, ctx);
        if (!r2.holds) return std::string("hardy vs bergman(0) should dominate");
        auto r3 = check_weight_domination(WeightFamily::bergman(0), WeightFamily::hardy(), 50, ctx);
        return expect(!r3.holds && r3.first_violation == 1, "bergman vs hardy should fail at k=1");
    });

    run_check(out, "exp(-sqrt n) family: automorphism blows up kernel ratios", [&] {
        WeightFamily ef = WeightFamily::custom("expsqrt", [](long k, mpfr_prec_t p) {
            return exp(-sqrt(Real(k, p)));
        });
        Real tol = Real::two_pow(-80, kBoundPrec);
        Symbol t = half_plane_auto(ctx);
        Real prev(0L, prec);
        for (double r : {0.9, 0.99, 0.999}) {
            Cplx p(r, 0.0, prec);
            Cplx tp = t.eval(p);
            Real ratio = kernel_norm_sq(tp, ef, tol, ctx).value / kernel_norm_sq(p, ef, tol, ctx).value;
            if (!(ratio > prev)) return std::string("ratio not increasing");
            prev = ratio;
        }
        return std::string();
    });

    return out;
}

std::vector<CheckResult> verify_symbols(const PrecisionContext& ctx) {
    std::vector<CheckResult> out;
    const mpfr_prec_t prec = ctx.prec();

    run_check(out, "cusp chain values", [&] {
        Symbol chi = cusp(ctx);
        Cplx z0(prec);
        if (!(abs(chi.eval(z0)) < Real(1e-30, kBoundPrec))) return std::string("chi(0) != 0");
        Real a = Real(1L, prec) - (Real(2L, prec) / Real::pi(prec)) *
                                      log(sqrt(Real(2L, prec)) - Real(1L, prec));
        if (!(a > 1.56 && a < 1.5611)) return std::string("normalizing constant off");
        Cplx mid(0.5, 0.5, prec);
        Cplx img = chi.eval(mid);
        // image lies inside the disk D(1 - a/2, a/2)
        Cplx center(Real(1L, prec) - a / 2L, Real(prec));
        return expect(abs(img - center) < a / 2L, "cusp image escaped its disk");
    });

    run_check(out, "derivative consistency on random interior points", [&] {
        std::vector<Symbol> syms{cusp(ctx),          lens(0.5, ctx),
                                 lens(0.25, ctx),    automorphism(Cplx(0.3, 0.1, prec), ctx),
                                 half_plane_auto(ctx), scale_map(0.9, ctx),
                                 monomial_map(3, ctx),
                                 blaschke({Cplx(0.5, 0.0, prec), Cplx(0.0, -0.4, prec)}, ctx),
                                 shapiro_taylor({}, ctx)};
        CounterRng rng(ctx.seed, 5150);
        Real h = Real::two_pow(-static_cast<long>(ctx.bits) / 3, prec);
        Real tol = ctx.eps_pow(3);
        for (const auto& s : syms) {
            for (int t = 0; t < 8; ++t) {
                Real r = rng.uniform(prec) * 0.8, ang = rng.uniform(prec) * 6.28;
                Real sn(prec), cs(prec);
                sin_cos(sn, cs, ang);
                Cplx z(r * cs, r * sn);
                Cplx fd = (s.eval(Cplx(z.re + h, z.im)) - s.eval(Cplx(z.re - h, z.im))) / (h * 2L);
                Cplx an = s.deriv(z);
                if (!(abs(an - fd) < tol))
                    return "derivative mismatch for " + s.name;
            }
        }
        return std::string();
    });

    run_check(out, "self-map grids", [&] {
        for (const auto& s : {cusp(ctx), lens(0.5, ctx), automorphism(Cplx(0.3, 0.1, prec), ctx),
                              half_plane_auto(ctx), scale_map(0.9, ctx), monomial_map(2, ctx),
                              shapiro_taylor({}, ctx)})
            validate_self_map(s, ctx);
        return std::string();
    });

    run_check(out, "automorphism identities", [&] {
        Cplx a(0.3, 0.1, prec);
        Symbol phi = automorphism(a, ctx);
        if (!(abs(phi.eval(a)) < Real(1e-60, prec))) return std::string("phi_a(a) != 0");
        if (!(abs(phi.eval(Cplx(prec)) - a) < Real(1e-60, prec))) return std::string("phi_a(0) != a");
        for (double t : {0.2, -0.4, 0.55}) {
            Cplx z(t, -t / 2, prec);
            Cplx twice = phi.eval(phi.eval(z));
            if (!(abs(twice - z) < Real(1e-60, prec))) return std::string("involution failed");
        }
        Symbol hp = half_plane_auto(ctx);
        if (!(abs(hp.eval(Cplx(prec)) - Cplx(0.5, 0.0, prec)) < Real(1e-60, prec)))
            return std::string("T(0) != 1/2");
        for (double fx : {1.0, -1.0}) {
            Cplx f(fx, 0.0, prec);
            Cplx one(1.0, 0.0, prec), two(2.0, 0.0, prec);
            Cplx img = (two * f + one) / (f + two);
            if (!(abs(img - f) < Real(1e-60, prec))) return std::string("fixed point moved");
        }
        return std::string();
    });

    run_check(out, "shapiro-taylor chain endpoints", [&] {
        Cplx g1 = shapiro_taylor_g(Cplx(1.0, 0.0, prec), 0.01, ctx);
        if (!(abs(g1) < Real(1e-60, prec))) return std::string("g(1) != 0");
        // g'(1) = -eps/4 via one-sided difference along the radius
        Real h(1e-18, prec);
        Cplx near1(Real(1L, prec) - h, Real(prec));
        Cplx fd = (shapiro_taylor_g(near1, 0.01, ctx) - g1) / Cplx(-h, Real(prec));
        if (!(abs(fd - Cplx(-0.0025, 0.0, prec)) < Real(1e-8, prec)))
            return std::string("g'(1) != -eps/4");
        Symbol st = shapiro_taylor({}, ctx);
        Cplx at0 = st.eval(Cplx(prec));
        if (abs(at0) < 0.5) return std::string("st(0) unexpectedly small");
        Symbol norm = normalize(st, ctx);
        return expect(abs(norm.eval(Cplx(prec))) < Real(1e-30, kBoundPrec),
                      "normalized st does not fix 0");
    });

    run_check(out, "normalization contracts", [&] {
        Symbol chi = cusp(ctx);
        Symbol n1 = normalize(chi, ctx);
        Cplx z(0.2, 0.3, prec);
        if (!(abs(n1.eval(z) - chi.eval(z)) < Real(1e-60, prec)))
            return std::string("normalize changed an origin-fixing symbol");
        Symbol shifted;
        shifted.name = "shifted";
        shifted.eval = [prec](const Cplx& w) { return (w + Cplx(0.3, 0.0, prec)) * 0.5; };
        shifted.deriv = [prec](const Cplx&) { return Cplx(0.5, 0.0, prec); };
        Symbol n2 = normalize(shifted, ctx);
        return expect(abs(n2.eval(Cplx(prec))) < Real(1e-30, kBoundPrec),
                      "normalized shift does not fix 0");
    });

    run_check(out, "taylor coefficients of the basic maps", [&] {
        auto ts = taylor(scale_map(0.7, ctx), 8, ctx);
        if (!(abs(ts.coeffs[1].re - Real(0.7, prec)) < ts.coeff_error + Real(1e-40, prec)))
            return std::string("c_1(scale) != r");
        auto tc = taylor(cusp(ctx), 8, ctx);
        if (!tc.coeffs[0].is_zero()) return std::string("cusp c_0 not pinned to zero");
        auto tl = taylor(lens(0.5, ctx), 8, ctx);
        return expect(abs(tl.coeffs[1].re - Real(0.5, prec)) < tl.coeff_error + Real(1e-40, prec),
                      "c_1(lens) != theta");
    });

    run_check(out, "cusp boundary asymptotics stay in bracket", [&] {
        Symbol chi = cusp(ctx);
        for (int e = 2; e <= 8; ++e) {
            Real r = Real(1L, prec) - exp(Real(-2.302585092994046 * e, prec));
            Cplx z(r, Real(prec));
            Real lg = log(Real(1L, prec) / (Real(1L, prec) - r));
            Real v1 = (Real(1L, prec) - chi.eval(z).re) * lg;
            if (!(v1 > 0.1 && v1 < 10.0)) return std::string("cusp value bracket broken");
            Real v2 = chi.deriv(z).re * (Real(1L, prec) - r) * lg * lg;
            if (!(v2 > 0.1 && v2 < 10.0)) return std::string("cusp derivative bracket broken");
        }
        return std::string();
    });

    run_check(out, "lens inverse growth bracket", [&] {
        Symbol l = lens(0.5, ctx);
        for (double u : {0.9, 0.99, 0.999, 0.9999}) {
            Cplx uc(u, 0.0, prec);
            Real w = l.eval(uc).re;
            Real lhs = (Real(1L, prec) - u);
            Real rhs = (Real(1L, prec) - w) * (Real(1L, prec) - w);  // (1-w)^(1/theta), theta=1/2
            Real ratio = lhs / rhs;
            if (!(ratio > 0.1 && ratio < 10.0)) return std::string("lens inverse bracket broken");
        }
        return std::string();
    });

    run_check(out, "blaschke boundary modulus", [&] {
        Symbol b = blaschke({Cplx(0.5, 0.0, prec)}, ctx);
        for (int k = 0; k < 8; ++k) {
            Cplx z = unit_root(k, 8, prec);
            if (!(abs(abs(b.eval(z)) - 1.0) < Real(1e-50, prec)))
                return std::string("|B| != 1 on the circle");
        }
        return std::string();
    });

    return out;
}

std::vector<CheckResult> verify_operators(const PrecisionContext& ctx) {
    std::vector<CheckResult> out;
    const mpfr_prec_t prec = ctx.prec();

    run_check(out, "diagonal oracle for the scaling map", [&] {
        auto op = build_matrix(scale_map(0.5, ctx), WeightFamily::hardy(), 16, ctx);
        if (!op.triangular) return std::string("not triangular");
        auto sp = approx_numbers(op, ctx);
        for (std::size_t n = 1; n <= 17; ++n) {
            Real want = Real::two_pow(-static_cast<long>(n - 1), prec);
            if (!(abs(sp.values[n - 1] - want) < sp.error_bounds[n - 1] + Real(1e-40, prec)))
                return std::string("a_n != r^(n-1) at n=") + std::to_string(n);
        }
        return std::string();
    });

    run_check(out, "identity and squaring maps", [&] {
        auto op1 = build_matrix(monomial_map(1, ctx), WeightFamily::hardy(), 8, ctx);
        for (std::size_t i = 0; i <= 8; ++i)
            for (std::size_t j = 0; j <= 8; ++j) {
                Real want = i == j ? Real(1L, prec) : Real(0L, prec);
                if (!(abs(op1.matrix.at(i, j).re - want) < Real(1e-40, prec)))
                    return std::string("identity matrix wrong");
            }
        auto op2 = build_matrix(monomial_map(2, ctx), WeightFamily::hardy(), 8, ctx);
        auto sp2 = approx_numbers(op2, ctx);
        for (std::size_t k = 0; k < 5; ++k)
            if (!(abs(sp2.values[k] - 1.0) < Real(1e-40, prec)))
                return std::string("squaring-map section should have unit singular values");
        for (std::size_t k = 5; k < 9; ++k)
            if (!(sp2.values[k] < Real(1e-40, prec)))
                return std::string("squaring-map section should truncate to zeros");
        return std::string();
    });

    run_check(out, "weighted build reduces to plain and matches closed form", [&] {
        Symbol sc = scale_map(0.6, ctx);
        SymbolSeriesTable table = build_power_table(sc, 10, ctx);
        PowerSeries one = PowerSeries::constant(Cplx(1.0, 0.0, prec), 10);
        auto wop = build_weighted_matrix(one, table, WeightFamily::bergman(0.5), 10, ctx);
        auto plain = build_matrix_from(table, WeightFamily::bergman(0.5), ctx);
        for (std::size_t i = 0; i <= 10; ++i)
            for (std::size_t j = 0; j <= 10; ++j)
                if (!(abs(wop.matrix.at(i, j) - plain.matrix.at(i, j)) < Real(1e-40, prec)))
                    return std::string("w == 1 build differs from plain build");
        // w = phi' = r: columns scale by r, singular values r^{j+1} * ratio structure
        PowerSeries wr = PowerSeries::constant(Cplx(0.6, 0.0, prec), 10);
        auto wop2 = build_weighted_matrix(wr, table, WeightFamily::bergman(0.5), 10, ctx);
        auto spw = approx_numbers(wop2, ctx);
        auto spp = approx_numbers(plain, ctx);
        for (std::size_t k = 0; k <= 10; ++k)
            if (!(abs(spw.values[k] - spp.values[k] * Real(0.6, prec)) <
                  spw.error_bounds[k] + spp.error_bounds[k] + Real(1e-40, prec)))
                return std::string("constant weight does not scale the spectrum");
        return std::string();
    });

    run_check(out, "triangularity of origin-fixing builds", [&] {
        for (const auto& fam : {WeightFamily::hardy(), WeightFamily::dirichlet(1)}) {
            auto op = build_matrix(cusp(ctx), fam, 24, ctx);
            if (!op.triangular) return std::string("cusp build lost triangularity");
            Real upper = op.matrix.max_strict_upper_abs();
            if (!(upper <= op.entry_error)) return std::string("upper entries above certificate");
        }
        return std::string();
    });

    run_check(out, "hilbert-schmidt tails", [&] {
        auto tc = hs_tail(scale_map(0.5, ctx), WeightFamily::hardy(), 8, 16, ctx);
        Real expect_t = sqrt(Real::two_pow(-18, prec) / (Real(1L, prec) - Real(0.25, prec)));
        if (!(abs(tc.hs_tail - expect_t) / expect_t < Real(1e-12, prec)))
            return std::string("geometric tail mismatch");
        bool refused = false;
        try {
            hs_tail(monomial_map(1, ctx), WeightFamily::hardy(), 8, 16, ctx);
        } catch (const CertificateError&) {
            refused = true;
        }
        if (!refused) return std::string("identity tail was not refused");
        auto t1 = hs_tail(cusp(ctx), WeightFamily::dirichlet(1), 16, 32, ctx);
        auto t2 = hs_tail(cusp(ctx), WeightFamily::dirichlet(1), 24, 48, ctx);
        return expect(t2.hs_tail < t1.hs_tail, "cusp tail not decreasing in N");
    });

    run_check(out, "power norms", [&] {
        auto pn = power_norm(scale_map(0.5, ctx), WeightFamily::hardy(), 6, 24, ctx);
        if (!(abs(pn.value - Real::two_pow(-6, prec)) < Real(1e-40, prec)))
            return std::string("scale power norm != r^n");
        auto pm = power_norm(monomial_map(2, ctx), WeightFamily::hardy(), 5, 24, ctx);
        if (!(abs(pm.value - 1.0) < Real(1e-40, prec))) return std::string("monomial norm != 1");
        // cusp on dirichlet(1): log-norm roughly linear in -sqrt(n)
        std::vector<double> xs, ys;
        for (std::size_t n : {16UL, 64UL, 256UL}) {
            auto v = power_norm(cusp(ctx), WeightFamily::dirichlet(1), n, 3 * n, ctx);
            xs.push_back(std::sqrt(static_cast<double>(n)));
            ys.push_back(log(v.value).to_double());
        }
        double slope = (ys[2] - ys[0]) / (xs[2] - xs[0]);
        return expect(slope < -0.1, "cusp power norms do not decay like exp(-c sqrt n)");
    });

    run_check(out, "two-route agreement at desk scale", [&] {
        for (const Symbol& s : {scale_map(0.5, ctx), cusp(ctx), lens(0.5, ctx)}) {
            auto tr = dirichlet_spectrum_two_routes(s, 1.0, 32, ctx);
            for (std::size_t k = 0; k < 20; ++k) {
                Real d = abs(tr.dirichlet_route.values[k] - tr.weighted_bergman_route.values[k]);
                Real budget = tr.dirichlet_route.error_bounds[k] +
                              tr.weighted_bergman_route.error_bounds[k] +
                              tr.combined_entry_certificate;
                if (!(d <= budget)) return "route mismatch for " + s.name;
            }
        }
        return std::string();
    });

    run_check(out, "truncation monotonicity under certificates", [&] {
        Symbol l = lens(0.5, ctx);
        WeightFamily fam = WeightFamily::bergman(0);
        auto sp1 = approx_numbers(build_matrix(l, fam, 32, ctx), ctx);
        auto sp2 = approx_numbers(build_matrix(l, fam, 64, ctx), ctx);
        auto tail = hs_tail(l, fam, 32, 64, ctx);
        for (std::size_t k = 0; k < 20; ++k) {
            Real d = abs(sp2.values[k] - sp1.values[k]);
            Real budget = tail.hs_tail + sp1.error_bounds[k] + sp2.error_bounds[k];
            if (!(d <= budget)) return std::string("section jump beyond tail certificate");
        }
        return std::string();
    });

    run_check(out, "schatten partial sums grow with the section", [&] {
        Symbol l = lens(0.5, ctx);
        WeightFamily fam = WeightFamily::dirichlet(1);
        auto sp1 = approx_numbers(build_matrix(l, fam, 24, ctx), ctx);
        auto sp2 = approx_numbers(build_matrix(l, fam, 48, ctx), ctx);
        for (double p : {0.5, 1.0, 2.0}) {
            Real s1(prec), s2(prec);
            for (const auto& v : sp1.values)
                if (v > 0.0) s1 += exp(Real(p, prec) * log(v));
            for (const auto& v : sp2.values)
                if (v > 0.0) s2 += exp(Real(p, prec) * log(v));
            if (!(s2 + Real(1e-30, prec) >= s1)) return std::string("partial schatten sum shrank");
        }
        return std::string();
    });

    return out;
}

std::vector<CheckResult> verify_subordination(const PrecisionContext& ctx) {
    std::vector<CheckResult> out;
    const mpfr_prec_t prec = ctx.prec();

    run_check(out, "partial-sum subordination examples", [&] {
        auto u = DecaySequence::from_doubles({1, 1, 0, 0}, ctx.bits);
        auto v = DecaySequence::from_doubles({2, 0, 0, 0}, ctx.bits);
        if (!is_subordinate(u, v).holds) return std::string("(1,1,0..) should be subordinate to (2,0..)");
        auto w = DecaySequence::from_doubles({0.5, 0.25, 0.1}, ctx.bits);
        auto rep = is_subordinate(w, w);
        if (!rep.holds) return std::string("u = v should hold");
        for (const auto& m : rep.margins)
            if (!m.is_zero()) return std::string("u = v margins should be exactly zero");
        auto bad = is_subordinate(DecaySequence::from_doubles({2, 1}, ctx.bits),
                                  DecaySequence::from_doubles({1, 1}, ctx.bits));
        return expect(!bad.holds && bad.first_violation == 1UL, "violation index wrong");
    });

    run_check(out, "log-subordination examples", [&] {
        std::vector<double> v{0.9, 0.8, 0.7, 0.6};
        std::vector<double> u;
        for (double x : v) u.push_back(0.9 * x);
        if (!is_log_subordinate(DecaySequence::from_doubles(u, ctx.bits),
                                DecaySequence::from_doubles(v, ctx.bits))
                 .holds)
            return std::string("entrywise-smaller sequence should be log-subordinate");
        std::vector<double> g1, g2;
        for (int j = 1; j <= 12; ++j) {
            g1.push_back(std::pow(0.9, j));
            g2.push_back(std::pow(0.95, j));
        }
        return expect(is_log_subordinate(DecaySequence::from_doubles(g1, ctx.bits),
                                         DecaySequence::from_doubles(g2, ctx.bits))
                          .holds,
                      "geometric domination failed");
    });

    run_check(out, "convex images preserve subordination", [&] {
        CounterRng rng(ctx.seed, 404);
        for (int trial = 0; trial < 300; ++trial) {
            // generate non-increasing v then a subordinate u by shaving partial sums
            std::vector<double> v(8), u(8);
            double level = 1.0 + (splitmix64_at(ctx.seed, trial) % 1000) / 1000.0;
            for (int k = 0; k < 8; ++k) {
                level *= 0.5 + 0.5 * (splitmix64_at(ctx.seed, 1000 + trial * 8 + k) % 1000) / 1000.0;
                v[k] = level;
            }
            double shave = 0.9;
            double prev = 1e9;
            for (int k = 0; k < 8; ++k) {
                u[k] = std::min(prev, v[k] * shave);
                prev = u[k];
            }
            auto du = DecaySequence::from_doubles(u, ctx.bits);
            auto dv = DecaySequence::from_doubles(v, ctx.bits);
            if (!is_subordinate(du, dv).holds) return std::string("construction failed");
            if (!convex_image_check(du, dv)) return std::string("a convex image broke subordination");
        }
        return std::string();
    });

    run_check(out, "log-subordination corollary bounds", [&] {
        auto c = DecaySequence::from_doubles(std::vector<double>(10, 0.5), ctx.bits);
        if (!corollary_bounds_check(c, c)) return std::string("equality case failed");
        std::vector<double> v, u;
        for (int j = 1; j <= 16; ++j) {
            v.push_back(std::pow(0.92, j));
            u.push_back(std::pow(0.90, j));
        }
        return expect(corollary_bounds_check(DecaySequence::from_doubles(u, ctx.bits),
                                             DecaySequence::from_doubles(v, ctx.bits)),
                      "synthetic log-subordinate pair violated the bounds");
    });

    run_check(out, "powers of log-subordinate pairs stay subordinate", [&] {
        std::vector<double> v, u;
        for (int j = 1; j <= 10; ++j) {
            v.push_back(std::pow(0.9, j));
            u.push_back(std::pow(0.88, j) * 0.9);
        }
        auto du = DecaySequence::from_doubles(u, ctx.bits);
        auto dv = DecaySequence::from_doubles(v, ctx.bits);
        if (!is_log_subordinate(du, dv).holds) return std::string("setup failure");
        for (double p : {0.1, 0.5, 1.0, 2.0, 8.0}) {
            DecaySequence up, vp;
            for (auto& x : du.values) up.values.push_back(exp(Real(p, prec) * log(x)));
            for (auto& x : dv.values) vp.values.push_back(exp(Real(p, prec) * log(x)));
            if (!is_subordinate(up, vp).holds)
                return std::string("u^p not subordinate at p=") + std::to_string(p);
        }
        // counterexample: u_1 > v_1 kills log-subordination and the p-route
        auto cu = DecaySequence::from_doubles({1.2, 0.1}, ctx.bits);
        auto cv = DecaySequence::from_doubles({1.0, 0.5}, ctx.bits);
        return expect(!is_log_subordinate(cu, cv).holds, "counterexample unexpectedly held");
    });

    run_check(out, "diagonal conjugation of triangular sections", [&] {
        // d constant: spectra equal
        auto m = random_matrix(8, 8, ctx, 55, true);
        std::vector<Real> dconst(8, Real(2.0, prec));
        auto r1 = kacnelson_check(m, dconst, 8, ctx);
        for (std::size_t k = 0; k < 8; ++k)
            if (!(abs(r1.original.values[k] - r1.conjugated.values[k]) <=
                  r1.original.error_bounds[k] + r1.conjugated.error_bounds[k]))
                return std::string("scalar diagonal moved the spectrum");
        // random trials
        for (int trial = 0; trial < 100; ++trial) {
            auto a = random_matrix(12, 12, ctx, 600 + trial, true);
            std::vector<Real> d;
            for (long j = 1; j <= 12; ++j) d.emplace_back(j + 1, prec);
            auto rep = kacnelson_check(a, d, 12, ctx);
            if (!rep.subordination.holds)
                return std::string("log-subordination failed at trial ") + std::to_string(trial);
            if (!rep.norm_inequality)
                return std::string("norm inequality failed at trial ") + std::to_string(trial);
        }
        // diagonal matrix: conjugation leaves it untouched
        ComplexMatrix dm(6, 6, prec);
        CounterRng rng(ctx.seed, 77);
        for (std::size_t k = 0; k < 6; ++k) dm.at(k, k) = rng.gaussian_cplx(prec);
        std::vector<Real> d6;
        for (long j = 1; j <= 6; ++j) d6.emplace_back(j, prec);
        auto r3 = kacnelson_check(dm, d6, 6, ctx);
        Real p1 = spectrum_product(r3.original, 6);
        Real p2 = spectrum_product(r3.conjugated, 6);
        return expect(abs(p1 - p2) / p1 < ctx.eps_pow(3), "diagonal products differ");
    });

    run_check(out, "determinant maximum identity", [&] {
        auto id = ComplexMatrix::identity(4, ctx.prec());
        auto r = detmax_identity_check(id, 4, 50, ctx);
        if (!r.no_exceedance || !r.attained) return std::string("identity case failed");
        ComplexMatrix d3(3, 3, prec);
        d3.at(0, 0).re = Real(3L, prec);
        d3.at(1, 1).re = Real(2L, prec);
        d3.at(2, 2).re = Real(1L, prec);
        auto r2 = detmax_identity_check(d3, 2, 50, ctx);
        if (!r2.no_exceedance || !r2.attained) return std::string("diag(3,2,1) n=2 failed");
        auto m = random_matrix(6, 6, ctx, 99);
        auto r3 = detmax_identity_check(m, 3, 200, ctx);
        return expect(r3.no_exceedance && r3.attained, "random 6x6 failed");
    });

    run_check(out, "comparison chain across families at desk scale", [&] {
        auto chain = product_chain_check(
            scale_map(0.5, ctx),
            {WeightFamily::dirichlet(0.5), WeightFamily::hardy(), WeightFamily::bergman(0)}, 16, ctx);
        if (!chain.all_hold()) return std::string("scaling-map chain failed");
        auto chain2 = product_chain_check(
            lens(0.5, ctx),
            {WeightFamily::dirichlet(0.5), WeightFamily::hardy(), WeightFamily::bergman(0)}, 64, ctx);
        if (!chain2.all_hold()) return std::string("lens chain failed");
        if (chain2.pairs[0].certified_prefix < 30) return std::string("lens certified prefix too short");
        // half-spectrum bound s_{2n}(gamma) <= sqrt(s_1(beta) s_n(beta))
        const auto& sb = chain2.spectra[0];
        const auto& sg = chain2.spectra[1];
        for (std::size_t n = 1; 2 * n <= 40; ++n) {
            Real rhs = sqrt(sb.values[0] * sb.values[n - 1]);
            Real slack = sg.error_bounds[2 * n - 1] + sb.error_bounds[0] + sb.error_bounds[n - 1];
            if (!(sg.values[2 * n - 1] <= rhs + slack + Real(1e-25, prec)))
                return std::string("half-index bound failed at n=") + std::to_string(n);
        }
        return std::string();
    });

    run_check(out, "exterior powers of conjugated triangular matrices", [&] {
        for (std::size_t dim : {6UL, 8UL}) {
            auto a = random_matrix(dim, dim, ctx, 300 + dim, true);
            std::vector<Real> d;
            for (long j = 0; j < static_cast<long>(dim); ++j) d.emplace_back(j + 2, prec);
            ComplexMatrix conj_m(dim, dim, prec);
            for (std::size_t j = 0; j < dim; ++j)
                for (std::size_t i = 0; i < dim; ++i)
                    conj_m.at(i, j) = a.at(i, j) * (d[j] / d[i]);
            auto sp = svd_singular_values(conj_m, ctx);
            for (std::size_t n = 2; n <= 3; ++n) {
                auto cm = compound_matrix(conj_m, n);
                auto cs = svd_singular_values(cm, ctx);
                Real prod = spectrum_product(sp, n);
                if (!(abs(cs.values[0] - prod) / prod < ctx.eps_pow(4)))
                    return std::string("compound route mismatch");
            }
        }
        return std::string();
    });

    return out;
}

std::vector<CheckResult> verify_geometry(const PrecisionContext& ctx) {
    std::vector<CheckResult> out;
    const mpfr_prec_t prec = ctx.prec();

    run_check(out, "window sandwich between boxes", [&] {
        CounterRng rng(ctx.seed, 31);
        for (int t = 0; t < 2000; ++t) {
            double h = 0.02 + 0.3 * (splitmix64_at(ctx.seed, t) % 997) / 997.0;
            Real r = rng.uniform(prec), a = rng.uniform(prec) * 6.283185307;
            Real sn(prec), cs(prec);
            sin_cos(sn, cs, a);
            Cplx z(r * cs, r * sn);
            Cplx xi(1.0, 0.0, prec);
            CarlesonWindow w(xi, h);
            if (in_box(xi, h, z) && !w.contains(z)) return std::string("S(h) escaped W(h)");
            if (w.contains(z) && !in_box(xi, 2.0 * 3.14159265358979323846 * h, z))
                return std::string("W(h) escaped S(2 pi h)");
        }
        return std::string();
    });

    run_check(out, "pull-back areas: identity, strict contraction, cusp", [&] {
        auto idm = monomial_map(1, ctx);
        CarlesonWindow w(Cplx(1.0, 0.0, prec), 0.1);
        auto est = pullback_area(idm, w, {9}, ctx);
        Real exact(0.1 * 0.1 * 1.9, prec);
        if (!(abs(est.value - exact) < est.grid_delta * 4.0 + Real(2e-3, prec)))
            return std::string("identity window area off");
        auto est2 = pullback_area(scale_map(0.5, ctx), w, {7}, ctx);
        if (!est2.value.is_zero()) return std::string("strict contraction should miss the window");
        Symbol chi = cusp(ctx);
        PullbackSampler smp(chi, {9}, ctx);
        Real prev(1e9, prec);
        for (double h : {0.1, 0.05, 0.025}) {
            CarlesonWindow wh(Cplx(1.0, 0.0, prec), h);
            Real v = smp.measure([&wh](const Cplx& z) { return wh.contains(z); });
            if (!(v > 0.0 && v < prev)) return std::string("cusp masses not positive decreasing");
            prev = v;
        }
        return std::string();
    });

    run_check(out, "carleson function: rotation invariance and h^2 bound", [&] {
        auto idm = monomial_map(1, ctx);
        PullbackSampler sid(idm, {8}, ctx);
        Real v1 = rho2(idm, 0.1, 1, sid, ctx);
        Real v8 = rho2(idm, 0.1, 8, sid, ctx);
        if (!(abs(v1 - v8) < Real(2e-3, prec))) return std::string("identity rho depends on xi");
        for (const Symbol& s : {lens(0.5, ctx), cusp(ctx), scale_map(0.9, ctx)}) {
            PullbackSampler smp(s, {9}, ctx);
            for (double h : {0.25, 0.125, 0.0625, 0.03125}) {
                Real r = rho2(s, h, 8, smp, ctx);
                if (!(r < Real(64.0 * h * h, prec)))
                    return "rho2 above C h^2 for " + s.name;
            }
        }
        return std::string();
    });

    run_check(out, "nevanlinna counting: exact cases and schwarz bound", [&] {
        auto idm = monomial_map(1, ctx);
        Cplx w(0.3, 0.2, prec);
        auto nv = nevanlinna_univalent(idm, w, 1.0, ctx);
        if (!nv || !(abs(*nv - (Real(1L, prec) - norm_sq(w))) < Real(1e-25, prec)))
            return std::string("identity counting off");
        auto sc = scale_map(0.5, ctx);
        auto nv2 = nevanlinna_univalent(sc, Cplx(0.2, 0.0, prec), 1.5, ctx);
        Real want = exp(Real(1.5, prec) * log(Real(1L, prec) - Real(0.16, prec)));
        if (!nv2 || !(abs(*nv2 - want) < Real(1e-20, prec))) return std::string("scaled counting off");
        if (nevanlinna_univalent(sc, Cplx(0.8, 0.0, prec), 1.0, ctx))
            return std::string("point outside the image should have no preimage");
        Symbol chi = cusp(ctx);
        Symbol l = lens(0.5, ctx);
        for (const Symbol* s : {&chi, &l}) {
            for (int t = 0; t < 40; ++t) {
                double r = 0.1 + 0.8 * (splitmix64_at(ctx.seed, 900 + t) % 997) / 997.0;
                double a = 6.28 * (splitmix64_at(ctx.seed, 2900 + t) % 997) / 997.0;
                Cplx z(r * std::cos(a), r * std::sin(a), prec);
                Cplx img = s->eval(z);
                auto n = nevanlinna_univalent(*s, img, 1.0, ctx);
                if (!n) return "no preimage found for an image point of " + s->name;
                Real schwarz = Real(1L, prec) - norm_sq(img);
                if (!(*n <= schwarz + Real(1e-20, prec)))
                    return "schwarz bound violated for " + s->name;
            }
        }
        return std::string();
    });

    run_check(out, "luecking level sums", [&] {
        auto lv0 = luecking_sum(scale_map(0.5, ctx), 0.0, 2.0, 6, {8}, ctx);
        for (std::size_t n = 2; n <= 6; ++n)
            if (!lv0[n - 1].is_zero()) return std::string("contraction should vanish at level >= 2");
        auto lvi = luecking_sum(monomial_map(1, ctx), 0.0, 2.0, 6, {9}, ctx);
        if (!(lvi.back() > 0.1)) return std::string("identity levels must not vanish");
        auto lvl = luecking_sum(lens(0.5, ctx), 0.0, 1.0, 6, {9}, ctx);
        for (std::size_t n = 2; n < lvl.size(); ++n)
            if (!(lvl[n] < lvl[n - 1])) return std::string("lens levels should decrease");
        return std::string();
    });

    run_check(out, "separation constants", [&] {
        std::vector<Cplx> two{Cplx(prec), Cplx(0.5, 0.0, prec)};
        if (!(abs(carleson_separation(two, ctx) - Real(0.5, prec)) < Real(1e-40, prec)))
            return std::string("two-point separation wrong");
        std::vector<Cplx> one{Cplx(0.3, 0.1, prec)};
        if (!(carleson_separation(one, ctx) == Real(1L, prec)))
            return std::string("singleton separation should be the empty product");
        // geometric schedule: log delta vs 1/eps bounded
        for (double eps : {0.5, 0.4, 0.3}) {
            std::vector<Cplx> pts;
            for (int j = 1; j <= 10; ++j)
                pts.emplace_back(Real(1L, prec) - exp(Real(-j * eps, prec)), Real(prec));
            Real delta = carleson_separation(pts, ctx);
            Real lhs = -log(delta) * eps;
            if (!(lhs > 0.0 && lhs < 40.0)) return std::string("schedule separation out of range");
        }
        return std::string();
    });

    run_check(out, "lower-bound proxy", [&] {
        auto idm = monomial_map(1, ctx);
        std::vector<Cplx> pts;
        for (int j = 1; j <= 6; ++j) pts.emplace_back(0.1 * j, 0.0, prec);
        Evaluator one = [&](const Cplx&) { return Cplx(1.0, 0.0, prec); };
        Real lb = lower_bound_estimate(idm, one, pts, 1.0, ctx);
        Real delta = carleson_separation(pts, ctx);
        Real want = pow(delta, 4L);
        if (!(abs(lb - want) / want < Real(1e-20, prec))) return std::string("identity proxy off");
        Symbol chi = cusp(ctx);
        Evaluator dchi = chi.deriv;
        Real prev(1e300, prec);
        for (std::size_t n : {4UL, 8UL, 12UL}) {
            std::vector<Cplx> us;
            double eps = std::log(static_cast<double>(n)) / static_cast<double>(n) + 0.25;
            for (std::size_t j = 1; j <= n; ++j) {
                // u_j on the radius with 1 - chi(u_j) ~ e^{-j eps}: invert numerically
                Real target = exp(Real(-static_cast<double>(j) * eps, prec));
                double lo = 0.0, hi = 1.0 - 1e-12;
                for (int it = 0; it < 200; ++it) {
                    double mid = 0.5 * (lo + hi);
                    Real v = Real(1L, prec) - chi.eval(Cplx(mid, 0.0, prec)).re;
                    if (v > target) lo = mid; else hi = mid;
                }
                us.emplace_back(0.5 * (lo + hi), 0.0, prec);
            }
            Real lbn = lower_bound_estimate(chi, dchi, us, 1.0, ctx);
            if (!(lbn < prev)) return std::string("cusp proxy should shrink with n");
            prev = lbn;
        }
        return std::string();
    });

    run_check(out, "decay-model fits recover synthetic rates", [&] {
        std::vector<Real> s1, s2;
        for (int n = 1; n <= 64; ++n) {
            s1.push_back(exp(Real(-2.0 * std::sqrt(static_cast<double>(n)), prec)));
            s2.push_back(exp(Real(static_cast<double>(n) * std::log(0.9), prec)));
        }
        auto f1 = fit_decay(s1, DecayModel::SqrtN, 8, 64);
        if (!(std::abs(f1.rate - 2.0) < 0.02)) return std::string("sqrt rate off");
        auto f2 = fit_decay(s2, DecayModel::Geometric, 8, 64);
        if (!(std::abs(f2.rate - std::log(1.0 / 0.9)) < 0.002)) return std::string("geometric rate off");
        auto ranked = model_compare(s1, 8, 64);
        if (ranked[0].model != DecayModel::SqrtN) return std::string("sqrt model not ranked first");
        std::vector<Real> s3;
        for (int n = 1; n <= 64; ++n)
            s3.push_back(exp(Real(-static_cast<double>(n) / std::log(n + 1.0), prec)));
        auto ranked3 = model_compare(s3, 8, 64);
        return expect(ranked3[0].model == DecayModel::NOverLogN, "n/log n model not ranked first");
    });

    return out;
}

std::vector<CheckResult> verify_suite(const std::string& name, const PrecisionContext& ctx) {
    if (name == "numerics") return verify_numerics(ctx);
    if (name == "series") return verify_series(ctx);
    if (name == "spaces") return verify_spaces(ctx);
    if (name == "symbols") return verify_symbols(ctx);
    if (name == "operators") return verify_operators(ctx);
    if (name == "subordination") return verify_subordination(ctx);
    if (name == "geometry") return verify_geometry(ctx);
    if (name == "all") {
        std::vector<CheckResult> all;
        for (const char* s :
             {"numerics", "series", "spaces", "symbols", "operators", "subordination", "geometry"}) {
            auto part = verify_suite(s, ctx);
            for (auto& c : part) c.name = std::string(s) + ": " + c.name;
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace specdecay

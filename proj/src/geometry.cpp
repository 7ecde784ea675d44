#include "specdecay/geometry.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specdecay {

CarlesonWindow::CarlesonWindow(Cplx xi_, double h_) : xi(std::move(xi_)), h(h_) {
    if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("CarlesonWindow: h in (0,1)");
    Real m = abs(xi);
    if (abs(m - 1.0) > 1e-12) throw std::invalid_argument("CarlesonWindow: |xi| = 1 required");
}

bool CarlesonWindow::contains(const Cplx& z) const {
    Real r = abs(z);
    if (r < 1.0 - h) return false;
    Cplx rotated = conj(xi) * z;
    Real a = arg(rotated);
    Real ph = Real::pi(a.prec()) * h;
    return a >= -ph && a < ph;
}

bool in_box(const Cplx& xi, double h, const Cplx& z) {
    return abs(xi - z) < h && abs(z) < 1.0;
}

bool in_hl_box(int level, long sector, const Cplx& z) {
    double lo = 1.0 - std::pow(2.0, 1 - level);
    double hi = 1.0 - std::pow(2.0, -level);
    Real r = abs(z);
    if (!(r >= lo && r < hi)) return false;
    Real a = arg(z);
    double two_pi = 2.0 * 3.14159265358979323846;
    double width = two_pi / std::pow(2.0, level);
    double alo = sector * width;          // arg in [0, 2pi)
    double ahi = (sector + 1) * width;
    Real a_pos = a;
    if (a_pos < 0.0) a_pos += Real(two_pi, a.prec());
    return a_pos >= alo && a_pos < ahi;
}

PullbackSampler::PullbackSampler(const Symbol& s, SamplerSpec spec, const PrecisionContext& ctx)
    : spec_(spec), prec_(ctx.prec()) {
    const long m = 1L << spec.k;
    images_.reserve(static_cast<std::size_t>(m) * m);
    weights_.reserve(images_.capacity());
    one_minus_r2_.reserve(images_.capacity());
    // midpoint rule on (r, theta): dA = 2 r dr dtheta / (2 pi) normalized
    std::vector<Cplx> rays;
    rays.reserve(m);
    for (long a = 0; a < m; ++a) rays.push_back(unit_root(2 * a + 1, 2 * m, prec_));
    for (long ir = 0; ir < m; ++ir) {
        Real r(((static_cast<double>(ir) + 0.5) / static_cast<double>(m)), prec_);
        Real w = r * (2.0 / static_cast<double>(m) / static_cast<double>(m));
        Real omr2 = Real(1L, prec_) - r * r;
        for (long a = 0; a < m; ++a) {
            images_.push_back(rays[a] * r);
            weights_.push_back(w);
            one_minus_r2_.push_back(omr2);
        }
    }
    const long total = static_cast<long>(images_.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < total; ++i) images_[i] = s.eval(images_[i]);
}

Real PullbackSampler::measure(const std::function<bool(const Cplx&)>& in_region, double gamma) const {
    const long total = static_cast<long>(images_.size());
    Real acc(prec_);
    for (long i = 0; i < total; ++i) {
        if (!in_region(images_[i])) continue;
        if (gamma == 0.0) {
            acc += weights_[i];
        } else {
            Real g(gamma, prec_);
            acc += weights_[i] * exp(g * log(one_minus_r2_[i])) * (gamma + 1.0);
        }
    }
    return acc;
}

std::vector<Real> PullbackSampler::hl_level_masses(int level, double gamma) const {
    const long sectors = 1L << level;
    std::vector<Real> masses(sectors, Real(prec_));
    double lo = 1.0 - std::pow(2.0, 1 - level);
    double hi = 1.0 - std::pow(2.0, -level);
    double two_pi = 2.0 * 3.14159265358979323846;
    double width = two_pi / static_cast<double>(sectors);
    const long total = static_cast<long>(images_.size());
    for (long i = 0; i < total; ++i) {
        Real r = abs(images_[i]);
        if (!(r >= lo && r < hi)) continue;
        double a = arg(images_[i]).to_double();
        if (a < 0) a += two_pi;
        long j = std::min<long>(sectors - 1, static_cast<long>(a / width));
        if (gamma == 0.0) {
            masses[j] += weights_[i];
        } else {
            Real g(gamma, prec_);
            masses[j] += weights_[i] * exp(g * log(one_minus_r2_[i])) * (gamma + 1.0);
        }
    }
    return masses;
}

MeasureEstimate pullback_area(const Symbol& s, const CarlesonWindow& w, SamplerSpec spec,
                              const PrecisionContext& ctx) {
    PullbackSampler fine(s, spec, ctx);
    SamplerSpec coarse_spec{spec.k - 1};
    PullbackSampler coarse(s, coarse_spec, ctx);
    auto pred = [&w](const Cplx& z) { return w.contains(z); };
    Real v = fine.measure(pred);
    Real vc = coarse.measure(pred);
    return {v, abs(v - vc)};
}

Real rho2(const Symbol& s, double h, int xi_count, const PullbackSampler& sampler,
          const PrecisionContext& ctx) {
    Real best(ctx.prec());
    for (int i = 0; i < xi_count; ++i) {
        Cplx xi = unit_root(i, xi_count, ctx.prec());
        CarlesonWindow w(xi, h);
        best = max(best, sampler.measure([&w](const Cplx& z) { return w.contains(z); }));
    }
    return best;
}

std::optional<Real> nevanlinna_univalent(const Symbol& s, const Cplx& w, double alpha,
                                         const PrecisionContext& ctx) {
    if (!s.univalent) throw std::invalid_argument("nevanlinna_univalent: univalent symbols only");
    const mpfr_prec_t prec = ctx.prec();
    Real target_res = Real::two_pow(-static_cast<long>(ctx.bits) / 2, kBoundPrec);
    Cplx best(prec);
    Real best_res(1e30, kBoundPrec);
    // 32 deterministic starts on a coarse interior grid
    for (int ir = 0; ir < 4; ++ir) {
        for (int ia = 0; ia < 8; ++ia) {
            double r0 = 0.15 + 0.22 * ir;
            double a0 = 2.0 * 3.14159265358979323846 * ia / 8.0;
            Cplx z(r0 * std::cos(a0), r0 * std::sin(a0), prec);
            bool ok = true;
            for (int it = 0; it < 200; ++it) {
                Cplx fv = s.eval(z) - w;
                Real res = abs(fv);
                if (res < target_res) break;
                Cplx dv = s.deriv(z);
                if (norm_sq(dv).is_zero()) { ok = false; break; }
                Cplx step = fv / dv;
                Cplx zn = z - step;
                // damp until the iterate stays in the disk and improves
                int halvings = 0;
                while (halvings < 60 &&
                       (!(abs(zn) < 1.0) || !(abs(s.eval(zn) - w) < res))) {
                    step = step * 0.5;
                    zn = z - step;
                    ++halvings;
                }
                if (halvings >= 60) { ok = false; break; }
                z = zn;
            }
            if (!ok) continue;
            Real res = abs(s.eval(z) - w);
            if (res < best_res) {
                best_res = bound(0.0) + res;
                best = z;
            }
        }
    }
    if (!(best_res < target_res)) return std::nullopt;  // no preimage reached
    Real om = Real(1L, prec) - norm_sq(best);
    if (alpha == 1.0) return om;
    return exp(Real(alpha, prec) * log(om));
}

std::vector<Real> luecking_sum(const Symbol& s, double gamma, double p, int n_max, SamplerSpec spec,
                               const PrecisionContext& ctx) {
    if (gamma < -1.0) throw std::invalid_argument("luecking_sum: gamma >= -1");
    if (!(p > 0.0)) throw std::invalid_argument("luecking_sum: p > 0");
    const mpfr_prec_t prec = ctx.prec();
    std::vector<Real> levels;
    if (gamma == -1.0) {
        // boundary pull-back m_phi sampled on the circle of radius 1 - 2^-(n_max+2)
        const long m = 1L << (spec.k + 4);
        double r0 = 1.0 - std::pow(2.0, -(n_max + 2));
        std::vector<Cplx> img;
        img.reserve(m);
        Real rr(r0, prec);
        for (long a = 0; a < m; ++a) img.push_back(s.eval(unit_root(a, m, prec) * rr));
        for (int lev = 1; lev <= n_max; ++lev) {
            Real sum(prec);
            long sectors = 1L << lev;
            std::vector<long> counts(sectors, 0);
            for (const auto& z : img) {
                // window W(e^{2pi i j / 2^lev}, 2^-lev): |z| >= 1 - 2^-lev
                Real r = abs(z);
                if (r < 1.0 - std::pow(2.0, -lev)) continue;
                Real a = arg(z);
                double two_pi = 2.0 * 3.14159265358979323846;
                double width = two_pi / static_cast<double>(sectors);
                double a_d = a.to_double();
                if (a_d < 0) a_d += two_pi;
                long j = std::min<long>(sectors - 1, static_cast<long>(a_d / width));
                counts[j]++;
            }
            for (long j = 0; j < sectors; ++j) {
                if (counts[j] == 0) continue;
                Real mass(static_cast<double>(counts[j]) / static_cast<double>(m), prec);
                Real term = exp(Real(p / 2.0, prec) * log(mass * std::pow(2.0, lev)));
                sum += term;
            }
            levels.push_back(sum);
        }
        return levels;
    }
    PullbackSampler sampler(s, spec, ctx);
    for (int lev = 1; lev <= n_max; ++lev) {
        Real sum(prec);
        auto masses = sampler.hl_level_masses(lev, gamma);
        for (const auto& mass : masses) {
            if (mass.is_zero()) continue;
            Real scaled = mass * std::pow(2.0, static_cast<double>(lev) * (gamma + 2.0));
            sum += exp(Real(p / 2.0, prec) * log(scaled));
        }
        levels.push_back(sum);
    }
    return levels;
}

Real carleson_separation(const std::vector<Cplx>& points, const PrecisionContext& ctx) {
    if (points.empty()) throw std::invalid_argument("carleson_separation: empty");
    const mpfr_prec_t prec = ctx.prec();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (abs(points[i] - points[j]).is_zero())
                throw std::invalid_argument("carleson_separation: coincident points");
    Real best(1e30, prec);
    Cplx one(1.0, 0.0, prec);
    for (std::size_t j = 0; j < points.size(); ++j) {
        Real prod(1L, prec);
        for (std::size_t k = 0; k < points.size(); ++k) {
            if (k == j) continue;
            prod *= abs((points[j] - points[k]) / (one - conj(points[k]) * points[j]));
        }
        best = min(best, prod);
    }
    return best;
}

Real lower_bound_estimate(const Symbol& s, const Evaluator& w, const std::vector<Cplx>& u_points,
                          double alpha, const PrecisionContext& ctx) {
    const mpfr_prec_t prec = ctx.prec();
    std::vector<Cplx> v_points;
    v_points.reserve(u_points.size());
    for (const auto& u : u_points) v_points.push_back(s.eval(u));
    for (std::size_t i = 0; i < v_points.size(); ++i)
        for (std::size_t j = i + 1; j < v_points.size(); ++j)
            if (abs(v_points[i] - v_points[j]).is_zero())
                throw std::invalid_argument("lower_bound_estimate: image points not distinct");
    WeightFamily berg = WeightFamily::bergman(alpha);
    Real tol = Real::two_pow(-static_cast<long>(ctx.bits) / 2, prec);
    Real inf(1e300, prec);
    for (std::size_t j = 0; j < u_points.size(); ++j) {
        Real kv = sqrt(kernel_norm_sq(v_points[j], berg, tol, ctx).value);
        Real ku = sqrt(kernel_norm_sq(u_points[j], berg, tol, ctx).value);
        Real cand = abs(w(u_points[j])) * kv / ku;
        inf = min(inf, cand);
    }
    Real delta = carleson_separation(v_points, ctx);
    return inf * pow(delta, 4L);
}

const char* model_name(DecayModel m) {
    switch (m) {
        case DecayModel::NOverLogN: return "n_over_log_n";
        case DecayModel::SqrtN: return "sqrt_n";
        case DecayModel::Geometric: return "geometric";
    }
    return "?";
}

namespace {

double regressor(DecayModel m, std::size_t n) {
    switch (m) {
        case DecayModel::NOverLogN: return static_cast<double>(n) / std::log(static_cast<double>(n));
        case DecayModel::SqrtN: return std::sqrt(static_cast<double>(n));
        case DecayModel::Geometric: return static_cast<double>(n);
    }
    return 0.0;
}

}  // namespace

DecayFit fit_decay(const std::vector<Real>& spectrum, DecayModel model, std::size_t n_min,
                   std::size_t n_max) {
    if (n_min < 2) n_min = 2;
    n_max = std::min(n_max, spectrum.size());
    if (n_max < n_min + 7) throw std::invalid_argument("fit_decay: fit range shorter than 8 points");
    // least squares of log a_n = -b x_n + c in double (logs are modest numbers)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        double x = regressor(model, n);
        double y = static_cast<double>(log(spectrum[n - 1]).to_double());
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    double det = cnt * sxx - sx * sx;
    double slope = (cnt * sxy - sx * sy) / det;
    double intercept = (sy * sxx - sx * sxy) / det;
    double rss = 0;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        double x = regressor(model, n);
        double y = log(spectrum[n - 1]).to_double();
        double e = y - (slope * x + intercept);
        rss += e * e;
    }
    DecayFit fit;
    fit.model = model;
    fit.rate = -slope;
    fit.offset = intercept;
    fit.rms_residual = std::sqrt(rss / cnt);
    fit.n_min = n_min;
    fit.n_max = n_max;
    return fit;
}

std::vector<DecayFit> model_compare(const std::vector<Real>& spectrum, std::size_t n_min,
                                    std::size_t n_max) {
    std::vector<DecayFit> fits;
    for (DecayModel m : {DecayModel::NOverLogN, DecayModel::SqrtN, DecayModel::Geometric})
        fits.push_back(fit_decay(spectrum, m, n_min, n_max));
    std::sort(fits.begin(), fits.end(),
              [](const DecayFit& a, const DecayFit& b) { return a.rms_residual < b.rms_residual; });
    return fits;
}

}  // namespace specdecay

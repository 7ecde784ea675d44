#include "specdecay/subordination.hpp"

#include <algorithm>
#include <cmath>

namespace specdecay {

Real DecaySequence::positivity_floor(unsigned bits) {
    // 10^(-40 * bits/256)
    Real ex = bound(-40.0 * static_cast<double>(bits) / 256.0);
    return exp(ex * log(bound(10.0)));
}

DecaySequence DecaySequence::from_doubles(const std::vector<double>& v, unsigned bits) {
    DecaySequence s;
    Real floor_v = positivity_floor(bits);
    for (double x : v) {
        Real r(x, kBoundPrec);
        s.values.push_back(max(r, floor_v));
    }
    return s;
}

DecaySequence DecaySequence::from_spectrum(const SingularSpectrum& sp, unsigned bits) {
    DecaySequence s;
    Real floor_v = positivity_floor(bits);
    for (std::size_t k = 0; k < sp.values.size(); ++k) {
        s.values.push_back(max(sp.values[k], floor_v));
        s.error_bounds.push_back(sp.error_bounds[k]);
    }
    return s;
}

namespace {

Real seq_error(const DecaySequence& s, std::size_t k) {
    return s.error_bounds.empty() ? bound(0.0) : s.error_bounds[k];
}

std::size_t certified_prefix_len(const DecaySequence& u, const DecaySequence& v) {
    std::size_t n = std::min(u.values.size(), v.values.size());
    std::size_t len = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (u.values[k] > 10.0 * seq_error(u, k) && v.values[k] > 10.0 * seq_error(v, k))
            len = k + 1;
        else
            break;
    }
    return len;
}

SubordinationReport prefix_compare(const DecaySequence& u, const DecaySequence& v, bool log_scale) {
    if (u.values.size() != v.values.size())
        throw std::invalid_argument("subordination: length mismatch");
    SubordinationReport rep;
    rep.certified_prefix = certified_prefix_len(u, v);
    const mpfr_prec_t prec = 256;
    Real su(prec), sv(prec), slack_u(prec), slack_v(prec);
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        if (log_scale) {
            if (!(u.values[k] > 0.0) || !(v.values[k] > 0.0))
                throw std::invalid_argument("log-subordination needs positive sequences");
            su += log(u.values[k]);
            sv += log(v.values[k]);
            // first-order log-slack: err/value
            slack_u += seq_error(u, k) / u.values[k];
            slack_v += seq_error(v, k) / v.values[k];
        } else {
            su += u.values[k];
            sv += v.values[k];
            slack_u += seq_error(u, k);
            slack_v += seq_error(v, k);
        }
        Real margin = sv - su;
        rep.margins.push_back(margin);
        if (margin + slack_u + slack_v < 0.0 && !rep.first_violation) {
            rep.holds = false;
            rep.first_violation = k + 1;
        }
    }
    return rep;
}

}  // namespace

SubordinationReport is_subordinate(const DecaySequence& u, const DecaySequence& v) {
    return prefix_compare(u, v, false);
}

SubordinationReport is_log_subordinate(const DecaySequence& u, const DecaySequence& v) {
    return prefix_compare(u, v, true);
}

bool convex_image_check(const DecaySequence& u, const DecaySequence& v,
                        const std::vector<std::function<Real(const Real&)>>& transforms) {
    std::vector<std::function<Real(const Real&)>> hs = transforms;
    if (hs.empty()) {
        for (double p : {0.25, 0.5, 1.0, 2.0, 4.0})
            hs.push_back([p](const Real& x) { return exp(x * p); });
        // hinge thresholds sampled from the value range
        Real lo = u.values.back(), hi = u.values.front();
        for (double f : {0.1, 0.5, 0.9}) {
            Real t = lo + (hi - lo) * f;
            hs.push_back([t](const Real& x) { return max(x - t, Real(0.0, x.prec())) + t; });
        }
    }
    for (const auto& h : hs) {
        DecaySequence hu, hv;
        for (const auto& x : u.values) hu.values.push_back(h(x));
        for (const auto& x : v.values) hv.values.push_back(h(x));
        if (!is_subordinate(hu, hv).holds) return false;
    }
    return true;
}

bool corollary_bounds_check(const DecaySequence& u, const DecaySequence& v) {
    const std::size_t len = std::min(u.values.size(), v.values.size());
    const mpfr_prec_t prec = 256;
    Real tol = bound(1e-15);
    for (std::size_t n = 1; n <= len; ++n) {
        for (std::size_t N = n; N <= len; ++N) {
            // u_N <= v_1^(n/N) v_n^(1-n/N)
            Real t(static_cast<double>(n) / static_cast<double>(N), prec);
            Real rhs = exp(t * log(v.values[0]) + (Real(1.0, prec) - t) * log(v.values[n - 1]));
            if (u.values[N - 1] > rhs * (Real(1.0, prec) + tol)) return false;
        }
        if (2 * n <= len) {
            Real rhs = sqrt(v.values[0] * v.values[n - 1]);
            if (u.values[2 * n - 1] > rhs * (Real(1.0, prec) + tol)) return false;
        }
    }
    return true;
}

KacnelsonReport kacnelson_check(const ComplexMatrix& a, const std::vector<Real>& d,
                                std::size_t n_max, const PrecisionContext& ctx) {
    if (a.rows() != a.cols()) throw std::invalid_argument("kacnelson_check: square required");
    if (d.size() != a.cols()) throw std::invalid_argument("kacnelson_check: d length mismatch");
    for (std::size_t k = 0; k + 1 < d.size(); ++k)
        if (!(d[k] <= d[k + 1]) || !(d[k] > 0.0))
            throw std::invalid_argument("kacnelson_check: d must be positive non-decreasing");
    const std::size_t n = a.rows();
    ComplexMatrix conj_m(n, n, a.prec());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) conj_m.at(i, j) = a.at(i, j) * (d[j] / d[i]);

    KacnelsonReport rep;
    rep.original = svd_singular_values(a, ctx);
    rep.conjugated = svd_singular_values(conj_m, ctx);

    std::size_t keep = std::min(n_max, rep.original.values.size());
    DecaySequence du, dv;
    Real floor_v = DecaySequence::positivity_floor(ctx.bits);
    for (std::size_t k = 0; k < keep; ++k) {
        du.values.push_back(max(rep.conjugated.values[k], floor_v));
        du.error_bounds.push_back(rep.conjugated.error_bounds[k]);
        dv.values.push_back(max(rep.original.values[k], floor_v));
        dv.error_bounds.push_back(rep.original.error_bounds[k]);
    }
    rep.subordination = is_log_subordinate(du, dv);
    Real lhs = rep.conjugated.values[0] - rep.conjugated.error_bounds[0];
    Real rhs = rep.original.values[0] + rep.original.error_bounds[0];
    rep.norm_inequality = lhs <= rhs;
    return rep;
}

DetMaxReport detmax_identity_check(const ComplexMatrix& m, std::size_t n, std::size_t trials,
                                   const PrecisionContext& ctx) {
    if (n > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("detmax_identity_check: n too large");
    SvdOptions o;
    o.want_vectors = true;
    SvdResult svd = svd_jacobi(m, ctx, o);
    Real prod(1L, ctx.prec());
    for (std::size_t k = 0; k < n; ++k) prod *= svd.spectrum.values[k];

    DetMaxReport rep;
    for (std::size_t t = 0; t < trials; ++t) {
        auto f = random_orthonormal_system(m.cols(), n, ctx, 2 * t);
        auto g = random_orthonormal_system(m.rows(), n, ctx, 2 * t + 1);
        Real dv = abs(det_gram(m, f, g));
        Real ratio = dv / prod;
        rep.worst_excess_ratio = max(rep.worst_excess_ratio, bound(0.0) + ratio);
        if (ratio > Real(1.0, ctx.prec()) + ctx.eps_pow(4)) rep.no_exceedance = false;
    }
    // singular-vector systems attain the product
    std::vector<std::vector<Cplx>> f0, g0;
    for (std::size_t k = 0; k < n; ++k) {
        f0.push_back(svd.right[k]);
        g0.push_back(svd.left[k]);
    }
    Real attained = abs(det_gram(m, f0, g0));
    rep.attainment_gap = bound(0.0) + abs(attained - prod) / prod;
    rep.attained = rep.attainment_gap < ctx.eps_pow(4);
    return rep;
}

ChainResult product_chain_check(const Symbol& s, const std::vector<WeightFamily>& families,
                                std::size_t n, const PrecisionContext& ctx, bool include_index_zero,
                                const SvdOptions& opts) {
    if (families.size() < 2) throw std::invalid_argument("product_chain_check: need >= 2 families");
    if (!s.fixes_origin) throw CertificateError("product_chain_check: symbol must fix the origin");
    for (std::size_t i = 0; i + 1 < families.size(); ++i) {
        auto rep = check_weight_domination(families[i], families[i + 1], static_cast<long>(n), ctx);
        if (!rep.holds)
            throw CertificateError("product_chain_check: domination fails for adjacent pair at k=" +
                                   std::to_string(rep.first_violation));
    }
    SymbolSeriesTable table = build_power_table(s, n, ctx);
    ChainResult out;
    for (const auto& fam : families) {
        TruncatedOperator op = build_matrix_from(table, fam, ctx);
        if (!op.triangular) throw CertificateError("product_chain_check: matrix not triangular");
        if (include_index_zero) {
            out.spectra.push_back(approx_numbers(op, ctx, opts));
        } else {
            ComplexMatrix hyper = op.matrix.drop_leading(1);
            SingularSpectrum sp = svd_singular_values(hyper, ctx, opts);
            Real weyl = op.entry_error * static_cast<double>(hyper.rows());
            for (auto& e : sp.error_bounds) e += weyl;
            out.spectra.push_back(std::move(sp));
        }
    }
    for (std::size_t i = 0; i + 1 < families.size(); ++i) {
        DecaySequence dominated = DecaySequence::from_spectrum(out.spectra[i + 1], ctx.bits);
        DecaySequence dominating = DecaySequence::from_spectrum(out.spectra[i], ctx.bits);
        out.pairs.push_back(is_log_subordinate(dominated, dominating));
    }
    return out;
}

}  // namespace specdecay

#include "specdecay/operators.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specdecay {

namespace {

Real abs_upper(const Cplx& z) {
    Real r(kBoundPrec);
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDU);
    return r;
}

// entry_error = max_i sqrt(beta_i) * max_j (err_j / sqrt(beta_j))
Real entry_error_bound(const std::vector<Real>& beta, const std::vector<Real>& col_err) {
    Real max_b = bound(0.0);
    for (const auto& b : beta) {
        Real v = bound(0.0);
        mpfr_set(v.raw(), b.raw(), MPFR_RNDU);
        max_b = max(max_b, v);
    }
    Real worst = bound(0.0);
    for (std::size_t j = 0; j < col_err.size(); ++j) {
        Real bj = bound(0.0);
        mpfr_set(bj.raw(), beta[j].raw(), MPFR_RNDD);
        worst = max(worst, col_err[j] / sqrt(bj));
    }
    return sqrt(max_b) * worst * 1.000000001;
}

}  // namespace

SymbolSeriesTable build_power_table(const Symbol& s, std::size_t n, const PrecisionContext& ctx) {
    SymbolSeriesTable t;
    t.symbol_name = s.name;
    t.fixes_origin = s.fixes_origin;
    t.phi = taylor(s, n, ctx);
    t.powers = series_power_table(t.phi, n, n);
    return t;
}

TruncatedOperator build_matrix_from(const SymbolSeriesTable& table, const WeightFamily& family,
                                    const PrecisionContext& ctx) {
    const std::size_t n = table.trunc();
    const mpfr_prec_t prec = ctx.prec();
    TruncatedOperator op{family, table.symbol_name, false, n, ComplexMatrix(n + 1, n + 1, prec),
                         bound(0.0), table.fixes_origin};
    std::vector<Real> beta = family.weights_upto(static_cast<long>(n), ctx);
    std::vector<Real> sqrt_beta;
    sqrt_beta.reserve(n + 1);
    for (const auto& b : beta) sqrt_beta.push_back(sqrt(b));
    const long cols = static_cast<long>(n) + 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long j = 0; j < cols; ++j) {
        const PowerSeries& pj = table.powers[j];
        for (long i = 0; i < cols; ++i) {
            if (pj.coeffs[i].is_zero()) continue;
            op.matrix.at(i, j) = pj.coeffs[i] * (sqrt_beta[i] / sqrt_beta[j]);
        }
    }
    std::vector<Real> col_err;
    col_err.reserve(n + 1);
    for (const auto& p : table.powers) col_err.push_back(p.coeff_error);
    op.entry_error = entry_error_bound(beta, col_err);
    return op;
}

TruncatedOperator build_matrix(const Symbol& s, const WeightFamily& family, std::size_t n,
                               const PrecisionContext& ctx) {
    return build_matrix_from(build_power_table(s, n, ctx), family, ctx);
}

TruncatedOperator build_weighted_matrix(const PowerSeries& w, const SymbolSeriesTable& table,
                                        const WeightFamily& bergman_family, std::size_t n,
                                        const PrecisionContext& ctx) {
    if (n > table.trunc()) throw std::invalid_argument("build_weighted_matrix: table too short");
    const mpfr_prec_t prec = ctx.prec();
    TruncatedOperator op{bergman_family, table.symbol_name, true, n, ComplexMatrix(n + 1, n + 1, prec),
                         bound(0.0), false};
    std::vector<Real> beta = bergman_family.weights_upto(static_cast<long>(n), ctx);
    std::vector<Real> sqrt_beta;
    sqrt_beta.reserve(n + 1);
    for (const auto& b : beta) sqrt_beta.push_back(sqrt(b));
    std::vector<Real> col_err(n + 1, bound(0.0));
    const long cols = static_cast<long>(n) + 1;
    std::vector<PowerSeries> wcols(cols, PowerSeries::zero(0, prec));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long j = 0; j < cols; ++j) wcols[j] = series_multiply(w, table.powers[j], n);
    bool triangular = true;
    for (long j = 0; j < cols; ++j) {
        col_err[j] = wcols[j].coeff_error;
        for (long i = 0; i < cols; ++i) {
            if (wcols[j].coeffs[i].is_zero()) continue;
            if (i < j) triangular = false;
            op.matrix.at(i, j) = wcols[j].coeffs[i] * (sqrt_beta[i] / sqrt_beta[j]);
        }
    }
    op.triangular = triangular;
    op.entry_error = entry_error_bound(beta, col_err);
    return op;
}

TruncatedOperator build_weighted_matrix(const Evaluator& w, double w_sup_bound, const Symbol& s,
                                        const WeightFamily& bergman_family, std::size_t n,
                                        const PrecisionContext& ctx) {
    SymbolSeriesTable table = build_power_table(s, n, ctx);
    long target = -(3 * static_cast<long>(ctx.bits)) / 4;
    QuadSpec q = default_quad(n, target);
    PowerSeries ws = coeffs_via_cauchy(w, n, q.r, q.points, ctx, w_sup_bound);
    return build_weighted_matrix(ws, table, bergman_family, n, ctx);
}

SingularSpectrum approx_numbers(const TruncatedOperator& op, const PrecisionContext& ctx,
                                const SvdOptions& opts) {
    SingularSpectrum sp = svd_singular_values(op.matrix, ctx, opts);
    Real weyl = op.entry_error * static_cast<double>(op.matrix.rows());
    for (auto& e : sp.error_bounds) e += weyl;
    return sp;
}

TailCertificate hs_tail(const Symbol& s, const WeightFamily& family, std::size_t n,
                        std::size_t n_ext, const PrecisionContext& ctx) {
    if (n_ext < 2 * n) throw std::invalid_argument("hs_tail: need N_ext >= 2N");
    const mpfr_prec_t prec = ctx.prec();
    SymbolSeriesTable table = build_power_table(s, n_ext, ctx);
    std::vector<Real> beta = family.weights_upto(static_cast<long>(n_ext), ctx);
    // summand_j = ||phi^j||^2_beta / beta_j over computed coefficients
    std::vector<Real> summand;
    summand.reserve(n_ext - n);
    for (std::size_t j = n + 1; j <= n_ext; ++j) {
        Real nrm(prec);
        const PowerSeries& p = table.powers[j];
        for (std::size_t k = 0; k <= n_ext; ++k) {
            if (p.coeffs[k].is_zero()) continue;
            Real m2 = norm_sq(p.coeffs[k]);
            nrm.add_prod(beta[k], m2);
        }
        summand.push_back(nrm / beta[j]);
    }
    Real last = bound(0.0);
    mpfr_set(last.raw(), summand.back().raw(), MPFR_RNDU);
    Real prev = bound(0.0);
    mpfr_set(prev.raw(), summand[summand.size() - 2].raw(), MPFR_RNDU);
    if (!(last < prev))
        throw CertificateError("hs_tail: summand not decreasing at N_ext; extrapolation refused");
    Real q = last / prev;
    Real total(prec);
    for (const auto& v : summand) total += v;
    Real remainder = last * q / (bound(1.0) - q);
    TailCertificate cert;
    cert.trunc = n;
    Real t2 = bound(0.0);
    mpfr_set(t2.raw(), total.raw(), MPFR_RNDU);
    cert.hs_tail = sqrt(t2 + remainder);
    cert.heuristic = true;
    cert.method = "exact sum j in (" + std::to_string(n) + "," + std::to_string(n_ext) +
                  "], coefficients to " + std::to_string(n_ext) +
                  "; geometric remainder (heuristic) with ratio " + q.str(3);
    return cert;
}

PowerNorm power_norm(const Symbol& s, const WeightFamily& family, std::size_t n, std::size_t trunc,
                     const PrecisionContext& ctx) {
    if (n < 1) throw std::invalid_argument("power_norm: n >= 1");
    if (trunc < n) trunc = 4 * n;
    const mpfr_prec_t prec = ctx.prec();
    PowerSeries phi = taylor(s, trunc, ctx);
    std::vector<Real> beta = family.weights_upto(static_cast<long>(trunc), ctx);
    PowerSeries p = series_power_binary(phi, n, trunc);
    Real nrm(prec);
    Real last_block(prec);
    for (std::size_t k = 0; k <= trunc; ++k) {
        if (p.coeffs[k].is_zero()) continue;
        Real term = beta[k] * norm_sq(p.coeffs[k]);
        nrm += term;
        if (k + 16 > trunc) last_block += term;
    }
    PowerNorm out{sqrt(nrm), bound(0.0)};
    // heuristic: treat the last 16 summands as one geometric block
    Real lb = bound(0.0);
    mpfr_set(lb.raw(), last_block.raw(), MPFR_RNDU);
    out.tail_estimate = sqrt(lb * 2.0);
    return out;
}

TwoRouteSpectra dirichlet_spectrum_two_routes(const Symbol& s, double alpha, std::size_t n,
                                              const PrecisionContext& ctx, const SvdOptions& opts) {
    if (!(alpha > 0.0)) throw std::invalid_argument("two_routes: alpha > 0 required");
    if (!s.fixes_origin) throw CertificateError("two_routes: symbol must fix the origin");
    SymbolSeriesTable table = build_power_table(s, n, ctx);

    TruncatedOperator d_op = build_matrix_from(table, WeightFamily::dirichlet(alpha), ctx);
    ComplexMatrix hyper = d_op.matrix.drop_leading(1);
    TwoRouteSpectra out;
    out.dirichlet_route = svd_singular_values(hyper, ctx, opts);
    Real weyl_d = d_op.entry_error * static_cast<double>(hyper.rows());
    for (auto& e : out.dirichlet_route.error_bounds) e += weyl_d;

    PowerSeries w = series_derivative(table.phi);
    TruncatedOperator b_op =
        build_weighted_matrix(w, table, WeightFamily::bergman(alpha), n - 1, ctx);
    out.weighted_bergman_route = approx_numbers(b_op, ctx, opts);

    out.combined_entry_certificate =
        weyl_d + b_op.entry_error * static_cast<double>(b_op.matrix.rows());
    return out;
}

}  // namespace specdecay

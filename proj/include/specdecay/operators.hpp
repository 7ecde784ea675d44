#ifndef SPECDECAY_OPERATORS_HPP
#define SPECDECAY_OPERATORS_HPP

#include "specdecay/numerics.hpp"
#include "specdecay/spaces.hpp"
#include "specdecay/symbols.hpp"

#include <optional>
#include <string>

namespace specdecay {

// Certificate failures (refused tails, non-triangular inputs where
// triangularity is required, coefficient budgets exceeded).
struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Taylor series of a symbol with its power chain phi^0..phi^jmax, shared
// across weight families so each family build is just a rescale.
struct SymbolSeriesTable {
    std::string symbol_name;
    bool fixes_origin = false;
    PowerSeries phi;
    std::vector<PowerSeries> powers;  // truncated at trunc()
    std::size_t trunc() const { return phi.trunc_order(); }
};

SymbolSeriesTable build_power_table(const Symbol& s, std::size_t n, const PrecisionContext& ctx);

// Matrix of C_phi (or M_w C_phi) on H^2(beta) with respect to the normalized
// monomials: entry (i,j) = sqrt(beta_i/beta_j) c_i(w phi^j).
struct TruncatedOperator {
    WeightFamily family;
    std::string symbol_name;
    bool weighted = false;
    std::size_t trunc = 0;
    ComplexMatrix matrix;
    Real entry_error = bound(0.0);
    bool triangular = false;
};

TruncatedOperator build_matrix(const Symbol& s, const WeightFamily& family, std::size_t n,
                               const PrecisionContext& ctx);
TruncatedOperator build_matrix_from(const SymbolSeriesTable& table, const WeightFamily& family,
                                    const PrecisionContext& ctx);

// Weighted build from an explicit weight series (w need not be bounded by 1;
// its certificate is carried by the series itself).
TruncatedOperator build_weighted_matrix(const PowerSeries& w, const SymbolSeriesTable& table,
                                        const WeightFamily& bergman_family, std::size_t n,
                                        const PrecisionContext& ctx);

// Weighted build where w is given as an evaluator with a sup bound on the
// closed disk for the quadrature certificate.
TruncatedOperator build_weighted_matrix(const Evaluator& w, double w_sup_bound, const Symbol& s,
                                        const WeightFamily& bergman_family, std::size_t n,
                                        const PrecisionContext& ctx);

// Singular values of the truncated operator; per-entry bounds combine the SVD
// residual with the Weyl shift (N+1) * entry_error.
SingularSpectrum approx_numbers(const TruncatedOperator& op, const PrecisionContext& ctx,
                                const SvdOptions& opts = {});

// Hilbert-Schmidt tail sum_{N<j<=N_ext} ||phi^j||^2_beta / beta_j. The (j,k)
// sums over computed coefficients are rigorous up to series certificates; the
// remainder beyond N_ext (and the coefficient range beyond the truncation) is
// a geometric extrapolation and flagged heuristic.
struct TailCertificate {
    std::size_t trunc = 0;
    Real hs_tail = bound(0.0);
    bool heuristic = true;
    std::string method;
};

TailCertificate hs_tail(const Symbol& s, const WeightFamily& family, std::size_t n,
                        std::size_t n_ext, const PrecisionContext& ctx);

// ||phi^n||_beta over computed coefficients, with a heuristic bound for the
// dropped coefficient tail.
struct PowerNorm {
    Real value;
    Real tail_estimate;  // heuristic
};
PowerNorm power_norm(const Symbol& s, const WeightFamily& family, std::size_t n,
                     std::size_t trunc, const PrecisionContext& ctx);

// The same approximation numbers reached through the two unitarily equivalent
// pictures: C_phi on the f(0)=0 hyperplane of the alpha-Dirichlet space
// (row/column 0 dropped), and M_{phi'} C_phi on the alpha-Bergman space built
// over the aligned span (truncation n-1). In exact arithmetic the two
// matrices are equal entrywise after the index shift.
struct TwoRouteSpectra {
    SingularSpectrum dirichlet_route;
    SingularSpectrum weighted_bergman_route;
    Real combined_entry_certificate = bound(0.0);  // (N+1)*entry_error summed over routes
};

TwoRouteSpectra dirichlet_spectrum_two_routes(const Symbol& s, double alpha, std::size_t n,
                                              const PrecisionContext& ctx,
                                              const SvdOptions& opts = {});

}  // namespace specdecay

#endif

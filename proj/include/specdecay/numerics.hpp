#ifndef SPECDECAY_NUMERICS_HPP
#define SPECDECAY_NUMERICS_HPP

#include "specdecay/matrix.hpp"
#include "specdecay/precision.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace specdecay {

// Non-increasing singular values with per-entry error bounds and provenance.
struct SingularSpectrum {
    std::vector<Real> values;        // non-increasing, >= 0, at context precision
    std::vector<Real> error_bounds;  // absolute bounds, kBoundPrec
    std::size_t source_dim = 0;
    unsigned source_bits = 0;

    std::size_t size() const { return values.size(); }
};

struct SvdNonConvergence : std::runtime_error {
    double residual_log2;  // log2 of the worst column-pair cosine at failure
    explicit SvdNonConvergence(double res_log2)
        : std::runtime_error("one-sided Jacobi SVD failed to converge; log2(residual) = " +
                             std::to_string(res_log2)),
          residual_log2(res_log2) {}
};

// Serial runs a row-cyclic reference sweep; Parallel runs tournament rounds
// of disjoint pairs under OpenMP (bit-deterministic for a fixed schedule).
// Auto picks Parallel only when worker threads are actually available.
enum class ExecMode { Auto, Serial, Parallel };

struct SvdOptions {
    int max_sweeps = 30;
    ExecMode mode = ExecMode::Auto;
    bool want_vectors = false;  // accumulate U and V
    long extra_threshold_log2 = 0;  // loosen (positive) / tighten the stop threshold
};

struct SvdResult {
    SingularSpectrum spectrum;
    int sweeps_used = 0;
    Real residual = bound(0.0);  // worst off-diagonal cosine seen in the final sweep
    // Optional factors: M = U diag(s) V^H, columns of U/V orthonormal.
    std::vector<std::vector<Cplx>> left;   // U columns
    std::vector<std::vector<Cplx>> right;  // V columns
};

// One-sided Jacobi on columns; high relative accuracy on graded triangular
// inputs. Internally runs with guard bits above ctx.bits so the stop
// threshold 2^(8-bits) stays clear of the dot-product noise floor.
SvdResult svd_jacobi(const ComplexMatrix& m, const PrecisionContext& ctx, const SvdOptions& opts = {});

// Convenience wrapper returning just the certified spectrum.
SingularSpectrum svd_singular_values(const ComplexMatrix& m, const PrecisionContext& ctx,
                                     const SvdOptions& opts = {});

// n-th compound (exterior power) matrix: entries are n x n minors over
// lexicographically ordered increasing index tuples. Limited to n <= 4 and
// d <= 24; it exists as a cross-check, not a workhorse.
ComplexMatrix compound_matrix(const ComplexMatrix& m, std::size_t n);

// n mutually orthonormal vectors in C^dim, deterministic in (ctx.seed, stream).
std::vector<std::vector<Cplx>> random_orthonormal_system(std::size_t dim, std::size_t n,
                                                         const PrecisionContext& ctx,
                                                         std::uint64_t stream = 0);

// det of the n x n matrix with (i,j) entry <M f_j, g_i>.
Cplx det_gram(const ComplexMatrix& m, const std::vector<std::vector<Cplx>>& f,
              const std::vector<std::vector<Cplx>>& g);

// Determinant of a small dense matrix by LU with partial pivoting.
Cplx det_dense(ComplexMatrix a);

// conj-linear in x: sum conj(x_i) y_i.
Cplx dot_conj(const Cplx* x, const Cplx* y, std::size_t n);

std::vector<Cplx> mat_vec(const ComplexMatrix& m, const std::vector<Cplx>& x);

std::uint64_t binomial_u64(unsigned n, unsigned k);

}  // namespace specdecay

#endif

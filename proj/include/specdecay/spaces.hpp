#ifndef SPECDECAY_SPACES_HPP
#define SPECDECAY_SPACES_HPP

#include "specdecay/cplx.hpp"
#include "specdecay/precision.hpp"

#include <functional>
#include <string>
#include <vector>

namespace specdecay {

// Weight sequence beta_k defining H^2(beta), the space of analytic f with
// sum beta_k |c_k|^2 < infinity. Builtins:
//   Hardy:         beta_k = 1
//   Bergman(g):    beta_k = k! G(g+2) / G(k+g+2)            (g > -1)
//   Dirichlet(a):  beta_0 = 1, beta_k = k k! G(a+2) / G(k+a+1)   (a > -1)
// Dirichlet(1) is the Hardy space up to equivalent norms (weights 2k/(k+1),
// not 1), Bergman(g) matches Dirichlet(g+2) the same way.
class WeightFamily {
  public:
    enum class Kind { Hardy, Bergman, Dirichlet, Custom };

    static WeightFamily hardy();
    static WeightFamily bergman(double gamma);
    static WeightFamily dirichlet(double alpha);
    // Custom families are sampled at k in {64, 256, 1024} to warn (not fail)
    // when beta_k^(1/k) drifts below 1.
    static WeightFamily custom(std::string name, std::function<Real(long, mpfr_prec_t)> w);

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    const std::string& name() const { return name_; }
    bool liminf_warning() const { return liminf_warning_; }

    Real weight(long k, const PrecisionContext& ctx) const;
    std::vector<Real> weights_upto(long n, const PrecisionContext& ctx) const;

  private:
    WeightFamily() = default;
    Kind kind_ = Kind::Hardy;
    double param_ = 0.0;
    std::string name_ = "hardy";
    bool liminf_warning_ = false;
    std::function<Real(long, mpfr_prec_t)> custom_;
};

// Dirichlet weights in the alternative normalization
// (k+1)! G(a+2) / G(k+a+1); the closed-form kernels below reproduce exactly
// this sequence (note the k = 0 value is a+1, not 1). Conversion to the
// operator normalization: beta_k = k/(k+1) * beta~_k for k >= 1.
Real dirichlet_tilde_weight(double alpha, long k, const PrecisionContext& ctx);

struct KernelValue {
    Real value;
    Real tail_bound;
};

// ||K_a||^2 = sum |a|^(2n) / beta_n, summed until a certified geometric
// majorant puts the tail below tol.
KernelValue kernel_norm_sq(const Cplx& a, const WeightFamily& family, const Real& tol,
                           const PrecisionContext& ctx);

// Closed-form reproducing kernel for the tilde-normalized Dirichlet weights:
//   K_a^al(z) = ((1-conj(a)z)^(-al) - 1) / (al(al+1) conj(a)z)   for al > 0
//   K_a^0(z)  = log(1/(1-conj(a)z)) / (conj(a)z)
// with the removable singularity at conj(a)z = 0 handled by series fallback.
Cplx kernel_closed_form(const Cplx& a, const Cplx& z, double alpha, const PrecisionContext& ctx);

// Direct series evaluation of the same kernel (test oracle / cross-check).
Cplx kernel_series(const Cplx& a, const Cplx& z, double alpha, const Real& tol,
                   const PrecisionContext& ctx);

struct DominationReport {
    bool holds = false;
    long first_violation = -1;
};

// True iff beta_k/gamma_k is non-decreasing for k <= n (the hypothesis under
// which spectra on the gamma space are log-subordinate to those on beta).
DominationReport check_weight_domination(const WeightFamily& beta, const WeightFamily& gamma,
                                         long n, const PrecisionContext& ctx);

}  // namespace specdecay

#endif

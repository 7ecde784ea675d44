#ifndef SPECDECAY_GEOMETRY_HPP
#define SPECDECAY_GEOMETRY_HPP

#include "specdecay/spaces.hpp"
#include "specdecay/symbols.hpp"

#include <optional>
#include <string>
#include <vector>

namespace specdecay {

// Boundary-anchored window W(xi,h) = { |z| >= 1-h, -pi h <= arg(conj(xi) z) < pi h }.
struct CarlesonWindow {
    Cplx xi;
    double h;

    CarlesonWindow(Cplx xi_, double h_);
    bool contains(const Cplx& z) const;
};

// Carleson box S(xi,h) = { z in D : |xi - z| < h }; S(xi,h) <= W(xi,h) <= S(xi,2*pi*h).
bool in_box(const Cplx& xi, double h, const Cplx& z);

// Hastings-Luecking box R(level n, sector j).
bool in_hl_box(int level, long sector, const Cplx& z);

// Stratified polar sampling grid: 2^k radii x 2^k angles, midpoint weights.
struct SamplerSpec {
    int k = 10;
};

// Images of the grid under phi, cached so multiple windows reuse one sweep.
class PullbackSampler {
  public:
    PullbackSampler(const Symbol& s, SamplerSpec spec, const PrecisionContext& ctx);

    // Pull-back mass of the window/predicate under area measure dA (gamma = 0)
    // or dA_gamma; the weight (gamma+1)(1-|z|^2)^gamma rides on the z-grid.
    Real measure(const std::function<bool(const Cplx&)>& in_region, double gamma = 0.0) const;

    // One pass over the images: pull-back mass of every Hastings-Luecking box
    // at the given level.
    std::vector<Real> hl_level_masses(int level, double gamma) const;

    int grid_k() const { return spec_.k; }

  private:
    SamplerSpec spec_;
    mpfr_prec_t prec_;
    std::vector<Cplx> images_;
    std::vector<Real> weights_;        // normalized area weights of the z-cells
    std::vector<Real> one_minus_r2_;   // 1 - |z|^2 on the source grid
};

struct MeasureEstimate {
    Real value;
    Real grid_delta;  // |value(k) - value(k-1)|, the declared refinement error
};

MeasureEstimate pullback_area(const Symbol& s, const CarlesonWindow& w, SamplerSpec spec,
                              const PrecisionContext& ctx);

// rho_{phi,2}(h) = sup over xi of the pull-back area of W(xi,h).
Real rho2(const Symbol& s, double h, int xi_count, const PullbackSampler& sampler,
          const PrecisionContext& ctx);

// Nevanlinna counting for univalent symbols: (1 - |phi^{-1}(w)|^2)^alpha via
// damped Newton inversion from a grid of starts; returns nullopt when no
// preimage is found (w outside the image).
std::optional<Real> nevanlinna_univalent(const Symbol& s, const Cplx& w, double alpha,
                                         const PrecisionContext& ctx);

// Per-level Luecking sums sum_j (2^{n(gamma+2)} A_{gamma,phi}(R_{n,j}))^{p/2}.
// gamma = -1 uses boundary sampling at radius 1 - 2^-(n_max+2), a declared
// approximation.
std::vector<Real> luecking_sum(const Symbol& s, double gamma, double p, int n_max,
                               SamplerSpec spec, const PrecisionContext& ctx);

// delta_v = inf_j prod_{k != j} |(v_j - v_k)/(1 - conj(v_k) v_j)|.
Real carleson_separation(const std::vector<Cplx>& points, const PrecisionContext& ctx);

// inf_j |w(u_j)| ||K_{v_j}|| / ||K_{u_j}|| * delta_v^4, the constant-free
// proxy for the lower bound on a_n(M_w C_phi).
Real lower_bound_estimate(const Symbol& s, const Evaluator& w, const std::vector<Cplx>& u_points,
                          double alpha, const PrecisionContext& ctx);

enum class DecayModel { NOverLogN, SqrtN, Geometric };

struct DecayFit {
    DecayModel model;
    double rate = 0.0;       // b in exp(-b * x_n)
    double offset = 0.0;     // fitted constant
    double rms_residual = 0.0;
    std::size_t n_min = 0, n_max = 0;
};

// Least squares of log a_n against the model regressor plus constant.
DecayFit fit_decay(const std::vector<Real>& spectrum, DecayModel model, std::size_t n_min,
                   std::size_t n_max);

// All three fits, ranked by RMS residual (best first).
std::vector<DecayFit> model_compare(const std::vector<Real>& spectrum, std::size_t n_min,
                                    std::size_t n_max);

const char* model_name(DecayModel m);

}  // namespace specdecay

#endif

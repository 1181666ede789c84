#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ambieb/ambiguity.hpp"
#include "ambieb/types.hpp"

namespace ambieb {

// Mixture parameters for normalized EMAF magnitudes: noise variance vbar,
// prior non-null probability rho, signal prior variance sigma2.
struct ShrinkageParams {
    double vbar = 1.0;
    double rho = 0.01;
    double sigma2 = 1.0;

    double lambda() const { return sigma2 / (sigma2 + vbar); }
    void validate() const;
};

struct FitResult {
    ShrinkageParams params;
    double nll = 0.0;
    int iterations = 0;
    std::size_t coefficients = 0;
};

// Thrown by fit() when the simplex search does not converge; carries the best point found.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, FitResult best)
        : Error(ErrorKind::convergence, what), best_(best) {}
    const FitResult& best() const noexcept { return best_; }

private:
    FitResult best_;
};

struct FitOptions {
    double tolerance = 1e-6;
    int max_iterations = 10000;
};

// Per-coefficient shrinkage factors and posterior non-null probabilities.
struct ThresholdField {
    int n = 0;
    double dt = 1.0;
    RGrid theta;
    RGrid rho_post;
};

// Negative log marginal likelihood of magnitudes q under
//   f(q) = 2(1-rho)/vbar q e^{-q^2/vbar} + 2 rho/(vbar+sigma2) q e^{-q^2/(vbar+sigma2)}.
// Returns +inf if any magnitude is exactly zero.
double marginal_nll(const ShrinkageParams& params, std::span<const double> magnitudes);

// Maximum marginal likelihood over (log vbar, logit rho, log sigma2) by Nelder-Mead.
// Exact zeros are dropped (density zero, measure-zero event).
FitResult fit_magnitudes(std::span<const double> magnitudes, const FitOptions& opts = {});

// Fit on every coefficient of a normalized grid except the origin.
FitResult fit(const AmbiguityGrid& normalized, const FitOptions& opts = {});

// Off-origin magnitudes of a grid, row-major.
std::vector<double> off_origin_magnitudes(const AmbiguityGrid& a);

double posterior_rho(const ShrinkageParams& params, double qhat);

struct ThresholdValue {
    double theta;
    double rho_post;
};

// Posterior-median shrinkage factor for one magnitude, using the Gaussian
// N(lambda q, lambda vbar / 2) approximation of the non-null posterior.
ThresholdValue threshold_factor(const ShrinkageParams& params, double qhat);

// Approximate posterior median magnitude (theta * q).
double approximate_posterior_median(const ShrinkageParams& params, double qhat);

ThresholdField threshold_field(const ShrinkageParams& params, const AmbiguityGrid& normalized);

AmbiguityGrid apply_threshold(const AmbiguityGrid& a, const ThresholdField& t);

// theta(tau, m) = 1/(2 N dt) sum_k Theta(tau, k) exp(2 pi i k m / (2N)), m in [0, 2N).
CGrid equivalent_kernel(const ThresholdField& t);

// M_eb(tau, n) = dt * sum_s theta(tau, (n - s) mod 2N) M(tau, s): circular smoothing
// of each moment row by a dual-time kernel.
LagTimeMoments kernel_smooth(const CGrid& kernel, const LagTimeMoments& m);

// Standard normal CDF and quantile.
double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace ambieb

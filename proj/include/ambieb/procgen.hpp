#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ambieb/signal.hpp"
#include "ambieb/types.hpp"

namespace ambieb {

// Y_t = sigma_t * sum_{l=0}^{L} w_l eps_{t-l}, eps i.i.d. N(0,1).
struct ModulatedMAProcess {
    std::vector<double> weights;
    std::function<double(int)> modulation;
    std::uint64_t seed = 0;
};

// Sum of independent modulated MA components (independent innovations).
struct AggregateProcess {
    std::vector<ModulatedMAProcess> components;
};

// Z_n = dt * sum_{k=-M}^{M} h(k, n) eps_{n-k} + eta_n,  eta ~ N(0, noise_floor^2).
struct TimeVaryingFilterProcess {
    std::function<double(int, int)> filter;
    int half_width = 0;
    double noise_floor = 0.0;
    double dt = 1.0;
    std::uint64_t seed = 0;
};

using Process = std::variant<ModulatedMAProcess, AggregateProcess, TimeVaryingFilterProcess>;

// Exact second moments E{X_s X_t}, or the analytic-signal covariance derived from them.
struct TheoreticalCovariance {
    CMatrix entries;
};

TimeSeries gen_modulated_ma(const ModulatedMAProcess& p, int n, double dt = 1.0);
TimeSeries gen_aggregation(int n, std::uint64_t seed);
TimeSeries gen_tv_filter(const TimeVaryingFilterProcess& p, int n);
TimeSeries simulate(const Process& p, int n, double dt = 1.0);

// The two components of the aggregation experiment and their sum.
ModulatedMAProcess locally_stationary_component(std::uint64_t seed);
ModulatedMAProcess cyclostationary_component(std::uint64_t seed);
AggregateProcess aggregation_process(std::uint64_t seed);

// Time-varying chirp filter with a Hann taper over lags; a synthetic stand-in
// for an oscillatory signal whose instantaneous frequency drifts linearly.
TimeVaryingFilterProcess chirp_filter_process(std::uint64_t seed, int half_width = 16, double f0 = 0.05,
                                              double sweep = 0.3 / 512.0, double noise_floor = 0.1);

TheoreticalCovariance theoretical_covariance(const Process& p, int n);

// H C H^H with H the discrete analytic-signal operator: the exact covariance
// of analytic_signal(X) when C = E{X X^T}.
TheoreticalCovariance analytic_covariance(const TheoreticalCovariance& c);

// Seed for replicate r of a Monte Carlo run rooted at seed.
std::uint64_t replicate_seed(std::uint64_t seed, int r);

// Named presets shared with the CLI.
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
Process preset_process(const std::string& name, std::uint64_t seed);
int preset_default_length(const std::string& name);

// Scaled Dirichlet kernel sin(pi L x) / sin(pi x), with its limit at integer x.
double dirichlet(int length, double x);

// Closed-form EMAF mean of a stationary sequence with autocovariance
// m_tilde[|tau|] (real, symmetric in tau):
//   dt * D_{N-|tau|}(dt nu) * m_tilde[|tau|] * exp(-i pi nu dt (N + tau - 1)).
cdouble stationary_emaf_expectation(std::span<const double> m_tilde, int n, double dt, int tau, double nu);

// Large-N covariance of EMAF coefficients of analytic white noise whose
// increments have spectral level sigma2 on [0, 1/(2 dt)]. The coefficients are
// taken at nu_j = j / (dt * C), C the number of time indices shared by the two
// lags (C = N - max(tau1, tau2) for nonnegative lags).
cdouble whitenoise_af_covariance(int n, double dt, double sigma2, int tau1, int j1, int tau2, int j2);

// Number of time indices where both lag rows are supported.
int shared_support(int n, int tau1, int tau2);

}  // namespace ambieb

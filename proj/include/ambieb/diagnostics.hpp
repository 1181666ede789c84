#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ambieb/ambiguity.hpp"
#include "ambieb/covariance.hpp"
#include "ambieb/procgen.hpp"
#include "ambieb/types.hpp"

namespace ambieb {

enum class Component { real, imaginary };

struct QQData {
    std::vector<double> sample_quantiles;
    std::vector<double> theoretical_quantiles;
    Component component = Component::real;

    // Least-squares slope of sample against theoretical quantiles.
    double slope() const;
};

// Sorts the values and pairs them with standard normal quantiles at (i - 0.5) / n.
QQData qq_data(std::vector<double> values, Component component);

// Real and imaginary parts of the off-origin coefficients divided by sqrt(vbar / 2).
std::pair<QQData, QQData> qq_normalized_af(const AmbiguityGrid& normalized, double vbar);

struct EigenSpectrum {
    std::string label;
    std::vector<double> values;  // descending
};

struct RiskReport {
    RGrid normalized_error;
    double frobenius_ratio = 0.0;  // +inf when raw equals truth
    std::vector<EigenSpectrum> eigen_spectra;
};

RiskReport risk_report(const HermitianCovariance& est, const HermitianCovariance& raw,
                       const TheoreticalCovariance& truth);

struct VarianceProbe {
    int tau = 0;
    int time = 0;
    double var_eb = 0.0;
    double var_raw = 0.0;
    double var_raw_theory = 0.0;  // Isserlis value for the analytic signal
    double var_raw_se = 0.0;      // Monte Carlo standard error of var_raw
};

// Variance of the shrunk and raw moment at (tau, n) = (2, N/2) over replicates of
// unit-variance real white noise.
VarianceProbe variance_reduction_probe(int n, int reps, std::uint64_t seed);

// E|Z_a Z*_b - E Z_a Z*_b|^2 for a zero-mean Gaussian Z with covariance C = E{Z Z^H}
// and relation R = E{Z Z^T}: C_aa C_bb + |R_ab|^2.
double raw_moment_variance(const CMatrix& cov, const CMatrix& relation, int a, int b);

struct KSResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// One-sample Kolmogorov-Smirnov test against Exponential(mean).
KSResult ks_exponential(std::span<const double> samples, double mean);

// Asymptotic Kolmogorov survival function with the Stephens small-sample correction.
double kolmogorov_p_value(double statistic, std::size_t n);

}  // namespace ambieb

#include "ambieb/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ambieb/pipeline.hpp"
#include "ambieb/shrinkage.hpp"
#include "ambieb/signal.hpp"

namespace ambieb {

double QQData::slope() const {
    const size_t n = sample_quantiles.size();
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += theoretical_quantiles[i];
        my += sample_quantiles[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (theoretical_quantiles[i] - mx) * (sample_quantiles[i] - my);
        sxx += (theoretical_quantiles[i] - mx) * (theoretical_quantiles[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

QQData qq_data(std::vector<double> values, Component component) {
    if (values.size() < 10) throw Error(ErrorKind::input, "QQ data needs at least 10 coefficients");
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    std::vector<double> theory(n);
    for (size_t i = 0; i < n; ++i) theory[i] = normal_quantile((static_cast<double>(i) + 0.5) / static_cast<double>(n));
    return {std::move(values), std::move(theory), component};
}

std::pair<QQData, QQData> qq_normalized_af(const AmbiguityGrid& a, double vbar) {
    if (!a.normalized()) throw Error(ErrorKind::state, "QQ diagnostics expect a normalized grid");
    if (!(vbar > 0.0)) throw Error(ErrorKind::parameter, "vbar must be positive");
    const double scale = 1.0 / std::sqrt(vbar / 2.0);
    std::vector<double> re, im;
    const auto& g = a.grid();
    re.reserve(static_cast<size_t>(g.size()));
    im.reserve(static_cast<size_t>(g.size()));
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            if (a.is_origin(r, c)) continue;
            re.push_back(g(r, c).real() * scale);
            im.push_back(g(r, c).imag() * scale);
        }
    }
    return {qq_data(std::move(re), Component::real), qq_data(std::move(im), Component::imaginary)};
}

RiskReport risk_report(const HermitianCovariance& est, const HermitianCovariance& raw,
                       const TheoreticalCovariance& truth) {
    const auto& t = truth.entries;
    if (est.entries.rows() != t.rows() || est.entries.cols() != t.cols() || raw.entries.rows() != t.rows() ||
        raw.entries.cols() != t.cols())
        throw Error(ErrorKind::dimension, "risk_report: matrix sizes differ");

    const double floor = 1e-12 * t.cwiseAbs().maxCoeff();
    RiskReport out;
    out.normalized_error.resize(t.rows(), t.cols());
    for (Eigen::Index i = 0; i < t.rows(); ++i)
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
            const double scale = std::max(std::abs(t(i, j)), floor);
            const double err = std::abs(est.entries(i, j) - t(i, j));
            out.normalized_error(i, j) = scale > 0.0 ? err / scale : (err > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        }

    const double num = (est.entries - t).norm();
    const double den = (raw.entries - t).norm();
    out.frobenius_ratio = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();

    out.eigen_spectra.push_back({"estimate", est.eigenvalues});
    out.eigen_spectra.push_back({"raw", raw.eigenvalues});
    out.eigen_spectra.push_back({"truth", decompose(t).eigenvalues});
    return out;
}

double raw_moment_variance(const CMatrix& cov, const CMatrix& relation, int a, int b) {
    return cov(a, a).real() * cov(b, b).real() + std::norm(relation(a, b));
}

VarianceProbe variance_reduction_probe(int n, int reps, std::uint64_t seed) {
    if (reps < 2) throw Error(ErrorKind::parameter, "variance probe needs at least 2 replicates");
    if (n < 8) throw Error(ErrorKind::invalid_length, "variance probe needs n >= 8");
    VarianceProbe out;
    out.tau = 2;
    out.time = n / 2;

    std::vector<cdouble> eb, raw;
    eb.reserve(static_cast<size_t>(reps));
    raw.reserve(static_cast<size_t>(reps));
    for (int r = 0; r < reps; ++r) {
        const auto x = simulate(preset_process("whitenoise", replicate_seed(seed, r)), n);
        const auto z = analytic_signal(x);
        const auto est = estimate_moments(z);
        eb.push_back(est.moments(out.tau, out.time));
        raw.push_back(z.samples()[out.time] * std::conj(z.samples()[out.time - out.tau]));
    }

    auto spread = [](const std::vector<cdouble>& v, double* se) {
        cdouble mean{};
        for (auto c : v) mean += c;
        mean /= static_cast<double>(v.size());
        std::vector<double> d(v.size());
        double s = 0.0;
        for (size_t i = 0; i < v.size(); ++i) {
            d[i] = std::norm(v[i] - mean);
            s += d[i];
        }
        const double m = s / static_cast<double>(v.size());
        if (se) {
            double ss = 0.0;
            for (double x : d) ss += (x - m) * (x - m);
            *se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
        }
        return m * static_cast<double>(v.size()) / static_cast<double>(v.size() - 1);
    };
    out.var_eb = spread(eb, nullptr);
    out.var_raw = spread(raw, &out.var_raw_se);

    const CMatrix h = analytic_operator(n);
    const CMatrix cov = h * h.adjoint();
    const CMatrix rel = h * h.transpose();
    out.var_raw_theory = raw_moment_variance(cov, rel, out.time, out.time - out.tau);
    return out;
}

double kolmogorov_p_value(double d, std::size_t n) {
    if (n == 0) return 1.0;
    const double rn = std::sqrt(static_cast<double>(n));
    const double lambda = (rn + 0.12 + 0.11 / rn) * d;
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KSResult ks_exponential(std::span<const double> samples, double mean) {
    if (samples.empty()) throw Error(ErrorKind::input, "KS test needs samples");
    if (!(mean > 0.0)) throw Error(ErrorKind::parameter, "exponential mean must be positive");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double f = -std::expm1(-std::max(x[i], 0.0) / mean);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return {d, kolmogorov_p_value(d, x.size())};
}

}  // namespace ambieb

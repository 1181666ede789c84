#include "ambieb/shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "ambieb/fft.hpp"
#include "ambieb/simplex.hpp"

namespace ambieb {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// log((1-rho)/V e^{-x/V} + rho/W e^{-x/W}) for x = q^2.
double log_mixture(double x, double log_null, double log_alt, double inv_v, double inv_w) {
    const double a = log_null - x * inv_v;
    const double b = log_alt - x * inv_w;
    return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

double nll_from_squares(const ShrinkageParams& p, std::span<const double> squares, double sum_log_2q) {
    const double w = p.vbar + p.sigma2;
    const double log_null = std::log1p(-p.rho) - std::log(p.vbar);
    const double log_alt = std::log(p.rho) - std::log(w);
    const double inv_v = 1.0 / p.vbar;
    const double inv_w = 1.0 / w;
    double acc = 0.0;
    for (double x : squares) acc += log_mixture(x, log_null, log_alt, inv_v, inv_w);
    return -(acc + sum_log_2q);
}

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

}  // namespace

void ShrinkageParams::validate() const {
    if (!(vbar > 0.0) || !std::isfinite(vbar)) throw Error(ErrorKind::parameter, "vbar must be positive");
    if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorKind::parameter, "rho must lie in (0, 1)");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw Error(ErrorKind::parameter, "sigma2 must be positive");
}

double normal_cdf(double x) { return 0.5 * boost::math::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (p <= 0.0) return -inf;
    if (p >= 1.0) return inf;
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double marginal_nll(const ShrinkageParams& params, std::span<const double> magnitudes) {
    params.validate();
    double sum_log_2q = 0.0;
    std::vector<double> squares;
    squares.reserve(magnitudes.size());
    for (double q : magnitudes) {
        if (!std::isfinite(q) || q < 0.0) throw Error(ErrorKind::input, "magnitudes must be finite and >= 0");
        if (q == 0.0) return inf;
        sum_log_2q += std::log(2.0 * q);
        squares.push_back(q * q);
    }
    return nll_from_squares(params, squares, sum_log_2q);
}

FitResult fit_magnitudes(std::span<const double> magnitudes, const FitOptions& opts) {
    std::vector<double> squares;
    squares.reserve(magnitudes.size());
    double sum_log_2q = 0.0;
    for (double q : magnitudes) {
        if (!std::isfinite(q) || q < 0.0) throw Error(ErrorKind::input, "magnitudes must be finite and >= 0");
        if (q == 0.0) continue;
        squares.push_back(q * q);
        sum_log_2q += std::log(2.0 * q);
    }
    if (squares.size() < 3) throw Error(ErrorKind::input, "need at least 3 nonzero magnitudes to fit");

    // Starting point: exponential-median noise level, a heavy-tail signal level.
    std::vector<double> sorted = squares;
    const size_t mid = sorted.size() / 2;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
    const double vbar0 = sorted[mid] / std::numbers::ln2;
    const size_t top = std::max<size_t>(1, sorted.size() / 100);
    std::nth_element(sorted.begin(), sorted.end() - static_cast<std::ptrdiff_t>(top), sorted.end());
    double top_mean = 0.0;
    for (auto it = sorted.end() - static_cast<std::ptrdiff_t>(top); it != sorted.end(); ++it) top_mean += *it;
    top_mean /= static_cast<double>(top);
    const double sigma20 = std::max(top_mean - vbar0, vbar0);
    const double rho0 = 0.01;

    // Search box in reparameterized units, anchored to the data scale.
    const double log_scale = std::log(vbar0);
    constexpr double log_span = 30.0;
    constexpr double logit_span = 30.0;

    auto unpack = [](const std::vector<double>& u) {
        return ShrinkageParams{std::exp(u[0]), logistic(u[1]), std::exp(u[2])};
    };
    auto objective = [&](const std::vector<double>& u) {
        if (std::abs(u[0] - log_scale) > log_span || std::abs(u[2] - log_scale) > log_span ||
            std::abs(u[1]) > logit_span)
            return inf;
        const auto p = unpack(u);
        if (!(p.rho > 0.0 && p.rho < 1.0)) return inf;
        return nll_from_squares(p, squares, sum_log_2q);
    };

    const std::vector<double> start{std::log(vbar0), std::log(rho0 / (1.0 - rho0)), std::log(sigma20)};
    const auto res = nelder_mead(objective, start, {0.3, 1.0, 0.5}, {opts.tolerance, opts.max_iterations});

    FitResult out{unpack(res.x), res.value, res.iterations, squares.size()};
    if (!res.converged) throw ConvergenceError("mixture fit did not converge", out);
    return out;
}

std::vector<double> off_origin_magnitudes(const AmbiguityGrid& a) {
    std::vector<double> q;
    q.reserve(static_cast<size_t>(a.grid().size()));
    for (Eigen::Index r = 0; r < a.grid().rows(); ++r)
        for (Eigen::Index c = 0; c < a.grid().cols(); ++c)
            if (!a.is_origin(r, c)) q.push_back(std::abs(a.grid()(r, c)));
    return q;
}

FitResult fit(const AmbiguityGrid& normalized, const FitOptions& opts) {
    if (!normalized.normalized()) throw Error(ErrorKind::state, "fit expects a normalized grid");
    const auto q = off_origin_magnitudes(normalized);
    return fit_magnitudes(q, opts);
}

double posterior_rho(const ShrinkageParams& params, double qhat) {
    const double w = params.vbar + params.sigma2;
    const double x = qhat * qhat;
    const double log_alt = std::log(params.rho) - std::log(w) - x / w;
    const double log_null = std::log1p(-params.rho) - std::log(params.vbar) - x / params.vbar;
    const double d = log_null - log_alt;
    return d > 0.0 ? std::exp(-d) / (1.0 + std::exp(-d)) : 1.0 / (1.0 + std::exp(d));
}

ThresholdValue threshold_factor(const ShrinkageParams& params, double qhat) {
    const double rho_post = posterior_rho(params, qhat);
    if (qhat <= 0.0) return {0.0, rho_post};
    const double lambda = params.lambda();
    const double sd = std::sqrt(lambda * params.vbar / 2.0);
    // Posterior mass of the Gaussian approximation below zero.
    const double eta = normal_cdf(-lambda * qhat / sd);
    // Median is zero when the mixture CDF at 0+ already reaches 1/2.
    if (rho_post * (1.0 - eta) <= 0.5) return {0.0, rho_post};
    const double median = lambda * qhat + sd * normal_quantile(1.0 - 1.0 / (2.0 * rho_post));
    return {std::clamp(median / qhat, 0.0, 1.0), rho_post};
}

double approximate_posterior_median(const ShrinkageParams& params, double qhat) {
    return threshold_factor(params, qhat).theta * qhat;
}

ThresholdField threshold_field(const ShrinkageParams& params, const AmbiguityGrid& normalized) {
    params.validate();
    if (!normalized.normalized()) throw Error(ErrorKind::state, "threshold_field expects a normalized grid");
    const auto& g = normalized.grid();
    ThresholdField t{normalized.n(), normalized.dt(), RGrid(g.rows(), g.cols()), RGrid(g.rows(), g.cols())};
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            const auto v = threshold_factor(params, std::abs(g(r, c)));
            t.theta(r, c) = v.theta;
            t.rho_post(r, c) = v.rho_post;
        }
    }
    const Eigen::Index r0 = normalized.n() - 1, c0 = normalized.n();
    t.theta(r0, c0) = 1.0;
    return t;
}

AmbiguityGrid apply_threshold(const AmbiguityGrid& a, const ThresholdField& t) {
    if (t.theta.rows() != a.grid().rows() || t.theta.cols() != a.grid().cols())
        throw Error(ErrorKind::dimension, "threshold field does not match grid");
    CGrid out = a.grid();
    for (Eigen::Index r = 0; r < out.rows(); ++r)
        for (Eigen::Index c = 0; c < out.cols(); ++c) out(r, c) *= t.theta(r, c);
    return AmbiguityGrid(std::move(out), a.dt(), a.normalized(), a.delta());
}

CGrid equivalent_kernel(const ThresholdField& t) {
    const int n = t.n;
    const int len = 2 * n;
    CGrid kernel(t.theta.rows(), len);
    Dft bwd(len, Dft::Direction::backward);
    std::vector<cdouble> buf(len);
    const double scale = 1.0 / (len * t.dt);
    for (Eigen::Index r = 0; r < t.theta.rows(); ++r) {
        for (int c = 0; c < len; ++c) buf[(c + n) % len] = t.theta(r, c);  // k = c - N
        bwd.execute(buf.data(), buf.data());
        for (int m = 0; m < len; ++m) kernel(r, m) = scale * buf[m];
    }
    return kernel;
}

LagTimeMoments kernel_smooth(const CGrid& kernel, const LagTimeMoments& m) {
    const int n = m.n();
    const int len = 2 * n;
    if (kernel.rows() != 2 * n - 1 || kernel.cols() != len)
        throw Error(ErrorKind::dimension, "kernel does not match moments");
    LagTimeMoments out(n, m.dt());
    for (Eigen::Index r = 0; r < kernel.rows(); ++r) {
        for (int t = 0; t < n; ++t) {
            cdouble acc{};
            for (int s = 0; s < n; ++s) acc += kernel(r, ((t - s) % len + len) % len) * m.grid()(r, s);
            out.grid()(r, t) = m.dt() * acc;
        }
    }
    return out;
}

}  // namespace ambieb

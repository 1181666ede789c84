#include "ambieb/procgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ambieb {

namespace {

constexpr double pi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// mt19937_64 seeded from (seed, stream) through std::seed_seq.
std::mt19937_64 make_engine(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32), stream};
    return std::mt19937_64(seq);
}

std::vector<double> normals(std::mt19937_64& eng, int count) {
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> out(static_cast<size_t>(count));
    for (auto& v : out) v = nd(eng);
    return out;
}

void check_ma(const ModulatedMAProcess& p) {
    if (p.weights.empty()) throw Error(ErrorKind::parameter, "MA weights must be non-empty");
    if (!p.modulation) throw Error(ErrorKind::parameter, "MA modulation missing");
}

CMatrix ma_covariance(const ModulatedMAProcess& p, int n) {
    check_ma(p);
    const int len = static_cast<int>(p.weights.size());
    std::vector<double> sigma(n);
    for (int t = 0; t < n; ++t) sigma[t] = p.modulation(t);
    // acv[d] = sum_l w_l w_{l-d}
    std::vector<double> acv(len, 0.0);
    for (int d = 0; d < len; ++d)
        for (int l = d; l < len; ++l) acv[d] += p.weights[l] * p.weights[l - d];
    CMatrix c = CMatrix::Zero(n, n);
    for (int s = 0; s < n; ++s)
        for (int t = std::max(0, s - len + 1); t <= std::min(n - 1, s + len - 1); ++t)
            c(s, t) = sigma[s] * sigma[t] * acv[std::abs(s - t)];
    return c;
}

CMatrix tv_filter_covariance(const TimeVaryingFilterProcess& p, int n) {
    const int m = p.half_width;
    // Cache h(k, t) for k in [-M, M].
    std::vector<double> h(static_cast<size_t>(2 * m + 1) * n);
    for (int t = 0; t < n; ++t)
        for (int k = -m; k <= m; ++k) h[static_cast<size_t>(t) * (2 * m + 1) + (k + m)] = p.filter(k, t);
    auto at = [&](int k, int t) { return h[static_cast<size_t>(t) * (2 * m + 1) + (k + m)]; };
    const double dt2 = p.dt * p.dt;
    CMatrix c = CMatrix::Zero(n, n);
    for (int s = 0; s < n; ++s) {
        for (int t = std::max(0, s - 2 * m); t <= std::min(n - 1, s + 2 * m); ++t) {
            const int d = s - t;
            double acc = 0.0;
            for (int k = std::max(-m, d - m); k <= std::min(m, d + m); ++k) acc += at(k, s) * at(k - d, t);
            c(s, t) = dt2 * acc;
        }
        c(s, s) += p.noise_floor * p.noise_floor;
    }
    return c;
}

}  // namespace

TimeSeries gen_modulated_ma(const ModulatedMAProcess& p, int n, double dt) {
    check_ma(p);
    if (n < 2) throw Error(ErrorKind::invalid_length, "series length must be at least 2");
    const int lag = static_cast<int>(p.weights.size()) - 1;
    auto eng = make_engine(p.seed, 0);
    // eps[i] holds eps_{i - lag}, so pre-sample innovations are included.
    const auto eps = normals(eng, n + lag);
    std::vector<double> y(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) {
        double acc = 0.0;
        for (int l = 0; l <= lag; ++l) acc += p.weights[l] * eps[t - l + lag];
        y[t] = p.modulation(t) * acc;
    }
    return TimeSeries(std::move(y), dt);
}

ModulatedMAProcess locally_stationary_component(std::uint64_t seed) {
    return {{1.0, 0.33, 0.266, 0.2, 0.133, 0.066},
            [](int t) {
                const double u = t / 512.0;
                return 0.25 + u * (1.0 - u);
            },
            seed};
}

ModulatedMAProcess cyclostationary_component(std::uint64_t seed) {
    // t is the raw sample index.
    return {{1.0, 0.5, 0.0, 0.3, 0.0, 0.1}, [](int t) { return 4.0 * std::abs(std::sin(2.0 * pi * 0.09 * t)); },
            seed};
}

AggregateProcess aggregation_process(std::uint64_t seed) {
    return {{locally_stationary_component(splitmix64(seed ^ 0x1ULL)),
             cyclostationary_component(splitmix64(seed ^ 0x2ULL))}};
}

TimeSeries gen_aggregation(int n, std::uint64_t seed) {
    if (n < 6) throw Error(ErrorKind::invalid_length, "aggregation needs n >= 6");
    return simulate(aggregation_process(seed), n);
}

TimeSeries gen_tv_filter(const TimeVaryingFilterProcess& p, int n) {
    if (!p.filter) throw Error(ErrorKind::parameter, "filter missing");
    if (p.half_width < 0) throw Error(ErrorKind::parameter, "half width must be nonnegative");
    if (n < 2 * p.half_width + 1 || n < 2) throw Error(ErrorKind::invalid_length, "series shorter than filter");
    const int m = p.half_width;
    auto eng = make_engine(p.seed, 0);
    // eps[i] holds eps_{i - M}, covering indices [-M, N-1+M].
    const auto eps = normals(eng, n + 2 * m);
    auto noise_eng = make_engine(p.seed, 1);
    const auto eta = normals(noise_eng, n);
    std::vector<double> z(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) {
        double acc = 0.0;
        for (int k = -m; k <= m; ++k) acc += p.filter(k, t) * eps[t - k + m];
        z[t] = p.dt * acc + p.noise_floor * eta[t];
    }
    return TimeSeries(std::move(z), p.dt);
}

TimeVaryingFilterProcess chirp_filter_process(std::uint64_t seed, int half_width, double f0, double sweep,
                                              double noise_floor) {
    const int m = half_width;
    auto filter = [m, f0, sweep](int k, int t) {
        const double taper = 0.5 * (1.0 + std::cos(pi * k / std::max(m, 1)));
        return taper * std::cos(2.0 * pi * (f0 + sweep * t) * k);
    };
    return {filter, m, noise_floor, 1.0, seed};
}

TimeSeries simulate(const Process& p, int n, double dt) {
    return std::visit(
        [&](const auto& proc) -> TimeSeries {
            using T = std::decay_t<decltype(proc)>;
            if constexpr (std::is_same_v<T, ModulatedMAProcess>) {
                return gen_modulated_ma(proc, n, dt);
            } else if constexpr (std::is_same_v<T, AggregateProcess>) {
                if (proc.components.empty()) throw Error(ErrorKind::parameter, "aggregate has no components");
                std::vector<double> sum(static_cast<size_t>(n), 0.0);
                for (const auto& c : proc.components) {
                    auto y = gen_modulated_ma(c, n, dt);
                    for (int i = 0; i < n; ++i) sum[i] += y.samples()[i];
                }
                return TimeSeries(std::move(sum), dt);
            } else {
                return gen_tv_filter(proc, n);
            }
        },
        p);
}

TheoreticalCovariance theoretical_covariance(const Process& p, int n) {
    if (n < 1) throw Error(ErrorKind::invalid_length, "covariance size must be positive");
    return std::visit(
        [&](const auto& proc) -> TheoreticalCovariance {
            using T = std::decay_t<decltype(proc)>;
            if constexpr (std::is_same_v<T, ModulatedMAProcess>) {
                return {ma_covariance(proc, n)};
            } else if constexpr (std::is_same_v<T, AggregateProcess>) {
                CMatrix c = CMatrix::Zero(n, n);
                for (const auto& comp : proc.components) c += ma_covariance(comp, n);
                return {c};
            } else {
                return {tv_filter_covariance(proc, n)};
            }
        },
        p);
}

TheoreticalCovariance analytic_covariance(const TheoreticalCovariance& c) {
    const CMatrix h = analytic_operator(static_cast<int>(c.entries.rows()));
    CMatrix out = h * c.entries * h.adjoint();
    out = (0.5 * (out + out.adjoint())).eval();
    return {out};
}

std::uint64_t replicate_seed(std::uint64_t seed, int r) { return splitmix64(seed + 0x632be59bd9b4e019ULL * static_cast<std::uint64_t>(r + 1)); }

std::vector<std::string> preset_names() { return {"aggregation512", "whitenoise", "ma-locstat", "ma-cyclo", "tvchirp"}; }

bool is_preset(const std::string& name) {
    const auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Process preset_process(const std::string& name, std::uint64_t seed) {
    if (name == "aggregation512") return aggregation_process(seed);
    if (name == "whitenoise") return ModulatedMAProcess{{1.0}, [](int) { return 1.0; }, seed};
    if (name == "ma-locstat") return locally_stationary_component(seed);
    if (name == "ma-cyclo") return cyclostationary_component(seed);
    if (name == "tvchirp") return chirp_filter_process(seed);
    throw Error(ErrorKind::input, "unknown preset: " + name);
}

int preset_default_length(const std::string& name) {
    if (!is_preset(name)) throw Error(ErrorKind::input, "unknown preset: " + name);
    return 512;
}

double dirichlet(int length, double x) {
    const double nearest = std::round(x);
    if (std::abs(x - nearest) < 1e-12) {
        const auto m = static_cast<long long>(nearest);
        const bool odd = ((m % 2 != 0) && ((length - 1) % 2 != 0));
        return odd ? -static_cast<double>(length) : static_cast<double>(length);
    }
    return std::sin(pi * length * x) / std::sin(pi * x);
}

cdouble stationary_emaf_expectation(std::span<const double> m_tilde, int n, double dt, int tau, double nu) {
    if (std::abs(tau) >= n) throw Error(ErrorKind::parameter, "lag out of range");
    const size_t a = static_cast<size_t>(std::abs(tau));
    const double m = a < m_tilde.size() ? m_tilde[a] : 0.0;
    const double phase = -pi * nu * dt * (n + tau - 1);
    return dt * dirichlet(n - std::abs(tau), dt * nu) * m * std::polar(1.0, phase);
}

int shared_support(int n, int tau1, int tau2) {
    const int lo = std::max({0, tau1, tau2});
    const int hi = n - 1 + std::min({0, tau1, tau2});
    return std::max(0, hi - lo + 1);
}

cdouble whitenoise_af_covariance(int n, double dt, double sigma2, int tau1, int j1, int tau2, int j2) {
    if (j1 != j2) return {0.0, 0.0};
    const int count = shared_support(n, tau1, tau2);
    if (count == 0) return {0.0, 0.0};
    const double nu = j1 / (dt * count);
    const double band = 1.0 / (2.0 * dt);
    // Frequencies f of the conjugated increment with f and f + nu both in the band.
    const double lo = std::max(0.0, -nu);
    const double hi = std::min(band, band - nu);
    if (hi <= lo) return {0.0, 0.0};
    const double scale = sigma2 * sigma2 * count;
    const int d = tau1 - tau2;
    if (d == 0) return {scale * dt * (hi - lo), 0.0};
    const cdouble num = std::polar(1.0, 2.0 * pi * d * dt * hi) - std::polar(1.0, 2.0 * pi * d * dt * lo);
    return scale * num / cdouble(0.0, 2.0 * pi * d);
}

}  // namespace ambieb

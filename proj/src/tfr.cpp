#include "ambieb/tfr.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ambieb/fft.hpp"

namespace ambieb {

namespace {

constexpr double pi = std::numbers::pi;

void unit_energy(std::vector<double>& w) {
    double e = 0.0;
    for (double v : w) e += v * v;
    if (!(e > 0.0)) throw Error(ErrorKind::parameter, "window has zero energy");
    const double s = 1.0 / std::sqrt(e);
    for (auto& v : w) v *= s;
}

std::vector<std::vector<double>> hermite_functions(int max_order, int length) {
    const double half = (length - 1) / 2.0;
    const double x_max = std::sqrt(2.0 * max_order + 1.0) + 3.5;
    const double step = x_max / half;
    std::vector<std::vector<double>> out(static_cast<size_t>(max_order + 1), std::vector<double>(length));
    for (int i = 0; i < length; ++i) {
        const double x = (i - half) * step;
        double prev = 0.0;
        double cur = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
        out[0][i] = cur;
        for (int r = 1; r <= max_order; ++r) {
            const double next = std::sqrt(2.0 / r) * x * cur - std::sqrt((r - 1.0) / r) * prev;
            prev = cur;
            cur = next;
            out[r][i] = cur;
        }
    }
    for (auto& w : out) unit_energy(w);
    return out;
}

// Centre offset: window index i corresponds to d = i - centre.
int centre_of(size_t length) { return static_cast<int>((length - 1) / 2); }

double window_at(const std::vector<double>& w, int d) {
    const int i = d + centre_of(w.size());
    return (i >= 0 && i < static_cast<int>(w.size())) ? w[static_cast<size_t>(i)] : 0.0;
}

// Linear interpolation of one moment row at fractional time index p.
cdouble sample_row(const LagTimeMoments& m, int tau, double p) {
    const int n = m.n();
    const double lo_f = std::floor(p);
    const double frac = p - lo_f;
    const int lo = static_cast<int>(lo_f);
    auto at = [&](int t) { return (t >= 0 && t < n) ? m(tau, t) : cdouble{}; };
    if (frac < 1e-12) return at(lo);
    return (1.0 - frac) * at(lo) + frac * at(lo + 1);
}

}  // namespace

WindowKind parse_window_kind(const std::string& s) {
    if (s == "gaussian" || s == "gauss") return WindowKind::gaussian;
    if (s == "hann") return WindowKind::hann;
    if (s == "hermite") return WindowKind::hermite;
    throw Error(ErrorKind::parameter, "unsupported window kind: " + s);
}

std::vector<std::vector<double>> window_bank(WindowKind kind, int order, int length) {
    if (length < 2) throw Error(ErrorKind::invalid_length, "window length must be >= 2");
    switch (kind) {
        case WindowKind::gaussian: return {hermite_functions(0, length)[0]};
        case WindowKind::hann: {
            std::vector<double> w(static_cast<size_t>(length));
            for (int i = 0; i < length; ++i) w[i] = 0.5 * (1.0 - std::cos(2.0 * pi * i / (length - 1)));
            unit_energy(w);
            return {w};
        }
        case WindowKind::hermite:
            if (order < 0) throw Error(ErrorKind::parameter, "hermite order must be >= 0");
            return hermite_functions(order, length);
    }
    throw Error(ErrorKind::parameter, "unsupported window kind");
}

double LagKernel::weight(int tau, int d) const {
    if (is_delta()) return d == 0 ? 1.0 : 0.0;
    double acc = 0.0;
    for (size_t r = 0; r < windows.size(); ++r) acc += weights[r] * window_at(windows[r], d) * window_at(windows[r], d - tau);
    return acc;
}

int LagKernel::reach() const {
    int len = 1;
    for (const auto& w : windows) len = std::max(len, static_cast<int>(w.size()));
    return len;
}

LagKernel delta_kernel() { return {}; }

LagKernel window_kernel(std::string name, std::vector<std::vector<double>> windows) {
    if (windows.empty()) throw Error(ErrorKind::parameter, "window kernel needs at least one window");
    std::vector<double> weights(windows.size(), 1.0 / static_cast<double>(windows.size()));
    return {std::move(name), std::move(windows), std::move(weights)};
}

LagKernel parse_kernel(const std::string& spec) {
    if (spec == "delta" || spec.empty()) return delta_kernel();
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    auto as_int = [&](size_t i) {
        try {
            return std::stoi(parts.at(i));
        } catch (const std::exception&) {
            throw Error(ErrorKind::parameter, "malformed kernel spec: " + spec);
        }
    };
    const auto kind = parse_window_kind(parts[0]);
    const int length = as_int(1);
    if (kind == WindowKind::hermite) {
        const int count = parts.size() > 2 ? as_int(2) : 1;
        if (count < 1) throw Error(ErrorKind::parameter, "hermite kernel needs at least one taper");
        return window_kernel(spec, window_bank(kind, count - 1, length));
    }
    return window_kernel(spec, window_bank(kind, 0, length));
}

TFRGrid bilinear(const LagTimeMoments& m, double alpha, const LagKernel& kernel) {
    if (!(alpha >= -0.5 && alpha <= 0.5)) throw Error(ErrorKind::parameter, "alpha must lie in [-1/2, 1/2]");
    const int n = m.n();
    const int len = 2 * n;
    const double shift = 0.5 - alpha;
    const int reach = kernel.reach();
    // Lags beyond the window reach carry zero weight.
    const int max_lag = kernel.is_delta() ? n - 1 : std::min(n - 1, reach - 1);

    // Dimensionless weights w(tau, d) for |tau| <= max_lag, |d| <= reach.
    const int dspan = kernel.is_delta() ? 0 : reach;
    std::vector<double> w(static_cast<size_t>(2 * max_lag + 1) * (2 * dspan + 1));
    auto widx = [&](int tau, int d) { return static_cast<size_t>(tau + max_lag) * (2 * dspan + 1) + (d + dspan); };
    for (int tau = -max_lag; tau <= max_lag; ++tau)
        for (int d = -dspan; d <= dspan; ++d) w[widx(tau, d)] = kernel.weight(tau, d);

    TFRGrid out{n, m.dt(), alpha, kernel.name, CGrid(n, len)};
    Dft fwd(len, Dft::Direction::forward);
    std::vector<cdouble> buf(len);
    for (int t = 0; t < n; ++t) {
        std::fill(buf.begin(), buf.end(), cdouble{});
        for (int tau = -max_lag; tau <= max_lag; ++tau) {
            cdouble g{};
            for (int d = -dspan; d <= dspan; ++d) {
                const double wt = w[widx(tau, d)];
                if (wt == 0.0) continue;
                g += wt * sample_row(m, tau, t + d + shift * tau);
            }
            buf[(tau + len) % len] = g;
        }
        fwd.execute(buf.data(), buf.data());
        for (int c = 0; c < len; ++c) out.values(t, c) = m.dt() * buf[(c + n) % len];
    }
    return out;
}

TFRGrid spectrogram(const AnalyticSeries& z, std::vector<double> window) {
    if (window.empty()) throw Error(ErrorKind::invalid_length, "empty window");
    const int n = z.size();
    if (static_cast<int>(window.size()) > n) throw Error(ErrorKind::invalid_length, "window longer than signal");
    unit_energy(window);
    const int len = 2 * n;
    const int centre = centre_of(window.size());
    const double root_dt = std::sqrt(z.dt());
    TFRGrid out{n, z.dt(), 0.5, "spectrogram", CGrid(n, len)};
    Dft fwd(len, Dft::Direction::forward);
    std::vector<cdouble> buf(len);
    for (int t = 0; t < n; ++t) {
        std::fill(buf.begin(), buf.end(), cdouble{});
        for (int i = 0; i < static_cast<int>(window.size()); ++i) {
            const int s = t + i - centre;
            if (s >= 0 && s < n) buf[s] = window[i] * z.samples()[s];
        }
        fwd.execute(buf.data(), buf.data());
        for (int c = 0; c < len; ++c) out.values(t, c) = std::norm(root_dt * buf[(c + n) % len]);
    }
    return out;
}

CGrid dual_frequency(const AmbiguityGrid& a) {
    const int n = a.n();
    const int len = 2 * n;
    CGrid out(len, len);
    Dft fwd(len, Dft::Direction::forward);
    std::vector<cdouble> buf(len);
    for (int c = 0; c < len; ++c) {
        std::fill(buf.begin(), buf.end(), cdouble{});
        for (int tau = -(n - 1); tau <= n - 1; ++tau) buf[(tau + len) % len] = a.grid()(tau + n - 1, c);
        fwd.execute(buf.data(), buf.data());
        for (int j = 0; j < len; ++j) out(c, j) = a.dt() * buf[(j + n) % len];
    }
    return out;
}

}  // namespace ambieb

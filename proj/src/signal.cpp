#include "ambieb/signal.hpp"

#include <cmath>
#include <numeric>

#include "ambieb/fft.hpp"

namespace ambieb {

TimeSeries::TimeSeries(std::vector<double> samples, double dt) : samples_(std::move(samples)), dt_(dt) {
    if (samples_.size() < 2) throw Error(ErrorKind::invalid_length, "time series needs at least 2 samples");
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw Error(ErrorKind::parameter, "sampling period must be positive");
}

AnalyticSeries::AnalyticSeries(std::vector<cdouble> samples, double dt) : samples_(std::move(samples)), dt_(dt) {
    if (samples_.size() < 2) throw Error(ErrorKind::invalid_length, "analytic series needs at least 2 samples");
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw Error(ErrorKind::parameter, "sampling period must be positive");
}

TimeSeries demean(const TimeSeries& x) {
    auto s = x.samples();
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    std::vector<double> out(s.size());
    for (size_t i = 0; i < s.size(); ++i) out[i] = s[i] - mean;
    return TimeSeries(std::move(out), x.dt());
}

namespace {

// Weight applied to DFT bin k of a length-n signal.
double analytic_weight(int k, int n) {
    if (k == 0) return 1.0;
    if (n % 2 == 0 && k == n / 2) return 1.0;
    return (2 * k < n) ? 2.0 : 0.0;
}

}  // namespace

AnalyticSeries analytic_signal(const TimeSeries& x) {
    const int n = x.size();
    std::vector<cdouble> buf(x.samples().begin(), x.samples().end());
    Dft fwd(n, Dft::Direction::forward);
    Dft bwd(n, Dft::Direction::backward);
    fwd.execute(buf.data(), buf.data());
    for (int k = 0; k < n; ++k) buf[k] *= analytic_weight(k, n) / n;
    bwd.execute(buf.data(), buf.data());
    // The real part is x up to round-off; pin it exactly.
    for (int i = 0; i < n; ++i) buf[i].real(x.samples()[i]);
    return AnalyticSeries(std::move(buf), x.dt());
}

CMatrix analytic_operator(int n) {
    if (n < 2) throw Error(ErrorKind::invalid_length, "analytic operator needs n >= 2");
    // Circulant: H[a,b] = (1/n) sum_k w_k exp(2 pi i k (a-b) / n).
    std::vector<cdouble> col(n);
    for (int k = 0; k < n; ++k) col[k] = analytic_weight(k, n) / n;
    Dft bwd(n, Dft::Direction::backward);
    bwd.execute(col.data(), col.data());
    CMatrix h(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) h(a, b) = col[((a - b) % n + n) % n];
    return h;
}

}  // namespace ambieb

#pragma once

#include <span>
#include <vector>

#include "ambieb/types.hpp"

namespace ambieb {

// A uniformly sampled real series, t_n = n * dt.
class TimeSeries {
public:
    TimeSeries(std::vector<double> samples, double dt);

    std::span<const double> samples() const noexcept { return samples_; }
    double dt() const noexcept { return dt_; }
    int size() const noexcept { return static_cast<int>(samples_.size()); }

private:
    std::vector<double> samples_;
    double dt_;
};

// Complex (analytic) extension of a TimeSeries.
class AnalyticSeries {
public:
    AnalyticSeries(std::vector<cdouble> samples, double dt);

    std::span<const cdouble> samples() const noexcept { return samples_; }
    double dt() const noexcept { return dt_; }
    int size() const noexcept { return static_cast<int>(samples_.size()); }

private:
    std::vector<cdouble> samples_;
    double dt_;
};

TimeSeries demean(const TimeSeries& x);

// DFT-based discrete analytic signal: positive bins doubled, DC and (even
// length) Nyquist kept, negative bins zeroed. Re(z) reproduces x.
AnalyticSeries analytic_signal(const TimeSeries& x);

// The N x N complex matrix H with analytic_signal(x) = H x.
CMatrix analytic_operator(int n);

}  // namespace ambieb

#pragma once

#include "ambieb/signal.hpp"
#include "ambieb/types.hpp"

namespace ambieb {

// Lag-time moment grid M(tau, n): rows tau in [-(N-1), N-1], columns n in [0, N-1].
class LagTimeMoments {
public:
    LagTimeMoments(int n, double dt);
    LagTimeMoments(CGrid entries, double dt);

    int n() const noexcept { return n_; }
    double dt() const noexcept { return dt_; }
    int max_lag() const noexcept { return n_ - 1; }

    cdouble operator()(int tau, int t) const { return entries_(tau + n_ - 1, t); }
    cdouble& operator()(int tau, int t) { return entries_(tau + n_ - 1, t); }

    const CGrid& grid() const noexcept { return entries_; }
    CGrid& grid() noexcept { return entries_; }

    // Time indices where Z_n Z*_{n-tau} exists.
    static int support_begin(int tau) { return tau > 0 ? tau : 0; }
    int support_end(int tau) const { return tau < 0 ? n_ + tau : n_; }  // exclusive

private:
    int n_;
    double dt_;
    CGrid entries_;
};

// Ambiguity grid A(tau, k): rows tau in [-(N-1), N-1], columns k in [-N, N-1]
// at dual frequency nu_k = k / (2 N dt).
class AmbiguityGrid {
public:
    AmbiguityGrid(int n, double dt, double delta = 0.5);
    AmbiguityGrid(CGrid entries, double dt, bool normalized, double delta = 0.5);

    int n() const noexcept { return n_; }
    double dt() const noexcept { return dt_; }
    double delta() const noexcept { return delta_; }
    bool normalized() const noexcept { return normalized_; }
    void set_normalized(bool v) noexcept { normalized_ = v; }

    double frequency(int k) const { return k / (2.0 * n_ * dt_); }

    cdouble operator()(int tau, int k) const { return entries_(tau + n_ - 1, k + n_); }
    cdouble& operator()(int tau, int k) { return entries_(tau + n_ - 1, k + n_); }

    const CGrid& grid() const noexcept { return entries_; }
    CGrid& grid() noexcept { return entries_; }

    bool is_origin(Eigen::Index row, Eigen::Index col) const { return row == n_ - 1 && col == n_; }

private:
    int n_;
    double dt_;
    double delta_;
    bool normalized_;
    CGrid entries_;
};

struct NormalizationField {
    int n = 0;
    double dt = 1.0;
    double delta = 0.5;
    RGrid kappa;  // variance scale of the EMAF
    RGrid ell;    // squared-mean to variance ratio at a sparse component
};

// M(tau, n) = z_n conj(z_{n-tau}) on the valid support, zero elsewhere.
LagTimeMoments raw_moments(const AnalyticSeries& z);

// A(tau, k) = dt * sum_n M(tau, n) exp(-2 pi i nu_k t_n), by zero-padded length-2N DFTs.
AmbiguityGrid emaf(const LagTimeMoments& m, double delta = 0.5);

NormalizationField normalization(int n, double dt, double delta = 0.5);

AmbiguityGrid normalize(const AmbiguityGrid& a, const NormalizationField& f);
AmbiguityGrid denormalize(const AmbiguityGrid& a, const NormalizationField& f);

// Elementwise multiplication by a shrinkage kernel Omega with |Omega| <= 1.
AmbiguityGrid smooth_kernel(const AmbiguityGrid& a, const CGrid& omega);

// Omega(tau, nu) = exp(-nu^2 / (2 b^2)), the same for every lag.
CGrid gaussian_dual_kernel(int n, double dt, double bandwidth);

}  // namespace ambieb

#pragma once

#include <string>
#include <vector>

#include "ambieb/ambiguity.hpp"
#include "ambieb/signal.hpp"
#include "ambieb/types.hpp"

namespace ambieb {

enum class WindowKind { gaussian, hann, hermite };

WindowKind parse_window_kind(const std::string& s);

// Unit-energy windows. hermite returns Hermite functions of orders 0..order
// sampled on a common symmetric grid; gaussian and hann return one window.
std::vector<std::vector<double>> window_bank(WindowKind kind, int order, int length);

// Time-lag smoothing kernel omega_tau(d) in units of 1/dt:
//   delta:   omega_tau(d) = [d == 0] / dt
//   windows: omega_tau(d) = sum_r c_r h_r(d) h_r(d - tau) / dt
// where h_r(d) is indexed by the offset d from the window centre.
struct LagKernel {
    std::string name = "delta";
    std::vector<std::vector<double>> windows;
    std::vector<double> weights;

    bool is_delta() const { return windows.empty(); }
    double weight(int tau, int d) const;  // dimensionless, omega * dt
    int reach() const;                    // largest |offset| with nonzero weight
};

LagKernel delta_kernel();
// Equal-weight multitaper kernel over the given unit-energy windows.
LagKernel window_kernel(std::string name, std::vector<std::vector<double>> windows);
// "delta", "hann:L", "gauss:L" or "hermite:L:K" (orders 0..K-1).
LagKernel parse_kernel(const std::string& spec);

struct TFRGrid {
    int n = 0;
    double dt = 1.0;
    double alpha = 0.5;
    std::string kernel = "delta";
    CGrid values;  // rows t_n, columns f_j = j / (2 N dt), j in [-N, N-1]

    double frequency(int j) const { return j / (2.0 * n * dt); }
    cdouble operator()(int t, int j) const { return values(t, j + n); }
};

// S(t_n, f_j) = dt^2 sum_tau sum_k omega_tau(t_k - t_n) M_tau(t_k^alpha) exp(-2 pi i tau f_j dt),
// t_k^alpha = (k + (1/2 - alpha) tau) dt, linearly interpolated between integer times;
// moments at times outside [0, N-1] are zero.
TFRGrid bilinear(const LagTimeMoments& m, double alpha, const LagKernel& kernel = delta_kernel());

// |J(t_n, f_j)|^2 with J = sqrt(dt) sum_s h(s - n) z_s exp(-2 pi i f_j s dt), h centred and
// scaled to unit energy.
TFRGrid spectrogram(const AnalyticSeries& z, std::vector<double> window);

// S(nu_k, f_j) = dt sum_tau A(tau, k) exp(-2 pi i f_j tau dt); rows k in [-N, N-1], columns j.
CGrid dual_frequency(const AmbiguityGrid& a);

}  // namespace ambieb

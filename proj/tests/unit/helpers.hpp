#pragma once

#include <complex>
#include <random>
#include <vector>

#include "ambieb/ambiguity.hpp"
#include "ambieb/signal.hpp"

namespace testing_helpers {

using ambieb::cdouble;

inline std::vector<double> normal_vector(int n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> nd;
    std::vector<double> v(static_cast<size_t>(n));
    for (auto& x : v) x = nd(eng);
    return v;
}

inline std::vector<cdouble> complex_vector(int n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> nd;
    std::vector<cdouble> v(static_cast<size_t>(n));
    for (auto& x : v) x = {nd(eng), nd(eng)};
    return v;
}

inline ambieb::LagTimeMoments random_moments(int n, double dt, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> nd;
    ambieb::LagTimeMoments m(n, dt);
    for (int tau = -(n - 1); tau <= n - 1; ++tau)
        for (int t = ambieb::LagTimeMoments::support_begin(tau); t < m.support_end(tau); ++t) m(tau, t) = {nd(eng), nd(eng)};
    return m;
}

inline ambieb::CGrid random_grid(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> nd;
    ambieb::CGrid g(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) g(r, c) = {nd(eng), nd(eng)};
    return g;
}

inline double max_abs_diff(const ambieb::CGrid& a, const ambieb::CGrid& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace testing_helpers

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ambieb/signal.hpp"
#include "helpers.hpp"

using namespace ambieb;
using namespace testing_helpers;

namespace {

// Analytic signal by explicit DFT weighting, O(N^2).
std::vector<cdouble> analytic_oracle(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<cdouble> spec(n), out(n);
    for (int k = 0; k < n; ++k)
        for (int t = 0; t < n; ++t) spec[k] += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * k * t / n);
    for (int k = 0; k < n; ++k) {
        double w = 0.0;
        if (k == 0 || (n % 2 == 0 && k == n / 2)) w = 1.0;
        else if (k < (n + 1) / 2) w = 2.0;
        spec[k] *= w;
    }
    for (int t = 0; t < n; ++t) {
        for (int k = 0; k < n; ++k) out[t] += spec[k] * std::polar(1.0, 2.0 * std::numbers::pi * k * t / n);
        out[t] /= n;
    }
    return out;
}

}  // namespace

TEST_SUITE("signal") {
    TEST_CASE("type invariants") {
        CHECK_THROWS_AS(TimeSeries({1.0}, 1.0), Error);
        CHECK_THROWS_AS(TimeSeries({1.0, 2.0}, 0.0), Error);
        CHECK_THROWS_AS(AnalyticSeries({cdouble{1.0}}, 1.0), Error);
        CHECK(TimeSeries({1.0, 2.0}, 0.5).dt() == 0.5);
    }

    TEST_CASE("demean examples") {
        auto check = [](std::vector<double> in, std::vector<double> expect) {
            const auto out = demean(TimeSeries(in, 1.0));
            for (size_t i = 0; i < expect.size(); ++i) CHECK(out.samples()[i] == doctest::Approx(expect[i]).epsilon(1e-15));
        };
        check({1, 1, 1, 1}, {0, 0, 0, 0});
        check({0, 0, 0, 0}, {0, 0, 0, 0});
        check({1, 2, 3, 4}, {-1.5, -0.5, 0.5, 1.5});
    }

    TEST_CASE("demean leaves zero mean") {
        auto v = normal_vector(101, 3);
        for (auto& x : v) x += 7.0;
        const auto out = demean(TimeSeries(v, 1.0));
        double mean = 0.0, rms = 0.0;
        for (size_t i = 0; i < v.size(); ++i) {
            mean += out.samples()[i];
            rms += v[i] * v[i];
        }
        CHECK(std::abs(mean / v.size()) <= 1e-12 * std::sqrt(rms / v.size()));
    }

    TEST_CASE("zero input gives zero analytic signal") {
        const auto z = analytic_signal(TimeSeries(std::vector<double>(8, 0.0), 1.0));
        for (auto v : z.samples()) CHECK(std::abs(v) == 0.0);
    }

    TEST_CASE("on-grid cosine becomes complex exponential") {
        const int n = 16, k0 = 3;
        std::vector<double> x(n);
        for (int t = 0; t < n; ++t) x[t] = std::cos(2.0 * std::numbers::pi * k0 * t / n);
        const auto z = analytic_signal(TimeSeries(x, 1.0));
        for (int t = 0; t < n; ++t) CHECK(std::abs(z.samples()[t] - std::polar(1.0, 2.0 * std::numbers::pi * k0 * t / n)) < 1e-10);
    }

    TEST_CASE("white noise matches the DFT weighting oracle") {
        for (int n : {64, 63, 2, 3}) {
            const auto x = normal_vector(n, 11 + n);
            const auto z = analytic_signal(TimeSeries(x, 1.0));
            const auto ref = analytic_oracle(x);
            for (int t = 0; t < n; ++t) {
                CHECK(std::abs(z.samples()[t] - ref[t]) < 1e-10);
                CHECK(std::abs(z.samples()[t].real() - x[t]) < 1e-10);
            }
            // One-sided spectrum.
            double rms = 0.0;
            for (double v : x) rms += v * v;
            rms = std::sqrt(rms / n);
            for (int k = n / 2 + 1; k < n; ++k) {
                cdouble acc{};
                for (int t = 0; t < n; ++t) acc += z.samples()[t] * std::polar(1.0, -2.0 * std::numbers::pi * k * t / n);
                CHECK(std::abs(acc) / n < 1e-10 * rms);
            }
        }
    }

    TEST_CASE("analytic_signal is linear") {
        const auto x = normal_vector(50, 1), y = normal_vector(50, 2);
        const double a = 1.7, b = -0.3;
        std::vector<double> c(50);
        for (int i = 0; i < 50; ++i) c[i] = a * x[i] + b * y[i];
        const auto zx = analytic_signal(TimeSeries(x, 1.0)), zy = analytic_signal(TimeSeries(y, 1.0));
        const auto zc = analytic_signal(TimeSeries(c, 1.0));
        for (int i = 0; i < 50; ++i) CHECK(std::abs(zc.samples()[i] - (a * zx.samples()[i] + b * zy.samples()[i])) < 1e-10);
    }

    TEST_CASE("analytic operator reproduces analytic_signal") {
        for (int n : {7, 8}) {
            const auto x = normal_vector(n, 5);
            const auto h = analytic_operator(n);
            Eigen::VectorXcd xv(n);
            for (int i = 0; i < n; ++i) xv(i) = x[i];
            const Eigen::VectorXcd zv = h * xv;
            const auto z = analytic_signal(TimeSeries(x, 1.0));
            for (int i = 0; i < n; ++i) CHECK(std::abs(zv(i) - z.samples()[i]) < 1e-12);
        }
    }
}

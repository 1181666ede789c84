#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ambieb/diagnostics.hpp"
#include "ambieb/signal.hpp"
#include "helpers.hpp"

using namespace ambieb;
using namespace testing_helpers;

TEST_SUITE("diagnostics") {
    TEST_CASE("QQ slope of Gaussian coefficients is near one") {
        std::mt19937_64 eng(5);
        std::normal_distribution<double> nd;
        const double vbar = 7.0;
        const int n = 12;
        AmbiguityGrid a(n, 1.0);
        a.set_normalized(true);
        for (Eigen::Index r = 0; r < a.grid().rows(); ++r)
            for (Eigen::Index c = 0; c < a.grid().cols(); ++c)
                a.grid()(r, c) = std::sqrt(vbar / 2.0) * cdouble(nd(eng), nd(eng));
        const auto [re, im] = qq_normalized_af(a, vbar);
        CHECK(re.component == Component::real);
        CHECK(im.component == Component::imaginary);
        CHECK(re.sample_quantiles.size() == static_cast<size_t>(a.grid().size() - 1));
        CHECK(re.slope() > 0.95);
        CHECK(re.slope() < 1.05);
        CHECK(im.slope() > 0.95);
        CHECK(im.slope() < 1.05);
    }

    TEST_CASE("QQ data is sorted, permutation invariant and flat for constants") {
        auto v = normal_vector(200, 3);
        const auto a = qq_data(v, Component::real);
        CHECK(std::is_sorted(a.sample_quantiles.begin(), a.sample_quantiles.end()));
        CHECK(std::is_sorted(a.theoretical_quantiles.begin(), a.theoretical_quantiles.end()));
        CHECK(a.theoretical_quantiles[100] == doctest::Approx(-a.theoretical_quantiles[99]).epsilon(1e-12));
        std::shuffle(v.begin(), v.end(), std::mt19937_64(8));
        const auto b = qq_data(v, Component::real);
        CHECK(a.sample_quantiles == b.sample_quantiles);
        CHECK(qq_data(std::vector<double>(50, 2.5), Component::real).slope() == 0.0);
        CHECK_THROWS_AS(qq_data(std::vector<double>(5, 1.0), Component::real), Error);
    }

    TEST_CASE("risk report limits") {
        const int n = 8;
        CMatrix h = CMatrix::Zero(n, n);
        const auto g = random_grid(n, n, 4);
        h = g * g.adjoint();
        const auto truth = TheoreticalCovariance{h};
        const auto exact = decompose(h);
        const auto noisy = decompose(h + CMatrix::Identity(n, n));
        const auto a = risk_report(exact, noisy, truth);
        CHECK(a.frobenius_ratio == 0.0);
        CHECK(a.normalized_error.maxCoeff() == 0.0);
        CHECK(a.normalized_error.rows() == n);
        CHECK(a.eigen_spectra.size() >= 2);
        for (const auto& s : a.eigen_spectra) CHECK(std::is_sorted(s.values.rbegin(), s.values.rend()));
        const auto b = risk_report(noisy, exact, truth);
        CHECK(b.frobenius_ratio == std::numeric_limits<double>::infinity());
        const auto half = decompose(h + 0.5 * CMatrix::Identity(n, n));
        CHECK(risk_report(half, noisy, truth).frobenius_ratio == doctest::Approx(0.5).epsilon(1e-12));
    }

    TEST_CASE("raw moment variance agrees with a direct Gaussian simulation") {
        const int n = 6;
        const CMatrix g = random_grid(n, n, 12);
        const CMatrix hop = analytic_operator(n);
        // Z = H x, x real Gaussian with covariance G G^T (real part used).
        const Eigen::MatrixXd l = g.real();
        const CMatrix cov = hop * (l * l.transpose()).cast<cdouble>() * hop.adjoint();
        const CMatrix rel = hop * (l * l.transpose()).cast<cdouble>() * hop.transpose();
        const double theory = raw_moment_variance(cov, rel, 3, 1);
        std::mt19937_64 eng(77);
        std::normal_distribution<double> nd;
        const int reps = 40000;
        const cdouble mean = cov(3, 1);
        double acc = 0.0;
        for (int r = 0; r < reps; ++r) {
            Eigen::VectorXd e(n);
            for (int i = 0; i < n; ++i) e(i) = nd(eng);
            const Eigen::VectorXcd z = hop * (l * e).cast<cdouble>();
            acc += std::norm(z(3) * std::conj(z(1)) - mean);
        }
        CHECK(acc / reps == doctest::Approx(theory).epsilon(0.05));
    }

    TEST_CASE("variance probe: shrinkage reduces moment variance") {
        const auto p = variance_reduction_probe(64, 500, 9);
        CHECK(p.tau == 2);
        CHECK(p.time == 32);
        CHECK(p.var_eb <= p.var_raw);
        CHECK(std::abs(p.var_raw - p.var_raw_theory) < 4.0 * p.var_raw_se);
        CHECK_THROWS_AS(variance_reduction_probe(64, 1, 9), Error);
    }

    TEST_CASE("KS test") {
        std::mt19937_64 eng(101);
        std::exponential_distribution<double> ed(1.0 / 3.0);
        std::vector<double> x(2000);
        for (auto& v : x) v = ed(eng);
        const auto good = ks_exponential(x, 3.0);
        CHECK(good.p_value > 0.01);
        const auto bad = ks_exponential(x, 6.0);
        CHECK(bad.p_value < 1e-10);
        // Single sample at the median gives D = 1/2.
        const std::vector<double> one{std::log(2.0)};
        CHECK(ks_exponential(one, 1.0).statistic == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(kolmogorov_p_value(0.0, 100) == 1.0);
        CHECK(kolmogorov_p_value(1.0, 100) < 1e-50);
        // Known asymptotic value: P(K > 1.36) = 0.0494.
        CHECK(kolmogorov_p_value(1.36 / std::sqrt(1e8), 100000000) == doctest::Approx(0.0494).epsilon(0.01));
    }
}

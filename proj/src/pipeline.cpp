#include "ambieb/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "ambieb/diagnostics.hpp"
#include "ambieb/matrix_io.hpp"

namespace ambieb {

namespace {

double retained(const ThresholdField& t) {
    const Eigen::Index total = t.theta.size() - 1;
    Eigen::Index kept = 0;
    for (Eigen::Index r = 0; r < t.theta.rows(); ++r)
        for (Eigen::Index c = 0; c < t.theta.cols(); ++c)
            if (t.theta(r, c) > 0.0 && !(r == t.n - 1 && c == t.n)) ++kept;
    return total > 0 ? static_cast<double>(kept) / static_cast<double>(total) : 0.0;
}

ThresholdField origin_only(int n, double dt) {
    ThresholdField t{n, dt, RGrid::Zero(2 * n - 1, 2 * n), RGrid::Zero(2 * n - 1, 2 * n)};
    t.theta(n - 1, n) = 1.0;
    return t;
}

bool all_zero(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
}

}  // namespace

MomentEstimate estimate_moments(const AnalyticSeries& z, double delta, const FitOptions& opts) {
    const auto raw = emaf(raw_moments(z), delta);
    const auto normalized = normalize(raw, normalization(z.size(), z.dt(), delta));
    FitResult f;
    bool converged = true;
    try {
        f = fit(normalized, opts);
    } catch (const ConvergenceError& e) {
        f = e.best();
        converged = false;
    }
    const auto t = threshold_field(f.params, normalized);
    return {f, converged, invert_af(apply_threshold(raw, t)), retained(t)};
}

PipelineResult run_pipeline(const TimeSeries& input, const PipelineConfig& cfg) {
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw Error(ErrorKind::parameter, "delta must lie in (0, 1)");
    if (!(cfg.alpha >= -0.5 && cfg.alpha <= 0.5)) throw Error(ErrorKind::parameter, "alpha must lie in [-1/2, 1/2]");
    const auto kernel = parse_kernel(cfg.kernel);

    const TimeSeries x = cfg.demean ? demean(input) : input;
    const int n = x.size();
    const double dt = x.dt();
    auto z = analytic_signal(x);
    auto raw = emaf(raw_moments(z), cfg.delta);
    const auto field = normalization(n, dt, cfg.delta);
    auto normalized = normalize(raw, field);

    FitResult f;
    bool converged = true;
    ThresholdField theta;
    const bool zero = all_zero(x.samples());
    if (zero) {
        f = FitResult{ShrinkageParams{0.0, 0.0, 0.0}, 0.0, 0, 0};
        theta = origin_only(n, dt);
    } else {
        try {
            f = fit(normalized, cfg.fit);
        } catch (const ConvergenceError& e) {
            f = e.best();
            converged = false;
        }
        theta = threshold_field(f.params, normalized);
    }

    auto af_eb = apply_threshold(raw, theta);
    auto moments = invert_af(af_eb);
    auto uncorrected = assemble(moments);
    auto corrected = correct(uncorrected, cfg.correction);
    std::optional<TFRGrid> tfr;
    if (cfg.compute_tfr) tfr = bilinear(moments, cfg.alpha, kernel);
    const double kept = retained(theta);

    return PipelineResult{std::move(z),        std::move(raw),         std::move(normalized),
                          f,                   converged,              zero,
                          std::move(theta),    std::move(af_eb),       std::move(moments),
                          std::move(uncorrected), std::move(corrected), std::move(tfr),
                          kept};
}

void write_outputs(const PipelineResult& r, const PipelineConfig& cfg, const std::string& outdir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (!fs::is_directory(outdir)) throw Error(ErrorKind::input, "cannot create output directory " + outdir);
    auto path = [&](const char* name) { return (fs::path(outdir) / name).string(); };

    const auto& p = r.fit.params;
    write_matrix_file(path("emaf.mat"), r.raw_af.grid());
    {
        std::ofstream os(path("psi.txt"));
        os << format_record({{"vbar", format_double(p.vbar)},
                             {"rho", format_double(p.rho)},
                             {"sigma2", format_double(p.sigma2)},
                             {"nll", format_double(r.fit.nll)},
                             {"iterations", std::to_string(r.fit.iterations)}})
           << '\n';
    }
    write_matrix_file(path("theta.mat"), r.theta.theta);
    write_matrix_file(path("af_eb.mat"), r.af_eb.grid());
    write_matrix_file(path("moments_eb.mat"), r.moments_eb.grid());

    const double mineig_after = r.cov_eb.min_eigenvalue();
    CGrid cov = r.cov_eb.entries;
    write_matrix_file(path("cov_eb.mat"), cov,
                      {"correction=" + to_string(r.cov_eb.correction) + " mineig=" + format_double(mineig_after)});
    if (r.tfr)
        write_matrix_file(path("tfr.mat"), r.tfr->values,
                          {"tfr alpha=" + format_double(r.tfr->alpha) + " kernel=" + r.tfr->kernel});

    std::pair<QQData, QQData> qq;
    if (r.zero_signal) {
        const auto q = off_origin_magnitudes(r.normalized_af);
        qq = {qq_data(std::vector<double>(q.size(), 0.0), Component::real),
              qq_data(std::vector<double>(q.size(), 0.0), Component::imaginary)};
    } else {
        qq = qq_normalized_af(r.normalized_af, p.vbar);
    }
    auto write_qq = [&](const char* name, const QQData& d, const char* tag) {
        RGrid m(static_cast<Eigen::Index>(d.sample_quantiles.size()), 2);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            m(i, 0) = d.theoretical_quantiles[static_cast<size_t>(i)];
            m(i, 1) = d.sample_quantiles[static_cast<size_t>(i)];
        }
        write_matrix_file(path(name), m, {std::string("qq component=") + tag + " columns=theoretical,sample"});
    };
    write_qq("qq_re.txt", qq.first, "real");
    write_qq("qq_im.txt", qq.second, "imaginary");

    std::ofstream os(path("summary.txt"));
    const KeyValues summary{
        {"n", std::to_string(r.z.size())},
        {"dt", format_double(r.z.dt())},
        {"delta", format_double(cfg.delta)},
        {"alpha", format_double(cfg.alpha)},
        {"kernel", cfg.kernel},
        {"correction", to_string(cfg.correction)},
        {"vbar", format_double(p.vbar)},
        {"rho", format_double(p.rho)},
        {"sigma2", format_double(p.sigma2)},
        {"nll", format_double(r.fit.nll)},
        {"iterations", std::to_string(r.fit.iterations)},
        {"converged", r.converged ? "true" : "false"},
        {"zero_signal", r.zero_signal ? "true" : "false"},
        {"coefficients", std::to_string(r.fit.coefficients)},
        {"retained_fraction", format_double(r.retained_fraction)},
        {"mineig_before", format_double(r.cov_uncorrected.min_eigenvalue())},
        {"mineig_after", format_double(mineig_after)},
        {"trace", format_double(r.cov_eb.trace())},
    };
    for (const auto& [k, v] : summary) os << k << '=' << v << '\n';
}

}  // namespace ambieb

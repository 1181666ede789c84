#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ambieb/covariance.hpp"
#include "ambieb/diagnostics.hpp"
#include "ambieb/matrix_io.hpp"
#include "ambieb/pipeline.hpp"
#include "ambieb/procgen.hpp"

namespace {

using namespace ambieb;

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_nonconverged = 3;

// Appends "--key value" for each config-file line whose key was not given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    std::set<std::string> given;
    for (size_t i = 0; i < args.size(); ++i) {
        const auto& a = args[i];
        if (a.rfind("--", 0) != 0) continue;
        const auto eq = a.find('=');
        const std::string key = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
        given.insert(key);
        if (key == "config") path = eq != std::string::npos ? a.substr(eq + 1) : (i + 1 < args.size() ? args[i + 1] : "");
    }
    if (path.empty()) return args;
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::input, "cannot read config " + path);
    for (std::string line; std::getline(is, line);) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config" || given.count(key)) continue;
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

struct Options {
    std::string preset;
    std::string input;
    std::string outdir = ".";
    std::string out;
    std::string correction = "clip";
    std::string kernel = "delta";
    std::string config;
    double dt = 1.0;
    double delta = 0.5;
    double alpha = 0.5;
    int n = 0;
    int reps = 20;
    std::uint64_t seed = 0;
};

TimeSeries load_input(const Options& o, bool dt_given) {
    namespace fs = std::filesystem;
    if (!fs::exists(o.input) && is_preset(o.input)) {
        const int n = o.n > 0 ? o.n : preset_default_length(o.input);
        const auto x = simulate(preset_process(o.input, o.seed), n);
        return TimeSeries({x.samples().begin(), x.samples().end()}, o.dt);
    }
    auto x = read_signal_file(o.input, o.dt);
    if (dt_given) return TimeSeries({x.samples().begin(), x.samples().end()}, o.dt);
    return x;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(o.out);
    if (!os) throw Error(ErrorKind::input, "cannot write " + o.out);
    os << text;
}

int cmd_simulate(const Options& o) {
    if (!is_preset(o.preset)) {
        std::cerr << "unknown preset '" << o.preset << "'; known presets:";
        for (const auto& p : preset_names()) std::cerr << ' ' << p;
        std::cerr << '\n';
        return exit_usage;
    }
    const int n = o.n > 0 ? o.n : preset_default_length(o.preset);
    const auto x = simulate(preset_process(o.preset, o.seed), n);
    std::ostringstream ss;
    write_signal(ss, TimeSeries({x.samples().begin(), x.samples().end()}, o.dt));
    emit(o, ss.str());
    return exit_ok;
}

int cmd_analyze(const Options& o, bool dt_given) {
    if (o.input.empty()) throw Error(ErrorKind::input, "--input is required");
    PipelineConfig cfg;
    cfg.delta = o.delta;
    cfg.alpha = o.alpha;
    cfg.kernel = o.kernel;
    cfg.correction = parse_correction(o.correction);
    const auto x = load_input(o, dt_given);
    const auto r = run_pipeline(x, cfg);
    write_outputs(r, cfg, o.outdir);
    if (!r.converged) {
        std::cerr << "mixture fit did not converge; best point written to " << o.outdir << '\n';
        return exit_nonconverged;
    }
    return exit_ok;
}

int cmd_riskbench(const Options& o) {
    if (!is_preset(o.preset)) {
        std::cerr << "unknown preset '" << o.preset << "'\n";
        return exit_usage;
    }
    if (o.reps < 2) {
        std::cerr << "--reps must be at least 2\n";
        return exit_usage;
    }
    const int n = o.n > 0 ? o.n : preset_default_length(o.preset);
    const auto truth = analytic_covariance(theoretical_covariance(preset_process(o.preset, o.seed), n));
    const int tau = 2, time = n / 2;
    PipelineConfig cfg;
    cfg.demean = false;
    cfg.compute_tfr = false;

    std::ostringstream ss;
    ss << "# riskbench preset=" << o.preset << " n=" << n << " reps=" << o.reps << " seed=" << o.seed << '\n';
    double ratio_sum = 0.0;
    bool all_converged = true;
    std::vector<cdouble> eb, raw;
    for (int r = 0; r < o.reps; ++r) {
        const auto x = simulate(preset_process(o.preset, replicate_seed(o.seed, r)), n);
        const auto res = run_pipeline(x, cfg);
        all_converged = all_converged && res.converged;
        const auto raw_m = raw_moments(res.z);
        const auto rep = risk_report(res.cov_eb, assemble(raw_m), truth);
        ratio_sum += rep.frobenius_ratio;
        eb.push_back(res.moments_eb(tau, time));
        raw.push_back(raw_m(tau, time));
        ss << format_record({{"replicate", std::to_string(r)},
                             {"ratio", format_double(rep.frobenius_ratio)},
                             {"rho", format_double(res.fit.params.rho)},
                             {"converged", res.converged ? "true" : "false"}})
           << '\n';
    }
    auto var = [](const std::vector<cdouble>& v) {
        cdouble m{};
        for (auto c : v) m += c;
        m /= static_cast<double>(v.size());
        double s = 0.0;
        for (auto c : v) s += std::norm(c - m);
        return s / static_cast<double>(v.size() - 1);
    };
    ss << format_record({{"summary", "1"},
                         {"mean_ratio", format_double(ratio_sum / o.reps)},
                         {"var_eb", format_double(var(eb))},
                         {"var_raw", format_double(var(raw))},
                         {"tau", std::to_string(tau)},
                         {"time", std::to_string(time)}})
       << '\n';
    emit(o, ss.str());
    return all_converged ? exit_ok : exit_nonconverged;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = merge_config(args);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return exit_usage;
    }

    CLI::App app{"Empirical Bayes ambiguity-domain shrinkage"};
    app.require_subcommand(1);
    Options o;

    auto* sim = app.add_subcommand("simulate", "write a preset realization as signal CSV");
    sim->add_option("preset", o.preset, "preset name")->required();
    sim->add_option("--n", o.n, "number of samples");
    sim->add_option("--seed", o.seed, "random seed");
    sim->add_option("--dt", o.dt, "sampling period")->check(CLI::PositiveNumber);
    sim->add_option("--out", o.out, "output file (default stdout)");
    sim->add_option("--config", o.config, "key=value file");

    auto* an = app.add_subcommand("analyze", "run the shrinkage pipeline on a signal");
    an->add_option("--input", o.input, "signal CSV path or preset name");
    an->add_option("--dt", o.dt, "sampling period")->check(CLI::PositiveNumber);
    an->add_option("--delta", o.delta, "ambiguity decay exponent in (0,1)");
    an->add_option("--correction", o.correction, "shift or clip");
    an->add_option("--alpha", o.alpha, "bilinear alpha in [-1/2, 1/2]");
    an->add_option("--kernel", o.kernel, "delta, hann:L, gauss:L or hermite:L:K");
    an->add_option("--outdir", o.outdir, "output directory");
    an->add_option("--seed", o.seed, "seed when the input is a preset");
    an->add_option("--n", o.n, "length when the input is a preset");
    an->add_option("--config", o.config, "key=value file");

    auto* rb = app.add_subcommand("riskbench", "Monte Carlo risk of the shrunk covariance");
    rb->add_option("preset", o.preset, "preset name")->required();
    rb->add_option("--reps", o.reps, "replicates");
    rb->add_option("--seed", o.seed, "random seed");
    rb->add_option("--n", o.n, "number of samples");
    rb->add_option("--out", o.out, "output file (default stdout)");
    rb->add_option("--config", o.config, "key=value file");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*sim) return cmd_simulate(o);
        if (*an) return cmd_analyze(o, an->count("--dt") > 0);
        if (*rb) return cmd_riskbench(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::convergence ? exit_nonconverged : exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

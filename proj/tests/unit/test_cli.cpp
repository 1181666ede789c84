#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ambieb/matrix_io.hpp"

#ifndef AMBIEB_CLI_PATH
#error "AMBIEB_CLI_PATH must be defined"
#endif

using namespace ambieb;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(AMBIEB_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("ambieb_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int count_data_lines(const fs::path& p) {
    std::ifstream is(p);
    int n = 0;
    for (std::string line; std::getline(is, line);)
        if (!line.empty() && line[0] != '#') ++n;
    return n;
}

KeyValues last_record(const fs::path& p) {
    std::ifstream is(p);
    std::string last;
    for (std::string line; std::getline(is, line);)
        if (!line.empty() && line[0] != '#') last = line;
    return parse_record(last);
}

KeyValues read_summary(const fs::path& p) {
    std::ifstream is(p);
    KeyValues kv;
    for (std::string line; std::getline(is, line);) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) kv.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return kv;
}

std::string lookup(const KeyValues& kv, const std::string& key) {
    for (const auto& [k, v] : kv)
        if (k == key) return v;
    return {};
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("simulate") {
        const auto dir = scratch("simulate");
        CHECK(run("simulate aggregation512 --seed 4 --out " + (dir / "a.csv").string()) == 0);
        CHECK(count_data_lines(dir / "a.csv") == 512);
        CHECK(run("simulate whitenoise --n 64 --seed 1 --out " + (dir / "w.csv").string()) == 0);
        const auto w = read_signal_file((dir / "w.csv").string());
        CHECK(w.size() == 64);
        CHECK(run("simulate nosuch") == 2);
        CHECK(run("frobnicate") == 2);
    }

    TEST_CASE("analyze writes every output and is deterministic") {
        const auto a = scratch("analyze_a"), b = scratch("analyze_b");
        const std::string common = "analyze --input ma-cyclo --n 96 --seed 5 --kernel hann:7 --alpha 0 --outdir ";
        CHECK(run(common + a.string()) == 0);
        CHECK(run(common + b.string()) == 0);
        for (const char* f : {"emaf.mat", "psi.txt", "theta.mat", "af_eb.mat", "moments_eb.mat", "cov_eb.mat", "tfr.mat",
                              "qq_re.txt", "qq_im.txt", "summary.txt"}) {
            INFO(f);
            REQUIRE(fs::exists(a / f));
            CHECK(slurp(a / f) == slurp(b / f));
        }
        const auto emaf = read_matrix_file((a / "emaf.mat").string());
        CHECK(emaf.values.rows() == 191);
        CHECK(emaf.values.cols() == 192);
        const auto theta = read_matrix_file((a / "theta.mat").string());
        CHECK_FALSE(theta.complex);
        CHECK(theta.values.real().minCoeff() >= 0.0);
        CHECK(theta.values.real().maxCoeff() <= 1.0);
        const auto tfr = read_matrix_file((a / "tfr.mat").string());
        CHECK(tfr.values.rows() == 96);
        CHECK(tfr.values.cols() == 192);
        const auto summary = read_summary(a / "summary.txt");
        CHECK(lookup(summary, "kernel") == "hann:7");
        CHECK(std::stod(lookup(summary, "mineig_after")) >= -1e-9);
    }

    TEST_CASE("analyze zero signal") {
        const auto dir = scratch("zero");
        {
            std::ofstream os(dir / "zero.csv");
            for (int i = 0; i < 32; ++i) os << "0\n";
        }
        CHECK(run("analyze --input " + (dir / "zero.csv").string() + " --outdir " + dir.string()) == 0);
        for (const char* f : {"af_eb.mat", "moments_eb.mat", "cov_eb.mat"}) {
            INFO(f);
            CHECK(read_matrix_file((dir / f).string()).values.cwiseAbs().maxCoeff() == 0.0);
        }
    }

    TEST_CASE("analyze argument errors") {
        const auto dir = scratch("errors");
        CHECK(run("analyze --input /nonexistent/file.csv --outdir " + dir.string()) == 2);
        CHECK(run("analyze --input whitenoise --n 32 --correction none2 --outdir " + dir.string()) == 2);
        CHECK(run("analyze --input whitenoise --n 32 --alpha 0.9 --outdir " + dir.string()) == 2);
        CHECK(run("analyze --input whitenoise --n 32 --delta 1.5 --outdir " + dir.string()) == 2);
    }

    TEST_CASE("config file values yield to the command line") {
        const auto dir = scratch("config");
        {
            std::ofstream os(dir / "run.cfg");
            os << "# settings\ncorrection = shift\nkernel = hann:5\nn = 48\n";
        }
        CHECK(run("analyze --input whitenoise --config " + (dir / "run.cfg").string() + " --kernel delta --outdir " +
                  dir.string()) == 0);
        const auto kv = read_summary(dir / "summary.txt");
        CHECK(lookup(kv, "correction") == "shift");
        CHECK(lookup(kv, "kernel") == "delta");
        CHECK(lookup(kv, "n") == "48");
    }

    TEST_CASE("riskbench") {
        const auto dir = scratch("riskbench");
        CHECK(run("riskbench whitenoise --reps 0") == 2);
        CHECK(run("riskbench whitenoise --reps 1") == 2);
        CHECK(run("riskbench nosuch --reps 5") == 2);
        const auto out = dir / "rb.txt";
        const int code = run("riskbench whitenoise --reps 100 --n 64 --seed 3 --out " + out.string());
        CHECK((code == 0 || code == 3));
        CHECK(count_data_lines(out) == 101);
        const auto s = last_record(out);
        REQUIRE(lookup(s, "summary") == "1");
        CHECK(std::stod(lookup(s, "var_eb")) < std::stod(lookup(s, "var_raw")));
    }
}

#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "ambieb/matrix_io.hpp"
#include "helpers.hpp"

using namespace ambieb;
using namespace testing_helpers;

TEST_SUITE("matrix_io") {
    TEST_CASE("number formatting round trips exactly") {
        for (double v : {0.0, -0.0, 1.0, -2.5e-300, 1.0 / 3.0, 6.02214076e23, std::numeric_limits<double>::denorm_min()}) {
            const double back = parse_double(format_double(v));
            CHECK(back == v);
            CHECK(std::signbit(back) == std::signbit(v));
        }
        for (cdouble v : {cdouble(1.0, -2.0), cdouble(-1e-20, 3e+20), cdouble(0.0, -0.0), cdouble(-7.5, 1.0 / 7.0)}) {
            const cdouble back = parse_complex(format_complex(v));
            CHECK(back == v);
        }
        CHECK(parse_complex("1e-5-2E+3j") == cdouble(1e-5, -2e3));
        CHECK_THROWS_AS(parse_double("1.5x"), Error);
        CHECK_THROWS_AS(parse_complex("1+2"), Error);
    }

    TEST_CASE("complex matrix round trip re-serializes identically") {
        const auto g = random_grid(5, 7, 3);
        std::stringstream ss;
        write_matrix(ss, g, {"hello world", "k=v"});
        const auto text = ss.str();
        const auto m = read_matrix(ss);
        CHECK(m.complex);
        CHECK(m.values == g);
        REQUIRE(m.comments.size() == 2);
        CHECK(m.comments[0] == "hello world");
        std::stringstream again;
        write_matrix(again, m.values, m.comments);
        CHECK(again.str() == text);
    }

    TEST_CASE("real matrix round trip") {
        RGrid r(3, 4);
        r << 1, -2, 3.25, 0, 1e-17, 5, 6, 7, 8, 9, 10, -11;
        std::stringstream ss;
        write_matrix(ss, r);
        const auto m = read_matrix(ss);
        CHECK_FALSE(m.complex);
        CHECK(m.values.real() == r);
        CHECK(m.values.imag().cwiseAbs().maxCoeff() == 0.0);
    }

    TEST_CASE("malformed matrices are rejected") {
        std::stringstream bad_header("# something else\n1,2\n");
        CHECK_THROWS_AS(read_matrix(bad_header), Error);
        std::stringstream short_row("# ambimat v1 2 2 real\n1,2\n3\n");
        CHECK_THROWS_AS(read_matrix(short_row), Error);
        std::stringstream missing_row("# ambimat v1 2 2 real\n1,2\n");
        CHECK_THROWS_AS(read_matrix(missing_row), Error);
    }

    TEST_CASE("signal CSV") {
        const TimeSeries x(normal_vector(30, 4), 0.125);
        std::stringstream ss;
        write_signal(ss, x);
        const auto y = read_signal(ss, 9.0);
        CHECK(y.dt() == 0.125);
        REQUIRE(y.size() == 30);
        for (int i = 0; i < 30; ++i) CHECK(y.samples()[i] == x.samples()[i]);

        std::stringstream plain("# note\n1.5\n-2,ignored\n\n3\n");
        const auto z = read_signal(plain, 0.5);
        CHECK(z.dt() == 0.5);
        CHECK(z.size() == 3);
        CHECK(z.samples()[1] == -2.0);

        std::stringstream junk("1\nabc\n");
        CHECK_THROWS_AS(read_signal(junk), Error);
        std::stringstream tiny("1\n");
        CHECK_THROWS_AS(read_signal(tiny), Error);
    }

    TEST_CASE("key-value records") {
        const KeyValues kv{{"a", "1"}, {"rho", "0.25"}, {"name", "x-y"}};
        const auto line = format_record(kv);
        CHECK(line == "a=1 rho=0.25 name=x-y");
        CHECK(parse_record(line) == kv);
        CHECK(parse_record("  a=1   b=2 ").size() == 2);
        // Bare words are skipped so signal headers parse.
        const auto header = parse_record("signal v1 n=3 dt=0.5");
        REQUIRE(header.size() == 2);
        CHECK(header[1] == std::pair<std::string, std::string>{"dt", "0.5"});
    }
}

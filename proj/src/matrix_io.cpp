#include "ambieb/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ambieb {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) out.push_back(trim(item));
    return out;
}

template <class Grid, class Fmt>
void write_grid(std::ostream& os, const Grid& m, bool complex, const std::vector<std::string>& comments, Fmt fmt) {
    os << "# ambimat v1 " << m.rows() << ' ' << m.cols() << (complex ? " complex" : " real") << '\n';
    std::string line;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        line.clear();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) line += ',';
            line += fmt(m(r, c));
        }
        os << line << '\n';
    }
    for (const auto& c : comments) os << "# " << c << '\n';
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::input, "cannot write " + path);
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::input, "cannot read " + path);
    return is;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_complex(cdouble v) {
    std::string s = format_double(v.real());
    if (!std::signbit(v.imag())) s += '+';
    s += format_double(v.imag());
    s += 'j';
    return s;
}

double parse_double(const std::string& text) {
    const std::string s = trim(text);
    const char* first = s.data();
    if (!s.empty() && s[0] == '+') ++first;
    double v = 0.0;
    auto res = std::from_chars(first, s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw Error(ErrorKind::input, "malformed number: '" + s + "'");
    return v;
}

cdouble parse_complex(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty() || s.back() != 'j') return {parse_double(s), 0.0};
    // The imaginary part starts at the last sign that is not an exponent sign.
    for (size_t i = s.size() - 1; i > 0; --i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
            return {parse_double(s.substr(0, i)), parse_double(s.substr(i, s.size() - 1 - i))};
    }
    throw Error(ErrorKind::input, "malformed complex number: '" + s + "'");
}

void write_matrix(std::ostream& os, const CGrid& m, const std::vector<std::string>& comments) {
    write_grid(os, m, true, comments, [](cdouble v) { return format_complex(v); });
}

void write_matrix(std::ostream& os, const RGrid& m, const std::vector<std::string>& comments) {
    write_grid(os, m, false, comments, [](double v) { return format_double(v); });
}

void write_matrix_file(const std::string& path, const CGrid& m, const std::vector<std::string>& comments) {
    auto os = open_out(path);
    write_matrix(os, m, comments);
}

void write_matrix_file(const std::string& path, const RGrid& m, const std::vector<std::string>& comments) {
    auto os = open_out(path);
    write_matrix(os, m, comments);
}

MatrixFile read_matrix(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::input, "empty matrix file");
    std::istringstream head(line);
    std::string hash, tag, version, kind;
    long rows = -1, cols = -1;
    head >> hash >> tag >> version >> rows >> cols >> kind;
    if (hash != "#" || tag != "ambimat" || version != "v1" || rows < 0 || cols < 0 || (kind != "real" && kind != "complex"))
        throw Error(ErrorKind::input, "bad ambimat header: " + line);
    MatrixFile out;
    out.complex = kind == "complex";
    out.values = CGrid::Zero(rows, cols);
    long r = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("#", 0) == 0) {
            out.comments.push_back(trim(line.substr(1)));
            continue;
        }
        if (trim(line).empty()) continue;
        if (r >= rows) throw Error(ErrorKind::input, "too many matrix rows");
        const auto cells = split(line, ',');
        if (static_cast<long>(cells.size()) != cols) throw Error(ErrorKind::input, "wrong number of matrix columns");
        for (long c = 0; c < cols; ++c) out.values(r, c) = out.complex ? parse_complex(cells[c]) : cdouble{parse_double(cells[c]), 0.0};
        ++r;
    }
    if (r != rows) throw Error(ErrorKind::input, "too few matrix rows");
    return out;
}

MatrixFile read_matrix_file(const std::string& path) {
    auto is = open_in(path);
    return read_matrix(is);
}

void write_signal(std::ostream& os, const TimeSeries& x) {
    os << "# signal v1 n=" << x.size() << " dt=" << format_double(x.dt()) << '\n';
    for (double v : x.samples()) os << format_double(v) << '\n';
}

TimeSeries read_signal(std::istream& is, double dt_default) {
    double dt = dt_default;
    std::vector<double> samples;
    std::string line;
    while (std::getline(is, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (t.find("signal") != std::string::npos)
                for (const auto& [k, v] : parse_record(trim(t.substr(1))))
                    if (k == "dt") dt = parse_double(v);
            continue;
        }
        samples.push_back(parse_double(split(t, ',').front()));
    }
    for (double v : samples)
        if (!std::isfinite(v)) throw Error(ErrorKind::input, "non-finite sample in signal");
    return TimeSeries(std::move(samples), dt);
}

TimeSeries read_signal_file(const std::string& path, double dt_default) {
    auto is = open_in(path);
    return read_signal(is, dt_default);
}

std::string format_record(const KeyValues& kv) {
    std::string s;
    for (const auto& [k, v] : kv) {
        if (!s.empty()) s += ' ';
        s += k + '=' + v;
    }
    return s;
}

KeyValues parse_record(const std::string& line) {
    KeyValues out;
    std::istringstream ss(line);
    for (std::string tok; ss >> tok;) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
    return out;
}

}  // namespace ambieb

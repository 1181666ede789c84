#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ambieb/signal.hpp"
#include "ambieb/types.hpp"

namespace ambieb {

// Text matrix format:
//   # ambimat v1 <rows> <cols> <real|complex>
//   one row per line, comma separated, complex entries as re+imj
//   optional trailing "# ..." comment lines
struct MatrixFile {
    bool complex = false;
    CGrid values;
    std::vector<std::string> comments;  // without the leading "# "
};

std::string format_double(double v);
std::string format_complex(cdouble v);
double parse_double(const std::string& s);
cdouble parse_complex(const std::string& s);

void write_matrix(std::ostream& os, const CGrid& m, const std::vector<std::string>& comments = {});
void write_matrix(std::ostream& os, const RGrid& m, const std::vector<std::string>& comments = {});
void write_matrix_file(const std::string& path, const CGrid& m, const std::vector<std::string>& comments = {});
void write_matrix_file(const std::string& path, const RGrid& m, const std::vector<std::string>& comments = {});

MatrixFile read_matrix(std::istream& is);
MatrixFile read_matrix_file(const std::string& path);

// Signal CSV: "# signal v1 n=<N> dt=<dt>" then one sample per line.
void write_signal(std::ostream& os, const TimeSeries& x);
// dt comes from the header when present, else dt_default.
TimeSeries read_signal(std::istream& is, double dt_default = 1.0);
TimeSeries read_signal_file(const std::string& path, double dt_default = 1.0);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// "k1=v1 k2=v2 ..." on one line.
std::string format_record(const KeyValues& kv);
KeyValues parse_record(const std::string& line);

}  // namespace ambieb

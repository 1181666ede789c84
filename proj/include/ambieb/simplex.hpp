#pragma once

#include <functional>
#include <vector>

namespace ambieb {

struct SimplexOptions {
    double tolerance = 1e-6;  // stop when every vertex is within this distance of the best
    int max_iterations = 10000;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Nelder-Mead downhill simplex with the standard coefficients
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
// Non-finite objective values are treated as +infinity.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                          const std::vector<double>& steps, const SimplexOptions& opts = {});

}  // namespace ambieb

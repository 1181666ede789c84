#include "ambieb/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ambieb/types.hpp"

namespace ambieb {

namespace {

double sanitize(double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; }

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                          const std::vector<double>& steps, const SimplexOptions& opts) {
    const size_t dim = start.size();
    if (dim == 0 || steps.size() != dim) throw Error(ErrorKind::parameter, "simplex start/steps mismatch");

    std::vector<std::vector<double>> pts(dim + 1, start);
    for (size_t i = 0; i < dim; ++i) pts[i + 1][i] += steps[i];
    std::vector<double> vals(dim + 1);
    for (size_t i = 0; i <= dim; ++i) vals[i] = sanitize(f(pts[i]));

    std::vector<size_t> order(dim + 1);
    auto point_along = [&](const std::vector<double>& centroid, const std::vector<double>& worst, double coef) {
        std::vector<double> p(dim);
        for (size_t j = 0; j < dim; ++j) p[j] = centroid[j] + coef * (worst[j] - centroid[j]);
        return p;
    };

    SimplexResult res;
    for (int it = 0;; ++it) {
        std::iota(order.begin(), order.end(), 0);
        // stable so that ties resolve by vertex index, keeping runs reproducible
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        const size_t best = order.front(), worst = order.back(), second = order[dim - 1];

        double diameter = 0.0;
        for (size_t i = 0; i <= dim; ++i) diameter = std::max(diameter, distance(pts[i], pts[best]));
        res.iterations = it;
        if (diameter < opts.tolerance) {
            res.converged = true;
            break;
        }
        if (it >= opts.max_iterations) break;

        std::vector<double> centroid(dim, 0.0);
        for (size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j] / static_cast<double>(dim);
        }

        auto refl = point_along(centroid, pts[worst], -1.0);
        const double f_refl = sanitize(f(refl));
        if (f_refl < vals[best]) {
            auto expd = point_along(centroid, pts[worst], -2.0);
            const double f_exp = sanitize(f(expd));
            if (f_exp < f_refl) {
                pts[worst] = std::move(expd);
                vals[worst] = f_exp;
            } else {
                pts[worst] = std::move(refl);
                vals[worst] = f_refl;
            }
            continue;
        }
        if (f_refl < vals[second]) {
            pts[worst] = std::move(refl);
            vals[worst] = f_refl;
            continue;
        }
        const bool outside = f_refl < vals[worst];
        auto con = point_along(centroid, pts[worst], outside ? -0.5 : 0.5);
        const double f_con = sanitize(f(con));
        if (outside ? (f_con <= f_refl) : (f_con < vals[worst])) {
            pts[worst] = std::move(con);
            vals[worst] = f_con;
            continue;
        }
        for (size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (size_t j = 0; j < dim; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
            vals[i] = sanitize(f(pts[i]));
        }
    }
    const size_t best = static_cast<size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    res.x = pts[best];
    res.value = vals[best];
    return res;
}

}  // namespace ambieb

#include "ambieb/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ambieb/fft.hpp"

namespace ambieb {

LagTimeMoments::LagTimeMoments(int n, double dt) : n_(n), dt_(dt) {
    if (n < 1) throw Error(ErrorKind::invalid_length, "moment grid needs n >= 1");
    entries_ = CGrid::Zero(2 * n - 1, n);
}

LagTimeMoments::LagTimeMoments(CGrid entries, double dt)
    : n_(static_cast<int>(entries.cols())), dt_(dt), entries_(std::move(entries)) {
    if (n_ < 1 || entries_.rows() != 2 * n_ - 1)
        throw Error(ErrorKind::dimension, "moment grid must be (2N-1) x N");
}

AmbiguityGrid::AmbiguityGrid(int n, double dt, double delta) : n_(n), dt_(dt), delta_(delta), normalized_(false) {
    if (n < 1) throw Error(ErrorKind::invalid_length, "ambiguity grid needs n >= 1");
    entries_ = CGrid::Zero(2 * n - 1, 2 * n);
}

AmbiguityGrid::AmbiguityGrid(CGrid entries, double dt, bool normalized, double delta)
    : n_(static_cast<int>(entries.cols() / 2)), dt_(dt), delta_(delta), normalized_(normalized),
      entries_(std::move(entries)) {
    if (n_ < 1 || entries_.cols() != 2 * n_ || entries_.rows() != 2 * n_ - 1)
        throw Error(ErrorKind::dimension, "ambiguity grid must be (2N-1) x 2N");
}

LagTimeMoments raw_moments(const AnalyticSeries& z) {
    const int n = z.size();
    auto s = z.samples();
    LagTimeMoments m(n, z.dt());
    for (int tau = -(n - 1); tau <= n - 1; ++tau)
        for (int t = LagTimeMoments::support_begin(tau); t < m.support_end(tau); ++t)
            m(tau, t) = s[t] * std::conj(s[t - tau]);
    return m;
}

AmbiguityGrid emaf(const LagTimeMoments& m, double delta) {
    const int n = m.n();
    const int len = 2 * n;
    AmbiguityGrid a(n, m.dt(), delta);
    Dft fwd(len, Dft::Direction::forward);
    std::vector<cdouble> buf(len);
    for (int r = 0; r < 2 * n - 1; ++r) {
        std::fill(buf.begin(), buf.end(), cdouble{});
        for (int t = 0; t < n; ++t) buf[t] = m.grid()(r, t);
        fwd.execute(buf.data(), buf.data());
        // column c holds k = c - N; bin index k mod 2N
        for (int c = 0; c < len; ++c) a.grid()(r, c) = m.dt() * buf[(c + n) % len];
    }
    return a;
}

NormalizationField normalization(int n, double dt, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::parameter, "delta must lie in (0, 1)");
    if (n < 1) throw Error(ErrorKind::invalid_length, "normalization needs n >= 1");
    if (!(dt > 0.0)) throw Error(ErrorKind::parameter, "dt must be positive");
    NormalizationField f{n, dt, delta, RGrid(2 * n - 1, 2 * n), RGrid(2 * n - 1, 2 * n)};
    const double nyquist = 1.0 / (2.0 * dt);
    const double cell = 1.0 / (2.0 * n * dt);
    for (int tau = -(n - 1); tau <= n - 1; ++tau) {
        const double span = n - std::abs(tau);
        const double growth = std::pow(span, 4.0 * delta - 1.0);
        for (int k = -n; k < n; ++k) {
            const double nu = std::abs(k * cell);
            // The band factor vanishes at Nyquist; floor it at one grid cell.
            const double band = std::max(nyquist - nu, cell);
            f.kappa(tau + n - 1, k + n) = growth * band / dt;
            f.ell(tau + n - 1, k + n) = 0.25 * span / (band * dt);
        }
    }
    return f;
}

namespace {

void check_matching(const AmbiguityGrid& a, const NormalizationField& f) {
    if (a.n() != f.n || a.dt() != f.dt) throw Error(ErrorKind::dimension, "normalization does not match grid");
}

}  // namespace

AmbiguityGrid normalize(const AmbiguityGrid& a, const NormalizationField& f) {
    if (a.normalized()) throw Error(ErrorKind::state, "grid is already normalized");
    check_matching(a, f);
    AmbiguityGrid out(a.grid().array() / f.kappa.array().sqrt().cast<cdouble>(), a.dt(), true, f.delta);
    return out;
}

AmbiguityGrid denormalize(const AmbiguityGrid& a, const NormalizationField& f) {
    if (!a.normalized()) throw Error(ErrorKind::state, "grid is not normalized");
    check_matching(a, f);
    return AmbiguityGrid(a.grid().array() * f.kappa.array().sqrt().cast<cdouble>(), a.dt(), false, f.delta);
}

AmbiguityGrid smooth_kernel(const AmbiguityGrid& a, const CGrid& omega) {
    if (omega.rows() != a.grid().rows() || omega.cols() != a.grid().cols())
        throw Error(ErrorKind::dimension, "kernel does not match grid");
    if ((omega.array().abs() > 1.0 + 1e-12).any())
        throw Error(ErrorKind::parameter, "kernel magnitude exceeds 1: not a shrinkage kernel");
    return AmbiguityGrid(a.grid().cwiseProduct(omega), a.dt(), a.normalized(), a.delta());
}

CGrid gaussian_dual_kernel(int n, double dt, double bandwidth) {
    CGrid omega(2 * n - 1, 2 * n);
    for (int k = -n; k < n; ++k) {
        const double nu = k / (2.0 * n * dt);
        omega.col(k + n).setConstant(std::exp(-nu * nu / (2.0 * bandwidth * bandwidth)));
    }
    return omega;
}

}  // namespace ambieb

#include "ambieb/covariance.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ambieb/fft.hpp"

namespace ambieb {

std::string to_string(Correction c) {
    switch (c) {
        case Correction::none: return "none";
        case Correction::shift: return "shift";
        case Correction::clip: return "clip";
    }
    return "none";
}

Correction parse_correction(const std::string& s) {
    if (s == "none") return Correction::none;
    if (s == "shift") return Correction::shift;
    if (s == "clip") return Correction::clip;
    throw Error(ErrorKind::parameter, "unknown correction: " + s);
}

LagTimeMoments invert_af(const AmbiguityGrid& a) {
    if (a.normalized()) throw Error(ErrorKind::state, "invert_af needs a grid in natural units; denormalize first");
    const int n = a.n();
    const int len = 2 * n;
    LagTimeMoments m(n, a.dt());
    Dft bwd(len, Dft::Direction::backward);
    std::vector<cdouble> buf(len);
    const double scale = 1.0 / (len * a.dt());
    for (int r = 0; r < 2 * n - 1; ++r) {
        for (int c = 0; c < len; ++c) buf[(c + n) % len] = a.grid()(r, c);
        bwd.execute(buf.data(), buf.data());
        for (int t = 0; t < n; ++t) m.grid()(r, t) = scale * buf[t];
    }
    return m;
}

HermitianCovariance decompose(const CMatrix& entries, Correction tag) {
    if (entries.rows() != entries.cols()) throw Error(ErrorKind::dimension, "covariance must be square");
    HermitianCovariance out;
    out.entries = 0.5 * (entries + entries.adjoint());
    out.correction = tag;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(out.entries);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::convergence, "Hermitian eigensolver failed");
    const Eigen::Index n = entries.rows();
    out.eigenvalues.resize(static_cast<size_t>(n));
    out.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues[static_cast<size_t>(i)] = es.eigenvalues()(n - 1 - i);
        out.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return out;
}

HermitianCovariance assemble(const LagTimeMoments& m) {
    const int n = m.n();
    CMatrix b = CMatrix::Zero(n, n);
    for (int tau = -(n - 1); tau <= n - 1; ++tau)
        for (int t = LagTimeMoments::support_begin(tau); t < m.support_end(tau); ++t) b(t, t - tau) = m(tau, t);
    return decompose(b);
}

HermitianCovariance correct(const HermitianCovariance& c, Correction method) {
    if (method == Correction::none) return c;
    if (c.eigenvalues.size() != static_cast<size_t>(c.entries.rows()))
        throw Error(ErrorKind::state, "eigendecomposition missing");
    std::vector<double> v = c.eigenvalues;
    const double lowest = c.min_eigenvalue();
    if (method == Correction::shift) {
        if (lowest < 0.0)
            for (auto& x : v) x -= lowest;
    } else {
        for (auto& x : v) x = std::max(x, 0.0);
    }
    const Eigen::Index n = c.entries.rows();
    Eigen::VectorXd diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag(i) = v[static_cast<size_t>(i)];
    const CMatrix rebuilt = c.eigenvectors * diag.cast<cdouble>().asDiagonal() * c.eigenvectors.adjoint();
    HermitianCovariance out;
    out.entries = 0.5 * (rebuilt + rebuilt.adjoint());
    out.correction = method;
    out.eigenvalues = std::move(v);
    out.eigenvectors = c.eigenvectors;
    return out;
}

LagTimeMoments moments_from_matrix(const CMatrix& c, double dt) {
    if (c.rows() != c.cols()) throw Error(ErrorKind::dimension, "matrix must be square");
    const int n = static_cast<int>(c.rows());
    LagTimeMoments m(n, dt);
    for (int tau = -(n - 1); tau <= n - 1; ++tau)
        for (int t = LagTimeMoments::support_begin(tau); t < m.support_end(tau); ++t) m(tau, t) = c(t, t - tau);
    return m;
}

}  // namespace ambieb

#pragma once

#include <string>
#include <vector>

#include "ambieb/ambiguity.hpp"
#include "ambieb/types.hpp"

namespace ambieb {

enum class Correction { none, shift, clip };

std::string to_string(Correction c);
Correction parse_correction(const std::string& s);

// N x N Hermitian covariance with its eigendecomposition (eigenvalues descending,
// eigenvectors in matching columns).
struct HermitianCovariance {
    CMatrix entries;
    Correction correction = Correction::none;
    std::vector<double> eigenvalues;
    CMatrix eigenvectors;

    double min_eigenvalue() const { return eigenvalues.empty() ? 0.0 : eigenvalues.back(); }
    double trace() const { return entries.trace().real(); }
};

// Inverse of emaf: M(tau, n) = 1/(2 N dt) sum_k A(tau, k) exp(2 pi i nu_k t_n).
LagTimeMoments invert_af(const AmbiguityGrid& a);

// Entry (n, n - tau) = M(tau, n) over the valid support, then (B + B^H) / 2.
HermitianCovariance assemble(const LagTimeMoments& m);

// Eigendecomposition of a Hermitian matrix (symmetrized first).
HermitianCovariance decompose(const CMatrix& entries, Correction tag = Correction::none);

// shift: subtract the minimum eigenvalue when it is negative.
// clip:  zero out negative eigenvalues.
HermitianCovariance correct(const HermitianCovariance& c, Correction method);

// M(tau, n) = C(n, n - tau) on the valid support.
LagTimeMoments moments_from_matrix(const CMatrix& c, double dt);

}  // namespace ambieb

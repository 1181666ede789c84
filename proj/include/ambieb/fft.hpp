#pragma once

#include <memory>

#include "ambieb/types.hpp"

namespace ambieb {

// Unnormalized complex DFT of a fixed length backed by FFTW.
//   forward:  X[k] = sum_n x[n] exp(-2 pi i k n / L)
//   backward: x[n] = sum_k X[k] exp(+2 pi i k n / L)
// An instance owns aligned buffers and is not safe to share between threads;
// construct one per thread.
class Dft {
public:
    enum class Direction { forward, backward };

    Dft(int length, Direction dir);
    ~Dft();
    Dft(const Dft&) = delete;
    Dft& operator=(const Dft&) = delete;
    Dft(Dft&&) noexcept;
    Dft& operator=(Dft&&) noexcept;

    int length() const noexcept { return length_; }

    // in and out may alias.
    void execute(const cdouble* in, cdouble* out);

private:
    struct Impl;
    int length_ = 0;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ambieb

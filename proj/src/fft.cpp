#include "ambieb/fft.hpp"

#include <algorithm>
#include <mutex>

#include <fftw3.h>

namespace ambieb {

namespace {
// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct Dft::Impl {
    fftw_complex* buf = nullptr;
    fftw_plan plan = nullptr;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (plan) fftw_destroy_plan(plan);
        if (buf) fftw_free(buf);
    }
};

Dft::Dft(int length, Direction dir) : length_(length), impl_(std::make_unique<Impl>()) {
    if (length < 1) throw Error(ErrorKind::invalid_length, "DFT length must be positive");
    std::lock_guard<std::mutex> lock(planner_mutex());
    impl_->buf = fftw_alloc_complex(static_cast<size_t>(length));
    impl_->plan = fftw_plan_dft_1d(length, impl_->buf, impl_->buf,
                                   dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE);
}

Dft::~Dft() = default;

Dft::Dft(Dft&&) noexcept = default;
Dft& Dft::operator=(Dft&&) noexcept = default;

void Dft::execute(const cdouble* in, cdouble* out) {
    auto* b = reinterpret_cast<cdouble*>(impl_->buf);
    std::copy(in, in + length_, b);
    fftw_execute(impl_->plan);
    std::copy(b, b + length_, out);
}

}  // namespace ambieb

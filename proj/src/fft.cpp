#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace sparsekit::detail {

namespace {
std::mutex planner_mu;
}

void fft_inplace(std::vector<std::complex<double>>& a, const std::vector<int>& dims, bool inverse) {
    auto* data = reinterpret_cast<fftw_complex*>(a.data());
    fftw_plan plan;
    {
        std::lock_guard lk(planner_mu);
        plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), data, data,
                             inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fftw planning failed");
    fftw_execute(plan);
    std::lock_guard lk(planner_mu);
    fftw_destroy_plan(plan);
}

}  // namespace sparsekit::detail

#pragma once

#include <complex>
#include <vector>

namespace sparsekit::detail {

// Unnormalized n-dimensional complex DFT, row-major, sign -1 forward.
void fft_inplace(std::vector<std::complex<double>>& a, const std::vector<int>& dims, bool inverse);

// Signed frequency of bin b on an axis of length len.
inline long signed_freq(long b, long len) { return b <= len / 2 ? b : b - len; }

}  // namespace sparsekit::detail

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "fft.hpp"

namespace fracpint {

// Orthonormal DST-I:
//   y[i] = sqrt(2/(n+1)) * sum_j sin(pi*(i+1)*(j+1)/(n+1)) * x[j],  0-based.
// The transform matrix is symmetric and involutory, so it is its own inverse.
// Computed through a length-2(n+1) odd extension and one complex FFT, which
// also accepts complex input (each DST of a complex vector transforms the real
// and imaginary parts simultaneously).
template <class Scalar>
void dst1(std::span<const Scalar> x, std::span<Scalar> y) {
  const std::size_t n = x.size();
  if (y.size() != n) throw std::invalid_argument("dst1: size mismatch");
  if (n == 0) return;
  const std::size_t L = 2 * (n + 1);
  std::vector<std::complex<double>> v(L);
  for (std::size_t j = 0; j < n; ++j) {
    v[j + 1] = std::complex<double>(x[j]);
    v[L - 1 - j] = -std::complex<double>(x[j]);
  }
  fft_inplace(v.data(), L, -1);
  // With the negative-exponent kernel, V[k] = -2i * sum_j sin(pi*k*(j+1)/(n+1)) x[j].
  const double scale = std::sqrt(2.0 / static_cast<double>(n + 1)) * 0.5;
  for (std::size_t k = 0; k < n; ++k) {
    const std::complex<double> s =
        std::complex<double>(0.0, 1.0) * v[k + 1];  // i*V = 2 * sine sum
    if constexpr (std::is_same_v<Scalar, double>)
      y[k] = scale * s.real();
    else
      y[k] = scale * s;
  }
}

template <class Scalar>
std::vector<Scalar> dst1_copy(std::span<const Scalar> x) {
  std::vector<Scalar> y(x.size());
  dst1<Scalar>(x, y);
  return y;
}

}  // namespace fracpint

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <unordered_map>
#include <vector>

namespace fracpint {

namespace detail {

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Precomputed bit-reversal permutation and twiddle table for one power-of-two
// size and kernel sign. Twiddles come straight from polar() rather than a
// running product, so every stage reads exact table values.
struct Pow2Plan {
  std::size_t n;
  std::vector<std::uint32_t> rev;
  std::vector<std::complex<double>> tw;  // tw[j] = exp(sign*2*pi*i*j/n), j < n/2

  Pow2Plan(std::size_t size, int sign) : n(size), rev(size), tw(size / 2) {
    for (std::size_t i = 1; i < n; ++i)
      rev[i] = (rev[i >> 1] >> 1) | ((i & 1) ? static_cast<std::uint32_t>(n >> 1) : 0u);
    const double unit = 2.0 * std::numbers::pi * (sign >= 0 ? 1.0 : -1.0) / static_cast<double>(n);
    for (std::size_t j = 0; j < n / 2; ++j) tw[j] = std::polar(1.0, unit * static_cast<double>(j));
  }
};

inline const Pow2Plan& pow2_plan(std::size_t n, int sign) {
  thread_local std::unordered_map<std::uint64_t, std::unique_ptr<Pow2Plan>> cache;
  const std::uint64_t key = (static_cast<std::uint64_t>(n) << 1) | (sign >= 0 ? 1u : 0u);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<Pow2Plan>(n, sign)).first;
  return *it->second;
}

inline void fft_pow2(std::complex<double>* x, std::size_t n, int sign) {
  if (n <= 1) return;
  const Pow2Plan& plan = pow2_plan(n, sign);
  for (std::size_t i = 0; i < n; ++i)
    if (i < plan.rev[i]) std::swap(x[i], x[plan.rev[i]]);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::complex<double> w = plan.tw[j * step];
        const std::complex<double> u = x[base + j];
        const std::complex<double> v = x[base + j + half] * w;
        x[base + j] = u + v;
        x[base + j + half] = u - v;
      }
    }
  }
}

// Bluestein chirp-z: rewrites jk = (j^2 + k^2 - (k-j)^2)/2 so an arbitrary-size
// DFT becomes one circular convolution of power-of-two length.
inline void fft_bluestein(std::complex<double>* x, std::size_t n, int sign) {
  const std::size_t L = next_pow2(2 * n - 1);
  const double dir = sign >= 0 ? 1.0 : -1.0;
  std::vector<std::complex<double>> chirp(n);
  for (std::size_t m = 0; m < n; ++m) {
    const std::uint64_t sq = (static_cast<std::uint64_t>(m) * m) % (2 * n);
    chirp[m] = std::polar(1.0, dir * std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n));
  }
  std::vector<std::complex<double>> a(L), b(L);
  for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * chirp[j];
  b[0] = std::conj(chirp[0]);
  for (std::size_t m = 1; m < n; ++m) b[m] = b[L - m] = std::conj(chirp[m]);
  fft_pow2(a.data(), L, -1);
  fft_pow2(b.data(), L, -1);
  for (std::size_t j = 0; j < L; ++j) a[j] *= b[j];
  fft_pow2(a.data(), L, 1);
  const double inv_L = 1.0 / static_cast<double>(L);
  for (std::size_t k = 0; k < n; ++k) x[k] = chirp[k] * a[k] * inv_L;
}

}  // namespace detail

// Unnormalized in-place DFT of arbitrary length:
//   x[k] <- sum_j x[j] * exp(sign * 2*pi*i * j*k / n).
inline void fft_inplace(std::complex<double>* x, std::size_t n, int sign) {
  if (n <= 1) return;
  if (detail::is_pow2(n))
    detail::fft_pow2(x, n, sign);
  else
    detail::fft_bluestein(x, n, sign);
}

enum class Direction { forward, inverse };

// Unitary DFT. The forward kernel is theta^{jk} with theta = exp(+2*pi*i/m);
// the inverse conjugates it. Both directions scale by 1/sqrt(m), so the pair
// composes to the identity.
inline void dft_unitary(std::span<std::complex<double>> x, Direction dir) {
  const std::size_t m = x.size();
  if (m == 0) return;
  fft_inplace(x.data(), m, dir == Direction::forward ? +1 : -1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (auto& v : x) v *= scale;
}

inline std::vector<std::complex<double>> dft_unitary_copy(std::span<const std::complex<double>> x,
                                                          Direction dir) {
  std::vector<std::complex<double>> y(x.begin(), x.end());
  dft_unitary(y, dir);
  return y;
}

}  // namespace fracpint

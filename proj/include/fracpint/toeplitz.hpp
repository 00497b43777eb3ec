#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "fft.hpp"

namespace fracpint {

// Symmetric Toeplitz matrix held by its first column, with matvecs done by
// circulant embedding: the column is wrapped into a circulant of power-of-two
// length L >= 2n, whose eigenvalues (one FFT, cached at construction) turn
// every product into two FFTs of length L. Apply calls allocate only local
// scratch, so concurrent matvecs on distinct vectors are safe.
class SymToeplitz {
 public:
  SymToeplitz() = default;

  explicit SymToeplitz(std::vector<double> first_column) : col_(std::move(first_column)) {
    const std::size_t n = col_.size();
    if (n == 0) throw std::invalid_argument("SymToeplitz: empty first column");
    len_ = detail::next_pow2(2 * n);
    std::vector<std::complex<double>> c(len_);
    c[0] = col_[0];
    for (std::size_t j = 1; j < n; ++j) {
      c[j] = col_[j];
      c[len_ - j] = col_[j];
    }
    eigs_.assign(c.begin(), c.end());
    fft_inplace(eigs_.data(), len_, -1);
  }

  int n() const { return static_cast<int>(col_.size()); }
  const std::vector<double>& first_column() const { return col_; }

  // out = T*v; Scalar is double or std::complex<double>.
  template <class Scalar>
  void matvec(std::span<const Scalar> v, std::span<Scalar> out) const {
    const std::size_t n = col_.size();
    if (v.size() != n || out.size() != n) throw std::invalid_argument("SymToeplitz::matvec: size mismatch");
    std::vector<std::complex<double>> w(len_);
    for (std::size_t j = 0; j < n; ++j) w[j] = std::complex<double>(v[j]);
    fft_inplace(w.data(), len_, -1);
    for (std::size_t j = 0; j < len_; ++j) w[j] *= eigs_[j];
    fft_inplace(w.data(), len_, +1);
    const double inv_L = 1.0 / static_cast<double>(len_);
    for (std::size_t j = 0; j < n; ++j) {
      if constexpr (std::is_same_v<Scalar, double>)
        out[j] = w[j].real() * inv_L;
      else
        out[j] = w[j] * inv_L;
    }
  }

 private:
  std::vector<double> col_;
  std::size_t len_ = 0;
  std::vector<std::complex<double>> eigs_;
};

template <class Scalar>
std::vector<Scalar> toeplitz_matvec(const SymToeplitz& t, std::span<const Scalar> v) {
  std::vector<Scalar> out(v.size());
  t.matvec<Scalar>(v, out);
  return out;
}

}  // namespace fracpint

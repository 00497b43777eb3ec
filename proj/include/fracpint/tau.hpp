#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "dst.hpp"
#include "toeplitz.hpp"

namespace fracpint {

// Diagonal representation of a tau-algebra matrix: tau(A) = Q * diag(sigma) * Q
// with Q the orthonormal (involutory) DST-I matrix. For a 2D Kronecker sum the
// basis is Q_x (x) Q_y and sigma lives on the lattice p = ix*ny + iy (x slow,
// y fast).
struct TauOperator {
  int n = 0;
  std::vector<double> sigma;
  int nx = 0;
  int ny = 0;
  bool two_dim() const { return nx > 0; }
};

// Spectrum of the tau-algebra approximation of a symmetric Toeplitz matrix
// T(a): the classical construction tau(T) = T - H, where H is the Hankel
// matrix built from the twice-shifted coefficients. The resulting tau matrix
// has first column c with c_l = a_l - a_{l+2} (a_{n+1} = a_{n+2} = 0) and
// eigenvalues
//   sigma_i = [DST1(c)]_i / [DST1(e1)]_i,
// the denominator sqrt(2/(n+1))*sin(pi*i/(n+1)) never vanishing for i = 1..n.
// For a definite Toeplitz matrix this approximation stays definite (the
// sigma_i track the samples of the generating symbol), which keeps the
// shifted inner solves of the preconditioner away from singularity; taking
// the DST ratio of the uncorrected first column instead produces spurious
// opposite-sign eigenvalues and visibly degrades preconditioning.
inline TauOperator tau_spectrum(const SymToeplitz& t) {
  const int n = t.n();
  TauOperator tau;
  tau.n = n;
  tau.sigma.resize(n);
  const std::vector<double>& a = t.first_column();
  std::vector<double> corrected(a.begin(), a.end());
  for (int l = 0; l + 2 < n; ++l) corrected[static_cast<std::size_t>(l)] -= a[static_cast<std::size_t>(l) + 2];
  const std::vector<double> num = dst1_copy<double>(corrected);
  const double root = std::sqrt(2.0 / static_cast<double>(n + 1));
  for (int i = 0; i < n; ++i) {
    const double denom = root * std::sin(std::numbers::pi * (i + 1) / static_cast<double>(n + 1));
    tau.sigma[i] = num[i] / denom;
  }
  return tau;
}

// Spectrum of scale_x * (tau_x (x) I) + scale_y * (I (x) tau_y) on the 2D
// lattice: sigma[ix*ny + iy] = scale_x*sigma_x[ix] + scale_y*sigma_y[iy].
inline TauOperator tau_spectrum_2d(const TauOperator& tau_x, const TauOperator& tau_y,
                                   double scale_x, double scale_y) {
  if (tau_x.two_dim() || tau_y.two_dim())
    throw std::invalid_argument("tau_spectrum_2d: factors must be one-dimensional");
  TauOperator tau;
  tau.nx = tau_x.n;
  tau.ny = tau_y.n;
  tau.n = tau_x.n * tau_y.n;
  tau.sigma.resize(static_cast<std::size_t>(tau.n));
  for (int ix = 0; ix < tau.nx; ++ix)
    for (int iy = 0; iy < tau.ny; ++iy)
      tau.sigma[static_cast<std::size_t>(ix) * tau.ny + iy] =
          scale_x * tau_x.sigma[ix] + scale_y * tau_y.sigma[iy];
  return tau;
}

namespace detail {

// In-place DST-I over the (possibly 2D) tau lattice. dst1 reads its input
// fully before writing, so aliased in/out spans are fine.
inline void dst_lattice_inplace(const TauOperator& tau, std::span<std::complex<double>> z) {
  using C = std::complex<double>;
  if (!tau.two_dim()) {
    dst1<C>(z, z);
    return;
  }
  const int nx = tau.nx, ny = tau.ny;
  for (int ix = 0; ix < nx; ++ix) {
    std::span<C> row = z.subspan(static_cast<std::size_t>(ix) * ny, ny);
    dst1<C>(row, row);
  }
  std::vector<C> col(nx);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) col[ix] = z[static_cast<std::size_t>(ix) * ny + iy];
    dst1<C>(col, col);
    for (int ix = 0; ix < nx; ++ix) z[static_cast<std::size_t>(ix) * ny + iy] = col[ix];
  }
}

template <bool Solve>
void tau_shifted(const TauOperator& tau, std::complex<double> shift, double dt,
                 std::span<const std::complex<double>> rhs, std::span<std::complex<double>> out) {
  const std::size_t n = static_cast<std::size_t>(tau.n);
  if (rhs.size() != n || out.size() != n) throw std::invalid_argument("tau_shifted: size mismatch");
  for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i];
  dst_lattice_inplace(tau, out);
  if constexpr (Solve) {
    double max_sigma = 0.0;
    for (double s : tau.sigma) max_sigma = std::max(max_sigma, std::abs(s));
    const double floor = 1e-14 * (std::abs(shift) + std::abs(dt) * max_sigma);
    for (std::size_t i = 0; i < n; ++i) {
      const std::complex<double> denom = shift - dt * tau.sigma[i];
      if (std::abs(denom) <= floor)
        throw std::runtime_error("tau_solve_shifted: shift is numerically singular");
      out[i] /= denom;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] *= shift - dt * tau.sigma[i];
  }
  dst_lattice_inplace(tau, out);
}

}  // namespace detail

// out = (shift*I - dt*tau)^{-1} * rhs. Throws if any shifted eigenvalue is
// numerically singular (relative floor 1e-14).
inline void tau_solve_shifted(const TauOperator& tau, std::complex<double> shift, double dt,
                              std::span<const std::complex<double>> rhs,
                              std::span<std::complex<double>> out) {
  detail::tau_shifted<true>(tau, shift, dt, rhs, out);
}

// out = (shift*I - dt*tau) * rhs; the forward action, used to validate solves.
inline void tau_apply_shifted(const TauOperator& tau, std::complex<double> shift, double dt,
                              std::span<const std::complex<double>> rhs,
                              std::span<std::complex<double>> out) {
  detail::tau_shifted<false>(tau, shift, dt, rhs, out);
}

inline std::vector<std::complex<double>> tau_solve_shifted_copy(
    const TauOperator& tau, std::complex<double> shift, double dt,
    std::span<const std::complex<double>> rhs) {
  std::vector<std::complex<double>> out(rhs.size());
  tau_solve_shifted(tau, shift, dt, rhs, out);
  return out;
}

}  // namespace fracpint

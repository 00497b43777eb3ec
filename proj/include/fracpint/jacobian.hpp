#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "tau.hpp"
#include "toeplitz.hpp"
#include "weights.hpp"

namespace fracpint {

// Spatial Jacobian of the 1D Riesz diffusion term on a uniform interior grid:
//   A = -(kappa / h^gamma) * Toeplitz(w)                (symmetric, negative definite)
// where w are the fractional centred-difference weights. Matvecs run in
// O(n log n) through the circulant embedding of the Toeplitz factor.
class RieszJacobian1D {
 public:
  RieszJacobian1D(double gamma, double kappa, double h, int n_space)
      : gamma_(gamma), kappa_(kappa), h_(h), n_(n_space) {
    if (!(kappa > 0.0)) throw std::invalid_argument("RieszJacobian1D: kappa must be positive");
    if (!(h > 0.0)) throw std::invalid_argument("RieszJacobian1D: h must be positive");
    if (n_space < 1) throw std::invalid_argument("RieszJacobian1D: n_space must be at least 1");
    const FracWeights fw = centred_weights(gamma, n_space);
    std::vector<double> col(static_cast<std::size_t>(n_space));
    const double scale = -kappa / std::pow(h, gamma);
    for (int l = 0; l < n_space; ++l)
      col[static_cast<std::size_t>(l)] = scale * fw.weights[static_cast<std::size_t>(l)];
    toep_ = SymToeplitz(std::move(col));
  }

  int dim() const { return n_; }
  double gamma() const { return gamma_; }
  double kappa() const { return kappa_; }
  double h() const { return h_; }
  const std::vector<double>& first_column() const { return toep_.first_column(); }

  template <class Scalar>
  void apply(std::span<const Scalar> v, std::span<Scalar> out) const {
    toep_.matvec<Scalar>(v, out);
  }

  TauOperator tau() const { return tau_spectrum(toep_); }

 private:
  double gamma_, kappa_, h_;
  int n_;
  SymToeplitz toep_;
};

// 2D Riesz Jacobian on an n-by-n interior lattice (index p = ix*n + iy, x slow):
//   A = -(kappa_x/h^gamma_x) (T_x (x) I) - (kappa_y/h^gamma_y) (I (x) T_y)
// with T_x, T_y the plain weight Toeplitz factors per direction.
class RieszJacobian2D {
 public:
  RieszJacobian2D(double gamma_x, double gamma_y, double kappa_x, double kappa_y, double h,
                  int n_per_dim)
      : gx_(gamma_x), gy_(gamma_y), kx_(kappa_x), ky_(kappa_y), h_(h), n_(n_per_dim) {
    if (!(kappa_x > 0.0) || !(kappa_y > 0.0))
      throw std::invalid_argument("RieszJacobian2D: diffusion coefficients must be positive");
    if (!(h > 0.0)) throw std::invalid_argument("RieszJacobian2D: h must be positive");
    if (n_per_dim < 1) throw std::invalid_argument("RieszJacobian2D: n_per_dim must be at least 1");
    tx_ = SymToeplitz(centred_weights(gamma_x, n_per_dim).weights);
    ty_ = SymToeplitz(centred_weights(gamma_y, n_per_dim).weights);
    sx_ = kappa_x / std::pow(h, gamma_x);
    sy_ = kappa_y / std::pow(h, gamma_y);
  }

  int dim() const { return n_ * n_; }
  int n_per_dim() const { return n_; }
  double h() const { return h_; }
  const std::vector<double>& first_col_x() const { return tx_.first_column(); }
  const std::vector<double>& first_col_y() const { return ty_.first_column(); }

  template <class Scalar>
  void apply(std::span<const Scalar> v, std::span<Scalar> out) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    if (v.size() != n * n || out.size() != n * n)
      throw std::invalid_argument("RieszJacobian2D::apply: size mismatch");
    std::vector<Scalar> buf(n), res(n);
    // y-direction: contiguous rows at fixed ix.
    for (std::size_t ix = 0; ix < n; ++ix) {
      ty_.matvec<Scalar>(v.subspan(ix * n, n), res);
      for (std::size_t iy = 0; iy < n; ++iy) out[ix * n + iy] = -sy_ * res[iy];
    }
    // x-direction: strided columns at fixed iy.
    for (std::size_t iy = 0; iy < n; ++iy) {
      for (std::size_t ix = 0; ix < n; ++ix) buf[ix] = v[ix * n + iy];
      tx_.matvec<Scalar>(buf, res);
      for (std::size_t ix = 0; ix < n; ++ix) out[ix * n + iy] -= sx_ * res[ix];
    }
  }

  TauOperator tau() const {
    return tau_spectrum_2d(tau_spectrum(tx_), tau_spectrum(ty_), -sx_, -sy_);
  }

 private:
  double gx_, gy_, kx_, ky_, h_;
  int n_;
  double sx_ = 0.0, sy_ = 0.0;
  SymToeplitz tx_, ty_;
};

// Degenerate spatial operator A = 0; isolates the time stencil in tests and
// diagnostics.
struct ZeroJacobian {
  int n = 0;

  explicit ZeroJacobian(int n_space) : n(n_space) {
    if (n_space < 1) throw std::invalid_argument("ZeroJacobian: n must be at least 1");
  }

  int dim() const { return n; }

  template <class Scalar>
  void apply(std::span<const Scalar> v, std::span<Scalar> out) const {
    if (v.size() != static_cast<std::size_t>(n) || out.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("ZeroJacobian::apply: size mismatch");
    for (auto& x : out) x = Scalar{};
  }

  TauOperator tau() const {
    TauOperator t;
    t.n = n;
    t.sigma.assign(static_cast<std::size_t>(n), 0.0);
    return t;
  }
};

}  // namespace fracpint

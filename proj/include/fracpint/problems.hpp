#pragma once

// Manufactured benchmark problems with closed-form solutions, plus the grids
// and samplers that turn them into all-at-once right-hand sides.
//
// Both benchmarks use polynomial spatial profiles that vanish at the domain
// boundary and are symmetric about the midpoint, so the Riesz derivative of
// each monomial pair x^p and (L-x)^p has the closed form
//   Gamma(p+1)/Gamma(p+1-gamma) * (x^{p-gamma} + (L-x)^{p-gamma})
// up to the common Riesz prefactor -1/(2 cos(gamma pi/2)).

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "fracpint/parallel.hpp"

namespace fracpint {

struct Problem1D {
  double gamma = 1.5;
  double kappa = 1.0;
  double a = 0.0, b = 1.0;
  double t_final = 1.0;
  std::function<double(double)> initial;               // u(x, 0)
  std::function<double(double, double)> source;        // f(x, t)
  std::function<double(double, double)> exact;         // u(x, t)
};

struct Problem2D {
  double gamma_x = 1.5, gamma_y = 1.5;
  double kappa_x = 1.0, kappa_y = 1.0;
  double ax = 0.0, bx = 1.0, ay = 0.0, by = 1.0;
  double t_final = 1.0;
  std::function<double(double, double)> initial;           // u(x, y, 0)
  std::function<double(double, double, double)> source;    // f(x, y, t)
  std::function<double(double, double, double)> exact;     // u(x, y, t)
};

namespace detail {

// Sum of c_p * Gamma(p+1)/Gamma(p+1-gamma) * (x^{p-gamma} + (L-x)^{p-gamma})
// over the monomials of a boundary-vanishing symmetric profile on (0, L).
inline double reflected_monomial_sum(std::span<const double> powers,
                                     std::span<const double> coeffs, double gamma, double length,
                                     double x) {
  double s = 0.0;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    const double p = powers[i];
    const double factor = std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - gamma);
    s += coeffs[i] * factor *
         (std::pow(x, p - gamma) + std::pow(length - x, p - gamma));
  }
  return s;
}

inline void check_gamma(double gamma) {
  if (!(gamma > 1.0) || gamma > 2.0)
    throw std::invalid_argument("benchmark problems require gamma in (1, 2]");
}

}  // namespace detail

// u(x, t) = 15 (1 + gamma/4) e^t x^3 (1-x)^3 on (0, 1) with kappa = 0.01.
inline Problem1D example1(double gamma) {
  detail::check_gamma(gamma);
  Problem1D p;
  p.gamma = gamma;
  p.kappa = 0.01;
  p.a = 0.0;
  p.b = 1.0;
  p.t_final = 1.0;
  const double amp = 15.0 * (1.0 + 0.25 * gamma);
  p.exact = [amp](double x, double t) {
    const double w = x * (1.0 - x);
    return amp * std::exp(t) * w * w * w;
  };
  p.initial = [exact = p.exact](double x) { return exact(x, 0.0); };
  // x^3 (1-x)^3 = x^3 - 3 x^4 + 3 x^5 - x^6
  const std::vector<double> powers{3.0, 4.0, 5.0, 6.0};
  const std::vector<double> coeffs{1.0, -3.0, 3.0, -1.0};
  const double riesz_scale =
      p.kappa / (2.0 * std::cos(gamma * std::numbers::pi / 2.0));
  p.source = [amp, gamma, riesz_scale, powers, coeffs, exact = p.exact](double x, double t) {
    return exact(x, t) + amp * std::exp(t) * riesz_scale *
                             detail::reflected_monomial_sum(powers, coeffs, gamma, 1.0, x);
  };
  return p;
}

// u(x, y, t) = e^{-t/3} x^4 (2-x)^4 y^4 (2-y)^4 on (0, 2)^2 with
// kappa_x = kappa_y = 0.01.
inline Problem2D example2(double gamma_x, double gamma_y) {
  detail::check_gamma(gamma_x);
  detail::check_gamma(gamma_y);
  Problem2D p;
  p.gamma_x = gamma_x;
  p.gamma_y = gamma_y;
  p.kappa_x = 0.01;
  p.kappa_y = 0.01;
  p.ax = p.ay = 0.0;
  p.bx = p.by = 2.0;
  p.t_final = 2.0;
  auto profile = [](double s) {
    const double w = s * (2.0 - s);
    const double w2 = w * w;
    return w2 * w2;
  };
  p.exact = [profile](double x, double y, double t) {
    return std::exp(-t / 3.0) * profile(x) * profile(y);
  };
  p.initial = [exact = p.exact](double x, double y) { return exact(x, y, 0.0); };
  // x^4 (2-x)^4 = 16 x^4 - 32 x^5 + 24 x^6 - 8 x^7 + x^8
  const std::vector<double> powers{4.0, 5.0, 6.0, 7.0, 8.0};
  const std::vector<double> coeffs{16.0, -32.0, 24.0, -8.0, 1.0};
  const double scale_x = p.kappa_x / (2.0 * std::cos(gamma_x * std::numbers::pi / 2.0));
  const double scale_y = p.kappa_y / (2.0 * std::cos(gamma_y * std::numbers::pi / 2.0));
  p.source = [profile, gamma_x, gamma_y, scale_x, scale_y, powers, coeffs](double x, double y,
                                                                           double t) {
    const double decay = std::exp(-t / 3.0);
    const double fx = profile(x), fy = profile(y);
    double f = -fx * fy / 3.0;
    f += scale_x * fy * detail::reflected_monomial_sum(powers, coeffs, gamma_x, 2.0, x);
    f += scale_y * fx * detail::reflected_monomial_sum(powers, coeffs, gamma_y, 2.0, y);
    return decay * f;
  };
  return p;
}

// Uniform interior grids.  h_inv is the number of intervals, so there are
// h_inv - 1 interior unknowns per dimension; x(i) = a + (i+1) h.
struct Grid1D {
  double a = 0.0;
  double h = 0.0;
  int n = 0;
  Grid1D(double a_, double b_, int h_inv) {
    if (h_inv < 2) throw std::invalid_argument("Grid1D: need at least 2 intervals");
    a = a_;
    h = (b_ - a_) / h_inv;
    n = h_inv - 1;
  }
  double x(int i) const { return a + (i + 1) * h; }
};

struct Grid2D {
  double ax = 0.0, ay = 0.0;
  double h = 0.0;
  int n_per_dim = 0;
  Grid2D(double ax_, double bx_, double ay_, double by_, int h_inv) {
    if (h_inv < 2) throw std::invalid_argument("Grid2D: need at least 2 intervals");
    const double lx = bx_ - ax_, ly = by_ - ay_;
    if (std::abs(lx - ly) > 1e-14 * std::max(std::abs(lx), std::abs(ly)))
      throw std::invalid_argument("Grid2D: domain must have equal extents in x and y");
    ax = ax_;
    ay = ay_;
    h = lx / h_inv;
    n_per_dim = h_inv - 1;
  }
  double x(int ix) const { return ax + (ix + 1) * h; }
  double y(int iy) const { return ay + (iy + 1) * h; }
  // Lattice index: x varies slowly, y is contiguous.
  int index(int ix, int iy) const { return ix * n_per_dim + iy; }
  int size() const { return n_per_dim * n_per_dim; }
};

inline std::vector<double> sample_initial(const Problem1D& p, const Grid1D& g) {
  std::vector<double> u(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) u[static_cast<std::size_t>(i)] = p.initial(g.x(i));
  return u;
}

inline std::vector<double> sample_exact(const Problem1D& p, const Grid1D& g, double t) {
  std::vector<double> u(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) u[static_cast<std::size_t>(i)] = p.exact(g.x(i), t);
  return u;
}

// Source samples for the unknown time levels t_k = k dt, k = 1..n_time,
// flattened time-major: entry [k * n + i] holds f(x_i, t_{k+1}).
inline std::vector<double> sample_source(const Problem1D& p, const Grid1D& g, double dt,
                                         int n_time) {
  std::vector<double> f(static_cast<std::size_t>(n_time) * static_cast<std::size_t>(g.n));
  parallel_for(static_cast<std::size_t>(n_time), [&](std::size_t k) {
    const double t = (static_cast<double>(k) + 1.0) * dt;
    double* blk = f.data() + k * static_cast<std::size_t>(g.n);
    for (int i = 0; i < g.n; ++i) blk[i] = p.source(g.x(i), t);
  });
  return f;
}

inline std::vector<double> sample_initial(const Problem2D& p, const Grid2D& g) {
  std::vector<double> u(static_cast<std::size_t>(g.size()));
  for (int ix = 0; ix < g.n_per_dim; ++ix)
    for (int iy = 0; iy < g.n_per_dim; ++iy)
      u[static_cast<std::size_t>(g.index(ix, iy))] = p.initial(g.x(ix), g.y(iy));
  return u;
}

inline std::vector<double> sample_exact(const Problem2D& p, const Grid2D& g, double t) {
  std::vector<double> u(static_cast<std::size_t>(g.size()));
  for (int ix = 0; ix < g.n_per_dim; ++ix)
    for (int iy = 0; iy < g.n_per_dim; ++iy)
      u[static_cast<std::size_t>(g.index(ix, iy))] = p.exact(g.x(ix), g.y(iy), t);
  return u;
}

inline std::vector<double> sample_source(const Problem2D& p, const Grid2D& g, double dt,
                                         int n_time) {
  const std::size_t ns = static_cast<std::size_t>(g.size());
  std::vector<double> f(static_cast<std::size_t>(n_time) * ns);
  parallel_for(static_cast<std::size_t>(n_time), [&](std::size_t k) {
    const double t = (static_cast<double>(k) + 1.0) * dt;
    double* blk = f.data() + k * ns;
    for (int ix = 0; ix < g.n_per_dim; ++ix)
      for (int iy = 0; iy < g.n_per_dim; ++iy)
        blk[g.index(ix, iy)] = p.source(g.x(ix), g.y(iy), t);
  });
  return f;
}

}  // namespace fracpint

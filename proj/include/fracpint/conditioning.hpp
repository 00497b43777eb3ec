#pragma once

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "all_at_once.hpp"

namespace fracpint {

// A-priori singular-value bounds for the all-at-once matrix, driven by a
// matrix-free 2-norm estimate of the spatial Jacobian:
//   sigma_max(M) <= 4 + dt*||A||_2
//   sigma_min(M) >= sqrt(6) / (3*N_t)
//   cond_2(M)    <= 2*sqrt(6)*N_t + (sqrt(6)/2) * T * ||A||_2,  T = N_t*dt.
struct ConditionBound {
  double a_norm2 = 0.0;  // power-iteration estimate of ||A||_2 (never above the true norm)
  bool power_converged = false;
  int power_iterations = 0;
  double sigma_max_bound = 0.0;
  double sigma_min_bound = 0.0;
  double cond_bound = 0.0;
};

// Power iteration on the symmetric spatial Jacobian. Converges from below;
// non-convergence within max_iter is reported with the best estimate so far.
template <class Jacobian>
std::pair<double, std::pair<bool, int>> jacobian_norm_estimate(const Jacobian& jac,
                                                               double tol = 1e-6,
                                                               int max_iter = 500) {
  const std::size_t n = static_cast<std::size_t>(jac.dim());
  std::mt19937 gen(0x5eedu);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n), w(n);
  for (auto& x : v) x = dist(gen);
  double nv = 0.0;
  for (double x : v) nv += x * x;
  nv = std::sqrt(nv);
  for (auto& x : v) x /= nv;

  double est = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    jac.template apply<double>(v, w);
    double nw = 0.0;
    for (double x : w) nw += x * x;
    nw = std::sqrt(nw);
    if (nw == 0.0) return {0.0, {true, it}};  // zero operator
    const double prev = est;
    est = nw;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
    if (it > 1 && std::abs(est - prev) <= tol * est) return {est, {true, it}};
  }
  return {est, {false, max_iter}};
}

template <class Jacobian>
ConditionBound condition_bound(const AllAtOnceOperator<Jacobian>& op, double tol = 1e-6,
                               int max_iter = 500) {
  ConditionBound cb;
  auto [norm, status] = jacobian_norm_estimate(op.jacobian(), tol, max_iter);
  cb.a_norm2 = norm;
  cb.power_converged = status.first;
  cb.power_iterations = status.second;
  const double nt = static_cast<double>(op.n_time());
  const double horizon = nt * op.dt();
  const double root6 = std::sqrt(6.0);
  cb.sigma_max_bound = 4.0 + op.dt() * cb.a_norm2;
  cb.sigma_min_bound = root6 / (3.0 * nt);
  cb.cond_bound = 2.0 * root6 * nt + 0.5 * root6 * horizon * cb.a_norm2;
  return cb;
}

}  // namespace fracpint

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "all_at_once.hpp"
#include "fft.hpp"
#include "parallel.hpp"
#include "tau.hpp"

namespace fracpint {

// Which block circulant preconditioner to build: the generalized variant picks
// alpha = min(0.5, 0.5*dt); the Strang variant is the alpha = 1 limit; custom
// pins alpha in (0, 1].
class PreconditionerKind {
 public:
  static PreconditionerKind generalized() { return PreconditionerKind(true, 0.0); }
  static PreconditionerKind strang() { return PreconditionerKind(false, 1.0); }
  static PreconditionerKind with_alpha(double alpha) { return PreconditionerKind(false, alpha); }

  double alpha_for(double dt) const {
    const double a = auto_policy_ ? std::min(0.5, 0.5 * dt) : alpha_;
    if (!(a > 0.0) || a > 1.0)
      throw std::invalid_argument("PreconditionerKind: alpha must lie in (0, 1]");
    return a;
  }

  bool is_auto() const { return auto_policy_; }

 private:
  PreconditionerKind(bool auto_policy, double alpha) : auto_policy_(auto_policy), alpha_(alpha) {}
  bool auto_policy_;
  double alpha_;
};

// Factorized block alpha-circulant preconditioner
//   P = C_alpha (x) I_s - dt * I_t (x) tau(A),
// where C_alpha wraps the time stencil periodically with weight alpha and
// tau(A) replaces the spatial Jacobian inside the inner solves. C_alpha
// diagonalizes as D_alpha^{-1} F* diag(lambda) F D_alpha with
// D_alpha = diag(alpha^{(k-1)/N_t}) and the positive-exponent unitary DFT F,
// so applying P^{-1} costs one batched FFT pair across time plus one shifted
// tau solve per retained frequency.
struct AlphaCirculantPlan {
  int n_time = 0;
  int n_space = 0;
  double dt = 0.0;
  double alpha = 0.0;
  std::vector<std::complex<double>> lambda;  // eigenvalues of C_alpha, frequency n-1 at [n-1]
  std::vector<double> scale_fwd;             // alpha^{+k/N_t}: applied before the forward DFT
  std::vector<double> scale_bwd;             // alpha^{-k/N_t}: applied after the inverse DFT
  int solve_count = 0;                       // floor(N_t/2)+1 frequencies actually solved
  TauOperator tau;                           // spectrum of tau(A)
  double min_shift_margin = 0.0;             // min |lambda_n - dt*sigma_i| over the solve set
  std::vector<std::string> warnings;

  // 1-based mirror partner of frequency n in 2..N_t; frequency 1 is its own.
  int mirror_index(int n) const { return n_time - n + 2; }
};

// Closed-form eigenvalues of C_alpha: lambda_n = 3/2 - 2 a theta^{n-1}
// + (1/2) a^2 theta^{2(n-1)} with a = alpha^{1/N_t}, theta = e^{+2*pi*i/N_t}.
inline std::vector<std::complex<double>> alpha_circulant_eigenvalues(double alpha, int n_time) {
  std::vector<std::complex<double>> lambda(static_cast<std::size_t>(n_time));
  const double a = std::pow(alpha, 1.0 / static_cast<double>(n_time));
  for (int i = 0; i < n_time; ++i) {
    const double ang1 = 2.0 * std::numbers::pi * (static_cast<double>(i % n_time)) / n_time;
    const double ang2 = 2.0 * std::numbers::pi * (static_cast<double>((2 * i) % n_time)) / n_time;
    lambda[static_cast<std::size_t>(i)] =
        1.5 - 2.0 * a * std::polar(1.0, ang1) + 0.5 * a * a * std::polar(1.0, ang2);
  }
  return lambda;
}

template <class Jacobian>
AlphaCirculantPlan build_plan(const PreconditionerKind& kind, int n_time, double dt,
                              const Jacobian& jac) {
  if (n_time < 3) throw std::invalid_argument("build_plan: need at least 3 time levels");
  if (!(dt > 0.0)) throw std::invalid_argument("build_plan: dt must be positive");

  AlphaCirculantPlan plan;
  plan.n_time = n_time;
  plan.n_space = jac.dim();
  plan.dt = dt;
  plan.alpha = kind.alpha_for(dt);
  if (plan.alpha < 1e-8)
    plan.warnings.push_back(
        "alpha below 1e-8: the diagonalization scalings span a wide dynamic range and may "
        "amplify roundoff");

  plan.lambda = alpha_circulant_eigenvalues(plan.alpha, n_time);
  plan.scale_fwd.resize(static_cast<std::size_t>(n_time));
  plan.scale_bwd.resize(static_cast<std::size_t>(n_time));
  for (int k = 0; k < n_time; ++k) {
    const double e = static_cast<double>(k) / static_cast<double>(n_time);
    plan.scale_fwd[static_cast<std::size_t>(k)] = std::pow(plan.alpha, e);
    plan.scale_bwd[static_cast<std::size_t>(k)] = std::pow(plan.alpha, -e);
  }
  plan.solve_count = n_time / 2 + 1;
  plan.tau = jac.tau();

  // Every retained shifted inner system must be safely nonsingular.
  double max_sigma = 0.0;
  for (double s : plan.tau.sigma) max_sigma = std::max(max_sigma, std::abs(s));
  double margin = std::numeric_limits<double>::infinity();
  for (int n = 0; n < plan.solve_count; ++n) {
    const std::complex<double> l = plan.lambda[static_cast<std::size_t>(n)];
    const double floor = 1e-14 * (std::abs(l) + dt * max_sigma);
    for (double s : plan.tau.sigma) {
      const double d = std::abs(l - dt * s);
      margin = std::min(margin, d);
      if (d <= floor)
        throw std::runtime_error("build_plan: an inner shifted system is numerically singular");
    }
  }
  plan.min_shift_margin = margin;
  return plan;
}

enum class InnerSweep { half, full };

namespace detail {

// Shared skeleton of the inverse and forward actions of the factorized
// preconditioner. Layout note: the batched time-direction FFTs run on a
// space-major copy (row j holds the length-N_t time series of spatial index
// j), while the shifted tau solves run time-major; the two transposes in
// between are fused with the diagonal scalings.
template <bool Solve>
void alpha_circulant_action(const AlphaCirculantPlan& plan, InnerSweep sweep,
                            std::span<const double> v, std::span<double> out) {
  using C = std::complex<double>;
  const std::size_t nt = static_cast<std::size_t>(plan.n_time);
  const std::size_t ns = static_cast<std::size_t>(plan.n_space);
  if (v.size() != nt * ns || out.size() != nt * ns)
    throw std::invalid_argument("alpha-circulant action: size mismatch");

  std::vector<C> rows(nt * ns);  // space-major: rows[j*nt + k]
  parallel_for(ns, [&](std::size_t j) {
    C* row = rows.data() + j * nt;
    for (std::size_t k = 0; k < nt; ++k) row[k] = plan.scale_fwd[k] * v[k * ns + j];
    fft_inplace(row, nt, +1);  // unnormalized; paired with the inverse pass below
  });

  std::vector<C> blocks(nt * ns);  // time-major: blocks[n*ns + j]
  parallel_for(nt, [&](std::size_t n) {
    for (std::size_t j = 0; j < ns; ++j) blocks[n * ns + j] = rows[j * nt + n];
  });

  const std::size_t active =
      (Solve && sweep == InnerSweep::half) ? static_cast<std::size_t>(plan.solve_count) : nt;
  parallel_for(active, [&](std::size_t n) {
    std::span<C> z(blocks.data() + n * ns, ns);
    if constexpr (Solve)
      tau_solve_shifted(plan.tau, plan.lambda[n], plan.dt, z, z);
    else
      tau_apply_shifted(plan.tau, plan.lambda[n], plan.dt, z, z);
  });
  if (Solve && sweep == InnerSweep::half) {
    // Real input and conjugate-paired shifts: frequency N_t-n is the
    // conjugate of frequency n, so the skipped half is filled by symmetry.
    for (std::size_t n = 1; n < static_cast<std::size_t>(plan.solve_count); ++n) {
      const std::size_t p = nt - n;
      if (p < static_cast<std::size_t>(plan.solve_count)) continue;
      for (std::size_t j = 0; j < ns; ++j) blocks[p * ns + j] = std::conj(blocks[n * ns + j]);
    }
  }

  parallel_for(ns, [&](std::size_t j) {
    C* row = rows.data() + j * nt;
    for (std::size_t k = 0; k < nt; ++k) row[k] = blocks[k * ns + j];
    fft_inplace(row, nt, -1);
  });

  // Undo the diagonal scaling and the combined FFT normalization; the result
  // of a real input must come back real up to roundoff.
  const double inv_nt = 1.0 / static_cast<double>(nt);
  double imag_sq = 0.0, total_sq = 0.0;
  for (std::size_t k = 0; k < nt; ++k) {
    const double s = plan.scale_bwd[k] * inv_nt;
    for (std::size_t j = 0; j < ns; ++j) {
      const C z = s * rows[j * nt + k];
      out[k * ns + j] = z.real();
      imag_sq += z.imag() * z.imag();
      total_sq += std::norm(z);
    }
  }
  if (total_sq > 0.0 && std::sqrt(imag_sq) > 1e-10 * std::sqrt(total_sq))
    throw std::runtime_error(
        "alpha-circulant action: imaginary residue exceeds 1e-10 of the output norm");
}

}  // namespace detail

// out = P^{-1} v. The half sweep (default) solves only floor(N_t/2)+1 shifted
// systems and mirrors the rest by conjugate symmetry; the full sweep solves
// all N_t (diagnostic path, bitwise-independent of the mirror trick).
inline void apply_inverse(const AlphaCirculantPlan& plan, std::span<const double> v,
                          std::span<double> out, InnerSweep sweep = InnerSweep::half) {
  detail::alpha_circulant_action<true>(plan, sweep, v, out);
}

// out = P v, assembled from the same spectral factors; validation path.
inline void apply_forward(const AlphaCirculantPlan& plan, std::span<const double> v,
                          std::span<double> out) {
  detail::alpha_circulant_action<false>(plan, InnerSweep::full, v, out);
}

}  // namespace fracpint

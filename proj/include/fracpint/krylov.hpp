#pragma once

// Matrix-free Krylov solvers: full GMRES with right preconditioning and
// BiCGSTAB with left preconditioning.  Operators are supplied as callables
// mapping a const input span to a disjoint output span, so the all-at-once
// operator and the factorized preconditioner plug in without materializing
// anything.
//
// Conventions shared by both solvers:
//   * the initial guess is always zero;
//   * residual_history holds one relative-residual entry per (half) step,
//     measured against the unpreconditioned right-hand side;
//   * true_relative_residual is recomputed at the end from a fresh matvec.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fracpint {

struct SolverConfig {
  double tol = 1e-9;  // on the relative residual ||b - A x|| / ||b||
  int max_iter = 200;
};

struct SolveReport {
  bool converged = false;
  double iterations = 0.0;  // BiCGSTAB counts convergence at the half step as 0.5
  std::vector<double> residual_history;
  double final_relative_residual = 0.0;  // from the solver's own recurrence
  double true_relative_residual = 0.0;   // from a fresh matvec after the solve
  double seconds = 0.0;
};

struct KrylovResult {
  std::vector<double> x;
  SolveReport report;
};

struct IdentityPreconditioner {
  void operator()(std::span<const double> in, std::span<double> out) const {
    std::copy(in.begin(), in.end(), out.begin());
  }
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

template <class OpA>
double fresh_relative_residual(std::size_t n, OpA&& apply_a, std::span<const double> b,
                               std::span<const double> x, double norm_b) {
  std::vector<double> ax(n);
  apply_a(x, std::span<double>(ax));
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = b[i] - ax[i];
    s += d * d;
  }
  return norm_b > 0.0 ? std::sqrt(s) / norm_b : std::sqrt(s);
}

}  // namespace detail

// Full (unrestarted) GMRES on A x = b, right-preconditioned: the Arnoldi
// basis is built for A P^{-1}, and x = P^{-1} V y is formed once at the end.
// With right preconditioning the recurrence residual is the residual of the
// original system, so the history needs no extra matvecs.
template <class OpA, class OpP>
KrylovResult gmres_right(std::size_t n, OpA&& apply_a, OpP&& apply_pinv,
                         std::span<const double> b, const SolverConfig& cfg = {}) {
  if (b.size() != n) throw std::invalid_argument("gmres_right: size mismatch");
  const auto t0 = std::chrono::steady_clock::now();
  KrylovResult result;
  result.x.assign(n, 0.0);
  auto& rep = result.report;

  const double norm_b = detail::norm2(b);
  if (norm_b == 0.0) {
    rep.converged = true;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
  }

  std::vector<std::vector<double>> basis;  // v_0, v_1, ...
  std::vector<std::vector<double>> hcols;  // column j holds rows 0..j+1
  std::vector<double> givens_c, givens_s, g;
  basis.emplace_back(b.begin(), b.end());
  for (double& x : basis[0]) x /= norm_b;
  g.push_back(norm_b);

  std::vector<double> z(n), w(n);
  constexpr double reorth_threshold = 0.70710678118654752;  // 1/sqrt(2)
  int steps = 0;
  bool stagnated = false;

  for (int j = 0; j < cfg.max_iter; ++j) {
    apply_pinv(std::span<const double>(basis[static_cast<std::size_t>(j)]), std::span<double>(z));
    apply_a(std::span<const double>(z), std::span<double>(w));

    auto& h = hcols.emplace_back(static_cast<std::size_t>(j) + 2, 0.0);
    const double norm_before = detail::norm2(w);
    for (int i = 0; i <= j; ++i) {
      const double hij = detail::dot(basis[static_cast<std::size_t>(i)], w);
      h[static_cast<std::size_t>(i)] = hij;
      detail::axpy(-hij, basis[static_cast<std::size_t>(i)], w);
    }
    double norm_w = detail::norm2(w);
    if (norm_w < reorth_threshold * norm_before) {
      for (int i = 0; i <= j; ++i) {
        const double c = detail::dot(basis[static_cast<std::size_t>(i)], w);
        h[static_cast<std::size_t>(i)] += c;
        detail::axpy(-c, basis[static_cast<std::size_t>(i)], w);
      }
      norm_w = detail::norm2(w);
    }
    h[static_cast<std::size_t>(j) + 1] = norm_w;

    for (int i = 0; i < j; ++i) {
      const double hi = h[static_cast<std::size_t>(i)];
      const double hi1 = h[static_cast<std::size_t>(i) + 1];
      h[static_cast<std::size_t>(i)] = givens_c[static_cast<std::size_t>(i)] * hi +
                                       givens_s[static_cast<std::size_t>(i)] * hi1;
      h[static_cast<std::size_t>(i) + 1] = -givens_s[static_cast<std::size_t>(i)] * hi +
                                           givens_c[static_cast<std::size_t>(i)] * hi1;
    }
    const double hj = h[static_cast<std::size_t>(j)];
    const double hj1 = h[static_cast<std::size_t>(j) + 1];
    const double rad = std::hypot(hj, hj1);
    const double cs = rad > 0.0 ? hj / rad : 1.0;
    const double sn = rad > 0.0 ? hj1 / rad : 0.0;
    givens_c.push_back(cs);
    givens_s.push_back(sn);
    h[static_cast<std::size_t>(j)] = rad;
    h[static_cast<std::size_t>(j) + 1] = 0.0;
    g.push_back(-sn * g[static_cast<std::size_t>(j)]);
    g[static_cast<std::size_t>(j)] *= cs;

    steps = j + 1;
    const double rel = std::abs(g[static_cast<std::size_t>(j) + 1]) / norm_b;
    rep.residual_history.push_back(rel);
    if (rel <= cfg.tol) {
      rep.converged = true;
      break;
    }
    if (norm_w <= 1e-14 * std::max(1.0, norm_before)) {
      // The Krylov space is exhausted; the projected solution is as good as
      // this basis allows, so stop rather than divide by a vanishing norm.
      stagnated = true;
      break;
    }
    auto& v = basis.emplace_back(w);
    for (double& x : v) x /= norm_w;
  }
  (void)stagnated;

  // Back substitution on the rotated Hessenberg columns.
  std::vector<double> y(static_cast<std::size_t>(steps), 0.0);
  for (int i = steps - 1; i >= 0; --i) {
    double s = g[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < steps; ++k)
      s -= hcols[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
           y[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(i)] = s / hcols[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  }
  std::vector<double> u(n, 0.0);
  for (int k = 0; k < steps; ++k)
    detail::axpy(y[static_cast<std::size_t>(k)], basis[static_cast<std::size_t>(k)], u);
  apply_pinv(std::span<const double>(u), std::span<double>(result.x));

  rep.iterations = steps;
  rep.final_relative_residual =
      rep.residual_history.empty() ? 1.0 : rep.residual_history.back();
  rep.true_relative_residual =
      detail::fresh_relative_residual(n, apply_a, b, std::span<const double>(result.x), norm_b);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

template <class OpA>
KrylovResult gmres(std::size_t n, OpA&& apply_a, std::span<const double> b,
                   const SolverConfig& cfg = {}) {
  return gmres_right(n, apply_a, IdentityPreconditioner{}, b, cfg);
}

// BiCGSTAB on P^{-1} A x = P^{-1} b.  The recurrence runs on preconditioned
// vectors, while the residual of the original system is carried alongside via
// the same matvec outputs (q = A p and t = A s), so convergence is tested on
// the unpreconditioned residual without extra operator applications.
template <class OpA, class OpP>
KrylovResult bicgstab_left(std::size_t n, OpA&& apply_a, OpP&& apply_pinv,
                           std::span<const double> b, const SolverConfig& cfg = {}) {
  if (b.size() != n) throw std::invalid_argument("bicgstab_left: size mismatch");
  const auto t0 = std::chrono::steady_clock::now();
  KrylovResult result;
  result.x.assign(n, 0.0);
  auto& rep = result.report;

  const double norm_b = detail::norm2(b);
  if (norm_b == 0.0) {
    rep.converged = true;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
  }
  const double breakdown_floor = 1e-300;

  std::vector<double> r(n), r_true(b.begin(), b.end()), rhat, p(n), q(n), v(n), s(n),
      s_true(n), t_orig(n), t(n);
  apply_pinv(b, std::span<double>(r));
  rhat = r;
  double rho_prev = 1.0, alpha = 1.0, omega = 1.0;

  for (int k = 0; k < cfg.max_iter; ++k) {
    const double rho = detail::dot(rhat, r);
    if (std::abs(rho) < breakdown_floor) break;
    if (k == 0) {
      p = r;
    } else {
      const double beta = (rho / rho_prev) * (alpha / omega);
      for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    }
    apply_a(std::span<const double>(p), std::span<double>(q));
    apply_pinv(std::span<const double>(q), std::span<double>(v));
    const double denom = detail::dot(rhat, v);
    if (std::abs(denom) < breakdown_floor) break;
    alpha = rho / denom;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = r[i] - alpha * v[i];
      s_true[i] = r_true[i] - alpha * q[i];
    }
    const double rel_half = detail::norm2(s_true) / norm_b;
    rep.residual_history.push_back(rel_half);
    if (rel_half <= cfg.tol) {
      detail::axpy(alpha, p, result.x);
      rep.iterations = k + 0.5;
      rep.converged = true;
      rep.final_relative_residual = rel_half;
      break;
    }
    apply_a(std::span<const double>(s), std::span<double>(t_orig));
    apply_pinv(std::span<const double>(t_orig), std::span<double>(t));
    const double tt = detail::dot(t, t);
    if (tt < breakdown_floor) break;
    omega = detail::dot(t, s) / tt;
    for (std::size_t i = 0; i < n; ++i) {
      result.x[i] += alpha * p[i] + omega * s[i];
      r[i] = s[i] - omega * t[i];
      r_true[i] = s_true[i] - omega * t_orig[i];
    }
    const double rel = detail::norm2(r_true) / norm_b;
    rep.residual_history.push_back(rel);
    rep.iterations = k + 1.0;
    rep.final_relative_residual = rel;
    if (rel <= cfg.tol) {
      rep.converged = true;
      break;
    }
    if (std::abs(omega) < breakdown_floor) break;
    rho_prev = rho;
  }

  rep.true_relative_residual =
      detail::fresh_relative_residual(n, apply_a, b, std::span<const double>(result.x), norm_b);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace fracpint

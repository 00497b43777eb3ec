#pragma once

// End-to-end driver: discretize a benchmark problem, assemble the all-at-once
// right-hand side, build the preconditioner plan, run the requested Krylov
// method, and report iteration counts and the max-norm error at the final
// time against the exact solution.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fracpint/all_at_once.hpp"
#include "fracpint/alpha_circulant.hpp"
#include "fracpint/jacobian.hpp"
#include "fracpint/krylov.hpp"
#include "fracpint/problems.hpp"
#include "fracpint/time_stencil.hpp"

namespace fracpint {

enum class KrylovMethod { gmres, bicgstab };

struct RunConfig {
  int n_time = 64;
  int h_inv = 128;  // spatial intervals per dimension
  PreconditionerKind kind = PreconditionerKind::generalized();
  KrylovMethod method = KrylovMethod::gmres;
  SolverConfig solver{};
  InnerSweep sweep = InnerSweep::half;
};

struct RunResult {
  int n_time = 0;
  int n_space = 0;
  int dof = 0;
  double dt = 0.0;
  double h = 0.0;
  double alpha = 0.0;
  SolveReport report;
  double err_inf = 0.0;               // max |u - u_exact| at t = t_final
  std::vector<double> final_state;    // computed solution at t = t_final
  std::vector<std::string> warnings;
};

namespace detail {

template <class Jacobian>
RunResult solve_all_at_once(const Jacobian& jac, double h, double t_final,
                            const std::vector<double>& u0, const std::vector<double>& f_flat,
                            const std::vector<double>& exact_final, const RunConfig& cfg) {
  const int nt = cfg.n_time;
  const int ns = jac.dim();
  const double dt = t_final / nt;

  TimeStencil stencil(nt);
  AllAtOnceOperator op(stencil, jac, dt);
  const std::vector<double> rhs = assemble_rhs(stencil, dt, f_flat, u0);
  auto plan = build_plan(cfg.kind, nt, dt, jac);

  auto apply_op = [&op](std::span<const double> in, std::span<double> out) {
    op.apply(in, out);
  };
  auto apply_pinv = [&plan, sweep = cfg.sweep](std::span<const double> in,
                                               std::span<double> out) {
    apply_inverse(plan, in, out, sweep);
  };

  const std::size_t dim = static_cast<std::size_t>(nt) * static_cast<std::size_t>(ns);
  KrylovResult solved = cfg.method == KrylovMethod::gmres
                            ? gmres_right(dim, apply_op, apply_pinv, rhs, cfg.solver)
                            : bicgstab_left(dim, apply_op, apply_pinv, rhs, cfg.solver);

  RunResult result;
  result.n_time = nt;
  result.n_space = ns;
  result.dof = nt * ns;
  result.dt = dt;
  result.h = h;
  result.alpha = plan.alpha;
  result.report = std::move(solved.report);
  result.warnings = plan.warnings;
  result.final_state.assign(solved.x.begin() + static_cast<std::ptrdiff_t>(dim) - ns,
                            solved.x.end());
  double err = 0.0;
  for (int i = 0; i < ns; ++i)
    err = std::max(err, std::abs(result.final_state[static_cast<std::size_t>(i)] -
                                 exact_final[static_cast<std::size_t>(i)]));
  result.err_inf = err;
  return result;
}

}  // namespace detail

inline RunResult run_problem(const Problem1D& p, const RunConfig& cfg) {
  Grid1D grid(p.a, p.b, cfg.h_inv);
  RieszJacobian1D jac(p.gamma, p.kappa, grid.h, grid.n);
  const double dt = p.t_final / cfg.n_time;
  return detail::solve_all_at_once(jac, grid.h, p.t_final, sample_initial(p, grid),
                                   sample_source(p, grid, dt, cfg.n_time),
                                   sample_exact(p, grid, p.t_final), cfg);
}

inline RunResult run_problem(const Problem2D& p, const RunConfig& cfg) {
  Grid2D grid(p.ax, p.bx, p.ay, p.by, cfg.h_inv);
  RieszJacobian2D jac(p.gamma_x, p.gamma_y, p.kappa_x, p.kappa_y, grid.h, grid.n_per_dim);
  const double dt = p.t_final / cfg.n_time;
  return detail::solve_all_at_once(jac, grid.h, p.t_final, sample_initial(p, grid),
                                   sample_source(p, grid, dt, cfg.n_time),
                                   sample_exact(p, grid, p.t_final), cfg);
}

}  // namespace fracpint

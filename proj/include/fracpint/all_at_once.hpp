#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "parallel.hpp"
#include "time_stencil.hpp"

namespace fracpint {

// Matrix-free all-at-once space-time operator
//   M = C (x) I_s  -  dt * I_t (x) A
// over time-major vectors (time block k holds the spatial unknowns at t_{k+1}).
// The spatial Jacobian type needs dim(), apply(span,span) on doubles, and
// tau(); applies parallelize over time blocks, whose writes are disjoint.
template <class Jacobian>
class AllAtOnceOperator {
 public:
  AllAtOnceOperator(TimeStencil stencil, Jacobian jac, double dt)
      : stencil_(stencil), jac_(std::move(jac)), dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("AllAtOnceOperator: dt must be positive");
  }

  int n_time() const { return stencil_.n_time; }
  int n_space() const { return jac_.dim(); }
  std::size_t dim() const { return static_cast<std::size_t>(n_time()) * static_cast<std::size_t>(n_space()); }
  double dt() const { return dt_; }
  const TimeStencil& stencil() const { return stencil_; }
  const Jacobian& jacobian() const { return jac_; }

  void apply(std::span<const double> v, std::span<double> out) const {
    const std::size_t ns = static_cast<std::size_t>(n_space());
    const std::size_t nt = static_cast<std::size_t>(n_time());
    if (v.size() != nt * ns || out.size() != nt * ns)
      throw std::invalid_argument("AllAtOnceOperator::apply: size mismatch");
    parallel_for(nt, [&](std::size_t k) {
      std::span<double> o = out.subspan(k * ns, ns);
      jac_.template apply<double>(v.subspan(k * ns, ns), o);  // o = A v_k
      const double* vk = v.data() + k * ns;
      const double* vk1 = k >= 1 ? v.data() + (k - 1) * ns : nullptr;
      const double* vk2 = k >= 2 ? v.data() + (k - 2) * ns : nullptr;
      for (std::size_t i = 0; i < ns; ++i) {
        double c;
        if (k == 0)
          c = vk[i];
        else if (k == 1)
          c = TimeStencil::r0 * vk[i] + TimeStencil::r1 * vk1[i];
        else
          c = TimeStencil::r0 * vk[i] + TimeStencil::r1 * vk1[i] + TimeStencil::r2 * vk2[i];
        o[i] = c - dt_ * o[i];
      }
    });
  }

 private:
  TimeStencil stencil_;
  Jacobian jac_;
  double dt_;
};

// Right-hand side of the all-at-once system from sampled sources and initial
// data: block 1 is dt*f^1 + u0, block 2 is dt*f^2 - u0/2, later blocks dt*f^k.
// f_flat is time-major with n_time blocks (f sampled at t_1..t_{n_time}).
inline std::vector<double> assemble_rhs(const TimeStencil& st, double dt,
                                        std::span<const double> f_flat,
                                        std::span<const double> u0) {
  const std::size_t ns = u0.size();
  const std::size_t nt = static_cast<std::size_t>(st.n_time);
  if (f_flat.size() != nt * ns) throw std::invalid_argument("assemble_rhs: size mismatch");
  std::vector<double> b(nt * ns);
  for (std::size_t k = 0; k < nt; ++k)
    for (std::size_t i = 0; i < ns; ++i) b[k * ns + i] = dt * f_flat[k * ns + i];
  for (std::size_t i = 0; i < ns; ++i) {
    b[i] += u0[i];
    b[ns + i] -= 0.5 * u0[i];
  }
  return b;
}

}  // namespace fracpint

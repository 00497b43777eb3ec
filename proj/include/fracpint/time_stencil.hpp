#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fracpint {

// Lower-triangular two-step time stencil C (dt-scaled): backward Euler starts
// the march, the two-step formula with coefficients (3/2, -2, 1/2) carries it:
//   row 1:      u^1
//   row 2:      (3/2) u^2 - 2 u^1
//   row k >= 3: (3/2) u^k - 2 u^{k-1} + (1/2) u^{k-2}.
// C is a lower-banded Toeplitz apart from its (1,1) entry.
struct TimeStencil {
  static constexpr double r0 = 1.5;
  static constexpr double r1 = -2.0;
  static constexpr double r2 = 0.5;

  int n_time = 0;

  explicit TimeStencil(int nt) : n_time(nt) {
    if (nt < 3) throw std::invalid_argument("TimeStencil: need at least 3 time levels");
  }
};

// out = (C (x) I_s) v for space-time vectors laid out time-major:
// block k (0-based) occupies [k*n_space, (k+1)*n_space).
inline void apply_time_stencil(const TimeStencil& st, int n_space, std::span<const double> v,
                               std::span<double> out) {
  const std::size_t ns = static_cast<std::size_t>(n_space);
  const std::size_t nt = static_cast<std::size_t>(st.n_time);
  if (v.size() != nt * ns || out.size() != nt * ns)
    throw std::invalid_argument("apply_time_stencil: size mismatch");
  for (std::size_t i = 0; i < ns; ++i) out[i] = v[i];
  for (std::size_t i = 0; i < ns; ++i)
    out[ns + i] = TimeStencil::r0 * v[ns + i] + TimeStencil::r1 * v[i];
  for (std::size_t k = 2; k < nt; ++k)
    for (std::size_t i = 0; i < ns; ++i)
      out[k * ns + i] = TimeStencil::r0 * v[k * ns + i] + TimeStencil::r1 * v[(k - 1) * ns + i] +
                        TimeStencil::r2 * v[(k - 2) * ns + i];
}

}  // namespace fracpint

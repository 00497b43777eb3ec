#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracpint {

// Fractional centred-difference weights for the Riesz derivative of order
// gamma in (1, 2]:
//   w_0 = Gamma(1+gamma) / Gamma(1+gamma/2)^2,
//   w_{l+1} = w_l * (l - gamma/2) / (l + 1 + gamma/2).
// The recurrence keeps every Gamma argument positive, so it is stable for all
// admissible gamma; at gamma = 2 it terminates in the classical [2, -1, 0, ...]
// Laplacian stencil.
struct FracWeights {
  double gamma = 0.0;
  std::vector<double> weights;
};

inline FracWeights centred_weights(double gamma, int count) {
  if (!(gamma > 1.0) || !(gamma <= 2.0))
    throw std::invalid_argument("centred_weights: gamma must lie in (1, 2]");
  if (count < 1) throw std::invalid_argument("centred_weights: count must be at least 1");
  FracWeights fw;
  fw.gamma = gamma;
  fw.weights.resize(static_cast<std::size_t>(count));
  const double g0 = std::tgamma(1.0 + gamma / 2.0);
  fw.weights[0] = std::tgamma(1.0 + gamma) / (g0 * g0);
  for (int l = 0; l + 1 < count; ++l)
    fw.weights[static_cast<std::size_t>(l) + 1] =
        fw.weights[static_cast<std::size_t>(l)] * (static_cast<double>(l) - gamma / 2.0) /
        (static_cast<double>(l) + 1.0 + gamma / 2.0);
  return fw;
}

}  // namespace fracpint

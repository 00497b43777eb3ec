#pragma once

// Dense small-instance diagnostics: materialize the matrix-free operators,
// compute spectra of the preconditioned systems, and verify the norm and
// singular-value bounds that justify the solver design. Everything here is
// Eigen-backed and capped at a dense dimension limit; nothing in this header
// is used on a solve hot path.

#include <cmath>
#include <complex>
#include <cstddef>
#include <iomanip>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fracpint/all_at_once.hpp"
#include "fracpint/alpha_circulant.hpp"
#include "fracpint/tau.hpp"
#include "fracpint/time_stencil.hpp"

namespace fracpint {

// Dense eigensolves and SVDs stop being "small-instance diagnostics" beyond
// this dimension; callers may pass a smaller limit but not a larger one
// without opting in explicitly.
inline constexpr std::size_t kDenseLimit = 4096;

namespace detail {

inline void check_dense_limit(std::size_t dim, std::size_t limit) {
  if (dim > limit)
    throw std::invalid_argument("analysis: dimension " + std::to_string(dim) +
                                " exceeds the dense diagnostic limit " +
                                std::to_string(limit));
}

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace detail

// Column-by-column materialization of any linear action on real vectors.
template <class Apply>
Eigen::MatrixXd materialize_action(std::size_t dim, Apply&& apply,
                                   std::size_t limit = kDenseLimit) {
  detail::check_dense_limit(dim, limit);
  const Eigen::Index n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd m(n, n);
  std::vector<double> e(dim, 0.0), col(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    e[j] = 1.0;
    apply(std::span<const double>(e), std::span<double>(col));
    e[j] = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  return m;
}

// Materialization of an operator object exposing dim() and apply(span, span).
template <class Op>
Eigen::MatrixXd materialize(const Op& op, std::size_t limit = kDenseLimit) {
  const std::size_t dim = static_cast<std::size_t>(op.dim());
  return materialize_action(
      dim,
      [&op](std::span<const double> in, std::span<double> out) { op.apply(in, out); },
      limit);
}

// Dense time stencil C (lower bidiagonal-by-blocks structure, scalar blocks).
inline Eigen::MatrixXd dense_time_stencil(int n_time) {
  TimeStencil st(n_time);
  return materialize_action(
      static_cast<std::size_t>(n_time),
      [&st](std::span<const double> in, std::span<double> out) {
        apply_time_stencil(st, 1, in, out);
      });
}

// Dense alpha-circulant time stencil: the Toeplitz part of C plus
// alpha-weighted wrap-around entries in the upper-right corner.
inline Eigen::MatrixXd dense_alpha_stencil(int n_time, double alpha) {
  if (n_time < 3)
    throw std::invalid_argument("dense_alpha_stencil: need at least 3 time levels");
  const double r[3] = {1.5, -2.0, 0.5};
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n_time, n_time);
  for (int i = 0; i < n_time; ++i) {
    for (int j = 0; j < n_time; ++j) {
      const int d = i - j;
      if (d >= 0 && d <= 2) c(i, j) = r[d];
      if (d + n_time <= 2) c(i, j) = alpha * r[d + n_time];
    }
  }
  return c;
}

// The n_time eigenvalues of the alpha-circulant stencil, for scatter plots
// and the positivity checks backing the preconditioner's invertibility.
inline std::vector<std::complex<double>> lambda_scatter(double alpha, int n_time) {
  if (n_time < 3)
    throw std::invalid_argument("lambda_scatter: need at least 3 time levels");
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("lambda_scatter: alpha must lie in (0, 1]");
  return alpha_circulant_eigenvalues(alpha, n_time);
}

// Which spatial operator the diagnosed preconditioner inverts in its inner
// solves: the Jacobian itself, or its tau-algebra surrogate (the variant the
// fast solver actually uses).
enum class InnerVariant { exact, tau };

// Dense spatial inner matrix for the chosen variant.
template <class Jacobian>
Eigen::MatrixXd dense_inner_matrix(const Jacobian& jac, InnerVariant inner,
                                   std::size_t limit = kDenseLimit) {
  const std::size_t ns = static_cast<std::size_t>(jac.dim());
  if (inner == InnerVariant::exact) return materialize(jac, limit);
  const TauOperator tau = jac.tau();
  return materialize_action(
      ns,
      [&tau](std::span<const double> in, std::span<double> out) {
        std::vector<std::complex<double>> zin(in.begin(), in.end()), zout(in.size());
        // shift 0, dt -1 turns the shifted action into a plain tau product.
        tau_apply_shifted(tau, 0.0, -1.0, zin, zout);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = zout[i].real();
      },
      limit);
}

// Dense all-at-once matrix C (x) I - dt I (x) A.
template <class Jacobian>
Eigen::MatrixXd dense_all_at_once(int n_time, const Jacobian& jac, double dt,
                                  std::size_t limit = kDenseLimit) {
  TimeStencil st(n_time);
  AllAtOnceOperator<Jacobian> op(st, jac, dt);
  return materialize(op, limit);
}

// Dense preconditioner C_alpha (x) I - dt I (x) M with M per InnerVariant.
template <class Jacobian>
Eigen::MatrixXd dense_alpha_preconditioner(int n_time, const Jacobian& jac, double dt,
                                           double alpha, InnerVariant inner,
                                           std::size_t limit = kDenseLimit) {
  const std::size_t dim =
      static_cast<std::size_t>(n_time) * static_cast<std::size_t>(jac.dim());
  detail::check_dense_limit(dim, limit);
  const Eigen::MatrixXd eye_t = Eigen::MatrixXd::Identity(n_time, n_time);
  const Eigen::MatrixXd eye_s = Eigen::MatrixXd::Identity(jac.dim(), jac.dim());
  return detail::kron(dense_alpha_stencil(n_time, alpha), eye_s) -
         dt * detail::kron(eye_t, dense_inner_matrix(jac, inner, limit));
}

namespace detail {

inline Eigen::FullPivLU<Eigen::MatrixXd> factor_invertible(const Eigen::MatrixXd& m,
                                                           const char* what) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible())
    throw std::invalid_argument(std::string(what) +
                                ": preconditioner matrix is singular");
  return lu;
}

}  // namespace detail

// Exact-inner dense preconditioner wrapped as an apply-style operator, for
// driving Krylov methods on small instances where the inner solves are LU
// factorizations instead of tau surrogates.
class DenseAlphaPreconditioner {
 public:
  template <class Jacobian>
  DenseAlphaPreconditioner(int n_time, const Jacobian& jac, double dt, double alpha,
                           std::size_t limit = kDenseLimit)
      : lu_(detail::factor_invertible(
            dense_alpha_preconditioner(n_time, jac, dt, alpha, InnerVariant::exact,
                                       limit),
            "DenseAlphaPreconditioner")) {}

  std::size_t dim() const { return static_cast<std::size_t>(lu_.rows()); }

  void apply(std::span<const double> v, std::span<double> out) const {
    const Eigen::Index n = lu_.rows();
    if (v.size() != static_cast<std::size_t>(n) || out.size() != v.size())
      throw std::invalid_argument("DenseAlphaPreconditioner: size mismatch");
    Eigen::Map<const Eigen::VectorXd> rhs(v.data(), n);
    Eigen::VectorXd x = lu_.solve(rhs);
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = x(i);
  }

 private:
  Eigen::FullPivLU<Eigen::MatrixXd> lu_;
};

struct SpectrumReport {
  std::vector<std::complex<double>> eigenvalues;
  double cluster_fraction = 0.0;  // fraction within kClusterRadius of 1 + 0i
  std::string description;
};

inline constexpr double kClusterRadius = 1e-2;

inline std::size_t count_within(const std::vector<std::complex<double>>& eigs,
                                std::complex<double> center, double radius) {
  std::size_t c = 0;
  for (const auto& e : eigs)
    if (std::abs(e - center) <= radius) ++c;
  return c;
}

// Eigenvalues and clustering statistic of an arbitrary dense matrix.
inline SpectrumReport spectrum_of(const Eigen::MatrixXd& m, std::string description) {
  detail::check_dense_limit(static_cast<std::size_t>(m.rows()), kDenseLimit);
  if (m.rows() != m.cols()) throw std::invalid_argument("spectrum_of: square input required");
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  SpectrumReport report;
  report.description = std::move(description);
  report.eigenvalues.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    report.eigenvalues.push_back(es.eigenvalues()(i));
  report.cluster_fraction =
      static_cast<double>(count_within(report.eigenvalues, {1.0, 0.0}, kClusterRadius)) /
      static_cast<double>(report.eigenvalues.size());
  return report;
}

// Spectrum of the preconditioned all-at-once matrix P^{-1} A_hat.
template <class Jacobian>
SpectrumReport preconditioned_spectrum(int n_time, const Jacobian& jac, double dt,
                                       double alpha, InnerVariant inner,
                                       std::size_t limit = kDenseLimit) {
  const Eigen::MatrixXd a = dense_all_at_once(n_time, jac, dt, limit);
  const auto lu = detail::factor_invertible(
      dense_alpha_preconditioner(n_time, jac, dt, alpha, inner, limit),
      "preconditioned_spectrum");
  std::ostringstream desc;
  desc << "preconditioned spectrum: n_time=" << n_time << " n_space=" << jac.dim()
       << " dt=" << dt << " alpha=" << alpha
       << " inner=" << (inner == InnerVariant::exact ? "exact" : "tau");
  return spectrum_of(lu.solve(a), desc.str());
}

// Numerical rank of the perturbation P^{-1} A_hat - I with exact inner
// solves: singular values above 1e-10 of the largest one count.
template <class Jacobian>
int perturbation_rank(int n_time, const Jacobian& jac, double dt, double alpha,
                      std::size_t limit = kDenseLimit) {
  const Eigen::MatrixXd a = dense_all_at_once(n_time, jac, dt, limit);
  const auto lu = detail::factor_invertible(
      dense_alpha_preconditioner(n_time, jac, dt, alpha, InnerVariant::exact, limit),
      "perturbation_rank");
  Eigen::MatrixXd l = lu.solve(a);
  l.diagonal().array() -= 1.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(l);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double floor = 1e-10 * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > floor) ++rank;
  return rank;
}

// Norm identities of the inverted time stencil plus singular-value bounds of
// the all-at-once matrix, checked against dense computations.
struct BoundsReport {
  int n_time = 0;
  double dt = 0.0;
  // Standard induced norms of C^{-1} and their closed forms.
  double norm_inf_cinv = 0.0;       // max row sum; closed form n_time
  double norm_one_cinv = 0.0;       // max column sum; closed form below
  double norm_inf_expected = 0.0;
  double norm_one_expected = 0.0;
  // Extreme singular values of the all-at-once matrix and their bounds.
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double sigma_max_bound = 0.0;     // 4 + dt ||A||_2
  double sigma_min_bound = 0.0;     // sqrt(6) / (3 n_time)
  double cond = 0.0;
  double cond_bound = 0.0;          // 2 sqrt(6) n_time + (sqrt(6)/2) T ||A||_2
  double spatial_norm2 = 0.0;       // ||A||_2

  bool norms_ok(double tol = 1e-12) const {
    return std::abs(norm_inf_cinv - norm_inf_expected) <=
               tol * std::max(1.0, norm_inf_expected) &&
           std::abs(norm_one_cinv - norm_one_expected) <=
               tol * std::max(1.0, norm_one_expected);
  }
  bool bounds_ok() const {
    return sigma_max <= sigma_max_bound * (1.0 + 1e-12) &&
           sigma_min >= sigma_min_bound * (1.0 - 1e-12) &&
           cond <= cond_bound * (1.0 + 1e-12);
  }
};

template <class Jacobian>
BoundsReport verify_bounds(int n_time, const Jacobian& jac, double dt,
                           std::size_t limit = kDenseLimit) {
  BoundsReport r;
  r.n_time = n_time;
  r.dt = dt;

  const Eigen::MatrixXd c = dense_time_stencil(n_time);
  const Eigen::MatrixXd cinv = c.partialPivLu().inverse();
  r.norm_inf_cinv = cinv.cwiseAbs().rowwise().sum().maxCoeff();
  r.norm_one_cinv = cinv.cwiseAbs().colwise().sum().maxCoeff();
  r.norm_inf_expected = static_cast<double>(n_time);
  r.norm_one_expected =
      1.5 * n_time - 0.75 * (1.0 - std::pow(3.0, -static_cast<double>(n_time)));

  const Eigen::MatrixXd a = materialize(jac, limit);
  Eigen::BDCSVD<Eigen::MatrixXd> spatial_svd(a);
  r.spatial_norm2 = spatial_svd.singularValues().size() > 0
                        ? spatial_svd.singularValues()(0)
                        : 0.0;

  const Eigen::MatrixXd all = dense_all_at_once(n_time, jac, dt, limit);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(all);
  const auto& sv = svd.singularValues();
  r.sigma_max = sv(0);
  r.sigma_min = sv(sv.size() - 1);
  r.cond = r.sigma_max / r.sigma_min;

  const double rt6 = std::sqrt(6.0);
  r.sigma_max_bound = 4.0 + dt * r.spatial_norm2;
  r.sigma_min_bound = rt6 / (3.0 * n_time);
  r.cond_bound = 2.0 * rt6 * n_time + 0.5 * rt6 * (dt * n_time) * r.spatial_norm2;
  return r;
}

// CSV block (header re,im) for spectrum scatter output.
inline std::string spectrum_csv(const std::vector<std::complex<double>>& eigs) {
  std::ostringstream out;
  out << "re,im\n" << std::setprecision(17);
  for (const auto& e : eigs) out << e.real() << ',' << e.imag() << '\n';
  return out.str();
}

}  // namespace fracpint

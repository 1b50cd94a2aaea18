#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstddef>
#include <sstream>

#include "maxvol/numerics.hpp"

namespace maxvol {

// Ellipsoidal rounding of the symmetric polytope conv{+-a_1, ..., +-a_n}.
// The ellipsoid is E = {x : x^T M(p)^{-1} x <= 1} for a near D-optimal
// design p; M(p) = sum_i p_i a_i a_i^T.

struct RoundingDesign {
  VectorXd weights;
  MatrixXd moment;
  double epsilon = 0.0;
  double maxLeverage = 0.0;
  std::size_t iterations = 0;
};

struct RoundedInstance {
  MatrixXd transform;  // T = M(p)^{-1/2}
  InstanceMatrix matrix;
  double logDetTransform = 0.0;
  RoundingDesign design;
};

inline std::size_t rounding_iteration_cap(std::size_t d, double epsilon) {
  return std::size_t(std::ceil(10.0 * double(d) * (std::log(double(d)) + 1.0 / epsilon + 1.0)));
}

/// Leverage scores a_j^T M^{-1} a_j for every column.
inline VectorXd leverage_scores(const MatrixXd& a, const MatrixXd& momentInverse) {
  return (a.array() * (momentInverse * a).array()).colwise().sum().transpose();
}

namespace detail {

inline MatrixXd spd_inverse(const MatrixXd& m) {
  Eigen::LLT<MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) fail(ErrorKind::Rank, "moment matrix is not positive definite");
  return llt.solve(MatrixXd::Identity(m.rows(), m.cols()));
}

inline MatrixXd moment_of(const MatrixXd& a, const VectorXd& p) {
  return a * p.asDiagonal() * a.transpose();
}

}  // namespace detail

/// Frank-Wolfe (Fedorov-Wynn) coordinate ascent on log det M(p), started
/// from uniform weights; stops once max leverage <= (1+eps) d.
inline RoundingDesign d_optimal_design(const InstanceMatrix& inst, double epsilon, std::size_t maxIterations = 0) {
  if (!(epsilon > 0.0)) fail(ErrorKind::Domain, "rounding needs epsilon > 0");
  const MatrixXd& a = inst.matrix();
  const auto n = a.cols();
  const double d = double(inst.d());
  const double target = (1.0 + epsilon) * d;
  if (maxIterations == 0) maxIterations = rounding_iteration_cap(inst.d(), epsilon);

  VectorXd p = VectorXd::Constant(n, 1.0 / double(n));
  MatrixXd moment = detail::moment_of(a, p);
  MatrixXd inverse = detail::spd_inverse(moment);
  double bestMax = std::numeric_limits<double>::infinity();

  for (std::size_t it = 0;; ++it) {
    const VectorXd lev = leverage_scores(a, inverse);
    Eigen::Index j = 0;
    for (Eigen::Index k = 1; k < n; ++k)
      if (lev(k) > lev(j)) j = k;
    const double top = lev(j);
    bestMax = std::min(bestMax, top);

    if (top <= target) {
      // confirm against a design rebuilt from scratch before accepting
      p /= p.sum();
      moment = detail::moment_of(a, p);
      inverse = detail::spd_inverse(moment);
      const double confirmed = leverage_scores(a, inverse).maxCoeff();
      if (confirmed <= target) return {p, moment, epsilon, confirmed, it};
      continue;
    }
    if (it >= maxIterations) {
      std::ostringstream msg;
      msg << "D-optimal design did not reach max leverage <= " << target << " within " << maxIterations
          << " iterations (best " << bestMax << ")";
      throw IterationLimitError(msg.str(), bestMax);
    }

    const double step = (top / d - 1.0) / (top - 1.0);
    p *= (1.0 - step);
    p(j) += step;

    const VectorXd aj = a.col(j);
    moment = (1.0 - step) * moment + step * aj * aj.transpose();
    // step = 1 happens for d = 1 and makes the update below divide by zero
    if ((it + 1) % 32 == 0 || step > 0.5) {
      inverse = detail::spd_inverse(moment);
    } else {
      // Sherman-Morrison on (1-step) (M + s a a^T), s = step / (1-step)
      const double s = step / (1.0 - step);
      const VectorXd ma = inverse * aj;
      inverse = (inverse - (s / (1.0 + s * top)) * ma * ma.transpose()) / (1.0 - step);
    }
  }
}

/// Symmetric M^{-1/2} by eigendecomposition; eigenvalues are floored at
/// 1e-14 * trace.
inline MatrixXd inverse_sqrt_spd(const MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) fail(ErrorKind::InternalConsistency, "eigendecomposition failed");
  const double floor = 1e-14 * m.trace();
  VectorXd inv = eig.eigenvalues().unaryExpr([floor](double v) { return 1.0 / std::sqrt(std::max(v, floor)); });
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

inline RoundedInstance round_instance(const InstanceMatrix& inst, double epsilon) {
  RoundingDesign design = d_optimal_design(inst, epsilon);
  MatrixXd t = inverse_sqrt_spd(design.moment);
  const double logDetT = -0.5 * log_abs_det(design.moment).logAbsDet;
  InstanceMatrix rounded(t * inst.matrix());
  return {std::move(t), std::move(rounded), logDetT, std::move(design)};
}

}  // namespace maxvol

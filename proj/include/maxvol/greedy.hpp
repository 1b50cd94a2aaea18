#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "maxvol/numerics.hpp"
#include "maxvol/rounding.hpp"

namespace maxvol {

/// Result of the greedy max-norm selection.
///
/// `working` holds the columns the greedy actually ran on (T*A when rounded,
/// A otherwise) and `frame` the orthonormal picked directions u_i = v_i/rho_i,
/// so certificates can be evaluated in the picked frame without rotating data.
struct GreedyTrace {
  std::vector<std::size_t> pickedIndices;  // in pick order
  std::vector<double> rho;
  double epsilon = 0.0;
  bool rounded = false;
  double logAbsDetOutput = kNegInf;  // ln|det A_B| in the original matrix
  int signOutput = 0;
  double logDetTransform = 0.0;  // ln|det T|, 0 without rounding
  MatrixXd working;
  MatrixXd frame;

  std::size_t d() const { return rho.size(); }

  double log_rho_product() const {
    double s = 0.0;
    for (double r : rho) s += std::log(r);
    return s;
  }

  Basis basis() const {
    std::vector<std::size_t> idx = pickedIndices;
    std::sort(idx.begin(), idx.end());
    return {std::move(idx), logAbsDetOutput, signOutput};
  }
};

struct GreedyPicks {
  std::vector<std::size_t> indices;
  std::vector<double> norms;
  MatrixXd frame;
  std::vector<VectorXd> projectedNorms;  // column norms seen at each round
};

/// The greedy core on explicit columns: d rounds of "pick the largest
/// projected column, project everything onto its orthogonal complement".
/// Ties go to the smallest column index.
inline GreedyPicks greedy_max_norm_picks(const MatrixXd& columns, double tolerance) {
  const auto d = columns.rows();
  const auto n = columns.cols();
  GreedyPicks out;
  out.frame = MatrixXd::Zero(d, d);
  MatrixXd work = columns;
  std::vector<bool> taken(std::size_t(n), false);
  for (Eigen::Index round = 0; round < d; ++round) {
    const VectorXd norms = work.colwise().norm().transpose();
    out.projectedNorms.push_back(norms);
    Eigen::Index best = -1;
    double bestNorm = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (taken[std::size_t(j)]) continue;
      if (norms(j) > bestNorm) {
        bestNorm = norms(j);
        best = j;
      }
    }
    if (best < 0 || !(bestNorm > tolerance))
      fail(ErrorKind::Rank, "greedy ran out of independent columns after " + std::to_string(round) + " picks");
    taken[std::size_t(best)] = true;
    out.indices.push_back(std::size_t(best));
    out.norms.push_back(bestNorm);
    const VectorXd v = work.col(best);
    out.frame.col(round) = v / bestNorm;
    work = project_out(work, v, tolerance);
  }
  return out;
}

/// Khachiyan's greedy: optional rounding, then d max-norm picks with
/// projection. The output basis is nonsingular on full-rank input.
inline GreedyTrace khachiyan_greedy(const InstanceMatrix& a, double epsilon, bool applyRounding) {
  GreedyTrace trace;
  trace.epsilon = epsilon;
  trace.rounded = applyRounding;
  double tol = a.tolerance();
  if (applyRounding) {
    RoundedInstance r = round_instance(a, epsilon);
    trace.working = r.matrix.matrix();
    trace.logDetTransform = r.logDetTransform;
    tol = r.matrix.tolerance();
  } else {
    trace.working = a.matrix();
  }
  GreedyPicks picks = greedy_max_norm_picks(trace.working, tol);
  trace.pickedIndices = std::move(picks.indices);
  trace.rho = std::move(picks.norms);
  trace.frame = std::move(picks.frame);

  const Basis out = make_basis(a, trace.pickedIndices);
  if (out.singular()) fail(ErrorKind::InternalConsistency, "greedy produced a singular basis");
  trace.logAbsDetOutput = out.logAbsDet;
  trace.signOutput = out.sign;
  return trace;
}

// Approximation factors, returned as natural logs.

/// ((1+eps) d)^{(d-1)/2}
inline double khachiyan_log_factor(std::size_t d, double epsilon) {
  return 0.5 * double(d - 1) * std::log((1.0 + epsilon) * double(d));
}

/// (e ln((1+eps) d))^{d/2} as written; below 1 when ln((1+eps)d) < 1/e.
inline double improved_log_factor_closed_form(std::size_t d, double epsilon) {
  return 0.5 * double(d) * std::log(std::numbers::e * std::log((1.0 + epsilon) * double(d)));
}

/// Guaranteed factor (e * max(1, ln((1+eps) d)))^{d/2}; the group count
/// is always at least one, which the closed form ignores for tiny (1+eps)d.
inline double improved_log_factor(std::size_t d, double epsilon) {
  return 0.5 * double(d) * std::log(std::numbers::e * std::max(1.0, std::log((1.0 + epsilon) * double(d))));
}

struct ApproximationFactors {
  double logKhachiyan = 0.0;
  double logImproved = 0.0;
};

inline ApproximationFactors certify_bounds(const GreedyTrace& trace) {
  if (!trace.rounded)
    fail(ErrorKind::CertificateUnavailable, "approximation certificates require a rounded greedy run");
  return {khachiyan_log_factor(trace.d(), trace.epsilon), improved_log_factor(trace.d(), trace.epsilon)};
}

/// Grouped axis-aligned ellipsoid certifying Delta_max <= alpha^d prod(rho).
struct GroupingCertificate {
  std::vector<std::vector<std::size_t>> groups;  // 0-based pick positions
  std::vector<double> r;                         // largest rho per group
  double alpha = 0.0;                            // sqrt(e t)
  std::vector<double> axisLengths;               // per coordinate: r_{j(i)} / sqrt(e)
  bool axesAligned = false;                      // (a)
  bool picksOutside = false;                     // (b)
  bool inputsContained = false;                  // (c)
  double maxConstraint = 0.0;                    // max over columns of the (c) left side

  std::size_t t() const { return groups.size(); }
  double log_bound(double logRhoProduct) const { return double(axisLengths.size()) * std::log(alpha) + logRhoProduct; }
};

/// Bands rho_1 e^{-(j-1)/2} >= rho_i > rho_1 e^{-j/2}; empty bands dropped.
inline GroupingCertificate group_norm_profile(std::span<const double> rho) {
  if (rho.empty()) fail(ErrorKind::Dimension, "empty norm profile");
  GroupingCertificate cert;
  const double top = rho[0];
  long current = -1;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0)) fail(ErrorKind::Domain, "norm profile must be positive");
    const double x = 2.0 * std::log(top / rho[i]);
    long band = x <= 0.0 ? 1 : long(std::floor(x)) + 1;
    // keep groups consecutive if float noise makes rho wiggle
    band = std::max(band, current);
    if (band != current) {
      cert.groups.emplace_back();
      cert.r.push_back(rho[i]);
      current = band;
    }
    cert.groups.back().push_back(i);
  }
  const double sqrtE = std::sqrt(std::numbers::e);
  cert.alpha = std::sqrt(std::numbers::e * double(cert.groups.size()));
  cert.axisLengths.resize(rho.size());
  for (std::size_t j = 0; j < cert.groups.size(); ++j)
    for (std::size_t i : cert.groups[j]) cert.axisLengths[i] = cert.r[j] / sqrtE;
  return cert;
}

/// Builds the grouped ellipsoid for a rounded trace and checks the three
/// ellipsoid conditions in the picked orthonormal frame.
inline GroupingCertificate grouping_certificate(const GreedyTrace& trace, double relTol = 1e-8) {
  if (!trace.rounded)
    fail(ErrorKind::CertificateUnavailable, "grouping certificate requires a rounded greedy run");
  const std::size_t d = trace.d();
  const double spread = std::sqrt((1.0 + trace.epsilon) * double(d)) * (1.0 + relTol);
  if (trace.rho.front() / trace.rho.back() > spread)
    fail(ErrorKind::InternalConsistency, "rho_1 / rho_d exceeds sqrt((1+eps) d)");

  GroupingCertificate cert = group_norm_profile(trace.rho);

  // (a) principal axes are the frame directions: frame must be orthonormal
  const MatrixXd gram = trace.frame.transpose() * trace.frame;
  cert.axesAligned = (gram - MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-9;

  // (b) no v_i = rho_i u_i lies inside the ellipsoid
  cert.picksOutside = true;
  for (std::size_t i = 0; i < d; ++i)
    if (trace.rho[i] < cert.axisLengths[i] * (1.0 - relTol)) cert.picksOutside = false;

  // (c) every column inside alpha * E, i.e. sum_j |a^(j)|^2 / (r_j^2/e) <= e t
  const MatrixXd coords = trace.frame.transpose() * trace.working;
  const double bound = std::numbers::e * double(cert.t());
  cert.maxConstraint = 0.0;
  for (Eigen::Index c = 0; c < coords.cols(); ++c) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double q = coords(Eigen::Index(i), c) / cert.axisLengths[i];
      lhs += q * q;
    }
    cert.maxConstraint = std::max(cert.maxConstraint, lhs);
  }
  cert.inputsContained = cert.maxConstraint <= bound * (1.0 + relTol);

  if (!cert.axesAligned || !cert.picksOutside || !cert.inputsContained)
    fail(ErrorKind::InternalConsistency, "grouping ellipsoid conditions violated (a=" +
                                             std::to_string(cert.axesAligned) + " b=" +
                                             std::to_string(cert.picksOutside) + " c=" +
                                             std::to_string(cert.inputsContained) + ")");
  return cert;
}

}  // namespace maxvol

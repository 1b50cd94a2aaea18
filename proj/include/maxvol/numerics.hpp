#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maxvol/error.hpp"

namespace maxvol {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Relative rank tolerance: a pivot or projected norm counts as zero when it
/// falls below this factor times the largest column norm of the input.
inline constexpr double kRankTolerance = 1e-10;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double max_column_norm(const MatrixXd& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::max(best, m.col(j).stableNorm());
  return best;
}

inline double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) return kNegInf;
  return std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1);
}

/// ln(sum(exp(xs))); -inf for an empty range or all -inf terms.
inline double log_sum_exp(std::span<const double> xs) {
  double top = kNegInf;
  for (double x : xs) top = std::max(top, x);
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - top);
  return top + std::log(acc);
}

struct LogDet {
  double logAbsDet = kNegInf;
  int sign = 0;

  bool singular() const { return sign == 0; }
};

/// ln|det| of a square matrix via LU with partial pivoting, accumulated in
/// the log domain. `tolerance` is the absolute pivot threshold; a negative
/// value means kRankTolerance times the largest column norm of `square`.
inline LogDet log_abs_det(const MatrixXd& square, double tolerance = -1.0) {
  if (square.rows() != square.cols())
    fail(ErrorKind::Dimension, "log_abs_det needs a square matrix, got " + std::to_string(square.rows()) +
                                   "x" + std::to_string(square.cols()));
  const Eigen::Index d = square.rows();
  if (d == 0) return {0.0, 1};
  if (tolerance < 0.0) tolerance = kRankTolerance * max_column_norm(square);

  MatrixXd lu = square;
  LogDet out{0.0, 1};
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::Index pivot = k;
    double best = std::abs(lu(k, k));
    for (Eigen::Index i = k + 1; i < d; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        pivot = i;
      }
    }
    if (!(best > tolerance)) return {};
    if (pivot != k) {
      lu.row(k).swap(lu.row(pivot));
      out.sign = -out.sign;
    }
    const double p = lu(k, k);
    if (p < 0) out.sign = -out.sign;
    out.logAbsDet += std::log(std::abs(p));
    for (Eigen::Index i = k + 1; i < d; ++i) {
      const double f = lu(i, k) / p;
      if (f != 0.0) lu.row(i).tail(d - k - 1) -= f * lu.row(k).tail(d - k - 1);
    }
  }
  return out;
}

/// Remove the component along `direction` from every column, with one
/// re-orthogonalization pass for columns that lose more than 1 - 1/sqrt(2)
/// of their norm.
inline MatrixXd project_out(const MatrixXd& columns, const VectorXd& direction, double tolerance) {
  if (direction.size() != columns.rows())
    fail(ErrorKind::Dimension, "project_out: direction length does not match column length");
  const double len = direction.norm();
  if (!(len > tolerance) || len == 0.0)
    fail(ErrorKind::DegenerateDirection, "project_out: direction norm " + std::to_string(len) +
                                             " is below the rank tolerance");
  const VectorXd u = direction / len;
  MatrixXd out = columns;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    auto w = out.col(j);
    const double before = w.norm();
    w -= w.dot(u) * u;
    if (w.norm() < before / std::sqrt(2.0)) w -= w.dot(u) * u;
  }
  return out;
}

inline MatrixXd project_out(const MatrixXd& columns, const VectorXd& direction) {
  const double scale = std::max(max_column_norm(columns), direction.norm());
  return project_out(columns, direction, kRankTolerance * scale);
}

/// Number of columns a greedy max-norm Gram-Schmidt can extract before every
/// residual drops below `tolerance`.
inline std::size_t numeric_rank(const MatrixXd& m, double tolerance) {
  MatrixXd work = m;
  std::size_t rank = 0;
  for (Eigen::Index step = 0; step < std::min(m.rows(), m.cols()); ++step) {
    Eigen::Index best = -1;
    double bestNorm = tolerance;
    for (Eigen::Index j = 0; j < work.cols(); ++j) {
      const double nrm = work.col(j).norm();
      if (nrm > bestNorm) {
        bestNorm = nrm;
        best = j;
      }
    }
    if (best < 0) break;
    const VectorXd dir = work.col(best);
    work = project_out(work, dir, tolerance);
    ++rank;
  }
  return rank;
}

/// A d x n real matrix of full row rank; columns are the MVD input vectors.
class InstanceMatrix {
 public:
  explicit InstanceMatrix(MatrixXd columns) : data_(std::move(columns)) {
    const auto d = data_.rows();
    const auto n = data_.cols();
    if (d < 1 || n < d)
      fail(ErrorKind::Dimension, "instance needs n >= d >= 1, got d=" + std::to_string(d) +
                                     " n=" + std::to_string(n));
    if (!data_.allFinite()) fail(ErrorKind::Domain, "instance has non-finite entries");
    scale_ = max_column_norm(data_);
    if (numeric_rank(data_, tolerance()) != std::size_t(d))
      fail(ErrorKind::Rank, "instance is not of full row rank " + std::to_string(d));
  }

  static InstanceMatrix from_columns(const std::vector<std::vector<double>>& cols) {
    if (cols.empty()) fail(ErrorKind::Dimension, "instance has no columns");
    const std::size_t d = cols.front().size();
    MatrixXd m{Eigen::Index(d), Eigen::Index(cols.size())};
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != d) fail(ErrorKind::Dimension, "ragged column " + std::to_string(j));
      for (std::size_t i = 0; i < d; ++i) m(Eigen::Index(i), Eigen::Index(j)) = cols[j][i];
    }
    return InstanceMatrix(std::move(m));
  }

  std::size_t d() const { return std::size_t(data_.rows()); }
  std::size_t n() const { return std::size_t(data_.cols()); }
  const MatrixXd& matrix() const { return data_; }
  auto column(std::size_t j) const { return data_.col(Eigen::Index(j)); }

  /// Largest column norm of the input.
  double scale() const { return scale_; }
  /// Absolute threshold below which pivots and projected norms are zero.
  double tolerance() const { return kRankTolerance * scale_; }

  MatrixXd submatrix(std::span<const std::size_t> indices) const {
    MatrixXd out(data_.rows(), Eigen::Index(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (indices[k] >= n()) fail(ErrorKind::Dimension, "column index out of range");
      out.col(Eigen::Index(k)) = data_.col(Eigen::Index(indices[k]));
    }
    return out;
  }

 private:
  MatrixXd data_;
  double scale_ = 0.0;
};

/// d column indices (sorted) with the signed log-determinant of A_B.
struct Basis {
  std::vector<std::size_t> indices;
  double logAbsDet = kNegInf;
  int sign = 0;

  bool singular() const { return sign == 0; }
};

/// Evaluates the basis of A indexed by `indices` (sorted on return).
inline Basis make_basis(const InstanceMatrix& a, std::vector<std::size_t> indices) {
  if (indices.size() != a.d())
    fail(ErrorKind::Dimension, "basis needs exactly d = " + std::to_string(a.d()) + " indices");
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    fail(ErrorKind::Domain, "basis indices must be distinct");
  const LogDet ld = log_abs_det(a.submatrix(indices), a.tolerance());
  return {std::move(indices), ld.logAbsDet, ld.sign};
}

/// Deterministic ordering for maximization: larger log|det| wins; values
/// within `tieTolerance` fall back to the lexicographically smaller index set.
inline bool better_basis(const Basis& cand, const Basis& incumbent, double tieTolerance = 1e-9) {
  if (incumbent.singular()) return !cand.singular();
  if (cand.singular()) return false;
  if (cand.logAbsDet > incumbent.logAbsDet + tieTolerance) return true;
  if (cand.logAbsDet < incumbent.logAbsDet - tieTolerance) return false;
  return cand.indices < incumbent.indices;
}

inline MatrixXd gram_matrix(const InstanceMatrix& a) { return a.matrix() * a.matrix().transpose(); }

}  // namespace maxvol

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "maxvol/numerics.hpp"

namespace maxvol {

// Exhaustive ground-truth solvers. Everything here is exponential in d and
// guarded accordingly.

inline constexpr std::size_t kMaxOracleColumns = 40;
inline constexpr double kMaxOracleSubsets = 1e7;
inline constexpr std::size_t kMaxSimplexPoints = 20;

struct EnumerationStats {
  std::size_t nonsingular = 0;
  std::size_t singular = 0;
};

inline void check_basis_guard(std::size_t n, std::size_t d) {
  if (n > kMaxOracleColumns)
    fail(ErrorKind::TooLarge, "exact oracle limited to n <= 40 columns, got " + std::to_string(n));
  if (std::exp(log_binomial(n, d)) > kMaxOracleSubsets * (1 + 1e-12))
    fail(ErrorKind::TooLarge, "C(" + std::to_string(n) + "," + std::to_string(d) + ") exceeds 1e7 subsets");
}

namespace detail {

struct ColexEnumerator {
  const InstanceMatrix& a;
  const std::function<void(const Basis&)>& visit;
  std::size_t d;
  double tol;
  std::vector<std::size_t> chosen;  // chosen[k] fills slot k; slots filled from d-1 down
  MatrixXd frame;                   // orthonormal directions of the chosen prefix
  EnumerationStats stats;

  void descend(std::size_t slot, std::size_t upper, std::size_t depth) {
    // slot `slot` takes an index in [slot, upper)
    for (std::size_t c = slot; c < upper; ++c) {
      VectorXd w = a.column(c);
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t q = 0; q < depth; ++q) w -= w.dot(frame.col(Eigen::Index(q))) * frame.col(Eigen::Index(q));
      const double nrm = w.norm();
      if (!(nrm > tol)) {
        // every completion of this prefix is singular
        stats.singular += std::size_t(std::llround(std::exp(log_binomial(c, slot))));
        continue;
      }
      chosen[slot] = c;
      frame.col(Eigen::Index(depth)) = w / nrm;
      if (slot == 0) {
        leaf();
      } else {
        descend(slot - 1, c, depth + 1);
      }
    }
  }

  void leaf() {
    const LogDet ld = log_abs_det(a.submatrix(chosen), tol);
    if (ld.singular()) {
      ++stats.singular;
      return;
    }
    ++stats.nonsingular;
    visit(Basis{chosen, ld.logAbsDet, ld.sign});
  }
};

}  // namespace detail

/// Streams every nonsingular d-subset of columns in colexicographic order.
/// Prefixes that are already linearly dependent are pruned (and counted as
/// singular) using an incremental Gram-Schmidt frame.
inline EnumerationStats for_each_basis(const InstanceMatrix& a, const std::function<void(const Basis&)>& visit) {
  check_basis_guard(a.n(), a.d());
  detail::ColexEnumerator e{a, visit, a.d(), a.tolerance(), std::vector<std::size_t>(a.d()),
                            MatrixXd::Zero(Eigen::Index(a.d()), Eigen::Index(a.d())), {}};
  e.descend(a.d() - 1, a.n(), 0);
  return e.stats;
}

inline std::vector<Basis> enumerate_bases(const InstanceMatrix& a, EnumerationStats* stats = nullptr) {
  std::vector<Basis> out;
  const auto s = for_each_basis(a, [&](const Basis& b) { out.push_back(b); });
  if (stats) *stats = s;
  return out;
}

/// Largest |det(A_B)| over all bases; ties within 1e-9 (log domain) go to
/// the lexicographically smallest index set.
inline Basis max_subdet_bruteforce(const InstanceMatrix& a) {
  Basis best;
  for_each_basis(a, [&](const Basis& b) {
    if (better_basis(b, best)) best = b;
  });
  if (best.singular()) fail(ErrorKind::Rank, "every d-subset of columns is singular");
  return best;
}

/// ln(sum over bases of det(A_B)^2), the left side of Cauchy-Binet.
inline double log_sum_squared_dets(const InstanceMatrix& a) {
  std::vector<double> terms;
  for_each_basis(a, [&](const Basis& b) { terms.push_back(2.0 * b.logAbsDet); });
  return log_sum_exp(terms);
}

/// n points in R^d stored as columns; affinely spanning R^d.
class PointSet {
 public:
  explicit PointSet(MatrixXd points) : data_(std::move(points)) {
    const auto d = data_.rows();
    const auto n = data_.cols();
    if (d < 1 || n < d + 1)
      fail(ErrorKind::Dimension, "point set needs at least d+1 points in dimension d >= 1");
    if (!data_.allFinite()) fail(ErrorKind::Domain, "point set has non-finite coordinates");
    MatrixXd diffs = data_.rightCols(n - 1).colwise() - data_.col(0);
    scale_ = max_column_norm(diffs);
    if (numeric_rank(diffs, tolerance()) != std::size_t(d))
      fail(ErrorKind::Rank, "points do not affinely span dimension " + std::to_string(d));
  }

  std::size_t d() const { return std::size_t(data_.rows()); }
  std::size_t n() const { return std::size_t(data_.cols()); }
  const MatrixXd& matrix() const { return data_; }
  auto point(std::size_t i) const { return data_.col(Eigen::Index(i)); }
  double tolerance() const { return kRankTolerance * scale_; }

 private:
  MatrixXd data_;
  double scale_ = 0.0;
};

struct SimplexSolution {
  std::vector<std::size_t> vertexIndices;  // d+1 point indices, ascending
  double logVolume = kNegInf;
};

inline double log_factorial(std::size_t d) { return std::lgamma(double(d) + 1); }

/// ln vol of the simplex with the given vertices: ln|det(edges)| - ln d!.
inline double simplex_log_volume(const PointSet& pts, std::span<const std::size_t> vertices) {
  const auto d = Eigen::Index(pts.d());
  MatrixXd edges(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    edges.col(k) = pts.point(vertices[std::size_t(k) + 1]) - pts.point(vertices[0]);
  const LogDet ld = log_abs_det(edges, pts.tolerance());
  return ld.singular() ? kNegInf : ld.logAbsDet - log_factorial(pts.d());
}

inline bool better_simplex(const SimplexSolution& cand, const SimplexSolution& incumbent,
                           double tieTolerance = 1e-9) {
  if (cand.logVolume == kNegInf) return false;
  if (incumbent.logVolume == kNegInf) return true;
  if (cand.logVolume > incumbent.logVolume + tieTolerance) return true;
  if (cand.logVolume < incumbent.logVolume - tieTolerance) return false;
  return cand.vertexIndices < incumbent.vertexIndices;
}

/// Largest-volume simplex with vertices among the given points, by
/// enumerating all (d+1)-subsets in lexicographic order.
inline SimplexSolution max_simplex_bruteforce(const PointSet& pts) {
  const std::size_t n = pts.n();
  const std::size_t k = pts.d() + 1;
  if (n > kMaxSimplexPoints)
    fail(ErrorKind::TooLarge, "simplex oracle limited to n <= 20 points, got " + std::to_string(n));
  if (std::exp(log_binomial(n, k)) > kMaxOracleSubsets * (1 + 1e-12))
    fail(ErrorKind::TooLarge, "C(n,d+1) exceeds 1e7 subsets");

  SimplexSolution best;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    SimplexSolution cand{idx, simplex_log_volume(pts, idx)};
    if (better_simplex(cand, best)) best = cand;
    // next lexicographic k-subset
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (best.logVolume == kNegInf) fail(ErrorKind::Rank, "all simplices are degenerate");
  return best;
}

}  // namespace maxvol

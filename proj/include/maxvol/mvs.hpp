#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "maxvol/greedy.hpp"
#include "maxvol/oracle.hpp"

namespace maxvol {

// Maximum volume simplex via MVD, and MVD via an MVS solver.

enum class SubSolver { Exact, Greedy };

struct AnchorOptions {
  SubSolver solver = SubSolver::Exact;
  double epsilon = 0.25;  // greedy only
  bool round = true;      // greedy only
};

/// For every anchor a_i solve MVD on the d x (n-1) difference matrix
/// [a_j - a_i]_{j != i}; the best (anchor + basis) is the returned simplex.
/// Anchors are tried in input order and equal volumes keep the earliest.
inline SimplexSolution mvs_via_anchors(const PointSet& pts, const AnchorOptions& opt = {}) {
  const std::size_t n = pts.n();
  const auto d = Eigen::Index(pts.d());
  SimplexSolution best;
  for (std::size_t anchor = 0; anchor < n; ++anchor) {
    MatrixXd diffs(d, Eigen::Index(n - 1));
    std::vector<std::size_t> map;
    for (std::size_t j = 0, k = 0; j < n; ++j) {
      if (j == anchor) continue;
      diffs.col(Eigen::Index(k++)) = pts.point(j) - pts.point(anchor);
      map.push_back(j);
    }
    const InstanceMatrix sub(std::move(diffs));
    Basis b;
    if (opt.solver == SubSolver::Exact) {
      b = max_subdet_bruteforce(sub);
    } else {
      b = khachiyan_greedy(sub, opt.epsilon, opt.round).basis();
    }
    SimplexSolution cand;
    cand.vertexIndices.push_back(anchor);
    for (std::size_t k : b.indices) cand.vertexIndices.push_back(map[k]);
    std::sort(cand.vertexIndices.begin(), cand.vertexIndices.end());
    cand.logVolume = b.logAbsDet - log_factorial(pts.d());
    const bool strictlyBetter = best.logVolume == kNegInf || cand.logVolume > best.logVolume + 1e-9;
    if (strictlyBetter) best = std::move(cand);
  }
  if (best.logVolume == kNegInf) fail(ErrorKind::Rank, "no anchor admits a nondegenerate simplex");
  return best;
}

using MvsSolver = std::function<SimplexSolution(const PointSet&)>;

inline MvsSolver exact_mvs_solver() {
  return [](const PointSet& p) { return max_simplex_bruteforce(p); };
}

inline MvsSolver anchor_mvs_solver(AnchorOptions opt) {
  return [opt](const PointSet& p) { return mvs_via_anchors(p, opt); };
}

/// Solves MVS on {0, a_1, ..., a_n}, splits conv(S, 0) into the d+1
/// simplices spanned by 0 and d vertices of S, and returns the largest
/// nondegenerate one as a basis. An alpha-approximate MVS solver yields an
/// alpha (d+1)-approximate basis.
inline Basis mvd_via_mvs(const InstanceMatrix& a, const MvsSolver& solver) {
  const auto d = Eigen::Index(a.d());
  MatrixXd pts = MatrixXd::Zero(d, Eigen::Index(a.n() + 1));
  pts.rightCols(Eigen::Index(a.n())) = a.matrix();
  const SimplexSolution s = solver(PointSet(std::move(pts)));
  if (s.vertexIndices.size() != a.d() + 1) fail(ErrorKind::InternalConsistency, "MVS solver returned a non-simplex");

  Basis best;
  for (std::size_t drop = 0; drop < s.vertexIndices.size(); ++drop) {
    std::vector<std::size_t> cols;
    bool hasOrigin = false;
    for (std::size_t k = 0; k < s.vertexIndices.size(); ++k) {
      if (k == drop) continue;
      if (s.vertexIndices[k] == 0) hasOrigin = true;
      else cols.push_back(s.vertexIndices[k] - 1);
    }
    if (hasOrigin) continue;  // contains 0 twice: degenerate
    const Basis cand = make_basis(a, cols);
    if (better_basis(cand, best)) best = cand;
  }
  if (best.singular()) fail(ErrorKind::Rank, "every sub-simplex of the triangulation is degenerate");
  return best;
}

}  // namespace maxvol

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "maxvol/greedy.hpp"
#include "maxvol/numerics.hpp"

namespace maxvol {

inline bool is_power_of_two(std::size_t d) { return d != 0 && (d & (d - 1)) == 0; }

/// Sylvester's recursion H_{2m} = [[H_m, H_m], [H_m, -H_m]].
inline Eigen::MatrixXi sylvester_hadamard(std::size_t d) {
  if (!is_power_of_two(d)) fail(ErrorKind::Domain, "Sylvester Hadamard needs a power of two, got " + std::to_string(d));
  Eigen::MatrixXi h = Eigen::MatrixXi::Ones(1, 1);
  while (std::size_t(h.rows()) < d) {
    const auto m = h.rows();
    Eigen::MatrixXi next(2 * m, 2 * m);
    next << h, h, h, -h;
    h = std::move(next);
  }
  return h;
}

enum class Distribution { Gauss, Sign, Integer };

inline Distribution parse_distribution(const std::string& s) {
  if (s == "gauss") return Distribution::Gauss;
  if (s == "sign" || s == "uniform+-1" || s == "uniform±1") return Distribution::Sign;
  if (s == "int" || s == "integer") return Distribution::Integer;
  fail(ErrorKind::Domain, "unknown distribution '" + s + "' (gauss|sign|int)");
}

inline const char* to_string(Distribution dist) {
  switch (dist) {
    case Distribution::Gauss: return "gauss";
    case Distribution::Sign: return "sign";
    case Distribution::Integer: return "int";
  }
  return "?";
}

/// Random d x n instance, redrawn (up to 100 attempts) until full row rank.
/// Integer entries are uniform in [-intRange, intRange].
inline InstanceMatrix random_instance(std::size_t d, std::size_t n, Distribution dist, std::uint64_t seed,
                                      int intRange = 9) {
  if (d < 1 || n < d) fail(ErrorKind::Dimension, "random_instance needs n >= d >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> ints(-intRange, intRange);
  for (int attempt = 0; attempt < 100; ++attempt) {
    MatrixXd m{Eigen::Index(d), Eigen::Index(n)};
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        switch (dist) {
          case Distribution::Gauss: m(i, j) = gauss(rng); break;
          case Distribution::Sign: m(i, j) = coin(rng) ? 1.0 : -1.0; break;
          case Distribution::Integer: m(i, j) = double(ints(rng)); break;
        }
      }
    if (numeric_rank(m, kRankTolerance * max_column_norm(m)) == d) return InstanceMatrix(std::move(m));
  }
  fail(ErrorKind::Generation, "could not draw a full-rank " + std::to_string(d) + "x" + std::to_string(n) +
                                  " instance in 100 attempts");
}

/// The tightness family [D | sqrt(c^2-1)/c D H | E], c = d^{1/(2(d-1))}.
/// Columns 0..d-1 are D, d..2d-1 the scaled D H block, the rest E.
struct AdversarialInstance {
  std::size_t d = 0;
  double c = 0.0;
  InstanceMatrix matrix;
  std::size_t eColumnCount = 0;
  double predictedRatioLog = 0.0;  // (d/2) ln(0.748 ln d)
  std::uint64_t seed = 0;
  // E is random directions scaled to norm c; unit-ball containment of
  // conv(E) is not certified.
  bool eBallContainmentRelaxed = true;
};

inline double adversarial_c(std::size_t d) { return std::pow(double(d), 1.0 / (2.0 * double(d - 1))); }

inline double predicted_ratio_log(std::size_t d) { return 0.5 * double(d) * std::log(0.748 * std::log(double(d))); }

inline AdversarialInstance adversarial_instance(std::size_t d, std::size_t eColumns, std::uint64_t seed) {
  if (d < 4 || !is_power_of_two(d)) fail(ErrorKind::Domain, "adversarial family needs d a power of two >= 4");
  if (eColumns < d) fail(ErrorKind::Domain, "adversarial family needs at least d columns in E");
  const double c = adversarial_c(d);
  const auto dd = Eigen::Index(d);

  MatrixXd diag = MatrixXd::Zero(dd, dd);
  for (Eigen::Index i = 0; i < dd; ++i) diag(i, i) = std::pow(c, double(dd - 1 - i));
  const MatrixXd h = sylvester_hadamard(d).cast<double>();
  const double scale = std::sqrt(c * c - 1.0) / c;

  MatrixXd a(dd, 2 * dd + Eigen::Index(eColumns));
  a.leftCols(dd) = diag;
  a.middleCols(dd, dd) = scale * diag * h;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t k = 0; k < eColumns; ++k) {
    VectorXd v(dd);
    do {
      for (Eigen::Index i = 0; i < dd; ++i) v(i) = gauss(rng);
    } while (v.norm() < 1e-6);
    a.col(2 * dd + Eigen::Index(k)) = c * v / v.norm();
  }
  return {d, c, InstanceMatrix(std::move(a)), eColumns, predicted_ratio_log(d), seed, true};
}

struct AdversarialReport {
  std::vector<std::size_t> picks;
  std::vector<double> rho;
  bool leadingDPicks = false;    // first d-1 picks are D columns 0..d-2
  bool finalPickFromE = false;
  double finalPickNorm = 0.0;
  bool finalNormBounded = false; // <= c (1 + 1e-9)
  double maxChainError = 0.0;    // worst relative error of the projected-norm identity
  bool chainStrict = false;      // DH projection strictly below the next D column
  double achievedRatioLog = 0.0;
  double predictedRatioLog = 0.0;
  double greedyLogDet = 0.0;
  bool ok = false;
};

/// Runs the greedy without rounding and checks the pick pattern, the final
/// pick norm, the projected-norm chain of the DH block and the achieved
/// ratio |det(DH block)| / (c |det D|).
inline AdversarialReport verify_adversarial_behavior(const AdversarialInstance& inst, bool throwOnFailure = true) {
  const std::size_t d = inst.d;
  const double c = inst.c;
  const MatrixXd& a = inst.matrix.matrix();
  AdversarialReport rep;
  const GreedyPicks picks = greedy_max_norm_picks(a, inst.matrix.tolerance());
  rep.picks = picks.indices;
  rep.rho = picks.norms;

  rep.leadingDPicks = true;
  for (std::size_t i = 0; i + 1 < d; ++i)
    if (picks.indices[i] != i) rep.leadingDPicks = false;
  rep.finalPickFromE = picks.indices.back() >= 2 * d;
  rep.finalPickNorm = picks.norms.back();
  rep.finalNormBounded = rep.finalPickNorm <= c * (1.0 + 1e-9);

  // After i D-picks every DH column has squared residual (c^{2(d-i)} - 1)/c^2.
  rep.chainStrict = true;
  for (std::size_t i = 0; i < d && i < picks.projectedNorms.size(); ++i) {
    const double expected = (std::pow(c, 2.0 * double(d - i)) - 1.0) / (c * c);
    const double nextD = std::pow(c, 2.0 * double(d - i - 1));
    for (std::size_t k = d; k < 2 * d; ++k) {
      const double sq = std::pow(picks.projectedNorms[i](Eigen::Index(k)), 2);
      rep.maxChainError = std::max(rep.maxChainError, std::abs(sq - expected) / expected);
      if (!(sq < nextD)) rep.chainStrict = false;
    }
    if (!rep.leadingDPicks) break;
  }

  const auto dd = Eigen::Index(d);
  const double logDetDH = log_abs_det(a.middleCols(dd, dd)).logAbsDet;
  const double logDetD = log_abs_det(a.leftCols(dd)).logAbsDet;
  rep.achievedRatioLog = logDetDH - (std::log(c) + logDetD);
  rep.predictedRatioLog = inst.predictedRatioLog;
  rep.greedyLogDet = make_basis(inst.matrix, picks.indices).logAbsDet;

  rep.ok = rep.leadingDPicks && rep.finalNormBounded && rep.chainStrict && rep.maxChainError <= 1e-12 &&
           rep.achievedRatioLog >= rep.predictedRatioLog && rep.greedyLogDet <= std::log(c) + logDetD + 1e-9;
  if (!rep.ok && throwOnFailure)
    fail(ErrorKind::TightnessViolation, "greedy did not follow the predicted pattern on the d=" + std::to_string(d) +
                                            " adversarial instance");
  return rep;
}

}  // namespace maxvol

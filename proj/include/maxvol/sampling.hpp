#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "maxvol/numerics.hpp"
#include "maxvol/oracle.hpp"

namespace maxvol {

// Volume sampling: draw a basis B with probability det(A_B)^2 / det(A A^T).

/// Counter-based generator: every draw is a pure function of its key, so
/// samples can be produced in any order or on any thread.
struct CounterRng {
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t key(std::uint64_t seed, std::uint64_t counter) {
    return mix(seed ^ mix(counter ^ 0x632be59bd9b4e019ULL));
  }

  /// Uniform in [0, 1).
  static double uniform(std::uint64_t seed, std::uint64_t counter) {
    return double(key(seed, counter) >> 11) * 0x1.0p-53;
  }
};

inline std::uint64_t derive_sample_seed(std::uint64_t seed, std::uint64_t sampleIndex) {
  return CounterRng::key(seed, sampleIndex + 0x5851f42d4c957f2dULL);
}

struct SamplerDiagnostics {
  std::vector<double> leverageSums;  // one per round; should equal remaining rank
  std::vector<std::size_t> remainingRank;
};

/// Leverage scores of the current (projected) columns w.r.t. the pseudo-
/// inverse of W W^T on its top-`rank` eigenspace. Columns whose norm is below
/// `tol` get zero.
inline VectorXd projected_leverage_scores(const MatrixXd& w, std::size_t rank, double tol) {
  const MatrixXd m = w * w.transpose();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(m);
  const auto r = Eigen::Index(rank);
  const MatrixXd basis = eig.eigenvectors().rightCols(r);
  const VectorXd vals = eig.eigenvalues().tail(r);
  const MatrixXd coords = basis.transpose() * w;  // r x n
  VectorXd lev = (vals.cwiseInverse().asDiagonal() * coords.cwiseAbs2()).colwise().sum().transpose();
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    if (!(w.col(j).norm() > tol)) lev(j) = 0.0;
  return lev;
}

/// Sequential leverage-score sampling: pick column j with probability
/// l_j / t, project everything off it, repeat with t - 1.
inline Basis volume_sample_basis(const InstanceMatrix& a, std::uint64_t seed, SamplerDiagnostics* diag = nullptr) {
  const std::size_t d = a.d();
  const double tol = a.tolerance();
  MatrixXd work = a.matrix();
  std::vector<std::size_t> picked;
  for (std::size_t round = 0; round < d; ++round) {
    const std::size_t t = d - round;
    const VectorXd lev = projected_leverage_scores(work, t, tol);
    const double total = lev.sum();
    if (std::abs(total - double(t)) > 1e-8)
      fail(ErrorKind::InternalConsistency, "leverage scores sum to " + std::to_string(total) + ", expected " +
                                               std::to_string(t));
    if (diag) {
      diag->leverageSums.push_back(total);
      diag->remainingRank.push_back(t);
    }
    const double u = CounterRng::uniform(seed, round) * total;
    double acc = 0.0;
    Eigen::Index chosen = -1;
    for (Eigen::Index j = 0; j < work.cols(); ++j) {
      if (lev(j) <= 0.0) continue;
      acc += lev(j);
      chosen = j;
      if (u < acc) break;
    }
    if (chosen < 0) fail(ErrorKind::Rank, "no column with positive leverage");
    picked.push_back(std::size_t(chosen));
    const VectorXd dir = work.col(chosen);
    work = project_out(work, dir, tol);
  }
  Basis b = make_basis(a, std::move(picked));
  if (b.singular()) fail(ErrorKind::InternalConsistency, "volume sampler produced a singular basis");
  return b;
}

struct SampleReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Basis bestBasis;
  double columnRatio = 0.0;       // n / d
  double logGuaranteeFactor = 0;  // d (1 + ln(n/d)) = ln (e n/d)^d
  double logEmpiricalMean = 0;    // ln mean |det| over samples
};

/// N independent volume samples (seeds derived from (seed, i)); keeps the
/// best by (log|det|, index set). Results do not depend on `threads`.
inline SampleReport best_of_n(const InstanceMatrix& a, std::size_t samples, std::uint64_t seed,
                              std::size_t threads = 1) {
  if (samples == 0) fail(ErrorKind::Domain, "best_of_n needs at least one sample");
  std::vector<Basis> draws(samples);
  threads = std::clamp<std::size_t>(threads, 1, samples);
  if (threads == 1) {
    for (std::size_t i = 0; i < samples; ++i) draws[i] = volume_sample_basis(a, derive_sample_seed(seed, i));
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < samples; i += threads)
              draws[i] = volume_sample_basis(a, derive_sample_seed(seed, i));
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SampleReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.columnRatio = double(a.n()) / double(a.d());
  rep.logGuaranteeFactor = double(a.d()) * (1.0 + std::log(rep.columnRatio));
  std::vector<double> logs;
  logs.reserve(samples);
  for (const Basis& b : draws) {
    logs.push_back(b.logAbsDet);
    if (better_basis(b, rep.bestBasis)) rep.bestBasis = b;
  }
  rep.logEmpiricalMean = log_sum_exp(logs) - std::log(double(samples));
  return rep;
}

/// ln E|det(A_B)| under volume sampling, by full enumeration:
/// sum |det|^3 / sum det^2.
inline double exact_expected_det(const InstanceMatrix& a) {
  std::vector<double> cubes, squares;
  for_each_basis(a, [&](const Basis& b) {
    cubes.push_back(3.0 * b.logAbsDet);
    squares.push_back(2.0 * b.logAbsDet);
  });
  return log_sum_exp(cubes) - log_sum_exp(squares);
}

/// Exact det^2-proportional distribution over the bases, in colex order.
inline std::vector<std::pair<std::vector<std::size_t>, double>> volume_distribution(const InstanceMatrix& a) {
  std::vector<std::pair<std::vector<std::size_t>, double>> out;
  std::vector<double> logs;
  for_each_basis(a, [&](const Basis& b) {
    out.emplace_back(b.indices, 0.0);
    logs.push_back(2.0 * b.logAbsDet);
  });
  const double z = log_sum_exp(logs);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].second = std::exp(logs[i] - z);
  return out;
}

/// ln C(n, d) <= d (1 + ln alpha) whenever n <= alpha d.
inline bool basis_count_bound_holds(std::size_t n, std::size_t d, double alpha) {
  return log_binomial(n, d) <= double(d) * (1.0 + std::log(alpha)) + 1e-12;
}

}  // namespace maxvol

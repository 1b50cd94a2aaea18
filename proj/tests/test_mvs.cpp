#include <random>

#include "test_util.hpp"

using namespace maxvol;
using maxvol::testing::cols;

namespace {

PointSet random_points(std::size_t d, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXd m{Eigen::Index(d), Eigen::Index(n)};
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = g(rng);
  return PointSet(m);
}

}  // namespace

TEST(MvsAnchors, UnitSquareAndTriangle) {
  MatrixXd sq(2, 4);
  sq << 0, 1, 0, 1, 0, 0, 1, 1;
  EXPECT_NEAR(std::exp(mvs_via_anchors(PointSet(sq)).logVolume), 0.5, 1e-12);
  MatrixXd tri(2, 3);
  tri << 0, 1, 0, 0, 0, 1;
  const SimplexSolution s = mvs_via_anchors(PointSet(tri));
  EXPECT_EQ(s.vertexIndices, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_NEAR(std::exp(s.logVolume), 0.5, 1e-12);
}

TEST(MvsAnchors, ExactMatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + trial % 4, n = d + 1 + trial % 4;
    const PointSet p = random_points(d, n, rng);
    const SimplexSolution a = mvs_via_anchors(p);
    const SimplexSolution b = max_simplex_bruteforce(p);
    EXPECT_NEAR(a.logVolume, b.logVolume, 1e-9);
    EXPECT_NEAR(a.logVolume, simplex_log_volume(p, a.vertexIndices), 1e-10);
  }
}

TEST(MvsAnchors, GreedyWithinGuarantee) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + trial % 3, n = d + 2 + trial % 4;
    const PointSet p = random_points(d, n, rng);
    AnchorOptions opt;
    opt.solver = SubSolver::Greedy;
    const SimplexSolution g = mvs_via_anchors(p, opt);
    EXPECT_GE(g.logVolume + improved_log_factor_closed_form(d, opt.epsilon), max_simplex_bruteforce(p).logVolume - 1e-9);
  }
}

TEST(MvsAnchors, DegenerateInputs) {
  MatrixXd line(2, 4);
  line << 0, 1, 2, 3, 0, 1, 2, 3;
  EXPECT_KIND(mvs_via_anchors(PointSet(MatrixXd::Zero(2, 3))), Rank);
  EXPECT_KIND(PointSet(line), Rank);
}

TEST(MvdViaMvs, IdentityIsExact) {
  const Basis b = mvd_via_mvs(InstanceMatrix(MatrixXd::Identity(2, 2)), exact_mvs_solver());
  EXPECT_EQ(b.indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_NEAR(b.logAbsDet, 0.0, 1e-14);
}

TEST(MvdViaMvs, TriangleIncidence) {
  const Basis b = mvd_via_mvs(cols({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}), exact_mvs_solver());
  EXPECT_NEAR(std::exp(b.logAbsDet), 2.0, 1e-12);
}

TEST(MvdViaMvs, WithinFactorDPlusOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const InstanceMatrix a = random_instance(3, 6, Distribution::Gauss, seed);
    const double exact = max_subdet_bruteforce(a).logAbsDet;
    const Basis viaExact = mvd_via_mvs(a, exact_mvs_solver());
    EXPECT_GE(viaExact.logAbsDet, exact - std::log(4.0) - 1e-9);
    const Basis viaAnchors = mvd_via_mvs(a, anchor_mvs_solver({}));
    EXPECT_NEAR(viaAnchors.logAbsDet, viaExact.logAbsDet, 1e-9);
    AnchorOptions greedy;
    greedy.solver = SubSolver::Greedy;
    const Basis viaGreedy = mvd_via_mvs(a, anchor_mvs_solver(greedy));
    EXPECT_GE(viaGreedy.logAbsDet, exact - std::log(4.0) - improved_log_factor_closed_form(3, 0.25) - 1e-9);
  }
}

TEST(MvdViaMvs, RejectsNonSimplex) {
  const MvsSolver broken = [](const PointSet&) { return SimplexSolution{{0, 1}, 0.0}; };
  EXPECT_KIND(mvd_via_mvs(InstanceMatrix(MatrixXd::Identity(2, 2)), broken), InternalConsistency);
}

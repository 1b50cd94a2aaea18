#include <Eigen/LU>

#include <random>

#include "test_util.hpp"

using namespace maxvol;
using maxvol::testing::cols;

TEST(LogAbsDet, KnownValues) {
  MatrixXd m(2, 2);
  m << 3, 1, 4, 2;
  const LogDet ld = log_abs_det(m);
  EXPECT_NEAR(ld.logAbsDet, std::log(2.0), 1e-14);
  EXPECT_EQ(ld.sign, 1);

  m << 0, 1, 1, 0;
  EXPECT_EQ(log_abs_det(m).sign, -1);
  EXPECT_NEAR(log_abs_det(m).logAbsDet, 0.0, 1e-15);
}

TEST(LogAbsDet, SingularAndNonSquare) {
  MatrixXd m(2, 2);
  m << 1, 2, 2, 4;
  const LogDet ld = log_abs_det(m);
  EXPECT_TRUE(ld.singular());
  EXPECT_EQ(ld.logAbsDet, kNegInf);
  EXPECT_KIND(log_abs_det(MatrixXd::Ones(2, 3)), Dimension);
}

TEST(LogAbsDet, NoOverflowAtExtremeScale) {
  const MatrixXd m = 1e200 * MatrixXd::Identity(3, 3);
  EXPECT_NEAR(log_abs_det(m).logAbsDet, 600.0 * std::log(10.0), 1e-9);
  const MatrixXd tiny = 1e-200 * MatrixXd::Identity(3, 3);
  EXPECT_NEAR(log_abs_det(tiny).logAbsDet, -600.0 * std::log(10.0), 1e-9);
}

TEST(LogAbsDet, MatchesFullPivotLuOnRandomMatrices) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 7;
    MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = g(rng);
    const double ref = m.fullPivLu().determinant();
    const LogDet ld = log_abs_det(m);
    EXPECT_NEAR(ld.logAbsDet, std::log(std::abs(ref)), 1e-9);
    EXPECT_EQ(ld.sign, ref > 0 ? 1 : -1);
  }
}

TEST(ProjectOut, ResultIsOrthogonal) {
  MatrixXd a(3, 3);
  a << 1, 2, 0, 0, 1, 1, 1, 0, 3;
  const VectorXd dir = a.col(0);
  const MatrixXd p = project_out(a, dir);
  EXPECT_LT((dir.transpose() * p).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(p.col(0).norm(), 1e-14);
}

TEST(ProjectOut, DegenerateDirection) {
  EXPECT_KIND(project_out(MatrixXd::Identity(2, 2), VectorXd::Zero(2), 1e-12), DegenerateDirection);
}

TEST(NumericRank, Cases) {
  MatrixXd m(2, 3);
  m << 1, 2, 3, 2, 4, 6;
  EXPECT_EQ(numeric_rank(m, 1e-12), 1u);
  EXPECT_EQ(numeric_rank(MatrixXd::Identity(4, 4), 1e-12), 4u);
  EXPECT_EQ(numeric_rank(MatrixXd::Zero(2, 2), 1e-12), 0u);
}

TEST(InstanceMatrix, Validation) {
  EXPECT_KIND(InstanceMatrix(MatrixXd::Identity(3, 2)), Dimension);
  EXPECT_KIND(InstanceMatrix(MatrixXd(0, 0)), Dimension);
  MatrixXd bad = MatrixXd::Identity(2, 2);
  bad(0, 1) = std::nan("");
  EXPECT_KIND(InstanceMatrix(bad), Domain);
  EXPECT_KIND(cols({{1, 2}, {2, 4}, {-1, -2}}), Rank);
  EXPECT_KIND(cols({{1, 2}, {1}}), Dimension);
  const InstanceMatrix a = cols({{3, 4}, {0, 1}});
  EXPECT_EQ(a.d(), 2u);
  EXPECT_EQ(a.n(), 2u);
  EXPECT_DOUBLE_EQ(a.scale(), 5.0);
  EXPECT_DOUBLE_EQ(a.tolerance(), 5.0 * kRankTolerance);
}

TEST(Basis, MakeBasisSortsAndValidates) {
  const InstanceMatrix a = cols({{1, 0}, {0, 1}, {1, 1}});
  const Basis b = make_basis(a, {2, 0});
  EXPECT_EQ(b.indices, (std::vector<std::size_t>{0, 2}));
  EXPECT_NEAR(b.logAbsDet, 0.0, 1e-15);
  EXPECT_KIND(make_basis(a, {1, 1}), Domain);
  EXPECT_KIND(make_basis(a, {0}), Dimension);
  EXPECT_KIND(make_basis(a, {0, 7}), Dimension);
}

TEST(Basis, OrderingPrefersLargerThenLexSmaller) {
  const Basis singular;
  const Basis small{{1, 2}, 0.0, 1};
  const Basis big{{3, 4}, 1.0, -1};
  const Basis tie{{0, 5}, 1.0 + 1e-12, 1};
  EXPECT_TRUE(better_basis(small, singular));
  EXPECT_FALSE(better_basis(singular, small));
  EXPECT_TRUE(better_basis(big, small));
  EXPECT_FALSE(better_basis(small, big));
  EXPECT_TRUE(better_basis(tie, big));
  EXPECT_FALSE(better_basis(big, tie));
}

TEST(LogHelpers, BinomialAndLogSumExp) {
  EXPECT_NEAR(std::exp(log_binomial(10, 3)), 120.0, 1e-9);
  EXPECT_NEAR(log_binomial(5, 0), 0.0, 1e-15);
  const std::vector<double> xs{std::log(1.0), std::log(2.0), std::log(3.0)};
  EXPECT_NEAR(log_sum_exp(xs), std::log(6.0), 1e-14);
  const std::vector<double> none{kNegInf, kNegInf};
  EXPECT_EQ(log_sum_exp(none), kNegInf);
  const std::vector<double> huge{1000.0, 1000.0};
  EXPECT_NEAR(log_sum_exp(huge), 1000.0 + std::log(2.0), 1e-12);
}

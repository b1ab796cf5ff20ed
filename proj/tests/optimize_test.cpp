#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "canondeg/optimize.hpp"

namespace canondeg {
namespace {

// x^T A x on the unit sphere; the maximum is the top eigenvalue.
class Rayleigh {
 public:
  using point_type = Eigen::VectorXd;

  explicit Rayleigh(Eigen::MatrixXd a) : a_(std::move(a)) {}

  double value(const Eigen::VectorXd& x) const { return x.dot(a_ * x) / x.squaredNorm(); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    const double n2 = x.squaredNorm();
    return 2.0 / n2 * (a_ * x - value(x) * x);
  }
  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return x.dot(y); }
  void retract(Eigen::VectorXd& x) const { x.normalize(); }
  Eigen::VectorXd random_start(std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss;
    Eigen::VectorXd x(a_.rows());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = gauss(rng);
    return x;
  }

 private:
  Eigen::MatrixXd a_;
};

static_assert(AscentProblem<Rayleigh>);

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = gauss(rng);
  return 0.5 * (m + m.transpose());
}

TEST(Ascent, FindsTopEigenvalue) {
  for (int n : {2, 5, 10}) {
    const Eigen::MatrixXd a = random_symmetric(n, 100 + n);
    const double top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().maxCoeff();
    AscentOptions opts;
    opts.restarts = 8;
    opts.max_iter = 20000;
    const auto res = multistart_ascent(Rayleigh(a), opts);
    EXPECT_TRUE(res.converged());
    EXPECT_NEAR(res.best.value, top, 1e-9) << n;
    EXPECT_EQ(res.restarts_used, 8);
    EXPECT_EQ(res.restart_values.size(), 8u);
  }
}

TEST(Ascent, ParallelIsBitwiseEqual) {
  const Rayleigh problem(random_symmetric(6, 3));
  AscentOptions opts;
  opts.restarts = 12;
  opts.seed = 77;
  const auto seq = multistart_ascent(problem, opts);
  opts.parallel = true;
  const auto par = multistart_ascent(problem, opts);
  EXPECT_EQ(seq.best_restart, par.best_restart);
  EXPECT_EQ(seq.restart_values, par.restart_values);
  EXPECT_TRUE(seq.best.point == par.best.point);
}

TEST(Ascent, TiesGoToLowestRestart) {
  // Constant objective: every restart converges immediately with the same value.
  const Rayleigh problem(Eigen::MatrixXd::Identity(3, 3));
  AscentOptions opts;
  opts.restarts = 5;
  const auto res = multistart_ascent(problem, opts);
  EXPECT_EQ(res.best_restart, 0);
  EXPECT_EQ(res.converged_restarts, 5);
  EXPECT_EQ(res.best.iterations, 0);
}

TEST(Ascent, IterationCap) {
  const Rayleigh problem(random_symmetric(8, 5));
  AscentOptions opts;
  opts.restarts = 1;
  opts.max_iter = 0;
  const auto res = multistart_ascent(problem, opts);
  EXPECT_FALSE(res.converged());
  EXPECT_EQ(res.best.iterations, 0);
}

TEST(RestartRng, DependsOnSeedAndIndex) {
  EXPECT_EQ(restart_rng(1, 2)(), restart_rng(1, 2)());
  EXPECT_NE(restart_rng(1, 2)(), restart_rng(1, 3)());
  EXPECT_NE(restart_rng(1, 2)(), restart_rng(2, 2)());
  EXPECT_NE(restart_rng(0, 0)(), restart_rng(0, 1)());
}

}  // namespace
}  // namespace canondeg

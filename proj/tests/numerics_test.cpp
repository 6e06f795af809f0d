#include "specalloc/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "specalloc/bandwidth.hpp"
#include "specalloc/model.hpp"

namespace specalloc::numerics {
namespace {

double baseline(double s, double r, double x) {
  return execution_time(WorkloadPoint(s, r), AllocationFraction(x)).value();
}

TEST(MinimizeBracketedTest, QuadraticVertex) {
  const auto res = minimize_bracketed([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-10);
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(res.x_min, 0.3, 1e-9);
  EXPECT_GE(res.x_min, 0.0);
  EXPECT_LE(res.x_min, 1.0);
}

TEST(MinimizeBracketedTest, BaselineObjective) {
  const auto res =
      minimize_bracketed([](double x) { return baseline(0.5, 10, x); }, 0.0, kMaxAllocation, 1e-10);
  EXPECT_NEAR(res.x_min, 1.0 / 6.0, 1e-8);
  EXPECT_NEAR(res.f_min, 0.8, 1e-14);
}

TEST(MinimizeBracketedTest, EndpointMinimumIsExact) {
  const auto res = minimize_bracketed([](double x) { return baseline(0.95, 10, x); }, 0.0, 0.65, 1e-10);
  EXPECT_EQ(res.x_min, 0.0);
  EXPECT_EQ(res.f_min, 1.0);
}

TEST(MinimizeBracketedTest, FrictionObjectiveMatchesOracle) {
  auto f = [](double x) { return oracle::friction_time(0.2, 10, 0.1, x); };
  const auto seed = grid_minimum(f, 0.0, kMaxAllocation, kSeedGridPoints);
  const double step = kMaxAllocation / (kSeedGridPoints - 1);
  const auto res = minimize_bracketed(f, seed.x_min - step, seed.x_min + step, 1e-10);
  const auto brute = oracle::brute_force_minimum(f);
  EXPECT_NEAR(res.x_min, brute.x, 1e-6);
  // Frozen from an independent numpy evaluation of the same formula on a 1e6 grid.
  EXPECT_NEAR(res.x_min, 0.30796949949, 1e-6);
}

TEST(MinimizeBracketedTest, Errors) {
  auto f = [](double x) { return x * x; };
  EXPECT_THROW(minimize_bracketed(f, 1.0, 0.0, 1e-6), DomainError);
  EXPECT_THROW(minimize_bracketed(f, 0.0, 1.0, 0.0), DomainError);
  // Reaching 1e-10 from width 1 needs ~48 golden steps.
  EXPECT_THROW(minimize_bracketed(f, -1.0, 1.0, 1e-10, 10), SolverError);
  // Below the spacing of doubles the bracket stops shrinking.
  EXPECT_THROW(minimize_bracketed(f, 1.0, 2.0, 1e-20), SolverError);
  EXPECT_THROW(minimize_bracketed([](double) { return NAN; }, 0.0, 1.0, 1e-6), SolverError);
}

TEST(MinimizeBracketedTest, Deterministic) {
  auto f = [](double x) { return oracle::friction_time(0.4, 30, 0.5, x); };
  const auto a = minimize_bracketed(f, 0.0, 0.9, 1e-10);
  const auto b = minimize_bracketed(f, 0.0, 0.9, 1e-10);
  EXPECT_EQ(a.x_min, b.x_min);
  EXPECT_EQ(a.f_min, b.f_min);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(MinimizeBracketedTest, BracketShrinksEveryIteration) {
  // Each iteration multiplies the width by 1/phi, so a tolerance just above
  // phi^-k is reached in exactly k iterations and not in k - 1. The margin
  // covers rounding in b - a, which grows relative to the width as it shrinks.
  auto f = [](double x) { return (x - 0.7) * (x - 0.7); };
  double width = 1.0;
  for (int k = 1; k <= 30; ++k) {
    width *= 0.6180339887498948482;
    const double tol = width * (1.0 + 1e-6);
    EXPECT_NO_THROW(minimize_bracketed(f, 0.0, 1.0, tol, k)) << k;
    EXPECT_THROW(minimize_bracketed(f, 0.0, 1.0, tol, k - 1), SolverError) << k;
  }
}

TEST(GridMinimumTest, Examples) {
  const auto mono = grid_minimum([](double x) { return x; }, 0.0, 1.0, 11);
  EXPECT_EQ(mono.x_min, 0.0);
  EXPECT_EQ(mono.evaluations, 11u);

  const auto collapse = grid_minimum([](double x) { return baseline(0.95, 10, x); }, 0.0,
                                     kMaxAllocation, oracle::kDenseGrid);
  EXPECT_EQ(collapse.x_min, 0.0);

  const auto interior = grid_minimum([](double x) { return baseline(0.2, 10, x); }, 0.0,
                                     kMaxAllocation, oracle::kDenseGrid);
  EXPECT_NEAR(interior.x_min, 1.0 / 3.0, 1e-6);
}

TEST(GridMinimumTest, TiesGoToSmallerX) {
  const auto flat = grid_minimum([](double) { return 1.0; }, 0.25, 1.0, 7);
  EXPECT_EQ(flat.x_min, 0.25);
  const auto twin = grid_minimum([](double x) { return std::abs(std::abs(x) - 0.5); }, -1.0, 1.0, 5);
  EXPECT_EQ(twin.x_min, -0.5);
}

TEST(GridMinimumTest, Errors) {
  EXPECT_THROW(grid_minimum([](double x) { return x; }, 0.0, 1.0, 1), DomainError);
  EXPECT_THROW(grid_minimum([](double x) { return x; }, 1.0, 1.0, 5), DomainError);
  EXPECT_THROW(grid_minimum([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0, 3), SolverError);
}

TEST(CentralDifferenceTest, Examples) {
  auto square = [](double x) { return x * x; };
  EXPECT_NEAR(central_difference(square, 1.0, 1e-6, DifferenceOrder::First), 2.0, 1e-6);
  EXPECT_NEAR(central_difference(square, 0.0, 1e-4, DifferenceOrder::Second), 2.0, 1e-4);
  auto t = [](double x) { return oracle::baseline_time(0.5, 10, x); };
  EXPECT_NEAR(central_difference(t, 0.0, 1e-6, DifferenceOrder::First), -4.0, 1e-4);
  EXPECT_THROW(central_difference(square, 0.0, 0.0, DifferenceOrder::First), DomainError);
}

TEST(BisectRootTest, Examples) {
  EXPECT_NEAR(bisect_root([](double x) { return x - 0.25; }, 0.0, 1.0, 1e-12), 0.25, 1e-12);
  auto d02 = [](double x) { return execution_time_derivative(WorkloadPoint(0.2, 10), AllocationFraction(x)); };
  EXPECT_NEAR(bisect_root(d02, 0.0, 0.9, 1e-10), 1.0 / 3.0, 1e-9);
  auto d08 = [](double x) { return execution_time_derivative(WorkloadPoint(0.8, 10), AllocationFraction(x)); };
  EXPECT_NEAR(bisect_root(d08, 0.0, 0.9, 1e-10), 1.0 / 21.0, 1e-9);
}

TEST(BisectRootTest, RequiresSignChange) {
  EXPECT_THROW(bisect_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-9), DomainError);
  EXPECT_THROW(bisect_root([](double x) { return x; }, 0.0, 1.0, 1e-9), DomainError);
}

// Both numerical routes against the closed form.
TEST(OracleAgreementTest, BisectionAndGoldenSectionMatchClosedForm) {
  oracle::InteriorSampler sample(101);
  for (int i = 0; i < 500; ++i) {
    const auto [s, r] = sample();
    const WorkloadPoint point(s, r);
    const double closed = interior_optimum(point).value();

    auto derivative = [&](double x) { return execution_time_derivative(point, AllocationFraction(x)); };
    EXPECT_NEAR(bisect_root(derivative, 0.0, 0.999, 1e-12), closed, 1e-8) << "S=" << s << " R=" << r;

    auto t = [&](double x) { return oracle::baseline_time(s, r, x); };
    const auto golden = minimize_bracketed(t, 0.0, kMaxAllocation, 1e-10);
    EXPECT_NEAR(golden.x_min, closed, 1e-8) << "S=" << s << " R=" << r;
  }
}

TEST(SeededMinimumTest, FindsGlobalMinimumOfTwoWells) {
  // The shallower well on the left is a local minimum only.
  auto f = [](double x) { return std::min((x - 0.1) * (x - 0.1) + 0.05, (x - 0.8) * (x - 0.8)); };
  const auto res = seeded_minimum(f, 0.0, 1.0, 1e-10);
  EXPECT_NEAR(res.x_min, 0.8, 1e-8);
}

}  // namespace
}  // namespace specalloc::numerics

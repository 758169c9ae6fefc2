#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "conekit/generators.hpp"
#include "conekit/operators.hpp"
#include "conekit/random.hpp"
#include "test_support.hpp"

namespace conekit {
namespace {

using testing::fin;
using testing::naive_max_times;
using testing::to_vector;

const FiniteKernel kSmall({{1.0, 2.0}, {3.0, 4.0}});

ContinuousKernelSpec make_spec(const Domain& grid, std::vector<double> alpha, std::vector<double> beta,
                               std::vector<double> kernel) {
  return ContinuousKernelSpec(SampledFunction(grid, std::move(alpha)), SampledFunction(grid, std::move(beta)),
                              std::move(kernel));
}

ContinuousKernelSpec full_window(const Domain& grid, std::vector<double> kernel) {
  return ContinuousKernelSpec(SampledFunction::zero(grid), SampledFunction::constant(grid, grid.endpoint()),
                              std::move(kernel));
}

TEST(FiniteKernel, RejectsNegativeOrNonFiniteEntries) {
  EXPECT_THROW(FiniteKernel({{1.0, -1.0}, {0.0, 0.0}}), InvalidArgument);
  EXPECT_THROW(FiniteKernel({{1.0, std::numeric_limits<double>::infinity()}, {0.0, 0.0}}), InvalidArgument);
  EXPECT_THROW(FiniteKernel({{1.0, 2.0}, {0.0}}), InvalidArgument);
}

TEST(ApplyFinite, IdentityKernel) {
  EXPECT_EQ(apply_finite(FiniteKernel::identity(2), fin({5, 3})), fin({5, 3}));
}

TEST(ApplyFinite, TwoByTwoMatchesEnumeration) {
  const auto expected = naive_max_times({{1, 2}, {3, 4}}, {1, 1});
  ASSERT_EQ(expected, (std::vector<double>{2, 4}));
  EXPECT_EQ(to_vector(apply_finite(kSmall, fin({1, 1}))), expected);
}

TEST(ApplyFinite, ZeroFunctionMapsToZero) {
  SplitMix64 rng(5);
  const auto k = random_finite_kernel(6, rng);
  EXPECT_EQ(apply_finite(k, SampledFunction::zero(k.domain())), SampledFunction::zero(k.domain()));
}

TEST(ApplyFinite, RandomKernelsMatchEnumeration) {
  for (std::size_t t = 0; t < 50; ++t) {
    auto rng = trial_stream(9, t);
    const std::size_t m = 2 + rng.index(0, 6);
    const auto k = random_finite_kernel(m, rng);
    const auto f = random_cone_function(k.domain(), rng);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < m; ++i) rows.emplace_back(k.row(i).begin(), k.row(i).end());
    EXPECT_EQ(to_vector(apply_finite(k, f)), naive_max_times(rows, to_vector(f)));
  }
}

TEST(ApplyFinite, Errors) {
  EXPECT_THROW(apply_finite(kSmall, fin({1, 1, 1})), DomainMismatch);
  EXPECT_THROW(apply_finite(kSmall, fin({1, -1})), ConeViolation);
  EXPECT_THROW(apply_finite(kSmall, SampledFunction::ones(Domain::grid(2, 1.0))), DomainMismatch);
}

TEST(ContinuousKernelSpec, Invariants) {
  const auto grid = Domain::grid(3, 1.0);
  const std::vector<double> k(9, 1.0);
  EXPECT_THROW(make_spec(grid, {0.5, 0, 0}, {0.4, 1, 1}, k), InvalidArgument);   // alpha > beta
  EXPECT_THROW(make_spec(grid, {0, 0, 0}, {1.5, 1, 1}, k), InvalidArgument);     // beta > a
  EXPECT_THROW(make_spec(grid, {0, 0, 0}, {1, 1, 1}, std::vector<double>(8, 1)), InvalidArgument);
  EXPECT_THROW(ContinuousKernelSpec(fin({0, 0}), fin({1, 1}), std::vector<double>(4, 1)), InvalidArgument);
}

TEST(AdmissibleMask, DegenerateWindowOnGridPoint) {
  const auto grid = Domain::grid(5, 1.0);
  const auto spec = make_spec(grid, std::vector<double>(5, 0.25), std::vector<double>(5, 0.25),
                              std::vector<double>(25, 1.0));
  const auto mask = build_admissible_mask(spec);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(mask.row_count(i), 1u);
    EXPECT_TRUE(mask(i, 1));
  }
}

TEST(AdmissibleMask, FullWindowIsAllTrue) {
  const auto grid = Domain::grid(7, 3.0);
  const auto mask = build_admissible_mask(full_window(grid, std::vector<double>(49, 1.0)));
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(mask.row_count(i), 7u);
}

TEST(AdmissibleMask, LinearUpperBoundCountsGridPoints) {
  const std::size_t n = 5;
  const auto grid = Domain::grid(n, 1.0);
  std::vector<double> beta(n);
  for (std::size_t i = 0; i < n; ++i) beta[i] = grid.point(i);
  const auto mask = build_admissible_mask(make_spec(grid, std::vector<double>(n, 0.0), beta,
                                                    std::vector<double>(n * n, 1.0)));
  for (std::size_t i = 0; i < n; ++i) {
    // Oracle: t_j = j/(n-1) <= s_i = i/(n-1) iff j <= i, counted in integers.
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) count += j <= i ? 1 : 0;
    EXPECT_EQ(mask.row_count(i), count);
    EXPECT_EQ(mask.row_count(i), i + 1);
  }
}

TEST(AdmissibleMask, WindowBetweenGridPointsFallsBackToNearest) {
  const auto grid = Domain::grid(11, 1.0);  // step 0.1
  const auto spec = make_spec(grid, std::vector<double>(11, 0.32), std::vector<double>(11, 0.34),
                              std::vector<double>(121, 1.0));
  const auto mask = build_admissible_mask(spec);
  for (std::size_t i = 0; i < 11; ++i) {
    EXPECT_EQ(mask.row_count(i), 1u);
    EXPECT_TRUE(mask(i, 3));
  }
}

TEST(AdmissibleMask, SnapToleranceAbsorbsRounding) {
  const auto grid = Domain::grid(11, 1.0);
  // 0.3 is not exactly 3 * 0.1 in binary; the window [0.3, 0.3] must still hit t_3.
  const auto spec = make_spec(grid, std::vector<double>(11, 0.3), std::vector<double>(11, 0.3),
                              std::vector<double>(121, 1.0));
  const auto mask = build_admissible_mask(spec);
  for (std::size_t i = 0; i < 11; ++i) {
    EXPECT_EQ(mask.row_count(i), 1u);
    EXPECT_TRUE(mask(i, 3));
  }
}

TEST(AdmissibleMask, RandomSpecsHaveNonEmptyRows) {
  for (std::size_t t = 0; t < 100; ++t) {
    auto rng = trial_stream(17, t);
    const auto spec = random_continuous_spec(2 + rng.index(0, 30), rng.uniform(0.1, 5.0), rng);
    const auto mask = build_admissible_mask(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) EXPECT_GE(mask.row_count(i), 1u);
  }
}

TEST(ApplyContinuous, UnitKernelFullWindowGivesSupNorm) {
  const auto grid = Domain::grid(9, 2.0);
  const MaxKernelOperator op(full_window(grid, std::vector<double>(81, 1.0)));
  SplitMix64 rng(3);
  const auto f = random_cone_function(grid, rng);
  EXPECT_EQ(op(f), SampledFunction::constant(grid, sup_norm(f)));
}

TEST(ApplyContinuous, OnesGiveRowwiseMaskedMax) {
  SplitMix64 rng(21);
  const auto spec = random_continuous_spec(12, 1.0, rng);
  const auto mask = build_admissible_mask(spec);
  const auto out = apply_continuous(spec, mask, SampledFunction::ones(spec.grid()));
  for (std::size_t i = 0; i < spec.size(); ++i) {
    double expected = -1.0;
    for (std::size_t j = 0; j < spec.size(); ++j)
      if (mask(i, j) && spec.kernel(i, j) > expected) expected = spec.kernel(i, j);
    EXPECT_EQ(out[i], expected);
  }
}

TEST(ApplyContinuous, ZeroKernelGivesZero) {
  const auto grid = Domain::grid(6, 1.0);
  const MaxKernelOperator op(full_window(grid, std::vector<double>(36, 0.0)));
  EXPECT_EQ(op(SampledFunction::constant(grid, 3.0)), SampledFunction::zero(grid));
}

TEST(ApplyContinuous, Errors) {
  const auto grid = Domain::grid(3, 1.0);
  const MaxKernelOperator op(full_window(grid, std::vector<double>(9, 1.0)));
  EXPECT_THROW(op(SampledFunction::ones(Domain::grid(3, 2.0))), DomainMismatch);
  EXPECT_THROW(op(SampledFunction(grid, {1, -1, 1})), ConeViolation);
}

TEST(ApplyContinuous, FullWindowAgreesWithFiniteKernelOnSameTable) {
  for (std::size_t t = 0; t < 50; ++t) {
    auto rng = trial_stream(23, t);
    const std::size_t n = 2 + rng.index(0, 10);
    const auto k = random_finite_kernel(n, rng);
    const auto grid = Domain::grid(n, 1.0);
    const MaxKernelOperator cont(full_window(grid, {k.entries().begin(), k.entries().end()}));
    const auto f = random_cone_function(grid, rng);
    const auto finite_out = apply_finite(k, SampledFunction(k.domain(), to_vector(f)));
    EXPECT_EQ(to_vector(cont(f)), to_vector(finite_out));
  }
}

// Operator-class properties.

template <typename MakeOp>
void expect_kernel_class_axioms(MakeOp make_op, std::uint64_t seed) {
  for (std::size_t t = 0; t < 200; ++t) {
    auto rng = trial_stream(seed, t);
    const auto op = make_op(rng);
    const Domain d = op.domain();
    const auto f = random_cone_function(d, rng);
    const auto g = random_cone_function(d, rng);
    const auto bigger = f + g;
    EXPECT_TRUE(partial_le(op(f), op(bigger)));
    // k (f + g) may round a few ulps above k f + k g.
    const auto excess = op(f + g) - (op(f) + op(g));
    for (double e : excess.values()) EXPECT_LE(e, 1e-12 * std::max(1.0, sup_norm(op(f + g))));
    // Dyadic scale: exact.
    EXPECT_EQ(op(2.0 * f), 2.0 * op(f));
    EXPECT_EQ(op(0.0 * f), SampledFunction::zero(d));
    const double s = rng.uniform(0.0, 10.0);
    const auto lhs = op(s * f);
    const auto rhs = s * op(f);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      EXPECT_LE(std::fabs(lhs[i] - rhs[i]), 1e-14 * std::max(1.0, std::fabs(rhs[i])));
  }
}

TEST(OperatorProperties, SupKernelIsMonotoneSubadditiveHomogeneous) {
  expect_kernel_class_axioms(
      [](SplitMix64& rng) { return SupKernelOperator(random_finite_kernel(2 + rng.index(0, 6), rng)); }, 31);
}

TEST(OperatorProperties, MaxKernelIsMonotoneSubadditiveHomogeneous) {
  expect_kernel_class_axioms(
      [](SplitMix64& rng) { return MaxKernelOperator(random_continuous_spec(2 + rng.index(0, 20), 1.0, rng)); },
      37);
}

// Max-plus form.

TEST(MaxPlus, IdentityKernelIsMaxPlusIdentity) {
  const std::vector<double> g{0.2, -1.0};
  EXPECT_EQ(maxplus_apply(FiniteKernel::identity(2), g), g);
}

TEST(MaxPlus, ConjugationOnTwoByTwo) {
  const auto lhs = apply_finite(kSmall, fin({1, 1}));
  const std::vector<double> log_lhs{std::log(lhs[0]), std::log(lhs[1])};
  EXPECT_EQ(log_lhs, (std::vector<double>{std::log(2.0), std::log(4.0)}));
  const auto rhs = maxplus_apply(kSmall, std::vector<double>{0.0, 0.0});
  EXPECT_EQ(rhs, log_lhs);
}

TEST(MaxPlus, BottomIsPreserved) {
  const std::vector<double> g{kMaxPlusBottom, 1.5, -2.0};
  EXPECT_EQ(maxplus_apply(FiniteKernel::identity(3), g), g);
}

TEST(MaxPlus, ZeroRowYieldsBottom) {
  const FiniteKernel k({{0.0, 0.0}, {1.0, 0.0}});
  const auto out = maxplus_apply(k, std::vector<double>{1.0, 2.0});
  EXPECT_EQ(out[0], kMaxPlusBottom);
  EXPECT_EQ(out[1], 1.0);
}

TEST(MaxPlus, Errors) {
  EXPECT_THROW(maxplus_apply(kSmall, std::vector<double>{0.0}), DomainMismatch);
  EXPECT_THROW(maxplus_apply(kSmall, std::vector<double>{0.0, std::nan("")}), InvalidArgument);
  EXPECT_THROW(maxplus_apply(kSmall, std::vector<double>{0.0, std::numeric_limits<double>::infinity()}),
               InvalidArgument);
}

TEST(MaxPlus, ConjugationIdentityOnPositiveInputs) {
  for (std::size_t t = 0; t < 100; ++t) {
    auto rng = trial_stream(41, t);
    const std::size_t m = 2 + rng.index(0, 6);
    const auto k = random_finite_kernel(m, rng, 0.01, 10.0);
    const auto f = random_cone_function(k.domain(), rng, 0.01, 10.0);
    const auto af = apply_finite(k, f);
    std::vector<double> log_f(m);
    for (std::size_t j = 0; j < m; ++j) log_f[j] = std::log(f[j]);
    const auto mp = maxplus_apply(k, log_f);
    for (std::size_t i = 0; i < m; ++i) {
      const double expected = std::log(af[i]);
      EXPECT_LE(std::fabs(mp[i] - expected), 1e-12 * std::max(1.0, std::fabs(expected)));
    }
  }
}

}  // namespace
}  // namespace conekit

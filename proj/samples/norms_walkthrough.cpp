// Closed-form and sampled norms of a max-times operator and a windowed
// max-type kernel operator.

#include <iostream>

#include "conekit/conekit.hpp"

int main() {
  using namespace conekit;

  const SupKernelOperator finite(FiniteKernel({{1.0, 2.0}, {3.0, 4.0}}));
  const auto op = empirical_op_norm(finite, 1000, 7);
  const auto lip = empirical_lip_seminorm(finite, 1000, 7);
  std::cout << "max-times 2x2: exact " << exact_norm(finite) << ", ||A|| ~ " << op.value
            << ", ||A||_LIP ~ " << lip.value << "\n";

  // k(s,t) = s t on [0,1] with window [0, s].
  const Domain grid = Domain::grid(11, 1.0);
  std::vector<double> beta(11), kernel(121);
  for (std::size_t i = 0; i < 11; ++i) {
    beta[i] = grid.point(i);
    for (std::size_t j = 0; j < 11; ++j) kernel[i * 11 + j] = grid.point(i) * grid.point(j);
  }
  const MaxKernelOperator windowed(
      ContinuousKernelSpec(SampledFunction::zero(grid), SampledFunction(grid, beta), kernel));
  std::cout << "windowed s*t: exact " << exact_norm(windowed) << ", ||A||_LIP ~ "
            << empirical_lip_seminorm(windowed, 1000, 7).value << "\n";

  const auto suite = run_suite(windowed, 500, 1);
  for (const auto& r : suite)
    std::cout << "  " << r.property << ": " << (r.passed ? "pass" : "FAIL") << " (worst " << r.worst_violation
              << ")\n";
  return all_passed(suite) ? 0 : 1;
}

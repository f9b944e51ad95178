// Draws one GPD sample and estimates its tail parameter three ways: a single
// elemental, the linearly-rising combination, and Pickands.

#include <cstdio>
#include <cstdlib>

#include "elemental/elemental.hpp"

int main(int argc, char** argv) {
  const double xi = argc > 1 ? std::atof(argv[1]) : 0.5;
  const std::size_t n = argc > 2 ? static_cast<std::size_t>(std::atoi(argv[2])) : 40;

  elemental::RandomStream rng(2024);
  const elemental::GpdParams params(10.0, 3.0, xi);
  const auto s = elemental::sample(params, n, rng);

  const auto combined = elemental::evaluate_spacing_weights(s, elemental::linearly_rising_spacing_closed_form(n));
  std::printf("n = %zu, true xi = %g\n", n, xi);
  std::printf("  elemental (1, %zu)   %.6f\n", n, elemental::elemental_estimate(s, {1, n}));
  std::printf("  linearly-rising      %.6f\n", combined);
  std::printf("  pickands (k = %zu)    %.6f\n", n / 4, elemental::pickands(s, n / 4));
  return 0;
}

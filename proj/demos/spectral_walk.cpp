// Prints the weight-graded pages for one rank: the two-component first page,
// its restriction, the computed second page, and the resulting stalk table.
//
//   demo_spectral_walk [n] [eps] [p]
//
// eps is +1 or -1 for even n and 0 for odd n.

#include <cstdlib>
#include <iostream>

#include "lmnc/cohomology.hpp"

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 4;
  const int eps = argc > 2 ? std::atoi(argv[2]) : (n % 2 == 0 ? 1 : 0);
  const int64_t p = argc > 3 ? std::atoll(argv[3]) : 3;

  const auto components = lmnc::build_first_page_components(n, eps, p);
  const auto first = lmnc::build_first_page_restricted(n, eps, p);
  const auto second = lmnc::compute_second_page(first);
  const auto stalks = lmnc::nearby_cycles_stalks(n, eps, p);

  std::cout << lmnc::render_component_page(components) << "\n"
            << lmnc::render_first_page(first) << "\n"
            << lmnc::render_second_page(second) << "\n"
            << lmnc::render_stalks(stalks);
  return 0;
}

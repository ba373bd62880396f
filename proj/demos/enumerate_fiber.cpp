// Enumerates the special fiber and its resolution for a small rank and
// prints every subspace basis together with the stratification summary.
//
//   demo_enumerate_fiber [n] [p]

#include <cstdlib>
#include <iostream>

#include "lmnc/localmodel.hpp"

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 3;
  const int64_t p = argc > 2 ? std::atoll(argv[2]) : 3;

  const auto d = lmnc::canonical_hermitian(p, n, lmnc::HermitianClass::split);
  const auto F = lmnc::make_field(p, 1);
  const auto A = lmnc::build_ambient(d, F);

  const auto fiber = lmnc::enumerate_special_fiber(A);
  std::cout << fiber.size() << " subspaces in the special fiber (rank " << n
            << ", q = " << F.q << "):\n";
  for (const auto& S : fiber) {
    for (const auto& row : S.rows) {
      std::cout << "  [";
      for (size_t j = 0; j < row.size(); ++j)
        std::cout << (j ? " " : "") << row[j];
      std::cout << "]\n";
    }
    std::cout << "\n";
  }

  const auto pairs = lmnc::enumerate_blowup(A);
  const auto strata = lmnc::stratify_blowup(pairs, A);
  std::cout << pairs.size() << " resolved pairs: " << strata.exceptional
            << " over the singular point, " << strata.bundle
            << " in the bundle chart, " << strata.intersection
            << " on the intersection\n";
  return 0;
}

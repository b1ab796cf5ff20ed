// Prints how the modular family ratio deg f*K / -chi approaches d as p grows,
// next to the quaternionic family where it equals d on the nose.

#include <cstdio>

#include "canondeg/family.hpp"

int main() {
  using namespace canondeg;
  std::printf("%6s %14s %14s %10s\n", "p", "ratio", "lower bound", "decimal");
  for (std::int64_t p : {23, 29, 41, 83, 167, 239, 331, 499}) {
    const auto m = modular_family_member(PrimeConfig::modular(2, p, {2}));
    std::printf("%6lld %14s %14s %10.6f\n", static_cast<long long>(p), to_string(m.ratio).c_str(),
                to_string(*m.lower_bound).c_str(), to_double(m.ratio));
  }

  const auto delta = factor_squarefree(26);
  for (std::int64_t l : {3, 7, 11, 17}) {
    const auto m = quaternionic_family_member(PrimeConfig::quaternionic(delta, 2, 5, {l}));
    std::printf("disc 26, p=5, l=%lld: deg %lld, chi %lld, ratio %s\n", static_cast<long long>(l),
                static_cast<long long>(m.deg_fK), static_cast<long long>(m.chi_CN),
                to_string(m.ratio).c_str());
  }
}

#pragma once

#include <cstdint>

#include "canondeg/arithmetic.hpp"
#include "canondeg/modular.hpp"

namespace canondeg {

/// X_0^delta(N): the Eichler-order quotient attached to the indefinite
/// quaternion algebra of discriminant delta. Compact, so there is no cusp count.
struct QuaternionCurveInvariants {
  FactoredSquarefree discriminant;
  FactoredSquarefree level;
  std::int64_t index = 0;
  std::int64_t e2 = 0;
  std::int64_t e3 = 0;
  std::int64_t genus = 0;
  std::int64_t chi = 0;
  bool torsion_free = false;  // e2 == 0 && e3 == 0
  bool fine_level = false;    // level >= 4, the moduli-theoretic criterion
};

inline void validate_discriminant(const FactoredSquarefree& delta) {
  CANONDEG_CHECK(delta.num_primes() >= 2 && delta.num_primes() % 2 == 0,
                 ErrorKind::InvalidDiscriminant,
                 std::to_string(delta.value()) +
                     " needs an even, positive number of prime factors");
}

inline QuaternionCurveInvariants shimura_invariants(const FactoredSquarefree& delta,
                                                    const FactoredSquarefree& level) {
  validate_discriminant(delta);
  CANONDEG_CHECK(delta.coprime_to(level), ErrorKind::NotCoprime,
                 "level " + std::to_string(level.value()) + " shares a factor with " +
                     std::to_string(delta.value()));
  QuaternionCurveInvariants inv;
  inv.discriminant = delta;
  inv.level = level;

  std::int64_t index = psi_index(level);
  std::int64_t e2 = 1;
  std::int64_t e3 = 1;
  for (std::int64_t p : delta.primes()) {
    index = checked_mul(index, p - 1);
    e2 *= 1 - chi_minus4(p);
    e3 *= 1 - chi_minus3(p);
  }
  for (std::int64_t q : level.primes()) {
    e2 *= 1 + chi_minus4(q);
    e3 *= 1 + chi_minus3(q);
  }
  inv.index = index;
  inv.e2 = e2;
  inv.e3 = e3;
  inv.genus = detail::genus_from_signature(index, e2, e3, 0);
  inv.chi = 2 - 2 * inv.genus;
  inv.torsion_free = e2 == 0 && e3 == 0;
  inv.fine_level = level.value() >= 4;
  return inv;
}

inline std::int64_t shimura_degeneracy_degree(const FactoredSquarefree& delta,
                                              const FactoredSquarefree& level,
                                              const FactoredSquarefree& sublevel) {
  validate_discriminant(delta);
  CANONDEG_CHECK(delta.coprime_to(level) && delta.coprime_to(sublevel), ErrorKind::NotCoprime,
                 "levels must be coprime to the discriminant");
  return degree_degeneracy(level, sublevel);
}

}  // namespace canondeg

#pragma once

#include <cstdint>

#include "canondeg/arithmetic.hpp"

namespace canondeg {

/// Signature data of X_0(N) for squarefree N.
struct Gamma0Invariants {
  FactoredSquarefree level;
  std::int64_t index = 0;  // [PSL_2(Z) : Gamma_0(N)]
  std::int64_t nu2 = 0;
  std::int64_t nu3 = 0;
  std::int64_t cusps = 0;
  std::int64_t genus = 0;
  std::int64_t chi = 0;  // 2 - 2 * genus
};

struct EllipticCounts {
  std::int64_t nu2 = 0;
  std::int64_t nu3 = 0;
};

/// N * prod_{l | N} (1 + 1/l), which for squarefree N is prod (l + 1).
inline std::int64_t psi_index(const FactoredSquarefree& level) {
  std::int64_t out = 1;
  for (std::int64_t l : level.primes()) out = checked_mul(out, l + 1);
  return out;
}

/// Common degree of s_M^N and t_M^N : X_0(N) -> X_0(M).
inline std::int64_t degree_degeneracy(const FactoredSquarefree& level,
                                      const FactoredSquarefree& sublevel) {
  return psi_index(level.quotient(sublevel));
}

inline EllipticCounts elliptic_counts(const FactoredSquarefree& level) {
  EllipticCounts c{1, 1};
  for (std::int64_t p : level.primes()) {
    c.nu2 *= 1 + chi_minus4(p);
    c.nu3 *= 1 + chi_minus3(p);
  }
  return c;
}

namespace detail {

/// 1 + mu/12 - e2/4 - e3/3 - cusps/2, checked to be a nonnegative integer.
inline std::int64_t genus_from_signature(std::int64_t index, std::int64_t e2, std::int64_t e3,
                                         std::int64_t cusps) {
  const Rational g = Rational(1) + make_rational(index, 12) - make_rational(e2, 4) -
                     make_rational(e3, 3) - make_rational(cusps, 2);
  CANONDEG_CHECK(is_integer(g) && g >= 0, ErrorKind::InternalInconsistency,
                 "genus formula gave " + to_string(g));
  return g.convert_to<std::int64_t>();
}

}  // namespace detail

inline Gamma0Invariants gamma0_invariants(const FactoredSquarefree& level) {
  Gamma0Invariants inv;
  inv.level = level;
  inv.index = psi_index(level);
  const EllipticCounts e = elliptic_counts(level);
  inv.nu2 = e.nu2;
  inv.nu3 = e.nu3;
  inv.cusps = std::int64_t{1} << level.num_primes();
  inv.genus = detail::genus_from_signature(inv.index, inv.nu2, inv.nu3, inv.cusps);
  inv.chi = 2 - 2 * inv.genus;
  return inv;
}

/// Residual s = psi(N)/6 + chi(X_0(N)) and the bound it must sit under.
struct ChiWindowCheck {
  Rational residual;
  Rational upper_bound;  // (13/6) * 2^r

  bool holds() const { return residual >= 0 && residual <= upper_bound; }
  bool at_upper_bound() const { return residual == upper_bound; }
};

inline ChiWindowCheck check_chi_window(const FactoredSquarefree& level) {
  const Gamma0Invariants inv = gamma0_invariants(level);
  ChiWindowCheck c;
  c.residual = make_rational(inv.index, 6) + inv.chi;
  c.upper_bound = make_rational(13, 6) * (std::int64_t{1} << level.num_primes());
  return c;
}

inline bool check_chi_negative(const FactoredSquarefree& level) {
  return gamma0_invariants(level).chi < 0;
}

}  // namespace canondeg

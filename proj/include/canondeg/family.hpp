#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "canondeg/arithmetic.hpp"
#include "canondeg/modular.hpp"
#include "canondeg/parallel.hpp"
#include "canondeg/shimura.hpp"

namespace canondeg {

enum class CurveKind { Modular, Quaternionic };

constexpr std::string_view to_string(CurveKind kind) {
  return kind == CurveKind::Modular ? "modular" : "quat";
}

/// Distinct primes p, l_1, ..., l_{d-1} defining C_N -> X = C_p^d with
/// N = p * l_1 * ... * l_{d-1}.
struct PrimeConfig {
  CurveKind kind = CurveKind::Modular;
  FactoredSquarefree delta;  // quaternionic only
  int d = 1;
  std::int64_t p = 0;
  std::vector<std::int64_t> ells;

  static PrimeConfig modular(int d, std::int64_t p, std::vector<std::int64_t> ells) {
    PrimeConfig c;
    c.kind = CurveKind::Modular;
    c.d = d;
    c.p = p;
    c.ells = std::move(ells);
    c.validate();
    return c;
  }

  static PrimeConfig quaternionic(const FactoredSquarefree& delta, int d, std::int64_t p,
                                  std::vector<std::int64_t> ells) {
    PrimeConfig c;
    c.kind = CurveKind::Quaternionic;
    c.delta = delta;
    c.d = d;
    c.p = p;
    c.ells = std::move(ells);
    c.validate();
    return c;
  }

  void validate() const {
    CANONDEG_CHECK(d >= 1, ErrorKind::InvalidInput, "d must be >= 1");
    CANONDEG_CHECK(ells.size() == static_cast<std::size_t>(d - 1), ErrorKind::InvalidInput,
                   "expected " + std::to_string(d - 1) + " ells, got " +
                       std::to_string(ells.size()));
    CANONDEG_CHECK(is_prime(p), ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    for (std::int64_t l : ells) {
      CANONDEG_CHECK(l != p, ErrorKind::InvalidInput, "ells must differ from p");
    }
    // from_primes rejects composite and repeated ells.
    (void)level();
    if (kind == CurveKind::Modular) {
      CANONDEG_CHECK(p >= 23, ErrorKind::InvalidInput, "modular family needs p >= 23");
    } else {
      validate_discriminant(delta);
      CANONDEG_CHECK(p > 4, ErrorKind::InvalidInput, "quaternionic family needs p > 4");
      CANONDEG_CHECK(level().coprime_to(delta), ErrorKind::NotCoprime,
                     "primes must not divide the discriminant");
    }
  }

  FactoredSquarefree level() const {
    std::vector<std::int64_t> primes = ells;
    primes.push_back(p);
    return FactoredSquarefree::from_primes(std::move(primes));
  }

  FactoredSquarefree base_level() const { return FactoredSquarefree::from_primes({p}); }
};

/// One curve (C_N, f_N) with its exact canonical degree.
struct FamilyMember {
  PrimeConfig config;
  FactoredSquarefree level;
  std::int64_t deg_fK = 0;  // deg_{C_N} f_N^* K_X
  std::int64_t chi_CN = 0;
  Rational ratio;                       // deg_fK / (-chi_CN)
  std::optional<Rational> lower_bound;  // modular only: d (1 - 26/(p+1))

  bool satisfies_bound() const {
    if (config.kind == CurveKind::Quaternionic) return ratio == config.d;
    return ratio >= *lower_bound;
  }
};

namespace detail {

inline std::int64_t chi_of(const PrimeConfig& config, const FactoredSquarefree& level) {
  if (config.kind == CurveKind::Modular) return gamma0_invariants(level).chi;
  return shimura_invariants(config.delta, level).chi;
}

inline std::int64_t ell_product(const PrimeConfig& config) {
  std::int64_t out = 1;
  for (std::int64_t l : config.ells) out = checked_mul(out, l + 1);
  return out;
}

}  // namespace detail

/// Degrees of the d coordinate maps g_i : C_N -> C_p, each composed from
/// degeneracy maps: g_i = t_p^{l_i p} o s_{l_i p}^N for i < d, g_d = s_p^N.
inline std::vector<std::int64_t> component_degrees(const PrimeConfig& config) {
  const FactoredSquarefree level = config.level();
  const FactoredSquarefree base = config.base_level();
  std::vector<std::int64_t> out;
  out.reserve(config.d);
  for (std::int64_t l : config.ells) {
    const FactoredSquarefree mid = FactoredSquarefree::from_primes({l, config.p});
    out.push_back(checked_mul(degree_degeneracy(level, mid), degree_degeneracy(mid, base)));
  }
  out.push_back(degree_degeneracy(level, base));
  return out;
}

/// d (1 - 26/(p+1)); negative (vacuous) for p < 25.
inline Rational modular_ratio_lower_bound(std::int64_t p, int d) {
  CANONDEG_CHECK(p >= 23, ErrorKind::InvalidInput, "bound needs p >= 23");
  CANONDEG_CHECK(is_prime(p), ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
  CANONDEG_CHECK(d >= 1, ErrorKind::InvalidInput, "d must be >= 1");
  return Rational(d) * (Rational(1) - make_rational(26, p + 1));
}

namespace detail {

inline FamilyMember build_member(const PrimeConfig& config) {
  FamilyMember m;
  m.config = config;
  m.level = config.level();
  const std::int64_t chi_p = chi_of(config, config.base_level());

  // deg f_N^* K_X = -d (l_1 + 1) ... (l_{d-1} + 1) chi(C_p)
  m.deg_fK = checked_mul(checked_mul(-config.d, ell_product(config)), chi_p);

  std::int64_t summed = 0;
  for (std::int64_t deg : component_degrees(config)) summed += checked_mul(deg, -chi_p);
  CANONDEG_CHECK(summed == m.deg_fK, ErrorKind::InternalInconsistency,
                 "component degrees disagree with the closed degree identity");

  m.chi_CN = chi_of(config, m.level);
  CANONDEG_CHECK(m.chi_CN < 0 && m.deg_fK > 0, ErrorKind::InternalInconsistency,
                 "expected chi(C_N) < 0 and a positive canonical degree");
  m.ratio = make_rational(m.deg_fK, -m.chi_CN);
  return m;
}

}  // namespace detail

inline FamilyMember modular_family_member(const PrimeConfig& config) {
  config.validate();
  CANONDEG_CHECK(config.kind == CurveKind::Modular, ErrorKind::InvalidInput,
                 "expected a modular configuration");
  FamilyMember m = detail::build_member(config);
  m.lower_bound = modular_ratio_lower_bound(config.p, config.d);
  return m;
}

/// Every level the construction passes through: p, each l_i p, and N.
inline std::vector<FactoredSquarefree> involved_levels(const PrimeConfig& config) {
  std::vector<FactoredSquarefree> out{config.base_level()};
  for (std::int64_t l : config.ells) out.push_back(FactoredSquarefree::from_primes({l, config.p}));
  if (config.d > 1) out.push_back(config.level());
  return out;
}

inline FamilyMember quaternionic_family_member(const PrimeConfig& config) {
  config.validate();
  CANONDEG_CHECK(config.kind == CurveKind::Quaternionic, ErrorKind::InvalidInput,
                 "expected a quaternionic configuration");
  for (const FactoredSquarefree& level : involved_levels(config)) {
    const QuaternionCurveInvariants inv = shimura_invariants(config.delta, level);
    CANONDEG_CHECK(inv.torsion_free, ErrorKind::NotTorsionFree,
                   "level " + std::to_string(level.value()) + " has e2=" +
                       std::to_string(inv.e2) + ", e3=" + std::to_string(inv.e3));
  }
  FamilyMember m = detail::build_member(config);
  CANONDEG_CHECK(m.ratio == config.d, ErrorKind::InternalInconsistency,
                 "canonical degree ratio " + to_string(m.ratio) + " differs from d");
  return m;
}

inline FamilyMember family_member(const PrimeConfig& config) {
  return config.kind == CurveKind::Modular ? modular_family_member(config)
                                           : quaternionic_family_member(config);
}

struct SearchRequest {
  CurveKind kind = CurveKind::Modular;
  FactoredSquarefree delta;
  int d = 2;
  std::int64_t p_max = 0;
  std::int64_t ell_max = 0;
  bool parallel = false;
};

namespace detail {

inline void for_each_combination(const std::vector<std::int64_t>& pool, std::size_t k,
                                 const std::function<void(std::vector<std::int64_t>)>& visit) {
  if (k > pool.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<std::int64_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = pool[idx[i]];
    visit(std::move(pick));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// All admissible configurations within the bounds, ells taken as increasing
/// combinations. Sorted by ratio descending, then (p, ells) ascending.
/// Quaternionic configurations whose levels carry elliptic points are skipped.
inline std::vector<FamilyMember> search_configs(const SearchRequest& req) {
  CANONDEG_CHECK(req.d >= 1, ErrorKind::InvalidInput, "d must be >= 1");
  const bool quat = req.kind == CurveKind::Quaternionic;
  if (quat) validate_discriminant(req.delta);
  const std::int64_t p_min = quat ? 5 : 23;

  std::vector<PrimeConfig> configs;
  const std::vector<std::int64_t> ell_primes = primes_in_range(2, std::max<std::int64_t>(req.ell_max, 1));
  for (std::int64_t p : primes_in_range(p_min, req.p_max)) {
    if (quat && req.delta.value() % p == 0) continue;
    std::vector<std::int64_t> pool;
    for (std::int64_t l : ell_primes) {
      if (l == p || (quat && req.delta.value() % l == 0)) continue;
      pool.push_back(l);
    }
    detail::for_each_combination(pool, static_cast<std::size_t>(req.d - 1),
                                 [&](std::vector<std::int64_t> ells) {
                                   PrimeConfig c;
                                   c.kind = req.kind;
                                   c.delta = req.delta;
                                   c.d = req.d;
                                   c.p = p;
                                   c.ells = std::move(ells);
                                   configs.push_back(std::move(c));
                                 });
  }

  auto members = detail::indexed_map(
      configs.size(),
      [&](std::size_t i) -> std::optional<FamilyMember> {
        try {
          return family_member(configs[i]);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::NotTorsionFree) return std::nullopt;
          throw;
        }
      },
      req.parallel);

  std::vector<FamilyMember> out;
  for (auto& m : members) {
    if (m) out.push_back(std::move(*m));
  }
  std::stable_sort(out.begin(), out.end(), [](const FamilyMember& a, const FamilyMember& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    if (a.config.p != b.config.p) return a.config.p < b.config.p;
    return a.config.ells < b.config.ells;
  });
  return out;
}

struct DivergenceCheck {
  std::vector<std::int64_t> neg_chi;

  bool strictly_increasing() const {
    for (std::size_t i = 1; i < neg_chi.size(); ++i) {
      if (neg_chi[i] <= neg_chi[i - 1]) return false;
    }
    return true;
  }
};

/// -chi(C_N) along a sequence of ell-lists sharing kind, d, p (and delta).
inline DivergenceCheck chi_divergence_check(const PrimeConfig& base,
                                            const std::vector<std::vector<std::int64_t>>& ells_sequence) {
  DivergenceCheck out;
  for (const auto& ells : ells_sequence) {
    PrimeConfig c = base;
    c.ells = ells;
    out.neg_chi.push_back(-family_member(c).chi_CN);
  }
  return out;
}

}  // namespace canondeg

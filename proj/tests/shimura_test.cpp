#include <gtest/gtest.h>

#include "canondeg/shimura.hpp"

namespace canondeg {
namespace {

FactoredSquarefree sf(std::int64_t n) { return factor_squarefree(n); }

TEST(ShimuraInvariants, Examples) {
  const auto d6 = shimura_invariants(sf(6), sf(1));
  EXPECT_EQ(d6.genus, 0);
  EXPECT_EQ(d6.e2, 2);
  EXPECT_EQ(d6.e3, 2);
  EXPECT_FALSE(d6.torsion_free);

  const auto d26 = shimura_invariants(sf(26), sf(1));
  EXPECT_EQ(d26.genus, 2);
  EXPECT_EQ(d26.e2, 0);
  EXPECT_EQ(d26.e3, 0);
  EXPECT_EQ(d26.chi, -2);
  EXPECT_TRUE(d26.torsion_free);
  EXPECT_FALSE(d26.fine_level);

  const auto d26n5 = shimura_invariants(sf(26), sf(5));
  EXPECT_EQ(d26n5.index, 72);
  EXPECT_EQ(d26n5.genus, 7);
  EXPECT_EQ(d26n5.chi, -12);
  EXPECT_TRUE(d26n5.fine_level);
}

TEST(ShimuraInvariants, PublishedGenera) {
  EXPECT_EQ(shimura_invariants(sf(6), sf(1)).genus, 0);
  EXPECT_EQ(shimura_invariants(sf(10), sf(1)).genus, 0);
  EXPECT_EQ(shimura_invariants(sf(22), sf(1)).genus, 0);
  EXPECT_EQ(shimura_invariants(sf(26), sf(1)).genus, 2);
  EXPECT_EQ(shimura_invariants(sf(35), sf(1)).genus, 3);
  EXPECT_EQ(shimura_invariants(sf(6), sf(5)).genus, 1);
}

TEST(ShimuraInvariants, Errors) {
  try {
    shimura_invariants(sf(2), sf(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidDiscriminant);
  }
  EXPECT_THROW(shimura_invariants(sf(1), sf(1)), Error);
  EXPECT_THROW(shimura_invariants(sf(30), sf(1)), Error);
  try {
    shimura_invariants(sf(26), sf(13));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCoprime);
  }
}

TEST(ShimuraDegeneracy, Examples) {
  EXPECT_EQ(shimura_degeneracy_degree(sf(26), sf(15), sf(5)), 4);
  EXPECT_EQ(shimura_degeneracy_degree(sf(26), sf(5), sf(5)), 1);
  EXPECT_EQ(shimura_degeneracy_degree(sf(26), sf(15), sf(1)), 24);
  EXPECT_THROW(shimura_degeneracy_degree(sf(26), sf(26), sf(1)), Error);
  EXPECT_THROW(shimura_degeneracy_degree(sf(26), sf(15), sf(7)), Error);
}

TEST(ShimuraInvariants, ChiMultiplicativeInLevel) {
  const auto delta = sf(26);
  const std::int64_t chi5 = shimura_invariants(delta, sf(5)).chi;
  for (std::int64_t l : primes_in_range(2, 50)) {
    if (l == 2 || l == 13 || l == 5) continue;
    const auto inv = shimura_invariants(delta, sf(5 * l));
    ASSERT_TRUE(inv.torsion_free);
    EXPECT_EQ(inv.chi, (l + 1) * chi5) << l;

    const std::int64_t chi1 = shimura_invariants(delta, sf(1)).chi;
    EXPECT_EQ(shimura_invariants(delta, sf(l)).chi, (l + 1) * chi1) << l;
  }
}

TEST(ShimuraInvariants, IntegralGenusOnValidPairs) {
  int pairs = 0;
  for (std::int64_t d = 6; d <= 200; ++d) {
    FactoredSquarefree delta;
    try {
      delta = sf(d);
      validate_discriminant(delta);
    } catch (const Error&) {
      continue;
    }
    for (std::int64_t n = 1; n <= 200; ++n) {
      FactoredSquarefree level;
      try {
        level = sf(n);
      } catch (const Error&) {
        continue;
      }
      if (!delta.coprime_to(level)) continue;
      const auto inv = shimura_invariants(delta, level);
      ASSERT_GE(inv.genus, 0);
      ASSERT_EQ(inv.chi, 2 - 2 * inv.genus);
      ASSERT_EQ(inv.torsion_free, inv.e2 == 0 && inv.e3 == 0);
      ++pairs;
    }
  }
  EXPECT_GT(pairs, 1000);
}

TEST(ShimuraInvariants, SufficientConditionForTorsionFree) {
  for (std::int64_t d = 6; d <= 400; ++d) {
    FactoredSquarefree delta;
    try {
      delta = sf(d);
      validate_discriminant(delta);
    } catch (const Error&) {
      continue;
    }
    bool has1mod4 = false, has1mod3 = false;
    for (std::int64_t p : delta.primes()) {
      has1mod4 |= p % 4 == 1;
      has1mod3 |= p % 3 == 1;
    }
    if (!(has1mod4 && has1mod3)) continue;
    for (std::int64_t n : {1, 5, 7, 11, 35}) {
      const auto level = sf(n);
      if (!delta.coprime_to(level)) continue;
      const auto inv = shimura_invariants(delta, level);
      EXPECT_EQ(inv.e2, 0) << d;
      EXPECT_EQ(inv.e3, 0) << d;
    }
  }
}

}  // namespace
}  // namespace canondeg

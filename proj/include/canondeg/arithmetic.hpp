#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "canondeg/error.hpp"

namespace canondeg {

using BigInt = boost::multiprecision::cpp_int;
// cpp_rational normalizes on every operation: lowest terms, positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  CANONDEG_CHECK(den != 0, ErrorKind::InvalidInput, "zero denominator");
  if (den < 0) return Rational(-BigInt(num), -BigInt(den));
  return Rational(BigInt(num), BigInt(den));
}

/// Always "num/den", including integers ("2/1").
inline std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  CANONDEG_CHECK(!__builtin_mul_overflow(a, b, &r), ErrorKind::InvalidInput,
                 "integer overflow in product");
  return r;
}

// Deterministic trial division; inputs stay well below 10^12.
inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

/// Primes in [lo, hi], increasing.
inline std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  if (hi < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
  for (std::int64_t i = 2; i <= hi; ++i) {
    if (composite[i]) continue;
    if (i >= lo) out.push_back(i);
    for (std::int64_t j = i * i; j <= hi; j += i) composite[j] = true;
  }
  return out;
}

/// A positive squarefree integer and its sorted prime factors.
class FactoredSquarefree {
 public:
  FactoredSquarefree() = default;  // the integer 1

  /// Builds from a list of primes in any order; rejects repeats and non-primes.
  static FactoredSquarefree from_primes(std::vector<std::int64_t> primes) {
    std::sort(primes.begin(), primes.end());
    std::int64_t value = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      CANONDEG_CHECK(is_prime(primes[i]), ErrorKind::InvalidInput,
                     std::to_string(primes[i]) + " is not prime");
      CANONDEG_CHECK(i == 0 || primes[i] != primes[i - 1], ErrorKind::NotSquarefree,
                     "repeated prime " + std::to_string(primes[i]));
      value = checked_mul(value, primes[i]);
    }
    FactoredSquarefree f;
    f.value_ = value;
    f.primes_ = std::move(primes);
    return f;
  }

  std::int64_t value() const noexcept { return value_; }
  const std::vector<std::int64_t>& primes() const noexcept { return primes_; }
  std::size_t num_primes() const noexcept { return primes_.size(); }

  bool divides(const FactoredSquarefree& other) const noexcept {
    return other.value_ % value_ == 0;
  }

  bool coprime_to(const FactoredSquarefree& other) const noexcept {
    return std::gcd(value_, other.value_) == 1;
  }

  /// this / divisor; throws NotDivisor.
  FactoredSquarefree quotient(const FactoredSquarefree& divisor) const {
    CANONDEG_CHECK(divisor.divides(*this), ErrorKind::NotDivisor,
                   std::to_string(divisor.value_) + " does not divide " + std::to_string(value_));
    std::vector<std::int64_t> rest;
    std::set_difference(primes_.begin(), primes_.end(), divisor.primes_.begin(),
                        divisor.primes_.end(), std::back_inserter(rest));
    FactoredSquarefree f;
    f.value_ = value_ / divisor.value_;
    f.primes_ = std::move(rest);
    return f;
  }

  friend bool operator==(const FactoredSquarefree& a, const FactoredSquarefree& b) {
    return a.value_ == b.value_;
  }

 private:
  std::int64_t value_ = 1;
  std::vector<std::int64_t> primes_;
};

inline FactoredSquarefree factor_squarefree(std::int64_t n) {
  CANONDEG_CHECK(n >= 1, ErrorKind::InvalidInput, "expected n >= 1, got " + std::to_string(n));
  std::vector<std::int64_t> primes;
  std::int64_t rest = n;
  for (std::int64_t d = 2; d * d <= rest; ++d) {
    if (rest % d != 0) continue;
    rest /= d;
    CANONDEG_CHECK(rest % d != 0, ErrorKind::NotSquarefree,
                   std::to_string(n) + " is not squarefree (" + std::to_string(d * d) +
                       " divides it)");
    primes.push_back(d);
  }
  if (rest > 1) primes.push_back(rest);
  return FactoredSquarefree::from_primes(std::move(primes));
}

/// Kronecker symbol (a / p) for a prime p. For odd p this is the Legendre
/// symbol; for p = 2 it is 0 for even a, +1 for a = +-1 mod 8, -1 for
/// a = +-3 mod 8, which yields chi_{-4}(2) = 0 and chi_{-3}(2) = -1.
inline int kronecker(std::int64_t a, std::int64_t p) {
  CANONDEG_CHECK(is_prime(p), ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
  if (p == 2) {
    const std::int64_t r = ((a % 8) + 8) % 8;
    if (r % 2 == 0) return 0;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  // Binary Jacobi algorithm on (a mod p, p).
  std::int64_t x = ((a % p) + p) % p;
  std::int64_t n = p;
  int t = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(x, n);
    if (x % 4 == 3 && n % 4 == 3) t = -t;
    x %= n;
  }
  return n == 1 ? t : 0;
}

inline int chi_minus4(std::int64_t p) { return kronecker(-4, p); }
inline int chi_minus3(std::int64_t p) { return kronecker(-3, p); }

}  // namespace canondeg

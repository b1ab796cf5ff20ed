#pragma once

// Batch verification of the identities and inequalities the library encodes.
// Used by `canondeg verify-all` and by the acceptance suite.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "canondeg/arithmetic.hpp"
#include "canondeg/curvature.hpp"
#include "canondeg/family.hpp"
#include "canondeg/modular.hpp"
#include "canondeg/shimura.hpp"

namespace canondeg {

struct VerifyOptions {
  bool fast = false;
  std::uint64_t seed = 0;
  double tol = 1e-6;       // value agreement
  double grad_tol = 1e-5;  // gradient relative error
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  std::int64_t cases = 0;
};

/// Central differences of tashiro_functional along an orthonormal basis of
/// the domain's real tangent space, assembled back into a matrix.
inline ComplexMatrix finite_difference_gradient(const ClassicalDomain& domain,
                                                const ComplexMatrix& z, double h = 1e-5) {
  const Eigen::Index rows = z.rows();
  const Eigen::Index cols = z.cols();
  ComplexMatrix out = ComplexMatrix::Zero(rows, cols);
  const auto add_direction = [&](const ComplexMatrix& e) {
    const double scale = e.norm();
    const ComplexMatrix u = e / scale;
    const double deriv =
        (tashiro_functional(domain, z + h * u) - tashiro_functional(domain, z - h * u)) / (2 * h);
    out += deriv * u;
  };
  const std::complex<double> units[2] = {{1, 0}, {0, 1}};
  for (const auto unit : units) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(rows, cols);
        switch (domain.type()) {
          case DomainType::II:
            if (j < i) continue;
            e(i, j) += unit;
            if (i != j) e(j, i) += unit;
            break;
          case DomainType::III:
            if (j <= i) continue;
            e(i, j) = unit;
            e(j, i) = -unit;
            break;
          default:
            e(i, j) = unit;
        }
        add_direction(e);
      }
    }
  }
  return out;
}

inline ComplexMatrix random_domain_point(const ClassicalDomain& domain, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix z(domain.rows(), domain.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(i, j) = {re, im};
    }
  }
  if (domain.type() == DomainType::II) {
    const ComplexMatrix t = z.transpose();
    z = 0.5 * (z + t);
  } else if (domain.type() == DomainType::III) {
    const ComplexMatrix t = z.transpose();
    z = 0.5 * (z - t);
  }
  return z;
}

/// Every classical domain whose parameters are at most `bound`.
inline std::vector<ClassicalDomain> classical_domains_up_to(int bound) {
  std::vector<ClassicalDomain> out;
  for (int n = 1; n <= bound; ++n) {
    for (int m = 1; m <= n; ++m) out.push_back(ClassicalDomain::type_I(n, m));
  }
  for (int n = 1; n <= bound; ++n) out.push_back(ClassicalDomain::type_II(n));
  for (int n = 2; n <= bound; ++n) out.push_back(ClassicalDomain::type_III(n));
  for (int n = 1; n <= bound; ++n) out.push_back(ClassicalDomain::type_IV(n));
  return out;
}

/// Published genus values of X_0(N).
inline const std::vector<std::pair<std::int64_t, std::int64_t>>& gamma0_genus_table() {
  static const std::vector<std::pair<std::int64_t, std::int64_t>> table = {
      {1, 0}, {11, 1}, {23, 2}, {29, 2}, {37, 2}, {58, 6}, {101, 8}, {202, 24}};
  return table;
}

/// Published genus values of the level-1 Shimura curve of discriminant delta.
inline const std::vector<std::pair<std::int64_t, std::int64_t>>& shimura_genus_table() {
  static const std::vector<std::pair<std::int64_t, std::int64_t>> table = {
      {6, 0}, {10, 0}, {26, 2}};
  return table;
}

namespace detail {

inline std::vector<std::int64_t> squarefree_up_to(std::int64_t limit) {
  std::vector<bool> bad(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t p = 2; p * p <= limit; ++p) {
    for (std::int64_t k = p * p; k <= limit; k += p * p) bad[k] = true;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1; n <= limit; ++n) {
    if (!bad[n]) out.push_back(n);
  }
  return out;
}

class Collector {
 public:
  Collector(int id, std::string name) {
    r_.id = id;
    r_.name = std::move(name);
    r_.pass = true;
  }

  void expect(bool ok, const std::string& what) {
    ++r_.cases;
    if (!ok) {
      if (r_.pass) r_.detail = what;  // first failure
      r_.pass = false;
    }
  }

  void note(const std::string& what) {
    if (r_.pass) r_.detail = what;
  }

  CheckResult done() { return std::move(r_); }

 private:
  CheckResult r_;
};

inline std::string str(std::int64_t v) { return std::to_string(v); }

}  // namespace detail

inline CheckResult check_genus_table() {
  detail::Collector c(1, "gamma0 genus table");
  for (const auto& [level, genus] : gamma0_genus_table()) {
    const auto inv = gamma0_invariants(factor_squarefree(level));
    c.expect(inv.genus == genus && inv.chi == 2 - 2 * genus,
             "N=" + detail::str(level) + " gave genus " + detail::str(inv.genus));
  }
  c.note("8 levels match");
  return c.done();
}

inline CheckResult check_chi_window_range(const VerifyOptions& opts) {
  const std::int64_t limit = opts.fast ? 2000 : 10000;
  detail::Collector c(2, "chi window, squarefree N <= " + detail::str(limit));
  for (std::int64_t n : detail::squarefree_up_to(limit)) {
    const auto w = check_chi_window(factor_squarefree(n));
    c.expect(w.holds(), "N=" + detail::str(n) + " residual " + to_string(w.residual));
  }
  const auto one = check_chi_window(FactoredSquarefree{});
  c.expect(one.at_upper_bound() && one.residual == make_rational(13, 6),
           "N=1 does not attain 13/6");
  c.note("window holds; N=1 attains 13/6");
  return c.done();
}

inline CheckResult check_chi_negative_range(const VerifyOptions& opts) {
  const std::int64_t limit = opts.fast ? 2000 : 10000;
  detail::Collector c(3, "chi < 0 for squarefree 22 <= N <= " + detail::str(limit));
  for (std::int64_t n : detail::squarefree_up_to(limit)) {
    if (n < 22) continue;
    c.expect(check_chi_negative(factor_squarefree(n)), "N=" + detail::str(n));
  }
  c.note("all negative");
  return c.done();
}

inline CheckResult check_modular_ratio_bound(const VerifyOptions& opts) {
  const std::int64_t p_max = opts.fast ? 200 : 500;
  detail::Collector c(4, "modular ratio >= d(1 - 26/(p+1)), p <= " + detail::str(p_max));
  const auto small = primes_in_range(2, 10);
  for (int d : {2, 3}) {
    for (std::int64_t p : primes_in_range(23, p_max)) {
      std::vector<std::int64_t> ells;
      for (std::int64_t l : small) {
        if (static_cast<int>(ells.size()) == d - 1) break;
        if (l != p) ells.push_back(l);
      }
      const auto m = modular_family_member(PrimeConfig::modular(d, p, ells));
      c.expect(m.ratio >= *m.lower_bound,
               "d=" + std::to_string(d) + " p=" + detail::str(p) + " ratio " + to_string(m.ratio));
    }
  }
  const auto spot = modular_family_member(PrimeConfig::modular(2, 29, {2}));
  c.expect(spot.ratio == make_rational(6, 5) && *spot.lower_bound == make_rational(4, 15),
           "spot value (2, 29, [2]) gave " + to_string(spot.ratio));
  c.note("ratio(2, 29, [2]) = 6/5 >= 4/15");
  return c.done();
}

inline CheckResult check_quaternionic_ratio() {
  detail::Collector c(5, "quaternionic ratio = d for delta = 26; Shimura genus table");
  const auto delta = factor_squarefree(26);
  const std::vector<std::int64_t> pool = {3, 7, 11};
  for (int d : {1, 2, 3}) {
    detail::for_each_combination(pool, static_cast<std::size_t>(d - 1), [&](std::vector<std::int64_t> ells) {
      const auto config = PrimeConfig::quaternionic(delta, d, 5, ells);
      for (const auto& level : involved_levels(config)) {
        const auto inv = shimura_invariants(delta, level);
        c.expect(inv.e2 == 0 && inv.e3 == 0, "level " + detail::str(level.value()) + " not torsion-free");
      }
      const auto m = quaternionic_family_member(config);
      c.expect(m.ratio == d, "d=" + std::to_string(d) + " ratio " + to_string(m.ratio));
    });
  }
  for (const auto& [disc, genus] : shimura_genus_table()) {
    const auto inv = shimura_invariants(factor_squarefree(disc), FactoredSquarefree{});
    c.expect(inv.genus == genus, "delta=" + detail::str(disc) + " genus " + detail::str(inv.genus));
  }
  c.note("ratios equal d; genus table matches");
  return c.done();
}

inline CheckResult check_chi_multiplicativity() {
  detail::Collector c(6, "chi(26, 5l) = (l+1) chi(26, 5), l <= 50");
  const auto delta = factor_squarefree(26);
  const std::int64_t base = shimura_invariants(delta, factor_squarefree(5)).chi;
  for (std::int64_t l : primes_in_range(2, 50)) {
    if (l == 2 || l == 13 || l == 5) continue;
    const std::int64_t chi = shimura_invariants(delta, factor_squarefree(5 * l)).chi;
    c.expect(chi == (l + 1) * base, "l=" + detail::str(l) + " chi " + detail::str(chi));
  }
  c.note("chi(26, 5) = " + detail::str(base));
  return c.done();
}

inline CheckResult check_curvature_closed_forms(const VerifyOptions& opts) {
  detail::Collector c(7, "numerical -1/S matches closed forms");
  CurvatureOptions co;
  co.seed = opts.seed;
  std::vector<ClassicalDomain> domains;
  for (int n = 1; n <= 4; ++n) {
    for (int m = 1; m <= n; ++m) domains.push_back(ClassicalDomain::type_I(n, m));
  }
  for (int n = 1; n <= 6; ++n) domains.push_back(ClassicalDomain::type_II(n));
  for (int n = 1; n <= 6; ++n) domains.push_back(ClassicalDomain::type_IV(n));
  for (int n = 2; n <= 6; ++n) domains.push_back(ClassicalDomain::type_III(n));
  double worst = 0;
  for (const auto& d : domains) {
    const auto e = numerical_curvature_inverse(d, co);
    worst = std::max(worst, e.closed_gap());
    c.expect(e.closed_gap() <= opts.tol && e.converged(),
             d.name() + " numerical " + std::to_string(e.numerical_inv));
  }
  c.expect(curvature_inverse_closed(ClassicalDomain::type_III(3))->value == 2,
           "III(3) closed form");
  c.expect(curvature_inverse_closed(ClassicalDomain::type_III(5))->value == 8, "III(5) closed form");
  std::ostringstream os;
  os << "worst gap " << worst;
  c.note(os.str());
  return c.done();
}

inline CheckResult check_curvature_dimension_bound(const VerifyOptions& opts) {
  detail::Collector c(8, "-1/S <= dim; polydisk equality; degree bound");
  const auto domains = classical_domains_up_to(8);
  CurvatureOptions co;
  co.seed = opts.seed;
  if (opts.fast) co.restarts = 8;
  for (const auto& d : domains) {
    const auto exact = verify_tashiro(d);
    c.expect(exact.pass, d.name() + " closed form exceeds dim");
    const auto numeric = verify_tashiro(numerical_curvature_inverse(d, co), opts.tol);
    c.expect(numeric.pass, d.name() + " numerical value exceeds dim");
  }
  std::mt19937_64 rng(opts.seed ^ 0x70726f64756374ULL);
  std::uniform_int_distribution<std::size_t> pick(0, domains.size() - 1);
  std::uniform_int_distribution<int> count(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ClassicalDomain> factors;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) factors.push_back(domains[pick(rng)]);
    c.expect(verify_tashiro(factors).pass, "random product " + std::to_string(trial));
  }
  for (int d = 1; d <= 8; ++d) {
    const std::vector<ClassicalDomain> poly(static_cast<std::size_t>(d), ClassicalDomain::disk());
    const auto t = verify_tashiro(poly);
    c.expect(t.inv == d && t.equality, "polydisk " + std::to_string(d));
    for (std::int64_t chi : {-2, -10, -48}) {
      c.expect(canonical_degree_bound(t.inv, chi) == -d * chi,
               "degree bound for polydisk " + std::to_string(d));
    }
  }
  c.note(std::to_string(domains.size()) + " domains, 100 products");
  return c.done();
}

inline CheckResult check_gradients(const VerifyOptions& opts) {
  detail::Collector c(9, "analytic gradient vs central differences");
  const std::vector<ClassicalDomain> domains = {ClassicalDomain::type_I(3, 2), ClassicalDomain::type_II(3),
                                                ClassicalDomain::type_III(4), ClassicalDomain::type_IV(4)};
  double worst = 0;
  for (std::size_t k = 0; k < domains.size(); ++k) {
    std::mt19937_64 rng = restart_rng(opts.seed, 1000 + k);
    for (int i = 0; i < 100; ++i) {
      const ComplexMatrix z = random_domain_point(domains[k], rng);
      const ComplexMatrix g = functional_gradient(domains[k], z);
      const ComplexMatrix fd = finite_difference_gradient(domains[k], z);
      const double rel = (g - fd).norm() / g.norm();
      worst = std::max(worst, rel);
      c.expect(rel <= opts.grad_tol, domains[k].name() + " point " + std::to_string(i));
    }
  }
  std::ostringstream os;
  os << "worst relative error " << worst;
  c.note(os.str());
  return c.done();
}

inline CheckResult check_degree_chain_equality() {
  detail::Collector c(10, "degree chain equality for the (26, 2, 5, [3]) member");
  const auto chain = check_degree_chain(-48, 0, 96, 2);
  c.expect(chain.pass() && chain.curvature_equality, "chain did not hold with equality");
  const auto m = quaternionic_family_member(PrimeConfig::quaternionic(factor_squarefree(26), 2, 5, {3}));
  c.expect(m.deg_fK == 96 && m.chi_CN == -48, "member gave deg " + detail::str(m.deg_fK));
  c.expect(canonical_degree_bound(2, m.chi_CN) == m.deg_fK, "bound differs from member degree");
  c.note("48 >= 48 >= 96/2");
  return c.done();
}

/// Criteria 1-10. Byte-level determinism is checked by the caller.
inline std::vector<CheckResult> run_checks(const VerifyOptions& opts) {
  return {check_genus_table(),
          check_chi_window_range(opts),
          check_chi_negative_range(opts),
          check_modular_ratio_bound(opts),
          check_quaternionic_ratio(),
          check_chi_multiplicativity(),
          check_curvature_closed_forms(opts),
          check_curvature_dimension_bound(opts),
          check_gradients(opts),
          check_degree_chain_equality()};
}

}  // namespace canondeg

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "canondeg/arithmetic.hpp"
#include "canondeg/error.hpp"
#include "canondeg/optimize.hpp"

namespace canondeg {

using ComplexMatrix = Eigen::MatrixXcd;

enum class DomainType { I, II, III, IV };

constexpr std::string_view to_string(DomainType t) {
  switch (t) {
    case DomainType::I: return "I";
    case DomainType::II: return "II";
    case DomainType::III: return "III";
    case DomainType::IV: return "IV";
  }
  return "?";
}

/// Irreducible classical bounded symmetric domain.
///   I(n,m)  : n x m matrices with I_m - Z*Z > 0, n >= m >= 1
///   II(n)   : symmetric n x n matrices
///   III(n)  : skew-symmetric n x n matrices, n >= 2
///   IV(n)   : the Lie ball in C^n (points are n x 1 columns)
class ClassicalDomain {
 public:
  static ClassicalDomain make(DomainType type, int n, int m = 0) {
    switch (type) {
      case DomainType::I:
        CANONDEG_CHECK(m >= 1 && n >= m, ErrorKind::InvalidDomain,
                       "type I needs n >= m >= 1, got I(" + std::to_string(n) + "," +
                           std::to_string(m) + ")");
        break;
      case DomainType::II:
      case DomainType::IV:
        CANONDEG_CHECK(n >= 1, ErrorKind::InvalidDomain, "n must be >= 1");
        m = 0;
        break;
      case DomainType::III:
        CANONDEG_CHECK(n >= 2, ErrorKind::InvalidDomain, "type III needs n >= 2");
        m = 0;
        break;
    }
    return ClassicalDomain(type, n, m);
  }
  static ClassicalDomain type_I(int n, int m) { return make(DomainType::I, n, m); }
  static ClassicalDomain type_II(int n) { return make(DomainType::II, n); }
  static ClassicalDomain type_III(int n) { return make(DomainType::III, n); }
  static ClassicalDomain type_IV(int n) { return make(DomainType::IV, n); }
  static ClassicalDomain disk() { return type_I(1, 1); }

  DomainType type() const noexcept { return type_; }
  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }

  std::int64_t dimension() const noexcept {
    const std::int64_t n = n_;
    switch (type_) {
      case DomainType::I: return n * m_;
      case DomainType::II: return n * (n + 1) / 2;
      case DomainType::III: return n * (n - 1) / 2;
      case DomainType::IV: return n;
    }
    return 0;
  }

  Eigen::Index rows() const noexcept { return n_; }
  Eigen::Index cols() const noexcept {
    switch (type_) {
      case DomainType::I: return m_;
      case DomainType::IV: return 1;
      default: return n_;
    }
  }

  std::string name() const {
    std::string s = std::string(to_string(type_)) + "(" + std::to_string(n_);
    if (type_ == DomainType::I) s += "," + std::to_string(m_);
    return s + ")";
  }

  friend bool operator==(const ClassicalDomain&, const ClassicalDomain&) = default;

 private:
  ClassicalDomain(DomainType type, int n, int m) : type_(type), n_(n), m_(m) {}

  DomainType type_;
  int n_;
  int m_;
};

inline std::int64_t dimension(const ClassicalDomain& domain) { return domain.dimension(); }

/// Parses "I:3,2", "II:4", "III:5", "IV:6".
inline ClassicalDomain parse_domain(std::string_view text) {
  const auto colon = text.find(':');
  CANONDEG_CHECK(colon != std::string_view::npos, ErrorKind::InvalidInput,
                 "expected TYPE:n[,m], got '" + std::string(text) + "'");
  const std::string_view head = text.substr(0, colon);
  const std::string rest(text.substr(colon + 1));
  DomainType type;
  if (head == "I") type = DomainType::I;
  else if (head == "II") type = DomainType::II;
  else if (head == "III") type = DomainType::III;
  else if (head == "IV") type = DomainType::IV;
  else throw Error(ErrorKind::InvalidInput, "unknown domain type '" + std::string(head) + "'");

  std::vector<int> params;
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      params.push_back(std::stoi(tok, &used));
      CANONDEG_CHECK(used == tok.size(), ErrorKind::InvalidInput, "bad integer '" + tok + "'");
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidInput, "bad integer '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  const std::size_t want = type == DomainType::I ? 2 : 1;
  CANONDEG_CHECK(params.size() == want, ErrorKind::InvalidInput,
                 "wrong number of parameters in '" + std::string(text) + "'");
  return ClassicalDomain::make(type, params[0], want == 2 ? params[1] : 0);
}

inline void validate_point(const ClassicalDomain& domain, const ComplexMatrix& z) {
  CANONDEG_CHECK(z.rows() == domain.rows() && z.cols() == domain.cols(), ErrorKind::ShapeMismatch,
                 domain.name() + " expects " + std::to_string(domain.rows()) + "x" +
                     std::to_string(domain.cols()) + ", got " + std::to_string(z.rows()) + "x" +
                     std::to_string(z.cols()));
  if (domain.type() == DomainType::II) {
    CANONDEG_CHECK(z == z.transpose(), ErrorKind::ShapeMismatch, "type II point must be symmetric");
  } else if (domain.type() == DomainType::III) {
    CANONDEG_CHECK(z == -z.transpose(), ErrorKind::ShapeMismatch,
                   "type III point must be skew-symmetric");
  }
  CANONDEG_CHECK(z.squaredNorm() > 0, ErrorKind::ZeroInput, "point must be nonzero");
}

/// A validated tangent direction of a classical domain.
class DomainPoint {
 public:
  DomainPoint() = default;
  DomainPoint(const ClassicalDomain& domain, ComplexMatrix entries) : entries_(std::move(entries)) {
    validate_point(domain, entries_);
  }
  const ComplexMatrix& entries() const noexcept { return entries_; }

 private:
  ComplexMatrix entries_;
};

namespace detail {

inline double trace_ratio_coefficient(const ClassicalDomain& d) {
  switch (d.type()) {
    case DomainType::I: return (d.n() + d.m()) / 2.0;
    case DomainType::II: return (d.n() + 1) / 2.0;
    case DomainType::III: return (d.n() - 1) / 2.0;
    case DomainType::IV: break;
  }
  return 0;
}

// Orthogonal projection onto the symmetric / skew subspace.
inline void project_to_subspace(const ClassicalDomain& d, ComplexMatrix& g) {
  if (d.type() == DomainType::II) {
    const ComplexMatrix t = g.transpose();
    g = 0.5 * (g + t);
  } else if (d.type() == DomainType::III) {
    const ComplexMatrix t = g.transpose();
    g = 0.5 * (g - t);
  }
}

}  // namespace detail

/// Candidate value of -1/S along direction Z.
/// Types I-III: c (Tr H)^2 / Tr(H^2), H = Z*Z, c = (n+m)/2, (n+1)/2, (n-1)/2.
/// Type IV: reciprocal of
///   1/n + sum_{j,k} |conj(z_j) z_k - conj(z_k) z_j|^2 / (2n (sum |z_j|^2)^2),
/// with the sum over all ordered pairs.
inline double tashiro_functional(const ClassicalDomain& domain, const ComplexMatrix& z) {
  validate_point(domain, z);
  if (domain.type() == DomainType::IV) {
    const Eigen::Index n = z.rows();
    const double a = z.squaredNorm();
    double s = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        s += std::norm(std::conj(z(j, 0)) * z(k, 0) - std::conj(z(k, 0)) * z(j, 0));
      }
    }
    const double q = 1.0 / n + s / (2.0 * n * a * a);
    return 1.0 / q;
  }
  const ComplexMatrix h = z.adjoint() * z;
  const double tr = h.trace().real();
  const double tr2 = h.squaredNorm();  // Tr(H^2) for hermitian H
  return detail::trace_ratio_coefficient(domain) * tr * tr / tr2;
}

/// Gradient of tashiro_functional under the real inner product
/// <A, B> = Re Tr(A* B), projected onto the symmetric (II) or skew (III)
/// subspace.
inline ComplexMatrix functional_gradient(const ClassicalDomain& domain, const ComplexMatrix& z) {
  validate_point(domain, z);
  const double a = z.squaredNorm();
  ComplexMatrix g;
  if (domain.type() == DomainType::IV) {
    // F = n / (2 - rho), rho = |z^T z|^2 / a^2.
    const double n = static_cast<double>(z.rows());
    const std::complex<double> w = (z.transpose() * z)(0, 0);
    const double u = std::norm(w);
    const double rho = u / (a * a);
    const ComplexMatrix grad_rho = (4.0 * w / (a * a)) * z.conjugate() - (4.0 * u / (a * a * a)) * z;
    g = (n / ((2.0 - rho) * (2.0 - rho))) * grad_rho;
    return g;
  }
  const ComplexMatrix h = z.adjoint() * z;
  const double b = h.squaredNorm();
  const double c = detail::trace_ratio_coefficient(domain);
  g = c * ((4.0 * a / b) * z - (4.0 * a * a / (b * b)) * (z * h));
  detail::project_to_subspace(domain, g);
  return g;
}

inline double real_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (x.adjoint() * y).trace().real();
}

enum class ClosedFormSource {
  Exact,       // value of the supremum as computed by Tashiro
  Sharpened,   // bound attained (homothety at a symmetric point)
  Derived,     // from the paired spectrum of skew matrices; cross-checked numerically
  Additive,    // sum over product factors
};

constexpr std::string_view to_string(ClosedFormSource s) {
  switch (s) {
    case ClosedFormSource::Exact: return "exact";
    case ClosedFormSource::Sharpened: return "sharpened";
    case ClosedFormSource::Derived: return "derived";
    case ClosedFormSource::Additive: return "additive";
  }
  return "?";
}

struct ClosedForm {
  Rational value;  // -1/S
  ClosedFormSource source = ClosedFormSource::Exact;
};

/// -1/S in closed form. I(n,m): m(m+n)/2; II(n): n(n+1)/2; IV(n): n;
/// III(n): (n-1) floor(n/2).
inline std::optional<ClosedForm> curvature_inverse_closed(const ClassicalDomain& d) {
  const std::int64_t n = d.n();
  switch (d.type()) {
    case DomainType::I:
      return ClosedForm{make_rational(d.m() * (d.m() + n), 2), ClosedFormSource::Exact};
    case DomainType::II:
      return ClosedForm{make_rational(n * (n + 1), 2), ClosedFormSource::Sharpened};
    case DomainType::III:
      return ClosedForm{make_rational((n - 1) * (n / 2)), ClosedFormSource::Derived};
    case DomainType::IV:
      return ClosedForm{make_rational(n), ClosedFormSource::Exact};
  }
  return std::nullopt;
}

inline Rational product_curvature_inverse(std::span<const ClassicalDomain> factors) {
  CANONDEG_CHECK(!factors.empty(), ErrorKind::EmptyProduct, "product needs at least one factor");
  Rational total = 0;
  for (const ClassicalDomain& f : factors) total += curvature_inverse_closed(f)->value;
  return total;
}

inline std::int64_t product_dimension(std::span<const ClassicalDomain> factors) {
  std::int64_t total = 0;
  for (const ClassicalDomain& f : factors) total += f.dimension();
  return total;
}

struct TashiroCheck {
  Rational inv;  // -1/S
  std::int64_t dim = 0;
  bool pass = false;
  bool equality = false;
};

inline TashiroCheck verify_tashiro(std::span<const ClassicalDomain> factors) {
  TashiroCheck c;
  c.inv = product_curvature_inverse(factors);
  c.dim = product_dimension(factors);
  c.pass = c.inv <= c.dim;
  c.equality = c.inv == c.dim;
  return c;
}

inline TashiroCheck verify_tashiro(const ClassicalDomain& domain) {
  return verify_tashiro(std::span<const ClassicalDomain>(&domain, 1));
}

/// Largest canonical degree compatible with the curvature bound:
/// inv_S * (-chi). With inv_S = dim X this is -dim(X) chi(C).
inline Rational canonical_degree_bound(const Rational& inv_s, std::int64_t chi) {
  CANONDEG_CHECK(inv_s > 0, ErrorKind::InvalidInput, "inv_S must be positive");
  CANONDEG_CHECK(chi < 0, ErrorKind::InvalidInput, "chi must be negative");
  return inv_s * (-chi);
}

/// -chi_Y >= -chi_Y - deg_branch >= deg_K / inv_S.
struct DegreeChainCheck {
  bool branch_link = false;
  bool curvature_link = false;
  bool curvature_equality = false;  // totally geodesic case
  Rational middle;                  // -chi_Y - deg_branch
  Rational rhs;                     // deg_K / inv_S

  bool pass() const { return branch_link && curvature_link; }
  std::string failed_link() const {
    if (!branch_link) return "branch";
    if (!curvature_link) return "curvature";
    return "";
  }
};

inline DegreeChainCheck check_degree_chain(std::int64_t chi_y, std::int64_t deg_branch,
                                           std::int64_t deg_k, const Rational& inv_s) {
  CANONDEG_CHECK(chi_y < 0, ErrorKind::InvalidInput, "chi_Y must be negative");
  CANONDEG_CHECK(deg_branch >= 0, ErrorKind::InvalidInput, "branch degree must be >= 0");
  CANONDEG_CHECK(deg_k > 0, ErrorKind::InvalidInput, "canonical degree must be positive");
  CANONDEG_CHECK(inv_s > 0, ErrorKind::InvalidInput, "inv_S must be positive");
  DegreeChainCheck c;
  c.middle = Rational(-chi_y - deg_branch);
  c.rhs = Rational(deg_k) / inv_s;
  c.branch_link = Rational(-chi_y) >= c.middle;
  c.curvature_link = c.middle >= c.rhs;
  c.curvature_equality = c.middle == c.rhs;
  return c;
}

// ---------------------------------------------------------------------------
// Numerical suprema

/// Maximize the functional over the unit Frobenius sphere of the domain's
/// tangent space (the functional is scale invariant).
class TashiroProblem {
 public:
  using point_type = ComplexMatrix;

  explicit TashiroProblem(ClassicalDomain domain) : domain_(domain) {}

  double value(const ComplexMatrix& z) const { return tashiro_functional(domain_, z); }
  ComplexMatrix gradient(const ComplexMatrix& z) const { return functional_gradient(domain_, z); }
  double inner(const ComplexMatrix& x, const ComplexMatrix& y) const { return real_inner(x, y); }

  void retract(ComplexMatrix& z) const {
    detail::project_to_subspace(domain_, z);
    z /= z.norm();
  }

  ComplexMatrix random_start(std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix z(domain_.rows(), domain_.cols());
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      for (Eigen::Index i = 0; i < z.rows(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z(i, j) = {re, im};
      }
    }
    retract(z);
    return z;
  }

 private:
  ClassicalDomain domain_;
};

struct CurvatureOptions {
  int restarts = 32;
  int max_iter = 2000;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  bool parallel = false;

  AscentOptions ascent() const {
    AscentOptions a;
    a.restarts = restarts;
    a.max_iter = max_iter;
    a.tol = tol;
    a.seed = seed;
    a.parallel = parallel;
    return a;
  }
};

struct CurvatureEstimate {
  ClassicalDomain domain = ClassicalDomain::disk();
  std::optional<ClosedForm> closed;
  double numerical_inv = 0;
  DomainPoint maximizer;
  int restarts_used = 0;
  int iterations = 0;  // of the winning restart
  int converged_restarts = 0;
  double grad_norm = 0;
  std::uint64_t seed = 0;

  /// NonConvergence when false: no restart met the first-order tolerance.
  bool converged() const { return converged_restarts > 0; }

  double closed_gap() const {
    return closed ? std::abs(numerical_inv - to_double(closed->value)) : 0.0;
  }
};

inline CurvatureEstimate numerical_curvature_inverse(const ClassicalDomain& domain,
                                                     const CurvatureOptions& opts = {}) {
  CANONDEG_CHECK(opts.restarts >= 1, ErrorKind::InvalidInput, "restarts must be >= 1");
  CANONDEG_CHECK(opts.max_iter >= 0, ErrorKind::InvalidInput, "max_iter must be >= 0");
  const TashiroProblem problem(domain);
  const auto result = multistart_ascent(problem, opts.ascent());
  CurvatureEstimate e;
  e.domain = domain;
  e.closed = curvature_inverse_closed(domain);
  e.numerical_inv = result.best.value;
  e.maximizer = DomainPoint(domain, result.best.point);
  e.restarts_used = result.restarts_used;
  e.iterations = result.best.iterations;
  e.converged_restarts = result.converged_restarts;
  e.grad_norm = result.best.grad_norm;
  e.seed = opts.seed;
  return e;
}

struct NumericTashiroCheck {
  double inv = 0;
  std::int64_t dim = 0;
  bool pass = false;
};

inline NumericTashiroCheck verify_tashiro(const CurvatureEstimate& e, double tol = 1e-6) {
  NumericTashiroCheck c;
  c.inv = e.numerical_inv;
  c.dim = e.domain.dimension();
  c.pass = c.inv <= static_cast<double>(c.dim) + tol;
  return c;
}

/// Per-factor numerical suprema combined additively.
struct ProductEstimate {
  std::vector<CurvatureEstimate> factors;
  Rational closed_inv;
  double numerical_inv = 0;
  std::int64_t dim = 0;
};

inline ProductEstimate numerical_product_inverse(std::span<const ClassicalDomain> factors,
                                                 const CurvatureOptions& opts = {}) {
  ProductEstimate p;
  p.closed_inv = product_curvature_inverse(factors);
  p.dim = product_dimension(factors);
  for (const ClassicalDomain& f : factors) {
    p.factors.push_back(numerical_curvature_inverse(f, opts));
    p.numerical_inv += p.factors.back().numerical_inv;
  }
  return p;
}

}  // namespace canondeg

#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "canondeg/curvature.hpp"
#include "canondeg/family.hpp"
#include "canondeg/modular.hpp"
#include "canondeg/shimura.hpp"
#include "canondeg/verify.hpp"
#include "report.hpp"

namespace canondeg::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInvalidInput = 2 };

struct GlobalOptions {
  std::string format = "json";
  std::uint64_t seed = 0;
  double tol = 1e-6;
};

namespace detail {

inline Json primes_json(const FactoredSquarefree& f) { return Json(f.primes()); }

inline Json matrix_json(const ComplexMatrix& z) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < z.cols(); ++j) row.push_back({z(i, j).real(), z(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json gamma0_json(const Gamma0Invariants& inv) {
  Json row;
  row["level"] = inv.level.value();
  row["primes"] = primes_json(inv.level);
  row["index"] = inv.index;
  row["nu2"] = inv.nu2;
  row["nu3"] = inv.nu3;
  row["cusps"] = inv.cusps;
  row["genus"] = inv.genus;
  row["chi"] = inv.chi;
  return row;
}

inline Json member_json(const FamilyMember& m) {
  Json row;
  row["kind"] = std::string(to_string(m.config.kind));
  if (m.config.kind == CurveKind::Quaternionic) row["disc"] = m.config.delta.value();
  row["d"] = m.config.d;
  row["p"] = m.config.p;
  row["ells"] = m.config.ells;
  row["level"] = m.level.value();
  row["deg_fK"] = m.deg_fK;
  row["chi_CN"] = m.chi_CN;
  row["ratio"] = exact(m.ratio);
  row["ratio_float"] = to_double(m.ratio);
  row["lower_bound"] = m.lower_bound ? exact(*m.lower_bound) : Json();
  return row;
}

inline Json estimate_json(const CurvatureEstimate& e, double tol) {
  Json row;
  row["domain"] = e.domain.name();
  row["dim"] = e.domain.dimension();
  row["closed_inv"] = e.closed ? exact(e.closed->value) : Json();
  row["closed_source"] = e.closed ? Json(std::string(to_string(e.closed->source))) : Json();
  row["numerical_inv"] = e.numerical_inv;
  row["closed_gap"] = e.closed_gap();
  row["closed_match"] = e.closed_gap() <= tol;
  row["converged"] = e.converged();
  row["converged_restarts"] = e.converged_restarts;
  row["restarts_used"] = e.restarts_used;
  row["iterations"] = e.iterations;
  row["grad_norm"] = e.grad_norm;
  row["seed"] = e.seed;
  row["maximizer"] = matrix_json(e.maximizer.entries());
  return row;
}

}  // namespace detail

class Application {
 public:
  explicit Application(std::ostream& out = std::cout, std::ostream& err = std::cerr)
      : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Canonical-degree invariants of modular and Shimura curves, and curvature "
                 "bounds for classical bounded symmetric domains",
                 "canondeg"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", global_.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--seed", global_.seed, "Random seed")->capture_default_str();
    app.add_option("--tol", global_.tol, "Value tolerance")->capture_default_str();

    std::optional<Report> report;
    std::optional<Error> failure;
    const auto guarded = [&](auto&& body) {
      return [&, body] {
        try {
          report = body();
        } catch (const Error& e) {
          failure = e;
        }
      };
    };

    // modular
    std::int64_t level = 0;
    bool window = false;
    auto* modular = app.add_subcommand("modular", "Invariants of X_0(N)");
    modular->add_option("--level", level, "Squarefree level N")->required();
    modular->add_flag("--window", window, "Check the chi window for N");
    modular->callback(guarded([&] { return cmd_modular(level, window); }));

    // shimura
    std::int64_t disc = 0;
    auto* shimura = app.add_subcommand("shimura", "Invariants of X_0^D(N)");
    shimura->add_option("--disc", disc, "Discriminant D")->required();
    shimura->add_option("--level", level, "Squarefree level N coprime to D")->required();
    shimura->callback(guarded([&] { return cmd_shimura(disc, level); }));

    // family
    std::string kind = "modular";
    int d = 2;
    std::int64_t p = 0;
    std::vector<std::int64_t> ells;
    auto* family = app.add_subcommand("family", "One member (C_N, f_N) of a curve family");
    family->add_option("--kind", kind)->check(CLI::IsMember({"modular", "quat"}))->required();
    family->add_option("--disc", disc, "Discriminant (quat only)");
    family->add_option("--d", d, "Dimension of X")->required();
    family->add_option("--p", p, "Base prime")->required();
    family->add_option("--ells", ells, "Comma-separated primes l_1,...,l_{d-1}")->delimiter(',');
    family->callback(guarded([&] { return cmd_family(kind, disc, d, p, ells); }));

    // family-search
    std::int64_t p_max = 0;
    std::int64_t ell_max = 0;
    std::size_t top = 0;
    auto* search = app.add_subcommand("family-search", "Enumerate prime configurations");
    search->add_option("--kind", kind)->check(CLI::IsMember({"modular", "quat"}))->required();
    search->add_option("--disc", disc, "Discriminant (quat only)");
    search->add_option("--d", d)->required();
    search->add_option("--p-max", p_max)->required();
    search->add_option("--ell-max", ell_max)->required();
    search->add_option("--top", top, "Keep the K best rows (0 = all)");
    search->callback(guarded([&] { return cmd_search(kind, disc, d, p_max, ell_max, top); }));

    // curvature
    std::string type;
    int n = 0;
    int m = 0;
    bool verify = false;
    int restarts = 32;
    auto* curvature = app.add_subcommand("curvature", "-1/S for a classical domain");
    curvature->add_option("--type", type)->check(CLI::IsMember({"I", "II", "III", "IV"}))->required();
    curvature->add_option("--n", n)->required();
    curvature->add_option("--m", m);
    curvature->add_flag("--verify", verify, "Check closed form, convergence and -1/S <= dim");
    curvature->add_option("--restarts", restarts)->capture_default_str();
    curvature->callback(guarded([&] { return cmd_curvature(type, n, m, verify, restarts); }));

    // curvature-product
    std::string factors;
    auto* product = app.add_subcommand("curvature-product", "-1/S for a product of domains");
    product->add_option("--factors", factors, "e.g. \"I:3,2;IV:4\"")->required();
    product->callback(guarded([&] { return cmd_product(factors); }));

    // verify-all
    bool fast = false;
    auto* verify_all = app.add_subcommand("verify-all", "Run every verification check");
    verify_all->add_flag("--fast", fast, "Smaller ranges");
    verify_all->callback(guarded([&] { return cmd_verify_all(fast); }));

    std::vector<std::string> argv_storage{"canondeg"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kOk : kInvalidInput;
    }

    if (failure) {
      err_ << "error: " << failure->what() << "\n";
      return failure->kind() == ErrorKind::InternalInconsistency ? kVerificationFailed
                                                                 : kInvalidInput;
    }
    report->seed = global_.seed;
    write_report(out_, *report, global_.format == "csv" ? Format::Csv : Format::Json);
    return report->pass() ? kOk : kVerificationFailed;
  }

 private:
  Report cmd_modular(std::int64_t level, bool window) const {
    Report r;
    r.command = "modular";
    r.inputs = {{"level", level}, {"window", window}};
    const auto f = factor_squarefree(level);
    const auto inv = gamma0_invariants(f);
    Json row = detail::gamma0_json(inv);
    row["chi_negative"] = inv.chi < 0;
    bool ok = true;
    if (window) {
      const auto w = check_chi_window(f);
      row["window_residual"] = exact(w.residual);
      row["window_upper"] = exact(w.upper_bound);
      row["window_holds"] = w.holds();
      ok = w.holds();
    }
    r.add(std::move(row), ok);
    return r;
  }

  Report cmd_shimura(std::int64_t disc, std::int64_t level) const {
    Report r;
    r.command = "shimura";
    r.inputs = {{"disc", disc}, {"level", level}};
    const auto inv = shimura_invariants(factor_squarefree(disc), factor_squarefree(level));
    Json row;
    row["disc"] = inv.discriminant.value();
    row["disc_primes"] = detail::primes_json(inv.discriminant);
    row["level"] = inv.level.value();
    row["index"] = inv.index;
    row["e2"] = inv.e2;
    row["e3"] = inv.e3;
    row["genus"] = inv.genus;
    row["chi"] = inv.chi;
    row["torsion_free"] = inv.torsion_free;
    row["fine_level"] = inv.fine_level;
    r.add(std::move(row));
    return r;
  }

  static PrimeConfig make_config(const std::string& kind, std::int64_t disc, int d, std::int64_t p,
                                 const std::vector<std::int64_t>& ells) {
    if (kind == "modular") return PrimeConfig::modular(d, p, ells);
    CANONDEG_CHECK(disc > 0, ErrorKind::InvalidInput, "--disc is required for --kind quat");
    return PrimeConfig::quaternionic(factor_squarefree(disc), d, p, ells);
  }

  Report cmd_family(const std::string& kind, std::int64_t disc, int d, std::int64_t p,
                    const std::vector<std::int64_t>& ells) const {
    Report r;
    r.command = "family";
    r.inputs = {{"kind", kind}, {"disc", disc}, {"d", d}, {"p", p}, {"ells", ells}};
    const auto config = make_config(kind, disc, d, p, ells);
    const auto m = family_member(config);
    Json row = detail::member_json(m);
    row["component_degrees"] = component_degrees(config);
    r.add(std::move(row), m.satisfies_bound());
    return r;
  }

  Report cmd_search(const std::string& kind, std::int64_t disc, int d, std::int64_t p_max,
                    std::int64_t ell_max, std::size_t top) const {
    Report r;
    r.command = "family-search";
    r.inputs = {{"kind", kind}, {"disc", disc}, {"d", d}, {"p_max", p_max}, {"ell_max", ell_max},
                {"top", top}};
    SearchRequest req;
    req.kind = kind == "modular" ? CurveKind::Modular : CurveKind::Quaternionic;
    if (req.kind == CurveKind::Quaternionic) {
      CANONDEG_CHECK(disc > 0, ErrorKind::InvalidInput, "--disc is required for --kind quat");
      req.delta = factor_squarefree(disc);
    }
    req.d = d;
    req.p_max = p_max;
    req.ell_max = ell_max;
    auto members = search_configs(req);
    if (top > 0 && members.size() > top) members.resize(top);
    for (const auto& m : members) r.add(detail::member_json(m), m.satisfies_bound());
    return r;
  }

  Report cmd_curvature(const std::string& type, int n, int m, bool verify, int restarts) const {
    Report r;
    r.command = "curvature";
    r.inputs = {{"type", type}, {"n", n}, {"m", m}, {"verify", verify}, {"restarts", restarts}};
    const ClassicalDomain domain = parse_domain(type + ":" + std::to_string(n) +
                                                (type == "I" ? "," + std::to_string(m) : ""));
    CurvatureOptions opts;
    opts.restarts = restarts;
    opts.seed = global_.seed;
    const auto e = numerical_curvature_inverse(domain, opts);
    Json row = detail::estimate_json(e, global_.tol);
    bool ok = true;
    if (verify) {
      const auto exact_check = verify_tashiro(domain);
      const auto numeric_check = verify_tashiro(e, global_.tol);
      row["tashiro_exact"] = exact_check.pass;
      row["tashiro_equality"] = exact_check.equality;
      row["tashiro_numeric"] = numeric_check.pass;
      ok = exact_check.pass && numeric_check.pass && e.closed_gap() <= global_.tol && e.converged();
    }
    r.add(std::move(row), ok);
    return r;
  }

  Report cmd_product(const std::string& text) const {
    Report r;
    r.command = "curvature-product";
    r.inputs = {{"factors", text}};
    std::vector<ClassicalDomain> factors;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto semi = text.find(';', pos);
      const std::string tok = text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
      if (!tok.empty()) factors.push_back(parse_domain(tok));
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
    const auto check = verify_tashiro(factors);
    for (const auto& f : factors) {
      const auto closed = curvature_inverse_closed(f);
      Json row;
      row["factor"] = f.name();
      row["dim"] = f.dimension();
      row["closed_inv"] = exact(closed->value);
      row["closed_source"] = std::string(to_string(closed->source));
      r.add(std::move(row));
    }
    Json total;
    total["factor"] = "product";
    total["dim"] = check.dim;
    total["closed_inv"] = exact(check.inv);
    total["closed_source"] = std::string(to_string(ClosedFormSource::Additive));
    total["tashiro_equality"] = check.equality;
    r.add(std::move(total), check.pass);
    return r;
  }

  Report cmd_verify_all(bool fast) const {
    Report r;
    r.command = "verify-all";
    r.inputs = {{"fast", fast}, {"tol", global_.tol}};
    VerifyOptions opts;
    opts.fast = fast;
    opts.seed = global_.seed;
    opts.tol = global_.tol;
    for (const CheckResult& c : run_checks(opts)) {
      Json row;
      row["id"] = c.id;
      row["name"] = c.name;
      row["cases"] = c.cases;
      row["detail"] = c.detail;
      r.add(std::move(row), c.pass);
    }
    return r;
  }

  std::ostream& out_;
  std::ostream& err_;
  GlobalOptions global_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  return Application(out, err).run(args);
}

}  // namespace canondeg::cli

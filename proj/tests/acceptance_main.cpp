// One line per acceptance criterion: id, PASS/FAIL, wall time against its limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "canondeg/verify.hpp"
#include "cli.hpp"

namespace {

using canondeg::CheckResult;
using canondeg::VerifyOptions;

struct Criterion {
  int id;
  double limit_s;
  std::function<CheckResult()> run;
};

CheckResult determinism() {
  CheckResult r;
  r.id = 11;
  r.name = "verify-all --fast is byte-identical across runs";
  std::string outputs[2];
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    std::ostringstream out, err;
    codes[i] = canondeg::cli::run({"--seed", "0", "verify-all", "--fast"}, out, err);
    outputs[i] = out.str();
  }
  r.cases = 2;
  r.pass = outputs[0] == outputs[1] && !outputs[0].empty();
  r.detail = std::to_string(outputs[0].size()) + " bytes, exit codes " + std::to_string(codes[0]) +
             "/" + std::to_string(codes[1]);
  return r;
}

}  // namespace

int main() {
  using namespace canondeg;
  VerifyOptions opts;
  const std::vector<Criterion> criteria = {
      {1, 1.0, [] { return check_genus_table(); }},
      {2, 5.0, [&] { return check_chi_window_range(opts); }},
      {3, 5.0, [&] { return check_chi_negative_range(opts); }},
      {4, 5.0, [&] { return check_modular_ratio_bound(opts); }},
      {5, 1.0, [] { return check_quaternionic_ratio(); }},
      {6, 1.0, [] { return check_chi_multiplicativity(); }},
      {7, 60.0, [&] { return check_curvature_closed_forms(opts); }},
      {8, 60.0, [&] { return check_curvature_dimension_bound(opts); }},
      {9, 10.0, [&] { return check_gradients(opts); }},
      {10, 1.0, [] { return check_degree_chain_equality(); }},
      {11, 120.0, determinism},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const CheckResult r = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = r.pass && secs < c.limit_s;
    failed += !ok;
    std::printf("criterion %2d %s  %-58s cases=%lld  %.3fs (limit %.0fs)  %s\n", c.id,
                ok ? "PASS" : "FAIL", r.name.c_str(), static_cast<long long>(r.cases), secs,
                c.limit_s, r.detail.c_str());
  }
  std::printf("%s: %zu criteria, %d failed\n", failed ? "FAIL" : "PASS", criteria.size(), failed);
  return failed ? 1 : 0;
}

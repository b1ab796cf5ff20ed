#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "canondeg/parallel.hpp"

namespace canondeg {

/// A smooth objective on a manifold embedded in a real inner-product space.
/// `gradient` returns the gradient already projected onto the tangent space;
/// `retract` maps an ambient point back onto the manifold.
template <class P>
concept AscentProblem = requires(const P& problem, typename P::point_type& x,
                                 const typename P::point_type& cx, std::mt19937_64& rng) {
  { problem.value(cx) } -> std::convertible_to<double>;
  { problem.gradient(cx) } -> std::convertible_to<typename P::point_type>;
  { problem.inner(cx, cx) } -> std::convertible_to<double>;
  problem.retract(x);
  { problem.random_start(rng) } -> std::convertible_to<typename P::point_type>;
};

struct AscentOptions {
  int restarts = 32;
  int max_iter = 2000;
  double tol = 1e-9;  // on the projected gradient norm
  std::uint64_t seed = 0;
  bool parallel = false;
  double armijo_slope = 1e-4;
  double backtrack = 0.5;
  double initial_step = 1.0;
  double max_step = 1e6;
  double max_move = 0.5;  // bound on t * |g| before retraction
  double min_step = 1e-16;
};

template <class Point>
struct AscentRun {
  Point point;
  double value = -std::numeric_limits<double>::infinity();
  double grad_norm = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

template <class Point>
struct MultistartResult {
  AscentRun<Point> best;
  int best_restart = -1;
  int restarts_used = 0;
  int converged_restarts = 0;
  std::vector<double> restart_values;

  bool converged() const { return converged_restarts > 0; }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Stream for restart `index` under `seed`; independent of scheduling.
inline std::mt19937_64 restart_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(detail::splitmix64(detail::splitmix64(seed) ^ detail::splitmix64(~index)));
}

/// Projected gradient ascent with Armijo backtracking from a single start.
/// Each search starts from a Barzilai-Borwein step built from the previous
/// move, capped so that t * |g| <= max_move.
template <AscentProblem Problem>
AscentRun<typename Problem::point_type> projected_ascent(const Problem& problem,
                                                         typename Problem::point_type x,
                                                         const AscentOptions& opts) {
  using Point = typename Problem::point_type;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  problem.retract(x);
  AscentRun<Point> run;
  double f = problem.value(x);
  Point g = problem.gradient(x);
  double step = opts.initial_step;
  for (int it = 0;; ++it) {
    const double g2 = problem.inner(g, g);
    run.grad_norm = std::sqrt(g2);
    run.iterations = it;
    if (run.grad_norm <= opts.tol) {
      run.converged = true;
      break;
    }
    if (it >= opts.max_iter) break;

    // Below `noise` the value no longer resolves progress; such a step is
    // taken only if the gradient there still points along g.
    const double noise = 8 * eps * std::max(1.0, std::abs(f));
    bool accepted = false;
    Point next;
    Point next_g;
    double next_f = f;
    double t = std::min(step, opts.max_move / run.grad_norm);
    for (; t >= opts.min_step; t *= opts.backtrack) {
      next = x + t * g;
      problem.retract(next);
      next_f = problem.value(next);
      if (next_f >= f + opts.armijo_slope * t * g2) {
        next_g = problem.gradient(next);
        accepted = true;
        break;
      }
      if (std::abs(next_f - f) <= noise) {
        next_g = problem.gradient(next);
        if (problem.inner(next_g, g) > 0) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) break;

    const Point s = next - x;
    const Point y = next_g - g;
    const double sy = problem.inner(s, y);
    step = sy < 0 ? problem.inner(s, s) / -sy : 2 * t;
    step = std::min(step, opts.max_step);
    x = std::move(next);
    g = std::move(next_g);
    f = next_f;
  }
  run.point = std::move(x);
  run.value = f;
  return run;
}

/// Best of `opts.restarts` independent ascents. Ties go to the lower index.
template <AscentProblem Problem>
MultistartResult<typename Problem::point_type> multistart_ascent(const Problem& problem,
                                                                 const AscentOptions& opts) {
  using Point = typename Problem::point_type;
  const auto runs = detail::indexed_map(
      static_cast<std::size_t>(std::max(opts.restarts, 0)),
      [&](std::size_t i) {
        std::mt19937_64 rng = restart_rng(opts.seed, i);
        return projected_ascent(problem, problem.random_start(rng), opts);
      },
      opts.parallel);

  MultistartResult<Point> out;
  out.restarts_used = static_cast<int>(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out.restart_values.push_back(runs[i].value);
    if (runs[i].converged) ++out.converged_restarts;
    if (out.best_restart < 0 || runs[i].value > out.best.value) {
      out.best = runs[i];
      out.best_restart = static_cast<int>(i);
    }
  }
  return out;
}

}  // namespace canondeg

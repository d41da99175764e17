#include "parsmo/qp_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <tbb/blocked_range.h>
#include <tbb/enumerable_thread_specific.h>
#include <tbb/parallel_for.h>

#include "parsmo/smo_pair.hpp"

namespace parsmo {

QPState init_zero(const Problem& problem) {
  QPState s;
  s.x.assign(problem.size(), 0.0);
  s.grad.assign(problem.size(), -1.0);
  return s;
}

std::vector<double> full_gradient(const Problem& problem,
                                  std::span<const double> x) {
  const std::size_t n = problem.size();
  if (x.size() != n) throw std::invalid_argument("x has wrong length");
  std::vector<double> g(n, -1.0);
  for (std::size_t r = 0; r < n; ++r) {
    if (x[r] == 0.0) continue;
    for (std::size_t s = 0; s < n; ++s)
      g[s] += problem.hessian_entry(s, r) * x[r];
  }
  return g;
}

double objective(const Problem& problem, std::span<const double> x) {
  auto g = full_gradient(problem, x);
  // f = 1/2 x'(Qx) - e'x = 1/2 x'(g + e) - e'x = 1/2 x'(g - e)
  double f = 0.0;
  for (std::size_t r = 0; r < x.size(); ++r) f += 0.5 * x[r] * (g[r] - 1.0);
  return f;
}

double directional_derivative(const QPState& state, const SparseDirection& d) {
  double gd = 0.0;
  for (const auto& e : d) gd += state.grad[e.index] * e.value;
  return gd;
}

double quadratic_form(const SparseDirection& d,
                      std::span<const ColumnPtr> columns) {
  if (columns.size() != d.size())
    throw std::invalid_argument("quadratic_form: one column per nonzero needed");
  double dqd = 0.0;
  for (std::size_t a = 0; a < d.size(); ++a) {
    if (!columns[a] || columns[a]->index != d[a].index)
      throw std::invalid_argument("missing kernel column " +
                                  std::to_string(d[a].index));
    const auto& col = columns[a]->values;
    double row = 0.0;
    for (const auto& e : d) row += col[e.index] * e.value;
    dqd += d[a].value * row;
  }
  return dqd;
}

double max_feasible_step(const QPState& state, double C,
                         const SparseDirection& d) {
  double bound = std::numeric_limits<double>::infinity();
  for (const auto& e : d) {
    const double xh = state.x[e.index];
    if (e.value > 0.0)
      bound = std::min(bound, (C - xh) / e.value);
    else if (e.value < 0.0)
      bound = std::min(bound, xh / -e.value);
  }
  return std::max(bound, 0.0);
}

void apply_step(const Problem& problem, QPState& state,
                const SparseDirection& d, double alpha,
                std::span<const ColumnPtr> columns, Reduction reduction) {
  const std::size_t n = problem.size();
  const double C = problem.C();
  if (columns.size() != d.size())
    throw std::invalid_argument("apply_step: one column per nonzero needed");
  for (std::size_t h = 0; h < d.size(); ++h) {
    if (!columns[h] || columns[h]->index != d[h].index)
      throw std::invalid_argument("missing kernel column " +
                                  std::to_string(d[h].index));
  }

  if (alpha == 0.0 || d.empty()) {
    ++state.k;
    return;
  }

  // Validate the whole move before mutating anything.
  const double box_tol = kFeasibilityTolerance * C;
  const double snap_tol = 4.0 * std::numeric_limits<double>::epsilon() * C;
  std::vector<double> next(d.size());
  for (std::size_t h = 0; h < d.size(); ++h) {
    double v = state.x[d[h].index] + alpha * d[h].value;
    if (v < -box_tol || v > C + box_tol)
      throw std::runtime_error("step leaves the box at index " +
                               std::to_string(d[h].index));
    if (v <= snap_tol) v = 0.0;
    if (v >= C - snap_tol) v = C;
    next[h] = v;
  }

  double yx = 0.0;
  {
    std::vector<double> moved(state.x);
    for (std::size_t h = 0; h < d.size(); ++h) moved[d[h].index] = next[h];
    for (std::size_t r = 0; r < n; ++r) yx += problem.y(r) * moved[r];
  }
  if (std::abs(yx) > kFeasibilityTolerance * static_cast<double>(n) * C)
    throw std::runtime_error("step violates the equality constraint: y'x = " +
                             std::to_string(yx));

  ++state.k;
  const double gd = directional_derivative(state, d);
  const double dqd = quadratic_form(d, columns);
  state.fval += alpha * gd + 0.5 * alpha * alpha * dqd;

  for (std::size_t h = 0; h < d.size(); ++h) state.x[d[h].index] = next[h];

  double* grad = state.grad.data();
  if (reduction == Reduction::deterministic) {
    // Row-parallel; every row sums the columns in direction order, which is
    // bitwise identical to the sequential loop.
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n, 1024),
                      [&](const tbb::blocked_range<std::size_t>& rows) {
                        for (std::size_t s = rows.begin(); s != rows.end(); ++s) {
                          double acc = 0.0;
                          for (std::size_t h = 0; h < d.size(); ++h)
                            acc += columns[h]->values[s] * d[h].value;
                          grad[s] += alpha * acc;
                        }
                      });
  } else {
    // Column-parallel with per-thread accumulators; combination order
    // depends on scheduling.
    tbb::enumerable_thread_specific<std::vector<double>> partial(
        [n] { return std::vector<double>(n, 0.0); });
    tbb::parallel_for(std::size_t{0}, d.size(), [&](std::size_t h) {
      auto& acc = partial.local();
      const auto& col = columns[h]->values;
      const double w = d[h].value;
      for (std::size_t s = 0; s < n; ++s) acc[s] += col[s] * w;
    });
    for (const auto& acc : partial)
      for (std::size_t s = 0; s < n; ++s) grad[s] += alpha * acc[s];
  }

}

bool in_up_set(double x, int y, double C, double eps) {
  if (eps > 0.0) return y > 0 ? x <= C - eps : x >= eps;
  return y > 0 ? x < C : x > 0.0;
}

bool in_low_set(double x, int y, double C, double eps) {
  if (eps > 0.0) return y < 0 ? x <= C - eps : x >= eps;
  return y < 0 ? x < C : x > 0.0;
}

ViolationView violation_view(const Problem& problem, const QPState& state,
                             double eps) {
  if (eps < 0.0) throw std::invalid_argument("eps must be nonnegative");
  const std::size_t n = problem.size();
  const double C = problem.C();

  ViolationView v;
  v.eps = eps;
  std::size_t best_up = n, best_low = n;
  for (std::size_t r = 0; r < n; ++r) {
    const int y = problem.y(r);
    const double score = -y * state.grad[r];
    if (in_up_set(state.x[r], y, C, eps)) {
      v.i_up.push_back(r);
      if (score > v.m) {
        v.m = score;
        best_up = r;
      }
    }
    if (in_low_set(state.x[r], y, C, eps)) {
      v.i_low.push_back(r);
      if (score < v.M) {
        v.M = score;
        best_low = r;
      }
    }
  }
  if (v.i_up.empty() || v.i_low.empty()) return v;

  if (best_up == best_low) {
    // Only possible when m == M; look for a distinct partner.
    auto second_best = [&](const std::vector<std::size_t>& set, bool maximize) {
      std::size_t best = n;
      for (auto r : set) {
        if (r == best_up) continue;
        const double s = -problem.y(r) * state.grad[r];
        if (best == n ||
            (maximize ? s > -problem.y(best) * state.grad[best]
                      : s < -problem.y(best) * state.grad[best]))
          best = r;
      }
      return best;
    };
    if (auto j = second_best(v.i_low, false); j != n) {
      best_low = j;
    } else if (auto i = second_best(v.i_up, true); i != n) {
      best_up = i;
    } else {
      return v;
    }
  }

  v.mvp.emplace(best_up, best_low);
  const auto i = best_up, j = best_low;
  const auto& y = problem.data().labels();
  const auto d = pair_direction(y, i, j);
  const double beta = feasible_step(state.x[i], state.x[j], C, d);
  const double t =
      pair_stepsize(state.grad[i], state.grad[j], problem.hessian_entry(i, i),
                    problem.hessian_entry(j, j), problem.hessian_entry(i, j),
                    y[i], y[j], beta);
  v.mvs = std::sqrt(2.0) * std::abs(t);
  return v;
}

bool is_stopped(const ViolationView& view, double eta) {
  if (view.i_up.empty() || view.i_low.empty()) return true;
  return view.m <= view.M + eta;
}

double relative_error(double fval, double fstar) {
  if (fstar == 0.0)
    throw std::invalid_argument("relative error undefined for fstar = 0");
  return std::abs(fstar - fval) / std::abs(fstar);
}

}  // namespace parsmo

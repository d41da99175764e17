#include "parsmo/block_subproblem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "parsmo/qp_state.hpp"
#include "parsmo/smo_pair.hpp"

namespace parsmo {

BlockSubproblem build_block(const Problem& problem, const QPState& state,
                            std::span<const std::size_t> block,
                            std::span<const ColumnPtr> columns, double tau) {
  const std::size_t p = block.size();
  if (p == 0) throw std::invalid_argument("empty block");
  if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
  if (columns.size() != p)
    throw std::invalid_argument("build_block: one column per block index needed");
  std::unordered_set<std::size_t> seen;
  for (std::size_t a = 0; a < p; ++a) {
    if (block[a] >= problem.size())
      throw std::out_of_range("block index " + std::to_string(block[a]) +
                              " out of range");
    if (!seen.insert(block[a]).second)
      throw std::invalid_argument("duplicate block index " +
                                  std::to_string(block[a]));
    if (!columns[a] || columns[a]->index != block[a])
      throw std::invalid_argument("missing kernel column " +
                                  std::to_string(block[a]));
  }

  BlockSubproblem sub;
  sub.block.assign(block.begin(), block.end());
  sub.tau = tau;
  sub.C = problem.C();
  sub.y.resize(p);
  sub.anchor.resize(p);
  sub.linear.resize(p);
  sub.hessian.resize(p * p);
  for (std::size_t a = 0; a < p; ++a) {
    sub.y[a] = problem.y(block[a]);
    sub.anchor[a] = state.x[block[a]];
    sub.rhs += sub.y[a] * sub.anchor[a];
  }
  for (std::size_t a = 0; a < p; ++a) {
    double in_block = 0.0;
    for (std::size_t b = 0; b < p; ++b) {
      // Q is symmetric: Q_{P_a P_b} is entry P_a of column P_b.
      const double q = columns[b]->values[block[a]];
      sub.hessian[a * p + b] = q;
      in_block += q * sub.anchor[b];
    }
    sub.linear[a] = state.grad[block[a]] - in_block;
  }
  return sub;
}

std::vector<double> block_gradient(const BlockSubproblem& sub,
                                   std::span<const double> u) {
  const std::size_t p = sub.size();
  std::vector<double> g(p);
  for (std::size_t a = 0; a < p; ++a) {
    double acc = sub.linear[a] + sub.tau * (u[a] - sub.anchor[a]);
    for (std::size_t b = 0; b < p; ++b) acc += sub.H(a, b) * u[b];
    g[a] = acc;
  }
  return g;
}

namespace {

struct InnerPair {
  std::size_t i, j;
  double m, M;
  bool found;
};

InnerPair most_violating(const BlockSubproblem& sub, std::span<const double> u,
                         std::span<const double> g) {
  InnerPair best{0, 0, -std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity(), false};
  bool has_up = false, has_low = false;
  for (std::size_t a = 0; a < sub.size(); ++a) {
    const double score = -sub.y[a] * g[a];
    if (in_up_set(u[a], sub.y[a], sub.C, 0.0) && score > best.m) {
      best.m = score;
      best.i = a;
      has_up = true;
    }
    if (in_low_set(u[a], sub.y[a], sub.C, 0.0) && score < best.M) {
      best.M = score;
      best.j = a;
      has_low = true;
    }
  }
  best.found = has_up && has_low && best.i != best.j;
  return best;
}

}  // namespace

double block_violation(const BlockSubproblem& sub, std::span<const double> u) {
  auto g = block_gradient(sub, u);
  auto mv = most_violating(sub, u, g);
  if (!mv.found) return -std::numeric_limits<double>::infinity();
  return mv.m - mv.M;
}

BlockSolution solve_block(const BlockSubproblem& sub, double inner_eta,
                          std::size_t max_inner) {
  if (!(inner_eta > 0.0)) throw std::invalid_argument("inner_eta must be positive");
  const std::size_t p = sub.size();
  const double C = sub.C;

  BlockSolution sol;
  sol.xhat = sub.anchor;
  auto& u = sol.xhat;
  auto g = block_gradient(sub, u);

  for (;;) {
    auto mv = most_violating(sub, u, g);
    if (!mv.found || mv.m - mv.M <= inner_eta) break;
    if (sol.inner_iterations == max_inner)
      throw std::runtime_error("block solver exceeded " +
                               std::to_string(max_inner) + " inner iterations");
    ++sol.inner_iterations;

    const std::size_t i = mv.i, j = mv.j;
    const double di = sub.y[i], dj = -sub.y[j];
    const double lim_i = di < 0.0 ? u[i] : C - u[i];
    const double lim_j = dj < 0.0 ? u[j] : C - u[j];
    const double beta = std::max(0.0, std::min(lim_i, lim_j));
    const double numer = mv.m - mv.M;
    const double denom = sub.H(i, i) + sub.H(j, j) -
                         2.0 * sub.y[i] * sub.y[j] * sub.H(i, j) + 2.0 * sub.tau;
    const double t =
        denom <= kCurvatureTolerance ? beta : std::min(numer / denom, beta);

    // Land exactly on the bound that limits the step.
    u[i] = t == lim_i ? (di < 0.0 ? 0.0 : C) : u[i] + t * di;
    u[j] = t == lim_j ? (dj < 0.0 ? 0.0 : C) : u[j] + t * dj;

    for (std::size_t a = 0; a < p; ++a)
      g[a] += t * (di * sub.H(a, i) + dj * sub.H(a, j));
    g[i] += t * di * sub.tau;
    g[j] += t * dj * sub.tau;
  }

  double sq = 0.0;
  for (std::size_t a = 0; a < p; ++a) {
    const double diff = u[a] - sub.anchor[a];
    sq += diff * diff;
  }
  sol.displacement = std::sqrt(sq);
  return sol;
}

bool is_descent_block(const BlockSolution& solution, double mvs,
                      double descent_eps) {
  return solution.displacement >= descent_eps * mvs;
}

}  // namespace parsmo

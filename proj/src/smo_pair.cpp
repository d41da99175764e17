#include "parsmo/smo_pair.hpp"

#include <algorithm>
#include <stdexcept>

namespace parsmo {

PairDirection pair_direction(std::span<const int> y, std::size_t i,
                             std::size_t j) {
  if (i == j) throw std::invalid_argument("pair direction needs i != j");
  // 1/y == y for y in {-1, +1}
  return {static_cast<double>(y[i]), -static_cast<double>(y[j])};
}

double feasible_step(double x_i, double x_j, double C, PairDirection d) {
  auto limit = [C](double xh, double dh) {
    return dh < 0.0 ? xh : C - xh;
  };
  return std::max(0.0, std::min(limit(x_i, d.dir_i), limit(x_j, d.dir_j)));
}

double pair_stepsize(double grad_i, double grad_j, double Q_ii, double Q_jj,
                     double Q_ij, int y_i, int y_j, double beta_bar) {
  const double numer = -(grad_i * y_i - grad_j * y_j);
  const double denom = Q_ii + Q_jj - 2.0 * y_i * y_j * Q_ij;
  if (numer <= 0.0) return 0.0;
  if (denom <= kCurvatureTolerance) return beta_bar;
  return std::min(numer / denom, beta_bar);
}

PairStep solve_pair(const Problem& problem, const QPState& state,
                    const KernelColumn& col_i, const KernelColumn& col_j,
                    std::size_t i, std::size_t j) {
  if (col_i.index != i || col_j.index != j)
    throw std::invalid_argument("solve_pair: columns do not match the pair");
  const auto& y = problem.data().labels();
  auto d = pair_direction(y, i, j);

  PairStep step;
  step.i = i;
  step.j = j;
  step.dir_i = d.dir_i;
  step.dir_j = d.dir_j;
  step.beta_bar = feasible_step(state.x[i], state.x[j], problem.C(), d);
  step.t = pair_stepsize(state.grad[i], state.grad[j], col_i.values[i],
                         col_j.values[j], col_j.values[i], y[i], y[j],
                         step.beta_bar);
  return step;
}

}  // namespace parsmo

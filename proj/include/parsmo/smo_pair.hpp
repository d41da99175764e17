#ifndef PARSMO_SMO_PAIR_HPP
#define PARSMO_SMO_PAIR_HPP

#include <cstddef>
#include <span>

#include "parsmo/column_cache.hpp"
#include "parsmo/problem.hpp"

namespace parsmo {

// Curvature below this is treated as zero along a pair direction.
inline constexpr double kCurvatureTolerance = 1e-12;

// Nonzero components of d^(ij): d_i = 1/y_i, d_j = -1/y_j.
struct PairDirection {
  double dir_i;
  double dir_j;
};

// Analytic step for one pair: the endpoint is x + t * d^(ij).
struct PairStep {
  std::size_t i = 0;
  std::size_t j = 0;
  double dir_i = 0.0;
  double dir_j = 0.0;
  double t = 0.0;
  double beta_bar = 0.0;
};

PairDirection pair_direction(std::span<const int> y, std::size_t i,
                             std::size_t j);

// Largest beta with x + beta d^(ij) inside the box.
double feasible_step(double x_i, double x_j, double C, PairDirection d);

// Exact minimizer of f along d^(ij), clamped to [0, beta_bar]. Q entries are
// those of the (already label-signed) Hessian.
double pair_stepsize(double grad_i, double grad_j, double Q_ii, double Q_jj,
                     double Q_ij, int y_i, int y_j, double beta_bar);

// Minimizes f over the two-variable slice through x along d^(ij).
PairStep solve_pair(const Problem& problem, const QPState& state,
                    const KernelColumn& col_i, const KernelColumn& col_j,
                    std::size_t i, std::size_t j);

}  // namespace parsmo

#endif  // PARSMO_SMO_PAIR_HPP

#ifndef PARSMO_BLOCK_SUBPROBLEM_HPP
#define PARSMO_BLOCK_SUBPROBLEM_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "parsmo/column_cache.hpp"
#include "parsmo/problem.hpp"

namespace parsmo {

inline constexpr std::size_t kMaxInnerIterations = 1'000'000;

// Block problem over x_P with the other variables frozen at x^k:
//
//   min 1/2 u'(Q_PP + tau I)u + (linear - tau anchor)'u
//   s.t. y_P'u = rhs,  0 <= u <= C
//
// which equals f(u, x^k_{-P}) + tau/2 ||u - anchor||^2 up to a constant.
struct BlockSubproblem {
  std::vector<std::size_t> block;
  std::vector<int> y;
  double tau = 0.0;
  std::vector<double> linear;   // sum_{s not in P} Q_{Ps} x_s - e_P
  std::vector<double> anchor;   // x^k_P
  double rhs = 0.0;
  double C = 0.0;
  std::vector<double> hessian;  // Q_PP, row-major, without tau

  std::size_t size() const { return block.size(); }
  double H(std::size_t a, std::size_t b) const {
    return hessian[a * block.size() + b];
  }
};

struct BlockSolution {
  std::vector<double> xhat;
  std::size_t inner_iterations = 0;
  double displacement = 0.0;  // ||xhat - anchor||
};

// columns[a] must be the kernel column of block[a]. The linear term comes
// from the maintained gradient: linear = grad_P - Q_PP x_P.
BlockSubproblem build_block(const Problem& problem, const QPState& state,
                            std::span<const std::size_t> block,
                            std::span<const ColumnPtr> columns, double tau);

// Inner most-violating-pair SMO on the reduced problem, started at the anchor
// and stopped once the inner violation is <= inner_eta.
BlockSolution solve_block(const BlockSubproblem& sub, double inner_eta,
                          std::size_t max_inner = kMaxInnerIterations);

// Gradient of the block objective (proximal term included) at u.
std::vector<double> block_gradient(const BlockSubproblem& sub,
                                   std::span<const double> u);

// Inner m - M at u (-inf when a set is empty).
double block_violation(const BlockSubproblem& sub, std::span<const double> u);

// ||xhat - x^k_P|| >= descent_eps * mvs.
bool is_descent_block(const BlockSolution& solution, double mvs,
                      double descent_eps);

}  // namespace parsmo

#endif  // PARSMO_BLOCK_SUBPROBLEM_HPP

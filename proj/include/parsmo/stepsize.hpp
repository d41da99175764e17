#ifndef PARSMO_STEPSIZE_HPP
#define PARSMO_STEPSIZE_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "parsmo/problem.hpp"

namespace parsmo {

enum class StepsizeKind {
  exact,        // exact minimization along d, clamped to the feasible bound
  armijo,       // backtracking from 1
  diminishing,  // 1 / k^xi
  unit,         // alpha = 1 always; no gathering, for experiments only
};

struct StepsizeRule {
  StepsizeKind kind = StepsizeKind::exact;
  double theta = 1e-3;
  double backtrack = 0.5;
  double xi = 1.0;

  void validate() const;
};

StepsizeKind parse_stepsize_kind(std::string_view name);
std::string to_string(StepsizeKind kind);

// Smallest alpha below which Armijo backtracking gives up.
inline constexpr double kArmijoUnderflow = 1e-16;

// max{min{-grad'd / d'Qd, alpha_bar}, 0}; alpha_bar when d'Qd vanishes and d
// descends. Vanishing is judged per unit length, d'Qd <= 1e-12 * d_norm2,
// where d_norm2 = ||d||^2.
double exact_stepsize(double grad_dot_d, double dQd, double alpha_bar,
                      double d_norm2 = 1.0);
double exact_stepsize(const QPState& state, double C, const SparseDirection& d,
                      double dQd);

// Largest alpha in {1, c, c^2, ...} with
// f(x + alpha d) <= f(x) + theta alpha grad'd, evaluated exactly from grad'd
// and d'Qd. Throws std::domain_error unless grad'd < 0, or when alpha falls
// below kArmijoUnderflow.
double armijo_stepsize(double grad_dot_d, double dQd, double theta,
                       double backtrack);
double armijo_stepsize(const QPState& state, const SparseDirection& d,
                       double dQd, double theta, double backtrack);

// min{1, 1 / k^xi} for k >= 1.
double diminishing_stepsize(std::size_t k, double xi);

}  // namespace parsmo

#endif  // PARSMO_STEPSIZE_HPP

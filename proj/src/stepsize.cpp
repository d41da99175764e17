#include "parsmo/stepsize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parsmo/qp_state.hpp"
#include "parsmo/smo_pair.hpp"

namespace parsmo {

void StepsizeRule::validate() const {
  switch (kind) {
    case StepsizeKind::armijo:
      if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("armijo theta must lie in (0, 1)");
      if (!(backtrack > 0.0 && backtrack < 1.0))
        throw std::invalid_argument("armijo backtrack factor must lie in (0, 1)");
      break;
    case StepsizeKind::diminishing:
      if (!(xi > 0.0 && xi <= 1.0))
        throw std::invalid_argument("diminishing xi must lie in (0, 1]");
      break;
    default:
      break;
  }
}

StepsizeKind parse_stepsize_kind(std::string_view name) {
  if (name == "exact") return StepsizeKind::exact;
  if (name == "armijo") return StepsizeKind::armijo;
  if (name == "diminishing") return StepsizeKind::diminishing;
  if (name == "unit") return StepsizeKind::unit;
  throw std::invalid_argument("unknown stepsize rule '" + std::string(name) + "'");
}

std::string to_string(StepsizeKind kind) {
  switch (kind) {
    case StepsizeKind::exact: return "exact";
    case StepsizeKind::armijo: return "armijo";
    case StepsizeKind::diminishing: return "diminishing";
    case StepsizeKind::unit: return "unit";
  }
  return "?";
}

double exact_stepsize(double grad_dot_d, double dQd, double alpha_bar,
                      double d_norm2) {
  if (grad_dot_d >= 0.0) return 0.0;
  // Curvature per unit length, so tiny directions are not mistaken for flat ones.
  if (dQd <= kCurvatureTolerance * d_norm2) return std::max(alpha_bar, 0.0);
  return std::max(std::min(-grad_dot_d / dQd, alpha_bar), 0.0);
}

double exact_stepsize(const QPState& state, double C, const SparseDirection& d,
                      double dQd) {
  double norm2 = 0.0;
  for (const auto& e : d) norm2 += e.value * e.value;
  return exact_stepsize(directional_derivative(state, d), dQd,
                        max_feasible_step(state, C, d), norm2);
}

double armijo_stepsize(double grad_dot_d, double dQd, double theta,
                       double backtrack) {
  if (!(grad_dot_d < 0.0))
    throw std::domain_error("armijo: direction is not a descent direction");
  double alpha = 1.0;
  for (;;) {
    // f(x + alpha d) - f(x) for a quadratic
    const double change = alpha * grad_dot_d + 0.5 * alpha * alpha * dQd;
    if (change <= theta * alpha * grad_dot_d) return alpha;
    alpha *= backtrack;
    if (alpha < kArmijoUnderflow)
      throw std::domain_error("armijo: stepsize underflow");
  }
}

double armijo_stepsize(const QPState& state, const SparseDirection& d,
                       double dQd, double theta, double backtrack) {
  return armijo_stepsize(directional_derivative(state, d), dQd, theta,
                         backtrack);
}

double diminishing_stepsize(std::size_t k, double xi) {
  if (k == 0) throw std::invalid_argument("diminishing stepsize needs k >= 1");
  return std::min(1.0, std::pow(static_cast<double>(k), -xi));
}

}  // namespace parsmo

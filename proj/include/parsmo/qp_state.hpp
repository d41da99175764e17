#ifndef PARSMO_QP_STATE_HPP
#define PARSMO_QP_STATE_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "parsmo/column_cache.hpp"
#include "parsmo/problem.hpp"

namespace parsmo {

// Index-set perturbation used when none is configured: 1e-12 * C.
inline constexpr double kDefaultIndexEpsFactor = 1e-12;

// Allowed |y'x| after a step, per variable and per unit of C.
inline constexpr double kFeasibilityTolerance = 1e-9;

enum class Reduction { deterministic, relaxed };

// x = 0, grad = -e, f = 0.
QPState init_zero(const Problem& problem);

// Full recomputation by direct kernel evaluation; for verification only.
double objective(const Problem& problem, std::span<const double> x);
std::vector<double> full_gradient(const Problem& problem,
                                  std::span<const double> x);

// grad' d over the support of d.
double directional_derivative(const QPState& state, const SparseDirection& d);

// d'Qd read from the columns of the support of d (columns[h] is the column
// of d[h].index).
double quadratic_form(const SparseDirection& d,
                      std::span<const ColumnPtr> columns);

// Largest alpha with x + alpha d inside the box.
double max_feasible_step(const QPState& state, double C,
                         const SparseDirection& d);

// x += alpha d, grad += alpha sum_h d_h Q_{*h}, f updated exactly from
// grad'd and d'Qd, k += 1. Components landing within rounding of a bound
// are snapped onto it. Throws if a column is missing or the result leaves F.
void apply_step(const Problem& problem, QPState& state,
                const SparseDirection& d, double alpha,
                std::span<const ColumnPtr> columns,
                Reduction reduction = Reduction::deterministic);

// Snapshot of the eps-perturbed optimality measures. eps = 0 gives the exact
// sets {x_r < C, y_r = 1} u {x_r > 0, y_r = -1} (and the mirrored low set).
struct ViolationView {
  double eps = 0.0;
  std::vector<std::size_t> i_up;
  std::vector<std::size_t> i_low;
  double m = -std::numeric_limits<double>::infinity();  // max over i_up of -y_r grad_r
  double M = std::numeric_limits<double>::infinity();   // min over i_low of -y_r grad_r
  std::optional<std::pair<std::size_t, std::size_t>> mvp;
  double mvs = 0.0;  // length of the exact step along the MVP direction

  double violation() const { return m - M; }
};

bool in_up_set(double x, int y, double C, double eps);
bool in_low_set(double x, int y, double C, double eps);

ViolationView violation_view(const Problem& problem, const QPState& state,
                             double eps);

// True iff a set is empty or m <= M + eta.
bool is_stopped(const ViolationView& view, double eta);

// |fstar - f| / |fstar|; throws for fstar == 0.
double relative_error(double fval, double fstar);

}  // namespace parsmo

#endif  // PARSMO_QP_STATE_HPP

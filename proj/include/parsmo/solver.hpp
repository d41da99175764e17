#ifndef PARSMO_SOLVER_HPP
#define PARSMO_SOLVER_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <tbb/task_arena.h>

#include "parsmo/column_cache.hpp"
#include "parsmo/problem.hpp"
#include "parsmo/qp_state.hpp"
#include "parsmo/selection.hpp"
#include "parsmo/stepsize.hpp"

namespace parsmo {

enum class Variant {
  parsmo1,  // q most violating pairs
  parsmo2,  // MVP plus q - 1 pairs among cached columns
  blocks,   // generic partition blocks solved by the inner block solver
};

Variant parse_variant(std::string_view name);
std::string to_string(Variant v);

struct SolverConfig {
  std::size_t q = 1;
  Variant variant = Variant::parsmo1;

  // blocks variant: an explicit partition wins over block_size chunks
  std::size_t block_size = 2;
  std::vector<std::vector<std::size_t>> partition;

  double eta = 1e-3;
  std::optional<double> index_eps;  // default 1e-12 * C
  double descent_eps = 1e-2;
  std::optional<double> tau;        // default 0 (gaussian) or 1e-6 (linear)
  std::optional<double> inner_eta;  // default eta / 10
  std::size_t max_iter = 10'000'000;

  // Longest run of non-descent iterations before the MVP pair is forced into
  // the selection (blocks variant). nullopt never forces. The SMO variants
  // always carry the MVP.
  std::optional<std::size_t> descent_period = 0;

  StepsizeRule stepsize;
  std::size_t cache_capacity = 500;
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0: hardware concurrency
  bool deterministic = true;

  void validate() const;
};

struct IterationReport {
  std::size_t k = 0;          // iterations completed, this one included
  double fval = 0.0;          // after the update
  double alpha = 0.0;
  double violation = 0.0;     // m - M at the start of the iteration
  std::size_t blocks = 0;
  std::size_t support = 0;    // nonzeros of d
  std::size_t fresh_columns = 0;
  std::size_t cache_hits = 0;
  std::size_t columns_total = 0;
  std::size_t hits_total = 0;
  bool descent = false;
  bool forced_mvp = false;
};

enum class StopReason { kkt, empty_index_set, max_iter };
std::string to_string(StopReason r);

class DecompositionSolver {
 public:
  DecompositionSolver(Problem problem, SolverConfig config);

  const Problem& problem() const { return problem_; }
  const SolverConfig& config() const { return config_; }
  const QPState& state() const { return state_; }
  const ColumnCache& cache() const { return cache_; }
  const ViolationView& view() const { return view_; }

  double index_eps() const { return index_eps_; }
  double tau() const { return tau_; }
  double inner_eta() const { return inner_eta_; }

  // Set when the current iterate passes the stopping test.
  std::optional<StopReason> stop_reason() const;

  // One pass of selection, parallel subproblem solves, direction assembly,
  // gathering stepsize and update. Throws std::logic_error when stopped.
  IterationReport iterate();

 private:
  BlockSelection select_blocks(bool& forced);
  std::vector<ColumnPtr> fetch_columns(const std::vector<std::size_t>& indices);

  Problem problem_;
  SolverConfig config_;
  double index_eps_;
  double tau_;
  double inner_eta_;
  ColumnCache cache_;
  tbb::task_arena arena_;
  QPState state_;
  ViolationView view_;

  std::vector<std::vector<std::size_t>> partition_;
  std::size_t cursor_ = 0;
  std::size_t since_descent_ = 0;
};

struct TrainResult {
  QPState state;
  std::vector<IterationReport> reports;
  StopReason reason = StopReason::max_iter;
  ViolationView final_view;
  std::size_t columns_computed = 0;
  std::size_t cache_hits = 0;
  double seconds = 0.0;
};

using IterationObserver = std::function<void(const IterationReport&)>;

TrainResult train(const Problem& problem, const SolverConfig& config,
                  const IterationObserver& observer = {});

}  // namespace parsmo

#endif  // PARSMO_SOLVER_HPP

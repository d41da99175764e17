#include "parsmo/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <tbb/parallel_for.h>

#include "parsmo/block_subproblem.hpp"
#include "parsmo/smo_pair.hpp"

namespace parsmo {

Variant parse_variant(std::string_view name) {
  if (name == "parsmo1") return Variant::parsmo1;
  if (name == "parsmo2") return Variant::parsmo2;
  if (name == "blocks") return Variant::blocks;
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::parsmo1: return "parsmo1";
    case Variant::parsmo2: return "parsmo2";
    case Variant::blocks: return "blocks";
  }
  return "?";
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kkt: return "kkt";
    case StopReason::empty_index_set: return "empty-index-set";
    case StopReason::max_iter: return "max-iter";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (q < 1) throw std::invalid_argument("q must be at least 1");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (index_eps && *index_eps < 0.0)
    throw std::invalid_argument("index eps must be nonnegative");
  if (!(descent_eps > 0.0))
    throw std::invalid_argument("descent eps must be positive");
  if (tau && *tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
  if (inner_eta && !(*inner_eta > 0.0))
    throw std::invalid_argument("inner eta must be positive");
  if (variant == Variant::blocks && block_size < 1 && partition.empty())
    throw std::invalid_argument("block size must be positive");
  if (cache_capacity < 1)
    throw std::invalid_argument("cache must hold at least one column");
  stepsize.validate();
}

namespace {

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void check_partition(const std::vector<std::vector<std::size_t>>& partition,
                     std::size_t n) {
  std::vector<bool> seen(n, false);
  for (const auto& block : partition) {
    if (block.empty()) throw std::invalid_argument("partition has an empty block");
    for (auto r : block) {
      if (r >= n) throw std::invalid_argument("partition index out of range");
      if (seen[r]) throw std::invalid_argument("partition blocks overlap");
      seen[r] = true;
    }
  }
}

}  // namespace

DecompositionSolver::DecompositionSolver(Problem problem, SolverConfig config)
    : problem_(std::move(problem)),
      config_(std::move(config)),
      index_eps_(0.0),
      tau_(0.0),
      inner_eta_(0.0),
      cache_(problem_.data(), problem_.kernel(),
             (config_.validate(), config_.cache_capacity)),
      arena_(static_cast<int>(resolve_threads(config_.threads))),
      state_(init_zero(problem_)) {
  index_eps_ = config_.index_eps.value_or(kDefaultIndexEpsFactor * problem_.C());
  tau_ = config_.tau.value_or(
      problem_.kernel().kind == KernelKind::linear ? 1e-6 : 0.0);
  inner_eta_ = config_.inner_eta.value_or(config_.eta / 10.0);

  if (config_.variant == Variant::blocks) {
    if (!config_.partition.empty()) {
      check_partition(config_.partition, problem_.size());
      partition_ = config_.partition;
    } else {
      partition_ = make_partition(problem_.size(), config_.block_size,
                                  config_.seed);
    }
  }
  view_ = violation_view(problem_, state_, index_eps_);
}

std::optional<StopReason> DecompositionSolver::stop_reason() const {
  if (view_.i_up.empty() || view_.i_low.empty())
    return StopReason::empty_index_set;
  if (is_stopped(view_, config_.eta)) return StopReason::kkt;
  return std::nullopt;
}

BlockSelection DecompositionSolver::select_blocks(bool& forced) {
  forced = false;
  const auto& y = problem_.data().labels();
  switch (config_.variant) {
    case Variant::parsmo1:
      return select_pairs_parsmo1(view_, state_.grad, y, config_.q);
    case Variant::parsmo2: {
      auto resident = cache_.probe_resident();
      return select_pairs_parsmo2(view_, state_.grad, y, config_.q, resident);
    }
    case Variant::blocks:
      break;
  }

  BlockSelection sel;
  forced = config_.descent_period && since_descent_ >= *config_.descent_period &&
           view_.mvp.has_value();
  std::size_t wanted = std::min(config_.q, partition_.size());
  if (forced) {
    const auto [i, j] = *view_.mvp;
    sel.blocks.push_back({i, j});
    sel.contains_mvp = true;
    wanted = std::min(config_.q - 1, partition_.size());
  }
  for (std::size_t taken = 0; taken < wanted; ++taken) {
    const auto& block = partition_[cursor_];
    cursor_ = (cursor_ + 1) % partition_.size();
    std::vector<std::size_t> b;
    for (auto r : block) {
      if (forced && (r == view_.mvp->first || r == view_.mvp->second)) continue;
      b.push_back(r);
    }
    if (!b.empty()) sel.blocks.push_back(std::move(b));
  }
  return sel;
}

std::vector<ColumnPtr> DecompositionSolver::fetch_columns(
    const std::vector<std::size_t>& indices) {
  std::vector<ColumnPtr> cols(indices.size());
  // Take resident columns first so that computing the missing ones cannot
  // evict them before they are pinned.
  std::vector<std::size_t> missing;
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (cache_.is_resident(indices[a]))
      cols[a] = cache_.get_column(indices[a]);
    else
      missing.push_back(a);
  }
  arena_.execute([&] {
    tbb::parallel_for(std::size_t{0}, missing.size(), [&](std::size_t m) {
      cols[missing[m]] = cache_.get_column(indices[missing[m]]);
    });
  });
  return cols;
}

IterationReport DecompositionSolver::iterate() {
  if (stop_reason()) throw std::logic_error("iterate called at a stopped point");

  const std::size_t computed_before = cache_.columns_computed();
  const std::size_t hits_before = cache_.cache_hits();

  IterationReport report;
  report.violation = view_.violation();

  bool forced = false;
  BlockSelection sel = select_blocks(forced);
  report.forced_mvp = forced;
  report.blocks = sel.blocks.size();

  // Unique indices in block order.
  std::vector<std::size_t> indices;
  std::unordered_map<std::size_t, std::size_t> slot;
  for (const auto& block : sel.blocks)
    for (auto r : block)
      if (slot.emplace(r, indices.size()).second) indices.push_back(r);
  auto columns = fetch_columns(indices);

  // Parallel subproblem solves; each writes only its own slot.
  const bool pairs = config_.variant != Variant::blocks;
  std::vector<std::vector<DirectionEntry>> pieces(sel.blocks.size());
  std::vector<double> displacement(sel.blocks.size(), 0.0);
  arena_.execute([&] {
    tbb::parallel_for(std::size_t{0}, sel.blocks.size(), [&](std::size_t b) {
      const auto& block = sel.blocks[b];
      if (pairs) {
        const auto i = block[0], j = block[1];
        auto step = solve_pair(problem_, state_, *columns[slot.at(i)],
                               *columns[slot.at(j)], i, j);
        if (step.t > 0.0) {
          pieces[b] = {{i, step.t * step.dir_i}, {j, step.t * step.dir_j}};
          displacement[b] = std::sqrt(2.0) * step.t;
        }
        return;
      }
      std::vector<ColumnPtr> block_cols;
      block_cols.reserve(block.size());
      for (auto r : block) block_cols.push_back(columns[slot.at(r)]);
      auto sub = build_block(problem_, state_, block, block_cols, tau_);
      auto sol = solve_block(sub, inner_eta_);
      for (std::size_t a = 0; a < block.size(); ++a) {
        const double delta = sol.xhat[a] - sub.anchor[a];
        if (delta != 0.0) pieces[b].push_back({block[a], delta});
      }
      displacement[b] = sol.displacement;
    });
  });

  SparseDirection d;
  std::vector<ColumnPtr> dcols;
  for (const auto& piece : pieces)
    for (const auto& e : piece) {
      d.push_back(e);
      dcols.push_back(columns[slot.at(e.index)]);
    }
  report.support = d.size();

  report.descent = false;
  for (std::size_t b = 0; b < sel.blocks.size(); ++b) {
    if (pairs && b > 0) break;  // the MVP pair is the witness
    BlockSolution witness;
    witness.displacement = displacement[b];
    if (is_descent_block(witness, view_.mvs, config_.descent_eps)) {
      report.descent = true;
      break;
    }
  }

  double alpha = 0.0;
  if (!d.empty()) {
    const double gd = directional_derivative(state_, d);
    const double dqd = quadratic_form(d, dcols);
    switch (config_.stepsize.kind) {
      case StepsizeKind::exact:
        alpha = exact_stepsize(state_, problem_.C(), d, dqd);
        break;
      case StepsizeKind::armijo:
        alpha = gd < 0.0 ? armijo_stepsize(gd, dqd, config_.stepsize.theta,
                                           config_.stepsize.backtrack)
                         : 0.0;
        break;
      case StepsizeKind::diminishing:
        alpha = diminishing_stepsize(state_.k + 1, config_.stepsize.xi);
        break;
      case StepsizeKind::unit:
        alpha = 1.0;
        break;
    }
  }

  const auto reduction =
      config_.deterministic ? Reduction::deterministic : Reduction::relaxed;
  arena_.execute(
      [&] { apply_step(problem_, state_, d, alpha, dcols, reduction); });
  view_ = violation_view(problem_, state_, index_eps_);

  since_descent_ = report.descent ? 0 : since_descent_ + 1;

  report.k = state_.k;
  report.fval = state_.fval;
  report.alpha = alpha;
  report.columns_total = cache_.columns_computed();
  report.hits_total = cache_.cache_hits();
  report.fresh_columns = report.columns_total - computed_before;
  report.cache_hits = report.hits_total - hits_before;
  return report;
}

TrainResult train(const Problem& problem, const SolverConfig& config,
                  const IterationObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  DecompositionSolver solver(problem, config);
  TrainResult result;
  for (;;) {
    if (auto reason = solver.stop_reason()) {
      result.reason = *reason;
      break;
    }
    if (solver.state().k >= config.max_iter) {
      result.reason = StopReason::max_iter;
      break;
    }
    result.reports.push_back(solver.iterate());
    if (observer) observer(result.reports.back());
  }
  result.state = solver.state();
  result.final_view = solver.view();
  result.columns_computed = solver.cache().columns_computed();
  result.cache_hits = solver.cache().cache_hits();
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

}  // namespace parsmo

#include "parsmo/column_cache.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace parsmo {

KernelColumn compute_column(const Dataset& ds, const KernelSpec& spec,
                            std::size_t r) {
  const std::size_t n = ds.size();
  if (r >= n)
    throw std::out_of_range("column index " + std::to_string(r) +
                            " out of range");
  KernelColumn col;
  col.index = r;
  col.values.resize(n);
  const Sample& zr = ds.sample(r);
  const double yr = ds.label(r);
  for (std::size_t s = 0; s < n; ++s)
    col.values[s] = ds.label(s) * yr * kernel_value(spec, ds.sample(s), zr);
  return col;
}

ColumnCache::ColumnCache(const Dataset& ds, KernelSpec spec,
                         std::size_t capacity)
    : ds_(ds), spec_(spec), capacity_(capacity) {
  spec_.validate();
  if (capacity_ == 0)
    throw std::invalid_argument("cache capacity must be at least 1 column");
}

ColumnPtr ColumnCache::get_column(std::size_t r) {
  if (r >= ds_.size())
    throw std::out_of_range("column index " + std::to_string(r) +
                            " out of range");

  std::promise<ColumnPtr> promise;
  {
    std::unique_lock lock(mutex_);
    if (auto it = resident_.find(r); it != resident_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second.lru_pos);
      ++hits_;
      return it->second.column;
    }
    if (auto it = pending_.find(r); it != pending_.end()) {
      auto fut = it->second;
      lock.unlock();
      ++hits_;
      return fut.get();
    }
    pending_.emplace(r, promise.get_future().share());
  }

  ColumnPtr column;
  try {
    column = std::make_shared<const KernelColumn>(compute_column(ds_, spec_, r));
  } catch (...) {
    std::lock_guard lock(mutex_);
    pending_.erase(r);
    promise.set_exception(std::current_exception());
    throw;
  }
  ++computed_;
  {
    std::lock_guard lock(mutex_);
    insert_locked(r, column);
    pending_.erase(r);
  }
  promise.set_value(column);
  return column;
}

void ColumnCache::insert_locked(std::size_t r, ColumnPtr column) {
  while (resident_.size() >= capacity_) {
    auto victim = lru_.back();
    lru_.pop_back();
    resident_.erase(victim);
  }
  lru_.push_front(r);
  resident_.emplace(r, Entry{std::move(column), lru_.begin()});
}

std::vector<std::size_t> ColumnCache::probe_resident() const {
  std::vector<std::size_t> out;
  {
    std::lock_guard lock(mutex_);
    out.reserve(resident_.size());
    for (const auto& [r, entry] : resident_) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ColumnCache::is_resident(std::size_t r) const {
  std::lock_guard lock(mutex_);
  return resident_.contains(r);
}

std::size_t ColumnCache::resident_count() const {
  std::lock_guard lock(mutex_);
  return resident_.size();
}

}  // namespace parsmo

#ifndef PARSMO_COLUMN_CACHE_HPP
#define PARSMO_COLUMN_CACHE_HPP

#include <atomic>
#include <cstddef>
#include <future>
#include <list>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "parsmo/dataset.hpp"
#include "parsmo/kernel.hpp"

namespace parsmo {

// Column r of the implicit Hessian: values[s] = y_s y_r K(z_s, z_r).
struct KernelColumn {
  std::size_t index = 0;
  std::vector<double> values;
};

using ColumnPtr = std::shared_ptr<const KernelColumn>;

// Computes Q_{*r} without touching any cache.
KernelColumn compute_column(const Dataset& ds, const KernelSpec& spec,
                            std::size_t r);

// Bounded LRU store of kernel columns.
//
// get_column is thread safe. Concurrent misses on the same index wait for a
// single computation. Columns are handed out as shared pointers, so a column
// stays valid for its holder after eviction.
class ColumnCache {
 public:
  ColumnCache(const Dataset& ds, KernelSpec spec, std::size_t capacity);

  ColumnCache(const ColumnCache&) = delete;
  ColumnCache& operator=(const ColumnCache&) = delete;

  ColumnPtr get_column(std::size_t r);

  // Sorted snapshot of resident indices. Does not touch recency.
  std::vector<std::size_t> probe_resident() const;
  bool is_resident(std::size_t r) const;

  std::size_t capacity() const { return capacity_; }
  std::size_t resident_count() const;
  std::size_t columns_computed() const { return computed_.load(); }
  std::size_t cache_hits() const { return hits_.load(); }

  const Dataset& dataset() const { return ds_; }
  const KernelSpec& kernel() const { return spec_; }

 private:
  struct Entry {
    ColumnPtr column;
    std::list<std::size_t>::iterator lru_pos;
  };

  void insert_locked(std::size_t r, ColumnPtr column);

  const Dataset& ds_;
  KernelSpec spec_;
  std::size_t capacity_;

  mutable std::mutex mutex_;
  std::list<std::size_t> lru_;  // front = most recently used
  std::unordered_map<std::size_t, Entry> resident_;
  std::unordered_map<std::size_t, std::shared_future<ColumnPtr>> pending_;

  std::atomic<std::size_t> computed_{0};
  std::atomic<std::size_t> hits_{0};
};

}  // namespace parsmo

#endif  // PARSMO_COLUMN_CACHE_HPP

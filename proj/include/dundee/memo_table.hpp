#pragma once

#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace dundee {

/// Write-once cache shared by concurrent workers.
///
/// Lookups take a shared lock; inserts take an exclusive lock and keep the
/// first value stored for a key. Two workers racing on the same key both
/// compute it, and since the engines are deterministic both results agree.
/// Returned pointers stay valid for the table's lifetime: unordered_map
/// never relocates its nodes and entries are never erased.
template <class Key, class Value, class Hash = std::hash<Key>>
class MemoTable {
 public:
  const Value* find(const Key& key) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }

  const Value& insert(Key key, Value value) {
    std::unique_lock lock(mu_);
    return map_.try_emplace(std::move(key), std::move(value)).first->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<Key, Value, Hash> map_;
};

}  // namespace dundee

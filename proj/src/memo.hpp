#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "gocyclo/coproof.hpp"

namespace gocyclo::detail {

// Write-once cache of transformer results keyed by operation text and the
// identities of the argument nodes. Entries hold only weak references, so a
// hit is accepted only while both the arguments and the result are alive.
class NodeMemo {
 public:
  CoProof find(const std::string& op, const std::vector<CoProof>& args, std::size_t level = 0) {
    std::lock_guard lock(mu_);
    auto it = table_.find(key(op, args, level));
    if (it == table_.end()) return nullptr;
    for (std::size_t i = 0; i < args.size(); ++i)
      if (it->second.args[i].lock() != args[i]) return nullptr;
    return it->second.result.lock();
  }

  void store(const std::string& op, const std::vector<CoProof>& args, const CoProof& result, std::size_t level = 0) {
    std::lock_guard lock(mu_);
    if (table_.size() >= sweep_at_) sweep();
    Entry e;
    for (const auto& a : args) e.args.push_back(a);
    e.result = result;
    table_[key(op, args, level)] = std::move(e);
  }

  void clear() {
    std::lock_guard lock(mu_);
    table_.clear();
  }

 private:
  using Key = std::tuple<std::string, std::vector<const CoNode*>, std::size_t>;
  struct Entry {
    std::vector<std::weak_ptr<const CoNode>> args;
    std::weak_ptr<const CoNode> result;
  };

  static Key key(const std::string& op, const std::vector<CoProof>& args, std::size_t level) {
    std::vector<const CoNode*> ids;
    for (const auto& a : args) ids.push_back(a.get());
    return {op, std::move(ids), level};
  }

  void sweep() {
    for (auto it = table_.begin(); it != table_.end();) {
      bool dead = it->second.result.expired();
      for (const auto& a : it->second.args) dead = dead || a.expired();
      it = dead ? table_.erase(it) : std::next(it);
    }
    sweep_at_ = std::max<std::size_t>(4096, 2 * table_.size());
  }

  std::mutex mu_;
  std::map<Key, Entry> table_;
  std::size_t sweep_at_ = 4096;
};

}  // namespace gocyclo::detail

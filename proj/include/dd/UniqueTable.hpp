#pragma once

#include "dd/Node.hpp"

#include <cassert>
#include <cstdint>
#include <deque>
#include <functional>
#include <unordered_map>
#include <vector>

namespace dd {

/**
 * @brief Per-level hash-consing table with reference-counted nodes.
 *
 * At most one live node exists per (level, successor tuple); lookupOrInsert
 * either returns that node or materializes it from the pool. Reference counts
 * track parents among retained diagrams: when a node's count rises from zero
 * its successors gain a reference, and symmetrically on the way down, so a
 * count of zero means "unreachable from any retained root" and collect() can
 * sweep in a single pass.
 */
template <class Node> class UniqueTable {
public:
  using EdgeT = Edge<Node>;
  using SuccArray = std::array<EdgeT, Node::Arity>;

  Node* lookupOrInsert(Level level, const SuccArray& succ) {
    auto& table = levelTable(level);
    const auto it = table.find(succ);
    if (it != table.end()) {
      return it->second;
    }
    Node* node = allocate();
    node->succ = succ;
    node->level = level;
    node->ref = 0;
    table.emplace(succ, node);
    return node;
  }

  void incRef(Node* node) {
    if (node == nullptr) {
      return;
    }
    if (node->ref++ == 0) {
      for (const auto& e : node->succ) {
        incRef(e.target);
      }
    }
  }

  void decRef(Node* node) {
    if (node == nullptr) {
      return;
    }
    assert(node->ref > 0);
    if (--node->ref == 0) {
      for (const auto& e : node->succ) {
        decRef(e.target);
      }
    }
  }

  /// Sweep all nodes with zero reference count. Returns the number freed.
  std::size_t collect() {
    std::size_t freed = 0;
    for (auto& table : levels_) {
      for (auto it = table.begin(); it != table.end();) {
        if (it->second->ref == 0) {
          free_.push_back(it->second);
          it = table.erase(it);
          ++freed;
        } else {
          ++it;
        }
      }
    }
    return freed;
  }

  /// Nodes currently present (live or not yet collected).
  [[nodiscard]] std::size_t size() const {
    std::size_t n = 0;
    for (const auto& table : levels_) {
      n += table.size();
    }
    return n;
  }

  /// Nodes with a nonzero reference count.
  [[nodiscard]] std::size_t liveCount() const {
    std::size_t n = 0;
    for (const auto& table : levels_) {
      for (const auto& [succ, node] : table) {
        if (node->ref > 0) {
          ++n;
        }
      }
    }
    return n;
  }

  template <class Visitor> void forEach(Visitor&& visit) const {
    for (const auto& table : levels_) {
      for (const auto& [succ, node] : table) {
        visit(*node);
      }
    }
  }

private:
  struct SuccHash {
    std::size_t operator()(const SuccArray& succ) const {
      std::uint64_t h = 0x243f6a8885a308d3ULL;
      for (const auto& e : succ) {
        h ^= reinterpret_cast<std::uintptr_t>(e.target) + 0x9e3779b97f4a7c15ULL +
             (h << 6U) + (h >> 2U);
        h ^= static_cast<std::uint64_t>(e.weight) + 0x9e3779b97f4a7c15ULL +
             (h << 6U) + (h >> 2U);
      }
      return static_cast<std::size_t>(h);
    }
  };
  using LevelMap = std::unordered_map<SuccArray, Node*, SuccHash>;

  LevelMap& levelTable(Level level) {
    assert(level >= 0);
    if (static_cast<std::size_t>(level) >= levels_.size()) {
      levels_.resize(static_cast<std::size_t>(level) + 1);
    }
    return levels_[static_cast<std::size_t>(level)];
  }

  Node* allocate() {
    if (!free_.empty()) {
      Node* node = free_.back();
      free_.pop_back();
      return node;
    }
    return &pool_.emplace_back();
  }

  std::vector<LevelMap> levels_;
  std::deque<Node> pool_; // stable addresses; freed nodes are recycled
  std::vector<Node*> free_;
};

} // namespace dd

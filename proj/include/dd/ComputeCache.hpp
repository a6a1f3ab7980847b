#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dd {

/**
 * @brief Direct-mapped memoization table for DD operations.
 *
 * Fixed capacity; colliding keys overwrite. A miss only costs a recompute, so
 * the mapping never affects results (canonicity makes cached and recomputed
 * edges identical). Must be cleared whenever garbage collection may free
 * nodes referenced by cached entries.
 */
template <class Key, class Value> class ComputeCache {
public:
  static constexpr std::size_t LogCapacity = 16;
  static constexpr std::size_t Capacity = std::size_t{1} << LogCapacity;

  const Value* lookup(const Key& key) {
    if (!enabled_ || entries_.empty()) {
      return nullptr;
    }
    ++lookups_;
    const auto& entry = entries_[slot(key)];
    if (entry.valid && entry.key == key) {
      ++hits_;
      return &entry.value;
    }
    return nullptr;
  }

  void insert(const Key& key, const Value& value) {
    if (!enabled_) {
      return;
    }
    if (entries_.empty()) {
      entries_.resize(Capacity);
    }
    auto& entry = entries_[slot(key)];
    entry.key = key;
    entry.value = value;
    entry.valid = true;
  }

  void clear() {
    for (auto& entry : entries_) {
      entry.valid = false;
    }
  }

  void setEnabled(bool enabled) { enabled_ = enabled; }

  [[nodiscard]] std::size_t hits() const { return hits_; }
  [[nodiscard]] std::size_t lookups() const { return lookups_; }

private:
  struct Entry {
    Key key{};
    Value value{};
    bool valid = false;
  };

  [[nodiscard]] std::size_t slot(const Key& key) const {
    return key.hash() & (Capacity - 1);
  }

  std::vector<Entry> entries_;
  bool enabled_ = true;
  std::size_t hits_ = 0;
  std::size_t lookups_ = 0;
};

namespace detail {
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
} // namespace detail

/// Key on two operand nodes; weights factored out by the caller.
struct NodePairKey {
  const void* a = nullptr;
  const void* b = nullptr;

  bool operator==(const NodePairKey&) const = default;
  [[nodiscard]] std::size_t hash() const {
    return static_cast<std::size_t>(
        detail::mix(reinterpret_cast<std::uintptr_t>(a)) ^
        detail::mix(reinterpret_cast<std::uintptr_t>(b) * 0x100000001b3ULL));
  }
};

/// Key on two full edges (node identity plus canonical weight handle).
struct EdgePairKey {
  const void* a = nullptr;
  std::uint32_t wa = 0;
  const void* b = nullptr;
  std::uint32_t wb = 0;

  bool operator==(const EdgePairKey&) const = default;
  [[nodiscard]] std::size_t hash() const {
    return static_cast<std::size_t>(
        detail::mix(reinterpret_cast<std::uintptr_t>(a) ^
                    (std::uint64_t{wa} << 32U)) ^
        detail::mix(reinterpret_cast<std::uintptr_t>(b) ^ std::uint64_t{wb}));
  }
};

/// Key for Kronecker products: operand nodes plus the level shift applied to
/// the upper factor.
struct KronKey {
  const void* a = nullptr;
  const void* b = nullptr;
  std::int32_t shift = 0;

  bool operator==(const KronKey&) const = default;
  [[nodiscard]] std::size_t hash() const {
    return static_cast<std::size_t>(
        detail::mix(reinterpret_cast<std::uintptr_t>(a) +
                    static_cast<std::uint64_t>(shift)) ^
        detail::mix(reinterpret_cast<std::uintptr_t>(b)));
  }
};

} // namespace dd

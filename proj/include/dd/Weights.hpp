#pragma once

#include "dd/Complex.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace dd {

/// Canonical handle into a context's weight table. Two handles are equal iff
/// the stored values were uniqued to the same entry, so structural equality of
/// decision diagrams reduces to handle comparison.
using WeightRef = std::uint32_t;

/// The exact zero weight. Edges carrying it are zero stubs.
inline constexpr WeightRef WeightZero = 0;
/// The exact one weight. Multiplicatively neutral, bit-exact.
inline constexpr WeightRef WeightOne = 1;

/**
 * @brief Tolerance-uniqued storage for complex edge weights.
 *
 * Values within eps (componentwise) of an existing entry resolve to that
 * entry's handle; values within eps of 0 or 1 resolve to the exact WeightZero
 * and WeightOne constants. Lookup uses a bucketed hash on eps-rounded
 * coordinates with neighbor-bucket probing, so near-boundary values still
 * unify. Entries are never removed; handles stay valid for the lifetime of
 * the table.
 */
class WeightTable {
public:
  explicit WeightTable(Tolerance tol = {});

  /// Canonicalize a finite complex value.
  /// @throws std::domain_error on NaN/Inf input.
  WeightRef lookup(const ComplexValue& c);

  [[nodiscard]] const ComplexValue& value(WeightRef r) const {
    return values_[r];
  }

  // Exact arithmetic on resolved values; results are re-canonicalized.
  WeightRef add(WeightRef a, WeightRef b);
  WeightRef mul(WeightRef a, WeightRef b);
  WeightRef conj(WeightRef a);
  WeightRef neg(WeightRef a);
  [[nodiscard]] Real normSquared(WeightRef a) const {
    return dd::normSquared(values_[a]);
  }

  [[nodiscard]] Real eps() const { return eps_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }

private:
  struct BucketKey {
    std::int64_t re;
    std::int64_t im;
    bool operator==(const BucketKey&) const = default;
  };
  struct BucketKeyHash {
    std::size_t operator()(const BucketKey& k) const;
  };

  [[nodiscard]] BucketKey keyFor(const ComplexValue& c) const;
  [[nodiscard]] bool withinEps(const ComplexValue& a,
                               const ComplexValue& b) const;

  Real eps_;
  std::vector<ComplexValue> values_;
  std::unordered_map<BucketKey, std::vector<WeightRef>, BucketKeyHash>
      buckets_;
};

} // namespace dd

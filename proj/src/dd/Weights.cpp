#include "dd/Weights.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace dd {

WeightTable::WeightTable(Tolerance tol) : eps_(tol.eps) {
  if (!tol.valid()) {
    throw std::invalid_argument("weight tolerance must be finite and > 0");
  }
  // Slots 0 and 1 are pinned so WeightZero/WeightOne resolve exactly.
  values_.emplace_back(0.0, 0.0);
  values_.emplace_back(1.0, 0.0);
  buckets_[keyFor(values_[WeightZero])].push_back(WeightZero);
  buckets_[keyFor(values_[WeightOne])].push_back(WeightOne);
}

std::size_t WeightTable::BucketKeyHash::operator()(const BucketKey& k) const {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return static_cast<std::size_t>(
      mix(static_cast<std::uint64_t>(k.re) ^
          mix(static_cast<std::uint64_t>(k.im))));
}

WeightTable::BucketKey WeightTable::keyFor(const ComplexValue& c) const {
  return {static_cast<std::int64_t>(std::llround(c.real() / eps_)),
          static_cast<std::int64_t>(std::llround(c.imag() / eps_))};
}

bool WeightTable::withinEps(const ComplexValue& a,
                            const ComplexValue& b) const {
  return std::abs(a.real() - b.real()) <= eps_ &&
         std::abs(a.imag() - b.imag()) <= eps_;
}

WeightRef WeightTable::lookup(const ComplexValue& c) {
  if (!isFinite(c)) {
    throw std::domain_error("non-finite complex weight");
  }
  if (withinEps(c, values_[WeightZero])) {
    return WeightZero;
  }
  if (withinEps(c, values_[WeightOne])) {
    return WeightOne;
  }
  const auto key = keyFor(c);
  // Anything within eps lands in this or a directly adjacent bucket.
  for (std::int64_t dr = -1; dr <= 1; ++dr) {
    for (std::int64_t di = -1; di <= 1; ++di) {
      const auto it = buckets_.find(BucketKey{key.re + dr, key.im + di});
      if (it == buckets_.end()) {
        continue;
      }
      for (const auto ref : it->second) {
        if (withinEps(c, values_[ref])) {
          return ref;
        }
      }
    }
  }
  const auto ref = static_cast<WeightRef>(values_.size());
  values_.push_back(c);
  buckets_[key].push_back(ref);
  return ref;
}

WeightRef WeightTable::add(WeightRef a, WeightRef b) {
  if (a == WeightZero) {
    return b;
  }
  if (b == WeightZero) {
    return a;
  }
  return lookup(values_[a] + values_[b]);
}

WeightRef WeightTable::mul(WeightRef a, WeightRef b) {
  if (a == WeightZero || b == WeightZero) {
    return WeightZero;
  }
  if (a == WeightOne) {
    return b;
  }
  if (b == WeightOne) {
    return a;
  }
  return lookup(values_[a] * values_[b]);
}

WeightRef WeightTable::conj(WeightRef a) {
  const auto& v = values_[a];
  if (v.imag() == 0.0) {
    return a;
  }
  return lookup(std::conj(v));
}

WeightRef WeightTable::neg(WeightRef a) {
  if (a == WeightZero) {
    return a;
  }
  return lookup(-values_[a]);
}

} // namespace dd

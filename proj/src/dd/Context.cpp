#include "dd/Context.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace dd {

Context::Context(ContextOptions options)
    : options_(options), weights_(options.tolerance),
      nextGcAt_(options.gcNodeThreshold) {
  caches_.vectorAdd.setEnabled(options.cachingEnabled);
  caches_.matrixAdd.setEnabled(options.cachingEnabled);
  caches_.matVec.setEnabled(options.cachingEnabled);
  caches_.matMat.setEnabled(options.cachingEnabled);
  caches_.inner.setEnabled(options.cachingEnabled);
  caches_.kronVector.setEnabled(options.cachingEnabled);
  caches_.kronMatrix.setEnabled(options.cachingEnabled);
}

namespace {

// Unit phase of a nonzero value, exact for values on the real or imaginary
// axis so that canonical slots stay bit-exact in the common cases.
ComplexValue unitPhase(const ComplexValue& v) {
  if (v.imag() == 0.0) {
    return {v.real() < 0.0 ? -1.0 : 1.0, 0.0};
  }
  if (v.real() == 0.0) {
    return {0.0, v.imag() < 0.0 ? -1.0 : 1.0};
  }
  return v / std::abs(v);
}

} // namespace

Context::VectorNormalization Context::normalizeVector(VectorEdge e0,
                                                      VectorEdge e1) {
  const bool zero0 = e0.isZero();
  const bool zero1 = e1.isZero();
  if (zero0 && zero1) {
    throw std::domain_error("degenerate vector node: both successors zero");
  }
  const ComplexValue w0 = zero0 ? ComplexValue{} : value(e0.weight);
  const ComplexValue w1 = zero1 ? ComplexValue{} : value(e1.weight);
  const Real norm = std::sqrt(dd::normSquared(w0) + dd::normSquared(w1));
  const ComplexValue& lead = zero0 ? w1 : w0;
  const ComplexValue phase = unitPhase(lead);
  const ComplexValue common = norm * phase;

  // The leading slot is |lead|/norm by construction: real and non-negative.
  const WeightRef leadRef = weights_.lookup({std::abs(lead) / norm, 0.0});
  VectorNormalization result{};
  result.common = weights_.lookup(common);
  if (zero0) {
    result.e0 = VectorEdge::zero();
    result.e1 = {e1.target, leadRef};
  } else {
    result.e0 = {e0.target, leadRef};
    result.e1 = zero1 ? VectorEdge::zero()
                      : VectorEdge{e1.target, weights_.lookup(w1 / common)};
  }
  return result;
}

Context::MatrixNormalization
Context::normalizeMatrix(std::array<MatrixEdge, 4> e) {
  std::size_t maxIdx = 4;
  Real maxMag2 = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (e[i].isZero()) {
      continue;
    }
    const Real mag2 = weights_.normSquared(e[i].weight);
    if (maxIdx == 4 || mag2 > maxMag2) {
      maxIdx = i;
      maxMag2 = mag2;
    }
  }
  if (maxIdx == 4) {
    throw std::domain_error("degenerate matrix node: all successors zero");
  }
  const ComplexValue common = value(e[maxIdx].weight);
  MatrixNormalization result{};
  result.common = e[maxIdx].weight;
  for (std::size_t i = 0; i < 4; ++i) {
    if (e[i].isZero()) {
      result.e[i] = MatrixEdge::zero();
    } else if (i == maxIdx) {
      result.e[i] = {e[i].target, WeightOne};
    } else {
      result.e[i] = {e[i].target, weights_.lookup(value(e[i].weight) / common)};
    }
  }
  return result;
}

VectorEdge Context::makeVectorNode(Level level, const VectorEdge& e0,
                                   const VectorEdge& e1) {
  if (e0.isZero() && e1.isZero()) {
    return VectorEdge::zero();
  }
  assert(e0.isZero() || e0.isTerminal() || e0.target->level < level);
  assert(e1.isZero() || e1.isTerminal() || e1.target->level < level);
  auto norm = normalizeVector(e0, e1);
  VectorNode* node = vectors_.lookupOrInsert(level, {norm.e0, norm.e1});
  return {node, norm.common};
}

MatrixEdge Context::makeMatrixNode(Level level,
                                   const std::array<MatrixEdge, 4>& e) {
  if (e[0].isZero() && e[1].isZero() && e[2].isZero() && e[3].isZero()) {
    return MatrixEdge::zero();
  }
  auto norm = normalizeMatrix(e);
  MatrixNode* node = matrices_.lookupOrInsert(level, norm.e);
  return {node, norm.common};
}

MatrixNode* Context::identityNode(Level level) {
  assert(level >= 0);
  const auto idx = static_cast<std::size_t>(level);
  if (idx < identityChain_.size() && identityChain_[idx] != nullptr) {
    return identityChain_[idx];
  }
  if (identityChain_.size() <= idx) {
    identityChain_.resize(idx + 1, nullptr);
  }
  MatrixEdge below =
      level == 0 ? MatrixEdge::terminal(WeightOne) : identityEdge(level - 1);
  const MatrixEdge e = makeMatrixNode(
      level, {below, MatrixEdge::zero(), MatrixEdge::zero(), below});
  assert(e.weight == WeightOne);
  identityChain_[idx] = e.target;
  return e.target;
}

GcStats Context::garbageCollect() {
  GcStats stats{};
  // Cached entries and memoized identity pointers may reference nodes about
  // to be freed; drop them first.
  caches_.vectorAdd.clear();
  caches_.matrixAdd.clear();
  caches_.matVec.clear();
  caches_.matMat.clear();
  caches_.inner.clear();
  caches_.kronVector.clear();
  caches_.kronMatrix.clear();
  identityChain_.clear();
  stats.vectorNodesFreed = vectors_.collect();
  stats.matrixNodesFreed = matrices_.collect();
  const std::size_t occupancy = vectors_.size() + matrices_.size();
  nextGcAt_ = std::max(options_.gcNodeThreshold, occupancy * 2);
  return stats;
}

void Context::maybeGarbageCollect() {
  if (vectors_.size() + matrices_.size() >= nextGcAt_) {
    garbageCollect();
  }
}

} // namespace dd

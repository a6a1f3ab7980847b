#pragma once

#include "dd/Complex.hpp"
#include "dd/ComputeCache.hpp"
#include "dd/Node.hpp"
#include "dd/UniqueTable.hpp"
#include "dd/Weights.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dd {

struct ContextOptions {
  Tolerance tolerance{};
  /// Unique-table occupancy (per kind) above which maybeGarbageCollect sweeps.
  std::size_t gcNodeThreshold = std::size_t{1} << 20U;
  /// Test hook: operations recompute everything when false.
  bool cachingEnabled = true;
};

struct GcStats {
  std::size_t vectorNodesFreed = 0;
  std::size_t matrixNodesFreed = 0;
};

/**
 * @brief Owner of all DD state: the weight table, the per-level unique
 * tables, the operation caches and the garbage collector.
 *
 * A context is single-owner — operations on it must be externally serialized.
 * Distinct contexts are fully independent and may run concurrently.
 */
class Context {
public:
  explicit Context(ContextOptions options = {});

  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  [[nodiscard]] WeightTable& weights() { return weights_; }
  [[nodiscard]] const WeightTable& weights() const { return weights_; }
  [[nodiscard]] const ContextOptions& options() const { return options_; }

  /// Resolve a weight handle to its stored value.
  [[nodiscard]] const ComplexValue& value(WeightRef w) const {
    return weights_.value(w);
  }

  // --- node construction -------------------------------------------------

  /// Normalize and hash-cons a vector node. Both successors zero yields the
  /// zero edge; no node is created in that case.
  VectorEdge makeVectorNode(Level level, const VectorEdge& e0,
                            const VectorEdge& e1);

  /// Normalize and hash-cons a matrix node; all-zero successors yield the
  /// zero edge.
  MatrixEdge makeMatrixNode(Level level, const std::array<MatrixEdge, 4>& e);

  struct VectorNormalization {
    WeightRef common;
    VectorEdge e0;
    VectorEdge e1;
  };
  /// Divide both weights by the norm of the weight vector and fold the phase
  /// of the leftmost nonzero weight into `common`, so that the squared
  /// magnitudes of the outgoing weights sum to 1 and the leftmost nonzero
  /// weight is real and non-negative.
  /// @throws std::domain_error if both inputs are zero stubs.
  VectorNormalization normalizeVector(VectorEdge e0, VectorEdge e1);

  struct MatrixNormalization {
    WeightRef common;
    std::array<MatrixEdge, 4> e;
  };
  /// Divide all weights by the leftmost weight of maximum magnitude, which
  /// becomes exactly one; every remaining weight has magnitude at most 1.
  /// @throws std::domain_error if all four inputs are zero stubs.
  MatrixNormalization normalizeMatrix(std::array<MatrixEdge, 4> e);

  // --- reference counting and collection ----------------------------------

  void incRef(const VectorEdge& e) { vectors_.incRef(e.target); }
  void decRef(const VectorEdge& e) { vectors_.decRef(e.target); }
  void incRef(const MatrixEdge& e) { matrices_.incRef(e.target); }
  void decRef(const MatrixEdge& e) { matrices_.decRef(e.target); }

  /// Sweep unreferenced nodes and invalidate all operation caches.
  GcStats garbageCollect();

  /// Collect only when a unique table outgrew the configured threshold.
  /// Callers must not hold unreferenced intermediate edges across this call.
  void maybeGarbageCollect();

  [[nodiscard]] std::size_t vectorNodesInUse() const { return vectors_.size(); }
  [[nodiscard]] std::size_t matrixNodesInUse() const {
    return matrices_.size();
  }
  [[nodiscard]] std::size_t liveVectorNodes() const {
    return vectors_.liveCount();
  }
  [[nodiscard]] std::size_t liveMatrixNodes() const {
    return matrices_.liveCount();
  }

  template <class Visitor> void forEachVectorNode(Visitor&& v) const {
    vectors_.forEach(v);
  }
  template <class Visitor> void forEachMatrixNode(Visitor&& v) const {
    matrices_.forEach(v);
  }

  // --- identity chain ------------------------------------------------------

  /// Canonical node of the identity operator on sites 0..level. Memoized per
  /// level; the memo is dropped on garbage collection so it never acts as a
  /// hidden root.
  MatrixNode* identityNode(Level level);
  [[nodiscard]] MatrixEdge identityEdge(Level level) {
    return {identityNode(level), WeightOne};
  }

  // --- operation caches ----------------------------------------------------

  struct Caches {
    ComputeCache<EdgePairKey, VectorEdge> vectorAdd;
    ComputeCache<EdgePairKey, MatrixEdge> matrixAdd;
    ComputeCache<NodePairKey, VectorEdge> matVec;
    ComputeCache<NodePairKey, MatrixEdge> matMat;
    ComputeCache<NodePairKey, ComplexValue> inner;
    ComputeCache<KronKey, VectorEdge> kronVector;
    ComputeCache<KronKey, MatrixEdge> kronMatrix;
  };
  [[nodiscard]] Caches& caches() { return caches_; }

private:
  ContextOptions options_;
  WeightTable weights_;
  UniqueTable<VectorNode> vectors_;
  UniqueTable<MatrixNode> matrices_;
  Caches caches_;
  std::vector<MatrixNode*> identityChain_;
  std::size_t nextGcAt_;
};

} // namespace dd

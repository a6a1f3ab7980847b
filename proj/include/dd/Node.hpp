#pragma once

#include "dd/Weights.hpp"

#include <array>
#include <cstdint>

namespace dd {

/// Site index of a decision node; 0 is the bottom-most site.
using Level = std::int32_t;

struct VectorNode;
struct MatrixNode;

/**
 * @brief Weighted edge into a decision diagram.
 *
 * A null target is the terminal. An edge with weight WeightZero is a zero
 * stub: it always points to the terminal and stands for an all-zero
 * sub-vector (or sub-matrix).
 */
template <class Node> struct Edge {
  Node* target = nullptr;
  WeightRef weight = WeightZero;

  bool operator==(const Edge&) const = default;

  [[nodiscard]] bool isTerminal() const { return target == nullptr; }
  [[nodiscard]] bool isZero() const { return weight == WeightZero; }

  [[nodiscard]] static Edge zero() { return {nullptr, WeightZero}; }
  [[nodiscard]] static Edge terminal(WeightRef w) {
    return {nullptr, w == WeightZero ? WeightZero : w};
  }
};

using VectorEdge = Edge<VectorNode>;
using MatrixEdge = Edge<MatrixNode>;

/// Decision node of a vector DD. succ[0] is the |0> branch, succ[1] the |1>
/// branch. Stored nodes are normalized and hash-consed per level.
struct VectorNode {
  static constexpr std::size_t Arity = 2;
  std::array<VectorEdge, 2> succ{};
  Level level = 0;
  std::uint32_t ref = 0;
};

/// Decision node of a matrix DD. Successors are the four quadrants in the
/// order (0,0), (0,1), (1,0), (1,1) = top-left, top-right, bottom-left,
/// bottom-right.
struct MatrixNode {
  static constexpr std::size_t Arity = 4;
  std::array<MatrixEdge, 4> succ{};
  Level level = 0;
  std::uint32_t ref = 0;
};

} // namespace dd

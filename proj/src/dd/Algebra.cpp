#include "dd/Algebra.hpp"

#include <array>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace dd {

namespace {

template <class Node>
Edge<Node> scale(Context& ctx, const Edge<Node>& e, WeightRef w) {
  const WeightRef res = ctx.weights().mul(w, e.weight);
  if (res == WeightZero) {
    return Edge<Node>::zero();
  }
  return {e.target, res};
}

// Keys for the addition cache: symmetric, so order operands deterministically
// by (node, weight) identity. IEEE addition commutes bitwise, which keeps the
// swap transparent.
template <class Node>
EdgePairKey addKey(const Edge<Node>& a, const Edge<Node>& b) {
  const bool swap = a.target == b.target ? a.weight > b.weight
                                         : a.target > b.target;
  const auto& x = swap ? b : a;
  const auto& y = swap ? a : b;
  return {x.target, x.weight, y.target, y.weight};
}

VectorEdge addRec(Context& ctx, const VectorEdge& a, const VectorEdge& b) {
  if (a.isZero()) {
    return b;
  }
  if (b.isZero()) {
    return a;
  }
  if (a.isTerminal()) {
    assert(b.isTerminal());
    return VectorEdge::terminal(ctx.weights().add(a.weight, b.weight));
  }
  assert(!b.isTerminal() && a.target->level == b.target->level);
  const auto key = addKey(a, b);
  if (const auto* hit = ctx.caches().vectorAdd.lookup(key)) {
    return *hit;
  }
  const auto& an = *a.target;
  const auto& bn = *b.target;
  const VectorEdge r0 = addRec(ctx, scale(ctx, an.succ[0], a.weight),
                               scale(ctx, bn.succ[0], b.weight));
  const VectorEdge r1 = addRec(ctx, scale(ctx, an.succ[1], a.weight),
                               scale(ctx, bn.succ[1], b.weight));
  const VectorEdge result = ctx.makeVectorNode(an.level, r0, r1);
  ctx.caches().vectorAdd.insert(key, result);
  return result;
}

MatrixEdge addRec(Context& ctx, const MatrixEdge& a, const MatrixEdge& b) {
  if (a.isZero()) {
    return b;
  }
  if (b.isZero()) {
    return a;
  }
  if (a.isTerminal()) {
    assert(b.isTerminal());
    return MatrixEdge::terminal(ctx.weights().add(a.weight, b.weight));
  }
  assert(!b.isTerminal() && a.target->level == b.target->level);
  const auto key = addKey(a, b);
  if (const auto* hit = ctx.caches().matrixAdd.lookup(key)) {
    return *hit;
  }
  std::array<MatrixEdge, 4> r{};
  for (std::size_t i = 0; i < 4; ++i) {
    r[i] = addRec(ctx, scale(ctx, a.target->succ[i], a.weight),
                  scale(ctx, b.target->succ[i], b.weight));
  }
  const MatrixEdge result = ctx.makeMatrixNode(a.target->level, r);
  ctx.caches().matrixAdd.insert(key, result);
  return result;
}

VectorEdge applyRec(Context& ctx, const MatrixEdge& u, const VectorEdge& v,
                    Level level) {
  if (u.isZero() || v.isZero()) {
    return VectorEdge::zero();
  }
  const WeightRef w = ctx.weights().mul(u.weight, v.weight);
  if (level < 0) {
    assert(u.isTerminal() && v.isTerminal());
    return VectorEdge::terminal(w);
  }
  assert(u.target->level == level && v.target->level == level);
  if (u.target == ctx.identityNode(level)) {
    return {v.target, w};
  }
  const NodePairKey key{u.target, v.target};
  if (const auto* hit = ctx.caches().matVec.lookup(key)) {
    return scale(ctx, *hit, w);
  }
  const auto& un = *u.target;
  const auto& vn = *v.target;
  std::array<VectorEdge, 2> r{};
  for (std::size_t row = 0; row < 2; ++row) {
    const VectorEdge p0 = applyRec(ctx, un.succ[2 * row], vn.succ[0], level - 1);
    const VectorEdge p1 =
        applyRec(ctx, un.succ[2 * row + 1], vn.succ[1], level - 1);
    r[row] = addRec(ctx, p0, p1);
  }
  const VectorEdge result = ctx.makeVectorNode(level, r[0], r[1]);
  ctx.caches().matVec.insert(key, result);
  return scale(ctx, result, w);
}

MatrixEdge composeRec(Context& ctx, const MatrixEdge& u, const MatrixEdge& v,
                      Level level) {
  if (u.isZero() || v.isZero()) {
    return MatrixEdge::zero();
  }
  const WeightRef w = ctx.weights().mul(u.weight, v.weight);
  if (level < 0) {
    return MatrixEdge::terminal(w);
  }
  assert(u.target->level == level && v.target->level == level);
  if (u.target == ctx.identityNode(level)) {
    return {v.target, w};
  }
  if (v.target == ctx.identityNode(level)) {
    return {u.target, w};
  }
  const NodePairKey key{u.target, v.target};
  if (const auto* hit = ctx.caches().matMat.lookup(key)) {
    return scale(ctx, *hit, w);
  }
  std::array<MatrixEdge, 4> r{};
  for (std::size_t row = 0; row < 2; ++row) {
    for (std::size_t col = 0; col < 2; ++col) {
      const MatrixEdge p0 = composeRec(ctx, u.target->succ[2 * row],
                                       v.target->succ[col], level - 1);
      const MatrixEdge p1 = composeRec(ctx, u.target->succ[2 * row + 1],
                                       v.target->succ[2 + col], level - 1);
      r[2 * row + col] = addRec(ctx, p0, p1);
    }
  }
  const MatrixEdge result = ctx.makeMatrixNode(level, r);
  ctx.caches().matMat.insert(key, result);
  return scale(ctx, result, w);
}

template <class Node>
Edge<Node> kronRec(Context& ctx, Node* a, Node* b, Level shift,
                   ComputeCache<KronKey, Edge<Node>>& cache) {
  if (a == nullptr) {
    // Terminal of the upper factor: continue with the lower diagram.
    return {b, WeightOne};
  }
  const KronKey key{a, b, shift};
  if (const auto* hit = cache.lookup(key)) {
    return *hit;
  }
  std::array<Edge<Node>, Node::Arity> r{};
  for (std::size_t i = 0; i < Node::Arity; ++i) {
    const auto& child = a->succ[i];
    if (child.isZero()) {
      r[i] = Edge<Node>::zero();
    } else {
      r[i] = scale(ctx, kronRec(ctx, child.target, b, shift, cache),
                   child.weight);
    }
  }
  Edge<Node> result;
  if constexpr (Node::Arity == 2) {
    result = ctx.makeVectorNode(a->level + shift, r[0], r[1]);
  } else {
    result = ctx.makeMatrixNode(a->level + shift, r);
  }
  cache.insert(key, result);
  return result;
}

ComplexValue innerRec(Context& ctx, const VectorEdge& a, const VectorEdge& b,
                      Level level) {
  if (a.isZero() || b.isZero()) {
    return {};
  }
  const ComplexValue w =
      std::conj(ctx.value(a.weight)) * ctx.value(b.weight);
  if (level < 0) {
    return w;
  }
  assert(a.target->level == level && b.target->level == level);
  const NodePairKey key{a.target, b.target};
  if (const auto* hit = ctx.caches().inner.lookup(key)) {
    return w * (*hit);
  }
  const ComplexValue sum =
      innerRec(ctx, a.target->succ[0], b.target->succ[0], level - 1) +
      innerRec(ctx, a.target->succ[1], b.target->succ[1], level - 1);
  ctx.caches().inner.insert(key, sum);
  return w * sum;
}

void requireSameSites(std::uint32_t a, std::uint32_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": site counts differ");
  }
}

} // namespace

VectorEdge addEdges(Context& ctx, const VectorEdge& a, const VectorEdge& b) {
  return addRec(ctx, a, b);
}

MatrixEdge addEdges(Context& ctx, const MatrixEdge& a, const MatrixEdge& b) {
  return addRec(ctx, a, b);
}

VectorEdge applyEdge(Context& ctx, const MatrixEdge& u, const VectorEdge& v,
                     Level top) {
  return applyRec(ctx, u, v, top);
}

MatrixEdge composeEdges(Context& ctx, const MatrixEdge& u, const MatrixEdge& v,
                        Level top) {
  return composeRec(ctx, u, v, top);
}

VectorEdge kronEdges(Context& ctx, const VectorEdge& a, const VectorEdge& b,
                     Level shift) {
  if (a.isZero() || b.isZero()) {
    return VectorEdge::zero();
  }
  const auto r = kronRec(ctx, a.target, b.target, shift,
                         ctx.caches().kronVector);
  return scale(ctx, r, ctx.weights().mul(a.weight, b.weight));
}

MatrixEdge kronEdges(Context& ctx, const MatrixEdge& a, const MatrixEdge& b,
                     Level shift) {
  if (a.isZero() || b.isZero()) {
    return MatrixEdge::zero();
  }
  const auto r = kronRec(ctx, a.target, b.target, shift,
                         ctx.caches().kronMatrix);
  return scale(ctx, r, ctx.weights().mul(a.weight, b.weight));
}

ComplexValue innerProductEdges(Context& ctx, const VectorEdge& a,
                               const VectorEdge& b, Level top) {
  return innerRec(ctx, a, b, top);
}

StateDD add(const StateDD& a, const StateDD& b) {
  requireSameSites(a.sites(), b.sites(), "add");
  auto& ctx = a.context();
  return {ctx, addEdges(ctx, a.root(), b.root()), a.sites()};
}

OperatorDD add(const OperatorDD& a, const OperatorDD& b) {
  requireSameSites(a.sites(), b.sites(), "add");
  auto& ctx = a.context();
  return {ctx, addEdges(ctx, a.root(), b.root()), a.sites()};
}

StateDD kron(const StateDD& a, const StateDD& b) {
  auto& ctx = a.context();
  const auto root =
      kronEdges(ctx, a.root(), b.root(), static_cast<Level>(b.sites()));
  return {ctx, root, a.sites() + b.sites()};
}

OperatorDD kron(const OperatorDD& a, const OperatorDD& b) {
  auto& ctx = a.context();
  const auto root =
      kronEdges(ctx, a.root(), b.root(), static_cast<Level>(b.sites()));
  return {ctx, root, a.sites() + b.sites()};
}

StateDD applyOperator(const OperatorDD& u, const StateDD& psi) {
  requireSameSites(u.sites(), psi.sites(), "applyOperator");
  auto& ctx = psi.context();
  const auto root =
      applyEdge(ctx, u.root(), psi.root(), static_cast<Level>(psi.sites()) - 1);
  return {ctx, root, psi.sites()};
}

OperatorDD compose(const OperatorDD& u, const OperatorDD& v) {
  requireSameSites(u.sites(), v.sites(), "compose");
  auto& ctx = u.context();
  const auto root =
      composeEdges(ctx, u.root(), v.root(), static_cast<Level>(u.sites()) - 1);
  return {ctx, root, u.sites()};
}

ComplexValue innerProduct(const StateDD& a, const StateDD& b) {
  requireSameSites(a.sites(), b.sites(), "innerProduct");
  auto& ctx = a.context();
  return innerProductEdges(ctx, a.root(), b.root(),
                           static_cast<Level>(a.sites()) - 1);
}

double expectation(const StateDD& psi, const OperatorDD& op) {
  requireSameSites(psi.sites(), op.sites(), "expectation");
  auto& ctx = psi.context();
  const Level top = static_cast<Level>(psi.sites()) - 1;
  const VectorEdge transformed = applyEdge(ctx, op.root(), psi.root(), top);
  const ComplexValue value =
      innerProductEdges(ctx, psi.root(), transformed, top);
  if (std::abs(value.imag()) >= ExpectationImagBound) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "expectation: imaginary residue %.3e exceeds %.1e",
                  value.imag(), ExpectationImagBound);
    throw ContractViolation(buf);
  }
  return value.real();
}

} // namespace dd

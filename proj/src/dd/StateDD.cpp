#include "dd/StateDD.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace dd {

StateDD::StateDD(Context& ctx, VectorEdge root, std::uint32_t sites)
    : ctx_(&ctx), root_(root), sites_(sites) {
  assert(root_.isZero() ||
         root_.target->level == static_cast<Level>(sites_) - 1);
  ctx_->incRef(root_);
}

StateDD::StateDD(const StateDD& other)
    : ctx_(other.ctx_), root_(other.root_), sites_(other.sites_) {
  ctx_->incRef(root_);
}

StateDD::StateDD(StateDD&& other) noexcept
    : ctx_(other.ctx_), root_(other.root_), sites_(other.sites_) {
  other.root_ = VectorEdge::zero();
}

StateDD& StateDD::operator=(const StateDD& other) {
  if (this != &other) {
    ctx_->decRef(root_);
    ctx_ = other.ctx_;
    root_ = other.root_;
    sites_ = other.sites_;
    ctx_->incRef(root_);
  }
  return *this;
}

StateDD& StateDD::operator=(StateDD&& other) noexcept {
  if (this != &other) {
    ctx_->decRef(root_);
    ctx_ = other.ctx_;
    root_ = other.root_;
    sites_ = other.sites_;
    other.root_ = VectorEdge::zero();
  }
  return *this;
}

StateDD::~StateDD() { ctx_->decRef(root_); }

std::size_t nodeCount(const VectorEdge& root) {
  if (root.isZero() || root.isTerminal()) {
    return 0;
  }
  std::unordered_set<const VectorNode*> seen;
  std::vector<const VectorNode*> stack{root.target};
  while (!stack.empty()) {
    const auto* node = stack.back();
    stack.pop_back();
    if (!seen.insert(node).second) {
      continue;
    }
    for (const auto& e : node->succ) {
      if (!e.isZero() && !e.isTerminal()) {
        stack.push_back(e.target);
      }
    }
  }
  return seen.size();
}

std::size_t StateDD::nodeCount() const { return dd::nodeCount(root_); }

ComplexValue StateDD::amplitude(std::uint64_t index) const {
  if (sites_ >= 64 || index >= (std::uint64_t{1} << sites_)) {
    throw std::invalid_argument("basis index out of range");
  }
  if (root_.isZero()) {
    return {};
  }
  ComplexValue acc = ctx_->value(root_.weight);
  const VectorNode* node = root_.target;
  for (Level level = static_cast<Level>(sites_) - 1; level >= 0; --level) {
    assert(node != nullptr && node->level == level);
    const auto bit = (index >> static_cast<unsigned>(level)) & 1ULL;
    const VectorEdge& e = node->succ[bit];
    if (e.isZero()) {
      return {};
    }
    acc *= ctx_->value(e.weight);
    node = e.target;
  }
  return acc;
}

namespace {

void fillAmplitudes(const Context& ctx, const VectorEdge& e, Level level,
                    std::uint64_t base, ComplexValue factor,
                    std::vector<ComplexValue>& out) {
  if (e.isZero()) {
    return;
  }
  factor *= ctx.value(e.weight);
  if (level < 0) {
    out[base] = factor;
    return;
  }
  assert(e.target->level == level);
  fillAmplitudes(ctx, e.target->succ[0], level - 1, base, factor, out);
  fillAmplitudes(ctx, e.target->succ[1], level - 1,
                 base | (std::uint64_t{1} << static_cast<unsigned>(level)),
                 factor, out);
}

} // namespace

std::vector<ComplexValue> StateDD::amplitudes() const {
  std::vector<ComplexValue> out(std::uint64_t{1} << sites_);
  fillAmplitudes(*ctx_, root_, static_cast<Level>(sites_) - 1, 0, {1.0, 0.0},
                 out);
  return out;
}

double StateDD::norm() const {
  if (root_.isZero()) {
    return 0.0;
  }
  // Node weights are norm-1 per level, so the whole norm sits on the root.
  return std::abs(ctx_->value(root_.weight));
}

StateDD basisState(Context& ctx, std::uint32_t sites,
                   const std::vector<std::uint8_t>& bits) {
  if (sites == 0 || bits.size() != sites) {
    throw std::invalid_argument("basisState: need one bit per site");
  }
  VectorEdge edge = VectorEdge::terminal(WeightOne);
  for (Level level = 0; level < static_cast<Level>(sites); ++level) {
    // bits[0] is the top (most significant) site.
    const auto bit = bits[sites - 1 - static_cast<std::uint32_t>(level)];
    if (bit > 1) {
      throw std::invalid_argument("basisState: bits must be 0 or 1");
    }
    edge = bit == 0 ? ctx.makeVectorNode(level, edge, VectorEdge::zero())
                    : ctx.makeVectorNode(level, VectorEdge::zero(), edge);
  }
  return {ctx, edge, sites};
}

namespace {

VectorEdge buildFromAmplitudes(Context& ctx, std::span<const ComplexValue> amps,
                               Level level) {
  if (level < 0) {
    return VectorEdge::terminal(ctx.weights().lookup(amps[0]));
  }
  const std::size_t half = amps.size() / 2;
  const VectorEdge e0 = buildFromAmplitudes(ctx, amps.first(half), level - 1);
  const VectorEdge e1 = buildFromAmplitudes(ctx, amps.subspan(half), level - 1);
  return ctx.makeVectorNode(level, e0, e1);
}

} // namespace

StateDD stateFromAmplitudes(Context& ctx, std::span<const ComplexValue> amps) {
  const std::size_t n = amps.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument(
        "stateFromAmplitudes: length must be a power of two >= 2");
  }
  std::uint32_t sites = 0;
  while ((std::size_t{1} << sites) < n) {
    ++sites;
  }
  for (const auto& a : amps) {
    if (!isFinite(a)) {
      throw std::domain_error("stateFromAmplitudes: non-finite amplitude");
    }
  }
  const VectorEdge root =
      buildFromAmplitudes(ctx, amps, static_cast<Level>(sites) - 1);
  if (root.isZero()) {
    throw std::domain_error("stateFromAmplitudes: all-zero vector");
  }
  return {ctx, root, sites};
}

StateDD ghzState(Context& ctx, std::uint32_t sites) {
  if (sites < 2) {
    throw std::invalid_argument("ghzState: need at least 2 sites");
  }
  VectorEdge allZero = VectorEdge::terminal(WeightOne);
  VectorEdge allOne = VectorEdge::terminal(WeightOne);
  for (Level level = 0; level < static_cast<Level>(sites) - 1; ++level) {
    allZero = ctx.makeVectorNode(level, allZero, VectorEdge::zero());
    allOne = ctx.makeVectorNode(level, VectorEdge::zero(), allOne);
  }
  const WeightRef invSqrt2 = ctx.weights().lookup({1.0 / std::sqrt(2.0), 0.0});
  const VectorEdge root = ctx.makeVectorNode(
      static_cast<Level>(sites) - 1,
      {allZero.target, ctx.weights().mul(invSqrt2, allZero.weight)},
      {allOne.target, ctx.weights().mul(invSqrt2, allOne.weight)});
  return {ctx, root, sites};
}

StateDD wState(Context& ctx, std::uint32_t sites) {
  if (sites < 2) {
    throw std::invalid_argument("wState: need at least 2 sites");
  }
  // Bottom-up: `excited` holds the normalized W state on sites 0..k,
  // `ground` the |0...0> chain on the same sites.
  VectorEdge excited =
      ctx.makeVectorNode(0, VectorEdge::zero(), VectorEdge::terminal(WeightOne));
  VectorEdge ground =
      ctx.makeVectorNode(0, VectorEdge::terminal(WeightOne), VectorEdge::zero());
  for (Level level = 1; level < static_cast<Level>(sites); ++level) {
    const auto k = static_cast<double>(level) + 1.0;
    const WeightRef stay = ctx.weights().lookup(
        {std::sqrt(static_cast<double>(level) / k), 0.0});
    const WeightRef raise = ctx.weights().lookup({1.0 / std::sqrt(k), 0.0});
    const VectorEdge e0 = {excited.target,
                           ctx.weights().mul(stay, excited.weight)};
    const VectorEdge e1 = {ground.target,
                           ctx.weights().mul(raise, ground.weight)};
    excited = ctx.makeVectorNode(level, e0, e1);
    if (level < static_cast<Level>(sites) - 1) {
      ground = ctx.makeVectorNode(level, ground, VectorEdge::zero());
    }
  }
  return {ctx, excited, sites};
}

StateDD scaled(const StateDD& psi, const ComplexValue& factor) {
  auto& ctx = psi.context();
  if (psi.root().isZero()) {
    return psi;
  }
  const WeightRef w = ctx.weights().mul(psi.root().weight,
                                        ctx.weights().lookup(factor));
  if (w == WeightZero) {
    return {ctx, VectorEdge::zero(), psi.sites()};
  }
  return {ctx, {psi.root().target, w}, psi.sites()};
}

} // namespace dd

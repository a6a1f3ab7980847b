#include "dd/OperatorDD.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace dd {

Matrix2 rotationZ(double theta) {
  return {ComplexValue{std::cos(theta / 2), -std::sin(theta / 2)},
          ComplexValue{},
          ComplexValue{},
          ComplexValue{std::cos(theta / 2), std::sin(theta / 2)}};
}

OperatorDD::OperatorDD(Context& ctx, MatrixEdge root, std::uint32_t sites)
    : ctx_(&ctx), root_(root), sites_(sites) {
  assert(root_.isZero() ||
         root_.target->level == static_cast<Level>(sites_) - 1);
  ctx_->incRef(root_);
}

OperatorDD::OperatorDD(const OperatorDD& other)
    : ctx_(other.ctx_), root_(other.root_), sites_(other.sites_) {
  ctx_->incRef(root_);
}

OperatorDD::OperatorDD(OperatorDD&& other) noexcept
    : ctx_(other.ctx_), root_(other.root_), sites_(other.sites_) {
  other.root_ = MatrixEdge::zero();
}

OperatorDD& OperatorDD::operator=(const OperatorDD& other) {
  if (this != &other) {
    ctx_->decRef(root_);
    ctx_ = other.ctx_;
    root_ = other.root_;
    sites_ = other.sites_;
    ctx_->incRef(root_);
  }
  return *this;
}

OperatorDD& OperatorDD::operator=(OperatorDD&& other) noexcept {
  if (this != &other) {
    ctx_->decRef(root_);
    ctx_ = other.ctx_;
    root_ = other.root_;
    sites_ = other.sites_;
    other.root_ = MatrixEdge::zero();
  }
  return *this;
}

OperatorDD::~OperatorDD() { ctx_->decRef(root_); }

std::size_t nodeCount(const MatrixEdge& root) {
  if (root.isZero() || root.isTerminal()) {
    return 0;
  }
  std::unordered_set<const MatrixNode*> seen;
  std::vector<const MatrixNode*> stack{root.target};
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

std::size_t OperatorDD::nodeCount() const { return dd::nodeCount(root_); }

ComplexValue OperatorDD::entry(std::uint64_t row, std::uint64_t col) const {
  if (sites_ >= 32 || row >= (std::uint64_t{1} << sites_) ||
      col >= (std::uint64_t{1} << sites_)) {
    throw std::invalid_argument("matrix index out of range");
  }
  if (root_.isZero()) {
    return {};
  }
  ComplexValue acc = ctx_->value(root_.weight);
  const MatrixNode* node = root_.target;
  for (Level level = static_cast<Level>(sites_) - 1; level >= 0; --level) {
    assert(node != nullptr && node->level == level);
    const auto r = (row >> static_cast<unsigned>(level)) & 1ULL;
    const auto c = (col >> static_cast<unsigned>(level)) & 1ULL;
    const MatrixEdge& e = node->succ[2 * r + c];
    if (e.isZero()) {
      return {};
    }
    acc *= ctx_->value(e.weight);
    node = e.target;
  }
  return acc;
}

namespace {

void fillDense(const Context& ctx, const MatrixEdge& e, Level level,
               std::uint64_t row, std::uint64_t col, std::uint64_t dim,
               ComplexValue factor, std::vector<ComplexValue>& out) {
  if (e.isZero()) {
    return;
  }
  factor *= ctx.value(e.weight);
  if (level < 0) {
    out[row * dim + col] = factor;
    return;
  }
  const auto half = std::uint64_t{1} << static_cast<unsigned>(level);
  for (std::uint64_t r = 0; r < 2; ++r) {
    for (std::uint64_t c = 0; c < 2; ++c) {
      fillDense(ctx, e.target->succ[2 * r + c], level - 1, row + r * half,
                col + c * half, dim, factor, out);
    }
  }
}

} // namespace

std::vector<ComplexValue> OperatorDD::toDense() const {
  const auto dim = std::uint64_t{1} << sites_;
  std::vector<ComplexValue> out(dim * dim);
  fillDense(*ctx_, root_, static_cast<Level>(sites_) - 1, 0, 0, dim, {1.0, 0.0},
            out);
  return out;
}

namespace {

MatrixEdge spliceIdentityAbove(Context& ctx, MatrixEdge e, Level from,
                               Level to) {
  for (Level level = from; level <= to; ++level) {
    e = ctx.makeMatrixNode(level,
                           {e, MatrixEdge::zero(), MatrixEdge::zero(), e});
  }
  return e;
}

/// Chain representing a single 2x2 operator at `target` with identities on
/// all lower levels, built bottom-up to level `top`.
MatrixEdge localChain(Context& ctx, const Matrix2& u, Level target,
                      Level top) {
  MatrixEdge e = target == 0 ? MatrixEdge::terminal(WeightOne)
                             : ctx.identityEdge(target - 1);
  auto weighted = [&](const ComplexValue& v) -> MatrixEdge {
    const WeightRef w = ctx.weights().lookup(v);
    if (w == WeightZero) {
      return MatrixEdge::zero();
    }
    return {e.target, ctx.weights().mul(w, e.weight)};
  };
  e = ctx.makeMatrixNode(target,
                         {weighted(u[0]), weighted(u[1]), weighted(u[2]),
                          weighted(u[3])});
  return spliceIdentityAbove(ctx, e, target + 1, top);
}

} // namespace

OperatorDD singleSiteOperator(Context& ctx, const Matrix2& u,
                              std::uint32_t target, std::uint32_t sites) {
  if (target >= sites) {
    throw std::invalid_argument("singleSiteOperator: target out of range");
  }
  const MatrixEdge root = localChain(ctx, u, static_cast<Level>(target),
                                     static_cast<Level>(sites) - 1);
  return {ctx, root, sites};
}

OperatorDD twoSiteOperator(Context& ctx, const Matrix4& u, std::uint32_t siteA,
                           std::uint32_t siteB, std::uint32_t sites) {
  if (siteA == siteB) {
    throw std::invalid_argument("twoSiteOperator: coincident target sites");
  }
  if (siteA >= sites || siteB >= sites) {
    throw std::invalid_argument("twoSiteOperator: target out of range");
  }
  const auto hi = static_cast<Level>(std::max(siteA, siteB));
  const auto lo = static_cast<Level>(std::min(siteA, siteB));

  // Split u into the four 2x2 blocks selected by the hi-site bits and thread
  // each block's chain from the lo site up to just below hi. Hash-consing
  // collapses identical blocks, which is where the compactness comes from.
  std::array<Matrix2, 4> block{};
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          block[2 * r + c][2 * i + j] = u[(2 * r + i) * 4 + (2 * c + j)];
        }
      }
    }
  }

  std::array<MatrixEdge, 4> arm{};
  for (std::size_t q = 0; q < 4; ++q) {
    const bool zero = std::all_of(block[q].begin(), block[q].end(),
                                  [](const ComplexValue& v) {
                                    return v.real() == 0.0 && v.imag() == 0.0;
                                  });
    arm[q] = zero ? MatrixEdge::zero()
                  : spliceIdentityAbove(ctx, localChain(ctx, block[q], lo, lo),
                                        lo + 1, hi - 1);
  }
  MatrixEdge root = ctx.makeMatrixNode(hi, arm);
  root = spliceIdentityAbove(ctx, root, hi + 1, static_cast<Level>(sites) - 1);
  return {ctx, root, sites};
}

OperatorDD twoSiteRotation(Context& ctx, RotationAxes axes, double theta,
                           std::uint32_t siteA, std::uint32_t siteB,
                           std::uint32_t sites) {
  const Matrix2& p = axes == RotationAxes::XX  ? pauli::X
                     : axes == RotationAxes::YY ? pauli::Y
                                                : pauli::Z;
  const ComplexValue c{std::cos(theta / 2), 0.0};
  const ComplexValue ms{0.0, -std::sin(theta / 2)};
  Matrix4 u{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t col = 0; col < 4; ++col) {
      // cos(theta/2) I4 - i sin(theta/2) (p (x) p)
      ComplexValue v = ms * p[(r >> 1U) * 2 + (col >> 1U)] * //
                       p[(r & 1U) * 2 + (col & 1U)];
      if (r == col) {
        v += c;
      }
      u[r * 4 + col] = v;
    }
  }
  return twoSiteOperator(ctx, u, siteA, siteB, sites);
}

OperatorDD identityOperator(Context& ctx, std::uint32_t sites) {
  if (sites == 0) {
    throw std::invalid_argument("identityOperator: need at least 1 site");
  }
  return {ctx, ctx.identityEdge(static_cast<Level>(sites) - 1), sites};
}

} // namespace dd

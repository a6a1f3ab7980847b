#pragma once

#include "dd/Context.hpp"
#include "dd/OperatorDD.hpp"
#include "dd/StateDD.hpp"

namespace dd {

// Edge-level operations. All of them mutate the context's tables and caches
// and must therefore be serialized per context. Callers are responsible for
// retaining results across garbage collection points.

/// Entrywise sum of two same-height diagrams (simultaneous traversal,
/// memoized). The result is not renormalized globally; norms are the
/// caller's concern.
VectorEdge addEdges(Context& ctx, const VectorEdge& a, const VectorEdge& b);
MatrixEdge addEdges(Context& ctx, const MatrixEdge& a, const MatrixEdge& b);

/// U * psi, recursing into four smaller multiplications and two additions per
/// level. `top` is the level of both roots.
VectorEdge applyEdge(Context& ctx, const MatrixEdge& u, const VectorEdge& v,
                     Level top);

/// U * V for matrices.
MatrixEdge composeEdges(Context& ctx, const MatrixEdge& u, const MatrixEdge& v,
                        Level top);

/// Kronecker product: b's diagram is attached below a's, whose levels are
/// shifted up by `shift` (the site count of b). Linear in the node count
/// of a.
VectorEdge kronEdges(Context& ctx, const VectorEdge& a, const VectorEdge& b,
                     Level shift);
MatrixEdge kronEdges(Context& ctx, const MatrixEdge& a, const MatrixEdge& b,
                     Level shift);

/// <a|b> with the left operand conjugated.
ComplexValue innerProductEdges(Context& ctx, const VectorEdge& a,
                               const VectorEdge& b, Level top);

// Wrapper-level operations.

StateDD add(const StateDD& a, const StateDD& b);
OperatorDD add(const OperatorDD& a, const OperatorDD& b);
StateDD kron(const StateDD& a, const StateDD& b);
OperatorDD kron(const OperatorDD& a, const OperatorDD& b);
StateDD applyOperator(const OperatorDD& u, const StateDD& psi);
OperatorDD compose(const OperatorDD& u, const OperatorDD& v);
ComplexValue innerProduct(const StateDD& a, const StateDD& b);

/// Re<psi|O|psi> computed as a matrix-vector multiplication followed by an
/// inner product.
/// @throws ContractViolation if the imaginary residue exceeds 1e-8 (the
/// operator is not Hermitian or the computation lost precision).
double expectation(const StateDD& psi, const OperatorDD& op);

inline constexpr double ExpectationImagBound = 1e-8;

} // namespace dd

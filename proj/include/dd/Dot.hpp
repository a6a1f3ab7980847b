#pragma once

#include "dd/Context.hpp"
#include "dd/OperatorDD.hpp"
#include "dd/StateDD.hpp"

#include <iosfwd>

namespace dd {

/// Serialize a diagram as DOT text: one vertex per decision node labeled with
/// its level, one vertex for the terminal, and one edge per nonzero successor
/// labeled with its weight ("a+bi", 6 significant digits). Zero stubs are
/// omitted. The root edge enters from an implicit source vertex and carries a
/// label only when its weight is not exactly one.
void exportDot(const Context& ctx, const VectorEdge& root, std::ostream& os);
void exportDot(const Context& ctx, const MatrixEdge& root, std::ostream& os);

inline void exportDot(const StateDD& psi, std::ostream& os) {
  exportDot(psi.context(), psi.root(), os);
}
inline void exportDot(const OperatorDD& op, std::ostream& os) {
  exportDot(op.context(), op.root(), os);
}

} // namespace dd

#include "dd/Dot.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

namespace dd {

namespace {

std::string formatWeight(const ComplexValue& w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", w.real(), w.imag());
  return buf;
}

template <class Node> class DotWriter {
public:
  DotWriter(const Context& ctx, std::ostream& os) : ctx_(ctx), os_(os) {}

  void write(const Edge<Node>& root) {
    os_ << "digraph dd {\n";
    os_ << "  rankdir=TB;\n";
    if (!root.isZero()) {
      const auto rootId = visit(root.target);
      os_ << "  terminal [shape=box, style=filled, fillcolor=black, "
             "label=\"\", width=0.2, height=0.2];\n";
      // Vertex declarations before edges, in discovery order.
      for (const auto& line : nodeLines_) {
        os_ << line;
      }
      os_ << "  root -> n" << rootId;
      if (root.weight != WeightOne) {
        os_ << " [label=\"" << formatWeight(ctx_.value(root.weight)) << "\"]";
      }
      os_ << ";\n";
      for (const auto& line : edgeLines_) {
        os_ << line;
      }
    } else {
      os_ << "  terminal [shape=box, style=filled, fillcolor=black, "
             "label=\"\", width=0.2, height=0.2];\n";
    }
    os_ << "}\n";
  }

private:
  std::size_t visit(const Node* node) {
    const auto it = ids_.find(node);
    if (it != ids_.end()) {
      return it->second;
    }
    const auto id = ids_.size();
    ids_.emplace(node, id);
    nodeLines_.push_back("  n" + std::to_string(id) + " [shape=circle, label=\"" +
                         std::to_string(node->level) + "\"];\n");
    for (const auto& e : node->succ) {
      if (e.isZero()) {
        continue;
      }
      std::string line = "  n" + std::to_string(id) + " -> ";
      if (e.isTerminal()) {
        line += "terminal";
      } else {
        line += "n" + std::to_string(visit(e.target));
      }
      line += " [label=\"" + formatWeight(ctx_.value(e.weight)) + "\"];\n";
      edgeLines_.push_back(std::move(line));
    }
    return id;
  }

  const Context& ctx_;
  std::ostream& os_;
  std::unordered_map<const Node*, std::size_t> ids_;
  std::vector<std::string> nodeLines_;
  std::vector<std::string> edgeLines_;
};

} // namespace

void exportDot(const Context& ctx, const VectorEdge& root, std::ostream& os) {
  DotWriter<VectorNode>(ctx, os).write(root);
}

void exportDot(const Context& ctx, const MatrixEdge& root, std::ostream& os) {
  DotWriter<MatrixNode>(ctx, os).write(root);
}

} // namespace dd

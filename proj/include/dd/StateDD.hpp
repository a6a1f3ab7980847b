#pragma once

#include "dd/Context.hpp"
#include "dd/Node.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace dd {

/**
 * @brief Owning handle to a vector decision diagram for an L-site two-level
 * system.
 *
 * Holds a reference on the root while alive so garbage collection never frees
 * the diagram. The top node sits at level L-1 and corresponds to the most
 * significant bit of a basis index.
 */
class StateDD {
public:
  StateDD(Context& ctx, VectorEdge root, std::uint32_t sites);
  StateDD(const StateDD& other);
  StateDD(StateDD&& other) noexcept;
  StateDD& operator=(const StateDD& other);
  StateDD& operator=(StateDD&& other) noexcept;
  ~StateDD();

  [[nodiscard]] Context& context() const { return *ctx_; }
  [[nodiscard]] const VectorEdge& root() const { return root_; }
  [[nodiscard]] std::uint32_t sites() const { return sites_; }

  /// Number of distinct decision nodes reachable from the root; the terminal
  /// and zero stubs are not counted.
  [[nodiscard]] std::size_t nodeCount() const;

  /// Amplitude of the given basis state: the product of edge weights along
  /// the single path selected by the index bits (most significant bit at the
  /// top level). A zero stub short-circuits to 0.
  /// @throws std::invalid_argument if the index is out of range.
  [[nodiscard]] ComplexValue amplitude(std::uint64_t index) const;

  /// All 2^L amplitudes, index-ordered. Only valid for small L.
  [[nodiscard]] std::vector<ComplexValue> amplitudes() const;

  /// sqrt(<psi|psi>).
  [[nodiscard]] double norm() const;

private:
  Context* ctx_;
  VectorEdge root_;
  std::uint32_t sites_;
};

/// Node count of an arbitrary vector DD edge.
[[nodiscard]] std::size_t nodeCount(const VectorEdge& root);

/// Computational basis state |bits>. bits[0] is the most significant bit
/// (top level, site L-1), matching the usual ket notation.
StateDD basisState(Context& ctx, std::uint32_t sites,
                   const std::vector<std::uint8_t>& bits);

/// Build the canonical reduced DD of a dense amplitude vector by recursive
/// halving. The length must be a power of two and the vector must not be all
/// zero. Sub-vectors are uniqued on the fly, so the maximally large diagram
/// is never materialized.
StateDD stateFromAmplitudes(Context& ctx, std::span<const ComplexValue> amps);

/// (|0...0> + |1...1>)/sqrt(2) on L >= 2 sites. Linear-size diagram.
StateDD ghzState(Context& ctx, std::uint32_t sites);

/// Equal-weight single-excitation state on L >= 2 sites. Linear-size diagram.
StateDD wState(Context& ctx, std::uint32_t sites);

/// Multiply the root weight by a scalar. Structure is shared; only the root
/// edge changes.
StateDD scaled(const StateDD& psi, const ComplexValue& factor);

} // namespace dd

#pragma once

#include "dd/Context.hpp"
#include "dd/Node.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace dd {

/// Row-major 2x2 complex matrix.
using Matrix2 = std::array<ComplexValue, 4>;
/// Row-major 4x4 complex matrix; the first tensor factor is the higher site.
using Matrix4 = std::array<ComplexValue, 16>;

namespace pauli {
inline constexpr Matrix2 I{ComplexValue{1, 0}, ComplexValue{0, 0},
                           ComplexValue{0, 0}, ComplexValue{1, 0}};
inline constexpr Matrix2 X{ComplexValue{0, 0}, ComplexValue{1, 0},
                           ComplexValue{1, 0}, ComplexValue{0, 0}};
inline constexpr Matrix2 Y{ComplexValue{0, 0}, ComplexValue{0, -1},
                           ComplexValue{0, 1}, ComplexValue{0, 0}};
inline constexpr Matrix2 Z{ComplexValue{1, 0}, ComplexValue{0, 0},
                           ComplexValue{0, 0}, ComplexValue{-1, 0}};
} // namespace pauli

/// e^{-i theta/2 sigma_z} = diag(e^{-i theta/2}, e^{+i theta/2}).
[[nodiscard]] Matrix2 rotationZ(double theta);

/// Owning handle to a matrix decision diagram on L sites.
class OperatorDD {
public:
  OperatorDD(Context& ctx, MatrixEdge root, std::uint32_t sites);
  OperatorDD(const OperatorDD& other);
  OperatorDD(OperatorDD&& other) noexcept;
  OperatorDD& operator=(const OperatorDD& other);
  OperatorDD& operator=(OperatorDD&& other) noexcept;
  ~OperatorDD();

  [[nodiscard]] Context& context() const { return *ctx_; }
  [[nodiscard]] const MatrixEdge& root() const { return root_; }
  [[nodiscard]] std::uint32_t sites() const { return sites_; }

  [[nodiscard]] std::size_t nodeCount() const;

  /// Matrix entry by path traversal.
  [[nodiscard]] ComplexValue entry(std::uint64_t row, std::uint64_t col) const;

  /// Dense row-major 2^L x 2^L expansion. Only valid for small L.
  [[nodiscard]] std::vector<ComplexValue> toDense() const;

private:
  Context* ctx_;
  MatrixEdge root_;
  std::uint32_t sites_;
};

[[nodiscard]] std::size_t nodeCount(const MatrixEdge& root);

/// I (x) ... (x) U (x) ... (x) I with U at `target`. Identity levels above
/// and below contribute one diagonal node each, so the diagram has at most L
/// nodes.
OperatorDD singleSiteOperator(Context& ctx, const Matrix2& u,
                              std::uint32_t target, std::uint32_t sites);

/// Embed a two-site operator given as a 4x4 block matrix acting on sites
/// (hi, lo), hi > lo, with everything else identity. Arbitrary-distance pairs
/// thread the four block chains through the intermediate levels, giving at
/// most 1 + 4(L-1) nodes.
OperatorDD twoSiteOperator(Context& ctx, const Matrix4& u, std::uint32_t siteA,
                           std::uint32_t siteB, std::uint32_t sites);

enum class RotationAxes { XX, YY, ZZ };

/// cos(theta/2) I - i sin(theta/2) (sigma_a (x) sigma_a) on the given pair of
/// sites (adjacent or long-range).
OperatorDD twoSiteRotation(Context& ctx, RotationAxes axes, double theta,
                           std::uint32_t siteA, std::uint32_t siteB,
                           std::uint32_t sites);

/// The identity operator as an L-node diagonal chain.
OperatorDD identityOperator(Context& ctx, std::uint32_t sites);

} // namespace dd

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace dd {

using Real = double;

/// Complex amplitude / matrix entry. Stored weights are always finite.
using ComplexValue = std::complex<Real>;

/// Uniquing tolerance for the canonical weight table.
struct Tolerance {
  Real eps = 1e-10;

  [[nodiscard]] bool valid() const { return std::isfinite(eps) && eps > 0.0; }
};

/// Thrown when a numeric contract is violated at runtime (e.g. the imaginary
/// residue of an expectation value exceeds its bound).
class ContractViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] inline bool isFinite(const ComplexValue& c) {
  return std::isfinite(c.real()) && std::isfinite(c.imag());
}

/// |c|^2 without the sqrt.
[[nodiscard]] inline Real normSquared(const ComplexValue& c) {
  return c.real() * c.real() + c.imag() * c.imag();
}

} // namespace dd

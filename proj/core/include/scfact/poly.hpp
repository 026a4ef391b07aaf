#pragma once

// Dense univariate polynomials over a commutative ring.

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scfact/algebra.hpp"

namespace scf {

class Polynomial {
 public:
  // Coefficients in ascending degree. Trailing zeros are stripped (exactly
  // for exact rings, within tolerance for float rings).
  Polynomial(const Ring& ring, std::vector<RingElement> coeffs);
  explicit Polynomial(const Ring& ring) : Polynomial(ring, {}) {}

  static Polynomial linear_factor(const Ring& ring, const RingElement& root);  // x - root

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<RingElement>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  RingElement coeff(std::size_t i) const;  // zero past the degree
  RingElement leading() const;

  std::string format() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
  }

  // Tolerance-aware comparison for float rings, exact otherwise.
  bool equal(const Polynomial& other) const;

 private:
  Ring ring_;
  std::vector<RingElement> coeffs_;
};

struct Root {
  RingElement value;
  int multiplicity = 1;
};

enum class RootMethod { ExhaustiveUnits, RationalRoot, FieldGcd, Numeric, UserSupplied };
std::string_view to_string(RootMethod m) noexcept;

struct RootReport {
  std::vector<Root> roots;  // canonical order
  RootMethod method = RootMethod::ExhaustiveUnits;
  bool exhaustive = true;

  int total_multiplicity() const;
};

// P(x) = x^{k+1} - sum a_i x^{k-i},  Q(x) = sum b_i x^{k-i}.
std::pair<Polynomial, Polynomial> build_p_q(const Ring& ring, std::span<const RingElement> a,
                                            std::span<const RingElement> b);

RingElement eval(const Polynomial& p, const RingElement& x);
bool is_root(const Polynomial& p, const RingElement& x);
Polynomial derivative(const Polynomial& p);

// Synthetic division by (x - rho). Throws NotARoot unless p(rho) = 0.
Polynomial deflate(const Polynomial& p, const RingElement& rho);

// Quotient and remainder; the divisor's leading coefficient must be a unit.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& p, const Polynomial& d);

// Monic gcd. Throws NotAField for rings that are not fields.
Polynomial field_gcd(const Polynomial& p, const Polynomial& q);

// Common unit roots of p and q; a zero q places no constraint.
RootReport unit_roots(const Polynomial& p, const Polynomial& q);

// Multiplicity of rho as a root of p, counted by repeated deflation.
int root_multiplicity(const Polynomial& p, const RingElement& rho);

// All complex roots of a polynomial given by ascending coefficients.
// Durand-Kerner with Newton polishing.
std::vector<std::complex<double>> complex_roots(std::span<const std::complex<double>> coeffs,
                                                double residual_tol = 1e-10,
                                                int max_iterations = 200);

}  // namespace scf

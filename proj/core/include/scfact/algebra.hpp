#pragma once

// Rings with identity and the free left module R^d over them.
//
// RingElement is a self-contained value: arithmetic operators work without a
// ring handle (residues carry their modulus). Everything that depends on the
// ring as a whole (identity, units, tolerance-aware equality, canonical
// ordering, literal syntax) lives on Ring.

#include <gmpxx.h>

#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scfact/error.hpp"

namespace scf {

enum class RingKind {
  IntegersMod,
  Rational,
  GaussianRational,
  FloatComplex,
  RationalQuaternion,
  FloatQuaternion,
};

std::string_view to_string(RingKind kind) noexcept;
std::optional<RingKind> ring_kind_from_string(std::string_view name) noexcept;

inline constexpr double kDefaultTolerance = 1e-9;

struct RingDescriptor {
  RingKind kind = RingKind::Rational;
  std::int64_t modulus = 0;
  bool commutative = true;
  bool finite = false;
  double tolerance = 0.0;

  static RingDescriptor integers_mod(std::int64_t m);
  static RingDescriptor rational();
  static RingDescriptor gaussian_rational();
  static RingDescriptor float_complex(double tolerance = kDefaultTolerance);
  static RingDescriptor rational_quaternion();
  static RingDescriptor float_quaternion(double tolerance = kDefaultTolerance);

  bool is_float() const noexcept {
    return kind == RingKind::FloatComplex || kind == RingKind::FloatQuaternion;
  }

  friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;
};

template <class T>
struct Quaternion {
  T w{}, x{}, y{}, z{};

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
  // Hamilton product: i*j = k, j*k = i, k*i = j.
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  Quaternion conjugate() const { return {w, -x, -y, -z}; }
  T norm2() const { return w * w + x * x + y * y + z * z; }

  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

struct Residue {
  std::int64_t value = 0;
  std::int64_t modulus = 2;
  friend bool operator==(const Residue&, const Residue&) = default;
};

struct GaussianRational {
  mpq_class re, im;
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

class RingElement {
 public:
  using Payload = std::variant<Residue, mpq_class, GaussianRational, std::complex<double>,
                               Quaternion<mpq_class>, Quaternion<double>>;

  RingElement() : payload_(mpq_class(0)) {}
  explicit RingElement(Residue r);
  explicit RingElement(mpq_class q);
  explicit RingElement(GaussianRational g);
  explicit RingElement(std::complex<double> c) : payload_(c) {}
  explicit RingElement(Quaternion<mpq_class> q);
  explicit RingElement(Quaternion<double> q) : payload_(q) {}

  const Payload& payload() const noexcept { return payload_; }
  RingKind kind() const noexcept;

  // Exact structural zero test. Float kinds compare against 0.0 exactly; use
  // Ring::is_zero for tolerance-aware checks.
  bool is_exact_zero() const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a);
  RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
  RingElement& operator-=(const RingElement& b) { return *this = *this - b; }
  RingElement& operator*=(const RingElement& b) { return *this = *this * b; }

  // Exact structural equality (bitwise for floats). Tolerance-aware
  // comparison goes through Ring::equal.
  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.payload_ == b.payload_;
  }

 private:
  Payload payload_;
};

class Ring {
 public:
  explicit Ring(RingDescriptor descriptor);

  const RingDescriptor& descriptor() const noexcept { return desc_; }
  RingKind kind() const noexcept { return desc_.kind; }
  bool commutative() const noexcept { return desc_.commutative; }
  bool finite() const noexcept { return desc_.finite; }
  bool is_float() const noexcept { return desc_.is_float(); }
  double tolerance() const noexcept { return desc_.tolerance; }

  // Fields among the supported kinds: prime Z_p, Q, Q(i), floating C.
  bool is_field() const;
  bool is_integral_domain() const { return is_field(); }

  RingElement zero() const;
  RingElement one() const;
  RingElement from_int(long long n) const;
  RingElement from_integer(const mpz_class& n) const;

  bool contains(const RingElement& x) const;
  void check(const RingElement& x) const;  // throws RingMismatch

  std::optional<RingElement> invert(const RingElement& x) const;
  bool is_unit(const RingElement& x) const { return invert(x).has_value(); }

  bool is_zero(const RingElement& x) const;
  bool equal(const RingElement& a, const RingElement& b) const;

  // Canonical total order used for deterministic root consumption.
  std::strong_ordering compare(const RingElement& a, const RingElement& b) const;
  bool less(const RingElement& a, const RingElement& b) const { return compare(a, b) < 0; }

  // Every unit of Z_m in ascending residue order. Throws NotFinite otherwise.
  std::vector<RingElement> units() const;

  // Euclidean size, used for float deviation reports.
  double magnitude(const RingElement& x) const;

  std::string format(const RingElement& x) const;
  RingElement parse(std::string_view literal) const;  // throws ParseError

  friend bool operator==(const Ring& a, const Ring& b) { return a.desc_ == b.desc_; }

 private:
  RingDescriptor desc_;
};

bool is_prime(std::int64_t n);

struct ModuleElement {
  std::vector<RingElement> components;

  std::size_t dim() const noexcept { return components.size(); }
  const RingElement& operator[](std::size_t i) const { return components[i]; }
  RingElement& operator[](std::size_t i) { return components[i]; }
  friend bool operator==(const ModuleElement&, const ModuleElement&) = default;
};

class AlgebraContext {
 public:
  AlgebraContext(RingDescriptor ring, std::size_t module_dim);

  const Ring& ring() const noexcept { return ring_; }
  std::size_t module_dim() const noexcept { return dim_; }

  ModuleElement zero_vector() const;
  ModuleElement vector(std::vector<RingElement> components) const;  // checks dim
  void check(const ModuleElement& x) const;                          // DimensionMismatch

  bool equal(const ModuleElement& x, const ModuleElement& y) const;
  std::string format(const ModuleElement& x) const;

  friend bool operator==(const AlgebraContext& a, const AlgebraContext& b) {
    return a.ring_ == b.ring_ && a.dim_ == b.dim_;
  }

 private:
  Ring ring_;
  std::size_t dim_;
};

std::optional<RingElement> invert(const AlgebraContext& ctx, const RingElement& x);
bool is_unit(const AlgebraContext& ctx, const RingElement& x);
std::vector<RingElement> units_iter(const AlgebraContext& ctx);

// r*x + y, scalar acting on the left of every component.
ModuleElement module_axpy(const AlgebraContext& ctx, const RingElement& r,
                          const ModuleElement& x, const ModuleElement& y);
ModuleElement module_scale(const AlgebraContext& ctx, const RingElement& r,
                           const ModuleElement& x);
ModuleElement module_add(const AlgebraContext& ctx, const ModuleElement& x,
                         const ModuleElement& y);
ModuleElement module_sub(const AlgebraContext& ctx, const ModuleElement& x,
                         const ModuleElement& y);

// Left-linear combination sum_i coeffs[i] * xs[i].
ModuleElement module_combination(const AlgebraContext& ctx,
                                 std::span<const RingElement> coeffs,
                                 std::span<const ModuleElement> xs);

}  // namespace scf

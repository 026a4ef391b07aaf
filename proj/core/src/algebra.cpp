#include "scfact/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <type_traits>

namespace scf {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::NotFinite: return "NotFinite";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoncommutativeRing: return "NoncommutativeRing";
    case Errc::NotARoot: return "NotARoot";
    case Errc::NotAField: return "NotAField";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownIdentifier: return "UnknownIdentifier";
    case Errc::DivisionByNonUnit: return "DivisionByNonUnit";
    case Errc::TanhUnsupported: return "TanhUnsupported";
    case Errc::EvaluationBreakdown: return "EvaluationBreakdown";
    case Errc::BadParams: return "BadParams";
    case Errc::NotFoldable: return "NotFoldable";
    case Errc::NotCommonUnitRoot: return "NotCommonUnitRoot";
    case Errc::NotIntegralDomain: return "NotIntegralDomain";
    case Errc::Irreducible: return "Irreducible";
    case Errc::CertificateFailure: return "CertificateFailure";
    case Errc::NotPeriodic: return "NotPeriodic";
    case Errc::NotAlspFamily: return "NotAlspFamily";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(RingKind kind) noexcept {
  switch (kind) {
    case RingKind::IntegersMod: return "integers-mod-m";
    case RingKind::Rational: return "exact-rational";
    case RingKind::GaussianRational: return "gaussian-rational";
    case RingKind::FloatComplex: return "float-complex";
    case RingKind::RationalQuaternion: return "rational-quaternion";
    case RingKind::FloatQuaternion: return "float-quaternion";
  }
  return "unknown";
}

std::optional<RingKind> ring_kind_from_string(std::string_view name) noexcept {
  for (auto k : {RingKind::IntegersMod, RingKind::Rational, RingKind::GaussianRational,
                 RingKind::FloatComplex, RingKind::RationalQuaternion, RingKind::FloatQuaternion}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

RingDescriptor RingDescriptor::integers_mod(std::int64_t m) {
  if (m < 2) throw Error(Errc::BadParams, "modulus must be at least 2");
  return {RingKind::IntegersMod, m, true, true, 0.0};
}
RingDescriptor RingDescriptor::rational() { return {RingKind::Rational, 0, true, false, 0.0}; }
RingDescriptor RingDescriptor::gaussian_rational() {
  return {RingKind::GaussianRational, 0, true, false, 0.0};
}
RingDescriptor RingDescriptor::float_complex(double tolerance) {
  if (!(tolerance >= 0.0)) throw Error(Errc::BadParams, "tolerance must be nonnegative");
  return {RingKind::FloatComplex, 0, true, false, tolerance};
}
RingDescriptor RingDescriptor::rational_quaternion() {
  return {RingKind::RationalQuaternion, 0, false, false, 0.0};
}
RingDescriptor RingDescriptor::float_quaternion(double tolerance) {
  if (!(tolerance >= 0.0)) throw Error(Errc::BadParams, "tolerance must be nonnegative");
  return {RingKind::FloatQuaternion, 0, false, false, tolerance};
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// RingElement

namespace {

__extension__ typedef __int128 wide;

std::int64_t mod_reduce(wide v, std::int64_t m) {
  auto r = static_cast<std::int64_t>(v % m);
  return r < 0 ? r + m : r;
}

[[noreturn]] void mismatch() {
  throw Error(Errc::RingMismatch, "arithmetic on elements of different rings");
}

template <class Op>
RingElement binary(const RingElement& a, const RingElement& b, Op op) {
  return std::visit(
      [&](const auto& x, const auto& y) -> RingElement {
        using X = std::decay_t<decltype(x)>;
        using Y = std::decay_t<decltype(y)>;
        if constexpr (!std::is_same_v<X, Y>) {
          mismatch();
        } else {
          return op(x, y);
        }
      },
      a.payload(), b.payload());
}

}  // namespace

RingElement::RingElement(Residue r) : payload_(r) {
  if (r.modulus < 2) throw Error(Errc::BadParams, "modulus must be at least 2");
  std::get<Residue>(payload_).value = mod_reduce(r.value, r.modulus);
}
RingElement::RingElement(mpq_class q) : payload_(std::move(q)) {
  std::get<mpq_class>(payload_).canonicalize();
}
RingElement::RingElement(GaussianRational g) : payload_(std::move(g)) {
  auto& p = std::get<GaussianRational>(payload_);
  p.re.canonicalize();
  p.im.canonicalize();
}
RingElement::RingElement(Quaternion<mpq_class> q) : payload_(std::move(q)) {
  auto& p = std::get<Quaternion<mpq_class>>(payload_);
  p.w.canonicalize();
  p.x.canonicalize();
  p.y.canonicalize();
  p.z.canonicalize();
}

RingKind RingElement::kind() const noexcept {
  switch (payload_.index()) {
    case 0: return RingKind::IntegersMod;
    case 1: return RingKind::Rational;
    case 2: return RingKind::GaussianRational;
    case 3: return RingKind::FloatComplex;
    case 4: return RingKind::RationalQuaternion;
    default: return RingKind::FloatQuaternion;
  }
}

bool RingElement::is_exact_zero() const {
  return std::visit(
      [](const auto& x) -> bool {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Residue>) return x.value == 0;
        else if constexpr (std::is_same_v<X, mpq_class>) return sgn(x) == 0;
        else if constexpr (std::is_same_v<X, GaussianRational>) return sgn(x.re) == 0 && sgn(x.im) == 0;
        else if constexpr (std::is_same_v<X, std::complex<double>>) return x == std::complex<double>{};
        else return x == X{};
      },
      payload_);
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  return binary(a, b, [](const auto& x, const auto& y) -> RingElement {
    using X = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<X, Residue>) {
      if (x.modulus != y.modulus) mismatch();
      return RingElement(Residue{mod_reduce(static_cast<wide>(x.value) + y.value, x.modulus), x.modulus});
    } else if constexpr (std::is_same_v<X, GaussianRational>) {
      return RingElement(GaussianRational{x.re + y.re, x.im + y.im});
    } else if constexpr (std::is_same_v<X, mpq_class>) {
      return RingElement(mpq_class(x + y));
    } else {
      return RingElement(X(x + y));
    }
  });
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  return binary(a, b, [](const auto& x, const auto& y) -> RingElement {
    using X = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<X, Residue>) {
      if (x.modulus != y.modulus) mismatch();
      return RingElement(Residue{mod_reduce(static_cast<wide>(x.value) - y.value, x.modulus), x.modulus});
    } else if constexpr (std::is_same_v<X, GaussianRational>) {
      return RingElement(GaussianRational{x.re - y.re, x.im - y.im});
    } else if constexpr (std::is_same_v<X, mpq_class>) {
      return RingElement(mpq_class(x - y));
    } else {
      return RingElement(X(x - y));
    }
  });
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  return binary(a, b, [](const auto& x, const auto& y) -> RingElement {
    using X = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<X, Residue>) {
      if (x.modulus != y.modulus) mismatch();
      return RingElement(Residue{mod_reduce(static_cast<wide>(x.value) * y.value, x.modulus), x.modulus});
    } else if constexpr (std::is_same_v<X, GaussianRational>) {
      return RingElement(GaussianRational{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re});
    } else if constexpr (std::is_same_v<X, mpq_class>) {
      return RingElement(mpq_class(x * y));
    } else {
      return RingElement(X(x * y));
    }
  });
}

RingElement operator-(const RingElement& a) {
  return std::visit(
      [](const auto& x) -> RingElement {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Residue>) {
          return RingElement(Residue{mod_reduce(-static_cast<wide>(x.value), x.modulus), x.modulus});
        } else if constexpr (std::is_same_v<X, GaussianRational>) {
          return RingElement(GaussianRational{-x.re, -x.im});
        } else if constexpr (std::is_same_v<X, mpq_class>) {
          return RingElement(mpq_class(-x));
        } else {
          return RingElement(X(-x));
        }
      },
      a.payload());
}

// ---------------------------------------------------------------------------
// Ring

Ring::Ring(RingDescriptor descriptor) : desc_(descriptor) {
  if (desc_.kind == RingKind::IntegersMod && desc_.modulus < 2)
    throw Error(Errc::BadParams, "modulus must be at least 2");
  desc_.commutative = desc_.kind != RingKind::RationalQuaternion &&
                      desc_.kind != RingKind::FloatQuaternion;
  desc_.finite = desc_.kind == RingKind::IntegersMod;
  if (!desc_.is_float()) desc_.tolerance = 0.0;
  if (desc_.kind != RingKind::IntegersMod) desc_.modulus = 0;
}

bool Ring::is_field() const {
  switch (desc_.kind) {
    case RingKind::IntegersMod: return is_prime(desc_.modulus);
    case RingKind::Rational:
    case RingKind::GaussianRational:
    case RingKind::FloatComplex: return true;
    default: return false;
  }
}

RingElement Ring::zero() const { return from_int(0); }
RingElement Ring::one() const { return from_int(1); }

RingElement Ring::from_int(long long n) const { return from_integer(mpz_class(std::to_string(n))); }

RingElement Ring::from_integer(const mpz_class& n) const {
  switch (desc_.kind) {
    case RingKind::IntegersMod: {
      mpz_class r = n % desc_.modulus;
      if (r < 0) r += desc_.modulus;
      return RingElement(Residue{r.get_si(), desc_.modulus});
    }
    case RingKind::Rational: return RingElement(mpq_class(n));
    case RingKind::GaussianRational: return RingElement(GaussianRational{mpq_class(n), mpq_class(0)});
    case RingKind::FloatComplex: return RingElement(std::complex<double>(n.get_d(), 0.0));
    case RingKind::RationalQuaternion:
      return RingElement(Quaternion<mpq_class>{mpq_class(n), 0, 0, 0});
    case RingKind::FloatQuaternion: return RingElement(Quaternion<double>{n.get_d(), 0, 0, 0});
  }
  throw Error(Errc::BadParams, "unknown ring kind");
}

bool Ring::contains(const RingElement& x) const {
  if (x.kind() != desc_.kind) return false;
  if (desc_.kind == RingKind::IntegersMod)
    return std::get<Residue>(x.payload()).modulus == desc_.modulus;
  return true;
}

void Ring::check(const RingElement& x) const {
  if (!contains(x))
    throw Error(Errc::RingMismatch, "element does not belong to ring " + std::string(to_string(desc_.kind)));
}

namespace {

std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) return std::nullopt;
  return mod_reduce(old_s, m);
}

double abs_q(const Quaternion<double>& q) { return std::sqrt(q.norm2()); }

}  // namespace

std::optional<RingElement> Ring::invert(const RingElement& x) const {
  check(x);
  return std::visit(
      [&](const auto& v) -> std::optional<RingElement> {
        using X = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<X, Residue>) {
          auto inv = mod_inverse(v.value, v.modulus);
          if (!inv) return std::nullopt;
          return RingElement(Residue{*inv, v.modulus});
        } else if constexpr (std::is_same_v<X, mpq_class>) {
          if (sgn(v) == 0) return std::nullopt;
          return RingElement(mpq_class(1 / v));
        } else if constexpr (std::is_same_v<X, GaussianRational>) {
          mpq_class n = v.re * v.re + v.im * v.im;
          if (sgn(n) == 0) return std::nullopt;
          return RingElement(GaussianRational{v.re / n, -v.im / n});
        } else if constexpr (std::is_same_v<X, std::complex<double>>) {
          if (std::abs(v) <= desc_.tolerance) return std::nullopt;
          return RingElement(1.0 / v);
        } else if constexpr (std::is_same_v<X, Quaternion<mpq_class>>) {
          mpq_class n = v.norm2();
          if (sgn(n) == 0) return std::nullopt;
          auto c = v.conjugate();
          return RingElement(Quaternion<mpq_class>{c.w / n, c.x / n, c.y / n, c.z / n});
        } else {
          double n = v.norm2();
          if (std::sqrt(n) <= desc_.tolerance) return std::nullopt;
          auto c = v.conjugate();
          return RingElement(Quaternion<double>{c.w / n, c.x / n, c.y / n, c.z / n});
        }
      },
      x.payload());
}

double Ring::magnitude(const RingElement& x) const {
  return std::visit(
      [](const auto& v) -> double {
        using X = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<X, Residue>) return static_cast<double>(v.value);
        else if constexpr (std::is_same_v<X, mpq_class>) return std::abs(v.get_d());
        else if constexpr (std::is_same_v<X, GaussianRational>)
          return std::hypot(v.re.get_d(), v.im.get_d());
        else if constexpr (std::is_same_v<X, std::complex<double>>) return std::abs(v);
        else if constexpr (std::is_same_v<X, Quaternion<mpq_class>>)
          return std::sqrt(v.norm2().get_d());
        else return abs_q(v);
      },
      x.payload());
}

bool Ring::is_zero(const RingElement& x) const { return equal(x, zero()); }

bool Ring::equal(const RingElement& a, const RingElement& b) const {
  check(a);
  check(b);
  if (!desc_.is_float()) return a == b;
  double diff = magnitude(a - b);
  double scale = std::max({magnitude(a), magnitude(b), 1.0});
  return diff <= desc_.tolerance * scale;
}

namespace {

std::strong_ordering cmp_q(const mpq_class& a, const mpq_class& b) {
  int c = cmp(a.get_num(), b.get_num());
  if (c == 0) c = cmp(a.get_den(), b.get_den());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering cmp_d(double a, double b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering Ring::compare(const RingElement& a, const RingElement& b) const {
  check(a);
  check(b);
  return std::visit(
      [](const auto& x, const auto& y) -> std::strong_ordering {
        using X = std::decay_t<decltype(x)>;
        using Y = std::decay_t<decltype(y)>;
        if constexpr (!std::is_same_v<X, Y>) {
          mismatch();
        } else if constexpr (std::is_same_v<X, Residue>) {
          return x.value <=> y.value;
        } else if constexpr (std::is_same_v<X, mpq_class>) {
          return cmp_q(x, y);
        } else if constexpr (std::is_same_v<X, GaussianRational>) {
          auto c = cmp_q(x.re, y.re);
          return c != 0 ? c : cmp_q(x.im, y.im);
        } else if constexpr (std::is_same_v<X, std::complex<double>>) {
          auto c = cmp_d(x.real(), y.real());
          return c != 0 ? c : cmp_d(x.imag(), y.imag());
        } else if constexpr (std::is_same_v<X, Quaternion<mpq_class>>) {
          for (auto [p, q] : {std::pair{&x.w, &y.w}, {&x.x, &y.x}, {&x.y, &y.y}, {&x.z, &y.z}}) {
            auto c = cmp_q(*p, *q);
            if (c != 0) return c;
          }
          return std::strong_ordering::equal;
        } else {
          for (auto [p, q] : {std::pair{x.w, y.w}, {x.x, y.x}, {x.y, y.y}, {x.z, y.z}}) {
            auto c = cmp_d(p, q);
            if (c != 0) return c;
          }
          return std::strong_ordering::equal;
        }
      },
      a.payload(), b.payload());
}

std::vector<RingElement> Ring::units() const {
  if (!desc_.finite) throw Error(Errc::NotFinite, "unit enumeration requires a finite ring");
  std::vector<RingElement> out;
  for (std::int64_t r = 1; r < desc_.modulus; ++r)
    if (std::gcd(r, desc_.modulus) == 1) out.emplace_back(Residue{r, desc_.modulus});
  return out;
}

// ---------------------------------------------------------------------------
// Literal syntax

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string fmt_scalar(const T& v) {
  if constexpr (std::is_same_v<T, double>) return fmt_double(v);
  else return v.get_str();
}

template <class T>
bool negative(const T& v) {
  if constexpr (std::is_same_v<T, double>) return std::signbit(v);
  else return sgn(v) < 0;
}

template <class T>
T absval(const T& v) {
  if constexpr (std::is_same_v<T, double>) return std::fabs(v);
  else return abs(v);
}

template <class T>
std::string fmt_terms(std::initializer_list<std::pair<const T*, const char*>> terms) {
  std::string out;
  bool first = true;
  for (auto [v, unit] : terms) {
    if (first) {
      out += fmt_scalar(*v);
      first = false;
    } else {
      out += negative(*v) ? '-' : '+';
      out += fmt_scalar(absval(*v));
    }
    out += unit;
  }
  return out;
}

// Signed sum of terms `coef unit` where unit is empty or one of `units`.
template <class T>
struct TermParser {
  std::string_view s;
  std::string_view units;
  bool floating;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::ParseError, "bad element literal '" + std::string(s) + "': " + why,
                static_cast<long>(pos));
  }

  std::optional<T> number() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (floating) {
      if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      }
      if (pos == start || (pos == start + 1 && s[start] == '.')) {
        pos = start;
        return std::nullopt;
      }
      if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        std::size_t save = pos++;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) pos = save;
      }
      if constexpr (std::is_same_v<T, double>) {
        return std::strtod(std::string(s.substr(start, pos - start)).c_str(), nullptr);
      }
    } else {
      if (pos == start) return std::nullopt;
      std::string text(s.substr(start, pos - start));
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        std::size_t d = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == d) fail("missing denominator");
        text += '/';
        text += s.substr(d, pos - d);
      }
      if constexpr (!std::is_same_v<T, double>) {
        mpq_class q;
        if (q.set_str(text, 10) != 0) fail("malformed number");
        if (sgn(q.get_den()) == 0) fail("zero denominator");
        q.canonicalize();
        return q;
      }
    }
    return std::nullopt;
  }

  // Returns coefficients indexed by unit position (0 = real part).
  std::vector<T> run() {
    std::vector<T> acc(units.size() + 1, T(0));
    if (s.empty()) fail("empty");
    bool first = true;
    while (pos < s.size()) {
      bool neg = false;
      if (s[pos] == '+' || s[pos] == '-') {
        neg = s[pos] == '-';
        ++pos;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto coef = number();
      std::size_t slot = 0;
      if (pos < s.size()) {
        auto u = units.find(s[pos]);
        if (u != std::string_view::npos) {
          slot = u + 1;
          ++pos;
        }
      }
      if (!coef && slot == 0) fail("expected a number or unit");
      T c = coef ? *coef : T(1);
      acc[slot] += neg ? T(-c) : c;
    }
    return acc;
  }
};

std::string strip_spaces(std::string_view in) {
  std::string out;
  for (char c : in)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

}  // namespace

std::string Ring::format(const RingElement& x) const {
  check(x);
  return std::visit(
      [](const auto& v) -> std::string {
        using X = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<X, Residue>) return std::to_string(v.value);
        else if constexpr (std::is_same_v<X, mpq_class>) return v.get_str();
        else if constexpr (std::is_same_v<X, GaussianRational>)
          return fmt_terms<mpq_class>({{&v.re, ""}, {&v.im, "i"}});
        else if constexpr (std::is_same_v<X, std::complex<double>>) {
          double re = v.real(), im = v.imag();
          return fmt_terms<double>({{&re, ""}, {&im, "i"}});
        } else if constexpr (std::is_same_v<X, Quaternion<mpq_class>>)
          return fmt_terms<mpq_class>({{&v.w, ""}, {&v.x, "i"}, {&v.y, "j"}, {&v.z, "k"}});
        else
          return fmt_terms<double>({{&v.w, ""}, {&v.x, "i"}, {&v.y, "j"}, {&v.z, "k"}});
      },
      x.payload());
}

RingElement Ring::parse(std::string_view literal) const {
  std::string s = strip_spaces(literal);
  switch (desc_.kind) {
    case RingKind::IntegersMod: {
      std::string digits = s;
      if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
      mpz_class n;
      bool ok = !digits.empty() && digits != "-" &&
                std::all_of(digits.begin() + (digits[0] == '-' ? 1 : 0), digits.end(),
                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
                n.set_str(digits, 10) == 0;
      if (!ok) throw Error(Errc::ParseError, "bad residue literal '" + s + "'");
      return from_integer(n);
    }
    case RingKind::Rational: {
      auto v = TermParser<mpq_class>{s, "", false}.run();
      return RingElement(v[0]);
    }
    case RingKind::GaussianRational: {
      auto v = TermParser<mpq_class>{s, "i", false}.run();
      return RingElement(GaussianRational{v[0], v[1]});
    }
    case RingKind::FloatComplex: {
      auto v = TermParser<double>{s, "i", true}.run();
      return RingElement(std::complex<double>(v[0], v[1]));
    }
    case RingKind::RationalQuaternion: {
      auto v = TermParser<mpq_class>{s, "ijk", false}.run();
      return RingElement(Quaternion<mpq_class>{v[0], v[1], v[2], v[3]});
    }
    case RingKind::FloatQuaternion: {
      auto v = TermParser<double>{s, "ijk", true}.run();
      return RingElement(Quaternion<double>{v[0], v[1], v[2], v[3]});
    }
  }
  throw Error(Errc::ParseError, "unknown ring kind");
}

// ---------------------------------------------------------------------------
// Module

AlgebraContext::AlgebraContext(RingDescriptor ring, std::size_t module_dim)
    : ring_(ring), dim_(module_dim) {
  if (dim_ == 0) throw Error(Errc::BadParams, "module dimension must be positive");
}

ModuleElement AlgebraContext::zero_vector() const {
  return ModuleElement{std::vector<RingElement>(dim_, ring_.zero())};
}

ModuleElement AlgebraContext::vector(std::vector<RingElement> components) const {
  ModuleElement v{std::move(components)};
  check(v);
  return v;
}

void AlgebraContext::check(const ModuleElement& x) const {
  if (x.dim() != dim_)
    throw Error(Errc::DimensionMismatch, "expected module element of dimension " +
                                             std::to_string(dim_) + ", got " + std::to_string(x.dim()));
  for (const auto& c : x.components) ring_.check(c);
}

bool AlgebraContext::equal(const ModuleElement& x, const ModuleElement& y) const {
  check(x);
  check(y);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!ring_.equal(x[i], y[i])) return false;
  return true;
}

std::string AlgebraContext::format(const ModuleElement& x) const {
  if (x.dim() == 1) return ring_.format(x[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (i) out += ", ";
    out += ring_.format(x[i]);
  }
  return out + ")";
}

std::optional<RingElement> invert(const AlgebraContext& ctx, const RingElement& x) {
  return ctx.ring().invert(x);
}

bool is_unit(const AlgebraContext& ctx, const RingElement& x) { return ctx.ring().is_unit(x); }

std::vector<RingElement> units_iter(const AlgebraContext& ctx) { return ctx.ring().units(); }

ModuleElement module_axpy(const AlgebraContext& ctx, const RingElement& r,
                          const ModuleElement& x, const ModuleElement& y) {
  ctx.check(x);
  ctx.check(y);
  ctx.ring().check(r);
  ModuleElement out = y;
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] += r * x[i];
  return out;
}

ModuleElement module_scale(const AlgebraContext& ctx, const RingElement& r,
                           const ModuleElement& x) {
  ctx.check(x);
  ctx.ring().check(r);
  ModuleElement out = x;
  for (auto& c : out.components) c = r * c;
  return out;
}

ModuleElement module_add(const AlgebraContext& ctx, const ModuleElement& x,
                         const ModuleElement& y) {
  ctx.check(x);
  ctx.check(y);
  ModuleElement out = x;
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] += y[i];
  return out;
}

ModuleElement module_sub(const AlgebraContext& ctx, const ModuleElement& x,
                         const ModuleElement& y) {
  ctx.check(x);
  ctx.check(y);
  ModuleElement out = x;
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] -= y[i];
  return out;
}

ModuleElement module_combination(const AlgebraContext& ctx, std::span<const RingElement> coeffs,
                                 std::span<const ModuleElement> xs) {
  if (coeffs.size() != xs.size())
    throw Error(Errc::DimensionMismatch, "coefficient count does not match vector count");
  ModuleElement acc = ctx.zero_vector();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (coeffs[i].is_exact_zero()) continue;
    acc = module_axpy(ctx, coeffs[i], xs[i], acc);
  }
  return acc;
}

}  // namespace scf

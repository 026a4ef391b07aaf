#include "scfact/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scf {

namespace {

bool coeff_is_zero(const Ring& ring, const RingElement& c) {
  return ring.is_float() ? ring.is_zero(c) : c.is_exact_zero();
}

std::complex<double> to_complex(const RingElement& x) {
  const auto& p = x.payload();
  if (auto c = std::get_if<std::complex<double>>(&p)) return *c;
  if (auto q = std::get_if<mpq_class>(&p)) return {q->get_d(), 0.0};
  if (auto g = std::get_if<GaussianRational>(&p)) return {g->re.get_d(), g->im.get_d()};
  if (auto r = std::get_if<Residue>(&p)) return {static_cast<double>(r->value), 0.0};
  throw Error(Errc::NoncommutativeRing, "no complex embedding for quaternions");
}

}  // namespace

std::string_view to_string(RootMethod m) noexcept {
  switch (m) {
    case RootMethod::ExhaustiveUnits: return "exhaustive-units";
    case RootMethod::RationalRoot: return "rational-root";
    case RootMethod::FieldGcd: return "field-gcd";
    case RootMethod::Numeric: return "numeric";
    case RootMethod::UserSupplied: return "user-supplied";
  }
  return "unknown";
}

int RootReport::total_multiplicity() const {
  int total = 0;
  for (const auto& r : roots) total += r.multiplicity;
  return total;
}

Polynomial::Polynomial(const Ring& ring, std::vector<RingElement> coeffs)
    : ring_(ring), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) ring_.check(c);
  while (!coeffs_.empty() && coeff_is_zero(ring_, coeffs_.back())) coeffs_.pop_back();
}

Polynomial Polynomial::linear_factor(const Ring& ring, const RingElement& root) {
  return Polynomial(ring, {-root, ring.one()});
}

RingElement Polynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : ring_.zero();
}

RingElement Polynomial::leading() const { return coeffs_.empty() ? ring_.zero() : coeffs_.back(); }

std::string Polynomial::format() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const auto& c = coeffs_[static_cast<std::size_t>(i)];
    if (c.is_exact_zero()) continue;
    std::string s = ring_.format(c);
    bool compound = s.find_first_of("+-", 1) != std::string::npos;
    if (compound) s = "(" + s + ")";
    std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
    std::string term;
    if (mono.empty()) term = s;
    else if (s == "1") term = mono;
    else if (s == "-1") term = "-" + mono;
    else term = s + "*" + mono;
    if (out.empty()) out = term;
    else if (term[0] == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (!(a.ring() == b.ring())) throw Error(Errc::RingMismatch, "polynomials over different rings");
  std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<RingElement> c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(i) + b.coeff(i));
  return Polynomial(a.ring(), std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  if (!(a.ring() == b.ring())) throw Error(Errc::RingMismatch, "polynomials over different rings");
  std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<RingElement> c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(i) - b.coeff(i));
  return Polynomial(a.ring(), std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (!(a.ring() == b.ring())) throw Error(Errc::RingMismatch, "polynomials over different rings");
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring());
  std::vector<RingElement> c(a.coeffs().size() + b.coeffs().size() - 1, a.ring().zero());
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return Polynomial(a.ring(), std::move(c));
}

bool Polynomial::equal(const Polynomial& other) const {
  if (!(ring_ == other.ring_)) return false;
  std::size_t n = std::max(coeffs_.size(), other.coeffs_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!ring_.equal(coeff(i), other.coeff(i))) return false;
  return true;
}

std::pair<Polynomial, Polynomial> build_p_q(const Ring& ring, std::span<const RingElement> a,
                                            std::span<const RingElement> b) {
  if (!ring.commutative())
    throw Error(Errc::NoncommutativeRing, "P and Q are only defined over commutative rings");
  if (a.size() != b.size() || a.empty())
    throw Error(Errc::BadParams, "a and b must both have k+1 entries");
  const std::size_t k = a.size() - 1;
  std::vector<RingElement> pc(k + 2, ring.zero());
  std::vector<RingElement> qc(k + 1, ring.zero());
  pc[k + 1] = ring.one();
  for (std::size_t i = 0; i <= k; ++i) {
    pc[k - i] = -a[i];
    qc[k - i] = b[i];
  }
  return {Polynomial(ring, std::move(pc)), Polynomial(ring, std::move(qc))};
}

RingElement eval(const Polynomial& p, const RingElement& x) {
  p.ring().check(x);
  RingElement acc = p.ring().zero();
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool is_root(const Polynomial& p, const RingElement& x) {
  RingElement v = eval(p, x);
  const Ring& ring = p.ring();
  if (!ring.is_float()) return v.is_exact_zero();
  double scale = 0.0, pw = 1.0, mx = ring.magnitude(x);
  for (const auto& c : p.coeffs()) {
    scale += ring.magnitude(c) * pw;
    pw *= mx;
  }
  return ring.magnitude(v) <= ring.tolerance() * std::max(scale, 1.0);
}

Polynomial derivative(const Polynomial& p) {
  if (p.degree() < 1) return Polynomial(p.ring());
  std::vector<RingElement> c;
  c.reserve(p.coeffs().size() - 1);
  for (std::size_t i = 1; i < p.coeffs().size(); ++i)
    c.push_back(p.ring().from_int(static_cast<long long>(i)) * p.coeffs()[i]);
  return Polynomial(p.ring(), std::move(c));
}

Polynomial deflate(const Polynomial& p, const RingElement& rho) {
  if (p.is_zero() || !is_root(p, rho))
    throw Error(Errc::NotARoot, p.ring().format(rho) + " is not a root of " + p.format());
  const auto& c = p.coeffs();
  const std::size_t n = c.size() - 1;
  if (n == 0) throw Error(Errc::NotARoot, "nonzero constant has no roots");
  std::vector<RingElement> q(n, p.ring().zero());
  q[n - 1] = c[n];
  for (std::size_t i = n - 1; i > 0; --i) q[i - 1] = c[i] + rho * q[i];
  return Polynomial(p.ring(), std::move(q));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& p, const Polynomial& d) {
  const Ring& ring = p.ring();
  if (d.is_zero()) throw Error(Errc::DivisionByNonUnit, "polynomial division by zero");
  auto lead_inv = ring.invert(d.leading());
  if (!lead_inv) throw Error(Errc::DivisionByNonUnit, "divisor leading coefficient is not a unit");
  std::vector<RingElement> rem = p.coeffs();
  if (p.degree() < d.degree()) return {Polynomial(ring), p};
  const std::size_t dd = static_cast<std::size_t>(d.degree());
  std::vector<RingElement> quo(rem.size() - dd, ring.zero());
  for (std::size_t i = rem.size(); i-- > dd;) {
    RingElement f = rem[i] * *lead_inv;
    quo[i - dd] = f;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.coeffs()[j];
  }
  rem.resize(dd);
  return {Polynomial(ring, std::move(quo)), Polynomial(ring, std::move(rem))};
}

namespace {

Polynomial make_monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  auto inv = p.ring().invert(p.leading());
  if (!inv) throw Error(Errc::DivisionByNonUnit, "leading coefficient is not a unit");
  std::vector<RingElement> c;
  for (const auto& x : p.coeffs()) c.push_back(*inv * x);
  c.back() = p.ring().one();
  return Polynomial(p.ring(), std::move(c));
}

}  // namespace

Polynomial field_gcd(const Polynomial& p, const Polynomial& q) {
  if (!p.ring().is_field())
    throw Error(Errc::NotAField, "gcd requires a field, got " +
                                     std::string(to_string(p.ring().kind())));
  Polynomial a = p, b = q;
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

int root_multiplicity(const Polynomial& p, const RingElement& rho) {
  int m = 0;
  Polynomial cur = p;
  while (cur.degree() >= 1 && is_root(cur, rho)) {
    cur = deflate(cur, rho);
    ++m;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Numeric roots

std::vector<std::complex<double>> complex_roots(std::span<const std::complex<double>> coeffs,
                                                double residual_tol, int max_iterations) {
  using C = std::complex<double>;
  std::vector<C> c(coeffs.begin(), coeffs.end());
  while (!c.empty() && c.back() == C{}) c.pop_back();
  if (c.size() < 2) return {};
  const std::size_t n = c.size() - 1;
  const C lead = c.back();
  for (auto& x : c) x /= lead;

  auto horner = [&](C z) {
    C acc{};
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
  };
  auto dhorner = [&](C z) {
    C acc{};
    for (std::size_t i = c.size(); i-- > 1;) acc = acc * z + c[i] * static_cast<double>(i);
    return acc;
  };
  auto scale_at = [&](C z) {
    double s = 0, pw = 1, az = std::abs(z);
    for (const auto& x : c) {
      s += std::abs(x) * pw;
      pw *= az;
    }
    return std::max(s, 1.0);
  };

  double radius = 1.0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, 1.0 + std::abs(c[i]));
  std::vector<C> z(n);
  const C seed(0.4, 0.9);
  C pw = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = pw * (radius / 2.0);
    pw *= seed;
  }

  for (int iter = 0; iter < max_iterations; ++iter) {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      C denom = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      C val = horner(z[i]);
      if (denom != C{}) z[i] -= val / denom;
      worst = std::max(worst, std::abs(horner(z[i])) / scale_at(z[i]));
    }
    if (worst <= residual_tol) break;
  }

  for (auto& r : z) {
    for (int k = 0; k < 8; ++k) {
      C d = dhorner(r);
      if (std::abs(d) < 1e-300) break;
      C next = r - horner(r) / d;
      if (std::abs(horner(next)) >= std::abs(horner(r))) break;
      r = next;
    }
  }
  return z;
}

namespace {

std::vector<std::complex<double>> numeric_roots(const Polynomial& p) {
  std::vector<std::complex<double>> c;
  for (const auto& x : p.coeffs()) c.push_back(to_complex(x));
  return complex_roots(c);
}

// Continued-fraction convergents of x, used to recover exact rational roots.
std::vector<mpq_class> convergents(double x, int max_terms = 40) {
  std::vector<mpq_class> out;
  if (!std::isfinite(x)) return out;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double r = x;
  for (int i = 0; i < max_terms; ++i) {
    double fl = std::floor(r);
    if (std::fabs(fl) > 1e15) break;
    mpz_class a(fl);
    mpz_class h = a * h0 + h1, k = a * k0 + k1;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    mpq_class q(h, k);
    q.canonicalize();
    out.push_back(q);
    double frac = r - fl;
    if (frac < 1e-15 || k0 > mpz_class("1000000000000")) break;
    r = 1.0 / frac;
  }
  return out;
}

void sort_roots(const Ring& ring, std::vector<Root>& roots) {
  std::sort(roots.begin(), roots.end(),
            [&](const Root& a, const Root& b) { return ring.less(a.value, b.value); });
}

void add_root(const Ring& ring, std::vector<Root>& roots, const RingElement& v, int mult) {
  for (const auto& r : roots)
    if (ring.equal(r.value, v)) return;
  roots.push_back({v, mult});
}

// Divisors of |n| when |n| factors by trial division up to 10^6 plus at most
// one large prime; nullopt otherwise.
std::optional<std::vector<mpz_class>> divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, int>> fac;
  for (unsigned long d = 2; d <= 1000000UL; ++d) {
    mpz_class dd(d);
    if (dd * dd > n) break;
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      n /= d;
      ++e;
    }
    if (e) fac.emplace_back(dd, e);
  }
  if (n > 1) {
    if (n > mpz_class(1000000) * mpz_class(1000000) &&
        mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      return std::nullopt;
    fac.emplace_back(n, 1);
  }
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : fac) {
    std::size_t cur = out.size();
    mpz_class pw = 1;
    for (int i = 0; i < e; ++i) {
      pw *= p;
      for (std::size_t j = 0; j < cur; ++j) out.push_back(out[j] * pw);
    }
  }
  return out;
}

// Rational roots of a nonzero polynomial over Q; nonzero roots only.
RootReport rational_roots(const Polynomial& g) {
  const Ring& ring = g.ring();
  RootReport rep{{}, RootMethod::RationalRoot, true};
  if (g.degree() < 1) return rep;

  mpz_class lcm = 1;
  for (const auto& c : g.coeffs()) {
    const auto& q = std::get<mpq_class>(c.payload());
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<mpz_class> ints;
  for (const auto& c : g.coeffs()) {
    mpq_class v = std::get<mpq_class>(c.payload()) * lcm;
    ints.push_back(v.get_num());
  }
  std::size_t low = 0;
  while (low < ints.size() && ints[low] == 0) ++low;
  if (ints.size() - low < 2) return rep;

  auto d0 = divisors(ints[low]);
  auto dn = divisors(ints.back());
  std::vector<mpq_class> candidates;
  if (d0 && dn) {
    for (const auto& num : *d0)
      for (const auto& den : *dn) {
        mpq_class q(num, den);
        q.canonicalize();
        candidates.push_back(q);
        candidates.push_back(-q);
      }
  } else {
    rep.exhaustive = false;
    for (const auto& z : numeric_roots(g)) {
      if (std::fabs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
      for (const auto& q : convergents(z.real())) candidates.push_back(q);
    }
  }
  for (const auto& q : candidates) {
    RingElement r(q);
    if (r.is_exact_zero()) continue;
    if (!is_root(g, r)) continue;
    add_root(ring, rep.roots, r, root_multiplicity(g, r));
  }
  sort_roots(ring, rep.roots);
  if (!rep.exhaustive && rep.total_multiplicity() == g.degree() - static_cast<int>(low))
    rep.exhaustive = true;
  return rep;
}

RootReport gaussian_roots(const Polynomial& g) {
  const Ring& ring = g.ring();
  RootReport rep{{}, RootMethod::FieldGcd, true};
  if (g.degree() < 1) return rep;
  for (const auto& z : numeric_roots(g)) {
    auto re = convergents(z.real());
    auto im = convergents(z.imag());
    if (std::fabs(z.imag()) < 1e-12) im = {mpq_class(0)};
    if (std::fabs(z.real()) < 1e-12) re = {mpq_class(0)};
    bool found = false;
    for (auto ri = re.rbegin(); ri != re.rend() && !found; ++ri)
      for (auto ii = im.rbegin(); ii != im.rend() && !found; ++ii) {
        RingElement r(GaussianRational{*ri, *ii});
        if (r.is_exact_zero() || !is_root(g, r)) continue;
        add_root(ring, rep.roots, r, root_multiplicity(g, r));
        found = true;
      }
  }
  sort_roots(ring, rep.roots);
  int low = 0;
  while (low < static_cast<int>(g.coeffs().size()) && g.coeffs()[low].is_exact_zero()) ++low;
  rep.exhaustive = rep.total_multiplicity() == g.degree() - low;
  return rep;
}

struct Cluster {
  std::complex<double> center;
  int count;
};

std::vector<Cluster> cluster_roots(const std::vector<std::complex<double>>& zs) {
  std::vector<Cluster> out;
  for (const auto& z : zs) {
    bool merged = false;
    for (auto& c : out) {
      if (std::abs(c.center - z) <= 1e-6 * std::max(1.0, std::abs(z))) {
        c.center = (c.center * static_cast<double>(c.count) + z) / static_cast<double>(c.count + 1);
        ++c.count;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back({z, 1});
  }
  return out;
}

RootReport float_roots(const Polynomial& p, const Polynomial& q) {
  const Ring& ring = p.ring();
  RootReport rep{{}, RootMethod::Numeric, false};
  auto pc = cluster_roots(numeric_roots(p));
  std::vector<Cluster> qc;
  if (!q.is_zero()) qc = cluster_roots(numeric_roots(q));
  for (const auto& c : pc) {
    if (std::abs(c.center) <= std::max(ring.tolerance(), 1e-12)) continue;
    int mult = c.count;
    if (!q.is_zero()) {
      int qm = 0;
      for (const auto& d : qc) {
        double tol = (c.count > 1 || d.count > 1) ? 1e-6 : 1e-8;
        if (std::abs(c.center - d.center) <= tol * std::max(1.0, std::abs(c.center))) qm += d.count;
      }
      mult = std::min(mult, qm);
    }
    if (mult > 0) rep.roots.push_back({RingElement(c.center), mult});
  }
  sort_roots(ring, rep.roots);
  return rep;
}

}  // namespace

RootReport unit_roots(const Polynomial& p, const Polynomial& q) {
  const Ring& ring = p.ring();
  if (!ring.commutative())
    throw Error(Errc::NoncommutativeRing, "root search requires a commutative ring");
  if (!(q.ring() == ring)) throw Error(Errc::RingMismatch, "P and Q over different rings");

  if (ring.kind() == RingKind::IntegersMod) {
    RootReport rep{{}, RootMethod::ExhaustiveUnits, true};
    const bool prime = is_prime(ring.descriptor().modulus);
    std::optional<Polynomial> g;
    if (prime && !(p.is_zero() && q.is_zero()))
      g = q.is_zero() ? p : (p.is_zero() ? q : field_gcd(p, q));
    for (const auto& u : ring.units()) {
      if (!p.is_zero() && !is_root(p, u)) continue;
      if (!q.is_zero() && !is_root(q, u)) continue;
      int mult = g ? root_multiplicity(*g, u) : 1;
      rep.roots.push_back({u, std::max(mult, 1)});
    }
    return rep;
  }

  if (p.is_zero() && q.is_zero())
    throw Error(Errc::BadParams, "every element is a root of the zero polynomial");

  switch (ring.kind()) {
    case RingKind::Rational:
      return rational_roots(q.is_zero() ? p : (p.is_zero() ? q : field_gcd(p, q)));
    case RingKind::GaussianRational:
      return gaussian_roots(q.is_zero() ? p : (p.is_zero() ? q : field_gcd(p, q)));
    case RingKind::FloatComplex:
      return p.is_zero() ? float_roots(q, p) : float_roots(p, q);
    default:
      throw Error(Errc::NoncommutativeRing, "root search requires a commutative ring");
  }
}

}  // namespace scf

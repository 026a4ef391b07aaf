#pragma once

// Shared generators and small independent oracles for the test binaries.
// Every generator takes an explicit engine so failures reproduce from the
// printed seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "scfact/algebra.hpp"
#include "scfact/poly.hpp"
#include "scfact/recurrence.hpp"

namespace scf::testing {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t salt) { return Rng(0x5eedULL * 1000003ULL + salt); }

inline long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline const std::vector<long>& small_primes() {
  static const std::vector<long> ps{11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  return ps;
}

// Rationals with small numerators and denominators.
inline RingElement random_rational(Rng& rng, long bound = 9) {
  mpq_class q(mpz_class(uniform(rng, -bound, bound)), mpz_class(uniform(rng, 1, bound)));
  q.canonicalize();
  return RingElement(q);
}

inline RingElement random_element(const Ring& ring, Rng& rng) {
  switch (ring.kind()) {
    case RingKind::IntegersMod:
      return ring.from_int(uniform(rng, 0, ring.descriptor().modulus - 1));
    case RingKind::Rational: return random_rational(rng);
    case RingKind::GaussianRational: {
      auto re = std::get<mpq_class>(random_rational(rng).payload());
      auto im = std::get<mpq_class>(random_rational(rng).payload());
      return RingElement(GaussianRational{re, im});
    }
    case RingKind::FloatComplex: {
      std::uniform_real_distribution<double> d(-2.0, 2.0);
      return RingElement(std::complex<double>(d(rng), d(rng)));
    }
    case RingKind::RationalQuaternion: {
      auto c = [&] { return std::get<mpq_class>(random_rational(rng).payload()); };
      return RingElement(Quaternion<mpq_class>{c(), c(), c(), c()});
    }
    case RingKind::FloatQuaternion: {
      std::uniform_real_distribution<double> d(-2.0, 2.0);
      return RingElement(Quaternion<double>{d(rng), d(rng), d(rng), d(rng)});
    }
  }
  return ring.zero();
}

inline RingElement random_unit(const Ring& ring, Rng& rng) {
  for (;;) {
    RingElement x = random_element(ring, rng);
    if (ring.is_unit(x)) return x;
  }
}

inline ModuleElement random_vector(const AlgebraContext& ctx, Rng& rng) {
  std::vector<RingElement> c;
  for (std::size_t i = 0; i < ctx.module_dim(); ++i) c.push_back(random_element(ctx.ring(), rng));
  return ctx.vector(std::move(c));
}

inline std::vector<ModuleElement> random_window(const AlgebraContext& ctx, Rng& rng, std::size_t n) {
  std::vector<ModuleElement> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(random_vector(ctx, rng));
  return w;
}

inline ModuleElement scalar(const AlgebraContext& ctx, const RingElement& x) { return ctx.vector({x}); }

inline std::vector<ModuleElement> scalars(const AlgebraContext& ctx, const std::vector<long>& xs) {
  std::vector<ModuleElement> out;
  for (long x : xs) out.push_back(ctx.vector({ctx.ring().from_int(x)}));
  return out;
}

// Ascending coefficients of prod (x - r).
inline std::vector<RingElement> poly_from_roots(const Ring& ring, const std::vector<RingElement>& roots) {
  std::vector<RingElement> c{ring.one()};
  for (const auto& r : roots) {
    std::vector<RingElement> next(c.size() + 1, ring.zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

// Recurrence coefficients a_0..a_k with P = prod (x - r); roots.size() = k+1.
inline std::vector<RingElement> a_from_roots(const Ring& ring, const std::vector<RingElement>& roots) {
  auto c = poly_from_roots(ring, roots);  // x^{k+1} + c_k x^k + ... + c_0
  const std::size_t k = roots.size() - 1;
  std::vector<RingElement> a(k + 1);
  for (std::size_t i = 0; i <= k; ++i) a[i] = -c[k - i];
  return a;
}

// b_0..b_k with Q = lead * prod (x - r) * x^{k - roots.size()}; needs roots.size() <= k.
inline std::vector<RingElement> b_from_roots(const Ring& ring, const std::vector<RingElement>& roots,
                                             std::size_t k, const RingElement& lead) {
  auto c = poly_from_roots(ring, roots);  // degree m = roots.size()
  std::vector<RingElement> b(k + 1, ring.zero());
  // Q(x) = sum_i b_i x^{k-i}: coefficient of x^j lands at b_{k-j}, shifted up by k - m.
  const std::size_t shift = k - roots.size();
  for (std::size_t j = 0; j < c.size(); ++j) b[k - (j + shift)] = lead * c[j];
  return b;
}

// Direct iteration written independently of step(): explicit sums only.
template <class G>
std::vector<ModuleElement> hand_iterate(const AlgebraContext& ctx, const std::vector<RingElement>& a,
                                        const std::vector<RingElement>& b, G g,
                                        std::vector<ModuleElement> xs, long steps) {
  const std::size_t k = a.size() - 1;
  for (long s = 0; s < steps; ++s) {
    const std::size_t n = xs.size() - 1;
    ModuleElement lin = ctx.zero_vector(), inner = ctx.zero_vector();
    for (std::size_t c = 0; c < ctx.module_dim(); ++c) {
      for (std::size_t i = 0; i <= k; ++i) {
        lin[c] += a[i] * xs[n - i][c];
        inner[c] += b[i] * xs[n - i][c];
      }
    }
    ModuleElement gv = g(inner, long(n));
    for (std::size_t c = 0; c < ctx.module_dim(); ++c) lin[c] += gv[c];
    xs.push_back(lin);
  }
  return xs;
}

}  // namespace scf::testing

#include "scfact/factorizer.hpp"

#include <algorithm>
#include <numeric>

namespace scf {

namespace {

RingElement must_invert(const Ring& ring, const RingElement& x, Errc code, const std::string& what,
                        std::optional<long> index = std::nullopt) {
  auto inv = ring.invert(x);
  if (!inv) throw Error(code, what, index);
  return *inv;
}

// Periodic sequence over one period, collapsed when every entry agrees.
CoeffSeq make_seq(std::vector<RingElement> values) {
  if (std::all_of(values.begin(), values.end(), [&](const RingElement& v) { return v == values[0]; }))
    return CoeffSeq::constant(values[0]);
  return CoeffSeq::periodic(std::move(values));
}

bool composite_modulus(const Ring& ring) {
  return ring.kind() == RingKind::IntegersMod && !is_prime(ring.descriptor().modulus);
}

std::vector<CoeffSeq> negated(const std::vector<CoeffSeq>& seqs) {
  std::vector<CoeffSeq> out;
  out.reserve(seqs.size());
  for (const auto& s : seqs) {
    std::vector<RingElement> v;
    for (const auto& x : s.values()) v.push_back(-x);
    out.push_back(s.is_constant() ? CoeffSeq::constant(v[0]) : CoeffSeq::periodic(std::move(v)));
  }
  return out;
}

// Smallest nonnegative n >= lo with n = r (mod period).
long representative(long r, long period, long lo) {
  long n = r;
  if (n < lo) n += ((lo - n + period - 1) / period) * period;
  return n;
}

}  // namespace

const RingElement& UnitSequenceCertificate::alpha(long n) const {
  if (n < origin) throw Error(Errc::BadParams, "alpha index precedes the seed");
  auto i = static_cast<std::size_t>(n - origin);
  if (i < alphas.size()) return alphas[i];
  if (!proved())
    throw Error(Errc::CertificateFailure, "alpha_" + std::to_string(n) + " lies past the horizon", n);
  long p = *period;
  long j = preperiod + (static_cast<long>(i) - preperiod) % p;
  return alphas[static_cast<std::size_t>(j)];
}

std::string_view to_string(UnitSequenceCertificate::Status s) noexcept {
  return s == UnitSequenceCertificate::Status::ProvedPeriodic ? "proved-periodic"
                                                               : "verified-to-horizon";
}

std::string_view to_string(StepKind k) noexcept {
  switch (k) {
    case StepKind::ConstantRoot: return "constant-root";
    case StepKind::VariableSequence: return "variable-sequence";
    case StepKind::AlspOrderOne: return "alsp-order-one";
  }
  return "?";
}

void FactorizationChain::push(Factorization f) {
  steps.push_back(std::move(f.step));
  factors.push_back(std::move(f.factor));
  complete = deepest().k() == 0;
}

// ---------------------------------------------------------------------------

ModuleElement criterion_value(const Recurrence& rec, std::span<const RingElement> alphas, long n,
                              const ModuleElement& u0, std::span<const ModuleElement> v) {
  const std::size_t k = rec.k();
  if (alphas.size() != k + 1 || v.size() != k)
    throw Error(Errc::DimensionMismatch, "criterion needs k+1 alphas and k probe vectors");
  const auto& ctx = rec.ctx();
  const Ring& ring = ctx.ring();

  // inv_prod(i, j) = (alpha_{n-i} alpha_{n-i-1} ... alpha_{n-j})^{-1}
  auto inv_prod = [&](std::size_t i, std::size_t j) {
    RingElement prod = alphas[i];
    for (std::size_t l = i + 1; l <= j; ++l) prod = prod * alphas[l];
    return must_invert(ring, prod, Errc::BadParams, "criterion needs unit alphas", n);
  };

  std::vector<ModuleElement> window{u0};
  for (std::size_t j = 1; j <= k; ++j) {
    ModuleElement z = module_scale(ctx, inv_prod(1, j), u0);
    for (std::size_t i = 1; i <= j; ++i)
      z = module_sub(ctx, z, module_scale(ctx, inv_prod(i, j), v[i - 1]));
    window.push_back(std::move(z));
  }
  return module_sub(ctx, step(rec, window, n), module_scale(ctx, alphas[0], u0));
}

bool criterion_check(const Recurrence& rec, std::span<const RingElement> alphas, long n,
                     const ModuleElement& probe_a, const ModuleElement& probe_b,
                     std::span<const ModuleElement> v) {
  return rec.ctx().equal(criterion_value(rec, alphas, n, probe_a, v),
                         criterion_value(rec, alphas, n, probe_b, v));
}

// ---------------------------------------------------------------------------

std::pair<std::vector<RingElement>, std::vector<RingElement>> root_coefficients(
    const Recurrence& rec, const RingElement& rho) {
  const Ring& ring = rec.ctx().ring();
  const auto a = rec.a_at(0);
  const auto b = rec.b_at(0);
  std::vector<RingElement> p, q;
  RingElement pp = ring.one(), qq = ring.zero();
  // p_i = rho p_{i-1} - a_i with p_{-1} = 1; q_i = rho q_{i-1} + b_i with q_{-1} = 0.
  for (std::size_t i = 0; i < rec.k(); ++i) {
    pp = rho * pp - a[i];
    qq = rho * qq + b[i];
    p.push_back(pp);
    q.push_back(qq);
  }
  return {p, q};
}

Factorization factor_once(const Recurrence& rec, const RingElement& rho) {
  const auto& ctx = rec.ctx();
  const Ring& ring = ctx.ring();
  if (!ring.commutative())
    throw Error(Errc::NoncommutativeRing,
                "constant-root factorization needs a commutative ring; use a unit-sequence seed");
  if (!rec.constant_coefficients())
    throw Error(Errc::BadParams, "constant-root factorization needs constant coefficients");
  if (rec.k() < 1) throw Error(Errc::BadParams, "a first-order recurrence has no factor");
  ring.check(rho);

  const auto a = rec.a_at(0);
  const auto b = rec.b_at(0);
  auto [P, Q] = build_p_q(ring, a, b);
  if (!ring.is_unit(rho) || !is_root(P, rho) || (!Q.is_zero() && !is_root(Q, rho)))
    throw Error(Errc::NotCommonUnitRoot, ring.format(rho) + " is not a common unit root of P and Q");

  auto [p, q] = root_coefficients(rec, rho);
  FactorizationStep st;
  st.kind = StepKind::ConstantRoot;
  st.via = "constant-root";
  st.rho = rho;
  st.cofactor = CoeffSeq::constant(rho);
  st.p = constant_seqs(p);
  st.q = constant_seqs(q);
  Recurrence factor(ctx, negated(st.p), st.q, rec.g(), rec.origin() + 1);
  return {std::move(st), std::move(factor)};
}

FactorizationChain factor_chain(const Recurrence& rec, std::size_t max_steps) {
  const Ring& ring = rec.ctx().ring();
  if (composite_modulus(ring) && rec.k() >= 2 && max_steps >= 2)
    throw Error(Errc::NotIntegralDomain,
                "Z_" + std::to_string(ring.descriptor().modulus) +
                    " is not an integral domain; chains past one step are not supported");

  FactorizationChain chain{rec, {}, {}, {}, rec.k() == 0};
  while (chain.steps.size() < max_steps && chain.deepest().k() >= 1) {
    const Recurrence& cur = chain.deepest();
    if (!cur.constant_coefficients()) break;
    auto [P, Q] = build_p_q(ring, cur.a_at(0), cur.b_at(0));
    RootReport rep = unit_roots(P, Q);
    if (rep.roots.empty()) {
      if (chain.steps.empty())
        throw Error(Errc::Irreducible, "P and Q share no unit root; no constant-root factorization");
      chain.reports.push_back(std::move(rep));
      break;
    }
    RingElement rho = rep.roots.front().value;
    chain.reports.push_back(std::move(rep));
    Factorization f = factor_once(cur, rho);

    // Deflation coherence: the factor's polynomials are P/(x - rho), Q/(x - rho).
    auto [P1, Q1] = build_p_q(ring, f.factor.a_at(0), f.factor.b_at(0));
    Polynomial lin = Polynomial::linear_factor(ring, rho);
    if (!(lin * P1).equal(P) || (!Q.is_zero() && !(lin * Q1).equal(Q)))
      throw Error(Errc::CertificateFailure, "factor polynomials do not deflate P and Q");

    chain.push(std::move(f));
  }
  return chain;
}

// ---------------------------------------------------------------------------

UnitSequenceCertificate variable_certificate(const Recurrence& rec, std::span<const RingElement> seed,
                                             long horizon) {
  const auto& ctx = rec.ctx();
  const Ring& ring = ctx.ring();
  const std::size_t k = rec.k();
  if (k < 1) throw Error(Errc::BadParams, "a first-order recurrence has no factor");
  if (seed.size() != k)
    throw Error(Errc::BadParams, "seed must hold k = " + std::to_string(k) + " values alpha_" +
                                     std::to_string(rec.origin()) + "..alpha_" +
                                     std::to_string(rec.first_step() - 1));
  if (horizon < 1) throw Error(Errc::BadParams, "horizon must be positive");

  UnitSequenceCertificate cert;
  cert.origin = rec.origin();
  cert.seed.assign(seed.begin(), seed.end());
  for (std::size_t i = 0; i < k; ++i) {
    ring.check(seed[i]);
    if (!ring.is_unit(seed[i]))
      throw Error(Errc::CertificateFailure, "seed alpha_" + std::to_string(cert.origin + long(i)) +
                                                " is not a unit",
                  cert.origin + long(i));
  }
  cert.alphas = cert.seed;

  const long L = rec.coefficient_period();
  const auto phase = [&](long m) { return ((m % L) + L) % L; };
  // State s: window alphas[s..s+k-1] together with (origin + s + k) mod L,
  // the phase of the next step.
  auto same_state = [&](std::size_t s1, std::size_t s2) {
    if (phase(cert.origin + long(s1)) != phase(cert.origin + long(s2))) return false;
    for (std::size_t i = 0; i < k; ++i)
      if (!ring.equal(cert.alphas[s1 + i], cert.alphas[s2 + i])) return false;
    return true;
  };

  const long first = rec.first_step();
  for (long n = first; n < first + horizon; ++n) {
    const auto a = rec.a_at(n);
    const auto b = rec.b_at(n);
    RingElement alpha = a[0];
    RingElement inner = b[0];
    RingElement prod = ring.one();
    for (std::size_t j = 1; j <= k; ++j) {
      prod = prod * cert.alpha(n - long(j));
      RingElement inv = must_invert(ring, prod, Errc::CertificateFailure,
                                    "alpha product is not a unit at n=" + std::to_string(n), n);
      alpha += a[j] * inv;
      inner += b[j] * inv;
    }
    cert.horizon = n;
    if (!ring.is_zero(inner))
      throw Error(Errc::CertificateFailure,
                  "inner coefficients do not cancel at n=" + std::to_string(n) + " (residual " +
                      ring.format(inner) + ")",
                  n);
    if (!ring.is_unit(alpha))
      throw Error(Errc::CertificateFailure,
                  "alpha_" + std::to_string(n) + " = " + ring.format(alpha) + " is not a unit", n);
    cert.alphas.push_back(alpha);

    const std::size_t s = static_cast<std::size_t>(n - first + 1);
    for (std::size_t s0 = 0; s0 < s; ++s0) {
      if (same_state(s0, s)) {
        cert.status = UnitSequenceCertificate::Status::ProvedPeriodic;
        cert.preperiod = long(s0);
        cert.period = long(s - s0);
        return cert;
      }
    }
  }
  return cert;
}

Factorization build_variable_factor(const Recurrence& rec, const UnitSequenceCertificate& cert) {
  if (!cert.proved() || cert.preperiod != 0)
    throw Error(Errc::NotPeriodic,
                cert.proved() ? "alpha sequence is eventually but not purely periodic"
                              : "alpha sequence is not proved periodic");
  if (cert.origin != rec.origin() || cert.seed.size() != rec.k())
    throw Error(Errc::BadParams, "certificate does not belong to this recurrence");

  const auto& ctx = rec.ctx();
  const Ring& ring = ctx.ring();
  const std::size_t k = rec.k();
  const long period = std::lcm(*cert.period, rec.coefficient_period());
  const long first = rec.first_step();

  std::vector<std::vector<RingElement>> pa(k), qb(k);
  std::vector<RingElement> rho;
  for (long r = 0; r < period; ++r) {
    rho.push_back(cert.alpha(representative(r, period, rec.origin())));
    const long n = representative(r, period, first);
    const auto a = rec.a_at(n);
    const auto b = rec.b_at(n);
    // Factor coefficient on t_{n-i+1}, i = 1..k:
    //   -sum_{j>=i} a_{j,n} (rho_{n-i} ... rho_{n-j})^{-1}, likewise for b.
    for (std::size_t i = 1; i <= k; ++i) {
      RingElement sa = ring.zero(), sb = ring.zero();
      RingElement prod = ring.one();
      for (std::size_t j = i; j <= k; ++j) {
        prod = prod * cert.alpha(n - long(j));
        RingElement inv = must_invert(ring, prod, Errc::CertificateFailure,
                                      "alpha product is not a unit", n);
        sa += a[j] * inv;
        sb += b[j] * inv;
      }
      pa[i - 1].push_back(sa);   // p = -(factor a)
      qb[i - 1].push_back(-sb);  // q = factor b
    }
  }

  FactorizationStep st;
  st.kind = StepKind::VariableSequence;
  st.via = "unit-sequence";
  st.certificate = cert;
  st.cofactor = make_seq(rho);
  if (st.cofactor->is_constant()) st.rho = st.cofactor->at(0);
  for (std::size_t i = 0; i < k; ++i) {
    st.p.push_back(make_seq(pa[i]));
    st.q.push_back(make_seq(qb[i]));
  }
  Recurrence factor(ctx, negated(st.p), st.q, rec.g(), rec.origin() + 1);
  return {std::move(st), std::move(factor)};
}

std::optional<Factorization> second_order_shortcut(const Recurrence& rec) {
  if (rec.k() != 1) return std::nullopt;
  const auto& ctx = rec.ctx();
  const Ring& ring = ctx.ring();
  const long L = rec.coefficient_period();

  std::vector<RingElement> rho, fa, fb;
  for (long r = 0; r < L; ++r) {
    const auto a = rec.a_at(r);
    const auto b = rec.b_at(r);
    const auto b_next = rec.b_at(r + 1);
    auto b1_inv = ring.invert(b[1]);
    auto b0n_inv = ring.invert(b_next[0]);
    if (!b1_inv || !b0n_inv || !ring.is_unit(b[0])) return std::nullopt;
    // a_{0,n} - a_{1,n} b_{1,n}^{-1} b_{0,n} + b_{0,n+1}^{-1} b_{1,n+1} = 0
    if (!ring.is_zero(a[0] - a[1] * *b1_inv * b[0] + *b0n_inv * b_next[1])) return std::nullopt;
    rho.push_back(-(*b0n_inv * b_next[1]));
    fa.push_back(a[1] * *b1_inv * b[0]);
    fb.push_back(b[0]);
  }

  FactorizationStep st;
  st.kind = StepKind::VariableSequence;
  st.via = "second-order";
  st.cofactor = make_seq(rho);
  if (st.cofactor->is_constant()) {
    st.kind = StepKind::ConstantRoot;
    st.rho = st.cofactor->at(0);
  }
  std::vector<RingElement> neg_fa;
  for (const auto& x : fa) neg_fa.push_back(-x);
  st.p = {make_seq(neg_fa)};
  st.q = {make_seq(fb)};
  Recurrence factor(ctx, {make_seq(fa)}, st.q, rec.g(), rec.origin() + 1);
  return Factorization{std::move(st), std::move(factor)};
}

Factorization remark_a_factor(const Recurrence& rec) {
  const auto& ctx = rec.ctx();
  const Ring& ring = ctx.ring();
  const std::size_t k = rec.k();
  if (k < 1 || !rec.constant_coefficients())
    throw Error(Errc::NotAlspFamily, "needs constant coefficients and k >= 1");
  const auto a = rec.a_at(0);
  const auto b = rec.b_at(0);
  if (!ring.is_zero(a[k])) throw Error(Errc::NotAlspFamily, "a_k must vanish");
  const RingElement& bb = b[0];
  if (ring.is_zero(bb))
    throw Error(Errc::BadParams, "b = 0 makes the recurrence linear; nothing to factor");
  for (std::size_t j = 1; j <= k; ++j)
    if (!ring.equal(b[j], -(a[j - 1] * bb)))
      throw Error(Errc::NotAlspFamily,
                  "b_" + std::to_string(j) + " must equal -a_" + std::to_string(j - 1) + " b");

  FactorizationStep st;
  st.kind = StepKind::AlspOrderOne;
  st.via = "alsp-order-one";
  st.cofactor_a.assign(a.begin(), a.end() - 1);
  st.q = {CoeffSeq::constant(bb)};
  st.p = {CoeffSeq::constant(ring.zero())};
  Recurrence factor(ctx, {CoeffSeq::constant(ring.zero())}, {CoeffSeq::constant(bb)}, rec.g(),
                    rec.origin() + long(k));
  return {std::move(st), std::move(factor)};
}

O2bVerdict reducibility_o2b(const Recurrence& rec) {
  const Ring& ring = rec.ctx().ring();
  const std::size_t k = rec.k();
  if (k < 1 || !rec.constant_coefficients())
    throw Error(Errc::BadParams, "not of the form g(x_{n-j} - b x_{n-j-1})");
  const auto a = rec.a_at(0);
  const auto b = rec.b_at(0);
  std::optional<std::size_t> j;
  for (std::size_t i = 0; i + 1 <= k; ++i) {
    if (!ring.equal(b[i], ring.one())) continue;
    bool rest_zero = true;
    for (std::size_t l = 0; l <= k; ++l)
      if (l != i && l != i + 1 && !ring.is_zero(b[l])) rest_zero = false;
    if (rest_zero) {
      j = i;
      break;
    }
  }
  if (!j) throw Error(Errc::BadParams, "not of the form g(x_{n-j} - b x_{n-j-1})");

  const RingElement beta = -b[*j + 1];
  O2bVerdict v;
  if (!ring.is_unit(beta)) {
    v.reason = "b = " + ring.format(beta) + " is not a unit";
    return v;
  }
  auto [P, Q] = build_p_q(ring, a, b);
  if (!is_root(P, beta)) {
    v.reason = "b = " + ring.format(beta) + " is not a root of the characteristic polynomial";
    return v;
  }
  v.reducible = true;
  v.rho = beta;
  v.reason = "b is a unit root of the characteristic polynomial";
  return v;
}

FactorizationChain linear_complete(const Recurrence& rec, std::span<const RingElement> roots) {
  const auto& ctx = rec.ctx();
  const Ring& ring = ctx.ring();
  const auto kind = rec.g().kind;
  if (kind == GMapSpec::Kind::Expression)
    throw Error(Errc::BadParams, "linear completion needs a linear recurrence");
  if (composite_modulus(ring) && rec.k() >= 2)
    throw Error(Errc::NotIntegralDomain, "linear completion over Z_m needs prime m");

  FactorizationChain chain{rec, {}, {}, {}, rec.k() == 0};
  std::size_t level = 0;
  while (chain.deepest().k() >= 1) {
    const Recurrence& cur = chain.deepest();
    if (!cur.constant_coefficients()) break;
    const bool scaled = cur.g().kind == GMapSpec::Kind::LinearScale;
    // Without a scale sequence g ignores its argument; b = 0 makes Q vanish,
    // which places no constraint on the root.
    const Recurrence eff =
        scaled ? cur
               : cur.with_coefficients(cur.a(), std::vector<CoeffSeq>(cur.order(), CoeffSeq::constant(ring.zero())));
    auto [P, Q] = build_p_q(ring, eff.a_at(0), eff.b_at(0));

    RingElement rho;
    if (level < roots.size()) {
      rho = roots[level];
      chain.reports.push_back({{{rho, root_multiplicity(P, rho)}}, RootMethod::UserSupplied, false});
    } else {
      RootReport rep = unit_roots(P, Q);
      if (rep.roots.empty()) {
        if (chain.steps.empty())
          throw Error(Errc::Irreducible, "characteristic polynomial has no unit root");
        chain.reports.push_back(std::move(rep));
        break;
      }
      rho = rep.roots.front().value;
      chain.reports.push_back(std::move(rep));
    }
    Factorization f = factor_once(eff, rho);

    if (scaled) {
      // t_{n+1} = -sum_i (p_i - q_i c_n) t_{n-i} + d_n
      const CoeffSeq& c = *cur.g().scale;
      std::vector<CoeffSeq> coeffs;
      for (std::size_t i = 0; i < f.step.p.size(); ++i) {
        std::vector<RingElement> vals;
        for (long r = 0; r < long(c.period()); ++r)
          vals.push_back(f.step.q[i].at(0) * c.at(r) - f.step.p[i].at(0));
        coeffs.push_back(make_seq(std::move(vals)));
      }
      f.step.via = "linear-scale";
      f.factor = Recurrence(ctx, coeffs, coeffs, GMapSpec::constant_sequence(cur.g().offsets),
                            cur.origin() + 1);
    }
    chain.push(std::move(f));
    ++level;
  }
  return chain;
}

AutoResult auto_chain(const Recurrence& rec, const AutoOptions& options) {
  const Ring& ring = rec.ctx().ring();
  AutoResult out{FactorizationChain{rec, {}, {}, {}, rec.k() == 0}, {}, false, {}, {}};
  auto& chain = out.chain;
  std::size_t seed_index = 0;

  while (chain.deepest().k() >= 1) {
    const Recurrence cur = chain.deepest();
    const std::size_t level = chain.steps.size();

    if (ring.commutative() && cur.constant_coefficients()) {
      if (level >= 1 && composite_modulus(ring)) {
        out.notes.push_back("Z_" + std::to_string(ring.descriptor().modulus) +
                            " is not an integral domain; stopped after one step");
        break;
      }
      auto [P, Q] = build_p_q(ring, cur.a_at(0), cur.b_at(0));
      std::optional<RingElement> rho;
      if (level < options.roots.size()) {
        rho = options.roots[level];
        chain.reports.push_back({{{*rho, root_multiplicity(P, *rho)}}, RootMethod::UserSupplied, false});
      } else {
        RootReport rep = unit_roots(P, Q);
        if (!rep.roots.empty()) rho = rep.roots.front().value;
        if (level == 0) out.constant_report = rep;
        chain.reports.push_back(std::move(rep));
      }
      if (rho) {
        chain.push(factor_once(cur, *rho));
        continue;
      }
      if (level == 0) out.constant_path_irreducible = true;
    }

    if (seed_index < options.seeds.size()) {
      const auto& seed = options.seeds[seed_index++];
      try {
        auto cert = variable_certificate(cur, seed, options.horizon);
        out.certificates.push_back(cert);
        if (cert.proved() && cert.preperiod == 0) {
          chain.push(build_variable_factor(cur, cert));
          continue;
        }
        out.notes.push_back(cert.proved()
                                ? "level " + std::to_string(level) +
                                      ": alpha sequence is only eventually periodic"
                                : "level " + std::to_string(level) +
                                      ": alpha sequence not proved periodic within the horizon");
      } catch (const Error& e) {
        if (e.code() != Errc::CertificateFailure) throw;
        out.notes.push_back("level " + std::to_string(level) + ": " + e.what());
      }
    }

    if (auto sc = second_order_shortcut(cur)) {
      chain.push(std::move(*sc));
      continue;
    }
    break;
  }
  return out;
}

}  // namespace scf

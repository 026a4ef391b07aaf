#include "scfact/recurrence.hpp"

#include <numeric>
#include <set>

namespace scf {

GMapSpec GMapSpec::zero() { return {}; }

GMapSpec GMapSpec::constant_sequence(std::vector<ModuleElement> offsets) {
  GMapSpec g;
  g.kind = offsets.empty() ? Kind::Zero : Kind::ConstantSequence;
  g.offsets = std::move(offsets);
  return g;
}

GMapSpec GMapSpec::linear_scale(CoeffSeq c, std::vector<ModuleElement> offsets) {
  GMapSpec g;
  g.kind = Kind::LinearScale;
  g.scale = std::move(c);
  g.offsets = std::move(offsets);
  return g;
}

GMapSpec GMapSpec::expression(std::vector<Expr> exprs, SequenceBindings sequences,
                              std::optional<std::vector<std::vector<RingElement>>> linear) {
  GMapSpec g;
  g.kind = Kind::Expression;
  g.exprs = std::move(exprs);
  g.sequences = std::move(sequences);
  g.linear = std::move(linear);
  return g;
}

void GMapSpec::validate(const AlgebraContext& ctx) const {
  const std::size_t d = ctx.module_dim();
  for (const auto& o : offsets) ctx.check(o);
  if (kind == Kind::LinearScale) {
    if (!scale) throw Error(Errc::BadParams, "linear-scale map needs a scale sequence");
    for (const auto& v : scale->values()) ctx.ring().check(v);
  }
  if (kind != Kind::Expression) return;
  if (exprs.size() != d)
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(d) +
                                             " component expressions, got " +
                                             std::to_string(exprs.size()));
  std::set<std::string> names;
  for (const auto& e : exprs) {
    if (max_variable(e) > d)
      throw Error(Errc::UnknownIdentifier, "expression references a variable beyond u" +
                                               std::to_string(d));
    collect_sequences(e, names);
  }
  for (const auto& n : names)
    if (!sequences.count(n)) throw Error(Errc::UnknownIdentifier, "unbound sequence '" + n + "'");
  for (const auto& [name, seq] : sequences)
    for (const auto& v : seq.values()) ctx.ring().check(v);
  if (linear) {
    if (linear->size() != d) throw Error(Errc::DimensionMismatch, "linear part must be d x d");
    for (const auto& row : *linear) {
      if (row.size() != d) throw Error(Errc::DimensionMismatch, "linear part must be d x d");
      for (const auto& v : row) ctx.ring().check(v);
    }
  }
}

ModuleElement GMapSpec::apply(const AlgebraContext& ctx, const ModuleElement& u, long n) const {
  auto offset = [&]() -> ModuleElement {
    if (offsets.empty()) return ctx.zero_vector();
    long p = static_cast<long>(offsets.size());
    long r = ((n % p) + p) % p;
    return offsets[static_cast<std::size_t>(r)];
  };
  switch (kind) {
    case Kind::Zero: return ctx.zero_vector();
    case Kind::ConstantSequence: return offset();
    case Kind::LinearScale: return module_axpy(ctx, scale->at(n), u, offset());
    case Kind::Expression: {
      ModuleElement out = ctx.zero_vector();
      for (std::size_t i = 0; i < exprs.size(); ++i) {
        out[i] = eval_expr(exprs[i], u, n, sequences, ctx);
        if (linear)
          for (std::size_t m = 0; m < u.dim(); ++m)
            if (!(*linear)[i][m].is_exact_zero()) out[i] += (*linear)[i][m] * u[m];
      }
      return out;
    }
  }
  throw Error(Errc::BadParams, "unknown map kind");
}

std::vector<std::string> GMapSpec::describe(const AlgebraContext& ctx) const {
  const std::size_t d = ctx.module_dim();
  const Ring& ring = ctx.ring();
  std::vector<std::string> out(d);
  auto offset_text = [&](std::size_t i) {
    if (offsets.empty()) return std::string();
    if (offsets.size() == 1) return ring.format(offsets[0][i]);
    std::string s = "[";
    for (std::size_t t = 0; t < offsets.size(); ++t) s += (t ? "," : "") + ring.format(offsets[t][i]);
    return s + "][n]";
  };
  for (std::size_t i = 0; i < d; ++i) {
    std::string v = "u" + std::to_string(i + 1);
    switch (kind) {
      case Kind::Zero: out[i] = "0"; break;
      case Kind::ConstantSequence: out[i] = offset_text(i); break;
      case Kind::LinearScale: {
        std::string c = scale->is_constant() ? ring.format(scale->values()[0]) : "c[n]";
        out[i] = "(" + c + ")*" + v;
        if (!offsets.empty()) out[i] += "+(" + offset_text(i) + ")";
        break;
      }
      case Kind::Expression: {
        std::string s;
        if (linear)
          for (std::size_t m = 0; m < d; ++m)
            if (!(*linear)[i][m].is_exact_zero())
              s += "(" + ring.format((*linear)[i][m]) + ")*u" + std::to_string(m + 1) + "+";
        out[i] = s + format_expr(exprs[i]);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Recurrence::Recurrence(AlgebraContext ctx, std::vector<CoeffSeq> a, std::vector<CoeffSeq> b,
                       GMapSpec g, long origin)
    : ctx_(std::move(ctx)), a_(std::move(a)), b_(std::move(b)), g_(std::move(g)), origin_(origin) {
  if (a_.empty() || a_.size() != b_.size())
    throw Error(Errc::BadParams, "a and b must both have k+1 entries (got " +
                                     std::to_string(a_.size()) + " and " +
                                     std::to_string(b_.size()) + ")");
  if (origin_ < 0) throw Error(Errc::BadParams, "origin must be nonnegative");
  for (const auto* seqs : {&a_, &b_})
    for (const auto& s : *seqs)
      for (const auto& v : s.values()) ctx_.ring().check(v);
  g_.validate(ctx_);
}

bool Recurrence::constant_coefficients() const {
  for (const auto* seqs : {&a_, &b_})
    for (const auto& s : *seqs)
      if (!s.is_constant()) return false;
  return true;
}

std::vector<RingElement> Recurrence::a_at(long n) const {
  std::vector<RingElement> out;
  out.reserve(a_.size());
  for (const auto& s : a_) out.push_back(s.at(n));
  return out;
}

std::vector<RingElement> Recurrence::b_at(long n) const {
  std::vector<RingElement> out;
  out.reserve(b_.size());
  for (const auto& s : b_) out.push_back(s.at(n));
  return out;
}

long Recurrence::coefficient_period() const {
  long l = 1;
  for (const auto* seqs : {&a_, &b_})
    for (const auto& s : *seqs) l = std::lcm(l, static_cast<long>(s.period()));
  return l;
}

Recurrence Recurrence::with_coefficients(std::vector<CoeffSeq> a, std::vector<CoeffSeq> b) const {
  return Recurrence(ctx_, std::move(a), std::move(b), g_, origin_);
}

Recurrence Recurrence::with_origin(long origin) const {
  return Recurrence(ctx_, a_, b_, g_, origin);
}

ModuleElement inner_argument(const Recurrence& rec, std::span<const ModuleElement> window, long n) {
  if (window.size() != rec.order())
    throw Error(Errc::DimensionMismatch, "window must hold k+1 values");
  const auto& ctx = rec.ctx();
  ModuleElement u = ctx.zero_vector();
  for (std::size_t i = 0; i < window.size(); ++i) {
    const RingElement& c = rec.b()[i].at(n);
    if (!c.is_exact_zero()) u = module_axpy(ctx, c, window[i], u);
  }
  return u;
}

ModuleElement step(const Recurrence& rec, std::span<const ModuleElement> window, long n) {
  if (window.size() != rec.order())
    throw Error(Errc::DimensionMismatch, "window must hold k+1 values");
  const auto& ctx = rec.ctx();
  ModuleElement out = ctx.zero_vector();
  for (std::size_t i = 0; i < window.size(); ++i) {
    const RingElement& c = rec.a()[i].at(n);
    if (!c.is_exact_zero()) out = module_axpy(ctx, c, window[i], out);
  }
  if (rec.g().kind == GMapSpec::Kind::Zero) return out;
  try {
    return module_add(ctx, out, rec.g().apply(ctx, inner_argument(rec, window, n), n));
  } catch (const Error& e) {
    if (e.code() == Errc::DivisionByNonUnit)
      throw Error(Errc::EvaluationBreakdown, e.what(), n);
    throw;
  }
}

std::vector<CoeffSeq> constant_seqs(std::span<const RingElement> values) {
  std::vector<CoeffSeq> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(CoeffSeq::constant(v));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct FamilyBuilder {
  const AlgebraContext& ctx;
  GMapSpec g;

  Recurrence operator()(const FscParams& p) const {
    const Ring& ring = ctx.ring();
    const std::size_t k = p.b.size();
    if (k < 1) throw Error(Errc::BadParams, "fsc needs b_1..b_k with k >= 1");
    if (ring.is_zero(p.b.back())) throw Error(Errc::BadParams, "fsc needs b_k != 0");
    std::vector<RingElement> bf{ring.one()};
    bf.insert(bf.end(), p.b.begin(), p.b.end());
    bf.push_back(ring.zero());
    std::vector<RingElement> a, b;
    for (std::size_t j = 0; j <= k; ++j) {
      a.push_back(p.r * bf[j] - bf[j + 1]);
      b.push_back(bf[j]);
    }
    return Recurrence(ctx, constant_seqs(a), constant_seqs(b), g);
  }

  Recurrence operator()(const AlspParams& p) const {
    const Ring& ring = ctx.ring();
    const std::size_t k = p.a.size();
    if (k < 1) throw Error(Errc::BadParams, "alsp needs a_0..a_{k-1} with k >= 1");
    if (ring.is_zero(p.a.back())) throw Error(Errc::BadParams, "alsp needs a_{k-1} != 0");
    std::vector<RingElement> a = p.a;
    a.push_back(ring.zero());
    std::vector<RingElement> b{p.b};
    for (const auto& aj : p.a) b.push_back(-(aj * p.b));
    return Recurrence(ctx, constant_seqs(a), constant_seqs(b), g);
  }

  Recurrence operator()(const O2bParams& p) const {
    const Ring& ring = ctx.ring();
    if (p.a.size() < 2) throw Error(Errc::BadParams, "o2b needs a_0..a_k with k >= 1");
    const std::size_t k = p.a.size() - 1;
    if (p.j > k - 1) throw Error(Errc::BadParams, "o2b needs 0 <= j <= k-1");
    std::vector<RingElement> b(k + 1, ring.zero());
    b[p.j] = ring.one();
    b[p.j + 1] = -p.b;
    return Recurrence(ctx, constant_seqs(p.a), constant_seqs(b), g);
  }

  Recurrence operator()(const LinearParams& p) const {
    if (p.a.size() < 2) throw Error(Errc::BadParams, "linear family needs k >= 1");
    if (p.c) {
      if (!p.b || p.b->size() != p.a.size())
        throw Error(Errc::BadParams, "linear family with a scale sequence needs b of length k+1");
      return Recurrence(ctx, p.a, *p.b, GMapSpec::linear_scale(*p.c, p.d));
    }
    std::vector<CoeffSeq> zero_b(p.a.size(), CoeffSeq::constant(ctx.ring().zero()));
    return Recurrence(ctx, p.a, std::move(zero_b), GMapSpec::constant_sequence(p.d));
  }

  Recurrence operator()(const SecondOrderParams& p) const {
    return Recurrence(ctx, {p.a0, p.a1}, {p.b0, p.b1}, g);
  }
};

}  // namespace

Recurrence build_family(const AlgebraContext& ctx, const FamilyParams& params, GMapSpec g) {
  return std::visit(FamilyBuilder{ctx, std::move(g)}, params);
}

// ---------------------------------------------------------------------------

namespace {

void check_system_shape(const AlgebraContext& ctx, const SystemDescription& sys) {
  const std::size_t d = ctx.module_dim();
  if (sys.components.size() != d)
    throw Error(Errc::DimensionMismatch, "system needs one component per module dimension");
  if (sys.b.size() != sys.k + 1) throw Error(Errc::BadParams, "system b must have k+1 entries");
  for (const auto& c : sys.components) {
    if (c.linear.size() != sys.k + 1)
      throw Error(Errc::BadParams, "component linear part must have k+1 lag rows");
    for (const auto& row : c.linear)
      if (row.size() != d) throw Error(Errc::DimensionMismatch, "lag row must have d entries");
    if (c.extract && c.extract->size() != d)
      throw Error(Errc::DimensionMismatch, "extract row must have d entries");
  }
}

}  // namespace

Recurrence fold_system(const AlgebraContext& ctx, const SystemDescription& sys) {
  check_system_shape(ctx, sys);
  const Ring& ring = ctx.ring();
  const std::size_t d = ctx.module_dim();
  const std::size_t k = sys.k;

  std::vector<std::vector<RingElement>> extract(d, std::vector<RingElement>(d, ring.zero()));
  bool any_extract = false;
  for (std::size_t i = 0; i < d; ++i)
    if (sys.components[i].extract) {
      extract[i] = *sys.components[i].extract;
      for (const auto& v : extract[i]) any_extract = any_extract || !ring.is_zero(v);
    }

  std::optional<std::vector<RingElement>> shared;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<RingElement> own;
    for (std::size_t l = 0; l <= k; ++l) {
      for (std::size_t j = 0; j < d; ++j) {
        RingElement r = sys.components[i].linear[l][j] - extract[i][j] * sys.b[l];
        if (j == i) {
          own.push_back(r);
        } else if (!ring.is_zero(r)) {
          throw Error(Errc::NotFoldable, "component " + std::to_string(i + 1) +
                                             " keeps a cross term on x" + std::to_string(j + 1) +
                                             " at lag " + std::to_string(l) +
                                             " that is not absorbed by the extracted linear part");
        }
      }
    }
    if (!shared) {
      shared = own;
    } else {
      for (std::size_t l = 0; l <= k; ++l)
        if (!ring.equal((*shared)[l], own[l]))
          throw Error(Errc::NotFoldable, "components " + std::to_string(1) + " and " +
                                             std::to_string(i + 1) +
                                             " have different scalar coefficients at lag " +
                                             std::to_string(l));
    }
  }

  std::vector<Expr> exprs;
  for (const auto& c : sys.components) exprs.push_back(c.h);
  std::optional<std::vector<std::vector<RingElement>>> lin;
  if (any_extract) lin = extract;
  return Recurrence(ctx, constant_seqs(*shared), constant_seqs(sys.b),
                    GMapSpec::expression(std::move(exprs), sys.sequences, std::move(lin)));
}

ModuleElement system_step(const AlgebraContext& ctx, const SystemDescription& sys,
                          std::span<const ModuleElement> window, long n) {
  check_system_shape(ctx, sys);
  if (window.size() != sys.k + 1) throw Error(Errc::DimensionMismatch, "window must hold k+1 values");
  const std::size_t d = ctx.module_dim();
  ModuleElement u = ctx.zero_vector();
  for (std::size_t l = 0; l <= sys.k; ++l) u = module_axpy(ctx, sys.b[l], window[l], u);
  ModuleElement out = ctx.zero_vector();
  for (std::size_t i = 0; i < d; ++i) {
    RingElement acc = ctx.ring().zero();
    for (std::size_t l = 0; l <= sys.k; ++l)
      for (std::size_t j = 0; j < d; ++j) acc += sys.components[i].linear[l][j] * window[l][j];
    try {
      acc += eval_expr(sys.components[i].h, u, n, sys.sequences, ctx);
    } catch (const Error& e) {
      if (e.code() == Errc::DivisionByNonUnit) throw Error(Errc::EvaluationBreakdown, e.what(), n);
      throw;
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace scf

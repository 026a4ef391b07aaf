#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "scfact/job.hpp"

namespace scf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(Errc::ConfigError, (path.empty() ? std::string("<root>") : path) + ": " + msg);
}

// A JSON value together with its path from the document root.
struct Node {
  const json& j;
  std::string path;

  Node key(const std::string& k) const {
    if (!j.is_object() || !j.contains(k)) fail(path_of(k), "missing required field");
    return {j.at(k), path_of(k)};
  }
  std::optional<Node> opt(const std::string& k) const {
    if (!j.is_object() || !j.contains(k)) return std::nullopt;
    return Node{j.at(k), path_of(k)};
  }
  Node at(std::size_t i) const { return {j.at(i), path + "[" + std::to_string(i) + "]"}; }
  std::string path_of(const std::string& k) const { return path.empty() ? k : path + "." + k; }

  void expect_object(std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail(path, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
      if (!ok.count(k)) fail(path_of(k), "unknown field");
  }
  const json& array() const {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }
  std::string string() const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }
  long integer(long lo, long hi) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    auto v = j.get<long long>();
    if (v < lo || v > hi)
      fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<long>(v);
  }
  double number() const {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
  }
};

// Wraps a library error raised while interpreting `node`.
template <class F>
auto guarded(const Node& node, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == Errc::ConfigError) throw;
    fail(node.path, std::string(to_string(e.code())) + ": " + e.what());
  }
}

RingElement element(const Ring& ring, const Node& n) {
  if (n.j.is_string()) return guarded(n, [&] { return ring.parse(n.j.get<std::string>()); });
  if (n.j.is_number_integer()) return guarded(n, [&] { return ring.from_integer(mpz_class(n.j.dump())); });
  if (n.j.is_number_float()) return guarded(n, [&] { return ring.parse(n.j.dump()); });
  fail(n.path, "expected a ring literal (string or number)");
}

std::vector<RingElement> elements(const Ring& ring, const Node& n) {
  std::vector<RingElement> out;
  for (std::size_t i = 0; i < n.array().size(); ++i) out.push_back(element(ring, n.at(i)));
  return out;
}

ModuleElement module_element(const AlgebraContext& ctx, const Node& n) {
  if (!n.j.is_array()) {
    if (ctx.module_dim() != 1) fail(n.path, "expected an array of " + std::to_string(ctx.module_dim()) + " components");
    return ctx.vector({element(ctx.ring(), n)});
  }
  auto comps = elements(ctx.ring(), n);
  if (comps.size() != ctx.module_dim())
    fail(n.path, "expected " + std::to_string(ctx.module_dim()) + " components, got " +
                     std::to_string(comps.size()));
  return ctx.vector(std::move(comps));
}

std::vector<ModuleElement> module_elements(const AlgebraContext& ctx, const Node& n) {
  std::vector<ModuleElement> out;
  for (std::size_t i = 0; i < n.array().size(); ++i) out.push_back(module_element(ctx, n.at(i)));
  return out;
}

CoeffSeq coeff_seq(const Ring& ring, const Node& n) {
  if (n.j.is_object()) {
    n.expect_object({"periodic"});
    auto vals = elements(ring, n.key("periodic"));
    if (vals.empty()) fail(n.path_of("periodic"), "needs at least one value");
    return CoeffSeq::periodic(std::move(vals));
  }
  return CoeffSeq::constant(element(ring, n));
}

std::vector<CoeffSeq> coeff_seqs(const Ring& ring, const Node& n) {
  std::vector<CoeffSeq> out;
  for (std::size_t i = 0; i < n.array().size(); ++i) out.push_back(coeff_seq(ring, n.at(i)));
  return out;
}

SequenceBindings bindings(const Ring& ring, const Node& n) {
  if (!n.j.is_object()) fail(n.path, "expected an object of named sequences");
  SequenceBindings out;
  for (const auto& [name, v] : n.j.items()) {
    const Node s = n.key(name);
    if (s.j.is_object() && s.j.contains("values")) {
      // {"period": p, "values": [...]}: values cycle with the stated period.
      s.expect_object({"period", "values"});
      auto vals = elements(ring, s.key("values"));
      if (vals.empty()) fail(s.path_of("values"), "needs at least one value");
      if (auto p = s.opt("period"); p && p->integer(1, 1 << 20) != long(vals.size()))
        fail(p->path, "must equal the number of values");
      out.emplace(name, vals.size() == 1 ? CoeffSeq::constant(vals[0]) : CoeffSeq::periodic(std::move(vals)));
    } else {
      out.emplace(name, coeff_seq(ring, s));
    }
  }
  return out;
}

std::vector<std::vector<RingElement>> matrix(const Ring& ring, const Node& n) {
  std::vector<std::vector<RingElement>> out;
  for (std::size_t i = 0; i < n.array().size(); ++i) out.push_back(elements(ring, n.at(i)));
  return out;
}

std::vector<Expr> expressions(const AlgebraContext& ctx, const Node& n) {
  std::vector<Node> srcs;
  if (n.j.is_string()) {
    srcs.push_back(n);
  } else {
    for (std::size_t i = 0; i < n.array().size(); ++i) srcs.push_back(n.at(i));
  }
  std::vector<Expr> out;
  for (const auto& s : srcs) {
    std::string text = s.string();
    out.push_back(guarded(s, [&] { return parse_expr(text, ctx.module_dim()); }));
  }
  return out;
}

GMapSpec gmap(const AlgebraContext& ctx, const Node& n) {
  if (n.j.is_string()) return GMapSpec::expression(expressions(ctx, n));
  n.expect_object({"kind", "expr", "sequences", "linear", "c", "offsets"});
  const std::string kind = n.key("kind").string();
  const Ring& ring = ctx.ring();
  std::vector<ModuleElement> offsets;
  if (auto o = n.opt("offsets")) offsets = module_elements(ctx, *o);
  GMapSpec g;
  if (kind == "zero") {
    g = GMapSpec::zero();
  } else if (kind == "constant-sequence") {
    if (offsets.empty()) fail(n.path_of("offsets"), "constant-sequence needs at least one offset");
    g = GMapSpec::constant_sequence(std::move(offsets));
  } else if (kind == "linear-scale") {
    g = GMapSpec::linear_scale(coeff_seq(ring, n.key("c")), std::move(offsets));
  } else if (kind == "expression") {
    SequenceBindings seqs;
    if (auto s = n.opt("sequences")) seqs = bindings(ring, *s);
    std::optional<std::vector<std::vector<RingElement>>> lin;
    if (auto l = n.opt("linear")) lin = matrix(ring, *l);
    g = GMapSpec::expression(expressions(ctx, n.key("expr")), std::move(seqs), std::move(lin));
  } else {
    fail(n.path_of("kind"), "unknown map kind '" + kind + "'");
  }
  guarded(n, [&] {
    g.validate(ctx);
    return 0;
  });
  return g;
}

Recurrence plain_recurrence(const AlgebraContext& ctx, const Node& n) {
  n.expect_object({"k", "a", "b", "g", "origin"});
  const Ring& ring = ctx.ring();
  auto a = coeff_seqs(ring, n.key("a"));
  auto b = coeff_seqs(ring, n.key("b"));
  if (auto k = n.opt("k")) {
    long kv = k->integer(0, 1 << 20);
    if (a.size() != std::size_t(kv + 1)) fail(n.path_of("a"), "expected k+1 = " + std::to_string(kv + 1) + " entries");
    if (b.size() != std::size_t(kv + 1)) fail(n.path_of("b"), "expected k+1 = " + std::to_string(kv + 1) + " entries");
  }
  GMapSpec g = GMapSpec::zero();
  if (auto gn = n.opt("g")) g = gmap(ctx, *gn);
  long origin = 0;
  if (auto o = n.opt("origin")) origin = o->integer(0, 1L << 40);
  return guarded(n, [&] { return Recurrence(ctx, std::move(a), std::move(b), std::move(g), origin); });
}

Recurrence family_recurrence(const AlgebraContext& ctx, const Node& n, std::string& name) {
  n.expect_object({"name", "params", "g"});
  name = n.key("name").string();
  const Ring& ring = ctx.ring();
  const Node p = n.key("params");
  GMapSpec g = GMapSpec::zero();
  if (auto gn = n.opt("g")) g = gmap(ctx, *gn);

  FamilyParams params;
  if (name == "fsc") {
    p.expect_object({"r", "b"});
    params = FscParams{element(ring, p.key("r")), elements(ring, p.key("b"))};
  } else if (name == "alsp") {
    p.expect_object({"b", "a"});
    params = AlspParams{element(ring, p.key("b")), elements(ring, p.key("a"))};
  } else if (name == "o2b") {
    p.expect_object({"a", "j", "b"});
    params = O2bParams{elements(ring, p.key("a")), std::size_t(p.key("j").integer(0, 1 << 20)),
                       element(ring, p.key("b"))};
  } else if (name == "linear") {
    p.expect_object({"a", "b", "c", "d"});
    LinearParams lp;
    lp.a = coeff_seqs(ring, p.key("a"));
    if (auto b = p.opt("b")) lp.b = coeff_seqs(ring, *b);
    if (auto c = p.opt("c")) lp.c = coeff_seq(ring, *c);
    if (auto d = p.opt("d")) lp.d = module_elements(ctx, *d);
    params = std::move(lp);
  } else if (name == "second-order") {
    p.expect_object({"a0", "a1", "b0", "b1"});
    params = SecondOrderParams{coeff_seq(ring, p.key("a0")), coeff_seq(ring, p.key("a1")),
                               coeff_seq(ring, p.key("b0")), coeff_seq(ring, p.key("b1"))};
  } else {
    fail(n.path_of("name"), "unknown family '" + name + "'");
  }
  return guarded(p, [&] { return build_family(ctx, params, std::move(g)); });
}

Recurrence system_recurrence(const AlgebraContext& ctx, const Node& n) {
  n.expect_object({"k", "b", "components", "sequences"});
  const Ring& ring = ctx.ring();
  SystemDescription sys;
  sys.k = std::size_t(n.key("k").integer(0, 1 << 20));
  sys.b = elements(ring, n.key("b"));
  if (auto s = n.opt("sequences")) sys.sequences = bindings(ring, *s);
  const Node comps = n.key("components");
  for (std::size_t i = 0; i < comps.array().size(); ++i) {
    const Node c = comps.at(i);
    c.expect_object({"linear", "h", "extract"});
    SystemComponent sc{matrix(ring, c.key("linear")), Expr::literal(0), std::nullopt};
    const Node h = c.key("h");
    std::string text = h.string();
    sc.h = guarded(h, [&] { return parse_expr(text, ctx.module_dim()); });
    if (auto e = c.opt("extract")) sc.extract = elements(ring, *e);
    sys.components.push_back(std::move(sc));
  }
  return guarded(n, [&] { return fold_system(ctx, sys); });
}

Method method_from(const Node& n) {
  const std::string s = n.string();
  for (Method m : {Method::Auto, Method::Constant, Method::UnitSequence, Method::SecondOrder,
                   Method::Alsp, Method::Linear})
    if (to_string(m) == s) return m;
  fail(n.path, "unknown method '" + s + "'");
}

RunOptions run_options(const AlgebraContext& ctx, const Node& n) {
  n.expect_object({"steps", "horizon", "max_period", "method", "seeds", "roots", "mutate"});
  const Ring& ring = ctx.ring();
  RunOptions r;
  if (auto v = n.opt("steps")) r.steps = v->integer(0, 10'000'000);
  if (auto v = n.opt("horizon")) r.horizon = v->integer(1, 10'000'000);
  if (auto v = n.opt("max_period")) r.max_period = v->integer(1, 10'000'000);
  if (auto v = n.opt("method")) r.method = method_from(*v);
  if (auto v = n.opt("seeds"))
    for (std::size_t i = 0; i < v->array().size(); ++i) r.seeds.push_back(elements(ring, v->at(i)));
  if (auto v = n.opt("roots")) r.roots = elements(ring, *v);
  if (auto v = n.opt("mutate")) {
    v->expect_object({"level", "which", "index", "delta"});
    Perturbation p;
    if (auto l = v->opt("level")) p.level = std::size_t(l->integer(1, 1 << 20));
    const std::string which = v->key("which").string();
    if (which != "a" && which != "b" && which != "r") fail(v->path_of("which"), "must be \"a\", \"b\" or \"r\"");
    p.which = which[0];
    if (auto i = v->opt("index")) p.index = std::size_t(i->integer(0, 1 << 20));
    p.delta = element(ring, v->key("delta"));
    r.mutate = p;
  }
  return r;
}

AlgebraContext algebra(const json& root) {
  const Node top{root, ""};
  const Node rn = top.key("ring");
  rn.expect_object({"kind", "modulus", "tolerance"});
  const std::string kind = rn.key("kind").string();
  auto rk = ring_kind_from_string(kind);
  if (!rk) fail(rn.path_of("kind"), "unknown ring kind '" + kind + "'");
  double tol = kDefaultTolerance;
  if (auto t = rn.opt("tolerance")) tol = t->number();
  RingDescriptor desc;
  guarded(rn, [&] {
    switch (*rk) {
      case RingKind::IntegersMod:
        desc = RingDescriptor::integers_mod(rn.key("modulus").integer(2, 3'037'000'499L));
        break;
      case RingKind::Rational: desc = RingDescriptor::rational(); break;
      case RingKind::GaussianRational: desc = RingDescriptor::gaussian_rational(); break;
      case RingKind::FloatComplex: desc = RingDescriptor::float_complex(tol); break;
      case RingKind::RationalQuaternion: desc = RingDescriptor::rational_quaternion(); break;
      case RingKind::FloatQuaternion: desc = RingDescriptor::float_quaternion(tol); break;
    }
    return 0;
  });
  std::size_t dim = 1;
  if (auto m = top.opt("module")) {
    m->expect_object({"dim"});
    dim = std::size_t(m->key("dim").integer(1, 64));
  }
  return AlgebraContext(desc, dim);
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Constant: return "constant-root";
    case Method::UnitSequence: return "unit-sequence";
    case Method::SecondOrder: return "second-order";
    case Method::Alsp: return "alsp";
    case Method::Linear: return "linear";
  }
  return "?";
}

Method JobConfig::method() const {
  if (run.method) return *run.method;
  if (source == "alsp") return Method::Alsp;
  if (source == "linear") return Method::Linear;
  return Method::Auto;
}

JobConfig parse_job(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ConfigError, std::string("<root>: invalid JSON: ") + e.what());
  }
  const Node top{root, ""};
  top.expect_object({"ring", "module", "recurrence", "family", "system", "initial", "run", "description"});
  AlgebraContext ctx = algebra(root);

  const int sources = int(root.contains("recurrence")) + int(root.contains("family")) +
                      int(root.contains("system"));
  if (sources != 1) fail("", "exactly one of recurrence, family or system is required");

  std::string source;
  auto rec = [&]() -> Recurrence {
    if (auto n = top.opt("recurrence")) {
      source = "recurrence";
      return plain_recurrence(ctx, *n);
    }
    if (auto n = top.opt("family")) return family_recurrence(ctx, *n, source);
    source = "system";
    return system_recurrence(ctx, top.key("system"));
  }();

  std::vector<ModuleElement> initial;
  if (auto n = top.opt("initial")) {
    initial = module_elements(ctx, *n);
    if (initial.size() != rec.order())
      fail(n->path, "expected k+1 = " + std::to_string(rec.order()) + " initial values, got " +
                        std::to_string(initial.size()));
  }
  RunOptions run;
  if (auto n = top.opt("run")) run = run_options(ctx, *n);
  return JobConfig{ctx, std::move(rec), std::move(source), std::move(initial), std::move(run)};
}

JobConfig load_job(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_job(ss.str());
}

}  // namespace scf

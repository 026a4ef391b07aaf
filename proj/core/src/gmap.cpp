#include "scfact/gmap.hpp"

#include <cctype>
#include <cmath>
#include <optional>

namespace scf {

CoeffSeq::CoeffSeq(Mode mode, std::vector<RingElement> values)
    : mode_(mode), values_(std::move(values)) {
  if (values_.empty()) throw Error(Errc::BadParams, "coefficient sequence must be nonempty");
}

CoeffSeq CoeffSeq::constant(RingElement value) { return CoeffSeq(Mode::Constant, {std::move(value)}); }

CoeffSeq CoeffSeq::periodic(std::vector<RingElement> values) {
  return CoeffSeq(Mode::Periodic, std::move(values));
}

const RingElement& CoeffSeq::at(long n) const {
  const long p = static_cast<long>(values_.size());
  long r = n % p;
  if (r < 0) r += p;
  return values_[static_cast<std::size_t>(r)];
}

struct Expr::Node {
  Kind kind;
  mpz_class value;
  std::size_t index = 0;
  std::string name;
  std::optional<Expr> a, b;
};

Expr Expr::literal(mpz_class value) {
  if (value < 0) throw Error(Errc::BadParams, "literals are nonnegative; use negation");
  return Expr(std::make_shared<const Node>(Node{Kind::Literal, std::move(value), 0, {}, {}, {}}));
}

Expr Expr::variable(std::size_t index) {
  if (index == 0) throw Error(Errc::BadParams, "variables are numbered from 1");
  return Expr(std::make_shared<const Node>(Node{Kind::Variable, 0, index, {}, {}, {}}));
}

Expr Expr::sequence(std::string name) {
  return Expr(std::make_shared<const Node>(Node{Kind::Sequence, 0, 0, std::move(name), {}, {}}));
}

Expr Expr::unary(Kind kind, Expr operand) {
  if (kind != Kind::Negate && kind != Kind::Inverse && kind != Kind::Tanh)
    throw Error(Errc::BadParams, "not a unary node kind");
  return Expr(std::make_shared<const Node>(Node{kind, 0, 0, {}, std::move(operand), {}}));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  if (kind != Kind::Add && kind != Kind::Subtract && kind != Kind::Multiply && kind != Kind::Divide)
    throw Error(Errc::BadParams, "not a binary node kind");
  return Expr(std::make_shared<const Node>(
      Node{kind, 0, 0, {}, std::move(lhs), std::move(rhs)}));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
const mpz_class& Expr::value() const { return node_->value; }
std::size_t Expr::index() const { return node_->index; }
const std::string& Expr::name() const { return node_->name; }

const Expr& Expr::operand() const {
  if (!node_->a) throw Error(Errc::BadParams, "leaf expression has no operand");
  return *node_->a;
}

const Expr& Expr::rhs() const {
  if (!node_->b) throw Error(Errc::BadParams, "expression has no right operand");
  return *node_->b;
}

bool operator==(const Expr& x, const Expr& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Literal: return a.value == b.value;
    case Expr::Kind::Variable: return a.index == b.index;
    case Expr::Kind::Sequence: return a.name == b.name;
    case Expr::Kind::Negate:
    case Expr::Kind::Inverse:
    case Expr::Kind::Tanh: return x.operand() == y.operand();
    default: return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
}

namespace {

class Parser {
 public:
  Parser(std::string_view src, std::size_t dim) : s_(src), dim_(dim) {}

  Expr run() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    Expr e = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t dim_;
  std::size_t pos_ = 0;
  int depth_ = 0;

  [[noreturn]] void fail(const std::string& why, std::optional<std::size_t> at = std::nullopt) const {
    std::size_t off = at.value_or(pos_);
    throw Error(Errc::SyntaxError, "syntax error at offset " + std::to_string(off) + ": " + why,
                static_cast<long>(off));
  }

  [[noreturn]] void unknown(const std::string& ident, std::size_t at) const {
    throw Error(Errc::UnknownIdentifier,
                "unknown identifier '" + ident + "' at offset " + std::to_string(at),
                static_cast<long>(at));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > 256) p.fail("expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
  };

  Expr expr() {
    DepthGuard guard(*this);
    Expr lhs = term();
    for (;;) {
      skip();
      if (accept('+')) lhs = Expr::binary(Expr::Kind::Add, lhs, term());
      else if (accept('-')) lhs = Expr::binary(Expr::Kind::Subtract, lhs, term());
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*')) lhs = Expr::binary(Expr::Kind::Multiply, lhs, factor());
      else if (accept('/')) lhs = Expr::binary(Expr::Kind::Divide, lhs, factor());
      else return lhs;
    }
  }

  Expr factor() {
    DepthGuard guard(*this);
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Expr::literal(mpz_class(std::string(s_.substr(start, pos_ - start))));
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '-') {
      ++pos_;
      return Expr::unary(Expr::Kind::Negate, factor());
    }
    if (c >= 'a' && c <= 'z') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if ((c >= 'a' && c <= 'z') || std::isdigit(static_cast<unsigned char>(c)) || c == '_') ++pos_;
      else break;
    }
    std::string ident(s_.substr(start, pos_ - start));

    if (ident == "inv" || ident == "tanh") {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        Expr arg = expr();
        expect(')');
        return Expr::unary(ident == "inv" ? Expr::Kind::Inverse : Expr::Kind::Tanh, arg);
      }
    }

    if (ident.size() > 1 && ident[0] == 'u' &&
        ident.find_first_not_of("0123456789", 1) == std::string::npos) {
      if (ident[1] == '0' || ident.size() > 19) unknown(ident, start);
      std::size_t idx = std::stoul(ident.substr(1));
      if (idx == 0 || idx > dim_) unknown(ident, start);
      return Expr::variable(idx);
    }

    skip();
    if (pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      expect('n');
      expect(']');
      return Expr::sequence(ident);
    }
    unknown(ident, start);
  }
};

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Subtract: return 1;
    case Expr::Kind::Multiply:
    case Expr::Kind::Divide: return 2;
    default: return 3;
  }
}

void format_into(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::Literal: out += e.value().get_str(); return;
    case Expr::Kind::Variable: out += "u" + std::to_string(e.index()); return;
    case Expr::Kind::Sequence: out += e.name() + "[n]"; return;
    case Expr::Kind::Negate:
      out += "-(";
      format_into(e.operand(), out);
      out += ")";
      return;
    case Expr::Kind::Inverse:
    case Expr::Kind::Tanh:
      out += e.kind() == Expr::Kind::Inverse ? "inv(" : "tanh(";
      format_into(e.operand(), out);
      out += ")";
      return;
    default: break;
  }
  const int p = precedence(e.kind());
  const bool wrap_l = precedence(e.lhs().kind()) < p;
  const bool wrap_r = precedence(e.rhs().kind()) <= p;
  if (wrap_l) out += "(";
  format_into(e.lhs(), out);
  if (wrap_l) out += ")";
  switch (e.kind()) {
    case Expr::Kind::Add: out += "+"; break;
    case Expr::Kind::Subtract: out += "-"; break;
    case Expr::Kind::Multiply: out += "*"; break;
    default: out += "/"; break;
  }
  if (wrap_r) out += "(";
  format_into(e.rhs(), out);
  if (wrap_r) out += ")";
}

RingElement inverse_or_throw(const Ring& ring, const RingElement& x, long n) {
  auto inv = ring.invert(x);
  if (!inv)
    throw Error(Errc::DivisionByNonUnit,
                "division by non-unit " + ring.format(x) + " at n=" + std::to_string(n), n);
  return *inv;
}

}  // namespace

Expr parse_expr(std::string_view src, std::size_t dim) { return Parser(src, dim).run(); }

std::string format_expr(const Expr& e) {
  std::string out;
  format_into(e, out);
  return out;
}

RingElement eval_expr(const Expr& e, const ModuleElement& args, long n,
                      const SequenceBindings& bindings, const AlgebraContext& ctx) {
  const Ring& ring = ctx.ring();
  switch (e.kind()) {
    case Expr::Kind::Literal: return ring.from_integer(e.value());
    case Expr::Kind::Variable:
      if (e.index() > args.dim())
        throw Error(Errc::UnknownIdentifier, "variable u" + std::to_string(e.index()) +
                                                 " exceeds module dimension");
      return args[e.index() - 1];
    case Expr::Kind::Sequence: {
      auto it = bindings.find(e.name());
      if (it == bindings.end())
        throw Error(Errc::UnknownIdentifier, "unbound sequence '" + e.name() + "'");
      const RingElement& v = it->second.at(n);
      ring.check(v);
      return v;
    }
    case Expr::Kind::Negate: return -eval_expr(e.operand(), args, n, bindings, ctx);
    case Expr::Kind::Inverse:
      return inverse_or_throw(ring, eval_expr(e.operand(), args, n, bindings, ctx), n);
    case Expr::Kind::Tanh: {
      RingElement v = eval_expr(e.operand(), args, n, bindings, ctx);
      const auto* c = std::get_if<std::complex<double>>(&v.payload());
      if (!c || std::fabs(c->imag()) > ring.tolerance() * std::max(1.0, std::fabs(c->real())))
        throw Error(Errc::TanhUnsupported, "tanh requires a real float-complex argument");
      return RingElement(std::complex<double>(std::tanh(c->real()), 0.0));
    }
    case Expr::Kind::Add:
      return eval_expr(e.lhs(), args, n, bindings, ctx) + eval_expr(e.rhs(), args, n, bindings, ctx);
    case Expr::Kind::Subtract:
      return eval_expr(e.lhs(), args, n, bindings, ctx) - eval_expr(e.rhs(), args, n, bindings, ctx);
    case Expr::Kind::Multiply:
      return eval_expr(e.lhs(), args, n, bindings, ctx) * eval_expr(e.rhs(), args, n, bindings, ctx);
    case Expr::Kind::Divide: {
      RingElement lhs = eval_expr(e.lhs(), args, n, bindings, ctx);
      RingElement rhs = eval_expr(e.rhs(), args, n, bindings, ctx);
      return lhs * inverse_or_throw(ring, rhs, n);
    }
  }
  throw Error(Errc::BadParams, "unknown expression node");
}

void collect_sequences(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Expr::Kind::Sequence: out.insert(e.name()); return;
    case Expr::Kind::Literal:
    case Expr::Kind::Variable: return;
    case Expr::Kind::Negate:
    case Expr::Kind::Inverse:
    case Expr::Kind::Tanh: collect_sequences(e.operand(), out); return;
    default:
      collect_sequences(e.lhs(), out);
      collect_sequences(e.rhs(), out);
  }
}

std::size_t max_variable(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Variable: return e.index();
    case Expr::Kind::Literal:
    case Expr::Kind::Sequence: return 0;
    case Expr::Kind::Negate:
    case Expr::Kind::Inverse:
    case Expr::Kind::Tanh: return max_variable(e.operand());
    default: return std::max(max_variable(e.lhs()), max_variable(e.rhs()));
  }
}

}  // namespace scf

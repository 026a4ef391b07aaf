#pragma once

// Expression language for the nonlinear maps g_n.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := INT | 'u' INDEX | IDENT '[n]' | '(' expr ')' | '-' factor
//           | ('inv'|'tanh') '(' expr ')'
//
// `a/b` evaluates as a * inv(b), inverse on the right.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scfact/algebra.hpp"

namespace scf {

// Coefficient sequence indexed by step n: a constant, or a periodic list
// cycled as values[n mod period].
class CoeffSeq {
 public:
  enum class Mode { Constant, Periodic };

  static CoeffSeq constant(RingElement value);
  static CoeffSeq periodic(std::vector<RingElement> values);

  Mode mode() const noexcept { return mode_; }
  const std::vector<RingElement>& values() const noexcept { return values_; }
  std::size_t period() const noexcept { return values_.size(); }
  bool is_constant() const noexcept { return values_.size() == 1; }
  const RingElement& at(long n) const;

  friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;

 private:
  CoeffSeq(Mode mode, std::vector<RingElement> values);
  Mode mode_;
  std::vector<RingElement> values_;
};

using SequenceBindings = std::map<std::string, CoeffSeq, std::less<>>;

class Expr {
 public:
  enum class Kind { Literal, Variable, Sequence, Negate, Add, Subtract, Multiply, Divide, Inverse, Tanh };

  static Expr literal(mpz_class value);
  static Expr variable(std::size_t index);  // 1-based
  static Expr sequence(std::string name);
  static Expr unary(Kind kind, Expr operand);  // Negate, Inverse, Tanh
  static Expr binary(Kind kind, Expr lhs, Expr rhs);

  Kind kind() const noexcept;
  const mpz_class& value() const;
  std::size_t index() const;
  const std::string& name() const;
  const Expr& operand() const;  // unary operand or binary lhs
  const Expr& lhs() const { return operand(); }
  const Expr& rhs() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Throws SyntaxError (index = byte offset) or UnknownIdentifier.
Expr parse_expr(std::string_view src, std::size_t dim);

std::string format_expr(const Expr& e);

// Throws DivisionByNonUnit (index = n), TanhUnsupported, UnknownIdentifier.
RingElement eval_expr(const Expr& e, const ModuleElement& args, long n,
                      const SequenceBindings& bindings, const AlgebraContext& ctx);

void collect_sequences(const Expr& e, std::set<std::string>& out);
std::size_t max_variable(const Expr& e);

}  // namespace scf

#pragma once

// Recurrences of the form
//
//   x_{n+1} = sum_i a_{i,n} x_{n-i} + g_n( sum_i b_{i,n} x_{n-i} ),  i = 0..k
//
// over a free module R^d. The initial window is x_origin .. x_{origin+k};
// coefficients are indexed by the step index n of x_{n+1}.

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "scfact/algebra.hpp"
#include "scfact/gmap.hpp"

namespace scf {

struct GMapSpec {
  enum class Kind { Zero, ConstantSequence, LinearScale, Expression };

  Kind kind = Kind::Zero;
  std::vector<ModuleElement> offsets;  // d_n, cycled by n
  std::optional<CoeffSeq> scale;       // c_n for LinearScale
  std::vector<Expr> exprs;             // one per module component
  // Linear part pulled out of a folded system: g^i += sum_m linear[i][m] u_m.
  std::optional<std::vector<std::vector<RingElement>>> linear;
  SequenceBindings sequences;

  static GMapSpec zero();
  static GMapSpec constant_sequence(std::vector<ModuleElement> offsets);
  static GMapSpec linear_scale(CoeffSeq c, std::vector<ModuleElement> offsets = {});
  static GMapSpec expression(std::vector<Expr> exprs, SequenceBindings sequences = {},
                             std::optional<std::vector<std::vector<RingElement>>> linear = {});

  // Throws DimensionMismatch, UnknownIdentifier or RingMismatch.
  void validate(const AlgebraContext& ctx) const;
  ModuleElement apply(const AlgebraContext& ctx, const ModuleElement& u, long n) const;

  // Human-readable rendering, one string per component.
  std::vector<std::string> describe(const AlgebraContext& ctx) const;
};

class Recurrence {
 public:
  Recurrence(AlgebraContext ctx, std::vector<CoeffSeq> a, std::vector<CoeffSeq> b, GMapSpec g,
             long origin = 0);

  const AlgebraContext& ctx() const noexcept { return ctx_; }
  const std::vector<CoeffSeq>& a() const noexcept { return a_; }
  const std::vector<CoeffSeq>& b() const noexcept { return b_; }
  const GMapSpec& g() const noexcept { return g_; }
  long origin() const noexcept { return origin_; }

  std::size_t k() const noexcept { return a_.size() - 1; }  // order is k+1
  std::size_t order() const noexcept { return a_.size(); }
  long first_step() const noexcept { return origin_ + static_cast<long>(k()); }

  bool constant_coefficients() const;
  std::vector<RingElement> a_at(long n) const;
  std::vector<RingElement> b_at(long n) const;
  // Least common period of all coefficient sequences.
  long coefficient_period() const;

  Recurrence with_coefficients(std::vector<CoeffSeq> a, std::vector<CoeffSeq> b) const;
  Recurrence with_origin(long origin) const;

 private:
  AlgebraContext ctx_;
  std::vector<CoeffSeq> a_, b_;
  GMapSpec g_;
  long origin_;
};

// sum_i b_{i,n} x_{n-i}; window is newest first.
ModuleElement inner_argument(const Recurrence& rec, std::span<const ModuleElement> window, long n);

// One application of the recurrence. Window is newest first
// (x_n, ..., x_{n-k}). Throws EvaluationBreakdown(n) when g_n is undefined.
ModuleElement step(const Recurrence& rec, std::span<const ModuleElement> window, long n);

std::vector<CoeffSeq> constant_seqs(std::span<const RingElement> values);

// ---------------------------------------------------------------------------
// Special families

// a_j = r b_j - b_{j+1} with b_0 = 1, b_{k+1} = 0. `b` holds b_1..b_k.
struct FscParams {
  RingElement r;
  std::vector<RingElement> b;
};

// x_{n+1} = sum_{j<k} a_j x_{n-j} + g(b x_n - sum_{j=1..k} a_{j-1} b x_{n-j}).
struct AlspParams {
  RingElement b;
  std::vector<RingElement> a;  // a_0..a_{k-1}
};

// x_{n+1} = sum_i a_i x_{n-i} + g(x_{n-j} - b x_{n-j-1}).
struct O2bParams {
  std::vector<RingElement> a;  // a_0..a_k
  std::size_t j = 0;
  RingElement b;
};

// x_{n+1} = sum_i a_{i,n} x_{n-i} + d_n, or with a scale sequence c_n:
// x_{n+1} = sum_i a_i x_{n-i} + c_n sum_i b_i x_{n-i} + d_n.
struct LinearParams {
  std::vector<CoeffSeq> a;
  std::optional<std::vector<CoeffSeq>> b;
  std::optional<CoeffSeq> c;
  std::vector<ModuleElement> d;
};

struct SecondOrderParams {
  CoeffSeq a0, a1, b0, b1;
};

using FamilyParams = std::variant<FscParams, AlspParams, O2bParams, LinearParams, SecondOrderParams>;

// `g` is ignored for the linear family, which derives g from c and d.
Recurrence build_family(const AlgebraContext& ctx, const FamilyParams& params,
                        GMapSpec g = GMapSpec::zero());

// ---------------------------------------------------------------------------
// Systems over R^d

struct SystemComponent {
  // linear[l][j]: coefficient of x_{j,n-l}.
  std::vector<std::vector<RingElement>> linear;
  Expr h;  // nonlinear part as a function of u = sum_l b_l x_{n-l}
  std::optional<std::vector<RingElement>> extract;  // E_i, linear terms moved into g
};

struct SystemDescription {
  std::size_t k = 1;
  std::vector<RingElement> b;  // shared inner coefficients b_0..b_k
  std::vector<SystemComponent> components;
  SequenceBindings sequences;
};

// Throws NotFoldable when the residual linear part is not a shared scalar
// pattern.
Recurrence fold_system(const AlgebraContext& ctx, const SystemDescription& sys);

// Direct componentwise evaluation, used as an oracle for fold_system.
ModuleElement system_step(const AlgebraContext& ctx, const SystemDescription& sys,
                          std::span<const ModuleElement> window, long n);

}  // namespace scf

#pragma once

// Reducibility decisions and semiconjugate factorizations relative to the
// linear form symmetry t_{n+1} = x_{n+1} - rho_n x_n.
//
// A factorization step replaces an order-(k+1) recurrence by
//   factor:    t_{n+1} = -sum_i p_{i,n} t_{n-i} + g_n(sum_i q_{i,n} t_{n-i})   (order k)
//   cofactor:  x_{n+1} = rho_n x_n + t_{n+1}
// The factor recurrence starts one index later than its parent.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scfact/poly.hpp"
#include "scfact/recurrence.hpp"

namespace scf {

struct UnitSequenceCertificate {
  enum class Status { ProvedPeriodic, VerifiedToHorizon };

  std::vector<RingElement> seed;  // alpha_origin .. alpha_{origin+k-1}
  long origin = 0;
  Status status = Status::VerifiedToHorizon;
  std::optional<long> period;  // of the alpha sequence, when proved
  long preperiod = 0;
  long horizon = 0;                 // last step index checked
  std::vector<RingElement> alphas;  // alpha_origin, alpha_origin+1, ...

  bool proved() const noexcept { return status == Status::ProvedPeriodic; }
  // alpha_n for n >= origin; periodic extension past the realized prefix.
  const RingElement& alpha(long n) const;
};

std::string_view to_string(UnitSequenceCertificate::Status s) noexcept;

enum class StepKind { ConstantRoot, VariableSequence, AlspOrderOne };
std::string_view to_string(StepKind k) noexcept;

struct FactorizationStep {
  StepKind kind = StepKind::ConstantRoot;
  std::string via;  // "constant-root", "unit-sequence", "second-order", "alsp-order-one", "linear-scale"
  std::optional<RingElement> rho;
  std::optional<UnitSequenceCertificate> certificate;
  std::optional<CoeffSeq> cofactor;  // rho_n
  std::vector<CoeffSeq> p, q;        // factor has a = -p, b = q
  std::vector<RingElement> cofactor_a;  // order-k linear cofactor a_0..a_{k-1}
};

struct Factorization {
  FactorizationStep step;
  Recurrence factor;
};

struct FactorizationChain {
  Recurrence base;
  std::vector<FactorizationStep> steps;
  std::vector<Recurrence> factors;  // factors[l] is produced by steps[l]
  std::vector<RootReport> reports;  // root reports of constant-root levels
  bool complete = false;            // deepest factor is first-order

  std::size_t depth() const noexcept { return steps.size() + 1; }
  const Recurrence& level(std::size_t l) const { return l == 0 ? base : factors.at(l - 1); }
  const Recurrence& deepest() const { return level(steps.size()); }
  void push(Factorization f);
};

// f_n(u0, zeta_1, ..., zeta_k) - alpha_n u0 with
//   zeta_j = (alpha_{n-1}...alpha_{n-j})^{-1} u0 - sum_{i<=j} (alpha_{n-i}...alpha_{n-j})^{-1} v_i.
// `alphas` is newest first: alpha_n, alpha_{n-1}, ..., alpha_{n-k}; v holds v_1..v_k.
ModuleElement criterion_value(const Recurrence& rec, std::span<const RingElement> alphas, long n,
                              const ModuleElement& u0, std::span<const ModuleElement> v);

// True iff the criterion value agrees at the two probes for u0.
bool criterion_check(const Recurrence& rec, std::span<const RingElement> alphas, long n,
                     const ModuleElement& probe_a, const ModuleElement& probe_b,
                     std::span<const ModuleElement> v);

// Theorem-style constant-root step. Throws NoncommutativeRing, BadParams,
// NotCommonUnitRoot.
Factorization factor_once(const Recurrence& rec, const RingElement& rho);

// Greedy chain over common unit roots in canonical order. Throws
// NotIntegralDomain (composite modulus, more than one step possible) and
// Irreducible (no common unit root at the first level).
FactorizationChain factor_chain(const Recurrence& rec,
                                std::size_t max_steps = std::numeric_limits<std::size_t>::max());

// Propagates alpha_n from the seed window and checks the inner-coefficient
// identity at every step. Throws CertificateFailure(n).
UnitSequenceCertificate variable_certificate(const Recurrence& rec, std::span<const RingElement> seed,
                                             long horizon = 64);

// Throws NotPeriodic unless the certificate is purely periodic.
Factorization build_variable_factor(const Recurrence& rec, const UnitSequenceCertificate& cert);

// Closed-form second-order factorization; nullopt when b_0, b_1 are not
// units or the coefficient identity fails.
std::optional<Factorization> second_order_shortcut(const Recurrence& rec);

// Order-one factor s_{n+1} = g_n(b s_n) with s_n = x_n - sum_{j=1..k} a_{j-1} x_{n-j},
// and the order-k linear cofactor. Throws NotAlspFamily, BadParams (b = 0).
Factorization remark_a_factor(const Recurrence& rec);

struct O2bVerdict {
  bool reducible = false;
  std::optional<RingElement> rho;
  std::string reason;
};

// Recognizes b = (0,..,1,-b,..,0) and decides reducibility. Throws BadParams
// if the recurrence is not of that shape.
O2bVerdict reducibility_o2b(const Recurrence& rec);

// Linear recurrences. With constant offsets g ignores its argument, so the
// chain runs on the roots of P alone (b is taken as zero). With a scale
// sequence c_n the factor is materialized as a linear recurrence with
// coefficients -(p_i - q_i c_n).
FactorizationChain linear_complete(const Recurrence& rec, std::span<const RingElement> roots = {});

struct AutoOptions {
  long horizon = 64;
  std::vector<std::vector<RingElement>> seeds;  // consumed in order by unit-sequence steps
  std::vector<RingElement> roots;               // per-level user roots for constant steps
};

struct AutoResult {
  FactorizationChain chain;
  std::optional<RootReport> constant_report;  // first-level constant path
  bool constant_path_irreducible = false;
  std::vector<UnitSequenceCertificate> certificates;
  std::vector<std::string> notes;

  bool reducible() const noexcept { return !chain.steps.empty(); }
};

// Constant roots first, then seeded unit sequences, then the second-order
// closed form, level by level.
AutoResult auto_chain(const Recurrence& rec, const AutoOptions& options = {});

// Factor coefficient formulas p_i, q_i for a constant root.
std::pair<std::vector<RingElement>, std::vector<RingElement>> root_coefficients(
    const Recurrence& rec, const RingElement& rho);

}  // namespace scf

#pragma once

// Trajectory simulation and the equivalence check between a recurrence and
// its factor/cofactor chain.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scfact/factorizer.hpp"

namespace scf {

struct Breakdown {
  long index = 0;  // step n at which x_{n+1} could not be formed
  std::string reason;
};

struct Trajectory {
  std::size_t level = 0;
  long first_index = 0;
  std::vector<ModuleElement> values;  // values[i] is the term with index first_index + i
  std::optional<Breakdown> breakdown;

  long last_index() const noexcept { return first_index + static_cast<long>(values.size()) - 1; }
  bool has(long n) const noexcept { return n >= first_index && n <= last_index(); }
  const ModuleElement& at(long n) const;
};

// Letter used for level l in reports: x, t, r, s, then y<l>.
std::string level_name(std::size_t level);

// `init` holds x_origin .. x_{origin+k}, oldest first. Produces up to `steps`
// further terms; stops early and records a breakdown when g_n is undefined or
// a float value stops being finite.
Trajectory simulate(const Recurrence& rec, std::span<const ModuleElement> init, long steps,
                    std::size_t level = 0);

// Initial values of the factor one level down.
std::vector<ModuleElement> transport_initial_values(const Recurrence& parent,
                                                    const FactorizationStep& step,
                                                    std::span<const ModuleElement> init);

// Simulates the deepest factor and rebuilds every level above it through the
// cofactors. Element 0 is the reconstructed base trajectory.
std::vector<Trajectory> simulate_chain(const FactorizationChain& chain,
                                       std::span<const ModuleElement> init, long steps);

struct EquivalenceReport {
  long steps_compared = 0;
  bool equal = true;
  std::optional<long> first_divergence;
  double max_deviation = 0.0;  // relative, float rings only
  bool capped = false;         // float horizon clamped to kFloatStepCap
  std::vector<Breakdown> breakdowns;
  Trajectory direct;
  std::vector<Trajectory> chained;
};

inline constexpr double kFloatAgreement = 1e-6;
// Float comparisons stop here; error growth past it is not meaningful.
inline constexpr long kFloatStepCap = 500;

EquivalenceReport verify_equivalence(const FactorizationChain& chain,
                                     std::span<const ModuleElement> init, long steps,
                                     double float_tolerance = kFloatAgreement);

struct EquivalenceJob {
  const FactorizationChain* chain = nullptr;
  std::vector<ModuleElement> init;
  long steps = 0;
};

// Independent jobs run concurrently; results keep the input order.
std::vector<EquivalenceReport> verify_many(std::span<const EquivalenceJob> jobs);

struct PeriodReport {
  std::optional<long> period;
  long preperiod = 0;  // index offset from first_index where the cycle starts
};

// Smallest p <= max_period such that the tail repeats with period p over at
// least max(2p, window) terms.
PeriodReport detect_period(const AlgebraContext& ctx, const Trajectory& traj, long max_period,
                           std::size_t window = 1);

// Same search on a single component of the trajectory.
PeriodReport detect_component_period(const AlgebraContext& ctx, const Trajectory& traj,
                                     std::size_t component, long max_period, std::size_t window = 1);

// Header "level,n,c0,...,c{d-1}", one row per term.
void write_csv(std::ostream& out, const AlgebraContext& ctx, std::span<const Trajectory> levels);

// Adds `delta` to every value of one chain coefficient, to show that
// verification catches a wrong factorization. 'a' and 'b' target the deepest
// factor (only it is simulated); 'r' targets the cofactor of step `level`
// (1-based), or coefficient `index` of an order-one alsp cofactor.
struct Perturbation {
  std::size_t level = 1;
  char which = 'a';
  std::size_t index = 0;
  RingElement delta;
};
FactorizationChain perturb(const FactorizationChain& chain, const Perturbation& p);

}  // namespace scf

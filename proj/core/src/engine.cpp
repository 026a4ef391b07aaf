#include "scfact/engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>

namespace scf {

namespace {

bool finite(const Ring& ring, const ModuleElement& x) {
  if (!ring.is_float()) return true;
  return std::all_of(x.components.begin(), x.components.end(),
                     [&](const RingElement& c) { return std::isfinite(ring.magnitude(c)); });
}

double relative_deviation(const Ring& ring, const ModuleElement& x, const ModuleElement& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    double scale = std::max({1.0, ring.magnitude(x[i]), ring.magnitude(y[i])});
    worst = std::max(worst, ring.magnitude(x[i] - y[i]) / scale);
  }
  return worst;
}

// Newest-first window ending at index n.
std::vector<ModuleElement> window_at(const Trajectory& t, long n, std::size_t order) {
  std::vector<ModuleElement> w;
  w.reserve(order);
  for (std::size_t i = 0; i < order; ++i) w.push_back(t.at(n - long(i)));
  return w;
}

}  // namespace

const ModuleElement& Trajectory::at(long n) const {
  if (!has(n))
    throw Error(Errc::BadParams, "term " + std::to_string(n) + " is outside the trajectory");
  return values[static_cast<std::size_t>(n - first_index)];
}

std::string level_name(std::size_t level) {
  static constexpr const char* names[] = {"x", "t", "r", "s"};
  if (level < std::size(names)) return names[level];
  return "y" + std::to_string(level);
}

Trajectory simulate(const Recurrence& rec, std::span<const ModuleElement> init, long steps,
                    std::size_t level) {
  const auto& ctx = rec.ctx();
  if (init.size() != rec.order())
    throw Error(Errc::DimensionMismatch, "need " + std::to_string(rec.order()) +
                                             " initial values, got " + std::to_string(init.size()));
  if (steps < 0) throw Error(Errc::BadParams, "steps must be nonnegative");
  Trajectory t;
  t.level = level;
  t.first_index = rec.origin();
  for (const auto& v : init) {
    ctx.check(v);
    t.values.push_back(v);
  }
  t.values.reserve(init.size() + static_cast<std::size_t>(steps));
  const long first = rec.first_step();
  for (long n = first; n < first + steps; ++n) {
    try {
      ModuleElement next = step(rec, window_at(t, n, rec.order()), n);
      if (!finite(ctx.ring(), next)) {
        t.breakdown = Breakdown{n, "value is not finite"};
        break;
      }
      t.values.push_back(std::move(next));
    } catch (const Error& e) {
      if (e.code() != Errc::EvaluationBreakdown) throw;
      t.breakdown = Breakdown{n, e.what()};
      break;
    }
  }
  return t;
}

std::vector<ModuleElement> transport_initial_values(const Recurrence& parent,
                                                    const FactorizationStep& step,
                                                    std::span<const ModuleElement> init) {
  const auto& ctx = parent.ctx();
  const std::size_t k = parent.k();
  const long o = parent.origin();
  if (init.size() != k + 1) throw Error(Errc::DimensionMismatch, "initial window has wrong length");
  std::vector<ModuleElement> out;
  if (step.kind == StepKind::AlspOrderOne) {
    // s_{o+k} = x_{o+k} - sum_{j=1..k} a_{j-1} x_{o+k-j}
    ModuleElement s = init[k];
    for (std::size_t j = 1; j <= k; ++j)
      s = module_sub(ctx, s, module_scale(ctx, step.cofactor_a[j - 1], init[k - j]));
    out.push_back(std::move(s));
    return out;
  }
  // t_i = x_i - rho_{i-1} x_{i-1}, i = o+1 .. o+k
  for (std::size_t i = 1; i <= k; ++i) {
    const RingElement& rho = step.cofactor->at(o + long(i) - 1);
    out.push_back(module_sub(ctx, init[i], module_scale(ctx, rho, init[i - 1])));
  }
  return out;
}

std::vector<Trajectory> simulate_chain(const FactorizationChain& chain,
                                       std::span<const ModuleElement> init, long steps) {
  const std::size_t depth = chain.steps.size();
  std::vector<std::vector<ModuleElement>> windows{{init.begin(), init.end()}};
  for (std::size_t l = 0; l < depth; ++l)
    windows.push_back(transport_initial_values(chain.level(l), chain.steps[l], windows[l]));

  std::vector<Trajectory> levels(depth + 1);
  const Recurrence& deepest = chain.deepest();
  // Every level shares the step index range, so the deepest factor runs the
  // same number of steps.
  levels[depth] = simulate(deepest, windows[depth], steps, depth);

  for (std::size_t l = depth; l-- > 0;) {
    const Recurrence& rec = chain.level(l);
    const auto& ctx = rec.ctx();
    const FactorizationStep& st = chain.steps[l];
    const Trajectory& child = levels[l + 1];
    Trajectory t;
    t.level = l;
    t.first_index = rec.origin();
    t.values = windows[l];
    t.breakdown = child.breakdown;
    for (long n = rec.first_step(); child.has(n + 1); ++n) {
      ModuleElement next = child.at(n + 1);
      if (st.kind == StepKind::AlspOrderOne) {
        // x_{n+1} = sum_{j<k} a_j x_{n-j} + s_{n+1}
        for (std::size_t j = 0; j < st.cofactor_a.size(); ++j)
          next = module_axpy(ctx, st.cofactor_a[j], t.at(n - long(j)), next);
      } else {
        next = module_axpy(ctx, st.cofactor->at(n), t.at(n), next);
      }
      t.values.push_back(std::move(next));
    }
    levels[l] = std::move(t);
  }
  return levels;
}

EquivalenceReport verify_equivalence(const FactorizationChain& chain,
                                     std::span<const ModuleElement> init, long steps,
                                     double float_tolerance) {
  const auto& ctx = chain.base.ctx();
  const Ring& ring = ctx.ring();
  EquivalenceReport r;
  if (ring.is_float() && steps > kFloatStepCap) {
    steps = kFloatStepCap;
    r.capped = true;
  }
  r.direct = simulate(chain.base, init, steps, 0);
  r.chained = simulate_chain(chain, init, steps);
  if (r.direct.breakdown) r.breakdowns.push_back(*r.direct.breakdown);
  for (const auto& t : r.chained)
    if (t.breakdown && t.level == r.chained.size() - 1) r.breakdowns.push_back(*t.breakdown);

  const Trajectory& rebuilt = r.chained.front();
  const long last = std::min(r.direct.last_index(), rebuilt.last_index());
  for (long n = chain.base.first_step() + 1; n <= last; ++n) {
    ++r.steps_compared;
    const auto& x = r.direct.at(n);
    const auto& y = rebuilt.at(n);
    bool same;
    if (ring.is_float()) {
      double dev = relative_deviation(ring, x, y);
      r.max_deviation = std::max(r.max_deviation, dev);
      same = dev <= float_tolerance;
    } else {
      same = ctx.equal(x, y);
    }
    if (!same && !r.first_divergence) {
      r.first_divergence = n;
      r.equal = false;
    }
  }
  return r;
}

std::vector<EquivalenceReport> verify_many(std::span<const EquivalenceJob> jobs) {
  std::vector<std::future<EquivalenceReport>> futures;
  futures.reserve(jobs.size());
  for (const auto& job : jobs)
    futures.push_back(std::async(std::launch::async, [&job] {
      return verify_equivalence(*job.chain, job.init, job.steps);
    }));
  std::vector<EquivalenceReport> out;
  out.reserve(jobs.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

namespace {

template <class Eq>
PeriodReport find_period(long size, long max_period, std::size_t window, Eq eq) {
  for (long p = 1; p <= max_period; ++p) {
    const long span = std::max(2 * p, static_cast<long>(window));
    if (span + p > size) break;
    bool ok = true;
    for (long i = size - span; i < size && ok; ++i) ok = eq(std::size_t(i), std::size_t(i - p));
    if (!ok) continue;
    long start = size - span - p;
    while (start > 0 && eq(std::size_t(start - 1), std::size_t(start - 1 + p))) --start;
    return {p, start};
  }
  return {};
}

}  // namespace

PeriodReport detect_period(const AlgebraContext& ctx, const Trajectory& traj, long max_period,
                           std::size_t window) {
  const auto& v = traj.values;
  return find_period(long(v.size()), max_period, window,
                     [&](std::size_t i, std::size_t j) { return ctx.equal(v[i], v[j]); });
}

PeriodReport detect_component_period(const AlgebraContext& ctx, const Trajectory& traj,
                                     std::size_t component, long max_period, std::size_t window) {
  if (component >= ctx.module_dim()) throw Error(Errc::DimensionMismatch, "component out of range");
  const Ring& ring = ctx.ring();
  const auto& v = traj.values;
  return find_period(long(v.size()), max_period, window, [&](std::size_t i, std::size_t j) {
    return ring.equal(v[i].components[component], v[j].components[component]);
  });
}

void write_csv(std::ostream& out, const AlgebraContext& ctx, std::span<const Trajectory> levels) {
  const Ring& ring = ctx.ring();
  out << "level,n";
  for (std::size_t c = 0; c < ctx.module_dim(); ++c) out << ",c" << c;
  out << '\n';
  for (const auto& t : levels) {
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      out << level_name(t.level) << ',' << t.first_index + long(i);
      for (const auto& c : t.values[i].components) {
        std::string s = ring.format(c);
        if (s.find_first_of(",\"") != std::string::npos) s = '"' + s + '"';
        out << ',' << s;
      }
      out << '\n';
    }
  }
}

FactorizationChain perturb(const FactorizationChain& chain, const Perturbation& p) {
  if (chain.steps.empty()) throw Error(Errc::BadParams, "chain has no factorization step");
  FactorizationChain out = chain;
  auto shift = [&](const CoeffSeq& s) {
    std::vector<RingElement> vals;
    for (const auto& v : s.values()) vals.push_back(v + p.delta);
    return s.is_constant() ? CoeffSeq::constant(vals[0]) : CoeffSeq::periodic(std::move(vals));
  };
  if (p.which == 'a' || p.which == 'b') {
    Recurrence& f = out.factors.back();
    auto a = f.a();
    auto b = f.b();
    auto& target = p.which == 'a' ? a : b;
    if (p.index >= target.size()) throw Error(Errc::BadParams, "coefficient index out of range");
    target[p.index] = shift(target[p.index]);
    f = f.with_coefficients(std::move(a), std::move(b));
    return out;
  }
  if (p.which != 'r') throw Error(Errc::BadParams, "perturbation target must be a, b or r");
  if (p.level < 1 || p.level > out.steps.size()) throw Error(Errc::BadParams, "no such step");
  FactorizationStep& st = out.steps[p.level - 1];
  if (st.kind == StepKind::AlspOrderOne) {
    if (p.index >= st.cofactor_a.size()) throw Error(Errc::BadParams, "coefficient index out of range");
    st.cofactor_a[p.index] += p.delta;
  } else {
    st.cofactor = shift(*st.cofactor);
  }
  return out;
}

}  // namespace scf

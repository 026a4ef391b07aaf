#include <sstream>

#include "json.hpp"

#include "scfact/job.hpp"

namespace scf {

using nlohmann::json;

namespace {

std::string coeff_text(const Ring& ring, const CoeffSeq& s) {
  if (s.is_constant()) {
    std::string t = ring.format(s.at(0));
    if (t.find_first_of("+-", 1) != std::string::npos) t = "(" + t + ")";
    return t;
  }
  std::string t = "{";
  for (std::size_t i = 0; i < s.period(); ++i) t += (i ? "," : "") + ring.format(s.values()[i]);
  return t + "}_n";
}

std::string lag(long i) { return i == 0 ? "n" : "n-" + std::to_string(i); }

// "c0 y_n + c1 y_{n-1} + ..." with zero terms dropped.
std::string combination(const Ring& ring, const std::vector<CoeffSeq>& cs, const std::string& var) {
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const CoeffSeq& c = cs[i];
    if (c.is_constant() && ring.is_zero(c.at(0))) continue;
    std::string term = var + "_" + (i == 0 ? "n" : "{" + lag(long(i)) + "}");
    bool negative = false;
    if (c.is_constant() && ring.equal(c.at(0), ring.one())) {
    } else if (c.is_constant() && ring.equal(c.at(0), -ring.one())) {
      negative = true;
    } else {
      term = coeff_text(ring, c) + " " + term;
    }
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out;
}

json seq_json(const Ring& ring, const CoeffSeq& s) {
  if (s.is_constant()) return ring.format(s.at(0));
  json vals = json::array();
  for (const auto& v : s.values()) vals.push_back(ring.format(v));
  return json{{"periodic", vals}};
}

json seqs_json(const Ring& ring, const std::vector<CoeffSeq>& seqs) {
  json out = json::array();
  for (const auto& s : seqs) out.push_back(seq_json(ring, s));
  return out;
}

json elems_json(const Ring& ring, const std::vector<RingElement>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(ring.format(x));
  return out;
}

json module_json(const AlgebraContext& ctx, const ModuleElement& x) {
  return elems_json(ctx.ring(), x.components);
}

json recurrence_json(const Recurrence& rec, const std::string& var) {
  const Ring& ring = rec.ctx().ring();
  return {{"origin", rec.origin()},
          {"k", rec.k()},
          {"a", seqs_json(ring, rec.a())},
          {"b", seqs_json(ring, rec.b())},
          {"g", rec.g().describe(rec.ctx())},
          {"text", format_recurrence(rec, var)}};
}

json certificate_json(const Ring& ring, const UnitSequenceCertificate& c) {
  json j{{"status", to_string(c.status)},
         {"origin", c.origin},
         {"seed", elems_json(ring, c.seed)},
         {"horizon", c.horizon},
         {"preperiod", c.preperiod},
         {"alphas", elems_json(ring, c.alphas)}};
  j["period"] = c.period ? json(*c.period) : json(nullptr);
  return j;
}

json report_json(const Ring& ring, const RootReport& r) {
  json roots = json::array();
  for (const auto& root : r.roots)
    roots.push_back({{"value", ring.format(root.value)}, {"multiplicity", root.multiplicity}});
  return {{"method", to_string(r.method)}, {"exhaustive", r.exhaustive}, {"roots", roots}};
}

std::string cofactor_text(const Ring& ring, const FactorizationStep& st, std::size_t level) {
  const std::string x = level_name(level), t = level_name(level + 1);
  if (st.kind == StepKind::AlspOrderOne) {
    std::string lin = combination(ring, constant_seqs(st.cofactor_a), x);
    return x + "_{n+1} = " + (lin.empty() ? "" : lin + " + ") + t + "_{n+1}";
  }
  return x + "_{n+1} = " + combination(ring, {*st.cofactor}, x) + " + " + t + "_{n+1}";
}

json chain_json(const AlgebraContext& ctx, const AutoResult& res) {
  const Ring& ring = ctx.ring();
  const auto& chain = res.chain;
  json steps = json::array();
  for (std::size_t l = 0; l < chain.steps.size(); ++l) {
    const auto& st = chain.steps[l];
    json j{{"level", l + 1},
           {"kind", to_string(st.kind)},
           {"via", st.via},
           {"cofactor", cofactor_text(ring, st, l)},
           {"factor", recurrence_json(chain.factors[l], level_name(l + 1))}};
    if (st.rho) j["rho"] = ring.format(*st.rho);
    if (st.cofactor) j["rho_n"] = seq_json(ring, *st.cofactor);
    if (st.kind == StepKind::AlspOrderOne) j["cofactor_a"] = elems_json(ring, st.cofactor_a);
    if (st.certificate) j["certificate"] = certificate_json(ring, *st.certificate);
    steps.push_back(std::move(j));
  }
  json reports = json::array();
  for (const auto& r : chain.reports) reports.push_back(report_json(ring, r));
  json certs = json::array();
  for (const auto& c : res.certificates) certs.push_back(certificate_json(ring, c));
  return {{"verdict", res.reducible() ? "reducible" : "irreducible"},
          {"complete", chain.complete},
          {"depth", chain.depth()},
          {"steps", steps},
          {"root_reports", reports},
          {"certificates", certs},
          {"notes", res.notes}};
}

json job_json(const JobConfig& job) {
  json init = json::array();
  for (const auto& x : job.initial) init.push_back(module_json(job.ctx, x));
  return {{"initial", init},
          {"ring", to_string(job.ctx.ring().kind())},
          {"modulus", job.ctx.ring().descriptor().modulus},
          {"module_dim", job.ctx.module_dim()},
          {"source", job.source},
          {"method", to_string(job.method())},
          {"recurrence", recurrence_json(job.recurrence, "x")}};
}

std::string chain_text(const JobConfig& job, const AutoResult& res) {
  const Ring& ring = job.ctx.ring();
  const auto& chain = res.chain;
  std::ostringstream out;
  out << "ring: " << to_string(ring.kind());
  if (ring.kind() == RingKind::IntegersMod) out << " (m = " << ring.descriptor().modulus << ")";
  out << ", module dimension " << job.ctx.module_dim() << "\n";
  out << "recurrence (order " << job.recurrence.order() << "): "
      << format_recurrence(job.recurrence, "x") << "\n";
  if (!res.reducible()) {
    out << "verdict: irreducible by method " << to_string(job.method()) << "\n";
  } else {
    out << "verdict: reducible, " << (chain.complete ? "complete" : "partial") << " after "
        << chain.steps.size() << (chain.steps.size() == 1 ? " step" : " steps") << "\n";
  }
  for (std::size_t l = 0; l < chain.steps.size(); ++l) {
    const auto& st = chain.steps[l];
    out << "step " << l + 1 << " [" << st.via;
    if (st.rho) out << ", rho = " << ring.format(*st.rho);
    if (st.certificate && st.certificate->period)
      out << ", alpha period " << *st.certificate->period;
    out << "]\n";
    out << "  cofactor: " << cofactor_text(ring, st, l) << "\n";
    out << "  factor:   " << format_recurrence(chain.factors[l], level_name(l + 1)) << "\n";
  }
  for (const auto& n : res.notes) out << "note: " << n << "\n";
  return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

AutoResult irreducible_result(const Recurrence& rec, std::string note) {
  AutoResult r{FactorizationChain{rec, {}, {}, {}, rec.k() == 0}, {}, true, {}, {}};
  r.notes.push_back(std::move(note));
  return r;
}

}  // namespace

std::string format_recurrence(const Recurrence& rec, const std::string& var) {
  const Ring& ring = rec.ctx().ring();
  std::string rhs = combination(ring, rec.a(), var);
  std::string g;
  switch (rec.g().kind) {
    case GMapSpec::Kind::Zero: break;
    case GMapSpec::Kind::ConstantSequence: g = "d_n"; break;
    case GMapSpec::Kind::LinearScale:
    case GMapSpec::Kind::Expression: {
      std::string inner = combination(ring, rec.b(), var);
      g = "g_n(" + (inner.empty() ? "0" : inner) + ")";
      break;
    }
  }
  if (!g.empty()) rhs = rhs.empty() ? g : rhs + " + " + g;
  return var + "_{n+1} = " + (rhs.empty() ? "0" : rhs);
}

AutoResult factorize(const JobConfig& job) {
  const Recurrence& rec = job.recurrence;
  const Ring& ring = job.ctx.ring();
  const auto& run = job.run;
  switch (job.method()) {
    case Method::Auto:
      return auto_chain(rec, {run.horizon, run.seeds, run.roots});

    case Method::Constant: {
      const bool composite = ring.kind() == RingKind::IntegersMod && !is_prime(ring.descriptor().modulus);
      try {
        AutoResult r{factor_chain(rec, composite ? 1 : std::numeric_limits<std::size_t>::max()),
                     {}, false, {}, {}};
        if (!r.chain.reports.empty()) r.constant_report = r.chain.reports.front();
        if (composite && !r.chain.complete)
          r.notes.push_back("Z_" + std::to_string(ring.descriptor().modulus) +
                            " is not an integral domain; stopped after one step");
        return r;
      } catch (const Error& e) {
        if (e.code() != Errc::Irreducible) throw;
        auto r = irreducible_result(rec, e.what());
        auto [P, Q] = build_p_q(ring, rec.a_at(0), rec.b_at(0));
        r.constant_report = unit_roots(P, Q);
        r.chain.reports.push_back(*r.constant_report);
        return r;
      }
    }

    case Method::UnitSequence: {
      if (run.seeds.empty())
        throw Error(Errc::ConfigError, "run.seeds: the unit-sequence method needs at least one seed");
      AutoResult r{FactorizationChain{rec, {}, {}, {}, rec.k() == 0}, {}, false, {}, {}};
      for (const auto& seed : run.seeds) {
        const Recurrence cur = r.chain.deepest();
        if (cur.k() == 0) break;
        try {
          auto cert = variable_certificate(cur, seed, run.horizon);
          r.certificates.push_back(cert);
          r.chain.push(build_variable_factor(cur, cert));
        } catch (const Error& e) {
          if (e.code() != Errc::CertificateFailure && e.code() != Errc::NotPeriodic) throw;
          r.notes.push_back("level " + std::to_string(r.chain.steps.size()) + ": " + e.what());
          break;
        }
      }
      return r;
    }

    case Method::SecondOrder: {
      if (auto f = second_order_shortcut(rec)) {
        AutoResult r{FactorizationChain{rec, {}, {}, {}, false}, {}, false, {}, {}};
        r.chain.push(std::move(*f));
        return r;
      }
      return irreducible_result(rec, "second-order coefficient identity fails or k != 1");
    }

    case Method::Alsp: {
      AutoResult r{FactorizationChain{rec, {}, {}, {}, false}, {}, false, {}, {}};
      r.chain.push(remark_a_factor(rec));
      return r;
    }

    case Method::Linear:
      try {
        return AutoResult{linear_complete(rec, run.roots), {}, false, {}, {}};
      } catch (const Error& e) {
        if (e.code() != Errc::Irreducible) throw;
        return irreducible_result(rec, e.what());
      }
  }
  throw Error(Errc::BadParams, "unknown method");
}

CommandResult cmd_factor(const JobConfig& job) {
  AutoResult res = factorize(job);
  json j = job_json(job);
  j["factorization"] = chain_json(job.ctx, res);
  std::string text = chain_text(job, res);
  if (job.source == "o2b") {
    O2bVerdict v = reducibility_o2b(job.recurrence);
    json o{{"reducible", v.reducible}, {"reason", v.reason}};
    if (v.rho) o["rho"] = job.ctx.ring().format(*v.rho);
    j["o2b"] = o;
    text += "o2b test: " + std::string(v.reducible ? "reducible" : "irreducible") + " (" + v.reason + ")\n";
  }
  return {res.reducible() ? kExitOk : kExitIrreducible, text, dump(j), {}};
}

CommandResult cmd_verify(const JobConfig& job) {
  if (job.initial.empty()) throw Error(Errc::ConfigError, "initial: verification needs initial values");
  AutoResult res = factorize(job);
  json j = job_json(job);
  j["factorization"] = chain_json(job.ctx, res);
  std::string text = chain_text(job, res);
  if (!res.reducible()) {
    text += "verification: nothing to compare, no factorization found\n";
    return {kExitIrreducible, text, dump(j), {}};
  }
  FactorizationChain chain = job.run.mutate ? perturb(res.chain, *job.run.mutate) : res.chain;
  EquivalenceReport rep = verify_equivalence(chain, job.initial, job.run.steps);

  json breakdowns = json::array();
  for (const auto& b : rep.breakdowns) breakdowns.push_back({{"index", b.index}, {"reason", b.reason}});
  json v{{"steps_requested", job.run.steps},
         {"steps_compared", rep.steps_compared},
         {"equal", rep.equal},
         {"max_deviation", rep.max_deviation},
         {"mutated", job.run.mutate.has_value()},
         {"breakdowns", breakdowns}};
  v["first_divergence"] = rep.first_divergence ? json(*rep.first_divergence) : json(nullptr);
  v["capped"] = rep.capped;

  // Eventual period of each component on every chain level.
  const std::size_t dim = job.ctx.module_dim();
  json periods = json::array();
  std::vector<std::string> period_lines;
  for (const auto& level : rep.chained) {
    for (std::size_t c = 0; c < dim; ++c) {
      PeriodReport pr = detect_component_period(job.ctx, level, c, job.run.max_period, job.recurrence.order());
      if (!pr.period) continue;
      const long from = level.first_index + pr.preperiod;
      periods.push_back({{"level", level_name(level.level)}, {"component", c}, {"period", *pr.period}, {"from", from}});
      std::string name = level_name(level.level) + (dim > 1 ? "_" + std::to_string(c + 1) : "");
      period_lines.push_back("period note: " + name + " has period " + std::to_string(*pr.period) + " from n=" +
                             std::to_string(from));
    }
  }
  v["periods"] = periods;
  j["verification"] = v;

  std::ostringstream out;
  out << "verification: " << (rep.equal ? "trajectories agree" : "trajectories DIVERGE") << " over "
      << rep.steps_compared << " steps";
  if (job.ctx.ring().is_float()) out << " (max relative deviation " << rep.max_deviation << ")";
  out << "\n";
  if (rep.capped) out << "float comparison capped at " << kFloatStepCap << " steps\n";
  for (const auto& line : period_lines) out << line << "\n";
  if (rep.first_divergence) out << "first divergence at index " << *rep.first_divergence << "\n";
  for (const auto& b : rep.breakdowns) out << "breakdown at n=" << b.index << ": " << b.reason << "\n";
  return {rep.equal ? kExitOk : kExitVerifyFailed, text + out.str(), dump(j), {}};
}

CommandResult cmd_simulate(const JobConfig& job, Emit emit) {
  if (job.initial.empty()) throw Error(Errc::ConfigError, "initial: simulation needs initial values");
  const Trajectory direct = simulate(job.recurrence, job.initial, job.run.steps);
  std::vector<Trajectory> chain_levels;
  std::string note;
  try {
    AutoResult res = factorize(job);
    if (res.reducible())
      chain_levels = simulate_chain(res.chain, job.initial, job.run.steps);
    else
      note = "no factorization found; only the direct trajectory is written";
  } catch (const Error& e) {
    if (e.code() == Errc::ConfigError) throw;
    note = std::string("factorization skipped: ") + e.what();
  }

  auto render = [&](const Trajectory& t) {
    if (emit == Emit::Csv) {
      std::ostringstream csv;
      write_csv(csv, job.ctx, std::span<const Trajectory>(&t, 1));
      return csv.str();
    }
    json vals = json::array();
    for (const auto& v : t.values) vals.push_back(module_json(job.ctx, v));
    json j{{"level", level_name(t.level)}, {"first_index", t.first_index}, {"values", vals}};
    j["breakdown"] = t.breakdown ? json{{"index", t.breakdown->index}, {"reason", t.breakdown->reason}}
                                 : json(nullptr);
    return dump(j);
  };
  const std::string ext = emit == Emit::Csv ? ".csv" : ".json";

  CommandResult out;
  out.files.emplace_back("x" + ext, render(direct));
  for (const auto& t : chain_levels) out.files.emplace_back("chain-" + level_name(t.level) + ext, render(t));

  PeriodReport period = detect_period(job.ctx, direct, job.run.max_period, job.recurrence.order());
  json j = job_json(job);
  json s{{"terms", direct.values.size()}, {"files", json::array()}};
  for (const auto& [name, body] : out.files) s["files"].push_back(name);
  s["breakdown"] = direct.breakdown
                       ? json{{"index", direct.breakdown->index}, {"reason", direct.breakdown->reason}}
                       : json(nullptr);
  s["period"] = period.period ? json(*period.period) : json(nullptr);
  s["preperiod"] = period.period ? json(period.preperiod) : json(nullptr);
  j["simulation"] = s;
  out.json = dump(j);

  std::ostringstream text;
  text << "simulated " << direct.values.size() << " terms from index " << direct.first_index;
  if (!chain_levels.empty()) text << "; chain has " << chain_levels.size() << " levels";
  text << "\n";
  if (direct.breakdown)
    text << "breakdown at n=" << direct.breakdown->index << ": " << direct.breakdown->reason << "\n";
  if (period.period)
    text << "eventually periodic with period " << *period.period << " from index "
         << direct.first_index + period.preperiod << "\n";
  if (!note.empty()) text << "note: " << note << "\n";
  out.text = text.str();
  return out;
}

CommandResult cmd_certify(const JobConfig& job) {
  if (job.run.seeds.empty()) throw Error(Errc::ConfigError, "run.seeds: certification needs a seed");
  const Ring& ring = job.ctx.ring();
  json j = job_json(job);
  std::ostringstream out;
  int code = kExitOk;
  try {
    auto cert = variable_certificate(job.recurrence, job.run.seeds.front(), job.run.horizon);
    j["certificate"] = certificate_json(ring, cert);
    out << "certificate: " << to_string(cert.status);
    if (cert.period) out << ", period " << *cert.period << ", preperiod " << cert.preperiod;
    out << ", checked through n=" << cert.horizon << "\n";
    if (!cert.proved() || cert.preperiod != 0) {
      code = kExitIrreducible;
      out << "no factorization certified: alpha sequence is not purely periodic\n";
    } else {
      Factorization f = build_variable_factor(job.recurrence, cert);
      out << "cofactor: " << cofactor_text(ring, f.step, 0) << "\n";
      out << "factor:   " << format_recurrence(f.factor, "t") << "\n";
      j["factor"] = recurrence_json(f.factor, "t");
    }
  } catch (const Error& e) {
    if (e.code() != Errc::CertificateFailure) throw;
    code = kExitIrreducible;
    json f{{"status", "failed"}, {"reason", e.what()}};
    f["index"] = e.index() ? json(*e.index()) : json(nullptr);
    j["certificate"] = f;
    out << "certificate: failed (" << e.what() << ")\n";
  }
  return {code, out.str(), dump(j), {}};
}

}  // namespace scf

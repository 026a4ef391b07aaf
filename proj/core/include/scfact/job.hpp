#pragma once

// JSON job files and the four commands built on them. The JSON library stays
// private to the implementation; reports cross this boundary as text.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scfact/engine.hpp"
#include "scfact/factorizer.hpp"
#include "scfact/recurrence.hpp"

namespace scf {

enum class Method { Auto, Constant, UnitSequence, SecondOrder, Alsp, Linear };
std::string_view to_string(Method m) noexcept;

struct RunOptions {
  long steps = 32;
  long horizon = 64;
  long max_period = 64;
  std::optional<Method> method;  // defaults by family
  std::vector<std::vector<RingElement>> seeds;
  std::vector<RingElement> roots;
  std::optional<Perturbation> mutate;
};

struct JobConfig {
  AlgebraContext ctx;
  Recurrence recurrence;
  std::string source;  // "recurrence", "system" or the family name
  std::vector<ModuleElement> initial;
  RunOptions run;

  Method method() const;
};

// Throws Error(ConfigError) whose message starts with the offending field
// path, e.g. "recurrence.a[2]: ...".
JobConfig parse_job(std::string_view json_text);
JobConfig load_job(const std::filesystem::path& path);  // IoError when unreadable

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIrreducible = 3;
inline constexpr int kExitVerifyFailed = 4;

struct CommandResult {
  int exit_code = kExitOk;
  std::string text;  // human summary
  std::string json;  // machine report, keys sorted
  // Named output files (simulate): one per level, "x.csv" for the direct run
  // and "chain-<level>.csv" for every level of the factorization chain.
  std::vector<std::pair<std::string, std::string>> files;
};

enum class Emit { Csv, Json };

// Runs the configured method and returns the chain plus notes.
AutoResult factorize(const JobConfig& job);

CommandResult cmd_factor(const JobConfig& job);
CommandResult cmd_verify(const JobConfig& job);
CommandResult cmd_simulate(const JobConfig& job, Emit emit = Emit::Csv);
CommandResult cmd_certify(const JobConfig& job);

// "t_{n+1} = 2 t_n + g_n(t_n - t_{n-1})" style rendering.
std::string format_recurrence(const Recurrence& rec, const std::string& var);

}  // namespace scf

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "scfact/job.hpp"

namespace scf::cli {

namespace {

struct Options {
  std::string job;
  bool json = false;
  std::optional<long> steps;
  std::string emit = "csv";
  std::string out_dir;
  std::string seed;
  std::optional<long> horizon;
};

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot write " + path.string());
  f << body;
  if (!f) throw Error(Errc::IoError, "write failed for " + path.string());
}

// "1, -1" or "i j" -> ring elements; quaternion literals carry no commas or spaces.
std::vector<RingElement> parse_seed(const Ring& ring, const std::string& text) {
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',') c = ' ';
  std::istringstream in(normalized);
  std::vector<RingElement> out;
  for (std::string tok; in >> tok;) {
    try {
      out.push_back(ring.parse(tok));
    } catch (const Error& e) {
      throw Error(Errc::ConfigError, "--seed: " + std::string(e.what()));
    }
  }
  if (out.empty()) throw Error(Errc::ConfigError, "--seed: no elements given");
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Order reduction for nonlinear recurrences via linear form symmetries", "scfact"};
  app.require_subcommand(1);
  Options opt;

  auto* factor = app.add_subcommand("factor", "find a factor/cofactor chain");
  auto* verify = app.add_subcommand("verify", "factor, then compare direct and chained trajectories");
  auto* simulate = app.add_subcommand("simulate", "iterate the recurrence and its chain");
  auto* certify = app.add_subcommand("certify", "certify a unit sequence from a seed window");
  for (auto* sub : {factor, verify, simulate, certify}) {
    sub->add_option("job", opt.job, "JSON job file")->required();
    sub->add_flag("--json", opt.json, "print the machine report instead of the summary");
  }
  for (auto* sub : {verify, simulate})
    sub->add_option("--steps", opt.steps, "override run.steps")->check(CLI::NonNegativeNumber);
  simulate->add_option("--emit", opt.emit, "trajectory format")->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--out", opt.out_dir, "directory for one file per level");
  certify->add_option("--seed", opt.seed, "alpha_origin..alpha_{origin+k-1}, comma separated");
  certify->add_option("--horizon", opt.horizon, "override run.horizon")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    JobConfig job = load_job(opt.job);
    if (opt.steps) job.run.steps = *opt.steps;
    if (opt.horizon) job.run.horizon = *opt.horizon;
    if (!opt.seed.empty()) job.run.seeds.insert(job.run.seeds.begin(), parse_seed(job.ctx.ring(), opt.seed));

    CommandResult res;
    if (factor->parsed()) res = cmd_factor(job);
    else if (verify->parsed()) res = cmd_verify(job);
    else if (simulate->parsed()) res = cmd_simulate(job, opt.emit == "json" ? Emit::Json : Emit::Csv);
    else res = cmd_certify(job);

    if (simulate->parsed()) {
      if (!opt.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(opt.out_dir, ec);
        if (ec) throw Error(Errc::IoError, "cannot create " + opt.out_dir + ": " + ec.message());
        for (const auto& [name, body] : res.files) write_file(std::filesystem::path(opt.out_dir) / name, body);
      } else if (!opt.json) {
        // Without a directory the direct trajectory goes to stdout and the
        // summary to stderr, so the output stays pipeable.
        out << res.files.front().second;
        err << res.text;
        return res.exit_code;
      }
    }
    out << (opt.json ? res.json : res.text);
    return res.exit_code;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what();
    if (e.index() && e.code() != Errc::ConfigError) err << " (index " << *e.index() << ")";
    err << "\n";
    return e.code() == Errc::Irreducible ? kExitIrreducible : kExitConfig;
  }
}

}  // namespace scf::cli

#include "cpmu/cli.hpp"

#include "cpmu/corpus.hpp"
#include "cpmu/pipeline.hpp"
#include "cpmu/spec_file.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ostream>

namespace cpmu {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string spec_path;
  std::string instance;
  double tol = kDefaultTol;
  std::string format = "text";
  bool timing = false;
};

std::string corpus_list() {
  std::string s;
  for (const auto& n : corpus_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite groupoid pseudo-multiplicative unitaries: build and verify."};
  app.name("cpmu");
  app.require_subcommand(1);

  Options opt;
  const std::pair<Command, const char*> commands[] = {
      {Command::check_groupoid, "groupoid axioms, Haar system and measure"},
      {Command::build_pmu, "construct V and check unitarity, intertwining, pentagon and regularity"},
      {Command::legs, "both legs, their properties and their identification"},
      {Command::hopf, "pentagon frame and the Hopf C*-bimodule audits of both legs"},
      {Command::report, "everything, including transport of the base algebras and V^op"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [c, help] : commands) {
    CLI::App* sub = app.add_subcommand(command_name(c), help);
    sub->add_option("spec", opt.spec_path, "groupoid file");
    sub->add_option("--instance", opt.instance, "built-in instance instead of a file: " + corpus_list());
    sub->add_option("--tol", opt.tol, "tolerance for every residual check")->default_val(kDefaultTol);
    sub->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");
    sub->add_flag("--timing", opt.timing, "include per-check wall times (output no longer reproducible)");
    subs.emplace_back(c, sub);
  }

  std::vector<std::string> argv_store{"cpmu"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Command command = Command::report;
  for (const auto& [c, sub] : subs)
    if (sub->parsed()) command = c;

  if (opt.spec_path.empty() == opt.instance.empty()) {
    err << "cpmu: give exactly one of a groupoid file or --instance\n";
    return kExitUsage;
  }
  if (!std::isfinite(opt.tol) || opt.tol <= 0) {
    err << "cpmu: --tol must be a positive number\n";
    return kExitUsage;
  }

  GroupoidSpec spec;
  std::string name;
  if (!opt.instance.empty()) {
    try {
      GroupoidInstance inst = corpus_instance(opt.instance);
      spec.groupoid = std::move(inst.groupoid);
      spec.haar = std::move(inst.haar);
      spec.unit_weights = std::move(inst.unit_weights);
      name = inst.name;
    } catch (const std::invalid_argument&) {
      err << "cpmu: unknown instance '" << opt.instance << "' (known: " << corpus_list() << ")\n";
      return kExitUsage;
    }
  } else {
    try {
      spec = load_groupoid_spec(opt.spec_path);
    } catch (const ParseError& e) {
      err << e.what() << "\n";
      return kExitUsage;
    }
    name = opt.spec_path;
  }

  const VerificationReport r = run_pipeline(command, name, spec.groupoid, spec.haar, spec.unit_weights, opt.tol);
  out << (opt.format == "json" ? render_json(r, opt.timing) : render_text(r, opt.timing));
  return r.passed() ? kExitPass : kExitFail;
}

}  // namespace cpmu
